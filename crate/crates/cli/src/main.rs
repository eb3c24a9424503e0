mod error;
mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgrass_core::encoder::{encode_with, point_dims, verify_bijection, verify_lemma_hom, verify_quasi_projective, EncodedInstance};
use qgrass_core::exactfield::FieldSpec;
use qgrass_core::polyring::{NormalizeOptions, MONOMIAL_ORDER_ID};
use qgrass_core::quiverrep::{
    enumerate_subreps, euler_form, ext1_dim, hom_dim, pencil_hom_semicontinuity, DimVector, HomSystem, PencilSide, Quiver, Representation,
    DEFAULT_CAP,
};
use qgrass_core::subcat::{
    exact_grassmannian_points, extension_closed_sample, is_filtered_by, FiltOutcome, SubcatPredicate, DEFAULT_RETRIES,
};
use serde_json::json;

use crate::error::{CliError, EXIT_CHECK_FAILED};
use crate::input::{parse_dims, InstanceFile, PredSpec, RepFile};
use crate::report::Report;

const DEFAULT_TRIALS: usize = 200;
const DEFAULT_SAMPLE_DIMS: [[usize; 3]; 6] = [[0, 1, 0], [0, 1, 1], [1, 1, 1], [0, 2, 1], [1, 2, 0], [0, 1, 2]];

/// Quasi-projective varieties as quiver Grassmannians, checked by exhaustive
/// enumeration over finite fields.
#[derive(Parser, Debug)]
#[command(name = "qgrass", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Field override: `Q` or `Fp:<p>`.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Enumeration cap (candidate subspace tuples).
    #[arg(long, global = true)]
    cap: Option<u128>,
    /// Subcategory: `perp:W` or `perp:<file>#<name>`.
    #[arg(long, global = true)]
    pred: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timings (makes reports nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    /// Allow an empty inequation list.
    #[arg(long, global = true)]
    projective: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build V and W and print a summary.
    Encode { instance: PathBuf },
    /// Gr((0,1,1), V) against the points of the projective variety.
    VerifyBijection { instance: PathBuf },
    /// V, W orthogonal bricks; Hom(U_x, W) = 0 iff some h(x) ≠ 0.
    VerifyLemma { instance: PathBuf },
    /// The ^⊥W Grassmannian against the points where some h is nonzero.
    VerifyQuasi { instance: PathBuf },
    /// List the points of Gr(e, V), optionally restricted by --pred.
    Grass {
        instance: PathBuf,
        #[arg(long, default_value = "0,1,1")]
        dims: String,
    },
    /// dim Hom(M, N) for two representations of a representation file.
    Hom { reps: PathBuf, m: String, n: String },
    /// dim Ext¹(M, N), with dim Hom and the Euler form.
    Ext { reps: PathBuf, m: String, n: String },
    /// Whether X has a filtration with subquotients among the layers.
    Filtcheck {
        reps: PathBuf,
        x: String,
        #[arg(required = true)]
        layers: Vec<String>,
    },
    /// Sample extensions of members of --pred (default perp:W) and check closure.
    ExtensionSample {
        instance: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
        /// Dimension vectors to draw from; repeatable.
        #[arg(long = "dims")]
        dims: Vec<String>,
        #[arg(long)]
        retries: Option<usize>,
    },
    /// Upper semicontinuity of dim Hom along the pencil M0 + t·M1 over Q.
    Semicont {
        reps: PathBuf,
        m0: String,
        m1: String,
        x: String,
        /// Nonzero distinct integers; default 1..=r+1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        samples: Vec<i64>,
        #[arg(long, value_enum, default_value = "target")]
        side: Side,
    },
    /// Every instance check in one document.
    Report { instance: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Target,
    Source,
}

struct Loaded {
    file: InstanceFile,
    inst: EncodedInstance,
    cap: u128,
    seed: u64,
    trials: usize,
    retries: usize,
}

fn load_instance(path: &Path, g: &Global) -> Result<Loaded, CliError> {
    let file = InstanceFile::load(path)?;
    let field = g.field.unwrap_or(file.field);
    let (fs, hs) = file.polynomials(field)?;
    let opts = NormalizeOptions {
        allow_projective: g.projective || file.projective,
    };
    let inst = encode_with(&fs, &hs, field, opts)?;
    Ok(Loaded {
        cap: g.cap.or(file.caps.enumeration.map(u128::from)).unwrap_or(DEFAULT_CAP),
        seed: g.seed.or(file.seed).unwrap_or(0),
        trials: file.caps.trials.unwrap_or(DEFAULT_TRIALS),
        retries: file.caps.retries.unwrap_or(DEFAULT_RETRIES),
        file,
        inst,
    })
}

fn digest(l: &Loaded) -> serde_json::Value {
    let inst = &l.inst;
    let degrees = |ps: &[qgrass_core::polyring::Polynomial]| -> Vec<Option<u32>> {
        ps.iter().map(|p| p.is_homogeneous().ok().flatten()).collect()
    };
    json!({
        "field": inst.field,
        "n": inst.n,
        "equations": l.file.equations,
        "inequations": l.file.inequations,
        "monomial_order": MONOMIAL_ORDER_ID,
        "input_degrees": {"equations": degrees(&inst.equations), "inequations": degrees(&inst.inequations)},
        "degree": inst.degree,
        "k": inst.k,
        "f_origin": inst.system.f_origin,
        "h_origin": inst.system.h_origin,
        "projective_fill": inst.system.projective_fill,
        "dims_v": inst.v.dims(),
        "dims_w": inst.w.dims(),
        "cap": l.cap.to_string(),
        "seed": l.seed,
    })
}

fn warn_if_cyclic(q: &Quiver) {
    if !q.is_acyclic() {
        eprintln!("warning: the quiver has an oriented cycle; Hom and subrepresentations are still computed, Ext¹ and pdim are not");
    }
}

fn predicate(spec: Option<&str>, l: &Loaded, g: &Global) -> Result<Option<SubcatPredicate>, CliError> {
    let Some(text) = spec else {
        return Ok(None);
    };
    Ok(Some(match PredSpec::parse(text)? {
        PredSpec::PerpW => SubcatPredicate::hom_left_perp(l.inst.w.clone()),
        PredSpec::PerpFile { path, name } => {
            let file = RepFile::load(&path, Some(g.field.unwrap_or(l.inst.field)), Some(&l.inst.quiver))?;
            SubcatPredicate::hom_left_perp(file.get(&name)?.clone())
        }
    }))
}

fn instance_report(command: &str, l: &Loaded, g: &Global) -> Report {
    let mut args = json!({"instance": digest(l)});
    if let Some(p) = &g.pred {
        args["pred"] = json!(p);
    }
    Report::new(command, args, g.timing)
}

fn check_bijection(r: &mut Report, l: &Loaded) -> Result<(), CliError> {
    let t = Instant::now();
    let b = verify_bijection(&l.inst, l.cap)?;
    r.check("bijection", b.matched, &b, t);
    Ok(())
}

fn check_lemma(r: &mut Report, l: &Loaded) -> Result<(), CliError> {
    let t = Instant::now();
    let b = verify_lemma_hom(&l.inst)?;
    r.check("lemma-hom", b.holds(), &b, t);
    Ok(())
}

fn check_quasi(r: &mut Report, l: &Loaded) -> Result<(), CliError> {
    let t = Instant::now();
    let b = verify_quasi_projective(&l.inst, l.cap)?;
    r.check("quasi-projective", b.holds(), &b, t);
    Ok(())
}

fn check_extension_sample(r: &mut Report, l: &Loaded, g: &Global, trials: usize, dims: &[DimVector], retries: usize) -> Result<(), CliError> {
    let pred = predicate(Some(g.pred.as_deref().unwrap_or("perp:W")), l, g)?.expect("given");
    let t = Instant::now();
    let s = extension_closed_sample(&pred, l.inst.quiver.clone(), l.inst.field, dims, trials, retries, l.seed)?;
    r.check("extension-closure", s.violations.is_empty(), &s, t);
    Ok(())
}

fn default_sample_dims() -> Vec<DimVector> {
    DEFAULT_SAMPLE_DIMS.iter().map(|d| DimVector::new(d.to_vec())).collect()
}

fn pair<'a>(file: &'a RepFile, m: &str, n: &str) -> Result<(&'a Representation, &'a Representation), CliError> {
    Ok((file.get(m)?, file.get(n)?))
}

fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let g = &cli.global;
    let report = match &cli.command {
        Command::Encode { instance } => {
            let l = load_instance(instance, g)?;
            let mut r = instance_report("encode", &l, g);
            r.data("instance", &l.inst);
            r.data("quiver", l.inst.quiver.as_ref());
            r.data("v", &l.inst.v);
            r.data("w", &l.inst.w);
            r
        }
        Command::VerifyBijection { instance } => {
            let l = load_instance(instance, g)?;
            let mut r = instance_report("verify-bijection", &l, g);
            check_bijection(&mut r, &l)?;
            r
        }
        Command::VerifyLemma { instance } => {
            let l = load_instance(instance, g)?;
            let mut r = instance_report("verify-lemma", &l, g);
            check_lemma(&mut r, &l)?;
            r
        }
        Command::VerifyQuasi { instance } => {
            let l = load_instance(instance, g)?;
            let mut r = instance_report("verify-quasi", &l, g);
            check_quasi(&mut r, &l)?;
            r
        }
        Command::Grass { instance, dims } => {
            let l = load_instance(instance, g)?;
            let e = parse_dims(dims)?;
            let mut r = instance_report("grass", &l, g);
            let points = match predicate(g.pred.as_deref(), &l, g)? {
                Some(pred) => exact_grassmannian_points(&l.inst.v, &e, &pred, l.cap)?,
                None => enumerate_subreps(&l.inst.v, &e, l.cap)?,
            };
            let decode = e == point_dims();
            for u in &points {
                let point = if decode { l.inst.subrep_to_point(u)? } else { None };
                r.data("grassmannian-point", &json!({"subrep": u, "point": point}));
            }
            r.data("count", &json!({"dims": e, "count": points.len()}));
            r
        }
        Command::Hom { reps, m, n } => {
            let file = RepFile::load(reps, g.field, None)?;
            warn_if_cyclic(&file.quiver);
            let (a, b) = pair(&file, m, n)?;
            let mut r = Report::new("hom", json!({"reps": reps, "m": m, "n": n, "field": file.field}), g.timing);
            r.data("hom", &json!({"dim": hom_dim(a, b)?}));
            r
        }
        Command::Ext { reps, m, n } => {
            let file = RepFile::load(reps, g.field, None)?;
            let (a, b) = pair(&file, m, n)?;
            let mut r = Report::new("ext", json!({"reps": reps, "m": m, "n": n, "field": file.field}), g.timing);
            let ext = ext1_dim(a, b)?;
            let hom = hom_dim(a, b)?;
            let euler = euler_form(&file.quiver, a.dims(), b.dims())?;
            r.data("ext", &json!({"ext1": ext, "hom": hom, "euler": euler}));
            r
        }
        Command::Filtcheck { reps, x, layers } => {
            let file = RepFile::load(reps, g.field, None)?;
            warn_if_cyclic(&file.quiver);
            let target = file.get(x)?;
            let ls = layers.iter().map(|n| file.get(n).cloned()).collect::<Result<Vec<_>, _>>()?;
            let cap = g.cap.unwrap_or(DEFAULT_CAP);
            let mut r = Report::new(
                "filtcheck",
                json!({"reps": reps, "x": x, "layers": layers, "field": file.field, "cap": cap.to_string()}),
                g.timing,
            );
            let t = Instant::now();
            let outcome = is_filtered_by(target, &ls, cap)?;
            r.check("filtered", matches!(outcome, FiltOutcome::Yes { .. }), &outcome, t);
            r
        }
        Command::ExtensionSample {
            instance,
            trials,
            dims,
            retries,
        } => {
            let l = load_instance(instance, g)?;
            let dims = if dims.is_empty() {
                default_sample_dims()
            } else {
                dims.iter().map(|d| parse_dims(d)).collect::<Result<Vec<_>, _>>()?
            };
            let mut r = instance_report("extension-sample", &l, g);
            check_extension_sample(&mut r, &l, g, trials.unwrap_or(l.trials), &dims, retries.unwrap_or(l.retries))?;
            r
        }
        Command::Semicont {
            reps,
            m0,
            m1,
            x,
            samples,
            side,
        } => {
            let file = RepFile::load(reps, g.field, None)?;
            let (a, b) = pair(&file, m0, m1)?;
            let y = file.get(x)?;
            let side = match side {
                Side::Target => PencilSide::Target,
                Side::Source => PencilSide::Source,
            };
            let samples = if samples.is_empty() {
                let unknowns = match side {
                    PencilSide::Target => HomSystem::assemble(y, a)?.unknowns(),
                    PencilSide::Source => HomSystem::assemble(a, y)?.unknowns(),
                };
                (1..=unknowns as i64 + 1).collect()
            } else {
                samples.clone()
            };
            let mut r = Report::new(
                "semicont",
                json!({"reps": reps, "m0": m0, "m1": m1, "x": x, "field": file.field, "samples": samples}),
                g.timing,
            );
            let t = Instant::now();
            let p = pencil_hom_semicontinuity(a, b, y, &samples, side)?;
            r.check("semicontinuity", p.holds, &p, t);
            r
        }
        Command::Report { instance } => {
            let l = load_instance(instance, g)?;
            let mut r = instance_report("report", &l, g);
            check_lemma(&mut r, &l)?;
            if l.inst.field.is_finite() {
                check_bijection(&mut r, &l)?;
                check_quasi(&mut r, &l)?;
            }
            check_extension_sample(&mut r, &l, g, l.trials, &default_sample_dims(), l.retries)?;
            r
        }
    };
    Ok(report.finish())
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(text, passed)| emit(&text, cli.global.out.as_deref()).map(|_| passed));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("precondition: {}", e.precondition());
            ExitCode::from(e.exit_code())
        }
    }
}
