use std::path::PathBuf;

use qgrass_core::encoder::EncoderError;
use qgrass_core::exactfield::FieldError;
use qgrass_core::polyring::PolyError;
use qgrass_core::quiverrep::QuiverError;
use qgrass_core::subcat::SubcatError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed instance file {path}: {message}")]
    InstanceFormat { path: PathBuf, message: String },
    #[error("malformed representation file {path}: {message}")]
    RepFormat { path: PathBuf, message: String },
    #[error("representation `{name}` not found in {path}")]
    UnknownRep { path: PathBuf, name: String },
    #[error("bad --pred `{0}`: expected `perp:W` or `perp:<file>#<name>`")]
    BadPred(String),
    #[error("bad dimension vector `{0}`: expected comma-separated naturals")]
    BadDims(String),
    #[error("{role} {index} `{text}`: {source}")]
    Parse {
        role: &'static str,
        index: usize,
        text: String,
        source: PolyError,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Subcat(#[from] SubcatError),
    #[error(transparent)]
    Encoder(#[from] EncoderError),
}

/// Exit status for a report whose checks did not all pass.
pub const EXIT_CHECK_FAILED: u8 = 1;

enum Cause<'a> {
    Field(&'a FieldError),
    Poly(&'a PolyError),
    Quiver(&'a QuiverError),
    Subcat,
    Encoder,
}

fn from_quiver(e: &QuiverError) -> Cause<'_> {
    match e {
        QuiverError::Linear(f) => Cause::Field(f),
        q => Cause::Quiver(q),
    }
}

fn from_subcat(e: &SubcatError) -> Cause<'_> {
    match e {
        SubcatError::Quiver(q) => from_quiver(q),
        _ => Cause::Subcat,
    }
}

fn from_encoder(e: &EncoderError) -> Cause<'_> {
    match e {
        EncoderError::Poly(p) => Cause::Poly(p),
        EncoderError::Quiver(q) => from_quiver(q),
        EncoderError::Subcat(s) => from_subcat(s),
        _ => Cause::Encoder,
    }
}

impl CliError {
    fn cause(&self) -> Option<Cause<'_>> {
        Some(match self {
            CliError::Field(f) => Cause::Field(f),
            CliError::Poly(p) | CliError::Parse { source: p, .. } => Cause::Poly(p),
            CliError::Quiver(q) => from_quiver(q),
            CliError::Subcat(s) => from_subcat(s),
            CliError::Encoder(e) => from_encoder(e),
            _ => return None,
        })
    }

    /// Process exit status; each kind of failure gets its own code.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } => return 3,
            CliError::InstanceFormat { .. }
            | CliError::RepFormat { .. }
            | CliError::UnknownRep { .. }
            | CliError::BadPred(_)
            | CliError::BadDims(_) => return 4,
            _ => {}
        }
        match self.cause() {
            Some(Cause::Field(_)) => 5,
            Some(Cause::Poly(PolyError::Syntax { .. } | PolyError::VariableOutOfRange { .. })) => 6,
            Some(Cause::Poly(PolyError::ScalarMultiple { .. })) => 7,
            Some(Cause::Poly(_)) => 8,
            Some(Cause::Quiver(QuiverError::CapExceeded { .. })) => 10,
            Some(Cause::Quiver(_)) => 9,
            Some(Cause::Subcat) => 11,
            Some(Cause::Encoder) => 12,
            None => 4,
        }
    }

    /// The precondition the input violated, for the error message.
    pub fn precondition(&self) -> &'static str {
        match self.cause() {
            Some(Cause::Poly(PolyError::Syntax { .. } | PolyError::VariableOutOfRange { .. })) => "polynomials must follow the input grammar",
            Some(Cause::Poly(PolyError::ScalarMultiple { .. })) => "no h_j may be a scalar multiple of any f_i",
            Some(Cause::Poly(PolyError::NoInequations)) => "inequations are required unless `projective = true` or --projective is set",
            Some(Cause::Poly(_)) => "nonzero homogeneous polynomials of positive degree in T0..Tn",
            Some(Cause::Field(FieldError::NotPrime(_) | FieldError::ModulusTooLarge(_) | FieldError::BadFieldSpec(_))) => {
                "field must be `Q` or `Fp:<p>` with p prime and below 2^32"
            }
            Some(Cause::Field(FieldError::BadScalar(_))) => "matrix entries must be integers or fractions",
            Some(Cause::Field(_)) => "matrices must have consistent shapes and fields",
            Some(Cause::Quiver(QuiverError::CapExceeded { .. })) => "enumeration must fit under --cap",
            Some(Cause::Quiver(QuiverError::NotAcyclic)) => "the quiver must be acyclic",
            Some(Cause::Quiver(QuiverError::InfiniteField)) => "exhaustive enumeration needs a finite field",
            Some(Cause::Quiver(QuiverError::NonRationalField)) => "pencils are sampled over Q",
            Some(Cause::Quiver(_)) => "representations must match the quiver, the field and each other",
            Some(Cause::Subcat) => "subcategory inputs must be well formed",
            Some(Cause::Encoder) => "points and subrepresentations must match the instance",
            None => "input files and flags must be well formed",
        }
    }
}
