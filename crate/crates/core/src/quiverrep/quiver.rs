use std::fmt;
use std::ops::Index;

use serde::Serialize;

use super::QuiverError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A finite quiver with vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
}

/// A path, as the list of arrow indices in the order they are traversed.
pub type Path = Vec<usize>;

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        for a in &arrows {
            for v in [a.source, a.target] {
                if v >= vertices {
                    return Err(QuiverError::VertexOutOfRange { vertex: v, count: vertices });
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Builds a quiver from `(source, target)` pairs with labels `a0, a1, …`.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, QuiverError> {
        Self::new(
            vertices,
            edges
                .iter()
                .enumerate()
                .map(|(i, &(source, target))| Arrow {
                    source,
                    target,
                    label: format!("a{i}"),
                })
                .collect(),
        )
    }

    /// The Kronecker quiver `0 ⇉ 1`.
    pub fn kronecker() -> Self {
        Self::from_edges(2, &[(0, 1), (0, 1)]).expect("valid")
    }

    /// The linearly oriented A_n quiver `0 → 1 → ⋯ → n−1`.
    pub fn linear(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    /// A topological order of the vertices, or `None` if there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree = vec![0usize; self.vertices];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..self.vertices).filter(|&v| indegree[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(self.vertices);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        (order.len() == self.vertices).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn require_acyclic(&self) -> Result<(), QuiverError> {
        if self.is_acyclic() {
            Ok(())
        } else {
            Err(QuiverError::NotAcyclic)
        }
    }

    /// All paths starting at `from`, including the trivial path, sorted by
    /// length then lexicographically. Requires an acyclic quiver.
    pub fn paths_from(&self, from: usize) -> Result<Vec<(Path, usize)>, QuiverError> {
        self.require_acyclic()?;
        let mut out = vec![(Vec::new(), from)];
        let mut frontier = vec![(Vec::<usize>::new(), from)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (path, end) in &frontier {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == *end {
                        let mut p = path.clone();
                        p.push(i);
                        next.push((p, a.target));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }
}

/// Per-vertex dimensions of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DimVector(Vec<usize>);

impl DimVector {
    pub fn new(dims: Vec<usize>) -> Self {
        DimVector(dims)
    }

    pub fn zero(len: usize) -> Self {
        DimVector(vec![0; len])
    }

    /// The unit vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut d = vec![0; len];
        d[i] = 1;
        DimVector(d)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// All entries at most 1.
    pub fn is_thin(&self) -> bool {
        self.0.iter().all(|&d| d <= 1)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` unless `other ≤ self`.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        other
            .le(self)
            .then(|| DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Index<usize> for DimVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// The Euler form of the path algebra, `⟨d, e⟩ = Σ_i d_i e_i − Σ_{α:i→j} d_i e_j`.
pub fn euler_form(quiver: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64, QuiverError> {
    for v in [d, e] {
        if v.len() != quiver.vertex_count() {
            return Err(QuiverError::DimVectorLength {
                expected: quiver.vertex_count(),
                found: v.len(),
            });
        }
    }
    let vertices: i64 = (0..quiver.vertex_count()).map(|i| (d[i] * e[i]) as i64).sum();
    let arrows: i64 = quiver.arrows().iter().map(|a| (d[a.source] * e[a.target]) as i64).sum();
    Ok(vertices - arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acyclicity() {
        assert!(Quiver::kronecker().is_acyclic());
        assert!(Quiver::linear(4).is_acyclic());
        let cyclic = Quiver::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!cyclic.is_acyclic());
        assert_eq!(cyclic.paths_from(0), Err(QuiverError::NotAcyclic));
        let looped = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        assert!(!looped.is_acyclic());
        assert!(matches!(
            Quiver::from_edges(2, &[(0, 2)]),
            Err(QuiverError::VertexOutOfRange { vertex: 2, count: 2 })
        ));
    }

    #[test]
    fn paths_in_a3() {
        let q = Quiver::linear(3);
        let paths = q.paths_from(0).unwrap();
        let ends: Vec<usize> = paths.iter().map(|(_, e)| *e).collect();
        assert_eq!(ends, vec![0, 1, 2]);
        assert_eq!(Quiver::kronecker().paths_from(0).unwrap().len(), 3);
    }

    #[test]
    fn euler_form_examples() {
        let arrowless = Quiver::from_edges(3, &[]).unwrap();
        let d = DimVector::new(vec![2, 1, 3]);
        assert_eq!(euler_form(&arrowless, &d, &d).unwrap(), 4 + 1 + 9);

        let k = Quiver::kronecker();
        assert_eq!(euler_form(&k, &DimVector::unit(2, 0), &DimVector::unit(2, 1)).unwrap(), -2);
        assert_eq!(euler_form(&k, &DimVector::unit(2, 1), &DimVector::unit(2, 0)).unwrap(), 0);

        // The conic instance: one arrow 1→0 and three arrows 1→2.
        let q = Quiver::from_edges(3, &[(1, 0), (1, 2), (1, 2), (1, 2)]).unwrap();
        let e = DimVector::new(vec![0, 1, 1]);
        let v = DimVector::new(vec![1, 6, 3]);
        assert_eq!(euler_form(&q, &e, &v).unwrap(), -1);
    }

    #[test]
    fn dim_vector_helpers() {
        let d = DimVector::new(vec![0, 1, 1]);
        assert!(d.is_thin());
        assert!(!DimVector::new(vec![2, 0]).is_thin());
        assert!(d.le(&DimVector::new(vec![1, 6, 3])));
        assert_eq!(DimVector::new(vec![1, 6, 3]).checked_sub(&d), Some(DimVector::new(vec![1, 5, 2])));
        assert_eq!(d.checked_sub(&DimVector::new(vec![1, 0, 0])), None);
        assert_eq!(d.to_string(), "(0,1,1)");
    }
}
