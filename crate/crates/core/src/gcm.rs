//! Generalized Cartan matrices: validation, finite/affine/indefinite
//! classification and standard parabolic restrictions.
//!
//! The pairing convention used throughout the crate is fixed here:
//! `⟨α_j, α_i∨⟩ = a[i][j]`, i.e. the row index names the coroot.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Axiom violations reported by [`Gcm::new`]. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcmError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square (row {row} has {len} entries, expected {expected})")]
    NonSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("diagonal entry a[{0}][{0}] is not 2")]
    DiagonalNotTwo(usize),
    #[error("off-diagonal entry a[{0}][{1}] is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("zero pattern is not symmetric: a[{0}][{1}] and a[{1}][{0}] disagree on zero")]
    AsymmetricZero(usize, usize),
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("malformed GCM file: {0}")]
    Parse(String),
}

/// Type of an indecomposable block, ordered from best to worst behaved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Finite => "Finite",
            Kind::Affine => "Affine",
            Kind::Indefinite => "Indefinite",
        };
        f.write_str(s)
    }
}

/// One connected component of the Dynkin diagram (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub indices: Vec<usize>,
    pub kind: Kind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixType {
    pub kind: Kind,
    pub components: Vec<Component>,
}

/// A validated generalized Cartan matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gcm {
    name: Option<String>,
    n: usize,
    entries: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct GcmFile {
    #[serde(default)]
    name: Option<String>,
    matrix: Vec<Vec<i64>>,
}

impl Gcm {
    /// Validates the GCM axioms and builds the matrix.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, GcmError> {
        let n = rows.len();
        if n == 0 {
            return Err(GcmError::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GcmError::NonSquare {
                    row: r + 1,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 2 {
                return Err(GcmError::DiagonalNotTwo(i + 1));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if i != j && a > 0 {
                    return Err(GcmError::PositiveOffDiagonal(i + 1, j + 1));
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (rows[i][j] == 0) != (rows[j][i] == 0) {
                    return Err(GcmError::AsymmetricZero(i + 1, j + 1));
                }
            }
        }
        Ok(Gcm {
            name: None,
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `a[i][j]`, 0-based.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    /// Connected components of the Dynkin diagram, each sorted, listed by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in 0..self.n {
                    if !seen[j] && self.entry(i, j) != 0 {
                        seen[j] = true;
                        comp.push(j);
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components().len() == 1
    }

    /// Restriction to the index set `indices` (0-based, kept in the given order).
    pub fn submatrix(&self, indices: &[usize]) -> Result<Gcm, GcmError> {
        if indices.is_empty() {
            return Err(GcmError::EmptyIndexSet);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(GcmError::IndexOutOfRange(bad + 1));
        }
        let rows = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.entry(i, j)).collect())
            .collect();
        Gcm::new(rows)
    }

    /// Classification by exact principal minors, per connected component.
    pub fn classify(&self) -> MatrixType {
        let components: Vec<Component> = self
            .components()
            .into_iter()
            .map(|indices| {
                let kind = self.classify_indecomposable(&indices);
                Component { indices, kind }
            })
            .collect();
        let kind = components
            .iter()
            .map(|c| c.kind)
            .max()
            .unwrap_or(Kind::Finite);
        MatrixType { kind, components }
    }

    fn classify_indecomposable(&self, comp: &[usize]) -> Kind {
        let m = comp.len();
        let full_det = self.principal_minor(comp);
        let mut proper_positive = true;
        for mask in 1u64..(1u64 << m) - 1 {
            let sub: Vec<usize> = (0..m)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| comp[b])
                .collect();
            if !self.principal_minor(&sub).is_positive() {
                proper_positive = false;
                break;
            }
        }
        if proper_positive && full_det.is_positive() {
            Kind::Finite
        } else if proper_positive && full_det.is_zero() {
            Kind::Affine
        } else {
            Kind::Indefinite
        }
    }

    /// Determinant of the principal submatrix on `indices`.
    pub fn principal_minor(&self, indices: &[usize]) -> BigInt {
        let m: Vec<Vec<BigInt>> = indices
            .iter()
            .map(|&i| {
                indices
                    .iter()
                    .map(|&j| BigInt::from(self.entry(i, j)))
                    .collect()
            })
            .collect();
        determinant(m)
    }

    pub fn determinant(&self) -> BigInt {
        let all: Vec<usize> = (0..self.n).collect();
        self.principal_minor(&all)
    }

    /// Row-major, whitespace-free JSON of the matrix entries.
    pub fn canonical_string(&self) -> String {
        serde_json::to_string(&self.rows()).expect("integer matrix serializes")
    }

    /// Hex SHA-256 of [`Gcm::canonical_string`]; used as cache key.
    pub fn hash_hex(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_string().as_bytes()))
    }

    pub fn from_json(text: &str) -> Result<Gcm, GcmError> {
        let file: GcmFile =
            serde_json::from_str(text).map_err(|e| GcmError::Parse(e.to_string()))?;
        let gcm = Gcm::new(file.matrix)?;
        Ok(match file.name {
            Some(name) => gcm.named(name),
            None => gcm,
        })
    }

    pub fn to_json(&self) -> String {
        let file = GcmFile {
            name: self.name.clone(),
            matrix: self.rows(),
        };
        serde_json::to_string(&file).expect("GCM serializes")
    }
}

impl fmt::Debug for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "Gcm({name}: {})", self.canonical_string()),
            None => write!(f, "Gcm({})", self.canonical_string()),
        }
    }
}

/// Fraction-free (Bareiss) elimination.
pub(crate) fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
