//! Root and coroot vectors over the simple basis, real/imaginary
//! classification, and height-bounded generation of the positive real roots.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gcm::Gcm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("the zero vector cannot be classified")]
    ZeroVector,
    #[error("height cap must be at least 1")]
    CapTooSmall,
    #[error("root table file: {0}")]
    Io(String),
}

macro_rules! lattice_vector {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn zero(n: usize) -> Self {
                $name(vec![0; n])
            }

            /// The `i`-th basis vector (0-based).
            pub fn simple(n: usize, i: usize) -> Self {
                let mut v = vec![0; n];
                v[i] = 1;
                $name(v)
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            /// Nonzero with all coordinates ≥ 0.
            pub fn is_positive(&self) -> bool {
                !self.is_zero() && self.0.iter().all(|&c| c >= 0)
            }

            /// Nonzero with all coordinates ≤ 0.
            pub fn is_negative(&self) -> bool {
                !self.is_zero() && self.0.iter().all(|&c| c <= 0)
            }

            /// Coordinate sum of the positive representative.
            pub fn height(&self) -> i64 {
                self.0.iter().sum::<i64>().abs()
            }

            /// Indices with nonzero coordinate.
            pub fn support(&self) -> Vec<usize> {
                (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
            }

            pub fn scaled(&self, k: i64) -> Self {
                $name(self.0.iter().map(|&c| c * k).collect())
            }

            /// `self + k·other`
            pub fn add_scaled(&self, k: i64, other: &Self) -> Self {
                $name(
                    self.0
                        .iter()
                        .zip(&other.0)
                        .map(|(&a, &b)| a + k * b)
                        .collect(),
                )
            }
        }

        impl std::ops::Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|&c| -c).collect())
            }
        }

        impl std::ops::Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }

        impl std::ops::Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
            }
        }

        impl std::ops::Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a - b).collect())
            }
        }

        impl From<Vec<i64>> for $name {
            fn from(v: Vec<i64>) -> Self {
                $name(v)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (k, c) in self.0.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

lattice_vector!(RootVector);
lattice_vector!(CorootVector);

/// Order used for every sorted root listing: height, then reverse
/// lexicographic coordinates (so `α₁` precedes `α₂`).
pub fn height_lex_cmp(a: &RootVector, b: &RootVector) -> Ordering {
    a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0))
}

/// A real root together with its coroot.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealRoot {
    pub root: RootVector,
    pub coroot: CorootVector,
}

impl RealRoot {
    pub fn simple(n: usize, i: usize) -> Self {
        RealRoot {
            root: RootVector::simple(n, i),
            coroot: CorootVector::simple(n, i),
        }
    }

    pub fn height(&self) -> i64 {
        self.root.height()
    }

    pub fn is_positive(&self) -> bool {
        self.root.is_positive()
    }

    pub fn negated(&self) -> RealRoot {
        RealRoot {
            root: -&self.root,
            coroot: -&self.coroot,
        }
    }

    /// `⟨v, self∨⟩`
    pub fn coroot_pairing(&self, gcm: &Gcm, v: &RootVector) -> i64 {
        gcm.pairing(v, &self.coroot)
    }

    /// `r_self(v) = v − ⟨v, self∨⟩·self`
    pub fn reflect(&self, gcm: &Gcm, v: &RootVector) -> RootVector {
        let p = gcm.pairing(v, &self.coroot);
        v.add_scaled(-p, &self.root)
    }

    /// `r_self` applied to a real root, coroot included.
    pub fn reflect_real(&self, gcm: &Gcm, other: &RealRoot) -> RealRoot {
        let p = gcm.pairing(&other.root, &self.coroot);
        let q = gcm.pairing(&self.root, &other.coroot);
        RealRoot {
            root: other.root.add_scaled(-p, &self.root),
            coroot: other.coroot.add_scaled(-q, &self.coroot),
        }
    }
}

impl fmt::Debug for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∨{}", self.root, self.coroot)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootClass {
    Real(RealRoot),
    Imaginary,
    NotARoot,
}

impl RootClass {
    pub fn is_root(&self) -> bool {
        !matches!(self, RootClass::NotARoot)
    }

    pub fn real(self) -> Option<RealRoot> {
        match self {
            RootClass::Real(r) => Some(r),
            _ => None,
        }
    }
}

impl Gcm {
    /// `⟨v, d⟩ = Σ_{i,j} d_i · v_j · a[i][j]`
    pub fn pairing(&self, v: &RootVector, d: &CorootVector) -> i64 {
        let n = self.rank();
        let mut total = 0;
        for i in 0..n {
            if d.0[i] == 0 {
                continue;
            }
            total += d.0[i] * self.simple_pairing(v, i);
        }
        total
    }

    pub fn checked_pairing(&self, v: &RootVector, d: &CorootVector) -> Result<i64, RootError> {
        self.check_dim(v.dim())?;
        self.check_dim(d.dim())?;
        Ok(self.pairing(v, d))
    }

    /// `⟨v, α_i∨⟩ = Σ_j a[i][j]·v_j`
    #[inline]
    pub fn simple_pairing(&self, v: &RootVector, i: usize) -> i64 {
        v.0.iter()
            .enumerate()
            .map(|(j, &c)| self.entry(i, j) * c)
            .sum()
    }

    /// `⟨α_i, d⟩ = Σ_k d_k·a[k][i]`
    #[inline]
    pub fn simple_copairing(&self, d: &CorootVector, i: usize) -> i64 {
        d.0.iter()
            .enumerate()
            .map(|(k, &c)| c * self.entry(k, i))
            .sum()
    }

    /// `r_i(v) = v − ⟨v, α_i∨⟩ α_i`, in place.
    #[inline]
    pub fn reflect_root(&self, i: usize, v: &mut RootVector) {
        let p = self.simple_pairing(v, i);
        v.0[i] -= p;
    }

    /// `r_i(d) = d − ⟨α_i, d⟩ α_i∨`, in place.
    #[inline]
    pub fn reflect_coroot(&self, i: usize, d: &mut CorootVector) {
        let p = self.simple_copairing(d, i);
        d.0[i] -= p;
    }

    pub fn reflect_real(&self, i: usize, r: &mut RealRoot) {
        self.reflect_root(i, &mut r.root);
        self.reflect_coroot(i, &mut r.coroot);
    }

    pub fn simple_reflection(&self, i: usize, v: &RootVector) -> Result<RootVector, RootError> {
        if i >= self.rank() {
            return Err(RootError::IndexOutOfRange(i + 1));
        }
        self.check_dim(v.dim())?;
        let mut out = v.clone();
        self.reflect_root(i, &mut out);
        Ok(out)
    }

    fn check_dim(&self, got: usize) -> Result<(), RootError> {
        if got == self.rank() {
            Ok(())
        } else {
            Err(RootError::DimensionMismatch {
                expected: self.rank(),
                got,
            })
        }
    }

    fn support_connected(&self, v: &RootVector) -> bool {
        let support = v.support();
        let Some(&first) = support.first() else {
            return false;
        };
        let mut seen = HashSet::from([first]);
        let mut queue = VecDeque::from([first]);
        while let Some(i) = queue.pop_front() {
            for &j in &support {
                if !seen.contains(&j) && self.entry(i, j) != 0 {
                    seen.insert(j);
                    queue.push_back(j);
                }
            }
        }
        seen.len() == support.len()
    }

    /// Classifies an integer vector as real root, imaginary root or non-root
    /// by height descent.
    pub fn classify_vector(&self, v: &RootVector) -> Result<RootClass, RootError> {
        self.check_dim(v.dim())?;
        if v.is_zero() {
            return Err(RootError::ZeroVector);
        }
        let negative = if v.is_positive() {
            false
        } else if v.is_negative() {
            true
        } else {
            return Ok(RootClass::NotARoot);
        };
        let mut cur = if negative { -v } else { v.clone() };
        let mut word = Vec::new();
        loop {
            if let Some(j) = simple_index(&cur) {
                let mut coroot = CorootVector::simple(self.rank(), j);
                for &i in word.iter().rev() {
                    self.reflect_coroot(i, &mut coroot);
                }
                let root = RealRoot {
                    root: v.clone(),
                    coroot,
                };
                return Ok(RootClass::Real(if negative {
                    RealRoot {
                        root: root.root,
                        coroot: -root.coroot,
                    }
                } else {
                    root
                }));
            }
            // pairing-maximizing index, smallest on ties
            let mut best: Option<(usize, i64)> = None;
            for i in 0..self.rank() {
                let p = self.simple_pairing(&cur, i);
                if p > 0 && best.is_none_or(|(_, bp)| p > bp) {
                    best = Some((i, p));
                }
            }
            match best {
                None => {
                    return Ok(if self.support_connected(&cur) {
                        RootClass::Imaginary
                    } else {
                        RootClass::NotARoot
                    });
                }
                Some((i, _)) => {
                    self.reflect_root(i, &mut cur);
                    word.push(i);
                    if !cur.is_positive() {
                        return Ok(RootClass::NotARoot);
                    }
                }
            }
        }
    }

    /// `true` for real and imaginary roots; `false` for non-roots and zero.
    pub fn is_root(&self, v: &RootVector) -> bool {
        matches!(
            self.classify_vector(v),
            Ok(RootClass::Real(_) | RootClass::Imaginary)
        )
    }
}

fn simple_index(v: &RootVector) -> Option<usize> {
    let mut found = None;
    for (i, &c) in v.0.iter().enumerate() {
        match c {
            0 => {}
            1 if found.is_none() => found = Some(i),
            _ => return None,
        }
    }
    found
}

/// Positive real roots of height at most `height_cap`, in height-lex order.
#[derive(Clone)]
pub struct RootTable {
    gcm: Gcm,
    height_cap: i64,
    roots: Vec<RealRoot>,
    index: HashMap<RootVector, usize>,
}

#[derive(Serialize, Deserialize)]
struct RootLine {
    coords: Vec<i64>,
    coroot: Vec<i64>,
    height: i64,
}

impl RootTable {
    /// Breadth-first orbit of the simple roots under simple reflections,
    /// pruned at `height_cap`.
    pub fn generate(gcm: &Gcm, height_cap: i64) -> Result<RootTable, RootError> {
        if height_cap < 1 {
            return Err(RootError::CapTooSmall);
        }
        let n = gcm.rank();
        let mut found: HashMap<RootVector, RealRoot> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let r = RealRoot::simple(n, i);
            found.insert(r.root.clone(), r.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let mut img = r.clone();
                gcm.reflect_real(i, &mut img);
                if img.root.is_positive()
                    && img.height() <= height_cap
                    && !found.contains_key(&img.root)
                {
                    found.insert(img.root.clone(), img.clone());
                    queue.push_back(img);
                }
            }
        }
        let mut roots: Vec<RealRoot> = found.into_values().collect();
        Ok(Self::from_sorted(gcm.clone(), height_cap, {
            roots.sort_by(|a, b| height_lex_cmp(&a.root, &b.root));
            roots
        }))
    }

    fn from_sorted(gcm: Gcm, height_cap: i64, roots: Vec<RealRoot>) -> RootTable {
        let index = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.root.clone(), k))
            .collect();
        RootTable {
            gcm,
            height_cap,
            roots,
            index,
        }
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn height_cap(&self) -> i64 {
        self.height_cap
    }

    pub fn roots(&self) -> &[RealRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Looks up a positive root.
    pub fn get(&self, v: &RootVector) -> Option<&RealRoot> {
        self.index.get(v).map(|&k| &self.roots[k])
    }

    /// Looks up a root of either sign, negating the stored entry if needed.
    pub fn get_signed(&self, v: &RootVector) -> Option<RealRoot> {
        if v.is_positive() {
            self.get(v).cloned()
        } else {
            self.get(&-v).map(RealRoot::negated)
        }
    }

    /// Positive roots followed by their negatives.
    pub fn signed_roots(&self) -> Vec<RealRoot> {
        self.roots
            .iter()
            .cloned()
            .chain(self.roots.iter().map(RealRoot::negated))
            .collect()
    }

    /// One JSON object per line: `{"coords":[..],"coroot":[..],"height":h}`.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<(), RootError> {
        for r in &self.roots {
            let line = RootLine {
                coords: r.root.0.clone(),
                coroot: r.coroot.0.clone(),
                height: r.height(),
            };
            let text = serde_json::to_string(&line).map_err(|e| RootError::Io(e.to_string()))?;
            writeln!(out, "{text}").map_err(|e| RootError::Io(e.to_string()))?;
        }
        Ok(())
    }

    /// Reads a table written by [`RootTable::write_jsonl`], checking every
    /// line against the matrix.
    pub fn read_jsonl<R: BufRead>(
        gcm: &Gcm,
        height_cap: i64,
        input: R,
    ) -> Result<RootTable, RootError> {
        let mut roots = Vec::new();
        for line in input.lines() {
            let line = line.map_err(|e| RootError::Io(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: RootLine =
                serde_json::from_str(&line).map_err(|e| RootError::Io(e.to_string()))?;
            let root = RealRoot {
                root: RootVector(rec.coords),
                coroot: CorootVector(rec.coroot),
            };
            if root.root.dim() != gcm.rank()
                || root.coroot.dim() != gcm.rank()
                || root.height() != rec.height
                || rec.height > height_cap
                || gcm.pairing(&root.root, &root.coroot) != 2
            {
                return Err(RootError::Io(format!("inconsistent root line: {line}")));
            }
            roots.push(root);
        }
        if !roots
            .windows(2)
            .all(|w| height_lex_cmp(&w[0].root, &w[1].root) == Ordering::Less)
        {
            return Err(RootError::Io(
                "root lines are not in height-lex order".into(),
            ));
        }
        Ok(Self::from_sorted(gcm.clone(), height_cap, roots))
    }
}

impl fmt::Debug for RootTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootTable")
            .field("gcm", &self.gcm)
            .field("height_cap", &self.height_cap)
            .field("len", &self.roots.len())
            .finish()
    }
}
