//! Weyl group elements keyed by their action on the root lattice, reduced
//! words, inversion sets and length-ordered enumeration.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::gcm::Gcm;
use crate::roots::{height_lex_cmp, RealRoot, RootVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("generator {letter} is out of range for rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot parse word: {0}")]
    Parse(String),
}

/// A word in the simple reflections. Letters are stored 0-based and shown
/// 1-based everywhere outside the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds from 1-based letters.
    pub fn one_based(letters: &[usize]) -> Result<Self, WeylError> {
        letters
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or_else(|| WeylError::Parse("letters are 1-based".into()))
            })
            .collect::<Result<_, _>>()
            .map(Word)
    }

    /// Parses comma-separated 1-based letters, e.g. `"1,2,1"`.
    pub fn parse(text: &str) -> Result<Self, WeylError> {
        let text = text.trim().trim_start_matches('[').trim_end_matches(']');
        if text.trim().is_empty() {
            return Ok(Word::empty());
        }
        let letters: Vec<usize> = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| WeylError::Parse(format!("{s:?}: {e}")))
            })
            .collect::<Result<_, _>>()?;
        Word::one_based(&letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l + 1).collect()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn check(&self, gcm: &Gcm) -> Result<(), WeylError> {
        match self.0.iter().find(|&&l| l >= gcm.rank()) {
            Some(&l) => Err(WeylError::LetterOutOfRange {
                letter: l + 1,
                rank: gcm.rank(),
            }),
            None => Ok(()),
        }
    }

    /// Left action `s_{i₁}⋯s_{i_k}·v` (rightmost letter acts first).
    pub fn apply(&self, gcm: &Gcm, v: &RootVector) -> Result<RootVector, WeylError> {
        self.check(gcm)?;
        if v.dim() != gcm.rank() {
            return Err(WeylError::DimensionMismatch {
                expected: gcm.rank(),
                got: v.dim(),
            });
        }
        let mut out = v.clone();
        for &i in self.0.iter().rev() {
            gcm.reflect_root(i, &mut out);
        }
        Ok(out)
    }

    /// Same as [`Word::apply`], carrying the coroot along.
    pub fn apply_real(&self, gcm: &Gcm, r: &RealRoot) -> RealRoot {
        let mut out = r.clone();
        for &i in self.0.iter().rev() {
            gcm.reflect_real(i, &mut out);
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let letters = Vec::<usize>::deserialize(d)?;
        Word::one_based(&letters).map_err(serde::de::Error::custom)
    }
}

/// Row-major `n×n` matrix whose column `j` is `w(α_j)`.
fn identity_action(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// `M ← M·R_i` where `R_i` is the matrix of `s_i`.
fn right_multiply(gcm: &Gcm, action: &mut [i64], i: usize) {
    let n = gcm.rank();
    for j in 0..n {
        if j == i {
            continue;
        }
        let a = gcm.entry(i, j);
        if a == 0 {
            continue;
        }
        for r in 0..n {
            action[r * n + j] -= a * action[r * n + i];
        }
    }
    for r in 0..n {
        action[r * n + i] = -action[r * n + i];
    }
}

fn column(n: usize, action: &[i64], j: usize) -> RootVector {
    RootVector((0..n).map(|r| action[r * n + j]).collect())
}

/// An element of the Weyl group. Equality and hashing use the action
/// matrix only.
#[derive(Clone)]
pub struct WeylElement {
    n: usize,
    action: Vec<i64>,
    word: Word,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement{:?}", self.word)
    }
}

impl WeylElement {
    pub fn identity(gcm: &Gcm) -> Self {
        WeylElement {
            n: gcm.rank(),
            action: identity_action(gcm.rank()),
            word: Word::empty(),
        }
    }

    /// The element represented by `word`, carrying a reduced word for it.
    pub fn from_word(gcm: &Gcm, word: &Word) -> Result<Self, WeylError> {
        word.check(gcm)?;
        let reduced = reduce_unchecked(gcm, word);
        let mut action = identity_action(gcm.rank());
        for &i in reduced.letters() {
            right_multiply(gcm, &mut action, i);
        }
        Ok(WeylElement {
            n: gcm.rank(),
            action,
            word: reduced,
        })
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// A reduced word; lexicographically smallest when produced by
    /// [`enumerate`].
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Row-major action matrix.
    pub fn action(&self) -> &[i64] {
        &self.action
    }

    /// `w(α_j)`
    pub fn image_of_simple(&self, j: usize) -> RootVector {
        column(self.n, &self.action, j)
    }

    pub fn apply(&self, v: &RootVector) -> Result<RootVector, WeylError> {
        if v.dim() != self.n {
            return Err(WeylError::DimensionMismatch {
                expected: self.n,
                got: v.dim(),
            });
        }
        Ok(self.apply_unchecked(v))
    }

    #[inline]
    pub fn apply_unchecked(&self, v: &RootVector) -> RootVector {
        let n = self.n;
        RootVector(
            (0..n)
                .map(|r| (0..n).map(|j| self.action[r * n + j] * v.0[j]).sum())
                .collect(),
        )
    }

    pub fn apply_real(&self, gcm: &Gcm, r: &RealRoot) -> RealRoot {
        self.word.apply_real(gcm, r)
    }

    /// `ℓ(w·s_i) < ℓ(w)`
    pub fn has_right_descent(&self, i: usize) -> bool {
        let n = self.n;
        (0..n).any(|r| self.action[r * n + i] < 0)
    }

    /// `w·s_i` when it is longer than `w`.
    pub fn extend(&self, gcm: &Gcm, i: usize) -> Option<WeylElement> {
        if self.has_right_descent(i) {
            return None;
        }
        let mut action = self.action.clone();
        right_multiply(gcm, &mut action, i);
        let mut letters = self.word.0.clone();
        letters.push(i);
        Some(WeylElement {
            n: self.n,
            action,
            word: Word(letters),
        })
    }

    /// `w·u` for an arbitrary word `u`.
    pub fn mul_word(&self, gcm: &Gcm, u: &Word) -> Result<WeylElement, WeylError> {
        let mut letters = self.word.0.clone();
        letters.extend_from_slice(u.letters());
        WeylElement::from_word(gcm, &Word(letters))
    }

    pub fn inverse(&self, gcm: &Gcm) -> WeylElement {
        WeylElement::from_word(gcm, &self.word.reversed()).expect("letters already checked")
    }

    /// `Δ(w) = {α ∈ Δ₊ : w·α < 0}`, read off a reduced word.
    pub fn inversion_set(&self, gcm: &Gcm) -> InversionSet {
        let letters = self.word.letters();
        let k = letters.len();
        let mut roots = Vec::with_capacity(k);
        for t in 0..k {
            let mut r = RealRoot::simple(self.n, letters[t]);
            for &i in &letters[t + 1..] {
                gcm.reflect_real(i, &mut r);
            }
            roots.push(r);
        }
        roots.sort_by(|a, b| height_lex_cmp(&a.root, &b.root));
        let members = roots.iter().map(|r| r.root.clone()).collect();
        let set = InversionSet {
            owner: self.clone(),
            roots,
            members,
        };
        debug_assert!(
            set.is_closed(gcm),
            "inversion set of {:?} is not closed",
            self.word
        );
        set
    }
}

/// `true` iff `|word| = ℓ(word)`.
pub fn is_reduced(gcm: &Gcm, word: &Word) -> Result<bool, WeylError> {
    word.check(gcm)?;
    let n = gcm.rank();
    let mut action = identity_action(n);
    for &i in word.letters() {
        if (0..n).any(|r| action[r * n + i] < 0) {
            return Ok(false);
        }
        right_multiply(gcm, &mut action, i);
    }
    Ok(true)
}

/// A reduced word for the same element, by deletion via the exchange
/// condition.
pub fn reduce(gcm: &Gcm, word: &Word) -> Result<Word, WeylError> {
    word.check(gcm)?;
    Ok(reduce_unchecked(gcm, word))
}

fn reduce_unchecked(gcm: &Gcm, word: &Word) -> Word {
    let n = gcm.rank();
    let mut letters: Vec<usize> = Vec::with_capacity(word.len());
    let mut action = identity_action(n);
    for &i in word.letters() {
        if !(0..n).any(|r| action[r * n + i] < 0) {
            letters.push(i);
            right_multiply(gcm, &mut action, i);
            continue;
        }
        // u(α_i) < 0: α_i = s_{i_k}⋯s_{i_{t+1}}(α_{i_t}) for exactly one t,
        // and u·s_i is u with letter t deleted.
        let target = RootVector::simple(n, i);
        let mut gamma = target.clone();
        let mut hit = None;
        for t in (0..letters.len()).rev() {
            if gamma == RootVector::simple(n, letters[t]) {
                hit = Some(t);
                break;
            }
            gcm.reflect_root(letters[t], &mut gamma);
        }
        let t = hit.expect("exchange condition");
        letters.remove(t);
        action = identity_action(n);
        for &l in &letters {
            right_multiply(gcm, &mut action, l);
        }
    }
    Word(letters)
}

/// The finite set `Δ(w)` with coroots, sorted in height-lex order.
#[derive(Clone, Debug)]
pub struct InversionSet {
    owner: WeylElement,
    roots: Vec<RealRoot>,
    members: HashSet<RootVector>,
}

impl InversionSet {
    pub fn owner(&self) -> &WeylElement {
        &self.owner
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

    pub fn contains(&self, v: &RootVector) -> bool {
        self.members.contains(v)
    }

    pub fn max_height(&self) -> i64 {
        self.roots.iter().map(RealRoot::height).max().unwrap_or(0)
    }

    /// For all γ, δ in the set with γ+δ a root, γ+δ is in the set.
    pub fn is_closed(&self, gcm: &Gcm) -> bool {
        self.closedness_violation(gcm).is_none()
    }

    pub fn closedness_violation(&self, gcm: &Gcm) -> Option<(RootVector, RootVector)> {
        for (a, x) in self.roots.iter().enumerate() {
            for y in &self.roots[a + 1..] {
                let sum = &x.root + &y.root;
                if !self.members.contains(&sum) && gcm.is_root(&sum) {
                    return Some((x.root.clone(), y.root.clone()));
                }
            }
        }
        None
    }
}

/// Every element of length at most `max_length`, exactly once, in
/// (length, lexicographic reduced word) order.
pub fn enumerate(gcm: &Gcm, max_length: usize) -> Enumeration {
    Enumeration {
        gcm: gcm.clone(),
        max_length,
        level: vec![WeylElement::identity(gcm)],
        level_length: 0,
        pos: 0,
    }
}

/// Number of elements of each length `0..=max_length`.
pub fn counts_by_length(gcm: &Gcm, max_length: usize) -> Vec<usize> {
    let mut counts = vec![0; max_length + 1];
    for w in enumerate(gcm, max_length) {
        counts[w.length()] += 1;
    }
    counts
}

/// Breadth-first producer behind [`enumerate`]; holds one length class at a
/// time.
pub struct Enumeration {
    gcm: Gcm,
    max_length: usize,
    level: Vec<WeylElement>,
    level_length: usize,
    pos: usize,
}

impl Enumeration {
    fn advance_level(&mut self) {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut next = Vec::new();
        for w in &self.level {
            for i in 0..self.gcm.rank() {
                if let Some(v) = w.extend(&self.gcm, i) {
                    if seen.insert(v.action.clone()) {
                        next.push(v);
                    }
                }
            }
        }
        self.level = next;
        self.level_length += 1;
        self.pos = 0;
    }
}

impl Iterator for Enumeration {
    type Item = WeylElement;

    fn next(&mut self) -> Option<WeylElement> {
        loop {
            if self.pos < self.level.len() {
                self.pos += 1;
                return Some(self.level[self.pos - 1].clone());
            }
            if self.level_length >= self.max_length || self.level.is_empty() {
                return None;
            }
            self.advance_level();
        }
    }
}
