//! Relative position of two real roots (meeting walls, nested or skew
//! half-spaces), prenilpotency of pairs and finite sets, closure, nested
//! chains and the empirical bound on `⟨α, β∨⟩` for summable pairs.
//!
//! Walls and half-spaces of the Tits cone are never built. Two walls meet
//! iff the pair generates a finite subsystem (pairing product ≤ 3); `D(α)`
//! and `D(β)` are nested iff the product is ≥ 4 and `⟨α, β∨⟩ > 0`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fm::strict_cone_feasible;
use crate::gcm::Gcm;
use crate::roots::{height_lex_cmp, RealRoot, RootClass, RootError, RootTable, RootVector};
use crate::weyl::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("roots are not nested")]
    NotNested,
    #[error("{0} is an imaginary root; prenilpotent sets contain real roots only")]
    ImaginaryInput(RootVector),
    #[error("{0} is not a root")]
    NotARoot(RootVector),
    #[error("closure produced {root} above height cap {cap}")]
    CapExceeded { root: RootVector, cap: i64 },
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Which half-space is the smaller one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NestDirection {
    /// `D(α) ⊊ D(β)`
    AlphaInsideBeta,
    /// `D(β) ⊊ D(α)`
    BetaInsideAlpha,
}

impl NestDirection {
    pub fn flipped(self) -> Self {
        match self {
            NestDirection::AlphaInsideBeta => NestDirection::BetaInsideAlpha,
            NestDirection::BetaInsideAlpha => NestDirection::AlphaInsideBeta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairKind {
    Equal,
    Opposite,
    FiniteMeet,
    Nested(NestDirection),
    Skew,
}

impl PairKind {
    /// The walls `∂α` and `∂β` intersect (or coincide).
    pub fn walls_meet(self) -> bool {
        matches!(
            self,
            PairKind::Equal | PairKind::Opposite | PairKind::FiniteMeet
        )
    }

    pub fn walls_parallel(self) -> bool {
        !self.walls_meet()
    }

    pub fn same_tag(self, other: PairKind) -> bool {
        std::mem::discriminant(&self) == std::mem::discriminant(&other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRelation {
    pub kind: PairKind,
    /// `(⟨α, β∨⟩, ⟨β, α∨⟩)`
    pub pairings: (i64, i64),
}

impl PairRelation {
    pub fn product(&self) -> i64 {
        self.pairings.0 * self.pairings.1
    }
}

pub fn classify_pair(gcm: &Gcm, alpha: &RealRoot, beta: &RealRoot) -> PairRelation {
    let pairings = (
        gcm.pairing(&alpha.root, &beta.coroot),
        gcm.pairing(&beta.root, &alpha.coroot),
    );
    let kind = if alpha.root == beta.root {
        PairKind::Equal
    } else if alpha.root == -&beta.root {
        PairKind::Opposite
    } else {
        let product = pairings.0 * pairings.1;
        debug_assert!(
            product >= 0,
            "pairings of real roots disagree in sign: {pairings:?}"
        );
        if product <= 3 {
            PairKind::FiniteMeet
        } else if pairings.0 > 0 {
            PairKind::Nested(direction_unchecked(gcm, alpha, beta))
        } else {
            PairKind::Skew
        }
    };
    PairRelation { kind, pairings }
}

/// Direction of inclusion for a nested pair.
pub fn nested_direction(
    gcm: &Gcm,
    alpha: &RealRoot,
    beta: &RealRoot,
) -> Result<NestDirection, PairError> {
    match classify_pair(gcm, alpha, beta).kind {
        PairKind::Nested(d) => Ok(d),
        _ => Err(PairError::NotNested),
    }
}

fn direction_unchecked(gcm: &Gcm, alpha: &RealRoot, beta: &RealRoot) -> NestDirection {
    match (alpha.is_positive(), beta.is_positive()) {
        // The half-space of a positive root contains the fundamental chamber.
        (true, false) => NestDirection::BetaInsideAlpha,
        (false, true) => NestDirection::AlphaInsideBeta,
        (false, false) => direction_unchecked(gcm, &alpha.negated(), &beta.negated()).flipped(),
        (true, true) => {
            if beyond_wall(gcm, &alpha.root, &beta.root) {
                NestDirection::AlphaInsideBeta
            } else {
                NestDirection::BetaInsideAlpha
            }
        }
    }
}

/// Descends the positive real root `beta` to a simple root along `u` and
/// reports whether `u·alpha < 0`. The chamber `u⁻¹C` touches `∂β` from the
/// positive side, so for nested positive roots this holds iff `D(α) ⊂ D(β)`.
fn beyond_wall(gcm: &Gcm, alpha: &RootVector, beta: &RootVector) -> bool {
    let (mut a, mut b) = (alpha.clone(), beta.clone());
    while b.height() > 1 {
        let i = (0..gcm.rank())
            .find(|&i| gcm.simple_pairing(&b, i) > 0)
            .expect("a non-simple positive real root has a descent");
        gcm.reflect_root(i, &mut a);
        gcm.reflect_root(i, &mut b);
    }
    a.is_negative()
}

/// `D(α) ⊊ D(β)`
pub fn strictly_inside(gcm: &Gcm, alpha: &RealRoot, beta: &RealRoot) -> bool {
    classify_pair(gcm, alpha, beta).kind == PairKind::Nested(NestDirection::AlphaInsideBeta)
}

pub fn is_prenilpotent_pair(gcm: &Gcm, alpha: &RealRoot, beta: &RealRoot) -> bool {
    match classify_pair(gcm, alpha, beta).kind {
        PairKind::Equal | PairKind::FiniteMeet | PairKind::Nested(_) => true,
        PairKind::Opposite | PairKind::Skew => false,
    }
}

/// Smallest closed superset of `phi`; fails once an element would exceed
/// `cap` in height.
pub fn closure(gcm: &Gcm, phi: &[RootVector], cap: i64) -> Result<Vec<RootVector>, PairError> {
    let mut members: HashSet<RootVector> = HashSet::new();
    let mut list: Vec<RootVector> = Vec::new();
    let mut queue = VecDeque::new();
    for v in phi {
        if members.insert(v.clone()) {
            list.push(v.clone());
            queue.push_back(list.len() - 1);
        }
    }
    while let Some(k) = queue.pop_front() {
        let mut found = Vec::new();
        for other in &list {
            let sum = &list[k] + other;
            if sum.is_zero() || members.contains(&sum) {
                continue;
            }
            if gcm.is_root(&sum) {
                if sum.height() > cap {
                    return Err(PairError::CapExceeded { root: sum, cap });
                }
                found.push(sum);
            }
        }
        for sum in found {
            if members.insert(sum.clone()) {
                list.push(sum);
                queue.push_back(list.len() - 1);
            }
        }
    }
    list.sort_by(height_lex_cmp);
    Ok(list)
}

/// Why a chamber walk gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UndecidedReason {
    StepCap,
    NoSeparatingWall,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Walk {
    /// `w·Φ ⊂ Δ₊` for this word (verified by replay).
    Positivized(Word),
    /// The cone `{x : ⟨γ, x⟩ > 0 ∀γ ∈ Φ}` is empty, so no such `w` exists.
    Impossible,
    Undecided(UndecidedReason),
}

fn classify_real(gcm: &Gcm, v: &RootVector) -> Result<RealRoot, PairError> {
    match gcm.classify_vector(v)? {
        RootClass::Real(r) => Ok(r),
        RootClass::Imaginary => Err(PairError::ImaginaryInput(v.clone())),
        RootClass::NotARoot => Err(PairError::NotARoot(v.clone())),
    }
}

pub fn default_max_steps(phi: &[RootVector]) -> usize {
    let h = phi.iter().map(RootVector::height).max().unwrap_or(1).max(1) as usize;
    100 * phi.len().max(1) * h
}

/// Chamber walk: while some root of `Ψ = w·Φ` is negative, cross a simple
/// wall toward the cone `{x : ⟨γ, x⟩ > 0 ∀γ ∈ Ψ}`. A wall separating the
/// whole cone from the current chamber is crossed without branching;
/// otherwise every wall whose far side meets the cone is queued,
/// breadth-first. `max_steps` bounds the number of chambers expanded.
pub fn make_all_positive(
    gcm: &Gcm,
    phi: &[RootVector],
    max_steps: usize,
) -> Result<Walk, PairError> {
    for v in phi {
        classify_real(gcm, v)?;
    }
    if phi.iter().all(RootVector::is_positive) {
        return Ok(Walk::Positivized(Word::empty()));
    }
    // Feasibility of the cone is W-invariant.
    let rows: Vec<Vec<i64>> = phi.iter().map(|v| v.0.clone()).collect();
    if !strict_cone_feasible(&rows) {
        return Ok(Walk::Impossible);
    }
    let n = gcm.rank();
    let mut visited: HashSet<Vec<RootVector>> = HashSet::new();
    // (Ψ, crossed walls, earliest first)
    let mut queue: VecDeque<(Vec<RootVector>, Vec<usize>)> =
        VecDeque::from([(phi.to_vec(), Vec::new())]);
    let mut steps = 0;
    while let Some((psi, letters)) = queue.pop_front() {
        if psi.iter().all(RootVector::is_positive) {
            let word = Word::new(letters.into_iter().rev().collect());
            debug_assert!(phi
                .iter()
                .all(|v| word.apply(gcm, v).unwrap().is_positive()));
            return Ok(Walk::Positivized(word));
        }
        if steps >= max_steps {
            return Ok(Walk::Undecided(UndecidedReason::StepCap));
        }
        steps += 1;
        let mut rows: Vec<Vec<i64>> = psi.iter().map(|v| v.0.clone()).collect();
        let mut side = |i: usize, sign: i64| {
            rows.push(RootVector::simple(n, i).scaled(sign).0);
            let feasible = strict_cone_feasible(&rows);
            rows.pop();
            feasible
        };
        let candidates: Vec<usize> = match (0..n).find(|&i| !side(i, 1)) {
            Some(forced) => vec![forced],
            None => (0..n).filter(|&i| side(i, -1)).collect(),
        };
        for i in candidates {
            let mut next = psi.clone();
            for v in next.iter_mut() {
                gcm.reflect_root(i, v);
            }
            let mut key = next.clone();
            key.sort();
            if visited.insert(key) {
                let mut crossed = letters.clone();
                crossed.push(i);
                queue.push_back((next, crossed));
            }
        }
    }
    Ok(Walk::Undecided(UndecidedReason::NoSeparatingWall))
}

/// Words `w, w'` with `w·Φ ⊂ Δ₊` and `w'·Φ ⊂ Δ₋`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrenilpotencyCertificate {
    pub positivizer: Word,
    pub negativizer: Word,
}

impl PrenilpotencyCertificate {
    pub fn verify(&self, gcm: &Gcm, phi: &[RootVector]) -> bool {
        phi.iter().all(|v| {
            matches!(self.positivizer.apply(gcm, v), Ok(x) if x.is_positive())
                && matches!(self.negativizer.apply(gcm, v), Ok(x) if x.is_negative())
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Obstruction {
    /// A pair that is opposite or skew.
    Pair(RootVector, RootVector),
    /// The positive (or negative) cone of the set is empty.
    EmptyCone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prenilpotency {
    Certified(PrenilpotencyCertificate),
    NotPrenilpotent(Obstruction),
    Undecided(UndecidedReason),
}

pub fn is_prenilpotent_set(
    gcm: &Gcm,
    phi: &[RootVector],
    max_steps: usize,
) -> Result<Prenilpotency, PairError> {
    let reals: Vec<RealRoot> = phi
        .iter()
        .map(|v| classify_real(gcm, v))
        .collect::<Result<_, _>>()?;
    for (a, x) in reals.iter().enumerate() {
        for y in &reals[a + 1..] {
            if !is_prenilpotent_pair(gcm, x, y) {
                return Ok(Prenilpotency::NotPrenilpotent(Obstruction::Pair(
                    x.root.clone(),
                    y.root.clone(),
                )));
            }
        }
    }
    let negated: Vec<RootVector> = phi.iter().map(|v| -v).collect();
    let positivizer = match make_all_positive(gcm, phi, max_steps)? {
        Walk::Positivized(w) => w,
        Walk::Impossible => return Ok(Prenilpotency::NotPrenilpotent(Obstruction::EmptyCone)),
        Walk::Undecided(r) => return Ok(Prenilpotency::Undecided(r)),
    };
    let negativizer = match make_all_positive(gcm, &negated, max_steps)? {
        Walk::Positivized(w) => w,
        Walk::Impossible => return Ok(Prenilpotency::NotPrenilpotent(Obstruction::EmptyCone)),
        Walk::Undecided(r) => return Ok(Prenilpotency::Undecided(r)),
    };
    let cert = PrenilpotencyCertificate {
        positivizer,
        negativizer,
    };
    debug_assert!(cert.verify(gcm, phi));
    Ok(Prenilpotency::Certified(cert))
}

/// Longest chain `D(γ₁) ⊊ … ⊊ D(γ_m)` inside `phi`, innermost first.
/// Ties go to the earliest roots in height-lex order.
pub fn max_nested_chain(gcm: &Gcm, phi: &[RealRoot]) -> Vec<RealRoot> {
    let mut nodes: Vec<RealRoot> = Vec::new();
    let mut seen = HashSet::new();
    for r in phi {
        if seen.insert(r.root.clone()) {
            nodes.push(r.clone());
        }
    }
    nodes.sort_by(|a, b| height_lex_cmp(&a.root, &b.root));
    let m = nodes.len();
    if m == 0 {
        return Vec::new();
    }
    let mut inside = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            if a != b {
                inside[a][b] = strictly_inside(gcm, &nodes[a], &nodes[b]);
            }
        }
    }
    // Strict inclusion is a partial order, so predecessor counts give a
    // topological order.
    let mut order: Vec<usize> = (0..m).collect();
    let preds: Vec<usize> = (0..m)
        .map(|b| (0..m).filter(|&a| inside[a][b]).count())
        .collect();
    order.sort_by_key(|&b| (preds[b], b));
    let mut best = vec![1usize; m];
    let mut back: Vec<Option<usize>> = vec![None; m];
    for &b in &order {
        for a in 0..m {
            if inside[a][b] && (best[a] + 1 > best[b]) {
                best[b] = best[a] + 1;
                back[b] = Some(a);
            }
        }
    }
    let mut end = 0;
    for b in 1..m {
        if best[b] > best[end] {
            end = b;
        }
    }
    let mut chain = vec![nodes[end].clone()];
    let mut cur = end;
    while let Some(prev) = back[cur] {
        chain.push(nodes[prev].clone());
        cur = prev;
    }
    chain.reverse();
    chain
}

/// Largest `⟨α, β∨⟩` over prenilpotent pairs with `α + β` a root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KWitness {
    pub value: i64,
    pub alpha: RootVector,
    pub beta: RootVector,
}

/// Scans ordered pairs from `±table`. `None` when no prenilpotent pair sums
/// to a root.
pub fn empirical_k(table: &RootTable) -> Option<KWitness> {
    let gcm = table.gcm();
    let signed = table.signed_roots();
    let mut best: Option<KWitness> = None;
    for a in &signed {
        for b in &signed {
            if !is_prenilpotent_pair(gcm, a, b) {
                continue;
            }
            let value = gcm.pairing(&a.root, &b.coroot);
            if best.as_ref().is_some_and(|w| value <= w.value) {
                continue;
            }
            let sum = &a.root + &b.root;
            if !sum.is_zero() && gcm.is_root(&sum) {
                best = Some(KWitness {
                    value,
                    alpha: a.root.clone(),
                    beta: b.root.clone(),
                });
            }
        }
    }
    best
}
