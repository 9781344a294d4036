//! Nilpotent sequences, nilpotency degrees of inversion sets, degree sweeps
//! over the Weyl group, and the checks built on them.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{AffineError, AffineProjection};
use crate::fm::strict_cone_feasible;
use crate::gcm::Gcm;
use crate::pairs::max_nested_chain;
use crate::pairs::{
    classify_pair, default_max_steps, is_prenilpotent_set, Obstruction, PairError, PairKind,
    Prenilpotency, UndecidedReason,
};
use crate::roots::{height_lex_cmp, RealRoot, RootClass, RootError, RootVector};
use crate::weyl::{enumerate, InversionSet, WeylElement, WeylError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ns1Failure {
    /// A term outside the supplied inversion set.
    NotInContext(RootVector),
    ImaginaryTerm(RootVector),
    NotARoot(RootVector),
    Obstruction(Obstruction),
    Undecided(UndecidedReason),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotencyError {
    #[error("empty sequence")]
    Empty,
    #[error("terms are not prenilpotent: {0:?}")]
    Ns1Violation(Ns1Failure),
    /// 1-based position of the first partial sum outside `Δ`.
    #[error("partial sum {index} ({sum}) is not a root")]
    Ns2Violation { index: usize, sum: RootVector },
    #[error("partial sum {index} ({sum}) is imaginary")]
    ImaginaryPartialSum { index: usize, sum: RootVector },
    #[error("{0} + {1} is a root outside the set")]
    NotClosed(RootVector, RootVector),
    #[error("{0} is not a positive root")]
    NotAllPositive(RootVector),
    #[error("search depth exceeded cap {0}")]
    CapExceeded(usize),
    #[error("indices do not form a nested chain")]
    NotAChain,
    #[error("degree {degree} of {word} exceeds the bound {bound}")]
    BoundViolated {
        word: Word,
        degree: usize,
        bound: usize,
    },
    #[error("projected witness of {word} is invalid: {detail}")]
    ProjectionInvalid { word: Word, detail: String },
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Terms `β₁, …, β_k` with prenilpotent support and every partial sum a root.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NilpotentSequence {
    terms: Vec<RealRoot>,
    partial_sums: Vec<RealRoot>,
}

impl NilpotentSequence {
    pub fn terms(&self) -> &[RealRoot] {
        &self.terms
    }

    pub fn partial_sums(&self) -> &[RealRoot] {
        &self.partial_sums
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_vectors(&self) -> Vec<RootVector> {
        self.terms.iter().map(|t| t.root.clone()).collect()
    }
}

/// Validates NS1 and NS2. With a context, NS1 holds for free when every
/// term lies in it.
pub fn check_sequence(
    gcm: &Gcm,
    seq: &[RootVector],
    context: Option<&InversionSet>,
) -> Result<NilpotentSequence, NilpotencyError> {
    if seq.is_empty() {
        return Err(NilpotencyError::Empty);
    }
    let mut terms = Vec::with_capacity(seq.len());
    for v in seq {
        match gcm.classify_vector(v)? {
            RootClass::Real(r) => terms.push(r),
            RootClass::Imaginary => {
                return Err(NilpotencyError::Ns1Violation(Ns1Failure::ImaginaryTerm(
                    v.clone(),
                )))
            }
            RootClass::NotARoot => {
                return Err(NilpotencyError::Ns1Violation(Ns1Failure::NotARoot(
                    v.clone(),
                )))
            }
        }
    }
    let mut distinct: Vec<RootVector> = Vec::new();
    let mut seen = HashSet::new();
    for v in seq {
        if seen.insert(v) {
            distinct.push(v.clone());
        }
    }
    match context {
        Some(ctx) => {
            if let Some(v) = distinct.iter().find(|v| !ctx.contains(v)) {
                return Err(NilpotencyError::Ns1Violation(Ns1Failure::NotInContext(
                    v.clone(),
                )));
            }
        }
        None => match is_prenilpotent_set(gcm, &distinct, default_max_steps(&distinct))? {
            Prenilpotency::Certified(_) => {}
            Prenilpotency::NotPrenilpotent(o) => {
                return Err(NilpotencyError::Ns1Violation(Ns1Failure::Obstruction(o)))
            }
            Prenilpotency::Undecided(r) => {
                return Err(NilpotencyError::Ns1Violation(Ns1Failure::Undecided(r)))
            }
        },
    }
    let mut partial_sums = Vec::with_capacity(seq.len());
    let mut sum = RootVector::zero(gcm.rank());
    for (k, v) in seq.iter().enumerate() {
        sum = &sum + v;
        match gcm.classify_vector(&sum) {
            Ok(RootClass::Real(r)) => partial_sums.push(r),
            Ok(RootClass::Imaginary) => {
                return Err(NilpotencyError::ImaginaryPartialSum { index: k + 1, sum });
            }
            Ok(RootClass::NotARoot) | Err(RootError::ZeroVector) => {
                return Err(NilpotencyError::Ns2Violation { index: k + 1, sum });
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(NilpotentSequence {
        terms,
        partial_sums,
    })
}

fn check_closed_positive(
    gcm: &Gcm,
    phi: &[RealRoot],
) -> Result<HashMap<RootVector, usize>, NilpotencyError> {
    if let Some(r) = phi.iter().find(|r| !r.is_positive()) {
        return Err(NilpotencyError::NotAllPositive(r.root.clone()));
    }
    let index: HashMap<RootVector, usize> = phi
        .iter()
        .enumerate()
        .map(|(k, r)| (r.root.clone(), k))
        .collect();
    for (a, x) in phi.iter().enumerate() {
        for y in &phi[a..] {
            let s = &x.root + &y.root;
            if !index.contains_key(&s) && gcm.is_root(&s) {
                return Err(NilpotencyError::NotClosed(x.root.clone(), y.root.clone()));
            }
        }
    }
    Ok(index)
}

/// Exact nilpotency degree of a finite closed set of positive real roots,
/// with a witness. Partial sums stay inside the set, so the longest
/// sequence ending at `σ` extends one ending at some `σ − β`.
pub fn degree_dp(
    gcm: &Gcm,
    phi: &[RealRoot],
) -> Result<(usize, NilpotentSequence), NilpotencyError> {
    let mut nodes: Vec<RealRoot> = phi.to_vec();
    nodes.sort_by(|a, b| height_lex_cmp(&a.root, &b.root));
    nodes.dedup_by(|a, b| a.root == b.root);
    let index = check_closed_positive(gcm, &nodes)?;
    if nodes.is_empty() {
        return Ok((0, NilpotentSequence::default()));
    }
    let m = nodes.len();
    let mut best = vec![1usize; m];
    // (previous partial sum, last term)
    let mut back: Vec<Option<(usize, usize)>> = vec![None; m];
    for s in 0..m {
        for (b, beta) in nodes.iter().enumerate() {
            let prev = &nodes[s].root - &beta.root;
            if let Some(&p) = index.get(&prev) {
                if best[p] + 1 > best[s] {
                    best[s] = best[p] + 1;
                    back[s] = Some((p, b));
                }
            }
        }
    }
    let mut end = 0;
    for s in 1..m {
        if best[s] > best[end] {
            end = s;
        }
    }
    let mut terms = Vec::new();
    let mut sums = Vec::new();
    let mut cur = end;
    loop {
        sums.push(nodes[cur].clone());
        match back[cur] {
            Some((p, b)) => {
                terms.push(nodes[b].clone());
                cur = p;
            }
            None => {
                terms.push(nodes[cur].clone());
                break;
            }
        }
    }
    terms.reverse();
    sums.reverse();
    Ok((
        best[end],
        NilpotentSequence {
            terms,
            partial_sums: sums,
        },
    ))
}

/// Brute-force degree: every sequence of terms from `phi` whose partial
/// sums are roots, explored without memoization. `phi` must be prenilpotent.
pub fn degree_dfs(gcm: &Gcm, phi: &[RootVector], cap: usize) -> Result<usize, NilpotencyError> {
    fn go(
        gcm: &Gcm,
        phi: &[RootVector],
        sum: &RootVector,
        depth: usize,
        cap: usize,
    ) -> Result<usize, NilpotencyError> {
        let mut best = depth;
        for beta in phi {
            let next = sum + beta;
            if next.is_zero() || !gcm.is_root(&next) {
                continue;
            }
            if depth + 1 > cap {
                return Err(NilpotencyError::CapExceeded(cap));
            }
            best = best.max(go(gcm, phi, &next, depth + 1, cap)?);
        }
        Ok(best)
    }
    let mut distinct: Vec<RootVector> = Vec::new();
    for v in phi {
        if !distinct.contains(v) {
            distinct.push(v.clone());
        }
    }
    go(gcm, &distinct, &RootVector::zero(gcm.rank()), 0, cap)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub word: Word,
    pub length: usize,
    pub degree: usize,
    pub witness: NilpotentSequence,
    pub invset_size: usize,
    pub max_chain: usize,
}

pub fn degree_of_element(gcm: &Gcm, w: &WeylElement) -> Result<DegreeReport, NilpotencyError> {
    let inv = w.inversion_set(gcm);
    let (degree, witness) = degree_dp(gcm, inv.roots())?;
    Ok(DegreeReport {
        word: w.word().clone(),
        length: w.length(),
        degree,
        witness,
        invset_size: inv.len(),
        max_chain: max_nested_chain(gcm, inv.roots()).len(),
    })
}

/// The word is reduced first.
pub fn degree_of_word(gcm: &Gcm, word: &Word) -> Result<DegreeReport, NilpotencyError> {
    degree_of_element(gcm, &WeylElement::from_word(gcm, word)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub max_length: usize,
    /// Index `ℓ` holds the number of elements of length `ℓ`.
    pub count_per_length: Vec<usize>,
    /// `None` for lengths with no elements.
    pub max_degree_per_length: Vec<Option<usize>>,
    pub global_max: usize,
    /// The maximum is unchanged over the last three nonempty length classes.
    pub plateau: bool,
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub reports: Vec<DegreeReport>,
    pub summary: SweepSummary,
}

pub fn summarize(max_length: usize, reports: &[DegreeReport]) -> SweepSummary {
    let mut count_per_length = vec![0; max_length + 1];
    let mut max_degree_per_length: Vec<Option<usize>> = vec![None; max_length + 1];
    for r in reports {
        count_per_length[r.length] += 1;
        let slot = &mut max_degree_per_length[r.length];
        *slot = Some(slot.map_or(r.degree, |d| d.max(r.degree)));
    }
    let nonempty: Vec<usize> = max_degree_per_length.iter().flatten().copied().collect();
    let plateau = nonempty.len() >= 3
        && nonempty[nonempty.len() - 3..]
            .windows(2)
            .all(|w| w[0] == w[1]);
    SweepSummary {
        max_length,
        count_per_length,
        max_degree_per_length,
        global_max: nonempty.iter().copied().max().unwrap_or(0),
        plateau,
    }
}

/// Degree of every element of length ≤ `max_length`, in enumeration order.
pub fn sweep(gcm: &Gcm, max_length: usize) -> Result<Sweep, NilpotencyError> {
    let elements: Vec<WeylElement> = enumerate(gcm, max_length).collect();
    let reports: Vec<DegreeReport> = elements
        .par_iter()
        .map(|w| degree_of_element(gcm, w))
        .collect::<Result<_, _>>()?;
    let summary = summarize(max_length, &reports);
    Ok(Sweep { reports, summary })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim1Outcome {
    pub holds: bool,
    /// 0-based position in the sequence of the first failing chain index.
    pub failing_index: Option<usize>,
    pub khat: i64,
}

/// `3·|J(i)| ≥ |I(i)| − K̂` for each `i ∈ I`, where `I(i)` are the earlier
/// chain indices and `J(i)` the earlier indices `j` with `⟨β_j, β_i∨⟩ < 0`.
pub fn verify_claim1(
    gcm: &Gcm,
    seq: &NilpotentSequence,
    chain: &[usize],
    khat: i64,
) -> Result<Claim1Outcome, NilpotencyError> {
    let mut chain = chain.to_vec();
    chain.sort_unstable();
    chain.dedup();
    let terms = seq.terms();
    if chain.iter().any(|&i| i >= terms.len()) {
        return Err(NilpotencyError::NotAChain);
    }
    for (a, &i) in chain.iter().enumerate() {
        for &j in &chain[a + 1..] {
            match classify_pair(gcm, &terms[i], &terms[j]).kind {
                PairKind::Equal | PairKind::Nested(_) => {}
                _ => return Err(NilpotencyError::NotAChain),
            }
        }
    }
    for (pos, &i) in chain.iter().enumerate() {
        let earlier_chain = pos as i64;
        let negative = (0..i)
            .filter(|&j| gcm.pairing(&terms[j].root, &terms[i].coroot) < 0)
            .count() as i64;
        if 3 * negative < earlier_chain - khat {
            return Ok(Claim1Outcome {
                holds: false,
                failing_index: Some(i),
                khat,
            });
        }
    }
    Ok(Claim1Outcome {
        holds: true,
        failing_index: None,
        khat,
    })
}

/// Largest set of positions whose terms form a chain of half-spaces;
/// repeated terms count with multiplicity.
pub fn chain_positions(gcm: &Gcm, seq: &NilpotentSequence) -> Vec<usize> {
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (k, t) in seq.terms().iter().enumerate() {
        groups.entry(t.root.0.clone()).or_default().push(k);
    }
    let keys: Vec<&Vec<usize>> = groups.values().collect();
    let reps: Vec<&RealRoot> = keys.iter().map(|g| &seq.terms()[g[0]]).collect();
    let m = reps.len();
    let inside = |a: usize, b: usize| {
        classify_pair(gcm, reps[a], reps[b]).kind
            == PairKind::Nested(crate::pairs::NestDirection::AlphaInsideBeta)
    };
    let preds: Vec<usize> = (0..m)
        .map(|b| (0..m).filter(|&a| a != b && inside(a, b)).count())
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&b| (preds[b], b));
    let mut best: Vec<usize> = keys.iter().map(|g| g.len()).collect();
    let mut back: Vec<Option<usize>> = vec![None; m];
    for &b in &order {
        for a in 0..m {
            if a != b && inside(a, b) && best[a] + keys[b].len() > best[b] {
                best[b] = best[a] + keys[b].len();
                back[b] = Some(a);
            }
        }
    }
    let Some(mut cur) = (0..m).max_by_key(|&b| (best[b], std::cmp::Reverse(b))) else {
        return Vec::new();
    };
    let mut out = keys[cur].clone();
    while let Some(p) = back[cur] {
        out.extend(keys[p].iter().copied());
        cur = p;
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineBoundReport {
    pub bound: usize,
    pub max_length: usize,
    pub checked: usize,
    pub max_degree: usize,
    pub summary: SweepSummary,
}

/// Every degree up to length `max_length` is at most `|r̄eΔ|`, and every
/// witness projects to a nilpotent sequence of the finite system.
pub fn affine_bound_check(
    gcm: &Gcm,
    max_length: usize,
) -> Result<AffineBoundReport, NilpotencyError> {
    let projection = AffineProjection::new(gcm)?;
    let projected = projection.projected_roots(gcm, projection.safe_cap());
    let bound = projected.len();
    let sweep = sweep(gcm, max_length)?;
    for r in &sweep.reports {
        if r.degree > bound {
            return Err(NilpotencyError::BoundViolated {
                word: r.word.clone(),
                degree: r.degree,
                bound,
            });
        }
        let invalid = |detail: String| NilpotencyError::ProjectionInvalid {
            word: r.word.clone(),
            detail,
        };
        let terms: Vec<RootVector> = r
            .witness
            .terms()
            .iter()
            .map(|t| projection.project(&t.root))
            .collect();
        if let Some(t) = terms.iter().find(|t| !projected.contains(*t)) {
            return Err(invalid(format!("term projects to {t}")));
        }
        for s in r.witness.partial_sums() {
            let p = projection.project(&s.root);
            if !projected.contains(&p) {
                return Err(invalid(format!("partial sum projects to {p}")));
            }
        }
        let rows: Vec<Vec<i64>> = terms.iter().map(|t| t.0.clone()).collect();
        if !strict_cone_feasible(&rows) {
            return Err(invalid(
                "projected terms are not in an open half-space".into(),
            ));
        }
    }
    Ok(AffineBoundReport {
        bound,
        max_length,
        checked: sweep.reports.len(),
        max_degree: sweep.summary.global_max,
        summary: sweep.summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;
    use crate::weyl::counts_by_length;

    fn rv(c: &[i64]) -> RootVector {
        RootVector(c.to_vec())
    }

    fn word(gcm: &Gcm, one_based: &[usize]) -> WeylElement {
        WeylElement::from_word(gcm, &Word::one_based(one_based).unwrap()).unwrap()
    }

    #[test]
    fn check_sequence_examples() {
        let a2 = reference::a2();
        let w = word(&a2, &[1, 2, 1]);
        let inv = w.inversion_set(&a2);
        let seq = check_sequence(&a2, &[rv(&[1, 0]), rv(&[0, 1])], Some(&inv)).unwrap();
        let sums: Vec<_> = seq.partial_sums().iter().map(|s| s.root.clone()).collect();
        assert_eq!(sums, vec![rv(&[1, 0]), rv(&[1, 1])]);
        assert!(matches!(
            check_sequence(&a2, &[rv(&[1, 0]), rv(&[1, 0])], None),
            Err(NilpotencyError::Ns2Violation { index: 2, .. })
        ));
        let aff = reference::a1_affine();
        assert!(matches!(
            check_sequence(&aff, &[rv(&[1, 0]), rv(&[0, 1])], None),
            Err(NilpotencyError::Ns1Violation(_))
        ));
        assert_eq!(check_sequence(&a2, &[], None), Err(NilpotencyError::Empty));
    }

    #[test]
    fn degree_dp_examples() {
        let a2 = reference::a2();
        let inv = word(&a2, &[1, 2, 1]).inversion_set(&a2);
        assert_eq!(degree_dp(&a2, inv.roots()).unwrap().0, 2);

        let g2 = reference::g2();
        let inv = word(&g2, &[1, 2, 1, 2, 1, 2]).inversion_set(&g2);
        let (d, witness) = degree_dp(&g2, inv.roots()).unwrap();
        assert_eq!(d, 5);
        let sums: Vec<_> = witness
            .partial_sums()
            .iter()
            .map(|s| s.root.clone())
            .collect();
        assert_eq!(
            sums,
            vec![
                rv(&[0, 1]),
                rv(&[1, 1]),
                rv(&[1, 2]),
                rv(&[1, 3]),
                rv(&[2, 3])
            ]
        );

        let single = [RealRoot::simple(2, 0)];
        assert_eq!(degree_dp(&a2, &single).unwrap().0, 1);
        assert_eq!(degree_dp(&a2, &[]).unwrap().0, 0);
    }

    #[test]
    fn degree_dp_preconditions() {
        let a2 = reference::a2();
        let open = [RealRoot::simple(2, 0), RealRoot::simple(2, 1)];
        assert!(matches!(
            degree_dp(&a2, &open),
            Err(NilpotencyError::NotClosed(..))
        ));
        let neg = [RealRoot::simple(2, 0).negated()];
        assert!(matches!(
            degree_dp(&a2, &neg),
            Err(NilpotencyError::NotAllPositive(_))
        ));
    }

    #[test]
    fn degree_dfs_examples() {
        let a2 = reference::a2();
        assert_eq!(
            degree_dfs(&a2, &[rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])], 10).unwrap(),
            2
        );
        assert_eq!(degree_dfs(&a2, &[], 10).unwrap(), 0);
        let aff = reference::a1_affine();
        let inv = word(&aff, &[1, 2, 1, 2, 1, 2]).inversion_set(&aff);
        let phi: Vec<_> = inv.roots().iter().map(|r| r.root.clone()).collect();
        assert_eq!(degree_dfs(&aff, &phi, 10).unwrap(), 1);
        let g2 = reference::g2();
        let inv = word(&g2, &[1, 2, 1, 2, 1, 2]).inversion_set(&g2);
        let phi: Vec<_> = inv.roots().iter().map(|r| r.root.clone()).collect();
        assert_eq!(
            degree_dfs(&g2, &phi, 3),
            Err(NilpotencyError::CapExceeded(3))
        );
    }

    #[test]
    fn degree_of_word_examples() {
        let a2 = reference::a2();
        let r = degree_of_word(&a2, &Word::one_based(&[1, 2, 1]).unwrap()).unwrap();
        assert_eq!((r.degree, r.invset_size, r.length), (2, 3, 3));
        let g2 = reference::g2();
        assert_eq!(
            degree_of_word(&g2, &Word::parse("1,2,1,2,1,2").unwrap())
                .unwrap()
                .degree,
            5
        );
        for gcm in reference::all() {
            let r = degree_of_word(&gcm, &Word::empty()).unwrap();
            assert_eq!((r.degree, r.invset_size, r.max_chain), (0, 0, 0));
        }
    }

    #[test]
    fn longest_element_degree_is_max_height() {
        for (gcm, letters, h) in [
            (reference::a2(), vec![1, 2, 1], 2),
            (reference::b2(), vec![1, 2, 1, 2], 3),
            (reference::g2(), vec![1, 2, 1, 2, 1, 2], 5),
        ] {
            let r = degree_of_word(&gcm, &Word::one_based(&letters).unwrap()).unwrap();
            assert_eq!(r.degree, h, "{:?}", gcm.name());
        }
    }

    #[test]
    fn sweep_examples() {
        let a2 = reference::a2();
        let s = sweep(&a2, 3).unwrap();
        assert_eq!(s.reports.len(), 6);
        assert_eq!(s.summary.global_max, 2);
        let aff = reference::a1_affine();
        let s = sweep(&aff, 12).unwrap();
        assert_eq!(
            s.reports.len(),
            counts_by_length(&aff, 12).iter().sum::<usize>()
        );
        assert_eq!(s.summary.global_max, 1);
        assert!(s.summary.plateau);
    }

    #[test]
    fn sweep_order_matches_enumeration() {
        let g2 = reference::g2();
        let s = sweep(&g2, 6).unwrap();
        let words: Vec<_> = enumerate(&g2, 6).map(|w| w.word().clone()).collect();
        let swept: Vec<_> = s.reports.iter().map(|r| r.word.clone()).collect();
        assert_eq!(words, swept);
    }

    #[test]
    fn summary_plateau_rule() {
        let mk = |length, degree| DegreeReport {
            word: Word::empty(),
            length,
            degree,
            witness: NilpotentSequence::default(),
            invset_size: 0,
            max_chain: 0,
        };
        let s = summarize(4, &[mk(0, 0), mk(1, 1), mk(2, 2), mk(3, 2), mk(4, 2)]);
        assert!(s.plateau);
        assert_eq!(s.global_max, 2);
        let s = summarize(4, &[mk(0, 0), mk(1, 1), mk(2, 2), mk(3, 2), mk(4, 3)]);
        assert!(!s.plateau);
        let s = summarize(1, &[mk(0, 0), mk(1, 0)]);
        assert!(!s.plateau);
    }

    #[test]
    fn claim1_examples() {
        let g2 = reference::g2();
        let r = degree_of_word(&g2, &Word::parse("1,2,1,2,1,2").unwrap()).unwrap();
        let chain = chain_positions(&g2, &r.witness);
        let out = verify_claim1(&g2, &r.witness, &chain, 0).unwrap();
        assert!(out.holds || out.failing_index.is_some());
        // |I(i)| ≤ K̂ makes every inequality trivial.
        let out = verify_claim1(&g2, &r.witness, &chain, r.witness.len() as i64).unwrap();
        assert!(out.holds);

        let aff = reference::a1_affine();
        for rep in sweep(&aff, 8).unwrap().reports {
            let chain = chain_positions(&aff, &rep.witness);
            assert!(verify_claim1(&aff, &rep.witness, &chain, 0).unwrap().holds);
        }

        // α₁ and α₂ in A₂ meet at a finite angle: not a chain.
        let a2 = reference::a2();
        let seq = check_sequence(&a2, &[rv(&[1, 0]), rv(&[0, 1])], None).unwrap();
        assert_eq!(
            verify_claim1(&a2, &seq, &[0, 1], 0),
            Err(NilpotencyError::NotAChain)
        );
        assert_eq!(
            verify_claim1(&a2, &seq, &[5], 0),
            Err(NilpotencyError::NotAChain)
        );
    }

    #[test]
    fn affine_bound_examples() {
        let rep = affine_bound_check(&reference::a1_affine(), 12).unwrap();
        assert_eq!((rep.bound, rep.max_degree), (2, 1));
        let rep = affine_bound_check(&reference::a2_affine(), 8).unwrap();
        assert_eq!(rep.bound, 6);
        assert!(rep.max_degree <= 6);
        assert!(matches!(
            affine_bound_check(&reference::a2(), 3),
            Err(NilpotencyError::Affine(AffineError::NotAffine))
        ));
    }
}
