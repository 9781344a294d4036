//! Bounded verification suites. Each suite scans a finite slice of the root
//! system and reports the first counterexample it finds.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::affine::{affine_parabolics, lemma_affine_check, MembershipWitnesses};
use crate::gcm::Gcm;
use crate::nilpotency::{
    affine_bound_check, chain_positions, sweep, verify_claim1, NilpotencyError,
};
use crate::pairs::{
    classify_pair, closure, default_max_steps, empirical_k, is_prenilpotent_pair,
    is_prenilpotent_set, max_nested_chain, strictly_inside, NestDirection, PairError, PairKind,
    Prenilpotency, PrenilpotencyCertificate,
};
use crate::roots::{RealRoot, RootClass, RootTable, RootVector};
use crate::weyl::{enumerate, WeylElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PairsLemmas,
    Closure,
    Prenilp4,
    AffineMembership,
    Claim1,
    AffineBound,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::PairsLemmas,
        Suite::Closure,
        Suite::Prenilp4,
        Suite::AffineMembership,
        Suite::Claim1,
        Suite::AffineBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PairsLemmas => "pairs-lemmas",
            Suite::Closure => "closure",
            Suite::Prenilp4 => "prenilp4",
            Suite::AffineMembership => "affine-membership",
            Suite::Claim1 => "claim1",
            Suite::AffineBound => "affine-bound",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("suite does not apply: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Nilpotency(#[from] NilpotencyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A chamber walk ran out of budget before deciding.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub gcm: String,
    pub params: Value,
    pub status: Status,
    pub counterexample: Option<Value>,
    pub scanned_count: usize,
}

impl CheckReport {
    fn new(check: &str, gcm: &Gcm, params: Value) -> Self {
        CheckReport {
            check: check.to_string(),
            gcm: gcm.canonical_string(),
            params,
            status: Status::Pass,
            counterexample: None,
            scanned_count: 0,
        }
    }

    fn fail(mut self, counterexample: Value) -> Self {
        self.status = Status::Fail;
        self.counterexample = Some(counterexample);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Scan sizes shared by all suites; each suite reads the fields it needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyParams {
    pub max_height: i64,
    pub max_length: usize,
    pub samples: usize,
    pub seed: u64,
    /// Chamber-walk budget; `None` uses the size-based default.
    pub max_steps: Option<usize>,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            max_height: 5,
            max_length: 10,
            samples: 200,
            seed: 0x5eed,
            max_steps: None,
        }
    }
}

pub fn run_suite(
    suite: Suite,
    gcm: &Gcm,
    p: &VerifyParams,
) -> Result<Vec<CheckReport>, VerifyError> {
    Ok(match suite {
        Suite::PairsLemmas => vec![
            chamber_signs(gcm, p.max_height, p.max_length),
            pairing_floor(gcm, p.max_height),
            set_walks_agree(gcm, p.max_height.min(4), p.max_steps)?,
        ],
        Suite::Closure => vec![closure_laws(gcm, p.max_length.min(8), p.samples, p.seed)?],
        Suite::Prenilp4 => vec![prenilp4(gcm, p.max_length.min(6))],
        Suite::AffineMembership => vec![affine_membership(gcm, p.max_height.max(8))],
        Suite::Claim1 => vec![claim1(gcm, p.max_length, p.max_height.max(8))?],
        Suite::AffineBound => vec![affine_bound(gcm, p.max_length)?],
    })
}

fn root_json(v: &RootVector) -> Value {
    json!(v.0)
}

/// Which of the four sign patterns of `(w·α, w·β)` occur among the chambers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SignPatterns {
    pub pp: bool,
    pub pn: bool,
    pub np: bool,
    pub nn: bool,
}

impl SignPatterns {
    fn all(&self) -> bool {
        self.pp && self.pn && self.np && self.nn
    }
}

/// `None` when the observed patterns are compatible with the tag.
pub fn sign_contradiction(kind: PairKind, s: SignPatterns) -> Option<&'static str> {
    match kind {
        PairKind::Equal if s.pn || s.np => Some("equal roots with different signs"),
        PairKind::Opposite if s.pp || s.nn => Some("opposite roots with equal signs"),
        PairKind::Nested(NestDirection::AlphaInsideBeta) if s.pn => {
            Some("D(α) ⊂ D(β) but a chamber has α > 0 > β")
        }
        PairKind::Nested(NestDirection::BetaInsideAlpha) if s.np => {
            Some("D(β) ⊂ D(α) but a chamber has β > 0 > α")
        }
        PairKind::Skew if s.pp && s.nn => Some("skew pair with both ++ and −− chambers"),
        PairKind::Nested(_) | PairKind::Skew if s.all() => {
            Some("walls tagged parallel but all four chambers occur")
        }
        _ => None,
    }
}

/// Compares pair tags with the signs of `w·α, w·β` over all `w` of length
/// ≤ `max_length`, for every pair of roots of height ≤ `max_height`.
pub fn chamber_signs(gcm: &Gcm, max_height: i64, max_length: usize) -> CheckReport {
    let mut report = CheckReport::new(
        "pairs-lemmas/chamber-signs",
        gcm,
        json!({"max_height": max_height, "max_length": max_length}),
    );
    let table = RootTable::generate(gcm, max_height).expect("height cap ≥ 1");
    let roots = table.signed_roots();
    let elements: Vec<WeylElement> = enumerate(gcm, max_length).collect();
    // Bit k of signs[r] is set when the k-th chamber puts root r on the positive side.
    let words = elements.len().div_ceil(64);
    let signs: Vec<Vec<u64>> = roots
        .iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for (k, w) in elements.iter().enumerate() {
                if w.apply_unchecked(&r.root).is_positive() {
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
            bits
        })
        .collect();
    let full: Vec<u64> = (0..words)
        .map(|b| {
            let used = (elements.len() - 64 * b).min(64);
            if used == 64 {
                u64::MAX
            } else {
                (1u64 << used) - 1
            }
        })
        .collect();
    for (a, alpha) in roots.iter().enumerate() {
        for (b, beta) in roots.iter().enumerate() {
            report.scanned_count += 1;
            let mut s = SignPatterns::default();
            for k in 0..words {
                let (x, y, m) = (signs[a][k], signs[b][k], full[k]);
                s.pp |= x & y != 0;
                s.pn |= x & !y & m != 0;
                s.np |= !x & y & m != 0;
                s.nn |= !x & !y & m != 0;
            }
            let kind = classify_pair(gcm, alpha, beta).kind;
            if let Some(why) = sign_contradiction(kind, s) {
                return report.fail(json!({
                    "alpha": root_json(&alpha.root),
                    "beta": root_json(&beta.root),
                    "tag": format!("{kind:?}"),
                    "reason": why,
                }));
            }
        }
    }
    report
}

/// Prenilpotent pairs have `⟨α, β∨⟩ ≥ −3`, and a root sum of a prenilpotent
/// pair is real.
pub fn pairing_floor(gcm: &Gcm, max_height: i64) -> CheckReport {
    let mut report = CheckReport::new(
        "pairs-lemmas/pairing-floor",
        gcm,
        json!({"max_height": max_height}),
    );
    let table = RootTable::generate(gcm, max_height).expect("height cap ≥ 1");
    let roots = table.signed_roots();
    for alpha in &roots {
        for beta in &roots {
            if !is_prenilpotent_pair(gcm, alpha, beta) {
                continue;
            }
            report.scanned_count += 1;
            let p = gcm.pairing(&alpha.root, &beta.coroot);
            if p < -3 {
                return report.fail(json!({
                    "alpha": root_json(&alpha.root),
                    "beta": root_json(&beta.root),
                    "pairing": p,
                }));
            }
            let sum = &alpha.root + &beta.root;
            if !sum.is_zero() && matches!(gcm.classify_vector(&sum), Ok(RootClass::Imaginary)) {
                return report.fail(json!({
                    "alpha": root_json(&alpha.root),
                    "beta": root_json(&beta.root),
                    "reason": "prenilpotent pair sums to an imaginary root",
                }));
            }
        }
    }
    report
}

/// The set test on `{α, β}` agrees with the pair test.
pub fn set_walks_agree(
    gcm: &Gcm,
    max_height: i64,
    max_steps: Option<usize>,
) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new(
        "pairs-lemmas/set-walks",
        gcm,
        json!({"max_height": max_height, "max_steps": max_steps}),
    );
    let table = RootTable::generate(gcm, max_height).expect("height cap ≥ 1");
    let roots = table.signed_roots();
    for (a, alpha) in roots.iter().enumerate() {
        for beta in &roots[a + 1..] {
            report.scanned_count += 1;
            let set = [alpha.root.clone(), beta.root.clone()];
            let pair = is_prenilpotent_pair(gcm, alpha, beta);
            let verdict = is_prenilpotent_set(
                gcm,
                &set,
                max_steps.unwrap_or_else(|| default_max_steps(&set)),
            )?;
            let agrees = match &verdict {
                Prenilpotency::Certified(c) => pair && c.verify(gcm, &set),
                Prenilpotency::NotPrenilpotent(_) => !pair,
                Prenilpotency::Undecided(_) => {
                    report.status = Status::Undecided;
                    report.counterexample = Some(
                        json!({"alpha": root_json(&alpha.root), "beta": root_json(&beta.root)}),
                    );
                    return Ok(report);
                }
            };
            if !agrees {
                return Ok(report.fail(json!({
                    "alpha": root_json(&alpha.root),
                    "beta": root_json(&beta.root),
                    "pair_test": pair,
                    "set_test": format!("{verdict:?}"),
                })));
            }
        }
    }
    Ok(report)
}

/// Closure of `subset ⊆ Δ(w)` is idempotent, inside `Δ(w)`, real, and
/// certified prenilpotent by `(1, w)`. Returns a description of the first
/// failure.
pub fn closure_violation(
    gcm: &Gcm,
    w: &WeylElement,
    subset: &[RootVector],
) -> Result<Option<String>, VerifyError> {
    let inv = w.inversion_set(gcm);
    let cap = inv.max_height().max(1);
    let closed = match closure(gcm, subset, cap) {
        Ok(c) => c,
        Err(PairError::CapExceeded { root, .. }) => {
            return Ok(Some(format!("closure reaches {root} outside Δ(w)")))
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(v) = closed.iter().find(|v| !inv.contains(v)) {
        return Ok(Some(format!("closure contains {v} outside Δ(w)")));
    }
    if let Some(v) = closed
        .iter()
        .find(|v| !matches!(gcm.classify_vector(v), Ok(RootClass::Real(_))))
    {
        return Ok(Some(format!("closure contains non-real {v}")));
    }
    if closure(gcm, &closed, cap)? != closed {
        return Ok(Some("closure is not idempotent".into()));
    }
    let cert = PrenilpotencyCertificate {
        positivizer: crate::weyl::Word::empty(),
        negativizer: w.word().clone(),
    };
    if !cert.verify(gcm, &closed) {
        return Ok(Some("closure lost its prenilpotency certificate".into()));
    }
    Ok(None)
}

/// Random nonempty subset of `Δ(w)` for a random nontrivial `w`.
pub fn random_subset<R: Rng>(
    gcm: &Gcm,
    elements: &[WeylElement],
    rng: &mut R,
) -> (WeylElement, Vec<RootVector>) {
    let w = elements.choose(rng).expect("at least one element").clone();
    let inv = w.inversion_set(gcm);
    let mut subset: Vec<RootVector> = inv
        .roots()
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|r| r.root.clone())
        .collect();
    if subset.is_empty() {
        subset.push(
            inv.roots()
                .choose(rng)
                .expect("nonempty inversion set")
                .root
                .clone(),
        );
    }
    (w, subset)
}

pub fn closure_laws(
    gcm: &Gcm,
    max_length: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new(
        "closure",
        gcm,
        json!({"max_length": max_length, "samples": samples, "seed": seed}),
    );
    let elements: Vec<WeylElement> = enumerate(gcm, max_length)
        .filter(|w| w.length() > 0)
        .collect();
    if elements.is_empty() {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (w, subset) = random_subset(gcm, &elements, &mut rng);
        report.scanned_count += 1;
        if let Some(why) = closure_violation(gcm, &w, &subset)? {
            let subset: Vec<Value> = subset.iter().map(root_json).collect();
            return Ok(report.fail(json!({"word": w.word(), "subset": subset, "reason": why})));
        }
    }
    Ok(report)
}

fn meets(gcm: &Gcm, a: &RealRoot, b: &RealRoot) -> bool {
    classify_pair(gcm, a, b).kind.walls_meet()
}

fn nested(gcm: &Gcm, a: &RealRoot, b: &RealRoot) -> bool {
    matches!(classify_pair(gcm, a, b).kind, PairKind::Nested(_))
}

/// Both wall-meeting implications for prenilpotent triples and quadruples,
/// drawn from `±Δ(w)` with `ℓ(w) ≤ max_length`.
pub fn prenilp4(gcm: &Gcm, max_length: usize) -> CheckReport {
    let mut report = CheckReport::new("prenilp4", gcm, json!({"max_length": max_length}));
    let mut seen_sets: HashSet<Vec<RootVector>> = HashSet::new();
    for w in enumerate(gcm, max_length) {
        let inv = w.inversion_set(gcm);
        for sign in [1, -1] {
            let phi: Vec<RealRoot> = inv
                .roots()
                .iter()
                .map(|r| if sign > 0 { r.clone() } else { r.negated() })
                .collect();
            let mut key: Vec<RootVector> = phi.iter().map(|r| r.root.clone()).collect();
            key.sort();
            if !seen_sets.insert(key) {
                continue;
            }
            if let Some(cx) = prenilp4_in(gcm, &phi, &mut report.scanned_count) {
                return report.fail(cx);
            }
        }
    }
    report
}

fn prenilp4_in(gcm: &Gcm, phi: &[RealRoot], scanned: &mut usize) -> Option<Value> {
    for a in phi {
        for a2 in phi {
            if !nested(gcm, a, a2) {
                continue;
            }
            for g in phi {
                if gcm.pairing(&a.root, &g.coroot) >= 0 {
                    continue;
                }
                *scanned += 1;
                let reflected = g.reflect_real(gcm, a);
                if meets(gcm, &reflected, a2) && !meets(gcm, g, a2) {
                    return Some(json!({
                        "clause": "i",
                        "alpha": root_json(&a.root),
                        "alpha_prime": root_json(&a2.root),
                        "gamma": root_json(&g.root),
                    }));
                }
            }
            if !strictly_inside(gcm, a, a2) {
                continue;
            }
            for b in phi {
                for b2 in phi {
                    if !strictly_inside(gcm, b, b2) {
                        continue;
                    }
                    *scanned += 1;
                    let first = meets(gcm, b, a2)
                        && meets(gcm, b2, a2)
                        && meets(gcm, b2, a)
                        && !meets(gcm, b, a);
                    let second = meets(gcm, b, a)
                        && meets(gcm, b2, a)
                        && meets(gcm, b, a2)
                        && !meets(gcm, b2, a2);
                    if first || second {
                        return Some(json!({
                            "clause": "ii",
                            "alpha": root_json(&a.root),
                            "alpha_prime": root_json(&a2.root),
                            "beta": root_json(&b.root),
                            "beta_prime": root_json(&b2.root),
                        }));
                    }
                }
            }
        }
    }
    None
}

/// Searches witnesses for the three membership clauses among roots of
/// height ≤ `max_height` and checks each against actual membership.
pub fn affine_membership(gcm: &Gcm, max_height: i64) -> CheckReport {
    let mut report = CheckReport::new("affine-membership", gcm, json!({"max_height": max_height}));
    let table = RootTable::generate(gcm, max_height).expect("height cap ≥ 1");
    let roots = table.signed_roots();
    for phi in affine_parabolics(gcm) {
        let inside: Vec<RealRoot> = roots
            .iter()
            .filter(|r| phi.contains(&r.root))
            .cloned()
            .collect();
        for alpha in &roots {
            for witnesses in membership_witnesses(gcm, &inside, alpha) {
                report.scanned_count += 1;
                let outcome = lemma_affine_check(gcm, &phi, alpha, &witnesses);
                if outcome.has_violation() {
                    return report.fail(json!({
                        "subsystem": phi.indices().iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "alpha": root_json(&alpha.root),
                        "outcome": outcome,
                    }));
                }
            }
        }
    }
    report
}

fn membership_witnesses(
    gcm: &Gcm,
    inside: &[RealRoot],
    alpha: &RealRoot,
) -> Vec<MembershipWitnesses> {
    let mut out = Vec::new();
    let below = inside.iter().find(|b| strictly_inside(gcm, b, alpha));
    let above = inside.iter().find(|b| strictly_inside(gcm, alpha, b));
    if let (Some(b), Some(b2)) = (below, above) {
        out.push(MembershipWitnesses {
            sandwich: Some((b.clone(), b2.clone())),
            ..Default::default()
        });
    }
    let over: Vec<RealRoot> = inside
        .iter()
        .filter(|b| strictly_inside(gcm, alpha, b))
        .cloned()
        .collect();
    let chain = max_nested_chain(gcm, &over);
    for n in 1..=chain.len() {
        out.push(MembershipWitnesses {
            chain: Some(chain[..n].to_vec()),
            ..Default::default()
        });
    }
    let mut parallel: Vec<RealRoot> = Vec::new();
    for b in inside.iter().filter(|b| meets(gcm, alpha, b)) {
        if parallel.len() < 8
            && parallel
                .iter()
                .all(|p| classify_pair(gcm, p, b).kind.walls_parallel())
        {
            parallel.push(b.clone());
        }
    }
    let gamma = inside
        .iter()
        .find(|g| gcm.pairing(&alpha.root, &g.coroot) != 0);
    if let (8, Some(g)) = (parallel.len(), gamma) {
        out.push(MembershipWitnesses {
            parallel_walls: Some((parallel, g.clone())),
            ..Default::default()
        });
    }
    out
}

/// `K̂` for the chain inequality; the empty prefix contributes 0, so
/// negative estimates are raised to 0.
pub fn khat(gcm: &Gcm, max_height: i64) -> i64 {
    let table = RootTable::generate(gcm, max_height).expect("height cap ≥ 1");
    empirical_k(&table).map_or(0, |w| w.value.max(0))
}

pub fn claim1(gcm: &Gcm, max_length: usize, max_height: i64) -> Result<CheckReport, VerifyError> {
    let k = khat(gcm, max_height);
    let mut report = CheckReport::new(
        "claim1",
        gcm,
        json!({"max_length": max_length, "max_height": max_height, "khat": k, "khat_source": "empirical"}),
    );
    for rep in sweep(gcm, max_length)?.reports {
        report.scanned_count += 1;
        let chain = chain_positions(gcm, &rep.witness);
        let outcome = verify_claim1(gcm, &rep.witness, &chain, k)?;
        if !outcome.holds {
            return Ok(report.fail(json!({
                "word": rep.word,
                "witness": rep.witness.term_vectors(),
                "chain": chain,
                "failing_index": outcome.failing_index,
            })));
        }
    }
    Ok(report)
}

pub fn affine_bound(gcm: &Gcm, max_length: usize) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new("affine-bound", gcm, json!({"max_length": max_length}));
    match affine_bound_check(gcm, max_length) {
        Ok(r) => {
            report.scanned_count = r.checked;
            report.params["bound"] = json!(r.bound);
            report.params["observed_max"] = json!(r.max_degree);
            Ok(report)
        }
        Err(NilpotencyError::Affine(e)) => Err(VerifyError::NotApplicable(e.to_string())),
        Err(
            e @ (NilpotencyError::BoundViolated { .. } | NilpotencyError::ProjectionInvalid { .. }),
        ) => Ok(report.fail(json!(e.to_string()))),
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn contradiction_rules() {
        let all = SignPatterns {
            pp: true,
            pn: true,
            np: true,
            nn: true,
        };
        assert!(sign_contradiction(PairKind::FiniteMeet, all).is_none());
        assert!(sign_contradiction(PairKind::Skew, all).is_some());
        let inside = PairKind::Nested(NestDirection::AlphaInsideBeta);
        assert!(sign_contradiction(
            inside,
            SignPatterns {
                pn: true,
                ..Default::default()
            }
        )
        .is_some());
        assert!(sign_contradiction(
            inside,
            SignPatterns {
                np: true,
                pp: true,
                nn: true,
                pn: false
            }
        )
        .is_none());
    }

    #[test]
    fn pairs_lemmas_pass_on_small_examples() {
        for gcm in [reference::a2(), reference::a1_affine(), reference::g2()] {
            let p = VerifyParams {
                max_height: 4,
                max_length: 6,
                ..Default::default()
            };
            for r in run_suite(Suite::PairsLemmas, &gcm, &p).unwrap() {
                assert!(r.passed(), "{r:?}");
                assert!(r.scanned_count > 0);
            }
        }
    }

    #[test]
    fn oracle_catches_a_wrong_direction() {
        // Hand-flipped tag for α₁ ⊂ 2α₁+α₂ in A₁⁽¹⁾.
        let aff = reference::a1_affine();
        let elements: Vec<WeylElement> = enumerate(&aff, 6).collect();
        let a = RootVector(vec![1, 0]);
        let b = RootVector(vec![2, 1]);
        let mut s = SignPatterns::default();
        for w in &elements {
            let (x, y) = (
                w.apply_unchecked(&a).is_positive(),
                w.apply_unchecked(&b).is_positive(),
            );
            match (x, y) {
                (true, true) => s.pp = true,
                (true, false) => s.pn = true,
                (false, true) => s.np = true,
                (false, false) => s.nn = true,
            }
        }
        assert!(sign_contradiction(PairKind::Nested(NestDirection::AlphaInsideBeta), s).is_none());
        assert!(sign_contradiction(PairKind::Nested(NestDirection::BetaInsideAlpha), s).is_some());
    }

    #[test]
    fn other_suites_pass() {
        let p = VerifyParams {
            max_height: 5,
            max_length: 6,
            samples: 50,
            seed: 7,
            max_steps: None,
        };
        for gcm in [
            reference::a2(),
            reference::a1_affine(),
            reference::rank3_affine_block(),
        ] {
            for suite in [
                Suite::Closure,
                Suite::Prenilp4,
                Suite::AffineMembership,
                Suite::Claim1,
            ] {
                for r in run_suite(suite, &gcm, &p).unwrap() {
                    assert!(r.passed(), "{r:?}");
                }
            }
        }
        let r = &run_suite(Suite::AffineBound, &reference::a1_affine(), &p).unwrap()[0];
        assert!(r.passed());
        assert!(matches!(
            run_suite(Suite::AffineBound, &reference::a2(), &p),
            Err(VerifyError::NotApplicable(_))
        ));
    }

    #[test]
    fn membership_search_finds_witnesses_in_rank3() {
        let r3 = reference::rank3_affine_block();
        let r = affine_membership(&r3, 8);
        assert!(r.passed(), "{r:?}");
        assert!(r.scanned_count > 0);
    }

    #[test]
    fn khat_is_clamped() {
        assert_eq!(khat(&reference::a2(), 6), 0);
        assert_eq!(khat(&reference::g2(), 6), 1);
        assert_eq!(khat(&reference::a1_affine(), 6), 0);
    }
}
