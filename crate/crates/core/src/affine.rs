//! Affine parabolic subsystems, the null root and the projection onto the
//! underlying finite root system, reflection-generated subsystems, and the
//! membership criteria for affine parabolics.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gcm::{determinant, Gcm, Kind};
use crate::pairs::{classify_pair, strictly_inside};
use crate::roots::{height_lex_cmp, RealRoot, RootTable, RootVector};
use crate::weyl::WeylElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("matrix is not indecomposable of affine type")]
    NotAffine,
    #[error("node {0} cannot serve as the affine node")]
    BadNode(usize),
    #[error("{root} in the generating set exceeds height cap {cap}")]
    CapExceeded { root: RootVector, cap: i64 },
}

/// Primitive positive generator of the kernel of an indecomposable affine
/// matrix (the null root `δ`).
pub fn null_root(gcm: &Gcm) -> Result<RootVector, AffineError> {
    let t = gcm.classify();
    if t.kind != Kind::Affine || t.components.len() != 1 {
        return Err(AffineError::NotAffine);
    }
    // Columns of the adjugate of a corank-1 matrix span its kernel.
    let n = gcm.rank();
    let minor = |skip_row: usize, skip_col: usize| -> BigInt {
        let m: Vec<Vec<BigInt>> = (0..n)
            .filter(|&r| r != skip_row)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != skip_col)
                    .map(|c| BigInt::from(gcm.entry(r, c)))
                    .collect()
            })
            .collect();
        determinant(m)
    };
    for col in 0..n {
        let v: Vec<BigInt> = (0..n)
            .map(|r| {
                let m = minor(col, r);
                if (r + col) % 2 == 0 {
                    m
                } else {
                    -m
                }
            })
            .collect();
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if v.iter().any(Signed::is_negative) {
            -1
        } else {
            1
        };
        let coords = v
            .iter()
            .map(|c| {
                (c / &g * BigInt::from(sign))
                    .to_i64()
                    .expect("null root fits i64")
            })
            .collect();
        return Ok(RootVector(coords));
    }
    Err(AffineError::NotAffine)
}

/// `α ↦ ᾱ = α − α_{node0}·δ`, landing in the span of the other simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineProjection {
    pub delta: RootVector,
    pub node0: usize,
}

impl AffineProjection {
    /// Uses the smallest node with label `δ_i = 1`.
    pub fn new(gcm: &Gcm) -> Result<Self, AffineError> {
        let delta = null_root(gcm)?;
        let node0 = (0..gcm.rank())
            .find(|&i| delta.0[i] == 1)
            .ok_or(AffineError::NotAffine)?;
        Self::with_node(gcm, node0)
    }

    pub fn with_node(gcm: &Gcm, node0: usize) -> Result<Self, AffineError> {
        let delta = null_root(gcm)?;
        if node0 >= gcm.rank() || delta.0[node0] != 1 {
            return Err(AffineError::BadNode(node0 + 1));
        }
        if gcm.rank() > 1 {
            let rest: Vec<usize> = (0..gcm.rank()).filter(|&i| i != node0).collect();
            let sub = gcm
                .submatrix(&rest)
                .map_err(|_| AffineError::BadNode(node0 + 1))?;
            if sub.classify().kind != Kind::Finite {
                return Err(AffineError::BadNode(node0 + 1));
            }
        }
        Ok(AffineProjection { delta, node0 })
    }

    pub fn project(&self, alpha: &RootVector) -> RootVector {
        alpha.add_scaled(-alpha.0[self.node0], &self.delta)
    }

    /// Distinct nonzero projections of `±` the real roots of height ≤ `cap`.
    pub fn projected_roots(&self, gcm: &Gcm, cap: i64) -> BTreeSet<RootVector> {
        let table = RootTable::generate(gcm, cap).expect("cap ≥ 1");
        table
            .roots()
            .iter()
            .flat_map(|r| [self.project(&r.root), self.project(&-&r.root)])
            .filter(|v| !v.is_zero())
            .collect()
    }

    /// Height cap large enough for every projected root to be hit.
    pub fn safe_cap(&self) -> i64 {
        3 * self.delta.height()
    }
}

/// `|r̄eΔ|` for an indecomposable affine matrix.
pub fn finite_projected_count(gcm: &Gcm) -> Result<usize, AffineError> {
    let p = AffineProjection::new(gcm)?;
    Ok(p.projected_roots(gcm, p.safe_cap()).len())
}

/// `w·Δ_J` for an index set `J` whose block is indecomposable affine.
#[derive(Debug, Clone)]
pub struct ParabolicSubsystem {
    indices: Vec<usize>,
    conjugator: WeylElement,
    conjugator_inverse: WeylElement,
}

impl ParabolicSubsystem {
    pub fn standard(gcm: &Gcm, indices: &[usize]) -> Result<Self, AffineError> {
        let sub = gcm.submatrix(indices).map_err(|_| AffineError::NotAffine)?;
        let t = sub.classify();
        if t.kind != Kind::Affine || t.components.len() != 1 {
            return Err(AffineError::NotAffine);
        }
        let mut indices = indices.to_vec();
        indices.sort_unstable();
        let id = WeylElement::identity(gcm);
        Ok(ParabolicSubsystem {
            indices,
            conjugator: id.clone(),
            conjugator_inverse: id,
        })
    }

    /// `u·Φ`
    pub fn conjugated(&self, gcm: &Gcm, u: &WeylElement) -> Self {
        let conjugator = u.mul_word(gcm, self.conjugator.word()).expect("same rank");
        let conjugator_inverse = conjugator.inverse(gcm);
        ParabolicSubsystem {
            indices: self.indices.clone(),
            conjugator,
            conjugator_inverse,
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn conjugator(&self) -> &WeylElement {
        &self.conjugator
    }

    /// `α ∈ w·Δ_J ⇔ supp(w⁻¹α) ⊆ J`
    pub fn contains(&self, alpha: &RootVector) -> bool {
        let back = self.conjugator_inverse.apply_unchecked(alpha);
        back.support()
            .iter()
            .all(|i| self.indices.binary_search(i).is_ok())
    }
}

/// Every `J` whose block is indecomposable affine, by size then
/// lexicographically.
pub fn affine_parabolics(gcm: &Gcm) -> Vec<ParabolicSubsystem> {
    let n = gcm.rank();
    let mut subsets: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|&b| mask >> b & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
        .iter()
        .filter_map(|j| ParabolicSubsystem::standard(gcm, j).ok())
        .collect()
}

/// Reflection closure of a finite set of real roots.
#[derive(Debug, Clone)]
pub struct GeneratedSubsystem {
    /// Roots of both signs, height-lex ordered.
    pub roots: Vec<RealRoot>,
    pub rank: usize,
    /// `None` when the closure was truncated and the rank is above 2.
    pub kind: Option<Kind>,
    /// Some reflection image exceeded the height cap and was dropped.
    pub truncated: bool,
}

impl GeneratedSubsystem {
    pub fn contains(&self, v: &RootVector) -> bool {
        self.roots.iter().any(|r| &r.root == v)
    }
}

pub fn subsystem_generated(
    gcm: &Gcm,
    generators: &[RealRoot],
    cap: i64,
) -> Result<GeneratedSubsystem, AffineError> {
    if let Some(r) = generators.iter().find(|r| r.height() > cap) {
        return Err(AffineError::CapExceeded {
            root: r.root.clone(),
            cap,
        });
    }
    let mut seen: HashSet<RootVector> = HashSet::new();
    let mut roots: Vec<RealRoot> = Vec::new();
    let mut queue = VecDeque::new();
    for r in generators.iter().flat_map(|r| [r.clone(), r.negated()]) {
        if seen.insert(r.root.clone()) {
            roots.push(r);
            queue.push_back(roots.len() - 1);
        }
    }
    let mut truncated = false;
    while let Some(k) = queue.pop_front() {
        let mut fresh = Vec::new();
        for other in &roots {
            for img in [
                roots[k].reflect_real(gcm, other),
                other.reflect_real(gcm, &roots[k]),
            ] {
                if seen.contains(&img.root) {
                    continue;
                }
                if img.height() > cap {
                    truncated = true;
                    continue;
                }
                seen.insert(img.root.clone());
                fresh.push(img);
            }
        }
        for r in fresh {
            roots.push(r);
            queue.push_back(roots.len() - 1);
        }
    }
    roots.sort_by(|a, b| height_lex_cmp(&a.root, &b.root));
    let rank = lattice_rank(roots.iter().map(|r| &r.root));
    let kind = if !truncated {
        Some(Kind::Finite)
    } else if rank == 2 {
        let mut min_product: Option<i64> = None;
        for (a, x) in roots.iter().enumerate() {
            for y in &roots[a + 1..] {
                let rel = classify_pair(gcm, x, y);
                if rel.kind.walls_meet() && rel.kind != crate::pairs::PairKind::FiniteMeet {
                    continue;
                }
                min_product = Some(min_product.map_or(rel.product(), |m| m.min(rel.product())));
            }
        }
        match min_product {
            Some(4) => Some(Kind::Affine),
            Some(p) if p >= 5 => Some(Kind::Indefinite),
            _ => None,
        }
    } else {
        None
    };
    Ok(GeneratedSubsystem {
        roots,
        rank,
        kind,
        truncated,
    })
}

fn lattice_rank<'a>(vectors: impl Iterator<Item = &'a RootVector>) -> usize {
    let mut rows: Vec<Vec<BigInt>> = vectors
        .map(|v| v.0.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let (a, b) = (rows[rank][col].clone(), rows[r][col].clone());
                for c in 0..width {
                    let v = &rows[r][c] * &a - &rows[rank][c] * &b;
                    rows[r][c] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of one membership clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClauseOutcome {
    NotSupplied,
    /// The clause does not apply to the supplied witnesses.
    HypothesesNotMet(String),
    Confirmed,
    Violated(String),
}

impl ClauseOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, ClauseOutcome::Violated(_))
    }
}

/// Witness configurations for the three membership clauses.
#[derive(Debug, Clone, Default)]
pub struct MembershipWitnesses {
    /// `β, β'` with `D(β) ⊊ D(α) ⊊ D(β')`.
    pub sandwich: Option<(RealRoot, RealRoot)>,
    /// Eight pairwise parallel walls met by `∂α`, and `γ` with `⟨α, γ∨⟩ ≠ 0`.
    pub parallel_walls: Option<(Vec<RealRoot>, RealRoot)>,
    /// A chain `D(α) ⊊ D(β₁) ⊊ … ⊊ D(βₙ)`.
    pub chain: Option<Vec<RealRoot>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub alpha: RootVector,
    pub alpha_in_subsystem: bool,
    pub sandwich: ClauseOutcome,
    pub parallel_walls: ClauseOutcome,
    pub chain: ClauseOutcome,
}

impl MembershipReport {
    pub fn has_violation(&self) -> bool {
        self.sandwich.is_violation()
            || self.parallel_walls.is_violation()
            || self.chain.is_violation()
    }
}

fn membership_outcome(member: bool, clause: &str) -> ClauseOutcome {
    if member {
        ClauseOutcome::Confirmed
    } else {
        ClauseOutcome::Violated(format!("{clause} holds but α is outside the subsystem"))
    }
}

/// Checks each supplied clause of the affine membership criteria.
pub fn lemma_affine_check(
    gcm: &Gcm,
    phi: &ParabolicSubsystem,
    alpha: &RealRoot,
    witnesses: &MembershipWitnesses,
) -> MembershipReport {
    let member = phi.contains(&alpha.root);
    let outside = |r: &RealRoot| !phi.contains(&r.root);

    let sandwich = match &witnesses.sandwich {
        None => ClauseOutcome::NotSupplied,
        Some((b, b2)) if outside(b) || outside(b2) => {
            ClauseOutcome::HypothesesNotMet("witness outside the subsystem".into())
        }
        Some((b, b2)) => {
            if strictly_inside(gcm, b, alpha) && strictly_inside(gcm, alpha, b2) {
                membership_outcome(member, "D(β) ⊊ D(α) ⊊ D(β')")
            } else {
                ClauseOutcome::HypothesesNotMet("half-spaces are not nested as required".into())
            }
        }
    };

    let parallel_walls = match &witnesses.parallel_walls {
        None => ClauseOutcome::NotSupplied,
        Some((betas, gamma)) => {
            let distinct: HashSet<&RootVector> = betas.iter().map(|b| &b.root).collect();
            if distinct.len() < 8 || betas.len() != distinct.len() {
                ClauseOutcome::HypothesesNotMet(format!(
                    "{} distinct walls supplied, 8 required",
                    distinct.len()
                ))
            } else if betas.iter().any(outside) || outside(gamma) {
                ClauseOutcome::HypothesesNotMet("witness outside the subsystem".into())
            } else if !betas.iter().enumerate().all(|(a, x)| {
                betas[a + 1..]
                    .iter()
                    .all(|y| classify_pair(gcm, x, y).kind.walls_parallel())
            }) {
                ClauseOutcome::HypothesesNotMet("walls are not pairwise parallel".into())
            } else if !betas
                .iter()
                .all(|b| classify_pair(gcm, alpha, b).kind.walls_meet())
            {
                ClauseOutcome::HypothesesNotMet("∂α misses one of the walls".into())
            } else if gcm.pairing(&alpha.root, &gamma.coroot) == 0 {
                ClauseOutcome::HypothesesNotMet("⟨α, γ∨⟩ = 0".into())
            } else {
                membership_outcome(member, "eight parallel walls met by ∂α")
            }
        }
    };

    let chain = match &witnesses.chain {
        None => ClauseOutcome::NotSupplied,
        Some(betas) if betas.is_empty() => ClauseOutcome::HypothesesNotMet("empty chain".into()),
        Some(betas) if betas.iter().any(outside) => {
            ClauseOutcome::HypothesesNotMet("witness outside the subsystem".into())
        }
        Some(betas) => {
            let nested = strictly_inside(gcm, alpha, &betas[0])
                && betas.windows(2).all(|w| strictly_inside(gcm, &w[0], &w[1]));
            if !nested {
                ClauseOutcome::HypothesesNotMet("not a chain above α".into())
            } else {
                let n = betas.len() as i64;
                let top = gcm.pairing(&betas[betas.len() - 1].root, &alpha.coroot);
                if member || 2 * top >= n {
                    ClauseOutcome::Confirmed
                } else {
                    ClauseOutcome::Violated(format!(
                        "α outside the subsystem but ⟨βₙ, α∨⟩ = {top} < {n}/2"
                    ))
                }
            }
        }
    };

    MembershipReport {
        alpha: alpha.root.clone(),
        alpha_in_subsystem: member,
        sandwich,
        parallel_walls,
        chain,
    }
}
