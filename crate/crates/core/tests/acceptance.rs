//! Acceptance gate: each criterion prints one PASS/FAIL line and the binary
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kmlab_core::affine::{
    finite_projected_count, lemma_affine_check, ClauseOutcome, MembershipWitnesses,
    ParabolicSubsystem,
};
use kmlab_core::nilpotency::{affine_bound_check, degree_dfs, degree_dp, degree_of_word, sweep};
use kmlab_core::pairs::{empirical_k, strictly_inside};
use kmlab_core::verify::{chamber_signs, closure_violation, pairing_floor, random_subset};
use kmlab_core::weyl::enumerate;
use kmlab_core::{reference, RealRoot, RootTable, RootVector, WeylElement, Word};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("{what} took {elapsed:?}, limit {limit:?}")
    })
}

fn finite_exactness() -> Outcome {
    let mut notes = Vec::new();
    for (gcm, word, expected) in [
        (reference::a2(), "1,2,1", 2),
        (reference::g2(), "1,2,1,2,1,2", 5),
    ] {
        let start = Instant::now();
        let w = Word::parse(word).map_err(|e| e.to_string())?;
        let rep = degree_of_word(&gcm, &w).map_err(|e| e.to_string())?;
        let inv = WeylElement::from_word(&gcm, &w)
            .map_err(|e| e.to_string())?
            .inversion_set(&gcm);
        let phi: Vec<RootVector> = inv.roots().iter().map(|r| r.root.clone()).collect();
        let dfs = degree_dfs(&gcm, &phi, 64).map_err(|e| e.to_string())?;
        within(start.elapsed(), Duration::from_secs(1), word)?;
        ensure(rep.degree == expected, || {
            format!("{word}: degree {} ≠ {expected}", rep.degree)
        })?;
        ensure(dfs == expected, || {
            format!("{word}: DFS {dfs} ≠ {expected}")
        })?;
        ensure(inv.max_height() == expected as i64, || {
            format!("{word}: max height {}", inv.max_height())
        })?;
        notes.push(format!("{} {}", gcm.name().unwrap_or("?"), rep.degree));
    }
    Ok(notes.join(", "))
}

fn affine_bound() -> Outcome {
    let start = Instant::now();
    let a1 = affine_bound_check(&reference::a1_affine(), 12).map_err(|e| e.to_string())?;
    ensure(
        a1.bound == 2 && finite_projected_count(&reference::a1_affine()) == Ok(2),
        || "A1~ bound".into(),
    )?;
    ensure(a1.max_degree <= 2, || {
        format!("A1~ max degree {}", a1.max_degree)
    })?;
    ensure(a1.max_degree == 1, || {
        format!("A1~ observed max {} (expected 1)", a1.max_degree)
    })?;
    let a2 = affine_bound_check(&reference::a2_affine(), 8).map_err(|e| e.to_string())?;
    ensure(a2.bound == 6, || format!("A2~ bound {}", a2.bound))?;
    ensure(a2.max_degree <= 6, || {
        format!("A2~ max degree {}", a2.max_degree)
    })?;
    within(start.elapsed(), Duration::from_secs(60), "affine sweeps")?;
    Ok(format!(
        "A1~ L=12: {} elements, max {} ≤ {}; A2~ L=8: {} elements, max {} ≤ {}",
        a1.checked, a1.max_degree, a1.bound, a2.checked, a2.max_degree, a2.bound
    ))
}

fn uniform_bound_plateau() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (gcm, l) in [
        (reference::hyperbolic_33(), 12),
        (reference::rank3_affine_block(), 9),
    ] {
        let s = sweep(&gcm, l).map_err(|e| e.to_string())?;
        let maxima: Vec<String> = s
            .summary
            .max_degree_per_length
            .iter()
            .map(|m| m.map_or("-".into(), |d| d.to_string()))
            .collect();
        ensure(s.summary.plateau, || {
            format!(
                "{} has no plateau: {}",
                gcm.canonical_string(),
                maxima.join(" ")
            )
        })?;
        notes.push(format!(
            "{} L={l}: [{}]",
            gcm.canonical_string(),
            maxima.join(" ")
        ));
    }
    within(start.elapsed(), Duration::from_secs(600), "plateau sweeps")?;
    Ok(notes.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for gcm in reference::core_four() {
        for w in enumerate(&gcm, 6) {
            let inv = w.inversion_set(&gcm);
            let (dp, _) = degree_dp(&gcm, inv.roots()).map_err(|e| e.to_string())?;
            let phi: Vec<RootVector> = inv.roots().iter().map(|r| r.root.clone()).collect();
            let dfs = degree_dfs(&gcm, &phi, 64).map_err(|e| e.to_string())?;
            ensure(dp == dfs, || {
                format!(
                    "{} w={}: dp {dp} ≠ dfs {dfs}",
                    gcm.canonical_string(),
                    w.word()
                )
            })?;
            checked += 1;
        }
    }
    within(
        start.elapsed(),
        Duration::from_secs(60),
        "oracle equivalence",
    )?;
    Ok(format!("{checked} inversion sets"))
}

fn inversion_set_laws() -> Outcome {
    let mut checked = 0;
    for gcm in reference::all() {
        for w in enumerate(&gcm, 10) {
            let inv = w.inversion_set(&gcm);
            ensure(inv.len() == w.length(), || {
                format!("{}: |Δ({})| ≠ ℓ", gcm.canonical_string(), w.word())
            })?;
            if let Some((a, b)) = inv.closedness_violation(&gcm) {
                return Err(format!(
                    "{}: Δ({}) not closed at {a} + {b}",
                    gcm.canonical_string(),
                    w.word()
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} elements"))
}

fn pair_soundness() -> Outcome {
    let start = Instant::now();
    let mut scanned = 0;
    for gcm in reference::all() {
        let r = chamber_signs(&gcm, 5, 10);
        ensure(r.passed(), || format!("{}: {:?}", r.gcm, r.counterexample))?;
        scanned += r.scanned_count;
    }
    within(start.elapsed(), Duration::from_secs(300), "chamber oracle")?;
    Ok(format!("{scanned} ordered pairs, 0 counterexamples"))
}

fn pairing_floor_scan() -> Outcome {
    let mut scanned = 0;
    for gcm in reference::all() {
        let r = pairing_floor(&gcm, 8);
        ensure(r.passed(), || format!("{}: {:?}", r.gcm, r.counterexample))?;
        scanned += r.scanned_count;
    }
    Ok(format!("{scanned} prenilpotent pairs, none below −3"))
}

fn empirical_k_stability() -> Outcome {
    let mut notes = Vec::new();
    for gcm in reference::all() {
        let values: Vec<Option<i64>> = [4, 6, 8]
            .iter()
            .map(|&h| empirical_k(&RootTable::generate(&gcm, h).expect("cap ≥ 1")).map(|w| w.value))
            .collect();
        ensure(values.windows(2).all(|w| w[0] == w[1]), || {
            format!("{}: {values:?}", gcm.canonical_string())
        })?;
        notes.push(format!(
            "{}={}",
            gcm.name().unwrap_or("?"),
            values[0].map_or("none".to_string(), |v| v.to_string())
        ));
    }
    let a2 =
        empirical_k(&RootTable::generate(&reference::a2(), 8).expect("cap ≥ 1")).map(|w| w.value);
    ensure(a2 == Some(-1), || format!("A2 value {a2:?}"))?;
    Ok(notes.join(" "))
}

fn affine_chain_contrapositive() -> Outcome {
    let r3 = reference::rank3_affine_block();
    let phi = ParabolicSubsystem::standard(&r3, &[0, 1]).map_err(|e| e.to_string())?;
    let real = |c: &[i64]| -> Result<RealRoot, String> {
        r3.classify_vector(&RootVector(c.to_vec()))
            .map_err(|e| e.to_string())?
            .real()
            .ok_or_else(|| format!("{c:?} is not real"))
    };
    let alpha3 = real(&[0, 0, 1])?;
    ensure(!phi.contains(&alpha3.root), || "α₃ inside Δ_J".into())?;
    // No root of Δ_J lies strictly above α₃; chains run through ∂α₃ from −α₃.
    let table = RootTable::generate(&r3, 24).expect("cap ≥ 1");
    let above = table
        .signed_roots()
        .into_iter()
        .filter(|b| phi.contains(&b.root) && strictly_inside(&r3, &alpha3, b))
        .count();
    ensure(above == 0, || format!("{above} roots of Δ_J above α₃"))?;
    let alpha = alpha3.negated();
    let mut notes = Vec::new();
    for n in [4i64, 6, 8] {
        let chain: Vec<RealRoot> = (1..=n)
            .map(|k| real(&[k + 1, k, 0]))
            .collect::<Result<_, _>>()?;
        ensure(strictly_inside(&r3, &alpha, &chain[0]), || {
            "D(−α₃) ⊄ D(β₁)".into()
        })?;
        ensure(
            chain.windows(2).all(|w| strictly_inside(&r3, &w[0], &w[1])),
            || "chain not nested".into(),
        )?;
        let top = r3.pairing(&chain[chain.len() - 1].root, &alpha.coroot);
        ensure(2 * top >= n, || format!("n={n}: ⟨βₙ, α∨⟩ = {top} < n/2"))?;
        // Mirror image: the negated chain sits below α₃ with the same pairing.
        let mirrored = r3.pairing(&chain[chain.len() - 1].negated().root, &alpha3.coroot);
        ensure(mirrored == top, || {
            format!("n={n}: mirrored pairing {mirrored} ≠ {top}")
        })?;
        let report = lemma_affine_check(
            &r3,
            &phi,
            &alpha,
            &MembershipWitnesses {
                chain: Some(chain),
                ..Default::default()
            },
        );
        ensure(report.chain == ClauseOutcome::Confirmed, || {
            format!("n={n}: {:?}", report.chain)
        })?;
        notes.push(format!("n={n}: ⟨βₙ,α∨⟩={top}"));
    }
    Ok(notes.join(", "))
}

fn closure_laws() -> Outcome {
    let gcms = reference::all();
    let elements: Vec<Vec<WeylElement>> = gcms
        .iter()
        .map(|g| enumerate(g, 6).filter(|w| w.length() > 0).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut per_gcm = vec![0usize; gcms.len()];
    for _ in 0..1000 {
        let k = rng.gen_range(0..gcms.len());
        let (w, subset) = random_subset(&gcms[k], &elements[k], &mut rng);
        if let Some(why) = closure_violation(&gcms[k], &w, &subset).map_err(|e| e.to_string())? {
            return Err(format!(
                "{} w={}: {why}",
                gcms[k].canonical_string(),
                w.word()
            ));
        }
        per_gcm[k] += 1;
    }
    Ok(format!("1000 subsets, per matrix {per_gcm:?}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("finite-type exactness", finite_exactness),
        ("affine bound", affine_bound),
        ("uniform-bound plateau", uniform_bound_plateau),
        ("DP/DFS oracle equivalence", oracle_equivalence),
        ("inversion-set laws", inversion_set_laws),
        ("pair classification vs chambers", pair_soundness),
        ("prenilpotent pairing floor", pairing_floor_scan),
        ("empirical K stability", empirical_k_stability),
        ("affine chain contrapositive", affine_chain_contrapositive),
        ("closure laws", closure_laws),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} {name}: PASS ({detail}) [{elapsed:.2?}]",
                k + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} {name}: FAIL ({detail}) [{elapsed:.2?}]",
                    k + 1
                );
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
