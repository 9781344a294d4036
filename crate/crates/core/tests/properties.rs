use proptest::prelude::*;

use kmlab_core::nilpotency::{check_sequence, degree_dp, degree_of_element};
use kmlab_core::pairs::{
    classify_pair, closure, is_prenilpotent_set, make_all_positive, PairKind, Prenilpotency, Walk,
};
use kmlab_core::weyl::{is_reduced, reduce};
use kmlab_core::{reference, Gcm, RootClass, RootTable, RootVector, WeylElement, Word};

fn gcm_strategy() -> impl Strategy<Value = Gcm> {
    (0..reference::all().len()).prop_map(|k| reference::all().swap_remove(k))
}

fn gcm_and_word(max_len: usize) -> impl Strategy<Value = (Gcm, Word)> {
    gcm_strategy().prop_flat_map(move |g| {
        let n = g.rank();
        (
            Just(g),
            prop::collection::vec(0..n, 0..=max_len).prop_map(Word::new),
        )
    })
}

fn element(gcm: &Gcm, word: &Word) -> WeylElement {
    WeylElement::from_word(gcm, word).unwrap()
}

/// A real root of height ≤ 4 picked by index, with either sign.
fn pick_root(gcm: &Gcm, k: usize, negate: bool) -> kmlab_core::RealRoot {
    let table = RootTable::generate(gcm, 4).unwrap();
    let r = table.roots()[k % table.len()].clone();
    if negate {
        r.negated()
    } else {
        r
    }
}

fn permuted(gcm: &Gcm, perm: &[usize]) -> Gcm {
    let n = gcm.rank();
    Gcm::new(
        (0..n)
            .map(|i| (0..n).map(|j| gcm.entry(perm[i], perm[j])).collect())
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classification_is_permutation_invariant(g in gcm_strategy(), seed in any::<u64>()) {
        let n = g.rank();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = permuted(&g, &perm);
        prop_assert_eq!(p.classify().kind, g.classify().kind);
        prop_assert_eq!(p.determinant(), g.determinant());
    }

    #[test]
    fn reduced_length_matches_inversion_count((g, word) in gcm_and_word(10)) {
        let w = element(&g, &word);
        let r = reduce(&g, &word).unwrap();
        prop_assert!(is_reduced(&g, &r).unwrap());
        prop_assert_eq!(element(&g, &r), w.clone());
        let inv = w.inversion_set(&g);
        prop_assert_eq!(inv.len(), w.length());
        prop_assert!(inv.is_closed(&g));
        for beta in inv.roots() {
            prop_assert!(beta.is_positive());
            prop_assert!(w.apply_unchecked(&beta.root).is_negative());
        }
    }

    #[test]
    fn inverse_inversion_set_is_negated_image((g, word) in gcm_and_word(8)) {
        let w = element(&g, &word);
        let winv = w.inverse(&g);
        let mut lhs: Vec<RootVector> = winv.inversion_set(&g).roots().iter().map(|r| r.root.clone()).collect();
        let mut rhs: Vec<RootVector> =
            w.inversion_set(&g).roots().iter().map(|r| -&w.apply_unchecked(&r.root)).collect();
        lhs.sort();
        rhs.sort();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_images_of_simple_roots_are_real((g, word) in gcm_and_word(8), i in 0usize..3) {
        let i = i % g.rank();
        let w = element(&g, &word);
        let image = w.apply_real(&g, &kmlab_core::RealRoot::simple(g.rank(), i));
        prop_assert_eq!(g.pairing(&image.root, &image.coroot), 2);
        match g.classify_vector(&image.root).unwrap() {
            RootClass::Real(r) => prop_assert_eq!(r, image),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn pair_classification_is_symmetric(g in gcm_strategy(), a in 0usize..64, b in 0usize..64, na: bool, nb: bool) {
        let (x, y) = (pick_root(&g, a, na), pick_root(&g, b, nb));
        let xy = classify_pair(&g, &x, &y);
        let yx = classify_pair(&g, &y, &x);
        prop_assert_eq!(xy.pairings, (yx.pairings.1, yx.pairings.0));
        match (xy.kind, yx.kind) {
            (PairKind::Nested(d), PairKind::Nested(e)) => prop_assert_eq!(d, e.flipped()),
            (k, l) => prop_assert_eq!(k, l),
        }
    }

    #[test]
    fn pair_classification_is_w_invariant(
        (g, word) in gcm_and_word(6), a in 0usize..64, b in 0usize..64, na: bool, nb: bool,
    ) {
        let (x, y) = (pick_root(&g, a, na), pick_root(&g, b, nb));
        let w = element(&g, &word);
        let before = classify_pair(&g, &x, &y);
        let after = classify_pair(&g, &w.apply_real(&g, &x), &w.apply_real(&g, &y));
        prop_assert_eq!(before, after);
    }

    #[test]
    fn negated_subsets_are_positivized((g, word) in gcm_and_word(7), mask in any::<u16>()) {
        let w = element(&g, &word);
        let inv = w.inversion_set(&g);
        let phi: Vec<RootVector> = inv
            .roots()
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> (k % 16) & 1 == 1)
            .map(|(_, r)| -&r.root)
            .collect();
        match make_all_positive(&g, &phi, kmlab_core::pairs::default_max_steps(&phi)).unwrap() {
            Walk::Positivized(u) => {
                for v in &phi {
                    prop_assert!(u.apply(&g, v).unwrap().is_positive());
                }
            }
            other => prop_assert!(false, "{:?}", other),
        }
        let verdict = is_prenilpotent_set(&g, &phi, kmlab_core::pairs::default_max_steps(&phi)).unwrap();
        prop_assert!(matches!(verdict, Prenilpotency::Certified(_)));
    }

    #[test]
    fn closure_of_inversion_subset_stays_inside((g, word) in gcm_and_word(7), mask in any::<u16>()) {
        let w = element(&g, &word);
        let inv = w.inversion_set(&g);
        let phi: Vec<RootVector> = inv
            .roots()
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> (k % 16) & 1 == 1)
            .map(|(_, r)| r.root.clone())
            .collect();
        let c = closure(&g, &phi, inv.max_height().max(1)).unwrap();
        for v in &c {
            prop_assert!(inv.contains(v));
        }
        prop_assert_eq!(closure(&g, &c, inv.max_height().max(1)).unwrap(), c);
    }

    #[test]
    fn degree_is_bounded_and_witness_revalidates((g, word) in gcm_and_word(7)) {
        let w = element(&g, &word);
        let rep = degree_of_element(&g, &w).unwrap();
        let inv = w.inversion_set(&g);
        prop_assert!(rep.degree as i64 <= inv.max_height());
        prop_assert_eq!(rep.witness.len(), rep.degree);
        if rep.degree > 0 {
            let seq = check_sequence(&g, &rep.witness.term_vectors(), Some(&inv)).unwrap();
            prop_assert_eq!(seq, rep.witness);
        }
        prop_assert!(rep.max_chain <= rep.invset_size);
    }

    #[test]
    fn degree_is_monotone_under_inclusion((g, word) in gcm_and_word(7), cut in 0usize..8) {
        // Prefix elements of a reduced word have nested inversion sets.
        let r = reduce(&g, &word).unwrap();
        let k = cut.min(r.len());
        let suffix = Word::new(r.letters()[r.len() - k..].to_vec());
        let v = element(&g, &suffix);
        let w = element(&g, &r);
        let (dv, _) = degree_dp(&g, v.inversion_set(&g).roots()).unwrap();
        let (dw, _) = degree_dp(&g, w.inversion_set(&g).roots()).unwrap();
        let inv_w = w.inversion_set(&g);
        prop_assert!(v.inversion_set(&g).roots().iter().all(|b| inv_w.contains(&b.root)));
        prop_assert!(dv <= dw);
    }

    #[test]
    fn root_table_round_trips(g in gcm_strategy(), cap in 1i64..7) {
        let table = RootTable::generate(&g, cap).unwrap();
        let mut buf = Vec::new();
        table.write_jsonl(&mut buf).unwrap();
        let back = RootTable::read_jsonl(&g, cap, buf.as_slice()).unwrap();
        prop_assert_eq!(back.roots(), table.roots());
    }
}
