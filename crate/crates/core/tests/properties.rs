use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use triposlab::coded_tripos::{
    b4, ch2, ch3, entails, exists_along, forall_along, forcing_presentation, px, subst,
    CodedTripos, PredCode, CONNECTIVES,
};
use triposlab::extraction::{
    self, atom_enumerate, atom_leq, check_extracted_codes, extract, iso_check,
};
use triposlab::finite_order::{
    lattice_structure, monotone_adjoints, reflect, FinMap, FinPoset, FinPreorder,
};
use triposlab::implicative::{self, induced_tripos, validate, ImpAlgebra, ImpStructure};
use triposlab::law_suite::{self, run_all, CheckBudget};

fn closure(n: usize, pairs: &[(usize, usize)]) -> Vec<bool> {
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for &(a, b) in pairs {
        rel[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + k] && rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
    rel
}

fn preorder() -> impl Strategy<Value = FinPreorder> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..8)
            .prop_map(move |pairs| FinPreorder::new(n, closure(n, &pairs)).unwrap())
    })
}

fn poset() -> impl Strategy<Value = FinPoset> {
    preorder().prop_map(|p| reflect(&p).0)
}

fn map(dom: usize, cod: usize) -> impl Strategy<Value = FinMap> {
    prop::collection::vec(0..cod, dom).prop_map(move |t| FinMap::new(cod, t).unwrap())
}

fn code(sigma: usize, n: usize) -> impl Strategy<Value = PredCode> {
    prop::collection::vec(0..sigma, n).prop_map(PredCode)
}

fn fixture() -> impl Strategy<Value = CodedTripos> {
    prop_oneof![Just(ch2()), Just(ch3()), Just(b4())]
}

/// `f: n -> k` and `g: k -> l` with a code over `l`.
fn composable() -> impl Strategy<Value = (CodedTripos, FinMap, FinMap, PredCode)> {
    (fixture(), 0usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(t, n, k, l)| {
        let s = t.sigma_size();
        (Just(t), map(n, k), map(k, l), code(s, l))
    })
}

fn check_galois(f: &FinMap, p: &FinPoset, q: &FinPoset) -> Result<(), TestCaseError> {
    let (left, right) = monotone_adjoints(f, p, q).unwrap();
    if let Some(l) = &left {
        for y in 0..q.size() {
            for x in 0..p.size() {
                prop_assert_eq!(p.leq(l.apply(y), x), q.leq(y, f.apply(x)));
            }
            prop_assert_eq!(l.apply(f.apply(l.apply(y))), l.apply(y));
        }
    }
    if let Some(r) = &right {
        for y in 0..q.size() {
            for x in 0..p.size() {
                prop_assert_eq!(p.leq(x, r.apply(y)), q.leq(f.apply(x), y));
            }
            prop_assert_eq!(r.apply(f.apply(r.apply(y))), r.apply(y));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjoints_between_chains(n in 1usize..=6, m in 1usize..=6, raw in prop::collection::vec(0usize..6, 6)) {
        let mut table: Vec<usize> = raw[..n].iter().map(|v| v % m).collect();
        table.sort_unstable();
        let f = FinMap::new(m, table).unwrap();
        check_galois(&f, &FinPoset::chain(n), &FinPoset::chain(m))?;
    }

    #[test]
    fn adjoints_between_random_posets(p in poset(), q in poset(), raw in prop::collection::vec(0usize..6, 6)) {
        let table: Vec<usize> = raw[..p.size()].iter().map(|v| v % q.size()).collect();
        let f = FinMap::new(q.size(), table).unwrap();
        prop_assume!(p.is_monotone(&f, &q).is_ok());
        check_galois(&f, &p, &q)?;
    }

    #[test]
    fn reflection_is_idempotent(p in preorder()) {
        let (q, proj) = reflect(&p);
        prop_assert!(proj.is_surjective());
        for i in 0..p.size() {
            for j in 0..p.size() {
                prop_assert_eq!(proj.apply(i) == proj.apply(j), p.leq(i, j) && p.leq(j, i));
                prop_assert_eq!(q.leq(proj.apply(i), proj.apply(j)), p.leq(i, j));
            }
        }
        let (q2, proj2) = reflect(q.as_preorder());
        prop_assert_eq!(q2, q.clone());
        prop_assert_eq!(proj2, FinMap::identity(q.size()));
    }

    #[test]
    fn lattice_operations_match_brute_force(a in 1usize..=4, b in 1usize..=4) {
        let p = FinPoset::from_fn(a * b, |x, y| x / b <= y / b && x % b <= y % b).unwrap();
        let h = lattice_structure(&p).unwrap();
        let n = p.size();
        for x in 0..n {
            for y in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| p.leq(z, x) && p.leq(z, y)).collect();
                let glb: Vec<usize> = lower.iter().copied().filter(|&z| lower.iter().all(|&w| p.leq(w, z))).collect();
                prop_assert_eq!(glb, vec![h.meet(x, y)]);
                let upper: Vec<usize> = (0..n).filter(|&z| p.leq(x, z) && p.leq(y, z)).collect();
                let lub: Vec<usize> = upper.iter().copied().filter(|&z| upper.iter().all(|&w| p.leq(z, w))).collect();
                prop_assert_eq!(lub, vec![h.join(x, y)]);
                for z in 0..n {
                    prop_assert_eq!(p.leq(h.meet(z, x), y), p.leq(z, h.imp(x, y)));
                }
            }
        }
    }

    #[test]
    fn subst_is_functorial((_t, f, g, tau) in composable()) {
        let gf = g.after(&f).unwrap();
        prop_assert_eq!(subst(&gf, &tau).unwrap(), subst(&f, &subst(&g, &tau).unwrap()).unwrap());
        prop_assert_eq!(subst(&FinMap::identity(tau.ctx_size()), &tau).unwrap(), tau.clone());
    }

    #[test]
    fn connectives_commute_with_subst(
        (t, f, sigma, tau) in (fixture(), 0usize..=4, 1usize..=4).prop_flat_map(|(t, n, k)| {
            let s = t.sigma_size();
            (Just(t), map(n, k), code(s, k), code(s, k))
        })
    ) {
        for op in CONNECTIVES {
            let lhs = subst(&f, &t.apply(op, &sigma, &tau).unwrap()).unwrap();
            let rhs = t.apply(op, &subst(&f, &sigma).unwrap(), &subst(&f, &tau).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{:?}", op);
        }
    }

    #[test]
    fn entailment_only_sees_image_sets(
        (t, sigma, tau, tail, seed) in (fixture(), 1usize..=3, 0usize..=3).prop_flat_map(|(t, n, extra)| {
            let s = t.sigma_size();
            (Just(t), code(s, n), code(s, n), prop::collection::vec(0..n, extra), any::<u64>())
        })
    ) {
        // a surjection onto the context: every position, some repeated, shuffled
        let mut table: Vec<usize> = (0..sigma.ctx_size()).collect();
        table.extend(tail);
        table.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let d = FinMap::new(sigma.ctx_size(), table).unwrap();
        let pulled = (subst(&d, &sigma).unwrap(), subst(&d, &tau).unwrap());
        prop_assert_eq!(entails(&t, &pulled.0, &pulled.1).unwrap(), entails(&t, &sigma, &tau).unwrap());
    }

    #[test]
    fn quantifiers_ignore_domain_order(
        (t, f, sigma, seed) in (fixture(), 0usize..=4, 1usize..=3).prop_flat_map(|(t, n, k)| {
            let s = t.sigma_size();
            (Just(t), map(n, k), code(s, n), any::<u64>())
        })
    ) {
        let n = f.dom_size();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let pi = FinMap::new(n, perm).unwrap();
        let fp = f.after(&pi).unwrap();
        let sp = subst(&pi, &sigma).unwrap();
        prop_assert_eq!(exists_along(&t, &fp, &sp).unwrap(), exists_along(&t, &f, &sigma).unwrap());
        prop_assert_eq!(forall_along(&t, &fp, &sp).unwrap(), forall_along(&t, &f, &sigma).unwrap());
    }
}

/// One random table entry of CH2 overwritten.
fn mutated_ch2() -> impl Strategy<Value = CodedTripos> {
    (0usize..6, 0usize..4, 0usize..2).prop_map(|(table, index, value)| {
        ch2()
            .mutate(|tb| match table {
                0 => tb.and[index / 2][index % 2] = value,
                1 => tb.or[index / 2][index % 2] = value,
                2 => tb.imp[index / 2][index % 2] = value,
                3 => tb.meet[index] = value,
                4 => tb.join[index] = value,
                _ => tb.filter = index as u64,
            })
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn law_witnesses_replay(t in mutated_ch2(), seed in any::<u64>()) {
        let budget = CheckBudget { max_ctx: 1, samples: 16, seed };
        let report = run_all(&t, &budget);
        for e in report.failures() {
            let w = e.witness.as_ref().expect("failures carry witnesses");
            prop_assert_eq!(law_suite::replay(&t, w), Some(true), "{}: {:?}", e.law_id, w);
        }
        prop_assert_eq!(report.to_json(), run_all(&t, &budget).to_json());
    }

    #[test]
    fn extraction_witnesses_replay(t in mutated_ch2()) {
        let mut report = iso_check(&t, &CheckBudget::exhaustive(1)).unwrap();
        report.extend(check_extracted_codes(&t).unwrap());
        for e in report.failures() {
            let w = e.witness.as_ref().expect("failures carry witnesses");
            if matches!(w, triposlab::Witness::Quotient { .. }) {
                continue;
            }
            prop_assert_eq!(extraction::replay(&t, w), Some(true), "{}: {:?}", e.law_id, w);
        }
    }

    #[test]
    fn algebra_witnesses_replay(
        imp in prop::collection::vec(prop::collection::vec(0usize..3, 3), 3),
        separator in 0u64..8,
    ) {
        let a = ImpAlgebra::new(ImpStructure::new(FinPoset::chain(3), imp).unwrap(), separator).unwrap();
        for e in validate(&a).failures() {
            let w = e.witness.as_ref().expect("failures carry witnesses");
            prop_assert_eq!(implicative::replay(&a, w), Some(true), "{}: {:?}", e.law_id, w);
        }
    }

    #[test]
    fn separator_enlargement_keeps_combinators(small in 0u64..16, extra in 0u64..16) {
        let h = lattice_structure(&FinPoset::diamond()).unwrap();
        let s = ImpStructure::from_heyting(&h);
        let a = ImpAlgebra::new(s.clone(), small).unwrap();
        let b = ImpAlgebra::new(s, small | extra).unwrap();
        let c = a.combinators();
        for v in [c.k, c.s, c.cc] {
            prop_assert!(!a.in_separator(v) || b.in_separator(v));
        }
    }
}

fn heyting_algebras() -> Vec<ImpAlgebra> {
    let mut out: Vec<ImpAlgebra> = (1..=4)
        .map(|n| ImpAlgebra::heyting(&lattice_structure(&FinPoset::chain(n)).unwrap()))
        .collect();
    out.push(ImpAlgebra::heyting(
        &lattice_structure(&FinPoset::diamond()).unwrap(),
    ));
    out
}

#[test]
fn induced_order_refines_lattice_order() {
    for a in heyting_algebras() {
        let t = induced_tripos(&a).unwrap();
        assert_eq!(t.filter(), a.separator());
        let n = a.structure.size();
        for x in 0..n {
            for y in 0..n {
                if a.structure.leq(x, y) {
                    assert!(entails(&t, &PredCode(vec![x]), &PredCode(vec![y])).unwrap());
                }
            }
        }
    }
}

#[test]
fn induced_triposes_pass_the_law_suite() {
    for a in heyting_algebras() {
        let t = induced_tripos(&a).unwrap();
        assert!(run_all(&t, &CheckBudget::default()).passed());
    }
}

#[test]
fn certified_presentations_have_consistent_px() {
    for t in [ch2(), ch3(), b4()] {
        assert!(run_all(&t, &CheckBudget::exhaustive(2)).passed());
        for n in 0..=2 {
            px(&t, n).unwrap();
        }
    }
}

#[test]
fn extracted_implication_variance_and_distribution() {
    for t in [ch2(), ch3()] {
        let e = extract(&t).unwrap();
        let b = e.size();
        let sub = |x: usize, y: usize| x & !y == 0;
        for s in 0..b {
            for s2 in (0..b).filter(|&s2| sub(s, s2)) {
                for u in 0..b {
                    for u2 in (0..b).filter(|&u2| sub(u2, u)) {
                        // s2 ≼ s and u ≼ u2 in reverse inclusion
                        assert!(sub(e.imp(s2, u2), e.imp(s, u)));
                    }
                }
            }
            for family in 0..1u64 << b {
                let union = (0..b)
                    .filter(|u| family >> u & 1 == 1)
                    .fold(0, |acc, u| acc | u);
                let imps = (0..b)
                    .filter(|u| family >> u & 1 == 1)
                    .fold(0, |acc, u| acc | e.imp(s, u));
                assert_eq!(e.imp(s, union), imps);
            }
        }
    }
}

#[test]
fn atom_order_is_a_preorder() {
    let atoms = atom_enumerate(2, 2);
    for a in &atoms {
        assert!(atom_leq(a, a));
    }
    let small = atom_enumerate(2, 1);
    for a in &small {
        for b in &small {
            for c in &small {
                if atom_leq(a, b) && atom_leq(b, c) {
                    assert!(atom_leq(a, c));
                }
            }
        }
    }
}

#[test]
fn upsets_are_closed_under_union() {
    let universe = atom_enumerate(2, 1);
    let ups = extraction::upsets(&universe).unwrap();
    let keys: BTreeSet<Vec<_>> = ups.iter().map(|s| s.iter().cloned().collect()).collect();
    for a in ups.iter().step_by(7) {
        for b in ups.iter().step_by(5) {
            let u: Vec<_> = a.union(b).cloned().collect();
            assert!(keys.contains(&u));
        }
    }
}

#[test]
fn forcing_presentations_of_heyting_algebras_pass() {
    let two_by_three = FinPoset::from_fn(6, |x, y| x / 3 <= y / 3 && x % 3 <= y % 3).unwrap();
    let t = forcing_presentation(&lattice_structure(&two_by_three).unwrap());
    let report = run_all(&t, &CheckBudget::exhaustive(1));
    assert!(report.passed());
    assert!(report
        .entries
        .iter()
        .any(|e| e.status == triposlab::Status::Skipped));
}
