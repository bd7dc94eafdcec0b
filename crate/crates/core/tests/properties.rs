use std::collections::{BTreeSet, HashSet};

use ordopoly_core::corpus::all_natural_posets;
use ordopoly_core::extension::histogram;
use ordopoly_core::poset::PosetDocument;
use ordopoly_core::{
    canonicalize, class_partition, deletable_set, delete, descent_set, enumerate_extensions,
    extended, from_covers, omega, oracle, parse_poset, restore, BigRational, BivariatePolynomial,
    EnumOptions, Label, Poset, SubposetSelection,
};
use proptest::prelude::*;

/// A naturally labeled poset on `1..=p` from a random set of increasing pairs.
fn natural_poset(max: u32) -> impl Strategy<Value = Poset> {
    (0..=max).prop_flat_map(|p| {
        let pairs = (p * p.saturating_sub(1) / 2) as usize;
        prop::collection::vec(prop::bool::weighted(0.35), pairs).prop_map(move |bits| {
            let mut chosen = Vec::new();
            let mut it = bits.into_iter();
            for a in 1..=p {
                for b in a + 1..=p {
                    if it.next().unwrap() {
                        chosen.push((a, b));
                    }
                }
            }
            from_covers(p, &chosen).unwrap()
        })
    })
}

fn words(p: &Poset) -> Vec<Vec<Label>> {
    enumerate_extensions(p).map(|w| w.into_word()).collect()
}

fn subset_of(labels: &[Label], mask: u64) -> BTreeSet<Label> {
    labels
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &l)| l)
        .collect()
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn polynomial() -> impl Strategy<Value = BivariatePolynomial> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..=5, 1i64..=3), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(BivariatePolynomial::zero(), |acc, (a, k, num, den)| {
                acc + BivariatePolynomial::monomial(BigRational::new(num.into(), den.into()), a, k)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_and_reduction_agree(p in natural_poset(8)) {
        let rebuilt = from_covers(p.universe(), &p.covers()).unwrap();
        prop_assert_eq!(&rebuilt, &p);
        let from_relations = from_covers(p.universe(), &p.relations()).unwrap();
        prop_assert_eq!(&from_relations, &p);
        for (a, b) in p.relations() {
            prop_assert!(a < b);
        }
        prop_assert!(p.check_invariants().is_ok());
    }

    #[test]
    fn nested_deletion(p in natural_poset(8), m1 in any::<u64>(), m2 in any::<u64>()) {
        let d1 = subset_of(p.elements(), m1);
        let d2 = subset_of(p.elements(), m2);
        let s1 = SubposetSelection::new(d1.iter().copied());
        let s2 = SubposetSelection::new(d2.iter().copied());
        let stepwise = p.induced(&s1).unwrap().induced(&s2).unwrap();
        let at_once = p.induced(&s1.union(&s2)).unwrap();
        prop_assert_eq!(stepwise, at_once);
        prop_assert_eq!(p.induced(&SubposetSelection::default()).unwrap(), p);
    }

    #[test]
    fn canonical_labels_are_natural(perm_seed in any::<u64>(), p in natural_poset(7)) {
        // scramble the labels, then recover a natural labeling of the same shape
        let n = p.universe();
        let mut perm: Vec<Label> = (1..=n).collect();
        let mut s = perm_seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let scrambled: Vec<_> = p.covers().iter().map(|&(a, b)| (perm[a as usize - 1], perm[b as usize - 1])).collect();
        let (q, relabel) = canonicalize(n, &scrambled).unwrap();
        prop_assert!(q.check_invariants().is_ok());
        prop_assert_eq!(q.covers().len(), p.covers().len());
        for &(a, b) in &scrambled {
            prop_assert!(q.less(relabel.apply(a), relabel.apply(b)));
        }
        prop_assert_eq!(words(&q).len(), words(&p).len());
    }

    #[test]
    fn deletion_keeps_descents(p in natural_poset(7), pick in any::<prop::sample::Index>(), mask in any::<u64>()) {
        let all = words(&p);
        let w = &all[pick.index(all.len())];
        let del: Vec<Label> = deletable_set(&p, w).unwrap().into_iter().collect();
        let d = subset_of(&del, mask);
        let v = delete(&p, w, &d).unwrap();
        prop_assert_eq!(v.des(), descent_set(w).len());
        let r = restore(&p, v.word(), &d).unwrap();
        prop_assert_eq!(r.extension.word(), &w[..]);
    }

    #[test]
    fn descents_pin_their_labels(p in natural_poset(8), pick in any::<prop::sample::Index>()) {
        let all = words(&p);
        let w = &all[pick.index(all.len())];
        let del = deletable_set(&p, w).unwrap();
        let descents = descent_set(w);
        for &i in &descents {
            prop_assert!(!del.contains(&w[i - 1]) && !del.contains(&w[i]));
        }
        if descents.is_empty() {
            prop_assert_eq!(del.len(), p.size());
        }
        // between consecutive fixed labels the deletable ones increase
        let mut last: Option<Label> = None;
        for &x in w {
            if del.contains(&x) {
                if let Some(prev) = last {
                    prop_assert!(prev < x);
                }
                last = Some(x);
            } else {
                last = None;
            }
        }
    }

    #[test]
    fn restore_inverts_delete_on_any_subposet(p in natural_poset(7), mask in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let d = subset_of(p.elements(), mask);
        let q = p.induced(&SubposetSelection::new(d.iter().copied())).unwrap();
        let all = words(&q);
        let v = &all[pick.index(all.len())];
        let r = restore(&p, v, &d).unwrap();
        let del = deletable_set(&p, r.extension.word()).unwrap();
        prop_assert!(d.is_subset(&del));
        let again = delete(&p, r.extension.word(), &d).unwrap();
        prop_assert_eq!(again.word(), &v[..]);
    }

    #[test]
    fn omega_vanishes_below_chain_length(p in natural_poset(7)) {
        let om = omega(&p).unwrap();
        let h = oracle::longest_chain(&p) as u64;
        for n in 0..h {
            prop_assert_eq!(om.eval(n), rat(0));
        }
        if !p.is_empty() {
            prop_assert!(om.eval(h) > rat(0));
            prop_assert_eq!(om.poly.degree_n(), Some(p.size() as u32));
        }
        for n in 0..=5u64 {
            let count = oracle::count_strict_maps(&p, n).unwrap();
            prop_assert_eq!(om.eval(n), BigRational::from_integer(count.into()));
        }
    }

    #[test]
    fn table_shape(p in natural_poset(7)) {
        let e = extended(&p).unwrap();
        prop_assert!(e.table().check_invariants().is_ok());
        let des_free: Vec<_> = e.table().entries().filter(|((l, _), _)| *l == 0).collect();
        prop_assert_eq!(des_free.len(), 1);
        prop_assert_eq!(e.omega().poly, omega(&p).unwrap().poly);
        prop_assert_eq!(e.table().total(), (words(&p).len() as u64).into());
    }

    #[test]
    fn histogram_ignores_thread_count(p in natural_poset(8), threads in 2usize..5) {
        let one = histogram(&p, &EnumOptions::unlimited().with_threads(1)).unwrap();
        let many = histogram(&p, &EnumOptions::unlimited().with_threads(threads)).unwrap();
        prop_assert_eq!(one, many);
    }

    #[test]
    fn document_round_trip(p in natural_poset(8)) {
        let doc = PosetDocument::from_poset(&p);
        prop_assert_eq!(parse_poset(&doc.to_text()).unwrap(), p.clone());
        let json = serde_json::to_string(&doc).unwrap();
        prop_assert_eq!(parse_poset(&json).unwrap(), p);
    }

    #[test]
    fn polynomial_equality_agrees_with_evaluation(
        a in polynomial(),
        b in polynomial(),
        points in prop::collection::vec((0i64..=20, 0i64..=20), 10),
    ) {
        let sum = &a + &b;
        let back = &sum - &b;
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(&a + &b, &b + &a);
        let prod = &a * &b;
        for &(n, z) in &points {
            prop_assert_eq!(back.eval_int(n, z), a.eval_int(n, z));
            prop_assert_eq!(prod.eval_int(n, z), a.eval_int(n, z) * b.eval_int(n, z));
        }
        if a != b {
            // a nonzero polynomial of degree < 4 in each variable cannot vanish on a 5x5 grid
            let diff = &a - &b;
            let vanishes = (0..5).all(|n| (0..5).all(|z| diff.eval_int(n, z) == rat(0)));
            prop_assert!(!vanishes);
        }
    }
}

/// For a fixed deleted set, `w -> w \ D` is injective on the extensions where
/// every label of `D` is deletable; checked on every natural poset up to 6 points.
#[test]
fn deletion_is_injective_exhaustively() {
    for p in 0..=6 {
        for poset in all_natural_posets(p) {
            let mut seen = HashSet::new();
            for w in words(&poset) {
                let del: Vec<Label> = deletable_set(&poset, &w).unwrap().into_iter().collect();
                for mask in 0u64..1 << del.len() {
                    let d = subset_of(&del, mask);
                    let v = delete(&poset, &w, &d).unwrap();
                    assert!(seen.insert((d, v)), "collision in {:?}", poset.covers());
                }
            }
        }
    }
}

/// Classes are disjoint and cover the extensions of every induced subposet.
#[test]
fn classes_cover_all_subposets_exhaustively() {
    for p in 0..=5 {
        for poset in all_natural_posets(p) {
            let classes = class_partition(&poset, 12).unwrap();
            assert!(classes.is_disjoint());
            let union: BTreeSet<Vec<Label>> =
                classes.union().into_iter().map(|w| w.into_word()).collect();
            assert_eq!(union, oracle::all_subposet_extensions(&poset).unwrap());
        }
    }
}

#[test]
fn hook_lengths_count_grid_extensions() {
    for l in 1..=4u32 {
        for m in 1..=4u32 {
            let count = enumerate_extensions(&ordopoly_core::grid(l, m)).count();
            assert_eq!(
                oracle::hook_length_count(l, m),
                (count as u64).into(),
                "{l}x{m}"
            );
        }
    }
}

#[test]
fn map_counts_for_antichains_are_powers() {
    for p in 0..=5u32 {
        for n in 0..=5u64 {
            let c = oracle::count_strict_maps(&ordopoly_core::antichain(p), n).unwrap();
            assert_eq!(c, n.pow(p).into());
        }
    }
}
