use std::collections::BTreeSet;

use bupoly::bup::{
    classify_bup, is_bup, is_bup_expanded, is_perfect, is_perfect_expanded, is_sigma_member,
    translate, BupKind,
};
use bupoly::field::FieldCtx;
use bupoly::search::{search_f4, search_f4_perfect, translate_tuple, tuple_to_poly, Filter, Tuple};
use bupoly::syntax::parse_splitting;
use bupoly::SplittingPoly;
use proptest::prelude::*;

fn all_hits(bound: u32) -> Vec<Tuple> {
    search_f4(bound, &[], None).unwrap().tuples()
}

#[test]
fn hits_agree_with_expanded_path() {
    for t in all_hits(23) {
        let a = tuple_to_poly(&t);
        assert!(is_bup_expanded(&a).unwrap(), "{t:?}");
    }
}

#[test]
fn hit_set_closed_under_translation() {
    let hits: BTreeSet<Tuple> = all_hits(23).into_iter().collect();
    let f4 = FieldCtx::f4();
    for t in &hits {
        for s in f4.enumerate() {
            assert!(
                hits.contains(&translate_tuple(t, s)),
                "{t:?} shifted by {s}"
            );
        }
    }
}

#[test]
fn frobenius_preserves_hits() {
    let hits: BTreeSet<Tuple> = all_hits(23).into_iter().collect();
    for t in &hits {
        assert!(hits.contains(&[t[0], t[1], t[3], t[2]]), "{t:?}");
    }
}

#[test]
fn all_odd_bup_is_perfect() {
    let bup: BTreeSet<Tuple> = search_f4(23, &[Filter::AllOdd], None)
        .unwrap()
        .tuples()
        .into_iter()
        .collect();
    let perfect: BTreeSet<Tuple> = search_f4_perfect(23, None)
        .unwrap()
        .into_iter()
        .filter(|t| t.iter().all(|e| e % 2 == 1))
        .collect();
    assert_eq!(bup, perfect);
    for t in &perfect {
        assert!(is_perfect_expanded(&tuple_to_poly(t)).unwrap());
    }
}

#[test]
fn two_root_bup_are_sigma_translates() {
    let f4 = FieldCtx::f4();
    for t in all_hits(23) {
        let a = tuple_to_poly(&t);
        if a.omega() == 2 {
            assert!(is_sigma_member(&a), "{t:?}");
        }
    }
    // and conversely every catalogue member, in every translate, is b.u.p.
    for r in [1, 2, 3, 7, 15] {
        for s in [format!("x^{r}*(x+1)^{r}"), format!("(x+a)^{r}*(x+1+a)^{r}")] {
            let a = parse_splitting(f4, &s).unwrap();
            for t in f4.enumerate() {
                let moved = translate(&a, t).unwrap();
                assert!(is_bup(&moved).unwrap());
                assert!(is_sigma_member(&moved));
            }
        }
    }
}

#[test]
fn trivial_hits_split_into_two_sigma_members() {
    let rep = search_f4(23, &[], None).unwrap();
    for h in rep.hits.iter().filter(|h| h.class == BupKind::TrivialBup) {
        let parts = h.decomposition.as_ref().unwrap();
        assert_eq!(parts.len(), 2, "{:?}", h.exps);
        for p in parts {
            let a = parse_splitting(FieldCtx::f4(), p).unwrap();
            assert!(is_sigma_member(&a), "{p}");
        }
    }
}

#[test]
fn table_already_complete_at_bound_11() {
    let filters = [Filter::IbupOnly, Filter::NotAllOdd];
    let at_23 = search_f4(23, &filters, None).unwrap().tuples();
    let at_11 = search_f4(11, &filters, None).unwrap().tuples();
    assert_eq!(at_23, at_11);
}

#[test]
fn literal_not_all_odd_reading() {
    let rep = search_f4(23, &[Filter::IbupOnly, Filter::AnyEven], None).unwrap();
    let tuples: BTreeSet<Tuple> = rep.tuples().into_iter().collect();
    // the a-even hits, closed under translation
    let normalized = search_f4(23, &[Filter::IbupOnly, Filter::NotAllOdd], None)
        .unwrap()
        .tuples();
    let closure: BTreeSet<Tuple> = normalized
        .iter()
        .flat_map(|t| {
            FieldCtx::f4()
                .enumerate()
                .into_iter()
                .map(move |s| translate_tuple(t, s))
        })
        .collect();
    assert_eq!(tuples, closure);
}

fn f4_tuple() -> impl Strategy<Value = Tuple> {
    prop::array::uniform4(0u32..12).prop_filter("nonconstant", |t| *t != [0; 4])
}

proptest! {
    #[test]
    fn translation_invariance(t in f4_tuple(), k in 0usize..4) {
        let f4 = FieldCtx::f4();
        let a = tuple_to_poly(&t);
        let moved = translate(&a, f4.from_index(k)).unwrap();
        prop_assert_eq!(is_bup(&a).unwrap(), is_bup(&moved).unwrap());
        prop_assert_eq!(is_perfect(&a).unwrap(), is_perfect(&moved).unwrap());
    }

    #[test]
    fn coprime_factor_of_bup(t in prop::sample::select(all_hits(23)), mask in 1u8..15) {
        let a = tuple_to_poly(&t);
        let roots: Vec<_> = a.exponents().keys().copied().collect();
        let left = a.restrict(|r| {
            let k = roots.iter().position(|&x| x == r).unwrap();
            mask >> k & 1 == 1
        });
        let right = a.restrict(|r| !left.exponents().contains_key(&r));
        prop_assume!(!left.is_one() && !right.is_one());
        prop_assert_eq!(is_bup(&left).unwrap(), is_bup(&right).unwrap());
    }

    #[test]
    fn all_odd_reduction(t in prop::array::uniform4((0u32..12).prop_map(|e| 2 * e + 1))) {
        let a = tuple_to_poly(&t);
        prop_assert_eq!(is_bup(&a).unwrap(), is_perfect(&a).unwrap());
    }

    #[test]
    fn root_path_matches_expanded_path_f9(exps in prop::collection::vec(0u32..9, 9)) {
        let f9 = FieldCtx::quadratic(3).unwrap();
        let a = SplittingPoly::from_dense(f9, &exps).unwrap();
        prop_assume!(!a.is_one());
        prop_assert_eq!(is_bup(&a).unwrap(), is_bup_expanded(&a).unwrap());
        prop_assert_eq!(is_perfect(&a).unwrap(), is_perfect_expanded(&a).unwrap());
    }

    #[test]
    fn classification_is_consistent(t in f4_tuple()) {
        let a = tuple_to_poly(&t);
        let class = classify_bup(&a).unwrap();
        prop_assert_eq!(class.kind != BupKind::NotBup, is_bup(&a).unwrap());
        prop_assert_eq!(class.decomposition.is_some(), class.kind == BupKind::TrivialBup);
    }
}

#[test]
fn perfect_hits_agree_with_expanded_path() {
    let hits = search_f4_perfect(23, None).unwrap();
    assert_eq!(hits.len(), 56);
    for t in &hits {
        assert!(is_perfect_expanded(&tuple_to_poly(t)).unwrap(), "{t:?}");
    }
}

#[test]
fn perfect_families_under_symmetry() {
    let f4 = FieldCtx::f4();
    let closure: BTreeSet<Tuple> = bupoly::search::perfect_families_f4(23)
        .iter()
        .flat_map(|t| [*t, [t[0], t[1], t[3], t[2]]])
        .flat_map(|t| {
            f4.enumerate()
                .into_iter()
                .map(move |s| translate_tuple(&t, s))
        })
        .collect();
    assert_eq!(closure.len(), 44);
    let hits: BTreeSet<Tuple> = search_f4_perfect(23, None).unwrap().into_iter().collect();
    assert!(closure.is_subset(&hits));
    // the leftover hits form the h = k = 3*2^r - 1 family and its images
    for t in hits.difference(&closure) {
        let mut s = *t;
        s.sort();
        assert!(
            [[2, 2, 3, 5], [5, 5, 7, 11], [11, 11, 15, 23]].contains(&s),
            "{t:?}"
        );
    }
}
