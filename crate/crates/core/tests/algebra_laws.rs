use boolgeo::algebra::{
    generate_subalgebra, infimum_finite, supremum_finite, verify_no_supremum, Algebra, CAlgebra,
    Element, Family, FamilyKind,
};
use proptest::prelude::*;

fn finite_element(atoms: u8) -> impl Strategy<Value = Element> {
    (0u64..1 << atoms).prop_map(move |bits| Element::Atoms { width: atoms, bits })
}

fn cofinite_element() -> impl Strategy<Value = Element> {
    (
        proptest::collection::btree_set(0u64..12, 0..6),
        any::<bool>(),
    )
        .prop_map(|(s, co)| {
            let fc = Algebra::FiniteCofinite;
            if co {
                fc.coset(s).unwrap()
            } else {
                fc.set(s).unwrap()
            }
        })
}

fn element() -> impl Strategy<Value = Element> {
    prop_oneof![finite_element(5), cofinite_element()]
}

fn triple() -> impl Strategy<Value = (Element, Element, Element)> {
    prop_oneof![
        (finite_element(5), finite_element(5), finite_element(5)),
        (cofinite_element(), cofinite_element(), cofinite_element()),
    ]
}

proptest! {
    #[test]
    fn boolean_axioms((x, y, z) in triple()) {
        prop_assert_eq!(x.join(&y).unwrap(), y.join(&x).unwrap());
        prop_assert_eq!(x.meet(&y).unwrap(), y.meet(&x).unwrap());
        prop_assert_eq!(x.join(&y).unwrap().join(&z).unwrap(), x.join(&y.join(&z).unwrap()).unwrap());
        prop_assert_eq!(x.meet(&y).unwrap().meet(&z).unwrap(), x.meet(&y.meet(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.meet(&y.join(&z).unwrap()).unwrap(),
            x.meet(&y).unwrap().join(&x.meet(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.join(&y.meet(&z).unwrap()).unwrap(),
            x.join(&y).unwrap().meet(&x.join(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.join(&y).unwrap().complement(), x.complement().meet(&y.complement()).unwrap());
        prop_assert_eq!(x.meet(&y).unwrap().complement(), x.complement().join(&y.complement()).unwrap());
        prop_assert!(x.join(&x.complement()).unwrap().is_one());
        prop_assert!(x.meet(&x.complement()).unwrap().is_zero());
        prop_assert_eq!(x.complement().complement(), x.clone());
    }

    #[test]
    fn leq_is_a_partial_order((x, y, z) in triple()) {
        prop_assert!(x.leq(&x).unwrap());
        if x.leq(&y).unwrap() && y.leq(&x).unwrap() {
            prop_assert_eq!(&x, &y);
        }
        if x.leq(&y).unwrap() && y.leq(&z).unwrap() {
            prop_assert!(x.leq(&z).unwrap());
        }
        prop_assert_eq!(x.leq(&y).unwrap(), x.meet(&y).unwrap() == x);
    }

    #[test]
    fn infimum_is_greatest_lower_bound(xs in proptest::collection::vec(finite_element(4), 1..5), z in finite_element(4)) {
        let inf = infimum_finite(&xs).unwrap();
        prop_assert!(xs.iter().all(|x| inf.leq(x).unwrap()));
        if xs.iter().all(|x| z.leq(x).unwrap()) {
            prop_assert!(z.leq(&inf).unwrap());
        }
        let sup = supremum_finite(&xs).unwrap();
        prop_assert!(xs.iter().all(|x| x.leq(&sup).unwrap()));
    }

    #[test]
    fn generated_subalgebra_is_closed(cs in proptest::collection::vec(finite_element(4), 0..4)) {
        let a = Algebra::Finite { atoms: 4 };
        let sub = generate_subalgebra(a, &cs, 1 << 12).unwrap();
        prop_assert!(sub.len().is_power_of_two());
        for x in &sub {
            prop_assert!(sub.contains(&x.complement()));
            for y in &sub {
                prop_assert!(sub.contains(&x.join(y).unwrap()));
                prop_assert!(sub.contains(&x.meet(y).unwrap()));
            }
        }
        let calg = CAlgebra::new(a, cs.iter().enumerate().map(|(i, c)| (format!("c{i}"), c.clone()))).unwrap();
        prop_assert_eq!(calg.c_cardinality(), Some(sub.len() as u128));
        for x in a.elements().unwrap() {
            prop_assert_eq!(calg.in_generated(&x), sub.contains(&x));
        }
    }

    #[test]
    fn display_parse_round_trip(x in element()) {
        prop_assert_eq!(x.algebra().parse_element(&x.to_string()).unwrap(), x);
    }
}

#[test]
fn carriers_never_mix() {
    let a = Algebra::Finite { atoms: 2 }.one();
    let b = Algebra::Finite { atoms: 3 }.one();
    let c = Algebra::FiniteCofinite.one();
    assert!(a.join(&b).is_err());
    assert!(a.meet(&c).is_err());
    assert!(!a.leq(&b).unwrap_or(false));
    assert!(infimum_finite(&[]).is_err());
}

/// Every element whose listed naturals lie below `bound`.
fn bounded_elements(bound: u64) -> Vec<Element> {
    let fc = Algebra::FiniteCofinite;
    let mut out = Vec::new();
    for mask in 0u64..1 << bound {
        let s: Vec<u64> = (0..bound).filter(|i| mask >> i & 1 == 1).collect();
        out.push(fc.set(s.clone()).unwrap());
        out.push(fc.coset(s).unwrap());
    }
    out
}

/// A bounded search for the greatest lower bound: lower bounds of the first members
/// among payload-bounded elements, and whether one dominates all others.
fn bounded_infimum(family: &Family, bound: u64) -> Option<Element> {
    let members = family.members(3 * bound as usize + 4);
    let lower: Vec<Element> = bounded_elements(bound)
        .into_iter()
        .filter(|e| members.iter().all(|m| e.leq(m).unwrap()))
        .collect();
    lower
        .iter()
        .find(|l| lower.iter().all(|o| o.leq(l).unwrap()))
        .cloned()
}

fn bounded_supremum(family: &Family, bound: u64) -> Option<Element> {
    let complemented = Family {
        complemented: !family.complemented,
        ..*family
    };
    bounded_infimum(&complemented, bound).map(|e| e.complement())
}

#[test]
fn family_closed_forms_match_bounded_search() {
    for kind in FamilyKind::ALL {
        for from in [kind.first_index(), 2, 3] {
            for complemented in [false, true] {
                let base = Family::new(kind).starting_at(from);
                let f = if complemented {
                    base.complemented()
                } else {
                    base
                };
                if let Some(inf) = f.infimum() {
                    assert_eq!(bounded_infimum(&f, 8), Some(inf), "inf {f}");
                }
                if let Some(sup) = f.supremum() {
                    assert_eq!(bounded_supremum(&f, 8), Some(sup), "sup {f}");
                }
            }
        }
    }
}

#[test]
fn even_singletons_have_no_supremum() {
    let evens = Family::new(FamilyKind::EvenSingletons);
    assert_eq!(evens.supremum(), None);
    let cert = verify_no_supremum(&evens, 8).unwrap();
    assert_eq!(cert.candidates, 512);
    // Upper bounds co{S} with S a set of odd numbers below 8: 2^4 of them.
    assert_eq!(cert.upper_bounds, 16);
    assert!(verify_no_supremum(&Family::new(FamilyKind::OddSingletons), 8).is_some());
    // Singletons from 0 have supremum 1, so the descent must fail.
    assert!(verify_no_supremum(&Family::new(FamilyKind::Singletons), 6).is_none());
    // Descending chain co{0..n}: only 0 lies below every member.
    let desc = Family::new(FamilyKind::Prefixes).complemented();
    assert_eq!(desc.infimum(), Some(Algebra::FiniteCofinite.zero()));
}
