use proptest::prelude::*;

use freerep::cyclotomic::Cyclotomic;
use freerep::quaternion::Quaternion;
use freerep_cli::spec::{parse_group_spec, GroupSpec};
use num_rational::BigRational;

fn component() -> impl Strategy<Value = Cyclotomic> {
    let rational = (-9i64..10, 1i64..6).prop_map(|(a, b)| BigRational::new(a.into(), b.into()));
    prop_oneof![
        rational.clone().prop_map(|q| Cyclotomic::from_rational(1, &q)),
        rational.clone().prop_map(|q| &Cyclotomic::from_rational(1, &q) * &Cyclotomic::sqrt2()),
        (rational.clone(), rational).prop_map(|(a, b)| &Cyclotomic::from_rational(1, &a)
            + &(&Cyclotomic::from_rational(1, &b) * &Cyclotomic::sqrt5())),
        (1u32..13, -20i64..20).prop_map(|(n, k)| Cyclotomic::zeta_pow(n, k)),
    ]
}

fn quaternion() -> impl Strategy<Value = Quaternion<Cyclotomic>> {
    (component(), component(), component(), component()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn spec() -> impl Strategy<Value = GroupSpec> {
    let leaf = prop_oneof![
        (1usize..500).prop_map(GroupSpec::Cyclic),
        (1usize..500).prop_map(GroupSpec::Dihedral),
        (3u32..10).prop_map(|k| GroupSpec::Quaternion(1 << k)),
        prop::sample::select(vec![3u64, 5, 7, 11, 13]).prop_map(GroupSpec::Sl2),
        Just(GroupSpec::BinaryTetrahedral),
        Just(GroupSpec::BinaryOctahedral),
        Just(GroupSpec::BinaryIcosahedral),
        (2usize..50).prop_map(GroupSpec::BinaryDihedral),
        (1usize..100, 1usize..100, -100i64..100).prop_map(|(m, n, r)| GroupSpec::Semidirect { m, n, r }),
        prop::collection::vec(quaternion(), 1..3).prop_map(GroupSpec::Quat),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b)))
    })
}

/// Structural equality, except that quaternion coordinates are compared as
/// field elements: printing forgets the conductor a value was stored at.
fn same(a: &GroupSpec, b: &GroupSpec) -> bool {
    match (a, b) {
        (GroupSpec::Quat(x), GroupSpec::Quat(y)) => {
            x.len() == y.len()
                && x.iter().zip(y).all(|(p, q)| {
                    [(&p.w, &q.w), (&p.x, &q.x), (&p.y, &q.y), (&p.z, &q.z)].iter().all(|(u, v)| (*u - *v).is_zero())
                })
        }
        (GroupSpec::Product(a1, a2), GroupSpec::Product(b1, b2)) => same(a1, b1) && same(a2, b2),
        _ => a == b,
    }
}

proptest! {
    #[test]
    fn parse_inverts_print(s in spec()) {
        let printed = s.to_string();
        let parsed = parse_group_spec(&printed).unwrap();
        prop_assert!(same(&parsed, &s), "{} parsed as {:?}", printed, parsed);
        prop_assert_eq!(parsed.to_string(), printed.clone());
        prop_assert!(same(&parse_group_spec(&printed.to_lowercase()).unwrap(), &s));
    }

    #[test]
    fn parser_never_panics(text in "[a-zA-Z0-9(),/*^+ -]{0,24}") {
        let _ = parse_group_spec(&text);
    }
}
