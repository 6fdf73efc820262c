use num_bigint::BigInt;
use num_traits::ToPrimitive;

use ncspectra::groups::{construct, GroupFamilySpec};
use ncspectra::integral_families::{
    catalog_shape, certify_integral, integral_graph_instance, merged_sequence, scan_squares, IntegralCase,
};
use ncspectra::ncgraph::multipartite_shape;

#[test]
fn no_missing_terms_below_ten_million() {
    let limit = 10_000_000u64;
    let seq: Vec<u64> = merged_sequence(20).iter().filter_map(|n| n.to_u64()).filter(|&n| n <= limit).collect();
    assert_eq!(scan_squares(limit), seq);
}

#[test]
fn catalog_shapes_match_measured() {
    let specs = [
        GroupFamilySpec::V { n: 3 },
        GroupFamilySpec::SemiDihedral { n: 3 },
        GroupFamilySpec::SemiDihedral { n: 4 },
        GroupFamilySpec::M { r: 5, s: 3 },
        GroupFamilySpec::M { r: 6, s: 2 },
        GroupFamilySpec::Dihedral { m: 9 },
        GroupFamilySpec::Dihedral { m: 10 },
        GroupFamilySpec::Quaternion { m: 5 },
        GroupFamilySpec::U { n: 4 },
    ];
    for spec in specs {
        let measured = multipartite_shape(&construct(&spec).unwrap()).shape().cloned();
        assert_eq!(catalog_shape(&spec), measured, "{spec}");
    }
}

#[test]
fn named_groups_have_the_emitted_shapes() {
    // the group named by a case, when small, must have exactly the emitted graph
    for index in 2..=5 {
        for case in IntegralCase::all() {
            let n = merged_sequence(index).pop().unwrap();
            let (Ok(shape), Some(spec)) = (integral_graph_instance(index, case), case.group(&n)) else { continue };
            if spec.predicted_order() > 4096 {
                continue;
            }
            let measured = multipartite_shape(&construct(&spec).unwrap()).shape().cloned();
            assert_eq!(measured.as_ref(), Some(&shape), "{case} at index {index}: {spec}");
        }
    }
}

#[test]
fn sd40_is_not_integral() {
    let sd40 = multipartite_shape(&construct(&GroupFamilySpec::SemiDihedral { n: 5 }).unwrap()).shape().cloned().unwrap();
    assert!(!certify_integral(&sd40).integral);
}

#[test]
fn halved_terms_for_v8m() {
    let shape = integral_graph_instance(5, IntegralCase::A).unwrap();
    // n_5 = 442, m = 221
    assert_eq!(shape.to_string(), "K_{1.882, 442.2}");
    let cert = certify_integral(&shape);
    assert!(cert.integral);
    assert!(cert.roots.iter().any(|(r, _)| *r == BigInt::from(441 + 987)));
}
