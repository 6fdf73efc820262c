use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ncspectra::compare::frobenius_condition;
use ncspectra::groups::GroupFamilySpec;
use ncspectra::integral_families::{branch_sequence, certify_integral, merged_sequence, square_witnesses, SquareWitness};
use ncspectra::ncgraph::MultipartiteShape;
use ncspectra::spectra::{
    compare_energies, energy, multipartite_adjacency_spectrum, multipartite_laplacian_spectrum, SpectrumMultiset, Verdict,
};

fn shape() -> impl Strategy<Value = MultipartiteShape> {
    prop::collection::vec(1u128..40, 2..9).prop_map(|s| MultipartiteShape::from_part_sizes(&s).unwrap())
}

fn rat(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn merged_terms_are_square_and_increasing(count in 2usize..45) {
        let seq = merged_sequence(count);
        prop_assert!(seq.windows(2).all(|w| w[0] < w[1]));
        for n in &seq {
            prop_assert!(matches!(square_witnesses(n), SquareWitness::Square(..)));
        }
    }

    #[test]
    fn merged_interleaves_branches(k in 1usize..12) {
        let merged = merged_sequence(3 * k);
        for b in 0..3 {
            let branch = branch_sequence(b as u8 + 1, k).unwrap();
            for (i, n) in branch.iter().enumerate() {
                prop_assert_eq!(&merged[3 * i + b], n);
            }
        }
    }

    #[test]
    fn spectra_power_sums(s in shape()) {
        let n = s.total_vertices();
        let two_e = 2 * s.edge_count();
        let adj = multipartite_adjacency_spectrum(&s).unwrap();
        prop_assert_eq!(adj.total(), n);
        prop_assert_eq!(adj.power_sum(1).is_exactly(&rat(0)), Some(true));
        let sq = adj.power_sum(2).approx();
        prop_assert!((sq - two_e as f64).abs() < 1e-6 * (1.0 + sq));
        let lap = multipartite_laplacian_spectrum(&s).unwrap();
        prop_assert_eq!(lap.total(), n);
        prop_assert_eq!(lap.power_sum(1).is_exactly(&rat(two_e)), Some(true));
    }

    #[test]
    fn spectrum_json_round_trip(s in shape()) {
        let adj = multipartite_adjacency_spectrum(&s).unwrap();
        let back = SpectrumMultiset::from_json(&adj.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), adj.to_json());
    }

    #[test]
    fn equal_parts_are_integral(parts in 2u128..30, size in 1u128..1_000_000_000) {
        let s = MultipartiteShape::new([(size, parts)]).unwrap();
        let cert = certify_integral(&s);
        prop_assert!(cert.integral);
        let want = vec![(-BigInt::from(size), parts - 1), (BigInt::from(0), parts * (size - 1)), (BigInt::from((parts - 1) * size), 1)];
        let mut want: Vec<_> = want.into_iter().filter(|(_, m)| *m > 0).collect();
        want.sort();
        prop_assert_eq!(cert.roots, want);
    }

    #[test]
    fn verdict_is_antisymmetric(s in shape(), t in shape()) {
        let a = energy(&multipartite_adjacency_spectrum(&s).unwrap()).unwrap();
        let b = energy(&multipartite_adjacency_spectrum(&t).unwrap()).unwrap();
        prop_assert_eq!(compare_energies(&a, &a), Verdict::Equal);
        let flip = match compare_energies(&a, &b) {
            Verdict::Less => Verdict::Greater,
            Verdict::Greater => Verdict::Less,
            v => v,
        };
        prop_assert_eq!(compare_energies(&b, &a), flip);
    }

    #[test]
    fn frobenius_condition_trichotomy(p in 2u64..10_000, q in 2u64..200) {
        let c = frobenius_condition(p, q);
        let eq = q * q == q + p + 1;
        prop_assert_eq!(u8::from(c.q2_lt) + u8::from(c.q2_gt) + u8::from(eq), 1);
        prop_assert_eq!(c.q_divides, (p - 1) % q == 0);
    }

    #[test]
    fn spec_args_round_trip(m in 2u64..500, r in 3u64..50, s in 1u64..20) {
        for spec in [GroupFamilySpec::Dihedral { m }, GroupFamilySpec::Quaternion { m }, GroupFamilySpec::M { r, s }] {
            let args = spec.to_args();
            let mut words = args.split_whitespace();
            let tag = words.next().unwrap();
            let params: Vec<&str> = words.collect();
            prop_assert_eq!(GroupFamilySpec::parse(tag, &params).unwrap(), spec);
        }
    }
}
