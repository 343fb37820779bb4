mod support;

use proptest::prelude::*;
use sortable_core::cone::semigroup_decompose;
use sortable_core::divisor::{a_invariant, a_invariant_bound, class_group, classify_facets, conjecture_check, divisor_report, gorenstein_test, t_radical_test};
use sortable_core::{ConeDescription, ConjectureVerdict, DecomposeMode, Face, IntervalComplexSpec, LatticePoint};
use support::oracles::{brute_interior_level, cone_points_at};
use support::specs::{partition_spec, unit_spec};

fn raw_forms(cone: &ConeDescription) -> Vec<Vec<i64>> {
    cone.facet_forms.iter().map(|f| f.0.clone()).collect()
}

fn sums_to(faces: &[Face], p: &[i64]) -> bool {
    let n = p.len() - 1;
    let mut acc = vec![0i64; n + 1];
    for f in faces {
        for v in f.vertices() {
            acc[v - 1] += 1;
        }
        acc[n] += 1;
    }
    acc == p
}

fn check_normality(spec: &IntervalComplexSpec, max_level: i64) -> Result<(), TestCaseError> {
    let gamma = spec.build().independence_complex();
    let cone = ConeDescription::of_complex(&gamma).unwrap();
    let forms = raw_forms(&cone);
    for k in 1..=max_level {
        for p in cone_points_at(&forms, gamma.n(), k) {
            let got = semigroup_decompose(&gamma, &LatticePoint(p.clone()), DecomposeMode::Exhaustive).unwrap();
            let Some(faces) = got else {
                return Err(TestCaseError::fail(format!("{spec}: {p:?} in the cone but not in the semigroup")));
            };
            prop_assert!(sums_to(&faces, &p));
            prop_assert!(faces.iter().all(|&f| gamma.contains(f)));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn normal_up_to_level_three_edges(spec in unit_spec(2..=7, 4, 2)) {
        check_normality(&spec, 3)?;
    }

    #[test]
    fn normal_up_to_level_three_triangles(spec in unit_spec(3..=7, 3, 3)) {
        check_normality(&spec, 3)?;
    }

    #[test]
    fn partition_greedy_peels_every_point(spec in partition_spec(2..=6, 1..=1), r in 1usize..=2) {
        // lift the ranks so every block shares r
        let parts = spec.parts().iter().map(|p| sortable_core::IntervalPart::new(p.lo, p.hi, r)).collect();
        let spec = IntervalComplexSpec::new(spec.n(), parts).unwrap();
        let gamma = spec.build().independence_complex();
        let cone = ConeDescription::of_complex(&gamma).unwrap();
        let forms = raw_forms(&cone);
        for k in 1..=4 {
            let inside = cone_points_at(&forms, gamma.n(), k);
            for p in &inside {
                let faces = semigroup_decompose(&gamma, &LatticePoint(p.clone()), DecomposeMode::PartitionGreedy(&spec))
                    .unwrap()
                    .expect("cone point peels");
                prop_assert!(sums_to(&faces, p));
                prop_assert!(faces.iter().all(|&f| gamma.contains(f)));
            }
            // and nothing outside the cone peels
            let all = cone_points_at(&[], gamma.n(), k);
            for p in all.iter().filter(|p| !inside.contains(p)) {
                let got = semigroup_decompose(&gamma, &LatticePoint(p.clone()), DecomposeMode::PartitionGreedy(&spec)).unwrap();
                prop_assert!(got.is_none());
            }
        }
    }

    #[test]
    fn templates_always_present(spec in unit_spec(3..=9, 4, 3)) {
        let (verdict, cls) = conjecture_check(&spec.build()).unwrap();
        prop_assert!(cls.missing.is_empty());
        prop_assert!(cls.p_forms.len() == cls.n);
        prop_assert_eq!(cls.l_forms.len(), cls.cliques.len());
        prop_assert_eq!(matches!(verdict, ConjectureVerdict::Confirmed), cls.unexpected.is_empty());
    }

    #[test]
    fn templates_always_present_tetrahedra(spec in unit_spec(4..=9, 3, 4)) {
        let (_, cls) = conjecture_check(&spec.build()).unwrap();
        prop_assert!(cls.missing.is_empty());
    }

    #[test]
    fn partition_case_has_only_templates(spec in partition_spec(3..=9, 2..=2)) {
        let delta = spec.build();
        prop_assume!(delta.dim().is_some_and(|d| d >= 2));
        let (verdict, cls) = conjecture_check(&delta).unwrap();
        prop_assert_eq!(verdict, ConjectureVerdict::Confirmed);
        prop_assert!(cls.unexpected.is_empty());
    }

    #[test]
    fn edge_gorenstein_iff_equal_cliques(spec in unit_spec(2..=8, 4, 2)) {
        let delta = spec.build();
        let report = divisor_report(&delta).unwrap();
        let cls = &report.classification;
        let sizes: Vec<usize> = cls.cliques.iter().map(|c| c.len()).collect();
        let equal = sizes.windows(2).all(|w| w[0] == w[1]);
        prop_assert_eq!(report.gorenstein.is_gorenstein(), equal);
        let w = cls.clique_number() as i64;
        prop_assert_eq!(report.a_invariant.value, -(w + 1));
        if equal {
            let mut ones = vec![1; cls.n + 1];
            ones[cls.n] = w + 1;
            prop_assert_eq!(&report.a_invariant.witness, &LatticePoint(ones));
        }
        prop_assert!(report.t_radical.radical);
        prop_assert!(report.t_radical.certified.is_some());
    }

    #[test]
    fn a_invariant_against_bound(spec in unit_spec(3..=8, 3, 3)) {
        let delta = spec.build();
        let cone = ConeDescription::of_complex(&delta.independence_complex()).unwrap();
        let cls = classify_facets(&delta, &cone.facet_forms).unwrap();
        let a = a_invariant(&cone).unwrap();
        let bound = a_invariant_bound(cls.clique_number(), cls.d);
        prop_assert!(-a.value >= bound);
        if cls.unexpected.is_empty() {
            prop_assert_eq!(-a.value, bound);
        }
        let (level, _) = brute_interior_level(&raw_forms(&cone), cls.n, -a.value).expect("interior point exists");
        prop_assert_eq!(level, -a.value);
        prop_assert!(cone.contains_strictly(&a.witness).unwrap());
    }

    #[test]
    fn class_group_rank(spec in unit_spec(2..=8, 4, 3)) {
        let delta = spec.build();
        let cone = ConeDescription::of_complex(&delta.independence_complex()).unwrap();
        let cls = classify_facets(&delta, &cone.facet_forms).unwrap();
        let cg = class_group(&cls).unwrap();
        let t = cls.t_forms();
        if t.iter().any(|f| f.t_coeff() == 1) {
            prop_assert_eq!(cg.free_rank, t.len() - 1);
            prop_assert_eq!(cg.torsion, 1);
        }
        let g = gorenstein_test(&cls);
        prop_assert!(!g.conditional || !cls.unexpected.is_empty());
        let rad = t_radical_test(&delta, &cls).unwrap();
        prop_assert!(!rad.radical);
    }
}
