use proptest::prelude::*;
use reflex_core::counterexample::{build_complex, build_ring, module_m, Config, verify_alpha_genericity};
use reflex_core::duality::{dual_ext_shift_check, ext_range, is_reflexive, tr_condition, transpose};
use reflex_core::free::parse_matrix;
use reflex_core::resolution::{minimal_resolution, residue_field};
use reflex_core::{AlgebraSpec, FreeModule, GradedAlgebra, HilbertFunction, ModuleMap, Presentation, Scalar};

fn paper() -> GradedAlgebra {
    build_ring(&Config::default()).unwrap()
}

fn dual_numbers() -> GradedAlgebra {
    GradedAlgebra::build(&AlgebraSpec::parse(&["x"], &["x*x"], Scalar::from_int(2), 4).unwrap()).unwrap()
}

fn coker(alg: &GradedAlgebra, target: Vec<i64>, rows: &[Vec<String>]) -> Presentation {
    let entries = parse_matrix(alg, rows).unwrap();
    Presentation::new(alg, ModuleMap::with_inferred_source(FreeModule::new(target), entries).unwrap())
}

fn totals(hs: &[HilbertFunction]) -> Vec<usize> {
    hs.iter().map(HilbertFunction::total).collect()
}

fn check_resolution(alg: &GradedAlgebra, p: &Presentation, length: usize) {
    let res = minimal_resolution(alg, p, length).unwrap();
    assert!(res.complex.verify_dd_zero(alg).unwrap().ok);
    for i in 1..length as i64 {
        assert!(res.complex.homology(alg, i).unwrap().is_zero(), "H_{i} of a resolution");
    }
    let base = res.module(0).min_twist().unwrap_or(0);
    for d in (base - 1)..=(base + length as i64) {
        assert!(res.complex.euler_check(alg, p.hilbert(), d).unwrap(), "Euler sum in degree {d}");
    }
}

fn linear_form() -> impl Strategy<Value = String> {
    prop::collection::vec(-2i64..=2, 4).prop_map(|c| {
        let mut out = String::from("0");
        for (c, v) in c.iter().zip(["V", "X", "Y", "Z"]) {
            if *c != 0 {
                out += &format!(" {} {}*{v}", if *c < 0 { '-' } else { '+' }, c.abs());
            }
        }
        out
    })
}

fn linear_matrix() -> impl Strategy<Value = Vec<Vec<String>>> {
    (1usize..=2, 1usize..=3).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(linear_form(), c), r))
}

#[test]
fn resolutions_of_named_modules() {
    let r = paper();
    for s in 1..=3 {
        check_resolution(&r, &module_m(&r, s).unwrap(), 4);
    }
    check_resolution(&r, &residue_field(&r).unwrap(), 4);
    check_resolution(&r, &Presentation::free(&r, FreeModule::new(vec![0, 2])), 2);
    let dn = dual_numbers();
    check_resolution(&dn, &residue_field(&dn).unwrap(), 5);
}

#[test]
fn shift_identity_on_the_listed_modules() {
    let r = paper();
    let dn = dual_numbers();
    let cases: Vec<(&str, &GradedAlgebra, Presentation)> = vec![
        ("M_1", &r, module_m(&r, 1).unwrap()),
        ("M_2", &r, module_m(&r, 2).unwrap()),
        ("free", &r, Presentation::free(&r, FreeModule::new(vec![0, 1]))),
        ("k", &dn, residue_field(&dn).unwrap()),
    ];
    for (name, alg, p) in &cases {
        let checks = dual_ext_shift_check(alg, p, 4).unwrap();
        assert_eq!(checks.len(), 4);
        for c in checks {
            assert!(c.holds, "{name}: {c:?}");
        }
    }
}

#[test]
fn double_transpose_keeps_ext() {
    let r = paper();
    let dn = dual_numbers();
    let cases: Vec<(&GradedAlgebra, Presentation)> = vec![
        (&r, module_m(&r, 1).unwrap()),
        (&r, module_m(&r, 2).unwrap()),
        (&r, residue_field(&r).unwrap()),
        (&dn, residue_field(&dn).unwrap()),
    ];
    for (alg, p) in &cases {
        let trtr = transpose(alg, &transpose(alg, p).unwrap()).unwrap();
        assert_eq!(ext_range(alg, p, 1, 4).unwrap(), ext_range(alg, &trtr, 1, 4).unwrap());
    }
}

#[test]
fn tr_conditions_mirror_under_transpose() {
    let r = paper();
    for p in [module_m(&r, 1).unwrap(), module_m(&r, 3).unwrap(), residue_field(&r).unwrap()] {
        let tr = transpose(&r, &p).unwrap();
        for i in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
            assert_eq!(tr_condition(&r, &p, i).unwrap(), tr_condition(&r, &tr, -i).unwrap(), "i = {i}");
        }
    }
}

#[test]
fn presentation_changes_do_not_matter() {
    let r = paper();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let original = module_m(&r, 2).unwrap();
    let variants = [
        // columns swapped
        coker(&r, vec![1, 1], &[s(&["4*X", "V"]), s(&["Z", "Y"])]),
        // rows swapped
        coker(&r, vec![1, 1], &[s(&["Y", "Z"]), s(&["V", "4*X"])]),
        // row 0 += 3 row 1, column 1 scaled by -1/2
        coker(&r, vec![1, 1], &[s(&["V + 3*Y", "-2*X - 3/2*Z"]), s(&["Y", "-1/2*Z"])]),
        // an extra redundant relation
        coker(&r, vec![1, 1], &[s(&["V", "4*X", "V - 8*X"]), s(&["Y", "Z", "Y - 2*Z"])]),
    ];
    let ext0 = ext_range(&r, &original, 1, 4).unwrap();
    let tr0 = ext_range(&r, &transpose(&r, &original).unwrap(), 1, 4).unwrap();
    for v in &variants {
        assert_eq!(v.hilbert(), original.hilbert());
        assert_eq!(ext_range(&r, v, 1, 4).unwrap(), ext0);
        assert_eq!(ext_range(&r, &transpose(&r, v).unwrap(), 1, 4).unwrap(), tr0);
        assert!(is_reflexive(&r, v).unwrap().reflexive);
    }
}

#[test]
fn dual_homology_is_stable_in_the_window() {
    let r = paper();
    let narrow = build_complex(&r, 8, 6).unwrap().dualize();
    let wide = build_complex(&r, 12, 6).unwrap().dualize();
    for i in (narrow.lo() + 1)..narrow.hi() {
        assert_eq!(narrow.homology(&r, i).unwrap(), wide.homology(&r, i).unwrap(), "H_{i}");
    }
}

#[test]
fn verdicts_do_not_depend_on_alpha() {
    let cfg = Config {
        alpha: Scalar::new(-1, 2),
        window: 6,
        s_max: 2,
        ..Config::default()
    };
    let report = verify_alpha_genericity(&cfg).unwrap();
    assert_eq!(report.fingerprints.len(), 4);
    assert!(report.passed);
    let mut seen = Vec::new();
    for a in [2, 3, 5] {
        let r = build_ring(&Config {
            alpha: Scalar::from_int(a),
            ..Config::default()
        })
        .unwrap();
        let m = module_m(&r, 2).unwrap();
        seen.push(totals(&ext_range(&r, &m, 1, 5).unwrap()));
    }
    assert_eq!(seen[0], vec![0, 1, 1, 3, 11]);
    assert!(seen.windows(2).all(|w| w[0] == w[1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_linear_presentations(rows in linear_matrix()) {
        let r = paper();
        let p = coker(&r, vec![0; rows.len()], &rows);
        check_resolution(&r, &p, 3);
        let trtr = transpose(&r, &transpose(&r, &p).unwrap()).unwrap();
        prop_assert_eq!(ext_range(&r, &p, 1, 2).unwrap(), ext_range(&r, &trtr, 1, 2).unwrap());
        for c in dual_ext_shift_check(&r, &p, 2).unwrap() {
            prop_assert!(c.holds, "{:?}", c);
        }
    }
}
