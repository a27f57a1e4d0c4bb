//! Small rings and matrices shared by the unit tests.

use crate::algebra::{AlgebraElement, AlgebraSpec, GradedAlgebra};
use crate::counterexample::{build_ring, Config};
use crate::free::{parse_matrix, FreeModule, ModuleMap};
use crate::resolution::Presentation;
use crate::scalar::Scalar;

pub fn ring(vars: &[&str], rels: &[&str]) -> GradedAlgebra {
    GradedAlgebra::build(&AlgebraSpec::parse(vars, rels, Scalar::from_int(2), 6).unwrap()).unwrap()
}

pub fn paper() -> GradedAlgebra {
    build_ring(&Config::default()).unwrap()
}

/// `k[x]/(x²)`.
pub fn dual_numbers() -> GradedAlgebra {
    ring(&["x"], &["x*x"])
}

pub fn matrix(alg: &GradedAlgebra, rows: &[&[&str]]) -> Vec<Vec<AlgebraElement>> {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    parse_matrix(alg, &rows).unwrap()
}

pub fn map(alg: &GradedAlgebra, target: &[i64], rows: &[&[&str]]) -> ModuleMap {
    ModuleMap::with_inferred_source(FreeModule::new(target.to_vec()), matrix(alg, rows)).unwrap()
}

pub fn coker(alg: &GradedAlgebra, target: &[i64], rows: &[&[&str]]) -> Presentation {
    Presentation::new(alg, map(alg, target, rows))
}
