//! Transposes, duals, Ext against the ring, and the `TR_i` conditions.
//!
//! `M` satisfies `TR_i` when `Ext^i(M, R) = 0` for `i >= 1`, and when
//! `Ext^{-i}(Tr M, R) = 0` for `i <= -1`.

use crate::algebra::GradedAlgebra;
use crate::complex::homology_at;
use crate::error::{Error, Result};
use crate::hilbert::HilbertFunction;
use crate::resolution::{minimal_resolution, minimize, syzygy, Presentation};

/// `Tr M = Coker(φ*)` for the minimized presentation `φ`.
pub fn transpose(alg: &GradedAlgebra, p: &Presentation) -> Result<Presentation> {
    let p = minimize(alg, p)?;
    Ok(Presentation::new(alg, p.map().dual_map()))
}

/// `M* = Hom(M, R) = Ker(φ*)`, presented by the syzygies of its generators.
pub fn dual_module(alg: &GradedAlgebra, p: &Presentation) -> Result<Presentation> {
    let p = minimize(alg, p)?;
    let gens = syzygy(alg, &p.map().dual_map())?;
    let rels = syzygy(alg, &gens)?;
    Ok(Presentation::new(alg, rels))
}

/// `Ext^i(M, R)` for `i` in `from..=to`, from one minimal resolution of
/// length `to + 1`.
pub fn ext_range(alg: &GradedAlgebra, p: &Presentation, from: usize, to: usize) -> Result<Vec<HilbertFunction>> {
    if from > to {
        return Ok(Vec::new());
    }
    let res = minimal_resolution(alg, p, to + 1)?;
    let duals: Vec<_> = (1..=to + 1).map(|i| res.differential(i).dual_map()).collect();
    Ok((from..=to)
        .map(|i| {
            let module = res.module(i).dual();
            // cohomology at F_i^*: leaves along d_{i+1}^*, arrives along d_i^*
            let out = &duals[i];
            let inc = if i >= 1 { Some(&duals[i - 1]) } else { None };
            homology_at(alg, &module, Some(out), inc)
        })
        .collect())
}

pub fn ext(alg: &GradedAlgebra, p: &Presentation, i: usize) -> Result<HilbertFunction> {
    Ok(ext_range(alg, p, i, i)?.pop().unwrap())
}

pub fn tr_condition(alg: &GradedAlgebra, p: &Presentation, i: i64) -> Result<bool> {
    match i {
        0 => Err(Error::TrIndexZero),
        i if i > 0 => Ok(ext(alg, p, i as usize)?.is_zero()),
        i => Ok(ext(alg, &transpose(alg, p)?, (-i) as usize)?.is_zero()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TrRecord {
    pub i: i64,
    pub vanishes: bool,
    pub total_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TrReport {
    pub module: String,
    pub records: Vec<TrRecord>,
    /// Present when the window contains both -1 and -2.
    pub reflexive: Option<bool>,
    pub totally_reflexive_in_window: bool,
}

impl TrReport {
    pub fn verdict(&self, i: i64) -> Option<bool> {
        self.records.iter().find(|r| r.i == i).map(|r| r.vanishes)
    }

    /// Indices in the window where `TR_i` holds.
    pub fn satisfied(&self) -> Vec<i64> {
        self.records.iter().filter(|r| r.vanishes).map(|r| r.i).collect()
    }
}

/// `TR_i` for every nonzero `i` in `lo..=hi`. The transpose is computed once.
pub fn tr_report(alg: &GradedAlgebra, name: &str, p: &Presentation, lo: i64, hi: i64) -> Result<TrReport> {
    let mut records = Vec::new();
    if lo <= -1 {
        let tr = transpose(alg, p)?;
        let exts = ext_range(alg, &tr, 1, (-lo) as usize)?;
        for i in lo..=(-1).min(hi) {
            let h = &exts[(-i - 1) as usize];
            records.push(TrRecord {
                i,
                vanishes: h.is_zero(),
                total_dim: h.total(),
            });
        }
    }
    if hi >= 1 {
        let start = lo.max(1) as usize;
        let exts = ext_range(alg, p, start, hi as usize)?;
        for (k, h) in exts.iter().enumerate() {
            records.push(TrRecord {
                i: (start + k) as i64,
                vanishes: h.is_zero(),
                total_dim: h.total(),
            });
        }
    }
    let find = |i: i64| records.iter().find(|r| r.i == i).map(|r| r.vanishes);
    let reflexive = match (find(-1), find(-2)) {
        (Some(a), Some(b)) => Some(a && b),
        _ => None,
    };
    let totally_reflexive_in_window = records.iter().all(|r| r.vanishes);
    Ok(TrReport {
        module: name.to_string(),
        records,
        reflexive,
        totally_reflexive_in_window,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Reflexivity {
    pub reflexive: bool,
    /// `Ext^1(Tr M, R)`, the kernel of `M -> M**`.
    pub ext1_of_transpose: HilbertFunction,
    /// `Ext^2(Tr M, R)`, the cokernel of `M -> M**`.
    pub ext2_of_transpose: HilbertFunction,
}

pub fn is_reflexive(alg: &GradedAlgebra, p: &Presentation) -> Result<Reflexivity> {
    let tr = transpose(alg, p)?;
    let mut e = ext_range(alg, &tr, 1, 2)?;
    let ext2 = e.pop().unwrap();
    let ext1 = e.pop().unwrap();
    Ok(Reflexivity {
        reflexive: ext1.is_zero() && ext2.is_zero(),
        ext1_of_transpose: ext1,
        ext2_of_transpose: ext2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ShiftCheck {
    pub i: usize,
    pub dual_ext_total: usize,
    pub transpose_ext_total: usize,
    pub holds: bool,
}

/// Compares `dim Ext^i(M*, R)` with `dim Ext^{i+2}(Tr M, R)` for `i` in `1..=max_i`.
pub fn dual_ext_shift_check(alg: &GradedAlgebra, p: &Presentation, max_i: usize) -> Result<Vec<ShiftCheck>> {
    if max_i == 0 {
        return Ok(Vec::new());
    }
    let dual = dual_module(alg, p)?;
    let tr = transpose(alg, p)?;
    let lhs = ext_range(alg, &dual, 1, max_i)?;
    let rhs = ext_range(alg, &tr, 3, max_i + 2)?;
    Ok(lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .map(|(k, (a, b))| ShiftCheck {
            i: k + 1,
            dual_ext_total: a.total(),
            transpose_ext_total: b.total(),
            holds: a.total() == b.total(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexample::module_m;
    use crate::free::FreeModule;
    use crate::resolution::residue_field;
    use crate::testing::*;

    #[test]
    fn free_modules_have_zero_transpose() {
        let r = paper();
        let free = Presentation::free(&r, FreeModule::new(vec![0, 1]));
        assert!(transpose(&r, &free).unwrap().hilbert().is_zero());
        let e = ext_range(&r, &free, 0, 3).unwrap();
        assert_eq!(e[0], HilbertFunction::from_pairs([(-1, 1), (0, 5), (1, 7), (2, 3)]));
        assert!(e[1..].iter().all(HilbertFunction::is_zero));
    }

    #[test]
    fn residue_field_over_dual_numbers() {
        let r = dual_numbers();
        let k = residue_field(&r).unwrap();
        assert_eq!(transpose(&r, &k).unwrap().hilbert(), &HilbertFunction::from_pairs([(-1, 1)]));
        let e = ext_range(&r, &k, 0, 4).unwrap();
        assert_eq!(e[0], HilbertFunction::from_pairs([(1, 1)]));
        assert!(e[1..].iter().all(HilbertFunction::is_zero));
        let refl = is_reflexive(&r, &k).unwrap();
        assert!(refl.reflexive);
    }

    #[test]
    fn tr_index_zero_is_an_error() {
        let r = paper();
        let m = module_m(&r, 1).unwrap();
        assert!(matches!(tr_condition(&r, &m, 0), Err(Error::TrIndexZero)));
    }

    #[test]
    fn m2_conditions() {
        let r = paper();
        let m = module_m(&r, 2).unwrap();
        assert!(tr_condition(&r, &m, 1).unwrap());
        assert!(!tr_condition(&r, &m, 2).unwrap());
        assert!(tr_condition(&r, &m, -7).unwrap());
        let report = tr_report(&r, "M_2", &m, -5, 5).unwrap();
        assert_eq!(report.satisfied(), vec![-5, -4, -3, -2, -1, 1]);
        assert_eq!(report.verdict(0), None);
        assert_eq!(report.reflexive, Some(true));
        assert!(!report.totally_reflexive_in_window);
        for i in [-3i64, 1, 3] {
            assert_eq!(report.verdict(i), Some(tr_condition(&r, &m, i).unwrap()));
        }
    }

    #[test]
    fn transpose_of_m2_is_the_mirror() {
        let r = paper();
        let tr = transpose(&r, &module_m(&r, 2).unwrap()).unwrap();
        assert_eq!(tr.hilbert(), &HilbertFunction::from_pairs([(-2, 2), (-1, 6)]));
        let report = tr_report(&r, "Tr M_2", &tr, -5, 5).unwrap();
        for rec in &report.records {
            assert_eq!(rec.vanishes, rec.i > -2, "i = {}", rec.i);
        }
    }

    #[test]
    fn reflexivity_of_the_family() {
        let r = paper();
        let m1 = module_m(&r, 1).unwrap();
        assert!(is_reflexive(&r, &m1).unwrap().reflexive);
        let tr = transpose(&r, &m1).unwrap();
        let refl = is_reflexive(&r, &tr).unwrap();
        assert!(!refl.reflexive);
        assert_eq!(refl.ext1_of_transpose, HilbertFunction::from_pairs([(-1, 1)]));
        assert_eq!(refl.ext2_of_transpose, HilbertFunction::from_pairs([(-1, 1)]));
        assert!(!is_reflexive(&r, &residue_field(&r).unwrap()).unwrap().reflexive);
    }

    #[test]
    fn dual_of_m1() {
        let r = paper();
        let d = dual_module(&r, &module_m(&r, 1).unwrap()).unwrap();
        assert_eq!(d.hilbert(), &HilbertFunction::from_pairs([(0, 2), (1, 6)]));
    }

    #[test]
    fn ext_shift_against_transpose() {
        let r = paper();
        let cases = [
            Presentation::free(&r, FreeModule::uniform(0, 1)),
            residue_field(&r).unwrap(),
            module_m(&r, 1).unwrap(),
        ];
        for p in &cases {
            let checks = dual_ext_shift_check(&r, p, 3).unwrap();
            assert_eq!(checks.len(), 3);
            assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        }
        assert!(dual_ext_shift_check(&r, &cases[0], 0).unwrap().is_empty());
    }
}
