//! Finite windows of chain complexes of graded free modules.

use rayon::prelude::*;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::free::{FreeModule, ModuleMap};
use crate::hilbert::HilbertFunction;

/// Modules `F_lo ..= F_hi` with differentials `d_i : F_i -> F_{i-1}` for
/// `lo < i <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    lo: i64,
    modules: Vec<FreeModule>,
    maps: Vec<ModuleMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DdCheck {
    pub ok: bool,
    /// Smallest `i` with `d_{i-1} ∘ d_i != 0`.
    pub first_failure: Option<i64>,
}

impl Complex {
    pub fn new(lo: i64, modules: Vec<FreeModule>, maps: Vec<ModuleMap>) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::Shape("a complex needs at least one module".into()));
        }
        if maps.len() + 1 != modules.len() {
            return Err(Error::Shape(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.source() != &modules[k + 1] || m.target() != &modules[k] {
                return Err(Error::Shape(format!(
                    "differential at index {} does not match its modules",
                    lo + k as i64 + 1
                )));
            }
        }
        Ok(Complex { lo, modules, maps })
    }

    /// Builds from differentials `d_{lo+1}, …, d_hi`; modules are read off the maps.
    pub fn from_maps(lo: i64, maps: Vec<ModuleMap>) -> Result<Self> {
        let first = maps
            .first()
            .ok_or_else(|| Error::Shape("no differentials given".into()))?;
        let mut modules = vec![first.target().clone()];
        modules.extend(maps.iter().map(|m| m.source().clone()));
        Self::new(lo, modules, maps)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn module(&self, i: i64) -> Option<&FreeModule> {
        if i < self.lo {
            return None;
        }
        self.modules.get((i - self.lo) as usize)
    }

    /// `d_i : F_i -> F_{i-1}`.
    pub fn differential(&self, i: i64) -> Option<&ModuleMap> {
        if i <= self.lo {
            return None;
        }
        self.maps.get((i - self.lo - 1) as usize)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }

    pub fn verify_dd_zero(&self, alg: &GradedAlgebra) -> Result<DdCheck> {
        for i in (self.lo + 2)..=self.hi() {
            let d_i = self.differential(i).unwrap();
            let d_prev = self.differential(i - 1).unwrap();
            if !d_prev.compose(alg, d_i)?.is_zero() {
                return Ok(DdCheck {
                    ok: false,
                    first_failure: Some(i),
                });
            }
        }
        Ok(DdCheck {
            ok: true,
            first_failure: None,
        })
    }

    /// Degree-wise homology at an interior index.
    pub fn homology(&self, alg: &GradedAlgebra, i: i64) -> Result<HilbertFunction> {
        if i <= self.lo || i >= self.hi() {
            return Err(Error::WindowBoundary(i));
        }
        let out = self.differential(i).unwrap();
        let inc = self.differential(i + 1).unwrap();
        Ok(homology_between(alg, out, inc))
    }

    /// `dim_k Im d_i`.
    pub fn image_dim(&self, alg: &GradedAlgebra, i: i64) -> Option<usize> {
        self.differential(i).map(|d| d.image_dim(alg))
    }

    /// `Hom(-, R)` of the complex, reindexed so that it is again a chain
    /// complex: position `j` holds `F_{-j-1}^*` and the differential leaving
    /// position `j` is `(d_{-j})^*`.
    pub fn dualize(&self) -> Complex {
        let lo = -self.hi() - 1;
        let modules = self.modules.iter().rev().map(FreeModule::dual).collect();
        let maps = self.maps.iter().rev().map(ModuleMap::dual_map).collect();
        Complex { lo, modules, maps }
    }

    /// Checks `Σ_i (-1)^i dim (F_i)_d = presented(d)` for a resolution window.
    pub fn euler_check(&self, alg: &GradedAlgebra, presented: &HilbertFunction, d: i64) -> Result<bool> {
        let base = self.modules[0].min_twist().unwrap_or(i64::MAX);
        let span = self.hi() - self.lo;
        if self.modules[0].rank() > 0 && d > base.saturating_add(span) {
            return Err(Error::WindowTooShort(format!(
                "degree {d} needs modules beyond index {}",
                self.hi()
            )));
        }
        let mut sum: i64 = 0;
        for (k, f) in self.modules.iter().enumerate() {
            let i = self.lo + k as i64;
            let n = f.piece_dim(alg, d) as i64;
            sum += if i.rem_euclid(2) == 0 { n } else { -n };
        }
        Ok(sum == presented.get(d) as i64)
    }
}

/// Homology of `F --out--> ·` against `· --inc--> F` at the shared module `F`.
/// Either map may be absent, in which case it contributes nothing.
pub fn homology_between(alg: &GradedAlgebra, out: &ModuleMap, inc: &ModuleMap) -> HilbertFunction {
    debug_assert_eq!(out.source(), inc.target());
    homology_at(alg, out.source(), Some(out), Some(inc))
}

pub(crate) fn homology_at(
    alg: &GradedAlgebra,
    module: &FreeModule,
    out: Option<&ModuleMap>,
    inc: Option<&ModuleMap>,
) -> HilbertFunction {
    let Some((lo, hi)) = module.degree_range(alg) else {
        return HilbertFunction::new();
    };
    let dims: Vec<(i64, usize)> = (lo..=hi)
        .into_par_iter()
        .map(|d| {
            let dim = module.piece_dim(alg, d);
            if dim == 0 {
                return (d, 0);
            }
            let ker = dim - out.map_or(0, |m| m.rank_in_degree(alg, d));
            let im = inc.map_or(0, |m| m.rank_in_degree(alg, d));
            debug_assert!(im <= ker, "not a complex in degree {d}");
            (d, ker - im)
        })
        .collect();
    HilbertFunction::from_pairs(dims)
}
