//! Minimal presentations, syzygies, and minimal graded free resolutions.

use std::collections::BTreeSet;

use crate::algebra::{degree_zero_part, AlgebraElement, GradedAlgebra};
use crate::complex::Complex;
use crate::error::Result;
use crate::free::{FreeModule, ModuleMap};
use crate::hilbert::HilbertFunction;
use crate::linalg::Echelon;
use crate::scalar::Scalar;

/// A module given as `Coker(map)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    map: ModuleMap,
    hilbert: HilbertFunction,
}

impl Presentation {
    pub fn new(alg: &GradedAlgebra, map: ModuleMap) -> Self {
        let hilbert = cokernel_hilbert(alg, &map);
        Presentation { map, hilbert }
    }

    /// The free module `F` presented by the zero map.
    pub fn free(alg: &GradedAlgebra, module: FreeModule) -> Self {
        Self::new(alg, ModuleMap::zero(FreeModule::zero(), module))
    }

    pub fn map(&self) -> &ModuleMap {
        &self.map
    }

    pub fn generators(&self) -> &FreeModule {
        self.map.target()
    }

    pub fn hilbert(&self) -> &HilbertFunction {
        &self.hilbert
    }

    pub fn is_zero_module(&self) -> bool {
        self.hilbert.is_zero()
    }

    /// Whether every entry lies in the maximal ideal.
    pub fn has_no_units(&self) -> bool {
        self.map
            .entries()
            .iter()
            .flatten()
            .all(|e| degree_zero_part(e).is_zero())
    }
}

fn cokernel_hilbert(alg: &GradedAlgebra, map: &ModuleMap) -> HilbertFunction {
    let target = map.target();
    let Some((lo, hi)) = target.degree_range(alg) else {
        return HilbertFunction::new();
    };
    HilbertFunction::from_pairs(
        (lo..=hi).map(|d| (d, target.piece_dim(alg, d) - map.rank_in_degree(alg, d))),
    )
}

pub fn module_hilbert(p: &Presentation) -> HilbertFunction {
    p.hilbert.clone()
}

/// Cancels unit entries, then drops relations that are redundant modulo the
/// maximal ideal. The cokernel is unchanged up to isomorphism.
pub fn minimize(alg: &GradedAlgebra, p: &Presentation) -> Result<Presentation> {
    let mut source = p.map.source().twists().to_vec();
    let mut target = p.map.target().twists().to_vec();
    let mut m: Vec<Vec<AlgebraElement>> = p.map.entries().to_vec();

    'scan: loop {
        for j in 0..source.len() {
            for i in 0..target.len() {
                let u = degree_zero_part(&m[i][j]);
                if u.is_zero() {
                    continue;
                }
                // homogeneous with a unit part means the entry is the scalar u
                let u_inv = u.inv();
                let mut next = Vec::with_capacity(target.len() - 1);
                for a in (0..target.len()).filter(|&a| a != i) {
                    let mut row = Vec::with_capacity(source.len() - 1);
                    for b in (0..source.len()).filter(|&b| b != j) {
                        let mut e = m[a][b].clone();
                        if !m[a][j].is_zero() && !m[i][b].is_zero() {
                            let corr = alg.multiply(&m[a][j], &m[i][b])?.scale(&u_inv);
                            e = e.sub(&corr);
                        }
                        row.push(e);
                    }
                    next.push(row);
                }
                m = next;
                source.remove(j);
                target.remove(i);
                continue 'scan;
            }
        }
        break;
    }

    let reduced = ModuleMap::new(FreeModule::new(source), FreeModule::new(target), m)?;
    let keep = minimal_columns(alg, &reduced);
    let map = reduced.select_columns(&keep);
    Ok(Presentation {
        hilbert: p.hilbert.clone(),
        map,
    })
}

/// Indices of columns that minimally generate the image: a column is kept
/// unless it lies in the span of the lower-degree image plus the columns of
/// its own degree already kept.
fn minimal_columns(alg: &GradedAlgebra, f: &ModuleMap) -> Vec<usize> {
    let twists: BTreeSet<i64> = f.source().twists().iter().copied().collect();
    let mut keep = Vec::new();
    for &d in &twists {
        let lower: Vec<usize> = (0..f.source().rank())
            .filter(|&j| f.source().twist(j) < d)
            .collect();
        let tgt = f.target().graded_piece(alg, d);
        let mut span = Echelon::new(tgt.dim());
        let (_, cols) = f.select_columns(&lower).sparse_columns_in_degree(alg, d);
        for c in cols {
            if span.rank() == tgt.dim() {
                break;
            }
            span.insert_sparse(&c);
        }
        for j in (0..f.source().rank()).filter(|&j| f.source().twist(j) == d) {
            let v = tgt.from_elements(f.target(), &f.column(j));
            if span.insert(&v) {
                keep.push(j);
            }
        }
    }
    keep.sort_unstable();
    keep
}

/// A minimal map onto `Ker f`.
///
/// Generators are chosen degree by degree: kernel vectors not already in
/// `R_1 · Ker_{d-1}` plus the generators picked so far in degree `d`, taken
/// in the order of the reduced kernel basis.
pub fn syzygy(alg: &GradedAlgebra, f: &ModuleMap) -> Result<ModuleMap> {
    alg.top_degree()?;
    let source = f.source();
    let Some((lo, hi)) = source.degree_range(alg) else {
        return Ok(ModuleMap::zero(FreeModule::zero(), source.clone()));
    };
    let linear = alg.dim(1);
    let mut gen_twists = Vec::new();
    let mut gen_columns: Vec<Vec<AlgebraElement>> = Vec::new();
    let mut prev_kernel: Vec<Vec<Scalar>> = Vec::new();
    let mut prev_piece = source.graded_piece(alg, lo - 1);
    for d in lo..=hi {
        let piece = source.graded_piece(alg, d);
        let kernel = f.kernel_in_degree(alg, d);
        if !kernel.is_empty() {
            let mut span = Echelon::new(piece.dim());
            'fill: for v in &prev_kernel {
                for u in 0..linear {
                    if span.rank() == kernel.len() {
                        break 'fill;
                    }
                    let w = shift_by_linear(alg, source, &prev_piece, &piece, v, u);
                    span.insert(&w);
                }
            }
            for v in &kernel {
                if span.rank() == kernel.len() {
                    break;
                }
                if span.insert(v) {
                    gen_twists.push(d);
                    gen_columns.push(piece.to_elements(source, v));
                }
            }
        }
        prev_kernel = kernel;
        prev_piece = piece;
    }
    let entries = (0..source.rank())
        .map(|i| gen_columns.iter().map(|col| col[i].clone()).collect())
        .collect();
    ModuleMap::new(FreeModule::new(gen_twists), source.clone(), entries)
}

/// Multiplies a vector of `F_{d-1}` by the `u`-th basis element of `R_1`.
fn shift_by_linear(
    alg: &GradedAlgebra,
    module: &FreeModule,
    from: &crate::free::Piece,
    to: &crate::free::Piece,
    v: &[Scalar],
    u: usize,
) -> Vec<Scalar> {
    let mut w = vec![Scalar::zero(); to.dim()];
    for j in 0..module.rank() {
        let src = from.block(j);
        if src.is_empty() {
            continue;
        }
        let bdeg = (from.degree - module.twist(j)) as usize;
        let base = to.offsets[j];
        for (b, x) in v[src].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, p) in alg.basis_product(1, u, bdeg, b).iter().enumerate() {
                if !p.is_zero() {
                    w[base + k].add_mul(x, p);
                }
            }
        }
    }
    w
}

/// Twists of each free module of a resolution.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GradedBettiTable {
    pub twists: Vec<Vec<i64>>,
}

#[derive(serde::Serialize)]
struct BettiRecord<'a> {
    index: usize,
    twists: &'a [i64],
}

impl GradedBettiTable {
    pub fn from_complex(c: &Complex) -> Self {
        GradedBettiTable {
            twists: (c.lo()..=c.hi())
                .map(|i| {
                    let mut t = c.module(i).unwrap().twists().to_vec();
                    t.sort_unstable();
                    t
                })
                .collect(),
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.twists.iter().map(Vec::len).collect()
    }

    /// Every twist at index `i` equals `i` plus the common twist of index 0.
    pub fn is_linear(&self) -> bool {
        self.first_nonlinear_index().is_none()
    }

    pub fn first_nonlinear_index(&self) -> Option<usize> {
        let base = self.twists.first().and_then(|t| t.first()).copied().unwrap_or(0);
        self.twists
            .iter()
            .enumerate()
            .find(|(i, t)| t.iter().any(|&a| a != base + *i as i64))
            .map(|(i, _)| i)
    }

    /// `[{"index": i, "twists": [..]}, ..]`.
    pub fn records(&self) -> impl serde::Serialize + '_ {
        self.twists
            .iter()
            .enumerate()
            .map(|(index, twists)| BettiRecord { index, twists })
            .collect::<Vec<_>>()
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: Complex,
    pub betti: GradedBettiTable,
}

impl Resolution {
    /// `d_i : F_i -> F_{i-1}`, `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &ModuleMap {
        self.complex.differential(i as i64).expect("index within the resolution")
    }

    pub fn module(&self, i: usize) -> &FreeModule {
        self.complex.module(i as i64).expect("index within the resolution")
    }

    pub fn length(&self) -> usize {
        self.complex.hi() as usize
    }
}

/// Resolution `F_length -> … -> F_0` of `Coker p`, starting from the
/// minimized presentation.
pub fn minimal_resolution(alg: &GradedAlgebra, p: &Presentation, length: usize) -> Result<Resolution> {
    let p = minimize(alg, p)?;
    resolve_from(alg, p.map().clone(), length)
}

/// Continues a resolution whose first differential is `first` (used as is).
pub fn resolve_from(alg: &GradedAlgebra, first: ModuleMap, length: usize) -> Result<Resolution> {
    let complex = if length == 0 {
        Complex::new(0, vec![first.target().clone()], vec![])?
    } else {
        let mut maps = vec![first];
        while maps.len() < length {
            let next = syzygy(alg, maps.last().unwrap())?;
            maps.push(next);
        }
        Complex::from_maps(0, maps)?
    };
    let betti = GradedBettiTable::from_complex(&complex);
    Ok(Resolution { complex, betti })
}

/// `k = Coker(R(-1)^n -> R)` where the map sends generators to a basis of `R_1`.
pub fn residue_field(alg: &GradedAlgebra) -> Result<Presentation> {
    let n = alg.dim(1);
    let row: Vec<AlgebraElement> = (0..n)
        .map(|u| {
            let mut c = vec![Scalar::zero(); n];
            c[u] = Scalar::one();
            AlgebraElement::homogeneous(1, c)
        })
        .collect();
    let map = ModuleMap::new(FreeModule::uniform(1, n), FreeModule::uniform(0, 1), vec![row])?;
    Ok(Presentation::new(alg, map))
}

pub fn betti_of_k(alg: &GradedAlgebra, length: usize) -> Result<GradedBettiTable> {
    Ok(minimal_resolution(alg, &residue_field(alg)?, length)?.betti)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexample::{build_d, module_m};
    use crate::testing::*;

    fn no_units(res: &Resolution) -> bool {
        (1..=res.length()).all(|i| {
            res.differential(i)
                .entries()
                .iter()
                .flatten()
                .all(|e| degree_zero_part(e).is_zero())
        })
    }

    #[test]
    fn unit_entries_cancel() {
        let r = paper();
        let p = coker(&r, &[0, 0], &[&["1", "V"], &["0", "X"]]);
        let m = minimize(&r, &p).unwrap();
        assert!(m.has_no_units());
        assert_eq!(m.generators().twists(), &[0]);
        assert_eq!(m.map().source().twists(), &[1]);
        assert_eq!(m.hilbert(), p.hilbert());
        assert_eq!(cokernel_hilbert(&r, m.map()), *p.hilbert());
    }

    #[test]
    fn minimal_presentations_are_untouched() {
        let r = paper();
        for s in 1..4 {
            let p = module_m(&r, s).unwrap();
            assert_eq!(minimize(&r, &p).unwrap(), p);
        }
        let free = Presentation::free(&r, FreeModule::uniform(0, 2));
        assert_eq!(minimize(&r, &free).unwrap(), free);
    }

    #[test]
    fn redundant_relations_are_dropped() {
        let r = paper();
        let p = coker(&r, &[0], &[&["V", "X", "V*X", "2*V + X"]]);
        let m = minimize(&r, &p).unwrap();
        assert_eq!(m.map().source().twists(), &[1, 1]);
        assert_eq!(m.hilbert(), p.hilbert());
    }

    #[test]
    fn hilbert_functions_of_presented_modules() {
        let r = paper();
        for s in 1..5 {
            assert_eq!(
                module_m(&r, s).unwrap().hilbert(),
                &HilbertFunction::from_pairs([(1, 2), (2, 6)])
            );
        }
        assert_eq!(residue_field(&r).unwrap().hilbert(), &HilbertFunction::from_pairs([(0, 1)]));
        let free = FreeModule::new(vec![0, 2]);
        assert_eq!(Presentation::free(&r, free.clone()).hilbert(), &free.hilbert(&r));
    }

    #[test]
    fn syzygies_of_the_family_are_the_next_differential() {
        let r = paper();
        for s in 1..5i64 {
            let d = build_d(&r, -s).unwrap();
            let next = build_d(&r, -s + 1).unwrap();
            let g = syzygy(&r, &d).unwrap();
            let mut a = g.source().twists().to_vec();
            let mut b = next.source().twists().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
            for deg in -s..4 {
                let both = next.sparse_columns_in_degree(&r, deg).1;
                let mut e = Echelon::new(g.target().piece_dim(&r, deg));
                for c in g.sparse_columns_in_degree(&r, deg).1 {
                    e.insert_sparse(&c);
                }
                let rank = e.rank();
                assert_eq!(rank, next.rank_in_degree(&r, deg));
                for c in both {
                    e.insert_sparse(&c);
                }
                assert_eq!(e.rank(), rank, "images differ in degree {deg}");
            }
        }
    }

    #[test]
    fn periodic_syzygy_over_dual_numbers() {
        let r = dual_numbers();
        let x = map(&r, &[0], &[&["x"]]);
        let g = syzygy(&r, &x).unwrap();
        assert_eq!(g.source().twists(), &[2]);
        assert_eq!(g.target().twists(), &[1]);
        assert_eq!(g.entry(0, 0), &r.parse_element("x").unwrap());
        let injective = ModuleMap::identity(&r, &FreeModule::uniform(0, 2));
        assert_eq!(syzygy(&r, &injective).unwrap().source().rank(), 0);
    }

    #[test]
    fn residue_field_resolutions() {
        let r = paper();
        let b = betti_of_k(&r, 5).unwrap();
        assert_eq!(b.ranks(), vec![1, 4, 13, 40, 121, 364]);
        assert!(b.is_linear());
        let dn = betti_of_k(&dual_numbers(), 5).unwrap();
        assert_eq!(dn.ranks(), vec![1; 6]);
        assert!(dn.is_linear());
        let cubic = ring(&["x"], &["x*x*x"]);
        let bc = betti_of_k(&cubic, 4).unwrap();
        assert_eq!(bc.ranks(), vec![1; 5]);
        assert_eq!(bc.twists, vec![vec![0], vec![1], vec![3], vec![4], vec![6]]);
        assert_eq!(bc.first_nonlinear_index(), Some(2));
    }

    #[test]
    fn resolution_of_m1() {
        let r = paper();
        let res = minimal_resolution(&r, &module_m(&r, 1).unwrap(), 5).unwrap();
        assert_eq!(res.betti.ranks(), vec![2, 2, 2, 3, 7, 19]);
        assert!(no_units(&res));
        assert!(res.complex.verify_dd_zero(&r).unwrap().ok);
        for i in 1..res.length() as i64 {
            assert!(res.complex.homology(&r, i).unwrap().is_zero());
        }
    }

    #[test]
    fn twists_grow_along_resolutions() {
        let r = paper();
        for p in [module_m(&r, 2).unwrap(), residue_field(&r).unwrap()] {
            let res = minimal_resolution(&r, &p, 4).unwrap();
            let base = res.module(0).min_twist().unwrap();
            for i in 0..=4 {
                assert!(res.module(i).min_twist().unwrap() >= base + i as i64);
            }
            let again = minimal_resolution(&r, &p, 4).unwrap();
            assert_eq!(again.complex, res.complex);
        }
    }

    #[test]
    fn betti_records_serialize() {
        let r = dual_numbers();
        let b = betti_of_k(&r, 1).unwrap();
        assert_eq!(b.twists, vec![vec![0], vec![1]]);
        assert_eq!(serde_json::to_string(&b.records()).unwrap(), r#"[{"index":0,"twists":[0]},{"index":1,"twists":[1]}]"#);
    }
}
