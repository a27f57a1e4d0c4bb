use serde::Serialize;

use crate::algebra::{AlgebraElement, AlgebraSpec, GradedAlgebra};
use crate::complex::{Complex, DdCheck};
use crate::duality::{ext_range, is_reflexive, tr_report, transpose, Reflexivity, TrReport};
use crate::error::Result;
use crate::free::FreeModule;
use crate::groebner::{
    hilbert_cross_check, search_orders, spoly_reduce_check, GroebnerCheck, HilbertCrossCheck, MonomialOrder, OrderKind,
    OrderSearch,
};
use crate::hilbert::HilbertFunction;
use crate::linalg::Echelon;
use crate::resolution::{betti_of_k, residue_field, GradedBettiTable, Presentation};
use crate::scalar::Scalar;
use crate::series::{
    abs_formula_check, expand_rational, growth_analysis, AbsReport, GrowthClass, GrowthVerdict, LaurentPoly,
};

use super::objects::*;

/// Lowest index of the `TR_i` window for each `M_s`.
pub const TR_LOW: i64 = -6;

#[derive(Clone, Debug, Serialize)]
pub struct IndexedDim {
    pub i: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub product: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingReport {
    pub alpha: Scalar,
    pub hilbert: HilbertFunction,
    pub dimension: usize,
    pub top_degree: usize,
    pub normal_form_basis: Vec<Vec<String>>,
    pub listed_basis: Vec<String>,
    pub listed_basis_independent: bool,
    pub products: Vec<ProductCheck>,
    pub passed: bool,
}

fn flatten(alg: &GradedAlgebra, a: &AlgebraElement) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(alg.total_dim());
    for d in 0..alg.computed_degrees() {
        match a.part(d) {
            Some(p) => v.extend_from_slice(p),
            None => v.extend(std::iter::repeat(Scalar::zero()).take(alg.dim(d as i64))),
        }
    }
    v
}

pub fn verify_ring(alg: &GradedAlgebra) -> Result<RingReport> {
    let top_degree = alg.top_degree()?;
    let mut ech = Echelon::new(alg.total_dim());
    for m in LISTED_BASIS {
        ech.insert(&flatten(alg, &alg.parse_element(m)?));
    }
    let listed_basis_independent = ech.rank() == LISTED_BASIS.len();

    let mut products = Vec::new();
    for (a, b, expected) in [("X", "X", "V*Y"), ("Y", "Y", "-1*V*X"), ("X", "Y", "0")] {
        let p = alg.multiply(&alg.parse_element(a)?, &alg.parse_element(b)?)?;
        let e = alg.parse_element(expected)?;
        products.push(ProductCheck {
            product: format!("{}*{}", a.to_lowercase(), b.to_lowercase()),
            expected: alg.render(&e),
            actual: alg.render(&p),
            ok: p == e,
        });
    }

    let hilbert = alg.hilbert();
    let normal_form_basis = (0..alg.computed_degrees())
        .map(|d| {
            alg.basis(d)
                .iter()
                .map(|m| alg.monomial(m).map(|e| alg.render(&e)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = hilbert == HilbertFunction::from_dims(0, &[1, 4, 3])
        && top_degree == 2
        && listed_basis_independent
        && products.iter().all(|p| p.ok);
    Ok(RingReport {
        alpha: alg.alpha().clone(),
        dimension: alg.total_dim(),
        hilbert,
        top_degree,
        normal_form_basis,
        listed_basis: LISTED_BASIS.iter().map(|s| s.to_lowercase()).collect(),
        listed_basis_independent,
        products,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub window: (i64, i64),
    pub ranks: Vec<IndexedDim>,
    pub dd_zero: DdCheck,
    pub homology: Vec<IndexedDim>,
    pub image_dims: Vec<IndexedDim>,
    pub images_match: bool,
    /// Row 3 of `d_2` is `(0,0,0,v,x,y,z)`, so `Coker d_2` has a `k` summand.
    pub coker_d2_has_k_summand: bool,
    pub passed: bool,
}

fn expected_image(i: i64) -> usize {
    if i <= 1 {
        8
    } else {
        16
    }
}

pub fn verify_exactness(alg: &GradedAlgebra, c: &Complex) -> Result<ExactnessReport> {
    let ranks = (c.lo()..=c.hi())
        .map(|i| IndexedDim {
            i,
            dim: c.module(i).unwrap().rank(),
        })
        .collect();
    let dd_zero = c.verify_dd_zero(alg)?;
    let homology = ((c.lo() + 1)..c.hi())
        .map(|i| {
            Ok(IndexedDim {
                i,
                dim: c.homology(alg, i)?.total(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let image_dims: Vec<IndexedDim> = ((c.lo() + 1)..=2)
        .map(|i| IndexedDim {
            i,
            dim: c.image_dim(alg, i).unwrap(),
        })
        .collect();
    let images_match = image_dims.iter().all(|r| r.dim == expected_image(r.i));

    let d2 = c.differential(2).unwrap();
    let row3: Vec<&AlgebraElement> = d2.entries()[2].iter().collect();
    let vars: Vec<AlgebraElement> = (0..alg.variables().len()).map(|u| alg.variable(u)).collect();
    let coker_d2_has_k_summand = row3[..3].iter().all(|e| e.is_zero())
        && row3[3..].iter().copied().eq(vars.iter())
        && d2.entries()[..2].iter().all(|r| r[3..].iter().all(AlgebraElement::is_zero));

    let passed = dd_zero.ok && homology.iter().all(|h| h.dim == 0) && images_match && coker_d2_has_k_summand;
    Ok(ExactnessReport {
        window: (c.lo(), c.hi()),
        ranks,
        dd_zero,
        homology,
        image_dims,
        images_match,
        coker_d2_has_k_summand,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualHomologyReport {
    /// Position `i` of the dual holds `(C_{-i-1})^*`; `d_i^* = (d_{-i})^*` leaves it.
    pub dual_window: (i64, i64),
    pub homology: Vec<IndexedDim>,
    pub vanishing_exactly_for_positive: bool,
    pub h0_total: usize,
    pub kernel_dual_d0: usize,
    pub image_dual_d_plus1: usize,
    pub image_dual_d_minus1: usize,
    /// How many of the nine vectors `R_2 · e_j` of `C_1^*` lie in `Ker d_{-2}^*`.
    pub quadrics_in_kernel_dual_d_minus2: usize,
    pub passed: bool,
}

pub fn verify_dual_homology(alg: &GradedAlgebra, c: &Complex) -> Result<DualHomologyReport> {
    let cs = c.dualize();
    let homology = ((cs.lo() + 1)..cs.hi())
        .map(|i| {
            Ok(IndexedDim {
                i,
                dim: cs.homology(alg, i)?.total(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let vanishing_exactly_for_positive = homology.iter().all(|h| (h.dim == 0) == (h.i >= 1));
    let h0_total = homology.iter().find(|h| h.i == 0).map_or(0, |h| h.dim);
    let d0 = cs.differential(0).unwrap();
    let kernel_dual_d0 = d0.source().hilbert(alg).total() - d0.image_dim(alg);
    let image_dual_d_plus1 = cs.image_dim(alg, 1).unwrap();
    let image_dual_d_minus1 = cs.image_dim(alg, -1).unwrap();

    let dm2 = cs.differential(-2).unwrap();
    let mut quadrics = 0;
    for j in 0..dm2.source().rank() {
        for b in 0..alg.dim(2) {
            let mut coords = vec![Scalar::zero(); alg.dim(2)];
            coords[b] = Scalar::one();
            let mut v = vec![AlgebraElement::zero(); dm2.source().rank()];
            v[j] = AlgebraElement::homogeneous(2, coords);
            if dm2.apply(alg, &v)?.iter().all(AlgebraElement::is_zero) {
                quadrics += 1;
            }
        }
    }

    let passed = vanishing_exactly_for_positive
        && h0_total == 1
        && kernel_dual_d0 == 9
        && image_dual_d_plus1 == 8
        && image_dual_d_minus1 == 8
        && quadrics == 9;
    Ok(DualHomologyReport {
        dual_window: (cs.lo(), cs.hi()),
        homology,
        vanishing_exactly_for_positive,
        h0_total,
        kernel_dual_d0,
        image_dual_d_plus1,
        image_dual_d_minus1,
        quadrics_in_kernel_dual_d_minus2: quadrics,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleFamilyEntry {
    pub s: usize,
    pub hilbert: HilbertFunction,
    pub module: TrReport,
    pub transpose: TrReport,
    pub pattern_matches: bool,
    pub transpose_pattern_matches: bool,
    pub reflexive: bool,
    pub transpose_ext_vanishing_through: usize,
    pub transpose_ext_vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrFamilyReport {
    pub family: Vec<ModuleFamilyEntry>,
    pub transpose_of_m1: Reflexivity,
    pub passed: bool,
}

/// Ext indices of `Tr M_s` checked for vanishing.
const TRANSPOSE_EXT_RANGE: usize = 6;

pub fn verify_tr_family(alg: &GradedAlgebra, cfg: &Config) -> Result<TrFamilyReport> {
    let mut family = Vec::new();
    for s in 1..=cfg.s_max {
        let m = module_m(alg, s)?;
        let hi = (s + cfg.ext_horizon) as i64;
        let module = tr_report(alg, &format!("M_{s}"), &m, TR_LOW, hi)?;
        let tr = transpose(alg, &m)?;
        let transpose_report = tr_report(alg, &format!("Tr M_{s}"), &tr, TR_LOW, hi)?;
        let si = s as i64;
        let pattern_matches = module.records.iter().all(|r| r.vanishes == (r.i < si));
        let transpose_pattern_matches = transpose_report.records.iter().all(|r| r.vanishes == (r.i > -si));
        let reflexive = is_reflexive(alg, &m)?.reflexive;
        let transpose_ext_vanishes = ext_range(alg, &tr, 1, TRANSPOSE_EXT_RANGE)?.iter().all(HilbertFunction::is_zero);
        family.push(ModuleFamilyEntry {
            s,
            hilbert: m.hilbert().clone(),
            module,
            transpose: transpose_report,
            pattern_matches,
            transpose_pattern_matches,
            reflexive,
            transpose_ext_vanishing_through: TRANSPOSE_EXT_RANGE,
            transpose_ext_vanishes,
        });
    }
    let transpose_of_m1 = is_reflexive(alg, &transpose(alg, &module_m(alg, 1)?)?)?;
    let expected_hilbert = HilbertFunction::from_pairs([(1, 2), (2, 6)]);
    let passed = family.iter().all(|e| {
        e.pattern_matches
            && e.transpose_pattern_matches
            && e.reflexive
            && e.transpose_ext_vanishes
            && e.hilbert == expected_hilbert
    }) && !transpose_of_m1.reflexive;
    Ok(TrFamilyReport {
        family,
        transpose_of_m1,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyEntry {
    pub s: usize,
    /// Twist carrying the cokernel inside `C` onto the standalone `M_s`.
    pub shift: i64,
    pub hilbert_agrees: bool,
    pub tr_patterns_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub entries: Vec<ConsistencyEntry>,
    pub passed: bool,
}

/// `M_s` built on its own against `Coker d_{-s}` taken from the complex.
pub fn verify_consistency(alg: &GradedAlgebra, c: &Complex, cfg: &Config) -> Result<ConsistencyReport> {
    let mut entries = Vec::new();
    for s in 1..=cfg.s_max {
        let i = -(s as i64);
        let Some(d) = c.differential(i) else { continue };
        let inside = Presentation::new(alg, d.clone());
        let standalone = module_m(alg, s)?;
        let shift = standalone.generators().twist(0) - d.target().twist(0);
        let hilbert_agrees = inside.hilbert().shifted(shift) == *standalone.hilbert();
        let hi = (s + 1) as i64;
        let a = tr_report(alg, "", &inside, -2, hi)?;
        let b = tr_report(alg, "", &standalone, -2, hi)?;
        entries.push(ConsistencyEntry {
            s,
            shift,
            hilbert_agrees,
            tr_patterns_agree: a.records == b.records,
        });
    }
    let passed = entries.len() == cfg.s_max && entries.iter().all(|e| e.hilbert_agrees && e.tr_patterns_agree);
    Ok(ConsistencyReport { entries, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthKoszulReport {
    pub beta_plus: Vec<u64>,
    pub beta_minus: Vec<u64>,
    pub plus: GrowthVerdict,
    pub minus: GrowthVerdict,
    pub k_betti: GradedBettiTable,
    pub k_ranks: Vec<usize>,
    pub poincare_expansion: Vec<Scalar>,
    pub k_matches_series: bool,
    pub k_linear: bool,
    pub passed: bool,
}

pub fn verify_growth_and_koszul(alg: &GradedAlgebra, c: &Complex, cfg: &Config) -> Result<GrowthKoszulReport> {
    let rank = |i: i64| c.module(i).unwrap().rank() as u64;
    let beta_plus: Vec<u64> = (0..=c.hi()).map(rank).collect();
    let beta_minus: Vec<u64> = (0..=-c.lo()).map(|i| rank(-i)).collect();
    let plus = growth_analysis(&beta_plus);
    let minus = growth_analysis(&beta_minus);

    let n = cfg.k_resolution_length;
    let k_betti = betti_of_k(alg, n)?;
    let k_ranks = k_betti.ranks();
    let hr = alg.hilbert();
    // 1 / H_R(-t)
    let denominator = LaurentPoly::from_terms(
        hr.iter().map(|(d, m)| (d, Scalar::from_int(if d % 2 == 0 { m as i64 } else { -(m as i64) }))),
    );
    let poincare_expansion = expand_rational(&LaurentPoly::from_ints(&[1]), &denominator, n)?;
    let k_matches_series = k_ranks
        .iter()
        .zip(&poincare_expansion)
        .all(|(&r, c)| *c == Scalar::from_int(r as i64))
        && k_ranks.len() == n + 1;
    let k_linear = k_betti.is_linear();

    let plus_ok = matches!(plus.classification, GrowthClass::StrictlyIncreasingFrom(j) if j <= 1)
        && plus.min_ratio.as_ref().is_some_and(|r| *r > Scalar::one());
    let minus_ok = minus.classification == GrowthClass::Constant && beta_minus.first() == Some(&2);
    let passed = plus_ok && minus_ok && k_matches_series && k_linear;
    Ok(GrowthKoszulReport {
        beta_plus,
        beta_minus,
        plus,
        minus,
        k_betti,
        k_ranks,
        poincare_expansion,
        k_matches_series,
        k_linear,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GroebnerReport {
    pub given_order: GroebnerCheck,
    pub search: OrderSearch,
    pub cross_checks: Vec<(String, HilbertCrossCheck)>,
    pub passed: bool,
}

pub fn verify_groebner(alg: &GradedAlgebra) -> Result<GroebnerReport> {
    let spec = ring_spec(alg.alpha())?;
    let n = spec.variables.len();
    let given_order = spoly_reduce_check(&spec, &MonomialOrder::standard(OrderKind::Degrevlex, n));
    let search = search_orders(&spec);
    let cross_checks: Vec<(String, HilbertCrossCheck)> = MonomialOrder::all(n)
        .iter()
        .filter(|o| search.successful.contains(&o.label(&spec.variables)))
        .map(|o| (o.label(&spec.variables), hilbert_cross_check(&spec, alg, o)))
        .collect();
    let passed = search.evidence_found && cross_checks.iter().all(|(_, c)| c.agree);
    Ok(GroebnerReport {
        given_order,
        search,
        cross_checks,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AbsCase {
    pub name: String,
    pub report: AbsReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbsControlReport {
    pub cases: Vec<AbsCase>,
    /// Left side of the first identity for `k` over `k[x]/(x²)`: the Hilbert series of `Hom(k, R)`.
    pub hom_k_series: LaurentPoly,
    pub passed: bool,
}

pub fn dual_numbers() -> Result<GradedAlgebra> {
    GradedAlgebra::build(&AlgebraSpec::parse(&["x"], &["x*x"], Scalar::one(), 4)?)
}

/// The identities on control modules whose Ext eventually vanishes.
pub fn verify_abs_controls(alg: &GradedAlgebra) -> Result<AbsControlReport> {
    let small = dual_numbers()?;
    let k = residue_field(&small)?;
    let free = Presentation::free(alg, FreeModule::uniform(0, 1));
    let cases = vec![
        AbsCase {
            name: "k over k[x]/(x^2), A = {}".into(),
            report: abs_formula_check(&small, &k, &[], 4)?,
        },
        AbsCase {
            name: "k over k[x]/(x^2), A = {1,3}".into(),
            report: abs_formula_check(&small, &k, &[1, 3], 4)?,
        },
        AbsCase {
            name: "R over R, A = {}".into(),
            report: abs_formula_check(alg, &free, &[], 3)?,
        },
    ];
    let hom_k_series = cases[0].report.formula1.lhs.clone();
    let passed = cases.iter().all(|c| c.report.passed()) && hom_k_series == LaurentPoly::from_ints(&[0, 1]);
    Ok(AbsControlReport {
        cases,
        hom_k_series,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub alpha: Scalar,
    pub exactness: bool,
    pub dual_vanishing: Vec<bool>,
    pub tr_patterns: Vec<(Vec<i64>, Vec<i64>)>,
    pub reflexive: Vec<bool>,
}

impl Fingerprint {
    fn verdicts(&self) -> impl PartialEq + '_ {
        (self.exactness, &self.dual_vanishing, &self.tr_patterns, &self.reflexive)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericityReport {
    pub fingerprints: Vec<Fingerprint>,
    pub passed: bool,
}

pub fn fingerprint(cfg: &Config) -> Result<Fingerprint> {
    let alg = build_ring(cfg)?;
    let c = build_complex(&alg, cfg.window, POSITIVE_END)?;
    let exactness = verify_exactness(&alg, &c)?.passed;
    let dual_vanishing = verify_dual_homology(&alg, &c)?.homology.iter().map(|h| h.dim == 0).collect();
    let mut tr_patterns = Vec::new();
    let mut reflexive = Vec::new();
    for s in 1..=cfg.s_max {
        let m = module_m(&alg, s)?;
        let hi = (s + cfg.ext_horizon) as i64;
        tr_patterns.push((
            tr_report(&alg, "", &m, TR_LOW, hi)?.satisfied(),
            tr_report(&alg, "", &transpose(&alg, &m)?, TR_LOW, hi)?.satisfied(),
        ));
        reflexive.push(is_reflexive(&alg, &m)?.reflexive);
    }
    Ok(Fingerprint {
        alpha: cfg.alpha.clone(),
        exactness,
        dual_vanishing,
        tr_patterns,
        reflexive,
    })
}

/// Verdicts for the configured `α` and for `α ∈ {2, 3, 5}`.
pub fn verify_alpha_genericity(cfg: &Config) -> Result<GenericityReport> {
    let mut alphas = vec![cfg.alpha.clone()];
    for a in [2, 3, 5] {
        let a = Scalar::from_int(a);
        if !alphas.contains(&a) {
            alphas.push(a);
        }
    }
    let fingerprints = alphas
        .into_iter()
        .map(|alpha| fingerprint(&Config { alpha, ..cfg.clone() }))
        .collect::<Result<Vec<_>>>()?;
    let passed = fingerprints.windows(2).all(|w| w[0].verdicts() == w[1].verdicts());
    Ok(GenericityReport { fingerprints, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct PaperReport {
    pub config: Config,
    pub ring: RingReport,
    pub exactness: ExactnessReport,
    pub dual_homology: DualHomologyReport,
    pub tr_family: TrFamilyReport,
    pub consistency: ConsistencyReport,
    pub growth_koszul: GrowthKoszulReport,
    pub groebner: GroebnerReport,
    pub abs_controls: AbsControlReport,
    pub alpha_genericity: GenericityReport,
    pub overall: bool,
}

impl PaperReport {
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("ring", self.ring.passed),
            ("exactness", self.exactness.passed),
            ("dual_homology", self.dual_homology.passed),
            ("tr_family", self.tr_family.passed),
            ("consistency", self.consistency.passed),
            ("growth_koszul", self.growth_koszul.passed),
            ("groebner", self.groebner.passed),
            ("abs_controls", self.abs_controls.passed),
            ("alpha_genericity", self.alpha_genericity.passed),
        ]
    }
}

pub fn verify_all(cfg: &Config) -> Result<PaperReport> {
    let alg = build_ring(cfg)?;
    let c = build_complex(&alg, cfg.window, POSITIVE_END)?;
    let ((ring, exactness), (dual_homology, growth_koszul)) = rayon::join(
        || (verify_ring(&alg), verify_exactness(&alg, &c)),
        || (verify_dual_homology(&alg, &c), verify_growth_and_koszul(&alg, &c, cfg)),
    );
    let ((tr_family, consistency), (groebner, (abs_controls, alpha_genericity))) = rayon::join(
        || (verify_tr_family(&alg, cfg), verify_consistency(&alg, &c, cfg)),
        || (verify_groebner(&alg), rayon::join(|| verify_abs_controls(&alg), || verify_alpha_genericity(cfg))),
    );
    let mut report = PaperReport {
        config: cfg.clone(),
        ring: ring?,
        exactness: exactness?,
        dual_homology: dual_homology?,
        tr_family: tr_family?,
        consistency: consistency?,
        growth_koszul: growth_koszul?,
        groebner: groebner?,
        abs_controls: abs_controls?,
        alpha_genericity: alpha_genericity?,
        overall: false,
    };
    report.overall = report.checks().iter().all(|c| c.1);
    Ok(report)
}
