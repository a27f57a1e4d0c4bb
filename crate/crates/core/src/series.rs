//! Laurent polynomials, rational power series, the Avramov-Buchweitz-Sally
//! identities, and growth of Betti sequences.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::GradedAlgebra;
use crate::duality::{dual_module, ext_range, tr_report};
use crate::error::{Error, Result};
use crate::hilbert::HilbertFunction;
use crate::resolution::Presentation;
use crate::scalar::Scalar;

/// Finitely supported `Σ c_e t^e`, `e ∈ Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly(BTreeMap<i64, Scalar>);

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: i64, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `c_0 + c_1 t + …`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as i64, Scalar::from_int(c))),
        )
    }

    pub fn from_hilbert(h: &HilbertFunction) -> Self {
        Self::from_terms(h.iter().map(|(d, n)| (d, Scalar::from_int(n as i64))))
    }

    pub fn add_term(&mut self, e: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(e).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> Scalar {
        self.0.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.0.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (&e, c) in &other.0 {
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.0.iter().map(|(&e, x)| (e, x * c)))
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (&a, x) in &self.0 {
            for (&b, y) in &other.0 {
                p.add_term(a + b, x * y);
            }
        }
        p
    }

    /// `p(t^{-1})`.
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.0.iter().map(|(&e, c)| (-e, c.clone())))
    }

    /// `p · t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_terms(self.0.iter().map(|(&e, c)| (e + k, c.clone())))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.0.values().all(|c| !c.is_negative())
    }

    /// Exact quotient, or `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Result<Option<Self>> {
        let (Some(lo), Some(hi)) = (other.min_exp(), other.max_exp()) else {
            return Err(Error::Series("division by the zero Laurent polynomial".into()));
        };
        let lead = other.0[&hi].inv();
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(top) = rem.max_exp() {
            // the remainder's support can only shrink from above; once it
            // sits below `other`'s span nothing more can be cancelled
            if top - hi < rem.min_exp().unwrap() - lo {
                return Ok(None);
            }
            let c = &rem.0[&top] * &lead;
            let e = top - hi;
            rem = rem.sub(&other.mul(&Self::monomial(e, c.clone())));
            q.add_term(e, c);
        }
        Ok(Some(q))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.0.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let var = match e {
                0 => String::new(),
                1 => "t".into(),
                e => format!("t^{e}"),
            };
            match (mag.is_one(), var.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{var}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|(e, c)| (e, c.to_string())))
    }
}

/// Coefficients of `t^v, …, t^{v+n}` in `numerator / denominator`, where
/// `v` is the difference of the lowest exponents.
pub fn expand_rational(numerator: &LaurentPoly, denominator: &LaurentPoly, n: usize) -> Result<Vec<Scalar>> {
    let Some(dlo) = denominator.min_exp() else {
        return Err(Error::Series("zero denominator".into()));
    };
    let nlo = numerator.min_exp().unwrap_or(0);
    let d0_inv = denominator.coeff(dlo).inv();
    let mut out: Vec<Scalar> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut c = numerator.coeff(nlo + k as i64);
        for j in 1..=k {
            let dj = denominator.coeff(dlo + j as i64);
            if !dj.is_zero() {
                c = &c - &(&dj * &out[k - j]);
            }
        }
        out.push(&c * &d0_inv);
    }
    Ok(out)
}

/// `H_M(t^{-1}) · H_R(t) / H_R(t^{-1})`.
pub fn abs_rhs(hm: &LaurentPoly, hr: &LaurentPoly) -> Result<LaurentPoly> {
    if hr.is_zero() {
        return Err(Error::Series("H_R is zero".into()));
    }
    hm.invert_variable()
        .mul(hr)
        .div_exact(&hr.invert_variable())?
        .ok_or_else(|| Error::Hypothesis("the quotient is not a Laurent polynomial".into()))
}

/// `σ = 0` for all-odd `A`, `1` for all-even `A`; `None` for empty `A`.
pub fn parity_sign(a: &[i64]) -> Result<Option<u8>> {
    if a.contains(&0) {
        return Err(Error::Hypothesis("0 must not belong to A".into()));
    }
    let odd = a.iter().filter(|x| x.rem_euclid(2) == 1).count();
    match (odd, a.len()) {
        (_, 0) => Ok(None),
        (o, n) if o == n => Ok(Some(0)),
        (0, _) => Ok(Some(1)),
        _ => Err(Error::Hypothesis("A mixes odd and even integers".into())),
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Identity {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub holds: bool,
}

impl Identity {
    fn new(lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        let holds = lhs == rhs;
        Identity { lhs, rhs, holds }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct AbsReport {
    pub a: Vec<i64>,
    pub bound: usize,
    pub sigma: Option<u8>,
    pub formula1: Identity,
    pub formula2: Identity,
    /// `H_R(t) P(t^{-1}) + H_R(t^{-1}) Q(t)` against `(-1)^σ H_R(t^{-1}) (H_{M**} - H_M)`.
    pub combined: Identity,
    pub p: LaurentPoly,
    pub q: LaurentPoly,
    pub p_and_q_vanish: bool,
    pub totally_reflexive_in_window: bool,
}

impl AbsReport {
    pub fn passed(&self) -> bool {
        self.formula1.holds
            && self.formula2.holds
            && self.combined.holds
            && self.p_and_q_vanish
            && self.totally_reflexive_in_window
    }
}

/// Checks both identities for `M` and `M*` with `TR_i` assumed off `A`.
/// Every `i` with `0 < |i| <= bound` outside `A` must satisfy `TR_i`.
pub fn abs_formula_check(alg: &GradedAlgebra, p: &Presentation, a: &[i64], bound: usize) -> Result<AbsReport> {
    let sigma = parity_sign(a)?;
    let mut a: Vec<i64> = a.to_vec();
    a.sort_unstable();
    a.dedup();
    if a.iter().any(|x| x.unsigned_abs() as usize > bound) {
        return Err(Error::Hypothesis(format!("A must lie within ±{bound}")));
    }
    alg.top_degree()?;
    let b = bound as i64;
    let tr = tr_report(alg, "M", p, -b, b)?;
    if let Some(r) = tr.records.iter().find(|r| !r.vanishes && !a.contains(&r.i)) {
        return Err(Error::Hypothesis(format!("TR_{} fails outside A", r.i)));
    }

    let hr = LaurentPoly::from_hilbert(&alg.hilbert());
    let hm = LaurentPoly::from_hilbert(p.hilbert());
    let ext_m: Vec<LaurentPoly> = ext_range(alg, p, 0, bound)?
        .iter()
        .map(LaurentPoly::from_hilbert)
        .collect();
    let dual = dual_module(alg, p)?;
    let ext_dual: Vec<LaurentPoly> = ext_range(alg, &dual, 0, bound)?
        .iter()
        .map(LaurentPoly::from_hilbert)
        .collect();
    let hdual = LaurentPoly::from_hilbert(dual.hilbert());
    let hdd = LaurentPoly::from_hilbert(dual_module(alg, &dual)?.hilbert());

    let signed = |exts: &[LaurentPoly], n: usize| {
        if n % 2 == 0 {
            exts[n].clone()
        } else {
            exts[n].neg()
        }
    };
    let pos: Vec<usize> = a.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect();
    let neg: Vec<usize> = a.iter().filter(|&&x| x < 0).map(|&x| (-x) as usize).collect();

    let mut lhs1 = ext_m[0].clone();
    let mut pp = LaurentPoly::zero();
    for &n in &pos {
        lhs1 = lhs1.add(&signed(&ext_m, n));
        pp = pp.add(&ext_m[n]);
    }
    let mut lhs2 = ext_dual[0].clone();
    let mut qq = LaurentPoly::zero();
    for &n in &neg {
        lhs2 = lhs2.add(&signed(&ext_dual, n));
        qq = qq.add(&ext_dual[n]);
    }
    let formula1 = Identity::new(lhs1, abs_rhs(&hm, &hr)?);
    let formula2 = Identity::new(lhs2, abs_rhs(&hdual, &hr)?);

    let hr_inv = hr.invert_variable();
    let combined_lhs = hr.mul(&pp.invert_variable()).add(&hr_inv.mul(&qq));
    let mut combined_rhs = hr_inv.mul(&hdd.sub(&hm));
    if sigma == Some(1) {
        combined_rhs = combined_rhs.neg();
    }
    let combined = Identity::new(combined_lhs, combined_rhs);

    Ok(AbsReport {
        p_and_q_vanish: pp.is_zero() && qq.is_zero(),
        a,
        bound,
        sigma,
        formula1,
        formula2,
        combined,
        p: pp,
        q: qq,
        totally_reflexive_in_window: tr.totally_reflexive_in_window,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "class", content = "from", rename_all = "kebab-case")]
pub enum GrowthClass {
    Constant,
    Bounded,
    StrictlyIncreasingFrom(usize),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GrowthVerdict {
    pub classification: GrowthClass,
    /// Extremes of `b_{i+1} / b_i` over the strictly increasing tail.
    pub min_ratio: Option<Scalar>,
    pub max_ratio: Option<Scalar>,
}

/// Shortest strictly increasing tail that still counts as a trend.
const MIN_TAIL: usize = 3;

pub fn growth_analysis(b: &[u64]) -> GrowthVerdict {
    let verdict = |classification| GrowthVerdict {
        classification,
        min_ratio: None,
        max_ratio: None,
    };
    if b.windows(2).all(|w| w[0] == w[1]) {
        return verdict(GrowthClass::Constant);
    }
    let mut start = b.len() - 1;
    while start > 0 && b[start - 1] < b[start] {
        start -= 1;
    }
    let tail = b.len() - start;
    if tail >= MIN_TAIL && b[start] > 0 {
        let ratios: Vec<Scalar> = b[start..]
            .windows(2)
            .map(|w| Scalar::new(w[1] as i64, w[0] as i64))
            .collect();
        return GrowthVerdict {
            classification: GrowthClass::StrictlyIncreasingFrom(start),
            min_ratio: ratios.iter().min().cloned(),
            max_ratio: ratios.iter().max().cloned(),
        };
    }
    if tail == 2 {
        return verdict(GrowthClass::Inconclusive);
    }
    verdict(GrowthClass::Bounded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(c)
    }

    fn ints(v: &[Scalar]) -> Vec<i64> {
        v.iter().map(|s| s.to_string().parse().unwrap()).collect()
    }

    #[test]
    fn koszul_dual_series() {
        let c = expand_rational(&lp(&[1]), &lp(&[1, -4, 3]), 5).unwrap();
        assert_eq!(ints(&c), vec![1, 4, 13, 40, 121, 364]);
    }

    #[test]
    fn geometric_and_trivial_quotients() {
        assert_eq!(ints(&expand_rational(&lp(&[1]), &lp(&[1, -1]), 3).unwrap()), vec![1; 4]);
        assert_eq!(ints(&expand_rational(&lp(&[1, 1]), &lp(&[1, 1]), 2).unwrap()), vec![1, 0, 0]);
        assert!(expand_rational(&lp(&[1]), &LaurentPoly::zero(), 2).is_err());
    }

    #[test]
    fn rhs_for_small_rings() {
        let hr = lp(&[1, 1]);
        assert_eq!(abs_rhs(&hr, &hr).unwrap(), hr);
        assert_eq!(abs_rhs(&lp(&[1]), &hr).unwrap(), lp(&[0, 1]));
        let big = lp(&[1, 4, 3]);
        assert_eq!(abs_rhs(&lp(&[0, 2, 6]), &big).unwrap(), lp(&[2, 6]));
    }

    #[test]
    fn non_polynomial_quotient_is_rejected() {
        assert!(matches!(abs_rhs(&lp(&[1]), &lp(&[1, 2])), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn parity() {
        assert_eq!(parity_sign(&[1, 3, -5]).unwrap(), Some(0));
        assert_eq!(parity_sign(&[2, -4]).unwrap(), Some(1));
        assert_eq!(parity_sign(&[]).unwrap(), None);
        assert!(parity_sign(&[1, 2]).is_err());
        assert!(parity_sign(&[0, 2]).is_err());
    }

    #[test]
    fn growth() {
        assert_eq!(growth_analysis(&[2, 2, 2, 2]).classification, GrowthClass::Constant);
        assert_eq!(growth_analysis(&[5, 5, 5, 4]).classification, GrowthClass::Bounded);
        assert_eq!(growth_analysis(&[5, 5, 6]).classification, GrowthClass::Inconclusive);
        let g = growth_analysis(&[2, 2, 3, 7, 19]);
        assert_eq!(g.classification, GrowthClass::StrictlyIncreasingFrom(1));
        assert_eq!(g.min_ratio, Some(Scalar::new(3, 2)));
        assert_eq!(g.max_ratio, Some(Scalar::new(19, 7)));
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(-2, Scalar::from_int(6)), (-1, Scalar::from_int(2)), (0, Scalar::from_int(-1))]);
        assert_eq!(p.to_string(), "6*t^-2 + 2*t^-1 - 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..5, -6i64..7), 0..6)
            .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, Scalar::from_int(c)))))
    }

    proptest! {
        #[test]
        fn product_divides_back(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!(p.mul(&q).div_exact(&q).unwrap(), Some(p));
        }

        #[test]
        fn expansion_obeys_recurrence(num in prop::collection::vec(-5i64..6, 1..4), den in prop::collection::vec(-5i64..6, 2..5)) {
            prop_assume!(den[0] != 0);
            let n = lp(&num);
            prop_assume!(n.min_exp() == Some(0));
            let d = lp(&den);
            let c = expand_rational(&n, &d, 12).unwrap();
            for k in num.len()..=12 {
                let mut s = Scalar::zero();
                for (j, dj) in den.iter().enumerate() {
                    if j <= k {
                        s = &s + &(&Scalar::from_int(*dj) * &c[k - j]);
                    }
                }
                prop_assert!(s.is_zero());
            }
        }

        #[test]
        fn rhs_of_ring_is_ring(c in prop::collection::vec(1i64..6, 1..5)) {
            let mut c = c;
            c[0] = 1;
            let hr = lp(&c);
            prop_assert_eq!(abs_rhs(&hr, &hr).unwrap(), hr);
        }
    }
}
