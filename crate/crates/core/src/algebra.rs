//! Standard graded algebras `k[x_1..x_n]/I` built degree by degree.
//!
//! Degree `d` of the ideal is the span of `m * f` over the generators `f` and
//! monomials `m` of complementary degree. Monomials are ordered by descending
//! degree-reverse-lexicographic order in the declared variable order, so the
//! pivots of the reduced ideal slice are leading monomials and the remaining
//! (standard) monomials form the basis in that degree.

use std::collections::{BTreeMap, HashMap};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::expr::{Monomial, PolyExpr, ALPHA};
use crate::hilbert::HilbertFunction;
use crate::linalg::Echelon;
use crate::scalar::Scalar;

pub const DEFAULT_DEGREE_BOUND: usize = 6;

/// Input for [`GradedAlgebra::build`].
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub variables: Vec<String>,
    pub relations: Vec<PolyExpr>,
    pub alpha: Scalar,
    pub degree_bound: usize,
}

impl AlgebraSpec {
    /// Parses relation strings against `variables`.
    pub fn parse<S: AsRef<str>>(
        variables: &[S],
        relations: &[S],
        alpha: Scalar,
        degree_bound: usize,
    ) -> Result<Self> {
        let names: Vec<&str> = variables.iter().map(AsRef::as_ref).collect();
        for (i, v) in names.iter().enumerate() {
            if *v == ALPHA {
                return Err(Error::InvalidRing("`alpha` cannot be a variable".into()));
            }
            if names[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        let relations = relations
            .iter()
            .map(|r| PolyExpr::parse(r.as_ref(), &names))
            .collect::<Result<_>>()?;
        Ok(AlgebraSpec {
            variables: names.iter().map(|s| s.to_string()).collect(),
            relations,
            alpha,
            degree_bound,
        })
    }
}

/// Degree-reverse-lexicographic comparison of equal-length exponent vectors.
pub fn degrevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// All monomials of total degree `d` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| degrevlex_cmp(b, a));
    out
}

/// An element as a map from degree to coordinates in that degree's basis.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraElement {
    parts: BTreeMap<usize, Vec<Scalar>>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Homogeneous element with coordinates `coords` in degree `d`.
    pub fn homogeneous(d: usize, coords: Vec<Scalar>) -> Self {
        let mut e = Self::zero();
        if coords.iter().any(|c| !c.is_zero()) {
            e.parts.insert(d, coords);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (usize, &[Scalar])> {
        self.parts.iter().map(|(&d, v)| (d, v.as_slice()))
    }

    pub fn part(&self, d: usize) -> Option<&[Scalar]> {
        self.parts.get(&d).map(Vec::as_slice)
    }

    /// `Some(d)` if the element is nonzero and lives in a single degree.
    pub fn degree(&self) -> Option<usize> {
        if self.parts.len() == 1 {
            self.parts.keys().next().copied()
        } else {
            None
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (&d, v) in &other.parts {
            out.add_part(d, v, &Scalar::one());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            parts: self
                .parts
                .iter()
                .map(|(&d, v)| (d, v.iter().map(|x| x * c).collect()))
                .collect(),
        }
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    /// `self += c * v` in degree `d`.
    pub(crate) fn add_part(&mut self, d: usize, v: &[Scalar], c: &Scalar) {
        let slot = self
            .parts
            .entry(d)
            .or_insert_with(|| vec![Scalar::zero(); v.len()]);
        for (s, x) in slot.iter_mut().zip(v) {
            if !x.is_zero() {
                s.add_mul(x, c);
            }
        }
        if slot.iter().all(Scalar::is_zero) {
            self.parts.remove(&d);
        }
    }
}

/// Coefficient of `1`; zero exactly when `a` lies in the maximal ideal.
pub fn degree_zero_part(a: &AlgebraElement) -> Scalar {
    a.part(0).map_or_else(Scalar::zero, |v| v[0].clone())
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    variables: Vec<String>,
    alpha: Scalar,
    /// Standard monomials per computed degree.
    basis: Vec<Vec<Monomial>>,
    /// Normal forms of every monomial in each computed degree.
    normal_forms: Vec<HashMap<Monomial, Vec<Scalar>>>,
    /// `mult[d1][d2][i * dim(d2) + j]` = product of basis elements, in degree `d1 + d2`.
    mult: Vec<Vec<Vec<Vec<Scalar>>>>,
    top_degree: Option<usize>,
}

impl GradedAlgebra {
    pub fn build(spec: &AlgebraSpec) -> Result<GradedAlgebra> {
        let n = spec.variables.len();
        if spec.alpha.is_zero() {
            return Err(Error::InvalidRing("alpha must be nonzero".into()));
        }
        let mut relations = Vec::with_capacity(spec.relations.len());
        for r in &spec.relations {
            if r.nvars() != n {
                return Err(Error::InvalidRing("relation over the wrong variables".into()));
            }
            let r = r.resolve_alpha(&spec.alpha);
            if r.is_zero() {
                continue;
            }
            let d = r.homogeneous_degree()?;
            if d == 0 {
                return Err(Error::InvalidRing("a nonzero constant relation gives the zero ring".into()));
            }
            relations.push((d as usize, r));
        }
        let max_rel = relations.iter().map(|r| r.0).max().unwrap_or(0);
        if spec.degree_bound < max_rel {
            return Err(Error::InvalidRing(format!(
                "degree bound {} is below the relation degree {max_rel}",
                spec.degree_bound
            )));
        }

        let mut basis = Vec::new();
        let mut normal_forms = Vec::new();
        let mut top_degree = None;
        for d in 0..=spec.degree_bound {
            let monos = monomials_of_degree(n, d as u32);
            let index: HashMap<&Monomial, usize> =
                monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut ech = Echelon::new(monos.len());
            for (e, rel) in &relations {
                if *e > d {
                    continue;
                }
                for m in monomials_of_degree(n, (d - e) as u32) {
                    let mut row = vec![Scalar::zero(); monos.len()];
                    for (rm, c) in rel.rational_terms() {
                        let prod: Monomial = rm.iter().zip(&m).map(|(a, b)| a + b).collect();
                        row[index[&prod]] += c;
                    }
                    ech.insert(&row);
                }
            }
            let (rows, pivots) = ech.into_reduced();
            let mut is_pivot = vec![false; monos.len()];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            let free: Vec<usize> = (0..monos.len()).filter(|&c| !is_pivot[c]).collect();
            let free_pos: HashMap<usize, usize> =
                free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let mut nf = HashMap::with_capacity(monos.len());
            for (c, m) in monos.iter().enumerate() {
                let mut v = vec![Scalar::zero(); free.len()];
                if let Some(&i) = free_pos.get(&c) {
                    v[i] = Scalar::one();
                }
                nf.insert(m.clone(), v);
            }
            // leading monomial = minus the tail of its reduced row
            for (row, &p) in rows.iter().zip(&pivots) {
                let v = nf.get_mut(&monos[p]).unwrap();
                for (c, x) in row {
                    if *c != p {
                        v[free_pos[c]] = -x;
                    }
                }
            }
            if free.is_empty() {
                top_degree = Some(d.saturating_sub(1));
                break;
            }
            basis.push(free.iter().map(|&c| monos[c].clone()).collect());
            normal_forms.push(nf);
        }

        let mut alg = GradedAlgebra {
            variables: spec.variables.clone(),
            alpha: spec.alpha.clone(),
            basis,
            normal_forms,
            mult: Vec::new(),
            top_degree,
        };
        alg.mult = alg.build_mult_table();
        Ok(alg)
    }

    fn build_mult_table(&self) -> Vec<Vec<Vec<Vec<Scalar>>>> {
        let computed = self.basis.len();
        (0..computed)
            .map(|d1| {
                (0..computed)
                    .map(|d2| {
                        let mut cells = Vec::new();
                        for m1 in &self.basis[d1] {
                            for m2 in &self.basis[d2] {
                                let prod: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                                let d = d1 + d2;
                                let v = if d < computed {
                                    self.normal_forms[d][&prod].clone()
                                } else {
                                    // beyond the top degree (or beyond the window)
                                    Vec::new()
                                };
                                cells.push(v);
                            }
                        }
                        cells
                    })
                    .collect()
            })
            .collect()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    /// Largest degree with a nonzero component, or an error if the degree
    /// bound was reached before the algebra vanished.
    pub fn top_degree(&self) -> Result<usize> {
        self.top_degree
            .ok_or(Error::DegreeBoundTooSmall(self.basis.len().saturating_sub(1)))
    }

    pub fn is_finite(&self) -> bool {
        self.top_degree.is_some()
    }

    /// Number of computed degrees (`top_degree + 1` when finite).
    pub fn computed_degrees(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        self.basis.get(d as usize).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        self.basis.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn hilbert(&self) -> HilbertFunction {
        HilbertFunction::from_pairs(self.basis.iter().enumerate().map(|(d, b)| (d as i64, b.len())))
    }

    /// Dimensions for degrees `0..=up_to`, zero-padded.
    pub fn dims(&self, up_to: usize) -> Vec<usize> {
        (0..=up_to).map(|d| self.dim(d as i64)).collect()
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d >= self.basis.len() && self.top_degree.is_none() {
            Err(Error::DegreeOutOfRange(d as i64))
        } else {
            Ok(())
        }
    }

    /// Product of basis element `i` of degree `d1` and `j` of degree `d2`,
    /// as coordinates in degree `d1 + d2` (empty when that degree vanishes).
    pub fn basis_product(&self, d1: usize, i: usize, d2: usize, j: usize) -> &[Scalar] {
        &self.mult[d1][d2][i * self.basis[d2].len() + j]
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::homogeneous(0, vec![Scalar::one()])
    }

    pub fn variable(&self, i: usize) -> AlgebraElement {
        let mut m = vec![0; self.variables.len()];
        m[i] = 1;
        self.monomial(&m).expect("degree one is always computed")
    }

    pub fn variable_by_name(&self, name: &str) -> Option<AlgebraElement> {
        self.variables.iter().position(|v| v == name).map(|i| self.variable(i))
    }

    /// Normal form of a monomial.
    pub fn monomial(&self, m: &Monomial) -> Result<AlgebraElement> {
        let d = m.iter().sum::<u32>() as usize;
        self.check_degree(d)?;
        Ok(match self.normal_forms.get(d) {
            Some(nf) => AlgebraElement::homogeneous(d, nf[m].clone()),
            None => AlgebraElement::zero(),
        })
    }

    /// Evaluates an expression (with `alpha` substituted) in the algebra.
    pub fn element(&self, e: &PolyExpr) -> Result<AlgebraElement> {
        let e = e.resolve_alpha(&self.alpha);
        let mut out = AlgebraElement::zero();
        for (m, c) in e.rational_terms() {
            out = out.add(&self.monomial(m)?.scale(c));
        }
        Ok(out)
    }

    /// Parses and evaluates an expression over this algebra's variables.
    pub fn parse_element(&self, text: &str) -> Result<AlgebraElement> {
        let names: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        self.element(&PolyExpr::parse(text, &names)?)
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (d1, u) in a.parts() {
            for (d2, w) in b.parts() {
                let d = d1 + d2;
                self.check_degree(d)?;
                if d >= self.basis.len() {
                    continue;
                }
                let mut acc = vec![Scalar::zero(); self.basis[d].len()];
                for (i, x) in u.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in w.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let xy = x * y;
                        for (s, p) in acc.iter_mut().zip(self.basis_product(d1, i, d2, j)) {
                            if !p.is_zero() {
                                s.add_mul(&xy, p);
                            }
                        }
                    }
                }
                out.add_part(d, &acc, &Scalar::one());
            }
        }
        Ok(out)
    }

    /// Human-readable rendering such as `2*v*x - y*z`, using lowercase names.
    pub fn render(&self, a: &AlgebraElement) -> String {
        let mut terms = Vec::new();
        for (d, v) in a.parts() {
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mono: Vec<String> = self.basis[d][i]
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &e)| std::iter::repeat(self.variables[k].to_lowercase()).take(e as usize))
                    .collect();
                let body = if mono.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    mono.join("*")
                } else if *c == Scalar::from_int(-1) {
                    format!("-{}", mono.join("*"))
                } else {
                    format!("{c}*{}", mono.join("*"))
                };
                terms.push(body);
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}
