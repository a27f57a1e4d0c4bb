//! Buchberger's criterion for a fixed generating set under the 3 × n!
//! monomial orders built from degrevlex, deglex and lex.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{monomials_of_degree, AlgebraSpec, GradedAlgebra};
use crate::expr::{Monomial, PolyExpr};
use crate::hilbert::HilbertFunction;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Degrevlex,
    Deglex,
    Lex,
}

impl OrderKind {
    pub const ALL: [OrderKind; 3] = [OrderKind::Degrevlex, OrderKind::Deglex, OrderKind::Lex];

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "degrevlex" | "grevlex" => Some(OrderKind::Degrevlex),
            "deglex" | "grlex" => Some(OrderKind::Deglex),
            "lex" => Some(OrderKind::Lex),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Degrevlex => "degrevlex",
            OrderKind::Deglex => "deglex",
            OrderKind::Lex => "lex",
        }
    }
}

/// `precedence[0]` is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; precedence.len()];
        for &p in &precedence {
            if p >= seen.len() || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(MonomialOrder { kind, precedence })
    }

    /// Variables ranked in their given order.
    pub fn standard(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn all(nvars: usize) -> Vec<MonomialOrder> {
        let perms = permutations(nvars);
        OrderKind::ALL
            .iter()
            .flat_map(|&kind| {
                perms.iter().map(move |p| MonomialOrder {
                    kind,
                    precedence: p.clone(),
                })
            })
            .collect()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let lex = || {
            for &v in &self.precedence {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        };
        let deg = |m: &[u32]| m.iter().sum::<u32>();
        match self.kind {
            OrderKind::Lex => lex(),
            OrderKind::Deglex => deg(a).cmp(&deg(b)).then_with(lex),
            OrderKind::Degrevlex => deg(a).cmp(&deg(b)).then_with(|| {
                for &v in self.precedence.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn label<S: AsRef<str>>(&self, variables: &[S]) -> String {
        let names: Vec<&str> = self.precedence.iter().map(|&v| variables[v].as_ref()).collect();
        format!("{} {}", self.kind.name(), names.join(">"))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Terms sorted from the leading one down.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<(Monomial, Scalar)>);

impl Poly {
    fn from_expr(e: &PolyExpr, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> =
            e.rational_terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly(terms)
    }

    fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.0.first()
    }

    /// `self - c · t^m · other`.
    fn sub_scaled(&self, c: &Scalar, m: &[u32], other: &Poly, order: &MonomialOrder) -> Poly {
        let shifted = other
            .0
            .iter()
            .map(|(mono, x)| (mono.iter().zip(m).map(|(a, b)| a + b).collect::<Vec<_>>(), x * c));
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut a = self.0.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => a.next().unwrap(),
                (None, Some(_)) => {
                    let (m, x) = b.next().unwrap();
                    (m, -&x)
                }
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Greater => a.next().unwrap(),
                    Ordering::Less => {
                        let (m, x) = b.next().unwrap();
                        (m, -&x)
                    }
                    Ordering::Equal => {
                        let (m, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        (m, &x - &y)
                    }
                },
            };
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        Poly(out)
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn quotient(b: &[u32], a: &[u32]) -> Vec<u32> {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Top-reduces `p` by `basis` until it vanishes or its leading term is
/// divisible by no leading monomial.
fn top_reduce(mut p: Poly, basis: &[Poly], order: &MonomialOrder) -> Poly {
    'outer: while let Some((m, c)) = p.lead().cloned() {
        for g in basis {
            let (gm, gc) = g.lead().unwrap();
            if divides(gm, &m) {
                p = p.sub_scaled(&(&c / gc), &quotient(&m, gm), g, order);
                continue 'outer;
            }
        }
        break;
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GroebnerCheck {
    pub order: String,
    pub is_groebner: bool,
    /// First pair, in index order, whose S-polynomial does not reduce to zero.
    pub failing_pair: Option<(usize, usize)>,
    pub leading_monomials: Vec<String>,
}

fn render_monomial<S: AsRef<str>>(m: &[u32], variables: &[S]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.iter().enumerate() {
        for _ in 0..e {
            parts.push(variables[v].as_ref());
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn spoly_reduce_check(spec: &AlgebraSpec, order: &MonomialOrder) -> GroebnerCheck {
    let basis: Vec<Poly> = spec
        .relations
        .iter()
        .map(|r| Poly::from_expr(&r.resolve_alpha(&spec.alpha), order))
        .filter(|p| p.lead().is_some())
        .collect();
    let mut failing_pair = None;
    'pairs: for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let (mi, ci) = basis[i].lead().unwrap();
            let (mj, cj) = basis[j].lead().unwrap();
            let l = lcm(mi, mj);
            // coprime leading monomials always reduce to zero
            if l.iter().zip(mi).zip(mj).all(|((l, a), b)| *l == a + b) {
                continue;
            }
            let zero = Poly(Vec::new());
            let s = zero
                .sub_scaled(&ci.inv(), &quotient(&l, mi), &basis[i], order)
                .sub_scaled(&-&cj.inv(), &quotient(&l, mj), &basis[j], order);
            if top_reduce(s, &basis, order).lead().is_some() {
                failing_pair = Some((i, j));
                break 'pairs;
            }
        }
    }
    GroebnerCheck {
        order: order.label(&spec.variables),
        is_groebner: failing_pair.is_none(),
        failing_pair,
        leading_monomials: basis
            .iter()
            .map(|p| render_monomial(&p.lead().unwrap().0, &spec.variables))
            .collect(),
    }
}

impl fmt::Display for GroebnerCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.failing_pair {
            None => write!(f, "{}: Groebner basis", self.order),
            Some((i, j)) => write!(f, "{}: S({i},{j}) does not reduce to 0", self.order),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OrderSearch {
    pub checked: usize,
    pub successful: Vec<String>,
    pub evidence_found: bool,
}

/// Runs the criterion under every kind and every variable precedence.
pub fn search_orders(spec: &AlgebraSpec) -> OrderSearch {
    let orders = MonomialOrder::all(spec.variables.len());
    let results: Vec<GroebnerCheck> = orders.par_iter().map(|o| spoly_reduce_check(spec, o)).collect();
    let successful: Vec<String> = results
        .into_iter()
        .filter(|r| r.is_groebner)
        .map(|r| r.order)
        .collect();
    OrderSearch {
        checked: orders.len(),
        evidence_found: !successful.is_empty(),
        successful,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HilbertCrossCheck {
    pub standard_monomials: HilbertFunction,
    pub linear_algebra: HilbertFunction,
    pub agree: bool,
}

/// Counts standard monomials of the initial ideal degree by degree over the
/// algebra's computed range, one degree past the top when it is finite.
pub fn hilbert_cross_check(spec: &AlgebraSpec, alg: &GradedAlgebra, order: &MonomialOrder) -> HilbertCrossCheck {
    let leads: Vec<Monomial> = spec
        .relations
        .iter()
        .filter_map(|r| Poly::from_expr(&r.resolve_alpha(&spec.alpha), order).lead().map(|t| t.0.clone()))
        .collect();
    let n = spec.variables.len();
    let end = alg.computed_degrees() + usize::from(alg.is_finite());
    let standard = HilbertFunction::from_pairs((0..end).map(|d| {
        let count = monomials_of_degree(n, d as u32)
            .iter()
            .filter(|m| !leads.iter().any(|l| divides(l, m)))
            .count();
        (d as i64, count)
    }));
    let linear = alg.hilbert();
    HilbertCrossCheck {
        agree: standard == linear,
        standard_monomials: standard,
        linear_algebra: linear,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(vars: &[&str], rels: &[&str]) -> AlgebraSpec {
        AlgebraSpec::parse(vars, rels, Scalar::from_int(2), 4).unwrap()
    }

    #[test]
    fn order_comparisons() {
        let o = MonomialOrder::standard(OrderKind::Degrevlex, 3);
        // x*z < y^2 in degrevlex x>y>z
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        let o = MonomialOrder::standard(OrderKind::Deglex, 3);
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
        let o = MonomialOrder::standard(OrderKind::Lex, 2);
        assert_eq!(o.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
        let o = MonomialOrder::new(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(o.cmp(&[1, 0], &[0, 5]), Ordering::Less);
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_none());
    }

    #[test]
    fn order_count() {
        assert_eq!(MonomialOrder::all(4).len(), 72);
        assert_eq!(permutations(3).len(), 6);
    }

    #[test]
    fn monomial_ideal_is_groebner() {
        let s = spec(&["x", "y"], &["x*x", "x*y"]);
        for kind in OrderKind::ALL {
            assert!(spoly_reduce_check(&s, &MonomialOrder::standard(kind, 2)).is_groebner);
        }
    }

    #[test]
    fn s_pair_leaves_a_cube() {
        let s = spec(&["x", "y"], &["x*x - y*y", "x*y"]);
        let r = spoly_reduce_check(&s, &MonomialOrder::standard(OrderKind::Degrevlex, 2));
        assert!(!r.is_groebner);
        assert_eq!(r.failing_pair, Some((0, 1)));
    }

    #[test]
    fn dual_numbers_cross_check() {
        let s = spec(&["x"], &["x*x"]);
        let alg = GradedAlgebra::build(&s).unwrap();
        let c = hilbert_cross_check(&s, &alg, &MonomialOrder::standard(OrderKind::Lex, 1));
        assert!(c.agree);
        assert_eq!(c.standard_monomials, HilbertFunction::from_dims(0, &[1, 1]));
    }
}
