//! Homogeneous polynomial expressions over named degree-one variables.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | 'alpha' ('^' signed-int)? | variable
//! ```
//!
//! Coefficients are Laurent polynomials in the symbolic parameter `alpha`
//! until [`PolyExpr::resolve_alpha`] substitutes a value.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector over the declared variables.
pub type Monomial = Vec<u32>;

/// Coefficient: alpha power -> rational factor. No zero entries.
pub type AlphaCoeff = BTreeMap<i32, Scalar>;

pub const ALPHA: &str = "alpha";

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyExpr {
    nvars: usize,
    terms: BTreeMap<Monomial, AlphaCoeff>,
}

impl PolyExpr {
    pub fn zero(nvars: usize) -> Self {
        PolyExpr {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &AlphaCoeff)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: Monomial, alpha_pow: i32, c: Scalar) {
        assert_eq!(mono.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let coeff = self.terms.entry(mono.clone()).or_default();
        let slot = coeff.entry(alpha_pow).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            coeff.remove(&alpha_pow);
        }
        if coeff.is_empty() {
            self.terms.remove(&mono);
        }
    }

    /// Parses `text` over the given variables.
    pub fn parse(text: &str, variables: &[&str]) -> Result<PolyExpr> {
        Parser::new(text, variables)?.expr()
    }

    /// Substitutes a value for `alpha`; the result only has alpha power 0.
    pub fn resolve_alpha(&self, alpha: &Scalar) -> PolyExpr {
        assert!(!alpha.is_zero(), "alpha must be nonzero");
        let mut out = PolyExpr::zero(self.nvars);
        for (mono, coeff) in &self.terms {
            for (k, c) in coeff {
                out.add_term(mono.clone(), 0, c * &alpha.pow(*k));
            }
        }
        out
    }

    /// Rational coefficients after resolution. Panics if alpha is unresolved.
    pub fn rational_terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().map(|(m, c)| {
            assert!(
                c.len() == 1 && c.contains_key(&0),
                "alpha must be resolved first"
            );
            (m, &c[&0])
        })
    }

    /// Common total degree of all monomials.
    pub fn homogeneous_degree(&self) -> Result<i64> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>() as i64);
        let first = degs.next().ok_or(Error::ZeroExpression)?;
        for d in degs {
            if d != first {
                return Err(Error::Inhomogeneous(first, d));
            }
        }
        Ok(first)
    }

    /// Renders the expression in the input grammar.
    pub fn display<'a>(&'a self, variables: &'a [&'a str]) -> impl fmt::Display + 'a {
        Render {
            expr: self,
            vars: variables,
        }
    }
}

struct Render<'a> {
    expr: &'a PolyExpr,
    vars: &'a [&'a str],
}

impl fmt::Display for Render<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expr.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.expr.terms {
            for (k, c) in coeff {
                let neg = c.is_negative();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if neg { '-' } else { '+' })?;
                }
                first = false;
                let abs = if neg { -c } else { c.clone() };
                let mut factors: Vec<String> = Vec::new();
                let has_rest = *k != 0 || mono.iter().any(|&e| e > 0);
                if !abs.is_one() || !has_rest {
                    factors.push(abs.to_string());
                }
                match *k {
                    0 => {}
                    1 => factors.push(ALPHA.to_string()),
                    k => factors.push(format!("{ALPHA}^{k}")),
                }
                for (v, &e) in mono.iter().enumerate() {
                    for _ in 0..e {
                        factors.push(self.vars[v].to_string());
                    }
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a [&'a str],
    end: usize,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            c if c.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a [&'a str]) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            vars,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn syntax<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut out = PolyExpr::zero(self.vars.len());
        let mut sign = Scalar::one();
        match self.peek() {
            Some(Tok::Minus) => {
                sign = Scalar::from_int(-1);
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (mono, k, c) = self.term()?;
            out.add_term(mono, k, &sign * &c);
            match self.peek() {
                None => break,
                Some(Tok::Plus) => sign = Scalar::one(),
                Some(Tok::Minus) => sign = Scalar::from_int(-1),
                Some(_) => return self.syntax("expected `+`, `-`, or `*`"),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, i32, Scalar)> {
        let mut mono = vec![0u32; self.vars.len()];
        let mut alpha_pow = 0i32;
        let mut coeff = Scalar::one();
        loop {
            self.factor(&mut mono, &mut alpha_pow, &mut coeff)?;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((mono, alpha_pow, coeff))
    }

    fn factor(&mut self, mono: &mut Monomial, alpha_pow: &mut i32, coeff: &mut Scalar) -> Result<()> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut value: Scalar = n.parse().map_err(|_| Error::Syntax {
                    pos: self.offset(),
                    msg: "bad number".into(),
                })?;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let Some(Tok::Num(d)) = self.peek().cloned() else {
                        return self.syntax("expected denominator after `/`");
                    };
                    self.pos += 1;
                    let d: Scalar = d.parse().map_err(|_| Error::DivisionByZero)?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    value = &value / &d;
                }
                *coeff *= &value;
                Ok(())
            }
            Some(Tok::Ident(name)) if name == ALPHA => {
                self.pos += 1;
                let mut e = 1i32;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let neg = match self.peek() {
                        Some(Tok::Minus) => {
                            self.pos += 1;
                            true
                        }
                        Some(Tok::Plus) => {
                            self.pos += 1;
                            false
                        }
                        _ => false,
                    };
                    let Some(Tok::Num(n)) = self.peek().cloned() else {
                        return self.syntax("expected integer exponent after `^`");
                    };
                    self.pos += 1;
                    e = n.parse().or_else(|_| self.syntax("exponent too large"))?;
                    if neg {
                        e = -e;
                    }
                }
                *alpha_pow += e;
                Ok(())
            }
            Some(Tok::Ident(name)) => {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
                self.pos += 1;
                if self.peek() == Some(&Tok::Caret) {
                    return self.syntax("exponents are only allowed on `alpha`");
                }
                mono[idx] += 1;
                Ok(())
            }
            Some(_) => self.syntax("expected a number, `alpha`, or a variable"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const VARS: [&str; 4] = ["V", "X", "Y", "Z"];

    fn p(s: &str) -> PolyExpr {
        PolyExpr::parse(s, &VARS).unwrap()
    }

    #[test]
    fn relation_with_alpha() {
        let e = p("V*X + alpha*X*Z");
        let terms: Vec<_> = e.terms().collect();
        assert_eq!(terms.len(), 2);
        let vx = terms.iter().find(|(m, _)| **m == vec![1, 1, 0, 0]).unwrap();
        assert_eq!(vx.1, &AlphaCoeff::from([(0, Scalar::one())]));
        let xz = terms.iter().find(|(m, _)| **m == vec![0, 1, 0, 1]).unwrap();
        assert_eq!(xz.1, &AlphaCoeff::from([(1, Scalar::one())]));
    }

    #[test]
    fn repeated_factor_is_square() {
        let e = p("V*Y - X*X").resolve_alpha(&Scalar::from_int(2));
        let terms: BTreeMap<_, _> = e.rational_terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        assert_eq!(terms[&vec![1, 0, 1, 0]], Scalar::one());
        assert_eq!(terms[&vec![0, 2, 0, 0]], Scalar::from_int(-1));
    }

    #[test]
    fn negative_alpha_exponent() {
        let e = PolyExpr::parse("alpha^-3 * x", &["x"]).unwrap();
        let r = e.resolve_alpha(&Scalar::from_int(2));
        let t: Vec<_> = r.rational_terms().collect();
        assert_eq!(t, vec![(&vec![1], &Scalar::new(1, 8))]);
    }

    #[test]
    fn resolve_alpha_values() {
        let one = PolyExpr::parse("alpha^0*x", &["x"]).unwrap();
        assert_eq!(one.resolve_alpha(&Scalar::from_int(7)).rational_terms().next().unwrap().1, &Scalar::one());
        let quarter = PolyExpr::parse("alpha^-2*x", &["x"]).unwrap();
        assert_eq!(
            quarter.resolve_alpha(&Scalar::from_int(2)).rational_terms().next().unwrap().1,
            &Scalar::new(1, 4)
        );
        let big = PolyExpr::parse("alpha^5*x", &["x"]).unwrap();
        assert_eq!(
            big.resolve_alpha(&Scalar::from_int(3)).rational_terms().next().unwrap().1,
            &Scalar::from_int(243)
        );
    }

    #[test]
    fn degrees() {
        assert_eq!(p("V*X + Y*Y").homogeneous_degree().unwrap(), 2);
        assert_eq!(p("X").homogeneous_degree().unwrap(), 1);
        assert!(matches!(p("V + X*Z").homogeneous_degree(), Err(Error::Inhomogeneous(..))));
        assert_eq!(p("X - X").homogeneous_degree(), Err(Error::ZeroExpression));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            PolyExpr::parse("V*W", &VARS),
            Err(Error::UnknownIdentifier("W".into()))
        );
        assert!(matches!(PolyExpr::parse("V X", &VARS), Err(Error::Syntax { .. })));
        assert!(matches!(PolyExpr::parse("V*", &VARS), Err(Error::Syntax { .. })));
        assert!(matches!(PolyExpr::parse("X^2", &VARS), Err(Error::Syntax { .. })));
        assert!(matches!(PolyExpr::parse("V + + X", &VARS), Err(Error::Syntax { .. })));
        assert_eq!(PolyExpr::parse("1/0*V", &VARS), Err(Error::DivisionByZero));
        // variable names are case-sensitive
        assert_eq!(PolyExpr::parse("v", &VARS), Err(Error::UnknownIdentifier("v".into())));
    }

    #[test]
    fn leading_sign_and_rationals() {
        assert_eq!(p("-Y"), p("0 - Y"));
        assert_eq!(p("3/6*X"), p("1/2*X"));
        assert_eq!(p("2*alpha*X + 3*X"), p("3*X + alpha*2*X"));
    }

    #[test]
    fn display_uses_grammar() {
        let e = p("-alpha^-1*X*Z + 3/4*V*V");
        let shown = e.display(&VARS).to_string();
        assert_eq!(PolyExpr::parse(&shown, &VARS).unwrap(), e);
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let factor = prop_oneof![
            (1i64..20, 1i64..5).prop_map(|(a, b)| format!("{a}/{b}")),
            (-4i32..5).prop_map(|k| format!("alpha^{k}")),
            prop::sample::select(VARS.to_vec()).prop_map(|s| s.to_string()),
        ];
        let term = prop::collection::vec(factor, 1..5).prop_map(|f| f.join("*"));
        (prop::collection::vec((term, any::<bool>()), 1..6)).prop_map(|ts| {
            let mut s = String::new();
            for (i, (t, neg)) in ts.into_iter().enumerate() {
                if i > 0 {
                    s.push_str(if neg { " - " } else { " + " });
                } else if neg {
                    s.push('-');
                }
                s.push_str(&t);
            }
            s
        })
    }

    proptest! {
        #[test]
        fn print_parse_fixed_point(src in arb_expr()) {
            let e = p(&src);
            let printed = e.display(&VARS).to_string();
            let again = p(&printed);
            prop_assert_eq!(&again, &e);
            prop_assert_eq!(again.display(&VARS).to_string(), printed);
        }

        #[test]
        fn addition_commutes(a in arb_expr(), b in arb_expr()) {
            let (a, b) = (a.trim_start_matches('-'), b.trim_start_matches('-'));
            let ab = p(&format!("{a} + {b}"));
            let ba = p(&format!("{b} + {a}"));
            prop_assert_eq!(ab, ba);
        }
    }
}
