//! Text syntax for operators, polynomials and linear forms.
//!
//! ```text
//! operator := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)* ['*' symbol] | symbol
//! symbol   := ('D' | 'T' | 'Δ') ['^' uint]
//! factor   := atom ['^' uint]
//! atom     := uint ['/' uint] | 't' | '(' poly ')'
//! poly     := ['-'] pterm (('+' | '-') pterm)*,  pterm := factor ('*' factor)*
//! form     := '[' poly (',' poly)* ']'
//! ```
//!
//! `T` (or `Δ`) is the Euler derivation `t d/dt`. Coefficients always stand
//! to the left of the derivation power. Whitespace is ignored.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::diffop::{Basis, BasisKind, Operator};
use crate::poly::{Poly, Rational};
use crate::siegel::LinearForm;
use crate::{Error, Result};

/// A parsed operator in either basis. `coeffs[i]` multiplies the `i`-th
/// power of the derivation; trailing zeros are stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorExpr {
    pub basis: BasisKind,
    coeffs: Vec<Poly>,
}

impl OperatorExpr {
    pub fn new(basis: BasisKind, mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        OperatorExpr { basis, coeffs }
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Nonzero `(coefficient, power)` pairs in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (&Poly, usize)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c, i))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Converts to a typed operator; the basis must match `B`.
    pub fn to_operator<B: Basis>(&self) -> Result<Operator<B>> {
        if self.basis != B::KIND {
            return Err(Error::MixedBasis { offset: 0 });
        }
        Operator::new(self.coeffs.clone())
    }
}

impl<B: Basis> From<&Operator<B>> for OperatorExpr {
    fn from(op: &Operator<B>) -> Self {
        OperatorExpr::new(B::KIND, op.coeffs().to_vec())
    }
}

/// Coefficients that print without parentheses in front of a derivation:
/// a constant, or `c*t`.
fn is_atomic(c: &Poly) -> bool {
    c.term_count() == 1 && c.deg().finite().is_some_and(|d| d <= 1)
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let sym = self.basis.symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                // Bare polynomial terms carry their own signs.
                let text = c.to_string();
                match (first, text.strip_prefix('-')) {
                    (true, _) => f.write_str(&text)?,
                    (false, Some(rest)) => write!(f, " - {rest}")?,
                    (false, None) => write!(f, " + {text}")?,
                }
                break;
            }
            let neg = c.lead_is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = if neg { -c } else { c.clone() };
            if !mag.is_one() {
                if is_atomic(&mag) {
                    write!(f, "{mag}*")?;
                } else {
                    write!(f, "({mag})*")?;
                }
            }
            if i == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{i}")?;
            }
        }
        Ok(())
    }
}

pub fn print_operator(expr: &OperatorExpr) -> String {
    expr.to_string()
}

pub fn print_linear_form(form: &LinearForm) -> String {
    form.to_string()
}

pub fn parse_operator(text: &str) -> Result<OperatorExpr> {
    let mut p = Parser::new(text);
    let expr = p.operator()?;
    p.expect_end()?;
    Ok(expr)
}

pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser::new(text);
    let poly = p.poly()?;
    p.expect_end()?;
    Ok(poly)
}

pub fn parse_linear_form(text: &str) -> Result<LinearForm> {
    let mut p = Parser::new(text);
    p.expect('[')?;
    if p.eat(']') {
        return Err(Error::EmptyForm);
    }
    let mut comps = vec![p.poly()?];
    while p.eat(',') {
        comps.push(p.poly()?);
    }
    p.expect(']')?;
    p.expect_end()?;
    LinearForm::new(comps)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    basis: Option<BasisKind>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0, basis: None }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        if self.eat(want) {
            Ok(())
        } else {
            match self.peek() {
                Some(c) => self.error(alloc::format!("expected '{want}', found '{c}'")),
                None => self.error(alloc::format!("expected '{want}', found end of input")),
            }
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(alloc::format!("unexpected '{c}'")),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return self.error("expected a number");
        }
        self.pos += digits;
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some('-') {
            return Err(Error::NegativePower { offset: self.pos });
        }
        let at = self.pos;
        let e = self.uint()?;
        u32::try_from(e).map_err(|_| Error::Syntax { offset: at, message: "exponent too large".into() })
    }

    fn is_symbol(c: char) -> bool {
        matches!(c, 'D' | 'T' | 'Δ')
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('t') => {
                self.bump();
                Ok(Poly::t())
            }
            Some('(') => {
                self.bump();
                let inner = self.poly()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.eat('/') { self.uint()? } else { BigInt::from(1) };
                if den == BigInt::from(0) {
                    return self.error("zero denominator");
                }
                Ok(Poly::constant(Rational::new(num, den)))
            }
            Some(c) if Self::is_symbol(c) => self.error("derivation symbol inside a coefficient"),
            Some(c) => self.error(alloc::format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            Ok(base.pow(self.exponent()?))
        } else {
            Ok(base)
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = if self.eat('-') { -self.product()? } else { self.product()? };
        loop {
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn symbol(&mut self) -> Result<(BasisKind, u32)> {
        let at = self.pos;
        let kind = match self.bump() {
            Some('D') => BasisKind::D,
            Some('T') | Some('Δ') => BasisKind::Theta,
            _ => unreachable!("caller checked for a symbol"),
        };
        match self.basis {
            Some(b) if b != kind => return Err(Error::MixedBasis { offset: at }),
            _ => self.basis = Some(kind),
        }
        let power = if self.eat('^') { self.exponent()? } else { 1 };
        Ok((kind, power))
    }

    /// One operator term: coefficient factors, optionally ending in a symbol power.
    fn op_term(&mut self) -> Result<(Poly, usize)> {
        let mut coeff = Poly::one();
        loop {
            if self.peek().is_some_and(Self::is_symbol) {
                let (_, power) = self.symbol()?;
                if self.peek() == Some('*') {
                    return self.error("coefficients must stand left of the derivation");
                }
                return Ok((coeff, power as usize));
            }
            coeff = &coeff * &self.factor()?;
            if !self.eat('*') {
                return Ok((coeff, 0));
            }
        }
    }

    fn operator(&mut self) -> Result<OperatorExpr> {
        let mut coeffs: Vec<Poly> = Vec::new();
        let add = |coeffs: &mut Vec<Poly>, (c, power): (Poly, usize), neg: bool| {
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Poly::zero());
            }
            coeffs[power] = if neg { &coeffs[power] - &c } else { &coeffs[power] + &c };
        };
        let neg = self.eat('-');
        let term = self.op_term()?;
        add(&mut coeffs, term, neg);
        loop {
            let neg = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                break;
            };
            let term = self.op_term()?;
            add(&mut coeffs, term, neg);
        }
        Ok(OperatorExpr::new(self.basis.unwrap_or(BasisKind::Theta), coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn parse_examples() {
        let e = parse_operator("T^2 - t").unwrap();
        assert_eq!(e.basis, BasisKind::Theta);
        assert_eq!(e.coeffs(), &[p(&[0, -1]), p(&[]), p(&[1])]);

        let e = parse_operator("(t)*D^2 - 1").unwrap();
        assert_eq!(e.basis, BasisKind::D);
        assert_eq!(e.coeffs(), &[p(&[-1]), p(&[]), p(&[0, 1])]);

        let e = parse_operator("D^2 - t*D + 1/2").unwrap();
        assert_eq!(
            e.coeffs(),
            &[Poly::constant(rat(1, 2)), p(&[0, -1]), p(&[1])]
        );

        let e = parse_operator("Δ^2 - Δ").unwrap();
        assert_eq!(e, parse_operator("T^2 - T").unwrap());
        assert_eq!(parse_operator("t^2*D^2").unwrap().coeffs(), &[p(&[]), p(&[]), p(&[0, 0, 1])]);
    }

    #[test]
    fn print_examples() {
        assert_eq!(parse_operator("T^2 - t").unwrap().to_string(), "T^2 - t");
        let e = OperatorExpr::new(BasisKind::D, vec![p(&[]), p(&[1, 0, 1])]);
        assert_eq!(e.to_string(), "(t^2 + 1)*D");
        assert_eq!(OperatorExpr::new(BasisKind::D, vec![]).to_string(), "0");
        let e = OperatorExpr::new(BasisKind::D, vec![p(&[]), p(&[0, 1]), p(&[0, 0, 1])]);
        assert_eq!(e.to_string(), "(t^2)*D^2 + t*D");
        let e = OperatorExpr::new(BasisKind::D, vec![p(&[1, 0, 2]), p(&[0, -3]), p(&[-1, 0, -1])]);
        assert_eq!(e.to_string(), "-(t^2 + 1)*D^2 - 3*t*D + 2*t^2 + 1");
        assert_eq!(parse_operator(&e.to_string()).unwrap(), e);
        let e = OperatorExpr::new(BasisKind::Theta, vec![p(&[0, -1]), p(&[]), p(&[]), p(&[1])]);
        assert_eq!(e.to_string(), "T^3 - t");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_operator("D^2 + T"), Err(Error::MixedBasis { offset: 6 })));
        assert!(matches!(parse_operator("D^-1"), Err(Error::NegativePower { offset: 2 })));
        assert!(matches!(parse_operator("D^2 +"), Err(Error::Syntax { offset: 5, .. })));
        assert!(matches!(parse_operator("D*t"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_operator("2 $ D"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_operator("1/0*D"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn poly_grammar() {
        assert_eq!(parse_poly("(t+1)^2").unwrap(), p(&[1, 2, 1]));
        assert_eq!(parse_poly("-t^2 + 3*t - 1/2").unwrap(), Poly::from_coeffs(vec![rat(-1, 2), int(3), int(-1)]));
        assert_eq!(parse_poly("2*(t - 1)*t").unwrap(), p(&[0, -2, 2]));
    }

    #[test]
    fn linear_forms() {
        let f = parse_linear_form("[1, 0]").unwrap();
        assert_eq!(f.comps(), &[p(&[1]), p(&[])]);
        let f = parse_linear_form("[t^2+1, -t, 1/3]").unwrap();
        assert_eq!(f.comps(), &[p(&[1, 0, 1]), p(&[0, -1]), Poly::constant(rat(1, 3))]);
        assert_eq!(f.to_string(), "[t^2 + 1, -t, 1/3]");
        assert_eq!(parse_linear_form("[]"), Err(Error::EmptyForm));
        assert!(matches!(parse_linear_form("[1, 0"), Err(Error::Syntax { offset: 5, .. })));
    }
}
