//! Recursive-descent parser for polynomials and brackettings.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := rational ('*' factor)* | factor (('*')? factor)*
//! factor  := gen ('^' nat)?
//! gen     := ("phi" | "psi") '[' nat ']' '(' label (',' label)* ')'
//! label   := 'x' nat
//! bracket := '[' slot ('|' slot)* ']'
//! slot    := factor (('*')? factor)*
//! ```
//!
//! `phi` selects the commutative algebra and `psi` the noncommutative one;
//! one input cannot mix them. Without an explicit profile the smallest
//! covering profile is inferred.

use std::fmt;

use lce_core::{ArityProfile, Bracketting, Generator, Mode, Monomial, Polynomial, Rational};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    mode: Option<Mode>,
    generators: Vec<(Generator, usize)>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, mode: Option<Mode>) -> Self {
        Parser {
            text,
            pos: 0,
            mode,
            generators: Vec::new(),
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let before = &self.text[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(pos, |i| pos - i - 1) + 1;
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected '{c}'")))
        }
    }

    fn unexpected(&mut self, what: &str) -> ParseError {
        let found = self.found();
        self.error(format!("{what}{found}"))
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!(", found '{c}'"),
            None => ", found end of input".to_string(),
        }
    }

    fn at_generator(&mut self) -> bool {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        rest.starts_with("phi") || rest.starts_with("psi")
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn nat(&mut self) -> PResult<u64> {
        self.skip_ws();
        let digits: String = self.text[self.pos..]
            .chars()
            .take_while(char::is_ascii_digit)
            .collect();
        if digits.is_empty() {
            return Err(self.unexpected("expected a natural number"));
        }
        let value = digits.parse().map_err(|_| self.error("number too large"))?;
        self.pos += digits.len();
        Ok(value)
    }

    fn rational(&mut self) -> PResult<Rational> {
        let start = self.pos;
        let num = self.nat()?;
        if self.eat('/') {
            let den = self.nat()?;
            if den == 0 {
                return Err(self.error_at(start, "zero denominator"));
            }
            Ok(Rational::new(num.into(), den.into()))
        } else {
            Ok(Rational::from_integer(num.into()))
        }
    }

    fn generator(&mut self) -> PResult<Generator> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[self.pos..];
        let mode = if rest.starts_with("phi") {
            Mode::Commutative
        } else if rest.starts_with("psi") {
            Mode::Noncommutative
        } else {
            return Err(self.unexpected("expected phi or psi"));
        };
        match self.mode {
            Some(m) if m != mode => {
                return Err(
                    self.error("cannot mix phi (commutative) and psi (noncommutative) symbols")
                );
            }
            _ => self.mode = Some(mode),
        }
        self.pos += 3;
        self.expect('[')?;
        let field = self.nat()?;
        self.expect(']')?;
        self.expect('(')?;
        let mut labels = Vec::new();
        loop {
            self.skip_ws();
            if !self.text[self.pos..].starts_with('x') {
                return Err(self.unexpected("expected a label x<n>"));
            }
            self.pos += 1;
            let label_pos = self.pos;
            let l = self.nat()?;
            if l == 0 || l > u32::MAX as u64 {
                return Err(self.error_at(label_pos, "labels are numbered from x1"));
            }
            labels.push(l as u32);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        if field == 0 || field > u32::MAX as u64 {
            return Err(self.error_at(start, "field indices are numbered from 1"));
        }
        let g = Generator::new(field as u32, labels)
            .map_err(|e| self.error_at(start, e.to_string()))?;
        self.generators.push((g.clone(), start));
        Ok(g)
    }

    fn factor(&mut self) -> PResult<Vec<Generator>> {
        let g = self.generator()?;
        let n = if self.eat('^') {
            self.nat()? as usize
        } else {
            1
        };
        Ok(vec![g; n])
    }

    /// Factors joined by `*` or juxtaposition.
    fn product(&mut self, out: &mut Vec<Generator>) -> PResult<()> {
        loop {
            if self.eat('*') || self.at_generator() {
                out.extend(self.factor()?);
            } else {
                return Ok(());
            }
        }
    }

    fn term(&mut self) -> PResult<(Rational, Vec<Generator>)> {
        let mut gens = Vec::new();
        let coefficient = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.rational()?
        } else {
            gens.extend(self.factor()?);
            Rational::one()
        };
        self.product(&mut gens)?;
        Ok((coefficient, gens))
    }

    fn expr(&mut self) -> PResult<Vec<(Rational, Vec<Generator>)>> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let (c, gens) = self.term()?;
            terms.push((if negative { -c } else { c }, gens));
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }

    fn slot(&mut self) -> PResult<Vec<Generator>> {
        let mut gens = self.factor()?;
        self.product(&mut gens)?;
        Ok(gens)
    }

    fn bracket(&mut self) -> PResult<Vec<Vec<Generator>>> {
        self.expect('[')?;
        let mut slots = vec![self.slot()?];
        while self.eat('|') {
            slots.push(self.slot()?);
        }
        self.expect(']')?;
        Ok(slots)
    }

    fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("unexpected trailing input"))
        }
    }

    /// Checks the collected generators against `profile`, or infers one.
    fn profile(&self, given: Option<&ArityProfile>) -> PResult<ArityProfile> {
        let mode = self
            .mode
            .unwrap_or(given.map_or(Mode::Commutative, ArityProfile::mode));
        match given {
            Some(p) => {
                if p.mode() != mode {
                    return Err(self.error_at(
                        0,
                        format!(
                            "input uses {} but the profile is {:?}",
                            mode.symbol(),
                            p.mode()
                        ),
                    ));
                }
                for (g, pos) in &self.generators {
                    if p.check_generator(g).is_err() {
                        let shown = Monomial::generator(mode, g.clone());
                        return Err(self.error_at(
                            *pos,
                            format!(
                                "arity violation: {shown} has field index {} but n_{} = {}",
                                g.field(),
                                g.support().len(),
                                p.count(g.support().len())
                            ),
                        ));
                    }
                }
                Ok(p.clone())
            }
            None => Ok(ArityProfile::covering(
                mode,
                self.generators.iter().map(|(g, _)| g),
            )),
        }
    }
}

/// Parses a polynomial.
pub fn parse_polynomial(text: &str, profile: Option<&ArityProfile>) -> PResult<Polynomial> {
    let mut p = Parser::new(text, profile.map(ArityProfile::mode));
    let terms = p.expr()?;
    p.finish()?;
    let profile = p.profile(profile)?;
    let mode = profile.mode();
    let mut out = Polynomial::zero(profile.clone());
    for (c, gens) in terms {
        let term = Polynomial::from_terms(profile.clone(), [(Monomial::new(mode, gens), c)])
            .map_err(|e| p.error_at(0, e.to_string()))?;
        out = out.add(&term).map_err(|e| p.error_at(0, e.to_string()))?;
    }
    Ok(out)
}

/// Parses a single monomial (a polynomial with one term of coefficient 1).
pub fn parse_monomial(text: &str, profile: Option<&ArityProfile>) -> PResult<Monomial> {
    let p = parse_polynomial(text, profile)?;
    match p.terms().iter().next() {
        Some((m, c)) if p.terms().len() == 1 && c.is_one() => Ok(m.clone()),
        None if p.is_zero() => Err(ParseError {
            line: 1,
            column: 1,
            message: "expected a monomial, found 0".into(),
        }),
        _ => Err(ParseError {
            line: 1,
            column: 1,
            message: format!("expected a single monomial, found {p}"),
        }),
    }
}

pub fn parse_bracketting(text: &str, profile: Option<&ArityProfile>) -> PResult<Bracketting> {
    let mut p = Parser::new(text, profile.map(ArityProfile::mode));
    let slots = p.bracket()?;
    p.finish()?;
    let profile = p.profile(profile)?;
    let mode = profile.mode();
    Bracketting::new(
        mode,
        slots.into_iter().map(|gens| Monomial::new(mode, gens)),
    )
    .map_err(|e| p.error_at(0, e.to_string()))
}

/// Parsed command-line argument: either kind of expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Polynomial(Polynomial),
    Bracketting(Bracketting),
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Polynomial(p) => write!(f, "{p}"),
            Expression::Bracketting(b) => write!(f, "{b}"),
        }
    }
}

pub fn parse(text: &str, profile: Option<&ArityProfile>) -> PResult<Expression> {
    if text.trim_start().starts_with('[') {
        parse_bracketting(text, profile).map(Expression::Bracketting)
    } else {
        parse_polynomial(text, profile).map(Expression::Polynomial)
    }
}

/// Printed rational: `p/q` with `q > 0` in lowest terms, or `p`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_zero() {
        "0".to_string()
    } else {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials() {
        let m = parse_monomial("phi[1](x1)*phi[1](x2)^2", None).unwrap();
        assert_eq!(m.degree(), 3);
        assert_eq!(m.to_string(), "phi[1](x1)*phi[1](x2)^2");
        let g = parse_monomial("phi[3](x1,x2,x3)", None).unwrap();
        assert_eq!(g.factors()[0].support(), &[1, 2, 3]);
        assert_eq!(
            parse_monomial("phi[1](x2)*phi[1](x1)", None)
                .unwrap()
                .to_string(),
            "phi[1](x1)*phi[1](x2)"
        );
    }

    #[test]
    fn polynomials() {
        let p = parse_polynomial("3 - 2*phi[1](x1) + 1/2*phi[1](x1)^2", None).unwrap();
        assert_eq!(p.to_string(), "3 - 2*phi[1](x1) + 1/2*phi[1](x1)^2");
        let q = parse_polynomial("-phi[1](x1) + phi[1](x1)", None).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn word_bracketting() {
        let b = parse_bracketting("[ psi[1](x2) psi[1](x1) | psi[2](x1) ]", None).unwrap();
        assert_eq!(b.mode(), Mode::Noncommutative);
        let again = parse_bracketting(&b.to_string(), None).unwrap();
        assert_eq!(again, b);
        assert_eq!(b.to_string(), "[psi[2](x1)|psi[1](x2)*psi[1](x1)]");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_polynomial("phi[1](x1) *\n  phi[1](y2)", None).unwrap_err();
        assert_eq!((e.line, e.column), (2, 10));
        let e = parse_polynomial("phi[1](x1)*psi[1](x2)", None).unwrap_err();
        assert!(e.message.contains("mix"));
        let profile = ArityProfile::local(Mode::Commutative, 2);
        let e = parse_polynomial("phi[1](x1)*phi[3](x2)", Some(&profile)).unwrap_err();
        assert_eq!(e.column, 12);
        assert!(e.message.contains("phi[3](x2)"));
        assert!(parse_monomial("phi[1](x1) + phi[1](x2)", None).is_err());
    }
}
