//! Surface-definition language.
//!
//! ```text
//! expression := term (('+' | '-') term)*
//! term       := rational? ('*'? factor)*
//! factor     := 'u' pow? | 'Q' pow? | '|z' index '|^' even | 'z' index pow?
//!             | '~z' index pow? | 'i'
//! rational   := int ('/' int)?
//! pow        := '^' int
//! ```
//!
//! `Q` is `⟨z,z⟩` for the declared form, `~z` is the conjugate variable and
//! `i` the imaginary unit. Factors may be juxtaposed: `1/2 u^2 Q^5`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crmoser::number::{Cx, Rational};
use crmoser::poly::{Monomial, Poly};
use crmoser::{HermitianForm, Hypersurface, RealPoly};
use num_traits::{One, Signed, Zero};

use crate::error::CliError;

/// Largest exponent accepted on a single factor.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at position {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    hf: &'a HermitianForm,
    q_powers: HashMap<u32, Poly>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    /// Digits with no leading whitespace skip (used right after a letter).
    fn digits_here(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn int(&mut self) -> Result<u32, SyntaxError> {
        self.skip_ws();
        let at = self.pos;
        match self.digits_here() {
            Some(d) => d.parse().or_else(|_| Err(SyntaxError { pos: at, msg: format!("integer {d} too large") })),
            None => self.err("expected an integer"),
        }
    }

    fn index(&mut self) -> Result<usize, SyntaxError> {
        let at = self.pos;
        let Some(d) = self.digits_here() else {
            return self.err("expected a variable index");
        };
        let j: usize = d.parse().map_err(|_| SyntaxError { pos: at, msg: "index too large".into() })?;
        let n = self.hf.n();
        if j == 0 || j > n {
            return Err(SyntaxError { pos: at, msg: format!("variable index {j} outside 1..={n}") });
        }
        Ok(j - 1)
    }

    fn exponent(&mut self) -> Result<u32, SyntaxError> {
        self.skip_ws();
        let at = self.pos;
        let e = self.int()?;
        if e > MAX_EXPONENT {
            return Err(SyntaxError { pos: at, msg: format!("exponent {e} exceeds {MAX_EXPONENT}") });
        }
        Ok(e)
    }

    fn pow(&mut self) -> Result<u32, SyntaxError> {
        if self.eat(b'^') {
            self.exponent()
        } else {
            Ok(1)
        }
    }

    fn rational(&mut self) -> Result<Rational, SyntaxError> {
        let num = self.int()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.int()?;
            if den == 0 {
                return Err(SyntaxError { pos: at, msg: "zero denominator".into() });
            }
            return Ok(Rational::new(num.into(), den.into()));
        }
        Ok(Rational::from_integer(num.into()))
    }

    fn q_pow(&mut self, k: u32) -> Poly {
        let q = self.hf.inner_poly();
        self.q_powers.entry(k).or_insert_with(|| q.pow(k).into_poly()).clone()
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(b'u' | b'Q' | b'|' | b'z' | b'~' | b'i'))
    }

    fn factor(&mut self) -> Result<Poly, SyntaxError> {
        let n = self.hf.n();
        let c = self.peek().expect("caller checked");
        self.pos += 1;
        match c {
            b'u' => {
                let k = self.pow()?;
                Ok(Poly::u(n).pow_trunc(k, u32::MAX))
            }
            b'Q' => {
                let k = self.pow()?;
                Ok(self.q_pow(k))
            }
            b'i' => Ok(Poly::constant(n, Cx::i())),
            b'z' => {
                let j = self.index()?;
                let k = self.pow()?;
                Ok(Poly::z(n, j).pow_trunc(k, u32::MAX))
            }
            b'~' => {
                if self.src.get(self.pos) != Some(&b'z') {
                    return self.err("expected 'z' after '~'");
                }
                self.pos += 1;
                let j = self.index()?;
                let k = self.pow()?;
                Ok(Poly::zbar(n, j).pow_trunc(k, u32::MAX))
            }
            b'|' => {
                if self.src.get(self.pos) != Some(&b'z') {
                    return self.err("expected 'z' after '|'");
                }
                self.pos += 1;
                let j = self.index()?;
                self.expect(b'|')?;
                self.expect(b'^')?;
                self.skip_ws();
                let at = self.pos;
                let e = self.exponent()?;
                if e % 2 != 0 {
                    return Err(SyntaxError { pos: at, msg: format!("exponent of |z{}| must be even, got {e}", j + 1) });
                }
                Ok(Poly::z(n, j).mul(&Poly::zbar(n, j)).pow_trunc(e / 2, u32::MAX))
            }
            _ => unreachable!("starts_factor"),
        }
    }

    fn term(&mut self) -> Result<Poly, SyntaxError> {
        let n = self.hf.n();
        let has_number = self.peek().is_some_and(|c| c.is_ascii_digit());
        let mut acc = if has_number {
            Poly::constant(n, Cx::real(self.rational()?))
        } else {
            Poly::constant(n, Cx::one())
        };
        let mut factors = 0usize;
        loop {
            let star = self.eat(b'*');
            if self.starts_factor() {
                acc = acc.mul(&self.factor()?);
                factors += 1;
            } else if star {
                return self.err("expected a factor after '*'");
            } else {
                break;
            }
        }
        if factors == 0 && !has_number {
            return self.err("expected a term");
        }
        Ok(acc)
    }

    fn expression(&mut self) -> Result<Poly, SyntaxError> {
        let n = self.hf.n();
        let mut out = Poly::zero(n);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            out = if negate { out.sub(&t) } else { out.add(&t) };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err(format!("unexpected character '{}'", self.src[self.pos] as char));
        }
        Ok(out)
    }
}

/// Expands an expression into a polynomial over the given form.
pub fn parse_expression(text: &str, hf: &HermitianForm) -> Result<Poly, SyntaxError> {
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return Err(SyntaxError { pos, msg: "non-ASCII character".into() });
    }
    Parser { src: text.as_bytes(), pos: 0, hf, q_powers: HashMap::new() }.expression()
}

/// Parses and validates `v = ⟨z,z⟩ + F`: reality, no harmonic terms, weights
/// within `max_weight` (defaulting to the largest weight present).
pub fn parse_surface(text: &str, hf: &HermitianForm, max_weight: Option<u32>) -> Result<Hypersurface, CliError> {
    let p = parse_expression(text, hf).map_err(|e| CliError::Parse(e.to_string()))?;
    let f = RealPoly::new(p)?;
    Ok(Hypersurface::new(hf.clone(), f, max_weight)?)
}

fn monomial_text(m: &Monomial) -> String {
    if m.z_degree() + m.zbar_degree() + m.u() == 0 {
        String::new()
    } else {
        m.to_string()
    }
}

/// Writes a polynomial in the expression language; `parse_expression`
/// reads it back exactly.
pub fn to_expression(p: &Poly) -> String {
    let mut out = String::new();
    let mut push = |value: &Rational, imaginary: bool, mono: &str| {
        let neg = value.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = value.abs();
        let mut factors: Vec<&str> = Vec::new();
        if imaginary {
            factors.push("i");
        }
        if !mono.is_empty() {
            factors.push(mono);
        }
        if !abs.is_one() || factors.is_empty() {
            let _ = write!(out, "{abs}");
            if !factors.is_empty() {
                out.push('*');
            }
        }
        out.push_str(&factors.join("*"));
    };
    for (m, c) in p.terms() {
        let mono = monomial_text(m);
        if !c.re.is_zero() {
            push(&c.re, false, &mono);
        }
        if !c.im.is_zero() {
            push(&c.im, true, &mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crmoser::number::rat;
    use crmoser::FormKind;

    fn form(n: usize, m: usize) -> HermitianForm {
        let kind = if m == 0 { FormKind::Diagonal } else { FormKind::Antidiagonal };
        HermitianForm::standard(n, m, kind).unwrap()
    }

    #[test]
    fn absolute_power() {
        let hf = form(2, 1);
        let p = parse_expression("1 * |z2|^4", &hf).unwrap();
        let zz = Poly::z(2, 1).mul(&Poly::zbar(2, 1));
        assert_eq!(p, zz.mul(&zz));
    }

    #[test]
    fn form_powers_with_juxtaposition() {
        let hf = form(2, 0);
        let p = parse_expression("Q^4 + 1/2 u^2 Q^5", &hf).unwrap();
        let q = hf.inner_poly();
        let expect = q.pow(4).add(&q.pow(5).mul_u_pow(2).scale_real(&rat(1, 2)));
        assert_eq!(p, expect.into_poly());
    }

    #[test]
    fn reality_violation() {
        let hf = form(1, 0);
        let e = parse_surface("z1^2 ~z1^3", &hf, None).unwrap_err();
        assert_eq!(e.to_string(), "coefficient symmetry broken at monomial z1^2*~z1^3");
        assert!(parse_surface("z1^2 ~z1^3 + z1^3 ~z1^2", &hf, None).is_ok());
    }

    #[test]
    fn harmonic_and_weight_errors() {
        let hf = form(2, 0);
        assert!(matches!(parse_surface("z1 ~z1", &hf, None), Err(CliError::Parse(_))));
        let e = parse_surface("z1 ~z1^2 + z1^2 ~z1", &hf, None).unwrap_err();
        assert!(e.to_string().contains("harmonic"), "{e}");
        assert!(parse_surface("Q^4", &hf, Some(6)).is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let hf = form(2, 0);
        assert_eq!(parse_expression("Q^4 + ", &hf).unwrap_err().pos, 6);
        assert_eq!(parse_expression("z3", &hf).unwrap_err().pos, 1);
        assert_eq!(parse_expression("|z1|^3", &hf).unwrap_err().pos, 5);
        assert_eq!(parse_expression("Q^4 $", &hf).unwrap_err().pos, 4);
        assert!(parse_expression("2 *", &hf).is_err());
        assert!(parse_expression("", &hf).is_err());
        assert!(parse_expression("1/0 Q", &hf).is_err());
        assert_eq!(parse_expression("u^65", &hf).unwrap_err().pos, 2);
    }

    #[test]
    fn signs_and_imaginary_unit() {
        let hf = form(1, 0);
        let p = parse_expression("-2 z1^2 ~z1^3 + i z1^2~z1^3 - 1/3*i*z1^3 ~z1^2", &hf).unwrap();
        let m = Monomial::new(&[2], &[3], 0);
        assert_eq!(p.coeff(&m), Cx::new(rat(-2, 1), rat(1, 1)));
        assert_eq!(p.coeff(&m.conj()), Cx::new(rat(0, 1), rat(-1, 3)));
    }

    #[test]
    fn serialization_round_trip() {
        let hf = form(2, 1);
        let text = "Q^4 - 3/2 u z1^2 ~z2^3 - 3/2 u z2^3 ~z1^2 + i z1^2 ~z1^4 - i z1^4 ~z1^2";
        let p = parse_expression(text, &hf).unwrap();
        let s = to_expression(&p);
        assert_eq!(parse_expression(&s, &hf).unwrap(), p);
        assert_eq!(to_expression(&Poly::zero(2)), "0");
    }
}
