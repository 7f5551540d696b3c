//! Text syntax for polynomials.
//!
//! ```text
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := coeff | [coeff "*"] factor ("*" factor)*
//! factor := var ["^" nat]
//! coeff  := int | int "/" nat
//! ```
//!
//! Whitespace is insignificant. Printing emits the same syntax, so
//! `parse(print(p)) == p`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing<F>>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, message: message.into() })
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string parses"))
    }

    fn identifier(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return None,
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        Some((start, std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier")))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let Some((start, name)) = self.identifier() else {
            return self.syntax("expected a variable");
        };
        let var = self
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), pos: start })?;
        let mut e: u64 = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.number()?;
            e = match u64::try_from(n) {
                Ok(v) => v,
                Err(_) => return Err(Error::ExponentGuard { limit: self.ring.exponent_guard() }),
            };
        }
        let total = exps[var] as u64 + e;
        if total > self.ring.exponent_guard() as u64 {
            return Err(Error::ExponentGuard { limit: self.ring.exponent_guard() });
        }
        exps[var] = total as u32;
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<(Monomial, F::Elem)> {
        let field = self.ring.field();
        let mut exps = vec![0u32; self.ring.arity()];
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let coeff_pos = self.pos;
        let mut need_factor = true;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            num = self.number()?;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                den = self.number()?;
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                need_factor = false;
            }
        }
        if need_factor {
            self.factor(&mut exps)?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(&mut exps)?;
            }
        }
        if negative {
            num = -num;
        }
        let c = field.from_ratio(&num, &den).ok_or(Error::ZeroDenominator { pos: coeff_pos })?;
        Ok((Monomial::new(&exps), c))
    }

    fn polynomial(&mut self) -> Result<Polynomial<F>> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return self.syntax("empty polynomial"),
            _ => {}
        }
        loop {
            terms.push(self.term(negative)?);
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                None => break,
                Some(c) => return self.syntax(format!("unexpected character `{}`", c as char)),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses one polynomial over `ring`.
pub fn parse_polynomial<F: Field>(text: &str, ring: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
    Parser { src: text.as_bytes(), pos: 0, ring }.polynomial()
}

/// Parses a comma-separated list of polynomials, e.g. `"x^4, x^3*y, y^4"`.
/// Error positions refer to the whole input.
pub fn parse_generators<F: Field>(text: &str, ring: &Arc<PolyRing<F>>) -> Result<Vec<Polynomial<F>>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let parsed = parse_polynomial(piece, ring).map_err(|e| shift_position(e, offset))?;
        out.push(parsed);
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn shift_position(e: Error, offset: usize) -> Error {
    match e {
        Error::Syntax { pos, message } => Error::Syntax { pos: pos + offset, message },
        Error::UnknownVariable { name, pos } => Error::UnknownVariable { name, pos: pos + offset },
        Error::ZeroDenominator { pos } => Error::ZeroDenominator { pos: pos + offset },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn ring() -> Arc<PolyRing<PrimeField>> {
        PolyRing::from_spec("x,y", PrimeField::default()).unwrap()
    }

    #[test]
    fn zero_terms_vanish() {
        let p = parse_polynomial("x^7*y^0 + 0", &ring()).unwrap();
        assert_eq!(p.to_string(), "x^7");
    }

    #[test]
    fn exponents_of_a_monomial() {
        let p = parse_polynomial("x^17*y^4", &ring()).unwrap();
        assert!(p.is_monomial());
        assert_eq!(p.leading_monomial().unwrap().exponents(), &[17, 4]);
    }

    #[test]
    fn characteristic_five_cancels() {
        let r = PolyRing::from_spec("x,y", PrimeField::new(5).unwrap()).unwrap();
        assert!(parse_polynomial("2*x + 3*x", &r).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(
            parse_polynomial("x + z", &r),
            Err(Error::UnknownVariable { name: "z".into(), pos: 4 })
        );
        assert!(matches!(parse_polynomial("x + * y", &r), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_polynomial("x y", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("", &r), Err(Error::Syntax { .. })));
        let q = PolyRing::from_spec("x,y", Rationals).unwrap();
        assert_eq!(parse_polynomial("x + 3/0*y", &q), Err(Error::ZeroDenominator { pos: 3 }));
        assert!(matches!(parse_generators("x, y, w", &r), Err(Error::UnknownVariable { pos: 6, .. })));
    }

    #[test]
    fn rational_coefficients() {
        let q = PolyRing::from_spec("x,y", Rationals).unwrap();
        let p = parse_polynomial("1/2*x - 2/4*x + 3/7*y - 1", &q).unwrap();
        assert_eq!(p.to_string(), "3/7*y - 1");
    }

    fn poly_strategy() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
        prop::collection::vec((-40i64..40, 0u32..6, 0u32..6), 0..8)
    }

    fn build(ring: &Arc<PolyRing<PrimeField>>, spec: &[(i64, u32, u32)]) -> Polynomial<PrimeField> {
        let f = ring.field();
        Polynomial::from_terms(ring, spec.iter().map(|&(c, a, b)| (Monomial::new(&[a, b]), f.from_i64(c))).collect())
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(spec in poly_strategy()) {
            let r = ring();
            let p = build(&r, &spec);
            let text = p.to_string();
            prop_assert_eq!(parse_polynomial(&text, &r).unwrap(), p);
        }

        #[test]
        fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            let r = ring();
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            // canonical form: p - q == 0 gives the empty representation
            let d = a.add(&b).unwrap().sub(&b).unwrap().sub(&a).unwrap();
            prop_assert!(d.terms().is_empty());
        }

        #[test]
        fn rational_ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            let r = PolyRing::from_spec("x,y", Rationals).unwrap();
            let lift = |s: &[(i64, u32, u32)]| Polynomial::from_terms(
                &r,
                s.iter().map(|&(c, a, b)| (Monomial::new(&[a, b]), Rationals.from_i64(c))).collect(),
            );
            let (a, b, c) = (lift(&a), lift(&b), lift(&c));
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            let text = a.to_string();
            prop_assert_eq!(parse_polynomial(&text, &r).unwrap(), a);
        }
    }
}
