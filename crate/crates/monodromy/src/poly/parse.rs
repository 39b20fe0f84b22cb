//! Parser for polynomials written in factored form: a product of integer
//! constants, the variable `X`, and parenthesized integer polynomials, each
//! optionally raised to a nonnegative power, e.g.
//!
//! ```text
//! -2^4 * (22X^2 - 11X - 2)^6 X (44X^2 + 22X + 3)^6
//! ```
//!
//! Factors are separated by `*` or by juxtaposition. Whitespace (including
//! newlines) is insignificant everywhere, `x` is accepted for `X`, and the
//! `*` between a coefficient and `X` inside a parenthesized polynomial is
//! optional. A `-` is allowed only in front of the whole product and binds
//! outside any power: `-2^4` is `-(2^4)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FactoredPoly, IntPoly, PolyError};

/// Largest accepted exponent, for both factor powers and monomial degrees.
const MAX_EXPONENT: u64 = 4096;

pub fn parse_factored(text: &str) -> Result<FactoredPoly, PolyError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let result = p.parse_product()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(result)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> PolyError {
        PolyError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    /// Parses `^ uint` if present; returns 1 otherwise.
    fn parse_exponent(&mut self) -> Result<u32, PolyError> {
        self.skip_ws();
        if !self.eat(b'^') {
            return Ok(1);
        }
        self.skip_ws();
        let start = self.pos;
        let value = self.parse_uint()?;
        let value: u64 = value.try_into().map_err(|_| PolyError::Parse {
            offset: start,
            message: "exponent too large".into(),
        })?;
        if value > MAX_EXPONENT {
            return Err(PolyError::ExponentTooLarge {
                exponent: value,
                max: MAX_EXPONENT,
            });
        }
        Ok(value as u32)
    }

    fn is_var(&self) -> bool {
        matches!(self.peek(), Some(b'X') | Some(b'x'))
    }

    fn parse_product(&mut self) -> Result<FactoredPoly, PolyError> {
        let mut constant = BigRational::one();
        let mut factors: Vec<(IntPoly, u32)> = Vec::new();
        self.skip_ws();
        if self.pos == self.bytes.len() {
            return Err(self.error("empty polynomial expression"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let negative = first && self.eat(b'-');
            first = false;
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let base = self.parse_uint()?;
                    let exp = self.parse_exponent()?;
                    constant *= BigRational::from_integer(base.pow(exp));
                }
                Some(b'(') => {
                    self.pos += 1;
                    let poly = self.parse_poly_body()?;
                    self.skip_ws();
                    if !self.eat(b')') {
                        return Err(self.error("expected ')'"));
                    }
                    let exp = self.parse_exponent()?;
                    factors.push((poly, exp));
                }
                _ if self.is_var() => {
                    self.pos += 1;
                    let exp = self.parse_exponent()?;
                    factors.push((IntPoly::monomial(BigInt::one(), 1), exp));
                }
                _ => return Err(self.error("expected a constant, '(' or 'X'")),
            }
            if negative {
                constant = -constant;
            }
            self.skip_ws();
            if self.pos == self.bytes.len() {
                break;
            }
            // An explicit '*', or an implicit product when the next factor
            // starts right away with '(', a digit, or the variable.
            if !self.eat(b'*') {
                match self.peek() {
                    Some(b'(') | Some(b'X') | Some(b'x') => {}
                    Some(b) if b.is_ascii_digit() => {}
                    _ => return Err(self.error("expected '*' or a further factor")),
                }
            }
        }
        Ok(FactoredPoly { constant, factors })
    }

    /// Parses the inside of a parenthesized polynomial: a `+`/`-` separated
    /// sum of monomials `c`, `c X^k`, `c*X^k`, or `X^k`.
    fn parse_poly_body(&mut self) -> Result<IntPoly, PolyError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let add_term = |coeff: BigInt, k: usize, coeffs: &mut Vec<BigInt>| {
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += coeff;
        };
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = if self.eat(b'-') {
                -1
            } else if self.eat(b'+') {
                if first {
                    return Err(self.error("unexpected '+' at start of polynomial"));
                }
                1
            } else if first {
                1
            } else {
                return Err(self.error("expected '+', '-' or ')'"));
            };
            first = false;
            self.skip_ws();
            if !self.is_var() && !self.peek().is_some_and(|b| b.is_ascii_digit()) {
                return Err(self.error("expected a term"));
            }
            let mut coeff = if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                let c = self.parse_uint()?;
                self.skip_ws();
                // Optional explicit multiplication before the variable.
                if self.eat(b'*') {
                    self.skip_ws();
                    if !self.is_var() {
                        return Err(self.error("expected 'X' after '*'"));
                    }
                }
                c
            } else {
                BigInt::one()
            };
            if sign < 0 {
                coeff = -coeff;
            }
            self.skip_ws();
            if self.is_var() {
                self.pos += 1;
                let exp = self.parse_exponent()? as usize;
                add_term(coeff, exp, &mut coeffs);
            } else {
                add_term(coeff, 0, &mut coeffs);
            }
            self.skip_ws();
            match self.peek() {
                Some(b')') => break,
                Some(b'+') | Some(b'-') => continue,
                _ => return Err(self.error("expected '+', '-' or ')'")),
            }
        }
        let poly = IntPoly::from_coeffs(coeffs);
        if poly.is_zero() {
            return Err(self.error("parenthesized polynomial is zero"));
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn parses_constants_and_powers() {
        let f = parse_factored("2^2 * 3").unwrap();
        assert_eq!(f.constant, BigRational::from_integer(BigInt::from(12)));
        assert!(f.factors.is_empty());
        let g = parse_factored("-2^4").unwrap();
        assert_eq!(g.constant, BigRational::from_integer(BigInt::from(-16)));
    }

    #[test]
    fn parses_polynomial_factors() {
        let f = parse_factored("(4X^4 - 16X^3 - 24X^2 - 8X - 1)^2").unwrap();
        assert!(f.constant.is_one());
        assert_eq!(f.factors, vec![(ip(&[-1, -8, -24, -16, 4]), 2)]);
    }

    #[test]
    fn parses_bare_variable_factor() {
        let f = parse_factored("X * (5X^3 + 20X^2 + 20X + 6)^2").unwrap();
        assert_eq!(f.factors[0], (ip(&[0, 1]), 1));
        assert_eq!(f.factors[1], (ip(&[6, 20, 20, 5]), 2));
        let g = parse_factored("X^3").unwrap();
        assert_eq!(g.factors, vec![(ip(&[0, 1]), 3)]);
    }

    #[test]
    fn parses_full_product_with_whitespace() {
        let text = "-3^3 * 11^5 * (4X^3 - 4X^2 + 5X - 3)^4\n  * (6X^3 + 5X^2 + 2X + 1)^4";
        let f = parse_factored(text).unwrap();
        assert_eq!(
            f.constant,
            BigRational::from_integer(BigInt::from(-27 * 161051))
        );
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.factors[0].0, ip(&[-3, 5, -4, 4]));
        assert_eq!(f.factors[1].1, 4);
    }

    #[test]
    fn accepts_spacing_variants() {
        let a = parse_factored("(2X + 1)").unwrap();
        let b = parse_factored("( 2 * X + 1 )").unwrap();
        let c = parse_factored("(2x+1)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = parse_factored("(X^ 2 + X + 3)^ 11").unwrap();
        assert_eq!(d.factors, vec![(ip(&[3, 1, 1]), 11)]);
    }

    #[test]
    fn expands_correctly() {
        let f = parse_factored("2 * (X + 1)^2 * (X - 1)").unwrap();
        let s = f.expand();
        // 2(X+1)^2(X-1) = 2X^3 + 2X^2 - 2X - 2 = 2 * (X^3 + X^2 - X - 1).
        assert_eq!(
            s.constant(),
            &BigRational::from_integer(BigInt::from(2))
        );
        assert_eq!(s.primitive(), &ip(&[-1, -1, 1, 1]));
        assert_eq!(f.degree(), Some(3));
    }

    #[test]
    fn negative_leading_coefficient_normalizes_into_constant() {
        let f = parse_factored("(-X + 2)").unwrap().expand();
        assert!(f.constant().is_negative());
        assert_eq!(f.primitive(), &ip(&[-2, 1]));
    }

    #[test]
    fn accepts_juxtaposed_factors() {
        let explicit = parse_factored("2 * X^2 * (X + 1)^2 * (X - 1)").unwrap();
        let implicit = parse_factored("2X^2 (X + 1)^2(X - 1)").unwrap();
        assert_eq!(explicit.expand(), implicit.expand());
        assert_eq!(
            parse_factored("2^2 3").unwrap().expand(),
            parse_factored("12").unwrap().expand()
        );
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "", "()", "(X", "X)", "2**3", "(X++1)", "(X+)", "(X^2", "^4",
            "(0*X)", "* (X+1)", "2 - 3", "2 * -3", "(X+1) -2",
        ] {
            assert!(parse_factored(bad).is_err(), "should reject {bad:?}");
        }
    }

    #[test]
    fn rejects_huge_exponents() {
        assert!(matches!(
            parse_factored("(X+1)^5000"),
            Err(PolyError::ExponentTooLarge { .. })
        ));
        assert!(parse_factored("(X^5000 + 1)").is_err());
    }

    #[test]
    fn reports_error_offsets() {
        let err = parse_factored("(X+1) ? 3").unwrap_err();
        match err {
            PolyError::Parse { offset, .. } => assert_eq!(offset, 6),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
