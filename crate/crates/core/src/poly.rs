//! Laurent polynomials in `A` with exact integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn delta() -> Self {
        LaurentPoly::from_terms([(2, -1), (-2, -1)])
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms with descending exponents.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().rev().map(|(&e, c)| (e, c))
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// `(max, min)` exponents.
    pub fn extreme_powers(&self) -> Result<(i64, i64)> {
        match (self.max_exp(), self.min_exp()) {
            (Some(hi), Some(lo)) => Ok((hi, lo)),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitute `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// `[[exponent, coefficient], ...]` with descending exponents.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(e, c)| {
                    let coeff = match i64::try_from(c) {
                        Ok(v) => serde_json::Value::from(v),
                        Err(_) => serde_json::Value::String(c.to_string()),
                    };
                    serde_json::json!([e, coeff])
                })
                .collect(),
        )
    }

    /// Parse the text form `c*A^e + c*A^e ...`; `0` is the zero polynomial.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |msg: String| Error::InvalidArgument(format!("polynomial: {msg}"));
        if text == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut p = LaurentPoly::zero();
        for term in text.split(" + ") {
            let (c, e) = term.split_once("*A^").ok_or_else(|| bad(format!("bad term {term:?}")))?;
            let c: BigInt = c.trim().parse().map_err(|_| bad(format!("bad coefficient {c:?}")))?;
            let e: i64 = e.trim().parse().map_err(|_| bad(format!("bad exponent {e:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("{c}*A^{e}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_form() {
        let p = LaurentPoly::from_terms([(-3, -1)]);
        assert_eq!(p.to_string(), "-1*A^-3");
        let q = LaurentPoly::from_terms([(-4, 1), (4, -1), (12, -1)]);
        assert_eq!(q.to_string(), "-1*A^12 + -1*A^4 + 1*A^-4");
        assert_eq!(LaurentPoly::parse(&q.to_string()).unwrap(), q);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_form_is_descending() {
        let q = LaurentPoly::from_terms([(-4, 1), (4, -1)]);
        assert_eq!(q.to_json(), serde_json::json!([[4, -1], [-4, 1]]));
    }

    #[test]
    fn extremes() {
        assert_eq!(LaurentPoly::one().extreme_powers(), Ok((0, 0)));
        assert_eq!(LaurentPoly::monomial(-1, -3).extreme_powers(), Ok((-3, -3)));
        assert_eq!(LaurentPoly::zero().extreme_powers(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = LaurentPoly::from_terms([(1, 2), (0, 1)]);
        let d = &p - &p;
        assert!(d.is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..6, -5i64..5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(LaurentPoly::parse(&a.to_string()).unwrap(), a);
        }
    }
}
