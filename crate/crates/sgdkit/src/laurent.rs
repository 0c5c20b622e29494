//! Exact integer Laurent polynomials in the indeterminate `A`.
//!
//! Every invariant in this crate takes values here. Coefficients are
//! overflow-checked `i128`s; term storage is sparse, keyed by exponent.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::{Error, Result};

fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("Laurent coefficient overflow in add")
}

fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("Laurent coefficient overflow in mul")
}

/// Sparse Laurent polynomial with exact integer coefficients.
///
/// Invariant: no stored coefficient is zero; the zero polynomial has an
/// empty term map. Equality is term-set equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// The indeterminate `A`.
    pub fn a() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    /// `c * A^n`.
    pub fn monomial(c: i128, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(n, c);
        }
        LaurentPoly { terms }
    }

    /// `B = A + 1 + A^-1`, the value of a simple loop.
    pub fn b() -> Self {
        LaurentPoly::from_terms(&[(1, 1), (0, 1), (-1, 1)])
    }

    pub fn from_terms(terms: &[(i64, i128)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(n, c) in terms {
            p.bump(n, c);
        }
        p
    }

    fn bump(&mut self, exp: i64, coeff: i128) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry = cadd(*entry, coeff);
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.terms.iter().map(|(&n, &c)| (n, c))
    }

    pub fn coeff(&self, exp: i64) -> i128 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&n, &c) in &other.terms {
            out.bump(n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&n, &c) in &other.terms {
            out.bump(n, c.checked_neg().expect("coefficient overflow"));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.mul_monomial(-1, 0)
    }

    /// Convolution product, exact.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&n, &c) in &self.terms {
            for (&m, &d) in &other.terms {
                out.bump(n.checked_add(m).expect("exponent overflow"), cmul(c, d));
            }
        }
        out
    }

    /// Multiply by the monomial `c * A^n`: shifts every exponent by `n`
    /// and scales every coefficient by `c`. `c = 0` yields zero.
    pub fn mul_monomial(&self, c: i128, n: i64) -> Self {
        let mut out = LaurentPoly::zero();
        for (&e, &k) in &self.terms {
            out.bump(e.checked_add(n).expect("exponent overflow"), cmul(k, c));
        }
        out
    }

    /// Smallest exponent with nonzero coefficient. Undefined for zero.
    pub fn min_degree(&self) -> Result<i64> {
        self.terms
            .keys()
            .next()
            .copied()
            .ok_or(Error::ZeroPolyDegree)
    }

    /// Largest exponent with nonzero coefficient. Undefined for zero.
    pub fn max_degree(&self) -> Result<i64> {
        self.terms
            .keys()
            .next_back()
            .copied()
            .ok_or(Error::ZeroPolyDegree)
    }

    /// Substitute `A -> A^-1` (negate every exponent).
    pub fn invert_variable(&self) -> Self {
        let terms = self.terms.iter().map(|(&n, &c)| (-n, c)).collect();
        LaurentPoly { terms }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

/// Canonical rendering: terms in descending exponent order, `A^k` powers,
/// unit coefficients elided, e.g. `A^3 + A^2 + 2*A + 1 + A^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&exp, &coeff)) in self.terms.iter().rev().enumerate() {
            let mag = coeff.unsigned_abs();
            if i == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = match exp {
                0 => String::new(),
                1 => "A".to_string(),
                k => format!("A^{k}"),
            };
            if power.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{power}")?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical rendering produced by `Display` (whitespace is
/// flexible; `0` parses to the zero polynomial).
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if compact == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut p = LaurentPoly::zero();
        let mut rest = compact.as_str();
        let mut sign: i128 = 1;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            let split = rest
                .char_indices()
                .skip(1)
                .find(|&(i, c)| (c == '+' || c == '-') && !rest[..i].ends_with('^'))
                .map(|(i, _)| i);
            let (term, remainder) = match split {
                Some(i) => (&rest[..i], &rest[i..]),
                None => (rest, ""),
            };
            let (mag, exp) = parse_term(term)?;
            p.bump(exp, sign * mag);
            if remainder.is_empty() {
                break;
            }
            sign = if remainder.starts_with('-') { -1 } else { 1 };
            rest = &remainder[1..];
        }
        Ok(p)
    }
}

fn parse_term(t: &str) -> Result<(i128, i64)> {
    let bad = || Error::Parse(format!("bad polynomial term `{t}`"));
    if let Some(power) = t.strip_prefix("A") {
        // A or A^k
        let exp = parse_power(power).ok_or_else(bad)?;
        return Ok((1, exp));
    }
    if let Some(star) = t.find('*') {
        let mag: i128 = t[..star].parse().map_err(|_| bad())?;
        let var = &t[star + 1..];
        let power = var.strip_prefix('A').ok_or_else(bad)?;
        let exp = parse_power(power).ok_or_else(bad)?;
        return Ok((mag, exp));
    }
    // Pure constant, or the `2A` shorthand without a star.
    if let Some(apos) = t.find('A') {
        let mag: i128 = t[..apos].parse().map_err(|_| bad())?;
        let exp = parse_power(&t[apos + 1..]).ok_or_else(bad)?;
        return Ok((mag, exp));
    }
    let mag: i128 = t.parse().map_err(|_| bad())?;
    Ok((mag, 0))
}

fn parse_power(p: &str) -> Option<i64> {
    if p.is_empty() {
        return Some(1);
    }
    p.strip_prefix('^')?.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> LaurentPoly {
        LaurentPoly::b()
    }

    #[test]
    fn add_cancellation() {
        let p = b();
        let q = LaurentPoly::from_terms(&[(1, -1), (0, -2), (-1, -1)]);
        assert_eq!(p.add(&q), LaurentPoly::monomial(-1, 0));
    }

    #[test]
    fn add_identity() {
        let p = LaurentPoly::from_terms(&[(3, 2), (-2, 5)]);
        assert_eq!(p.add(&LaurentPoly::zero()), p);
    }

    #[test]
    fn add_doubles() {
        let two_b = LaurentPoly::from_terms(&[(1, 2), (0, 2), (-1, 2)]);
        assert_eq!(b().add(&b()), two_b);
    }

    #[test]
    fn mul_b_squared() {
        let expect = LaurentPoly::from_terms(&[(2, 1), (1, 2), (0, 3), (-1, 2), (-2, 1)]);
        assert_eq!(b().mul(&b()), expect);
    }

    #[test]
    fn mul_identity() {
        let p = LaurentPoly::from_terms(&[(4, -3), (0, 7), (-5, 1)]);
        assert_eq!(p.mul(&LaurentPoly::one()), p);
    }

    #[test]
    fn theta_value_from_b() {
        // B - B^2 is the standard theta value.
        let theta = b().sub(&b().mul(&b()));
        let expect =
            LaurentPoly::from_terms(&[(2, -1), (1, -1), (0, -2), (-1, -1), (-2, -1)]);
        assert_eq!(theta, expect);
    }

    #[test]
    fn mul_monomial_shifts() {
        let theta = b().sub(&b().mul(&b()));
        let got = theta.mul_monomial(-1, 1);
        let expect = LaurentPoly::from_terms(&[(3, 1), (2, 1), (1, 2), (0, 1), (-1, 1)]);
        assert_eq!(got, expect);

        let p = LaurentPoly::from_terms(&[(2, 3), (-1, -4)]);
        assert_eq!(p.mul_monomial(1, 0), p);
        assert_eq!(
            LaurentPoly::one().mul_monomial(1, 2),
            LaurentPoly::monomial(1, 2)
        );
    }

    #[test]
    fn mul_monomial_zero_coeff() {
        let p = LaurentPoly::from_terms(&[(2, 3), (-1, -4)]);
        assert!(p.mul_monomial(0, 5).is_zero());
    }

    #[test]
    fn min_degree_reads_smallest() {
        assert_eq!(b().min_degree().unwrap(), -1);
        let p = LaurentPoly::from_terms(&[(3, 1), (2, 1), (1, 2), (0, 1), (-1, 1)]);
        assert_eq!(p.min_degree().unwrap(), -1);
        assert!(LaurentPoly::zero().min_degree().is_err());
    }

    #[test]
    fn display_canonical() {
        let p = LaurentPoly::from_terms(&[(3, 1), (2, 1), (1, 2), (0, 1), (-1, 1)]);
        assert_eq!(p.to_string(), "A^3 + A^2 + 2*A + 1 + A^-1");
        let theta = b().sub(&b().mul(&b()));
        assert_eq!(theta.to_string(), "-A^2 - A - 2 - A^-1 - A^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for p in [
            LaurentPoly::zero(),
            LaurentPoly::one(),
            b(),
            b().sub(&b().mul(&b())),
            LaurentPoly::from_terms(&[(6, 1), (2, -1), (0, -1), (-6, -1)]),
        ] {
            let text = p.to_string();
            let back: LaurentPoly = text.parse().unwrap();
            assert_eq!(back, p, "round-trip of `{text}`");
        }
    }

    #[test]
    fn min_degree_shift_law() {
        let p = LaurentPoly::from_terms(&[(2, 3), (-1, -4)]);
        for n in [-3i64, 0, 5] {
            assert_eq!(
                p.mul_monomial(2, n).min_degree().unwrap(),
                p.min_degree().unwrap() + n
            );
        }
    }
}
