//! Exact arithmetic in Z[v, v^-1], the coefficient ring for everything else.
//!
//! A `LaurentPoly` is stored as a sparse map from exponent to nonzero integer
//! coefficient, so equality is exact and the zero polynomial has an empty map.
//! The ring involution `bar` sends v to v^-1.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Integer Laurent polynomial in one variable v, kept in canonical form:
/// no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// c * v^exp
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        Self::monomial_big(exp, BigInt::from(coeff))
    }

    pub fn monomial_big(exp: i64, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// The variable v itself.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_add(&mut self, exp: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// The bar involution v -> v^-1, extended linearly.
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        LaurentPoly { terms }
    }

    /// Substitute v -> v^k (k nonzero).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution exponent must be nonzero");
        let terms = self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect();
        LaurentPoly { terms }
    }

    /// Multiply by c * v^exp in place.
    pub fn scale(&mut self, exp: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            self.terms.clear();
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (e, c) in old {
            self.terms.insert(e + exp, c * coeff);
        }
    }

    pub fn times_monomial(&self, exp: i64, coeff: i64) -> Self {
        let mut r = self.clone();
        r.scale(exp, &BigInt::from(coeff));
        r
    }

    /// True when every exponent is <= -1 (the shape required of the
    /// off-diagonal parabolic polynomials in the "minus" convention).
    pub fn in_v_negative(&self) -> bool {
        self.terms.keys().all(|e| *e <= -1)
    }

    /// True when every exponent is >= 1.
    pub fn in_v_positive(&self) -> bool {
        self.terms.keys().all(|e| *e >= 1)
    }

    pub fn is_bar_invariant(&self) -> bool {
        self == &self.bar()
    }

    /// Split p as g + q where g is bar-invariant and q has only negative
    /// exponents. The pair is unique; returns (g, q).
    pub fn bar_invariant_completion_minus(&self) -> (LaurentPoly, LaurentPoly) {
        let mut g = LaurentPoly::zero();
        for (e, c) in &self.terms {
            if *e >= 0 {
                g.insert_add(*e, c);
                if *e > 0 {
                    g.insert_add(-*e, c);
                }
            }
        }
        let q = self - &g;
        (g, q)
    }

    /// Split p as g + q where g is bar-invariant and q has only positive
    /// exponents. The pair is unique; returns (g, q).
    pub fn bar_invariant_completion_plus(&self) -> (LaurentPoly, LaurentPoly) {
        let mut g = LaurentPoly::zero();
        for (e, c) in &self.terms {
            if *e <= 0 {
                g.insert_add(*e, c);
                if *e < 0 {
                    g.insert_add(-*e, c);
                }
            }
        }
        let q = self - &g;
        (g, q)
    }

    /// Exact division by the monomial s * v^exp (s = +1 or -1).
    pub fn div_signed_monomial(&self, exp: i64, sign: i64) -> Self {
        assert!(sign == 1 || sign == -1);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e - exp, if sign == 1 { c.clone() } else { -c.clone() }))
            .collect();
        LaurentPoly { terms }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            let neg = -c.clone();
            out.insert_add(*e, &neg);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let prod = c1 * c2;
                out.insert_add(e1 + e2, &prod);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        LaurentPoly { terms }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.insert_add(*e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            let neg = -c.clone();
            self.insert_add(*e, &neg);
        }
    }
}

impl LaurentPoly {
    /// self += q * (c * v^e), without building a temporary polynomial.
    pub fn add_scaled(&mut self, q: &LaurentPoly, exp: i64, coeff: &BigInt) {
        for (e, c) in &q.terms {
            let prod = c * coeff;
            self.insert_add(e + exp, &prod);
        }
    }

    pub fn add_mul(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let prod = c1 * c2;
                self.insert_add(e1 + e2, &prod);
            }
        }
    }
}

/// Canonical text form: terms in ascending exponent order, e.g.
/// "v^-2 + 3 + 2*v^3"; zero prints as "0".
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{abs}*v")?,
                (_, true) => write!(f, "v^{e}")?,
                (_, false) => write!(f, "{abs}*v^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot parse Laurent polynomial: {0}")]
pub struct ParseLaurentError(String);

impl FromStr for LaurentPoly {
    type Err = ParseLaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseLaurentError("empty input".into()));
        }
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        // Split into signed terms at top level.
        let mut out = LaurentPoly::zero();
        let mut rest = s;
        let mut sign = 1i64;
        // leading sign
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            // find next +/- separator not at position 0
            let split_at = rest
                .char_indices()
                .skip(1)
                .find(|(i, ch)| {
                    (*ch == '+' || *ch == '-')
                        && rest[..*i].chars().rev().find(|c| !c.is_whitespace()) != Some('^')
                })
                .map(|(i, _)| i);
            let (term, tail) = match split_at {
                Some(i) => (&rest[..i], &rest[i..]),
                None => (rest, ""),
            };
            let (exp, coeff) = parse_term(term.trim())
                .ok_or_else(|| ParseLaurentError(format!("bad term '{}'", term.trim())))?;
            out.insert_add(exp, &(BigInt::from(sign) * coeff));
            if tail.is_empty() {
                break;
            }
            sign = if tail.starts_with('-') { -1 } else { 1 };
            rest = tail[1..].trim_start();
        }
        Ok(out)
    }
}

fn parse_term(t: &str) -> Option<(i64, BigInt)> {
    if t.is_empty() {
        return None;
    }
    // forms: "3", "v", "v^k", "c*v", "c*v^k", "cv^k"
    if let Some(vpos) = t.find('v') {
        let coeff_str = t[..vpos].trim().trim_end_matches('*').trim();
        let coeff = if coeff_str.is_empty() {
            BigInt::one()
        } else {
            coeff_str.parse::<BigInt>().ok()?
        };
        let after = t[vpos + 1..].trim();
        let exp = if after.is_empty() {
            1
        } else {
            after.strip_prefix('^')?.trim().parse::<i64>().ok()?
        };
        Some((exp, coeff))
    } else {
        let coeff = t.parse::<BigInt>().ok()?;
        Some((0, coeff))
    }
}
