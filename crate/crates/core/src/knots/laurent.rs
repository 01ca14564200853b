use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Laurent polynomial in one variable `A` with integer coefficients.
/// Zero coefficients are never stored. Serialized as a list of
/// `[exponent, coefficient]` pairs in increasing exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<(i32, i64)>", from = "Vec<(i32, i64)>")]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · A^exp`.
    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitutes `A ↦ A⁻¹`.
    pub fn mirror(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `A = e^{iπ/4}` as `(re, im)`. Exact when every exponent is
    /// even, since then each power of `A` is a power of `i`.
    pub fn eval_eighth_root(&self) -> (f64, f64) {
        if self.terms.keys().all(|e| e % 2 == 0) {
            let (mut re, mut im) = (0i64, 0i64);
            for (&e, &c) in &self.terms {
                match (e / 2).rem_euclid(4) {
                    0 => re += c,
                    1 => im += c,
                    2 => re -= c,
                    _ => im -= c,
                }
            }
            (re as f64, im as f64)
        } else {
            let (mut re, mut im) = (0.0, 0.0);
            for (&e, &c) in &self.terms {
                let a = std::f64::consts::FRAC_PI_4 * e as f64;
                re += c as f64 * a.cos();
                im += c as f64 * a.sin();
            }
            (re, im)
        }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: LaurentPolynomial) -> LaurentPolynomial {
        &self + &o
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-o)
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: LaurentPolynomial) -> LaurentPolynomial {
        &self - &o
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: LaurentPolynomial) -> LaurentPolynomial {
        &self * &o
    }
}

impl From<LaurentPolynomial> for Vec<(i32, i64)> {
    fn from(p: LaurentPolynomial) -> Self {
        p.terms.into_iter().collect()
    }
}

impl From<Vec<(i32, i64)>> for LaurentPolynomial {
    fn from(v: Vec<(i32, i64)>) -> Self {
        Self::from_terms(v)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let sep = if k > 0 { " " } else { "" };
            let mag = c.unsigned_abs();
            write!(f, "{sep}{sign}")?;
            if k > 0 {
                write!(f, " ")?;
            }
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, e) => write!(f, "A^{e}")?,
                (m, e) => write!(f, "{m}A^{e}")?,
            }
        }
        Ok(())
    }
}
