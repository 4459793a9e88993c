//! Rational functions over ℚ(i): the coefficient field for everything.
//!
//! Fractions are *not* reduced to lowest terms (no multivariate gcd).
//! Normalization is limited to cancelling the common monomial content and
//! making the denominator monic; equality is decided by cross-multiplication.
//! Addition and multiplication probe for structural equality and exact
//! divisibility between the denominators involved so that repeated sums over
//! a handful of distinct denominators do not blow up.

use super::gaussian::GaussianRational;
use super::poly::Polynomial;
use super::vars::Var;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by the zero scalar")]
    DivisionByZero,
    #[error("denominator vanishes at the sample point")]
    VanishingDenominator,
    #[error("no value assigned to parameter `{0}`")]
    MissingParameter(String),
}

/// An exact rational function `num/den` with `den != 0`.
#[derive(Clone)]
pub struct Scalar {
    num: Polynomial,
    den: Polynomial,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: Polynomial::one(),
            den: Polynomial::one(),
        }
    }

    pub fn i() -> Self {
        Scalar::constant(GaussianRational::i())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::constant(GaussianRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::constant(GaussianRational::from_ratio(num, den))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Scalar {
            num: Polynomial::constant(c),
            den: Polynomial::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Scalar {
            num: Polynomial::var(v),
            den: Polynomial::one(),
        }
    }

    pub fn param(name: &str) -> Self {
        Scalar::var(Var::new(name))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Scalar {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = Scalar { num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one();
            return;
        }
        if !self.den.is_one() {
            let mc = self
                .num
                .monomial_content()
                .gcd(&self.den.monomial_content());
            if !mc.is_unit() {
                self.num = self.num.div_monomial(&mc);
                self.den = self.den.div_monomial(&mc);
            }
        }
        let lc = self.den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.inv();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// All parameters occurring in numerator or denominator.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow_u32(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        if e >= 0 {
            Ok(self.pow_u32(e as u32))
        } else {
            Ok(self.inv()?.pow_u32((-e) as u32))
        }
    }

    /// Exact evaluation at a point. Fails when the denominator vanishes
    /// there (callers treat this as "resample") or a parameter is missing.
    pub fn eval_at(
        &self,
        assignment: &BTreeMap<Var, GaussianRational>,
    ) -> Result<GaussianRational, ScalarError> {
        let missing = |v: Var| ScalarError::MissingParameter(v.name().to_string());
        let d = self.den.eval(assignment).map_err(missing)?;
        if d.is_zero() {
            return Err(ScalarError::VanishingDenominator);
        }
        let n = self.num.eval(assignment).map_err(missing)?;
        Ok(&n / &d)
    }

    /// Partial substitution; remaining parameters stay symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<Var, Scalar>) -> Result<Scalar, ScalarError> {
        let d = self.den.substitute(assignment);
        if d.is_zero() {
            return Err(ScalarError::VanishingDenominator);
        }
        let n = self.num.substitute(assignment);
        &n / &d
    }
}

/// Picks a common denominator for `a/da + b/db` without gcd: structural
/// equality first, then exact-divisibility probes, else the plain product.
fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return Scalar::new(&a.num + &b.num, a.den.clone());
    }
    if let Some(q) = a.den.div_exact(&b.den) {
        return Scalar::new(&a.num + &(&b.num * &q), a.den.clone());
    }
    if let Some(q) = b.den.div_exact(&a.den) {
        return Scalar::new(&(&a.num * &q) + &b.num, b.den.clone());
    }
    Scalar::new(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    // Cross-cancel where an exact quotient exists; never computes a gcd.
    let (mut na, mut db) = (a.num.clone(), b.den.clone());
    if !db.is_one() {
        if let Some(q) = na.div_exact(&db) {
            na = q;
            db = Polynomial::one();
        }
    }
    let (mut nb, mut da) = (b.num.clone(), a.den.clone());
    if !da.is_one() {
        if let Some(q) = nb.div_exact(&da) {
            nb = q;
            da = Polynomial::one();
        }
    }
    Scalar::new(&na * &nb, &da * &db)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        add_impl(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        add_impl(self, &-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        mul_impl(self, rhs)
    }
}

impl Div for &Scalar {
    type Output = Result<Scalar, ScalarError>;
    fn div(self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(mul_impl(self, &rhs.inv()?))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Equality by cross-multiplication: `a/b = c/d` iff `a·d − c·b = 0`.
impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> Scalar {
        Scalar::param(name)
    }

    #[test]
    fn cross_multiplication_equality() {
        // l1/(l1^2-l2^2) * (l1^2-l2^2) == l1
        let l1 = p("rf_l1");
        let l2 = p("rf_l2");
        let d = &(&l1 * &l1) - &(&l2 * &l2);
        let frac = (&l1 / &d).unwrap();
        assert_eq!(&frac * &d, l1);
    }

    #[test]
    fn x_over_x_is_one() {
        let l = p("rf_l");
        let inv = l.inv().unwrap();
        let q = (&inv / &inv).unwrap();
        assert!(q.is_one());
    }

    #[test]
    fn add_keeps_shared_denominator() {
        let l = p("rf_l");
        let one = Scalar::one();
        let a = (&one / &l).unwrap();
        let b = (&Scalar::from_int(2) / &l).unwrap();
        let s = &a + &b;
        assert_eq!(s, (&Scalar::from_int(3) / &l).unwrap());
        assert_eq!(s.den(), l.num());
    }

    #[test]
    fn eval_and_singularity() {
        let l = p("rf_el");
        let v = Var::new("rf_el");
        let f = (&Scalar::one() / &(&(&l * &l) - &Scalar::from_int(4))).unwrap();
        let mut good = BTreeMap::new();
        good.insert(v, GaussianRational::from_int(3));
        assert_eq!(
            f.eval_at(&good).unwrap(),
            GaussianRational::from_ratio(1, 5)
        );
        let mut bad = BTreeMap::new();
        bad.insert(v, GaussianRational::from_int(2));
        assert_eq!(f.eval_at(&bad), Err(ScalarError::VanishingDenominator));
    }
}
