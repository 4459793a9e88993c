//! Exact arithmetic in ℚ(i), the Gaussian rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// A Gaussian rational `re + im·i`, with both parts arbitrary-precision
/// rationals kept in lowest terms (handled by `BigRational` itself).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GaussianRational {
            re: BigRational::from_integer(n),
            im: BigRational::zero(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(i)");
        // (a + bi)^-1 = (a - bi) / (a^2 + b^2)
        let n = &self.re * &self.re + &self.im * &self.im;
        GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// True when `re < 0`, or `re == 0` and `im < 0`. Used to pick the sign
    /// printed between polynomial terms.
    pub fn is_negative_for_display(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // (a+bi)(c+di) = (ac - bd) + (ad + bc)i
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Prints in the scalar-expression grammar: `3/4`, `-2*i`, `1+2*i`, …
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        let write_im = |f: &mut fmt::Formatter<'_>, im: &BigRational, lead_sign: bool| {
            let a = im.abs();
            let sgn = if im.is_negative() {
                "-"
            } else if lead_sign {
                ""
            } else {
                "+"
            };
            if a.is_one() {
                write!(f, "{sgn}i")
            } else {
                write!(f, "{sgn}")?;
                fmt_rational(&a, f)?;
                write!(f, "*i")
            }
        };
        if self.re.is_zero() {
            write_im(f, &self.im, true)
        } else {
            fmt_rational(&self.re, f)?;
            write_im(f, &self.im, false)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = GaussianRational::new(
            BigRational::new(BigInt::from(3), BigInt::from(4)),
            BigRational::new(BigInt::from(-2), BigInt::from(5)),
        );
        assert!((&z * &z.inv()).is_one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::from_ratio(-3, 4).to_string(), "-3/4");
        let z = &GaussianRational::from_int(2) * &GaussianRational::i();
        assert_eq!(z.to_string(), "2*i");
        let w = &GaussianRational::from_int(1) - &z;
        assert_eq!(w.to_string(), "1-2*i");
    }
}
