use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element a + b*sqrt(2) of the real quadratic field Q(sqrt 2), with
/// rational a and b. All arithmetic is exact; equality is componentwise.
///
/// Every amplitude used by the unitary models lives here: signed
/// multiples of powers of 1/sqrt(2) in particular.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadExt { a, b }
    }

    pub fn from_integer(n: i64) -> Self {
        QuadExt::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// sqrt(2) itself.
    pub fn sqrt2() -> Self {
        QuadExt::new(BigRational::zero(), BigRational::one())
    }

    /// 1/sqrt(2), i.e. (1/2)*sqrt(2).
    pub fn inv_sqrt2() -> Self {
        QuadExt::new(
            BigRational::zero(),
            BigRational::new(1.into(), 2.into()),
        )
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational part, if the value is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// The square of the value. For a real amplitude this is its squared
    /// magnitude: (a + b√2)² = (a² + 2b²) + (2ab)√2.
    pub fn squared(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Field conjugate a - b*sqrt(2).
    pub fn conjugate(&self) -> Self {
        QuadExt::new(self.a.clone(), -self.b.clone())
    }

    /// Exact sign of the real number a + b√2: -1, 0 or 1.
    ///
    /// When a and b disagree in sign the comparison reduces to a² vs 2b²,
    /// which never ties for nonzero rationals (√2 is irrational).
    pub fn signum(&self) -> i32 {
        let (sa, sb) = (rat_sign(&self.a), rat_sign(&self.b));
        match (sa, sb) {
            (0, 0) => 0,
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = (&self.b * &self.b) * BigRational::from_integer(2.into());
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("a^2 = 2b^2 only for a = b = 0"),
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero, like integer division.
    pub fn inv(&self) -> Self {
        let norm = &self.a * &self.a - (&self.b * &self.b) * BigRational::from_integer(2.into());
        assert!(!norm.is_zero(), "inverse of zero in Q(sqrt 2)");
        QuadExt::new(&self.a / &norm, -(&self.b / &norm))
    }
}

fn rat_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

impl From<BigRational> for QuadExt {
    fn from(a: BigRational) -> Self {
        QuadExt::new(a, BigRational::zero())
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        QuadExt::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        QuadExt::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let two = BigRational::from_integer(2.into());
        QuadExt::new(
            &self.a * &rhs.a + (&self.b * &rhs.b) * two,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        self * rhs.inv()
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.a, -self.b)
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::new(BigRational::one(), BigRational::zero())
    }
    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self.clone() - other.clone()).signum() {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        })
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}√2", self.b)
        } else if self.b.is_negative() {
            write!(f, "{} - {}√2", self.a, -self.b.clone())
        } else {
            write!(f, "{} + {}√2", self.a, self.b)
        }
    }
}
