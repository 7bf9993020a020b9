//! Expressions truncated at first order in the deformation symbol.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::Symbol;
use super::ratfunc::RatFunc;
use crate::error::Error;

/// `order0 + λ·order1`. Products drop the λ² term.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedExpr {
    order0: RatFunc,
    order1: RatFunc,
}

impl GradedExpr {
    pub fn new(order0: RatFunc, order1: RatFunc) -> Self {
        GradedExpr { order0, order1 }
    }

    pub fn zero() -> Self {
        GradedExpr::default()
    }

    pub fn one() -> Self {
        RatFunc::one().into()
    }

    /// The deformation symbol itself.
    pub fn lambda() -> Self {
        GradedExpr::new(RatFunc::zero(), RatFunc::one())
    }

    pub fn integer(n: i64) -> Self {
        RatFunc::integer(n).into()
    }

    pub fn rational(n: i64, d: i64) -> Self {
        RatFunc::constant(BigRational::new(BigInt::from(n), BigInt::from(d))).into()
    }

    pub fn coord(i: usize) -> Self {
        RatFunc::symbol(Symbol::Coord(i)).into()
    }

    pub fn param(name: &str) -> Self {
        RatFunc::symbol(Symbol::param(name)).into()
    }

    /// `λ·e` for a grade-0 `e`.
    pub fn grade1(e: RatFunc) -> Self {
        GradedExpr::new(RatFunc::zero(), e)
    }

    pub fn order0(&self) -> &RatFunc {
        &self.order0
    }

    pub fn order1(&self) -> &RatFunc {
        &self.order1
    }

    /// The classical part as a graded value.
    pub fn classical(&self) -> GradedExpr {
        self.order0.clone().into()
    }

    /// The first-order part as a graded value (`λ·order1`).
    pub fn quantum(&self) -> GradedExpr {
        GradedExpr::grade1(self.order1.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.order0.is_zero() && self.order1.is_zero()
    }

    pub fn is_pure_grade1(&self) -> bool {
        self.order0.is_zero()
    }

    pub fn has_coords(&self) -> bool {
        self.order0.has_coords() || self.order1.has_coords()
    }

    /// The rational `q` when `self = q·λ` exactly.
    pub fn as_lambda_multiple(&self) -> Option<BigRational> {
        if self.order0.is_zero() {
            self.order1.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigRational) -> GradedExpr {
        GradedExpr::new(self.order0.scale(k), self.order1.scale(k))
    }

    pub fn half(&self) -> GradedExpr {
        GradedExpr::new(self.order0.half(), self.order1.half())
    }

    pub fn recip(&self) -> Result<GradedExpr, Error> {
        // (a0 + λa1)^-1 = 1/a0 − λ a1/a0²
        let inv0 = self.order0.recip()?;
        let inv1 = self.order1.mul(&inv0).mul(&inv0).neg();
        Ok(GradedExpr::new(inv0, inv1))
    }

    pub fn div(&self, other: &GradedExpr) -> Result<GradedExpr, Error> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<GradedExpr, Error> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        if k == 0 {
            return Ok(GradedExpr::one());
        }
        // (a0 + λa1)^k = a0^k + λ k a0^(k-1) a1
        let p0 = base.order0.pow(k as i32)?;
        let p1 = base
            .order0
            .pow(k as i32 - 1)?
            .mul(&base.order1)
            .scale(&BigRational::from_integer(BigInt::from(k)));
        Ok(GradedExpr::new(p0, p1))
    }

    /// Partial derivative with respect to coordinate `mu`, both grades.
    pub fn partial(&self, mu: usize) -> GradedExpr {
        let s = Symbol::Coord(mu);
        GradedExpr::new(self.order0.derivative(&s), self.order1.derivative(&s))
    }

    pub fn eval_symbol(&self, s: &Symbol, v: &BigRational) -> Result<GradedExpr, Error> {
        Ok(GradedExpr::new(
            self.order0.eval_symbol(s, v)?,
            self.order1.eval_symbol(s, v)?,
        ))
    }
}

impl From<RatFunc> for GradedExpr {
    fn from(order0: RatFunc) -> Self {
        GradedExpr::new(order0, RatFunc::zero())
    }
}

impl Add<&GradedExpr> for &GradedExpr {
    type Output = GradedExpr;
    fn add(self, rhs: &GradedExpr) -> GradedExpr {
        GradedExpr::new(self.order0.add(&rhs.order0), self.order1.add(&rhs.order1))
    }
}

impl Sub<&GradedExpr> for &GradedExpr {
    type Output = GradedExpr;
    fn sub(self, rhs: &GradedExpr) -> GradedExpr {
        GradedExpr::new(self.order0.sub(&rhs.order0), self.order1.sub(&rhs.order1))
    }
}

impl Mul<&GradedExpr> for &GradedExpr {
    type Output = GradedExpr;
    fn mul(self, rhs: &GradedExpr) -> GradedExpr {
        let order0 = self.order0.mul(&rhs.order0);
        let order1 = self.order0.mul(&rhs.order1).add(&self.order1.mul(&rhs.order0));
        GradedExpr::new(order0, order1)
    }
}

impl Neg for &GradedExpr {
    type Output = GradedExpr;
    fn neg(self) -> GradedExpr {
        GradedExpr::new(self.order0.neg(), self.order1.neg())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GradedExpr> for GradedExpr {
            type Output = GradedExpr;
            fn $m(self, rhs: GradedExpr) -> GradedExpr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GradedExpr> for GradedExpr {
            type Output = GradedExpr;
            fn $m(self, rhs: &GradedExpr) -> GradedExpr {
                (&self).$m(rhs)
            }
        }
        impl $tr<GradedExpr> for &GradedExpr {
            type Output = GradedExpr;
            fn $m(self, rhs: GradedExpr) -> GradedExpr {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GradedExpr {
    type Output = GradedExpr;
    fn neg(self) -> GradedExpr {
        -&self
    }
}

impl std::iter::Sum for GradedExpr {
    fn sum<I: Iterator<Item = GradedExpr>>(iter: I) -> Self {
        iter.fold(GradedExpr::zero(), |acc, e| &acc + &e)
    }
}
