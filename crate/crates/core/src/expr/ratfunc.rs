//! Reduced quotients of polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Poly, Symbol};
use crate::error::Error;

/// `num / den` with `gcd(num, den) = 1` and `den` monic; zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Poly::one().into()
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::constant(c).into()
    }

    pub fn integer(n: i64) -> Self {
        Poly::integer(n).into()
    }

    pub fn symbol(s: Symbol) -> Self {
        Poly::symbol(s).into()
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroExpr);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = den.as_constant() {
            return RatFunc { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::with_monic_den(num, den)
    }

    fn with_monic_den(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let k = lc.recip();
            RatFunc { num: num.scale(&k), den: den.scale(&k) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn has_coords(&self) -> bool {
        self.num.has_coords() || self.den.has_coords()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return num.into();
            }
            return Self::reduce(num, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = other.den.div_exact(&g).expect("gcd divides");
        let b = self.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&a).add(&other.num.mul(&b));
        let den = self.den.mul(&a);
        Self::reduce(num, den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return self.num.mul(&other.num).into();
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::with_monic_den(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, k: &BigRational) -> RatFunc {
        if k.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<RatFunc, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroExpr);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, Error> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, Error> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn derivative(&self, s: &Symbol) -> RatFunc {
        let dn = self.num.derivative(s);
        if self.den.is_one() {
            return dn.into();
        }
        let dd = self.den.derivative(s);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::reduce(num, self.den.mul(&self.den))
    }

    pub fn half(&self) -> RatFunc {
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Substitutes a rational value for a symbol.
    pub fn eval_symbol(&self, s: &Symbol, v: &BigRational) -> Result<RatFunc, Error> {
        RatFunc::new(self.num.eval_symbol(s, v), self.den.eval_symbol(s, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(i: usize) -> RatFunc {
        RatFunc::symbol(Symbol::Coord(i))
    }

    #[test]
    fn cancels_common_factors() {
        let (t, x) = (sym(0), sym(1));
        let num = x.mul(&x).sub(&t.mul(&t));
        let q = num.div(&x.sub(&t)).unwrap();
        assert_eq!(q, x.add(&t));
        assert!(q.is_polynomial());
    }

    #[test]
    fn inverse_cancels() {
        let x = sym(1);
        assert!(x.mul(&x.recip().unwrap()).is_one());
        assert_eq!(RatFunc::zero().recip(), Err(Error::DivisionByZeroExpr));
    }

    #[test]
    fn quotient_rule() {
        let x = sym(1);
        let inv2 = x.pow(-2).unwrap();
        let d = inv2.derivative(&Symbol::Coord(1));
        assert_eq!(d, x.pow(-3).unwrap().scale(&BigRational::from_integer((-2).into())));
    }

    #[test]
    fn denominator_is_monic() {
        let x = sym(1);
        let f = RatFunc::one().div(&x.scale(&BigRational::from_integer(3.into()))).unwrap();
        assert!(f.denom().leading_coefficient().is_one());
        assert_eq!(f.numer().as_constant(), Some(BigRational::new(1.into(), 3.into())));
    }
}
