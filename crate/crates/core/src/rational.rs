//! Reduced quotients of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Scalar> RationalFn<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("rational function with zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly<K>, den: Poly<K>) -> Self {
        if num.is_zero() {
            return RationalFn { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree().unwrap_or(0) > 0 { (num.div_rem(&g).0, den.div_rem(&g).0) } else { (num, den) };
        let l = d.leading();
        if l != K::one() {
            n = n.scale(&(K::one() / l.clone()));
            d = d.monic();
        }
        RationalFn { num: n, den: d }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RationalFn { num: p, den: Poly::one() }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_poly(&self) -> Option<Poly<K>> {
        self.is_polynomial().then(|| self.num.clone())
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduced(n, &self.den * &self.den)
    }

    /// `deg num − deg den`; `None` for the zero function.
    pub fn growth_degree(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(dn - self.den.degree().unwrap_or(0) as i64)
    }

    /// Multiplicity of `a` as a zero (poles count as zero order).
    pub fn vanishing_order_at(&self, a: &K) -> usize {
        if self.num.is_zero() {
            return usize::MAX;
        }
        self.num.vanishing_order_at(a)
    }

    /// Order of the pole at `a` (0 if regular).
    pub fn pole_order_at(&self, a: &K) -> usize {
        self.den.vanishing_order_at(a)
    }

    /// Residue at a pole of order at most one.
    pub fn residue_at(&self, a: &K) -> Result<K> {
        match self.pole_order_at(a) {
            0 => Ok(K::zero()),
            1 => Ok(self.num.eval(a) / self.den.derivative().eval(a)),
            k => Err(Error::Precondition(format!("pole of order {k} has no simple residue"))),
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RationalFn { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl<K: Scalar> fmt::Display for RationalFn<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<'a, K: Scalar> Add<&'a RationalFn<K>> for &'a RationalFn<K> {
    type Output = RationalFn<K>;
    fn add(self, rhs: &RationalFn<K>) -> RationalFn<K> {
        if self.den == rhs.den {
            return RationalFn::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFn::reduced(n, &self.den * &rhs.den)
    }
}

impl<'a, K: Scalar> Sub<&'a RationalFn<K>> for &'a RationalFn<K> {
    type Output = RationalFn<K>;
    fn sub(self, rhs: &RationalFn<K>) -> RationalFn<K> {
        self + &(-rhs)
    }
}

impl<'a, K: Scalar> Mul<&'a RationalFn<K>> for &'a RationalFn<K> {
    type Output = RationalFn<K>;
    fn mul(self, rhs: &RationalFn<K>) -> RationalFn<K> {
        RationalFn::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a, K: Scalar> Div<&'a RationalFn<K>> for &'a RationalFn<K> {
    type Output = RationalFn<K>;
    /// Panics on division by the zero function.
    fn div(self, rhs: &RationalFn<K>) -> RationalFn<K> {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RationalFn::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<K: Scalar> Neg for &RationalFn<K> {
    type Output = RationalFn<K>;
    fn neg(self) -> RationalFn<K> {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl<K: Scalar> From<Poly<K>> for RationalFn<K> {
    fn from(p: Poly<K>) -> Self {
        RationalFn::from_poly(p)
    }
}
