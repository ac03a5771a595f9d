//! Extremal profiles on symmetric intervals `[−b, b]` with prescribed boundary
//! slopes, and the classes where the extremal profile has constant curvature.

use crate::error::{Error, Result};
use crate::geometry::{geometry_report, Habitat};
use crate::horizontal::HorizontalData;
use crate::poly::Poly;
use crate::rational::RationalFn;
use crate::roots::{is_positive_on, isolate_real_roots, Interval, IsolatedRoot};
use crate::scalar::Scalar;

/// Boundary term in the right-hand side of the moment system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MomentConvention {
    /// `Â_n = ∫xⁿQR − ½[xⁿ(φQ)']`, which integrating the curvature equation gives.
    #[default]
    Derived,
    /// `A_n = ∫xⁿQR − [xⁿ(φQ)']`.
    Literal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Moments<K> {
    /// `a_n = ∫_{−b}^{b} xⁿ Q`.
    pub a: Vec<K>,
    pub a_hat: Vec<K>,
}

impl<K: Scalar> Moments<K> {
    pub fn determinant(&self) -> K {
        self.a[0].clone() * self.a[2].clone() - self.a[1].clone() * self.a[1].clone()
    }
}

fn check_compatible<K: Scalar>(data: &HorizontalData<K>, b: &K) -> Result<()> {
    if !b.is_positive() {
        return Err(Error::InvalidInput("half-width b must be positive".into()));
    }
    for blk in data.blocks() {
        let f = K::one() - b.clone() * blk.beta.clone().abs();
        if !f.is_positive() {
            return Err(Error::Precondition(format!("block beta = {} is not compatible with [-{b}, {b}]", blk.beta)));
        }
    }
    Ok(())
}

fn boundary_scale<K: Scalar>(conv: MomentConvention) -> K {
    match conv {
        MomentConvention::Derived => K::half(),
        MomentConvention::Literal => K::one(),
    }
}

/// Moments up to `max_n`; slopes `(φ'(−b), φ'(b))` enter through the boundary term.
pub fn moments<K: Scalar>(data: &HorizontalData<K>, b: &K, slopes: (&K, &K), max_n: usize, conv: MomentConvention) -> Result<Moments<K>> {
    check_compatible(data, b)?;
    let q = data.q();
    let qr = data.qr();
    let mb = -b.clone();
    let scale = boundary_scale::<K>(conv);
    let mut a = Vec::with_capacity(max_n + 1);
    let mut a_hat = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let xn = Poly::monomial(K::one(), n);
        a.push((&xn * &q).integrate(&mb, b));
        let bdry = b.powi(n as u32) * slopes.1.clone() * q.eval(b) - mb.powi(n as u32) * slopes.0.clone() * q.eval(&mb);
        a_hat.push((&xn * &qr).integrate(&mb, b) - scale.clone() * bdry);
    }
    Ok(Moments { a, a_hat })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalSolution<K> {
    pub b: K,
    pub sigma0: K,
    pub sigma1: K,
    pub phi: RationalFn<K>,
    pub boundary: (K, K),
    pub positive: bool,
    pub futaki: K,
    pub determinant: K,
    /// `φ(±b) = 0` and both slopes are reproduced.
    pub boundary_exact: bool,
}

impl<K: Scalar> ExtremalSolution<K> {
    pub fn habitat(&self) -> Habitat {
        if !self.positive {
            return Habitat::Incomplete;
        }
        let dom = Interval::closed(-self.b.clone(), self.b.clone());
        geometry_report(&self.phi, &dom).map_or(Habitat::Incomplete, |g| g.habitat)
    }
}

/// Extremal profile with `φ(±b) = 0`, prescribed slopes, and `σ = σ0 + σ1 τ`.
pub fn extremal_profile<K: Scalar>(data: &HorizontalData<K>, b: &K, dphi_minus: &K, dphi_plus: &K) -> Result<ExtremalSolution<K>> {
    extremal_profile_with(data, b, dphi_minus, dphi_plus, MomentConvention::Derived)
}

pub fn extremal_profile_with<K: Scalar>(
    data: &HorizontalData<K>,
    b: &K,
    dphi_minus: &K,
    dphi_plus: &K,
    conv: MomentConvention,
) -> Result<ExtremalSolution<K>> {
    let m = moments(data, b, (dphi_minus, dphi_plus), 2, conv)?;
    let det = m.determinant();
    if !det.is_positive() {
        return Err(Error::Invariant(format!("moment determinant a0 a2 - a1^2 = {det} is not positive")));
    }
    let (a0, a1, a2) = (m.a[0].clone(), m.a[1].clone(), m.a[2].clone());
    let (h0, h1) = (m.a_hat[0].clone(), m.a_hat[1].clone());
    let futaki = a0.clone() * h1.clone() - a1.clone() * h0.clone();
    let sigma0 = (h0 * a2 - a1 * h1) / det.clone();
    let sigma1 = futaki.clone() / det.clone();
    let q = data.q();
    let mb = -b.clone();
    let sigma = Poly::linear(sigma0.clone(), sigma1.clone());
    let integrand = &data.qr() - &(&sigma * &q);
    let start = Poly::linear(b.clone(), K::one()).scale(&(dphi_minus.clone() * q.eval(&mb)));
    let phi_q = &start + &integrand.double_integral_from(&mb).scale(&K::from_i64(2));
    let phi = RationalFn::new(phi_q.clone(), q.clone())?;
    let d = phi.derivative();
    let boundary_exact = phi.eval(b).is_some_and(|v| v.approx_eq(&K::zero()))
        && phi.eval(&mb).is_some_and(|v| v.approx_eq(&K::zero()))
        && d.eval(b).is_some_and(|v| v.approx_eq(dphi_plus))
        && d.eval(&mb).is_some_and(|v| v.approx_eq(dphi_minus));
    if conv == MomentConvention::Derived && !boundary_exact {
        return Err(Error::Invariant("extremal profile misses its boundary values".into()));
    }
    let positive = !phi_q.is_zero() && is_positive_on(&phi_q, &Interval::open(mb, b.clone()));
    Ok(ExtremalSolution {
        b: b.clone(),
        sigma0,
        sigma1,
        phi,
        boundary: (dphi_minus.clone(), dphi_plus.clone()),
        positive,
        futaki,
        determinant: det,
        boundary_exact,
    })
}

/// `a0 Â1 − a1 Â0`, which vanishes exactly when `σ1 = 0`.
pub fn futaki_like<K: Scalar>(data: &HorizontalData<K>, b: &K, dphi_minus: &K, dphi_plus: &K) -> Result<K> {
    let m = moments(data, b, (dphi_minus, dphi_plus), 1, MomentConvention::Derived)?;
    Ok(m.a[0].clone() * m.a_hat[1].clone() - m.a[1].clone() * m.a_hat[0].clone())
}

/// `a0 Â1 − a1 Â0` as a polynomial in `b`.
pub fn futaki_polynomial<K: Scalar>(data: &HorizontalData<K>, dphi_minus: &K, dphi_plus: &K) -> Poly<K> {
    let q = data.q();
    let qr = data.qr();
    let reflect = |p: &Poly<K>| p.compose_affine(&-K::one(), &K::zero());
    let sym = |p: Poly<K>| {
        let g = p.antiderivative_from(&K::zero());
        &g - &reflect(&g)
    };
    let xq = &Poly::x() * &q;
    let a0 = sym(q.clone());
    let a1 = sym(xq.clone());
    let qm = reflect(&q);
    let half = K::half();
    let bd0 = &q.scale(dphi_plus) - &qm.scale(dphi_minus);
    let bd1 = &(&Poly::x() * &q.scale(dphi_plus)) + &(&Poly::x() * &qm.scale(dphi_minus));
    let h0 = &sym(qr.clone()) - &bd0.scale(&half);
    let h1 = &sym(&Poly::x() * &qr) - &bd1.scale(&half);
    &(&a0 * &h1) - &(&a1 * &h0)
}

/// One class `b` with `σ1(b) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CscClass<K> {
    pub b: IsolatedRoot<K>,
    pub solution: ExtremalSolution<K>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CscClasses<K> {
    /// Every `b` in the range is a constant-curvature class.
    pub identically_zero: bool,
    pub classes: Vec<CscClass<K>>,
}

/// Zeros of the Futaki-type polynomial in `(b_lo, b_hi]`, refined to `delta`,
/// each with its extremal profile and positivity verdict.
pub fn find_csc_classes<K: Scalar>(data: &HorizontalData<K>, b_range: (&K, &K), slopes: (&K, &K), delta: f64) -> Result<CscClasses<K>> {
    let (lo, hi) = b_range;
    if !lo.is_positive() && !lo.is_zero() || lo >= hi {
        return Err(Error::InvalidInput("b range must satisfy 0 <= lo < hi".into()));
    }
    check_compatible(data, hi)?;
    let f = futaki_polynomial(data, slopes.0, slopes.1);
    if f.is_zero() {
        return Ok(CscClasses { identically_zero: true, classes: Vec::new() });
    }
    let interval = Interval::new(Some(lo.clone()), Some(hi.clone()), false, true);
    let mut classes = Vec::new();
    for root in isolate_real_roots(&f, &interval, Some(&K::from_f64(delta)))? {
        let solution = extremal_profile(data, &root.approx(), slopes.0, slopes.1)?;
        classes.push(CscClass { b: root, solution });
    }
    Ok(CscClasses { identically_zero: false, classes })
}
