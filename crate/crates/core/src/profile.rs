//! Momentum profiles: prescribed scalar curvature, Einstein profiles and the
//! Einstein test, Ricci components and the invariant Laplacian.
//!
//! Profiles are built as the polynomial `φQ` and divided by `Q` at the end.

use crate::error::{Error, Result};
use crate::horizontal::HorizontalData;
use crate::poly::Poly;
use crate::rational::RationalFn;
use crate::roots::{is_positive_on, isolate_real_roots, Interval};
use crate::scalar::Scalar;

/// Einstein profile families on line bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EinsteinVariant {
    /// `φ(0) = 0, φ'(0) = 2`: `u = 1 − λτ`.
    A,
    /// `φ(0) = φ'(0) = 0`: `u = −λτ`.
    B,
}

fn require_lower_zero<K: Scalar>(data: &HorizontalData<K>) -> Result<()> {
    match &data.interval().lower {
        Some(l) if l.is_zero() => Ok(()),
        _ => Err(Error::Precondition("the momentum interval must start at 0".into())),
    }
}

/// `φQ` for prescribed `σ` and initial jet `(φ(0), φ'(0))`.
pub fn phi_q_prescribed<K: Scalar>(q: &Poly<K>, qr: &Poly<K>, sigma: &Poly<K>, phi0: &K, dphi0: &K) -> Poly<K> {
    let zero = K::zero();
    let slope = dphi0.clone() + phi0.clone() * q.derivative().eval(&zero);
    let lin = Poly::linear(phi0.clone(), slope);
    let integrand = qr - &(sigma * q);
    &lin + &integrand.double_integral_from(&zero).scale(&K::from_i64(2))
}

/// Profile with scalar curvature `sigma` and the given jet at `τ = 0`.
pub fn solve_prescribed<K: Scalar>(data: &HorizontalData<K>, sigma: &Poly<K>, phi0: &K, dphi0: &K) -> Result<RationalFn<K>> {
    require_lower_zero(data)?;
    let q = data.q();
    let nq = phi_q_prescribed(&q, &data.qr(), sigma, phi0, dphi0);
    RationalFn::new(nq, q)
}

/// `σ = (P − (Qφ)'')/(2Q)` for arbitrary `Q` and `QR`.
pub fn scalar_curvature_from<K: Scalar>(q: &Poly<K>, qr: &Poly<K>, phi: &RationalFn<K>) -> RationalFn<K> {
    let qf = RationalFn::from_poly(q.clone());
    let second = (&qf * phi).derivative().derivative();
    let numer = &RationalFn::from_poly(qr.clone()) - &second.scale(&K::half());
    &numer / &qf
}

pub fn scalar_curvature<K: Scalar>(data: &HorizontalData<K>, phi: &RationalFn<K>) -> RationalFn<K> {
    scalar_curvature_from(&data.q(), &data.qr(), phi)
}

/// Constant scalar curvature `c` with `φ(0) = 0`, `φ'(0) = 2`.
pub fn csc_profile_a<K: Scalar>(data: &HorizontalData<K>, c: &K) -> Result<RationalFn<K>> {
    solve_prescribed(data, &Poly::constant(c.clone()), &K::zero(), &K::from_i64(2))
}

/// Constant scalar curvature `c` with `φ(0) = φ'(0) = 0`.
pub fn csc_profile_b<K: Scalar>(data: &HorizontalData<K>, c: &K) -> Result<RationalFn<K>> {
    solve_prescribed(data, &Poly::constant(c.clone()), &K::zero(), &K::zero())
}

/// `φQ = 2 ∫₀^τ (u0 − λx) Q(x) dx`, the profile with `(1/2Q)(φQ)' = u0 − λτ`.
pub fn einstein_phi_q<K: Scalar>(q: &Poly<K>, u0: &K, lambda: &K) -> Poly<K> {
    let u = Poly::linear(u0.clone(), -lambda.clone());
    (&u * q).antiderivative_from(&K::zero()).scale(&K::from_i64(2))
}

pub fn einstein_profile<K: Scalar>(data: &HorizontalData<K>, lambda: &K, variant: EinsteinVariant) -> Result<RationalFn<K>> {
    require_lower_zero(data)?;
    let u0 = match variant {
        EinsteinVariant::A => {
            if lambda.sign() > 0 {
                return Err(Error::Precondition("variant A Einstein profile needs lambda <= 0".into()));
            }
            K::one()
        }
        EinsteinVariant::B => {
            if lambda.sign() >= 0 {
                return Err(Error::Precondition("variant B Einstein profile needs lambda < 0".into()));
            }
            K::zero()
        }
    };
    let q = data.q();
    RationalFn::new(einstein_phi_q(&q, &u0, lambda), q)
}

/// `u = (1/2Q)(φQ)'`.
pub fn u_of<K: Scalar>(q: &Poly<K>, phi: &RationalFn<K>) -> RationalFn<K> {
    let qf = RationalFn::from_poly(q.clone());
    let d = (&qf * phi).derivative();
    &d / &qf.scale(&K::from_i64(2))
}

/// Why a profile failed the Einstein test.
#[derive(Clone, Debug, PartialEq)]
pub enum EinsteinFailure<K> {
    /// `(1/2Q)(φQ)'` is not affine in `τ`.
    NotAffine,
    /// Affine, but the constant term is not the one the family requires.
    WrongOffset { expected: K, found: K },
    /// Block `index` violates the eigenvalue condition.
    BlockMismatch { index: usize, beta: K, lhs: K, rhs: K },
}

/// Outcome of an Einstein test. Trace-only data can only confirm the
/// condition under the standing assumption that the Ricci endomorphism is
/// scalar on each eigenbundle.
#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinCheck<K> {
    pub lambda: Option<K>,
    pub failure: Option<EinsteinFailure<K>>,
}

impl<K: Scalar> EinsteinCheck<K> {
    fn fail(f: EinsteinFailure<K>) -> Self {
        EinsteinCheck { lambda: None, failure: Some(f) }
    }

    pub fn is_einstein(&self) -> bool {
        self.lambda.is_some()
    }
}

/// `(u0, u1)` if `u` is affine.
pub fn affine_parts<K: Scalar>(u: &RationalFn<K>) -> Option<(K, K)> {
    let p = u.as_poly()?;
    if p.degree().unwrap_or(0) > 1 {
        return None;
    }
    Some((p.coeff(0), p.coeff(1)))
}

/// Einstein test on line-bundle data: `u` affine and `r_i + u0 k_i b_i = λ k_i`.
pub fn is_einstein<K: Scalar>(data: &HorizontalData<K>, phi: &RationalFn<K>) -> EinsteinCheck<K> {
    let u = u_of(&data.q(), phi);
    let Some((u0, u1)) = affine_parts(&u) else {
        return EinsteinCheck::fail(EinsteinFailure::NotAffine);
    };
    let lambda = -u1;
    for (index, b) in data.blocks().iter().enumerate() {
        let k = K::from_i64(b.multiplicity as i64);
        let lhs = b.ricci_trace.clone() + u0.clone() * k.clone() * b.beta.clone();
        let rhs = lambda.clone() * k;
        if !lhs.approx_eq(&rhs) {
            return EinsteinCheck::fail(EinsteinFailure::BlockMismatch { index, beta: b.beta.clone(), lhs, rhs });
        }
    }
    EinsteinCheck { lambda: Some(lambda), failure: None }
}

/// `(R − c)Q ≡ [(1 − λτ)Q]'` with `c = λ(m+1)`.
pub fn einstein_identity_check<K: Scalar>(data: &HorizontalData<K>, lambda: &K) -> bool {
    let q = data.q();
    let c = lambda.clone() * K::from_i64(data.dim() as i64 + 1);
    let lhs = &data.qr() - &q.scale(&c);
    let rhs = (&Poly::linear(K::one(), -lambda.clone()) * &q).derivative();
    (&lhs - &rhs).is_zero()
}

/// `(R − c)Q ≡ −λ(τQ)'` with `c = λ(m+1)`, the identity behind variant B.
pub fn einstein_identity_check_b<K: Scalar>(data: &HorizontalData<K>, lambda: &K) -> bool {
    let q = data.q();
    let c = lambda.clone() * K::from_i64(data.dim() as i64 + 1);
    let lhs = &data.qr() - &q.scale(&c);
    let rhs = (&Poly::x() * &q).derivative().scale(&(-lambda.clone()));
    (&lhs - &rhs).is_zero()
}

/// Eigenvalue data of the Ricci form of `ω_φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciComponents<K> {
    /// `(1/2Q)(φQ)'`.
    pub u: RationalFn<K>,
    /// Vertical eigenvalue `−(1/2)[(1/Q)(φQ)']'`.
    pub v: RationalFn<K>,
    /// Trace over each horizontal block: `(r_i + u k_i b_i)/(1 − b_i τ)`.
    pub horizontal: Vec<RationalFn<K>>,
}

pub fn ricci_components<K: Scalar>(data: &HorizontalData<K>, phi: &RationalFn<K>) -> Result<RicciComponents<K>> {
    let u = u_of(&data.q(), phi);
    let v = -&u.derivative();
    let mut horizontal = Vec::with_capacity(data.blocks().len());
    for b in data.blocks() {
        let kb = RationalFn::constant(K::from_i64(b.multiplicity as i64) * b.beta.clone());
        let top = &RationalFn::constant(b.ricci_trace.clone()) + &(&u * &kb);
        horizontal.push(&top / &RationalFn::from_poly(b.factor()));
    }
    let total = horizontal.iter().fold(v.clone(), |acc, h| &acc + h);
    if total != scalar_curvature(data, phi) {
        return Err(Error::Invariant("Ricci trace does not reproduce the scalar curvature".into()));
    }
    Ok(RicciComponents { u, v, horizontal })
}

/// `□ψ = (1/2Q)(φQψ')'` for `ψ = ψ(τ)`.
pub fn laplacian_invariant<K: Scalar>(data: &HorizontalData<K>, phi: &RationalFn<K>, psi: &RationalFn<K>) -> RationalFn<K> {
    let qf = RationalFn::from_poly(data.q());
    let inner = &(&qf * phi) * &psi.derivative();
    &inner.derivative() / &qf.scale(&K::from_i64(2))
}

/// Jet of a profile at a finite endpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct EndpointJet<K> {
    pub at: K,
    pub value: K,
    pub derivative: K,
    pub vanishing_order: usize,
}

/// A rational function positive on the interior of its momentum interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile<K> {
    phi: RationalFn<K>,
    domain: Interval<K>,
    lower_jet: Option<EndpointJet<K>>,
    upper_jet: Option<EndpointJet<K>>,
}

fn jet_at<K: Scalar>(phi: &RationalFn<K>, at: &K) -> EndpointJet<K> {
    let value = phi.eval(at).unwrap_or_else(K::zero);
    let derivative = phi.derivative().eval(at).unwrap_or_else(K::zero);
    EndpointJet { at: at.clone(), value, derivative, vanishing_order: phi.vanishing_order_at(at) }
}

impl<K: Scalar> Profile<K> {
    /// Checks the denominator on the closed domain and positivity inside.
    pub fn new(phi: RationalFn<K>, domain: Interval<K>) -> Result<Self> {
        if phi.is_zero() {
            return Err(Error::Precondition("profile is identically zero".into()));
        }
        let closure = Interval::new(domain.lower.clone(), domain.upper.clone(), true, true);
        if phi.den().degree().unwrap_or(0) > 0 && !isolate_real_roots(phi.den(), &closure, None)?.is_empty() {
            return Err(Error::Precondition(format!("profile {phi} has a pole on the closed domain")));
        }
        let open = Interval::new(domain.lower.clone(), domain.upper.clone(), false, false);
        if !is_positive_on(&(phi.num() * phi.den()), &open) {
            return Err(Error::Precondition(format!("profile {phi} is not positive on the interior")));
        }
        let lower_jet = domain.lower.as_ref().map(|a| jet_at(&phi, a));
        let upper_jet = domain.upper.as_ref().map(|b| jet_at(&phi, b));
        Ok(Profile { phi, domain, lower_jet, upper_jet })
    }

    pub fn phi(&self) -> &RationalFn<K> {
        &self.phi
    }

    pub fn domain(&self) -> &Interval<K> {
        &self.domain
    }

    pub fn lower_jet(&self) -> Option<&EndpointJet<K>> {
        self.lower_jet.as_ref()
    }

    pub fn upper_jet(&self) -> Option<&EndpointJet<K>> {
        self.upper_jet.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horizontal::SpectralBlock;
    use crate::scalar::Rational;

    type H = HorizontalData<Rational>;
    type P = Poly<Rational>;
    type F = RationalFn<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn pb() -> H {
        H::point_base(Interval::nonnegative_half_line())
    }

    fn poly(cs: &[Rational]) -> P {
        P::new(cs.to_vec())
    }

    fn rf(n: &[Rational], d: &[Rational]) -> F {
        F::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn prescribed_examples() {
        let c = q(3, 2);
        let phi = solve_prescribed(&pb(), &P::constant(c.clone()), &q(0, 1), &q(2, 1)).unwrap();
        assert_eq!(phi, F::from_poly(poly(&[q(0, 1), q(2, 1), -c])));
        let a2 = q(9, 4);
        let cyl = solve_prescribed(&pb(), &P::zero(), &a2, &q(0, 1)).unwrap();
        assert_eq!(cyl, F::constant(a2));
        // D3: (2τ + (λ−c)τ² + cβτ³/3)/(1−βτ)
        let (beta, lambda, c) = (q(-1, 3), q(2, 1), q(5, 7));
        let d3 = H::d3(beta.clone(), lambda.clone()).unwrap();
        let phi = solve_prescribed(&d3, &P::constant(c.clone()), &q(0, 1), &q(2, 1)).unwrap();
        let expect = rf(&[q(0, 1), q(2, 1), lambda.clone() - c.clone(), c.clone() * beta.clone() / q(3, 1)], &[q(1, 1), -beta.clone()]);
        assert_eq!(phi, expect);
        assert_eq!(scalar_curvature(&d3, &phi), F::constant(c.clone()));
        // variant B: ((λ−c)τ² + cβτ³/3)/(1−βτ)
        let phib = csc_profile_b(&d3, &c).unwrap();
        let expect = rf(&[q(0, 1), q(0, 1), lambda - c.clone(), c * beta.clone() / q(3, 1)], &[q(1, 1), -beta]);
        assert_eq!(phib, expect);
        let bounded = H::point_base(Interval::closed(q(-1, 1), q(1, 1)));
        assert!(solve_prescribed(&bounded, &P::zero(), &q(0, 1), &q(2, 1)).is_err());
    }

    #[test]
    fn scalar_curvature_examples() {
        assert_eq!(scalar_curvature(&pb(), &F::from_poly(P::from_i64s(&[1, 0, -1]))), F::constant(q(1, 1)));
        assert!(scalar_curvature(&pb(), &F::from_poly(P::from_i64s(&[0, 2]))).is_zero());
        for k in 0..6 {
            let d = H::d1(k).unwrap();
            let phi = rf(&[q(0, 1), q(2, 1), q(1, 1)], &[q(1, 1), q(k, 2)]);
            assert!(scalar_curvature(&d, &phi).is_zero(), "k = {k}");
            assert_eq!(csc_profile_a(&d, &q(0, 1)).unwrap(), phi);
        }
    }

    #[test]
    fn csc_examples() {
        let c = q(4, 1);
        assert_eq!(csc_profile_a(&pb(), &c).unwrap(), F::from_poly(P::from_i64s(&[0, 2, -4])));
        let beta = q(-3, 1);
        let d2 = H::make_flat_plane(beta.clone()).unwrap();
        assert_eq!(csc_profile_a(&d2, &q(0, 1)).unwrap(), rf(&[q(0, 1), q(2, 1)], &[q(1, 1), -beta]));
        assert_eq!(csc_profile_b(&pb(), &q(-9, 1)).unwrap(), F::from_poly(P::from_i64s(&[0, 0, 9])));
        // c = R(0): second-order vanishing at 0
        let d = H::new(
            vec![SpectralBlock::new(q(-1, 1), 2, q(3, 1)), SpectralBlock::new(q(-1, 2), 1, q(-1, 1))],
            Interval::nonnegative_half_line(),
        )
        .unwrap();
        let phi = csc_profile_b(&d, &d.r_at_zero()).unwrap();
        let d2phi = phi.derivative().derivative();
        assert!(d2phi.eval(&q(0, 1)).unwrap().is_zero());
    }

    #[test]
    fn einstein_profile_examples() {
        assert_eq!(einstein_profile(&pb(), &q(0, 1), EinsteinVariant::A).unwrap(), F::from_poly(P::from_i64s(&[0, 2])));
        assert_eq!(einstein_profile(&pb(), &q(-1, 1), EinsteinVariant::A).unwrap(), F::from_poly(P::from_i64s(&[0, 2, 1])));
        let eh = H::d1(2).unwrap();
        let phi = einstein_profile(&eh, &q(0, 1), EinsteinVariant::A).unwrap();
        assert_eq!(phi, rf(&[q(0, 1), q(2, 1), q(1, 1)], &[q(1, 1), q(1, 1)]));
        assert_eq!(phi, csc_profile_a(&eh, &q(0, 1)).unwrap());
        assert!(einstein_profile(&pb(), &q(1, 1), EinsteinVariant::A).is_err());
        assert!(einstein_profile(&pb(), &q(0, 1), EinsteinVariant::B).is_err());
        let phib = einstein_profile(&pb(), &q(-2, 1), EinsteinVariant::B).unwrap();
        assert_eq!(phib, F::from_poly(P::from_i64s(&[0, 0, 2])));
    }

    #[test]
    fn einstein_decision() {
        let check = |k: i64| {
            let d = H::d1(k).unwrap();
            is_einstein(&d, &csc_profile_a(&d, &q(0, 1)).unwrap())
        };
        assert_eq!(check(2).lambda, Some(q(0, 1)));
        assert!(matches!(check(1).failure, Some(EinsteinFailure::NotAffine)));
        assert!(matches!(check(0).failure, Some(EinsteinFailure::BlockMismatch { .. })));
        let d2 = H::make_flat_plane(q(-1, 1)).unwrap();
        let phi = csc_profile_a(&d2, &q(0, 1)).unwrap();
        assert!(!is_einstein(&d2, &phi).is_einstein());
    }

    #[test]
    fn identity_checks() {
        assert!(einstein_identity_check(&H::d1(2).unwrap(), &q(0, 1)));
        assert!(!einstein_identity_check(&H::d1(1).unwrap(), &q(0, 1)));
        // point base: c = λ(0+1) = λ, identity holds for every λ
        for l in [-3, 0, 2] {
            assert!(einstein_identity_check(&pb(), &q(l, 1)));
        }
        // r_i = k_i λ: the variant B identity
        let lambda = q(-2, 1);
        let d = H::new(
            vec![SpectralBlock::new(q(-1, 1), 2, q(-4, 1)), SpectralBlock::new(q(-1, 3), 1, q(-2, 1))],
            Interval::nonnegative_half_line(),
        )
        .unwrap();
        assert!(einstein_identity_check_b(&d, &lambda));
        let phi = einstein_profile(&d, &lambda, EinsteinVariant::B).unwrap();
        assert_eq!(phi, csc_profile_b(&d, &(lambda.clone() * q(4, 1))).unwrap());
        let (lhs, rhs) = {
            let qq = d.q();
            let c = lambda.clone() * q(4, 1);
            let lhs = &d.qr() - &qq.scale(&c);
            let displayed = (&P::x() * &qq).derivative().scale(&(lambda.clone() * q(-2, 1)));
            (lhs, displayed)
        };
        assert_ne!(lhs, rhs, "the doubled identity does not hold");
    }

    #[test]
    fn ricci_examples() {
        let sphere = F::from_poly(P::from_i64s(&[1, 0, -1]));
        let rc = ricci_components(&pb(), &sphere).unwrap();
        assert_eq!(rc.u, F::from_poly(P::from_i64s(&[0, -1])));
        assert_eq!(rc.v, F::constant(q(1, 1)));
        let flat = ricci_components(&pb(), &F::from_poly(P::from_i64s(&[0, 2]))).unwrap();
        assert_eq!(flat.u, F::constant(q(1, 1)));
        assert!(flat.v.is_zero());
        let lambda = q(-1, 2);
        let d = H::new(
            vec![
                SpectralBlock::new(q(-1, 1), 1, lambda.clone() + q(1, 1)),
                SpectralBlock::new(q(-2, 1), 2, q(2, 1) * (lambda.clone() + q(2, 1))),
            ],
            Interval::nonnegative_half_line(),
        )
        .unwrap();
        let phi = einstein_profile(&d, &lambda, EinsteinVariant::A).unwrap();
        let rc = ricci_components(&d, &phi).unwrap();
        assert_eq!(rc.u, F::from_poly(poly(&[q(1, 1), -lambda])));
    }

    #[test]
    fn laplacian_examples() {
        let phi = F::from_poly(P::from_i64s(&[0, 2]));
        assert!(laplacian_invariant(&pb(), &phi, &F::constant(q(5, 1))).is_zero());
        assert_eq!(laplacian_invariant(&pb(), &phi, &F::from_poly(P::x())), F::constant(q(1, 1)));
    }

    #[test]
    fn profile_construction() {
        let sphere = Profile::new(F::from_poly(P::from_i64s(&[1, 0, -1])), Interval::closed(q(-1, 1), q(1, 1))).unwrap();
        let lj = sphere.lower_jet().unwrap();
        assert_eq!((lj.vanishing_order, lj.derivative.clone()), (1, q(2, 1)));
        let uj = sphere.upper_jet().unwrap();
        assert_eq!(uj.derivative, q(-2, 1));
        assert!(Profile::new(F::from_poly(P::from_i64s(&[0, 2, -1])), Interval::positive_half_line()).is_err());
        assert!(Profile::new(rf(&[q(1, 1)], &[q(-1, 1), q(1, 1)]), Interval::positive_half_line()).is_err());
    }
}
