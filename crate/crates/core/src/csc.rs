//! Allowable constant scalar curvatures: the threshold `c0`, its bounds, and
//! the finite set of exceptional curvatures above it.

use crate::error::{Error, Result};
use crate::geometry::{classify_endpoint, classify_root_endpoint, GeometryReport, Habitat, Side};
use crate::horizontal::HorizontalData;
use crate::poly::Poly;
use crate::profile::{is_einstein, EinsteinCheck};
use crate::rational::RationalFn;
use crate::roots::{
    infimum_on_positive, is_positive_on, isolate_real_roots, limit_at_zero_right, Extended, InfLocation, Interval, IsolatedRoot,
    DEFAULT_DELTA,
};
use crate::scalar::Scalar;

/// Which boundary behaviour at `τ = 0` the profiles carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Line bundle, `φ(0) = 0`, `φ'(0) = 2` (zero section added).
    A,
    /// Line bundle, `φ(0) = φ'(0) = 0` (cusp at the zero section).
    B,
    /// Vector bundle of rank `n` via its tautological line bundle.
    C,
}

/// Everything the threshold analysis needs: `Q`, `QR`, `R(∞)` and the family.
#[derive(Clone, Debug, PartialEq)]
pub struct CscSetup<K> {
    pub q: Poly<K>,
    pub qr: Poly<K>,
    pub r_inf: K,
    pub family: Family,
    /// Analytic lower bound for `c0`.
    pub lower_bound: K,
    /// `R(0)`, finite for line bundles.
    pub r_zero: Option<K>,
}

/// `φ_c Q = 2(P1 − (c − R(∞)) P2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct P1P2<K> {
    pub p1: Poly<K>,
    pub p2: Poly<K>,
    pub r_inf: K,
}

impl<K: Scalar> CscSetup<K> {
    /// Setup for line-bundle data on `[0, ∞)` (family A) or `(0, ∞)` (family B).
    pub fn line(data: &HorizontalData<K>, family: Family) -> Result<Self> {
        if family == Family::C {
            return Err(Error::InvalidInput("family C needs vector-bundle data".into()));
        }
        match &data.interval().lower {
            Some(l) if l.is_zero() && data.interval().upper.is_none() => {}
            _ => return Err(Error::Precondition("threshold analysis needs the interval [0, inf) or (0, inf)".into())),
        }
        if !data.blocks().is_empty() && data.is_flat() {
            return Err(Error::FlatBundle);
        }
        let r_inf = data.r_infinity()?;
        let lower_bound = data
            .blocks()
            .iter()
            .filter(|b| !b.beta.is_zero())
            .fold(r_inf.clone(), |acc, b| acc + K::min_of(K::zero(), b.ricci_trace.clone()));
        Ok(CscSetup { q: data.q(), qr: data.qr(), r_inf, family, lower_bound, r_zero: Some(data.r_at_zero()) })
    }

    pub fn p1_p2(&self) -> P1P2<K> {
        let zero = K::zero();
        let r0q = &self.qr - &self.q.scale(&self.r_inf);
        let mut p1 = r0q.double_integral_from(&zero);
        if self.family == Family::A {
            p1 = &p1 + &Poly::x();
        }
        let p2 = self.q.double_integral_from(&zero);
        P1P2 { p1, p2, r_inf: self.r_inf.clone() }
    }

    /// `φ_c Q` straight from the integral formula.
    pub fn phi_q(&self, c: &K) -> Poly<K> {
        let zero = K::zero();
        let integrand = &self.qr - &self.q.scale(c);
        let mut n = integrand.double_integral_from(&zero).scale(&K::from_i64(2));
        if self.family == Family::A {
            n = &n + &Poly::monomial(K::from_i64(2), 1);
        }
        n
    }

    pub fn profile(&self, c: &K) -> RationalFn<K> {
        RationalFn::new(self.phi_q(c), self.q.clone()).expect("Q is nonzero")
    }

    /// `C(τ) − R(∞) = P1/P2`.
    pub fn c_minus_r_inf(&self) -> RationalFn<K> {
        let pp = self.p1_p2();
        RationalFn::new(pp.p1, pp.p2).expect("P2 is nonzero")
    }

    /// `C(τ) = R(∞) + P1/P2`.
    pub fn c_function(&self) -> RationalFn<K> {
        &self.c_minus_r_inf() + &RationalFn::constant(self.r_inf.clone())
    }
}

impl<K: Scalar> P1P2<K> {
    /// Checks `2(P1 − c̃ P2) ≡ φ_c Q` against the setup's direct formula.
    pub fn verify(&self, setup: &CscSetup<K>, c: &K) -> Result<()> {
        let ct = c.clone() - self.r_inf.clone();
        let lhs = (&self.p1 - &self.p2.scale(&ct)).scale(&K::from_i64(2));
        if lhs == setup.phi_q(c) {
            Ok(())
        } else {
            Err(Error::Invariant("2(P1 - c~ P2) differs from phi Q".into()))
        }
    }
}

/// What happens to `φ_{c0}` at the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Borderline {
    /// `φ_{c0} > 0` on `(0, ∞)`: `c0` is allowed and the fibre area is infinite.
    PositiveOnHalfLine,
    /// `φ_{c0}` reaches zero at a finite point: finite fibre area.
    FirstZero,
}

/// Threshold value and where the infimum of `C` sits.
#[derive(Clone, Debug, PartialEq)]
pub struct Threshold<K> {
    pub c0: Extended<K>,
    pub attained: bool,
    pub location: InfLocation<K>,
    /// `true` when `c0` is an exact value of the scalar field.
    pub exact: bool,
}

pub fn c_threshold<K: Scalar>(setup: &CscSetup<K>) -> Result<Threshold<K>> {
    let inf = infimum_on_positive(&setup.c_minus_r_inf(), DEFAULT_DELTA)?;
    let shift = |v: Extended<K>| match v {
        Extended::Finite(x) => Extended::Finite(x + setup.r_inf.clone()),
        other => other,
    };
    let exact = match &inf.location {
        InfLocation::Interior(r) => r.is_exact(),
        _ => true,
    };
    Ok(Threshold { c0: shift(inf.value), attained: inf.attained, location: inf.location, exact })
}

/// Analytic bracket `(lower, upper)` for `c0`.
pub fn c0_bounds<K: Scalar>(setup: &CscSetup<K>) -> (K, K) {
    let upper = match (setup.family, &setup.r_zero) {
        (Family::B, Some(r0)) => K::min_of(setup.r_inf.clone(), r0.clone()),
        _ => setup.r_inf.clone(),
    };
    (setup.lower_bound.clone(), upper)
}

/// Decides the borderline case, testing `φ_{c0}` directly when `c0` is exact.
pub fn borderline_kind<K: Scalar>(setup: &CscSetup<K>, t: &Threshold<K>) -> Borderline {
    match (&t.c0, t.exact) {
        (Extended::Finite(c0), true) => {
            if is_positive_on(&setup.phi_q(c0), &Interval::positive_half_line()) {
                Borderline::PositiveOnHalfLine
            } else {
                Borderline::FirstZero
            }
        }
        _ if t.attained => Borderline::FirstZero,
        _ => Borderline::PositiveOnHalfLine,
    }
}

/// Boundary behaviour at the first zero `b` of `φ_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndKind {
    /// `φ'(b) = 0`: complete cusp of finite fibre area.
    Cusp,
    /// `φ'(b) = −2`: smooth compactification by a section at infinity.
    Compactification,
}

impl EndKind {
    pub fn slope(self) -> i64 {
        match self {
            EndKind::Cusp => 0,
            EndKind::Compactification => -2,
        }
    }
}

/// One exceptional curvature `c > c0` with its first zero `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalEntry<K> {
    pub c: K,
    pub b: IsolatedRoot<K>,
    pub end_kind: EndKind,
    /// `c` and `b` are exact (rational) rather than refined approximations.
    pub exact: bool,
}

/// Exceptional curvatures, plus the kinds whose defining equation holds identically.
#[derive(Clone, Debug, PartialEq)]
pub struct Exceptional<K> {
    pub entries: Vec<ExceptionalEntry<K>>,
    pub identically_satisfied: Vec<EndKind>,
}

/// `2D − e Q P2` with `D = P1'P2 − P1P2'`.
pub fn exceptional_polynomial<K: Scalar>(setup: &CscSetup<K>, kind: EndKind) -> Poly<K> {
    let pp = setup.p1_p2();
    let d = &(&pp.p1.derivative() * &pp.p2) - &(&pp.p1 * &pp.p2.derivative());
    let e = K::from_i64(kind.slope());
    &d.scale(&K::from_i64(2)) - &(&setup.q * &pp.p2).scale(&e)
}

fn separate<K: Scalar>(a: &mut IsolatedRoot<K>, b: &mut IsolatedRoot<K>) {
    let mut guard = 0;
    while !(a.hi < b.lo || b.hi < a.lo) && guard < 200 {
        a.bisect();
        b.bisect();
        guard += 1;
    }
}

fn c_at<K: Scalar>(cf: &RationalFn<K>, x: &K) -> Option<K> {
    cf.eval(x)
}

/// `C(τ) > C(b)` for every `τ ∈ (0, b)`.
fn is_first_zero<K: Scalar>(cf: &RationalFn<K>, crit: &[IsolatedRoot<K>], b: &IsolatedRoot<K>, cb: &K, tol: &K) -> bool {
    let strictly_above = |v: &K| (v.clone() - cb.clone()) > tol.clone();
    match limit_at_zero_right(cf) {
        Extended::PosInfinity => {}
        Extended::Finite(v) if strictly_above(&v) => {}
        _ => return false,
    }
    for xi in crit {
        let mut xi = xi.clone();
        let mut bb = b.clone();
        if xi.factor == bb.factor && xi.lo <= bb.hi && bb.lo <= xi.hi {
            // the same root of the same factor: b itself is critical
            continue;
        }
        separate(&mut xi, &mut bb);
        if xi.hi < bb.lo {
            match c_at(cf, &xi.approx()) {
                Some(v) if strictly_above(&v) => {}
                _ => return false,
            }
        }
    }
    true
}

/// Curvatures `c > c0` whose profile first vanishes with slope `0` or `−2`.
pub fn exceptional_curvatures<K: Scalar>(setup: &CscSetup<K>, threshold: &Threshold<K>) -> Result<Exceptional<K>> {
    let half_line = Interval::positive_half_line();
    let delta = K::from_f64(DEFAULT_DELTA);
    let tol = if K::EXACT { K::from_f64(1e-9) } else { K::from_f64(1e-8) };
    let cf = setup.c_minus_r_inf();
    let pp = setup.p1_p2();
    let d = &(&pp.p1.derivative() * &pp.p2) - &(&pp.p1 * &pp.p2.derivative());
    let crit = if d.is_zero() { Vec::new() } else { isolate_real_roots(&d, &half_line, Some(&delta))? };
    let mut entries = Vec::new();
    let mut identically_satisfied = Vec::new();
    for kind in [EndKind::Cusp, EndKind::Compactification] {
        let g = exceptional_polynomial(setup, kind);
        if g.is_zero() {
            identically_satisfied.push(kind);
            continue;
        }
        for b in isolate_real_roots(&g, &half_line, Some(&delta))? {
            let x = b.approx();
            let Some(ct) = c_at(&cf, &x) else { continue };
            let c = ct.clone() + setup.r_inf.clone();
            let above = match &threshold.c0 {
                Extended::Finite(c0) => (c.clone() - c0.clone()) > tol.clone(),
                Extended::NegInfinity => true,
                Extended::PosInfinity => false,
            };
            if !above || !is_first_zero(&cf, &crit, &b, &ct, &tol) {
                continue;
            }
            let exact = b.is_exact();
            entries.push(ExceptionalEntry { c, b, end_kind: kind, exact });
        }
    }
    entries.sort_by(|a, b| a.c.partial_cmp(&b.c).unwrap_or(std::cmp::Ordering::Equal));
    Ok(Exceptional { entries, identically_satisfied })
}

impl<K: Scalar> ExceptionalEntry<K> {
    /// Substitution check: `φ_c(b) = 0` and `φ_c'(b) = e`.
    ///
    /// Rational `b` is substituted literally. Otherwise `b` is a root of its
    /// square-free factor `F`, and `φ_c'(b) = 2D(b)/(Q P2)(b)` once `φ_c(b) = 0`,
    /// so the slope condition holds exactly iff `F` divides `2D − eQP2`.
    pub fn verify(&self, setup: &CscSetup<K>) -> Result<()> {
        let e = K::from_i64(self.end_kind.slope());
        if self.exact {
            let phi = setup.profile(&self.c);
            let v = phi.eval(&self.b.lo).ok_or_else(|| Error::Invariant("pole at b".into()))?;
            let dv = phi.derivative().eval(&self.b.lo).ok_or_else(|| Error::Invariant("pole at b".into()))?;
            if !v.is_zero() || !(dv - e).is_zero() {
                return Err(Error::Invariant(format!("exact substitution failed at b = {}", self.b.lo)));
            }
            return Ok(());
        }
        let g = exceptional_polynomial(setup, self.end_kind);
        if !g.div_rem(&self.b.factor).1.is_zero() {
            return Err(Error::Invariant("root factor does not divide the defining polynomial".into()));
        }
        if setup.p1_p2().p2.eval(&self.b.approx()).sign() <= 0 {
            return Err(Error::Invariant("P2 vanishes at b".into()));
        }
        let phi = setup.profile(&self.c);
        let x = self.b.approx().to_f64();
        let v = phi.eval_f64(x);
        let dv = phi.derivative().eval_f64(x);
        if v.abs() > 1e-7 || (dv - e.to_f64()).abs() > 1e-6 {
            return Err(Error::Invariant(format!("numeric substitution failed: phi = {v}, phi' = {dv}")));
        }
        Ok(())
    }
}

/// Threshold, bounds, borderline behaviour and the exceptional set together.
#[derive(Clone, Debug, PartialEq)]
pub struct CscAnalysis<K> {
    pub threshold: Threshold<K>,
    pub borderline: Borderline,
    pub bounds: (K, K),
    pub exceptional: Exceptional<K>,
}

impl<K: Scalar> CscAnalysis<K> {
    /// `J` contains `c0` itself.
    pub fn j_closed(&self) -> bool {
        self.borderline == Borderline::PositiveOnHalfLine
    }
}

pub fn analyze<K: Scalar>(setup: &CscSetup<K>) -> Result<CscAnalysis<K>> {
    let threshold = c_threshold(setup)?;
    let borderline = borderline_kind(setup, &threshold);
    let bounds = c0_bounds(setup);
    let exceptional = exceptional_curvatures(setup, &threshold)?;
    Ok(CscAnalysis { threshold, borderline, bounds, exceptional })
}

/// Everything known about the constant-curvature profile at one value of `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct CscClassification<K> {
    pub c: K,
    pub phi: RationalFn<K>,
    pub positive_on_half_line: bool,
    pub first_zero: Option<IsolatedRoot<K>>,
    /// `None` when `φ_c` is negative immediately to the right of `0`.
    pub geometry: Option<GeometryReport<K>>,
    pub einstein: Option<EinsteinCheck<K>>,
}

impl<K: Scalar> CscClassification<K> {
    pub fn habitat(&self) -> Habitat {
        self.geometry.as_ref().map_or(Habitat::Incomplete, |g| g.habitat)
    }

    pub fn complete(&self) -> bool {
        self.geometry.as_ref().is_some_and(|g| g.complete)
    }

    pub fn fibre_area_finite(&self) -> bool {
        self.geometry.as_ref().is_some_and(|g| g.area_over_2pi.finite().is_some())
    }
}

/// Profile, first zero and end geometry of `φ_c` for any family.
pub fn classify_profile<K: Scalar>(setup: &CscSetup<K>, c: &K) -> Result<CscClassification<K>> {
    let phi = setup.profile(c);
    let zero = K::zero();
    let lower_domain = Interval::new(Some(zero.clone()), None, setup.family != Family::B, false);
    let phi_q = setup.phi_q(c);
    let first_zero = if phi_q.is_zero() {
        None
    } else {
        isolate_real_roots(&phi_q, &Interval::positive_half_line(), Some(&K::from_f64(DEFAULT_DELTA)))?.into_iter().next()
    };
    let positive_on_half_line = !phi_q.is_zero() && first_zero.is_none() && phi_q.eval(&K::one()).is_positive();
    let geometry = match classify_endpoint(&phi, &lower_domain, Side::Lower) {
        Err(_) => None,
        Ok(lower) => Some(match &first_zero {
            None => GeometryReport::from_ends(lower, classify_endpoint(&phi, &lower_domain, Side::Upper)?),
            Some(b) => GeometryReport::from_ends(lower, classify_root_endpoint(&phi, b)),
        }),
    };
    Ok(CscClassification { c: c.clone(), phi, positive_on_half_line, first_zero, geometry, einstein: None })
}

/// Full report for line-bundle data in family A or B, including the Einstein test.
pub fn classify_csc<K: Scalar>(data: &HorizontalData<K>, family: Family, c: &K) -> Result<CscClassification<K>> {
    let setup = CscSetup::line(data, family)?;
    let mut out = classify_profile(&setup, c)?;
    out.einstein = Some(is_einstein(data, &out.phi));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horizontal::SpectralBlock;
    use crate::profile::{csc_profile_a, csc_profile_b};
    use crate::scalar::Rational;

    type H = HorizontalData<Rational>;
    type P = Poly<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn setup(d: &H) -> CscSetup<Rational> {
        CscSetup::line(d, Family::A).unwrap()
    }

    #[test]
    fn negative_profile_is_not_positive() {
        let d = H::new(vec![SpectralBlock::new(q(-1, 1), 1, q(0, 1))], Interval::nonnegative_half_line()).unwrap();
        let s = CscSetup::line(&d, Family::B).unwrap();
        assert!(classify_profile(&s, &q(-1, 1)).unwrap().positive_on_half_line);
        assert!(!classify_profile(&s, &q(1, 1)).unwrap().positive_on_half_line);
        assert!(!classify_profile(&s, &q(0, 1)).unwrap().positive_on_half_line);
    }

    #[test]
    fn p1_p2_examples() {
        let pb = H::point_base(Interval::nonnegative_half_line());
        let pp = setup(&pb).p1_p2();
        assert_eq!(pp.p1, P::x());
        assert_eq!(pp.p2, P::new(vec![q(0, 1), q(0, 1), q(1, 2)]));
        let d2 = H::make_flat_plane(q(-1, 1)).unwrap();
        let pp = setup(&d2).p1_p2();
        assert_eq!(pp.p1, P::x());
        assert_eq!(pp.p2, P::new(vec![q(0, 1), q(0, 1), q(1, 2), q(1, 6)]));
        for c in [q(-2, 1), q(1, 3)] {
            pp.verify(&setup(&d2), &c).unwrap();
            let phi = csc_profile_a(&d2, &c).unwrap();
            assert_eq!(setup(&d2).profile(&c), phi);
        }
        let s = CscSetup::line(&d2, Family::B).unwrap();
        assert_eq!(s.profile(&q(3, 1)), csc_profile_b(&d2, &q(3, 1)).unwrap());
    }

    #[test]
    fn threshold_examples() {
        let d2 = H::make_flat_plane(q(-1, 1)).unwrap();
        let t = c_threshold(&setup(&d2)).unwrap();
        assert_eq!(t.c0, Extended::Finite(q(0, 1)));
        assert_eq!(t.location, InfLocation::AtInfinity);
        for k in 1..4 {
            let d = H::d1(k).unwrap();
            assert_eq!(c_threshold(&setup(&d)).unwrap().c0, Extended::Finite(q(0, 1)));
        }
        let pb = H::point_base(Interval::nonnegative_half_line());
        let t = c_threshold(&setup(&pb)).unwrap();
        assert_eq!(t.c0, Extended::Finite(q(0, 1)));
        assert!(!t.attained);
        assert_eq!(CscSetup::line(&H::d1(0).unwrap(), Family::A), Err(Error::FlatBundle));
        let flat = H::single(q(0, 1), 2, q(1, 1)).unwrap();
        assert_eq!(CscSetup::line(&flat, Family::A), Err(Error::FlatBundle));
    }

    #[test]
    fn bounds_examples() {
        let d = H::new(
            vec![SpectralBlock::new(q(-1, 1), 1, q(-3, 1)), SpectralBlock::new(q(0, 1), 1, q(2, 1))],
            Interval::nonnegative_half_line(),
        )
        .unwrap();
        let s = setup(&d);
        assert_eq!(c0_bounds(&s), (q(-1, 1), q(2, 1)));
        let c0 = c_threshold(&s).unwrap().c0.finite().unwrap().clone();
        assert!(q(-1, 1) <= c0 && c0 <= q(2, 1));
        let d2 = H::make_flat_plane(q(-1, 1)).unwrap();
        assert_eq!(c0_bounds(&setup(&d2)), (q(0, 1), q(0, 1)));
    }

    #[test]
    fn exceptional_examples() {
        let d2 = H::make_flat_plane(q(-2, 1)).unwrap();
        let s = setup(&d2);
        let t = c_threshold(&s).unwrap();
        let ex = exceptional_curvatures(&s, &t).unwrap();
        assert!(ex.entries.is_empty());
        assert!(ex.identically_satisfied.is_empty());
        let pb = H::point_base(Interval::nonnegative_half_line());
        let s = setup(&pb);
        let ex = exceptional_curvatures(&s, &c_threshold(&s).unwrap()).unwrap();
        assert_eq!(ex.identically_satisfied, vec![EndKind::Compactification]);
    }

    #[test]
    fn borderline_cases() {
        // D1(1): c0 = 0 approached at infinity, φ_0 = (2τ+τ²)/(1+τ/2) > 0
        let d = H::d1(1).unwrap();
        let a = analyze(&setup(&d)).unwrap();
        assert_eq!(a.borderline, Borderline::PositiveOnHalfLine);
        assert!(a.j_closed());
    }

    #[test]
    fn classification_examples() {
        let burns = classify_csc(&H::d1(1).unwrap(), Family::A, &q(0, 1)).unwrap();
        assert_eq!(burns.habitat(), Habitat::Total);
        assert!(burns.complete());
        assert!(!burns.einstein.as_ref().unwrap().is_einstein());
        let eh = classify_csc(&H::d1(2).unwrap(), Family::A, &q(0, 1)).unwrap();
        assert_eq!(eh.einstein.unwrap().lambda, Some(q(0, 1)));

        let d2 = H::make_flat_plane(q(-1, 1)).unwrap();
        let disc = classify_csc(&d2, Family::A, &q(-1, 1)).unwrap();
        assert_eq!(disc.habitat(), Habitat::Disc);
        assert!(disc.complete());

        let pb = H::point_base(Interval::nonnegative_half_line());
        let sphere = classify_csc(&pb, Family::A, &q(1, 1)).unwrap();
        assert_eq!(sphere.habitat(), Habitat::PBundle);
        assert!(sphere.fibre_area_finite());
        assert_eq!(sphere.first_zero.unwrap().lo, q(2, 1));

        // c above c0 and not exceptional: cone at the first zero
        let cone = classify_csc(&d2, Family::A, &q(1, 1)).unwrap();
        assert_eq!(cone.habitat(), Habitat::Incomplete);
        assert!(!cone.complete());
    }
}
