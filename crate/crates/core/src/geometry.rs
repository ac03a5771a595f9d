//! End geometry of a profile: distances, areas, cone angles, completeness, the
//! invariant subbundle it lives on, and the circle-invariant curves on `P¹`.

use crate::coords::{FibreCoords, Origin};
use crate::error::{Error, Result};
use crate::horizontal::HorizontalData;
use crate::poly::Poly;
use crate::profile::{scalar_curvature, Profile};
use crate::rational::RationalFn;
use crate::roots::{is_nonnegative_on, Extended, Interval, IsolatedRoot};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    Finite,
    Infinite,
}

impl Extent {
    pub fn name(self) -> &'static str {
        match self {
            Extent::Finite => "finite",
            Extent::Infinite => "infinite",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndGeometry {
    SmoothExtension,
    /// Simple zero with `|φ'| ≠ 2`: total angle `π|φ'|`.
    Cone,
    FiniteAreaCusp,
    InfiniteAreaCusp,
    Cylindrical,
    PlanarConical,
    Hyperbolic,
    Incomplete,
}

impl EndGeometry {
    pub fn name(self) -> &'static str {
        match self {
            EndGeometry::SmoothExtension => "smooth-extension",
            EndGeometry::Cone => "cone",
            EndGeometry::FiniteAreaCusp => "finite-area-cusp",
            EndGeometry::InfiniteAreaCusp => "infinite-area-cusp",
            EndGeometry::Cylindrical => "cylindrical",
            EndGeometry::PlanarConical => "planar-conical",
            EndGeometry::Hyperbolic => "hyperbolic",
            EndGeometry::Incomplete => "incomplete",
        }
    }

    /// Complete and smooth at this end.
    pub fn is_complete(self) -> bool {
        !matches!(self, EndGeometry::Cone | EndGeometry::Incomplete)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndpointReport<K> {
    pub side: Side,
    pub endpoint: Extended<K>,
    pub vanishing_order: Option<usize>,
    /// `φ'` at a simple zero.
    pub derivative: Option<K>,
    pub growth_degree: Option<i64>,
    pub distance: Extent,
    pub area: Extent,
    pub geometry: EndGeometry,
    /// Cone angle divided by `π`; equals 2 for a smooth extension.
    pub cone_angle_over_pi: Option<K>,
    pub t_diverges: bool,
    pub s_diverges: bool,
}

fn not_positive<K: Scalar>(phi: &RationalFn<K>, side: Side) -> Error {
    Error::Precondition(format!("profile {phi} is not positive next to the {side:?} endpoint"))
}

/// Classifies the `side` end of `domain` from the jet or growth of `phi`.
pub fn classify_endpoint<K: Scalar>(phi: &RationalFn<K>, domain: &Interval<K>, side: Side) -> Result<EndpointReport<K>> {
    if phi.is_zero() {
        return Err(Error::Precondition("profile is identically zero".into()));
    }
    let end = match side {
        Side::Lower => &domain.lower,
        Side::Upper => &domain.upper,
    };
    match end {
        Some(a) => {
            let den_a = phi.den().eval(a);
            if den_a.is_zero() {
                return Err(Error::Precondition(format!("profile has a pole at the endpoint {a}")));
            }
            let shifted = phi.num().compose_affine(&K::one(), a);
            let l = shifted.low_order().unwrap_or(0);
            let mut sign = shifted.coeff(l).sign() * den_a.sign();
            if side == Side::Upper && l % 2 == 1 {
                sign = -sign;
            }
            if sign <= 0 {
                return Err(not_positive(phi, side));
            }
            let derivative = (l == 1).then(|| shifted.coeff(1) / den_a.clone());
            let angle = derivative.as_ref().map(|d| d.abs());
            let two = K::from_i64(2);
            let geometry = match l {
                0 => EndGeometry::Incomplete,
                1 if angle.as_ref().is_some_and(|x| x.approx_eq(&two)) => EndGeometry::SmoothExtension,
                1 => EndGeometry::Cone,
                _ => EndGeometry::FiniteAreaCusp,
            };
            Ok(EndpointReport {
                side,
                endpoint: Extended::Finite(a.clone()),
                vanishing_order: Some(l),
                derivative,
                growth_degree: None,
                distance: if l >= 2 { Extent::Infinite } else { Extent::Finite },
                area: Extent::Finite,
                geometry,
                cone_angle_over_pi: angle,
                t_diverges: l >= 1,
                s_diverges: l >= 2,
            })
        }
        None => {
            let d = phi.growth_degree().expect("nonzero profile");
            let mut sign = (phi.num().leading() / phi.den().leading()).sign();
            if side == Side::Lower && d.rem_euclid(2) == 1 {
                sign = -sign;
            }
            if sign <= 0 {
                return Err(not_positive(phi, side));
            }
            let geometry = match d {
                d if d < 0 => EndGeometry::InfiniteAreaCusp,
                0 => EndGeometry::Cylindrical,
                1 => EndGeometry::PlanarConical,
                2 => EndGeometry::Hyperbolic,
                _ => EndGeometry::Incomplete,
            };
            Ok(EndpointReport {
                side,
                endpoint: if side == Side::Lower { Extended::NegInfinity } else { Extended::PosInfinity },
                vanishing_order: None,
                derivative: None,
                growth_degree: Some(d),
                distance: if d <= 2 { Extent::Infinite } else { Extent::Finite },
                area: Extent::Infinite,
                geometry,
                cone_angle_over_pi: None,
                t_diverges: d <= 1,
                s_diverges: d <= 2,
            })
        }
    }
}

/// How an end of the fibre looks in the holomorphic picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HabitatEnd {
    /// The orbit collapses and a point (or section) is added.
    Point,
    /// Infinite `t`: a puncture that stays missing.
    Puncture,
    /// Finite `t`: the metric lives inside a disc boundary.
    Boundary,
}

impl<K: Scalar> EndpointReport<K> {
    /// `None` for ends that are incomplete or carry a cone singularity.
    pub fn habitat_end(&self) -> Option<HabitatEnd> {
        if !self.geometry.is_complete() {
            return None;
        }
        Some(match (self.t_diverges, self.vanishing_order) {
            (true, Some(1)) => HabitatEnd::Point,
            (true, _) => HabitatEnd::Puncture,
            (false, _) => HabitatEnd::Boundary,
        })
    }
}

/// The invariant subbundle carrying the metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Habitat {
    /// `L̂`, the `P¹`-bundle.
    PBundle,
    /// `L`, the total space.
    Total,
    /// `L^×`, the total space minus the zero section.
    Punctured,
    /// `Δ(L)`, the disc bundle.
    Disc,
    /// `Δ^×(L)`, the punctured disc bundle.
    PuncturedDisc,
    Annulus,
    Incomplete,
}

impl Habitat {
    pub fn from_ends(a: Option<HabitatEnd>, b: Option<HabitatEnd>) -> Habitat {
        use HabitatEnd::*;
        match (a, b) {
            (Some(a), Some(b)) => match (a.min(b), a.max(b)) {
                (Point, Point) => Habitat::PBundle,
                (Point, Puncture) => Habitat::Total,
                (Puncture, Puncture) => Habitat::Punctured,
                (Point, Boundary) => Habitat::Disc,
                (Puncture, Boundary) => Habitat::PuncturedDisc,
                (Boundary, Boundary) => Habitat::Annulus,
                _ => unreachable!("ordered pair"),
            },
            _ => Habitat::Incomplete,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Habitat::PBundle => "L-hat",
            Habitat::Total => "L",
            Habitat::Punctured => "L-times",
            Habitat::Disc => "Delta(L)",
            Habitat::PuncturedDisc => "Delta-times(L)",
            Habitat::Annulus => "annulus",
            Habitat::Incomplete => "incomplete-slab",
        }
    }

    /// The domain in `P¹` when the base is a point.
    pub fn point_base_domain(self) -> &'static str {
        match self {
            Habitat::PBundle => "P1",
            Habitat::Total => "C",
            Habitat::Punctured => "C-times",
            Habitat::Disc => "Delta",
            Habitat::PuncturedDisc => "Delta-times",
            Habitat::Annulus => "annulus",
            Habitat::Incomplete => "incomplete-slab",
        }
    }

    /// Label on a vector bundle `E` reached through its tautological bundle.
    pub fn vector_bundle_name(self) -> &'static str {
        match self {
            Habitat::PBundle => "P(E+O)-extension",
            Habitat::Total => "E",
            Habitat::Disc => "Delta-in-E",
            _ => "incomplete",
        }
    }
}

impl PartialOrd for HabitatEnd {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for HabitatEnd {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*o as u8))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometryReport<K> {
    pub lower: EndpointReport<K>,
    pub upper: EndpointReport<K>,
    pub habitat: Habitat,
    /// Both ends complete and smooth.
    pub complete: bool,
    /// Fibre area divided by `2π`, i.e. the length of the momentum interval.
    pub area_over_2pi: Extended<K>,
}

impl<K: Scalar> GeometryReport<K> {
    pub fn from_ends(lower: EndpointReport<K>, upper: EndpointReport<K>) -> Self {
        let habitat = Habitat::from_ends(lower.habitat_end(), upper.habitat_end());
        let complete = lower.geometry.is_complete() && upper.geometry.is_complete();
        let area_over_2pi = match (&lower.endpoint, &upper.endpoint) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(b.clone() - a.clone()),
            _ => Extended::PosInfinity,
        };
        GeometryReport { lower, upper, habitat, complete, area_over_2pi }
    }
}

/// Positivity check followed by both end classifications and the habitat.
pub fn geometry_report<K: Scalar>(phi: &RationalFn<K>, domain: &Interval<K>) -> Result<GeometryReport<K>> {
    Profile::new(phi.clone(), domain.clone())?;
    let lower = classify_endpoint(phi, domain, Side::Lower)?;
    let upper = classify_endpoint(phi, domain, Side::Upper)?;
    Ok(GeometryReport::from_ends(lower, upper))
}

/// Upper end at an isolated zero `b` of the numerator of `phi`, which may be
/// irrational: the order is the root multiplicity and `|φ'(b)| = 2` is decided
/// to `1e-8` when `b` is only known approximately.
pub fn classify_root_endpoint<K: Scalar>(phi: &RationalFn<K>, root: &IsolatedRoot<K>) -> EndpointReport<K> {
    let l = root.multiplicity;
    let b = root.approx();
    let derivative = (l == 1).then(|| phi.derivative().eval(&b).unwrap_or_else(K::zero));
    let angle = derivative.as_ref().map(|d| d.abs());
    let smooth =
        angle.as_ref().is_some_and(|a| if root.is_exact() { a.approx_eq(&K::from_i64(2)) } else { (a.to_f64() - 2.0).abs() < 1e-8 });
    let geometry = match l {
        1 if smooth => EndGeometry::SmoothExtension,
        1 => EndGeometry::Cone,
        _ => EndGeometry::FiniteAreaCusp,
    };
    EndpointReport {
        side: Side::Upper,
        endpoint: Extended::Finite(b),
        vanishing_order: Some(l),
        derivative,
        growth_degree: None,
        distance: if l >= 2 { Extent::Infinite } else { Extent::Finite },
        area: Extent::Finite,
        geometry,
        cone_angle_over_pi: angle,
        t_diverges: true,
        s_diverges: l >= 2,
    }
}

pub fn habitat_of<K: Scalar>(phi: &RationalFn<K>, domain: &Interval<K>) -> Result<Habitat> {
    Ok(geometry_report(phi, domain)?.habitat)
}

/// `|φ'| ≤ 2` on the interval, i.e. `4·den⁴ − (num'·den − num·den')² ≥ 0`.
pub fn embeds_as_revolution<K: Scalar>(phi: &RationalFn<K>, interval: &Interval<K>) -> bool {
    let (n, d) = (phi.num(), phi.den());
    let dn = &(&n.derivative() * d) - &(n * &d.derivative());
    let d2 = d * d;
    let test = &(&d2 * &d2).scale(&K::from_i64(4)) - &(&dn * &dn);
    is_nonnegative_on(&test, interval)
}

/// One row of the table of complete circle-invariant constant-curvature
/// metrics on domains in `P¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow<K> {
    pub label: &'static str,
    pub name: &'static str,
    pub phi: RationalFn<K>,
    pub domain: Interval<K>,
    pub geometry: GeometryReport<K>,
    pub sigma: K,
    /// Numeric `r`-range `(e^{2t(inf I)}, e^{2t(sup I)})`.
    pub r_range: (f64, f64),
    /// Closed ends of the `r`-range (points added by a smooth extension).
    pub r_closed: (bool, bool),
    /// Closed-form `r`-range for comparison.
    pub r_range_expected: (f64, f64),
    pub normalization: &'static str,
    pub origin: Origin,
}

impl<K: Scalar> CurveRow<K> {
    pub fn coords(&self) -> Result<FibreCoords> {
        FibreCoords::new(&self.phi, &self.domain, self.origin)
    }

    /// Closed form of the conformal factor `φ/r` at `r`.
    pub fn conformal_closed_form(&self, r: f64, c: f64, alpha: f64) -> f64 {
        match self.label {
            "i" => 4.0 / (c * c * (1.0 + r).powi(2)),
            "ii" => 1.0,
            "iii" => 4.0 / (c * c * (1.0 - r).powi(2)),
            "iv" => 4.0 / (c * c * r * r.ln().powi(2)),
            "v" => alpha * alpha / r,
            _ => alpha * alpha / (r * (c * alpha * r.ln() / 2.0).cos().powi(2)),
        }
    }

    pub fn r_range_label(&self) -> String {
        let f = |x: f64| if x.is_infinite() { "inf".to_string() } else { crate::scalar::format_sig(x, 12) };
        format!(
            "{}{}, {}{}",
            if self.r_closed.0 { "[" } else { "(" },
            f(self.r_range.0),
            f(self.r_range.1),
            if self.r_closed.1 { "]" } else { ")" }
        )
    }
}

/// The six canonical profiles `2τ − c²τ²`, `2τ`, `2τ + c²τ²`, `c²τ²`, `α²`,
/// `α² + c²τ²` over a point, classified.
pub fn table2_generate<K: Scalar>(c: &K, alpha: &K) -> Result<Vec<CurveRow<K>>> {
    if !c.is_positive() || !alpha.is_positive() {
        return Err(Error::InvalidInput("c and alpha must be positive".into()));
    }
    let c2 = c.clone() * c.clone();
    let a2 = alpha.clone() * alpha.clone();
    let two = K::from_i64(2);
    let zero = K::zero();
    let (cf, af) = (c.to_f64(), alpha.to_f64());
    let poly = |cs: Vec<K>| RationalFn::from_poly(Poly::new(cs));
    let half = Interval::new(Some(zero.clone()), None, true, false);
    let open_half = Interval::positive_half_line();
    let e = (std::f64::consts::PI / (cf * af)).exp();
    type Row<'a, K> = (&'a str, &'a str, RationalFn<K>, Interval<K>, (f64, f64), &'a str, Origin);
    let rows: Vec<Row<K>> = vec![
        (
            "i",
            "Fubini-Study",
            poly(vec![zero.clone(), two.clone(), -c2.clone()]),
            Interval::closed(zero.clone(), two.clone() / c2.clone()),
            (0.0, f64::INFINITY),
            "tau0 = 1/c^2",
            Origin::Basepoint(1.0 / (cf * cf)),
        ),
        (
            "ii",
            "flat plane",
            poly(vec![zero.clone(), two.clone()]),
            half.clone(),
            (0.0, f64::INFINITY),
            "tau0 = 1/2",
            Origin::Basepoint(0.5),
        ),
        ("iii", "Poincare disc", poly(vec![zero.clone(), two.clone(), c2.clone()]), half, (0.0, 1.0), "t(inf) = 0", Origin::UpperEnd),
        (
            "iv",
            "hyperbolic cusp",
            poly(vec![zero.clone(), zero.clone(), c2.clone()]),
            open_half,
            (0.0, 1.0),
            "t(inf) = 0",
            Origin::UpperEnd,
        ),
        ("v", "flat cylinder", poly(vec![a2.clone()]), Interval::real_line(), (0.0, f64::INFINITY), "tau0 = 0", Origin::Basepoint(0.0)),
        (
            "vi",
            "hyperbolic annulus",
            poly(vec![a2, zero.clone(), c2]),
            Interval::real_line(),
            (1.0 / e, e),
            "tau0 = 0",
            Origin::Basepoint(0.0),
        ),
    ];
    let point = HorizontalData::point_base(Interval::real_line());
    rows.into_iter()
        .map(|(label, name, phi, domain, expected, normalization, origin)| {
            let geometry = geometry_report(&phi, &domain)?;
            let sigma = scalar_curvature(&point, &phi)
                .as_poly()
                .and_then(|p| (p.degree().unwrap_or(0) == 0).then(|| p.coeff(0)))
                .ok_or_else(|| Error::Invariant("scalar curvature of a quadratic profile is not constant".into()))?;
            let coords = FibreCoords::new(&phi, &domain, origin)?;
            let r_range = coords.r_range();
            let point_end = |r: &EndpointReport<K>| r.habitat_end() == Some(HabitatEnd::Point);
            let r_closed = (point_end(&geometry.lower), point_end(&geometry.upper));
            Ok(CurveRow { label, name, phi, domain, geometry, sigma, r_range, r_closed, r_range_expected: expected, normalization, origin })
        })
        .collect()
}
