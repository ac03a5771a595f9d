//! JSON documents for data, and JSON renderings of every report.
//!
//! Scalars are strings (`"p/q"`, integers or decimals) so that exact values
//! survive a round trip.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::csc::{Borderline, CscAnalysis, CscClassification, EndKind, ExceptionalEntry};
use crate::error::{Error, Result};
use crate::extremal::ExtremalSolution;
use crate::geometry::{EndpointReport, GeometryReport};
use crate::horizontal::{AtomReading, HorizontalData, SpectralBlock};
use crate::profile::{EinsteinCheck, EinsteinFailure};
use crate::rational::RationalFn;
use crate::roots::{Extended, InfLocation, Interval, IsolatedRoot};
use crate::scalar::{format_sig, Scalar};
use crate::vector_bundle::VectorBundleData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub beta: String,
    pub multiplicity: u32,
    pub ricci_trace: String,
}

/// `null` bounds are infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDoc {
    pub lower: Option<String>,
    pub upper: Option<String>,
    #[serde(default = "yes")]
    pub closed_lower: bool,
    #[serde(default)]
    pub closed_upper: bool,
}

fn yes() -> bool {
    true
}

/// Named constructors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PresetDoc {
    PointBase,
    D1 {
        k: i64,
    },
    FlatPlane {
        beta: String,
    },
    D3 {
        beta: String,
        lambda: String,
    },
    Atom {
        m: u32,
        sigma: String,
        k: u32,
        alpha: String,
        #[serde(default)]
        literal: bool,
    },
    StableCurve {
        g: u32,
        n: u32,
        k: i64,
        s_c: String,
        s_f: String,
    },
    StableCurveBundle {
        g: u32,
        n: u32,
        k: i64,
        s: String,
    },
}

/// Line-bundle data, or vector-bundle data when `rank` is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct DataDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<BlockDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<IntervalDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau0: Option<String>,
}

/// Either kind of data after parsing.
#[derive(Clone, Debug, PartialEq)]
pub enum Data<K> {
    Line(HorizontalData<K>),
    Vector(VectorBundleData<K>),
}

fn blocks_of<K: Scalar>(docs: &[BlockDoc]) -> Result<Vec<SpectralBlock<K>>> {
    docs.iter().map(|b| Ok(SpectralBlock::new(K::parse(&b.beta)?, b.multiplicity, K::parse(&b.ricci_trace)?))).collect()
}

fn opt<K: Scalar>(s: &Option<String>) -> Result<Option<K>> {
    s.as_deref().map(K::parse).transpose()
}

impl IntervalDoc {
    pub fn to_interval<K: Scalar>(&self) -> Result<Interval<K>> {
        let lower = opt::<K>(&self.lower)?;
        let upper = opt::<K>(&self.upper)?;
        let closed_lower = self.closed_lower && lower.is_some();
        let closed_upper = self.closed_upper && upper.is_some();
        Ok(Interval::new(lower, upper, closed_lower, closed_upper))
    }

    pub fn from_interval<K: Scalar>(i: &Interval<K>) -> Self {
        IntervalDoc {
            lower: i.lower.as_ref().map(|x| x.to_string()),
            upper: i.upper.as_ref().map(|x| x.to_string()),
            closed_lower: i.closed_lower,
            closed_upper: i.closed_upper,
        }
    }
}

impl DataDoc {
    pub fn parse<K: Scalar>(&self) -> Result<Data<K>> {
        if let Some(p) = &self.preset {
            if !self.blocks.is_empty() || self.rank.is_some() {
                return Err(Error::InvalidInput("a preset cannot be combined with explicit blocks or rank".into()));
            }
            let line = |d: HorizontalData<K>| -> Result<Data<K>> {
                match &self.interval {
                    Some(i) => Ok(Data::Line(d.with_interval(i.to_interval()?)?)),
                    None => Ok(Data::Line(d)),
                }
            };
            return match p {
                PresetDoc::PointBase => line(HorizontalData::point_base(Interval::nonnegative_half_line())),
                PresetDoc::D1 { k } => line(HorizontalData::d1(*k)?),
                PresetDoc::FlatPlane { beta } => line(HorizontalData::make_flat_plane(K::parse(beta)?)?),
                PresetDoc::D3 { beta, lambda } => line(HorizontalData::d3(K::parse(beta)?, K::parse(lambda)?)?),
                PresetDoc::Atom { m, sigma, k, alpha, literal } => {
                    let reading = if *literal { AtomReading::Literal } else { AtomReading::Compatible };
                    line(HorizontalData::make_atom(*m, K::parse(sigma)?, *k, K::parse(alpha)?, reading)?)
                }
                PresetDoc::StableCurve { g, n, k, s_c, s_f } => {
                    line(HorizontalData::make_stable_curve(*g, *n, *k, K::parse(s_c)?, K::parse(s_f)?)?)
                }
                PresetDoc::StableCurveBundle { g, n, k, s } => {
                    let v = VectorBundleData::make_stable_curve(*g, *n, *k, K::parse(s)?)?;
                    match &self.tau0 {
                        Some(t) => Ok(Data::Vector(v.rebase(&K::parse(t)?)?)),
                        None => Ok(Data::Vector(v)),
                    }
                }
            };
        }
        let blocks = blocks_of::<K>(&self.blocks)?;
        match self.rank {
            Some(n) => {
                if self.interval.is_some() {
                    return Err(Error::InvalidInput("vector-bundle data lives on [0, inf); omit the interval".into()));
                }
                let tau0 = opt::<K>(&self.tau0)?.unwrap_or_else(K::one);
                Ok(Data::Vector(VectorBundleData::with_background(n, blocks, tau0)?))
            }
            None => {
                if self.tau0.is_some() {
                    return Err(Error::InvalidInput("tau0 is only meaningful with a rank".into()));
                }
                let interval = match &self.interval {
                    Some(i) => i.to_interval()?,
                    None => Interval::nonnegative_half_line(),
                };
                Ok(Data::Line(HorizontalData::new(blocks, interval)?))
            }
        }
    }

    /// Normal form: explicit, merged and sorted blocks.
    pub fn from_data<K: Scalar>(d: &Data<K>) -> Self {
        let block_docs = |bs: &[SpectralBlock<K>]| {
            bs.iter()
                .map(|b| BlockDoc { beta: b.beta.to_string(), multiplicity: b.multiplicity, ricci_trace: b.ricci_trace.to_string() })
                .collect()
        };
        match d {
            Data::Line(h) => DataDoc {
                preset: None,
                blocks: block_docs(h.blocks()),
                interval: Some(IntervalDoc::from_interval(h.interval())),
                rank: None,
                tau0: None,
            },
            Data::Vector(v) => DataDoc {
                preset: None,
                blocks: block_docs(v.blocks()),
                interval: None,
                rank: Some(v.rank()),
                tau0: Some(v.tau0().to_string()),
            },
        }
    }
}

/// Short exact values print as themselves; anything else as a decimal.
pub fn scalar_json<K: Scalar>(x: &K) -> Value {
    let text = x.to_string();
    if K::EXACT && text.len() > MAX_EXACT_CHARS {
        decimal_json(x.to_f64())
    } else {
        Value::String(text)
    }
}

const MAX_EXACT_CHARS: usize = 48;

pub fn decimal_json(x: f64) -> Value {
    Value::String(format_sig(x, 15))
}

pub fn extended_json<K: Scalar>(x: &Extended<K>) -> Value {
    match x {
        Extended::NegInfinity => json!("-inf"),
        Extended::PosInfinity => json!("inf"),
        Extended::Finite(v) => scalar_json(v),
    }
}

pub fn root_json<K: Scalar>(r: &IsolatedRoot<K>) -> Value {
    if r.is_exact() {
        json!({ "value": scalar_json(&r.lo), "exact": true, "multiplicity": r.multiplicity })
    } else {
        json!({
            "value": decimal_json(r.approx().to_f64()),
            "exact": false,
            "bracket": [decimal_json(r.lo.to_f64()), decimal_json(r.hi.to_f64())],
            "multiplicity": r.multiplicity,
            "factor": r.factor.to_string(),
        })
    }
}

/// A decimal when `exact` is false.
fn value_json<K: Scalar>(x: &K, exact: bool) -> Value {
    if exact {
        scalar_json(x)
    } else {
        decimal_json(x.to_f64())
    }
}

pub fn rational_fn_json<K: Scalar>(f: &RationalFn<K>) -> Value {
    json!({ "num": f.num().to_string(), "den": f.den().to_string() })
}

pub fn endpoint_json<K: Scalar>(e: &EndpointReport<K>) -> Value {
    json!({
        "endpoint": extended_json(&e.endpoint),
        "vanishing_order": e.vanishing_order,
        "derivative": e.derivative.as_ref().map(scalar_json),
        "growth_degree": e.growth_degree,
        "distance": e.distance.name(),
        "area": e.area.name(),
        "geometry": e.geometry.name(),
        "cone_angle_over_pi": e.cone_angle_over_pi.as_ref().map(scalar_json),
    })
}

pub fn geometry_json<K: Scalar>(g: &GeometryReport<K>) -> Value {
    let area = extended_json(&g.area_over_2pi);
    json!({
        "lower": endpoint_json(&g.lower),
        "upper": endpoint_json(&g.upper),
        "habitat": g.habitat.name(),
        "complete": g.complete,
        "fibre_area_over_2pi": area,
    })
}

pub fn einstein_json<K: Scalar>(e: &EinsteinCheck<K>) -> Value {
    match (&e.lambda, &e.failure) {
        (Some(l), _) => json!({ "lambda": scalar_json(l) }),
        (None, Some(EinsteinFailure::NotAffine)) => json!({ "lambda": null, "reason": "u is not affine" }),
        (None, Some(EinsteinFailure::WrongOffset { expected, found })) => json!({
            "lambda": null,
            "reason": "wrong constant term",
            "expected": scalar_json(expected),
            "found": scalar_json(found),
        }),
        (None, Some(EinsteinFailure::BlockMismatch { index, beta, lhs, rhs })) => json!({
            "lambda": null,
            "reason": "block condition fails",
            "block": index,
            "beta": scalar_json(beta),
            "lhs": scalar_json(lhs),
            "rhs": scalar_json(rhs),
        }),
        (None, None) => json!({ "lambda": null }),
    }
}

pub fn end_kind_name(k: EndKind) -> &'static str {
    match k {
        EndKind::Cusp => "cusp",
        EndKind::Compactification => "compactification",
    }
}

pub fn exceptional_json<K: Scalar>(e: &ExceptionalEntry<K>) -> Value {
    json!({
        "c": value_json(&e.c, e.exact),
        "b": root_json(&e.b),
        "end_kind": end_kind_name(e.end_kind),
    })
}

pub fn location_json<K: Scalar>(l: &InfLocation<K>) -> Value {
    match l {
        InfLocation::Interior(r) => json!({ "interior": root_json(r) }),
        InfLocation::AtZero => json!("zero"),
        InfLocation::AtInfinity => json!("infinity"),
        InfLocation::AtPole(r) => json!({ "pole": root_json(r) }),
    }
}

pub fn analysis_json<K: Scalar>(a: &CscAnalysis<K>) -> Value {
    let c0 = match &a.threshold.c0 {
        Extended::Finite(x) => value_json(x, a.threshold.exact),
        other => extended_json(other),
    };
    let c0_text = c0.as_str().unwrap_or("?").to_string();
    let j = if a.j_closed() { format!("(-inf, {c0_text}]") } else { format!("(-inf, {c0_text})") };
    json!({
        "c0": c0,
        "c0_exact": a.threshold.exact,
        "c0_location": location_json(&a.threshold.location),
        "attained": a.threshold.attained,
        "borderline": match a.borderline {
            Borderline::PositiveOnHalfLine => "positive-on-half-line",
            Borderline::FirstZero => "first-zero",
        },
        "J": j,
        "bounds": [scalar_json(&a.bounds.0), scalar_json(&a.bounds.1)],
        "exceptional": a.exceptional.entries.iter().map(exceptional_json).collect::<Vec<_>>(),
        "identically_satisfied": a.exceptional.identically_satisfied.iter().map(|k| end_kind_name(*k)).collect::<Vec<_>>(),
    })
}

pub fn classification_json<K: Scalar>(c: &CscClassification<K>) -> Value {
    json!({
        "c": scalar_json(&c.c),
        "phi": rational_fn_json(&c.phi),
        "positive_on_half_line": c.positive_on_half_line,
        "first_zero": c.first_zero.as_ref().map(root_json),
        "geometry": c.geometry.as_ref().map(geometry_json),
        "habitat": c.habitat().name(),
        "complete": c.complete(),
        "fibre_area_finite": c.fibre_area_finite(),
        "einstein": c.einstein.as_ref().map(einstein_json),
    })
}

pub fn extremal_json<K: Scalar>(s: &ExtremalSolution<K>, exact_b: bool) -> Value {
    json!({
        "b": value_json(&s.b, exact_b),
        "sigma0": value_json(&s.sigma0, exact_b),
        "sigma1": value_json(&s.sigma1, exact_b),
        "futaki": value_json(&s.futaki, exact_b),
        "determinant": value_json(&s.determinant, exact_b),
        "boundary": [scalar_json(&s.boundary.0), scalar_json(&s.boundary.1)],
        "boundary_exact": s.boundary_exact,
        "phi": if exact_b { rational_fn_json(&s.phi) } else { Value::Null },
        "positive": s.positive,
        "habitat": s.habitat().name(),
    })
}
