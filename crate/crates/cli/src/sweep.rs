//! Parameter sweeps: one row per value, computed in parallel, kept in order.

use momentum_core::csc::{c_threshold, classify_profile, CscSetup, Family};
use momentum_core::extremal::extremal_profile;
use momentum_core::geometry::geometry_report;
use momentum_core::io::{extended_json, scalar_json, Data, DataDoc};
use momentum_core::profile::{einstein_profile, EinsteinVariant};
use momentum_core::{Error, Extended, Interval, Scalar};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::outcome::{Failure, Outcome, RunResult, Table};
use crate::run::{family, line_only, load_data, parse_scalar, slopes};
use crate::task::{SweepParameter, TaskFile};

const MAX_POINTS: usize = 100_000;

/// `from, from + step, …` up to and including `to`.
pub fn grid<K: Scalar>(from: &K, to: &K, step: &K) -> RunResult<Vec<K>> {
    if !step.is_positive() || to < from {
        return Err(Failure::invalid("sweep range needs step > 0 and from <= to"));
    }
    let count = ((to.to_f64() - from.to_f64()) / step.to_f64()).floor() as usize;
    if count >= MAX_POINTS {
        return Err(Failure::invalid(format!("sweep has more than {MAX_POINTS} points")));
    }
    let mut out = Vec::with_capacity(count + 1);
    for i in 0..=count + 1 {
        let x = from.clone() + K::from_i64(i as i64) * step.clone();
        if x > *to && !(x.clone() - to.clone()).is_zero() {
            break;
        }
        out.push(x);
    }
    Ok(out)
}

fn text<K: Scalar>(x: &K) -> String {
    scalar_json(x).as_str().unwrap_or_default().to_string()
}

fn ext_text<K: Scalar>(x: &Extended<K>) -> String {
    extended_json(x).as_str().unwrap_or_default().to_string()
}

pub fn sweep<K: Scalar>(task: &TaskFile, mode: &str) -> RunResult<Outcome> {
    let p = &task.parameters;
    let spec = p.sweep.as_ref().ok_or_else(|| Failure::invalid("sweep needs parameters.sweep"))?;
    let values = grid::<K>(&parse_scalar("from", &spec.from)?, &parse_scalar("to", &spec.to)?, &parse_scalar("step", &spec.step)?)?;
    let data = load_data::<K>(task)?;
    let (header, rows): (Vec<&'static str>, Vec<RunResult<Vec<String>>>) = match spec.parameter {
        SweepParameter::C => {
            let fam = family(p);
            let setup = match &data {
                Data::Line(h) => CscSetup::line(h, fam)?,
                Data::Vector(v) => v.setup()?,
            };
            let rows = values
                .par_iter()
                .map(|c| {
                    let class = classify_profile(&setup, c)?;
                    Ok(vec![
                        text(c),
                        class.positive_on_half_line.to_string(),
                        class.habitat().name().to_string(),
                        class.complete().to_string(),
                        class.first_zero.as_ref().map_or(String::new(), |r| text(&r.approx())),
                    ])
                })
                .collect();
            (vec!["c", "positive", "habitat", "complete", "first_zero"], rows)
        }
        SweepParameter::B => {
            let h = line_only(&data, "b sweep")?;
            let (dm, dp) = slopes::<K>(p)?;
            let rows = values
                .par_iter()
                .map(|b| {
                    let s = extremal_profile(&h, b, &dm, &dp)?;
                    Ok(vec![text(b), text(&s.futaki), text(&s.sigma0), text(&s.sigma1), s.positive.to_string()])
                })
                .collect();
            (vec!["b", "futaki", "sigma0", "sigma1", "positive"], rows)
        }
        SweepParameter::Lambda => {
            let h = line_only(&data, "lambda sweep")?;
            let fam = family(p);
            let variant = if fam == Family::B { EinsteinVariant::B } else { EinsteinVariant::A };
            let domain = Interval::new(Some(K::zero()), None, fam == Family::A, false);
            let rows = values
                .par_iter()
                .map(|l| {
                    let phi = einstein_profile(&h, l, variant)?;
                    let (positive, habitat) = match geometry_report(&phi, &domain) {
                        Ok(g) => (true, g.habitat.name()),
                        Err(_) => (false, "not-positive"),
                    };
                    Ok(vec![text(l), positive.to_string(), habitat.to_string()])
                })
                .collect();
            (vec!["lambda", "positive", "habitat"], rows)
        }
        SweepParameter::Collapse => {
            let Data::Vector(v) = &data else {
                return Err(Failure::invalid("collapse sweep needs vector-bundle data"));
            };
            let rows = values
                .par_iter()
                .map(|a| {
                    if !a.is_positive() {
                        return Err(Error::InvalidInput("collapse parameter a must be positive".into()).into());
                    }
                    let line = v.rebase(a)?.line_data()?;
                    let t = c_threshold(&CscSetup::line(&line, Family::A)?)?;
                    Ok(vec![text(a), ext_text(&t.c0), t.attained.to_string()])
                })
                .collect();
            (vec!["a", "c0", "attained"], rows)
        }
    };
    let rows = rows.into_iter().collect::<RunResult<Vec<_>>>()?;
    let mut report = Map::new();
    report.insert("task".into(), json!(task.task.name()));
    report.insert("mode".into(), json!(mode));
    report.insert("data".into(), serde_json::to_value(DataDoc::from_data(&data)).expect("data documents serialize"));
    report.insert(
        "sweep".into(),
        json!({ "parameter": spec.parameter.name(), "from": spec.from, "to": spec.to, "step": spec.step, "count": rows.len() }),
    );
    let summary = match spec.parameter {
        SweepParameter::C => {
            let flip = rows.windows(2).find(|w| w[0][1] != w[1][1]).map(|w| (w[0][0].clone(), w[1][0].clone()));
            report.insert("positivity_flip".into(), flip.as_ref().map_or(Value::Null, |(a, b)| json!([a, b])));
            match flip {
                Some((a, b)) => format!("sweep c: {} rows, positivity flips between {a} and {b}", rows.len()),
                None => format!("sweep c: {} rows, positivity constant", rows.len()),
            }
        }
        SweepParameter::B => {
            let zeros = rows.iter().filter(|r| r[1] == "0").count();
            report.insert("futaki_zero_rows".into(), json!(zeros));
            format!("sweep b: {} rows, futaki zero on {zeros}", rows.len())
        }
        SweepParameter::Lambda => format!("sweep lambda: {} rows", rows.len()),
        SweepParameter::Collapse => {
            let value = |r: &Vec<String>| K::parse(&r[1]).map_or(f64::NEG_INFINITY, |x| x.to_f64());
            let min = rows.iter().map(value).fold(f64::INFINITY, f64::min);
            let min_text = rows.iter().find(|r| value(r) == min).map(|r| r[1].clone());
            report.insert("c0_min".into(), min_text.clone().map_or(Value::Null, Value::String));
            format!("sweep a: {} rows, min c0 = {}", rows.len(), min_text.unwrap_or_else(|| "none".into()))
        }
    };
    Ok(Outcome { report, tables: vec![Table { name: "sweep".into(), header, rows }], summary })
}
