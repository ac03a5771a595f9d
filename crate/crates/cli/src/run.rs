//! One task against the engine, generic over the scalar field.

use momentum_core::coords::{CoordRow, FibreCoords};
use momentum_core::csc::{analyze, classify_csc, CscSetup, Family};
use momentum_core::extremal::{extremal_profile_with, find_csc_classes, MomentConvention};
use momentum_core::geometry::{geometry_report, table2_generate, CurveRow, Side};
use momentum_core::io::{
    analysis_json, classification_json, decimal_json, einstein_json, extremal_json, geometry_json, rational_fn_json, root_json,
    scalar_json, Data, DataDoc,
};
use momentum_core::profile::{einstein_profile, is_einstein, scalar_curvature, EinsteinVariant};
use momentum_core::scalar::format_sig;
use momentum_core::vector_bundle::{
    c_threshold_vb, classify_csc_vb, einstein_check_vb, einstein_lambda_vb, einstein_profile_vb, einstein_scalar_curvature,
    scalar_curvature_vb, VectorBundleData,
};
use momentum_core::{Error, Extended, Interval, RationalFn, Scalar};
use serde_json::{json, Map, Value};

use crate::outcome::{Failure, Outcome, RunResult, Table};
use crate::task::{ConventionDoc, FamilyDoc, Parameters, TaskFile, TaskKind};

pub const COORD_HEADER: [&str; 6] = ["tau", "t", "s", "r", "phi", "phi_over_r"];

pub fn sig(x: f64) -> String {
    format_sig(x, 12)
}

pub fn parse_scalar<K: Scalar>(name: &str, s: &str) -> RunResult<K> {
    K::parse(s).map_err(|e| Failure::invalid(format!("parameter {name}: {e}")))
}

pub fn required<K: Scalar>(name: &str, s: &Option<String>) -> RunResult<K> {
    match s {
        Some(s) => parse_scalar(name, s),
        None => Err(Failure::invalid(format!("task needs parameter {name}"))),
    }
}

pub fn family(p: &Parameters) -> Family {
    match p.family {
        FamilyDoc::A => Family::A,
        FamilyDoc::B => Family::B,
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::A => "A",
        Family::B => "B",
        Family::C => "C",
    }
}

pub fn load_data<K: Scalar>(task: &TaskFile) -> RunResult<Data<K>> {
    let doc = task.data.as_ref().ok_or_else(|| Failure::invalid(format!("task {} needs data", task.task.name())))?;
    Ok(doc.parse::<K>()?)
}

pub fn line_only<K: Scalar>(data: &Data<K>, what: &str) -> RunResult<momentum_core::horizontal::HorizontalData<K>> {
    match data {
        Data::Line(h) => Ok(h.clone()),
        Data::Vector(_) => Err(Failure::invalid(format!("{what} needs line-bundle data"))),
    }
}

fn coord_rows(rows: &[CoordRow]) -> Vec<Vec<String>> {
    rows.iter().map(|r| vec![sig(r.tau), sig(r.t), sig(r.s), sig(r.r), sig(r.phi), sig(r.phi_over_r)]).collect()
}

/// Evenly spaced interior samples of `(lo, hi)`, or `(lo, lo + 10)` on half-lines.
fn default_taus(lo: f64, hi: Option<f64>, n: usize) -> Vec<f64> {
    let hi = hi.unwrap_or(lo + 10.0);
    (1..=n).map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64).collect()
}

/// Coordinate and conformal tables for a positive profile on `domain`.
fn coord_tables<K: Scalar>(phi: &RationalFn<K>, domain: &Interval<K>, p: &Parameters) -> RunResult<(Value, Vec<Table>)> {
    let coords = FibreCoords::with_default_origin(phi, domain)?;
    let lo = domain.lower.as_ref().map_or(-10.0, |x| x.to_f64());
    let hi = domain.upper.as_ref().map(|x| x.to_f64());
    let taus = p.tau_samples.clone().unwrap_or_else(|| default_taus(lo, hi, 20));
    let mut tables = vec![Table { name: "coords".into(), header: COORD_HEADER.to_vec(), rows: coord_rows(&coords.table_at_tau(&taus)?) }];
    if let Some(rs) = &p.r_samples {
        tables.push(Table { name: "conformal".into(), header: COORD_HEADER.to_vec(), rows: coord_rows(&coords.conformal_table(rs)?) });
    }
    let ext = |e: Extended<f64>| match e {
        Extended::Finite(x) => decimal_json(x),
        other => json!(if other == Extended::PosInfinity { "inf" } else { "-inf" }),
    };
    let (r0, r1) = coords.r_range();
    let summary = json!({
        "basepoint": decimal_json(coords.basepoint()),
        "t_range": [ext(coords.t_limit(Side::Lower)), ext(coords.t_limit(Side::Upper))],
        "s_range": [ext(coords.s_limit(Side::Lower)), ext(coords.s_limit(Side::Upper))],
        "r_range": [decimal_json(r0), decimal_json(r1)],
    });
    Ok((summary, tables))
}

/// Domain on which a csc profile of `family` lives: up to its first zero, if any.
fn csc_domain<K: Scalar>(family: Family, first_zero: Option<&momentum_core::IsolatedRoot<K>>) -> Interval<K> {
    let closed_lower = family != Family::B;
    match first_zero {
        None => Interval::new(Some(K::zero()), None, closed_lower, false),
        Some(r) => Interval::new(Some(K::zero()), Some(r.approx()), closed_lower, r.is_exact()),
    }
}

struct Ctx<'a> {
    task: &'a TaskFile,
    report: Map<String, Value>,
    tables: Vec<Table>,
}

impl Ctx<'_> {
    fn put(&mut self, key: &str, v: Value) {
        self.report.insert(key.into(), v);
    }
}

pub fn run<K: Scalar>(task: &TaskFile, mode: &str) -> RunResult<Outcome> {
    let mut ctx = Ctx { task, report: Map::new(), tables: Vec::new() };
    ctx.put("task", json!(task.task.name()));
    ctx.put("mode", json!(mode));
    let summary = match task.task {
        TaskKind::Table2 => table2::<K>(&mut ctx)?,
        TaskKind::Extremal => extremal::<K>(&mut ctx)?,
        kind => {
            let data = load_data::<K>(task)?;
            ctx.put("data", serde_json::to_value(DataDoc::from_data(&data)).expect("data documents serialize"));
            match (kind, &data) {
                (TaskKind::C0, _) => c0(&mut ctx, &data)?,
                (TaskKind::Analyze, _) => analyze_task(&mut ctx, &data)?,
                (TaskKind::Profile, _) | (TaskKind::Coords, _) => profile(&mut ctx, &data, kind == TaskKind::Coords)?,
                (TaskKind::Einstein, Data::Line(h)) => einstein_line(&mut ctx, h)?,
                (TaskKind::Einstein, Data::Vector(v)) => einstein_vector(&mut ctx, v)?,
                _ => unreachable!("handled above"),
            }
        }
    };
    Ok(Outcome { report: ctx.report, tables: ctx.tables, summary })
}

fn flat(ctx: &mut Ctx) -> String {
    ctx.put("c0", Value::Null);
    ctx.put("classification", json!("flat-bundle local product"));
    "flat-bundle local product".into()
}

fn c0<K: Scalar>(ctx: &mut Ctx, data: &Data<K>) -> RunResult<String> {
    let fam = family(&ctx.task.parameters);
    let analysis = match data {
        Data::Line(h) => match CscSetup::line(h, fam) {
            Err(Error::FlatBundle) => return Ok(flat(ctx)),
            other => analyze(&other?)?,
        },
        Data::Vector(v) => c_threshold_vb(v)?,
    };
    let a = analysis_json(&analysis);
    ctx.put("c0", a["c0"].clone());
    ctx.put("family", json!(family_name(if matches!(data, Data::Vector(_)) { Family::C } else { fam })));
    let summary = format!("c0 = {} J = {}", a["c0"].as_str().unwrap_or("?"), a["J"].as_str().unwrap_or("?"));
    ctx.put("analysis", a);
    Ok(summary)
}

fn analyze_task<K: Scalar>(ctx: &mut Ctx, data: &Data<K>) -> RunResult<String> {
    let mut summary = c0(ctx, data)?;
    if ctx.report.get("classification").is_some() {
        return Ok(summary);
    }
    if ctx.task.parameters.c.is_some() {
        summary = format!("{summary}; {}", profile(ctx, data, false)?);
    }
    if let Data::Vector(v) = data {
        let lambda = einstein_lambda_vb(v)?;
        ctx.put("einstein_lambda", lambda.as_ref().map_or(Value::Null, scalar_json));
    }
    Ok(summary)
}

fn profile<K: Scalar>(ctx: &mut Ctx, data: &Data<K>, with_coords: bool) -> RunResult<String> {
    let p = &ctx.task.parameters;
    let c: K = required("c", &p.c)?;
    let (fam, class) = match data {
        Data::Line(h) => {
            let fam = family(p);
            match classify_csc(h, fam, &c) {
                Err(Error::FlatBundle) => return Ok(flat(ctx)),
                other => (fam, other?),
            }
        }
        Data::Vector(v) => {
            let mut class = classify_csc_vb(v, &c)?;
            class.einstein = Some(einstein_check_vb(v, &class.phi)?);
            (Family::C, class)
        }
    };
    let sigma = match data {
        Data::Line(h) => scalar_curvature(h, &class.phi),
        Data::Vector(v) => scalar_curvature_vb(v, &class.phi)?,
    };
    if !(&sigma - &RationalFn::constant(c.clone())).is_zero() && K::EXACT {
        return Err(Error::Invariant(format!("scalar curvature of the csc profile is {sigma}, not {c}")).into());
    }
    let habitat = match data {
        Data::Vector(_) => class.habitat().vector_bundle_name(),
        Data::Line(_) => class.habitat().name(),
    };
    let mut j = classification_json(&class);
    j["family"] = json!(family_name(fam));
    j["habitat"] = json!(habitat);
    j["scalar_curvature"] = rational_fn_json(&sigma);
    let einstein = j["einstein"].clone();
    ctx.put("classification", j);
    ctx.put("einstein", einstein);
    if with_coords {
        let domain = csc_domain(fam, class.first_zero.as_ref());
        let (coords, tables) = coord_tables(&class.phi, &domain, &ctx.task.parameters)?;
        ctx.put("coords", coords);
        ctx.tables.extend(tables);
    }
    Ok(format!("c = {c} habitat = {habitat} complete = {}", class.complete()))
}

fn einstein_line<K: Scalar>(ctx: &mut Ctx, h: &momentum_core::horizontal::HorizontalData<K>) -> RunResult<String> {
    let p = &ctx.task.parameters;
    let fam = family(p);
    let (phi, via) = match (&p.lambda, &p.c) {
        (Some(l), _) => {
            let lambda: K = parse_scalar("lambda", l)?;
            let variant = if fam == Family::B { EinsteinVariant::B } else { EinsteinVariant::A };
            (einstein_profile(h, &lambda, variant)?, "lambda")
        }
        (None, Some(_)) => {
            let c: K = required("c", &p.c)?;
            let class = match classify_csc(h, fam, &c) {
                Err(Error::FlatBundle) => return Ok(flat(ctx)),
                other => other?,
            };
            ctx.put("classification", classification_json(&class));
            (class.phi, "c")
        }
        (None, None) => return Err(Failure::invalid("einstein task needs parameter c or lambda")),
    };
    let check = is_einstein(h, &phi);
    ctx.put("profile_from", json!(via));
    ctx.put("phi", rational_fn_json(&phi));
    ctx.put("einstein", einstein_json(&check));
    Ok(match &check.lambda {
        Some(l) => format!("einstein lambda = {l}"),
        None => "not einstein".into(),
    })
}

fn einstein_vector<K: Scalar>(ctx: &mut Ctx, v: &VectorBundleData<K>) -> RunResult<String> {
    let Some(lambda) = einstein_lambda_vb(v)? else {
        ctx.put("einstein", json!({ "lambda": null, "reason": "block conditions are inconsistent" }));
        return Ok("not einstein".into());
    };
    let phi = einstein_profile_vb(v, &lambda)?;
    let check = einstein_check_vb(v, &phi)?;
    if check.lambda.is_none() {
        return Err(Error::Invariant("solved lambda fails the vector Einstein check".into()).into());
    }
    let c = einstein_scalar_curvature(v, &lambda);
    let mut e = einstein_json(&check);
    e["scalar_curvature"] = scalar_json(&c);
    ctx.put("phi", rational_fn_json(&phi));
    ctx.put("einstein", e);
    Ok(format!("einstein lambda = {lambda} c = {c}"))
}

fn table2<K: Scalar>(ctx: &mut Ctx) -> RunResult<String> {
    let p = &ctx.task.parameters;
    let c: K = parse_scalar("c", p.c.as_deref().unwrap_or("1"))?;
    let alpha: K = parse_scalar("alpha", p.alpha.as_deref().unwrap_or("1"))?;
    let rows = table2_generate(&c, &alpha)?;
    let (cf, af) = (c.to_f64(), alpha.to_f64());
    let samples = p.r_samples.clone().unwrap_or_else(|| vec![0.1, 1.0, 10.0]);
    let mut conformal = Vec::new();
    for row in &rows {
        let coords = row.coords()?;
        let (lo, hi) = row.r_range;
        let inside: Vec<f64> = samples.iter().copied().filter(|r| *r > lo && *r < hi).collect();
        for cr in coords.conformal_table(&inside)? {
            let closed = row.conformal_closed_form(cr.r, cf, af);
            conformal.push(vec![row.label.to_string(), sig(cr.r), sig(cr.tau), sig(cr.phi_over_r), sig(closed)]);
        }
    }
    let csv_rows = rows.iter().map(|r| table2_row(r)).collect();
    ctx.tables.push(Table {
        name: "table2".into(),
        header: vec![
            "row",
            "interval",
            "phi",
            "r_range",
            "distance_lower",
            "distance_upper",
            "area_lower",
            "area_upper",
            "sigma",
            "metric",
            "conformal_factor",
            "domain",
            "normalization",
        ],
        rows: csv_rows,
    });
    ctx.tables.push(Table {
        name: "table2_conformal".into(),
        header: vec!["row", "r", "tau", "phi_over_r", "closed_form"],
        rows: conformal,
    });
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "row": r.label,
                "metric": r.name,
                "phi": rational_fn_json(&r.phi),
                "interval": interval_label(&r.domain),
                "r_range": r.r_range_label(),
                "sigma": scalar_json(&r.sigma),
                "domain": r.geometry.habitat.point_base_domain(),
                "normalization": r.normalization,
                "geometry": geometry_json(&r.geometry),
            })
        })
        .collect();
    ctx.put("c", scalar_json(&c));
    ctx.put("alpha", scalar_json(&alpha));
    ctx.put("rows", Value::Array(json_rows));
    Ok(format!("table2: {} rows", rows.len()))
}

fn interval_label<K: Scalar>(i: &Interval<K>) -> String {
    let end = |x: &Option<K>, inf: &str| x.as_ref().map_or(inf.to_string(), |v| v.to_string());
    format!("({}, {})", end(&i.lower, "-inf"), end(&i.upper, "inf"))
}

fn conformal_label(label: &str) -> &'static str {
    match label {
        "i" => "4/(c^2 (1+r)^2)",
        "ii" => "1",
        "iii" => "4/(c^2 (1-r)^2)",
        "iv" => "4/(c^2 r (log r)^2)",
        "v" => "alpha^2/r",
        _ => "alpha^2/(r cos^2(c alpha log r/2))",
    }
}

fn table2_row<K: Scalar>(r: &CurveRow<K>) -> Vec<String> {
    let g = &r.geometry;
    vec![
        r.label.to_string(),
        interval_label(&r.domain),
        r.phi.to_string(),
        r.r_range_label(),
        g.lower.distance.name().to_string(),
        g.upper.distance.name().to_string(),
        g.lower.area.name().to_string(),
        g.upper.area.name().to_string(),
        r.sigma.to_string(),
        r.name.to_string(),
        conformal_label(r.label).to_string(),
        g.habitat.point_base_domain().to_string(),
        r.normalization.to_string(),
    ]
}

pub fn convention(p: &Parameters) -> MomentConvention {
    match p.convention {
        ConventionDoc::Derived => MomentConvention::Derived,
        ConventionDoc::Literal => MomentConvention::Literal,
    }
}

pub fn slopes<K: Scalar>(p: &Parameters) -> RunResult<(K, K)> {
    match &p.slopes {
        Some([a, b]) => Ok((parse_scalar("slopes", a)?, parse_scalar("slopes", b)?)),
        None => Ok((K::from_i64(2), K::from_i64(-2))),
    }
}

fn extremal<K: Scalar>(ctx: &mut Ctx) -> RunResult<String> {
    let data = load_data::<K>(ctx.task)?;
    ctx.put("data", serde_json::to_value(DataDoc::from_data(&data)).expect("data documents serialize"));
    let h = line_only(&data, "extremal task")?;
    let p = &ctx.task.parameters;
    let (dm, dp) = slopes::<K>(p)?;
    let mut summary = Vec::new();
    if p.b.is_some() {
        let b: K = required("b", &p.b)?;
        let s = extremal_profile_with(&h, &b, &dm, &dp, convention(p))?;
        summary.push(format!("sigma = {} + {} tau positive = {}", s.sigma0, s.sigma1, s.positive));
        let mut j = extremal_json(&s, true);
        if s.positive {
            j["geometry"] = geometry_json(&geometry_report(&s.phi, &Interval::closed(-b.clone(), b.clone()))?);
        }
        ctx.put("extremal", j);
    }
    if let Some([lo, hi]) = &p.b_range {
        let (lo, hi): (K, K) = (parse_scalar("b_range", lo)?, parse_scalar("b_range", hi)?);
        let found = find_csc_classes(&h, (&lo, &hi), (&dm, &dp), 1e-10)?;
        let classes: Vec<Value> =
            found.classes.iter().map(|c| json!({ "b": root_json(&c.b), "solution": extremal_json(&c.solution, c.b.is_exact()) })).collect();
        summary.push(format!("{} csc classes", classes.len()));
        ctx.put("csc_classes", json!({ "identically_zero": found.identically_zero, "classes": classes }));
    }
    if summary.is_empty() {
        return Err(Failure::invalid("extremal task needs parameter b or b_range"));
    }
    ctx.put("slopes", json!([scalar_json(&dm), scalar_json(&dp)]));
    Ok(summary.join("; "))
}
