//! Subcommand bodies and their JSON/CSV output.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use ffheight::algebra::rational::{format_rational, to_f64};
use ffheight::algebra::{random_identity_check, MultiPoly, Rational};
use ffheight::height::HeightEstimate;
use ffheight::reduction::{reduce_curve, reduce_point, theorem_a_report, HypersurfaceKind};
use ffheight::specialization::{
    self, injectivity_report, InjectivityOptions, RationalPointPn, Specialization, SpecializedCurve, Verdict,
};
use ffheight::{weil_height, Error, HeightOptions, Interval, ProjPoint, RatForm};
use serde_json::{json, Value};

use crate::config::{ConfigError, ExperimentConfig, NamedPoint};

/// Identity-check trials used by `reduce`.
const IDENTITY_TRIALS: u32 = 8;

#[derive(Debug)]
pub enum Outcome {
    Internal(String),
    Validation(String),
    Acceptance(String),
}

impl Outcome {
    pub fn code(&self) -> u8 {
        match self {
            Outcome::Internal(_) => 1,
            Outcome::Validation(_) => 2,
            Outcome::Acceptance(_) => 3,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Internal(m) => write!(f, "internal: {m}"),
            Outcome::Validation(m) => write!(f, "{m}"),
            Outcome::Acceptance(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::DoublingMismatch => Outcome::Internal(e.to_string()),
            other => Outcome::Validation(other.to_string()),
        }
    }
}

impl From<ConfigError> for Outcome {
    fn from(ConfigError(e): ConfigError) -> Self {
        Outcome::Validation(e)
    }
}

type Result<T> = std::result::Result<T, Outcome>;

/// Writes to stdout and, with `--out`, to files in that directory. Run
/// metadata goes to its own file so data files stay reproducible.
pub struct Output {
    dir: Option<PathBuf>,
}

impl Output {
    pub fn new(dir: Option<PathBuf>, command: &str, config: Option<&Path>) -> Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(|e| Outcome::Validation(format!("{}: {e}", d.display())))?;
            let meta = json!({
                "command": command,
                "config": config.map(|p| p.display().to_string()),
                "version": env!("CARGO_PKG_VERSION"),
            });
            write_file(&d.join("run_meta.json"), &pretty(&meta))?;
        }
        Ok(Output { dir })
    }

    fn emit(&self, file: &str, content: &str) -> Result<()> {
        print!("{content}");
        self.save(file, content)
    }

    fn save(&self, file: &str, content: &str) -> Result<()> {
        match &self.dir {
            Some(d) => write_file(&d.join(file), content),
            None => Ok(()),
        }
    }
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Outcome::Internal(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn r(x: &Rational) -> String {
    format_rational(x)
}

fn ratform(f: &RatForm) -> String {
    if f.den.is_one() {
        f.num.to_string()
    } else {
        format!("({}) / ({})", f.num, f.den)
    }
}

fn coords(p: &ProjPoint) -> Value {
    json!(p.coords().map(|c| c.to_string()))
}

fn interval_json(i: &Interval) -> Value {
    json!({ "mid": r(&i.mid), "radius": r(&i.radius), "lo": r(&i.lo()), "hi": r(&i.hi()) })
}

fn estimate_json(e: &HeightEstimate) -> Value {
    json!({
        "value": r(&e.value),
        "error_bound": r(&e.error_bound),
        "interval": interval_json(&e.interval()),
        "level": e.level,
        "torsion": e.torsion,
        "target_met": e.target_met,
        "constant_c": r(&e.constant_c),
        "apriori_c": r(&e.apriori_c),
        "apriori_holds": e.apriori_holds,
        "heights": e.heights,
    })
}

fn height_options(cfg: &ExperimentConfig) -> HeightOptions {
    let s = &cfg.settings;
    let mut opts = HeightOptions::new(s.target_error.clone());
    opts.max_level = s.max_level.max(opts.min_level);
    opts.degree_ceiling = s.degree_ceiling;
    opts
}

fn selected<'a>(cfg: &'a ExperimentConfig, name: Option<&str>) -> Result<Vec<&'a NamedPoint>> {
    match name {
        Some(n) => Ok(vec![cfg.point(n)?]),
        None => Ok(cfg.points.iter().collect()),
    }
}

pub fn height(cfg: &ExperimentConfig, point: Option<&str>, out: &Output) -> Result<()> {
    let model = cfg.curve.model();
    let opts = height_options(cfg);
    let mut results = Vec::new();
    for np in selected(cfg, point)? {
        let weil = weil_height(&np.point);
        let est = model.canonical_height(&np.point, &opts)?;
        let summary = if est.torsion {
            format!("weil={weil}, canonical=0 (exact)")
        } else {
            format!("weil={weil}, canonical∈[{:.6}±{:.6}]", to_f64(&est.value), to_f64(&est.error_bound))
        };
        results.push(json!({
            "point": np.name,
            "coordinates": coords(&np.point),
            "weil": weil,
            "canonical": estimate_json(&est),
            "summary": summary,
        }));
    }
    out.emit("height.json", &pretty(&Value::Array(results)))
}

fn error_tag(e: &Error) -> String {
    match e {
        Error::PoleAtGamma => "PoleAtGamma".into(),
        Error::SingularReduction => "SingularReduction".into(),
        Error::SingularConic => "SingularConic".into(),
        Error::NoRationalPoint(_) => "NoRationalPoint".into(),
        Error::DegreeExplosion { .. } => "DegreeExplosion".into(),
        other => format!("Rejected: {other}"),
    }
}

pub fn theorem_a(cfg: &ExperimentConfig, point: Option<&str>, levels: Option<u32>, out: &Output) -> Result<()> {
    let levels = levels.unwrap_or(cfg.settings.levels);
    let header: Vec<String> =
        ["point", "gamma", "degree", "m", "lhs", "rhs", "defect", "verdict"].iter().map(|s| s.to_string()).collect();
    let mut rows = Vec::new();
    let mut comparisons = Vec::new();
    let mut failures = Vec::new();
    for np in selected(cfg, point)? {
        for h in &cfg.hypersurfaces {
            let degree = h.gamma.as_ref().map(|g| g.degree()).unwrap_or_else(|_| h.form.degree());
            let report = h
                .gamma
                .clone()
                .and_then(|g| theorem_a_report(&cfg.curve, &np.point, &g, levels, cfg.settings.degree_ceiling));
            match report {
                Err(Error::Internal(m)) => return Err(Outcome::Internal(m)),
                Err(e) => {
                    rows.push(vec![
                        np.name.clone(),
                        h.name.clone(),
                        degree.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        error_tag(&e),
                    ]);
                }
                Ok(rep) => {
                    for (m, rec) in rep.levels.iter().enumerate() {
                        let verdict = if rec.defect == 0 { "ok" } else { "defect" };
                        if rec.defect != 0 && h.expect_good {
                            failures.push(format!("{} on {} at m={m}", np.name, h.name));
                        }
                        rows.push(vec![
                            np.name.clone(),
                            h.name.clone(),
                            degree.to_string(),
                            m.to_string(),
                            rec.lhs.to_string(),
                            rec.rhs.to_string(),
                            rec.defect.to_string(),
                            verdict.to_string(),
                        ]);
                    }
                    comparisons.push(json!({
                        "point": np.name,
                        "gamma": h.name,
                        "level": levels,
                        "base": interval_json(&rep.base.interval()),
                        "gamma_scaled": interval_json(&rep.gamma_scaled),
                        "combined_radius": r(&rep.combined_radius()),
                        "overlap": rep.overlap,
                        "verdict": rep.verdict(),
                    }));
                }
            }
        }
    }
    out.emit("theorem_a.csv", &csv_text(&header, &rows))?;
    out.save("theorem_a.json", &pretty(&Value::Array(comparisons)))?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Outcome::Acceptance(format!("nonzero defect on a good hypersurface: {}", failures.join("; "))))
    }
}

pub fn theorem_b(cfg: &ExperimentConfig, out: &Output) -> Result<()> {
    let line_cfg = cfg.line.as_ref().ok_or_else(|| Outcome::Validation("theorem-b needs a [line] section".into()))?;
    let line = cfg.hypersurface(&line_cfg.hypersurface)?.gamma.clone()?;
    let generators: Vec<&NamedPoint> =
        line_cfg.generators.iter().map(|g| cfg.point(g)).collect::<std::result::Result<_, _>>()?;
    let gens: Vec<ProjPoint> = generators.iter().map(|g| g.point.clone()).collect();
    let torsion: Vec<ProjPoint> = cfg.torsion.iter().map(|t| t.point.clone()).collect();
    let opts = InjectivityOptions {
        bound: line_cfg.bound,
        tol: cfg.settings.tol,
        max_level: cfg.settings.max_level,
        relation_bound: line_cfg.relation_bound,
    };
    let report = injectivity_report(&cfg.curve, &gens, &torsion, &line, &opts)?;

    let mut header = vec!["t".to_string(), "fiber_class".to_string()];
    for g in &generators {
        header.push(format!("hhat_{}", g.name));
        header.push(format!("level_{}", g.name));
    }
    header.extend(["det_value", "det_radius", "verdict", "detail"].map(String::from));
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|row| {
            let mut cells = vec![row.t.to_string(), row.fiber_class.map(|f| f.to_string()).unwrap_or_default()];
            for i in 0..generators.len() {
                match row.heights.get(i) {
                    Some(h) => {
                        cells.push(format!("{:.9}", h.value));
                        cells.push(h.level.to_string());
                    }
                    None => cells.extend([String::new(), String::new()]),
                }
            }
            match row.det {
                Some((v, rad)) => cells.extend([format!("{v:.9}"), format!("{rad:.9}")]),
                None => cells.extend([String::new(), String::new()]),
            }
            cells.push(row.verdict.to_string());
            cells.push(match &row.verdict {
                Verdict::TorsionCollision(d) | Verdict::Inconclusive(d) => d.clone(),
                Verdict::Dependent(c) => format!("relation {c:?}"),
                _ => String::new(),
            });
            cells
        })
        .collect();
    out.emit("theorem_b.csv", &csv_text(&header, &rows))?;
    let s = &report.summary;
    let summary = json!({
        "processed": s.processed,
        "independent": s.independent,
        "torsion_collisions": s.torsion_collisions,
        "inconclusive": s.inconclusive,
        "skipped": s.skipped,
        "dependent": s.dependent,
    });
    out.save("theorem_b_summary.json", &pretty(&summary))?;
    eprintln!("{}", serde_json::to_string(&summary).expect("json values serialize"));
    Ok(())
}

pub fn reduce(cfg: &ExperimentConfig, point: &str, gamma: &str, out: &Output) -> Result<()> {
    let np = cfg.point(point)?;
    let h = cfg.hypersurface(gamma)?;
    let g = h.gamma.clone()?;
    let reduced = reduce_curve(&cfg.curve, &g)?;
    let pg = reduce_point(&np.point, &g)?;
    let on_curve = reduced.model().equation(pg.x(), pg.y(), pg.z());
    let zero = MultiPoly::zero(on_curve.space());
    let check = random_identity_check(&on_curve, &zero, IDENTITY_TRIALS, cfg.settings.seed);
    let rec = ffheight::reduction::leh_defect(&cfg.curve, &np.point, &g)?;
    let v = json!({
        "point": np.name,
        "gamma": h.name,
        "kind": match g.kind() { HypersurfaceKind::Hyperplane => "hyperplane", HypersurfaceKind::Conic => "conic" },
        "degree": g.degree(),
        "theta": g.theta().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "a": ratform(reduced.model().a()),
        "b": ratform(reduced.model().b()),
        "reduced_point": coords(&pg),
        "on_reduced_curve": check.holds(),
        "lhs": rec.lhs,
        "rhs": rec.rhs,
        "defect": rec.defect,
    });
    out.emit("reduce.json", &pretty(&v))
}

fn parse_t(at: &str) -> Result<RationalPointPn> {
    at.parse().map_err(|e: Error| Outcome::Validation(e.to_string()))
}

fn fiber_json(e: &SpecializedCurve) -> Value {
    json!({
        "a": r(&e.a),
        "b": r(&e.b),
        "delta": r(&e.delta),
        "fiber_class": e.fiber_class.to_string(),
    })
}

pub fn specialize(cfg: &ExperimentConfig, point: &str, at: &str, out: &Output) -> Result<()> {
    let np = cfg.point(point)?;
    let t = parse_t(at)?;
    let e = specialization::specialize_curve(&cfg.curve, &t)?;
    let pt = specialization::specialize_point(&np.point, &t)?;
    let singular = match &pt {
        Specialization::Point(q) => Some(specialization::is_singular_specialized_point(&e, q)?),
        Specialization::Indeterminate => None,
    };
    let doubling = match singular {
        Some(false) => {
            let rec = specialization::dl_check(&cfg.curve, &np.point, &t)?;
            if !rec.holds() {
                return Err(Outcome::Internal(format!(
                    "specialization does not commute with doubling at {t}: {} vs {}",
                    rec.doubled_then_specialized, rec.specialized_then_doubled
                )));
            }
            json!({
                "doubled_then_specialized": rec.doubled_then_specialized.to_string(),
                "specialized_then_doubled": rec.specialized_then_doubled.to_string(),
                "holds": true,
            })
        }
        _ => Value::Null,
    };
    let v = json!({
        "point": np.name,
        "t": t.to_string(),
        "fiber": fiber_json(&e),
        "specialized": pt.to_string(),
        "singular": singular,
        "doubling": doubling,
    });
    out.emit("specialize.json", &pretty(&v))
}

pub fn classify_infinity(cfg: &ExperimentConfig, point: &str, at: &str, out: &Output) -> Result<()> {
    let np = cfg.point(point)?;
    let t = parse_t(at)?;
    let c = specialization::classify_infinity(&cfg.curve, &np.point, &t)?;
    let v = json!({
        "point": np.name,
        "t": t.to_string(),
        "case": c.case.to_string(),
        "transported": coords(&c.transported),
        "image": c.image.to_string(),
        "fiber": fiber_json(&c.fiber),
    });
    out.emit("classify_infinity.json", &pretty(&v))
}

pub fn nonsingular_multiple(cfg: &ExperimentConfig, point: &str, out: &Output) -> Result<()> {
    let np = cfg.point(point)?;
    let res = specialization::nonsingular_multiple(&cfg.curve, &np.point, &cfg.divisors, cfg.settings.multiple_cap)?;
    let v = json!({
        "point": np.name,
        "n": res.n,
        "per_divisor": res
            .per_divisor
            .iter()
            .map(|(d, k)| json!({ "divisor": d.to_string(), "multiple": k }))
            .collect::<Vec<_>>(),
        "multiple": coords(&res.multiple),
    });
    out.emit("nonsingular_multiple.json", &pretty(&v))
}
