//! Experiment configuration: a sectioned `key = value` text file.
//!
//! ```text
//! [curve]
//! n = 2
//! A = T1
//! B = T2^4 - T2^3 - T1*T2
//!
//! # affine x, y with optional x_den, y_den; or infinity = true
//! [point P]
//! x = T2
//! y = T2^2
//!
//! # claimed torsion points take the same keys
//! [torsion T]
//! infinity = true
//!
//! # hyperplane or smooth conic; point is an optional rational point on a
//! # conic; expect is good (default) or bad
//! [hypersurface L]
//! form = S2 - S0 - S1
//! expect = good
//!
//! [divisors]
//! factors = T1, T2
//!
//! # generators defaults to every [point]
//! [line]
//! hypersurface = L
//! bound = 20
//! generators = P
//! relation_bound = 3
//!
//! # tol is the Cauchy tolerance of heights over Q; target_error applies to
//! # canonical heights over the function field; theorem-a uses m = 0..=levels
//! [settings]
//! tol = 1/1000
//! target_error = 1/100
//! max_level = 8
//! levels = 2
//! degree_ceiling = 2000
//! multiple_cap = 12
//! seed = 0
//! ```

use std::fmt;
use std::path::Path;

use ffheight::algebra::rational::to_f64;
use ffheight::algebra::{parse_poly, parse_rational, MultiPoly, Rational, VarSpace};
use ffheight::reduction::RationalHypersurface;
use ffheight::{Error, FunctionFieldCurve, ParseError, ProjPoint};
use ini::Ini;
use num_bigint::BigInt;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for ConfigError {
    fn from(e: Error) -> Self {
        ConfigError(e.to_string())
    }
}

impl From<ParseError> for ConfigError {
    fn from(e: ParseError) -> Self {
        ConfigError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, ConfigError>;

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(ConfigError(msg.into()))
}

#[derive(Clone, Debug)]
pub struct NamedPoint {
    pub name: String,
    pub point: ProjPoint,
}

#[derive(Clone, Debug)]
pub struct NamedHypersurface {
    pub name: String,
    /// A rejected form keeps its error so reports can show it.
    pub gamma: std::result::Result<RationalHypersurface, Error>,
    pub form: MultiPoly,
    pub expect_good: bool,
}

#[derive(Clone, Debug)]
pub struct LineConfig {
    pub hypersurface: String,
    pub bound: i64,
    pub generators: Vec<String>,
    pub relation_bound: i64,
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub tol: f64,
    pub target_error: Rational,
    pub max_level: u32,
    pub levels: u32,
    pub degree_ceiling: u32,
    pub multiple_cap: u32,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tol: 1e-3,
            target_error: Rational::new(1.into(), 100.into()),
            max_level: ffheight::height::DEFAULT_MAX_LEVEL,
            levels: 2,
            degree_ceiling: ffheight::height::DEFAULT_DEGREE_CEILING,
            multiple_cap: ffheight::specialization::DEFAULT_MULTIPLE_CAP,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub curve: FunctionFieldCurve,
    pub points: Vec<NamedPoint>,
    pub torsion: Vec<NamedPoint>,
    pub hypersurfaces: Vec<NamedHypersurface>,
    pub divisors: Vec<MultiPoly>,
    pub line: Option<LineConfig>,
    pub settings: Settings,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let ini = Ini::load_from_str(text).map_err(|e| ConfigError(format!("config syntax: {e}")))?;
        let curve_sec = ini.section(Some("curve")).ok_or_else(|| ConfigError("missing [curve]".into()))?;
        let n: usize = required(curve_sec.get("n"), "curve.n")?
            .parse()
            .map_err(|_| ConfigError("curve.n must be a positive integer".into()))?;
        let curve = FunctionFieldCurve::parse(
            n,
            required(curve_sec.get("A"), "curve.A")?,
            required(curve_sec.get("B"), "curve.B")?,
        )?;
        let affine = VarSpace::Affine(n);
        let projective = VarSpace::Projective(n);

        let mut cfg = ExperimentConfig {
            curve,
            points: Vec::new(),
            torsion: Vec::new(),
            hypersurfaces: Vec::new(),
            divisors: Vec::new(),
            line: None,
            settings: Settings::default(),
        };

        for (name, props) in ini.iter() {
            let Some(name) = name else {
                if props.iter().next().is_some() {
                    return err("keys outside any section");
                }
                continue;
            };
            let mut words = name.split_whitespace();
            let kind = words.next().unwrap_or("");
            let label = words.next().map(str::to_string);
            let get = |k: &str| props.get(k);
            match (kind, label) {
                ("curve", None) => {}
                ("point", Some(label)) | ("torsion", Some(label)) => {
                    let point = if get("infinity").map(|v| v.trim() == "true").unwrap_or(false) {
                        ProjPoint::infinity(projective)
                    } else {
                        let poly = |k: &str, default: Option<&str>| -> Result<MultiPoly> {
                            let s = get(k).or(default).ok_or_else(|| ConfigError(format!("{name}: missing {k}")))?;
                            Ok(parse_poly(s, affine)?)
                        };
                        let (xn, xd) = (poly("x", None)?, poly("x_den", Some("1"))?);
                        let (yn, yd) = (poly("y", None)?, poly("y_den", Some("1"))?);
                        if xd.is_zero() || yd.is_zero() {
                            return err(format!("{name}: zero denominator"));
                        }
                        cfg.curve
                            .model()
                            .point(&xn * &yd, &yn * &xd, &xd * &yd)
                            .map_err(|e| ConfigError(format!("{name}: {e}")))?
                    };
                    let entry = NamedPoint { name: label, point };
                    if kind == "point" {
                        cfg.points.push(entry);
                    } else {
                        cfg.torsion.push(entry);
                    }
                }
                ("hypersurface", Some(label)) => {
                    let form = parse_poly(required(get("form"), &format!("{name}.form"))?, projective)?;
                    let rational_point = match get("point") {
                        None => None,
                        Some(s) => Some(parse_int_triple(s)?),
                    };
                    let expect_good = match get("expect").map(str::trim) {
                        None | Some("good") => true,
                        Some("bad") => false,
                        Some(other) => return err(format!("{name}.expect must be good or bad, got {other}")),
                    };
                    let gamma = if form.degree() == 1 {
                        RationalHypersurface::hyperplane(&form)
                    } else {
                        RationalHypersurface::conic(&form, rational_point)
                    };
                    cfg.hypersurfaces.push(NamedHypersurface { name: label, gamma, form, expect_good });
                }
                ("divisors", None) => {
                    if let Some(list) = get("factors") {
                        for f in list.split(',').map(str::trim).filter(|f| !f.is_empty()) {
                            let space = if f.contains('S') { projective } else { affine };
                            cfg.divisors.push(parse_poly(f, space)?);
                        }
                    }
                }
                ("line", None) => {
                    cfg.line = Some(LineConfig {
                        hypersurface: required(get("hypersurface"), "line.hypersurface")?.trim().to_string(),
                        bound: parse_num(get("bound"), "line.bound", 10)?,
                        generators: match get("generators") {
                            None => Vec::new(),
                            Some(list) => {
                                list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
                            }
                        },
                        relation_bound: parse_num(get("relation_bound"), "line.relation_bound", 3)?,
                    });
                    if get("generators").is_none() {
                        cfg.line.as_mut().unwrap().generators = vec!["*".into()];
                    }
                }
                ("settings", None) => {
                    let s = &mut cfg.settings;
                    if let Some(v) = get("tol") {
                        s.tol = to_f64(&positive_rational(v, "settings.tol")?);
                    }
                    if let Some(v) = get("target_error") {
                        s.target_error = positive_rational(v, "settings.target_error")?;
                    }
                    s.max_level = parse_num(get("max_level"), "settings.max_level", s.max_level)?;
                    s.levels = parse_num(get("levels"), "settings.levels", s.levels)?;
                    s.degree_ceiling = parse_num(get("degree_ceiling"), "settings.degree_ceiling", s.degree_ceiling)?;
                    s.multiple_cap = parse_num(get("multiple_cap"), "settings.multiple_cap", s.multiple_cap)?;
                    s.seed = parse_num(get("seed"), "settings.seed", s.seed)?;
                }
                _ => return err(format!("unknown section [{name}]")),
            }
        }
        cfg.check_names()?;
        Ok(cfg)
    }

    fn check_names(&mut self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for n in self.points.iter().map(|p| &p.name).chain(self.torsion.iter().map(|p| &p.name)) {
            if !seen.insert(n.clone()) {
                return err(format!("duplicate point name {n}"));
            }
        }
        let mut hs = std::collections::BTreeSet::new();
        for h in &self.hypersurfaces {
            if !hs.insert(h.name.clone()) {
                return err(format!("duplicate hypersurface name {}", h.name));
            }
        }
        if let Some(line) = &mut self.line {
            if !hs.contains(&line.hypersurface) {
                return err(format!("line refers to unknown hypersurface {}", line.hypersurface));
            }
            if line.generators == ["*"] {
                line.generators = self.points.iter().map(|p| p.name.clone()).collect();
            }
            for g in &line.generators {
                if !self.points.iter().any(|p| &p.name == g) {
                    return err(format!("line refers to unknown point {g}"));
                }
            }
        }
        Ok(())
    }

    pub fn point(&self, name: &str) -> Result<&NamedPoint> {
        self.points
            .iter()
            .chain(&self.torsion)
            .find(|p| p.name == name)
            .ok_or_else(|| ConfigError(format!("unknown point {name}")))
    }

    pub fn hypersurface(&self, name: &str) -> Result<&NamedHypersurface> {
        self.hypersurfaces
            .iter()
            .find(|h| h.name == name)
            .ok_or_else(|| ConfigError(format!("unknown hypersurface {name}")))
    }
}

fn required<'a>(v: Option<&'a str>, key: &str) -> Result<&'a str> {
    v.ok_or_else(|| ConfigError(format!("missing {key}")))
}

fn parse_num<T: std::str::FromStr>(v: Option<&str>, key: &str, default: T) -> Result<T> {
    match v {
        None => Ok(default),
        Some(s) => s.trim().parse().map_err(|_| ConfigError(format!("{key}: not a valid number: {s}"))),
    }
}

pub fn positive_rational(v: &str, key: &str) -> Result<Rational> {
    let r = parse_rational(v.trim())
        .or_else(|| v.trim().parse::<f64>().ok().and_then(Rational::from_float))
        .ok_or_else(|| ConfigError(format!("{key}: not a number: {v}")))?;
    if r <= Rational::from_integer(0.into()) {
        return err(format!("{key} must be positive"));
    }
    Ok(r)
}

fn parse_int_triple(s: &str) -> Result<[BigInt; 3]> {
    let parts: Vec<&str> = s.trim().trim_start_matches('[').trim_end_matches(']').split(':').collect();
    if parts.len() != 3 {
        return err(format!("expected a:b:c, got {s}"));
    }
    let mut out: [BigInt; 3] = Default::default();
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse().map_err(|_| ConfigError(format!("not an integer: {p}")))?;
    }
    Ok(out)
}
