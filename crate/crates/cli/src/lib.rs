//! JSON front end: parse a [`ProblemSpec`], run it, render a [`Report`].

pub mod problem;
mod render;

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use bsroots::algebra::{BFunction, MPoly};
use bsroots::multiplier::{
    budur_saito_check, jumping_number_candidates, jumping_numbers_snc, lct_g,
    min_exponent_from_bfunction, multiplier_membership, saito_criterion_check,
};
use bsroots::newton::{newton_polygon, regular_fan, resolution_from_newton};
use bsroots::resolution::{
    candidate_roots, min_exponent_lower_bound, root_upper_bound, shifted_candidates,
    twisted_root_bound, twisted_shifted_candidates, ResolutionData,
};
use bsroots::snc::{
    monomial_bound, monomial_bound_smooth_factor, monomial_bound_unshifted, MonomialData,
};
use bsroots::weyl::{solve_bfunction, Bounds, OracleCache};
use bsroots::Error;

pub use problem::{PolyInput, ProblemSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_BOUNDS: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;

pub const DEFAULT_ELL_MAX: u32 = 4;
pub const DEFAULT_CAP: u32 = 2;

/// Command-line settings; each one overrides the matching payload field.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub ell_max: Option<u32>,
    pub bounds: Option<Bounds>,
    pub cap: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    #[serde(skip)]
    pub code: i32,
    pub kind: String,
    /// Location of the offending input, e.g. `payload.resolution.divisors[2].a`.
    pub path: String,
    pub message: String,
}

impl CliError {
    fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_SCHEMA,
            kind: "schema".into(),
            path: path.into(),
            message: message.into(),
        }
    }

    fn from_core(path: &str, e: Error) -> Self {
        let (code, kind) = match &e {
            Error::BoundsExhausted(_) => (EXIT_BOUNDS, "bounds-exhausted"),
            Error::HypothesisViolated(_)
            | Error::PreconditionViolated(_)
            | Error::NonReduced
            | Error::DegenerateInput
            | Error::MissingRootMinusOne
            | Error::NonzeroShift(_) => (EXIT_HYPOTHESIS, "hypothesis"),
            Error::Parse(_)
            | Error::InvalidInput(_)
            | Error::VariableMismatch { .. }
            | Error::ZeroPolynomial
            | Error::NonvanishingAtOrigin => (EXIT_SCHEMA, "schema"),
            _ => (EXIT_FAILURE, "failure"),
        };
        CliError {
            code,
            kind: kind.into(),
            path: path.into(),
            message: e.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&json!({ "error": self })).expect("serializable") + "\n"
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error at {}: {}", self.kind, self.path, self.message)
    }
}

impl std::error::Error for CliError {}

/// A finished computation as a JSON document.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        render::text(&self.value)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// Parses a problem, reporting the path of the first offending field.
pub fn parse_problem(src: &str) -> Result<ProblemSpec, CliError> {
    let de = &mut serde_json::Deserializer::from_str(src);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::new() } else { path };
        CliError::schema(path, e.into_inner().to_string())
    })
}

pub fn run_json(src: &str, opts: &Options) -> Result<Report, CliError> {
    run(&parse_problem(src)?, opts)
}

pub fn run(spec: &ProblemSpec, opts: &Options) -> Result<Report, CliError> {
    let body = match spec {
        ProblemSpec::SolveB(p) => solve_b(p, opts)?,
        ProblemSpec::SncBound(p) => snc_bound(p, opts)?,
        ProblemSpec::Candidates(p) => candidates(p, opts)?,
        ProblemSpec::Lct(p) => {
            let lct = lct_g(&p.resolution).map_err(core_at("payload.resolution"))?;
            json!({ "lct": lct })
        }
        ProblemSpec::Membership(p) => {
            let member =
                multiplier_membership(&p.resolution, &p.lambda).map_err(core_at("payload"))?;
            json!({ "lambda": p.lambda, "member": member })
        }
        ProblemSpec::Jumps(p) => jumps(p)?,
        ProblemSpec::BudurSaito(p) => budur_saito(p, opts)?,
        ProblemSpec::MinExponent(p) => min_exponent(p, opts)?,
        ProblemSpec::NewtonResolve(p) => newton_resolve(p)?,
    };
    let mut value = json!({ "command": spec.command() });
    let obj = value.as_object_mut().unwrap();
    for (k, v) in body.as_object().expect("report bodies are objects") {
        obj.insert(k.clone(), v.clone());
    }
    Ok(Report { value })
}

fn core_at(path: &'static str) -> impl Fn(Error) -> CliError {
    move |e| CliError::from_core(path, e)
}

fn bfunction_json(b: &BFunction) -> Value {
    json!({
        "factored": b.factored(),
        "roots": b.root_list(),
    })
}

fn resolve_bounds(payload: &Option<String>, opts: &Options) -> Result<Bounds, CliError> {
    if let Some(b) = opts.bounds {
        return Ok(b);
    }
    match payload {
        Some(s) => s
            .parse()
            .map_err(|e: Error| CliError::schema("payload.bounds", e.to_string())),
        None => Ok(Bounds::default()),
    }
}

fn poly(input: &PolyInput, nvars: usize, path: &'static str) -> Result<MPoly, CliError> {
    input.to_poly(nvars).map_err(core_at(path))
}

fn solve_b(p: &problem::SolveB, opts: &Options) -> Result<Value, CliError> {
    let bounds = resolve_bounds(&p.bounds, opts)?;
    let f = poly(&p.f, p.vars, "payload.f")?;
    let g = poly(&p.g, p.vars, "payload.g")?;
    let sol = solve_bfunction(&f, &g, bounds).map_err(core_at("payload"))?;
    Ok(json!({
        "f": f.to_string(),
        "g": g.to_string(),
        "bounds": bounds,
        "b": bfunction_json(&sol.b),
        "largest_root": sol.b.largest_root(),
        "witness": {
            "order": sol.witness.order(),
            "s_degree": sol.witness.s_degree(),
            "coeff_degree": sol.witness.coeff_degree(),
            "operator": sol.witness.to_string(),
        },
        "verified": true,
    }))
}

fn snc_bound(p: &problem::SncBound, opts: &Options) -> Result<Value, CliError> {
    use problem::SncVariant;
    let data = MonomialData::new(p.a.clone(), p.b.clone(), p.m).map_err(core_at("payload"))?;
    let bound = match p.variant {
        SncVariant::General => monomial_bound(&data),
        SncVariant::Unshifted => monomial_bound_unshifted(&data),
        SncVariant::SmoothFactor => monomial_bound_smooth_factor(&data),
    }
    .map_err(core_at("payload"))?;
    let mut out = json!({
        "a": p.a,
        "b": p.b,
        "m": p.m,
        "bound": bfunction_json(&bound),
    });
    if p.verify {
        if p.m != 0 {
            return Err(CliError::from_core("payload.m", Error::NonzeroShift(p.m)));
        }
        let bounds = resolve_bounds(&p.bounds, opts)?;
        let (f, g) = data.polynomials();
        let sol = solve_bfunction(&f, &g, bounds).map_err(core_at("payload"))?;
        let obj = out.as_object_mut().unwrap();
        obj.insert("bounds".into(), json!(bounds));
        obj.insert("oracle".into(), bfunction_json(&sol.b));
        obj.insert("divides".into(), json!(sol.b.divides(&bound)));
    }
    Ok(out)
}

fn candidates(p: &problem::Candidates, opts: &Options) -> Result<Value, CliError> {
    let res = &p.resolution;
    let at = core_at("payload.resolution");
    let ell_max = opts.ell_max.or(p.ell_max).unwrap_or(DEFAULT_ELL_MAX);
    let shifted = shifted_candidates(res, p.m, ell_max, p.exceptional_only)
        .map_err(core_at("payload.exceptional_only"))?;
    Ok(json!({
        "m": p.m,
        "ell_max": ell_max,
        "candidate_roots": candidate_roots(res, ell_max).map_err(&at)?,
        "root_upper_bound": root_upper_bound(res, p.m).map_err(&at)?,
        "twisted_root_bound": twisted_root_bound(res).map_err(&at)?,
        "shifted_candidates": shifted,
        "twisted_shifted_candidates": twisted_shifted_candidates(res, p.m, ell_max).map_err(&at)?,
    }))
}

fn jumps(p: &problem::Jumps) -> Result<Value, CliError> {
    match (&p.a, &p.resolution) {
        (Some(a), None) => {
            let jn = jumping_numbers_snc(a, &p.t).map_err(core_at("payload"))?;
            Ok(json!({ "t": p.t, "jumping_numbers": jn }))
        }
        (None, Some(res)) => {
            let c = jumping_number_candidates(res, &p.t).map_err(core_at("payload.resolution"))?;
            Ok(json!({ "t": p.t, "candidates": c }))
        }
        _ => Err(CliError::schema(
            "payload",
            "exactly one of `a` and `resolution` is required",
        )),
    }
}

fn budur_saito(p: &problem::BudurSaito, opts: &Options) -> Result<Value, CliError> {
    let bounds = resolve_bounds(&p.bounds, opts)?;
    let cap = opts.cap.or(p.cap).unwrap_or(DEFAULT_CAP);
    let cache = OracleCache::new();
    let r = budur_saito_check(&p.a, &p.alpha, cap, bounds, &cache).map_err(core_at("payload"))?;
    let per_monomial: Vec<Value> = r
        .per_monomial
        .iter()
        .map(|m| {
            json!({
                "g": m.g,
                "b": bfunction_json(&m.b),
                "v_level": m.v_level,
            })
        })
        .collect();
    Ok(json!({
        "a": r.a,
        "alpha": r.alpha,
        "cap": r.cap,
        "bounds": r.bounds,
        "side_a": r.side_a,
        "side_b": r.side_b,
        "symmetric_difference": r.symmetric_difference,
        "agrees": r.agrees(),
        "per_monomial": per_monomial,
    }))
}

fn min_exponent(p: &problem::MinExponent, opts: &Options) -> Result<Value, CliError> {
    let bounds = resolve_bounds(&p.bounds, opts)?;
    let f = poly(&p.f, p.vars, "payload.f")?;
    let sol = solve_bfunction(&f, &MPoly::one(p.vars), bounds).map_err(core_at("payload"))?;
    let alpha = min_exponent_from_bfunction(&sol.b).map_err(core_at("payload.f"))?;
    let mut out = json!({
        "f": f.to_string(),
        "bounds": bounds,
        "b": bfunction_json(&sol.b),
        "minimal_exponent": alpha,
    });
    let res: Option<(ResolutionData, &str)> = match &p.resolution {
        Some(r) => Some((r.clone(), "payload.resolution")),
        None if p.vars == 2 => Some((
            resolution_from_newton(&f, [0, 0]).map_err(core_at("payload.f"))?,
            "payload.f",
        )),
        None => None,
    };
    if let Some((res, path)) = res {
        let lower = min_exponent_lower_bound(&res).map_err(|e| CliError::from_core(path, e))?;
        let saito =
            saito_criterion_check(&sol.b, &res).map_err(|e| CliError::from_core(path, e))?;
        let obj = out.as_object_mut().unwrap();
        obj.insert("lower_bound".into(), json!(lower));
        obj.insert("saito_check".into(), json!(saito));
    }
    Ok(out)
}

fn newton_resolve(p: &problem::NewtonResolve) -> Result<Value, CliError> {
    let f = poly(&p.f, 2, "payload.f")?;
    let np = newton_polygon(&f).map_err(core_at("payload.f"))?;
    let res = resolution_from_newton(&f, p.g).map_err(core_at("payload.f"))?;
    Ok(json!({
        "f": f.to_string(),
        "g": p.g,
        "newton_polygon": np,
        "fan": regular_fan(&np),
        "resolution": res,
        "lct": lct_g(&res).map_err(core_at("payload.f"))?,
    }))
}

/// Exit code for a finished run.
pub fn exit_code(result: &Result<Report, CliError>) -> i32 {
    match result {
        Ok(_) => EXIT_OK,
        Err(e) => e.code,
    }
}
