//! One function per subcommand, each returning a [`Report`].

use crate::report::Report;
use crate::{Budget, CliError, ModelArgs, PhysArgs};
use rdp_core::analysis::{find_equilibria, fmt17, named_surface, parse_grid, scan_surface, simulate as integrate, trivial_bifurcation_q};
use rdp_core::elim::{
    dixon_matrix, dixon_polynomial, edf_determinant_with, strip_known_factors, sylvester_resultant, EdfOptions, FactorList, Provenance,
};
use rdp_core::model::{
    build_system, derive_dimensionless, format_rational, kinetic_positive_definite, param_varset, parse_rational,
    reduced_coefficients, single_pendulum_equilibria, single_pendulum_nmr, substitute_chi_pmmr, to_f64, trivial_bifurcation_poly,
    ModelParams, PhysicalParams, SystemKind, Trivial, TRIG_VARS,
};
use rdp_core::polyring::{parse, Polynomial};
use num_traits::Signed;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

/// Bytes per stored term, used to turn `--max-mb` into a term budget.
const BYTES_PER_TERM: u64 = 48;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let input = |message: String| CliError::Input { path: path.display().to_string(), message };
    let text = std::fs::read_to_string(path).map_err(|e| input(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| input(e.to_string()))
}

/// Starts from the config file (or an empty object) and overrides fields
/// given as flags, then deserializes.
fn merged<T: DeserializeOwned>(config: Option<&Path>, flags: &[(&str, &Option<String>)]) -> Result<T, CliError> {
    let mut obj: Map<String, Value> = match config {
        Some(p) => read_json(p)?,
        None => Map::new(),
    };
    for (name, v) in flags {
        if let Some(v) = v {
            parse_rational(v)?;
            obj.insert((*name).to_string(), Value::String(v.clone()));
        }
    }
    serde_json::from_value(Value::Object(obj)).map_err(|e| CliError::Usage(format!("parameters: {e}")))
}

fn model_params(a: &ModelArgs, need_q: bool) -> Result<ModelParams, CliError> {
    let mut flags = vec![
        ("delta", &a.delta),
        ("sigma", &a.sigma),
        ("alpha", &a.alpha),
        ("eta", &a.eta),
        ("chi", &a.chi),
        ("Q", &a.big_q),
    ];
    let zero = Some("0".to_string());
    if !need_q && a.big_q.is_none() && a.config.is_none() {
        flags.push(("Q", &zero));
    }
    let m: ModelParams = merged(a.config.as_deref(), &flags)?;
    m.validate()?;
    Ok(m)
}

fn phys_params(a: &PhysArgs) -> Result<PhysicalParams, CliError> {
    merged(
        a.config.as_deref(),
        &[
            ("m1", &a.m1),
            ("m2", &a.m2),
            ("l1", &a.l1),
            ("l", &a.l),
            ("l2", &a.l2),
            ("i1p", &a.i1p),
            ("i1perp", &a.i1perp),
            ("i1n", &a.i1n),
            ("i2p", &a.i2p),
            ("i2perp", &a.i2perp),
            ("i2n", &a.i2n),
            ("omega_a", &a.omega_a),
            ("g", &a.g),
        ],
    )
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// `key = value` lines and `key,value` rows from a flat JSON object.
fn flat_text_csv(obj: &Value) -> (String, String) {
    let (mut text, mut csv) = (String::new(), String::from("name,value\n"));
    if let Value::Object(map) = obj {
        let mut keys: Vec<&String> = map.keys().collect();
        keys.sort();
        for k in keys {
            let v = match &map[k] {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(text, "{k} = {v}");
            let _ = writeln!(csv, "{k},{v}");
        }
    }
    (text, csv)
}

pub fn params(a: &PhysArgs) -> Result<Report, CliError> {
    let p = phys_params(a)?;
    let (m, scales) = derive_dimensionless(&p)?;
    let mut flat = to_value(&m);
    for (k, v) in to_value(&scales).as_object().expect("object") {
        flat[k.as_str()] = v.clone();
    }
    let (text, csv) = flat_text_csv(&flat);
    let result = json!({ "model": to_value(&m), "scales": to_value(&scales) });
    Ok(Report::new("params", to_value(&p), result).text(text).csv(csv))
}

pub fn coeffs(a: &ModelArgs) -> Result<Report, CliError> {
    let m = model_params(a, false)?;
    let rc = reduced_coefficients(&m)?;
    let mut result = to_value(&rc);
    result["positive_definite"] = Value::String(format_rational(&kinetic_positive_definite(&rc.dt, &rc.st)));
    let (text, csv) = flat_text_csv(&result);
    Ok(Report::new("coeffs", to_value(&m), result).text(text).csv(csv))
}

fn system_kind(kind: &str) -> Result<SystemKind, CliError> {
    kind.parse().map_err(|e: rdp_core::Error| CliError::Usage(e.to_string()))
}

pub fn system(kind: &str) -> Result<Report, CliError> {
    let k = system_kind(kind)?;
    let sys = build_system(k)?;
    let vars: Vec<&str> = sys.varset().names().iter().map(String::as_str).collect();
    let mut text = format!("# vars {}\n# eliminate {}\n", vars.join(" "), sys.elim_vars().join(" "));
    let mut polys = Vec::new();
    for (name, p) in sys.polys() {
        let _ = writeln!(text, "{name} = {p}");
        polys.push(json!({ "name": name, "terms": p.term_count(), "poly": p.to_string() }));
    }
    let result = json!({ "kind": k.to_string(), "vars": vars, "eliminate": sys.elim_vars(), "polys": polys });
    Ok(Report::new("system", json!({ "kind": k.to_string() }), result).text(text))
}

pub fn eliminate(kind: &str, var: &str) -> Result<Report, CliError> {
    if system_kind(kind)? != SystemKind::Halftangent {
        return Err(CliError::Usage(format!("eliminate works on the halftangent pair, not {kind}")));
    }
    let sys = build_system(SystemKind::Halftangent)?;
    let (p1, p2) = (&sys.polys()[0].1, &sys.polys()[1].1);
    if p1.varset().index(var).is_none() {
        return Err(CliError::Usage(format!("unknown variable {var}; expected one of t, u, qq, delta, sigma, chi")));
    }
    let res = sylvester_resultant(p1, p2, var)?;
    if res.is_zero() {
        return Err(rdp_core::Error::Degenerate("the resultant vanishes identically".into()).into());
    }
    let vs = res.varset().clone();
    let known_text = ["t", "u", "1 + t^2", "1 + u^2"];
    let known: Vec<Polynomial> = known_text.iter().map(|s| parse(s, &vs)).collect::<Result<_, _>>()?;
    let (main, mults) = strip_known_factors(&res, &known)?;
    let mut items = Vec::new();
    for (k, &m) in known.iter().zip(&mults) {
        items.extend(std::iter::repeat((k.clone(), Provenance::Content)).take(m as usize));
    }
    let mut prod = main.clone();
    for (k, _) in &items {
        prod = prod.try_mul(k)?;
    }
    let c = res.terms()[0].1.clone() / prod.terms()[0].1.clone();
    let sign = if c.is_negative() { -1 } else { 1 };
    items.insert(0, (Polynomial::constant(&vs, &c.abs()), Provenance::Content));
    items.push((main.clone(), Provenance::Numerator));
    let fl = FactorList::collect(&vs, sign, items);
    let strip: Map<String, Value> = known_text.iter().zip(&mults).map(|(k, m)| (k.to_string(), json!(m))).collect();
    let text = format!("var={var}\nmain_terms={}\n{}", main.term_count(), fl.report());
    let result = json!({
        "var": var,
        "main_terms": main.term_count(),
        "stripped": strip,
        "factors": fl.to_json(),
    });
    Ok(Report::new("eliminate", json!({ "kind": "halftangent", "var": var }), result).text(text))
}

pub fn dixon(kind: &str, seed_trivial: bool, budget: &Budget) -> Result<Report, CliError> {
    let k = system_kind(kind)?;
    if !matches!(k, SystemKind::Bifurcation | SystemKind::PmmrBifurcation | SystemKind::Equilibrium) {
        return Err(CliError::Usage(format!("dixon needs a trigonometric system, not {kind}")));
    }
    let start = Instant::now();
    let sys = build_system(k)?;
    let (d, aux) = dixon_polynomial(&sys)?;
    let aux: Vec<&str> = aux.iter().map(String::as_str).collect();
    let m = dixon_matrix(&d, &TRIG_VARS, &aux)?;
    let mut seeds: Vec<Polynomial> = Vec::new();
    if seed_trivial {
        for w in Trivial::ALL {
            let p = trivial_bifurcation_poly(w);
            seeds.push(if k == SystemKind::PmmrBifurcation { substitute_chi_pmmr(&p)?.normalize().0 } else { p });
        }
    }
    let opts = EdfOptions {
        seed: budget.seed,
        deadline: budget.max_seconds.map(|s| start + Duration::from_secs_f64(s.max(0.0))),
        max_terms: budget.max_mb.map(|mb| (mb.saturating_mul(1 << 20) / BYTES_PER_TERM) as usize),
        ..Default::default()
    };
    let out = edf_determinant_with(&m, &seeds, &opts)?;
    let refined = out.factors.refine()?;
    log::info!("dixon {k}: {} factors after refinement in {:?}", refined.factors.len(), start.elapsed());
    let mut counts = refined.term_counts();
    counts.sort_unstable();
    let dominant = refined.dominant().map(|f| f.poly.term_count()).unwrap_or(0);
    let text = format!(
        "kind={k}\nmatrix={}x{}\nminor={}\ndominant_terms={dominant}\n{}",
        m.nrows(),
        m.ncols(),
        out.rows.len(),
        refined.report()
    );
    let result = json!({
        "kind": k.to_string(),
        "matrix": [m.nrows(), m.ncols()],
        "rows": out.rows,
        "cols": out.cols,
        "dominant_terms": dominant,
        "term_counts": counts,
        "factors": refined.to_json(),
    });
    Ok(Report::new("dixon", json!({ "kind": k.to_string(), "seed": budget.seed, "seed_trivial": seed_trivial }), result).text(text))
}

pub fn equilibria(a: &ModelArgs) -> Result<Report, CliError> {
    let m = model_params(a, true)?;
    let eqs = find_equilibria(&m)?;
    let (mut text, mut csv) = (String::new(), String::from("theta,phi,residual,omega_sq_1,omega_sq_2,class,origin\n"));
    for e in &eqs {
        let class = to_value(&e.class);
        let origin = to_value(&e.origin);
        let (class, origin) = (class.as_str().unwrap_or(""), origin.as_str().unwrap_or(""));
        let _ = writeln!(
            text,
            "theta={:.9} phi={:.9} class={class} origin={origin} omega_sq=[{:.9}, {:.9}] residual={:.1e}",
            e.config.theta, e.config.phi, e.omega_sq[0], e.omega_sq[1], e.residual
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{class},{origin}",
            fmt17(e.config.theta),
            fmt17(e.config.phi),
            fmt17(e.residual),
            fmt17(e.omega_sq[0]),
            fmt17(e.omega_sq[1])
        );
    }
    Ok(Report::new("equilibria", to_value(&m), to_value(&eqs)).text(text).csv(csv))
}

pub fn bif_q(a: &ModelArgs, which: &str) -> Result<Report, CliError> {
    let w: Trivial = which.parse().map_err(|e: rdp_core::Error| CliError::Usage(e.to_string()))?;
    let m = model_params(a, false)?;
    let qs = trivial_bifurcation_q(&m.delta, &m.sigma, &m.chi, w)?;
    let text: String = qs.iter().map(|q| format!("{q:.6}\n")).collect();
    let csv: String = std::iter::once("Q\n".to_string()).chain(qs.iter().map(|q| format!("{}\n", fmt17(*q)))).collect();
    let input = json!({
        "delta": format_rational(&m.delta),
        "sigma": format_rational(&m.sigma),
        "chi": format_rational(&m.chi),
        "which": w.code(),
    });
    Ok(Report::new("bif-q", input, json!(qs)).text(text).csv(csv))
}

pub fn scan(surface: &str, grid: &str, pmmr: bool) -> Result<Report, CliError> {
    let poly = match surface.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input { path: path.to_string(), message: e.to_string() })?;
            parse(text.trim(), &param_varset())?
        }
        None => named_surface(surface).map_err(|e| CliError::Usage(e.to_string()))?,
    };
    let axes = parse_grid(grid)?;
    let g = scan_surface(&poly, &axes, pmmr)?;
    let csv = g.to_csv();
    let input = json!({ "surface": surface, "grid": grid, "pmmr": pmmr });
    Ok(Report::new("scan", input, to_value(&g)).text(csv.clone()).csv(csv))
}

pub fn single(big_q: &str) -> Result<Report, CliError> {
    let q = to_f64(&parse_rational(big_q)?);
    let eqs = single_pendulum_equilibria(q)?;
    let (mut text, mut csv, mut rows) = (String::new(), String::from("theta,branch,class,mode,rate\n"), Vec::new());
    for e in &eqs {
        let (kind, rate) = single_pendulum_nmr(q, e.branch)?;
        let names = [to_value(&e.branch), to_value(&e.class), to_value(&kind)];
        let [b, c, k] = names.each_ref().map(|v| v.as_str().unwrap_or("").to_string());
        let _ = writeln!(text, "theta={:.6} branch={b} class={c} mode={k} rate={rate:.6}", e.theta);
        let _ = writeln!(csv, "{},{b},{c},{k},{}", fmt17(e.theta), fmt17(rate));
        rows.push(json!({ "theta": e.theta, "branch": b, "class": c, "mode": k, "rate": rate }));
    }
    Ok(Report::new("single", json!({ "Q": big_q }), json!(rows)).text(text).csv(csv))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SimConfig {
    model: ModelParams,
    state: [f64; 4],
}

pub fn simulate(config: &Path, dt: f64, steps: usize, stride: usize) -> Result<Report, CliError> {
    if stride == 0 {
        return Err(CliError::Usage("--stride must be positive".into()));
    }
    let cfg: SimConfig = read_json(config)?;
    cfg.model.validate()?;
    let tr = integrate(&cfg.model, cfg.state, dt, steps)?;
    let mut csv = String::from("t,theta,phi,theta_dot,phi_dot,jacobi\n");
    let mut rows = Vec::new();
    for k in (0..tr.times.len()).step_by(stride) {
        let s = tr.states[k];
        let row = [tr.times[k], s[0], s[1], s[2], s[3], tr.jacobi[k]];
        let _ = writeln!(csv, "{}", row.map(fmt17).join(","));
        rows.push(json!(row));
    }
    let drift = tr.drift();
    let last = tr.states.last().copied().unwrap_or(cfg.state);
    let text = format!(
        "steps={steps}\ndt={dt}\ndrift={drift:.3e}\nfinal theta={:.9} phi={:.9} theta_dot={:.9} phi_dot={:.9}\n",
        last[0], last[1], last[2], last[3]
    );
    let result = json!({
        "drift": drift,
        "columns": ["t", "theta", "phi", "theta_dot", "phi_dot", "jacobi"],
        "rows": rows,
    });
    let input = json!({ "model": to_value(&cfg.model), "state": cfg.state, "dt": dt, "steps": steps, "stride": stride });
    Ok(Report::new("simulate", input, result).text(text).csv(csv))
}
