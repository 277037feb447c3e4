use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use grunskykit::fourier::nodes;
use grunskykit::{
    assemble_grunsky_blocks, chord_arc_constant, faber_polynomials,
    faber_polynomials_exterior, grunsky_via_faber, grunsky_via_generating,
    hilbert_schmidt_norm, hilbert_schmidt_partial_sums, jump_decompose, sample_curve,
    validate_rigging, verify_graph, wf_identity_residual, BoundaryFunction, ConformalMap,
    CurveSample, Error, FaberFamily, GrunskyBlocks, HTuple, Rigging, RiggingConfig, TestFunction,
    C64,
};
use serde_json::{json, Value};

use crate::{json as out_json, Args, Command};

#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: &str) -> Self {
        Self {
            kind: "usage",
            message: msg.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            kind: "io",
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::InvalidInput(m) if m.starts_with("parse") => "parse",
            Error::InvalidInput(_) => "invalid_input",
            Error::InvalidMap(_) | Error::NonInvertible => "invalid_map",
            Error::NotSimple(_) => "not_simple",
            Error::Overlap(..) => "overlap",
            Error::Budget { .. } => "budget",
            Error::UnderResolved { .. } => "under_resolved",
            Error::NearSingular { .. } => "near_singular",
            Error::OutsideDomain(_) => "outside_domain",
            Error::NonHolomorphic(_) => "non_holomorphic",
            _ => "numerical",
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}

pub struct Outcome {
    /// `(quantity, value, bound)` for every check above its bound.
    pub tolerance_failures: Vec<(String, f64, f64)>,
}

pub fn report_error(f: &Failure) {
    let v = json!({"error": {"kind": f.kind, "message": f.message}});
    eprint!("{}", out_json::to_string(&v));
}

pub fn report_tolerance(fails: &[(String, f64, f64)]) {
    let items: Vec<Value> = fails
        .iter()
        .map(|(q, v, b)| json!({"quantity": q, "value": v, "bound": b}))
        .collect();
    eprint!("{}", out_json::to_string(&json!({"tolerance_exceeded": items})));
}

fn pair(z: C64) -> Value {
    json!([z.re, z.im])
}

fn pairs(v: &[C64]) -> Value {
    Value::Array(v.iter().copied().map(pair).collect())
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn parse_json(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("parse: {e}")).into())
}

fn curve_csv(curves: &[(usize, &CurveSample)], with_slot: bool) -> String {
    let mut s = String::from(if with_slot { "slot,theta,re,im\n" } else { "theta,re,im\n" });
    for (slot, c) in curves {
        for (t, p) in nodes(c.n).zip(&c.points) {
            if with_slot {
                let _ = write!(s, "{slot},");
            }
            let _ = writeln!(
                s,
                "{},{},{}",
                out_json::format_g17(t),
                out_json::format_g17(p.re),
                out_json::format_g17(p.im)
            );
        }
    }
    s
}

/// Write `main.json` plus extra files into `--out`, or print the JSON.
fn emit(args: &Args, name: &str, main: &Value, extra: Vec<(String, String)>) -> Result<(), Failure> {
    let text = out_json::to_string(main);
    match &args.out {
        None => print!("{text}"),
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
            let mut written = Vec::new();
            let main_path = dir.join(format!("{name}.json"));
            fs::write(&main_path, &text).map_err(|e| Failure::io(&main_path, e))?;
            written.push(main_path.display().to_string());
            for (file, body) in extra {
                let p = dir.join(file);
                fs::write(&p, body).map_err(|e| Failure::io(&p, e))?;
                written.push(p.display().to_string());
            }
            print!("{}", out_json::to_string(&json!({ "written": written })));
        }
    }
    Ok(())
}

fn check(fails: &mut Vec<(String, f64, f64)>, name: &str, v: f64, bound: f64) {
    if v.is_nan() || v > bound {
        fails.push((name.into(), v, bound));
    }
}

fn samples(args: &Args, default: usize) -> usize {
    args.samples.unwrap_or(default)
}

pub fn run(cmd: Command, args: &Args) -> Result<Outcome, Failure> {
    let text = read(&args.input)?;
    let mut fails = Vec::new();
    match cmd {
        Command::Faber => faber(args, &text)?,
        Command::Grunsky => grunsky(args, &text, &mut fails)?,
        Command::Jump => jump(args, &text, &mut fails)?,
        Command::RiggingVerify => rigging_verify(args, &text, &mut fails)?,
        Command::HsNorm => hs_norm(args, &text)?,
        Command::Report => report(args, &text, &mut fails)?,
    }
    Ok(Outcome {
        tolerance_failures: fails,
    })
}

fn family_of(map: &ConformalMap, k: usize) -> Result<FaberFamily, Failure> {
    Ok(match map {
        ConformalMap::Laurent(l) => faber_polynomials(l, k)?,
        ConformalMap::Taylor(t) => faber_polynomials_exterior(t, k)?,
    })
}

fn family_json(fam: &FaberFamily) -> Value {
    let polys: Vec<Value> = (fam.first_index()..=fam.k)
        .map(|k| json!({"k": k, "coeffs": pairs(fam.poly(k))}))
        .collect();
    let (side, basis) = match fam.side {
        grunskykit::DomainSide::Interior => ("interior", "w^l, l = 0..k"),
        grunskykit::DomainSide::Exterior => ("exterior", "(w - center)^-l, l = 1..k"),
    };
    json!({"side": side, "basis": basis, "K": fam.k, "polys": polys})
}

fn faber(args: &Args, text: &str) -> Result<(), Failure> {
    let map = ConformalMap::from_json(text)?;
    let curve = sample_curve(&map, samples(args, 256))?;
    let fam = family_of(&map, args.order)?;
    let mut main = json!({"command": "faber", "map": value(&map)});
    if let (Value::Object(m), Value::Object(f)) = (&mut main, family_json(&fam)) {
        m.extend(f);
    }
    emit(args, "faber", &main, vec![("curve.csv".into(), curve_csv(&[(0, &curve)], false))])
}

fn grunsky_summary(map: &grunskykit::LaurentMap, k: usize) -> Result<(Value, f64, f64), Failure> {
    let g = grunsky_via_generating(map, k)?;
    let h = grunsky_via_faber(map, k)?;
    let agree = g.max_abs_diff(&h);
    let weighted = g.weighted_symmetry_residual();
    let mut v = value(&g);
    if let Value::Object(m) = &mut v {
        m.insert("symmetry_residual".into(), json!(g.symmetry_residual()));
        m.insert("weighted_symmetry_residual".into(), json!(weighted));
        m.insert("route_agreement".into(), json!(agree));
    }
    Ok((v, weighted, agree))
}

fn laurent_input(text: &str, what: &str) -> Result<grunskykit::LaurentMap, Failure> {
    match ConformalMap::from_json(text)? {
        ConformalMap::Laurent(l) => Ok(l),
        _ => Err(Error::InvalidInput(format!("{what} needs a laurent map")).into()),
    }
}

fn grunsky(args: &Args, text: &str, fails: &mut Vec<(String, f64, f64)>) -> Result<(), Failure> {
    let map = laurent_input(text, "grunsky")?;
    let (g, weighted, agree) = grunsky_summary(&map, args.order)?;
    let tol = args.tolerance.unwrap_or(1e-10);
    check(fails, "weighted_symmetry_residual", weighted, tol);
    check(fails, "route_agreement", agree, tol);
    let mut main = json!({"command": "grunsky", "map": value(&ConformalMap::from(map))});
    if let (Value::Object(m), Value::Object(f)) = (&mut main, g) {
        m.extend(f);
    }
    emit(args, "grunsky", &main, vec![])
}

fn jump(args: &Args, text: &str, fails: &mut Vec<(String, f64, f64)>) -> Result<(), Failure> {
    let v = parse_json(text)?;
    let map = ConformalMap::from_value(v.get("map").unwrap_or(&Value::Null))?;
    let data = BoundaryFunction::from_value(v.get("data").unwrap_or(&Value::Null))?;
    let n = samples(args, 512);
    let curve = sample_curve(&map, n)?;
    let d = jump_decompose(&curve, &data)?;
    let (p, m, u) = (d.u_plus.samples(n), d.u_minus.samples(n), data.samples(n));
    let mut csv = String::from("theta,residual\n");
    for (j, t) in nodes(n).enumerate() {
        let r = (p[j] - m[j] - u[j]).norm();
        let _ = writeln!(csv, "{},{}", out_json::format_g17(t), out_json::format_g17(r));
    }
    check(fails, "plemelj_residual", d.residual, args.tolerance.unwrap_or(1e-8));
    let main = json!({
        "command": "jump",
        "N": n,
        "u_plus": value(&d.u_plus),
        "u_minus": value(&d.u_minus),
        "residual": d.residual,
    });
    emit(args, "jump", &main, vec![("jump_residual.csv".into(), csv)])
}

fn load_rigging(args: &Args, text: &str) -> Result<(RiggingConfig, Rigging), Failure> {
    let mut cfg = RiggingConfig::from_json(text)?;
    if let Some(n) = args.samples {
        cfg.sample_n = n;
    }
    let r = cfg.rigging()?;
    Ok((cfg, r))
}

/// Fixed `D^-` test vectors, so reports are reproducible.
fn test_vectors(r: &Rigging, k: usize) -> Vec<HTuple> {
    (0..3)
        .map(|s| HTuple {
            components: (0..=r.n)
                .map(|i| {
                    let modes: Vec<(i64, C64)> = r
                        .minus_modes(i, k)
                        .into_iter()
                        .map(|m| {
                            let phase = 0.7 * m as f64 + 1.3 * i as f64 + 2.1 * s as f64;
                            (m, C64::from_polar(1.0 / (1.0 + m.abs() as f64), phase))
                        })
                        .collect();
                    BoundaryFunction::from_modes(k, &modes)
                })
                .collect(),
        })
        .collect()
}

fn hs_json(b: &GrunskyBlocks) -> (f64, Vec<f64>, Vec<f64>) {
    (hilbert_schmidt_norm(b), hilbert_schmidt_partial_sums(b), b.singular_values())
}

fn rigging_verify(args: &Args, text: &str, fails: &mut Vec<(String, f64, f64)>) -> Result<(), Failure> {
    let (cfg, r) = load_rigging(args, text)?;
    let k = args.order;
    let validation = validate_rigging(&r)?;
    let blocks = assemble_grunsky_blocks(&r, k)?;
    let mut wf: f64 = 0.0;
    let mut stray: f64 = 0.0;
    for g in test_vectors(&r, k) {
        let (res, s) = wf_identity_residual(&r, &g, k)?;
        wf = wf.max(res);
        stray = stray.max(s);
    }
    let tests = cfg.test_functions.clone().unwrap_or_else(|| TestFunction::default_set(&r));
    let mut graph = Vec::with_capacity(tests.len());
    for h in &tests {
        h.validate(&r)?;
        graph.push(verify_graph(&r, &blocks, h).residual);
    }
    let graph_max = graph.iter().copied().fold(0.0, f64::max);
    let (hs, partial, sv) = hs_json(&blocks);
    let tol = args.tolerance.unwrap_or(1e-6);
    check(fails, "wf_residual", wf, tol);
    check(fails, "graph_residual", graph_max, tol);
    check(fails, "stray_minus", stray, tol);
    let mut main = value(&blocks);
    if let Value::Object(m) = &mut main {
        m.insert("validation".into(), value(&validation));
        m.insert(
            "report".into(),
            json!({
                "sample_N": r.sample_n,
                "wf_residual": wf,
                "stray_minus": stray,
                "graph_residuals": graph,
                "graph_residual": graph_max,
                "hs_norm": hs,
                "hs_partial_sums": partial,
                "singular_values": sv,
            }),
        );
    }
    let curves: Vec<(usize, &CurveSample)> = r.curves.iter().enumerate().collect();
    emit(args, "rigging", &main, vec![("curves.csv".into(), curve_csv(&curves, true))])
}

fn hs_norm(args: &Args, text: &str) -> Result<(), Failure> {
    let (_, r) = load_rigging(args, text)?;
    validate_rigging(&r)?;
    let blocks = assemble_grunsky_blocks(&r, args.order)?;
    let (hs, partial, sv) = hs_json(&blocks);
    let main = json!({
        "command": "hs-norm",
        "n": r.n,
        "K": args.order,
        "hs_norm": hs,
        "hs_partial_sums": partial,
        "singular_values": sv,
    });
    emit(args, "hs_norm", &main, vec![])
}

fn report(args: &Args, text: &str, fails: &mut Vec<(String, f64, f64)>) -> Result<(), Failure> {
    let map = ConformalMap::from_json(text)?;
    let n = samples(args, 256);
    let curve = sample_curve(&map, n)?;
    let fam = family_of(&map, args.order)?;
    let (_, length) = curve.arc_lengths();
    // leading coefficient of Phi_k against the power-matrix diagonal
    let leading = match &map {
        ConformalMap::Laurent(l) => (0..=fam.k)
            .map(|k| (fam.poly(k)[k] - l.leading.inv().powi(k as i32)).norm())
            .fold(0.0, f64::max),
        ConformalMap::Taylor(t) => (1..=fam.k)
            .map(|k| (fam.poly(k)[k - 1] - t.a1().powi(k as i32)).norm())
            .fold(0.0, f64::max),
    };
    let tol = args.tolerance.unwrap_or(1e-10);
    check(fails, "faber_leading_residual", leading, tol);
    let mut main = json!({
        "command": "report",
        "map": value(&map),
        "N": n,
        "K": args.order,
        "orientation": format!("{:?}", curve.orientation).to_lowercase(),
        "length": length,
        "mesh_width": curve.mesh_width(),
        "chord_arc": chord_arc_constant(&curve),
        "faber_leading_residual": leading,
    });
    if let ConformalMap::Laurent(l) = &map {
        let (g, weighted, agree) = grunsky_summary(l, args.order)?;
        check(fails, "weighted_symmetry_residual", weighted, tol);
        check(fails, "route_agreement", agree, tol);
        if let Value::Object(m) = &mut main {
            m.insert("grunsky".into(), g);
        }
    }
    emit(args, "report", &main, vec![("curve.csv".into(), curve_csv(&[(0, &curve)], false))])
}
