//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::f64::consts::TAU;
use std::time::Instant;

use common::*;
use grunskykit::{
    apply_k, assemble_grunsky_blocks, faber_polynomials, faber_series, grunsky_via_faber,
    grunsky_via_generating, hilbert_schmidt_norm, jump_decompose, sample_curve,
    trivialization_apply, verify_graph, wf_identity_residual, BoundaryFunction, ConformalMap,
    DomainSide, HTuple, TaylorMap, TestFunction, C64,
};
use rand::Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn grunsky_maps() -> Vec<grunskykit::LaurentMap> {
    let mut g = rng(11);
    (0..6).map(|_| random_laurent(&mut g, 7)).collect()
}

fn symmetry() -> Outcome {
    let worst = grunsky_maps()
        .iter()
        .map(|m| grunsky_via_generating(m, 12).unwrap().weighted_symmetry_residual())
        .fold(0.0, f64::max);
    check(worst < 1e-10, format!("6 maps, K=12, max |k Y_km - m Y_mk| = {worst:.2e} (tol 1e-10)"))
}

fn route_agreement() -> Outcome {
    let worst = grunsky_maps()
        .iter()
        .map(|m| {
            let a = grunsky_via_generating(m, 12).unwrap();
            let b = grunsky_via_faber(m, 12).unwrap();
            a.max_abs_diff(&b)
        })
        .fold(0.0, f64::max);
    check(worst < 1e-10, format!("generating vs Faber, max entry gap {worst:.2e} (tol 1e-10)"))
}

fn closed_forms() -> Outcome {
    let m = joukowski(0.3);
    let g = grunsky_via_generating(&m, 10).unwrap();
    let mut rel: f64 = 0.0;
    for k in 1..=10 {
        let want = 0.3f64.powi(k as i32) / k as f64;
        rel = rel.max((g.b(k, k) - c(want, 0.0)).norm() / want);
    }
    let fam = faber_polynomials(&m, 3).unwrap();
    let p2 = [c(-0.6, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
    let p3 = [c(0.0, 0.0), c(-0.9, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
    let coef = fam
        .poly(2)
        .iter()
        .zip(&p2)
        .chain(fam.poly(3).iter().zip(&p3))
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    check(
        rel < 1e-12 && coef < 1e-12,
        format!("b_kk rel err {rel:.2e}, Phi_2/Phi_3 coefficient err {coef:.2e} (tol 1e-12)"),
    )
}

fn jump_circle() -> Outcome {
    let curve = sample_curve(&TaylorMap::disk(c(0.0, 0.0), 1.0).into(), 128).unwrap();
    let mut g = rng(4);
    let mut split: f64 = 0.0;
    let mut plemelj: f64 = 0.0;
    for k in [1usize, 8, 32] {
        let modes: Vec<(i64, C64)> = (-(k as i64)..=k as i64).map(|n| (n, in_disk(&mut g, 1.0))).collect();
        let u = BoundaryFunction::from_modes(k, &modes);
        let d = jump_decompose(&curve, &u).unwrap();
        let want_minus = u.negative_part().scale(c(-1.0, 0.0));
        split = split
            .max(d.u_plus.max_abs_diff(&u.nonnegative_part().truncated(d.u_plus.K())))
            .max(d.u_minus.max_abs_diff(&want_minus.truncated(d.u_minus.K())));
        plemelj = plemelj.max(d.residual);
    }
    check(
        split < 1e-13 && plemelj < 1e-13,
        format!("K<=32, N=128: split err {split:.2e}, Plemelj residual {plemelj:.2e} (tol 1e-13)"),
    )
}

fn ellipse_error(n: usize) -> f64 {
    let m: ConformalMap = joukowski(0.3).into();
    let curve = sample_curve(&m, n).unwrap();
    let q_in = m.eval(C64::from_polar(0.9, 0.7));
    let q_out = m.eval(C64::from_polar(1.15, -1.0));
    let vals: Vec<C64> = curve
        .points
        .iter()
        .map(|w| (w - q_in).inv() + (w - q_out).inv())
        .collect();
    let u = BoundaryFunction::from_samples(&vals);
    let d = jump_decompose(&curve, &u).unwrap();
    let p = d.u_plus.samples(n);
    let mm = d.u_minus.samples(n);
    curve
        .points
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let plus = (w - q_out).inv();
            let minus = c(0.0, 0.0) - (w - q_in).inv();
            (p[j] - plus).norm().max((mm[j] - minus).norm())
        })
        .fold(0.0, f64::max)
}

fn jump_ellipse() -> Outcome {
    let (e256, e512) = (ellipse_error(256), ellipse_error(512));
    let ratio = e256 / e512;
    check(
        e512 < 1e-8 && ratio >= 10.0,
        format!("pointwise err N=256 {e256:.2e}, N=512 {e512:.2e} (tol 1e-8), decrease {ratio:.1}x (need >= 10x)"),
    )
}

fn projection_identity() -> Outcome {
    let n = 1024;
    let maps = [
        TaylorMap::new(c(0.0, 0.0), vec![c(0.8, 0.1), c(0.15, 0.0)]).unwrap(),
        TaylorMap::new(c(2.0, -1.0), vec![c(0.8, 0.1), c(0.15, 0.0)]).unwrap(),
    ];
    let mut ident: f64 = 0.0;
    let mut across: f64 = 0.0;
    for k in 1..=8i64 {
        let v = BoundaryFunction::monomial(-k, c(1.0, 0.0), 8);
        let outs: Vec<BoundaryFunction> = maps
            .iter()
            .map(|m| trivialization_apply(&m.clone().into(), DomainSide::Exterior, &v, n).unwrap())
            .collect();
        for o in &outs {
            ident = ident.max(o.negative_part().max_abs_diff(&v.truncated(o.K())));
        }
        across = across.max(outs[0].max_abs_diff(&outs[1]));
    }
    check(
        ident < 1e-7 && across < 1e-7,
        format!("N=1024, k<=8: identity residual {ident:.2e}, column gap between centers {across:.2e} (tol 1e-7)"),
    )
}

fn annulus_closed_form() -> Outcome {
    let r = annulus(1024);
    let k = 8;
    let b = assemble_grunsky_blocks(&r, k).unwrap();
    let mut rel: f64 = 0.0;
    for kk in 1..=k as i64 {
        let want = 0.1f64.powi(kk as i32);
        rel = rel.max((b.entry(0, 1, -kk, -kk) - c(want, 0.0)).norm() / want);
    }
    let diag = b.block(0, 0).iter().chain(b.block(1, 1).iter()).map(|z| z.norm()).fold(0.0, f64::max);
    let graph = verify_graph(&r, &b, &TestFunction::simple_pole(c(0.0, 0.0), c(1.0, 0.0))).residual;
    let hs2: f64 = 1.0 + 2.0 * (1..=k as i32).map(|j| 0.01f64.powi(j)).sum::<f64>();
    let hs = (hilbert_schmidt_norm(&b) - hs2.sqrt()).abs();
    check(
        rel < 1e-8 && diag < 1e-9 && graph < 1e-8 && hs < 1e-10,
        format!(
            "K=8, N=1024: gr01 rel err {rel:.2e} (1e-8), diagonal {diag:.2e} (1e-9), graph {graph:.2e} (1e-8), HS gap {hs:.2e} (1e-10)"
        ),
    )
}

fn random_minus(r: &grunskykit::Rigging, k: usize, seed: u64) -> HTuple {
    let mut g = rng(seed);
    HTuple {
        components: (0..=r.n)
            .map(|i| {
                let modes: Vec<(i64, C64)> = r.minus_modes(i, k).into_iter().map(|m| (m, in_disk(&mut g, 1.0))).collect();
                BoundaryFunction::from_modes(k, &modes)
            })
            .collect(),
    }
}

fn three_cap_theorem() -> Outcome {
    let r = three_caps(1024);
    grunskykit::validate_rigging(&r).unwrap();
    let k = 8;
    let b = assemble_grunsky_blocks(&r, k).unwrap();
    let mut wf: f64 = 0.0;
    let mut stray: f64 = 0.0;
    for seed in 0..3 {
        let (res, s) = wf_identity_residual(&r, &random_minus(&r, k, seed), k).unwrap();
        wf = wf.max(res);
        stray = stray.max(s);
    }
    let graph = TestFunction::default_set(&r)
        .iter()
        .map(|h| verify_graph(&r, &b, h).residual)
        .fold(0.0, f64::max);
    check(
        wf < 1e-6 && graph < 1e-6 && stray < 1e-8,
        format!("n=2, K=8, N=1024: P_- W_f residual {wf:.2e} (1e-6), graph {graph:.2e} over 3 functions (1e-6), stray D- {stray:.2e} (1e-8)"),
    )
}

fn faber_convergence() -> Outcome {
    let m = joukowski(0.3);
    let cm: ConformalMap = m.clone().into();
    let curve = sample_curve(&cm, 256).unwrap();
    let fam = faber_polynomials(&m, 24).unwrap();
    let q = c(5.0, 0.0);
    let vals: Vec<C64> = curve.points.iter().map(|w| (w - q).inv()).collect();
    let fs = faber_series(&curve, &BoundaryFunction::from_samples(&vals), &fam).unwrap();
    let mut probes = Vec::new();
    for s in [0.2, 0.5, 0.8] {
        for j in 0..16 {
            let t = TAU * j as f64 / 16.0;
            probes.push(c(1.3 * s * t.cos(), 0.7 * s * t.sin()));
        }
    }
    let errs = fs.sup_errors(&probes, |w| (w - q).inv());
    let pts: Vec<(f64, f64)> = errs
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 1e-13)
        .map(|(n, e)| (n as f64, e.ln()))
        .collect();
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let slope = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum::<f64>();
    let ratio = slope.exp();
    check(
        ratio < 0.5 && pts.len() >= 4,
        format!("h = 1/(w-5), {} fitted orders, ratio {ratio:.3} (need < 0.5)", pts.len()),
    )
}

fn k_round_trip() -> Outcome {
    let r = three_caps(1024);
    let mut g = rng(21);
    let mut h = TestFunction::constant(c(0.3, 0.1));
    for (i, t) in r.interior.iter().enumerate() {
        let s = r.cap_scale(i);
        h = h.plus(TestFunction::simple_pole(t.center + in_disk(&mut g, 0.3 * s), in_disk(&mut g, 1.0)));
    }
    h = h.plus(TestFunction::simple_pole(c(0.0, 20.0), c(g.gen_range(1.0..3.0), 0.0)));
    let mesh = r.curves.iter().map(|cv| cv.mesh_width()).fold(0.0, f64::max);
    let probes = sigma_probes(&r, 50, 8.0 * mesh, 5);
    let k = apply_k(&r, &h).unwrap();
    let err = k
        .sum(&r, &probes)
        .unwrap()
        .iter()
        .zip(&probes)
        .map(|(v, z)| (v - h.eval(*z)).norm())
        .fold(0.0, f64::max);
    check(err < 1e-8, format!("poles in all 3 caps, N=1024, 50 probes beyond 8 mesh widths: max err {err:.2e} (tol 1e-8)"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("grunsky symmetry", symmetry),
        ("route agreement", route_agreement),
        ("closed forms", closed_forms),
        ("jump on circle", jump_circle),
        ("jump on ellipse", jump_ellipse),
        ("projection identity", projection_identity),
        ("annulus closed form", annulus_closed_form),
        ("three-cap identities", three_cap_theorem),
        ("faber series convergence", faber_convergence),
        ("K round trip", k_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
