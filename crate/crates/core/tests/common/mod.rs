#![allow(dead_code)]

use grunskykit::{LaurentMap, Rigging, TaylorMap, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the disk `|z| <= r`.
pub fn in_disk(rng: &mut impl Rng, r: f64) -> C64 {
    let rho = r * rng.gen::<f64>().sqrt();
    C64::from_polar(rho, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `z + c_0 + c_1/z + ..` with `|c_m| <= 0.1/m`.
pub fn random_laurent(rng: &mut impl Rng, terms: usize) -> LaurentMap {
    let mut coeffs = vec![in_disk(rng, 0.5)];
    for m in 1..terms {
        coeffs.push(in_disk(rng, 0.1 / m as f64));
    }
    let lead = C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..1.0));
    LaurentMap::new(lead, coeffs).unwrap()
}

pub fn joukowski(cc: f64) -> LaurentMap {
    LaurentMap::new(c(1.0, 0.0), vec![c(0.0, 0.0), c(cc, 0.0)]).unwrap()
}

/// `f_0 = 0.3 z`, `f_1 = 3 z`.
pub fn annulus(n: usize) -> Rigging {
    Rigging::new(vec![TaylorMap::disk(c(0.0, 0.0), 0.3)], LaurentMap::scaled(3.0), n).unwrap()
}

/// Two interior caps, one with a quadratic term, inside `|w| = 6`.
pub fn three_caps(n: usize) -> Rigging {
    Rigging::new(
        vec![
            TaylorMap::disk(c(0.0, 0.0), 0.5),
            TaylorMap::new(c(3.0, 0.0), vec![c(0.6, 0.0), c(0.05, 0.02)]).unwrap(),
        ],
        LaurentMap::scaled(6.0),
        n,
    )
    .unwrap()
}

/// `count` points of `Sigma` at least `margin` away from every curve.
pub fn sigma_probes(r: &Rigging, count: usize, margin: f64, seed: u64) -> Vec<C64> {
    let mut g = rng(seed);
    let radius = r.exterior.leading.norm();
    let mut out = Vec::new();
    while out.len() < count {
        let z = in_disk(&mut g, radius);
        if r.in_sigma(z) && r.curves.iter().all(|cv| cv.distance_to(z) > margin) {
            out.push(z);
        }
    }
    out
}
