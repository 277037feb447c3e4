//! Riggings: `n` interior disks `f_0..f_{n-1}` and one exterior map `f_n`
//! whose caps are disjoint, and the operators on the domain `Sigma` they
//! leave between them.
//!
//! Slot `i < n` carries data on `f_i(S^1)` pulled back to the circle; its
//! `D^-` part is the negative Fourier modes and its `D^+` part the
//! nonnegative ones. The last slot reverses the roles.

mod blocks;
mod rational;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cauchy::cauchy_integral_samples;
use crate::curve::{sample_curve, CurveSample};
use crate::error::{Error, Result};
use crate::fourier::BoundaryFunction;
use crate::maps::{ConformalMap, LaurentMap, TaylorMap};
use crate::spaces::chord_arc_constant;

pub use blocks::{
    apply_wf, assemble_grunsky_blocks, hilbert_schmidt_norm, hilbert_schmidt_partial_sums,
    transfer, verify_graph, wf_identity_residual, GraphReport, GrunskyBlocks,
};
pub use rational::{apply_k, KComponents, Pole, TestFunction};

#[derive(Clone, Debug)]
pub struct Rigging {
    pub n: usize,
    pub interior: Vec<TaylorMap>,
    pub exterior: LaurentMap,
    /// `curves[i]` samples `f_i(S^1)`, all counterclockwise.
    pub curves: Vec<CurveSample>,
    pub sample_n: usize,
}

/// `{"n":.., "sample_N":.., "maps":[f_0, .., f_n], "test_functions":[..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RiggingConfig {
    pub n: usize,
    #[serde(rename = "sample_N")]
    pub sample_n: usize,
    pub maps: Vec<ConformalMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_functions: Option<Vec<TestFunction>>,
}

impl RiggingConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("parse: {e}")))
    }

    pub fn rigging(&self) -> Result<Rigging> {
        if self.maps.len() != self.n + 1 {
            return Err(Error::InvalidInput(format!(
                "n={} needs {} maps, got {}",
                self.n,
                self.n + 1,
                self.maps.len()
            )));
        }
        let mut interior = Vec::with_capacity(self.n);
        for (i, m) in self.maps[..self.n].iter().enumerate() {
            match m {
                ConformalMap::Taylor(t) => interior.push(t.clone()),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "map {i} must be a taylor map"
                    )))
                }
            }
        }
        let exterior = match &self.maps[self.n] {
            ConformalMap::Laurent(l) => l.clone(),
            _ => {
                return Err(Error::InvalidInput(
                    "the last map must be a laurent map".into(),
                ))
            }
        };
        Rigging::new(interior, exterior, self.sample_n)
    }
}

impl Rigging {
    /// Sample every curve; each must be simple at resolution `sample_n`.
    pub fn new(interior: Vec<TaylorMap>, exterior: LaurentMap, sample_n: usize) -> Result<Self> {
        if interior.is_empty() {
            return Err(Error::InvalidInput("a rigging needs n >= 1".into()));
        }
        let n = interior.len();
        let mut curves = Vec::with_capacity(n + 1);
        for t in &interior {
            curves.push(sample_curve(&t.clone().into(), sample_n)?);
        }
        curves.push(sample_curve(&exterior.clone().into(), sample_n)?);
        Ok(Self {
            n,
            interior,
            exterior,
            curves,
            sample_n,
        })
    }

    pub fn map(&self, i: usize) -> ConformalMap {
        if i < self.n {
            self.interior[i].clone().into()
        } else {
            self.exterior.clone().into()
        }
    }

    pub fn maps(&self) -> Vec<ConformalMap> {
        (0..=self.n).map(|i| self.map(i)).collect()
    }

    pub fn config(&self) -> RiggingConfig {
        RiggingConfig {
            n: self.n,
            sample_n: self.sample_n,
            maps: self.maps(),
            test_functions: None,
        }
    }

    /// First-order radius of cap `i`.
    pub fn cap_scale(&self, i: usize) -> f64 {
        self.map(i).scale()
    }

    /// Is `z` in the closed-off region of cap `i` (inside an interior curve,
    /// or outside the exterior curve)?
    pub fn in_cap(&self, i: usize, z: Complex64) -> bool {
        let inside = self.curves[i].encloses(z);
        if i < self.n {
            inside
        } else {
            !inside
        }
    }

    /// The cap containing `z`, or `None` for points of `Sigma` (or on a curve).
    pub fn cap_of(&self, z: Complex64) -> Option<usize> {
        (0..=self.n).find(|&i| self.in_cap(i, z))
    }

    pub fn in_sigma(&self, z: Complex64) -> bool {
        self.cap_of(z).is_none()
    }

    /// `D^-` modes of slot `i` up to order `k`.
    pub fn minus_modes(&self, i: usize, k: usize) -> Vec<i64> {
        minus_modes(i, self.n, k)
    }

    /// `D^+` modes of slot `i` up to order `k`.
    pub fn plus_modes(&self, i: usize, k: usize) -> Vec<i64> {
        plus_modes(i, self.n, k)
    }
}

pub(crate) fn minus_modes(i: usize, n: usize, k: usize) -> Vec<i64> {
    if i < n {
        (1..=k as i64).map(|m| -m).collect()
    } else {
        (0..=k as i64).collect()
    }
}

pub(crate) fn plus_modes(i: usize, n: usize, k: usize) -> Vec<i64> {
    if i < n {
        (0..=k as i64).collect()
    } else {
        (1..=k as i64).map(|m| -m).collect()
    }
}

pub(crate) fn is_minus_mode(i: usize, n: usize, m: i64) -> bool {
    if i < n {
        m < 0
    } else {
        m >= 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub min_distance: f64,
    /// `(i, j, distance)` for every pair of curves.
    pub pair_distances: Vec<(usize, usize, f64)>,
    pub winding_ok: bool,
    pub chord_arc: Vec<f64>,
    pub mesh_width: f64,
}

fn curves_cross(a: &CurveSample, b: &CurveSample) -> bool {
    for i in 0..a.n {
        let (p1, p2) = a.segment(i);
        for j in 0..b.n {
            let (q1, q2) = b.segment(j);
            let d1 = cross(p2 - p1, q1 - p1);
            let d2 = cross(p2 - p1, q2 - p1);
            let d3 = cross(q2 - q1, p1 - q1);
            let d4 = cross(q2 - q1, p2 - q1);
            if d1 * d2 <= 0.0 && d3 * d4 <= 0.0 {
                return true;
            }
        }
    }
    false
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Check that the caps are pairwise disjoint and that `f_0` is centered at
/// the origin with all centers distinct.
pub fn validate_rigging(r: &Rigging) -> Result<ValidationReport> {
    if r.interior[0].center.norm() > 1e-12 {
        return Err(Error::InvalidMap(format!(
            "f_0 must be centered at 0, got {}",
            r.interior[0].center
        )));
    }
    for i in 0..r.n {
        for j in (i + 1)..r.n {
            if (r.interior[i].center - r.interior[j].center).norm() < 1e-12 {
                return Err(Error::Overlap(i, j, "caps share a center".into()));
            }
        }
    }
    let mesh = r.curves.iter().map(|c| c.mesh_width()).fold(0.0, f64::max);
    let mut pair_distances = Vec::new();
    let mut min_distance = f64::INFINITY;
    for i in 0..=r.n {
        for j in (i + 1)..=r.n {
            let (a, b) = (&r.curves[i], &r.curves[j]);
            if curves_cross(a, b) {
                return Err(Error::Overlap(i, j, "boundary curves intersect".into()));
            }
            if j < r.n {
                if a.encloses(b.points[0]) || b.encloses(a.points[0]) {
                    return Err(Error::Overlap(i, j, "one cap contains the other".into()));
                }
            } else if !b.encloses(a.points[0]) {
                return Err(Error::Overlap(
                    i,
                    j,
                    "interior curve lies outside the exterior curve".into(),
                ));
            }
            let d = a.distance_to_curve(b);
            let mesh = a.mesh_width().max(b.mesh_width());
            if d <= mesh {
                return Err(Error::Overlap(
                    i,
                    j,
                    format!("curves are {d:.3e} apart, within the mesh width {mesh:.3e}"),
                ));
            }
            min_distance = min_distance.min(d);
            pair_distances.push((i, j, d));
        }
    }
    Ok(ValidationReport {
        valid: true,
        min_distance,
        pair_distances,
        winding_ok: true,
        chord_arc: r.curves.iter().map(chord_arc_constant).collect(),
        mesh_width: mesh,
    })
}

/// Data on each boundary slot, as Fourier coefficients in the circle
/// parameter of that slot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HTuple {
    pub components: Vec<BoundaryFunction>,
}

impl HTuple {
    pub fn zeros(slots: usize, k: usize) -> Self {
        Self {
            components: vec![BoundaryFunction::zeros(k); slots],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn truncated(&self, k: usize) -> Self {
        Self {
            components: self.components.iter().map(|c| c.truncated(k)).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().map(|c| c.max_abs()).fold(0.0, f64::max)
    }
}

/// Split into the `D^-` and `D^+` parts, slot by slot.
pub fn split_h(t: &HTuple) -> (HTuple, HTuple) {
    let n = t.components.len() - 1;
    let mut minus = Vec::with_capacity(n + 1);
    let mut plus = Vec::with_capacity(n + 1);
    for (i, c) in t.components.iter().enumerate() {
        minus.push(c.select(|m| is_minus_mode(i, n, m)));
        plus.push(c.select(|m| !is_minus_mode(i, n, m)));
    }
    (HTuple { components: minus }, HTuple { components: plus })
}

/// `P(Sigma)`: sum of the Cauchy integrals of `boundary[i]` over the curves
/// oriented as the boundary of `Sigma`, at probes in `Sigma`.
pub fn cauchy_sum(
    r: &Rigging,
    boundary: &[BoundaryFunction],
    probes: &[Complex64],
) -> Result<Vec<Complex64>> {
    if boundary.len() != r.n + 1 {
        return Err(Error::InvalidInput(format!(
            "expected {} boundary functions, got {}",
            r.n + 1,
            boundary.len()
        )));
    }
    let mesh = r.curves.iter().map(|c| c.mesh_width()).fold(0.0, f64::max);
    for p in probes {
        if !r.in_sigma(*p) {
            return Err(Error::OutsideDomain(format!("{p}")));
        }
        for c in &r.curves {
            let d = c.distance_to(*p);
            if d <= mesh {
                return Err(Error::NearSingular { distance: d, mesh });
            }
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); probes.len()];
    for (i, (curve, h)) in r.curves.iter().zip(boundary).enumerate() {
        let sign = if i < r.n { -1.0 } else { 1.0 };
        let v = cauchy_integral_samples(curve, &h.samples(curve.n), probes);
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * sign;
        }
    }
    Ok(out)
}
