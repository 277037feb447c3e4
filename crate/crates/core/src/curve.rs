//! Sampled boundary curves `gamma_j = F(e^{2 pi i j / N})`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::nodes;
use crate::maps::ConformalMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Counterclockwise around the bounded complementary component.
    Positive,
    Negative,
}

#[derive(Clone, Debug)]
pub struct CurveSample {
    pub n: usize,
    pub points: Vec<Complex64>,
    /// `d gamma / d theta`.
    pub derivs: Vec<Complex64>,
    pub orientation: Orientation,
    pub source: ConformalMap,
}

/// Sample the boundary image of `map` at `n` equispaced circle nodes.
pub fn sample_curve(map: &ConformalMap, n: usize) -> Result<CurveSample> {
    map.validate()?;
    if !n.is_power_of_two() || n < 4 {
        return Err(Error::InvalidInput(format!(
            "sample count N={n} must be a power of two >= 4"
        )));
    }
    if n < 4 * map.degree() {
        return Err(Error::InvalidInput(format!(
            "N={n} is below 4 x map degree {}",
            map.degree()
        )));
    }
    let circle: Vec<Complex64> = nodes(n).map(|t| Complex64::from_polar(1.0, t)).collect();
    let points: Vec<Complex64> = circle.iter().map(|z| map.eval(*z)).collect();
    let derivs: Vec<Complex64> = circle
        .iter()
        .map(|z| Complex64::new(0.0, 1.0) * z * map.deriv(*z))
        .collect();
    let orientation = if signed_area(&points) >= 0.0 {
        Orientation::Positive
    } else {
        Orientation::Negative
    };
    let curve = CurveSample {
        n,
        points,
        derivs,
        orientation,
        source: map.clone(),
    };
    if !curve.is_simple() {
        return Err(Error::NotSimple(n));
    }
    Ok(curve)
}

fn signed_area(p: &[Complex64]) -> f64 {
    let n = p.len();
    (0..n)
        .map(|j| {
            let a = p[j];
            let b = p[(j + 1) % n];
            a.re * b.im - b.re * a.im
        })
        .sum::<f64>()
        / 2.0
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_cross(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = cross(p2 - p1, q1 - p1);
    let d2 = cross(p2 - p1, q2 - p1);
    let d3 = cross(q2 - q1, p1 - q1);
    let d4 = cross(q2 - q1, p2 - q1);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Distance from `z` to the segment `[a, b]`.
pub fn point_segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

impl CurveSample {
    pub fn segment(&self, j: usize) -> (Complex64, Complex64) {
        (self.points[j], self.points[(j + 1) % self.n])
    }

    /// No two non-adjacent polygon edges cross and no vertex repeats.
    pub fn is_simple(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            let (a, b) = self.segment(i);
            if a == b {
                return false;
            }
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = self.segment(j);
                if segments_cross(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }

    /// Longest polygon edge.
    pub fn mesh_width(&self) -> f64 {
        (0..self.n)
            .map(|j| {
                let (a, b) = self.segment(j);
                (b - a).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn distance_to(&self, z: Complex64) -> f64 {
        (0..self.n)
            .map(|j| {
                let (a, b) = self.segment(j);
                point_segment_distance(z, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimum distance between the two sampled polygons.
    pub fn distance_to_curve(&self, other: &CurveSample) -> f64 {
        let d1 = other
            .points
            .iter()
            .map(|p| self.distance_to(*p))
            .fold(f64::INFINITY, f64::min);
        let d2 = self
            .points
            .iter()
            .map(|p| other.distance_to(*p))
            .fold(f64::INFINITY, f64::min);
        d1.min(d2)
    }

    /// Winding number of the polygon about `z`.
    pub fn winding_number(&self, z: Complex64) -> i64 {
        let mut total = 0.0;
        for j in 0..self.n {
            let (a, b) = self.segment(j);
            total += ((b - z) / (a - z)).arg();
        }
        (total / (2.0 * std::f64::consts::PI)).round() as i64
    }

    /// `z` lies in the bounded complementary component.
    pub fn encloses(&self, z: Complex64) -> bool {
        self.winding_number(z) != 0
    }

    /// Cumulative arc length at each node, by the trapezoid rule on
    /// `|gamma'|`, together with the total length.
    pub fn arc_lengths(&self) -> (Vec<f64>, f64) {
        let h = 2.0 * std::f64::consts::PI / self.n as f64;
        let mut s = Vec::with_capacity(self.n);
        let mut acc = 0.0;
        for j in 0..self.n {
            s.push(acc);
            let a = self.derivs[j].norm();
            let b = self.derivs[(j + 1) % self.n].norm();
            acc += 0.5 * h * (a + b);
        }
        (s, acc)
    }

    /// Is the source map `z -> e^{i a} z` with `|a1| = 1`, i.e. the unit
    /// circle in its own parameter up to rotation?
    pub fn is_unit_circle(&self) -> bool {
        let tol = 1e-12;
        match &self.source {
            ConformalMap::Taylor(t) => {
                t.center.norm() < tol
                    && (t.a1().norm() - 1.0).abs() < tol
                    && t.coeffs[1..].iter().all(|c| c.norm() < tol)
            }
            ConformalMap::Laurent(l) => {
                (l.leading.norm() - 1.0).abs() < tol && l.coeffs.iter().all(|c| c.norm() < tol)
            }
        }
    }
}
