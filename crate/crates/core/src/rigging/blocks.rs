//! The block Grunsky operator and the operators `W_f` it is read from.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{is_minus_mode, minus_modes, plus_modes, split_h, HTuple, Rigging, TestFunction};
use crate::cauchy::{cauchy_integral_samples, principal_values};
use crate::error::{Error, Result};
use crate::fourier::BoundaryFunction;

/// Tail mass above which a transferred column counts as under-resolved.
const TAIL_LIMIT: f64 = 1e-6;

fn check_budget(r: &Rigging, k: usize) -> Result<()> {
    if k == 0 || 64 * k > r.sample_n {
        return Err(Error::Budget { k, n: r.sample_n });
    }
    Ok(())
}

/// `C_f P(Sigma) C_{f^-1}` applied to data `v` in slot `i` alone: the
/// signed Cauchy integral over curve `i`, read back on every curve `j` in
/// that curve's circle parameter. Each output keeps `K = N/2 - 1` modes.
pub fn transfer(r: &Rigging, i: usize, v: &BoundaryFunction) -> Vec<BoundaryFunction> {
    let src = &r.curves[i];
    let samples = v.samples(src.n);
    let sign = if i < r.n { -1.0 } else { 1.0 };
    (0..=r.n)
        .map(|j| {
            let values: Vec<Complex64> = if j == i {
                let pv = principal_values(src, v);
                if i < r.n {
                    pv.iter().map(|p| Complex64::new(0.0, 0.0) - p).collect()
                } else {
                    pv.iter().zip(&samples).map(|(p, s)| p + s).collect()
                }
            } else {
                cauchy_integral_samples(src, &samples, &r.curves[j].points)
                    .into_iter()
                    .map(|x| x * sign)
                    .collect()
            };
            BoundaryFunction::from_samples(&values)
        })
        .collect()
}

/// Blocks `gr_ij` from the `D^-` part of slot `i` to the `D^+` part of
/// slot `j`, so that `(G g)_j = sum_i gr_ij g_i`.
#[derive(Clone, Debug)]
pub struct GrunskyBlocks {
    pub n: usize,
    pub k: usize,
    /// `blocks[i][j]`: rows follow `plus_modes(j)`, columns `minus_modes(i)`.
    pub blocks: Vec<Vec<DMatrix<Complex64>>>,
}

fn weight(m: i64) -> f64 {
    if m == 0 {
        1.0
    } else {
        (PI * m.unsigned_abs() as f64).sqrt()
    }
}

impl GrunskyBlocks {
    pub fn block(&self, i: usize, j: usize) -> &DMatrix<Complex64> {
        &self.blocks[i][j]
    }

    pub fn minus_modes(&self, i: usize) -> Vec<i64> {
        minus_modes(i, self.n, self.k)
    }

    pub fn plus_modes(&self, j: usize) -> Vec<i64> {
        plus_modes(j, self.n, self.k)
    }

    /// Entry of `gr_ij` taking `z^from` to `z^to`.
    pub fn entry(&self, i: usize, j: usize, to: i64, from: i64) -> Complex64 {
        let r = self.plus_modes(j).iter().position(|m| *m == to);
        let c = self.minus_modes(i).iter().position(|m| *m == from);
        match (r, c) {
            (Some(r), Some(c)) => self.blocks[i][j][(r, c)],
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// `D^+` output of `G` on `D^-` data (modes beyond `K` are ignored).
    pub fn apply(&self, minus: &HTuple) -> HTuple {
        let mut out = HTuple::zeros(self.n + 1, self.k);
        for (i, g) in minus.components.iter().enumerate() {
            let x: Vec<Complex64> = self.minus_modes(i).iter().map(|m| g.coeff(*m)).collect();
            for j in 0..=self.n {
                let b = &self.blocks[i][j];
                for (row, m) in self.plus_modes(j).iter().enumerate() {
                    let mut acc = out.components[j].coeff(*m);
                    for (col, xv) in x.iter().enumerate() {
                        acc += b[(row, col)] * xv;
                    }
                    out.components[j].set(*m, acc);
                }
            }
        }
        out
    }

    /// The whole operator as one matrix in the orthonormal Dirichlet bases
    /// `z^m / sqrt(pi |m|)` (constants weighted 1).
    pub fn orthonormal_matrix(&self) -> DMatrix<Complex64> {
        let rows: usize = (0..=self.n).map(|j| self.plus_modes(j).len()).sum();
        let cols: usize = (0..=self.n).map(|i| self.minus_modes(i).len()).sum();
        let mut m = DMatrix::from_element(rows, cols, Complex64::new(0.0, 0.0));
        let mut c0 = 0;
        for i in 0..=self.n {
            let ins = self.minus_modes(i);
            let mut r0 = 0;
            for j in 0..=self.n {
                let outs = self.plus_modes(j);
                for (r, to) in outs.iter().enumerate() {
                    for (c, from) in ins.iter().enumerate() {
                        m[(r0 + r, c0 + c)] = self.blocks[i][j][(r, c)] * (weight(*to) / weight(*from));
                    }
                }
                r0 += outs.len();
            }
            c0 += ins.len();
        }
        m
    }

    /// Singular values of the truncated operator, largest first.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self
            .orthonormal_matrix()
            .singular_values()
            .iter()
            .copied()
            .collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks
            .iter()
            .flatten()
            .flat_map(|b| b.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Serialize for GrunskyBlocks {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks: Vec<Vec<Vec<Vec<[f64; 2]>>>> = self
            .blocks
            .iter()
            .map(|row| {
                row.iter()
                    .map(|b| {
                        (0..b.nrows())
                            .map(|r| {
                                (0..b.ncols())
                                    .map(|c| crate::serde_c64::to_pair(b[(r, c)]))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("GrunskyBlocks", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("K", &self.k)?;
        st.serialize_field("blocks", &blocks)?;
        st.end()
    }
}

/// Assemble every block up to order `K`, one column per `D^-` monomial.
pub fn assemble_grunsky_blocks(r: &Rigging, k: usize) -> Result<GrunskyBlocks> {
    check_budget(r, k)?;
    let columns: Vec<(usize, usize, i64)> = (0..=r.n)
        .flat_map(|i| {
            minus_modes(i, r.n, k)
                .into_iter()
                .enumerate()
                .map(move |(c, m)| (i, c, m))
        })
        .collect();
    let computed: Vec<Result<(usize, usize, Vec<BoundaryFunction>)>> = columns
        .par_iter()
        .map(|&(i, c, m)| {
            let v = BoundaryFunction::monomial(m, Complex64::new(1.0, 0.0), k);
            let out = transfer(r, i, &v);
            for (j, o) in out.iter().enumerate() {
                let tail = o.tail();
                if tail > TAIL_LIMIT {
                    return Err(Error::UnderResolved { i, j, k: m, tail });
                }
            }
            Ok((i, c, out))
        })
        .collect();
    let mut blocks: Vec<Vec<DMatrix<Complex64>>> = (0..=r.n)
        .map(|i| {
            (0..=r.n)
                .map(|j| {
                    DMatrix::from_element(
                        plus_modes(j, r.n, k).len(),
                        minus_modes(i, r.n, k).len(),
                        Complex64::new(0.0, 0.0),
                    )
                })
                .collect()
        })
        .collect();
    for col in computed {
        let (i, c, out) = col?;
        for (j, o) in out.iter().enumerate() {
            for (row, m) in plus_modes(j, r.n, k).iter().enumerate() {
                blocks[i][j][(row, c)] = o.coeff(*m);
            }
        }
    }
    Ok(GrunskyBlocks { n: r.n, k, blocks })
}

fn check_minus(g: &HTuple, n: usize) -> Result<()> {
    if g.components.len() != n + 1 {
        return Err(Error::InvalidInput(format!(
            "expected {} components, got {}",
            n + 1,
            g.components.len()
        )));
    }
    for (i, c) in g.components.iter().enumerate() {
        let stray = c
            .modes()
            .filter(|(m, _)| !is_minus_mode(i, n, *m))
            .map(|(_, x)| x.norm())
            .fold(0.0, f64::max);
        if stray > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "component {i} has D+ content {stray:.3e}"
            )));
        }
    }
    Ok(())
}

/// `W_f g = C_f P(Sigma) C_{f^-1} g` for `g` in `D^-`, modes up to `K`.
pub fn apply_wf(r: &Rigging, g: &HTuple, k: usize) -> Result<HTuple> {
    Ok(wf_parts(r, g, k)?.0)
}

/// `W_f g` together with the largest `D^-` coefficient that any slot `j`
/// receives from a different slot `i`.
fn wf_parts(r: &Rigging, g: &HTuple, k: usize) -> Result<(HTuple, f64)> {
    check_budget(r, k)?;
    check_minus(g, r.n)?;
    let g = g.truncated(k);
    let parts: Vec<Vec<BoundaryFunction>> = (0..=r.n)
        .into_par_iter()
        .map(|i| transfer(r, i, &g.components[i]))
        .collect();
    let mut out = HTuple::zeros(r.n + 1, r.sample_n / 2 - 1);
    let mut stray: f64 = 0.0;
    for (i, row) in parts.iter().enumerate() {
        for (j, o) in row.iter().enumerate() {
            out.components[j] = out.components[j].add(o);
            if i != j {
                let s = o
                    .modes()
                    .filter(|(m, _)| is_minus_mode(j, r.n, *m))
                    .map(|(_, x)| x.norm())
                    .fold(0.0, f64::max);
                stray = stray.max(s);
            }
        }
    }
    Ok((out, stray))
}

/// `(max |P_- W_f g - g|, stray off-diagonal D^- mass)`.
pub fn wf_identity_residual(r: &Rigging, g: &HTuple, k: usize) -> Result<(f64, f64)> {
    let (w, stray) = wf_parts(r, g, k)?;
    let (minus, _) = split_h(&w);
    let kk = w.components[0].K();
    Ok((minus.max_abs_diff(&g.truncated(kk)), stray))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct GraphReport {
    /// Largest modal gap between `P_+ C_f h` and `G P_- C_f h` over all slots.
    pub residual: f64,
    pub per_slot: Vec<f64>,
    pub minus_size: f64,
    pub plus_size: f64,
}

/// Check that the traces of `h` satisfy `plus_j = sum_i gr_ij minus_i` up
/// to order `K` of `blocks`.
pub fn verify_graph(r: &Rigging, blocks: &GrunskyBlocks, h: &TestFunction) -> GraphReport {
    let t = HTuple {
        components: h.traces(r),
    };
    let (minus, plus) = split_h(&t);
    let predicted = blocks.apply(&minus);
    let actual = plus.truncated(blocks.k);
    let per_slot: Vec<f64> = predicted
        .components
        .iter()
        .zip(&actual.components)
        .map(|(p, a)| p.max_abs_diff(a))
        .collect();
    GraphReport {
        residual: per_slot.iter().copied().fold(0.0, f64::max),
        per_slot,
        minus_size: minus.max_abs(),
        plus_size: plus.max_abs(),
    }
}

/// Frobenius norm of the operator in orthonormal Dirichlet bases.
pub fn hilbert_schmidt_norm(blocks: &GrunskyBlocks) -> f64 {
    blocks
        .orthonormal_matrix()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Norms of the truncations to modes `|m| <= K'` for `K' = 1..=K`.
pub fn hilbert_schmidt_partial_sums(blocks: &GrunskyBlocks) -> Vec<f64> {
    (1..=blocks.k)
        .map(|kk| {
            let mut s = 0.0;
            for i in 0..=blocks.n {
                for j in 0..=blocks.n {
                    for (r, to) in blocks.plus_modes(j).iter().enumerate() {
                        for (c, from) in blocks.minus_modes(i).iter().enumerate() {
                            if to.unsigned_abs() as usize <= kk && from.unsigned_abs() as usize <= kk {
                                let x = blocks.blocks[i][j][(r, c)] * (weight(*to) / weight(*from));
                                s += x.norm_sqr();
                            }
                        }
                    }
                }
            }
            s.sqrt()
        })
        .collect()
}
