//! Generalized symmetric measurements: `N` POVMs `{E_(a,k)}` with
//!
//! ```text
//! Tr E_(a,k)           = w_a = d / M_a
//! Tr E_(a,k)^2         = x_a
//! Tr E_(a,k) E_(a,l)   = y_a = (d - M_a x_a) / (M_a (M_a - 1))      k != l
//! Tr E_(a,k) E_(b,l)   = z_ab = d / (M_a M_b)                         a != b
//! ```
//!
//! Families are built by identity-plus-simplex mixing over a partition of a
//! Hermitian orthonormal basis:
//! `E_(a,k) = I/M_a + t_a H_(a,k)` with `H_(a,k) = sum_j (v_k)_j G_(a,j)`, where
//! `v_k` are the vertices of the regular `(M_a - 1)`-simplex. This gives
//! `x_a = d/M_a^2 + t_a^2 (M_a - 1)/M_a` and `x_a - y_a = t_a^2`.

use serde::{Deserialize, Serialize};

use crate::basis::{partition_basis, simplex_vectors, BasisPartition, OperatorBasis};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::operator::{sum_operators, HermitianOperator};
use crate::overlaps::Overlaps;

/// Eigenvalue floor accepted for constructed elements.
pub const POSITIVITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GsmParams {
    pub w: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Cross-line overlaps; `None` on the diagonal.
    pub z: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone)]
pub struct GsmFamily {
    pub d: usize,
    pub sizes: Vec<usize>,
    /// Mixing parameters when built by [`build_gsm`].
    pub t: Option<Vec<f64>>,
    pub lines: Vec<Vec<HermitianOperator>>,
    pub params: GsmParams,
}

impl GsmFamily {
    /// Wraps explicit POVM elements, fitting `(w, x, y, z)` from traces.
    /// No symmetry is enforced; run [`verify_gsm`] for that.
    pub fn from_lines(d: usize, lines: Vec<Vec<HermitianOperator>>) -> Result<Self> {
        check_lines(d, &lines)?;
        let ov = Overlaps::new(&lines, Exec::default())?;
        let params = fit_params(&ov);
        let sizes = lines.iter().map(Vec::len).collect();
        Ok(Self { d, sizes, t: None, lines, params })
    }

    pub fn line_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = &HermitianOperator> {
        self.lines.iter().flatten()
    }
}

pub(crate) fn check_lines(d: usize, lines: &[Vec<HermitianOperator>]) -> Result<()> {
    if lines.is_empty() || lines.iter().any(Vec::is_empty) {
        return Err(Error::EmptyList);
    }
    if let Some(op) = lines.iter().flatten().find(|o| o.dim() != d) {
        return Err(Error::DimensionMismatch(d, op.dim()));
    }
    Ok(())
}

fn fit_params(ov: &Overlaps) -> GsmParams {
    let n = ov.lines();
    let w = (0..n).map(|a| ov.mean_trace(a)).collect();
    let x = (0..n).map(|a| ov.mean_square(a)).collect();
    let y = (0..n).map(|a| ov.mean_intra(a).unwrap_or(0.0)).collect();
    let z = (0..n)
        .map(|a| (0..n).map(|b| (a != b).then(|| ov.mean_cross(a, b))).collect())
        .collect();
    GsmParams { w, x, y, z }
}

/// `H_(a,k) = sum_j (v_k)_j G_(a,j)` for one partition block.
pub fn line_operators(block: &[HermitianOperator]) -> Vec<HermitianOperator> {
    let m = block.len() + 1;
    simplex_vectors(m)
        .iter()
        .map(|v| {
            let terms: Vec<HermitianOperator> = v.iter().zip(block).map(|(c, g)| g.scale(*c)).collect();
            sum_operators(&terms).expect("block is nonempty")
        })
        .collect()
}

/// Largest `t` with `I/M + t H_k >= 0` for every `k`:
/// `min_k 1 / (M |lambda_min(H_k)|)`.
pub fn max_mixing_parameter(h_line: &[HermitianOperator], m: usize) -> Result<f64> {
    if h_line.is_empty() {
        return Err(Error::EmptyList);
    }
    let mut t = f64::INFINITY;
    for (k, h) in h_line.iter().enumerate() {
        let lmin = h.min_eigenvalue();
        if h.frobenius_norm() < 1e-14 || lmin >= 0.0 {
            return Err(Error::DegenerateLine(k));
        }
        t = t.min(1.0 / (m as f64 * lmin.abs()));
    }
    Ok(t)
}

/// Extremal mixing `t_a = max_mixing_parameter` for every line.
pub fn extremal_mixing(partition: &BasisPartition) -> Result<Vec<f64>> {
    partition
        .blocks
        .iter()
        .zip(&partition.sizes)
        .map(|(block, &m)| max_mixing_parameter(&line_operators(block), m))
        .collect()
}

/// `x_a` reached by mixing parameter `t` on a line of `m` elements.
pub fn x_of_t(d: usize, m: usize, t: f64) -> f64 {
    let (d, m) = (d as f64, m as f64);
    d / (m * m) + t * t * (m - 1.0) / m
}

/// Mixing parameter producing `x = x_target`, inverse of [`x_of_t`].
/// Returns `None` when `x_target <= d/M^2`.
pub fn t_for_x(d: usize, m: usize, x_target: f64) -> Option<f64> {
    let (df, mf) = (d as f64, m as f64);
    let excess = x_target - df / (mf * mf);
    (excess > 0.0).then(|| (mf / (mf - 1.0) * excess).sqrt())
}

/// Lower end of the admissible `eta` interval `[max{0, (M-d)/(d(M-1))}, 1)`.
pub fn eta_lower_bound(d: usize, m: usize) -> f64 {
    let (d, m) = (d as f64, m as f64);
    ((m - d) / (d * (m - 1.0))).max(0.0)
}

/// Target `x = (d/M) / (1 + eta (M - 1))` (so that `y = eta x`).
pub fn x_for_eta(d: usize, m: usize, eta: f64) -> f64 {
    let (d, m) = (d as f64, m as f64);
    d / m / (1.0 + eta * (m - 1.0))
}

/// Mixing parameter whose line has `y = eta x`.
///
/// Positivity of the resulting line depends on the basis block and is checked
/// by [`build_gsm`].
pub fn solve_t_for_eta(d: usize, m: usize, eta: f64) -> Result<f64> {
    let low = eta_lower_bound(d, m);
    if !(eta >= low && eta < 1.0) {
        return Err(Error::EtaOutOfRange { eta, low, m });
    }
    t_for_x(d, m, x_for_eta(d, m, eta)).ok_or(Error::EtaOutOfRange { eta, low, m })
}

/// Builds the family on a partition of the Gell-Mann (or any orthonormal) basis.
pub fn build_gsm(d: usize, sizes: &[usize], mixing: &[f64], basis: &OperatorBasis) -> Result<GsmFamily> {
    if basis.dim != d {
        return Err(Error::DimensionMismatch(d, basis.dim));
    }
    let partition = partition_basis(basis, sizes)?;
    build_gsm_on_partition(&partition, mixing)
}

/// Same as [`build_gsm`] but on explicit blocks, which need not exhaust the
/// operator space.
pub fn build_gsm_on_partition(partition: &BasisPartition, mixing: &[f64]) -> Result<GsmFamily> {
    let d = partition.dim;
    if mixing.len() != partition.line_count() {
        return Err(Error::ShapeMismatch(format!(
            "{} mixing parameters for {} lines",
            mixing.len(),
            partition.line_count()
        )));
    }
    let mut lines = Vec::with_capacity(partition.line_count());
    for ((block, &m), &t) in partition.blocks.iter().zip(&partition.sizes).zip(mixing) {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::NotPositive(t));
        }
        let base = HermitianOperator::identity(d).scale(1.0 / m as f64);
        let mut line = Vec::with_capacity(m);
        for h in line_operators(block) {
            let e = &base + &h.scale(t);
            let lmin = e.min_eigenvalue();
            if lmin < -POSITIVITY_TOL {
                return Err(Error::NotPositive(lmin));
            }
            line.push(e);
        }
        lines.push(line);
    }
    let sizes = partition.sizes.clone();
    let n = sizes.len();
    let df = d as f64;
    let params = GsmParams {
        w: sizes.iter().map(|&m| df / m as f64).collect(),
        x: sizes.iter().zip(mixing).map(|(&m, &t)| x_of_t(d, m, t)).collect(),
        y: sizes
            .iter()
            .zip(mixing)
            .map(|(&m, &t)| {
                let m = m as f64;
                df / (m * m) - t * t / m
            })
            .collect(),
        z: (0..n)
            .map(|a| (0..n).map(|b| (a != b).then(|| df / (sizes[a] * sizes[b]) as f64)).collect())
            .collect(),
    };
    Ok(GsmFamily { d, sizes, t: Some(mixing.to_vec()), lines, params })
}

/// Outcome of checking the four symmetry relations of a GSM.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetryReport {
    /// `max |Tr E_(a,k) - d/M_a|`
    pub trace: f64,
    /// `max |Tr E_(a,k)^2 - x_a|` with `x_a` the line mean
    pub square: f64,
    /// `max |Tr E_(a,k) E_(a,l) - (d - M_a x_a)/(M_a(M_a-1))|`
    pub intra: f64,
    /// `max |Tr E_(a,k) E_(b,l) - d/(M_a M_b)|`
    pub cross: f64,
    /// `max_a ||sum_k E_(a,k) - I||_max`
    pub povm: f64,
    /// Smallest eigenvalue per line.
    pub min_eigenvalues: Vec<f64>,
    /// Whether every `x_a` lies in `(d/M^2, min{d^2/M^2, d/M}]`.
    pub x_in_range: bool,
    pub fitted: GsmParams,
    pub pass: bool,
}

pub fn verify_gsm(f: &GsmFamily, tol: f64) -> SymmetryReport {
    let d = f.d as f64;
    let ov = Overlaps::new(&f.lines, Exec::default()).expect("family lines are validated at construction");
    let fitted = fit_params(&ov);
    let sizes = &f.sizes;
    let trace = ov.trace_dev(|a| d / sizes[a] as f64);
    let square = ov.square_dev(|a| fitted.x[a]);
    let intra = ov.intra_dev(|a, _, _| {
        let m = sizes[a] as f64;
        (d - m * fitted.x[a]) / (m * (m - 1.0))
    });
    let cross = ov.cross_dev(|a, _, b, _| d / (sizes[a] * sizes[b]) as f64);
    let identity = HermitianOperator::identity(f.d);
    let povm = f
        .lines
        .iter()
        .map(|line| sum_operators(line).expect("nonempty line").max_abs_diff(&identity))
        .fold(0.0, f64::max);
    let min_eigenvalues: Vec<f64> = f
        .lines
        .iter()
        .map(|line| line.iter().map(HermitianOperator::min_eigenvalue).fold(f64::INFINITY, f64::min))
        .collect();
    let x_in_range = sizes.iter().zip(&fitted.x).all(|(&m, &x)| {
        let m = m as f64;
        x > d / (m * m) && x <= (d * d / (m * m)).min(d / m) + tol
    });
    let pass = [trace, square, intra, cross, povm].iter().all(|&v| v <= tol)
        && min_eigenvalues.iter().all(|&l| l >= -tol)
        && x_in_range;
    SymmetryReport { trace, square, intra, cross, povm, min_eigenvalues, x_in_range, fitted, pass }
}

/// Dual frame `F_(a,k) = [E_(a,k) - (I/d)(w_a - (x_a - y_a)/N)] / (x_a - y_a)`,
/// satisfying `sum F_(a,k) Tr(E_(a,k) X) = X`.
pub fn gsm_dual_frame(f: &GsmFamily) -> Result<Vec<Vec<HermitianOperator>>> {
    let n = f.line_count() as f64;
    let identity = HermitianOperator::identity(f.d);
    let d = f.d as f64;
    f.lines
        .iter()
        .enumerate()
        .map(|(a, line)| {
            let (w, r) = (f.params.w[a], f.params.x[a] - f.params.y[a]);
            if r <= 1e-12 * f.params.x[a].abs().max(1.0) {
                return Err(Error::DegenerateFrame(a));
            }
            let shift = identity.scale((w - r / n) / d);
            Ok(line.iter().map(|e| (e - &shift).scale(1.0 / r)).collect())
        })
        .collect()
}
