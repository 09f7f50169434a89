//! Generalized equiangular measurements: a single POVM `{P_(a,k)}` made of `N`
//! lines with `sum_k P_(a,k) = gamma_a I`, `sum_a gamma_a = 1`, and
//!
//! ```text
//! Tr P_(a,k)            = a_a
//! Tr P_(a,k)^2          = b_a a_a^2
//! Tr P_(a,k) P_(a,l)    = c_a a_a^2              k != l
//! Tr P_(a,k) P_(b,l)    = f a_a a_b              a != b
//! ```
//!
//! with `a_a = d gamma_a / M_a`, `c_a = (M_a - d b_a)/(d (M_a - 1))` and `f = 1/d`.
//! Every builder here rescales a generalized symmetric measurement,
//! `P_(a,k) = gamma_a E_(a,k)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::basis::{check_sizes, gell_mann_basis, partition_basis, OperatorBasis};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gsm::{
    build_gsm, check_lines, extremal_mixing, solve_t_for_eta, t_for_x, GsmFamily,
};
use crate::operator::{c64, gram_rank, sum_operators, HermitianOperator};
use crate::overlaps::Overlaps;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeamParams {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    /// Cross-line coefficient; set to `1/d` for single-line families, where
    /// it is vacuous.
    pub f: f64,
}

#[derive(Debug, Clone)]
pub struct Geam {
    pub d: usize,
    pub sizes: Vec<usize>,
    pub gammas: Vec<f64>,
    pub lines: Vec<Vec<HermitianOperator>>,
    pub params: GeamParams,
}

impl Geam {
    /// Wraps explicit elements and line weights, fitting `(a, b, c, f)` from
    /// traces. Only the shape is checked; [`extract_parameters`] reports on the
    /// defining relations.
    pub fn from_lines(d: usize, gammas: Vec<f64>, lines: Vec<Vec<HermitianOperator>>) -> Result<Self> {
        check_lines(d, &lines)?;
        if gammas.len() != lines.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} weights for {} lines",
                gammas.len(),
                lines.len()
            )));
        }
        let ov = Overlaps::new(&lines, Exec::default())?;
        let params = fit_params(d, &ov);
        let sizes = lines.iter().map(Vec::len).collect();
        Ok(Self { d, sizes, gammas, lines, params })
    }

    pub fn line_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn element_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Elements flattened line by line.
    pub fn elements(&self) -> Vec<HermitianOperator> {
        self.lines.iter().flatten().cloned().collect()
    }

    /// Per-line `S_a = a_a^2 (b_a - c_a)`.
    pub fn line_s(&self) -> Vec<f64> {
        let p = &self.params;
        (0..self.line_count()).map(|a| p.a[a] * p.a[a] * (p.b[a] - p.c[a])).collect()
    }

    /// `mu = (1/d) sum_a a_a gamma_a`.
    pub fn mu(&self) -> f64 {
        self.params.a.iter().zip(&self.gammas).map(|(a, g)| a * g).sum::<f64>() / self.d as f64
    }
}

fn fit_params(d: usize, ov: &Overlaps) -> GeamParams {
    let n = ov.lines();
    let a: Vec<f64> = (0..n).map(|i| ov.mean_trace(i)).collect();
    let b = (0..n).map(|i| ov.mean_square(i) / (a[i] * a[i])).collect();
    let c = (0..n).map(|i| ov.mean_intra(i).unwrap_or(0.0) / (a[i] * a[i])).collect();
    let mut f_sum = 0.0;
    let mut pairs = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                f_sum += ov.mean_cross(i, j) / (a[i] * a[j]);
                pairs += 1;
            }
        }
    }
    let f = if pairs > 0 { f_sum / pairs as f64 } else { 1.0 / d as f64 };
    GeamParams { a, b, c, f }
}

fn check_weights(weights: &[f64], n: usize) -> Result<()> {
    if weights.len() != n {
        return Err(Error::WeightError(format!("{} weights for {n} lines", weights.len())));
    }
    if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(Error::WeightError(format!("weight {w} is not strictly positive")));
    }
    let s: f64 = weights.iter().sum();
    if (s - 1.0).abs() > 1e-12 {
        return Err(Error::WeightError(format!("weights sum to {s}, not 1")));
    }
    Ok(())
}

/// `P_(a,k) = gamma_a E_(a,k)`; parameters follow
/// `a = gamma w`, `b = x/w^2`, `c = y/w^2`, `f = z/(w_a w_b)`.
pub fn rescale_to_geam(gsm: &GsmFamily, weights: &[f64]) -> Result<Geam> {
    let n = gsm.line_count();
    check_weights(weights, n)?;
    let lines: Vec<Vec<HermitianOperator>> = gsm
        .lines
        .iter()
        .zip(weights)
        .map(|(line, &g)| line.iter().map(|e| e.scale(g)).collect())
        .collect();
    let p = &gsm.params;
    let a = (0..n).map(|i| weights[i] * p.w[i]).collect();
    let b = (0..n).map(|i| p.x[i] / (p.w[i] * p.w[i])).collect();
    let c = (0..n).map(|i| p.y[i] / (p.w[i] * p.w[i])).collect();
    let mut f_sum = 0.0;
    let mut pairs = 0;
    for i in 0..n {
        for j in 0..n {
            if let Some(z) = p.z[i][j] {
                f_sum += z / (p.w[i] * p.w[j]);
                pairs += 1;
            }
        }
    }
    let f = if pairs > 0 { f_sum / pairs as f64 } else { 1.0 / gsm.d as f64 };
    Ok(Geam {
        d: gsm.d,
        sizes: gsm.sizes.clone(),
        gammas: weights.to_vec(),
        lines,
        params: GeamParams { a, b, c, f },
    })
}

/// Largest deviation of each defining relation, plus closed-form consistency.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Deviations {
    pub trace: f64,
    pub square: f64,
    pub intra: f64,
    pub cross: f64,
    pub line_sum: f64,
    pub povm: f64,
    pub gamma_sum: f64,
    pub a_closed_form: f64,
    pub c_closed_form: f64,
    pub f_closed_form: f64,
}

impl Deviations {
    pub fn max(&self) -> f64 {
        [
            self.trace,
            self.square,
            self.intra,
            self.cross,
            self.line_sum,
            self.povm,
            self.gamma_sum,
            self.a_closed_form,
            self.c_closed_form,
            self.f_closed_form,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParameterReport {
    pub params: GeamParams,
    pub deviations: Deviations,
    pub min_eigenvalue: f64,
    pub b_in_range: bool,
    pub pass: bool,
}

/// Fits `(a, b, c, f)` from traces and checks every defining relation.
pub fn extract_parameters(g: &Geam, tol: f64) -> ParameterReport {
    let ov = Overlaps::new(&g.lines, Exec::default()).expect("lines checked at construction");
    let params = fit_params(g.d, &ov);
    let d = g.d as f64;
    let p = &params;
    let n = g.line_count();
    let trace = ov.trace_dev(|a| p.a[a]);
    let square = ov.square_dev(|a| p.b[a] * p.a[a] * p.a[a]);
    let intra = ov.intra_dev(|a, _, _| p.c[a] * p.a[a] * p.a[a]);
    let cross = ov.cross_dev(|a, _, b, _| p.f * p.a[a] * p.a[b]);
    let identity = HermitianOperator::identity(g.d);
    let line_sum = g
        .lines
        .iter()
        .zip(&g.gammas)
        .map(|(line, &gm)| sum_operators(line).expect("nonempty").max_abs_diff(&identity.scale(gm)))
        .fold(0.0, f64::max);
    let povm = sum_operators(g.lines.iter().flatten()).expect("nonempty").max_abs_diff(&identity);
    let gamma_sum = (g.gammas.iter().sum::<f64>() - 1.0).abs();
    let a_closed_form = (0..n)
        .map(|a| (p.a[a] - d * g.gammas[a] / g.sizes[a] as f64).abs())
        .fold(0.0, f64::max);
    let c_closed_form = (0..n)
        .filter(|&a| g.sizes[a] > 1)
        .map(|a| {
            let m = g.sizes[a] as f64;
            (p.c[a] - (m - d * p.b[a]) / (d * (m - 1.0))).abs()
        })
        .fold(0.0, f64::max);
    let f_closed_form = (p.f - 1.0 / d).abs();
    let deviations = Deviations {
        trace,
        square,
        intra,
        cross,
        line_sum,
        povm,
        gamma_sum,
        a_closed_form,
        c_closed_form,
        f_closed_form,
    };
    let min_eigenvalue = g
        .lines
        .iter()
        .flatten()
        .map(HermitianOperator::min_eigenvalue)
        .fold(f64::INFINITY, f64::min);
    let b_in_range = (0..n).all(|a| {
        let (lo, hi) = admissible_b_range(g.d, g.sizes[a]);
        p.b[a] > lo && p.b[a] <= hi + tol
    });
    let pass = deviations.max() <= tol && min_eigenvalue >= -tol && b_in_range;
    ParameterReport { params, deviations, min_eigenvalue, b_in_range, pass }
}

/// `(1/d, min{d, M}/d]`, open at the left end.
pub fn admissible_b_range(d: usize, m: usize) -> (f64, f64) {
    let df = d as f64;
    (1.0 / df, d.min(m) as f64 / df)
}

/// Weights `gamma_a = a M_a / d` with `a = d/(d^2 + N - 1)`, making every
/// element trace equal to `a`.
pub fn equal_trace_weights(d: usize, sizes: &[usize]) -> Result<Vec<f64>> {
    check_sizes(d, sizes)?;
    let df = d as f64;
    let a = df / (df * df + sizes.len() as f64 - 1.0);
    Ok(sizes.iter().map(|&m| a * m as f64 / df).collect())
}

pub fn uniform_weights(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Builds the GSM whose lines have `b_a = targets[a]` (via `x_a = b_a w_a^2`)
/// and rescales it with `weights`.
pub fn family_with_b(d: usize, sizes: &[usize], targets: &[f64], weights: &[f64], basis: &OperatorBasis) -> Result<Geam> {
    if targets.len() != sizes.len() {
        return Err(Error::ShapeMismatch(format!("{} b-values for {} lines", targets.len(), sizes.len())));
    }
    let mut t = Vec::with_capacity(sizes.len());
    for (&m, &b) in sizes.iter().zip(targets) {
        let w = d as f64 / m as f64;
        let (lo, hi) = admissible_b_range(d, m);
        if !(b > lo && b <= hi * (1.0 + 1e-12)) {
            return Err(Error::BOutOfRange { b, low: lo, high: hi });
        }
        t.push(t_for_x(d, m, b * w * w).ok_or(Error::BOutOfRange { b, low: lo, high: hi })?);
    }
    let gsm = build_gsm(d, sizes, &t, basis)?;
    rescale_to_geam(&gsm, weights)
}

/// Family with a line-independent `b`; `c_a` then varies with `M_a`.
pub fn constant_b_family(d: usize, sizes: &[usize], b: f64, weights: &[f64], basis: &OperatorBasis) -> Result<Geam> {
    family_with_b(d, sizes, &vec![b; sizes.len()], weights, basis)
}

/// Family with a line-independent `c`, using `b_a = (M_a - c d (M_a - 1))/d`.
pub fn constant_c_family(d: usize, sizes: &[usize], c: f64, weights: &[f64], basis: &OperatorBasis) -> Result<Geam> {
    let df = d as f64;
    let bs: Vec<f64> = sizes
        .iter()
        .map(|&m| {
            let m = m as f64;
            (m - c * df * (m - 1.0)) / df
        })
        .collect();
    family_with_b(d, sizes, &bs, weights, basis)
}

/// Upper end of the admissible `R` range, `min_a min{M_a/d, M_a(d-1)/(d(M_a-1))}`.
pub fn max_r(d: usize, sizes: &[usize]) -> f64 {
    let df = d as f64;
    sizes
        .iter()
        .map(|&m| {
            let m = m as f64;
            (m / df).min(m * (df - 1.0) / (df * (m - 1.0)))
        })
        .fold(f64::INFINITY, f64::min)
}

/// Equal-trace family with `b_a - c_a = R` on every line:
/// `b_a = 1/d + R(M_a - 1)/M_a`, `c_a = 1/d - R/M_a`.
pub fn constant_r_family(d: usize, sizes: &[usize], r: f64, basis: &OperatorBasis) -> Result<Geam> {
    check_sizes(d, sizes)?;
    let max = max_r(d, sizes);
    if !(r > 0.0 && r <= max * (1.0 + 1e-12)) {
        return Err(Error::ROutOfRange { r, max });
    }
    let df = d as f64;
    let bs: Vec<f64> = sizes.iter().map(|&m| 1.0 / df + r * (m as f64 - 1.0) / m as f64).collect();
    let weights = equal_trace_weights(d, sizes)?;
    family_with_b(d, sizes, &bs, &weights, basis)
}

/// Family with line-independent `Tr P^2 = B` and `Tr P P' = C = eta B`.
///
/// Lines get `x_a = (d/M_a)/(1 + eta(M_a - 1))`, `y_a = eta x_a`, and weights
/// `gamma_a = sqrt([1 + eta(M_a - 1)] B M_a / d)` with `B` fixed by
/// `sum gamma_a = 1`.
pub fn design2_family(d: usize, sizes: &[usize], eta: f64, basis: &OperatorBasis) -> Result<Geam> {
    check_sizes(d, sizes)?;
    let t = sizes
        .iter()
        .map(|&m| solve_t_for_eta(d, m, eta))
        .collect::<Result<Vec<f64>>>()?;
    let gsm = build_gsm(d, sizes, &t, basis)?;
    let df = d as f64;
    let root = |m: usize| ((m as f64) * (1.0 + eta * (m as f64 - 1.0)) / df).sqrt();
    let sqrt_b = 1.0 / sizes.iter().map(|&m| root(m)).sum::<f64>();
    let weights: Vec<f64> = sizes.iter().map(|&m| sqrt_b * root(m)).collect();
    // renormalize away the last ulp so the weight check sees an exact sum
    let total: f64 = weights.iter().sum();
    let weights: Vec<f64> = weights.iter().map(|w| w / total).collect();
    rescale_to_geam(&gsm, &weights)
}

/// Upper end of the admissible `r` range for uniform-weight conical families,
/// `min_a min{d/M_a, d(d-1)/(M_a(M_a-1))}`.
pub fn max_conical_r(d: usize, sizes: &[usize]) -> f64 {
    let df = d as f64;
    sizes
        .iter()
        .map(|&m| {
            let m = m as f64;
            (df / m).min(df * (df - 1.0) / (m * (m - 1.0)))
        })
        .fold(f64::INFINITY, f64::min)
}

/// Uniform-weight family (`gamma_a = 1/N`) from a GSM with `x_a - y_a = r` on
/// every line, i.e. `t_a = sqrt(r)`.
pub fn uniform_conical_family(d: usize, sizes: &[usize], r: f64, basis: &OperatorBasis) -> Result<Geam> {
    check_sizes(d, sizes)?;
    let max = max_conical_r(d, sizes);
    if !(r > 0.0 && r <= max * (1.0 + 1e-12)) {
        return Err(Error::ROutOfRange { r, max });
    }
    let gsm = build_gsm(d, sizes, &vec![r.sqrt(); sizes.len()], basis)?;
    rescale_to_geam(&gsm, &uniform_weights(sizes.len()))
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// Complete set of `d + 1` mutually unbiased bases for prime `d`, each
/// projector weighted by `1/(d+1)`.
///
/// Line 0 is the computational basis. For odd `d` line `1 + s` holds
/// `|psi_(s,u)> = d^(-1/2) sum_j w^(s j^2 + u j) |j>`, `w = exp(2 pi i/d)`; for
/// `d = 2` the remaining lines are the `sigma_x` and `sigma_y` eigenbases.
pub fn mub_geam(d: usize) -> Result<Geam> {
    if !is_prime(d) {
        return Err(Error::NotPrime(d));
    }
    let df = d as f64;
    let weight = 1.0 / (df + 1.0);
    let norm = 1.0 / df.sqrt();
    let mut lines = Vec::with_capacity(d + 1);
    lines.push(
        (0..d)
            .map(|k| {
                let mut diag = vec![0.0; d];
                diag[k] = weight;
                HermitianOperator::from_real_diagonal(&diag)
            })
            .collect::<Result<Vec<_>>>()?,
    );
    for s in 0..d {
        let mut line = Vec::with_capacity(d);
        for u in 0..d {
            let psi: Vec<_> = if d == 2 {
                // |0> + i^s (-1)^u |1>
                let phase = c64(0.0, 1.0).powu(s as u32) * if u == 0 { 1.0 } else { -1.0 };
                vec![c64(norm, 0.0), phase * norm]
            } else {
                (0..d)
                    .map(|j| {
                        let e = (s * j * j + u * j) % d;
                        let theta = 2.0 * std::f64::consts::PI * e as f64 / df;
                        c64(theta.cos() * norm, theta.sin() * norm)
                    })
                    .collect()
            };
            line.push(HermitianOperator::projector(&psi)?.scale(weight));
        }
        lines.push(line);
    }
    Geam::from_lines(d, vec![weight; d + 1], lines)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Complete,
    Overcomplete,
    Deficient,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub rank: usize,
    pub element_count: usize,
    pub classification: Classification,
    /// `element_count == d^2 + N - 1`
    pub count_equality: bool,
    /// `element_count <= 2(d^2 - 1)`
    pub within_max_count: bool,
}

/// Span test for a family of `line_count` lines in dimension `d`.
pub fn classify_operators(d: usize, line_count: usize, ops: &[HermitianOperator], tol: f64) -> Result<CompletenessReport> {
    let rank = gram_rank(ops, tol)?;
    let count = ops.len();
    let full = d * d;
    let classification = match (rank == full, count == full) {
        (true, true) => Classification::Complete,
        (true, false) => Classification::Overcomplete,
        _ => Classification::Deficient,
    };
    Ok(CompletenessReport {
        rank,
        element_count: count,
        classification,
        count_equality: count == full + line_count - 1,
        within_max_count: count <= 2 * (full - 1),
    })
}

pub fn completeness_rank(g: &Geam, tol: f64) -> CompletenessReport {
    classify_operators(g.d, g.line_count(), &g.elements(), tol).expect("GEAM has elements of equal dimension")
}

/// Random admissible family: a random composition of `d^2 - 1` into line
/// sizes, mixing uniform in `[0.1, 1] t_max` per line and weights uniform in
/// `[0.1, 1]`, normalized.
pub fn random_geam(d: usize, seed: u64) -> Result<Geam> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let total = d * d - 1;
    let mut sizes = Vec::new();
    let mut part = 1;
    for _ in 1..total {
        if rng.random_bool(0.5) {
            sizes.push(part + 1);
            part = 1;
        } else {
            part += 1;
        }
    }
    sizes.push(part + 1);
    let basis = gell_mann_basis(d)?;
    let partition = partition_basis(&basis, &sizes)?;
    let t: Vec<f64> = extremal_mixing(&partition)?
        .into_iter()
        .map(|tm| tm * rng.random_range(0.1..=1.0))
        .collect();
    let raw: Vec<f64> = (0..sizes.len()).map(|_| rng.random_range(0.1..=1.0)).collect();
    let s: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / s).collect();
    let drift = 1.0 - weights.iter().sum::<f64>();
    weights[0] += drift;
    let gsm = build_gsm(d, &sizes, &t, &basis)?;
    rescale_to_geam(&gsm, &weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{hs_inner, DEFAULT_TOL};
    use approx::assert_abs_diff_eq;

    fn sqrt5() -> f64 {
        5f64.sqrt()
    }

    #[test]
    fn b_range() {
        assert_eq!(admissible_b_range(2, 3), (0.5, 1.0));
        let (lo, hi) = admissible_b_range(3, 2);
        assert_abs_diff_eq!(lo, 1.0 / 3.0);
        assert_abs_diff_eq!(hi, 2.0 / 3.0);
        assert_eq!(admissible_b_range(3, 7).1, 1.0);
    }

    #[test]
    fn equal_trace_weight_examples() {
        let w = equal_trace_weights(2, &[2, 3]).unwrap();
        assert_abs_diff_eq!(w[0], 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(w[1], 0.6, epsilon = 1e-15);
        assert_eq!(equal_trace_weights(2, &[4]).unwrap(), vec![1.0]);
        for w in equal_trace_weights(2, &[2, 2, 2]).unwrap() {
            assert_abs_diff_eq!(w, 1.0 / 3.0, epsilon = 1e-15);
        }
        assert!(matches!(equal_trace_weights(2, &[2, 2]), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn weights_are_validated() {
        let b = gell_mann_basis(2).unwrap();
        let gsm = build_gsm(2, &[2, 3], &[0.5, 0.5], &b).unwrap();
        assert!(matches!(rescale_to_geam(&gsm, &[0.5, 0.6]), Err(Error::WeightError(_))));
        assert!(matches!(rescale_to_geam(&gsm, &[1.0, 0.0]), Err(Error::WeightError(_))));
        assert!(matches!(rescale_to_geam(&gsm, &[1.0]), Err(Error::WeightError(_))));
    }

    #[test]
    fn uniform_weights_keep_b() {
        let b = gell_mann_basis(2).unwrap();
        let gsm = build_gsm(2, &[2, 2, 2], &[0.5, 0.8, 0.3], &b).unwrap();
        let g = rescale_to_geam(&gsm, &uniform_weights(3)).unwrap();
        for (a, line) in g.lines.iter().enumerate() {
            for (p, e) in line.iter().zip(&gsm.lines[a]) {
                assert!(p.scale(3.0).max_abs_diff(e) < 1e-15);
            }
            let w = gsm.params.w[a];
            assert_abs_diff_eq!(g.params.b[a], gsm.params.x[a] / (w * w), epsilon = 1e-14);
        }
        let rep = extract_parameters(&g, DEFAULT_TOL);
        assert!(rep.pass, "{rep:?}");
        assert_abs_diff_eq!(rep.params.f, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn constant_r_closed_forms() {
        let basis = gell_mann_basis(2).unwrap();
        let g = constant_r_family(2, &[2, 3], 0.5, &basis).unwrap();
        let rep = extract_parameters(&g, DEFAULT_TOL);
        assert!(rep.pass, "{rep:?}");
        let p = &rep.params;
        assert_abs_diff_eq!(p.b[0], 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(p.b[1], 5.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.c[0], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(p.c[1], 1.0 / 3.0, epsilon = 1e-12);
        for s in g.line_s() {
            assert_abs_diff_eq!(s, 2.0 / 25.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(max_r(2, &[2, 3]), 0.75, epsilon = 1e-15);
        assert!(matches!(constant_r_family(2, &[2, 3], 0.8, &basis), Err(Error::ROutOfRange { .. })));
        assert!(matches!(constant_r_family(2, &[2, 3], 0.0, &basis), Err(Error::ROutOfRange { .. })));
        let g = constant_r_family(2, &[2, 3], 0.75, &basis).unwrap();
        for (b, c) in g.params.b.iter().zip(&g.params.c) {
            assert_abs_diff_eq!(b - c, 0.75, epsilon = 1e-10);
        }
    }

    #[test]
    fn constant_b_and_c_variants() {
        let basis = gell_mann_basis(2).unwrap();
        let w = equal_trace_weights(2, &[2, 3]).unwrap();
        let g = constant_b_family(2, &[2, 3], 0.8, &w, &basis).unwrap();
        let rep = extract_parameters(&g, DEFAULT_TOL);
        assert!(rep.pass);
        assert_abs_diff_eq!(rep.params.b[0], rep.params.b[1], epsilon = 1e-10);
        assert!((rep.params.c[0] - rep.params.c[1]).abs() > 1e-3);

        let g = constant_c_family(2, &[2, 3], 0.3, &w, &basis).unwrap();
        let rep = extract_parameters(&g, DEFAULT_TOL);
        assert!(rep.pass);
        assert_abs_diff_eq!(rep.params.c[0], 0.3, epsilon = 1e-10);
        assert_abs_diff_eq!(rep.params.c[1], 0.3, epsilon = 1e-10);
        assert!((rep.params.b[0] - rep.params.b[1]).abs() > 1e-3);
    }

    #[test]
    fn design2_qubit_values() {
        let basis = gell_mann_basis(2).unwrap();
        let g = design2_family(2, &[2, 3], 0.25, &basis).unwrap();
        let rep = extract_parameters(&g, DEFAULT_TOL);
        assert!(rep.pass, "{rep:?}");
        let big_b = (7.0 - 3.0 * sqrt5()) / 2.0;
        let p = &rep.params;
        for a in 0..2 {
            assert_abs_diff_eq!(p.b[a] * p.a[a] * p.a[a], big_b, epsilon = 1e-12);
            assert_abs_diff_eq!(p.c[a] * p.a[a] * p.a[a], big_b / 4.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(g.gammas[0], sqrt5() * (3.0 - sqrt5()) / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.a[1], (3.0 - sqrt5()) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.f * p.a[0] * p.a[1], sqrt5() * (7.0 - 3.0 * sqrt5()) / 8.0, epsilon = 1e-12);
        // unequal line sizes give unequal traces
        assert!((p.a[0] - p.a[1]).abs() > 1e-3);
    }

    #[test]
    fn design2_equal_sizes_equal_traces() {
        let basis = gell_mann_basis(3).unwrap();
        let g = design2_family(3, &[3, 3, 3, 3], 0.5, &basis).unwrap();
        for a in &g.params.a {
            assert_abs_diff_eq!(*a, g.params.a[0], epsilon = 1e-12);
        }
        let b2 = gell_mann_basis(2).unwrap();
        assert!(matches!(design2_family(2, &[2, 3], 0.2, &b2), Err(Error::EtaOutOfRange { .. })));
    }

    #[test]
    fn mub_parameters() {
        for d in [2usize, 3, 5, 7] {
            let g = mub_geam(d).unwrap();
            assert_eq!(g.element_count(), d * (d + 1));
            let rep = extract_parameters(&g, DEFAULT_TOL);
            assert!(rep.pass, "d={d}: {rep:?}");
            let df = d as f64;
            for a in 0..=d {
                assert_abs_diff_eq!(rep.params.a[a], 1.0 / (df + 1.0), epsilon = 1e-12);
                assert_abs_diff_eq!(rep.params.b[a], 1.0, epsilon = 1e-12);
                assert_abs_diff_eq!(rep.params.c[a], 0.0, epsilon = 1e-12);
            }
            assert_abs_diff_eq!(rep.params.f, 1.0 / df, epsilon = 1e-12);
            let cross = hs_inner(&g.lines[0][0], &g.lines[1][0]).unwrap();
            assert_abs_diff_eq!(cross, 1.0 / (df * (df + 1.0).powi(2)), epsilon = 1e-14);
        }
        assert_eq!(mub_geam(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(mub_geam(6).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn mub_qubit_elements_are_pauli_projectors() {
        let g = mub_geam(2).unwrap();
        let basis = [crate::operator::pauli::z(), crate::operator::pauli::x(), crate::operator::pauli::y()];
        let i2 = HermitianOperator::identity(2);
        for (line, sigma) in g.lines.iter().zip(&basis) {
            let plus = (&i2 + sigma).scale(1.0 / 6.0);
            let minus = (&i2 - sigma).scale(1.0 / 6.0);
            assert!(line[0].max_abs_diff(&plus) < 1e-15);
            assert!(line[1].max_abs_diff(&minus) < 1e-15);
        }
    }

    #[test]
    fn completeness_of_small_families() {
        let basis = gell_mann_basis(2).unwrap();
        let gsm = build_gsm(2, &[2, 2, 2], &[0.5, 0.5, 0.5], &basis).unwrap();
        let g = rescale_to_geam(&gsm, &uniform_weights(3)).unwrap();
        let rep = completeness_rank(&g, DEFAULT_TOL);
        assert_eq!(rep.rank, 4);
        assert_eq!(rep.element_count, 6);
        assert!(rep.within_max_count && rep.count_equality);
        assert_eq!(rep.classification, Classification::Overcomplete);

        let gsm = build_gsm(2, &[4], &[0.3], &basis).unwrap();
        let g = rescale_to_geam(&gsm, &[1.0]).unwrap();
        assert_eq!(completeness_rank(&g, DEFAULT_TOL).classification, Classification::Complete);
    }

    #[test]
    fn random_geams_are_valid() {
        for seed in 0..20 {
            let d = 2 + (seed as usize % 3);
            let g = random_geam(d, seed).unwrap();
            let rep = extract_parameters(&g, DEFAULT_TOL);
            assert!(rep.pass, "seed {seed}: {rep:?}");
            let cr = completeness_rank(&g, DEFAULT_TOL);
            assert_eq!(cr.rank, d * d);
            assert!(cr.count_equality);
        }
    }
}
