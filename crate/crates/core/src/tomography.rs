//! Born probabilities, dual-frame reconstruction, index of coincidence and
//! finite-shot simulation.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::designs::kappas_closed_form;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geam::Geam;
use crate::operator::{hs_inner, trace_distance, DensityOperator, HermitianOperator};

/// Probabilities below this are treated as roundoff and clamped to zero.
pub const NEGATIVE_PROB_TOL: f64 = 1e-12;

/// Outcome probabilities `p_(a,k)` grouped by line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityTable {
    pub sizes: Vec<usize>,
    pub p: Vec<Vec<f64>>,
}

impl ProbabilityTable {
    /// Validates `p >= -1e-12` and `sum p = 1` within `1e-10`.
    pub fn new(p: Vec<Vec<f64>>) -> Result<Self> {
        if p.is_empty() || p.iter().any(Vec::is_empty) {
            return Err(Error::EmptyList);
        }
        if let Some(v) = p.iter().flatten().find(|v| v.is_nan() || **v < -NEGATIVE_PROB_TOL) {
            return Err(Error::ShapeMismatch(format!("negative probability {v}")));
        }
        let total: f64 = p.iter().flatten().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::ShapeMismatch(format!("probabilities sum to {total}")));
        }
        Ok(Self { sizes: p.iter().map(Vec::len).collect(), p })
    }

    pub fn line_sums(&self) -> Vec<f64> {
        self.p.iter().map(|line| line.iter().sum()).collect()
    }

    pub fn flat(&self) -> Vec<f64> {
        self.p.iter().flatten().copied().collect()
    }

    fn check_shape(&self, g: &Geam) -> Result<()> {
        if self.sizes != g.sizes {
            return Err(Error::ShapeMismatch(format!(
                "table sizes {:?} vs family sizes {:?}",
                self.sizes, g.sizes
            )));
        }
        Ok(())
    }
}

/// `p_(a,k) = Tr(rho P_(a,k))`.
pub fn born_probabilities(rho: &DensityOperator, g: &Geam) -> Result<ProbabilityTable> {
    if rho.dim() != g.d {
        return Err(Error::DimensionMismatch(rho.dim(), g.d));
    }
    let p = g
        .lines
        .iter()
        .map(|line| line.iter().map(|e| hs_inner(rho.operator(), e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ProbabilityTable::new(p)
}

/// Dual frame
/// `Q_(a,k) = [P_(a,k) - (I/d)(a_a - S_a/(N gamma_a))] / S_a`,
/// `S_a = a_a^2 (b_a - c_a)`, so that `rho = sum p_(a,k) Q_(a,k)`.
pub fn geam_dual_frame(g: &Geam) -> Result<Vec<Vec<HermitianOperator>>> {
    let n = g.line_count() as f64;
    let d = g.d as f64;
    let identity = HermitianOperator::identity(g.d);
    let line_s = g.line_s();
    g.lines
        .iter()
        .enumerate()
        .map(|(a, line)| {
            let s = line_s[a];
            if s.is_nan() || s <= 1e-14 {
                return Err(Error::DegenerateFrame(a));
            }
            let shift = identity.scale((g.params.a[a] - s / (n * g.gammas[a])) / d);
            Ok(line.iter().map(|p| (p - &shift).scale(1.0 / s)).collect())
        })
        .collect()
}

/// Linear-inversion estimate `sum p_(a,k) Q_(a,k)`. With `enforce_physical`
/// the estimate is projected onto the state space (negative eigenvalues
/// clipped, trace renormalized).
pub fn reconstruct_state(
    t: &ProbabilityTable,
    duals: &[Vec<HermitianOperator>],
    enforce_physical: bool,
) -> Result<HermitianOperator> {
    let dual_sizes: Vec<usize> = duals.iter().map(Vec::len).collect();
    if dual_sizes != t.sizes {
        return Err(Error::ShapeMismatch(format!(
            "table sizes {:?} vs dual sizes {:?}",
            t.sizes, dual_sizes
        )));
    }
    let d = duals[0][0].dim();
    let mut acc = HermitianOperator::zeros(d);
    for (ps, qs) in t.p.iter().zip(duals) {
        for (&p, q) in ps.iter().zip(qs) {
            acc = &acc + &q.scale(p);
        }
    }
    if enforce_physical {
        Ok(DensityOperator::project(&acc)?.into_operator())
    } else {
        Ok(acc)
    }
}

/// `C = sum p^2`.
pub fn index_of_coincidence(t: &ProbabilityTable) -> f64 {
    t.p.iter().flatten().map(|p| p * p).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IocClosedForm {
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "C_max")]
    pub c_max: f64,
}

/// `C = S (purity - 1/d) + mu` and `C_max = S (d-1)/d + mu` for families
/// with line-independent `S`.
pub fn ioc_closed_form(g: &Geam, purity: f64, tol: f64) -> Result<IocClosedForm> {
    let d = g.d as f64;
    if !(purity >= 1.0 / d - tol && purity <= 1.0 + tol) {
        return Err(Error::PurityOutOfRange { purity, low: 1.0 / d });
    }
    let cert = kappas_closed_form(g, tol)?;
    Ok(IocClosedForm {
        c: cert.s * (purity - 1.0 / d) + cert.mu,
        c_max: cert.s * (d - 1.0) / d + cert.mu,
    })
}

/// `Tr rho^2 = 1/d + sum_a (sum_k p_(a,k)^2 - a_a gamma_a/d) / S_a`, valid for
/// every family (no design property needed).
pub fn purity_from_probabilities(g: &Geam, t: &ProbabilityTable) -> Result<f64> {
    t.check_shape(g)?;
    let d = g.d as f64;
    let line_s = g.line_s();
    let mut purity = 1.0 / d;
    for (a, ps) in t.p.iter().enumerate() {
        let s = line_s[a];
        if s.is_nan() || s <= 1e-14 {
            return Err(Error::DegenerateFrame(a));
        }
        let sq: f64 = ps.iter().map(|p| p * p).sum();
        purity += (sq - g.params.a[a] * g.gammas[a] / d) / s;
    }
    Ok(purity)
}

/// Multinomial outcome counts over the flattened Born distribution, drawn as
/// a chain of conditional binomials from `ChaCha20Rng::seed_from_u64(seed)`.
pub fn sample_counts(rho: &DensityOperator, g: &Geam, shots: u64, seed: u64) -> Result<Vec<Vec<u64>>> {
    let exact = born_probabilities(rho, g)?;
    let probs: Vec<f64> = exact.flat().into_iter().map(|p| p.max(0.0)).collect();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut remaining = shots;
    let mut mass: f64 = probs.iter().sum();
    let mut flat = Vec::with_capacity(probs.len());
    for (i, &p) in probs.iter().enumerate() {
        let k = if i + 1 == probs.len() || remaining == 0 {
            remaining
        } else if mass <= 0.0 {
            0
        } else {
            let q = (p / mass).clamp(0.0, 1.0);
            Binomial::new(remaining, q)
                .map_err(|e| Error::ShapeMismatch(format!("binomial: {e}")))?
                .sample(&mut rng)
        };
        flat.push(k);
        remaining -= k;
        mass -= p;
    }
    let mut out = Vec::with_capacity(g.line_count());
    let mut it = flat.into_iter();
    for &m in &g.sizes {
        out.push(it.by_ref().take(m).collect());
    }
    Ok(out)
}

/// Empirical frequency table from [`sample_counts`].
pub fn sample_measurements(rho: &DensityOperator, g: &Geam, shots: u64, seed: u64) -> Result<ProbabilityTable> {
    if shots == 0 {
        return Err(Error::ShapeMismatch("shots must be at least 1".into()));
    }
    let counts = sample_counts(rho, g, shots, seed)?;
    let n = shots as f64;
    ProbabilityTable::new(
        counts
            .into_iter()
            .map(|line| line.into_iter().map(|k| k as f64 / n).collect())
            .collect(),
    )
}

/// Trace distance between `rho` and its physical reconstruction from
/// `shots` simulated outcomes, once per seed.
pub fn reconstruction_errors(
    rho: &DensityOperator,
    g: &Geam,
    shots: u64,
    seeds: &[u64],
    exec: Exec,
) -> Result<Vec<f64>> {
    let duals = geam_dual_frame(g)?;
    exec.map(seeds, |&seed| {
        let table = sample_measurements(rho, g, shots, seed)?;
        let est = reconstruct_state(&table, &duals, true)?;
        trace_distance(&est, rho.operator())
    })
    .into_iter()
    .collect()
}
