//! Conical 2-design certification.
//!
//! A family `{P}` is a conical 2-design when
//! `T = sum P ⊗ P = k+ I⊗I + k- F` with `k+ >= k- > 0`. The direct check fits
//! `T` in `span{I⊗I, F}` through the 2x2 normal equations (template Gram
//! entries `d^2`, `d`, `d^2`) and reports the Frobenius norm of what is left.
//! The closed form applies when `S = a_a^2 (b_a - c_a)` is line independent:
//! `k+ = mu - S/d`, `k- = S`, `mu = (1/d) sum a_a gamma_a`.

use serde::{Deserialize, Serialize};

use crate::basis::gell_mann_basis;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geam::Geam;
use crate::operator::{flip_operator, hs_inner, sum_operators, HermitianOperator};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignCertificate {
    pub is_design: bool,
    pub kappa_plus: f64,
    pub kappa_minus: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub mu: f64,
    /// Direct check: `||T - k+ I⊗I - k- F||_F`. Closed form: spread of the
    /// per-line `S_a`.
    pub residual: f64,
}

/// `T = sum_(a,k) P_(a,k) ⊗ P_(a,k)`.
pub fn tensor_sum(g: &Geam, exec: Exec) -> HermitianOperator {
    let elements = g.elements();
    let d2 = g.d * g.d;
    exec.map_reduce(&elements, || HermitianOperator::zeros(d2), |p| p.kron(p), |a, b| &a + &b)
}

pub fn conical_check_direct(g: &Geam, tol: f64) -> DesignCertificate {
    conical_check_direct_with(g, tol, Exec::default())
}

pub fn conical_check_direct_with(g: &Geam, tol: f64, exec: Exec) -> DesignCertificate {
    let t = tensor_sum(g, exec);
    let d = g.d as f64;
    let flip = flip_operator(g.d);
    let tr_t = t.trace();
    let tr_tf = hs_inner(&t, &flip).expect("same dimension");
    let det = d * d * (d * d - 1.0);
    let kappa_plus = (d * d * tr_t - d * tr_tf) / det;
    let kappa_minus = (d * d * tr_tf - d * tr_t) / det;
    let ident = HermitianOperator::identity(g.d * g.d);
    let fit = &ident.scale(kappa_plus) + &flip.scale(kappa_minus);
    let residual = (&t - &fit).frobenius_norm();
    let is_design = residual <= tol * t.frobenius_norm() && kappa_minus > 0.0 && kappa_plus - kappa_minus >= -tol;
    DesignCertificate {
        is_design,
        kappa_plus,
        kappa_minus,
        s: kappa_minus,
        mu: kappa_plus + kappa_minus / d,
        residual,
    }
}

/// Upper end of the admissible `S` range,
/// `min_a min{d gamma_a^2/M_a, (d-1)/(M_a-1) d gamma_a^2/M_a}`.
pub fn max_s(g: &Geam) -> f64 {
    let d = g.d as f64;
    g.sizes
        .iter()
        .zip(&g.gammas)
        .map(|(&m, &gm)| {
            let base = d * gm * gm / m as f64;
            base.min((d - 1.0) / (m as f64 - 1.0) * base)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Closed-form certificate; fails with `NotConstantS` when the per-line
/// `S_a` differ by more than `tol`.
pub fn kappas_closed_form(g: &Geam, tol: f64) -> Result<DesignCertificate> {
    let line_s = g.line_s();
    let lo = line_s.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = line_s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = hi - lo;
    if spread > tol {
        return Err(Error::NotConstantS(spread));
    }
    let s = line_s.iter().sum::<f64>() / line_s.len() as f64;
    let mu = g.mu();
    let d = g.d as f64;
    let kappa_plus = mu - s / d;
    let kappa_minus = s;
    let s_ok = s > 0.0 && s <= max_s(g) * (1.0 + tol) + tol;
    Ok(DesignCertificate {
        is_design: s_ok && kappa_plus - kappa_minus >= -tol,
        kappa_plus,
        kappa_minus,
        s,
        mu,
        residual: spread,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhiReport {
    pub kappa_plus: f64,
    pub kappa_minus: f64,
    /// `max_X ||Phi[X] - (k- X + k+ Tr(X) I)||_max` over an operator basis.
    pub max_deviation: f64,
    pub pass: bool,
}

/// `Phi[X] = sum P Tr(X P)`.
pub fn phi_map(g: &Geam, x: &HermitianOperator) -> Result<HermitianOperator> {
    let terms = g
        .lines
        .iter()
        .flatten()
        .map(|p| Ok(p.scale(hs_inner(x, p)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_operators(&terms).expect("nonempty family"))
}

/// Checks `Phi = k- id + k+ d Phi_0` on the Gell-Mann basis, with `k+-`
/// from [`kappas_closed_form`].
pub fn phi_map_check(g: &Geam, tol: f64) -> Result<PhiReport> {
    let cert = kappas_closed_form(g, tol)?;
    let basis = gell_mann_basis(g.d)?;
    let identity = HermitianOperator::identity(g.d);
    let mut max_deviation: f64 = 0.0;
    for x in basis.all() {
        let got = phi_map(g, &x)?;
        let want = &x.scale(cert.kappa_minus) + &identity.scale(cert.kappa_plus * x.trace());
        max_deviation = max_deviation.max(got.max_abs_diff(&want));
    }
    Ok(PhiReport {
        kappa_plus: cert.kappa_plus,
        kappa_minus: cert.kappa_minus,
        max_deviation,
        pass: max_deviation <= tol,
    })
}
