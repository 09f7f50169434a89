//! Hand-entered qubit families used as golden references.

use crate::error::Result;
use crate::geam::Geam;
use crate::gsm::GsmFamily;
use crate::operator::{c64, HermitianOperator};

fn op(scale: f64, rows: [[(f64, f64); 2]; 2]) -> HermitianOperator {
    HermitianOperator::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(re, im)| c64(scale * re, scale * im)).collect())
            .collect(),
    )
    .expect("fixture matrices are Hermitian")
}

fn von_neumann_line() -> Vec<HermitianOperator> {
    vec![
        op(1.0, [[(1.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (0.0, 0.0)]]),
        op(1.0, [[(0.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (1.0, 0.0)]]),
    ]
}

/// Projective three-outcome qubit POVM in the span of `I`, `sigma_x`,
/// `sigma_y`, starting at `(I + sigma_y)/3`.
fn tilted_trine() -> Vec<HermitianOperator> {
    let r3 = 3f64.sqrt();
    vec![
        op(1.0 / 3.0, [[(1.0, 0.0), (0.0, -1.0)], [(0.0, 1.0), (1.0, 0.0)]]),
        op(1.0 / 6.0, [[(2.0, 0.0), (r3, 1.0)], [(r3, -1.0), (2.0, 0.0)]]),
        op(1.0 / 6.0, [[(2.0, 0.0), (-r3, 1.0)], [(-r3, -1.0), (2.0, 0.0)]]),
    ]
}

fn real_trine() -> Vec<HermitianOperator> {
    let r3 = 3f64.sqrt();
    vec![
        op(1.0 / 3.0, [[(1.0, 0.0), (1.0, 0.0)], [(1.0, 0.0), (1.0, 0.0)]]),
        op(1.0 / 6.0, [[(2.0, 0.0), (-1.0, r3)], [(-1.0, -r3), (2.0, 0.0)]]),
        op(1.0 / 6.0, [[(2.0, 0.0), (-1.0, -r3)], [(-1.0, r3), (2.0, 0.0)]]),
    ]
}

/// Von Neumann measurement plus a projective trine, as a symmetric
/// measurement with sizes `[2, 3]`.
pub fn von_neumann_trine_gsm() -> Result<GsmFamily> {
    GsmFamily::from_lines(2, vec![von_neumann_line(), tilted_trine()])
}

/// The equal-trace rescaling of [`von_neumann_trine_gsm`], weights
/// `(2/5, 3/5)`: every `Tr P = 2/5`, `Tr P^2 = 4/25`.
pub fn von_neumann_trine_geam() -> Result<Geam> {
    rescaled_von_neumann_trine(2.0 / 5.0, 3.0 / 5.0)
}

/// The rescaling `P_1 = (1 - g) E_1`, `P_2 = 2 g E_2 / 3` at `g = 3/5`. Its
/// elements sum to `(4/5) I`, so it is not a POVM; kept to document that
/// reading.
pub fn von_neumann_trine_literal_rescaling() -> Result<Geam> {
    let g = 3.0 / 5.0;
    rescaled_von_neumann_trine(1.0 - g, 2.0 * g / 3.0)
}

fn rescaled_von_neumann_trine(g1: f64, g2: f64) -> Result<Geam> {
    let lines = vec![
        von_neumann_line().iter().map(|e| e.scale(g1)).collect(),
        tilted_trine().iter().map(|e| e.scale(g2)).collect(),
    ];
    Geam::from_lines(2, vec![g1, g2], lines)
}

/// Two-line qubit family with sizes `[2, 3]`, constant `Tr P^2`,
/// `Tr P P'` within lines and across lines, but unequal traces.
pub fn unequal_trace_qubit_design() -> Result<Geam> {
    let (r2, r3, r5) = (2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt());
    let s = (3.0 - r5) / 8.0;
    let line1 = vec![
        op(s, [[(r5 - r3, 0.0), (0.0, 0.0)], [(0.0, 0.0), (r5 + r3, 0.0)]]),
        op(s, [[(r5 + r3, 0.0), (0.0, 0.0)], [(0.0, 0.0), (r5 - r3, 0.0)]]),
    ];
    // q = -(2 + sqrt3 + i) sqrt(2 - sqrt3)
    let k = (2.0 - r3).sqrt();
    let q = (-(2.0 + r3) * k, -k);
    // -i conj(q) and i q
    let miqbar = (-q.1, -q.0);
    let iq = (-q.1, q.0);
    let line2 = vec![
        op(s, [[(2.0, 0.0), q], [(q.0, -q.1), (2.0, 0.0)]]),
        op(s, [[(2.0, 0.0), miqbar], [iq, (2.0, 0.0)]]),
        op((3.0 - r5) / (4.0 * r2), [[(r2, 0.0), (1.0, -1.0)], [(1.0, 1.0), (r2, 0.0)]]),
    ];
    let gamma1 = (3.0 - r5) * r5 / 4.0;
    Geam::from_lines(2, vec![gamma1, 1.0 - gamma1], vec![line1, line2])
}

/// Two qubit trines (three projectors each, in the plane of `I`, `sigma_x`,
/// `sigma_y`) combined into one POVM with weights `(1/2, 1/2)`. Spans only a
/// three-dimensional operator subspace.
pub fn trine_pair() -> Result<Geam> {
    let lines = vec![
        real_trine().iter().map(|e| e.scale(0.5)).collect(),
        tilted_trine().iter().map(|e| e.scale(0.5)).collect(),
    ];
    Geam::from_lines(2, vec![0.5, 0.5], lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{hs_inner, sum_operators};

    #[test]
    fn lines_sum_to_weighted_identity() {
        for g in [von_neumann_trine_geam().unwrap(), unequal_trace_qubit_design().unwrap(), trine_pair().unwrap()] {
            for (line, gm) in g.lines.iter().zip(&g.gammas) {
                let s = sum_operators(line).unwrap();
                assert!(s.max_abs_diff(&HermitianOperator::identity(2).scale(*gm)) < 1e-14);
            }
            assert!((g.gammas.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn literal_rescaling_is_not_normalized() {
        let g = von_neumann_trine_literal_rescaling().unwrap();
        let total = sum_operators(&g.elements()).unwrap();
        assert!((total.trace() - 1.6).abs() < 1e-14);
    }

    #[test]
    fn trine_pair_overlaps() {
        let (a, b) = (real_trine(), tilted_trine());
        for k in 0..3 {
            assert!((hs_inner(&a[k], &b[k]).unwrap() - 2.0 / 9.0).abs() < 1e-14);
            assert!((hs_inner(&a[k], &a[(k + 1) % 3]).unwrap() - 1.0 / 9.0).abs() < 1e-14);
        }
        let r3 = 3f64.sqrt();
        let off = hs_inner(&a[0], &b[1]).unwrap();
        assert!((off - (2.0 + r3) / 9.0).abs() < 1e-14 || (off - (2.0 - r3) / 9.0).abs() < 1e-14);
    }

    #[test]
    fn printed_design_is_positive() {
        let g = unequal_trace_qubit_design().unwrap();
        for p in g.elements() {
            assert!(p.min_eigenvalue() > -1e-12);
        }
    }
}
