//! Hermitian orthonormal operator bases and regular-simplex geometry.

use crate::error::{Error, Result};
use crate::operator::{c64, HermitianOperator};
use nalgebra::DMatrix;

/// `{I/sqrt(d)} ∪ traceless`, orthonormal under `Tr(AB)`.
#[derive(Debug, Clone)]
pub struct OperatorBasis {
    pub dim: usize,
    pub identity_component: HermitianOperator,
    pub traceless: Vec<HermitianOperator>,
}

impl OperatorBasis {
    /// Identity component followed by the traceless elements.
    pub fn all(&self) -> Vec<HermitianOperator> {
        std::iter::once(self.identity_component.clone())
            .chain(self.traceless.iter().cloned())
            .collect()
    }
}

/// Generalized Gell-Mann basis normalized to `Tr(G^2) = 1`.
///
/// Order: symmetric off-diagonal `(|j><k| + |k><j|)/sqrt2` for `j < k`, then
/// antisymmetric `(-i|j><k| + i|k><j|)/sqrt2`, then diagonal
/// `(sum_{j<l} |j><j| - l|l><l|)/sqrt(l(l+1))`. For `d = 2` this is
/// `{sigma_x, sigma_y, sigma_z}/sqrt2`.
pub fn gell_mann_basis(d: usize) -> Result<OperatorBasis> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut traceless = Vec::with_capacity(d * d - 1);
    let zero = c64(0.0, 0.0);
    for j in 0..d {
        for k in j + 1..d {
            let mut m = DMatrix::from_element(d, d, zero);
            m[(j, k)] = c64(s, 0.0);
            m[(k, j)] = c64(s, 0.0);
            traceless.push(HermitianOperator::from_matrix(m)?);
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let mut m = DMatrix::from_element(d, d, zero);
            m[(j, k)] = c64(0.0, -s);
            m[(k, j)] = c64(0.0, s);
            traceless.push(HermitianOperator::from_matrix(m)?);
        }
    }
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        for v in diag.iter_mut().take(l) {
            *v = norm;
        }
        diag[l] = -(l as f64) * norm;
        traceless.push(HermitianOperator::from_real_diagonal(&diag)?);
    }
    let identity_component = HermitianOperator::identity(d).scale(1.0 / (d as f64).sqrt());
    Ok(OperatorBasis { dim: d, identity_component, traceless })
}

/// Vertices of a regular simplex centred at the origin: `M` vectors in
/// `R^(M-1)` with `<v_k, v_l> = delta_kl - 1/M`.
///
/// Built by expressing the centred standard basis vectors `e_k - 1/M` in the
/// Helmert basis `h_j = (e_0 + ... + e_(j-1) - j e_j)/sqrt(j(j+1))`.
pub fn simplex_vectors(m: usize) -> Vec<Vec<f64>> {
    assert!(m >= 2, "simplex needs at least two vertices");
    (0..m)
        .map(|k| {
            (1..m)
                .map(|j| {
                    let norm = 1.0 / ((j * (j + 1)) as f64).sqrt();
                    match k.cmp(&j) {
                        std::cmp::Ordering::Less => norm,
                        std::cmp::Ordering::Equal => -(j as f64) * norm,
                        std::cmp::Ordering::Greater => 0.0,
                    }
                })
                .collect()
        })
        .collect()
}

/// Disjoint blocks of traceless basis operators, one block of `M_a - 1`
/// operators per line.
#[derive(Debug, Clone)]
pub struct BasisPartition {
    pub dim: usize,
    pub sizes: Vec<usize>,
    pub blocks: Vec<Vec<HermitianOperator>>,
}

impl BasisPartition {
    /// Partition from explicit blocks; block `a` must hold `sizes[a] - 1`
    /// operators. Does not require the blocks to exhaust the operator space,
    /// so it also describes families that are not informationally complete.
    pub fn from_blocks(dim: usize, sizes: Vec<usize>, blocks: Vec<Vec<HermitianOperator>>) -> Result<Self> {
        if sizes.len() != blocks.len() || sizes.is_empty() {
            return Err(Error::SizeMismatch(format!(
                "{} sizes for {} blocks",
                sizes.len(),
                blocks.len()
            )));
        }
        for (a, (&m, block)) in sizes.iter().zip(&blocks).enumerate() {
            if m < 2 || block.len() != m - 1 {
                return Err(Error::SizeMismatch(format!(
                    "line {a}: M = {m} needs {} operators, got {}",
                    m.saturating_sub(1),
                    block.len()
                )));
            }
            if let Some(op) = block.iter().find(|o| o.dim() != dim) {
                return Err(Error::DimensionMismatch(dim, op.dim()));
            }
        }
        Ok(Self { dim, sizes, blocks })
    }

    pub fn line_count(&self) -> usize {
        self.sizes.len()
    }
}

/// Checks `M_a >= 2` and `sum (M_a - 1) = d^2 - 1`.
pub fn check_sizes(d: usize, sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::SizeMismatch("no lines".into()));
    }
    if let Some(&m) = sizes.iter().find(|&&m| m < 2) {
        return Err(Error::SizeMismatch(format!("line size {m} < 2")));
    }
    let total: usize = sizes.iter().map(|m| m - 1).sum();
    if total != d * d - 1 {
        return Err(Error::SizeMismatch(format!(
            "sum of (M - 1) is {total}, expected d^2 - 1 = {}",
            d * d - 1
        )));
    }
    Ok(())
}

/// Splits the traceless part of `basis` into consecutive blocks.
pub fn partition_basis(basis: &OperatorBasis, sizes: &[usize]) -> Result<BasisPartition> {
    check_sizes(basis.dim, sizes)?;
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &m in sizes {
        blocks.push(basis.traceless[start..start + m - 1].to_vec());
        start += m - 1;
    }
    BasisPartition::from_blocks(basis.dim, sizes.to_vec(), blocks)
}
