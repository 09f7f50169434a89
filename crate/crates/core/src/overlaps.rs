//! Pairwise trace tables of line-structured operator families.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::exec::Exec;
use crate::operator::{gram_matrix, HermitianOperator};

/// Traces and the full Gram matrix of a family `{X_(a,k)}`, flattened line by line.
pub(crate) struct Overlaps {
    pub sizes: Vec<usize>,
    pub offsets: Vec<usize>,
    pub traces: Vec<f64>,
    pub gram: DMatrix<f64>,
}

impl Overlaps {
    pub fn new(lines: &[Vec<HermitianOperator>], exec: Exec) -> Result<Self> {
        let flat: Vec<HermitianOperator> = lines.iter().flatten().cloned().collect();
        let gram = gram_matrix(&flat, exec)?;
        let traces = flat.iter().map(HermitianOperator::trace).collect();
        let sizes: Vec<usize> = lines.iter().map(Vec::len).collect();
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for m in &sizes {
            offsets.push(acc);
            acc += m;
        }
        Ok(Self { sizes, offsets, traces, gram })
    }

    pub fn lines(&self) -> usize {
        self.sizes.len()
    }

    pub fn idx(&self, a: usize, k: usize) -> usize {
        self.offsets[a] + k
    }

    pub fn trace(&self, a: usize, k: usize) -> f64 {
        self.traces[self.idx(a, k)]
    }

    pub fn overlap(&self, a: usize, k: usize, b: usize, l: usize) -> f64 {
        self.gram[(self.idx(a, k), self.idx(b, l))]
    }

    pub fn mean_trace(&self, a: usize) -> f64 {
        (0..self.sizes[a]).map(|k| self.trace(a, k)).sum::<f64>() / self.sizes[a] as f64
    }

    pub fn mean_square(&self, a: usize) -> f64 {
        (0..self.sizes[a]).map(|k| self.overlap(a, k, a, k)).sum::<f64>() / self.sizes[a] as f64
    }

    /// Mean of `Tr(X_(a,k) X_(a,l))` over `k != l`; `None` for a single-element line.
    pub fn mean_intra(&self, a: usize) -> Option<f64> {
        let m = self.sizes[a];
        if m < 2 {
            return None;
        }
        let mut s = 0.0;
        for k in 0..m {
            for l in 0..m {
                if k != l {
                    s += self.overlap(a, k, a, l);
                }
            }
        }
        Some(s / (m * (m - 1)) as f64)
    }

    /// Mean of `Tr(X_(a,k) X_(b,l))` over all element pairs of lines `a` and `b`.
    pub fn mean_cross(&self, a: usize, b: usize) -> f64 {
        let mut s = 0.0;
        for k in 0..self.sizes[a] {
            for l in 0..self.sizes[b] {
                s += self.overlap(a, k, b, l);
            }
        }
        s / (self.sizes[a] * self.sizes[b]) as f64
    }

    /// Max of `|want(a) - Tr(X_(a,k))|`.
    pub fn trace_dev(&self, want: impl Fn(usize) -> f64) -> f64 {
        let mut dev: f64 = 0.0;
        for a in 0..self.lines() {
            for k in 0..self.sizes[a] {
                dev = dev.max((self.trace(a, k) - want(a)).abs());
            }
        }
        dev
    }

    /// Max of `|want(a) - Tr(X_(a,k)^2)|`.
    pub fn square_dev(&self, want: impl Fn(usize) -> f64) -> f64 {
        let mut dev: f64 = 0.0;
        for a in 0..self.lines() {
            for k in 0..self.sizes[a] {
                dev = dev.max((self.overlap(a, k, a, k) - want(a)).abs());
            }
        }
        dev
    }

    /// Max of `|want(a, k, l) - Tr(X_(a,k) X_(a,l))|` over `k != l`.
    pub fn intra_dev(&self, want: impl Fn(usize, usize, usize) -> f64) -> f64 {
        let mut dev: f64 = 0.0;
        for a in 0..self.lines() {
            for k in 0..self.sizes[a] {
                for l in 0..self.sizes[a] {
                    if k != l {
                        dev = dev.max((self.overlap(a, k, a, l) - want(a, k, l)).abs());
                    }
                }
            }
        }
        dev
    }

    /// Max of `|want(a, k, b, l) - Tr(X_(a,k) X_(b,l))|` over `a != b`.
    pub fn cross_dev(&self, want: impl Fn(usize, usize, usize, usize) -> f64) -> f64 {
        let mut dev: f64 = 0.0;
        for a in 0..self.lines() {
            for b in 0..self.lines() {
                if a == b {
                    continue;
                }
                for k in 0..self.sizes[a] {
                    for l in 0..self.sizes[b] {
                        dev = dev.max((self.overlap(a, k, b, l) - want(a, k, b, l)).abs());
                    }
                }
            }
        }
        dev
    }
}
