use super::PecEngine;
use crate::circuit::{Circuit, ZPropagator};
use crate::error::{Error, Result};
use crate::noise::{invert_dephasing, NoiseSpec, ZMixtureChannel};

/// Largest register for dense block coefficients.
pub const MAX_BLOCK_QUBITS: usize = 20;
const MAX_NAIVE_WORK: usize = 16;
const MAX_FOLD_QUBITS: usize = 14;

/// Quasi-distribution over the final Z-control layer of a block, indexed by
/// global mask.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockCoefficients {
    n: usize,
    coeffs: Vec<f64>,
}

impl BlockCoefficients {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, mask: u64) -> f64 {
        self.coeffs[mask as usize]
    }

    pub fn gamma(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// Same coefficients as a mixture on qubits `0..n`.
    pub fn to_mixture(&self) -> ZMixtureChannel {
        ZMixtureChannel::new((0..self.n).collect(), self.coeffs.clone()).expect("dense block")
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(m, &c)| (m as u64, c))
    }
}

fn check_width(n: usize) -> Result<()> {
    if n > MAX_BLOCK_QUBITS {
        return Err(Error::GuardExceeded(format!(
            "block coefficients need 2^{n} entries (limit {MAX_BLOCK_QUBITS} qubits)"
        )));
    }
    Ok(())
}

impl PecEngine {
    /// Forward accumulation: every stored string is commuted through the
    /// next gate, then convolved with that gate's control distribution.
    pub fn block_coefficients(&self, c: &Circuit) -> Result<BlockCoefficients> {
        Ok(self.block_coefficients_counted(c)?.0)
    }

    /// Also returns the number of multiply-adds performed.
    pub fn block_coefficients_counted(&self, c: &Circuit) -> Result<(BlockCoefficients, u64)> {
        let n = c.n();
        check_width(n)?;
        let mut cur = vec![0.0; 1 << n];
        cur[0] = 1.0;
        let mut next = vec![0.0; 1 << n];
        let mut work = 0u64;
        for (g, spec) in c.iter() {
            let prop = ZPropagator::for_gate(g, self.compat)?;
            let controls: Vec<(u64, f64)> = self.layer_distribution(g, spec)?.terms().collect();
            next.iter_mut().for_each(|x| *x = 0.0);
            for (w, &a) in cur.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let moved = prop.apply(w as u64);
                for &(v, b) in &controls {
                    next[(moved ^ v) as usize] += a * b;
                }
                work += controls.len() as u64;
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Ok((BlockCoefficients { n, coeffs: cur }, work))
    }

    /// Sum over every tuple of per-gate controls, each commuted to the end
    /// on its own. Exponential; kept as a reference.
    pub fn naive_block_coefficients(&self, c: &Circuit) -> Result<BlockCoefficients> {
        let (n, d) = (c.n(), c.len());
        if n * d > MAX_NAIVE_WORK {
            return Err(Error::GuardExceeded(format!(
                "naive enumeration with n*d = {} (limit {MAX_NAIVE_WORK})",
                n * d
            )));
        }
        let props = c
            .ops()
            .iter()
            .map(|g| ZPropagator::for_gate(g, self.compat))
            .collect::<Result<Vec<_>>>()?;
        let layers = c
            .iter()
            .map(|(g, s)| self.layer_distribution(g, s).map(|x| x.terms().collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        // controls of layer l commuted through gates l+1..d
        let to_end: Vec<Vec<(u64, f64)>> = layers
            .iter()
            .enumerate()
            .map(|(l, terms)| {
                terms
                    .iter()
                    .map(|&(v, a)| (props[l + 1..].iter().fold(v, |m, p| p.apply(m)), a))
                    .collect()
            })
            .collect();
        let mut coeffs = vec![0.0; 1 << n];
        let mut stack = vec![(0usize, 0u64, 1.0f64)];
        while let Some((l, mask, weight)) = stack.pop() {
            if l == d {
                coeffs[mask as usize] += weight;
                continue;
            }
            for &(v, a) in &to_end[l] {
                stack.push((l + 1, mask ^ v, weight * a));
            }
        }
        Ok(BlockCoefficients { n, coeffs })
    }

    /// Rewrites perfect final controls as noisy ones: a perfect `V` equals
    /// `Σ_B inv(B)·(N ∘ Z_B V)` with `N` the control noise on `V`'s support.
    pub fn fold_noisy_controls(&self, b: &BlockCoefficients, spec: &NoiseSpec) -> Result<ZMixtureChannel> {
        let n = b.n();
        if n > MAX_FOLD_QUBITS {
            return Err(Error::GuardExceeded(format!(
                "folding enumerates 3^{n} terms (limit {MAX_FOLD_QUBITS} qubits)"
            )));
        }
        let mut out = vec![0.0; 1 << n];
        for (v, alpha) in b.nonzero() {
            let support: Vec<usize> = (0..n).filter(|q| v >> q & 1 == 1).collect();
            let inv = invert_dephasing(spec, &support, self.inversion)?;
            for (bmask, beta) in inv.terms() {
                out[(v ^ bmask) as usize] += alpha * beta;
            }
        }
        ZMixtureChannel::new((0..n).collect(), out)
    }
}
