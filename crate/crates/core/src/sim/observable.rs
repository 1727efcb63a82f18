use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::kernel::{parity, DensityMatrix, StateVector};
use crate::circuit::{CMatrix, PauliZString};
use crate::error::{Error, Result};

/// A bounded observable, `‖O‖∞ ≤ 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum Observable {
    ZString(PauliZString),
    /// Sum of `|x⟩⟨x|` over the listed basis states (bit `q` is qubit `q`).
    Projector {
        n: usize,
        states: Vec<u64>,
    },
    Dense(DenseObservable),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseObservable {
    n: usize,
    /// Row-major in internal index order.
    matrix: Vec<Complex64>,
    eigenvalues: Vec<f64>,
    /// Column `i` of eigenvector `i`, internal index order.
    eigenvectors: Vec<Vec<Complex64>>,
}

fn reverse_bits(x: usize, n: usize) -> usize {
    (0..n).fold(0, |r, i| r | (x >> i & 1) << (n - 1 - i))
}

impl Observable {
    pub fn z(n: usize, q: usize) -> Result<Self> {
        Ok(Observable::ZString(PauliZString::from_qubits(n, &[q])?))
    }

    pub fn projector(n: usize, states: Vec<u64>) -> Result<Self> {
        if n > 64 || states.iter().any(|&s| n < 64 && s >> n != 0) {
            return Err(Error::InvalidArgument("projector state outside register".into()));
        }
        let mut states = states;
        states.sort_unstable();
        states.dedup();
        Ok(Observable::Projector { n, states })
    }

    /// `|1⟩⟨1|` on one qubit.
    pub fn excited(n: usize, q: usize) -> Result<Self> {
        if q >= n || n > 20 {
            return Err(Error::InvalidArgument(format!("qubit {q} of {n}")));
        }
        Self::projector(n, (0..1u64 << n).filter(|x| x >> q & 1 == 1).collect())
    }

    /// Hermitian matrix in big-endian order (qubit 0 most significant),
    /// rescaled so that its spectral norm is at most one.
    pub fn dense(n: usize, m: &CMatrix) -> Result<Self> {
        let dim = 1usize << n;
        if n > 10 || m.dim() != dim {
            return Err(Error::InvalidArgument(format!(
                "dense observable of dimension {} on {n} qubits",
                m.dim()
            )));
        }
        if m.max_abs_diff(&m.adjoint()) > 1e-10 {
            return Err(Error::InvalidArgument("observable is not Hermitian".into()));
        }
        let internal = DMatrix::from_fn(dim, dim, |r, c| m.get(reverse_bits(r, n), reverse_bits(c, n)));
        let eig = SymmetricEigen::new(internal.clone());
        let norm = eig.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
        let scale = if norm > 1.0 { 1.0 / norm } else { 1.0 };
        let matrix = (0..dim * dim).map(|i| internal[(i / dim, i % dim)] * scale).collect();
        let eigenvalues = eig.eigenvalues.iter().map(|l| l * scale).collect();
        let eigenvectors = (0..dim)
            .map(|i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect();
        Ok(Observable::Dense(DenseObservable {
            n,
            matrix,
            eigenvalues,
            eigenvectors,
        }))
    }

    pub fn n(&self) -> usize {
        match self {
            Observable::ZString(s) => s.n(),
            Observable::Projector { n, .. } => *n,
            Observable::Dense(d) => d.n,
        }
    }

    pub fn expect_density(&self, rho: &DensityMatrix) -> f64 {
        match self {
            Observable::ZString(s) => rho
                .diagonal()
                .enumerate()
                .map(|(x, p)| if parity(x as u64 & s.mask()) { -p } else { p })
                .sum(),
            Observable::Projector { states, .. } => states.iter().map(|&x| rho.get(x as usize, x as usize).re).sum(),
            Observable::Dense(d) => {
                let dim = 1usize << d.n;
                let mut acc = Complex64::new(0.0, 0.0);
                for x in 0..dim {
                    for y in 0..dim {
                        acc += d.matrix[y * dim + x] * rho.get(x, y);
                    }
                }
                acc.re
            }
        }
    }

    pub fn expect_state(&self, psi: &StateVector) -> f64 {
        let a = psi.amplitudes();
        match self {
            Observable::ZString(s) => a
                .iter()
                .enumerate()
                .map(|(x, z)| {
                    if parity(x as u64 & s.mask()) {
                        -z.norm_sqr()
                    } else {
                        z.norm_sqr()
                    }
                })
                .sum(),
            Observable::Projector { states, .. } => states.iter().map(|&x| a[x as usize].norm_sqr()).sum(),
            Observable::Dense(d) => {
                let dim = 1usize << d.n;
                let mut acc = Complex64::new(0.0, 0.0);
                for x in 0..dim {
                    let row: Complex64 = (0..dim).map(|y| d.matrix[x * dim + y] * a[y]).sum();
                    acc += a[x].conj() * row;
                }
                acc.re
            }
        }
    }

    /// Measurement outcomes and their probabilities.
    pub(crate) fn outcomes_density(&self, rho: &DensityMatrix) -> Vec<(f64, f64)> {
        match self {
            Observable::Dense(d) => d
                .eigenvectors
                .iter()
                .zip(&d.eigenvalues)
                .map(|(v, &l)| {
                    let dim = v.len();
                    let mut p = Complex64::new(0.0, 0.0);
                    for x in 0..dim {
                        for y in 0..dim {
                            p += v[x].conj() * rho.get(x, y) * v[y];
                        }
                    }
                    (l, p.re.max(0.0))
                })
                .collect(),
            _ => self.binary_outcomes(self.expect_density(rho)),
        }
    }

    pub(crate) fn outcomes_state(&self, psi: &StateVector) -> Vec<(f64, f64)> {
        match self {
            Observable::Dense(d) => d
                .eigenvectors
                .iter()
                .zip(&d.eigenvalues)
                .map(|(v, &l)| {
                    let amp: Complex64 = v.iter().zip(psi.amplitudes()).map(|(a, b)| a.conj() * b).sum();
                    (l, amp.norm_sqr())
                })
                .collect(),
            _ => self.binary_outcomes(self.expect_state(psi)),
        }
    }

    fn binary_outcomes(&self, mean: f64) -> Vec<(f64, f64)> {
        match self {
            // mean = p₊ − p₋
            Observable::ZString(_) => {
                let plus = ((1.0 + mean) / 2.0).clamp(0.0, 1.0);
                vec![(1.0, plus), (-1.0, 1.0 - plus)]
            }
            _ => {
                let one = mean.clamp(0.0, 1.0);
                vec![(1.0, one), (0.0, 1.0 - one)]
            }
        }
    }
}
