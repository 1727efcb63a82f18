use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;

use super::{GateKind, GateOp};
use crate::error::Result;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = e;
        }
        m
    }

    /// Builds from rows of real entries.
    pub fn real(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix must be square");
            data.extend(r.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self { dim, data }
    }

    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "matrix must be square");
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut out = Self::zeros(d);
        for i in 0..a {
            for j in 0..a {
                let x = self.data[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * d + j * b + l] = x * other.data[k * b + l];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mul(&self.adjoint()).max_abs_diff(&Self::identity(self.dim)) <= tol
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Local unitary of a gate; `qubits[0]` is the most significant index bit.
pub fn unitary_of(gate: &GateOp) -> Result<CMatrix> {
    Ok(kind_unitary(gate.kind))
}

pub(crate) fn kind_unitary(kind: GateKind) -> CMatrix {
    use GateKind::*;
    let h = FRAC_1_SQRT_2;
    match kind {
        X => CMatrix::real(&[&[0.0, 1.0], &[1.0, 0.0]]),
        Z => CMatrix::real(&[&[1.0, 0.0], &[0.0, -1.0]]),
        S => CMatrix::diag(&[ONE, c(0.0, 1.0)]),
        T => CMatrix::diag(&[ONE, Complex64::from_polar(1.0, FRAC_PI_4)]),
        H => CMatrix::real(&[&[h, h], &[h, -h]]),
        Rz(t) => {
            let (m, p) = (
                Complex64::from_polar(1.0, -t / 2.0),
                Complex64::from_polar(1.0, t / 2.0),
            );
            CMatrix::diag(&[m, p])
        }
        Rzz(t) => {
            let (m, p) = (
                Complex64::from_polar(1.0, -t / 2.0),
                Complex64::from_polar(1.0, t / 2.0),
            );
            CMatrix::diag(&[m, p, p, m])
        }
        Cz => CMatrix::real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
        ]),
        Cnot => CMatrix::real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]),
        Swap => CMatrix::real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]),
        Xcz(t) => {
            let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
            CMatrix::real(&[
                &[co, 0.0, si, 0.0],
                &[0.0, co, 0.0, -si],
                &[-si, 0.0, co, 0.0],
                &[0.0, si, 0.0, co],
            ])
        }
        Rbs(t) => {
            let (co, si) = (t.cos(), t.sin());
            CMatrix::real(&[
                &[1.0, 0.0, 0.0, 0.0],
                &[0.0, co, si, 0.0],
                &[0.0, -si, co, 0.0],
                &[0.0, 0.0, 0.0, 1.0],
            ])
        }
        Ry(t) => {
            let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
            CMatrix::real(&[&[co, -si], &[si, co]])
        }
        Cry(t) => {
            let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
            CMatrix::real(&[
                &[1.0, 0.0, 0.0, 0.0],
                &[0.0, 1.0, 0.0, 0.0],
                &[0.0, 0.0, co, -si],
                &[0.0, 0.0, si, co],
            ])
        }
        Toffoli => {
            let mut m = CMatrix::identity(8);
            m.set(6, 6, ZERO);
            m.set(7, 7, ZERO);
            m.set(6, 7, ONE);
            m.set(7, 6, ONE);
            m
        }
    }
}
