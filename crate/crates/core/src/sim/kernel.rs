//! Dense state kernels. A density matrix on `n` qubits is stored as a vector
//! over `2n` bits: bit `n + q` is qubit `q` of the row index, bit `q` of the
//! column index.

use num_complex::Complex64;

use crate::circuit::CMatrix;
use crate::noise::PauliChannel1;

/// Applies `u` to the bits listed in `bits` (`bits[0]` is the most
/// significant bit of `u`'s local index).
pub(crate) fn apply_matrix(amp: &mut [Complex64], bits: &[usize], u: &CMatrix) {
    let k = bits.len();
    let d = 1usize << k;
    let offsets: Vec<usize> = (0..d)
        .map(|l| {
            (0..k)
                .filter(|&i| l >> (k - 1 - i) & 1 == 1)
                .fold(0, |o, i| o | 1 << bits[i])
        })
        .collect();
    let mask = bits.iter().fold(0usize, |m, &b| m | 1 << b);
    let mut buf = vec![Complex64::new(0.0, 0.0); d];
    let data = u.data();
    for base in 0..amp.len() {
        if base & mask != 0 {
            continue;
        }
        for (slot, &o) in buf.iter_mut().zip(&offsets) {
            *slot = amp[base | o];
        }
        for (r, &o) in offsets.iter().enumerate() {
            let row = &data[r * d..(r + 1) * d];
            amp[base | o] = row.iter().zip(&buf).map(|(a, b)| a * b).sum();
        }
    }
}

#[inline]
pub(crate) fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// Row-major complex density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    /// `|0…0⟩⟨0…0|`.
    pub fn zero_state(n: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); 1 << (2 * n)];
        data[0] = Complex64::new(1.0, 0.0);
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Entry `ρ_{xy}`; bit `q` of an index is qubit `q`.
    pub fn get(&self, x: usize, y: usize) -> Complex64 {
        self.data[x << self.n | y]
    }

    pub fn diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.dim()).map(move |x| self.get(x, x).re)
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().sum()
    }

    pub(crate) fn apply_unitary(&mut self, qubits: &[usize], u: &CMatrix, u_conj: &CMatrix) {
        let rows: Vec<usize> = qubits.iter().map(|q| q + self.n).collect();
        apply_matrix(&mut self.data, &rows, u);
        apply_matrix(&mut self.data, qubits, u_conj);
    }

    /// `ρ_{xy} ← λ(pattern(x ⊕ y)) ρ_{xy}` where `pattern` maps a global mask
    /// to an index of `eig`. Covers Z-mixture channels and quasi-channels.
    pub(crate) fn scale_by_pattern(&mut self, eig: &[f64], pattern: impl Fn(u64) -> usize) {
        let n = self.n;
        let low = (1usize << n) - 1;
        for (idx, v) in self.data.iter_mut().enumerate() {
            let t = pattern(((idx >> n) ^ (idx & low)) as u64);
            *v *= eig[t];
        }
    }

    /// `ρ ← Z_m ρ Z_m`.
    pub(crate) fn apply_z(&mut self, mask: u64) {
        if mask == 0 {
            return;
        }
        let n = self.n;
        let low = (1usize << n) - 1;
        for (idx, v) in self.data.iter_mut().enumerate() {
            if parity(((idx >> n) ^ (idx & low)) as u64 & mask) {
                *v = -*v;
            }
        }
    }

    pub(crate) fn apply_pauli_channel(&mut self, q: usize, ch: &PauliChannel1) {
        let (rb, cb) = (1usize << (q + self.n), 1usize << q);
        let (diag_keep, diag_swap) = (ch.i + ch.z, ch.x + ch.y);
        let (off_keep, off_swap) = (ch.i - ch.z, ch.x - ch.y);
        for base in 0..self.data.len() {
            if base & (rb | cb) != 0 {
                continue;
            }
            let (i00, i01, i10, i11) = (base, base | cb, base | rb, base | rb | cb);
            let (a, b, c, d) = (self.data[i00], self.data[i01], self.data[i10], self.data[i11]);
            self.data[i00] = a * diag_keep + d * diag_swap;
            self.data[i11] = d * diag_keep + a * diag_swap;
            self.data[i01] = b * off_keep + c * off_swap;
            self.data[i10] = c * off_keep + b * off_swap;
        }
    }
}

/// Pure state; bit `q` of an index is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amp: Vec<Complex64>,
}

impl StateVector {
    pub fn zero_state(n: usize) -> Self {
        let mut amp = vec![Complex64::new(0.0, 0.0); 1 << n];
        amp[0] = Complex64::new(1.0, 0.0);
        Self { n, amp }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub(crate) fn apply_unitary(&mut self, qubits: &[usize], u: &CMatrix) {
        apply_matrix(&mut self.amp, qubits, u);
    }

    pub(crate) fn apply_z(&mut self, mask: u64) {
        if mask == 0 {
            return;
        }
        for (x, a) in self.amp.iter_mut().enumerate() {
            if parity(x as u64 & mask) {
                *a = -*a;
            }
        }
    }

    /// Applies X (`which = 1`), Y (2) or Z (3) to qubit `q`, up to phase.
    pub(crate) fn apply_pauli(&mut self, q: usize, which: u8) {
        let b = 1usize << q;
        match which {
            1 | 2 => {
                for x in 0..self.amp.len() {
                    if x & b == 0 {
                        self.amp.swap(x, x | b);
                        if which == 2 {
                            // Y = iXZ; the global i is dropped
                            self.amp[x] = -self.amp[x];
                        }
                    }
                }
            }
            3 => self.apply_z(b as u64),
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{unitary_of, GateKind, GateOp};

    fn u(kind: GateKind, qubits: Vec<usize>) -> (GateOp, CMatrix) {
        let g = GateOp::new(kind, qubits).unwrap();
        let m = unitary_of(&g).unwrap();
        (g, m)
    }

    #[test]
    fn cnot_on_state_vector_respects_control_order() {
        let mut s = StateVector::zero_state(3);
        let (_, x) = u(GateKind::X, vec![2]);
        s.apply_unitary(&[2], &x);
        let (_, cx) = u(GateKind::Cnot, vec![2, 0]);
        s.apply_unitary(&[2, 0], &cx);
        assert!((s.amplitudes()[0b101].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn density_matches_outer_product() {
        let n = 2;
        let mut s = StateVector::zero_state(n);
        let mut r = DensityMatrix::zero_state(n);
        for (kind, q) in [
            (GateKind::H, vec![0]),
            (GateKind::Cnot, vec![0, 1]),
            (GateKind::Rz(0.4), vec![1]),
        ] {
            let (_, m) = u(kind, q.clone());
            let conj = CMatrix::from_rows(m.dim(), m.data().iter().map(|z| z.conj()).collect());
            s.apply_unitary(&q, &m);
            r.apply_unitary(&q, &m, &conj);
        }
        for x in 0..4 {
            for y in 0..4 {
                let want = s.amplitudes()[x] * s.amplitudes()[y].conj();
                assert!((r.get(x, y) - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn pauli_channel_on_plus_state() {
        let mut r = DensityMatrix::zero_state(1);
        let (_, h) = u(GateKind::H, vec![0]);
        r.apply_unitary(&[0], &h, &h);
        r.apply_pauli_channel(
            0,
            &PauliChannel1 {
                i: 0.9,
                x: 0.0,
                y: 0.0,
                z: 0.1,
            },
        );
        assert!((r.get(0, 1).re - 0.4).abs() < 1e-15);
        assert!((r.trace() - 1.0).abs() < 1e-15);
    }
}
