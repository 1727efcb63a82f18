use num_complex::Complex64;

use super::matrix::{kind_unitary, CMatrix};
use super::{GateKind, GateOp, PauliZString};
use crate::error::{Error, Result};

const TOL: f64 = 1e-10;

/// How gates outside the Z-closed set are treated.
///
/// `Strict` accepts a gate only if it numerically maps every Z-string on its
/// support to a Z-string up to phase. `Relaxed` additionally treats `XCZ` and
/// `RBS` as transparent to Z-strings; their matrices are not Z-closed,
/// so mitigation with this policy is a cost model rather than an exact
/// inverse.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Compat {
    #[default]
    Strict,
    Relaxed,
}

/// Z-string conjugation table for one gate: `U Z_s U† ∝ Z_{table[s]}` on
/// local masks (local bit `i` is `qubits[i]`).
#[derive(Clone, Debug, PartialEq)]
pub struct ZPropagator {
    qubits: Vec<usize>,
    table: Vec<u8>,
}

impl ZPropagator {
    pub fn for_gate(gate: &GateOp, compat: Compat) -> Result<Self> {
        let k = gate.arity();
        if gate.kind.is_composite() {
            return Err(Error::UnsupportedGate(format!(
                "{} must be expanded before conjugation",
                gate.kind.name()
            )));
        }
        let table = match (compat, gate.kind) {
            (Compat::Relaxed, GateKind::Xcz(_) | GateKind::Rbs(_)) => (0..1u8 << k).collect(),
            _ => {
                let u = kind_unitary(gate.kind);
                let mut table = Vec::with_capacity(1 << k);
                for s in 0..1usize << k {
                    match local_image(&u, k, s) {
                        Some(t) => table.push(t as u8),
                        None => {
                            return Err(Error::NotZClosed {
                                gate: gate.to_string(),
                                string: local_string(k, s),
                            })
                        }
                    }
                }
                table
            }
        };
        Ok(Self {
            qubits: gate.qubits.clone(),
            table,
        })
    }

    /// Image of a global mask; bits outside the gate's support pass through.
    pub fn apply(&self, mask: u64) -> u64 {
        let mut local = 0usize;
        let mut rest = mask;
        for (i, &q) in self.qubits.iter().enumerate() {
            local |= ((mask >> q & 1) as usize) << i;
            rest &= !(1u64 << q);
        }
        let image = self.table[local];
        self.qubits
            .iter()
            .enumerate()
            .fold(rest, |m, (i, &q)| m | (u64::from(image >> i & 1)) << q)
    }

    /// True when every Z-string on the support is left unchanged.
    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(s, &t)| s == t as usize)
    }
}

fn local_string(k: usize, s: usize) -> String {
    (0..k).map(|i| if s >> i & 1 == 1 { 'Z' } else { 'I' }).collect()
}

/// Diagonal of `Z_s` in the big-endian local basis.
fn z_diag(k: usize, s: usize) -> Vec<f64> {
    (0..1usize << k)
        .map(|x| {
            let parity = (0..k).filter(|&i| s >> i & 1 == 1 && x >> (k - 1 - i) & 1 == 1).count();
            if parity % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        })
        .collect()
}

/// Finds `t` with `U Z_s U† = c Z_t`, `|c| = 1`.
fn local_image(u: &CMatrix, k: usize, s: usize) -> Option<usize> {
    let d = 1usize << k;
    let zs: Vec<Complex64> = z_diag(k, s).into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    let m = u.mul(&CMatrix::diag(&zs)).mul(&u.adjoint());
    for t in 0..d {
        let zt = z_diag(k, t);
        let coeff: Complex64 = (0..d).map(|x| m.get(x, x) * zt[x]).sum::<Complex64>() / d as f64;
        if (coeff.norm() - 1.0).abs() > TOL {
            continue;
        }
        let mut err = 0.0f64;
        for (r, &zr) in zt.iter().enumerate() {
            for col in 0..d {
                let target = if r == col { coeff * zr } else { Complex64::new(0.0, 0.0) };
                err = err.max((m.get(r, col) - target).norm());
            }
        }
        if err <= TOL {
            return Some(t);
        }
    }
    None
}

/// `g Z_s g†` as a Z-string, under the strict policy.
pub fn conjugate_z_string(gate: &GateOp, s: PauliZString) -> Result<PauliZString> {
    conjugate_z_string_with(gate, s, Compat::Strict)
}

pub fn conjugate_z_string_with(gate: &GateOp, s: PauliZString, compat: Compat) -> Result<PauliZString> {
    if let Some(&q) = gate.qubits.iter().find(|&&q| q >= s.n()) {
        return Err(Error::InvalidArgument(format!(
            "gate qubit {q} outside {}-qubit string",
            s.n()
        )));
    }
    if gate.kind.is_composite() {
        return Err(Error::UnsupportedGate(format!(
            "{} must be expanded before conjugation",
            gate.kind.name()
        )));
    }
    let k = gate.arity();
    let local = gate
        .qubits
        .iter()
        .enumerate()
        .fold(0usize, |m, (i, &q)| m | ((s.mask() >> q & 1) as usize) << i);
    let image = match (compat, gate.kind) {
        (Compat::Relaxed, GateKind::Xcz(_) | GateKind::Rbs(_)) => local,
        _ => local_image(&kind_unitary(gate.kind), k, local).ok_or_else(|| Error::NotZClosed {
            gate: gate.to_string(),
            string: s.to_string(),
        })?,
    };
    let mut mask = s.mask();
    for (i, &q) in gate.qubits.iter().enumerate() {
        mask = mask & !(1u64 << q) | ((image >> i & 1) as u64) << q;
    }
    PauliZString::new(s.n(), mask)
}
