use std::ops::Range;

use num_complex::Complex64;
use serde::Serialize;

use super::conjugate::{Compat, ZPropagator};
use super::matrix::kind_unitary;
use super::{Circuit, GateOp};
use crate::error::{Error, Result};

const TOL: f64 = 1e-10;

/// True iff the gate's unitary is a generalized permutation matrix.
pub fn is_bias_preserving(g: &GateOp) -> bool {
    let u = kind_unitary(g.kind);
    let d = u.dim();
    (0..d).all(|col| {
        let mut big = 0;
        for r in 0..d {
            let m = u.get(r, col).norm();
            if m >= 1.0 - TOL {
                big += 1;
            } else if m > TOL {
                return false;
            }
        }
        big == 1
    })
}

/// Checks the two-qubit partial bias-preservation property on span{|01>, |10>}.
pub fn is_s1_bias_preserving(g: &GateOp) -> Result<bool> {
    if g.arity() != 2 {
        return Err(Error::UnsupportedGate(format!(
            "{} is not a two-qubit gate",
            g.kind.name()
        )));
    }
    let u = kind_unitary(g.kind);
    for col in [1, 2] {
        if u.get(0, col).norm() > TOL || u.get(3, col).norm() > TOL {
            return Ok(false);
        }
    }
    let b = [[u.get(1, 1), u.get(1, 2)], [u.get(2, 1), u.get(2, 2)]];
    // Z1 on |01>,|10> is diag(1,-1); Z2 is diag(-1,1); Z1Z2 is -I.
    for d in [[1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
        // D' = B D B† on the block
        let mut dp = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in dp.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..2).map(|k| b[i][k] * d[k] * b[j][k].conj()).sum();
            }
        }
        if dp[0][1].norm() > TOL || dp[1][0].norm() > TOL {
            return Ok(false);
        }
        if (dp[0][0].norm() - 1.0).abs() > TOL || (dp[1][1].norm() - 1.0).abs() > TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_pauli_z_compatible(g: &GateOp, compat: Compat) -> bool {
    ZPropagator::for_gate(g, compat).is_ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GateFlags {
    pub bias_preserving: bool,
    pub s1_bias_preserving: bool,
    pub pauli_z_compatible: bool,
}

/// Per-gate classification plus maximal runs of compatible gates.
///
/// Segments are half-open index ranges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub flags: Vec<GateFlags>,
    pub segments: Vec<Range<usize>>,
}

impl CompatReport {
    pub fn fully_compatible(&self) -> bool {
        self.flags.iter().all(|f| f.pauli_z_compatible)
    }
}

pub fn classify_circuit(c: &Circuit) -> CompatReport {
    classify_circuit_with(c, Compat::Strict)
}

pub fn classify_circuit_with(c: &Circuit, compat: Compat) -> CompatReport {
    let flags: Vec<GateFlags> = c
        .ops()
        .iter()
        .map(|g| GateFlags {
            bias_preserving: is_bias_preserving(g),
            s1_bias_preserving: is_s1_bias_preserving(g).unwrap_or(false),
            pauli_z_compatible: is_pauli_z_compatible(g, compat),
        })
        .collect();
    let mut segments = Vec::new();
    let mut start = None;
    for (i, f) in flags.iter().enumerate() {
        match (f.pauli_z_compatible, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                segments.push(s..i);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        segments.push(s..flags.len());
    }
    CompatReport { flags, segments }
}
