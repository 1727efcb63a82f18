use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateKind, GateOp};
use crate::error::{Error, Result};
use crate::noise::NoiseSpec;

/// The three smallest circuits where Block-PEC beats standard PEC.
///
/// - `A`: `Z(θ)` on `k` then `CNOT(j → k)`.
/// - `B`: `ZZ(θ)` on `(j, k)` then `CNOT(j → k)`.
/// - `C`: `ZZ(θ)` on `(j, k)` then `CNOT(i → j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    A,
    B,
    C,
}

impl Pattern {
    pub fn circuit(self, theta: f64, noise: NoiseSpec) -> Circuit {
        let (n, ops) = match self {
            Pattern::A => (
                2,
                [GateOp::one(GateKind::Rz(theta), 1), GateOp::two(GateKind::Cnot, 0, 1)],
            ),
            Pattern::B => (
                2,
                [
                    GateOp::two(GateKind::Rzz(theta), 0, 1),
                    GateOp::two(GateKind::Cnot, 0, 1),
                ],
            ),
            Pattern::C => (
                3,
                [
                    GateOp::two(GateKind::Rzz(theta), 1, 2),
                    GateOp::two(GateKind::Cnot, 0, 1),
                ],
            ),
        };
        Circuit::from_ops(n, ops, noise).expect("pattern circuit")
    }
}

/// Closed-form `(γ_std, γ_blk)` for a pattern.
///
/// The correlated pair is the closed-form expression; see the crate tests for how
/// it compares with the computed block cost.
pub fn analytic_pattern_gammas(pattern: Pattern, p: f64, correlated: bool) -> Result<(f64, f64)> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::InvalidArgument(format!("p = {p} outside (0, 0.5)")));
    }
    let g = 1.0 - 2.0 * p;
    Ok(match (pattern, correlated) {
        (Pattern::A, false) => (g.powi(-3), (1.0 + 2.0 * p - 2.0 * p * p) / g.powi(2)),
        (Pattern::B, false) => (g.powi(-4), (1.0 + 2.0 * p - 6.0 * p * p + 4.0 * p.powi(3)) / g.powi(3)),
        (Pattern::C, false) => (g.powi(-4), (1.0 + 2.0 * p - 2.0 * p * p) / g.powi(3)),
        (Pattern::B, true) => (g.powi(-2), (3.0 - 4.0 * p * p) / (3.0 * g)),
        (_, true) => {
            return Err(Error::Unsupported(
                "correlated closed form is only known for pattern b".into(),
            ))
        }
    })
}
