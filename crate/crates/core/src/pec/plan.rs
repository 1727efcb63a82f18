use std::ops::Range;

use serde_json::{json, Value};

use super::{BlockCoefficients, Mode, PecEngine};
use crate::circuit::{classify_circuit_with, Circuit};
use crate::error::{Error, Result};
use crate::noise::ZMixtureChannel;

#[derive(Clone, Debug, PartialEq)]
pub enum Segment {
    Block {
        range: Range<usize>,
        coeffs: BlockCoefficients,
    },
    PerGate {
        index: usize,
        dist: ZMixtureChannel,
    },
}

impl Segment {
    pub fn range(&self) -> Range<usize> {
        match self {
            Segment::Block { range, .. } => range.clone(),
            Segment::PerGate { index, .. } => *index..*index + 1,
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            Segment::Block { coeffs, .. } => coeffs.gamma(),
            Segment::PerGate { dist, .. } => dist.gamma(),
        }
    }

    /// The final control layer as a mixture over global qubits.
    pub fn controls(&self) -> ZMixtureChannel {
        match self {
            Segment::Block { coeffs, .. } => coeffs.to_mixture(),
            Segment::PerGate { dist, .. } => dist.clone(),
        }
    }
}

/// Ordered segments covering every op, each followed by one sampled control layer.
#[derive(Clone, Debug, PartialEq)]
pub struct MitigationPlan {
    pub mode: Mode,
    pub segments: Vec<Segment>,
    pub total_gamma: f64,
}

impl MitigationPlan {
    /// Export for inspection; coefficients are listed as `[mask, value]` pairs.
    pub fn to_json(&self, with_coeffs: bool) -> Value {
        let segments: Vec<Value> = self
            .segments
            .iter()
            .map(|s| {
                let r = s.range();
                let mut v = json!({
                    "type": match s { Segment::Block { .. } => "block", Segment::PerGate { .. } => "per_gate" },
                    "op_range": [r.start, r.end],
                    "gamma": s.gamma(),
                });
                if with_coeffs {
                    let pairs: Vec<Value> = s.controls().terms().map(|(m, c)| json!([m, c])).collect();
                    v["coeffs"] = Value::Array(pairs);
                }
                v
            })
            .collect();
        json!({ "mode": self.mode, "total_gamma": self.total_gamma, "segments": segments })
    }
}

impl PecEngine {
    pub fn plan(&self, c: &Circuit, mode: Mode) -> Result<MitigationPlan> {
        let mut segments = Vec::new();
        let per_gate = |i: usize| -> Result<Segment> {
            let (g, s) = (&c.ops()[i], &c.noise()[i]);
            Ok(Segment::PerGate {
                index: i,
                dist: self.layer_distribution(g, s)?,
            })
        };
        match mode {
            Mode::Std => {
                for i in 0..c.len() {
                    segments.push(per_gate(i)?);
                }
            }
            Mode::Blk => {
                if !c.is_empty() {
                    segments.push(Segment::Block {
                        range: 0..c.len(),
                        coeffs: self.block_coefficients(c)?,
                    });
                }
            }
            Mode::Hybrid => {
                let report = classify_circuit_with(c, self.compat);
                let mut next = 0;
                for r in report.segments {
                    for i in next..r.start {
                        segments.push(per_gate(i)?);
                    }
                    let coeffs = self.block_coefficients(&c.slice(r.clone()))?;
                    next = r.end;
                    segments.push(Segment::Block { range: r, coeffs });
                }
                for i in next..c.len() {
                    segments.push(per_gate(i)?);
                }
            }
        }
        let total_gamma: f64 = segments.iter().map(Segment::gamma).product();
        if !total_gamma.is_finite() {
            return Err(Error::InvalidArgument("total gamma overflowed".into()));
        }
        Ok(MitigationPlan {
            mode,
            segments,
            total_gamma,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{GateKind::*, GateOp};
    use crate::noise::NoiseSpec;
    use crate::pec::{gamma_blk, gamma_std, hybrid_plan};
    use approx::assert_abs_diff_eq;

    fn unc(p: f64) -> NoiseSpec {
        NoiseSpec::uncorrelated(p).unwrap()
    }

    #[test]
    fn fully_compatible_is_one_block() {
        let c = Circuit::from_ops(2, [GateOp::two(Rzz(0.2), 0, 1), GateOp::two(Cnot, 0, 1)], unc(0.1)).unwrap();
        let p = hybrid_plan(&c).unwrap();
        assert_eq!(p.segments.len(), 1);
        assert_abs_diff_eq!(p.total_gamma, gamma_blk(&c).unwrap(), epsilon = 1e-14);
    }

    #[test]
    fn hadamard_splits_the_circuit() {
        let ops = [GateOp::two(Cnot, 0, 1), GateOp::one(H, 0), GateOp::two(Cnot, 0, 1)];
        let c = Circuit::from_ops(2, ops, unc(0.1)).unwrap();
        let p = hybrid_plan(&c).unwrap();
        let ranges: Vec<_> = p.segments.iter().map(Segment::range).collect();
        assert_eq!(ranges, vec![0..1, 1..2, 2..3]);
        assert_abs_diff_eq!(p.total_gamma, 1.5625 * 1.25 * 1.5625, epsilon = 1e-12);
    }

    #[test]
    fn toffoli_is_per_gate() {
        let c = Circuit::from_ops(3, [GateOp::new(Toffoli, vec![0, 1, 2]).unwrap()], unc(0.1)).unwrap();
        let p = hybrid_plan(&c).unwrap();
        assert!(matches!(p.segments[0], Segment::PerGate { .. }));
        assert_abs_diff_eq!(p.total_gamma, 1.25f64.powi(3), epsilon = 1e-12);
    }

    #[test]
    fn no_compatible_gates_degenerates_to_std() {
        let c = Circuit::from_ops(2, [GateOp::one(H, 0), GateOp::one(H, 1)], unc(0.1)).unwrap();
        let p = hybrid_plan(&c).unwrap();
        assert_abs_diff_eq!(p.total_gamma, gamma_std(&c).unwrap(), epsilon = 1e-14);
    }

    #[test]
    fn json_export() {
        let c = Circuit::from_ops(2, [GateOp::two(Cnot, 0, 1), GateOp::one(H, 0)], unc(0.1)).unwrap();
        let v = hybrid_plan(&c).unwrap().to_json(true);
        assert_eq!(v["segments"][0]["type"], "block");
        assert_eq!(v["segments"][1]["op_range"], json!([1, 2]));
        assert_eq!(v["segments"][1]["coeffs"][1], json!([1, -0.125]));
        assert_eq!(v["segments"][0]["gamma"].as_f64().unwrap(), 1.5625);
    }
}
