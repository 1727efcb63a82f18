//! Circuits, gates and the Pauli-Z string group.
//!
//! Qubit `q` of an `n`-qubit register corresponds to bit `q` of every mask in
//! this crate. Local gate matrices use the opposite, big-endian convention:
//! `qubits[0]` is the most significant bit of the local basis index.

mod classify;
mod conjugate;
mod matrix;
mod text;

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::Range;

pub use classify::{
    classify_circuit, classify_circuit_with, is_bias_preserving, is_pauli_z_compatible, is_s1_bias_preserving,
    CompatReport, GateFlags,
};
pub use conjugate::{conjugate_z_string, conjugate_z_string_with, Compat, ZPropagator};
pub use matrix::{unitary_of, CMatrix};
pub use text::{parse_circuit, to_text};

use crate::error::{Error, Result};
use crate::noise::NoiseSpec;

/// Largest register the bitmask representation supports.
pub const MAX_QUBITS: usize = 64;

/// A tensor product of `I`/`Z` factors over `n` qubits, stored as a bitmask.
///
/// Composition at the channel level is XOR of the masks; phases never matter
/// because every use of a string is through its conjugation channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliZString {
    mask: u64,
    n: usize,
}

impl PauliZString {
    pub fn new(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!("qubit count {n} out of range")));
        }
        if n < 64 && mask >> n != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#b} has bits beyond qubit {}",
                n - 1
            )));
        }
        Ok(Self { mask, n })
    }

    pub fn identity(n: usize) -> Self {
        Self { mask: 0, n }
    }

    /// Z on every listed qubit.
    pub fn from_qubits(n: usize, qubits: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &q in qubits {
            if q >= n {
                return Err(Error::InvalidArgument(format!("qubit {q} >= {n}")));
            }
            mask |= 1 << q;
        }
        Self::new(n, mask)
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.mask == 0
    }

    pub fn has_z(&self, qubit: usize) -> bool {
        qubit < self.n && self.mask >> qubit & 1 == 1
    }

    /// Channel-level product; both strings must live on the same register.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "composing Z-strings of different widths");
        Self {
            mask: self.mask ^ other.mask,
            n: self.n,
        }
    }
}

impl fmt::Display for PauliZString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            f.write_str(if self.has_z(q) { "Z" } else { "I" })?;
        }
        Ok(())
    }
}

/// Gate kinds. Parameterized kinds carry their angle in radians.
///
/// `Ry` and `Cry` are composites: [`Circuit::push`] expands them into
/// primitive gates, so they never reach the conjugation engine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    X,
    Z,
    S,
    T,
    H,
    Rz(f64),
    Rzz(f64),
    Cz,
    Cnot,
    Swap,
    Xcz(f64),
    Rbs(f64),
    Ry(f64),
    Cry(f64),
    Toffoli,
}

impl GateKind {
    pub fn arity(&self) -> usize {
        use GateKind::*;
        match self {
            X | Z | S | T | H | Rz(_) | Ry(_) => 1,
            Rzz(_) | Cz | Cnot | Swap | Xcz(_) | Rbs(_) | Cry(_) => 2,
            Toffoli => 3,
        }
    }

    pub fn name(&self) -> &'static str {
        use GateKind::*;
        match self {
            X => "X",
            Z => "Z",
            S => "S",
            T => "T",
            H => "H",
            Rz(_) => "RZ",
            Rzz(_) => "RZZ",
            Cz => "CZ",
            Cnot => "CNOT",
            Swap => "SWAP",
            Xcz(_) => "XCZ",
            Rbs(_) => "RBS",
            Ry(_) => "RY",
            Cry(_) => "CRY",
            Toffoli => "TOFFOLI",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        use GateKind::*;
        match *self {
            Rz(t) | Rzz(t) | Xcz(t) | Rbs(t) | Ry(t) | Cry(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_parameterized(&self) -> bool {
        self.angle().is_some()
    }

    pub fn is_composite(&self) -> bool {
        matches!(self, GateKind::Ry(_) | GateKind::Cry(_))
    }

    /// Looks a kind up by its (case-insensitive) name.
    pub fn from_name(name: &str, angle: Option<f64>) -> Result<Self> {
        use GateKind::*;
        let upper = name.to_ascii_uppercase();
        let need = |a: Option<f64>| a.ok_or_else(|| Error::InvalidArgument(format!("{upper} requires an angle")));
        let kind = match upper.as_str() {
            "X" => X,
            "Z" => Z,
            "S" => S,
            "T" => T,
            "H" => H,
            "CZ" => Cz,
            "CNOT" | "CX" => Cnot,
            "SWAP" => Swap,
            "TOFFOLI" | "CCX" => Toffoli,
            "RZ" => Rz(need(angle)?),
            "RZZ" => Rzz(need(angle)?),
            "XCZ" => Xcz(need(angle)?),
            "RBS" => Rbs(need(angle)?),
            "RY" => Ry(need(angle)?),
            "CRY" => Cry(need(angle)?),
            _ => return Err(Error::UnsupportedGate(name.to_string())),
        };
        if !kind.is_parameterized() && angle.is_some() {
            return Err(Error::InvalidArgument(format!("{upper} takes no angle")));
        }
        Ok(kind)
    }
}

/// A gate applied to an ordered tuple of distinct qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl GateOp {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidArgument(format!(
                "{} acts on {} qubit(s), got {}",
                kind.name(),
                kind.arity(),
                qubits.len()
            )));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::InvalidArgument(format!(
                    "{} has repeated qubit {q}",
                    kind.name()
                )));
            }
        }
        if let Some(t) = kind.angle() {
            if !t.is_finite() {
                return Err(Error::InvalidArgument(format!("{} angle is not finite", kind.name())));
            }
        }
        Ok(Self { kind, qubits })
    }

    pub fn one(kind: GateKind, q: usize) -> Self {
        Self::new(kind, vec![q]).expect("single-qubit gate")
    }

    pub fn two(kind: GateKind, a: usize, b: usize) -> Self {
        Self::new(kind, vec![a, b]).expect("two-qubit gate")
    }

    pub fn arity(&self) -> usize {
        self.qubits.len()
    }

    /// Bitmask of the qubits this gate touches.
    pub fn support_mask(&self) -> u64 {
        self.qubits.iter().fold(0, |m, &q| m | 1 << q)
    }

    /// Primitive gates implementing a composite kind, in application order.
    pub fn expand(&self) -> Vec<GateOp> {
        match self.kind {
            GateKind::Ry(theta) => y_rotation(self.qubits[0], theta),
            GateKind::Cry(theta) => {
                let (c, t) = (self.qubits[0], self.qubits[1]);
                let mut out = vec![GateOp::two(GateKind::Cnot, c, t)];
                out.extend(y_rotation(t, -theta / 2.0));
                out.push(GateOp::two(GateKind::Cnot, c, t));
                out.extend(y_rotation(t, theta / 2.0));
                out
            }
            _ => vec![self.clone()],
        }
    }
}

/// `Y(θ) = S H Z(θ) H S†`, returned in application order; `S†` is `Z(−π/2)`.
fn y_rotation(q: usize, theta: f64) -> Vec<GateOp> {
    vec![
        GateOp::one(GateKind::Rz(-FRAC_PI_2), q),
        GateOp::one(GateKind::H, q),
        GateOp::one(GateKind::Rz(theta), q),
        GateOp::one(GateKind::H, q),
        GateOp::one(GateKind::S, q),
    ]
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        for (i, q) in self.qubits.iter().enumerate() {
            write!(f, "{}{q}", if i == 0 { " " } else { "," })?;
        }
        if let Some(t) = self.kind.angle() {
            write!(f, ";theta={t}")?;
        }
        Ok(())
    }
}

/// An ordered gate list on `n` qubits with one noise annotation per gate.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n: usize,
    ops: Vec<GateOp>,
    noise: Vec<NoiseSpec>,
    default_noise: NoiseSpec,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!("qubit count {n} out of range")));
        }
        Ok(Self {
            n,
            ops: Vec::new(),
            noise: Vec::new(),
            default_noise: NoiseSpec::none(),
        })
    }

    /// Builds a circuit from gates, all tagged with the same noise.
    pub fn from_ops(n: usize, ops: impl IntoIterator<Item = GateOp>, noise: NoiseSpec) -> Result<Self> {
        let mut c = Self::new(n)?.with_noise(noise);
        for op in ops {
            c.push(op)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn noise(&self) -> &[NoiseSpec] {
        &self.noise
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Appends a gate (expanding composites) tagged with the default noise.
    pub fn push(&mut self, op: GateOp) -> Result<()> {
        let noise = self.default_noise;
        self.push_with_noise(op, noise)
    }

    pub fn push_with_noise(&mut self, op: GateOp, noise: NoiseSpec) -> Result<()> {
        if let Some(&q) = op.qubits.iter().find(|&&q| q >= self.n) {
            return Err(Error::InvalidArgument(format!(
                "{} uses qubit {q} on a {}-qubit circuit",
                op.kind.name(),
                self.n
            )));
        }
        for g in op.expand() {
            self.ops.push(g);
            self.noise.push(noise);
        }
        Ok(())
    }

    /// Re-tags every gate, present and future, with `noise`.
    pub fn with_noise(mut self, noise: NoiseSpec) -> Self {
        self.set_noise(noise);
        self
    }

    pub fn set_noise(&mut self, noise: NoiseSpec) {
        self.default_noise = noise;
        self.noise.iter_mut().for_each(|s| *s = noise);
    }

    /// One layer per gate.
    pub fn layers(&self) -> Vec<Range<usize>> {
        (0..self.ops.len()).map(|i| i..i + 1).collect()
    }

    /// The sub-circuit made of the gates in `range`, on the same register.
    pub fn slice(&self, range: Range<usize>) -> Circuit {
        Circuit {
            n: self.n,
            ops: self.ops[range.clone()].to_vec(),
            noise: self.noise[range].to_vec(),
            default_noise: self.default_noise,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GateOp, &NoiseSpec)> {
        self.ops.iter().zip(self.noise.iter())
    }
}
