use crate::error::{Error, Result};

/// Single-qubit Pauli channel (or quasi-channel) `ρ ↦ Σ_P c_P PρP`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliChannel1 {
    pub i: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PauliChannel1 {
    pub fn identity() -> Self {
        Self {
            i: 1.0,
            x: 0.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub fn gamma(&self) -> f64 {
        self.i.abs() + self.x.abs() + self.y.abs() + self.z.abs()
    }

    /// Eigenvalues on `(I, X, Y, Z)` inputs.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let Self { i, x, y, z } = *self;
        [i + x + y + z, i + x - y - z, i - x + y - z, i - x - y + z]
    }

    pub fn from_eigenvalues(l: [f64; 4]) -> Self {
        Self {
            i: (l[0] + l[1] + l[2] + l[3]) / 4.0,
            x: (l[0] + l[1] - l[2] - l[3]) / 4.0,
            y: (l[0] - l[1] + l[2] - l[3]) / 4.0,
            z: (l[0] - l[1] - l[2] + l[3]) / 4.0,
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let (a, b) = (self.eigenvalues(), other.eigenvalues());
        Self::from_eigenvalues([a[0] * b[0], a[1] * b[1], a[2] * b[2], a[3] * b[3]])
    }

    /// Exact inverse by eigenvalue inversion.
    pub fn inverse_exact(&self) -> Result<Self> {
        let l = self.eigenvalues();
        let mut inv = [0.0; 4];
        for (t, (&e, out)) in l.iter().zip(inv.iter_mut()).enumerate() {
            if e.abs() < 1e-12 {
                return Err(Error::SingularChannel {
                    pattern: t,
                    eigenvalue: e,
                });
            }
            *out = 1.0 / e;
        }
        Ok(Self::from_eigenvalues(inv))
    }
}

/// Forward impure channel `L_{p,q}` and its closed-form inverse.
///
/// `q → ∞` approaches pure dephasing and `q = 0` is depolarizing. The
/// closed-form inverse cancels the channel exactly only in the dephasing
/// limit; otherwise the residual is of order `p²`.
pub fn make_impure(p: f64, q: f64) -> Result<(PauliChannel1, PauliChannel1)> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} outside [0, 0.5)")));
    }
    if q.is_nan() || q < 0.0 {
        return Err(Error::InvalidArgument(format!("q = {q} must be >= 0")));
    }
    let (pz, pxy) = if q.is_infinite() {
        (p, 0.0)
    } else {
        (p * (3.0 * q + 1.0) / (3.0 * (q + 1.0)), p / (3.0 * (q + 1.0)))
    };
    let forward = PauliChannel1 {
        i: 1.0 - p,
        x: pxy,
        y: pxy,
        z: pz,
    };
    let g1 = 1.0 / (1.0 - 2.0 * p);
    let inverse = PauliChannel1 {
        i: g1 * (1.0 - p),
        x: -g1 * pxy,
        y: -g1 * pxy,
        z: -g1 * pz,
    };
    Ok((forward, inverse))
}
