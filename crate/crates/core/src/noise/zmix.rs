use crate::error::{Error, Result};

/// In-place unnormalized Walsh–Hadamard transform; `a.len()` must be a power of two.
pub fn walsh_hadamard(a: &mut [f64]) {
    let n = a.len();
    assert!(n.is_power_of_two(), "length {n} is not a power of two");
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (a[j], a[j + h]);
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// A linear combination of Z-string channels on an ordered support.
///
/// `coeffs[b]` is the weight of the string whose local bit `i` marks a Z on
/// `support[i]`. Convex mixtures are noise channels; signed ones are
/// quasi-distributions.
#[derive(Clone, Debug, PartialEq)]
pub struct ZMixtureChannel {
    support: Vec<usize>,
    coeffs: Vec<f64>,
}

impl ZMixtureChannel {
    pub fn new(support: Vec<usize>, coeffs: Vec<f64>) -> Result<Self> {
        if support.len() > 24 {
            return Err(Error::GuardExceeded(format!("support of {} qubits", support.len())));
        }
        if coeffs.len() != 1 << support.len() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a {}-qubit support",
                coeffs.len(),
                support.len()
            )));
        }
        for (i, q) in support.iter().enumerate() {
            if support[..i].contains(q) {
                return Err(Error::InvalidArgument(format!("repeated qubit {q} in support")));
            }
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(Self { support, coeffs })
    }

    pub fn identity(support: Vec<usize>) -> Self {
        let mut coeffs = vec![0.0; 1 << support.len()];
        coeffs[0] = 1.0;
        Self::new(support, coeffs).expect("identity channel")
    }

    /// Rebuilds coefficients from eigenvalues on X-support patterns.
    pub fn from_eigenvalues(support: Vec<usize>, mut eig: Vec<f64>) -> Result<Self> {
        if eig.len() != 1 << support.len() {
            return Err(Error::InvalidArgument("eigenvalue count mismatch".into()));
        }
        walsh_hadamard(&mut eig);
        let scale = 1.0 / eig.len() as f64;
        eig.iter_mut().for_each(|x| *x *= scale);
        Self::new(support, eig)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn m(&self) -> usize {
        self.support.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, local: usize) -> f64 {
        self.coeffs[local]
    }

    /// Global qubit mask of a local string.
    pub fn global_mask(&self, local: usize) -> u64 {
        self.support
            .iter()
            .enumerate()
            .filter(|(i, _)| local >> i & 1 == 1)
            .fold(0, |m, (_, &q)| m | 1 << q)
    }

    /// Local pattern of a global mask restricted to the support.
    pub fn local_pattern(&self, mask: u64) -> usize {
        self.support
            .iter()
            .enumerate()
            .fold(0, |t, (i, &q)| t | ((mask >> q & 1) as usize) << i)
    }

    /// `(global mask, coefficient)` for every non-zero term.
    pub fn terms(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(b, &c)| (self.global_mask(b), c))
    }

    /// `λ(t) = Σ_B c(B)(−1)^{|B∩t|}` for every local pattern `t`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut e = self.coeffs.clone();
        walsh_hadamard(&mut e);
        e
    }

    pub fn gamma(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    pub fn is_convex(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|&c| c >= -tol) && (self.sum() - 1.0).abs() <= tol
    }

    /// Channel composition on a common support (XOR convolution).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.support != other.support {
            return Err(Error::InvalidArgument(
                "composing mixtures on different supports".into(),
            ));
        }
        let d = self.coeffs.len();
        let mut out = vec![0.0; d];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate() {
                out[a ^ b] += x * y;
            }
        }
        Self::new(self.support.clone(), out)
    }
}
