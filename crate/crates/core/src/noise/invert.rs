use serde::{Deserialize, Serialize};

use super::{NoiseKind, NoiseSpec, ZMixtureChannel};
use crate::error::{Error, Result};

const SINGULAR: f64 = 1e-12;

/// How a dephasing channel is inverted.
///
/// `ClosedForm` uses the textbook formulas: a product of single-qubit
/// inverses for uncorrelated noise and `γ₁((1−p)I − p/(2^m−1) Σ Z_B)` for
/// correlated noise. The latter is an exact inverse only for `m = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inversion {
    #[default]
    Exact,
    ClosedForm,
}

pub fn make_dephasing(spec: &NoiseSpec, support: &[usize]) -> Result<ZMixtureChannel> {
    let m = support.len();
    let p = spec.p();
    let coeffs = match spec.kind() {
        NoiseKind::None => return Ok(ZMixtureChannel::identity(support.to_vec())),
        NoiseKind::Impure => {
            return Err(Error::UnsupportedKind(
                "impure noise is Pauli-general; use make_impure".into(),
            ))
        }
        NoiseKind::Uncorrelated => (0..1usize << m)
            .map(|b| {
                let w = b.count_ones() as i32;
                (1.0 - p).powi(m as i32 - w) * p.powi(w)
            })
            .collect(),
        NoiseKind::Correlated => {
            let rest = if m == 0 { 0.0 } else { p / ((1usize << m) - 1) as f64 };
            (0..1usize << m).map(|b| if b == 0 { 1.0 - p } else { rest }).collect()
        }
    };
    if m == 0 {
        return Ok(ZMixtureChannel::identity(Vec::new()));
    }
    ZMixtureChannel::new(support.to_vec(), coeffs)
}

/// Exact inverse by pointwise inversion of the Walsh–Hadamard eigenvalues.
pub fn invert_z_mixture(ch: &ZMixtureChannel) -> Result<ZMixtureChannel> {
    let eig = ch.eigenvalues();
    let mut inv = Vec::with_capacity(eig.len());
    for (t, &l) in eig.iter().enumerate() {
        if l.abs() < SINGULAR {
            return Err(Error::SingularChannel {
                pattern: t,
                eigenvalue: l,
            });
        }
        inv.push(1.0 / l);
    }
    ZMixtureChannel::from_eigenvalues(ch.support().to_vec(), inv)
}

/// Inverse of the dephasing channel described by `spec` on `support`.
pub fn invert_dephasing(spec: &NoiseSpec, support: &[usize], inversion: Inversion) -> Result<ZMixtureChannel> {
    let forward = make_dephasing(spec, support)?;
    if inversion == Inversion::Exact || spec.is_noiseless() {
        return invert_z_mixture(&forward);
    }
    let p = spec.p();
    if 1.0 - 2.0 * p < SINGULAR {
        return Err(Error::SingularChannel {
            pattern: 1,
            eigenvalue: 1.0 - 2.0 * p,
        });
    }
    let g1 = 1.0 / (1.0 - 2.0 * p);
    let m = support.len();
    let coeffs = match spec.kind() {
        NoiseKind::Uncorrelated => (0..1usize << m)
            .map(|b| {
                let w = b.count_ones() as i32;
                g1.powi(m as i32) * (1.0 - p).powi(m as i32 - w) * (-p).powi(w)
            })
            .collect(),
        NoiseKind::Correlated => {
            let rest = -g1 * p / ((1usize << m) - 1) as f64;
            (0..1usize << m)
                .map(|b| if b == 0 { g1 * (1.0 - p) } else { rest })
                .collect()
        }
        _ => unreachable!("rejected by make_dephasing"),
    };
    ZMixtureChannel::new(support.to_vec(), coeffs)
}

/// Order-1 truncation `(1+p)I − pA` of the inverse of `(1−p)I + pA`.
pub fn taylor_inverse(ch: &ZMixtureChannel) -> ZMixtureChannel {
    let p = 1.0 - ch.coeff(0);
    let coeffs = ch
        .coeffs()
        .iter()
        .enumerate()
        .map(|(b, &c)| if b == 0 { 1.0 + p } else { -c })
        .collect();
    ZMixtureChannel::new(ch.support().to_vec(), coeffs).expect("same shape")
}

pub fn gamma_of(d: &ZMixtureChannel) -> f64 {
    d.gamma()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unc(p: f64) -> NoiseSpec {
        NoiseSpec::uncorrelated(p).unwrap()
    }

    #[test]
    fn dephasing_examples() {
        assert_eq!(make_dephasing(&unc(0.1), &[0]).unwrap().coeffs(), &[0.9, 0.1]);
        let c = make_dephasing(&NoiseSpec::correlated(0.1).unwrap(), &[0, 1]).unwrap();
        assert_abs_diff_eq!(c.coeff(0), 0.9);
        for b in 1..4 {
            assert_abs_diff_eq!(c.coeff(b), 0.1 / 3.0, epsilon = 1e-16);
        }
        assert_eq!(
            make_dephasing(&unc(0.0), &[0, 1]).unwrap(),
            ZMixtureChannel::identity(vec![0, 1])
        );
        assert!(matches!(
            make_dephasing(&NoiseSpec::impure(0.1, 1.0).unwrap(), &[0]),
            Err(Error::UnsupportedKind(_))
        ));
    }

    #[test]
    fn single_qubit_inverse() {
        let inv = invert_z_mixture(&make_dephasing(&unc(0.1), &[0]).unwrap()).unwrap();
        assert_abs_diff_eq!(inv.coeff(0), 1.125, epsilon = 1e-14);
        assert_abs_diff_eq!(inv.coeff(1), -0.125, epsilon = 1e-14);
        assert_abs_diff_eq!(gamma_of(&inv), 1.25, epsilon = 1e-14);
    }

    #[test]
    fn two_qubit_inverse_is_tensor_product() {
        let inv = invert_z_mixture(&make_dephasing(&unc(0.1), &[0, 1]).unwrap()).unwrap();
        assert_abs_diff_eq!(gamma_of(&inv), 1.5625, epsilon = 1e-12);
        assert_abs_diff_eq!(inv.coeff(0b11), 0.125 * 0.125, epsilon = 1e-14);
    }

    #[test]
    fn half_probability_is_singular() {
        let r = invert_dephasing(&unc(0.5), &[0], Inversion::Exact);
        assert!(matches!(r, Err(Error::SingularChannel { pattern: 1, .. })));
        let r = invert_dephasing(&unc(0.5), &[0], Inversion::ClosedForm);
        assert!(matches!(r, Err(Error::SingularChannel { .. })));
    }

    #[test]
    fn closed_forms() {
        let p = 0.1;
        let exact = invert_dephasing(&unc(p), &[0, 1, 2], Inversion::Exact).unwrap();
        let closed = invert_dephasing(&unc(p), &[0, 1, 2], Inversion::ClosedForm).unwrap();
        for (a, b) in exact.coeffs().iter().zip(closed.coeffs()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
        let cor = NoiseSpec::correlated(p).unwrap();
        let exact = invert_dephasing(&cor, &[0], Inversion::Exact).unwrap();
        let closed = invert_dephasing(&cor, &[0], Inversion::ClosedForm).unwrap();
        assert_abs_diff_eq!(exact.coeff(1), closed.coeff(1), epsilon = 1e-14);
        // m = 2: the closed form is only approximate
        let closed = invert_dephasing(&cor, &[0, 1], Inversion::ClosedForm).unwrap();
        let g1 = 1.0 / (1.0 - 2.0 * p);
        assert_abs_diff_eq!(closed.coeff(0b01), -g1 * p / 3.0, epsilon = 1e-15);
        let fwd = make_dephasing(&cor, &[0, 1]).unwrap();
        let eig = fwd.compose(&closed).unwrap().eigenvalues();
        assert!((eig[1] - 1.0).abs() > 1e-3);
    }

    #[test]
    fn taylor_examples() {
        let ch = make_dephasing(&unc(0.1), &[0]).unwrap();
        let t = taylor_inverse(&ch);
        assert_abs_diff_eq!(t.coeff(0), 1.1, epsilon = 1e-15);
        assert_abs_diff_eq!(t.coeff(1), -0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(t.gamma(), 1.2, epsilon = 1e-15);
        // composed eigenvalue on the Z sector: 0.8 * 1.2 = 0.96
        let eig = ch.compose(&t).unwrap().eigenvalues();
        assert_abs_diff_eq!(eig[1], 1.0 - 0.04, epsilon = 1e-14);
        let id = taylor_inverse(&ZMixtureChannel::identity(vec![0]));
        assert_eq!(id, ZMixtureChannel::identity(vec![0]));
    }
}
