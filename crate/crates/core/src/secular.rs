//! Secular determinant `F(k; alpha) = det(I - e^{i(A + kL)} S)` and its torus
//! form `Phi(kappa; alpha)`.

use num_complex::Complex64;

use crate::bonds::BondSystem;
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularValue {
    pub value: Complex64,
    pub magnitude: f64,
}

impl SecularValue {
    fn new(value: Complex64) -> Self {
        Self {
            value,
            magnitude: value.norm(),
        }
    }
}

/// Reusable buffers for repeated determinant evaluations on one bond system.
#[derive(Debug, Clone)]
pub struct SecularWorkspace {
    matrix: Vec<Complex64>,
    perm: Vec<usize>,
    phases: Vec<f64>,
}

impl SecularWorkspace {
    pub fn new(bs: &BondSystem) -> Self {
        let n = bs.bond_count();
        Self {
            matrix: vec![Complex64::new(0.0, 0.0); n * n],
            perm: vec![0; n],
            phases: vec![0.0; n],
        }
    }

    /// `det(I - e^{i phases} S)`.
    pub fn det_from_phases(&mut self, bs: &BondSystem, phases: &[f64]) -> Complex64 {
        let n = bs.bond_count();
        bs.fill_one_minus_u(phases, &mut self.matrix);
        linalg::determinant_in_place(&mut self.matrix, n, &mut self.perm)
    }

    /// `det(I - diag(factors) S)` for unimodular `factors`.
    pub fn det_from_factors(&mut self, bs: &BondSystem, factors: &[Complex64]) -> Complex64 {
        let n = bs.bond_count();
        bs.fill_one_minus_u_factors(factors, &mut self.matrix);
        linalg::determinant_in_place(&mut self.matrix, n, &mut self.perm)
    }

    pub fn secular(&mut self, bs: &BondSystem, k: f64, alpha: &[f64]) -> Complex64 {
        let mut phases = std::mem::take(&mut self.phases);
        for (b, p) in phases.iter_mut().enumerate() {
            *p = bs.flux_phase(b, alpha) + k * bs.bond_lengths()[b];
        }
        let det = self.det_from_phases(bs, &phases);
        self.phases = phases;
        det
    }

    pub fn phi(&mut self, bs: &BondSystem, kappa: &[f64], alpha: &[f64]) -> Complex64 {
        let e = bs.edge_count();
        let mut phases = std::mem::take(&mut self.phases);
        for (b, p) in phases.iter_mut().enumerate() {
            *p = bs.flux_phase(b, alpha) + kappa[b % e];
        }
        let det = self.det_from_phases(bs, &phases);
        self.phases = phases;
        det
    }
}

fn check_alpha(bs: &BondSystem, alpha: &[f64]) -> Result<()> {
    if alpha.len() != bs.generators() {
        return Err(Error::Dimension {
            expected: bs.generators(),
            got: alpha.len(),
        });
    }
    Ok(())
}

/// `F(k; alpha)` by LU factorisation of `I - U(k, alpha)`.
pub fn eval_secular(bs: &BondSystem, k: f64, alpha: &[f64]) -> Result<SecularValue> {
    check_alpha(bs, alpha)?;
    let mut ws = SecularWorkspace::new(bs);
    Ok(SecularValue::new(ws.secular(bs, k, alpha)))
}

/// `Phi(kappa; alpha)`: as [`eval_secular`] with `k l_e` replaced by `kappa_e`
/// on both bonds of edge `e`.
pub fn eval_phi(bs: &BondSystem, kappa: &[f64], alpha: &[f64]) -> Result<SecularValue> {
    check_alpha(bs, alpha)?;
    if kappa.len() != bs.edge_count() {
        return Err(Error::Dimension {
            expected: bs.edge_count(),
            got: kappa.len(),
        });
    }
    let mut ws = SecularWorkspace::new(bs);
    Ok(SecularValue::new(ws.phi(bs, kappa, alpha)))
}

/// Real-valued normalisation of `Phi`.
///
/// `det U = det S * e^{2 i sum_e kappa_e}` because the flux phases of a bond
/// pair cancel, and `F / sqrt(det U)` is real for unitary `U` of even size.
/// The square root is therefore explicit and needs no branch tracking. The
/// sign pattern of the result along a curve locates the zeros of `Phi`; it is
/// used for root location only, never for spectral membership.
pub fn real_phi(bs: &BondSystem, kappa: &[f64], alpha: &[f64]) -> Result<f64> {
    let f = eval_phi(bs, kappa, alpha)?.value;
    let half: f64 = kappa.iter().sum();
    let root_det_s = if bs.scattering_det_sign() > 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    Ok((f * Complex64::from_polar(1.0, -half) / root_det_s).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_example;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn lasso(l1: f64, l2: f64) -> BondSystem {
        let g = build_example("lasso").unwrap().bind(&[l1, l2]).unwrap();
        BondSystem::from_graph(&g).unwrap()
    }

    #[test]
    fn lasso_vanishes_at_full_period() {
        let bs = lasso(1.0, 1.0);
        assert!(eval_secular(&bs, TAU, &[0.0]).unwrap().magnitude < 1e-10);
    }

    #[test]
    fn lasso_nonzero_at_quarter_period() {
        let bs = lasso(1.0, 1.0);
        for a in [0.0, 0.4, 1.0, PI] {
            assert!(eval_secular(&bs, FRAC_PI_2, &[a]).unwrap().magnitude > 0.1);
        }
    }

    #[test]
    fn constant_eigenfunction_at_zero() {
        for name in ["lasso", "fig1b", "fig1c", "fig1d"] {
            let t = build_example(name).unwrap();
            let lengths: Vec<f64> = (0..t.slot_count()).map(|i| 1.0 + 0.1 * i as f64).collect();
            let bs = BondSystem::from_graph(&t.bind(&lengths).unwrap()).unwrap();
            assert!(eval_secular(&bs, 0.0, &[0.0]).unwrap().magnitude < 1e-10, "{name}");
        }
    }

    #[test]
    fn phi_on_flow_equals_secular() {
        let bs = lasso(1.21, 1.77);
        let k = 37.3;
        let kappa: Vec<f64> = bs.edge_lengths().iter().map(|l| (k * l).rem_euclid(TAU)).collect();
        let f = eval_secular(&bs, k, &[0.3]).unwrap().value;
        let p = eval_phi(&bs, &kappa, &[0.3]).unwrap().value;
        assert!((f - p).norm() < 1e-10);
    }

    #[test]
    fn phi_is_periodic() {
        let bs = lasso(1.0, 1.0);
        let a = eval_phi(&bs, &[0.4, 2.2], &[1.1]).unwrap().value;
        let b = eval_phi(&bs, &[0.4 + TAU, 2.2], &[1.1]).unwrap().value;
        let c = eval_phi(&bs, &[0.4, 2.2 - TAU], &[1.1]).unwrap().value;
        assert!((a - b).norm() < 1e-10 && (a - c).norm() < 1e-10);
        assert!(eval_phi(&bs, &[0.0, 0.0], &[0.0]).unwrap().magnitude < 1e-12);
    }

    #[test]
    fn dimension_errors() {
        let bs = lasso(1.0, 1.0);
        assert!(matches!(eval_phi(&bs, &[0.0], &[0.0]), Err(Error::Dimension { .. })));
        assert!(matches!(eval_secular(&bs, 1.0, &[]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn real_form_is_real() {
        let bs = lasso(1.0, 1.0);
        for (k1, k2, a) in [(0.3, 1.9, 0.2), (4.0, 5.5, 2.9), (1.0, 1.0, 1.0)] {
            let f = eval_phi(&bs, &[k1, k2], &[a]).unwrap().value;
            let r = real_phi(&bs, &[k1, k2], &[a]).unwrap();
            assert!((r.abs() - f.norm()).abs() < 1e-12);
        }
    }
}
