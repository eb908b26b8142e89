//! Directed-edge (bond) scattering data for Kirchhoff–Neumann vertices.
//!
//! Bond `b` runs from `tail(b)` to `head(b)`. Bonds `0..E` traverse the edges
//! in their stored direction, bonds `E..2E` are the reversals, so bond `b` and
//! bond `b ± E` form a pair. `S[b][b']` is the amplitude scattered from bond
//! `b'` into bond `b`; it is nonzero only when `head(b') == tail(b)`.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::MagneticGraph;

/// Back- and forward-scattering amplitudes at a Neumann–Kirchhoff vertex of
/// degree `d`: `(-1 + 2/d, 2/d)`.
pub fn vertex_scattering(degree: usize) -> Result<(f64, f64)> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let forward = 2.0 / degree as f64;
    Ok((forward - 1.0, forward))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

#[derive(Debug, Clone)]
pub struct BondSystem {
    edges: usize,
    generators: usize,
    scattering: DMatrix<f64>,
    lengths: Vec<f64>,
    flux: Vec<i32>,
    tails: Vec<i64>,
    heads: Vec<i64>,
    index: HashMap<(i64, Direction), usize>,
    det_sign: f64,
}

impl BondSystem {
    /// Assembles `S`, the bond lengths and the bond flux rows for `g`.
    pub fn from_graph(g: &MagneticGraph) -> Result<Self> {
        g.validate().into_result()?;
        let e = g.edges.len();
        let n = 2 * e;
        let j = g.generators;
        let mut tails = Vec::with_capacity(n);
        let mut heads = Vec::with_capacity(n);
        let mut lengths = Vec::with_capacity(n);
        let mut flux = Vec::with_capacity(n * j);
        let mut index = HashMap::with_capacity(n);
        for (i, edge) in g.edges.iter().enumerate() {
            tails.push(edge.from);
            heads.push(edge.to);
            lengths.push(edge.length);
            flux.extend_from_slice(&edge.flux);
            index.insert((edge.id, Direction::Forward), i);
            index.insert((edge.id, Direction::Reverse), i + e);
        }
        for edge in &g.edges {
            tails.push(edge.to);
            heads.push(edge.from);
            lengths.push(edge.length);
            flux.extend(edge.flux.iter().map(|f| -f));
        }

        let degrees = g.degrees();
        let mut outgoing: HashMap<i64, Vec<usize>> = HashMap::new();
        for (b, &t) in tails.iter().enumerate() {
            outgoing.entry(t).or_default().push(b);
        }
        let mut scattering = DMatrix::zeros(n, n);
        for from in 0..n {
            let v = heads[from];
            let (back, forward) = vertex_scattering(degrees[&v])?;
            let reverse = (from + e) % n;
            for &to in &outgoing[&v] {
                scattering[(to, from)] = if to == reverse { back } else { forward };
            }
        }
        let det_sign = scattering.determinant().signum();
        Ok(Self {
            edges: e,
            generators: j,
            scattering,
            lengths,
            flux,
            tails,
            heads,
            index,
            det_sign,
        })
    }

    pub fn bond_count(&self) -> usize {
        2 * self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn scattering(&self) -> &DMatrix<f64> {
        &self.scattering
    }

    /// Diagonal of `L`.
    pub fn bond_lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// One length per undirected edge.
    pub fn edge_lengths(&self) -> &[f64] {
        &self.lengths[..self.edges]
    }

    pub fn total_length(&self) -> f64 {
        self.edge_lengths().iter().sum()
    }

    /// Flux row of bond `b`; the diagonal of `A` is `flux(b) . alpha`.
    pub fn bond_flux(&self, b: usize) -> &[i32] {
        &self.flux[b * self.generators..(b + 1) * self.generators]
    }

    pub fn tail(&self, b: usize) -> i64 {
        self.tails[b]
    }

    pub fn head(&self, b: usize) -> i64 {
        self.heads[b]
    }

    pub fn reverse(&self, b: usize) -> usize {
        (b + self.edges) % self.bond_count()
    }

    pub fn bond(&self, edge_id: i64, dir: Direction) -> Option<usize> {
        self.index.get(&(edge_id, dir)).copied()
    }

    /// `det S`, which is `+1` or `-1`.
    pub fn scattering_det_sign(&self) -> f64 {
        self.det_sign
    }

    /// Largest total flux degree in `alpha` for a single generator:
    /// `sum_e |flux_e|`. `F(k; alpha)` is a Laurent polynomial in `e^{i alpha}`
    /// with exponents in `-m..=m`.
    pub fn flux_degree(&self) -> usize {
        (0..self.edges)
            .map(|b| self.bond_flux(b).iter().map(|f| f.unsigned_abs() as usize).sum::<usize>())
            .sum()
    }

    /// Phase of bond `b` at momentum `k`: `alpha . flux(b) + k l_b`.
    pub fn bond_phases(&self, k: f64, alpha: &[f64]) -> Vec<f64> {
        (0..self.bond_count())
            .map(|b| self.flux_phase(b, alpha) + k * self.lengths[b])
            .collect()
    }

    /// Phase of bond `b` at a torus point: `alpha . flux(b) + kappa_e`.
    pub fn torus_phases(&self, kappa: &[f64], alpha: &[f64]) -> Vec<f64> {
        (0..self.bond_count())
            .map(|b| self.flux_phase(b, alpha) + kappa[b % self.edges])
            .collect()
    }

    pub(crate) fn flux_phase(&self, b: usize, alpha: &[f64]) -> f64 {
        self.bond_flux(b)
            .iter()
            .zip(alpha)
            .map(|(&f, &a)| f as f64 * a)
            .sum()
    }

    /// `U = e^{i(A + kL)} S`.
    pub fn unitary_at(&self, k: f64, alpha: &[f64]) -> DMatrix<Complex64> {
        self.unitary_from_phases(&self.bond_phases(k, alpha))
    }

    pub fn unitary_from_phases(&self, phases: &[f64]) -> DMatrix<Complex64> {
        let n = self.bond_count();
        DMatrix::from_fn(n, n, |r, c| {
            Complex64::from_polar(1.0, phases[r]) * self.scattering[(r, c)]
        })
    }

    /// Writes `I - e^{i phases} S` row-major into `out`.
    pub(crate) fn fill_one_minus_u(&self, phases: &[f64], out: &mut [Complex64]) {
        for (r, &phase) in phases.iter().enumerate() {
            self.fill_row(r, Complex64::from_polar(1.0, phase), out);
        }
    }

    /// As [`Self::fill_one_minus_u`] with precomputed factors `e^{i phase_b}`.
    pub(crate) fn fill_one_minus_u_factors(&self, factors: &[Complex64], out: &mut [Complex64]) {
        for (r, &p) in factors.iter().enumerate() {
            self.fill_row(r, p, out);
        }
    }

    fn fill_row(&self, r: usize, p: Complex64, out: &mut [Complex64]) {
        let n = self.bond_count();
        for c in 0..n {
            let s = self.scattering[(r, c)];
            let mut v = if s == 0.0 { Complex64::new(0.0, 0.0) } else { -p * s };
            if r == c {
                v += 1.0;
            }
            out[r * n + c] = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_example, MagneticEdge};

    fn lasso() -> BondSystem {
        let g = build_example("lasso").unwrap().bind(&[1.3, 1.7]).unwrap();
        BondSystem::from_graph(&g).unwrap()
    }

    #[test]
    fn scattering_coefficients() {
        assert_eq!(vertex_scattering(1).unwrap(), (1.0, 2.0));
        assert_eq!(vertex_scattering(2).unwrap(), (0.0, 1.0));
        let (b, f) = vertex_scattering(3).unwrap();
        assert!((b + 1.0 / 3.0).abs() < 1e-16 && (f - 2.0 / 3.0).abs() < 1e-16);
        assert!(matches!(vertex_scattering(0), Err(Error::ZeroDegree)));
    }

    #[test]
    fn lasso_matches_reference_matrix() {
        let bs = lasso();
        let t = 2.0 / 3.0;
        let o = -1.0 / 3.0;
        let expected = [
            [t, t, o, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [o, t, t, 0.0],
            [t, o, t, 0.0],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert!((bs.scattering()[(r, c)] - v).abs() <= 1e-15, "({r},{c})");
            }
        }
        assert_eq!(bs.bond_lengths(), &[1.3, 1.7, 1.3, 1.7]);
        let flux: Vec<i32> = (0..4).map(|b| bs.bond_flux(b)[0]).collect();
        assert_eq!(flux, vec![1, 0, -1, 0]);
        assert_eq!(bs.flux_degree(), 1);
    }

    #[test]
    fn single_edge_reflects_fully() {
        let g = MagneticGraph {
            name: "segment".into(),
            generators: 0,
            vertices: vec![0, 1],
            edges: vec![MagneticEdge {
                id: 1,
                from: 0,
                to: 1,
                length: 2.0,
                flux: vec![],
            }],
        };
        let bs = BondSystem::from_graph(&g).unwrap();
        assert_eq!(bs.scattering().as_slice(), &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(bs.scattering_det_sign(), -1.0);
    }

    #[test]
    fn unitary_at_zero_is_s() {
        let bs = lasso();
        let u = bs.unitary_at(0.0, &[0.0]);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(u[(r, c)], Complex64::new(bs.scattering()[(r, c)], 0.0));
            }
        }
    }

    #[test]
    fn lasso_phase_pattern() {
        let bs = lasso();
        let (k, a) = (2.3, 0.7);
        let u = bs.unitary_at(k, &[a]);
        let phases = [a + k * 1.3, k * 1.7, -a + k * 1.3, k * 1.7];
        for r in 0..4 {
            for c in 0..4 {
                let e = Complex64::from_polar(1.0, phases[r]) * bs.scattering()[(r, c)];
                assert!((u[(r, c)] - e).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn bond_index_and_reversal() {
        let bs = lasso();
        assert_eq!(bs.bond(2, Direction::Forward), Some(1));
        assert_eq!(bs.bond(2, Direction::Reverse), Some(3));
        assert_eq!(bs.reverse(1), 3);
        assert_eq!(bs.reverse(3), 1);
        assert_eq!((bs.tail(1), bs.head(1)), (1, 0));
        assert_eq!((bs.tail(3), bs.head(3)), (0, 1));
    }
}
