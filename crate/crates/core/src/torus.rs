//! The edge-phase torus: the linear flow `kappa(k) = k l mod 2pi`, membership
//! in the union `Sigma` of the secular zero sets over all quasi-momenta, and
//! Monte Carlo estimation of the relative volume of `Sigma`.
//!
//! For rationally independent lengths the flow equidistributes on the whole
//! torus, so the band density equals `vol(Sigma) / (2pi)^E`.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::bonds::BondSystem;
use crate::error::{Error, Result};
use crate::sampling::{chunks, TorusSampler};
use crate::spectrum::MembershipOracle;

const CHUNK: u64 = 1 << 14;

/// Point of `[0, 2pi)^E`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint(Vec<f64>);

impl TorusPoint {
    /// Reduces every coordinate modulo `2pi`.
    pub fn wrapped(kappa: Vec<f64>) -> Self {
        Self(kappa.into_iter().map(wrap).collect())
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `-kappa mod 2pi`.
    pub fn reflected(&self) -> Self {
        Self::wrapped(self.0.iter().map(|x| -x).collect())
    }
}

fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `kappa_e = k l_e mod 2pi`.
pub fn flow_point(lengths: &[f64], k: f64) -> TorusPoint {
    TorusPoint(lengths.iter().map(|l| wrap(k * l)).collect())
}

/// Whether `p` lies in `Sigma`, i.e. `Phi(p; alpha) = 0` for some `alpha`.
pub fn sigma_membership(bs: &BondSystem, p: &TorusPoint) -> Result<bool> {
    MembershipOracle::new(bs).at_torus(p.coords())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl VolumeEstimate {
    pub fn from_hits(hits: u64, samples: u64, seed: u64) -> Self {
        let estimate = hits as f64 / samples as f64;
        Self {
            estimate,
            standard_error: (estimate * (1.0 - estimate) / samples as f64).sqrt(),
            samples,
            seed,
        }
    }
}

/// Fraction of uniform torus samples that lie in `Sigma`.
///
/// Reproducible for fixed `(samples, seed)` regardless of thread count.
pub fn mc_volume(bs: &BondSystem, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let sampler = TorusSampler::new(seed, bs.edge_count());
    let hits: u64 = chunks(samples, CHUNK)
        .into_par_iter()
        .map(|(start, count)| {
            let mut oracle = MembershipOracle::new(bs);
            let mut hits = 0u64;
            sampler.for_each_in(start, count, |p| {
                if oracle.at_torus(p).expect("sampler dimension matches edge count") {
                    hits += 1;
                }
            });
            hits
        })
        .sum();
    Ok(VolumeEstimate::from_hits(hits, samples, seed))
}

/// Integer relations `M l = 0` among the edge lengths.
///
/// Only carried as metadata: volumes on the flat submanifold `{M x = 0}` are
/// not computed, rationally dependent lengths go through the flow-based density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDependency {
    rows: Vec<Vec<i64>>,
}

impl RationalDependency {
    pub fn new(rows: Vec<Vec<i64>>, edges: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != edges) {
            return Err(Error::Dimension {
                expected: edges,
                got: r.len(),
            });
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..m.len() {
                let (a, b) = (m[rank][c], m[r][c]);
                if b == 0 {
                    continue;
                }
                let pivot_row = m[rank].clone();
                for (x, &p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = *x * a - p * b;
                }
                let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Dimension of the closed flow orbit, `E - rank M`.
    pub fn flow_dimension(&self, edges: usize) -> usize {
        edges - self.rank()
    }

    /// Whether `lengths` satisfy every relation to relative tolerance `tol`.
    pub fn satisfied_by(&self, lengths: &[f64], tol: f64) -> bool {
        self.rows.iter().all(|r| {
            let (sum, scale) = r.iter().zip(lengths).fold((0.0, 0.0), |(s, a), (&c, &l)| {
                (s + c as f64 * l, a + (c as f64 * l).abs())
            });
            sum.abs() <= tol * scale.max(1.0)
        })
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
