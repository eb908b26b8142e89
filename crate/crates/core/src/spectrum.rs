//! Spectral membership, band intervals and the band density `p(K)`.
//!
//! For one generator the secular function is a Laurent polynomial in
//! `z = e^{i alpha}`: only flux-carrying bonds depend on `alpha`, each through
//! `z^{+-flux}`. A momentum `k` lies in the spectrum iff that polynomial has a
//! root on the unit circle, i.e. iff some real `alpha` solves `F(k; alpha) = 0`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bonds::BondSystem;
use crate::error::{Error, Result};
use crate::poly;
use crate::secular::SecularWorkspace;

/// Acceptance band `||z| - 1| <= UNIT_ROOT_TOL` for unit-circle roots.
pub const UNIT_ROOT_TOL: f64 = 1e-8;

/// Polynomials whose coefficients are all below this are identically zero
/// (a flat band through this momentum).
pub const ZERO_POLYNOMIAL_TOL: f64 = 1e-12;

/// Points per generator of the alpha grid used when `J != 1`.
pub const FALLBACK_GRID: usize = 64;

/// `|F|` threshold of the grid fallback.
pub const FALLBACK_THRESHOLD: f64 = 1e-6;

/// Laurent coefficients `c_{-m}..=c_m` of `alpha -> F` in `z = e^{i alpha}`.
#[derive(Debug, Clone)]
pub struct AlphaPolynomial {
    coefficients: Vec<Complex64>,
    degree_bound: usize,
    tail: f64,
}

impl AlphaPolynomial {
    /// Samples `det(I - e^{i(base_b + alpha flux_b)} S)` at `4m + 4` equispaced
    /// `alpha` and extracts the coefficients by a discrete Fourier transform.
    fn sample(bs: &BondSystem, base: &[f64], ws: &mut SecularWorkspace) -> Self {
        let m = bs.flux_degree();
        let n = 4 * m + 4;
        let twiddle: Vec<Complex64> = (0..n)
            .map(|s| Complex64::from_polar(1.0, -TAU * s as f64 / n as f64))
            .collect();
        let base_factors: Vec<Complex64> =
            base.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
        let flux: Vec<usize> = (0..base.len())
            .map(|b| (bs.bond_flux(b)[0] as i64).rem_euclid(n as i64) as usize)
            .collect();
        let mut factors = base_factors.clone();
        let values: Vec<Complex64> = (0..n)
            .map(|s| {
                // e^{i alpha_s f} at alpha_s = 2 pi s / n is conj(twiddle[f s mod n]).
                for (b, x) in factors.iter_mut().enumerate() {
                    *x = base_factors[b] * twiddle[(flux[b] * s) % n].conj();
                }
                ws.det_from_factors(bs, &factors)
            })
            .collect();
        let coefficient = |j: i64| -> Complex64 {
            let step = j.rem_euclid(n as i64) as usize;
            let sum: Complex64 = values
                .iter()
                .enumerate()
                .map(|(s, v)| v * twiddle[(step * s) % n])
                .sum();
            sum / n as f64
        };
        let m_i = m as i64;
        let coefficients = (-m_i..=m_i).map(coefficient).collect();
        let half = (n / 2) as i64;
        let tail = (-half..half)
            .filter(|j| j.abs() > m_i)
            .map(|j| coefficient(j).norm())
            .fold(0.0, f64::max);
        Self {
            coefficients,
            degree_bound: m,
            tail,
        }
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Coefficient of `z^j`, zero outside `-m..=m`.
    pub fn coefficient(&self, j: i64) -> Complex64 {
        let m = self.degree_bound as i64;
        if j.abs() > m {
            Complex64::new(0.0, 0.0)
        } else {
            self.coefficients[(j + m) as usize]
        }
    }

    /// Coefficients `c_{-m}..=c_m`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Largest aliased coefficient beyond the degree bound; zero up to rounding.
    pub fn tail_magnitude(&self) -> f64 {
        self.tail
    }

    pub fn eval(&self, alpha: f64) -> Complex64 {
        let m = self.degree_bound as i64;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * Complex64::from_polar(1.0, (i as i64 - m) as f64 * alpha))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.norm() <= ZERO_POLYNOMIAL_TOL)
    }

    /// Roots of `z^m p(z)`.
    pub fn roots(&self) -> Vec<Complex64> {
        poly::polynomial_roots(&self.coefficients)
    }

    /// True iff some `alpha` is a root, or the polynomial vanishes identically.
    pub fn has_unit_root(&self) -> bool {
        self.is_zero() || poly::has_unit_circle_root(&self.roots(), UNIT_ROOT_TOL)
    }
}

/// Evaluates spectral membership repeatedly on one bond system.
#[derive(Debug, Clone)]
pub struct MembershipOracle<'a> {
    bs: &'a BondSystem,
    ws: SecularWorkspace,
    base: Vec<f64>,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(bs: &'a BondSystem) -> Self {
        Self {
            bs,
            ws: SecularWorkspace::new(bs),
            base: vec![0.0; bs.bond_count()],
        }
    }

    /// Whether membership is decided by the exact polynomial test.
    pub fn is_exact(&self) -> bool {
        self.bs.generators() == 1
    }

    pub fn polynomial_at_k(&mut self, k: f64) -> Result<AlphaPolynomial> {
        self.require_single_generator()?;
        for (b, p) in self.base.iter_mut().enumerate() {
            *p = k * self.bs.bond_lengths()[b];
        }
        Ok(AlphaPolynomial::sample(self.bs, &self.base, &mut self.ws))
    }

    pub fn polynomial_at_torus(&mut self, kappa: &[f64]) -> Result<AlphaPolynomial> {
        self.require_single_generator()?;
        self.set_torus_base(kappa)?;
        Ok(AlphaPolynomial::sample(self.bs, &self.base, &mut self.ws))
    }

    fn set_torus_base(&mut self, kappa: &[f64]) -> Result<()> {
        let e = self.bs.edge_count();
        if kappa.len() != e {
            return Err(Error::Dimension {
                expected: e,
                got: kappa.len(),
            });
        }
        for (b, p) in self.base.iter_mut().enumerate() {
            *p = kappa[b % e];
        }
        Ok(())
    }

    fn require_single_generator(&self) -> Result<()> {
        match self.bs.generators() {
            1 => Ok(()),
            j => Err(Error::GeneratorCount(j)),
        }
    }

    /// `k` in the spectrum.
    pub fn at_k(&mut self, k: f64) -> bool {
        for (b, p) in self.base.iter_mut().enumerate() {
            *p = k * self.bs.bond_lengths()[b];
        }
        self.decide()
    }

    /// `kappa` in the union of the zero sets over all `alpha`.
    pub fn at_torus(&mut self, kappa: &[f64]) -> Result<bool> {
        self.set_torus_base(kappa)?;
        Ok(self.decide())
    }

    fn decide(&mut self) -> bool {
        if self.bs.generators() == 1 {
            AlphaPolynomial::sample(self.bs, &self.base, &mut self.ws).has_unit_root()
        } else {
            self.grid_fallback()
        }
    }

    /// Best-effort test for `J != 1`: minimum of `|F|` over a uniform alpha grid.
    fn grid_fallback(&mut self) -> bool {
        let j = self.bs.generators();
        let total = FALLBACK_GRID.pow(j as u32);
        let mut alpha = vec![0.0; j];
        let mut phases = vec![0.0; self.base.len()];
        for idx in 0..total {
            let mut rest = idx;
            for a in alpha.iter_mut() {
                *a = TAU * (rest % FALLBACK_GRID) as f64 / FALLBACK_GRID as f64;
                rest /= FALLBACK_GRID;
            }
            for (b, p) in phases.iter_mut().enumerate() {
                *p = self.base[b] + self.bs.flux_phase(b, &alpha);
            }
            if self.ws.det_from_phases(self.bs, &phases).norm() < FALLBACK_THRESHOLD {
                return true;
            }
        }
        false
    }
}

/// Laurent polynomial of `alpha -> F(k; alpha)`; requires one generator.
pub fn alpha_polynomial(bs: &BondSystem, k: f64) -> Result<AlphaPolynomial> {
    MembershipOracle::new(bs).polynomial_at_k(k)
}

/// Whether `k` belongs to the momentum spectrum.
///
/// Exact for one generator; for `J != 1` a coarse alpha-grid search is used.
pub fn in_spectrum(bs: &BondSystem, k: f64) -> bool {
    MembershipOracle::new(bs).at_k(k)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSettings {
    pub grid_step: f64,
    pub bisect_tol: f64,
}

impl BandSettings {
    /// Grid step of one eighth of the mean secular-root spacing `pi / L_tot`,
    /// bisection tolerance `1e-10 max(1, K)`.
    pub fn defaults(total_length: f64, kmax: f64) -> Self {
        Self {
            grid_step: PI / (8.0 * total_length),
            bisect_tol: 1e-10 * kmax.max(1.0),
        }
    }

    pub fn for_system(bs: &BondSystem, kmax: f64) -> Self {
        Self::defaults(bs.total_length(), kmax)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Sorted disjoint bands covering `sigma ∩ [0, K]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandList {
    pub intervals: Vec<Band>,
    pub kmax: f64,
    pub total_measure: f64,
    /// Set when membership came from the alpha-grid fallback (`J != 1`).
    pub best_effort: bool,
}

impl BandList {
    pub fn band_count(&self) -> usize {
        self.intervals.len()
    }

    /// Measure of `sigma ∩ [0, k]`.
    pub fn measure_below(&self, k: f64) -> f64 {
        self.intervals
            .iter()
            .take_while(|b| b.lo < k)
            .map(|b| b.hi.min(k) - b.lo)
            .sum()
    }

    /// Every band edge strictly inside `(0, K)`.
    pub fn interior_edges(&self) -> Vec<f64> {
        self.intervals
            .iter()
            .flat_map(|b| [b.lo, b.hi])
            .filter(|&e| e > 0.0 && e < self.kmax)
            .collect()
    }

    pub fn contains(&self, k: f64) -> bool {
        self.intervals.iter().any(|b| b.lo <= k && k <= b.hi)
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Scans membership on a uniform `k` grid, bisects every membership change to
/// `bisect_tol` and returns the merged bands.
///
/// Bands or gaps narrower than the grid step can be missed.
pub fn band_intervals(bs: &BondSystem, kmax: f64, settings: BandSettings) -> Result<BandList> {
    check_positive("kmax", kmax)?;
    check_positive("grid step", settings.grid_step)?;
    check_positive("bisection tolerance", settings.bisect_tol)?;

    let steps = (kmax / settings.grid_step).ceil() as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| (i as f64 * settings.grid_step).min(kmax))
        .collect();
    let member: Vec<bool> = grid
        .par_iter()
        .map_init(|| MembershipOracle::new(bs), |o, &k| o.at_k(k))
        .collect();

    let changes: Vec<usize> = (0..steps).filter(|&i| member[i] != member[i + 1]).collect();
    let edges: Vec<f64> = changes
        .par_iter()
        .map_init(
            || MembershipOracle::new(bs),
            |o, &i| {
                let inside = member[i];
                let (mut lo, mut hi) = (grid[i], grid[i + 1]);
                while hi - lo > settings.bisect_tol {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if o.at_k(mid) == inside {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            },
        )
        .collect();

    let mut intervals: Vec<Band> = Vec::new();
    let mut open = if member[0] { Some(0.0) } else { None };
    for (&i, &edge) in changes.iter().zip(&edges) {
        match open.take() {
            Some(lo) => {
                debug_assert!(member[i]);
                push_merged(&mut intervals, Band { lo, hi: edge });
            }
            None => open = Some(edge),
        }
    }
    if let Some(lo) = open {
        push_merged(&mut intervals, Band { lo, hi: kmax });
    }
    let total_measure = intervals.iter().map(Band::width).sum();
    Ok(BandList {
        intervals,
        kmax,
        total_measure,
        best_effort: bs.generators() != 1,
    })
}

fn push_merged(intervals: &mut Vec<Band>, band: Band) {
    if let Some(last) = intervals.last_mut() {
        if band.lo <= last.hi {
            last.hi = last.hi.max(band.hi);
            return;
        }
    }
    intervals.push(band);
}

/// `(K_i, p(K_i))` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySeries {
    pub points: Vec<(f64, f64)>,
    pub settings: BandSettings,
}

impl DensitySeries {
    pub fn final_value(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.1)
    }
}

/// `n` checkpoints spaced geometrically from `K / 1000` to `K`.
pub fn checkpoints(kmax: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![kmax];
    }
    let first = kmax * 1e-3;
    let ratio = (kmax / first).powf(1.0 / (n - 1) as f64);
    let mut out: Vec<f64> = (0..n).map(|i| first * ratio.powi(i as i32)).collect();
    out[n - 1] = kmax;
    out
}

/// Band density `|sigma ∩ [0, K_i]| / K_i` at geometrically spaced `K_i <= K`.
pub fn density(
    bs: &BondSystem,
    kmax: f64,
    checkpoint_count: usize,
    settings: BandSettings,
) -> Result<DensitySeries> {
    if checkpoint_count == 0 {
        return Err(Error::InvalidArgument("checkpoints must be at least 1".into()));
    }
    let bands = band_intervals(bs, kmax, settings)?;
    let points = checkpoints(kmax, checkpoint_count)
        .into_iter()
        .map(|k| (k, (bands.measure_below(k) / k).clamp(0.0, 1.0)))
        .collect();
    Ok(DensitySeries { points, settings })
}
