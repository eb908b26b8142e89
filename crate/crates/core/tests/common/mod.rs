#![allow(dead_code)]

use band_density::graph::{example_template, ExampleName, MagneticEdge, MagneticGraph};
use band_density::sampling::random_lengths;
use band_density::BondSystem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Example bound to seeded uniform lengths in [1, 2).
pub fn example(name: ExampleName, seed: u64) -> BondSystem {
    let t = example_template(name);
    let g = t.bind(&random_lengths(t.slot_count(), seed)).unwrap();
    BondSystem::from_graph(&g).unwrap()
}

pub fn lasso(l1: f64, l2: f64) -> BondSystem {
    let g = example_template(ExampleName::Lasso).bind(&[l1, l2]).unwrap();
    BondSystem::from_graph(&g).unwrap()
}

/// Connected one-generator magnetic graph with five edges: a random spanning
/// tree plus random extra edges (loops and parallel edges allowed) and random
/// fluxes in -2..=2.
pub fn random_graph(seed: u64) -> MagneticGraph {
    const EDGES: usize = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: usize = rng.random_range(1..=EDGES + 1);
    let mut pairs: Vec<(i64, i64)> = (1..n)
        .map(|v| (rng.random_range(0..v) as i64, v as i64))
        .collect();
    while pairs.len() < EDGES {
        pairs.push((rng.random_range(0..n) as i64, rng.random_range(0..n) as i64));
    }
    let edges = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let (from, to) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
            MagneticEdge {
                id: i as i64 + 1,
                from,
                to,
                length: rng.random_range(1.0..2.0),
                flux: vec![rng.random_range(-2..=2)],
            }
        })
        .collect();
    MagneticGraph {
        name: format!("random-{seed}"),
        generators: 1,
        vertices: (0..n as i64).collect(),
        edges,
    }
}

/// Sign changes of `f` on a uniform grid of `steps` cells over `[a, b]`,
/// each refined by bisection to `tol`.
pub fn sign_change_roots(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize, tol: f64) -> Vec<f64> {
    let h = (b - a) / steps as f64;
    let mut roots = Vec::new();
    let mut x0 = a;
    let mut f0 = f(a);
    for i in 1..=steps {
        let x1 = a + i as f64 * h;
        let f1 = f(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            let (mut lo, mut hi, mut flo) = (x0, x1, f0);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm * flo < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}
