#![allow(dead_code)]

use fqav_core::{
    close_group, AbelianVarietyModel, AffineAutomorphism, AffineMap, EllipticFactor,
    EndoBlockMatrix, FiniteGroupAction, IntMatrix, TorsionPoint,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let r = rng.random_range(1..=max_dim);
    let c = rng.random_range(1..=max_dim);
    IntMatrix::from_fn(r, c, |_, _| BigInt::from(rng.random_range(-bound..=bound)))
}

pub fn random_variety(rng: &mut ChaCha8Rng, max_n: usize) -> AbelianVarietyModel {
    let n = rng.random_range(1..=max_n);
    let pool = [
        EllipticFactor::Zeta4,
        EllipticFactor::Zeta6,
        EllipticFactor::Generic("E".into()),
        EllipticFactor::Generic("F".into()),
    ];
    // Repeats are likelier than not so that permutations occur.
    let first = pool[rng.random_range(0..pool.len())].clone();
    let factors = (0..n)
        .map(|_| {
            if rng.random_bool(0.6) {
                first.clone()
            } else {
                pool[rng.random_range(0..pool.len())].clone()
            }
        })
        .collect();
    AbelianVarietyModel::new(factors).unwrap()
}

fn units(f: &EllipticFactor) -> &'static [(i64, i64)] {
    match f {
        EllipticFactor::Zeta4 => &[(1, 0), (-1, 0), (0, 1), (0, -1)],
        EllipticFactor::Zeta6 => &[(1, 0), (-1, 0), (0, 1), (0, -1), (-1, 1), (1, -1)],
        EllipticFactor::Generic(_) => &[(1, 0), (-1, 0)],
    }
}

/// A random finite-order holonomy: a factor permutation, unit scalings and,
/// sometimes, an order-3 mixing of two equal factors.
pub fn random_holonomy(rng: &mut ChaCha8Rng, a: &AbelianVarietyModel) -> EndoBlockMatrix {
    let n = a.dim();
    let factors = a.factors();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..n {
        match classes.iter_mut().find(|c| factors[c[0]] == factors[j]) {
            Some(c) => c.push(j),
            None => classes.push(vec![j]),
        }
    }
    for c in &classes {
        let mut shuffled = c.clone();
        shuffled.shuffle(rng);
        for (src, dst) in c.iter().zip(shuffled) {
            perm[*src] = dst;
        }
    }
    let mut blocks = vec![(0, 0); n * n];
    for j in 0..n {
        let u = units(&factors[j]);
        blocks[perm[j] * n + j] = u[rng.random_range(0..u.len())];
    }
    let mut h = EndoBlockMatrix::from_i64(n, &blocks);
    if let Some(c) = classes.iter().find(|c| c.len() >= 2) {
        if rng.random_bool(0.3) {
            let (j, k) = (c[0], c[1]);
            let mut m = vec![(0, 0); n * n];
            for i in 0..n {
                m[i * n + i] = (1, 0);
            }
            m[j * n + j] = (0, 0);
            m[j * n + k] = (-1, 0);
            m[k * n + j] = (1, 0);
            m[k * n + k] = (-1, 0);
            h = EndoBlockMatrix::from_i64(n, &m).compose(&h, a);
        }
    }
    h
}

pub fn random_translation(rng: &mut ChaCha8Rng, dim: usize) -> TorsionPoint {
    let denoms = [1, 1, 1, 2, 2, 3, 4, 6];
    let fracs: Vec<(i64, i64)> = (0..dim)
        .map(|_| {
            let d = denoms[rng.random_range(0..denoms.len())];
            (rng.random_range(0..d), d)
        })
        .collect();
    TorsionPoint::from_fractions(&fracs)
}

/// Random holonomies are retried until they have finite order.
pub fn random_automorphism(rng: &mut ChaCha8Rng, a: &AbelianVarietyModel) -> AffineAutomorphism {
    loop {
        let h = random_holonomy(rng, a);
        let t = if rng.random_bool(0.5) {
            TorsionPoint::zero(a.lattice_rank())
        } else {
            random_translation(rng, a.lattice_rank())
        };
        if let Ok(g) = AffineAutomorphism::new(h, t, a) {
            return g;
        }
    }
}

/// Order of an affine map, if at most `cap`.
pub fn affine_order(g: &AffineMap, cap: usize) -> Option<usize> {
    let mut p = g.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Some(k);
        }
        p = p.compose(g);
    }
    None
}

/// A random closed group of order at most `max_order` on a variety of dimension at most `max_n`.
pub fn random_group(rng: &mut ChaCha8Rng, max_n: usize, max_order: usize) -> FiniteGroupAction {
    loop {
        let a = random_variety(rng, max_n);
        let k = rng.random_range(1..=2);
        let gens: Vec<AffineAutomorphism> = (0..k).map(|_| random_automorphism(rng, &a)).collect();
        if let Ok(g) = close_group(&a, &gens, max_order) {
            return g;
        }
    }
}

pub fn to_i64_matrix(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_i64().unwrap()).collect())
        .collect()
}

/// Least `K` with every coordinate of every point in `K⁻¹ℤ`.
pub fn grid_modulus<'a>(points: impl IntoIterator<Item = &'a TorsionPoint>) -> BigInt {
    points
        .into_iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(&p.order()))
}

/// Points `v/K` with `(I − M)·v/K ≡ a`, found by walking the whole grid `(K⁻¹ℤ/ℤ)^N`.
pub fn brute_force_fixed_points(g: &AffineMap, k: i64, limit: usize) -> (usize, Vec<TorsionPoint>) {
    let n = g.rank();
    let m = to_i64_matrix(g.matrix());
    let ka: Vec<i64> = g
        .translation()
        .coords()
        .iter()
        .map(|c| {
            let v = c * BigInt::from(k);
            assert!(v.is_integer(), "grid does not contain the translation");
            v.to_integer().to_i64().unwrap()
        })
        .collect();
    // Column j of I − M.
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|j| (0..n).map(|i| i64::from(i == j) - m[i][j]).collect())
        .collect();
    let mut v = vec![0i64; n];
    let mut w: Vec<i64> = ka.iter().map(|x| -x).collect();
    let mut count = 0;
    let mut sample = Vec::new();
    loop {
        if w.iter().all(|x| x.rem_euclid(k) == 0) {
            count += 1;
            if sample.len() < limit {
                let fr: Vec<(i64, i64)> = v.iter().map(|&x| (x, k)).collect();
                sample.push(TorsionPoint::from_fractions(&fr));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return (count, sample);
            }
            v[i] += 1;
            for r in 0..n {
                w[r] += cols[i][r];
            }
            if v[i] < k {
                break;
            }
            v[i] = 0;
            for r in 0..n {
                w[r] -= k * cols[i][r];
            }
            i += 1;
        }
    }
}

/// Compares the predicted fixed locus of `g` against the grid walk.
///
/// Returns `None` when the grid would be larger than `budget` points.
pub fn check_fixed_points_by_brute_force(g: &AffineMap, budget: u64) -> Option<Result<(), String>> {
    let fix = g.fixed_locus();
    let mut pts: Vec<&TorsionPoint> = vec![g.translation()];
    pts.extend(fix.components.iter().map(|c| c.translate()));
    let mut k = grid_modulus(pts);
    if fix.empty {
        k = k.lcm(&BigInt::from(12));
    }
    let k = k.to_i64()?;
    let size = (k as u64).checked_pow(g.rank() as u32)?;
    if size > budget {
        return None;
    }
    let (count, sample) = brute_force_fixed_points(g, k, 64);
    let predicted = if fix.empty {
        BigInt::zero()
    } else {
        BigInt::from(fix.components.len()) * BigInt::from(k).pow(fix.lattice.rank() as u32)
    };
    if BigInt::from(count) != predicted {
        return Some(Err(format!(
            "{g}: grid 1/{k} has {count} fixed points, predicted {predicted}"
        )));
    }
    for p in &sample {
        if !fix.components.iter().any(|c| c.contains(p)) {
            return Some(Err(format!("{g}: fixed point {p} outside every component")));
        }
    }
    for c in &fix.components {
        if g.apply(c.translate()) != *c.translate() {
            return Some(Err(format!(
                "{g}: representative {} is not fixed",
                c.translate()
            )));
        }
    }
    Some(Ok(()))
}

/// All 2-torsion points fixed by `g`, by enumeration.
pub fn two_torsion_fixed(g: &AffineMap) -> usize {
    brute_force_fixed_points(g, 2, 0).0
}
