//! Random smooth projective toric surfaces and an independent brute-force
//! Zariski oracle over subsets of curves.

#![allow(dead_code, clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use zariski_core::{ConeOracle, Curve, DivisorClass, ExactField, Quadratic, SurfaceLattice};

pub type Q = Quadratic;

pub fn q(n: i64) -> Q {
    Q::from(n)
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A toric surface described by its fan, kept alongside the lattice so tests
/// can reason about the torus-invariant curves directly.
pub struct Toric {
    pub rays: Vec<(i64, i64)>,
    /// `D_i^2 = -a_i`.
    pub self_int: Vec<i64>,
    pub lattice: SurfaceLattice<Q>,
}

fn det(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

/// Rays in counterclockwise order, starting from the plane or a Hirzebruch
/// surface, refined by random star subdivisions of adjacent cones.
pub fn random_fan(rng: &mut ChaCha8Rng, max_rays: usize) -> Vec<(i64, i64)> {
    let mut rays = if rng.gen_bool(0.4) {
        vec![(1, 0), (0, 1), (-1, -1)]
    } else {
        let n = rng.gen_range(0..=3);
        vec![(1, 0), (0, 1), (-1, n), (0, -1)]
    };
    let target = rng.gen_range(rays.len()..=max_rays);
    while rays.len() < target {
        let i = rng.gen_range(0..rays.len());
        let j = (i + 1) % rays.len();
        let v = (rays[i].0 + rays[j].0, rays[i].1 + rays[j].1);
        rays.insert(i + 1, v);
    }
    rays
}

/// Builds the intersection lattice of the toric surface with fan `rays`.
///
/// The basis consists of all `D_i` except two adjacent ones, which are
/// eliminated through the linear relations `sum <m, v_i> D_i = 0`.
pub fn toric_lattice(rng: &mut ChaCha8Rng, rays: Vec<(i64, i64)>) -> Option<Toric> {
    let n = rays.len();
    for i in 0..n {
        let d = det(rays[i], rays[(i + 1) % n]);
        assert_eq!(d, 1, "fan must be smooth and counterclockwise");
    }
    let self_int: Vec<i64> = (0..n)
        .map(|i| {
            let prev = rays[(i + n - 1) % n];
            let next = rays[(i + 1) % n];
            let s = (prev.0 + next.0, prev.1 + next.1);
            let v = rays[i];
            // s = a v
            if v.0 != 0 {
                -(s.0 / v.0)
            } else {
                -(s.1 / v.1)
            }
        })
        .collect();
    let meet = |i: usize, k: usize| -> i64 {
        if i == k {
            self_int[i]
        } else if (i + 1) % n == k || (k + 1) % n == i {
            1
        } else {
            0
        }
    };

    let j = rng.gen_range(0..n);
    let j1 = (j + 1) % n;
    let basis: Vec<usize> = (0..n).filter(|&i| i != j && i != j1).collect();
    let r = basis.len();
    // dual basis (m1, m2) to (v_j, v_j1): rows of the inverse of [v_j v_j1]
    let (a, b) = rays[j];
    let (c, d) = rays[j1];
    let m1 = (d, -c);
    let m2 = (-b, a);
    let pair = |m: (i64, i64), v: (i64, i64)| m.0 * v.0 + m.1 * v.1;
    let class_of = |i: usize| -> Vec<i64> {
        let mut coeffs = vec![0; r];
        if let Some(pos) = basis.iter().position(|&k| k == i) {
            coeffs[pos] = 1;
            return coeffs;
        }
        let m = if i == j { m1 } else { m2 };
        for (pos, &k) in basis.iter().enumerate() {
            coeffs[pos] = -pair(m, rays[k]);
        }
        coeffs
    };
    let gram: Vec<Vec<Q>> = basis
        .iter()
        .map(|&i| basis.iter().map(|&k| q(meet(i, k))).collect())
        .collect();
    let labels: Vec<String> = (0..n).map(|i| format!("D{i}")).collect();
    let curves: Vec<Curve<Q>> = (0..n)
        .map(|i| Curve::new(labels[i].clone(), DivisorClass::from_ints(&class_of(i))))
        .collect();
    let generators: Vec<DivisorClass<Q>> = curves.iter().map(|c| c.class.clone()).collect();

    // an ample class is a positive combination of the D_i meeting every D_i
    // positively
    let mut ample = None;
    for _ in 0..2000 {
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
        let degree_on = |k: usize| -> i64 { (0..n).map(|i| weights[i] * meet(i, k)).sum() };
        if (0..n).all(|k| degree_on(k) > 0) {
            let mut coeffs = vec![0i64; r];
            for i in 0..n {
                for (pos, c) in class_of(i).into_iter().enumerate() {
                    coeffs[pos] += weights[i] * c;
                }
            }
            ample = Some(DivisorClass::from_ints(&coeffs));
            break;
        }
    }
    let lattice = SurfaceLattice::new(
        basis.iter().map(|&i| labels[i].clone()).collect(),
        gram,
        ConeOracle::Curves { generators, curves },
        ample?,
    )
    .expect("toric lattice is well formed");
    Some(Toric {
        rays,
        self_int,
        lattice,
    })
}

pub fn random_toric(rng: &mut ChaCha8Rng, max_rays: usize) -> Toric {
    loop {
        let rays = random_fan(rng, max_rays);
        if let Some(t) = toric_lattice(rng, rays) {
            return t;
        }
    }
}

/// Random nonnegative combination of the lattice's curves, with small
/// rational weights. Never zero.
pub fn random_effective(rng: &mut ChaCha8Rng, lattice: &SurfaceLattice<Q>) -> DivisorClass<Q> {
    let curves = lattice.curves();
    loop {
        let mut x = DivisorClass::zero(lattice.rank());
        for c in curves {
            if rng.gen_bool(0.5) {
                let w = ratio(rng.gen_range(0..=6), rng.gen_range(1..=3));
                x = x.add_scaled(&w, &c.class);
            }
        }
        if !x.is_zero() {
            return x;
        }
    }
}

// ---------------------------------------------------------------------------
// Independent linear algebra over BigRational.

pub type Mat = Vec<Vec<BigRational>>;

pub fn to_rational(x: &Q) -> BigRational {
    x.to_rational().expect("oracle expects rational data")
}

pub fn det_rational(m: &Mat) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut result = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            result = -result;
        }
        result *= a[col][col].clone();
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    result
}

/// Sylvester's criterion on `-M`.
pub fn negative_definite(m: &Mat) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Mat = m[..k]
            .iter()
            .map(|row| row[..k].iter().map(|x| -x.clone()).collect())
            .collect();
        det_rational(&minor).is_positive()
    })
}

/// Cramer's rule.
pub fn solve_cramer(m: &Mat, rhs: &[BigRational]) -> Vec<BigRational> {
    let d = det_rational(m);
    (0..m.len())
        .map(|k| {
            let replaced: Mat = m
                .iter()
                .zip(rhs)
                .map(|(row, b)| {
                    let mut row = row.clone();
                    row[k] = b.clone();
                    row
                })
                .collect();
            det_rational(&replaced) / &d
        })
        .collect()
}

pub struct OracleAnswer {
    pub support: Vec<usize>,
    pub coeffs: Vec<BigRational>,
    pub positive: Vec<BigRational>,
}

/// Enumerates every subset of the declared curves and returns all that yield
/// a valid Zariski decomposition of `theta`.
pub fn brute_force_zariski(lattice: &SurfaceLattice<Q>, theta: &DivisorClass<Q>) -> Vec<OracleAnswer> {
    let gram: Mat = lattice
        .gram()
        .iter()
        .map(|row| row.iter().map(to_rational).collect())
        .collect();
    let vec_of = |c: &DivisorClass<Q>| -> Vec<BigRational> { c.coeffs().iter().map(to_rational).collect() };
    let dot = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..x.len() {
            for k in 0..y.len() {
                s += &x[i] * &gram[i][k] * &y[k];
            }
        }
        s
    };
    let curves: Vec<Vec<BigRational>> = lattice.curves().iter().map(|c| vec_of(&c.class)).collect();
    let generators: Vec<Vec<BigRational>> = match lattice.cone() {
        ConeOracle::Curves { generators, .. } => generators.iter().map(vec_of).collect(),
        ConeOracle::Quadric { .. } => panic!("oracle needs curve mode"),
    };
    let theta = vec_of(theta);
    let m = curves.len();
    let mut answers = Vec::new();
    for mask in 0u32..(1 << m) {
        let support: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Mat = support
            .iter()
            .map(|&i| support.iter().map(|&k| dot(&curves[i], &curves[k])).collect())
            .collect();
        if !support.is_empty() && !negative_definite(&sub) {
            continue;
        }
        let rhs: Vec<BigRational> = support.iter().map(|&i| dot(&theta, &curves[i])).collect();
        let coeffs = if support.is_empty() {
            Vec::new()
        } else {
            solve_cramer(&sub, &rhs)
        };
        if coeffs.iter().any(|c| !c.is_positive()) {
            continue;
        }
        let mut positive = theta.clone();
        for (c, &i) in coeffs.iter().zip(&support) {
            for (p, x) in positive.iter_mut().zip(&curves[i]) {
                *p -= c * x;
            }
        }
        if generators.iter().any(|g| dot(&positive, g).is_negative()) {
            continue;
        }
        answers.push(OracleAnswer {
            support,
            coeffs,
            positive,
        });
    }
    answers
}

pub fn rational_vec(c: &DivisorClass<Q>) -> Vec<BigRational> {
    c.coeffs().iter().map(to_rational).collect()
}

pub fn rational(n: i64) -> BigRational {
    big(n)
}
