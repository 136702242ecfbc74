//! Test-side oracles built on textbook Gauss-Jordan over `BigRational`,
//! sharing no code with the library's fraction-free elimination.
#![allow(dead_code, clippy::needless_range_loop)]

use gridbasis::{GridShape, Point, PointSet, Rational};
use num_traits::{One, Zero};

/// Rank by plain Gauss-Jordan with rational division.
pub fn naive_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> =
        rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = Rational::one() / m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[rank][j].clone() * f.clone();
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Is `A x = b` consistent? Compares rank of `A` and `[A | b]`.
pub fn naive_consistent(a: &[Vec<i64>], b: &[i64]) -> bool {
    let aug: Vec<Vec<i64>> = a.iter().zip(b).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect();
    naive_rank(a) == naive_rank(&aug)
}

/// Incidence rows of `m` built directly from the definition.
pub fn naive_incidence(m: &PointSet) -> Vec<Vec<i64>> {
    let sides = m.shape().sides();
    let offsets: Vec<usize> = sides.iter().scan(0, |acc, &s| { let o = *acc; *acc += s as usize; Some(o) }).collect();
    let width: usize = sides.iter().map(|&s| s as usize).sum();
    m.points()
        .iter()
        .map(|p| {
            let mut r = vec![0; width];
            for (a, &x) in p.0.iter().enumerate() {
                r[offsets[a] + x as usize - 1] = 1;
            }
            r
        })
        .collect()
}

/// Basic iff every indicator `1_p` splits into coordinate functions, i.e.
/// every system `A_M t = e_p` is consistent.
pub fn indicator_oracle(m: &PointSet) -> bool {
    let a = naive_incidence(m);
    (0..m.len()).all(|i| {
        let mut e = vec![0; m.len()];
        e[i] = 1;
        naive_consistent(&a, &e)
    })
}

pub fn subset(shape: &GridShape, all: &[Point], mask: u64) -> PointSet {
    let pts = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
    PointSet::new(shape.clone(), pts).unwrap()
}

/// Every subset of a grid with at most 20 points.
pub fn all_subsets(n: u32, d: usize) -> Vec<PointSet> {
    let shape = GridShape::uniform(n, d).unwrap();
    let all = shape.all_points();
    assert!(all.len() <= 20);
    (0..1u64 << all.len()).map(|mask| subset(&shape, &all, mask)).collect()
}

/// Left kernel of `rows` by Gauss-Jordan on the transpose; each vector is
/// scaled to coprime integers with a positive leading entry.
pub fn naive_left_kernel(rows: &[Vec<i64>]) -> Vec<Vec<gridbasis::Int>> {
    use gridbasis::Int;
    use num_integer::Integer;
    let k = rows.len();
    let w = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> =
        (0..w).map(|c| (0..k).map(|r| Rational::from_integer(rows[r][c].into())).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..k {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = Rational::one() / m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..k {
                    let v = m[rank][j].clone() * f.clone();
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..k)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Rational::zero(); k];
            x[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[r][free].clone();
            }
            let den = x.iter().fold(Int::one(), |l, v| l.lcm(v.denom()));
            let mut ints: Vec<Int> = x.iter().map(|v| (v * Rational::from_integer(den.clone())).to_integer()).collect();
            let g = ints.iter().fold(Int::zero(), |g, v| g.gcd(v));
            let lead_negative = ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v < &Int::zero());
            for v in ints.iter_mut() {
                *v = v.clone() / g.clone();
                if lead_negative {
                    *v = -v.clone();
                }
            }
            ints
        })
        .collect()
}
