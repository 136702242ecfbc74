//! Decomposing annihilation functions of the full grid into rectangles.
//!
//! A simple annihilation function is `1_P - 1_Q + 1_R - 1_S` on the
//! consecutive vertices of an axis-parallel rectangle. Every annihilation
//! function of `[n]^d` is an integer combination of these; this module
//! produces such a combination and checks given ones.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::grid::{GridShape, Point, PointSet, WeightFunction};
use crate::Int;

/// `coeff * (1_P - 1_Q + 1_R - 1_S)` on an axis-parallel rectangle.
///
/// The rectangle spans `axes.0 x axes.1` with `values[k] = (a, b)`, `a < b`,
/// and all other coordinates pinned by `fixed`. Its vertices are
/// `P = (a_i, a_j)`, `Q = (a_i, b_j)`, `R = (b_i, b_j)`, `S = (b_i, a_j)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RectangleTerm {
    pub axes: (usize, usize),
    pub values: [(u32, u32); 2],
    pub fixed: BTreeMap<usize, u32>,
    pub coeff: Int,
}

/// `1_P - 1_Q + 1_R - 1_S` with unit coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleFunction {
    pub vertices: [Point; 4],
}

impl RectangleTerm {
    fn corner(&self, d: usize, vi: u32, vj: u32) -> Point {
        let mut c = vec![0; d];
        for (&axis, &v) in &self.fixed {
            c[axis - 1] = v;
        }
        c[self.axes.0 - 1] = vi;
        c[self.axes.1 - 1] = vj;
        Point(c)
    }

    /// `[P, Q, R, S]`.
    pub fn vertices(&self, d: usize) -> [Point; 4] {
        let [(ai, bi), (aj, bj)] = self.values;
        [self.corner(d, ai, aj), self.corner(d, ai, bj), self.corner(d, bi, bj), self.corner(d, bi, aj)]
    }

    pub fn validate(&self, shape: &GridShape) -> Result<()> {
        let d = shape.d();
        let (i, j) = self.axes;
        if !(1 <= i && i < j && j <= d) {
            return Err(Error::Range(format!("rectangle axes ({i}, {j}) need 1 <= i < j <= {d}")));
        }
        for (k, &axis) in [i, j].iter().enumerate() {
            let (a, b) = self.values[k];
            if !(1 <= a && a < b && b <= shape.side(axis)) {
                return Err(Error::Range(format!(
                    "rectangle values ({a}, {b}) on axis {axis} need 1 <= a < b <= {}",
                    shape.side(axis)
                )));
            }
        }
        let others: Vec<usize> = (1..=d).filter(|&a| a != i && a != j).collect();
        let keys: Vec<usize> = self.fixed.keys().copied().collect();
        if keys != others {
            return Err(Error::Range(format!(
                "rectangle must fix exactly the axes {others:?}, got {keys:?}"
            )));
        }
        for (&axis, &v) in &self.fixed {
            if v == 0 || v > shape.side(axis) {
                return Err(Error::Range(format!(
                    "fixed coordinate {v} on axis {axis} outside [1, {}]",
                    shape.side(axis)
                )));
            }
        }
        if self.coeff.is_zero() {
            return Err(Error::Range("rectangle coefficient must be nonzero".into()));
        }
        Ok(())
    }

    /// `|coeff|` unit simple functions; a negative coefficient rotates the
    /// vertex order, since `-f_PQRS = f_QRSP`.
    pub fn expand(&self, d: usize) -> Vec<SimpleFunction> {
        let [p, q, r, s] = self.vertices(d);
        let vertices = if self.coeff.is_negative() { [q, r, s, p] } else { [p, q, r, s] };
        let copies = self.coeff.abs().to_string().parse::<usize>().expect("coefficient fits usize");
        vec![SimpleFunction { vertices }; copies]
    }
}

impl SimpleFunction {
    pub fn validate(&self, shape: &GridShape) -> Result<()> {
        for v in &self.vertices {
            shape.check_point(v)?;
        }
        let differing = |a: &Point, b: &Point| {
            a.coords().iter().zip(b.coords()).filter(|(x, y)| x != y).count()
        };
        let [p, q, r, s] = &self.vertices;
        let sides = [differing(p, q), differing(q, r), differing(r, s), differing(s, p)];
        if sides != [1; 4] || differing(p, r) != 2 || differing(q, s) != 2 {
            return Err(Error::Range("vertices do not form an axis-parallel rectangle".into()));
        }
        Ok(())
    }
}

fn accumulate(acc: &mut BTreeMap<Point, Int>, p: Point, delta: &Int) {
    let e = acc.entry(p).or_insert_with(Int::zero);
    *e += delta;
}

/// Pointwise sum of the terms, on the union of their vertices.
pub fn eval_rectangles(terms: &[RectangleTerm], shape: &GridShape) -> Result<WeightFunction<Int>> {
    let mut acc = BTreeMap::new();
    for t in terms {
        t.validate(shape)?;
        let [p, q, r, s] = t.vertices(shape.d());
        let neg = -t.coeff.clone();
        accumulate(&mut acc, p, &t.coeff);
        accumulate(&mut acc, q, &neg);
        accumulate(&mut acc, r, &t.coeff);
        accumulate(&mut acc, s, &neg);
    }
    WeightFunction::from_pairs(shape.clone(), acc.into_iter().collect())
}

/// Pointwise sum of unit simple functions.
pub fn eval_simple(terms: &[SimpleFunction], shape: &GridShape) -> Result<WeightFunction<Int>> {
    let mut acc = BTreeMap::new();
    let one = Int::from(1);
    let minus = Int::from(-1);
    for t in terms {
        t.validate(shape)?;
        let [p, q, r, s] = t.vertices.clone();
        accumulate(&mut acc, p, &one);
        accumulate(&mut acc, q, &minus);
        accumulate(&mut acc, r, &one);
        accumulate(&mut acc, s, &minus);
    }
    WeightFunction::from_pairs(shape.clone(), acc.into_iter().collect())
}

/// Number of grid points with at least two coordinates above 1; bounds the
/// length of [`decompose_into_rectangles`] output.
pub fn term_bound(shape: &GridShape) -> usize {
    shape.all_points().iter().filter(|p| p.coords().iter().filter(|&&x| x > 1).count() >= 2).count()
}

/// Writes an annihilation function of the grid (zero off `g`'s base) as a
/// sum of rectangle terms.
///
/// Grid points with at least two coordinates above 1 are visited by
/// decreasing count of such coordinates, lexicographically within a count.
/// At a point `P` with value `c != 0`, let `i < j` be the two smallest axes
/// where `P` exceeds 1; the rectangle `P, P[x_i=1], P[x_i=x_j=1], P[x_j=1]`
/// with coefficient `c` is recorded and subtracted. That zeroes `P` and
/// only touches points with fewer coordinates above 1. What remains lives
/// on the cross through `(1, ..., 1)`, where the layer sums force zero.
pub fn decompose_into_rectangles(g: &WeightFunction<Int>) -> Result<Vec<RectangleTerm>> {
    if let Some((layer, sum)) = g.first_violation() {
        return Err(Error::NotAnnihilating { layer, sum: sum.to_string() });
    }
    let shape = g.base().shape().clone();
    let d = shape.d();
    let full = PointSet::full(shape.clone());
    let mut values: Vec<Int> =
        full.points().iter().map(|p| g.value_at(p).cloned().unwrap_or_else(Int::zero)).collect();
    let index = |p: &Point| full.index_of(p).expect("grid point");

    let above = |p: &Point| p.coords().iter().filter(|&&x| x > 1).count();
    let mut order: Vec<usize> = (0..full.len()).filter(|&k| above(&full.points()[k]) >= 2).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (&full.points()[a], &full.points()[b]);
        above(pb).cmp(&above(pa)).then_with(|| pa.cmp(pb))
    });

    let mut terms = Vec::new();
    for k in order {
        let c = values[k].clone();
        if c.is_zero() {
            continue;
        }
        let p = full.points()[k].clone();
        let mut big_axes = (1..=d).filter(|&a| p.coord(a) > 1);
        let i = big_axes.next().expect("two axes above 1");
        let j = big_axes.next().expect("two axes above 1");
        let fixed = (1..=d).filter(|&a| a != i && a != j).map(|a| (a, p.coord(a))).collect();
        let term = RectangleTerm { axes: (i, j), values: [(1, p.coord(i)), (1, p.coord(j))], fixed, coeff: c.clone() };
        let [pp, q, r, s] = term.vertices(d);
        values[index(&pp)] -= &c;
        values[index(&q)] += &c;
        values[index(&r)] -= &c;
        values[index(&s)] += &c;
        terms.push(term);
    }
    // annihilation forces the residual on the cross to vanish
    assert!(values.iter().all(Zero::is_zero), "residual on the cross must be zero");
    Ok(terms)
}

/// True iff the terms sum to `g` (zero-extended) at every grid point.
pub fn verify_decomposition(g: &WeightFunction<Int>, terms: &[RectangleTerm]) -> bool {
    let shape = g.base().shape();
    match eval_rectangles(terms, shape) {
        Ok(sum) => sum.extend_to_grid() == g.extend_to_grid(),
        Err(_) => false,
    }
}
