//! Named extremal families, each with the annihilation function that
//! witnesses non-basicness where there is one.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grid::{GridShape, Point, PointSet, WeightFunction};
use crate::Int;

/// Which family a set came from, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cross { n: u32, d: usize },
    Staircase { n: u32, d: usize },
    Unbounded { m: u32 },
    CrossPlusPoint { n: u32, d: usize, x: Point },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Cross { .. } => "cross",
            Family::Staircase { .. } => "staircase",
            Family::Unbounded { .. } => "unbounded",
            Family::CrossPlusPoint { .. } => "cross_plus_point",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cross { n, d } => write!(f, "cross(n={n}, d={d})"),
            Family::Staircase { n, d } => write!(f, "staircase(n={n}, d={d})"),
            Family::Unbounded { m } => write!(f, "unbounded(m={m})"),
            Family::CrossPlusPoint { n, d, x } => write!(f, "cross_plus_point(n={n}, d={d}, x={x})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFamily {
    pub family: Family,
    pub set: PointSet,
    /// Defined on all of `set`; `None` for basic families.
    pub claimed_annihilation: Option<WeightFunction<Int>>,
}

impl NamedFamily {
    pub fn tag(&self) -> &'static str {
        self.family.tag()
    }

    /// The claimed function lives on `set` and sums to zero on every layer.
    pub fn verify_claim(&self) -> bool {
        match &self.claimed_annihilation {
            None => true,
            Some(f) => f.base() == &self.set && f.is_annihilation(),
        }
    }
}

fn ones(d: usize) -> Vec<u32> {
    vec![1; d]
}

fn arm_point(d: usize, axis: usize, value: u32) -> Point {
    let mut c = ones(d);
    c[axis - 1] = value;
    Point(c)
}

/// The `d` coordinate arms through `(1, ..., 1)`; basic, `dn - (d-1)` points.
pub fn cross_set(n: u32, d: usize) -> Result<NamedFamily> {
    let shape = GridShape::uniform(n, d)?;
    let mut points = vec![Point(ones(d))];
    for axis in 1..=d {
        points.extend((2..=n).map(|k| arm_point(d, axis, k)));
    }
    Ok(NamedFamily {
        family: Family::Cross { n, d },
        set: PointSet::new(shape, points)?,
        claimed_annihilation: None,
    })
}

/// `2n` points: `(k,...,k)`, `(k+1,k,...,k)` for `k < n`, then `(n,...,n)`
/// and `(1,n,...,n)`, with the alternating ±1 annihilation.
pub fn staircase_set(n: u32, d: usize) -> Result<NamedFamily> {
    if n < 2 || d < 2 {
        return Err(Error::Precondition(format!("staircase needs n >= 2 and d >= 2, got n={n}, d={d}")));
    }
    let shape = GridShape::uniform(n, d)?;
    let mut pairs = Vec::with_capacity(2 * n as usize);
    for k in 1..n {
        let diag = Point(vec![k; d]);
        pairs.push((diag.with_coord(1, k + 1), Int::from(-1)));
        pairs.push((diag, Int::from(1)));
    }
    let top = Point(vec![n; d]);
    pairs.push((top.with_coord(1, 1), Int::from(-1)));
    pairs.push((top, Int::from(1)));
    let f = WeightFunction::from_pairs(shape, pairs)?;
    Ok(NamedFamily {
        family: Family::Staircase { n, d },
        set: f.base().clone(),
        claimed_annihilation: Some(f),
    })
}

/// The cross plus a point `x` with every coordinate above 1. Annihilated by
/// `(d-1)·1_(1,...,1) + 1_x - Σ_k 1_(arm point with x_k on axis k)`.
pub fn cross_plus_point(n: u32, d: usize, x: &Point) -> Result<NamedFamily> {
    if d < 2 {
        return Err(Error::Precondition(format!("cross_plus_point needs d >= 2, got d={d}")));
    }
    let cross = cross_set(n, d)?;
    let shape = cross.set.shape().clone();
    shape.check_point(x)?;
    if let Some(axis) = x.coords().iter().position(|&c| c <= 1) {
        return Err(Error::Precondition(format!(
            "coordinate x{} of {x} must exceed 1",
            axis + 1
        )));
    }
    let mut points = cross.set.points().to_vec();
    points.push(x.clone());
    let set = PointSet::new(shape, points)?;
    let mut values = vec![Int::zero(); set.len()];
    let at = |p: &Point| set.index_of(p).expect("point of the constructed set");
    values[at(&Point(ones(d)))] = Int::from(d as i64 - 1);
    values[at(x)] = Int::from(1);
    for axis in 1..=d {
        values[at(&arm_point(d, axis, x.coord(axis)))] = Int::from(-1);
    }
    let f = WeightFunction::new(set.clone(), values)?;
    Ok(NamedFamily {
        family: Family::CrossPlusPoint { n, d, x: x.clone() },
        set,
        claimed_annihilation: Some(f),
    })
}

/// Grid side used by [`unbounded_family`].
pub fn unbounded_side(m: u32) -> u32 {
    3 * m + 2
}

/// `6m + 2` points in `[3m+2]^3` whose irreducible annihilation reaches `m`.
///
/// Embedding: `a_k = k`, `b_k = m + k`, `c_k = 2m + k`, `d = 3m + 1`,
/// `e = 3m + 2`, indices cyclic mod `m`.
pub fn unbounded_family(m: u32) -> Result<NamedFamily> {
    if m < 1 {
        return Err(Error::Precondition("unbounded family needs m >= 1".into()));
    }
    let shape = GridShape::uniform(unbounded_side(m), 3)?;
    let a = |k: u32| (k - 1) % m + 1;
    let b = |k: u32| m + a(k);
    let c = |k: u32| 2 * m + a(k);
    let (dv, ev) = (3 * m + 1, 3 * m + 2);
    let one = Int::from(1);
    let minus = Int::from(-1);
    let mut pairs = Vec::with_capacity(6 * m as usize + 2);
    for k in 1..=m {
        pairs.push((Point(vec![dv, a(k), a(k)]), one.clone()));
        pairs.push((Point(vec![b(k), dv, b(k)]), one.clone()));
        pairs.push((Point(vec![c(k), c(k), dv]), one.clone()));
        pairs.push((Point(vec![ev, a(k), a(k + 1)]), minus.clone()));
        pairs.push((Point(vec![b(k), ev, b(k + 1)]), minus.clone()));
        pairs.push((Point(vec![c(k), c(k + 1), ev]), minus.clone()));
    }
    pairs.push((Point(vec![dv; 3]), -Int::from(m)));
    pairs.push((Point(vec![ev; 3]), Int::from(m)));
    let f = WeightFunction::from_pairs(shape, pairs)?;
    Ok(NamedFamily {
        family: Family::Unbounded { m },
        set: f.base().clone(),
        claimed_annihilation: Some(f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{greedy_singleton_filter, irreducible_annihilation, is_basic, is_minimal_nonbasic};

    fn pts(f: &NamedFamily) -> Vec<Vec<u32>> {
        f.set.points().iter().map(|p| p.0.clone()).collect()
    }

    #[test]
    fn cross_sizes() {
        assert_eq!(cross_set(4, 3).unwrap().set.len(), 10);
        assert_eq!(pts(&cross_set(2, 2).unwrap()), vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(pts(&cross_set(1, 5).unwrap()), vec![vec![1; 5]]);
        for n in 1..=4 {
            for d in 1..=4 {
                let c = cross_set(n, d).unwrap();
                assert_eq!(c.set.len(), d * n as usize - (d - 1));
                assert!(is_basic(&c.set).basic);
                assert!(greedy_singleton_filter(&c.set).is_empty());
            }
        }
    }

    #[test]
    fn staircase_small_cases() {
        let s = staircase_set(2, 2).unwrap();
        assert_eq!(s.set, PointSet::full(GridShape::uniform(2, 2).unwrap()));
        let s = staircase_set(2, 3).unwrap();
        assert_eq!(pts(&s), vec![vec![1, 1, 1], vec![1, 2, 2], vec![2, 1, 1], vec![2, 2, 2]]);
        let s = staircase_set(4, 3).unwrap();
        assert_eq!(s.set.len(), 8);
        assert!(s.claimed_annihilation.as_ref().unwrap().values().iter().all(|v| v == &Int::from(1) || v == &Int::from(-1)));
        assert!(staircase_set(1, 3).is_err());
        assert!(staircase_set(3, 1).is_err());
    }

    #[test]
    fn staircases_are_minimal() {
        for n in 2..=5 {
            for d in 2..=4 {
                let s = staircase_set(n, d).unwrap();
                assert!(s.verify_claim());
                assert_eq!(s.set.len(), 2 * n as usize);
                assert!(s.set.covers_all_layers());
                assert!(is_minimal_nonbasic(&s.set), "staircase({n},{d})");
            }
        }
    }

    #[test]
    fn five_point_set_from_cross() {
        let f = cross_plus_point(2, 3, &Point::new([2, 2, 2])).unwrap();
        assert_eq!(f.set.len(), 5);
        let vals: Vec<i64> = f.claimed_annihilation.as_ref().unwrap().values().iter().map(|v| v.try_into().unwrap()).collect();
        // lex order (1,1,1),(1,1,2),(1,2,1),(2,1,1),(2,2,2)
        assert_eq!(vals, vec![2, -1, -1, -1, 1]);
        assert!(f.verify_claim());
    }

    #[test]
    fn cross_plus_point_in_three_cube() {
        let f = cross_plus_point(3, 3, &Point::new([2, 3, 2])).unwrap();
        assert_eq!(f.set.len(), 8);
        let claim = f.claimed_annihilation.as_ref().unwrap();
        assert_eq!(claim.value_at(&Point::new([1, 1, 1])), Some(&Int::from(2)));
        assert!(f.verify_claim());
        assert!(!is_basic(&f.set).basic);
        assert!(!is_minimal_nonbasic(&f.set));
        let support = claim.support();
        assert_eq!(support.len(), 5);
        assert!(is_minimal_nonbasic(&support));
    }

    #[test]
    fn cross_plus_point_rejects_low_coordinates() {
        assert!(matches!(cross_plus_point(3, 3, &Point::new([2, 1, 2])), Err(Error::Precondition(_))));
        assert!(cross_plus_point(3, 3, &Point::new([2, 4, 2])).is_err());
    }

    #[test]
    fn unbounded_family_small() {
        let u = unbounded_family(1).unwrap();
        assert_eq!(u.set.len(), 8);
        assert_eq!(u.set.shape(), &GridShape::uniform(5, 3).unwrap());
        assert!(u.verify_claim());
        let u = unbounded_family(2).unwrap();
        assert_eq!(u.set.len(), 14);
        let f = irreducible_annihilation(&u.set).unwrap();
        assert!(f.values().iter().any(|v| v == &Int::from(2) || v == &Int::from(-2)));
        let claim = u.claimed_annihilation.unwrap();
        assert!(f == claim || f == claim.map(|v| -v));
    }

    #[test]
    fn unbounded_family_three_is_minimal() {
        let u = unbounded_family(3).unwrap();
        assert_eq!(u.set.len(), 20);
        assert!(is_minimal_nonbasic(&u.set));
    }
}
