//! Grids, layers, point sets and weight functions.
//!
//! Coordinates and axes are 1-indexed everywhere: a point of `[n]^d` has
//! coordinates in `1..=n`, and the layer `(i, j)` is the hyperplane `x_i = j`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;

use crate::error::{Error, Result};

/// Per-axis side lengths of a box `[n_1] x ... x [n_d]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridShape {
    sides: Vec<u32>,
}

impl GridShape {
    /// The cube `[n]^d`.
    pub fn uniform(n: u32, d: usize) -> Result<Self> {
        Self::with_sides(vec![n; d])
    }

    pub fn with_sides(sides: Vec<u32>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::Range("a grid needs at least one axis".into()));
        }
        if let Some(pos) = sides.iter().position(|&s| s == 0) {
            return Err(Error::Range(format!("axis {} has side length 0", pos + 1)));
        }
        Ok(GridShape { sides })
    }

    pub fn d(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[u32] {
        &self.sides
    }

    /// Side length of a 1-indexed axis.
    pub fn side(&self, axis: usize) -> u32 {
        self.sides[axis - 1]
    }

    /// The common side length, if all sides are equal.
    pub fn uniform_n(&self) -> Option<u32> {
        let first = self.sides[0];
        self.sides.iter().all(|&s| s == first).then_some(first)
    }

    /// Number of layers, `n_1 + ... + n_d`.
    pub fn layer_count(&self) -> usize {
        self.sides.iter().map(|&s| s as usize).sum()
    }

    /// Number of grid points, `n_1 * ... * n_d`.
    pub fn point_count(&self) -> u128 {
        self.sides.iter().map(|&s| s as u128).product()
    }

    /// All layers in column order: axis-major, then value.
    pub fn layers(&self) -> impl Iterator<Item = Layer> + '_ {
        self.sides
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| (1..=s).map(move |value| Layer { axis: i + 1, value }))
    }

    /// Column of `A_M` belonging to a layer.
    pub fn column_of(&self, layer: Layer) -> usize {
        let offset: usize = self.sides[..layer.axis - 1].iter().map(|&s| s as usize).sum();
        offset + layer.value as usize - 1
    }

    pub fn layer_of_column(&self, mut column: usize) -> Layer {
        for (i, &s) in self.sides.iter().enumerate() {
            if column < s as usize {
                return Layer { axis: i + 1, value: column as u32 + 1 };
            }
            column -= s as usize;
        }
        panic!("column out of range for {:?}", self.sides);
    }

    pub fn check_layer(&self, layer: Layer) -> Result<()> {
        if layer.axis == 0 || layer.axis > self.d() {
            return Err(Error::Range(format!("axis {} not in [1, {}]", layer.axis, self.d())));
        }
        let side = self.side(layer.axis);
        if layer.value == 0 || layer.value > side {
            return Err(Error::Range(format!(
                "value {} not in [1, {}] on axis {}",
                layer.value, side, layer.axis
            )));
        }
        Ok(())
    }

    pub fn check_point(&self, point: &Point) -> Result<()> {
        if point.d() != self.d() {
            return Err(Error::Range(format!(
                "point {point} has {} coordinates, expected {}",
                point.d(),
                self.d()
            )));
        }
        for (i, (&x, &s)) in point.coords().iter().zip(&self.sides).enumerate() {
            if x == 0 || x > s {
                return Err(Error::Range(format!(
                    "point {point}: coordinate {} is {x}, outside [1, {s}]",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Every grid point in lexicographic order.
    pub fn all_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        let mut cur = vec![1u32; self.d()];
        loop {
            out.push(Point(cur.clone()));
            let mut axis = self.d();
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if cur[axis] < self.sides[axis] {
                    cur[axis] += 1;
                    break;
                }
                cur[axis] = 1;
            }
        }
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.uniform_n() {
            Some(n) => write!(f, "[{n}]^{}", self.d()),
            None => {
                let parts: Vec<String> = self.sides.iter().map(|s| format!("[{s}]")).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

/// A grid point; ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<u32>);

impl Point {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Point(coords.into())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    /// Coordinate on a 1-indexed axis.
    pub fn coord(&self, axis: usize) -> u32 {
        self.0[axis - 1]
    }

    /// Copy with one coordinate replaced.
    pub fn with_coord(&self, axis: usize, value: u32) -> Point {
        let mut c = self.0.clone();
        c[axis - 1] = value;
        Point(c)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The hyperplane `x_axis = value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Layer {
    pub axis: usize,
    pub value: u32,
}

impl Layer {
    pub fn new(axis: usize, value: u32) -> Self {
        Layer { axis, value }
    }

    pub fn contains(&self, point: &Point) -> bool {
        point.coord(self.axis) == self.value
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}={}", self.axis, self.value)
    }
}

/// A finite set of distinct grid points, stored in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    shape: GridShape,
    points: Vec<Point>,
}

impl PointSet {
    /// Validates and sorts; duplicates and out-of-grid points are rejected.
    pub fn new(shape: GridShape, mut points: Vec<Point>) -> Result<Self> {
        for p in &points {
            shape.check_point(p)?;
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Range(format!("duplicate point {}", w[0])));
        }
        Ok(PointSet { shape, points })
    }

    /// Convenience constructor from coordinate slices.
    pub fn from_coords(shape: GridShape, coords: &[&[u32]]) -> Result<Self> {
        Self::new(shape, coords.iter().map(|c| Point::new(c.to_vec())).collect())
    }

    pub fn empty(shape: GridShape) -> Self {
        PointSet { shape, points: Vec::new() }
    }

    /// The whole grid.
    pub fn full(shape: GridShape) -> Self {
        let points = shape.all_points();
        PointSet { shape, points }
    }

    pub(crate) fn from_sorted_unchecked(shape: GridShape, points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        PointSet { shape, points }
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, point: &Point) -> Option<usize> {
        self.points.binary_search(point).ok()
    }

    pub fn contains(&self, point: &Point) -> bool {
        self.index_of(point).is_some()
    }

    /// The set with the point at `index` removed.
    pub fn without(&self, index: usize) -> PointSet {
        let mut points = self.points.clone();
        points.remove(index);
        PointSet { shape: self.shape.clone(), points }
    }

    /// Sub-collection by (sorted or unsorted) indices.
    pub fn select(&self, indices: &[usize]) -> PointSet {
        let mut points: Vec<Point> = indices.iter().map(|&i| self.points[i].clone()).collect();
        points.sort();
        points.dedup();
        PointSet { shape: self.shape.clone(), points }
    }

    /// Points of the set lying in `layer`, in canonical order.
    pub fn layer_members(&self, layer: Layer) -> Result<Vec<Point>> {
        self.shape.check_layer(layer)?;
        Ok(self.points.iter().filter(|p| layer.contains(p)).cloned().collect())
    }

    /// `|L ∩ M|` for every layer, indexed by column.
    pub fn layer_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.shape.layer_count()];
        for p in &self.points {
            for (i, &x) in p.coords().iter().enumerate() {
                counts[self.shape.column_of(Layer::new(i + 1, x))] += 1;
            }
        }
        counts
    }

    /// True iff every layer of the grid meets the set.
    pub fn covers_all_layers(&self) -> bool {
        self.layer_counts().iter().all(|&c| c > 0)
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}} in {}", parts.join(", "), self.shape)
    }
}

/// One exact value per point of a [`PointSet`], aligned with its order.
///
/// `V` is an exact integer for annihilation functions and colorings, or an
/// exact rational for general functions to be decomposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction<V> {
    base: PointSet,
    values: Vec<V>,
}

impl<V: Clone + Zero + Add<Output = V>> WeightFunction<V> {
    pub fn new(base: PointSet, values: Vec<V>) -> Result<Self> {
        if values.len() != base.len() {
            return Err(Error::Dimension(format!(
                "{} values for {} points",
                values.len(),
                base.len()
            )));
        }
        Ok(WeightFunction { base, values })
    }

    /// Builds from `(point, value)` pairs in any order.
    pub fn from_pairs(shape: GridShape, mut pairs: Vec<(Point, V)>) -> Result<Self> {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let (points, values): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let base = PointSet::new(shape, points)?;
        Ok(WeightFunction { base, values })
    }

    pub fn zero(base: PointSet) -> Self {
        let values = vec![V::zero(); base.len()];
        WeightFunction { base, values }
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn value_at(&self, point: &Point) -> Option<&V> {
        self.base.index_of(point).map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &V)> {
        self.base.points().iter().zip(&self.values)
    }

    /// Points where the value is nonzero.
    pub fn support(&self) -> PointSet {
        let points = self
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, _)| p.clone())
            .collect();
        PointSet::from_sorted_unchecked(self.base.shape.clone(), points)
    }

    /// Sum of the values over every layer of the grid (empty layers give 0).
    pub fn layer_sums(&self) -> BTreeMap<Layer, V> {
        let shape = self.base.shape();
        let mut sums = vec![V::zero(); shape.layer_count()];
        for (p, v) in self.iter() {
            for (i, &x) in p.coords().iter().enumerate() {
                let c = shape.column_of(Layer::new(i + 1, x));
                sums[c] = sums[c].clone() + v.clone();
            }
        }
        sums.into_iter().enumerate().map(|(c, s)| (shape.layer_of_column(c), s)).collect()
    }

    /// First layer with a nonzero sum, if any.
    pub fn first_violation(&self) -> Option<(Layer, V)> {
        self.layer_sums().into_iter().find(|(_, s)| !s.is_zero())
    }

    /// All layer sums vanish.
    pub fn is_annihilation(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn map<W, F: Fn(&V) -> W>(&self, f: F) -> WeightFunction<W> {
        WeightFunction { base: self.base.clone(), values: self.values.iter().map(f).collect() }
    }

    /// Pointwise sum of two functions on the same base.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::Dimension("weight functions live on different sets".into()));
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(WeightFunction { base: self.base.clone(), values })
    }

    /// Zero-extension to every point of the grid.
    pub fn extend_to_grid(&self) -> Self {
        let full = PointSet::full(self.base.shape.clone());
        let values = full
            .points()
            .iter()
            .map(|p| self.value_at(p).cloned().unwrap_or_else(V::zero))
            .collect();
        WeightFunction { base: full, values }
    }

    /// Restriction to the support.
    pub fn restrict_to_support(&self) -> Self {
        let (points, values): (Vec<_>, Vec<_>) = self
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, v)| (p.clone(), v.clone()))
            .unzip();
        WeightFunction {
            base: PointSet::from_sorted_unchecked(self.base.shape.clone(), points),
            values,
        }
    }
}

impl<V> WeightFunction<V>
where
    V: Clone + Zero + num_traits::One + Add<Output = V> + std::ops::Mul<Output = V>,
{
    /// `1_X` on `base`.
    pub fn indicator(base: PointSet, point: &Point) -> Result<Self> {
        let idx = base
            .index_of(point)
            .ok_or_else(|| Error::Range(format!("{point} is not in the set")))?;
        let mut w = Self::zero(base);
        w.values[idx] = V::one();
        Ok(w)
    }

    /// `<self, other>` on a common base.
    pub fn pairing(&self, other: &Self) -> Result<V> {
        if self.base != other.base {
            return Err(Error::Dimension("weight functions live on different sets".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(V::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn scale(&self, k: &V) -> Self {
        self.map(|v| v.clone() * k.clone())
    }
}
