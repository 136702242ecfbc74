//! Deciding basicness of point sets, with certificates both ways.
//!
//! A set `M` is basic iff the rows of its incidence matrix `A_M` are
//! independent; a left-kernel vector of `A_M` is exactly an annihilation
//! function. Every verdict carries something a caller can re-check.

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{
    bareiss_echelon, left_kernel_primitive, rank_exact, solve_exact_frac, ExactMatrix,
};
use crate::grid::{GridShape, Layer, Point, PointSet, WeightFunction};
use crate::scalar::{convert, ExactInt};
use crate::{Int, Rational};

/// `A_M`: one row per point, one column per layer (axis-major), 1 where the
/// point lies in the layer.
pub fn incidence_matrix<T: ExactInt>(m: &PointSet) -> ExactMatrix<T> {
    let shape = m.shape();
    let cols = shape.layer_count();
    let mut a = ExactMatrix::zeros(m.len(), cols);
    for (r, p) in m.points().iter().enumerate() {
        for (i, &x) in p.coords().iter().enumerate() {
            a.set(r, shape.column_of(Layer::new(i + 1, x)), T::one());
        }
    }
    a
}

fn incidence_rows<T: ExactInt>(m: &PointSet) -> Vec<Vec<T>> {
    incidence_matrix(m).to_rows()
}

/// Evidence attached to a [`BasisVerdict`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<T> {
    /// `|M|` layers whose columns of `A_M` form a nonsingular square block,
    /// so `rank A_M = |M|`.
    Independent { pivot_layers: Vec<Layer> },
    /// A nonzero primitive annihilation function.
    Annihilation(WeightFunction<T>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVerdict<T> {
    pub basic: bool,
    pub rank: usize,
    pub certificate: Certificate<T>,
}

impl<T: ExactInt> BasisVerdict<T> {
    /// Re-checks the certificate against `m` from scratch.
    pub fn verify(&self, m: &PointSet) -> bool {
        match &self.certificate {
            Certificate::Independent { pivot_layers } => {
                if !self.basic || pivot_layers.len() != m.len() {
                    return false;
                }
                let cols: Vec<usize> = pivot_layers.iter().map(|&l| m.shape().column_of(l)).collect();
                let block = incidence_matrix::<T>(m).select_columns(&cols);
                rank_exact(&block) == m.len()
            }
            Certificate::Annihilation(w) => {
                !self.basic
                    && w.base() == m
                    && w.values().iter().any(|v| !v.is_zero())
                    && w.is_annihilation()
            }
        }
    }
}

pub fn is_basic(m: &PointSet) -> BasisVerdict<Int> {
    is_basic_in::<Int>(m)
}

/// Rank test on `A_M` over the scalar `T`.
pub fn is_basic_in<T: ExactInt>(m: &PointSet) -> BasisVerdict<T> {
    let a = incidence_matrix::<T>(m);
    let order: Vec<usize> = (0..a.cols()).collect();
    let ech = bareiss_echelon(a.to_rows(), &order);
    let rank = ech.rank();
    if rank == m.len() {
        let pivot_layers = ech.pivots.iter().map(|&c| m.shape().layer_of_column(c)).collect();
        return BasisVerdict { basic: true, rank, certificate: Certificate::Independent { pivot_layers } };
    }
    let kernel = left_kernel_primitive(&a);
    let first = kernel.vectors.into_iter().next().expect("rank deficit implies a kernel vector");
    let w = WeightFunction::new(m.clone(), first).expect("kernel vector matches row count");
    debug_assert!(w.is_annihilation());
    BasisVerdict { basic: false, rank, certificate: Certificate::Annihilation(w) }
}

/// Rank of `A_M` only.
pub fn incidence_rank<T: ExactInt>(m: &PointSet) -> usize {
    let rows = incidence_rows::<T>(m);
    let order: Vec<usize> = (0..m.shape().layer_count()).collect();
    bareiss_echelon(rows, &order).rank()
}

pub fn annihilation_basis(m: &PointSet) -> Vec<WeightFunction<Int>> {
    annihilation_basis_in::<Int>(m)
}

/// Primitive integer basis of all annihilation functions of `m`.
pub fn annihilation_basis_in<T: ExactInt>(m: &PointSet) -> Vec<WeightFunction<T>> {
    left_kernel_primitive(&incidence_matrix::<T>(m))
        .vectors
        .into_iter()
        .map(|v| WeightFunction::new(m.clone(), v).expect("aligned"))
        .collect()
}

pub fn irreducible_annihilation(m: &PointSet) -> Result<WeightFunction<Int>> {
    irreducible_annihilation_in::<Int>(m)
}

/// The unique primitive, sign-normalized annihilation function of a set
/// whose annihilation space is one-dimensional.
pub fn irreducible_annihilation_in<T: ExactInt>(m: &PointSet) -> Result<WeightFunction<T>> {
    let mut basis = annihilation_basis_in::<T>(m);
    match basis.len() {
        0 => Err(Error::NoKernel),
        1 => Ok(basis.pop().unwrap()),
        k => Err(Error::AmbiguousKernel(k)),
    }
}

pub fn is_minimal_nonbasic(m: &PointSet) -> bool {
    is_minimal_nonbasic_in::<Int>(m)
}

/// Non-basic, and every single-point deletion is basic. Subsets of basic
/// sets are basic, so single deletions suffice.
pub fn is_minimal_nonbasic_in<T: ExactInt>(m: &PointSet) -> bool {
    if incidence_rank::<T>(m) == m.len() {
        return false;
    }
    let deletion_basic = |i: usize| {
        let k = m.without(i);
        incidence_rank::<T>(&k) == k.len()
    };
    if m.len() >= 16 {
        (0..m.len()).into_par_iter().all(deletion_basic)
    } else {
        (0..m.len()).all(deletion_basic)
    }
}

/// Minimality through the kernel: one-dimensional annihilation space whose
/// generator vanishes nowhere on `m`.
pub fn is_minimal_by_kernel<T: ExactInt>(m: &PointSet) -> bool {
    let kernel = left_kernel_primitive(&incidence_matrix::<T>(m));
    kernel.dim() == 1 && kernel.vectors[0].iter().all(|v| !v.is_zero())
}

/// Repeatedly deletes points that are alone in some layer. An empty result
/// proves `m` basic; a nonempty one proves nothing.
pub fn greedy_singleton_filter(m: &PointSet) -> PointSet {
    let shape = m.shape();
    let mut alive = vec![true; m.len()];
    let mut counts = m.layer_counts();
    let cols: Vec<Vec<usize>> = m
        .points()
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .enumerate()
                .map(|(i, &x)| shape.column_of(Layer::new(i + 1, x)))
                .collect()
        })
        .collect();
    loop {
        let mut changed = false;
        for i in 0..m.len() {
            if alive[i] && cols[i].iter().any(|&c| counts[c] == 1) {
                alive[i] = false;
                for &c in &cols[i] {
                    counts[c] -= 1;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let keep: Vec<usize> = (0..m.len()).filter(|&i| alive[i]).collect();
    m.select(&keep)
}

/// Planar test: `m` is basic iff its row/column bipartite multigraph (one
/// edge per point) has no cycle, i.e. `m` contains no closed array.
pub fn is_basic_2d_fast(m: &PointSet) -> Result<bool> {
    if m.shape().d() != 2 {
        return Err(Error::Precondition(format!(
            "the planar test needs d = 2, got d = {}",
            m.shape().d()
        )));
    }
    let rows = m.shape().side(1) as usize;
    let mut parent: Vec<usize> = (0..rows + m.shape().side(2) as usize).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in m.points() {
        let a = find(&mut parent, p.coord(1) as usize - 1);
        let b = find(&mut parent, rows + p.coord(2) as usize - 1);
        if a == b {
            return Ok(false);
        }
        parent[a] = b;
    }
    Ok(true)
}

/// `f(x) = tables[0][x_1 - 1] + ... + tables[d-1][x_d - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateDecomposition {
    pub shape: GridShape,
    pub tables: Vec<Vec<Rational>>,
}

impl CoordinateDecomposition {
    pub fn evaluate(&self, p: &Point) -> Rational {
        p.coords()
            .iter()
            .zip(&self.tables)
            .fold(Rational::zero(), |acc, (&x, t)| acc + &t[x as usize - 1])
    }

    /// Pointwise re-evaluation against `f`.
    pub fn reproduces(&self, f: &WeightFunction<Rational>) -> bool {
        f.iter().all(|(p, v)| &self.evaluate(p) == v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Solved(CoordinateDecomposition),
    /// An annihilation function `g` with `<g, f> != 0`: no decomposition exists.
    Infeasible { certificate: WeightFunction<Int>, pairing: Rational },
}

impl Decomposition {
    pub fn verify(&self, f: &WeightFunction<Rational>) -> bool {
        match self {
            Decomposition::Solved(tables) => tables.reproduces(f),
            Decomposition::Infeasible { certificate, pairing } => {
                let g = certificate.map(|v| Rational::from_integer(v.clone()));
                certificate.is_annihilation()
                    && g.pairing(f).is_ok_and(|p| &p == pairing && !p.is_zero())
            }
        }
    }
}

/// Solves `f = f_1(x_1) + ... + f_d(x_d)` on `m`, or returns the Fredholm
/// certificate when the system `A_M X = f` is inconsistent.
pub fn solve_additive_decomposition(
    m: &PointSet,
    f: &WeightFunction<Rational>,
) -> Result<Decomposition> {
    if f.base() != m {
        return Err(Error::Dimension("the function is not defined on this point set".into()));
    }
    let a = incidence_matrix::<Int>(m);
    match solve_exact_frac(&a, f.values())? {
        Some(x) => {
            let shape = m.shape().clone();
            let mut tables = Vec::with_capacity(shape.d());
            let mut offset = 0;
            for &side in shape.sides() {
                tables.push(x[offset..offset + side as usize].to_vec());
                offset += side as usize;
            }
            Ok(Decomposition::Solved(CoordinateDecomposition { shape, tables }))
        }
        None => {
            for g in annihilation_basis(m) {
                let gr = g.map(|v| Rational::from_integer(v.clone()));
                let pairing = gr.pairing(f)?;
                if !pairing.is_zero() {
                    return Ok(Decomposition::Infeasible { certificate: g, pairing });
                }
            }
            unreachable!("an inconsistent system has an annihilation function pairing nonzero with f")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoColoring {
    Basic,
    /// A nonempty `K ⊆ M` with a coloring balanced on every layer.
    Coloring(Vec<(Point, Color)>),
}

impl TwoColoring {
    /// Every layer has as many red as blue points of `K`, and `K` is nonempty.
    pub fn verify_balanced(&self, shape: &GridShape) -> bool {
        match self {
            TwoColoring::Basic => true,
            TwoColoring::Coloring(k) => {
                if k.is_empty() {
                    return false;
                }
                let mut bal = vec![0i64; shape.layer_count()];
                for (p, c) in k {
                    let s = if *c == Color::Red { 1 } else { -1 };
                    for (i, &x) in p.coords().iter().enumerate() {
                        bal[shape.column_of(Layer::new(i + 1, x))] += s;
                    }
                }
                bal.iter().all(|&b| b == 0)
            }
        }
    }
}

/// For sets meeting every layer in 0 or 2 points: a balanced two-coloring
/// of some nonempty subset exists iff the set is non-basic. The coloring is
/// the sign pattern of an annihilation function (positive = red).
pub fn two_coloring_criterion(m: &PointSet) -> Result<TwoColoring> {
    check_two_or_zero(m)?;
    match is_basic(m) {
        BasisVerdict { basic: true, .. } => Ok(TwoColoring::Basic),
        BasisVerdict { certificate: Certificate::Annihilation(w), .. } => Ok(TwoColoring::Coloring(
            w.iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(p, v)| (p.clone(), if v.is_positive() { Color::Red } else { Color::Blue }))
                .collect(),
        )),
        _ => unreachable!("non-basic verdicts carry annihilation functions"),
    }
}

pub(crate) fn check_two_or_zero(m: &PointSet) -> Result<()> {
    for (c, &count) in m.layer_counts().iter().enumerate() {
        if count != 0 && count != 2 {
            return Err(Error::Precondition(format!(
                "layer {} contains {count} points, expected 0 or 2",
                m.shape().layer_of_column(c)
            )));
        }
    }
    Ok(())
}

/// Converts a function computed over a fixed-width scalar to big integers.
pub fn widen<T: ExactInt>(w: &WeightFunction<T>) -> WeightFunction<Int> {
    w.map(|v| convert::<T, Int>(v).expect("BigInt holds every value"))
}

/// Sum of absolute values.
pub fn l1_norm(w: &WeightFunction<Int>) -> Int {
    w.values().iter().fold(Int::zero(), |acc, v| acc + v.abs())
}
