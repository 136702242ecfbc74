//! Exact linear algebra over integers and rationals.
//!
//! Elimination is fraction-free (Bareiss): every intermediate entry is a
//! minor of the input, so the single division per update is exact and no
//! rational arithmetic is needed until a solution is read off.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{make_primitive, mul, sub, ExactInt, Frac};

/// Dense row-major matrix with exact integer entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactInt> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// From a list of equal-length rows. `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| T::from_i64(x).expect("entry fits")).collect())
            .collect();
        Self::from_rows(rows, cols).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Submatrix keeping the listed columns, in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> Self {
        let rows = (0..self.rows)
            .map(|r| columns.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        Self::from_rows(rows, columns.len()).expect("rectangular")
    }

    /// `v^T A`.
    pub fn left_mul(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![T::zero(); self.cols];
        for (r, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = crate::scalar::add(o, &mul(coeff, self.get(r, c)));
            }
        }
        Ok(out)
    }

    /// `A x` for a rational vector.
    pub fn mul_frac(&self, x: &[Frac<T>]) -> Result<Vec<Frac<T>>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Frac::zero(), |acc, (a, xi)| acc + xi * a.clone())
            })
            .collect())
    }
}

impl<T: ExactInt> fmt::Debug for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let parts: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row echelon form produced by fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    /// Reduced rows; the first `pivots.len()` are the nonzero ones.
    pub rows: Vec<Vec<T>>,
    /// Pivot column of each nonzero row, in elimination order.
    pub pivots: Vec<usize>,
}

impl<T> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Bareiss elimination visiting columns in `column_order`, pivoting on the
/// topmost nonzero row of each column.
pub fn bareiss_echelon<T: ExactInt>(mut rows: Vec<Vec<T>>, column_order: &[usize]) -> Echelon<T> {
    let nrows = rows.len();
    let mut prev = T::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in column_order {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            if factor.is_zero() {
                // (pivot * x - 0) / prev
                if !(pivot.is_one() && prev.is_one()) {
                    for x in row.iter_mut() {
                        if !x.is_zero() {
                            *x = exact_div(mul(&pivot, x), &prev);
                        }
                    }
                }
                continue;
            }
            for (x, y) in row.iter_mut().zip(pivot_row) {
                let num = sub(&mul(&pivot, x), &mul(&factor, y));
                *x = exact_div(num, &prev);
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots }
}

#[inline]
fn exact_div<T: ExactInt>(num: T, den: &T) -> T {
    if den.is_one() {
        return num;
    }
    debug_assert!((num.clone() % den.clone()).is_zero(), "inexact Bareiss division");
    num / den.clone()
}

/// Row space grown one vector at a time, answering "is this new row
/// independent of the rows kept so far". Stored rows are primitive and in
/// echelon form, so entries stay small on 0/1 input.
#[derive(Clone, Debug)]
pub struct IncrementalEchelon<T> {
    rows: Vec<(usize, Vec<T>)>,
    width: usize,
}

impl<T: ExactInt> IncrementalEchelon<T> {
    pub fn new(width: usize) -> Self {
        IncrementalEchelon { rows: Vec::new(), width }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: Vec<T>) -> Vec<T> {
        assert_eq!(v.len(), self.width, "row width mismatch");
        for (pc, row) in &self.rows {
            let f = v[*pc].clone();
            if f.is_zero() {
                continue;
            }
            let p = &row[*pc];
            for (x, y) in v.iter_mut().zip(row) {
                *x = sub(&mul(p, x), &mul(&f, y));
            }
            make_primitive(&mut v);
        }
        v
    }

    /// Keeps `v` and returns true if it is independent, else leaves the
    /// state unchanged and returns false.
    pub fn insert(&mut self, v: Vec<T>) -> bool {
        let r = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        self.rows.push((pc, r));
        true
    }
}

/// Rank over the rationals.
pub fn rank_exact<T: ExactInt>(a: &ExactMatrix<T>) -> usize {
    let order: Vec<usize> = (0..a.cols()).collect();
    bareiss_echelon(a.to_rows(), &order).rank()
}

/// Primitive integer basis of a left kernel `{v : v^T A = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis<T> {
    pub vectors: Vec<Vec<T>>,
}

impl<T: ExactInt> KernelBasis<T> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Every vector lies in the left kernel of `a`, is primitive and sign-normalized.
    pub fn verify(&self, a: &ExactMatrix<T>) -> bool {
        self.vectors.iter().all(|v| {
            let primitive = crate::scalar::gcd_all(v).is_one();
            let positive = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive());
            let in_kernel = a.left_mul(v).is_ok_and(|p| p.iter().all(Zero::is_zero));
            primitive && positive && in_kernel
        })
    }
}

/// Null space of an echelon form, one vector per free column, in column order.
///
/// Back substitution stays integral by rescaling the partial vector whenever
/// a pivot does not divide its right-hand side.
fn null_vectors<T: ExactInt>(ech: &Echelon<T>, ncols: usize) -> Vec<Vec<T>> {
    let mut is_pivot = vec![false; ncols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![T::zero(); ncols];
        x[free] = T::one();
        for (ri, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[ri];
            let mut s = T::zero();
            for (j, xj) in x.iter().enumerate() {
                if j != pc && !xj.is_zero() && !row[j].is_zero() {
                    s = sub(&s, &mul(&row[j], xj));
                }
            }
            if s.is_zero() {
                continue;
            }
            let p = &row[pc];
            let g = s.gcd(p);
            let scale = p.clone() / g.clone();
            if !scale.is_one() {
                for xj in x.iter_mut() {
                    if !xj.is_zero() {
                        *xj = mul(xj, &scale);
                    }
                }
            }
            x[pc] = s / g;
        }
        make_primitive(&mut x);
        out.push(x);
    }
    out
}

/// Basis of `{v : v^T A = 0}`; each vector integer, primitive, first nonzero
/// entry positive. Empty iff the rows are independent.
pub fn left_kernel_primitive<T: ExactInt>(a: &ExactMatrix<T>) -> KernelBasis<T> {
    let t = a.transpose();
    let order: Vec<usize> = (0..t.cols()).collect();
    let ech = bareiss_echelon(t.to_rows(), &order);
    KernelBasis { vectors: null_vectors(&ech, t.cols()) }
}

/// Right kernel `{x : A x = 0}` with the same normalization.
pub fn right_kernel_primitive<T: ExactInt>(a: &ExactMatrix<T>) -> KernelBasis<T> {
    let order: Vec<usize> = (0..a.cols()).collect();
    let ech = bareiss_echelon(a.to_rows(), &order);
    KernelBasis { vectors: null_vectors(&ech, a.cols()) }
}

/// A rational solution of `A x = b`, or `None` if the system is inconsistent.
///
/// Pivot columns are taken from the last column backwards and every free
/// variable is set to zero, so the lowest-indexed unknowns absorb the
/// gauge freedom (for `A_M` this pins `f_i(1)` where possible).
pub fn solve_exact<T: ExactInt>(a: &ExactMatrix<T>, b: &[T]) -> Result<Option<Vec<Frac<T>>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let n = a.cols();
    let augmented: Vec<Vec<T>> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let order: Vec<usize> = (0..n).rev().chain(std::iter::once(n)).collect();
    let ech = bareiss_echelon(augmented, &order);
    if ech.pivots.contains(&n) {
        return Ok(None);
    }
    // x = num / den, free unknowns stay 0
    let mut num = vec![T::zero(); n];
    let mut den = T::one();
    for (ri, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[ri];
        let mut s = mul(&row[n], &den);
        for (j, xj) in num.iter().enumerate() {
            if j != pc && !xj.is_zero() && !row[j].is_zero() {
                s = sub(&s, &mul(&row[j], xj));
            }
        }
        if s.is_zero() {
            continue;
        }
        let p = &row[pc];
        let g = s.gcd(p);
        let scale = p.clone() / g.clone();
        if !scale.is_one() {
            for xj in num.iter_mut() {
                if !xj.is_zero() {
                    *xj = mul(xj, &scale);
                }
            }
            den = mul(&den, &scale);
        }
        num[pc] = s / g;
    }
    Ok(Some(num.into_iter().map(|x| Frac::new(x, den.clone())).collect()))
}

/// Rational-right-hand-side variant: clears denominators and delegates.
pub fn solve_exact_frac<T: ExactInt>(
    a: &ExactMatrix<T>,
    b: &[Frac<T>],
) -> Result<Option<Vec<Frac<T>>>> {
    let lcm = b.iter().fold(T::one(), |l, x| num_integer::Integer::lcm(&l, x.denom()));
    let scaled: Vec<T> = b.iter().map(|x| mul(x.numer(), &(lcm.clone() / x.denom().clone()))).collect();
    let sol = solve_exact(a, &scaled)?;
    Ok(sol.map(|xs| xs.into_iter().map(|x| x / Frac::from_integer(lcm.clone())).collect()))
}
