//! Searches for minimal non-basic sets on small grids.
//!
//! Exhaustive enumeration walks subsets in lexicographic order and keeps a
//! running echelon form of the chosen rows. A minimal non-basic set is a
//! circuit of the row matroid of the full incidence matrix: every proper
//! subset is independent. So the walk stops extending a branch as soon as
//! the chosen rows become dependent, and that dependent set is the only
//! candidate the branch can produce. A point alone in its layer cannot be
//! in a minimal set (the kernel vanishes there), which gives a second
//! prune on layer counts.
//!
//! Results are reduced modulo the grid symmetries: axis permutations
//! between equal sides and independent value permutations on each axis.
//! These permute layers, so they preserve basicness, minimality, layer
//! coverage and the multiset of annihilation values.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::basis::{irreducible_annihilation, irreducible_annihilation_in, l1_norm};
use crate::error::{Error, Result};
use crate::exactlin::IncrementalEchelon;
use crate::grid::{GridShape, Point, PointSet, WeightFunction};
use crate::Int;

/// Largest grid (in points) enumerated without `force`.
pub const EXHAUSTIVE_POINT_LIMIT: u128 = 27;

/// Restarts evaluated between early-stop checks in random search. Fixed so
/// that results do not depend on the thread count.
pub const RANDOM_CHUNK: u64 = 64;

/// Swap moves per random restart.
pub const LOCAL_STEPS: usize = 200;

/// Canonicalizations per set above which the brute-force path refuses.
pub const CANONICAL_WORK_LIMIT: u128 = 50_000_000;

// ---------------------------------------------------------------------------
// symmetry

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = items.to_vec();
    heap_permute(cur.len(), &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, a: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

fn factorial(k: u128) -> u128 {
    (1..=k).fold(1u128, |a, b| a.saturating_mul(b))
}

/// Axis permutations `σ` with `sides[σ[j]] == sides[j]`; image axis `j`
/// takes its coordinate from source axis `σ[j]`.
fn axis_permutations(shape: &GridShape) -> Vec<Vec<usize>> {
    let d = shape.d() as u32;
    permutations(&(0..d).collect::<Vec<_>>())
        .into_iter()
        .map(|p| p.into_iter().map(|x| x as usize).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| s.iter().enumerate().all(|(j, &a)| shape.sides()[a] == shape.sides()[j]))
        .collect()
}

fn used_values(m: &PointSet) -> Vec<Vec<u32>> {
    (0..m.shape().d())
        .map(|a| {
            let set: BTreeSet<u32> = m.points().iter().map(|p| p.0[a]).collect();
            set.into_iter().collect()
        })
        .collect()
}

/// Number of images the brute-force canonicalization inspects.
pub fn canonical_work(m: &PointSet) -> u128 {
    let used = used_values(m);
    let per_sigma: u128 = used.iter().map(|u| factorial(u.len() as u128)).fold(1, u128::saturating_mul);
    per_sigma.saturating_mul(axis_permutations(m.shape()).len() as u128)
}

/// Lexicographically least image of `m` under the grid symmetries.
///
/// Only bijections from the used values of an axis onto `1..=u` are tried:
/// compressing any image order-preservingly never makes it larger.
pub fn canonical_form(m: &PointSet) -> PointSet {
    if m.is_empty() {
        return m.clone();
    }
    let d = m.shape().d();
    let used = used_values(m);
    // value maps per source axis, indexed by old value
    let maps: Vec<Vec<Vec<u32>>> = used
        .iter()
        .map(|u| {
            let max = *u.last().unwrap() as usize;
            permutations(u)
                .into_iter()
                .map(|perm| {
                    let mut map = vec![0u32; max + 1];
                    for (rank, &v) in perm.iter().enumerate() {
                        map[v as usize] = rank as u32 + 1;
                    }
                    map
                })
                .collect()
        })
        .collect();
    let mut best: Option<Vec<Point>> = None;
    let mut image: Vec<Point> = m.points().to_vec();
    for sigma in axis_permutations(m.shape()) {
        let mut odo = vec![0usize; d];
        loop {
            for (q, p) in image.iter_mut().zip(m.points()) {
                for j in 0..d {
                    q.0[j] = maps[sigma[j]][odo[j]][p.0[sigma[j]] as usize];
                }
            }
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image.clone());
            }
            let mut j = 0;
            loop {
                if j == d {
                    break;
                }
                odo[j] += 1;
                if odo[j] < maps[sigma[j]].len() {
                    break;
                }
                odo[j] = 0;
                j += 1;
            }
            if j == d {
                break;
            }
        }
    }
    PointSet::from_sorted_unchecked(m.shape().clone(), best.unwrap())
}

/// [`canonical_form`] with a refusal when the brute force would be too long.
pub fn canonical_form_bounded(m: &PointSet, limit: u128) -> Result<PointSet> {
    let work = canonical_work(m);
    if work > limit {
        return Err(Error::Infeasible { estimate: format!("{work} images to compare (limit {limit})") });
    }
    Ok(canonical_form(m))
}

/// Whole symmetry group of a grid with at most 64 points, stored as point
/// index maps so a set can be canonicalized with bit operations.
///
/// Point `i` (lexicographic index) is bit `63 - i`, which makes the
/// lexicographically least sorted point list the numerically largest mask.
#[derive(Clone, Debug)]
pub struct SymmetryTable {
    shape: GridShape,
    points: Vec<Point>,
    maps: Vec<Vec<u8>>,
}

impl SymmetryTable {
    /// `None` for grids over 64 points or groups over `max_order` elements.
    pub fn new(shape: &GridShape, max_order: usize) -> Option<Self> {
        let points = shape.all_points();
        if points.len() > 64 {
            return None;
        }
        let sigmas = axis_permutations(shape);
        let order: u128 = (sigmas.len() as u128)
            .saturating_mul(shape.sides().iter().map(|&s| factorial(s as u128)).fold(1, u128::saturating_mul));
        if order > max_order as u128 {
            return None;
        }
        let value_perms: Vec<Vec<Vec<u32>>> =
            shape.sides().iter().map(|&s| permutations(&(1..=s).collect::<Vec<_>>())).collect();
        let d = shape.d();
        let index = |p: &Point| points.binary_search(p).unwrap() as u8;
        let mut maps = Vec::with_capacity(order as usize);
        for sigma in &sigmas {
            let mut odo = vec![0usize; d];
            loop {
                let map: Vec<u8> = points
                    .iter()
                    .map(|p| {
                        let q: Vec<u32> =
                            (0..d).map(|j| value_perms[sigma[j]][odo[j]][p.0[sigma[j]] as usize - 1]).collect();
                        index(&Point(q))
                    })
                    .collect();
                maps.push(map);
                let mut j = 0;
                while j < d {
                    odo[j] += 1;
                    if odo[j] < value_perms[sigma[j]].len() {
                        break;
                    }
                    odo[j] = 0;
                    j += 1;
                }
                if j == d {
                    break;
                }
            }
        }
        Some(SymmetryTable { shape: shape.clone(), points, maps })
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn mask_of(&self, indices: &[usize]) -> u64 {
        indices.iter().fold(0u64, |m, &i| m | 1u64 << (63 - i))
    }

    pub fn canonical_mask(&self, mask: u64) -> u64 {
        let members: Vec<usize> = (0..self.points.len()).filter(|&i| mask >> (63 - i) & 1 == 1).collect();
        self.maps
            .iter()
            .map(|g| members.iter().fold(0u64, |m, &i| m | 1u64 << (63 - g[i] as usize)))
            .max()
            .unwrap_or(0)
    }

    pub fn set_of_mask(&self, mask: u64) -> PointSet {
        let pts = (0..self.points.len()).filter(|&i| mask >> (63 - i) & 1 == 1).map(|i| self.points[i].clone()).collect();
        PointSet::from_sorted_unchecked(self.shape.clone(), pts)
    }

    pub fn canonical_form(&self, m: &PointSet) -> PointSet {
        assert_eq!(m.shape(), &self.shape, "set lives on a different grid");
        let idx: Vec<usize> = m.points().iter().map(|p| self.points.binary_search(p).unwrap()).collect();
        self.set_of_mask(self.canonical_mask(self.mask_of(&idx)))
    }
}

/// Table-backed when the group is small enough, brute force otherwise.
enum Canonicalizer {
    Table(SymmetryTable),
    Brute,
}

impl Canonicalizer {
    fn for_shape(shape: &GridShape) -> Self {
        match SymmetryTable::new(shape, 200_000) {
            Some(t) => Canonicalizer::Table(t),
            None => Canonicalizer::Brute,
        }
    }

    fn canon(&self, m: &PointSet) -> PointSet {
        match self {
            Canonicalizer::Table(t) => t.canonical_form(m),
            Canonicalizer::Brute => canonical_form(m),
        }
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Random => "random",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub set: PointSet,
    pub annihilation: WeightFunction<Int>,
}

impl Witness {
    fn new(set: PointSet) -> Self {
        let annihilation = irreducible_annihilation(&set).expect("witness has a one-dimensional kernel");
        Witness { set, annihilation }
    }

    /// Non-basic, minimal, kernel dimension 1, primitive generator; plus
    /// layer-covering when asked.
    pub fn verify(&self, layer_covering: bool) -> bool {
        let Ok(f) = irreducible_annihilation(&self.set) else {
            return false;
        };
        f == self.annihilation
            && f.is_annihilation()
            && f.values().iter().all(|v| !v.is_zero())
            && crate::basis::is_minimal_nonbasic(&self.set)
            && (!layer_covering || self.set.covers_all_layers())
    }
}

/// Outcome of comparing both sides of `Σ|f| = 2(|M| - n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureCheck {
    pub sum_abs: Int,
    pub rhs: Int,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureFinding {
    pub set: PointSet,
    pub check: ConjectureCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeStats {
    pub size: usize,
    /// Sets found before symmetry reduction (random mode: successful restarts).
    pub raw_count: u64,
    /// Distinct classes up to symmetry.
    pub classes: u64,
    pub conjecture_holds: u64,
    pub conjecture_fails: u64,
    /// Least canonical class found.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub n: u32,
    pub d: usize,
    pub sizes: RangeInclusive<usize>,
    pub layer_covering: bool,
    pub mode: SearchMode,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    /// Random mode: restarts actually run.
    pub restarts_used: Option<u64>,
    pub per_size: Vec<SizeStats>,
    /// Conjecture failures, one per class.
    pub counterexamples: Vec<ConjectureFinding>,
}

impl SearchReport {
    pub fn stats(&self, size: usize) -> Option<&SizeStats> {
        self.per_size.iter().find(|s| s.size == size)
    }

    pub fn realized_sizes(&self) -> Vec<usize> {
        self.per_size.iter().filter(|s| s.classes > 0).map(|s| s.size).collect()
    }
}

// ---------------------------------------------------------------------------
// conjecture

/// Both sides of `Σ_{x∈M} |f(x)| = 2(|M| - n)` for the irreducible `f`.
///
/// Requires `d = 3`, a uniform grid, `m` minimal non-basic and covering
/// every layer; the error names the first requirement that fails.
pub fn check_conjecture(m: &PointSet) -> Result<ConjectureCheck> {
    if m.shape().d() != 3 {
        return Err(Error::Precondition(format!("conjecture is stated for d = 3, got d = {}", m.shape().d())));
    }
    let Some(n) = m.shape().uniform_n() else {
        return Err(Error::Precondition("conjecture needs a cube grid [n]^3".into()));
    };
    if !m.covers_all_layers() {
        let missing = m.shape().layers().find(|l| !m.points().iter().any(|p| l.contains(p))).unwrap();
        return Err(Error::Precondition(format!("set does not cover layer {missing}")));
    }
    let f = match irreducible_annihilation(m) {
        Ok(f) => f,
        Err(Error::NoKernel) => return Err(Error::Precondition("set is basic, not minimal non-basic".into())),
        Err(Error::AmbiguousKernel(k)) => {
            return Err(Error::Precondition(format!(
                "annihilation space has dimension {k}, so the set is not minimal"
            )))
        }
        Err(e) => return Err(e),
    };
    if let Some(p) = f.iter().find(|(_, v)| v.is_zero()).map(|(p, _)| p.clone()) {
        return Err(Error::Precondition(format!("set is not minimal: removing {p} leaves it non-basic")));
    }
    Ok(conjecture_sides(&f, n))
}

fn conjecture_sides(f: &WeightFunction<Int>, n: u32) -> ConjectureCheck {
    let sum_abs = l1_norm(f);
    let rhs = Int::from(2) * (Int::from(f.base().len()) - Int::from(n));
    let holds = sum_abs == rhs;
    ConjectureCheck { sum_abs, rhs, holds }
}

// ---------------------------------------------------------------------------
// exhaustive enumeration

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Upper estimate of the subsets an exhaustive scan may touch.
pub fn exhaustive_estimate(n: u32, d: usize, sizes: &RangeInclusive<usize>) -> u128 {
    let total = (n as u128).saturating_pow(d as u32);
    sizes.clone().map(|k| binomial(total, k as u128)).fold(0, u128::saturating_add)
}

struct Walk<'a> {
    rows: Vec<Vec<i64>>,
    cols_of: Vec<Vec<usize>>,
    /// suffix[i][c]: points with index >= i in layer column c.
    suffix: Vec<Vec<u16>>,
    axis_of_col: Vec<usize>,
    d: usize,
    sizes: &'a RangeInclusive<usize>,
    covering: bool,
}

impl Walk<'_> {
    fn new<'a>(shape: &GridShape, sizes: &'a RangeInclusive<usize>, covering: bool) -> Walk<'a> {
        let points = shape.all_points();
        let ncols = shape.layer_count();
        let cols_of: Vec<Vec<usize>> = points
            .iter()
            .map(|p| (1..=shape.d()).map(|a| shape.column_of(crate::grid::Layer::new(a, p.coord(a)))).collect())
            .collect();
        let rows = cols_of
            .iter()
            .map(|cs| {
                let mut r = vec![0i64; ncols];
                cs.iter().for_each(|&c| r[c] = 1);
                r
            })
            .collect();
        let mut suffix = vec![vec![0u16; ncols]; points.len() + 1];
        for i in (0..points.len()).rev() {
            suffix[i] = suffix[i + 1].clone();
            for &c in &cols_of[i] {
                suffix[i][c] += 1;
            }
        }
        let axis_of_col = (0..ncols).map(|c| shape.layer_of_column(c).axis - 1).collect();
        Walk { rows, cols_of, suffix, axis_of_col, d: shape.d(), sizes, covering }
    }

    fn need(&self, count: usize) -> usize {
        match (self.covering, count) {
            (true, c) if c < 2 => 2 - c,
            (false, 1) => 1,
            _ => 0,
        }
    }

    fn final_ok(&self, counts: &[usize]) -> bool {
        counts.iter().all(|&c| self.need(c) == 0)
    }

    /// Can the current choice still grow into an admissible set using points
    /// from `next` on?
    fn can_extend(&self, counts: &[usize], chosen: usize, next: usize) -> bool {
        let room = self.sizes.end() - chosen;
        let mut per_axis = vec![0usize; self.d];
        for (c, &k) in counts.iter().enumerate() {
            let need = self.need(k);
            if need > self.suffix[next][c] as usize {
                return false;
            }
            per_axis[self.axis_of_col[c]] += need;
        }
        per_axis.iter().all(|&s| s <= room)
    }

    fn go(
        &self,
        next: usize,
        chosen: &mut Vec<usize>,
        counts: &mut [usize],
        ech: &IncrementalEchelon<i64>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for i in next..self.rows.len() {
            chosen.push(i);
            for &c in &self.cols_of[i] {
                counts[c] += 1;
            }
            let reduced = ech.reduce(self.rows[i].clone());
            if reduced.iter().all(|x| *x == 0) {
                if self.sizes.contains(&chosen.len()) && self.final_ok(counts) {
                    out.push(chosen.clone());
                }
            } else if chosen.len() < *self.sizes.end() && self.can_extend(counts, chosen.len(), i + 1) {
                let mut deeper = ech.clone();
                deeper.insert(reduced);
                self.go(i + 1, chosen, counts, &deeper, out);
            }
            for &c in &self.cols_of[i] {
                counts[c] -= 1;
            }
            chosen.pop();
        }
    }
}

/// All minimal non-basic subsets of `[n]^d` with size in `sizes`, reduced
/// modulo symmetry. `layer_covering` keeps only sets meeting every layer.
///
/// Refuses grids above [`EXHAUSTIVE_POINT_LIMIT`] points unless `force`.
pub fn enumerate_minimal_nonbasic(
    n: u32,
    d: usize,
    sizes: RangeInclusive<usize>,
    layer_covering: bool,
    force: bool,
) -> Result<SearchReport> {
    let shape = GridShape::uniform(n, d)?;
    if shape.point_count() > EXHAUSTIVE_POINT_LIMIT && !force {
        return Err(Error::Infeasible {
            estimate: format!(
                "[{n}]^{d} has {} points; up to {} subsets of sizes {}..={}",
                shape.point_count(),
                exhaustive_estimate(n, d, &sizes),
                sizes.start(),
                sizes.end()
            ),
        });
    }
    let points = shape.all_points();
    let walk = Walk::new(&shape, &sizes, layer_covering);
    let ncols = shape.layer_count();
    let raw: Vec<Vec<usize>> = if sizes.is_empty() || *sizes.end() == 0 {
        Vec::new()
    } else {
        (0..points.len())
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                let mut counts = vec![0usize; ncols];
                let mut chosen = vec![first];
                for &c in &walk.cols_of[first] {
                    counts[c] += 1;
                }
                let mut ech = IncrementalEchelon::new(ncols);
                ech.insert(walk.rows[first].clone());
                if chosen.len() < *sizes.end() && walk.can_extend(&counts, 1, first + 1) {
                    walk.go(first + 1, &mut chosen, &mut counts, &ech, &mut out);
                }
                out
            })
            .flatten()
            .collect()
    };
    let canon = Canonicalizer::for_shape(&shape);
    let found: Vec<(usize, PointSet)> = raw
        .into_par_iter()
        .filter_map(|idx| {
            let set = PointSet::from_sorted_unchecked(shape.clone(), idx.iter().map(|&i| points[i].clone()).collect());
            let f = irreducible_annihilation_in::<i64>(&set).ok()?;
            f.values().iter().all(|v| *v != 0).then(|| (set.len(), canon.canon(&set)))
        })
        .collect();
    Ok(build_report(n, d, sizes, layer_covering, SearchMode::Exhaustive, None, None, None, found))
}

#[allow(clippy::too_many_arguments)]
fn build_report(
    n: u32,
    d: usize,
    sizes: RangeInclusive<usize>,
    layer_covering: bool,
    mode: SearchMode,
    seed: Option<u64>,
    budget: Option<u64>,
    restarts_used: Option<u64>,
    found: Vec<(usize, PointSet)>,
) -> SearchReport {
    let mut raw_counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut classes: BTreeMap<usize, BTreeMap<Vec<Point>, PointSet>> = BTreeMap::new();
    for (k, set) in found {
        *raw_counts.entry(k).or_default() += 1;
        classes.entry(k).or_default().entry(set.points().to_vec()).or_insert(set);
    }
    let mut counterexamples = Vec::new();
    let per_size = sizes
        .clone()
        .map(|k| {
            let cls = classes.remove(&k).unwrap_or_default();
            let mut holds = 0;
            let mut fails = 0;
            if d == 3 {
                let checks: Vec<(PointSet, ConjectureCheck)> = cls
                    .values()
                    .filter(|s| s.covers_all_layers())
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .map(|s| {
                        let f = irreducible_annihilation(s).expect("enumerated sets have a 1-dim kernel");
                        (s.clone(), conjecture_sides(&f, n))
                    })
                    .collect();
                for (set, check) in checks {
                    if check.holds {
                        holds += 1;
                    } else {
                        fails += 1;
                        counterexamples.push(ConjectureFinding { set, check });
                    }
                }
            }
            SizeStats {
                size: k,
                raw_count: raw_counts.get(&k).copied().unwrap_or(0),
                classes: cls.len() as u64,
                conjecture_holds: holds,
                conjecture_fails: fails,
                witness: cls.into_values().next().map(Witness::new),
            }
        })
        .collect();
    SearchReport {
        n,
        d,
        sizes,
        layer_covering,
        mode,
        seed,
        budget,
        restarts_used,
        per_size,
        counterexamples,
    }
}

// ---------------------------------------------------------------------------
// random search

/// RNG for one restart: the master seed picks the key, the restart index
/// the stream, so restarts are independent of scheduling.
pub fn restart_rng(seed: u64, restart: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    rng
}

/// Points of `[n]^d` with their incidence rows.
struct GridRows {
    points: Vec<Point>,
    rows: Vec<Vec<i64>>,
    cols_of: Vec<Vec<usize>>,
    ncols: usize,
}

impl GridRows {
    fn new(shape: &GridShape) -> Self {
        let points = shape.all_points();
        let ncols = shape.layer_count();
        let cols_of: Vec<Vec<usize>> = points
            .iter()
            .map(|p| (1..=shape.d()).map(|a| shape.column_of(crate::grid::Layer::new(a, p.coord(a)))).collect())
            .collect();
        let rows = cols_of
            .iter()
            .map(|cs| {
                let mut r = vec![0i64; ncols];
                cs.iter().for_each(|&c| r[c] = 1);
                r
            })
            .collect();
        GridRows { points, rows, cols_of, ncols }
    }

    fn set(&self, shape: &GridShape, idx: &[usize]) -> PointSet {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        PointSet::from_sorted_unchecked(shape.clone(), idx.iter().map(|&i| self.points[i].clone()).collect())
    }

    /// Lower is better; `(0, 0)` means a witness.
    /// First component: distance of the nullity from 1. Second: zeros of
    /// the kernel generator plus layers breaking the count rule.
    fn score(&self, shape: &GridShape, idx: &[usize], covering: bool) -> (usize, usize) {
        let set = self.set(shape, idx);
        let mut counts = vec![0usize; self.ncols];
        for &i in idx {
            for &c in &self.cols_of[i] {
                counts[c] += 1;
            }
        }
        let bad_layers = counts.iter().filter(|&&c| c == 1 || (covering && c == 0)).count();
        let kernel = crate::basis::annihilation_basis_in::<i64>(&set);
        match kernel.len() {
            1 => (0, kernel[0].values().iter().filter(|v| **v == 0).count() + bad_layers),
            k => (k.abs_diff(1), idx.len() + bad_layers),
        }
    }

    /// Circuit inside a random maximal independent set plus one more point.
    fn fundamental_circuit(&self, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.shuffle(rng);
        let mut ech = IncrementalEchelon::<i64>::new(self.ncols);
        let mut basis = Vec::new();
        let mut rest = Vec::new();
        for i in order {
            if ech.insert(self.rows[i].clone()) {
                basis.push(i);
            } else {
                rest.push(i);
            }
        }
        let Some(&extra) = rest.choose(rng) else {
            return basis;
        };
        basis.push(extra);
        basis.sort_unstable();
        let rows: Vec<Vec<Int>> =
            basis.iter().map(|&i| self.rows[i].iter().map(|&x| Int::from(x)).collect()).collect();
        let a = crate::exactlin::ExactMatrix::from_rows(rows, self.ncols).expect("rectangular rows");
        let kernel = crate::exactlin::left_kernel_primitive(&a);
        basis.iter().zip(&kernel.vectors[0]).filter(|(_, v)| !v.is_zero()).map(|(&i, _)| i).collect()
    }
}

/// One restart: sample fundamental circuits; if none has the target size
/// and layer pattern, hill-climb by single swaps from the last sample
/// padded or trimmed to size `k`.
fn restart(grid: &GridRows, shape: &GridShape, k: usize, covering: bool, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let total = grid.points.len();
    if k == 0 || k > total {
        return None;
    }
    let mut state = grid.fundamental_circuit(rng);
    if state.len() == k && grid.score(shape, &state, covering) == (0, 0) {
        return Some(state);
    }
    state.shuffle(rng);
    state.truncate(k);
    while state.len() < k {
        let p = rng.gen_range(0..total);
        if !state.contains(&p) {
            state.push(p);
        }
    }
    let mut score = grid.score(shape, &state, covering);
    for _ in 0..LOCAL_STEPS {
        if score == (0, 0) {
            return Some(state);
        }
        let out = rng.gen_range(0..k);
        let incoming = rng.gen_range(0..total);
        if state.contains(&incoming) {
            continue;
        }
        let old = std::mem::replace(&mut state[out], incoming);
        let s = grid.score(shape, &state, covering);
        if s <= score {
            score = s;
        } else {
            state[out] = old;
        }
    }
    (score == (0, 0)).then_some(state)
}

/// Seeded random search for minimal non-basic sets of size `k`.
///
/// Runs at most `budget` restarts in chunks of [`RANDOM_CHUNK`] and stops
/// after the first chunk that produced a witness. Output depends only on
/// the arguments, not on the number of worker threads.
pub fn random_search(n: u32, d: usize, k: usize, layer_covering: bool, seed: u64, budget: u64) -> Result<SearchReport> {
    let shape = GridShape::uniform(n, d)?;
    let grid = GridRows::new(&shape);
    let canon = Canonicalizer::for_shape(&shape);
    let mut found = Vec::new();
    let mut used = 0u64;
    while used < budget && found.is_empty() {
        let end = (used + RANDOM_CHUNK).min(budget);
        let hits: Vec<PointSet> = (used..end)
            .into_par_iter()
            .filter_map(|r| {
                let mut rng = restart_rng(seed, r);
                restart(&grid, &shape, k, layer_covering, &mut rng).map(|idx| grid.set(&shape, &idx))
            })
            .collect();
        found.extend(hits.iter().map(|s| (k, canon.canon(s))));
        used = end;
    }
    Ok(build_report(n, d, k..=k, layer_covering, SearchMode::Random, Some(seed), Some(budget), Some(used), found))
}

/// [`random_search`] for each size in `sizes`, merged into one report.
pub fn random_search_range(
    n: u32,
    d: usize,
    sizes: RangeInclusive<usize>,
    layer_covering: bool,
    seed: u64,
    budget: u64,
) -> Result<SearchReport> {
    let mut merged = build_report(n, d, sizes.clone(), layer_covering, SearchMode::Random, Some(seed), Some(budget), Some(0), Vec::new());
    merged.per_size.clear();
    for k in sizes {
        let r = random_search(n, d, k, layer_covering, seed, budget)?;
        *merged.restarts_used.as_mut().unwrap() += r.restarts_used.unwrap_or(0);
        merged.per_size.extend(r.per_size);
        merged.counterexamples.extend(r.counterexamples);
    }
    Ok(merged)
}

// ---------------------------------------------------------------------------
// reachability

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachRow {
    pub size: usize,
    pub realized: bool,
    pub mode: SearchMode,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityReport {
    pub n: u32,
    pub d: usize,
    pub seed: u64,
    pub budget: u64,
    pub rows: Vec<ReachRow>,
}

impl ReachabilityReport {
    pub fn realized_sizes(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.realized).map(|r| r.size).collect()
    }
}

/// Sizes strictly between the two bounds for minimal non-basic covering
/// sets: `2n ..= dn - (d - 2)`.
pub fn size_window(n: u32, d: usize) -> RangeInclusive<usize> {
    let lo = 2 * n as usize;
    let hi = (d * n as usize + 2).saturating_sub(d);
    lo..=hi
}

/// Which sizes in [`size_window`] admit a minimal non-basic layer-covering
/// set. Exhaustive on grids within the limit (or with `force`), seeded
/// random search per size otherwise.
pub fn reachability_report(n: u32, d: usize, seed: u64, budget: u64, force: bool) -> Result<ReachabilityReport> {
    let shape = GridShape::uniform(n, d)?;
    let window = size_window(n, d);
    let exhaustive = shape.point_count() <= EXHAUSTIVE_POINT_LIMIT || force;
    let rows = if exhaustive {
        let report = enumerate_minimal_nonbasic(n, d, window, true, true)?;
        report
            .per_size
            .into_iter()
            .map(|s| ReachRow { size: s.size, realized: s.classes > 0, mode: SearchMode::Exhaustive, witness: s.witness })
            .collect()
    } else {
        window
            .map(|k| {
                let report = random_search(n, d, k, true, seed, budget)?;
                let s = report.per_size.into_iter().next().expect("one size");
                Ok(ReachRow { size: k, realized: s.classes > 0, mode: SearchMode::Random, witness: s.witness })
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(ReachabilityReport { n, d, seed, budget, rows })
}

/// Absolute values of the irreducible annihilation, largest first.
pub fn value_profile(f: &WeightFunction<Int>) -> Vec<Int> {
    let mut v: Vec<Int> = f.values().iter().map(|x| x.abs()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}
