//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.
//! Budgets are wall-clock limits in release-grade test builds.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{all_subsets, indicator_oracle, naive_incidence, naive_left_kernel, naive_rank};
use gridbasis::basis::{is_basic_2d_fast, two_coloring_criterion, TwoColoring};
use gridbasis::constructions::{cross_set, staircase_set, unbounded_family};
use gridbasis::graphs::{
    graph_is_basic, hypergraph_from_set, hypergraph_is_basic, solve_edge_weights, vertex_sums, MultiGraph,
};
use gridbasis::rectangles::{decompose_into_rectangles, eval_rectangles, term_bound, verify_decomposition, RectangleTerm};
use gridbasis::search::{check_conjecture, enumerate_minimal_nonbasic, reachability_report};
use gridbasis::{irreducible_annihilation, is_basic, is_minimal_nonbasic, GridShape, Int, Point, PointSet, Rational, WeightFunction};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

type Criterion = (&'static str, Duration, fn() -> Result<(), String>);

fn set(n: u32, pts: &[&[u32]]) -> PointSet {
    PointSet::from_coords(GridShape::uniform(n, pts[0].len()).unwrap(), pts).unwrap()
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Minimal non-basic by naive ranks: corank 1 and every deletion independent.
fn naive_minimal(m: &PointSet) -> bool {
    let a = naive_incidence(m);
    if m.is_empty() || naive_rank(&a) != m.len() - 1 {
        return false;
    }
    (0..m.len()).all(|i| {
        let rest: Vec<Vec<i64>> = a.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
        naive_rank(&rest) == m.len() - 1
    })
}

fn criterion_1() -> Result<(), String> {
    let ex1 = set(2, &[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2], &[2, 2, 2]]);
    if !is_basic(&ex1).basic {
        return Err("independent four-point set not basic".into());
    }
    let five = set(2, &[&[1, 1, 1], &[1, 1, 2], &[1, 2, 1], &[2, 1, 1], &[2, 2, 2]]);
    let f = irreducible_annihilation(&five).map_err(|e| e.to_string())?;
    if is_basic(&five).basic || f.values() != ints(&[2, -1, -1, -1, 1]) {
        return Err(format!("five-point set gave {:?}", f.values()));
    }
    let padded = set(2, &[&[1, 1, 1], &[2, 1, 1], &[1, 2, 1], &[1, 1, 2], &[2, 2, 1]]);
    if is_basic(&padded).basic || is_minimal_nonbasic(&padded) {
        return Err("padded set misclassified".into());
    }
    let g = irreducible_annihilation(&padded).map_err(|e| e.to_string())?;
    if g.value_at(&Point::new([1, 1, 2])) != Some(&Int::zero()) {
        return Err(format!("padded set kernel {:?}", g.values()));
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let mut disagreements = Vec::new();
    let mut count = 0;
    for (n, d) in [(2, 2), (3, 2), (2, 3)] {
        for m in all_subsets(n, d) {
            count += 1;
            let truth = indicator_oracle(&m);
            let mut verdicts = vec![is_basic(&m).basic, hypergraph_is_basic(&hypergraph_from_set(&m)).basic];
            if d == 2 {
                verdicts.push(is_basic_2d_fast(&m).map_err(|e| e.to_string())?);
            }
            if let Ok(c) = two_coloring_criterion(&m) {
                verdicts.push(c == TwoColoring::Basic);
            }
            if verdicts.iter().any(|&v| v != truth) {
                disagreements.push(m.to_string());
            }
        }
    }
    if count != 16 + 512 + 256 || !disagreements.is_empty() {
        return Err(format!("{count} subsets, disagreements: {disagreements:?}"));
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    for (n, bound) in [(2u32, 3usize), (3, 5)] {
        let max = all_subsets(n, 2).into_iter().filter(indicator_oracle).map(|m| m.len()).max().unwrap();
        if max != bound || max != 2 * n as usize - 1 {
            return Err(format!("[{n}]^2 max basic size {max}"));
        }
    }
    for n in 2..=4 {
        for d in 2..=4 {
            let c = cross_set(n, d).map_err(|e| e.to_string())?;
            if c.set.len() != d * n as usize - (d - 1) || !is_basic(&c.set).basic {
                return Err(format!("cross({n},{d})"));
            }
        }
    }
    Ok(())
}

/// Kernel generators of every minimal non-basic covering subset of [2]^3.
fn binary_cube_generators() -> Vec<WeightFunction<Int>> {
    all_subsets(2, 3)
        .into_iter()
        .filter(|m| m.covers_all_layers() && naive_minimal(m))
        .map(|m| {
            let k = naive_left_kernel(&naive_incidence(&m));
            WeightFunction::new(m, k[0].clone()).unwrap()
        })
        .collect()
}

fn criterion_4() -> Result<(), String> {
    let gens = binary_cube_generators();
    let sizes: BTreeSet<usize> = gens.iter().map(|g| g.base().len()).collect();
    if sizes.iter().any(|&s| !(4..=5).contains(&s)) {
        return Err(format!("oracle sizes {sizes:?}"));
    }
    let r = enumerate_minimal_nonbasic(2, 3, 1..=8, true, false).map_err(|e| e.to_string())?;
    let found: BTreeSet<usize> = r.realized_sizes().into_iter().collect();
    if found != sizes {
        return Err(format!("search sizes {found:?} vs oracle {sizes:?}"));
    }
    for n in 2..=5 {
        for d in 2..=4 {
            let s = staircase_set(n, d).map_err(|e| e.to_string())?;
            if s.set.len() != 2 * n as usize || !naive_minimal(&s.set) || !is_minimal_nonbasic(&s.set) {
                return Err(format!("staircase({n},{d})"));
            }
        }
    }
    Ok(())
}

fn random_graph(rng: &mut ChaCha8Rng) -> MultiGraph {
    let n = rng.gen_range(2..=10usize);
    let m = rng.gen_range(0..=15usize);
    let edges = (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect();
    MultiGraph::new(n, edges).unwrap()
}

fn edge_multisets(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(pairs: &[(usize, usize)], k: usize, start: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(cur.clone());
        if cur.len() < k {
            for i in start..pairs.len() {
                cur.push(pairs[i]);
                go(pairs, k, i, cur, out);
                cur.pop();
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    go(&pairs, k, 0, &mut Vec::new(), &mut out);
    out
}

fn check_graph(g: &MultiGraph, w: &[Rational]) -> Result<(), String> {
    let rows: Vec<Vec<i64>> = (0..g.vertex_count())
        .map(|v| g.edges().iter().map(|&(a, b)| i64::from(a == v || b == v)).collect())
        .collect();
    let truth = if g.edges().is_empty() { g.vertex_count() == 0 } else { naive_rank(&rows) == g.vertex_count() };
    let v = graph_is_basic(g);
    if v.basic != truth || !v.verify(g) {
        return Err(format!("verdict on {g:?}"));
    }
    match solve_edge_weights(g, w) {
        Ok(e) if truth && vertex_sums(g, &e) == w => Ok(()),
        Err(_) if !truth => Ok(()),
        _ => Err(format!("solve on {g:?}")),
    }
}

fn criterion_5() -> Result<(), String> {
    let mut count = 0;
    for n in 1..=5usize {
        let w: Vec<Rational> = (0..n as i64).map(|i| Rational::new(Int::from(3 * i - 2), Int::from(i + 1))).collect();
        for edges in edge_multisets(n, 6) {
            check_graph(&MultiGraph::new(n, edges).unwrap(), &w)?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let g = random_graph(&mut rng);
        let w: Vec<Rational> = (0..g.vertex_count()).map(|_| Rational::from_integer(Int::from(rng.gen_range(-9..=9)))).collect();
        check_graph(&g, &w)?;
        count += 1;
    }
    println!("      {count} graphs checked");
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    for m in 1..=5u32 {
        let u = unbounded_family(m).map_err(|e| e.to_string())?;
        let v = is_basic(&u.set);
        let f = irreducible_annihilation(&u.set).map_err(|e| e.to_string())?;
        let max = f.values().iter().map(|x| x.abs()).max().unwrap();
        if v.basic || u.set.len() - v.rank != 1 || !is_minimal_nonbasic(&u.set) || max != Int::from(m) {
            return Err(format!("unbounded({m}): max |value| {max}"));
        }
    }
    Ok(())
}

fn random_rectangle(rng: &mut ChaCha8Rng, n: u32, d: usize) -> RectangleTerm {
    let mut axes: Vec<usize> = (1..=d).collect();
    let i = axes.remove(rng.gen_range(0..axes.len()));
    let j = axes.remove(rng.gen_range(0..axes.len()));
    let (i, j) = (i.min(j), i.max(j));
    let pair = |rng: &mut ChaCha8Rng| {
        let a = rng.gen_range(1..=n);
        let mut b = rng.gen_range(1..n);
        if b >= a {
            b += 1;
        }
        (a.min(b), a.max(b))
    };
    let vi = pair(rng);
    let vj = pair(rng);
    let fixed = (1..=d).filter(|&a| a != i && a != j).map(|a| (a, rng.gen_range(1..=n))).collect();
    let c = rng.gen_range(1..=4i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    RectangleTerm { axes: (i, j), values: [vi, vj], fixed, coeff: Int::from(c) }
}

fn criterion_7() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut inputs = Vec::new();
    for _ in 0..200 {
        let n = rng.gen_range(2..=4u32);
        let d = rng.gen_range(2..=3usize);
        let k = rng.gen_range(1..=6);
        let terms: Vec<RectangleTerm> = (0..k).map(|_| random_rectangle(&mut rng, n, d)).collect();
        inputs.push(eval_rectangles(&terms, &GridShape::uniform(n, d).unwrap()).map_err(|e| e.to_string())?);
    }
    inputs.extend(binary_cube_generators());
    for g in &inputs {
        let out = decompose_into_rectangles(g).map_err(|e| e.to_string())?;
        if !verify_decomposition(g, &out) || out.len() > term_bound(g.base().shape()) {
            return Err(format!("round trip failed on {:?}", g.values()));
        }
        let again = eval_rectangles(&out, g.base().shape()).map_err(|e| e.to_string())?;
        if again.iter().any(|(p, v)| g.value_at(p).map_or(!v.is_zero(), |w| w != v)) {
            return Err("re-evaluation differs".into());
        }
    }
    let five = WeightFunction::new(
        set(2, &[&[1, 1, 1], &[1, 1, 2], &[1, 2, 1], &[2, 1, 1], &[2, 2, 2]]),
        ints(&[2, -1, -1, -1, 1]),
    )
    .unwrap();
    let terms = decompose_into_rectangles(&five).map_err(|e| e.to_string())?;
    if terms.len() != 3 || !verify_decomposition(&five, &terms) {
        return Err(format!("five-point function gave {} terms", terms.len()));
    }
    println!("      {} functions round-tripped", inputs.len() + 1);
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    let r3 = reachability_report(3, 3, 1, 10_000, false).map_err(|e| e.to_string())?;
    let s3 = r3.realized_sizes();
    if !s3.contains(&6) || !s3.contains(&7) {
        return Err(format!("[3]^3 realized {s3:?}"));
    }
    let r4 = reachability_report(4, 3, 1, 10_000, false).map_err(|e| e.to_string())?;
    let s4 = r4.realized_sizes();
    if s4 != vec![8, 9, 10, 11] {
        return Err(format!("[4]^3 realized {s4:?}"));
    }
    for row in r3.rows.iter().chain(&r4.rows) {
        if let Some(w) = &row.witness {
            if !w.verify(true) || !naive_minimal(&w.set) {
                return Err(format!("witness of size {} failed", row.size));
            }
        }
    }
    println!("      [3]^3 realizes {s3:?}, [4]^3 realizes {s4:?}");
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    let mut findings = 0;
    let mut judged = 0;
    for n in [2, 3] {
        let r = enumerate_minimal_nonbasic(n, 3, 1..=(n as usize).pow(3), true, false).map_err(|e| e.to_string())?;
        judged += r.per_size.iter().map(|s| s.conjecture_holds + s.conjecture_fails).sum::<u64>();
        for s in &r.per_size {
            if let Some(w) = &s.witness {
                if !w.verify(true) || !naive_minimal(&w.set) {
                    return Err(format!("witness of size {} failed", s.size));
                }
            }
        }
        for c in &r.counterexamples {
            let k = naive_left_kernel(&naive_incidence(&c.set));
            let sum: Int = k[0].iter().map(|x| x.abs()).sum();
            let rhs = Int::from(2 * (c.set.len() as i64 - n as i64));
            if !naive_minimal(&c.set) || c.check.sum_abs != sum || c.check.rhs != rhs || c.check.holds || sum == rhs {
                return Err(format!("finding not exact: {}", c.set));
            }
            if check_conjecture(&c.set).map_err(|e| e.to_string())? != c.check {
                return Err("finding not reproducible".into());
            }
            findings += 1;
        }
    }
    println!("      {judged} classes audited, {findings} counterexamples reported and re-verified");
    Ok(())
}

fn criterion_10() -> Result<(), String> {
    let bin = env!("CARGO_BIN_EXE_gridbasis");
    let five = r#"{"d":3,"n":2,"points":[[1,1,1],[1,1,2],[1,2,1],[2,1,1],[2,2,2]],"values":[2,-1,-1,-1,1]}"#;
    let runs: Vec<Vec<&str>> = vec![
        vec!["check", five],
        vec!["kernel", five],
        vec!["minimal", five],
        vec!["decompose", five],
        vec!["rectangles", five],
        vec!["hypergraph", five],
        vec!["conjecture", five],
        vec!["construct", "unbounded", "--m", "3", "--verify"],
        vec!["search", "--n", "2", "--d", "3"],
        vec!["search", "--n", "4", "--d", "3", "--size", "9", "--random", "--seed", "3", "--budget", "300"],
        vec!["reachability", "--n", "2", "--d", "3", "--format", "text"],
    ];
    for args in runs {
        let go = || Command::new(bin).args(&args).output().map_err(|e| e.to_string());
        let (a, b) = (go()?, go()?);
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status != b.status || a.stdout.is_empty() {
            return Err(format!("{args:?} not reproducible"));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 worked examples", SECOND, criterion_1),
        ("2 oracle equivalence", 5 * MINUTE, criterion_2),
        ("3 basic-size bound tightness", MINUTE, criterion_3),
        ("4 minimal non-basic size bounds", 5 * MINUTE, criterion_4),
        ("5 graph criterion agreement", 2 * MINUTE, criterion_5),
        ("6 unbounded family", 10 * SECOND, criterion_6),
        ("7 rectangle round trip", 5 * MINUTE, criterion_7),
        ("8 reachability", 30 * MINUTE, criterion_8),
        ("9 conjecture audit", 30 * MINUTE, criterion_9),
        ("10 determinism", 5 * MINUTE, criterion_10),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if took > limit { Err(format!("took {took:.2?}, limit {limit:?}")) } else { Ok(()) }
        });
        match outcome {
            Ok(()) => println!("PASS  {name} ({took:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name} ({took:.2?}): {e}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
