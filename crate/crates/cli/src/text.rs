//! Plain-text rendering: points as tuples, functions as sums of `1_X`.

use gridbasis::basis::{BasisVerdict, Certificate, Decomposition};
use gridbasis::constructions::NamedFamily;
use gridbasis::graphs::{GraphVerdict, MultiGraph};
use gridbasis::rectangles::RectangleTerm;
use gridbasis::search::{ReachabilityReport, SearchReport};
use gridbasis::{Int, PointSet, WeightFunction};
use num_traits::{One, Signed, Zero};

/// `2*1_(1,1,1) - 1_(1,1,2) + ...`; zero terms are skipped.
pub fn function(f: &WeightFunction<Int>) -> String {
    let mut out = String::new();
    for (p, v) in f.iter().filter(|(_, v)| !v.is_zero()) {
        let sign = if v.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if v.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = v.abs();
        if !a.is_one() {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(&format!("1_{p}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn vector(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn set(m: &PointSet) -> String {
    format!("{} points: {m}", m.len())
}

pub fn verdict(v: &BasisVerdict<Int>, m: &PointSet) -> String {
    let mut s = format!("{}\n{}\nrank: {}\n", if v.basic { "basic" } else { "non-basic" }, set(m), v.rank);
    match &v.certificate {
        Certificate::Independent { pivot_layers } => {
            let ls: Vec<String> = pivot_layers.iter().map(|l| l.to_string()).collect();
            s.push_str(&format!("independent on layers: {}\n", ls.join(", ")));
        }
        Certificate::Annihilation(f) => s.push_str(&format!("annihilation: {}\n", function(f))),
    }
    s
}

pub fn kernel(basis: &[WeightFunction<Int>]) -> String {
    let mut s = format!("dimension: {}\n", basis.len());
    for f in basis {
        s.push_str(&format!("  {}\n", function(f)));
    }
    s
}

pub fn decomposition(d: &Decomposition) -> String {
    match d {
        Decomposition::Solved(c) => {
            let mut s = String::from("decomposable\n");
            for (a, t) in c.tables.iter().enumerate() {
                let vals: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                s.push_str(&format!("  f{}: [{}]\n", a + 1, vals.join(", ")));
            }
            s
        }
        Decomposition::Infeasible { certificate, pairing } => {
            format!("not decomposable\n  certificate g = {}\n  <g, f> = {pairing}\n", function(certificate))
        }
    }
}

pub fn rectangles(terms: &[RectangleTerm], d: usize) -> String {
    let mut s = format!("{} rectangle terms\n", terms.len());
    for t in terms {
        let [p, q, r, v] = t.vertices(d);
        s.push_str(&format!("  {} * (1_{p} - 1_{q} + 1_{r} - 1_{v})\n", t.coeff));
    }
    s
}

pub fn graph_verdict(g: &MultiGraph, v: &GraphVerdict) -> String {
    let mut s = format!(
        "{} ({} vertices, {} edges)\n",
        if v.basic { "basic" } else { "non-basic" },
        g.vertex_count(),
        g.edges().len()
    );
    if let Some(c) = &v.bipartite {
        let one = |xs: &[usize]| xs.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",");
        s.push_str(&format!("bipartite component: {{{}}} | {{{}}}\n", one(&c.part_a), one(&c.part_b)));
    }
    s
}

pub fn family(f: &NamedFamily) -> String {
    let mut s = format!("{}\n{}\n", f.family, set(&f.set));
    if let Some(a) = &f.claimed_annihilation {
        s.push_str(&format!("annihilated by: {}\n", function(a)));
    }
    s
}

pub fn search(r: &SearchReport) -> String {
    let mut s = format!(
        "[{}]^{} sizes {}..={} ({}, {})\n",
        r.n,
        r.d,
        r.sizes.start(),
        r.sizes.end(),
        r.mode.as_str(),
        if r.layer_covering { "covering" } else { "any" }
    );
    for st in &r.per_size {
        s.push_str(&format!(
            "  size {:>2}: {} raw, {} classes, conjecture {} hold / {} fail\n",
            st.size, st.raw_count, st.classes, st.conjecture_holds, st.conjecture_fails
        ));
        if let Some(w) = &st.witness {
            s.push_str(&format!("    witness {}\n    f = {}\n", w.set, function(&w.annihilation)));
        }
    }
    for c in &r.counterexamples {
        s.push_str(&format!("  counterexample {}: sum |f| = {}, 2(|M|-n) = {}\n", c.set, c.check.sum_abs, c.check.rhs));
    }
    s
}

pub fn reachability(r: &ReachabilityReport) -> String {
    let mut s = format!("[{}]^{}\n", r.n, r.d);
    for row in &r.rows {
        s.push_str(&format!(
            "  size {:>2}: {} ({})\n",
            row.size,
            if row.realized { "realized" } else { "not found" },
            row.mode.as_str()
        ));
        if let Some(w) = &row.witness {
            s.push_str(&format!("    {}\n", w.set));
        }
    }
    s
}
