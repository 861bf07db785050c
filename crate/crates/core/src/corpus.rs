//! Exhaustive generator of small graphs, one per isomorphism class.
//!
//! Vertices are named `a`, `b`, `c`, ...; each ordered pair of vertices
//! (loops included) carries at most one bundle, of multiplicity 1, 2 or
//! omega. Bundles are named `e0`, `e1`, ... in pair order.

use crate::graph::{BundleSpec, Graph, Multiplicity};

const LABELS: [Multiplicity; 3] = [Multiplicity::Finite(1), Multiplicity::Finite(2), Multiplicity::Omega];

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// A graph on `n` vertices is kept only if its label vector (pair `i*n+j`
/// holds 0 for no bundle or 1 + the multiplicity label) is the
/// lexicographically greatest among all vertex relabellings.
fn is_canonical(code: &[u8], n: usize, perms: &[Vec<usize>]) -> bool {
    let mut image = vec![0u8; code.len()];
    for p in perms {
        for i in 0..n {
            for j in 0..n {
                image[p[i] * n + p[j]] = code[i * n + j];
            }
        }
        if image.as_slice() > code {
            return false;
        }
    }
    true
}

fn build(code: &[u8], n: usize) -> Graph {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut bundles = Vec::new();
    for (pair, &label) in code.iter().enumerate() {
        if label > 0 {
            bundles.push(BundleSpec::new(
                format!("e{}", bundles.len()),
                names[pair / n].clone(),
                names[pair % n].clone(),
                LABELS[label as usize - 1],
            ));
        }
    }
    Graph::new(names, bundles).expect("generated graphs are well formed")
}

/// Visits every label vector that agrees with `code` before `pos` and has
/// at most `budget` further bundles, in increasing lexicographic order.
fn fill(code: &mut [u8], pos: usize, budget: usize, n: usize, perms: &[Vec<usize>], out: &mut Vec<Graph>) {
    if pos == code.len() {
        if is_canonical(code, n, perms) {
            out.push(build(code, n));
        }
        return;
    }
    fill(code, pos + 1, budget, n, perms, out);
    if budget > 0 {
        for label in 1..=LABELS.len() as u8 {
            code[pos] = label;
            fill(code, pos + 1, budget - 1, n, perms, out);
        }
        code[pos] = 0;
    }
}

/// Every graph with 1..=`max_vertices` vertices and at most `max_bundles`
/// bundles, up to isomorphism, in a fixed order: by vertex count, then by
/// label vector.
pub fn small_graphs(max_vertices: usize, max_bundles: usize) -> Vec<Graph> {
    assert!(max_vertices <= 26, "vertex names run from a to z");
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let perms = permutations(n);
        let pairs = n * n;
        let mut code = vec![0u8; pairs];
        fill(&mut code, 0, max_bundles, n, &perms, &mut out);
    }
    out
}

/// The corpus used by the test suites: up to 4 vertices and 5 bundles.
pub fn standard_corpus() -> Vec<Graph> {
    small_graphs(4, 5)
}
