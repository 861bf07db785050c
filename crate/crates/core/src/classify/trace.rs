use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::graph::{Graph, Multiplicity, Vertex};
use crate::lp::find_feasible;

/// A nonnegative vertex weighting with `g(v) = Σ g(r(e))` over the edges of
/// each finite emitter and `g(v) ≥` every finite partial sum at infinite
/// emitters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphTrace {
    pub values: Vec<BigRational>,
}

impl GraphTrace {
    pub fn value(&self, v: Vertex) -> &BigRational {
        &self.values[v]
    }

    /// `‖g‖ = Σ g(v)`.
    pub fn norm(&self) -> BigRational {
        self.values.iter().sum()
    }

    /// Checks every trace constraint exactly and that the trace is nonzero.
    pub fn check(&self, graph: &Graph) -> Result<(), String> {
        if self.values.len() != graph.vertex_count() {
            return Err("one value per vertex expected".into());
        }
        if let Some(v) = graph.vertices().find(|&v| self.values[v].is_negative()) {
            return Err(format!("negative value at `{}`", graph.name(v)));
        }
        if self.values.iter().all(Zero::is_zero) {
            return Err("trace is zero".into());
        }
        for v in graph.vertices() {
            let mut finite_part = BigRational::zero();
            for &b in graph.out_bundles(v) {
                let bundle = graph.bundle(b);
                let target = &self.values[bundle.target];
                match bundle.mult {
                    Multiplicity::Finite(m) => finite_part += target * BigRational::from_integer(m.into()),
                    // g(v) ≥ n·g(w) for every n forces g(w) = 0
                    Multiplicity::Omega if !target.is_zero() => {
                        return Err(format!(
                            "`{}` emits infinitely many edges to `{}` which has nonzero weight",
                            graph.name(v),
                            graph.name(bundle.target)
                        ));
                    }
                    Multiplicity::Omega => {}
                }
            }
            let ok = if graph.is_infinite_emitter(v) {
                self.values[v] >= finite_part
            } else if graph.is_sink(v) {
                true
            } else {
                self.values[v] == finite_part
            };
            if !ok {
                return Err(format!("trace constraint fails at `{}`", graph.name(v)));
            }
        }
        Ok(())
    }
}

/// Searches for a nonzero trace normalised to `‖g‖ = 1`.
///
/// The infinite family of partial-sum inequalities at an infinite emitter
/// reduces to `g(w) = 0` for each omega-bundle target `w` plus one
/// inequality against the finite bundles; the inequality gets a slack
/// variable so the whole system is `A x = b, x ≥ 0`.
pub fn graph_trace(graph: &Graph) -> Option<GraphTrace> {
    let n = graph.vertex_count();
    if n == 0 {
        return None;
    }
    let emitters: Vec<Vertex> = graph.vertices().filter(|&v| graph.is_infinite_emitter(v)).collect();
    let cols = n + emitters.len();
    let zero_row = || vec![BigRational::zero(); cols];
    let q = |m: u64| BigRational::from_integer(m.into());

    let mut a = Vec::new();
    let mut b = Vec::new();
    for v in graph.vertices() {
        if graph.is_sink(v) {
            continue;
        }
        let mut row = zero_row();
        row[v] += q(1);
        for &e in graph.out_bundles(v) {
            let bundle = graph.bundle(e);
            match bundle.mult {
                Multiplicity::Finite(m) => row[bundle.target] -= q(m),
                Multiplicity::Omega => {
                    let mut pin = zero_row();
                    pin[bundle.target] = q(1);
                    a.push(pin);
                    b.push(BigRational::zero());
                }
            }
        }
        if let Some(k) = emitters.iter().position(|&u| u == v) {
            row[n + k] = -q(1);
        }
        a.push(row);
        b.push(BigRational::zero());
    }
    let mut norm = zero_row();
    norm[..n].iter_mut().for_each(|x| *x = q(1));
    a.push(norm);
    b.push(q(1));

    let x = find_feasible(&a, &b)?;
    Some(GraphTrace {
        values: x[..n].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn single_loop_trace() {
        let g = Graph::builder().vertex("v").edge("e", "v", "v", 1).build().unwrap();
        let t = graph_trace(&g).unwrap();
        assert_eq!(t.values, vec![int(1)]);
        assert!(t.check(&g).is_ok());
    }

    #[test]
    fn rose_has_no_trace() {
        let g = Graph::builder()
            .vertex("v")
            .edge("a", "v", "v", 1)
            .edge("b", "v", "v", 1)
            .build()
            .unwrap();
        assert!(graph_trace(&g).is_none());
    }

    #[test]
    fn toeplitz_trace() {
        let g = Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "v", 1)
            .edge("f", "v", "w", 1)
            .build()
            .unwrap();
        let t = graph_trace(&g).unwrap();
        assert_eq!(t.values, vec![int(1), int(0)]);
        assert_eq!(t.norm(), int(1));
    }

    #[test]
    fn omega_targets_vanish() {
        let g = Graph::builder()
            .vertices(["v", "w", "u"])
            .omega("a", "v", "w")
            .edge("b", "v", "u", 1)
            .build()
            .unwrap();
        let t = graph_trace(&g).unwrap();
        assert!(t.check(&g).is_ok());
        assert!(t.value(g.vertex("w").unwrap()).is_zero());
        let bad = GraphTrace {
            values: vec![int(0), int(0), int(1)],
        };
        assert!(bad.check(&g).is_err());
    }

    #[test]
    fn check_rejects_violations() {
        let g = Graph::builder()
            .vertices(["v", "w"])
            .edge("f", "v", "w", 2)
            .build()
            .unwrap();
        assert!(GraphTrace { values: vec![int(2), int(1)] }.check(&g).is_ok());
        assert!(GraphTrace { values: vec![int(1), int(1)] }.check(&g).is_err());
        assert!(GraphTrace { values: vec![int(0), int(0)] }.check(&g).is_err());
        assert!(GraphTrace { values: vec![int(-2), int(-1)] }.check(&g).is_err());
    }
}
