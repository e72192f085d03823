//! The N-prime graph and the Gruenberg-Kegel graph of a permutation group.
//!
//! A JSON arc `[q, p]` always means `q -> p`: some subgroup of order `p` is
//! normalized by an element of order `q`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_divisors};
use crate::perm::PermGroup;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawDirected")]
pub struct DirectedPrimeGraph {
    vertices: Vec<u64>,
    arcs: Vec<(u64, u64)>,
}

#[derive(Deserialize)]
struct RawDirected {
    vertices: Vec<u64>,
    arcs: Vec<(u64, u64)>,
}

impl TryFrom<RawDirected> for DirectedPrimeGraph {
    type Error = Error;
    fn try_from(raw: RawDirected) -> Result<Self> {
        DirectedPrimeGraph::new(raw.vertices, raw.arcs)
    }
}

impl DirectedPrimeGraph {
    /// Vertices and arcs are sorted and deduplicated; arcs must join distinct vertices.
    pub fn new(
        vertices: impl IntoIterator<Item = u64>,
        arcs: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<u64> = vertices.into_iter().collect();
        let arcs: BTreeSet<(u64, u64)> = arcs.into_iter().collect();
        for &v in &vertices {
            if !is_prime(v) {
                return Err(Error::param(format!("vertex {v} is not prime")));
            }
        }
        for &(q, p) in &arcs {
            if q == p {
                return Err(Error::param(format!("loop at {q}")));
            }
            if !vertices.contains(&q) || !vertices.contains(&p) {
                return Err(Error::param(format!(
                    "arc {q}->{p} has an endpoint outside the vertex set"
                )));
            }
        }
        Ok(DirectedPrimeGraph {
            vertices: vertices.into_iter().collect(),
            arcs: arcs.into_iter().collect(),
        })
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    /// Arcs `(q, p)` meaning `q -> p`, ascending.
    pub fn arcs(&self) -> &[(u64, u64)] {
        &self.arcs
    }

    pub fn has_arc(&self, q: u64, p: u64) -> bool {
        self.arcs.binary_search(&(q, p)).is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph nprime {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for (q, p) in &self.arcs {
            let _ = writeln!(out, "  {q} -> {p};");
        }
        out.push_str("}\n");
        out
    }

    /// Edges `p - q` for which both arcs are present.
    pub fn double_arc_edges(&self) -> UndirectedPrimeGraph {
        let edges = self
            .arcs
            .iter()
            .filter(|&&(q, p)| q < p && self.has_arc(p, q))
            .copied();
        UndirectedPrimeGraph::new(self.vertices.iter().copied(), edges)
            .expect("subset of a valid graph")
    }

    /// Edges `p - q` for which `p > q` and `p -> q` is an arc.
    pub fn dominance_edges(&self) -> UndirectedPrimeGraph {
        let edges = self
            .arcs
            .iter()
            .filter(|&&(a, b)| a > b)
            .map(|&(a, b)| (b, a));
        UndirectedPrimeGraph::new(self.vertices.iter().copied(), edges)
            .expect("subset of a valid graph")
    }
}

impl FromStr for DirectedPrimeGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_json(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawUndirected")]
pub struct UndirectedPrimeGraph {
    vertices: Vec<u64>,
    edges: Vec<(u64, u64)>,
}

#[derive(Deserialize)]
struct RawUndirected {
    vertices: Vec<u64>,
    edges: Vec<(u64, u64)>,
}

impl TryFrom<RawUndirected> for UndirectedPrimeGraph {
    type Error = Error;
    fn try_from(raw: RawUndirected) -> Result<Self> {
        UndirectedPrimeGraph::new(raw.vertices, raw.edges)
    }
}

impl UndirectedPrimeGraph {
    /// Edges are stored as `(smaller, larger)`.
    pub fn new(
        vertices: impl IntoIterator<Item = u64>,
        edges: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<u64> = vertices.into_iter().collect();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::param(format!("loop at {a}")));
            }
            if !vertices.contains(&a) || !vertices.contains(&b) {
                return Err(Error::param(format!(
                    "edge {a}-{b} has an endpoint outside the vertex set"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(UndirectedPrimeGraph {
            vertices: vertices.into_iter().collect(),
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn has_edge(&self, a: u64, b: u64) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph gk {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GkMode {
    /// An edge `p - q` iff some element has order `pq`.
    ByOrders,
    ByDoubleArcs,
    ByDominance,
}

impl GkMode {
    pub const ALL: [GkMode; 3] = [GkMode::ByOrders, GkMode::ByDoubleArcs, GkMode::ByDominance];
}

/// `N(G)`: vertices are the primes dividing `|G|`; `q -> p` iff some class
/// representative of order `p` has `q` dividing `|N_G(<x>)|`.
pub fn nprime_graph(g: &PermGroup) -> Result<DirectedPrimeGraph> {
    let vertices = prime_divisors(g.order());
    let mut arcs = Vec::new();
    for &p in &vertices {
        for c in g.classes_of_order(p)? {
            let n = g.cyclic_normalizer_order(c)?;
            for q in prime_divisors(n) {
                if q != p {
                    arcs.push((q, p));
                }
            }
        }
    }
    DirectedPrimeGraph::new(vertices, arcs)
}

pub fn gk_graph(g: &PermGroup, mode: GkMode) -> Result<UndirectedPrimeGraph> {
    match mode {
        GkMode::ByOrders => {
            let vertices = prime_divisors(g.order());
            let mut edges = Vec::new();
            for o in g.element_orders()? {
                let ps = prime_divisors(o as u128);
                for (i, &a) in ps.iter().enumerate() {
                    for &b in &ps[i + 1..] {
                        edges.push((a, b));
                    }
                }
            }
            UndirectedPrimeGraph::new(vertices, edges)
        }
        GkMode::ByDoubleArcs => Ok(nprime_graph(g)?.double_arc_edges()),
        GkMode::ByDominance => Ok(nprime_graph(g)?.dominance_edges()),
    }
}

pub fn is_subgraph(small: &DirectedPrimeGraph, big: &DirectedPrimeGraph) -> bool {
    small
        .vertices
        .iter()
        .all(|v| big.vertices.binary_search(v).is_ok())
        && small.arcs.iter().all(|&(q, p)| big.has_arc(q, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;

    fn graph(s: &str) -> DirectedPrimeGraph {
        nprime_graph(&build(&s.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(graph("PSL(2,7)").arcs(), &[(2, 3), (3, 7)]);
        assert_eq!(graph("PSL(2,8)").arcs(), &[(2, 3), (2, 7)]);
        assert_eq!(graph("Alt(5)").arcs(), &[(2, 3), (2, 5)]);
        assert_eq!(graph("Cyclic(1)"), DirectedPrimeGraph::default());
        let c15 = build(&"Cyclic(15)".parse().unwrap()).unwrap();
        for mode in GkMode::ALL {
            assert_eq!(gk_graph(&c15, mode).unwrap().edges(), &[(3, 5)]);
        }
    }

    #[test]
    fn serialization() {
        let g = graph("PSL(2,7)");
        assert_eq!(g.to_json(), r#"{"vertices":[2,3,7],"arcs":[[2,3],[3,7]]}"#);
        assert_eq!(DirectedPrimeGraph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(
            DirectedPrimeGraph::default().to_json(),
            r#"{"vertices":[],"arcs":[]}"#
        );
        let dot = graph("Alt(5)").to_dot();
        assert!(dot.starts_with("digraph nprime {"));
        assert!(dot.contains("2 -> 3;") && dot.contains("2 -> 5;"));
        let u = UndirectedPrimeGraph::new([3, 5], [(5, 3)]).unwrap();
        assert_eq!(u.to_json(), r#"{"vertices":[3,5],"edges":[[3,5]]}"#);
        assert!(u.to_dot().contains("3 -- 5;"));
        assert_eq!(UndirectedPrimeGraph::from_json(&u.to_json()).unwrap(), u);
    }

    #[test]
    fn invalid_graphs_are_rejected() {
        assert!(DirectedPrimeGraph::new([2, 3], [(2, 2)]).is_err());
        assert!(DirectedPrimeGraph::new([2, 3], [(2, 5)]).is_err());
        assert!(DirectedPrimeGraph::new([4], []).is_err());
        assert!(DirectedPrimeGraph::from_json(r#"{"vertices":[2],"arcs":[[2,3]]}"#).is_err());
    }

    #[test]
    fn subgraph_relation() {
        let a = DirectedPrimeGraph::new([2, 3], [(2, 3)]).unwrap();
        let b = DirectedPrimeGraph::new([2, 3], [(3, 2)]).unwrap();
        assert!(is_subgraph(&a, &a));
        assert!(!is_subgraph(&a, &b));
        assert!(is_subgraph(&DirectedPrimeGraph::default(), &a));
    }
}
