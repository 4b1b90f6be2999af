//! Dense simple graphs on the elements of D(G), built either by testing
//! commutation or by assembling the join/union of complete graphs.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::dihedral::{DihedralElement, DihedralGroup, Omega, Part, Sign};
use crate::error::{Error, Result};
use crate::params::DihedralParams;

/// Square boolean matrix with bit-packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    size: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(size: usize) -> Self {
        let words = size.div_ceil(64).max(1);
        BitMatrix {
            size,
            words,
            data: vec![0; words * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Which vertices of D(G) to build a commuting graph on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexSelector {
    All,
    Omega1,
    Omega2,
    Omega3,
    /// Zero-based block index.
    Block(usize),
    Elements(Vec<DihedralElement>),
}

/// A simple undirected graph with canonical vertex order.
///
/// Graphs built from a group carry their elements; graphs built from `(n, r)`
/// alone do not. Part labels are present whenever the vertex set came with an
/// `Ω` partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingGraph {
    elements: Option<Vec<DihedralElement>>,
    parts: Option<Vec<Part>>,
    adjacency: BitMatrix,
}

impl CommutingGraph {
    /// A graph from an explicit adjacency predicate. Loops are ignored.
    pub fn from_fn(size: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adjacency = BitMatrix::new(size);
        for u in 0..size {
            for v in u + 1..size {
                if adjacent(u, v) {
                    adjacency.set(u, v, true);
                    adjacency.set(v, u, true);
                }
            }
        }
        CommutingGraph {
            elements: None,
            parts: None,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.size()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u, v)
    }

    /// Neighbor bitset of `u`.
    pub fn neighbor_bits(&self, u: usize) -> &[u64] {
        self.adjacency.row(u)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&v| self.has_edge(u, v))
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency.row_count(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .map(|v| self.adjacency.row_count(v))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn elements(&self) -> Option<&[DihedralElement]> {
        self.elements.as_deref()
    }

    pub fn parts(&self) -> Option<&[Part]> {
        self.parts.as_deref()
    }

    pub fn part(&self, v: usize) -> Option<Part> {
        self.parts.as_ref().map(|p| p[v])
    }

    /// Indices of vertices whose part lies in `omega`.
    pub fn vertices_in(&self, omega: Omega) -> Vec<usize> {
        match &self.parts {
            Some(parts) => (0..parts.len())
                .filter(|&v| parts[v].omega() == omega)
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn label(&self, v: usize) -> String {
        if let Some(els) = &self.elements {
            return els[v].to_string();
        }
        match self.part(v) {
            Some(part) => {
                let first = self
                    .parts
                    .as_ref()
                    .unwrap()
                    .iter()
                    .position(|&p| p == part)
                    .unwrap();
                format!("{part}.{}", v - first)
            }
            None => format!("v{v}"),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.vertex_count()).map(|v| self.label(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        self.bfs(0).iter().all(|d| d.is_some())
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let n = self.vertex_count();
        let mut dist = vec![None; n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub(crate) fn toggle_edge(&mut self, u: usize, v: usize) {
        let value = !self.adjacency.get(u, v);
        self.adjacency.set(u, v, value);
        self.adjacency.set(v, u, value);
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                index: v,
                count: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Graphviz DOT: one cluster each for `Ω1`, `Ω2`, `Ω3`, with a nested
    /// cluster per block inside `Ω3`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph commuting {\n  node [shape=circle];\n");
        let node = |out: &mut String, indent: &str, v: usize| {
            let _ = writeln!(out, "{indent}v{v} [label=\"{}\"];", self.label(v));
        };
        match &self.parts {
            Some(parts) => {
                for (name, omega) in [("omega1", Omega::Omega1), ("omega2", Omega::Omega2)] {
                    let _ = writeln!(out, "  subgraph cluster_{name} {{\n    label=\"{name}\";");
                    for v in self.vertices_in(omega) {
                        node(&mut out, "    ", v);
                    }
                    out.push_str("  }\n");
                }
                out.push_str("  subgraph cluster_omega3 {\n    label=\"omega3\";\n");
                let mut v = 0;
                while v < parts.len() {
                    if let Part::Block(i) = parts[v] {
                        let _ = writeln!(
                            out,
                            "    subgraph cluster_block{0} {{\n      label=\"B{0}\";",
                            i + 1
                        );
                        while v < parts.len() && parts[v] == Part::Block(i) {
                            node(&mut out, "      ", v);
                            v += 1;
                        }
                        out.push_str("    }\n");
                    } else {
                        v += 1;
                    }
                }
                out.push_str("  }\n");
            }
            None => {
                for v in 0..self.vertex_count() {
                    node(&mut out, "  ", v);
                }
            }
        }
        for u in 0..self.vertex_count() {
            for v in self.neighbors(u).filter(|&v| v > u) {
                let _ = writeln!(out, "  v{u} -- v{v};");
            }
        }
        out.push_str("}\n");
        out
    }

    /// 0/1 adjacency matrix, header row of quoted vertex labels.
    pub fn to_adjacency_csv(&self) -> String {
        let n = self.vertex_count();
        let mut out = self
            .labels()
            .iter()
            .map(|l| format!("\"{l}\""))
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for u in 0..n {
            let row: Vec<&str> = (0..n)
                .map(|v| if self.has_edge(u, v) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

type Keep = dyn Fn(&(DihedralElement, Part)) -> bool;

/// Commuting graph of the selected subset of D(G), in canonical order.
pub fn build_commuting_graph(
    d: &DihedralGroup,
    selector: &VertexSelector,
) -> Result<CommutingGraph> {
    let (elements, parts): (Vec<DihedralElement>, Option<Vec<Part>>) = if d.is_abelian() {
        match selector {
            VertexSelector::All => (d.elements().collect(), None),
            VertexSelector::Elements(list) => {
                let mut list = list.clone();
                for x in &list {
                    d.base().add(&x.g, &x.g)?;
                }
                list.sort_by_key(|x| d.index_of(x));
                list.dedup();
                (list, None)
            }
            _ => return Err(Error::ElementaryAbelian2),
        }
    } else {
        let partition = d.omega_partition()?;
        let order = partition.canonical_order();
        let keep: Box<Keep> = match selector {
            VertexSelector::All => Box::new(|_| true),
            VertexSelector::Omega1 => Box::new(|(_, p)| *p == Part::Omega1),
            VertexSelector::Omega2 => Box::new(|(_, p)| *p == Part::Omega2),
            VertexSelector::Omega3 => Box::new(|(_, p)| matches!(p, Part::Block(_))),
            VertexSelector::Block(i) => {
                if *i >= partition.blocks.len() {
                    return Err(Error::BlockOutOfRange {
                        index: *i,
                        count: partition.blocks.len(),
                    });
                }
                let i = *i;
                Box::new(move |(_, p)| *p == Part::Block(i))
            }
            VertexSelector::Elements(list) => {
                for x in list {
                    d.base().add(&x.g, &x.g)?;
                }
                let list = list.clone();
                Box::new(move |(x, _)| list.contains(x))
            }
        };
        let (els, ps) = order.into_iter().filter(|v| keep(v)).unzip();
        (els, Some(ps))
    };

    // Commutation depends only on the sign, the square, and centrality.
    let base = d.base();
    let keys: Vec<(Sign, usize, bool)> = elements
        .iter()
        .map(|x| {
            let sq = base.square(&x.g).expect("validated element");
            (x.sign, base.index_of(&sq), sq == base.identity())
        })
        .collect();
    let mut graph = CommutingGraph::from_fn(elements.len(), |u, v| {
        let (a, b) = (&keys[u], &keys[v]);
        match (a.0, b.0) {
            (Sign::Plus, Sign::Plus) => true,
            (Sign::Minus, Sign::Minus) => a.1 == b.1,
            (Sign::Plus, Sign::Minus) => a.2,
            (Sign::Minus, Sign::Plus) => b.2,
        }
    });
    graph.elements = Some(elements);
    graph.parts = parts;
    Ok(graph)
}

/// `K_{2^r} ∨ (K_{n-2^r} ∪ (n/2^r)·K_{2^r})`, laid out join part first, then
/// `K_{n-2^r}`, then the copies of `K_{2^r}`.
pub fn build_structural_graph(params: DihedralParams) -> CommutingGraph {
    let c = params.center_size() as usize;
    let n = params.n() as usize;
    let mut parts = Vec::with_capacity(2 * n);
    parts.extend(std::iter::repeat_n(Part::Omega1, c));
    parts.extend(std::iter::repeat_n(Part::Omega2, n - c));
    for i in 0..params.block_count() as usize {
        parts.extend(std::iter::repeat_n(Part::Block(i), c));
    }
    let mut graph = CommutingGraph::from_fn(parts.len(), |u, v| {
        parts[u] == Part::Omega1 || parts[v] == Part::Omega1 || parts[u] == parts[v]
    });
    graph.parts = Some(parts);
    graph
}

/// True iff both adjacency matrices are identical.
pub fn edge_sets_equal(a: &CommutingGraph, b: &CommutingGraph) -> Result<bool> {
    Ok(first_edge_difference(a, b)?.is_none())
}

/// The first pair `(u, v)`, `u < v`, adjacent in exactly one of the graphs.
pub fn first_edge_difference(
    a: &CommutingGraph,
    b: &CommutingGraph,
) -> Result<Option<(usize, usize)>> {
    if a.vertex_count() != b.vertex_count() {
        return Err(Error::SizeMismatch {
            left: a.vertex_count(),
            right: b.vertex_count(),
        });
    }
    for u in 0..a.vertex_count() {
        if a.neighbor_bits(u) != b.neighbor_bits(u) {
            let v = (0..a.vertex_count())
                .find(|&v| a.has_edge(u, v) != b.has_edge(u, v))
                .unwrap();
            return Ok(Some((u.min(v), u.max(v))));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;

    fn dg(spec: &str) -> DihedralGroup {
        DihedralGroup::new(AbelianGroup::parse(spec).unwrap())
    }

    fn is_complete(g: &CommutingGraph) -> bool {
        g.edge_count() == g.vertex_count() * (g.vertex_count() - 1) / 2
    }

    #[test]
    fn subset_graphs() {
        let g = build_commuting_graph(&dg("Z4"), &VertexSelector::Omega1).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert!(is_complete(&g));
        let g = build_commuting_graph(&dg("Z6"), &VertexSelector::Omega2).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!(is_complete(&g));
        let g = build_commuting_graph(&dg("Z2xZ4"), &VertexSelector::Block(1)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!(is_complete(&g));
        let g = build_commuting_graph(&dg("Z6"), &VertexSelector::Omega3).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(
            build_commuting_graph(&dg("Z6"), &VertexSelector::Block(3)),
            Err(Error::BlockOutOfRange { index: 3, count: 3 })
        );
        assert_eq!(
            build_commuting_graph(&dg("Z2xZ2"), &VertexSelector::Omega1),
            Err(Error::ElementaryAbelian2)
        );
    }

    #[test]
    fn explicit_elements_are_reordered_canonically() {
        let d = dg("Z6");
        let p = d.omega_partition().unwrap();
        let picked = vec![
            p.blocks[2][0].clone(),
            p.omega2[1].clone(),
            p.omega1[0].clone(),
        ];
        let g = build_commuting_graph(&d, &VertexSelector::Elements(picked)).unwrap();
        assert_eq!(
            g.elements().unwrap(),
            &[
                p.omega1[0].clone(),
                p.omega2[1].clone(),
                p.blocks[2][0].clone()
            ]
        );
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn whole_group_z3() {
        let g = build_commuting_graph(&dg("Z3"), &VertexSelector::All).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        // triangle on the rotations plus the identity joined to each reflection
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(1, 2));
        for v in 3..6 {
            assert_eq!(g.neighbors(v).collect::<Vec<_>>(), vec![0]);
        }
        assert!(g.is_connected());
    }

    #[test]
    fn abelian_case_is_complete() {
        let g = build_commuting_graph(&dg("Z2xZ2"), &VertexSelector::All).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert!(is_complete(&g));
        assert!(g.parts().is_none());
    }

    #[test]
    fn structural_examples() {
        let s = |n, r| build_structural_graph(DihedralParams::new(n, r).unwrap());
        assert_eq!((s(4, 1).vertex_count(), s(4, 1).edge_count()), (8, 16));
        assert_eq!((s(3, 0).vertex_count(), s(3, 0).edge_count()), (6, 6));
        assert_eq!((s(6, 1).vertex_count(), s(6, 1).edge_count()), (12, 30));
    }

    #[test]
    fn brute_matches_structural() {
        for spec in [
            "Z3", "Z4", "Z5", "Z6", "Z8", "Z2xZ4", "Z3xZ3", "Z2xZ6", "Z4xZ4", "Z2xZ8",
        ] {
            let d = dg(spec);
            let brute = build_commuting_graph(&d, &VertexSelector::All).unwrap();
            let params = DihedralParams::of_group(d.base()).unwrap();
            let structural = build_structural_graph(params);
            assert!(edge_sets_equal(&brute, &structural).unwrap(), "{spec}");
            assert_eq!(brute.parts(), structural.parts());
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let a = build_structural_graph(DihedralParams::new(4, 1).unwrap());
        let b = build_structural_graph(DihedralParams::new(8, 2).unwrap());
        assert!(matches!(
            edge_sets_equal(&a, &b),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn difference_witness() {
        let a = build_structural_graph(DihedralParams::new(6, 1).unwrap());
        let mut b = a.clone();
        b.toggle_edge(7, 3);
        assert_eq!(first_edge_difference(&a, &b).unwrap(), Some((3, 7)));
        assert!(!edge_sets_equal(&a, &b).unwrap());
    }

    #[test]
    fn degrees_and_handshake() {
        let g = build_commuting_graph(&dg("Z4"), &VertexSelector::All).unwrap();
        let p = dg("Z4").omega_partition().unwrap();
        let idx = |x| g.elements().unwrap().iter().position(|y| y == x).unwrap();
        assert_eq!(g.degree(idx(&p.omega1[0])).unwrap(), 7);
        assert_eq!(g.degree(idx(&p.blocks[1][0])).unwrap(), 3);
        assert!(matches!(g.degree(8), Err(Error::VertexOutOfRange { .. })));
        for spec in ["Z3", "Z6", "Z2xZ2", "Z3xZ3"] {
            let g = build_commuting_graph(&dg(spec), &VertexSelector::All).unwrap();
            assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        }
    }

    #[test]
    fn partition_structure_in_graph() {
        for spec in ["Z6", "Z2xZ4", "Z9"] {
            let g = build_commuting_graph(&dg(spec), &VertexSelector::All).unwrap();
            let rot: Vec<_> = g
                .vertices_in(Omega::Omega1)
                .into_iter()
                .chain(g.vertices_in(Omega::Omega2))
                .collect();
            for &u in &rot {
                for &v in &rot {
                    assert_eq!(g.has_edge(u, v), u != v);
                }
            }
            for u in g.vertices_in(Omega::Omega2) {
                assert!(g
                    .vertices_in(Omega::Omega3)
                    .iter()
                    .all(|&v| !g.has_edge(u, v)));
            }
            for u in g.vertices_in(Omega::Omega1) {
                assert_eq!(g.degree(u).unwrap(), g.vertex_count() - 1);
            }
        }
    }

    #[test]
    fn exports() {
        let g = build_commuting_graph(&dg("Z4"), &VertexSelector::All).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("subgraph cluster_omega").count(), 3);
        assert_eq!(dot.matches("subgraph cluster_block").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 16);
        assert!(dot.contains("label=\"(1;-)\""));
        let csv = g.to_adjacency_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 9);
        assert!(lines[0].starts_with("\"(0;+)\",\"(2;+)\""));
        assert_eq!(lines[1], "0,1,1,1,1,1,1,1");
        let s = build_structural_graph(DihedralParams::new(4, 1).unwrap());
        assert_eq!(s.label(5), "block1.1");
    }
}
