//! Degrees, edge count and chromatic number: the closed forms, the n-coloring
//! built part by part, and an exact DSATUR branch-and-bound oracle.

use crate::dihedral::{Omega, Part};
use crate::error::{Error, Result};
use crate::graph::CommutingGraph;
use crate::masks::{neighbor_masks, ones};
use crate::params::DihedralParams;

pub const DEFAULT_CHROMATIC_CAP: usize = 24;

pub fn degree_formula(params: DihedralParams, omega: Omega) -> u64 {
    let n = params.n();
    match omega {
        Omega::Omega1 => 2 * n - 1,
        Omega::Omega2 => n - 1,
        Omega::Omega3 => 2 * params.center_size() - 1,
    }
}

/// `3n·2^(r-1) + n(n-2)/2`, rearranged as `n(3·2^r + n - 2)/2` so that `r = 0`
/// stays integral.
pub fn edge_count_formula(params: DihedralParams) -> u64 {
    let n = params.n();
    n * (3 * params.center_size() + n - 2) / 2
}

pub fn chromatic_number_formula(params: DihedralParams) -> u64 {
    params.n()
}

/// A vertex coloring with colors `0..count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    fn from_colors(colors: Vec<usize>) -> Self {
        let count = colors.iter().max().map_or(0, |m| m + 1);
        Coloring { colors, count }
    }

    /// An edge with both ends the same color, if any.
    pub fn conflict(&self, g: &CommutingGraph) -> Option<(usize, usize)> {
        (0..g.vertex_count()).find_map(|u| {
            g.neighbors(u)
                .find(|&v| v > u && self.colors[u] == self.colors[v])
                .map(|v| (u, v))
        })
    }
}

/// Distinct colors on `Ω1 ∪ Ω2`; the `j`-th vertex of every block reuses the
/// color of the `j`-th vertex of `Ω2`. Needs `|Ω2| ≥ 2^r`, which holds since
/// `n ≥ 2·2^r`.
pub fn construct_coloring(g: &CommutingGraph) -> Result<Coloring> {
    let parts = g.parts().ok_or(Error::MissingPartition)?;
    let mut colors = vec![0; parts.len()];
    let mut next = 0;
    let mut omega2_colors = Vec::new();
    for (v, part) in parts.iter().enumerate() {
        if matches!(part, Part::Omega1 | Part::Omega2) {
            colors[v] = next;
            if *part == Part::Omega2 {
                omega2_colors.push(next);
            }
            next += 1;
        }
    }
    let mut position = 0;
    for v in 0..parts.len() {
        if let Part::Block(i) = parts[v] {
            if v == 0 || parts[v - 1] != Part::Block(i) {
                position = 0;
            }
            colors[v] = *omega2_colors.get(position).ok_or(Error::Usage(format!(
                "block {} is larger than omega2",
                i + 1
            )))?;
            position += 1;
        }
    }
    Ok(Coloring::from_colors(colors))
}

/// Result of the exact chromatic search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticOracle {
    pub chromatic_number: usize,
    pub coloring: Coloring,
    /// A maximum clique, the lower-bound certificate.
    pub clique: Vec<usize>,
}

/// Exact `χ(g)` on at most `cap` vertices.
pub fn chromatic_number_oracle(g: &CommutingGraph, cap: usize) -> Result<ChromaticOracle> {
    let adj = neighbor_masks(g, "chromatic oracle", cap)?;
    let clique = max_clique(&adj);
    let (chromatic_number, colors) = exact_coloring(&adj, clique.len());
    Ok(ChromaticOracle {
        chromatic_number,
        coloring: Coloring::from_colors(colors),
        clique,
    })
}

/// Maximum clique by branch and bound on candidate sets.
pub(crate) fn max_clique(adj: &[u64]) -> Vec<usize> {
    fn expand(adj: &[u64], current: &mut Vec<usize>, candidates: u64, best: &mut Vec<usize>) {
        if candidates == 0 {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            if current.len() + rest.count_ones() as usize <= best.len() {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            current.push(v);
            expand(adj, current, rest & adj[v], best);
            current.pop();
        }
        if current.len() > best.len() {
            *best = current.clone();
        }
    }
    let n = adj.len();
    let mut best = Vec::new();
    if n > 0 {
        expand(adj, &mut Vec::new(), crate::masks::full_mask(n), &mut best);
    }
    best
}

/// DSATUR-ordered branch and bound; stops as soon as `lower` colors suffice.
pub(crate) fn exact_coloring(adj: &[u64], lower: usize) -> (usize, Vec<usize>) {
    struct Search<'a> {
        adj: &'a [u64],
        colors: Vec<Option<usize>>,
        best: usize,
        best_colors: Vec<usize>,
        lower: usize,
    }

    impl Search<'_> {
        fn forbidden(&self, v: usize) -> u64 {
            ones(self.adj[v])
                .filter_map(|u| self.colors[u])
                .fold(0u64, |m, c| m | 1 << c)
        }

        fn pick(&self) -> usize {
            let uncolored: u64 = self
                .colors
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_none())
                .fold(0, |m, (v, _)| m | 1 << v);
            ones(uncolored)
                .max_by_key(|&v| {
                    let sat = self.forbidden(v).count_ones();
                    let deg = (self.adj[v] & uncolored).count_ones();
                    (sat, deg, std::cmp::Reverse(v))
                })
                .unwrap()
        }

        fn run(&mut self, used: usize, colored: usize) {
            if self.best <= self.lower {
                return;
            }
            if colored == self.adj.len() {
                if used < self.best {
                    self.best = used;
                    self.best_colors = self.colors.iter().map(|c| c.unwrap()).collect();
                }
                return;
            }
            let v = self.pick();
            let forbidden = self.forbidden(v);
            for c in 0..used {
                if forbidden >> c & 1 == 0 {
                    self.colors[v] = Some(c);
                    self.run(used, colored + 1);
                    self.colors[v] = None;
                    if self.best <= self.lower {
                        return;
                    }
                }
            }
            if used + 1 < self.best {
                self.colors[v] = Some(used);
                self.run(used + 1, colored + 1);
                self.colors[v] = None;
            }
        }
    }

    let n = adj.len();
    let mut search = Search {
        adj,
        colors: vec![None; n],
        best: n + 1,
        best_colors: (0..n).collect(),
        lower: lower.max(usize::from(n > 0)),
    };
    search.run(0, 0);
    (search.best.min(n), search.best_colors)
}
