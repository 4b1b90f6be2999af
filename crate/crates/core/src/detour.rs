//! Detour (longest simple path) eccentricities: an exact search and the
//! closed forms.
//!
//! The search is a DFS over simple paths with two exact prunings:
//! - a branch stops once its length plus the number of unvisited vertices
//!   still reachable from its end cannot beat the best path found;
//! - among unvisited neighbors that are twins of each other only one is
//!   tried, since swapping two twins is an automorphism fixing the prefix.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dihedral::Omega;
use crate::error::{Error, Result};
use crate::graph::CommutingGraph;
use crate::masks::{neighbor_masks, ones};
use crate::params::DihedralParams;
use crate::resolving::twin_class_ids;

pub const DEFAULT_DETOUR_CAP: usize = 20;

/// Detour eccentricity per vertex, with radius and diameter. Lengths are in edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetourProfile {
    pub eccentricities: Vec<usize>,
    pub radius: usize,
    pub diameter: usize,
}

impl DetourProfile {
    pub fn from_eccentricities(eccentricities: Vec<usize>) -> Self {
        let radius = eccentricities.iter().copied().min().unwrap_or(0);
        let diameter = eccentricities.iter().copied().max().unwrap_or(0);
        DetourProfile {
            eccentricities,
            radius,
            diameter,
        }
    }
}

struct PathSearch {
    adj: Vec<u64>,
    twin_class: Vec<usize>,
    target: Option<usize>,
    best: Option<usize>,
    best_path: Vec<usize>,
}

impl PathSearch {
    fn new(g: &CommutingGraph, cap: usize, target: Option<usize>) -> Result<Self> {
        let adj = neighbor_masks(g, "detour oracle", cap)?;
        Ok(PathSearch {
            adj,
            twin_class: twin_class_ids(g),
            target,
            best: None,
            best_path: Vec::new(),
        })
    }

    /// Unvisited vertices reachable from `from` without revisiting the path.
    fn reachable(&self, from: usize, visited: u64) -> u64 {
        let open = !visited;
        let mut reach = 0u64;
        let mut frontier = self.adj[from] & open;
        while frontier != 0 {
            reach |= frontier;
            let mut next = 0;
            for v in ones(frontier) {
                next |= self.adj[v];
            }
            frontier = next & open & !reach;
        }
        reach
    }

    fn run(&mut self, path: &mut Vec<usize>, visited: u64) {
        let current = *path.last().unwrap();
        let length = path.len() - 1;
        let ends_here = self.target.is_none_or(|t| t == current);
        if ends_here && self.best.is_none_or(|b| length > b) {
            self.best = Some(length);
            self.best_path = path.clone();
        }
        if self.target == Some(current) {
            return;
        }
        if self.target.is_none() && self.best == Some(self.adj.len() - 1) {
            return;
        }
        let reach = self.reachable(current, visited);
        if let Some(t) = self.target {
            if reach >> t & 1 == 0 {
                return;
            }
        }
        if let Some(best) = self.best {
            if length + reach.count_ones() as usize <= best {
                return;
            }
        }
        let mut tried = Vec::new();
        for u in ones(self.adj[current] & !visited) {
            if Some(u) != self.target {
                let class = self.twin_class[u];
                if tried.contains(&class) {
                    continue;
                }
                tried.push(class);
            }
            path.push(u);
            self.run(path, visited | 1 << u);
            path.pop();
        }
    }
}

/// A longest simple path starting at `v`, as a vertex sequence.
pub fn longest_path_from(g: &CommutingGraph, v: usize, cap: usize) -> Result<Vec<usize>> {
    check_vertex(g, v)?;
    let mut search = PathSearch::new(g, cap, None)?;
    search.run(&mut vec![v], 1 << v);
    Ok(search.best_path)
}

/// `ecc_D(v)`: length of a longest simple path starting at `v`.
pub fn detour_ecc_oracle(g: &CommutingGraph, v: usize, cap: usize) -> Result<usize> {
    Ok(longest_path_from(g, v, cap)?.len() - 1)
}

/// `d_D(u, v)`: length of a longest simple `u`–`v` path, `None` if disconnected.
pub fn detour_distance_oracle(
    g: &CommutingGraph,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<Option<usize>> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    let mut search = PathSearch::new(g, cap, Some(v))?;
    search.run(&mut vec![u], 1 << u);
    Ok(search.best)
}

/// Eccentricities of every vertex, computed in parallel.
pub fn detour_profile_oracle(g: &CommutingGraph, cap: usize) -> Result<DetourProfile> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    neighbor_masks(g, "detour oracle", cap)?;
    let ecc = (0..g.vertex_count())
        .into_par_iter()
        .map(|v| detour_ecc_oracle(g, v, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(DetourProfile::from_eccentricities(ecc))
}

fn check_vertex(g: &CommutingGraph, v: usize) -> Result<()> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            index: v,
            count: g.vertex_count(),
        });
    }
    Ok(())
}

/// Closed-form `ecc_D` for a vertex in `omega`. The `Ω1` branch switches at
/// `n/2^r < 2^r`, the `Ω2 ∪ Ω3` branch at `n/2^r ≤ 2^r`.
pub fn detour_ecc_formula(params: DihedralParams, omega: Omega) -> u64 {
    let n = params.n();
    let c = params.center_size();
    let blocks = params.block_count();
    match omega {
        Omega::Omega1 if blocks < c => 2 * n - 1,
        Omega::Omega1 => n + c * (c - 1) - 1,
        _ if blocks <= c => 2 * n - 1,
        _ => n + c * c - 1,
    }
}

/// `(rad_D, diam_D)`.
pub fn detour_radius_diameter_formula(params: DihedralParams) -> (u64, u64) {
    (
        detour_ecc_formula(params, Omega::Omega1),
        detour_ecc_formula(params, Omega::Omega2),
    )
}

/// Unpruned DFS over every simple path from `start`.
#[cfg(test)]
pub(crate) fn reference_ecc(adj: &[u64], start: usize) -> usize {
    fn go(adj: &[u64], v: usize, visited: u64, depth: usize) -> usize {
        ones(adj[v] & !visited)
            .map(|u| go(adj, u, visited | 1 << u, depth + 1))
            .max()
            .unwrap_or(depth)
            .max(depth)
    }
    go(adj, start, 1 << start, 0)
}

#[cfg(test)]
pub(crate) fn reference_distance(adj: &[u64], from: usize, to: usize) -> Option<usize> {
    fn go(adj: &[u64], v: usize, to: usize, visited: u64, depth: usize) -> Option<usize> {
        if v == to {
            return Some(depth);
        }
        ones(adj[v] & !visited)
            .filter_map(|u| go(adj, u, to, visited | 1 << u, depth + 1))
            .max()
    }
    go(adj, from, to, 1 << from, 0)
}
