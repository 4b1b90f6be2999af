//! Resolving sets of a graph: distance matrix, twin classes, metric dimension
//! and the resolving polynomial, each as a closed form for Γ(D(G)) and as an
//! exhaustive search.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CommutingGraph;
use crate::masks::{full_mask, neighbor_masks, ones};
use crate::params::DihedralParams;

pub const DEFAULT_RESOLVING_CAP: usize = 16;

/// All-pairs hop distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    size: usize,
    dist: Vec<u32>,
    diameter: u32,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.size + v]
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// The distance vector of `v` to the landmarks, in landmark order.
    pub fn vector(&self, v: usize, landmarks: &[usize]) -> Vec<u32> {
        landmarks.iter().map(|&s| self.get(v, s)).collect()
    }
}

/// Breadth-first search from every vertex.
pub fn distance_matrix(g: &CommutingGraph) -> Result<DistanceMatrix> {
    let size = g.vertex_count();
    let mut dist = Vec::with_capacity(size * size);
    for v in 0..size {
        for d in g.bfs(v) {
            dist.push(d.ok_or(Error::Disconnected)?);
        }
    }
    let diameter = dist.iter().copied().max().unwrap_or(0);
    Ok(DistanceMatrix {
        size,
        dist,
        diameter,
    })
}

/// Two vertices whose distance vectors to `landmarks` coincide, if any.
pub fn unresolved_pair(dm: &DistanceMatrix, landmarks: &[usize]) -> Option<(usize, usize)> {
    let bits = 32 - dm.diameter().leading_zeros() as usize;
    let mut keyed: Vec<(Vec<u32>, usize)>;
    if landmarks.len() * bits.max(1) <= 128 {
        let mut packed: Vec<(u128, usize)> = (0..dm.size())
            .map(|v| {
                let key = landmarks
                    .iter()
                    .fold(0u128, |k, &s| k << bits | dm.get(v, s) as u128);
                (key, v)
            })
            .collect();
        packed.sort_unstable();
        return packed
            .windows(2)
            .find(|w| w[0].0 == w[1].0)
            .map(|w| (w[0].1.min(w[1].1), w[0].1.max(w[1].1)));
    }
    keyed = (0..dm.size())
        .map(|v| (dm.vector(v, landmarks), v))
        .collect();
    keyed.sort_unstable();
    keyed
        .windows(2)
        .find(|w| w[0].0 == w[1].0)
        .map(|w| (w[0].1.min(w[1].1), w[0].1.max(w[1].1)))
}

/// True iff the distance vectors to `landmarks` separate all vertices.
pub fn is_resolving(dm: &DistanceMatrix, landmarks: &[usize]) -> bool {
    unresolved_pair(dm, landmarks).is_none()
}

fn mask_resolves(dm: &DistanceMatrix, mask: u64) -> bool {
    let landmarks: Vec<usize> = ones(mask).collect();
    is_resolving(dm, &landmarks)
}

/// `u` and `v` are twins iff `N[u] = N[v]` or `N(u) = N(v)`.
pub fn are_twins(g: &CommutingGraph, u: usize, v: usize) -> bool {
    u != v
        && (0..g.vertex_count())
            .filter(|&w| w != u && w != v)
            .all(|w| g.has_edge(u, w) == g.has_edge(v, w))
}

/// Class index per vertex under the twin relation (an equivalence relation).
/// Classes are numbered by their smallest vertex.
pub fn twin_class_ids(g: &CommutingGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut open: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut closed: HashMap<Vec<u64>, usize> = HashMap::new();
    for v in 0..n {
        let row = g.neighbor_bits(v).to_vec();
        let mut with_self = row.clone();
        with_self[v / 64] |= 1 << (v % 64);
        for (map, key) in [(&mut open, row), (&mut closed, with_self)] {
            match map.get(&key) {
                Some(&u) => {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    parent[a.max(b)] = a.min(b);
                }
                None => {
                    map.insert(key, v);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut ids = HashMap::new();
    roots
        .iter()
        .map(|&r| {
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect()
}

/// Maximal twin-sets of size at least two, plus the remaining vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinSetDecomposition {
    pub twin_sets: Vec<Vec<usize>>,
    pub singletons: Vec<usize>,
}

impl TwinSetDecomposition {
    /// Every resolving set omits at most one vertex of each twin-set.
    pub fn lower_bound(&self) -> usize {
        self.twin_sets.iter().map(|s| s.len() - 1).sum()
    }

    /// The first twin-set from which `set` omits two or more vertices.
    pub fn violated_by(&self, set: &[usize]) -> Option<&[usize]> {
        self.twin_sets
            .iter()
            .find(|t| t.iter().filter(|v| !set.contains(v)).count() > 1)
            .map(|t| t.as_slice())
    }
}

pub fn twin_sets(g: &CommutingGraph) -> TwinSetDecomposition {
    let ids = twin_class_ids(g);
    let classes = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut groups = vec![Vec::new(); classes];
    for (v, &c) in ids.iter().enumerate() {
        groups[c].push(v);
    }
    let (twin_sets, single): (Vec<_>, Vec<_>) = groups.into_iter().partition(|g| g.len() > 1);
    TwinSetDecomposition {
        twin_sets,
        singletons: single.into_iter().flatten().collect(),
    }
}

/// `β(Γ)`: `2n - n/2^r - 2` when `|Ω1| ≥ 2`, `2n - 3` when `|Ω1| = 1`.
pub fn metric_dimension_formula(params: DihedralParams) -> u64 {
    let n = params.n();
    if params.r() == 0 {
        2 * n - 3
    } else {
        2 * n - params.block_count() - 2
    }
}

/// Smallest resolving set found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricBasis {
    pub dimension: usize,
    pub basis: Vec<usize>,
}

/// Subsets of `{0..n}` of size `k`, in Gosper order.
fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit = full_mask(n);
    let mut out = Vec::new();
    let mut mask = full_mask(k);
    loop {
        out.push(mask);
        let low = mask & mask.wrapping_neg();
        let ripple = mask.wrapping_add(low);
        if ripple == 0 || ripple & !limit != 0 {
            break;
        }
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
        if mask & !limit != 0 {
            break;
        }
    }
    out
}

/// Subsets of size `k`, generated through their complements when `k > n/2`.
fn landmark_sets(n: usize, k: usize) -> Vec<u64> {
    if 2 * k > n {
        let full = full_mask(n);
        subsets_of_size(n, n - k)
            .into_iter()
            .map(|t| full ^ t)
            .collect()
    } else {
        subsets_of_size(n, k)
    }
}

/// A resolving set of exactly `k` vertices, if one exists.
pub fn resolving_set_of_size(
    g: &CommutingGraph,
    k: usize,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    neighbor_masks(g, "resolving oracle", cap)?;
    let dm = distance_matrix(g)?;
    Ok(find_resolving(&dm, k))
}

fn find_resolving(dm: &DistanceMatrix, k: usize) -> Option<Vec<usize>> {
    landmark_sets(dm.size(), k)
        .into_par_iter()
        .find_first(|&m| mask_resolves(dm, m))
        .map(|m| ones(m).collect())
}

/// `β(g)` by ascending search from the twin-set lower bound.
pub fn metric_dimension_oracle(g: &CommutingGraph, cap: usize) -> Result<MetricBasis> {
    neighbor_masks(g, "resolving oracle", cap)?;
    let dm = distance_matrix(g)?;
    let start = twin_sets(g).lower_bound();
    for k in start..=g.vertex_count() {
        if let Some(basis) = find_resolving(&dm, k) {
            return Ok(MetricBasis {
                dimension: k,
                basis,
            });
        }
    }
    unreachable!("the full vertex set always resolves")
}

/// `Σ s_i x^i` for `β ≤ i ≤ |V|`, with `s_i` the number of resolving sets of
/// size `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvingPolynomial {
    pub beta: usize,
    /// `coeffs[j] = s_{β+j}`.
    pub coeffs: Vec<BigUint>,
}

impl ResolvingPolynomial {
    pub fn vertex_count(&self) -> usize {
        self.beta + self.coeffs.len() - 1
    }

    pub fn coefficient(&self, i: usize) -> BigUint {
        i.checked_sub(self.beta)
            .and_then(|j| self.coeffs.get(j).cloned())
            .unwrap_or_default()
    }

    /// Total number of resolving sets.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// First index where the two polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let top = self.vertex_count().max(other.vertex_count());
        (self.beta.min(other.beta)..=top).find(|&i| self.coefficient(i) != other.coefficient(i))
    }
}

impl fmt::Display for ResolvingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("{c}x^{}", self.beta + j))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    beta: usize,
    coeffs: Vec<String>,
}

impl Serialize for ResolvingPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialRepr {
            beta: self.beta,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ResolvingPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolynomialRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| c.parse::<BigUint>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(ResolvingPolynomial {
            beta: repr.beta,
            coeffs,
        })
    }
}

fn binomial_row(m: u64) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for k in 1..=m {
        let next = &row[k as usize - 1] * BigUint::from(m - k + 1) / BigUint::from(k);
        row.push(next);
    }
    row
}

/// `(2^r)^e` as a shift.
fn center_power(r: u32, e: u64) -> BigUint {
    BigUint::one() << (r as u64 * e)
}

/// Closed-form resolving polynomial of Γ(D(G)).
pub fn resolving_polynomial_formula(params: DihedralParams) -> ResolvingPolynomial {
    let n = params.n();
    let top = 2 * n;
    if params.r() == 0 {
        let big = BigUint::from;
        return ResolvingPolynomial {
            beta: (top - 3) as usize,
            coeffs: vec![big(n * (n - 1)), big(n * n + n - 1), big(2 * n), big(1u64)],
        };
    }
    let r = params.r();
    let c = params.center_size();
    let blocks = params.block_count();
    let beta = top - blocks - 2;
    let choose = binomial_row(blocks + 1);
    let binom = |k: u64| choose.get(k as usize).cloned().unwrap_or_default();
    // s_i = (n - 2^r)(2^r)^(2n-i-1) C(n/2^r+1, 2n-i-1) + (2^r)^(2n-i) C(n/2^r+1, 2n-i)
    let unified = |i: u64| {
        let k = top - i;
        let mut s = center_power(r, k) * binom(k);
        if k >= 1 {
            s += BigUint::from(n - c) * center_power(r, k - 1) * binom(k - 1);
        }
        s
    };
    let s_beta = BigUint::from(n - c) * center_power(r, blocks + 1);
    assert_eq!(
        s_beta,
        unified(beta),
        "s_beta disagrees with the general coefficient"
    );
    let mut coeffs = vec![s_beta];
    coeffs.extend((beta + 1..=top - 2).map(unified));
    coeffs.push(BigUint::from(2 * n));
    coeffs.push(BigUint::one());
    ResolvingPolynomial {
        beta: beta as usize,
        coeffs,
    }
}

/// `(n - 2^r + 1)(2^r + 1)^(n/2^r + 1)` for `r ≥ 1`: sets whose complement
/// takes at most one vertex from each twin-set.
pub fn resolving_set_count_identity(params: DihedralParams) -> Option<BigUint> {
    (params.r() >= 1).then(|| {
        let c = params.center_size();
        BigUint::from(params.n() - c + 1)
            * BigUint::from(c + 1).pow((params.block_count() + 1) as u32)
    })
}

/// Counts resolving sets of every size. Supersets of resolving sets are
/// resolving, so a set is only tested when none of its one-smaller subsets
/// resolves.
pub fn resolving_polynomial_oracle(g: &CommutingGraph, cap: usize) -> Result<ResolvingPolynomial> {
    neighbor_masks(g, "resolving oracle", cap)?;
    let dm = distance_matrix(g)?;
    let n = g.vertex_count();
    let mut resolving = vec![0u64; (1usize << n).div_ceil(64)];
    let is_set = |table: &[u64], m: u64| table[(m / 64) as usize] >> (m % 64) & 1 == 1;
    let mut counts = vec![BigUint::zero(); n + 1];
    for (k, slot) in counts.iter_mut().enumerate() {
        let layer = subsets_of_size(n, k);
        let flags: Vec<bool> = layer
            .par_iter()
            .map(|&m| ones(m).any(|v| is_set(&resolving, m ^ 1 << v)) || mask_resolves(&dm, m))
            .collect();
        let mut count = 0u64;
        for (&m, &f) in layer.iter().zip(&flags) {
            if f {
                resolving[(m / 64) as usize] |= 1 << (m % 64);
                count += 1;
            }
        }
        *slot = BigUint::from(count);
    }
    let beta = counts.iter().position(|c| !c.is_zero()).unwrap_or(n);
    Ok(ResolvingPolynomial {
        beta,
        coeffs: counts.split_off(beta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::dihedral::{DihedralGroup, Omega};
    use crate::graph::{build_commuting_graph, VertexSelector};
    use proptest::prelude::*;

    fn graph(spec: &str) -> CommutingGraph {
        let d = DihedralGroup::new(AbelianGroup::parse(spec).unwrap());
        build_commuting_graph(&d, &VertexSelector::All).unwrap()
    }

    fn p(n: u64, r: u32) -> DihedralParams {
        DihedralParams::new(n, r).unwrap()
    }

    fn coeffs(poly: &ResolvingPolynomial) -> Vec<u64> {
        poly.coeffs.iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn distances() {
        let g = graph("Z3");
        let dm = distance_matrix(&g).unwrap();
        assert_eq!(dm.get(1, 3), 2);
        assert!((0..6).all(|v| dm.get(v, v) == 0));
        assert_eq!(distance_matrix(&graph("Z4")).unwrap().diameter(), 2);
        let split = CommutingGraph::from_fn(3, |u, v| u + v == 1);
        assert_eq!(distance_matrix(&split), Err(Error::Disconnected));
    }

    #[test]
    fn resolving_examples() {
        let g = graph("Z3");
        let dm = distance_matrix(&g).unwrap();
        // a, and two of the three reflections
        assert!(is_resolving(&dm, &[1, 3, 4]));
        let vectors: Vec<_> = (0..6).map(|v| dm.vector(v, &[1, 3, 4])).collect();
        assert_eq!(
            vectors,
            vec![
                vec![1, 1, 1],
                vec![0, 2, 2],
                vec![1, 2, 2],
                vec![2, 0, 2],
                vec![2, 2, 0],
                vec![2, 2, 2]
            ]
        );
        assert!(is_resolving(&dm, &(0..6).collect::<Vec<_>>()));
        assert!(!is_resolving(&dm, &[0]));
        assert_eq!(unresolved_pair(&dm, &[0]), Some((1, 2)));
    }

    #[test]
    fn twin_set_examples() {
        let t = twin_sets(&graph("Z4"));
        assert_eq!(
            t.twin_sets,
            vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]]
        );
        let t = twin_sets(&graph("Z3"));
        assert_eq!(t.twin_sets, vec![vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(t.singletons, vec![0]);
        let sizes: Vec<_> = twin_sets(&graph("Z6"))
            .twin_sets
            .iter()
            .map(|s| s.len())
            .collect();
        assert_eq!(sizes, vec![2, 4, 2, 2, 2]);
    }

    #[test]
    fn twin_sets_are_the_partition_parts() {
        for spec in ["Z5", "Z8", "Z2xZ4", "Z3xZ3", "Z2xZ6", "Z4xZ4"] {
            let g = graph(spec);
            let t = twin_sets(&g);
            let mut expected: Vec<Vec<usize>> = Vec::new();
            let parts = g.parts().unwrap();
            if g.vertices_in(Omega::Omega1).len() == 1 {
                expected.push(g.vertices_in(Omega::Omega2));
                expected.push(g.vertices_in(Omega::Omega3));
            } else {
                let mut seen = Vec::new();
                for v in 0..parts.len() {
                    if !seen.contains(&parts[v]) {
                        seen.push(parts[v]);
                        expected.push((0..parts.len()).filter(|&u| parts[u] == parts[v]).collect());
                    }
                }
            }
            assert_eq!(t.twin_sets, expected, "{spec}");
            for set in &t.twin_sets {
                for &u in set {
                    for &v in set {
                        assert!(u == v || are_twins(&g, u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn metric_dimension_examples() {
        assert_eq!(metric_dimension_formula(p(6, 1)), 7);
        assert_eq!(metric_dimension_formula(p(3, 0)), 3);
        assert_eq!(metric_dimension_formula(p(4, 1)), 4);
        for (spec, beta) in [("Z3", 3), ("Z4", 4), ("Z6", 7)] {
            let g = graph(spec);
            let found = metric_dimension_oracle(&g, 16).unwrap();
            assert_eq!(found.dimension, beta, "{spec}");
            assert!(is_resolving(&distance_matrix(&g).unwrap(), &found.basis));
        }
        // no 3-subset of the 8 vertices of Γ(D(Z4)) resolves
        assert_eq!(resolving_set_of_size(&graph("Z4"), 3, 16).unwrap(), None);
    }

    #[test]
    fn polynomial_formula_examples() {
        assert_eq!(
            coeffs(&resolving_polynomial_formula(p(3, 0))),
            vec![6, 11, 6, 1]
        );
        let poly = resolving_polynomial_formula(p(4, 1));
        assert_eq!(poly.beta, 4);
        assert_eq!(coeffs(&poly), vec![16, 32, 24, 8, 1]);
        let poly = resolving_polynomial_formula(p(6, 1));
        assert_eq!((poly.beta, poly.coefficient(7)), (7, BigUint::from(64u32)));
        assert_eq!(
            poly.to_string(),
            "1x^12 + 12x^11 + 56x^10 + 128x^9 + 144x^8 + 64x^7"
        );
    }

    #[test]
    fn polynomial_oracle_examples() {
        let poly = resolving_polynomial_oracle(&graph("Z3"), 16).unwrap();
        assert_eq!((poly.beta, coeffs(&poly)), (3, vec![6, 11, 6, 1]));
        let poly = resolving_polynomial_oracle(&graph("Z4"), 16).unwrap();
        assert_eq!((poly.beta, coeffs(&poly)), (4, vec![16, 32, 24, 8, 1]));
        let g = graph("Z2xZ4");
        let poly = resolving_polynomial_oracle(&g, 16).unwrap();
        assert_eq!(poly, resolving_polynomial_formula(p(8, 2)));
        assert_eq!(Some(poly.total()), resolving_set_count_identity(p(8, 2)));
    }

    #[test]
    fn leading_and_top_coefficients() {
        for (n, r) in [
            (3, 0),
            (5, 0),
            (4, 1),
            (6, 1),
            (8, 1),
            (8, 2),
            (24, 3),
            (1024, 1),
        ] {
            let poly = resolving_polynomial_formula(p(n, r));
            let top = 2 * n as usize;
            assert_eq!(poly.vertex_count(), top);
            assert_eq!(poly.coefficient(top), BigUint::one());
            assert_eq!(poly.coefficient(top - 1), BigUint::from(2 * n));
            assert!(poly.coeffs.iter().all(|c| !c.is_zero()));
            assert_eq!(poly.beta as u64, metric_dimension_formula(p(n, r)));
            if let Some(total) = resolving_set_count_identity(p(n, r)) {
                assert_eq!(poly.total(), total);
            }
        }
    }

    #[test]
    fn polynomial_json_uses_decimal_strings() {
        let poly = resolving_polynomial_formula(p(4, 1));
        let json = serde_json::to_string(&poly).unwrap();
        assert_eq!(json, r#"{"beta":4,"coeffs":["16","32","24","8","1"]}"#);
        let back: ResolvingPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn first_difference() {
        let a = resolving_polynomial_formula(p(4, 1));
        let mut b = a.clone();
        assert_eq!(a.first_difference(&b), None);
        b.coeffs[2] += 1u32;
        assert_eq!(a.first_difference(&b), Some(6));
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(subsets_of_size(6, 3).len(), 20);
        assert_eq!(subsets_of_size(16, 11).len(), 4368);
        assert_eq!(landmark_sets(16, 12).len(), 1820);
        assert!(landmark_sets(16, 12).iter().all(|m| m.count_ones() == 12));
        assert_eq!(subsets_of_size(64, 64), vec![u64::MAX]);
        assert_eq!(subsets_of_size(5, 0), vec![0]);
    }

    #[test]
    fn caps() {
        assert!(matches!(
            metric_dimension_oracle(&graph("Z9"), 16),
            Err(Error::CapExceeded { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn supersets_of_resolving_sets_resolve(spec in prop::sample::select(vec!["Z3", "Z4", "Z6", "Z2xZ4"]), a in any::<u64>(), b in any::<u64>()) {
            let g = graph(spec);
            let dm = distance_matrix(&g).unwrap();
            let full = full_mask(g.vertex_count());
            let s = a & full;
            let t = s | (b & full);
            if mask_resolves(&dm, s) {
                prop_assert!(mask_resolves(&dm, t));
            }
        }
    }
}
