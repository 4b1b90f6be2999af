//! Runs every closed form next to its exact counterpart and records the
//! outcome of each comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::detour::{self, DetourProfile, DEFAULT_DETOUR_CAP};
use crate::dihedral::{DihedralGroup, Omega};
use crate::error::{Error, Result};
use crate::graph::{
    build_commuting_graph, build_structural_graph, first_edge_difference, CommutingGraph,
    VertexSelector,
};
use crate::invariants::{self, DEFAULT_CHROMATIC_CAP};
use crate::params::DihedralParams;
use crate::resolving::{self, ResolvingPolynomial, DEFAULT_RESOLVING_CAP};

/// Largest vertex count for which the commuting graph itself is built.
pub const DEFAULT_GRAPH_CAP: usize = 4096;
/// Above this many blocks the closed-form resolving polynomial is not expanded.
pub const MAX_POLYNOMIAL_BLOCKS: u64 = 4096;

/// Size limits for the exact computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Caps {
    pub graph_vertices: usize,
    pub detour_vertices: usize,
    pub resolving_vertices: usize,
    pub chromatic_vertices: usize,
    pub skip_oracles: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            graph_vertices: DEFAULT_GRAPH_CAP,
            detour_vertices: DEFAULT_DETOUR_CAP,
            resolving_vertices: DEFAULT_RESOLVING_CAP,
            chromatic_vertices: DEFAULT_CHROMATIC_CAP,
            skip_oracles: false,
        }
    }
}

/// A deliberate off-by-one in one closed form, used to exercise the
/// disagreement path end to end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    Structure,
    DegreeOmega1,
    DegreeOmega2,
    DegreeOmega3,
    Edges,
    Chromatic,
    EccOmega1,
    EccOmega23,
    Radius,
    Diameter,
    Beta,
    Poly,
}

impl Fault {
    pub const ALL: [Fault; 12] = [
        Fault::Structure,
        Fault::DegreeOmega1,
        Fault::DegreeOmega2,
        Fault::DegreeOmega3,
        Fault::Edges,
        Fault::Chromatic,
        Fault::EccOmega1,
        Fault::EccOmega23,
        Fault::Radius,
        Fault::Diameter,
        Fault::Beta,
        Fault::Poly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::Structure => "structure",
            Fault::DegreeOmega1 => "degree-omega1",
            Fault::DegreeOmega2 => "degree-omega2",
            Fault::DegreeOmega3 => "degree-omega3",
            Fault::Edges => "edges",
            Fault::Chromatic => "chromatic",
            Fault::EccOmega1 => "ecc-omega1",
            Fault::EccOmega23 => "ecc-omega23",
            Fault::Radius => "radius",
            Fault::Diameter => "diameter",
            Fault::Beta => "beta",
            Fault::Poly => "poly",
        }
    }

    fn bump(self, target: Fault) -> u64 {
        u64::from(self == target)
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown fault `{s}`")))
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub caps: Caps,
    pub fault: Option<Fault>,
    pub timings: bool,
}

/// An oracle value, or `"unchecked"` when the computation was over its cap
/// or skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Measured<T> {
    Value(T),
    Unchecked(Unchecked),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unchecked {
    Unchecked,
}

impl<T> Measured<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Measured::Value(v) => Some(v),
            Measured::Unchecked(_) => None,
        }
    }
}

impl<T> From<Option<T>> for Measured<T> {
    fn from(v: Option<T>) -> Self {
        v.map_or(Measured::Unchecked(Unchecked::Unchecked), Measured::Value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Agree,
    Disagree,
    Unchecked,
}

/// One invariant, both ways. `agree` is true iff the oracle ran and matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check<T> {
    pub formula: T,
    pub oracle: Measured<T>,
    pub agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl<T: PartialEq> Check<T> {
    fn new(formula: T, oracle: Option<T>, witness: impl FnOnce(&T, &T) -> String) -> Self {
        let agree = oracle.as_ref() == Some(&formula);
        let witness = match &oracle {
            Some(o) if !agree => Some(witness(&formula, o)),
            _ => None,
        };
        Check {
            formula,
            oracle: oracle.into(),
            agree,
            witness,
        }
    }

    pub fn status(&self) -> Status {
        match (&self.oracle, self.agree) {
            (Measured::Unchecked(_), _) => Status::Unchecked,
            (_, true) => Status::Agree,
            (_, false) => Status::Disagree,
        }
    }
}

/// The join/union decomposition against the brute-force graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCheck {
    pub decomposition: String,
    pub edge_sets_equal: Measured<bool>,
    pub agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerPart {
    pub omega1: Check<u64>,
    pub omega2: Check<u64>,
    pub omega3: Check<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticSection {
    /// `χ` against the exact search.
    pub number: Check<u64>,
    /// Colors used by the part-wise construction, when it is proper.
    pub construction: Check<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetourSection {
    pub ecc: PerPart,
    pub radius: Check<u64>,
    pub diameter: Check<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyCheck {
    /// `null` when there are too many blocks to expand the closed form.
    pub formula: Option<ResolvingPolynomial>,
    pub oracle: Measured<ResolvingPolynomial>,
    pub agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvingSection {
    pub beta: Check<u64>,
    pub poly: PolyCheck,
}

/// Everything computed for a non-abelian `D(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullReport {
    pub blocks: u64,
    pub structure: StructureCheck,
    pub degrees: PerPart,
    pub edges: Check<u64>,
    pub chromatic: ChromaticSection,
    pub detour: DetourSection,
    pub resolving: ResolvingSection,
}

/// `D(G)` abelian: its commuting graph is complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianSummary {
    pub graph: String,
    pub degree: u64,
    pub edges: u64,
    pub complete: Measured<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportBody {
    Full(Box<FullReport>),
    Abelian(AbelianSummary),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub invariant: String,
    pub formula: String,
    pub oracle: String,
    pub witness: String,
}

/// Per-group record of every invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub spec: String,
    pub moduli: Vec<u64>,
    pub n: u64,
    pub r: u32,
    pub abelian: bool,
    #[serde(flatten)]
    pub body: ReportBody,
    /// True iff no checked invariant disagrees.
    pub agree_all: bool,
    pub checks: CheckCounts,
    pub disagreements: Vec<Disagreement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCounts {
    pub agree: usize,
    pub disagree: usize,
    pub unchecked: usize,
}

impl CheckCounts {
    fn record(&mut self, status: Status) {
        match status {
            Status::Agree => self.agree += 1,
            Status::Disagree => self.disagree += 1,
            Status::Unchecked => self.unchecked += 1,
        }
    }

    pub fn add(&mut self, other: CheckCounts) {
        self.agree += other.agree;
        self.disagree += other.disagree;
        self.unchecked += other.unchecked;
    }
}

impl InvariantReport {
    pub fn full(&self) -> Option<&FullReport> {
        match &self.body {
            ReportBody::Full(f) => Some(f),
            ReportBody::Abelian(_) => None,
        }
    }

    /// Same report under a different spelling of the group.
    pub fn respelled(&self, group: &AbelianGroup) -> Self {
        InvariantReport {
            spec: group.spec(),
            moduli: group.moduli().to_vec(),
            ..self.clone()
        }
    }
}

struct Timer {
    enabled: bool,
    phases: BTreeMap<String, f64>,
}

impl Timer {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            *self.phases.entry(phase.to_string()).or_default() +=
                start.elapsed().as_secs_f64() * 1e3;
        }
        out
    }
}

fn decomposition(params: DihedralParams) -> String {
    let c = params.center_size();
    format!(
        "K_{c} v (K_{} u {}K_{c})",
        params.n() - c,
        params.block_count()
    )
}

/// Builds the full report for `group`.
pub fn build_report(group: &AbelianGroup, options: &ReportOptions) -> InvariantReport {
    let mut timer = Timer {
        enabled: options.timings,
        phases: BTreeMap::new(),
    };
    let d = DihedralGroup::new(group.clone());
    let caps = options.caps;
    let graph_vertices = d.order();
    let graph = (!caps.skip_oracles && graph_vertices <= caps.graph_vertices).then(|| {
        timer.time("graph", || {
            build_commuting_graph(&d, &VertexSelector::All).expect("group elements are valid")
        })
    });

    let body = match DihedralParams::of_group(group) {
        Err(_) => {
            let m = 2 * group.order();
            ReportBody::Abelian(AbelianSummary {
                graph: format!("K_{m}"),
                degree: m - 1,
                edges: m * (m - 1) / 2,
                complete: graph
                    .as_ref()
                    .map(|g| g.edge_count() as u64 == m * (m - 1) / 2)
                    .into(),
            })
        }
        Ok(params) => ReportBody::Full(Box::new(full_report(
            params,
            graph.as_ref(),
            options,
            &mut timer,
        ))),
    };

    let mut counts = CheckCounts::default();
    let mut disagreements = Vec::new();
    collect(&body, &mut counts, &mut disagreements);
    InvariantReport {
        spec: group.spec(),
        moduli: group.moduli().to_vec(),
        n: group.order(),
        r: group.two_rank(),
        abelian: d.is_abelian(),
        body,
        agree_all: disagreements.is_empty(),
        checks: counts,
        disagreements,
        timings_ms: options.timings.then_some(timer.phases),
    }
}

fn full_report(
    params: DihedralParams,
    graph: Option<&CommutingGraph>,
    options: &ReportOptions,
    timer: &mut Timer,
) -> FullReport {
    let caps = options.caps;
    let fault = |f: Fault| options.fault.map_or(0, |x| x.bump(f));
    let within = |cap: usize| graph.filter(|g| g.vertex_count() <= cap);

    let structure = timer.time("structure", || {
        let edge_sets_equal = graph.map(|g| {
            let mut structural = build_structural_graph(params);
            if fault(Fault::Structure) == 1 {
                structural.toggle_edge(0, structural.vertex_count() - 1);
            }
            first_edge_difference(g, &structural)
                .expect("same vertex count")
                .map(|(u, v)| {
                    format!(
                        "pair {} {}: commuting graph {}, decomposition {}",
                        g.label(u),
                        g.label(v),
                        adjacency_word(g.has_edge(u, v)),
                        adjacency_word(structural.has_edge(u, v)),
                    )
                })
        });
        StructureCheck {
            decomposition: decomposition(params),
            agree: matches!(edge_sets_equal, Some(None)),
            witness: edge_sets_equal.clone().flatten(),
            edge_sets_equal: edge_sets_equal.map(|w| w.is_none()).into(),
        }
    });

    let degree_check = |omega: Omega, bump: u64| {
        let formula = invariants::degree_formula(params, omega) + bump;
        let measured =
            graph.map(|g| first_mismatch(g, omega, formula, |v| g.degree(v).unwrap() as u64));
        part_check(graph, formula, measured, "degree", |_| String::new())
    };
    let degrees = PerPart {
        omega1: degree_check(Omega::Omega1, fault(Fault::DegreeOmega1)),
        omega2: degree_check(Omega::Omega2, fault(Fault::DegreeOmega2)),
        omega3: degree_check(Omega::Omega3, fault(Fault::DegreeOmega3)),
    };

    let edges = Check::new(
        invariants::edge_count_formula(params) + fault(Fault::Edges),
        graph.map(|g| g.edge_count() as u64),
        |f, o| format!("measured {o} edges (half the degree sum), formula {f}"),
    );

    let chi_formula = invariants::chromatic_number_formula(params) + fault(Fault::Chromatic);
    let chromatic = timer.time("chromatic", || {
        let construction = graph.map(|g| {
            let coloring = invariants::construct_coloring(g).expect("partition labels present");
            (
                coloring.count as u64,
                coloring.conflict(g).map(|(u, v)| (g.label(u), g.label(v))),
            )
        });
        let construction_witness = construction.as_ref().and_then(|(_, c)| c.clone());
        let oracle = within(caps.chromatic_vertices).map(|g| {
            invariants::chromatic_number_oracle(g, caps.chromatic_vertices).expect("within cap")
        });
        ChromaticSection {
            number: Check::new(
                chi_formula,
                oracle.as_ref().map(|o| o.chromatic_number as u64),
                |_, _| {
                    let o = oracle.as_ref().unwrap();
                    let g = graph.unwrap();
                    let clique: Vec<_> = o.clique.iter().map(|&v| g.label(v)).collect();
                    format!(
                        "exact search found a proper {}-coloring; maximum clique {{{}}}",
                        o.chromatic_number,
                        clique.join(" ")
                    )
                },
            ),
            construction: Check::new(
                chi_formula,
                construction
                    .as_ref()
                    .map(|(count, conflict)| if conflict.is_some() { 0 } else { *count }),
                |_, _| match &construction_witness {
                    Some((u, v)) => {
                        format!("constructed coloring gives {u} and {v} the same color")
                    }
                    None => format!(
                        "constructed coloring is proper with {} colors",
                        construction.as_ref().unwrap().0
                    ),
                },
            ),
        }
    });

    let detour = timer.time("detour", || {
        let profile: Option<DetourProfile> = within(caps.detour_vertices).map(|g| {
            detour::detour_profile_oracle(g, caps.detour_vertices).expect("connected, within cap")
        });
        let ecc_check = |omega: Omega, bump: u64| {
            let formula = detour::detour_ecc_formula(params, omega) + bump;
            let measured = profile.as_ref().map(|p| {
                let g = graph.unwrap();
                first_mismatch(g, omega, formula, |v| p.eccentricities[v] as u64)
            });
            part_check(graph, formula, measured, "detour eccentricity", |v| {
                let g = graph.unwrap();
                let path =
                    detour::longest_path_from(g, v, caps.detour_vertices).expect("within cap");
                let labels: Vec<_> = path.iter().map(|&u| g.label(u)).collect();
                format!("; longest path {}", labels.join(" "))
            })
        };
        let (radius, diameter) = detour::detour_radius_diameter_formula(params);
        DetourSection {
            ecc: PerPart {
                omega1: ecc_check(Omega::Omega1, fault(Fault::EccOmega1)),
                omega2: ecc_check(Omega::Omega2, fault(Fault::EccOmega23)),
                omega3: ecc_check(Omega::Omega3, fault(Fault::EccOmega23)),
            },
            radius: Check::new(
                radius + fault(Fault::Radius),
                profile.as_ref().map(|p| p.radius as u64),
                |f, o| format!("minimum eccentricity over all vertices is {o}, formula {f}"),
            ),
            diameter: Check::new(
                diameter + fault(Fault::Diameter),
                profile.as_ref().map(|p| p.diameter as u64),
                |f, o| format!("maximum eccentricity over all vertices is {o}, formula {f}"),
            ),
        }
    });

    let resolving = timer.time("resolving", || {
        let g = within(caps.resolving_vertices);
        let basis = g.map(|g| {
            resolving::metric_dimension_oracle(g, caps.resolving_vertices).expect("within cap")
        });
        let beta = Check::new(
            resolving::metric_dimension_formula(params) + fault(Fault::Beta),
            basis.as_ref().map(|b| b.dimension as u64),
            |f, o| {
                let g = g.unwrap();
                let labels: Vec<_> = basis
                    .as_ref()
                    .unwrap()
                    .basis
                    .iter()
                    .map(|&v| g.label(v))
                    .collect();
                if o < f {
                    format!(
                        "resolving set of size {o} below formula {f}: {{{}}}",
                        labels.join(" ")
                    )
                } else {
                    format!(
                        "no resolving set of size {f}; smallest found {{{}}}",
                        labels.join(" ")
                    )
                }
            },
        );
        let mut formula = (params.block_count() <= MAX_POLYNOMIAL_BLOCKS)
            .then(|| resolving::resolving_polynomial_formula(params));
        if let (Some(p), 1) = (formula.as_mut(), fault(Fault::Poly)) {
            p.coeffs[0] += 1u32;
        }
        let oracle = g.map(|g| {
            resolving::resolving_polynomial_oracle(g, caps.resolving_vertices).expect("within cap")
        });
        let agree = matches!((&formula, &oracle), (Some(f), Some(o)) if f == o);
        let witness = match (&formula, &oracle) {
            (Some(f), Some(o)) if !agree => {
                let i = f.first_difference(o).unwrap();
                Some(format!(
                    "s_{i}: formula {}, oracle counts {} resolving sets of size {i}",
                    f.coefficient(i),
                    o.coefficient(i)
                ))
            }
            _ => None,
        };
        ResolvingSection {
            beta,
            poly: PolyCheck {
                formula,
                oracle: oracle.into(),
                agree,
                witness,
            },
        }
    });

    FullReport {
        blocks: params.block_count(),
        structure,
        degrees,
        edges,
        chromatic,
        detour,
        resolving,
    }
}

fn adjacency_word(adjacent: bool) -> &'static str {
    if adjacent {
        "adjacent"
    } else {
        "not adjacent"
    }
}

/// `(value, witness vertex)`: the first vertex of `omega` whose measured value
/// differs from `expected`, else `expected` itself.
fn first_mismatch(
    g: &CommutingGraph,
    omega: Omega,
    expected: u64,
    measure: impl Fn(usize) -> u64,
) -> (u64, Option<usize>) {
    g.vertices_in(omega)
        .into_iter()
        .map(|v| (measure(v), v))
        .find(|&(m, _)| m != expected)
        .map_or((expected, None), |(m, v)| (m, Some(v)))
}

fn part_check(
    graph: Option<&CommutingGraph>,
    formula: u64,
    measured: Option<(u64, Option<usize>)>,
    what: &str,
    detail: impl FnOnce(usize) -> String,
) -> Check<u64> {
    let vertex = measured.and_then(|(_, v)| v);
    Check::new(formula, measured.map(|(m, _)| m), |f, o| {
        let v = vertex.unwrap();
        format!(
            "vertex {} has {what} {o}, formula {f}{}",
            graph.unwrap().label(v),
            detail(v)
        )
    })
}

fn collect(body: &ReportBody, counts: &mut CheckCounts, out: &mut Vec<Disagreement>) {
    fn push<T: PartialEq + Serialize>(
        name: &str,
        check: &Check<T>,
        counts: &mut CheckCounts,
        out: &mut Vec<Disagreement>,
    ) {
        counts.record(check.status());
        if check.status() == Status::Disagree {
            out.push(Disagreement {
                invariant: name.to_string(),
                formula: serde_json::to_string(&check.formula).unwrap(),
                oracle: serde_json::to_string(&check.oracle).unwrap(),
                witness: check.witness.clone().unwrap_or_default(),
            });
        }
    }

    let full = match body {
        ReportBody::Abelian(a) => {
            counts.record(match a.complete {
                Measured::Value(true) => Status::Agree,
                Measured::Value(false) => Status::Disagree,
                Measured::Unchecked(_) => Status::Unchecked,
            });
            if a.complete == Measured::Value(false) {
                out.push(Disagreement {
                    invariant: "complete".into(),
                    formula: a.graph.clone(),
                    oracle: "not complete".into(),
                    witness: "some pair of elements does not commute".into(),
                });
            }
            return;
        }
        ReportBody::Full(f) => f,
    };

    let s = &full.structure;
    counts.record(match (&s.edge_sets_equal, s.agree) {
        (Measured::Unchecked(_), _) => Status::Unchecked,
        (_, true) => Status::Agree,
        _ => Status::Disagree,
    });
    if let Measured::Value(false) = s.edge_sets_equal {
        out.push(Disagreement {
            invariant: "structure".into(),
            formula: s.decomposition.clone(),
            oracle: "edge sets differ".into(),
            witness: s.witness.clone().unwrap_or_default(),
        });
    }
    push("degrees.omega1", &full.degrees.omega1, counts, out);
    push("degrees.omega2", &full.degrees.omega2, counts, out);
    push("degrees.omega3", &full.degrees.omega3, counts, out);
    push("edges", &full.edges, counts, out);
    push("chromatic.number", &full.chromatic.number, counts, out);
    push(
        "chromatic.construction",
        &full.chromatic.construction,
        counts,
        out,
    );
    push("detour.ecc.omega1", &full.detour.ecc.omega1, counts, out);
    push("detour.ecc.omega2", &full.detour.ecc.omega2, counts, out);
    push("detour.ecc.omega3", &full.detour.ecc.omega3, counts, out);
    push("detour.radius", &full.detour.radius, counts, out);
    push("detour.diameter", &full.detour.diameter, counts, out);
    push("resolving.beta", &full.resolving.beta, counts, out);

    let p = &full.resolving.poly;
    match (&p.formula, &p.oracle) {
        (Some(_), Measured::Value(_)) if p.agree => counts.record(Status::Agree),
        (Some(f), Measured::Value(o)) => {
            counts.record(Status::Disagree);
            out.push(Disagreement {
                invariant: "resolving.poly".into(),
                formula: f.to_string(),
                oracle: o.to_string(),
                witness: p.witness.clone().unwrap_or_default(),
            });
        }
        _ => counts.record(Status::Unchecked),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(spec: &str) -> InvariantReport {
        build_report(
            &AbelianGroup::parse(spec).unwrap(),
            &ReportOptions::default(),
        )
    }

    #[test]
    fn z6_report() {
        let r = report("Z6");
        assert!(r.agree_all, "{:?}", r.disagreements);
        let f = r.full().unwrap();
        assert_eq!(f.edges.formula, 30);
        assert_eq!(f.edges.oracle, Measured::Value(30));
        assert_eq!(f.resolving.beta.formula, 7);
        assert_eq!((f.detour.radius.formula, f.detour.diameter.formula), (7, 9));
        assert_eq!(f.structure.decomposition, "K_2 v (K_4 u 3K_2)");
        assert_eq!(
            r.checks,
            CheckCounts {
                agree: 14,
                disagree: 0,
                unchecked: 0
            }
        );
    }

    #[test]
    fn abelian_short_report() {
        let r = report("Z2xZ2");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["abelian"], true);
        assert_eq!(json["graph"], "K_8");
        assert_eq!(json["degree"], 7);
        assert_eq!(json["complete"], true);
        assert!(r.agree_all);
    }

    #[test]
    fn caps_mark_unchecked() {
        let r = report("Z12");
        let f = r.full().unwrap();
        assert_eq!(f.detour.radius.status(), Status::Unchecked);
        assert_eq!(f.chromatic.number.status(), Status::Agree);
        assert_eq!(f.resolving.beta.status(), Status::Unchecked);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["detour"]["ecc"]["omega1"]["oracle"], "unchecked");
        assert_eq!(json["detour"]["ecc"]["omega1"]["agree"], false);
        assert!(r.agree_all);

        let opts = ReportOptions {
            caps: Caps {
                skip_oracles: true,
                ..Caps::default()
            },
            ..ReportOptions::default()
        };
        let r = build_report(&AbelianGroup::parse("Z6").unwrap(), &opts);
        assert_eq!(r.checks.agree, 0);
        assert_eq!(r.checks.unchecked, 14);
    }

    #[test]
    fn every_fault_is_detected_with_a_witness() {
        let group = AbelianGroup::parse("Z6").unwrap();
        for fault in Fault::ALL {
            let opts = ReportOptions {
                fault: Some(fault),
                ..ReportOptions::default()
            };
            let r = build_report(&group, &opts);
            assert!(!r.agree_all, "{fault}");
            assert!(
                r.disagreements.iter().all(|d| !d.witness.is_empty()),
                "{fault}: {:?}",
                r.disagreements
            );
        }
    }

    #[test]
    fn json_round_trip_and_stability() {
        for spec in ["Z4", "Z2xZ2", "Z12"] {
            let r = report(spec);
            let text = serde_json::to_string(&r).unwrap();
            let back: InvariantReport = serde_json::from_str(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(serde_json::to_string(&report(spec)).unwrap(), text);
        }
    }

    #[test]
    fn respellings_agree() {
        let a = report("Z6");
        let b = report("Z2xZ3");
        assert_eq!(a.respelled(&AbelianGroup::parse("Z2xZ3").unwrap()), b);
    }

    #[test]
    fn fault_names_parse() {
        for fault in Fault::ALL {
            assert_eq!(fault.name().parse::<Fault>().unwrap(), fault);
        }
        assert!("nope".parse::<Fault>().is_err());
    }
}
