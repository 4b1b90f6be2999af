use commgraph_core::detour::detour_profile_oracle;
use commgraph_core::invariants::chromatic_number_oracle;
use commgraph_core::resolving::{metric_dimension_oracle, resolving_polynomial_oracle};
use commgraph_core::{
    build_commuting_graph, build_report, AbelianGroup, DihedralGroup, ReportOptions, VertexSelector,
};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn dihedral(spec: &str) -> DihedralGroup {
    DihedralGroup::new(AbelianGroup::parse(spec).unwrap())
}

fn graph_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_commuting_graph");
    for spec in ["Z6", "Z4xZ4", "Z2xZ2xZ2xZ8", "Z1024"] {
        let d = dihedral(spec);
        group.bench_with_input(BenchmarkId::from_parameter(spec), &d, |b, d| {
            b.iter(|| build_commuting_graph(black_box(d), &VertexSelector::All).unwrap())
        });
    }
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    for spec in ["Z6", "Z2xZ4", "Z9"] {
        let g = build_commuting_graph(&dihedral(spec), &VertexSelector::All).unwrap();
        group.bench_with_input(BenchmarkId::new("detour_profile", spec), &g, |b, g| {
            b.iter(|| detour_profile_oracle(g, 20).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("chromatic", spec), &g, |b, g| {
            b.iter(|| chromatic_number_oracle(g, 24).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("metric_dimension", spec), &g, |b, g| {
            b.iter(|| metric_dimension_oracle(g, 18).unwrap())
        });
        group.bench_with_input(
            BenchmarkId::new("resolving_polynomial", spec),
            &g,
            |b, g| b.iter(|| resolving_polynomial_oracle(g, 18).unwrap()),
        );
    }
    group.finish();
}

fn full_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_report");
    group.sample_size(10);
    for spec in ["Z6", "Z4xZ3"] {
        let g = AbelianGroup::parse(spec).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(spec), &g, |b, g| {
            b.iter(|| build_report(g, &ReportOptions::default()))
        });
    }
    group.finish();
}

criterion_group!(benches, graph_build, oracles, full_report);
criterion_main!(benches);
