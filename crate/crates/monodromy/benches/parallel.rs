//! Sequential versus work-stealing class enumeration on groups large
//! enough for the frontier to fan out.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use monodromy::bsgs::PermGroup;
use monodromy::classes::class_orbit_with_mode;
use monodromy::triples::count_class_triples;
use monodromy::{Budget, Permutation};

fn budget() -> Budget {
    Budget::new(10_000_000, Duration::from_secs(600))
}

/// The symmetric group on ten points from a cycle and a transposition.
fn s10() -> PermGroup {
    let n = 10;
    let cycle = Permutation::parse("(1,2,3,4,5,6,7,8,9,10)", n).unwrap();
    let swap = Permutation::parse("(1,2)", n).unwrap();
    PermGroup::new(vec![cycle, swap]).unwrap()
}

fn bench_class_orbit(c: &mut Criterion) {
    let group = s10();
    let b = budget();
    // 362880 conjugates of a full cycle: the largest class of the group.
    let rep = Permutation::parse("(1,2,3,4,5,6,7,8,9,10)", 10).unwrap();

    let mut group_bench = c.benchmark_group("class_orbit_full_cycle");
    group_bench.sample_size(10);
    for (label, parallel) in [("sequential", false), ("parallel", true)] {
        group_bench.bench_with_input(BenchmarkId::from_parameter(label), &parallel, |bench, &mode| {
            bench.iter(|| class_orbit_with_mode(&group, &rep, &b, mode).unwrap().size())
        });
    }
    group_bench.finish();
}

fn bench_triple_census(c: &mut Criterion) {
    let group = s10();
    let b = budget();
    let cycle = Permutation::parse("(1,2,3,4,5,6,7,8,9,10)", 10).unwrap();
    let swap = Permutation::parse("(1,2)", 10).unwrap();
    let product = cycle.compose(&swap);
    let c1 = class_orbit_with_mode(&group, &cycle, &b, false).unwrap();
    let c2 = class_orbit_with_mode(&group, &swap, &b, false).unwrap();
    let c3 = class_orbit_with_mode(&group, &product, &b, false).unwrap();

    let mut group_bench = c.benchmark_group("triple_census_cycle_swap");
    group_bench.sample_size(10);
    group_bench.bench_function("default_mode", |bench| {
        bench.iter(|| {
            count_class_triples(&group, &c1, &c2, &c3, &b)
                .unwrap()
                .pair_count
        })
    });
    group_bench.finish();
}

criterion_group!(benches, bench_class_orbit, bench_triple_census);
criterion_main!(benches);
