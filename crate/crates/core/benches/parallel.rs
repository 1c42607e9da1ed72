use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lce_core::forms::Closure;
use lce_core::graphication::{graphicate_with, GraphicationOptions};
use lce_core::linked_cluster::check_combinatorial_batch;
use lce_core::random::{random_monomial, random_table_form, MonomialSpec};
use lce_core::{Exec, Generator, Mode, Monomial, Rational};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const POLICIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn lct_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let spec = MonomialSpec {
        min_degree: 3,
        ..MonomialSpec::local(Mode::Commutative, 6, 4)
    };
    let cases: Vec<_> = (0..48)
        .map(|_| {
            let x = random_monomial(&mut rng, &spec);
            let rho = random_table_form(
                &mut rng,
                Mode::Commutative,
                std::slice::from_ref(&x),
                Rational::one(),
                Closure::Symmetric,
            )
            .unwrap();
            (rho, x)
        })
        .collect();
    let mut group = c.benchmark_group("combinatorial_lct_batch");
    for (name, exec) in POLICIES {
        // fresh forms per iteration so memo tables start empty
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let fresh: Vec<_> = cases
                    .iter()
                    .map(|(rho, x)| (rho.with_bound(10), x.clone()))
                    .collect();
                check_combinatorial_batch(&fresh, exec)
            })
        });
    }
    group.finish();
}

fn word_graphication(c: &mut Criterion) {
    let w = Monomial::word((1..=8).map(|l| Generator::local(1, (l % 3) + 1)));
    let mut group = c.benchmark_group("word_graphication_deg8");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        let options = GraphicationOptions {
            exec,
            ..Default::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| graphicate_with(&w, &options).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, lct_batch, word_graphication);
criterion_main!(benches);
