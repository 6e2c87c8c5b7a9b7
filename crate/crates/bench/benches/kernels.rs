use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use polyreplay::elimination::{determinant_bareiss, determinant_cofactor};
use polyreplay::{
    default_jobs, resultant, run_pipeline, FixtureSet, PipelineName, ReplayConfig, Vocab, DEFAULT_TERM_LIMIT,
};
use polyreplay_bench::{dense, generic_pair, linear_matrix};

fn arithmetic(c: &mut Criterion) {
    let v = Vocab::standard();
    let mut g = c.benchmark_group("multiply");
    for k in [4u32, 8] {
        let a = dense(&v, k);
        g.bench_with_input(BenchmarkId::from_parameter(k), &a, |b, a| b.iter(|| black_box(a.mul(a))));
    }
    g.finish();
    let p = dense(&v, 8);
    c.bench_function("normalize", |b| b.iter(|| black_box(p.scale(&polyreplay::rat(6)).normalize())));
}

fn elimination(c: &mut Criterion) {
    let v = Vocab::standard();
    let (f, g) = generic_pair(&v);
    c.bench_function("resultant/generic_quintic_quadratic", |b| {
        b.iter(|| black_box(resultant(&f, &g, v.lam_v).unwrap()))
    });
    let mut grp = c.benchmark_group("determinant");
    for n in [4usize, 5] {
        let m = linear_matrix(&v, n);
        grp.bench_with_input(BenchmarkId::new("bareiss", n), &m, |b, m| {
            b.iter(|| black_box(determinant_bareiss(m, DEFAULT_TERM_LIMIT).unwrap()))
        });
        grp.bench_with_input(BenchmarkId::new("cofactor", n), &m, |b, m| {
            b.iter(|| black_box(determinant_cofactor(m, DEFAULT_TERM_LIMIT).unwrap()))
        });
    }
    grp.finish();
}

fn pipelines(c: &mut Criterion) {
    let v = Vocab::standard();
    let fx = FixtureSet::builtin(&v).unwrap();
    let cfg = ReplayConfig::default();
    let jobs = default_jobs();
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    for name in [PipelineName::Lemma41, PipelineName::Case2, PipelineName::Case3] {
        let job = jobs.iter().find(|j| j.pipeline == name).unwrap();
        g.bench_function(name.as_str(), |b| {
            b.iter(|| black_box(run_pipeline(job.pipeline, &job.profile, &fx, &v, &cfg).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, arithmetic, elimination, pipelines);
criterion_main!(benches);
