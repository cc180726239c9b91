use clustercat::character::{character_of_arc, window};
use clustercat::random::random_arc;
use clustercat::representations::enumerate_fp_submodules;
use clustercat::{ext1_dim, validate_ct, Arc, Surface};
use clustercat_bench::{tilting, ONE_ACC, TWO_ACC};
use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn ext(c: &mut Criterion) {
    let s = Surface::new(3).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let pairs: Vec<(Arc, Arc)> = (0..1000).map(|_| (random_arc(&mut rng, s, 20), random_arc(&mut rng, s, 20))).collect();
    c.bench_function("ext1_dim x1000", |b| {
        b.iter(|| pairs.iter().map(|&(x, y)| u32::from(ext1_dim(black_box(x), black_box(y)))).sum::<u32>())
    });
}

fn tiltings(c: &mut Criterion) {
    let t = tilting(TWO_ACC);
    c.bench_function("validate_ct two_acc", |b| b.iter(|| validate_ct(black_box(t.spec()))));
    let a: Arc = "p0:1-a1".parse().unwrap();
    c.bench_function("submodules p0:1-a1", |b| b.iter(|| enumerate_fp_submodules(&t, black_box(a)).unwrap()));
}

fn characters(c: &mut Criterion) {
    let t1 = tilting(ONE_ACC);
    let t3 = tilting(TWO_ACC);
    let a: Arc = "p0:0-a0".parse().unwrap();
    let b3: Arc = "a0-a1".parse().unwrap();
    c.bench_function("character p0:0-a0", |b| b.iter(|| character_of_arc(&t1, black_box(a)).unwrap()));
    c.bench_function("character a0-a1", |b| b.iter(|| character_of_arc(&t3, black_box(b3)).unwrap()));

    let x = character_of_arc(&t3, b3).unwrap();
    let mut g = c.benchmark_group("expand");
    for radius in [8, 16] {
        let w = window(&t3, radius);
        g.bench_function(format!("a0-a1 radius {radius}"), |b| b.iter(|| x.expand(&t3, black_box(&w))));
    }
    g.finish();
}

criterion_group!(benches, ext, tiltings, characters);
criterion_main!(benches);
