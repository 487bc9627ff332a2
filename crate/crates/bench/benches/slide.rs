use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use epistream::{mine_batch, Window};
use epistream_bench::{synthetic_stream, warmed_up};

const SIGMA: usize = 4;
const SLIDES: usize = 50;

fn slides(c: &mut Criterion) {
    let mut group = c.benchmark_group("50 slides");
    group.sample_size(10);
    for ws in [40usize, 80] {
        let stream = synthetic_stream(ws, SLIDES, 2024);
        group.bench_with_input(BenchmarkId::new("incremental", ws), &ws, |b, &ws| {
            b.iter_batched(
                || warmed_up(&stream, ws, SIGMA),
                |mut state| {
                    for itemset in &stream[ws..] {
                        state.slide(itemset.clone());
                    }
                    state
                },
                BatchSize::LargeInput,
            )
        });
        group.bench_with_input(BenchmarkId::new("batch", ws), &ws, |b, &ws| {
            b.iter_batched(
                || Window::from_itemsets(1, stream[..ws].iter().cloned()),
                |mut window| {
                    let mut nodes = 0;
                    for itemset in &stream[ws..] {
                        window.pop_front();
                        window.push_back(itemset.clone());
                        nodes += mine_batch(&window, SIGMA).node_count();
                    }
                    nodes
                },
                BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, slides);
criterion_main!(benches);
