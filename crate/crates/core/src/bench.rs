//! Single-pass top-two selection against a full sort.

use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::{top2_by_sort, top2_select, top2_select_counted};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub repetitions: usize,
    pub select_median: Duration,
    pub sort_median: Duration,
    /// Both methods returned the same two values on every repetition.
    pub agree: bool,
    pub primary_comparisons: usize,
    pub secondary_comparisons: usize,
}

impl BenchRow {
    pub fn speedup(&self) -> f64 {
        self.sort_median.as_secs_f64() / self.select_median.as_secs_f64().max(1e-12)
    }
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

/// Times both methods on identical random arrays in `[0, 1)`, one fresh
/// array per repetition.
pub fn bench_selection(sizes: &[usize], repetitions: usize, seed: u64) -> Vec<BenchRow> {
    let repetitions = repetitions.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sizes
        .iter()
        .filter(|&&n| n >= 2)
        .map(|&size| {
            let mut select_times = Vec::with_capacity(repetitions);
            let mut sort_times = Vec::with_capacity(repetitions);
            let mut agree = true;
            let mut counts = (0, 0);
            for _ in 0..repetitions {
                let values: Vec<f64> = (0..size).map(|_| rng.random::<f64>()).collect();

                let start = Instant::now();
                let fast = black_box(top2_select(black_box(&values)).expect("size >= 2"));
                select_times.push(start.elapsed());

                let start = Instant::now();
                let slow = black_box(top2_by_sort(black_box(&values)).expect("size >= 2"));
                sort_times.push(start.elapsed());

                agree &= values[fast.primary] == values[slow.primary]
                    && values[fast.secondary] == values[slow.secondary];
                let (_, c) = top2_select_counted(&values).expect("size >= 2");
                counts = (c.primary, c.secondary);
            }
            BenchRow {
                size,
                repetitions,
                select_median: median(select_times),
                sort_median: median(sort_times),
                agree,
                primary_comparisons: counts.0,
                secondary_comparisons: counts.1,
            }
        })
        .collect()
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:>10} {:>6} {:>14} {:>14} {:>9} {:>6} {:>12} {:>12}\n",
        "N", "reps", "top2 (median)", "sort (median)", "speedup", "agree", "cmp primary", "cmp second"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>10} {:>6} {:>14} {:>14} {:>8.1}x {:>6} {:>12} {:>12}\n",
            r.size,
            r.repetitions,
            format!("{:.3?}", r.select_median),
            format!("{:.3?}", r.sort_median),
            r.speedup(),
            r.agree,
            r.primary_comparisons,
            r.secondary_comparisons
        ));
    }
    out
}
