//! Wall-clock and operation-count measurements for the naive and projection
//! pipelines, with CSV output.
//!
//! Timed runs use the production pipelines. Operation counts come from a
//! separate, untimed run of the instrumented variant.

use std::fmt;
use std::hint::black_box;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use drt_moments::{
    moments_general, moments_general_with_tally, moments_order4, moments_order4_with_tally, oracle_moments,
    oracle_moments_with_tally, Image, MomentError, MomentSet, OpCounts, Result, MAX_ORDER,
};

/// Repeats per size unless the caller asks otherwise.
pub const DEFAULT_REPEATS: usize = 31;

/// Image sizes `(width, height)` benchmarked by default, largest first.
pub const DEFAULT_SIZES: [(usize, usize); 8] =
    [(4032, 3024), (3000, 3000), (2000, 2000), (1500, 1500), (1000, 1000), (750, 750), (400, 400), (200, 200)];

pub const SYNTHETIC_SEED: u32 = 0x2020_0404;

pub const CSV_HEADER: &str = "width,height,method,order,repeats,min_us,median_us,mults,adds";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Direct double sum over all pixels.
    Naive,
    /// Projections, then reconstruction.
    Drt,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Drt => "drt",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "naive" => Ok(Method::Naive),
            "drt" => Ok(Method::Drt),
            other => Err(format!("unknown method `{other}` (expected naive or drt)")),
        }
    }
}

/// Computes every moment up to `order` with the chosen method. The
/// projection route uses the closed-form reconstruction for orders up to 4
/// and the solved systems above that.
pub fn compute(img: &Image, method: Method, order: u32) -> Result<MomentSet> {
    match method {
        Method::Naive => oracle_moments(img, order),
        Method::Drt if order > MAX_ORDER => Err(MomentError::OrderOutOfRange { order, min: 0, max: MAX_ORDER }),
        Method::Drt if order == 4 => moments_order4(img),
        Method::Drt if order < 4 => Ok(moments_order4(img)?.truncated(order)),
        Method::Drt => moments_general(img, order),
    }
}

/// Instrumented run of the pipeline [`compute`] would use.
pub fn count_ops(img: &Image, method: Method, order: u32) -> Result<OpCounts> {
    let mut counts = OpCounts::default();
    match method {
        Method::Naive => {
            oracle_moments_with_tally(img, order, &mut counts)?;
        }
        Method::Drt if order <= 4 => {
            moments_order4_with_tally(img, &mut counts)?;
        }
        Method::Drt => {
            moments_general_with_tally(img, order, &mut counts)?;
        }
    }
    Ok(counts)
}

/// Deterministic pseudo-random image from a 32-bit linear congruential
/// generator, identical on every platform.
pub fn synthetic_image(width: usize, height: usize) -> Result<Image> {
    let mut state = SYNTHETIC_SEED;
    let pixels = (0..width.saturating_mul(height))
        .map(|_| {
            state = state.wrapping_mul(1_664_525).wrapping_add(1_013_904_223);
            (state >> 24) as u8
        })
        .collect();
    Image::new(width, height, pixels)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub width: usize,
    pub height: usize,
    pub method: Method,
    pub order: u32,
    pub repeats: usize,
    pub min_time: Duration,
    pub median_time: Duration,
    pub ops: OpCounts,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.width,
            self.height,
            self.method,
            self.order,
            self.repeats,
            self.min_time.as_micros(),
            self.median_time.as_micros(),
            self.ops.multiplications,
            self.ops.additions
        )
    }
}

fn median(sorted: &[Duration]) -> Duration {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2
    }
}

/// Times one method on one image. The untimed instrumented run doubles as
/// warm-up; then `repeats` timed runs follow on a monotonic clock. Every
/// timed run must produce the same moments.
pub fn bench_image(img: &Image, method: Method, repeats: usize, order: u32) -> Result<BenchRecord> {
    let repeats = repeats.max(1);
    let ops = count_ops(img, method, order)?;
    let mut reference = None;
    let mut times = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        let ms = compute(black_box(img), method, order)?;
        times.push(start.elapsed());
        match &reference {
            None => reference = Some(black_box(ms)),
            Some(first) if black_box(&ms) != first => {
                return Err(MomentError::Inconsistent(format!("{method} produced differing moments across repeats")));
            }
            Some(_) => {}
        }
    }
    times.sort_unstable();
    Ok(BenchRecord {
        width: img.width(),
        height: img.height(),
        method,
        order,
        repeats,
        min_time: times[0],
        median_time: median(&times),
        ops,
    })
}

/// Benchmarks `method` on a synthetic image of each size, in the order given.
pub fn bench(sizes: &[(usize, usize)], method: Method, repeats: usize, order: u32) -> Result<Vec<BenchRecord>> {
    sizes.iter().map(|&(w, h)| bench_image(&synthetic_image(w, h)?, method, repeats, order)).collect()
}

/// Both methods per size, naive first.
pub fn bench_both(sizes: &[(usize, usize)], repeats: usize, order: u32) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::with_capacity(2 * sizes.len());
    for &(w, h) in sizes {
        let img = synthetic_image(w, h)?;
        for method in [Method::Naive, Method::Drt] {
            out.push(bench_image(&img, method, repeats, order)?);
        }
    }
    Ok(out)
}

/// Header plus one row per record, `\n` line endings.
pub fn emit_csv<W: Write>(records: &[BenchRecord], mut dest: W) -> io::Result<()> {
    writeln!(dest, "{CSV_HEADER}")?;
    for r in records {
        writeln!(dest, "{}", r.csv_row())?;
    }
    dest.flush()
}

/// One `#` comment line describing the build that produced the timings.
pub fn build_comment() -> String {
    format!(
        "# build: debug_assertions={} target_arch={} avx2={} sse2={}",
        cfg!(debug_assertions),
        std::env::consts::ARCH,
        cfg!(target_feature = "avx2"),
        cfg!(target_feature = "sse2"),
    )
}
