use drt_moments::{order4_op_model, project_all_order4_with_tally, Image, OpCounts};
use drt_moments_bench::{bench, bench_both, count_ops, emit_csv, synthetic_image, Method, CSV_HEADER};

/// Reference budget for the projection route at 200x200:
/// 5*M*N + 11*M + 11*N additions and 10*M + 11*N weighted multiplications.
const PUBLISHED_ADDS_200: u64 = 5 * 40_000 + 11 * 200 + 11 * 200;
const PUBLISHED_NAIVE_MULTS_200: u64 = 15 * 200 * 200;

#[test]
fn drt_counts_at_200() {
    let img = synthetic_image(200, 200).unwrap();
    let c = count_ops(&img, Method::Drt, 4).unwrap();
    assert_eq!(PUBLISHED_ADDS_200, 204_400);
    // same quadratic and linear terms, plus a constant 12
    assert_eq!(c.additions, PUBLISHED_ADDS_200 + 12);
    assert_eq!(c.multiplications, 13 * 200 + 16 * 200 - 2);
    assert_eq!(c, order4_op_model(200, 200));
}

#[test]
fn naive_counts_at_200_within_bounds() {
    let img = synthetic_image(200, 200).unwrap();
    let c = count_ops(&img, Method::Naive, 4).unwrap();
    assert_eq!(PUBLISHED_NAIVE_MULTS_200, 600_000);
    assert!(c.multiplications >= 4 * 40_000 && c.multiplications <= PUBLISHED_NAIVE_MULTS_200);
    assert_eq!(c.additions, 15 * 40_000);
}

#[test]
fn single_pixel_drt() {
    let img = Image::new(1, 1, vec![3]).unwrap();
    let mut proj = OpCounts::default();
    project_all_order4_with_tally(&img, &mut proj);
    assert_eq!(proj.additions, 5);
    let c = count_ops(&img, Method::Drt, 4).unwrap();
    assert_eq!(c.additions, 5 + 11 + 11 + 12);
}

#[test]
fn counts_are_data_independent() {
    let a = count_ops(&synthetic_image(31, 17).unwrap(), Method::Drt, 4).unwrap();
    let b = count_ops(&Image::zeros(31, 17).unwrap(), Method::Drt, 4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn general_order_counts_grow_linearly_in_multiplications() {
    let c1 = count_ops(&synthetic_image(40, 40).unwrap(), Method::Drt, 6).unwrap();
    let c2 = count_ops(&synthetic_image(80, 80).unwrap(), Method::Drt, 6).unwrap();
    // seven projections
    assert!(c1.additions >= 7 * 1600);
    let ratio = c2.multiplications as f64 / c1.multiplications as f64;
    assert!((1.8..2.2).contains(&ratio), "ratio {ratio}");
}

#[test]
fn single_repeat_has_equal_min_and_median() {
    for r in bench(&[(32, 16)], Method::Drt, 1, 4).unwrap() {
        assert_eq!(r.min_time, r.median_time);
        assert_eq!(r.repeats, 1);
    }
}

#[test]
fn records_are_ordered_and_consistent() {
    let records = bench_both(&[(40, 30), (20, 10)], 3, 4).unwrap();
    let shape: Vec<_> = records.iter().map(|r| (r.width, r.height, r.method)).collect();
    assert_eq!(shape, [(40, 30, Method::Naive), (40, 30, Method::Drt), (20, 10, Method::Naive), (20, 10, Method::Drt)]);
    assert!(records.iter().all(|r| r.min_time <= r.median_time));

    let mut out = Vec::new();
    emit_csv(&records, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("40,30,drt,4,3,"));
}
