//! Fixed points of the gamma recurrences, per mode, and the resulting
//! exponent bounds on pattern-avoiding matrix growth.

use fsmat::{iterate_to_limit, RecurrenceMode, DEFAULT_ITERATION_TOL, DEFAULT_MAX_ITER};

fn main() {
    // the k=2 recurrence drives gamma to 0, giving growth exponent 2
    let s = iterate_to_limit(2, RecurrenceMode::K2, DEFAULT_ITERATION_TOL, DEFAULT_MAX_ITER)
        .unwrap();
    println!(
        "k=2: gamma_n = 1/(n+1) -> {:.2e} after {} steps, fs exponent -> {:.4}",
        s.limit,
        s.iterations(),
        s.fs_exponent
    );

    // for k >= 3 the quadratic mode tends to alpha = 2k/3 - 1; the exact
    // floor-sum mode does at least as well, strictly better off multiples of 3
    println!("\n{:>3} {:>12} {:>12} {:>12} {:>12}", "k", "quad gamma", "quad fs", "exact gamma", "exact fs");
    for k in 3..=8 {
        let q = iterate_to_limit(k, RecurrenceMode::Quadratic, 1e-10, DEFAULT_MAX_ITER).unwrap();
        let e = iterate_to_limit(k, RecurrenceMode::Exact, 1e-10, DEFAULT_MAX_ITER).unwrap();
        println!(
            "{k:>3} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            q.limit, q.fs_exponent, e.limit, e.fs_exponent
        );
        assert!((q.alpha - (2.0 * k as f64 / 3.0 - 1.0)).abs() < 1e-12);
        assert!(e.fs_exponent <= q.fs_exponent + 1e-9);
    }

    // headline fixed points: (1+sqrt(5))/2 at k=4, (1+sqrt(13))/2 at k=5
    let k4 = iterate_to_limit(4, RecurrenceMode::Exact, 1e-12, DEFAULT_MAX_ITER).unwrap();
    let k5 = iterate_to_limit(5, RecurrenceMode::Exact, 1e-12, DEFAULT_MAX_ITER).unwrap();
    println!("\nk=4 exact limit = {:.9} (golden ratio), fs exponent {:.4}", k4.limit, k4.fs_exponent);
    println!("k=5 exact limit = {:.9},                fs exponent {:.4}", k5.limit, k5.fs_exponent);
    assert!((k4.limit - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
    assert!((k5.limit - (1.0 + 13f64.sqrt()) / 2.0).abs() < 1e-9);
}
