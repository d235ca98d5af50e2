//! Exact pattern-avoidance search: the widest simple m-row matrix containing
//! no induced copy of a forbidden pattern, found by branch-and-bound.

use fsmat::{fs_exact, fs_naive, Pattern, SearchOptions};

fn main() {
    let opts = SearchOptions::default();

    // a single 0 forces short matrices: only the all-ones column survives
    // plus one column per row it can disagree on
    let zero = Pattern::from_rows(&["00"]).unwrap();
    for m in 2..=4 {
        let r = fs_exact(m, &zero, &opts).unwrap();
        let cols: Vec<String> = r.witness.columns().iter().map(|c| format!("{{{c}}}")).collect();
        println!(
            "m={m} avoid [00]: {} columns, {} nodes, witness {}",
            r.value,
            r.nodes_explored,
            cols.join(" ")
        );
        assert_eq!(r.value, m + 1);
    }

    // the small cases agree with brute force over all column orderings
    let one = Pattern::from_rows(&["1"]).unwrap();
    let naive = fs_naive(2, &one).unwrap();
    let exact = fs_exact(2, &one, &opts).unwrap();
    println!("\nm=2 avoid [1]: exact {} = naive {naive}", exact.value);
    assert_eq!(exact.value, naive);

    // bigger run with the symmetry prune: identical pattern rows let the
    // search keep only row-permutation-minimal prefixes
    let all_ones = Pattern::from_rows(&["11", "11"]).unwrap();
    let plain = fs_exact(4, &all_ones, &opts).unwrap();
    let pruned = fs_exact(
        4,
        &all_ones,
        &SearchOptions {
            canonicalize: true,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    println!(
        "\nm=4 avoid [11;11]: value {} ({} nodes plain, {} canonicalized)",
        plain.value, plain.nodes_explored, pruned.nodes_explored
    );
    assert_eq!(plain.value, pruned.value);
    assert!(!plain.witness.contains(&all_ones));
}
