//! Shattered sets and the Sauer-Shelah threshold: any family larger than
//! C(m,0) + ... + C(m,k-1) shatters some k-set.

use fsmat::{sauer_shelah_threshold, SetFamily, Subset};

fn main() {
    let m = 4;
    let threshold = sauer_shelah_threshold(m, 2);
    println!("m={m}, k=2: families of size >= {threshold} must shatter a pair");

    // greedily grab sets until the threshold is reached, then exhibit a
    // shattered pair
    let members: Vec<Subset> = Subset::power_set(m)
        .unwrap()
        .take(threshold as usize)
        .collect();
    let f = SetFamily::new(m, members).unwrap();
    let pairs = f.shattered_sets(2);
    let shown: Vec<String> = pairs.iter().map(|p| format!("{{{p}}}")).collect();
    println!(
        "size-{} prefix of the power set shatters {}",
        f.len(),
        shown.join(" ")
    );
    assert!(!pairs.is_empty());

    // the trace on a shattered pair hits all four subsets
    let witness = pairs[0];
    let trace = f.trace(&witness);
    println!("trace on {{{witness}}}:\n{trace}");
    assert_eq!(trace.len(), 4);

    // one set below the threshold, shattering can fail: the down family of
    // all sets of size <= 1 has exactly threshold - 1 members
    let small: Vec<Subset> = Subset::power_set(m)
        .unwrap()
        .filter(|s| s.len() <= 1)
        .collect();
    let small = SetFamily::new(m, small).unwrap();
    assert_eq!(small.len() as u64, threshold - 1);
    assert!(small.shattered_sets(2).is_empty());
    println!(
        "the {}-member family of sets of size <= 1 shatters no pair",
        small.len()
    );
}
