//! Compression maps and down-closure: squeeze a family toward small sets
//! while its size, and at least its shattering power, survive.

use fsmat::{SetFamily, Subset};

fn family(m: usize, sets: &[&[usize]]) -> SetFamily {
    let members: Vec<Subset> = sets
        .iter()
        .map(|s| Subset::from_elements(m, s.iter().copied()).unwrap())
        .collect();
    SetFamily::new(m, members).unwrap()
}

fn main() {
    let f = family(3, &[&[1, 2], &[2, 3], &[1, 2, 3], &[3]]);
    println!("family ({} sets, measure {}):\n{f}", f.len(), f.measure());

    // one compression step: each set drops element 1 unless the result
    // already belongs to the family
    let c1 = f.compress(1).unwrap();
    println!("after compressing element 1 (measure {}):\n{c1}", c1.measure());

    // iterate all elements to a fixed point
    let down = f.down_close();
    println!("down-closure (measure {}):\n{down}", down.measure());
    assert!(down.is_down_family());
    assert_eq!(down.len(), f.len());

    // traces only shrink under compression, so shattered sets survive
    for s in Subset::power_set(3).unwrap() {
        let before = f.trace(&s).len();
        let after = down.trace(&s).len();
        assert!(after <= before);
        if f.shatters(&s) {
            assert!(down.shatters(&s));
        }
    }
    println!("trace sizes never grew; every shattered set stayed shattered");
}
