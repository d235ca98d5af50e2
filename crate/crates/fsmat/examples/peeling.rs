//! Support-cover peeling: repeatedly carve a small cover of the current
//! support out of the family until it drops below a size threshold.

use fsmat::{SetFamily, Subset};

fn main() {
    // all nonempty subsets of [4]
    let members: Vec<Subset> = Subset::power_set(4)
        .unwrap()
        .filter(|s| !s.is_empty())
        .collect();
    let f = SetFamily::new(4, members).unwrap();
    println!("peeling a family of {} sets over [4]\n", f.len());

    let t = f.support_cover_peeling(4);
    for j in 0..t.rounds() {
        let layer: Vec<String> = t.cover_layers()[j]
            .members()
            .iter()
            .map(|s| format!("{{{s}}}"))
            .collect();
        println!(
            "round {}: support X_{} = {{{}}}, layer R_{} = {}, {} sets left",
            j + 1,
            j + 1,
            t.x_sequence()[j + 1],
            j + 1,
            layer.join(" "),
            t.residuals()[j + 1],
        );
    }
    println!(
        "\nstopped after {} rounds with {} sets (< threshold 4)",
        t.rounds(),
        t.residuals().last().unwrap()
    );

    // each layer is a cover of its support by few sets: at most |X_j| picks
    for (x, layer) in t.x_sequence()[1..].iter().zip(t.cover_layers()) {
        let union = layer
            .members()
            .iter()
            .fold(Subset::empty(4).unwrap(), |u, s| u.union(s));
        assert!(x.is_subset_of(&union));
        assert!(layer.len() <= x.len());
    }
    println!("every layer covers its support with at most |support| sets");
}
