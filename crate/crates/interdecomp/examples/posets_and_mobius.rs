//! Finite posets and their zeta/Möbius calculus: builds the boolean
//! lattice on two generators and a non-lattice "bowtie", prints their
//! Möbius tables, and round-trips a coefficient family through the two
//! transforms.
//!
//! Run with: `cargo run -p interdecomp --example posets_and_mobius`

use interdecomp::linalg::{format_rat, rat_int, Rat};
use interdecomp::poset::FinitePoset;

fn print_mobius(poset: &FinitePoset) {
    let mu = poset.mobius();
    print!("{:>8}", "μ(a,b)");
    for b in poset.elements() {
        print!("{b:>8}");
    }
    println!();
    // μ(a, b) is supported on b ≤ a: row a collects the alternating
    // coefficients that recover f(a) from the down-set sums.
    for (a, id) in poset.elements().iter().enumerate() {
        print!("{id:>8}");
        for b in 0..poset.len() {
            if poset.leq_idx(b, a) {
                print!("{:>8}", mu.mu_idx(a, b));
            } else {
                print!("{:>8}", "·");
            }
        }
        println!();
    }
}

fn main() {
    let square = FinitePoset::boolean_lattice(&["x", "y"]).unwrap();
    println!(
        "boolean lattice on {{x, y}}: elements {:?}",
        square.elements()
    );
    println!(
        "covering pairs: {:?}",
        square
            .covering_pairs()
            .iter()
            .map(|&(lo, hi)| (square.element(lo), square.element(hi)))
            .collect::<Vec<_>>()
    );
    print_mobius(&square);

    // Summing a family over down-sets (zeta) and inverting (Möbius).
    let family: Vec<Vec<Rat>> = (0..square.len())
        .map(|a| vec![rat_int(a as i64 * a as i64)])
        .collect();
    let summed = square.zeta_apply(&family).unwrap();
    let back = square.mobius_apply(&summed).unwrap();
    println!("\nfamily      -> {}", show(&family));
    println!("zeta(family) -> {}", show(&summed));
    println!("mobius(zeta(family)) -> {} (round trip)", show(&back));
    assert_eq!(back, family);

    // A poset where two elements have two maximal lower bounds: meets do
    // not exist, so the general down-set machinery is required.
    let bowtie = FinitePoset::from_relations(
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .unwrap();
    println!("\nbowtie poset (c and d share the lower bounds a and b):");
    println!("is_meet_semilattice: {}", bowtie.is_meet_semilattice());
    print_mobius(&bowtie);

    // Its lower sets index the W-spaces used by the intersection theory.
    println!("lower sets: {}", bowtie.lower_sets().len());
    for set in bowtie.lower_sets().iter().take(6) {
        let ids: Vec<&str> = set.iter().map(|&i| bowtie.element(i)).collect();
        println!("  {ids:?}");
    }
}

fn show(family: &[Vec<Rat>]) -> String {
    let cells: Vec<String> = family.iter().map(|row| format_rat(&row[0])).collect();
    format!("[{}]", cells.join(", "))
}
