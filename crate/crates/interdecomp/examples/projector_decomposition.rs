//! Decides decomposability for two projector families over the same
//! three-element fork poset: one decomposes into interaction subspaces,
//! the other fails with a concrete witness pair.
//!
//! Run with: `cargo run -p interdecomp --example projector_decomposition`

use interdecomp::linalg::{format_rat, rat_int, Matrix};
use interdecomp::poset::FinitePoset;
use interdecomp::projectors::ProjectorFamily;

fn diag(entries: &[i64]) -> Matrix {
    Matrix::diagonal(&entries.iter().map(|&x| rat_int(x)).collect::<Vec<_>>())
}

fn show(m: &Matrix) -> String {
    (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = m.row(r).iter().map(format_rat).collect();
            format!("[{}]", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn fork() -> FinitePoset {
    FinitePoset::from_relations(
        vec!["0".into(), "1".into(), "1'".into()],
        &[("0", "1"), ("0", "1'")],
    )
    .unwrap()
}

fn main() {
    // Nested coordinate projectors: each π_a keeps the coordinates of the
    // elements below a.
    let family = ProjectorFamily::new(
        fork(),
        3,
        vec![diag(&[1, 0, 0]), diag(&[1, 1, 0]), diag(&[1, 0, 1])],
    )
    .unwrap();

    println!("functorial:   {}", family.is_functorial());
    println!("presheafable: {}", family.is_presheafable());
    println!("intersection: {}", family.satisfies_intersection());

    let d = family.decompose().expect("fork family decomposes");
    println!("certified:    {}\n", d.certified());
    let terms = d.terms();
    for (id, dim) in d.dims() {
        println!("S_{id}: dim {dim}");
    }
    for (a, id) in family.poset().elements().iter().enumerate() {
        println!("s_{id} = {}", show(terms.term_idx(a)));
    }
    println!("s_top = {}", show(terms.top()));

    // Same poset, but the two arms overlap in one extra direction: the
    // composite π_1·π_1' then projects onto more than the common part.
    let overlapping = ProjectorFamily::new(
        fork(),
        3,
        vec![
            diag(&[1, 0, 0]),
            diag(&[1, 1, 0]),
            Matrix::from_rows(vec![
                vec![rat_int(1), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(1), rat_int(0)],
                vec![rat_int(0), rat_int(1), rat_int(0)],
            ]),
        ],
    )
    .unwrap();
    println!(
        "\noverlapping family: intersection = {}",
        overlapping.satisfies_intersection()
    );
    match overlapping.decompose() {
        Ok(_) => unreachable!("the overlap defeats the identity"),
        Err(witness) => println!("witness pair: ({}, {})", witness.left, witness.right),
    }
    for (left, right) in overlapping.intersection_witnesses() {
        println!("failing pair: ({left}, {right})");
    }
}
