//! Conditional-expectation projectors of measures on a product space:
//! a product measure decomposes into interaction subspaces whose
//! dimensions follow a closed formula, while a correlated measure fails
//! with a witness naming the interacting coordinates.
//!
//! Run with: `cargo run -p interdecomp --example measure_interaction`

use interdecomp::factor_spaces::interaction_rank;
use interdecomp::linalg::{format_rat, rat, rat_int, Matrix};
use interdecomp::{ConfigurationSpace, Measure};

fn show(m: &Matrix) -> String {
    (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = m.row(r).iter().map(format_rat).collect();
            format!("[{}]", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n  ")
}

fn main() {
    let two_bits = ConfigurationSpace::new(vec![("1".into(), 2), ("2".into(), 2)]).unwrap();

    // The uniform measure is the product of two fair coins.
    let uniform = Measure::uniform(two_bits.clone());
    println!(
        "uniform measure on {{0,1}}²: is_product = {}",
        uniform.is_product()
    );
    println!(
        "averaging projector onto functions of coordinate 1:\n  {}",
        show(&uniform.conditional_expectation(&["1"]).unwrap())
    );
    let d = uniform.interaction_decomposition().unwrap();
    println!("interaction dimensions:");
    for (id, dim) in d.dims() {
        println!("  {id}: {dim}");
    }

    // Perfect correlation: P(00) = P(11) = 1/2. The single-coordinate
    // marginals are fair coins, but the joint measure is not their
    // product, and the pair {1},{2} witnesses it.
    let coupled =
        Measure::new(two_bits, vec![rat(1, 2), rat_int(0), rat_int(0), rat(1, 2)]).unwrap();
    println!("\ncoupled measure: is_product = {}", coupled.is_product());
    match coupled.interaction_decomposition() {
        Ok(_) => unreachable!("correlation defeats the decomposition"),
        Err(w) => println!("witness pair: ({}, {})", w.left, w.right),
    }

    // A full-support product on {0,1,2}×{0,1}: every interaction subspace
    // has dimension Π (|factor| − 1) over the chosen coordinates.
    let space = ConfigurationSpace::new(vec![("x".into(), 3), ("y".into(), 2)]).unwrap();
    let product = Measure::product_of(
        space,
        &[
            vec![rat(1, 6), rat(1, 3), rat(1, 2)],
            vec![rat(1, 4), rat(3, 4)],
        ],
    )
    .unwrap();
    println!("\nproduct measure on 3×2:");
    let d = product.interaction_decomposition().unwrap();
    for (mask, label) in [(0b00, "{}"), (0b01, "{x}"), (0b10, "{y}"), (0b11, "{x,y}")] {
        println!(
            "  {label}: decomposition dim {}, brute-force rank {}, formula {}",
            d.subspace_idx(mask).dim(),
            interaction_rank(&product, mask),
            product.product_interaction_dim(mask),
        );
    }
}
