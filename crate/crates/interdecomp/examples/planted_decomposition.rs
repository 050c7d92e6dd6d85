//! Plants a random direct-sum decomposition of ℚ⁷ over a random
//! five-element poset, rebuilds it from the projectors alone, and checks
//! that the recovered interaction subspaces equal the planted ones.
//!
//! Run with: `cargo run -p interdecomp --example planted_decomposition`

use interdecomp::generate::{planted_family, random_poset, rng};
use interdecomp::linalg::Subspace;

fn main() {
    let mut r = rng(17);
    let poset = random_poset(&mut r, 5);
    let widths = [2, 1, 0, 1, 2];
    let planted = planted_family(&mut r, &poset, &widths, 1);

    println!("poset elements: {:?}", poset.elements());
    println!(
        "order relations: {:?}",
        poset
            .strict_pairs()
            .iter()
            .map(|&(lo, hi)| (poset.element(lo), poset.element(hi)))
            .collect::<Vec<_>>()
    );
    println!("planted widths: {widths:?} + residual 1 (ambient dim 7)\n");

    let family = &planted.family;
    assert!(family.satisfies_intersection());
    let d = family.decompose().expect("planted families decompose");
    assert!(d.certified());

    let mut recovered: Vec<Subspace> = Vec::new();
    for (a, id) in poset.elements().iter().enumerate() {
        let space = d.subspace_idx(a);
        let matches = space == &planted.subspaces[a];
        println!(
            "S_{id}: dim {} (matches planted subspace: {matches})",
            space.dim()
        );
        assert!(matches);
        recovered.push(space.clone());
    }
    println!(
        "S_top: dim {} (matches planted residual: {})",
        d.top_subspace().dim(),
        d.top_subspace() == &planted.top_subspace
    );
    recovered.push(d.top_subspace().clone());
    println!(
        "direct sum spans the ambient space: {}",
        Subspace::direct_sum_is_ambient(&recovered)
    );
}
