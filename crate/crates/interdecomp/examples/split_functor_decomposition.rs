//! Split functors — injection/retraction couples over a poset — and
//! their decomposition into sums of components: builds a conjugated
//! block sum, recovers the hidden components, then bleeds one retraction
//! across blocks and watches decomposability break while every functor
//! axiom still holds.
//!
//! Run with: `cargo run -p interdecomp --example split_functor_decomposition`

use interdecomp::generate::{perturb_retraction, random_split_functor, rng};
use interdecomp::linalg::format_rat;
use interdecomp::poset::FinitePoset;
use interdecomp::split_functors::couplings::{zeta_mu_are_natural, Coupling};

fn main() {
    let vee = FinitePoset::from_relations(
        vec!["l".into(), "r".into(), "t".into()],
        &[("l", "t"), ("r", "t")],
    )
    .unwrap();
    let widths = [2, 1, 1];
    let sf = random_split_functor(&mut rng(5), &vee, &widths);

    println!("split functor over l < t > r with hidden component widths {widths:?}");
    for (a, id) in vee.elements().iter().enumerate() {
        println!("  dim at {id}: {}", sf.dim_idx(a));
    }
    let l = vee.index_of("l").unwrap();
    let t = vee.index_of("t").unwrap();
    let g = sf.g_idx(l, t);
    println!(
        "  injection l -> t is {}x{} with entries {:?}",
        g.rows(),
        g.cols(),
        g.row(0).iter().map(format_rat).collect::<Vec<_>>()
    );

    let d = sf.decompose().expect("block sums decompose");
    println!("\nrecovered component dimensions:");
    for (id, dim) in d.component_dims() {
        println!("  C_{id}: {dim}");
    }
    println!(
        "change of basis ψ(t) is {}x{}",
        d.psi_idx(t).rows(),
        d.psi_idx(t).cols()
    );
    println!(
        "isomorphism onto the block form verified: {}",
        d.is_isomorphism_of(&sf)
    );

    // The derived coupling diagram coheres for every split functor,
    // decomposable or not.
    let coupling = Coupling::build(&sf).unwrap();
    println!(
        "\ncoupling over the pair poset ({} pairs):",
        coupling.pairs_poset().len()
    );
    println!(
        "  squares and boundary identities: {}",
        coupling.verify(&sf)
    );
    println!(
        "  limit property at every pair: {}",
        (0..coupling.pairs_poset().len()).all(|q| coupling.is_limit_at(q))
    );
    println!(
        "  zeta/Möbius natural over transport: {}",
        zeta_mu_are_natural(&sf)
    );

    // One retraction, bled across blocks: still a valid split functor.
    let bad = perturb_retraction(&sf, &widths).expect("vee shape is perturbable");
    println!("\nperturbed retraction t => l: still validates as a functor");
    match bad.decompose() {
        Ok(_) => unreachable!("the perturbation defeats decomposability"),
        Err(w) => println!(
            "  obstruction at {}: pair ({}, {})",
            w.alpha, w.left, w.right
        ),
    }
    let coupling = Coupling::build(&bad).unwrap();
    println!("  coupling still coheres: {}", coupling.verify(&bad));
}
