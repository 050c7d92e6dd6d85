//! Produces a set of ready-to-use JSON input files for the `interdecomp`
//! binary — one per input kind and verdict — and prints the matching
//! command lines.
//!
//! Usage: `cargo run -p interdecomp --example cli_files -- [out_dir]`
//! (default: a `interdecomp-cli-files` directory under the system temp
//! dir). The generated files are deterministic: seeded RNG throughout.

use std::fs;
use std::path::PathBuf;

use interdecomp::generate::{
    perturb_retraction, planted_family, random_poset, random_split_functor, rng,
};
use interdecomp::io::{family_to_string, measure_to_string, split_to_string};
use interdecomp::linalg::{rat, rat_int, Matrix};
use interdecomp::poset::FinitePoset;
use interdecomp::projectors::ProjectorFamily;
use interdecomp::{ConfigurationSpace, Measure};

fn diag(entries: &[i64]) -> Matrix {
    Matrix::diagonal(&entries.iter().map(|&x| rat_int(x)).collect::<Vec<_>>())
}

fn main() {
    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("interdecomp-cli-files"));
    fs::create_dir_all(&out_dir).expect("create output directory");

    // A three-element fork 0 < 1, 0 < 1' with coordinate projectors: the
    // smallest interesting decomposable projector family.
    let fork = FinitePoset::from_relations(
        vec!["0".into(), "1".into(), "1'".into()],
        &[("0", "1"), ("0", "1'")],
    )
    .unwrap();
    let fork_family = ProjectorFamily::new(
        fork,
        3,
        vec![diag(&[1, 0, 0]), diag(&[1, 1, 0]), diag(&[1, 0, 1])],
    )
    .unwrap();

    // A larger decomposable family with hidden (planted) subspaces.
    let mut r = rng(9);
    let poset = random_poset(&mut r, 4);
    let planted = planted_family(&mut r, &poset, &[1, 1, 0, 2], 1);

    // Measures on two binary factors: the uniform one is a product, the
    // perfectly correlated one is not.
    let two_bits = ConfigurationSpace::new(vec![("1".into(), 2), ("2".into(), 2)]).unwrap();
    let uniform = Measure::uniform(two_bits.clone());
    let coupled =
        Measure::new(two_bits, vec![rat(1, 2), rat_int(0), rat_int(0), rat(1, 2)]).unwrap();

    // A split functor that is a conjugated sum of components over a vee
    // poset, and an adversarial copy with one retraction bled across
    // blocks: still a valid functor, no longer decomposable.
    let vee = FinitePoset::from_relations(
        vec!["l".into(), "r".into(), "t".into()],
        &[("l", "t"), ("r", "t")],
    )
    .unwrap();
    let widths = [2, 1, 1];
    let block_sum = random_split_functor(&mut rng(5), &vee, &widths);
    let perturbed = perturb_retraction(&block_sum, &widths).expect("vee shape is perturbable");

    let files: Vec<(&str, &str, String)> = vec![
        (
            "fork_family.json",
            "projectors",
            family_to_string(&fork_family),
        ),
        (
            "planted_family.json",
            "projectors",
            family_to_string(&planted.family),
        ),
        (
            "uniform_measure.json",
            "measure",
            measure_to_string(&uniform),
        ),
        (
            "coupled_measure.json",
            "measure",
            measure_to_string(&coupled),
        ),
        ("block_sum_split.json", "split", split_to_string(&block_sum)),
        ("perturbed_split.json", "split", split_to_string(&perturbed)),
    ];

    println!("wrote {} input files to {}", files.len(), out_dir.display());
    for (name, kind, text) in &files {
        let path = out_dir.join(name);
        fs::write(&path, text).expect("write input file");
        println!(
            "  interdecomp decompose --kind {kind} --input {}",
            path.display()
        );
    }
    println!("exit codes: 0 decomposable, 1 not decomposable, 2 invalid input");
}
