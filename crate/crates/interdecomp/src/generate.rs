//! Seeded random instances: posets, planted decomposable projector
//! families, measures, and split functors, plus the adversarial
//! perturbation that breaks decomposability while preserving validity.
//!
//! Everything is driven by an explicit RNG so tests and examples are
//! reproducible; [`rng`] builds the canonical seeded generator.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::factor_spaces::{ConfigurationSpace, Measure};
use crate::linalg::{rat_int, Matrix, Rat, Subspace};
use crate::poset::FinitePoset;
use crate::projectors::ProjectorFamily;
use crate::split_functors::components::{blocks_below, sum_of_components};
use crate::split_functors::SplitFunctor;

/// The canonical deterministic RNG used throughout the test suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random poset on `n` elements (`p0`, `p1`, …). A hidden random linear
/// order keeps the generated relations acyclic; element ids are assigned in
/// shuffled positions so the declaration order is generally *not* a linear
/// extension.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> FinitePoset {
    let elements: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    // Random permutation: position in `order` is the hidden rank.
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                relations.push((elements[order[i]].clone(), elements[order[j]].clone()));
            }
        }
    }
    FinitePoset::from_relations(elements, &relations).expect("rank-ordered relations are acyclic")
}

/// A random rational with numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`.
pub fn random_rat(rng: &mut impl Rng, bound: i64) -> Rat {
    Rat::new(
        rng.gen_range(-bound..=bound).into(),
        rng.gen_range(1..=bound).into(),
    )
}

/// A matrix of small random rationals.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| random_rat(rng, bound))
}

/// A random invertible matrix: a product of a lower triangle with
/// nonzero diagonal and a unit upper triangle, all entries small
/// integers.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for i in 0..n {
        let d = *[-2, -1, 1, 2]
            .get(rng.gen_range(0..4))
            .expect("index in range");
        lower.set(i, i, rat_int(d));
        for j in 0..i {
            lower.set(i, j, rat_int(rng.gen_range(-2..=2)));
            upper.set(j, i, rat_int(rng.gen_range(-2..=2)));
        }
    }
    &lower * &upper
}

/// A decomposable projector family with known interaction subspaces.
pub struct PlantedFamily {
    pub family: ProjectorFamily,
    /// The planted subspace of each poset element, in element order.
    pub subspaces: Vec<Subspace>,
    /// The planted residual subspace.
    pub top_subspace: Subspace,
}

/// Plants a direct-sum decomposition of ℚⁿ (n = Σ widths + top_extra):
/// a random invertible matrix donates `widths[a]` basis columns to each
/// element and `top_extra` to the residual, and `π_a` projects onto the
/// columns of elements `b ≤ a` along the rest. The resulting family is
/// decomposable by construction with `im s_a` equal to the planted spans.
pub fn planted_family(
    rng: &mut impl Rng,
    poset: &FinitePoset,
    widths: &[usize],
    top_extra: usize,
) -> PlantedFamily {
    assert_eq!(widths.len(), poset.len(), "one width per element");
    let n: usize = widths.iter().sum::<usize>() + top_extra;
    let basis = random_invertible(rng, n);
    let basis_inv = basis.inverse().expect("triangular product is invertible");

    let offsets: Vec<usize> = widths
        .iter()
        .scan(0, |acc, &w| {
            let here = *acc;
            *acc += w;
            Some(here)
        })
        .collect();

    let group_span = |start: usize, width: usize| {
        let cols: Vec<Vec<Rat>> = (start..start + width).map(|j| basis.col(j)).collect();
        Subspace::span(n, &cols)
    };

    let pis: Vec<Matrix> = (0..poset.len())
        .map(|a| {
            let mut d = Matrix::zeros(n, n);
            for b in poset.down_set_idx(a) {
                for j in offsets[b]..offsets[b] + widths[b] {
                    d.set(j, j, rat_int(1));
                }
            }
            &(&basis * &d) * &basis_inv
        })
        .collect();
    let family =
        ProjectorFamily::new(poset.clone(), n, pis).expect("conjugated selectors are projectors");
    let subspaces = (0..poset.len())
        .map(|a| group_span(offsets[a], widths[a]))
        .collect();
    let top_subspace = group_span(n - top_extra, top_extra);
    PlantedFamily {
        family,
        subspaces,
        top_subspace,
    }
}

/// Random widths in `0..=max` (one per poset element).
pub fn random_widths(rng: &mut impl Rng, n: usize, max: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

/// A random measure: integer weights in `0..=max_weight` (at least one
/// positive), normalized to total mass 1.
pub fn random_measure(rng: &mut impl Rng, space: &ConfigurationSpace, max_weight: u32) -> Measure {
    let mut raw: Vec<i64> = (0..space.total())
        .map(|_| rng.gen_range(0..=max_weight) as i64)
        .collect();
    if raw.iter().all(|&w| w == 0) {
        let idx = rng.gen_range(0..raw.len());
        raw[idx] = 1;
    }
    let total: i64 = raw.iter().sum();
    let weights = raw
        .into_iter()
        .map(|w| Rat::new(w.into(), total.into()))
        .collect();
    Measure::new(space.clone(), weights).expect("normalized nonnegative weights")
}

/// A random product measure: each factor gets an independent random
/// distribution (possibly with zero-weight values).
pub fn random_product_measure(rng: &mut impl Rng, space: &ConfigurationSpace) -> Measure {
    let factors: Vec<Vec<Rat>> = space
        .factor_sizes()
        .iter()
        .map(|&size| {
            let mut raw: Vec<i64> = (0..size).map(|_| rng.gen_range(0..=4)).collect();
            if raw.iter().all(|&w| w == 0) {
                raw[rng.gen_range(0..size)] = 1;
            }
            let total: i64 = raw.iter().sum();
            raw.into_iter()
                .map(|w| Rat::new(w.into(), total.into()))
                .collect()
        })
        .collect();
    Measure::product_of(space.clone(), &factors).expect("per-factor distributions are valid")
}

/// A random split functor that is a direct sum of one-component blocks
/// conjugated by random invertible transitions — decomposable by
/// construction with component dimensions `widths`.
pub fn random_split_functor(
    rng: &mut impl Rng,
    poset: &FinitePoset,
    widths: &[usize],
) -> SplitFunctor {
    // One invertible coordinate frame per (component, level); transitions
    // are frame changes, hence automatically functorial.
    let mut frames: BTreeMap<(usize, usize), (Matrix, Matrix)> = BTreeMap::new();
    for c in 0..poset.len() {
        for alpha in poset.up_set_idx(c) {
            let t = random_invertible(rng, widths[c]);
            let t_inv = t.inverse().expect("random invertible");
            frames.insert((c, alpha), (t, t_inv));
        }
    }
    sum_of_components(poset, widths, |c, lo, hi| {
        let (t_hi, _) = &frames[&(c, hi)];
        let (_, t_lo_inv) = &frames[&(c, lo)];
        Some(t_hi * t_lo_inv)
    })
    .expect("frame-change transitions are invertible and functorial")
}

/// Replaces one retraction of a block-sum functor with a different valid
/// splitting that defeats decomposability.
///
/// Requires `sf` to have the block layout of [`sum_of_components`] over
/// `widths`. The recipe: pick a maximal element `top`, a covering pair
/// `b ⋖ top` with a nonempty block, and an element `e ≤ top` incomparable
/// to `b` with a nonempty block; then bleed the `e`-block of `G(top)` into
/// the `b`-block output of the retraction `G(top) → G(b)`. Every functor
/// axiom survives (the extra term is annihilated by all composites), but
/// the projector pair `(b, e)` at `top` stops satisfying the intersection
/// identity. Returns `None` when no such triple exists — e.g. on chains,
/// which are always decomposable.
pub fn perturb_retraction(sf: &SplitFunctor, widths: &[usize]) -> Option<SplitFunctor> {
    let poset = sf.poset();
    for top in 0..poset.len() {
        if poset.up_set_idx(top).len() != 1 {
            continue;
        }
        for (b, hi) in poset.covering_pairs() {
            if hi != top || widths[b] == 0 {
                continue;
            }
            for e in poset.down_set_idx(top) {
                if widths[e] == 0 || poset.leq_idx(e, b) || poset.leq_idx(b, e) {
                    continue;
                }
                // Column of the e-block at level top, row of the b-block
                // at level b.
                let col = block_offset(poset, widths, top, e);
                let row = block_offset(poset, widths, b, b);
                let mut delta = Matrix::zeros(sf.dim_idx(b), sf.dim_idx(top));
                delta.set(row, col, rat_int(1));
                let perturbed = SplitFunctor::from_arrows(
                    poset.clone(),
                    sf.dims().to_vec(),
                    |lo, hi| sf.g_idx(lo, hi).clone(),
                    |lo, hi| {
                        if (lo, hi) == (b, top) {
                            sf.f_idx(lo, hi) + &delta
                        } else {
                            sf.f_idx(lo, hi).clone()
                        }
                    },
                )
                .expect("the perturbation preserves every functor axiom");
                return Some(perturbed);
            }
        }
    }
    None
}

fn block_offset(poset: &FinitePoset, widths: &[usize], alpha: usize, block: usize) -> usize {
    let mut offset = 0;
    for (c, w) in blocks_below(poset, widths, alpha) {
        if c == block {
            return offset;
        }
        offset += w;
    }
    panic!("block {block} is not visible at {alpha}");
}
