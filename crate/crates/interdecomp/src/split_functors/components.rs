//! Split functors that are direct sums of one-component blocks by
//! construction.
//!
//! Fix a dimension `d_c` for every poset element `c`. The block-sum functor
//! assigns to `α` the space `⊕_{c ≤ α} ℚ^{d_c}`, with blocks laid out in
//! element order. Injections copy shared blocks (those indexed by `c ≤
//! lower`) and fill newly visible blocks with zeros; retractions drop them.
//! Each block may additionally carry its own invertible transition matrices
//! along the poset, as long as they compose functorially.

use crate::linalg::Matrix;
use crate::poset::FinitePoset;

use super::{SplitError, SplitFunctor};

/// `(element, width)` for every block visible at `alpha`, in element order.
pub fn blocks_below(poset: &FinitePoset, widths: &[usize], alpha: usize) -> Vec<(usize, usize)> {
    poset
        .down_set_idx(alpha)
        .into_iter()
        .map(|c| (c, widths[c]))
        .collect()
}

/// Total dimension `Σ_{c ≤ alpha} widths[c]` of the block space at `alpha`.
pub fn total_below(poset: &FinitePoset, widths: &[usize], alpha: usize) -> usize {
    blocks_below(poset, widths, alpha)
        .iter()
        .map(|&(_, w)| w)
        .sum()
}

/// The block-inclusion matrix `⊕_{c ≤ lower} ℚ^{d_c} → ⊕_{c ≤ upper} ℚ^{d_c}`:
/// identity on shared blocks, zero rows on blocks new at `upper`.
pub fn inclusion_matrix(
    poset: &FinitePoset,
    widths: &[usize],
    lower: usize,
    upper: usize,
) -> Matrix {
    block_transition(poset, widths, lower, upper, |_, w| Matrix::identity(w)).0
}

/// The block-projection matrix `⊕_{c ≤ upper} ℚ^{d_c} → ⊕_{c ≤ lower} ℚ^{d_c}`
/// keeping the blocks visible at `lower`.
pub fn projection_matrix(
    poset: &FinitePoset,
    widths: &[usize],
    lower: usize,
    upper: usize,
) -> Matrix {
    block_transition(poset, widths, lower, upper, |_, w| Matrix::identity(w)).1
}

/// Builds the injection/projection pair between block spaces, with a caller
/// chosen matrix on every shared block (the projection gets its inverse).
/// Returns `(injection, projection)`; the projection entry is `None`-free
/// only because the caller promises invertibility — checked by
/// [`sum_of_components`].
fn block_transition(
    poset: &FinitePoset,
    widths: &[usize],
    lower: usize,
    upper: usize,
    mut shared: impl FnMut(usize, usize) -> Matrix,
) -> (Matrix, Matrix) {
    let lo_blocks = blocks_below(poset, widths, lower);
    let hi_blocks = blocks_below(poset, widths, upper);
    let lo_total: usize = lo_blocks.iter().map(|&(_, w)| w).sum();
    let hi_total: usize = hi_blocks.iter().map(|&(_, w)| w).sum();
    let mut inj = Matrix::zeros(hi_total, lo_total);
    let mut proj = Matrix::zeros(lo_total, hi_total);
    let mut row = 0;
    for &(c, w) in &hi_blocks {
        // Column offset of block c at the lower level, if visible there.
        let mut col = 0;
        let mut found = None;
        for &(c2, w2) in &lo_blocks {
            if c2 == c {
                found = Some(col);
                break;
            }
            col += w2;
        }
        if let Some(col) = found {
            let m = shared(c, w);
            assert_eq!(
                (m.rows(), m.cols()),
                (w, w),
                "block arrow has the block's size"
            );
            let m_inv = m.inverse().expect("shared block arrows are invertible");
            for i in 0..w {
                for j in 0..w {
                    inj.set(row + i, col + j, m.get(i, j).clone());
                    proj.set(col + j, row + i, m_inv.get(j, i).clone());
                }
            }
        }
        row += w;
    }
    (inj, proj)
}

/// The direct sum of one-component functors with identity transitions:
/// pure block bookkeeping, always decomposable.
pub fn sum_of_constant_components(poset: &FinitePoset, widths: &[usize]) -> SplitFunctor {
    sum_of_components(poset, widths, |_, _, _| None).expect("identity blocks always assemble")
}

/// The direct sum of one-component functors with caller-chosen invertible
/// transitions.
///
/// `transition(c, lower, upper)` is consulted for every block `c` shared by
/// a strictly comparable pair (`c ≤ lower ≤ upper`); returning `None` means
/// the identity. Transitions must be invertible and compose functorially —
/// both are checked, the former per block, the latter by full validation of
/// the assembled functor.
pub fn sum_of_components(
    poset: &FinitePoset,
    widths: &[usize],
    mut transition: impl FnMut(usize, usize, usize) -> Option<Matrix>,
) -> Result<SplitFunctor, SplitError> {
    assert_eq!(widths.len(), poset.len(), "one width per element");
    let dims: Vec<usize> = (0..poset.len())
        .map(|a| total_below(poset, widths, a))
        .collect();
    // Sample each transition exactly once (the closure may be stateful),
    // checking invertibility so the failure names the block rather than
    // surfacing as a panic inside assembly.
    let mut chosen = std::collections::BTreeMap::new();
    for (lo, hi) in poset.strict_pairs() {
        for c in 0..poset.len() {
            if !poset.leq_idx(c, lo) {
                continue;
            }
            let m = transition(c, lo, hi).unwrap_or_else(|| Matrix::identity(widths[c]));
            if m.rows() != widths[c] || m.cols() != widths[c] || m.inverse().is_none() {
                return Err(SplitError::BlockNotInvertible {
                    component: poset.element(c).to_string(),
                    lower: poset.element(lo).to_string(),
                    upper: poset.element(hi).to_string(),
                });
            }
            chosen.insert((c, lo, hi), m);
        }
    }
    let mut arrows = std::collections::BTreeMap::new();
    for (lo, hi) in poset.strict_pairs() {
        arrows.insert(
            (lo, hi),
            block_transition(poset, widths, lo, hi, |c, _| chosen[&(c, lo, hi)].clone()),
        );
    }
    SplitFunctor::from_arrows(
        poset.clone(),
        dims,
        |lo, hi| arrows[&(lo, hi)].0.clone(),
        |lo, hi| arrows[&(lo, hi)].1.clone(),
    )
}
