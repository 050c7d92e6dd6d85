//! Decomposing a split functor into a direct sum of one-component blocks.
//!
//! The decomposition runs the projector-family test at every poset element.
//! When all of them certify, Möbius inversion singles out, at each element
//! `a`, the subspace of `G(a)` that is genuinely new at `a` — the image of
//! the interaction term of `a` in its own family. Its dimension `d_a` is
//! the size of component `a`. A change of basis `ψ(α)` on every `G(α)` is
//! then assembled by transporting each interaction image down to its home
//! element with the retractions; in these coordinates every injection of
//! the original functor becomes a plain block inclusion and every
//! retraction a plain block projection.

use std::collections::BTreeMap;

use crate::linalg::{Matrix, Subspace};
use crate::poset::FinitePoset;

use super::components::{
    blocks_below, inclusion_matrix, projection_matrix, sum_of_constant_components,
};
use super::{SplitFunctor, SplitWitness};

/// A certified decomposition of a split functor into one-component blocks,
/// with the change of basis exhibiting the isomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitDecomposition {
    poset: FinitePoset,
    dims: Vec<usize>,
    component_dims: Vec<usize>,
    component_bases: Vec<Subspace>,
    /// `(alpha, a) → im s^α_a`: the copy of component `a` inside `G(alpha)`.
    interaction_spaces: BTreeMap<(usize, usize), Subspace>,
    /// `(a, from, to) → ` the original injection restricted between the two
    /// copies of component `a`, in their canonical bases. Invertible, with
    /// inverse the restricted retraction.
    component_arrows: BTreeMap<(usize, usize, usize), Matrix>,
    psi: Vec<Matrix>,
    psi_inv: Vec<Matrix>,
}

impl SplitFunctor {
    /// Decomposes the functor into a direct sum of one-component blocks, or
    /// reports the element and projector pair where the intersection
    /// identity first fails.
    pub fn decompose(&self) -> Result<SplitDecomposition, SplitWitness> {
        let poset = self.poset().clone();
        let n = poset.len();

        // Certify the projector family at every element, keeping each
        // family's interaction data.
        let mut per_alpha = Vec::with_capacity(n);
        for alpha in 0..n {
            let fam = self.projector_family_at_idx(alpha);
            match fam.decompose() {
                Ok(d) => per_alpha.push(d),
                Err(w) => {
                    return Err(SplitWitness {
                        alpha: poset.element(alpha).to_string(),
                        left: w.left,
                        right: w.right,
                    })
                }
            }
        }

        // The copy of component a living at each level α ≥ a.
        let mut interaction_spaces = BTreeMap::new();
        for alpha in 0..n {
            for (local, &a) in poset.down_set_idx(alpha).iter().enumerate() {
                interaction_spaces.insert((alpha, a), per_alpha[alpha].subspace_idx(local).clone());
            }
        }

        // Component a = what is new at a, measured in G(a) itself.
        let mut component_dims = Vec::with_capacity(n);
        let mut component_bases = Vec::with_capacity(n);
        for a in 0..n {
            let basis = interaction_spaces[&(a, a)].clone();
            component_dims.push(basis.dim());
            component_bases.push(basis);
        }

        // The injections restricted between copies of one component are
        // invertible, with the restricted retractions as inverses.
        let mut component_arrows = BTreeMap::new();
        for (lo, hi) in poset.strict_pairs() {
            for a in poset.down_set_idx(lo) {
                let src = &interaction_spaces[&(lo, a)];
                let dst = &interaction_spaces[&(hi, a)];
                let fwd = dst
                    .corestrict_columns(&(self.g_idx(lo, hi) * &src.basis().transpose()))
                    .expect("injections carry interaction images into interaction images");
                let back = src
                    .corestrict_columns(&(self.f_idx(lo, hi) * &dst.basis().transpose()))
                    .expect("retractions carry interaction images back");
                assert!(
                    (&fwd * &back).is_identity() && (&back * &fwd).is_identity(),
                    "restricted injections between copies of component {} are invertible",
                    poset.element(a)
                );
                component_arrows.insert((a, lo, hi), fwd);
            }
        }

        // ψ(α): stack one coordinate block per b ≤ α. The b-block of a
        // vector v is the coordinate vector, in the basis of component b,
        // of the b-interaction part of v pushed down to G(b).
        let mut psi = Vec::with_capacity(n);
        let mut psi_inv = Vec::with_capacity(n);
        for alpha in 0..n {
            let down = poset.down_set_idx(alpha);
            let mut blocks = Vec::with_capacity(down.len());
            for (local_b, &b) in down.iter().enumerate() {
                let term = per_alpha[alpha].terms().term_idx(local_b);
                let pushed = self.f_idx(b, alpha) * term;
                let block = component_bases[b]
                    .corestrict_columns(&pushed)
                    .expect("interaction images transport down to their home element");
                blocks.push(block);
            }
            let m = Matrix::vstack(&blocks);
            assert_eq!(
                (m.rows(), m.cols()),
                (self.dim_idx(alpha), self.dim_idx(alpha)),
                "component dimensions fill the space at {}",
                poset.element(alpha)
            );
            let inv = m
                .inverse()
                .expect("certified interaction terms give an invertible change of basis");
            psi.push(m);
            psi_inv.push(inv);
        }

        let out = SplitDecomposition {
            poset,
            dims: self.dims().to_vec(),
            component_dims,
            component_bases,
            interaction_spaces,
            component_arrows,
            psi,
            psi_inv,
        };
        assert!(
            out.is_isomorphism_of(self),
            "change of basis intertwines the functor with its block form"
        );
        Ok(out)
    }
}

impl SplitDecomposition {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    /// Dimensions of the original spaces, per element.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Component sizes `(element id, d_a)` in element order.
    pub fn component_dims(&self) -> Vec<(String, usize)> {
        self.poset
            .elements()
            .iter()
            .zip(&self.component_dims)
            .map(|(e, &d)| (e.clone(), d))
            .collect()
    }

    pub fn component_dim_idx(&self, a: usize) -> usize {
        self.component_dims[a]
    }

    /// The subspace of `G(a)` that is new at `a` — component `a` in its
    /// home coordinates.
    pub fn component_basis_idx(&self, a: usize) -> &Subspace {
        &self.component_bases[a]
    }

    /// The copy of component `a` inside `G(alpha)`, for `a ≤ alpha`: the
    /// image of the interaction term of `a` in the family at `alpha`.
    pub fn interaction_space_idx(&self, alpha: usize, a: usize) -> &Subspace {
        &self.interaction_spaces[&(alpha, a)]
    }

    /// The invertible matrix of the original injection restricted between
    /// the copies of component `a` at two levels `a ≤ from < to`, in the
    /// canonical bases of the two copies.
    pub fn component_arrow_idx(&self, a: usize, from: usize, to: usize) -> &Matrix {
        &self.component_arrows[&(a, from, to)]
    }

    /// The change of basis `G(alpha) → ⊕_{b ≤ alpha} ℚ^{d_b}`.
    pub fn psi_idx(&self, alpha: usize) -> &Matrix {
        &self.psi[alpha]
    }

    pub fn psi_inv_idx(&self, alpha: usize) -> &Matrix {
        &self.psi_inv[alpha]
    }

    /// Labels and widths of the coordinate blocks of `ψ(alpha)`, in order.
    pub fn block_layout(&self, alpha: usize) -> Vec<(String, usize)> {
        blocks_below(&self.poset, &self.component_dims, alpha)
            .into_iter()
            .map(|(b, w)| (self.poset.element(b).to_string(), w))
            .collect()
    }

    /// The block-form functor this decomposition exhibits: the direct sum
    /// of the components with identity transitions.
    pub fn block_form(&self) -> SplitFunctor {
        sum_of_constant_components(&self.poset, &self.component_dims)
    }

    /// Verifies that the stored basis changes are invertible and carry
    /// `sf` exactly onto the block form: for every `b ≤ a`,
    /// `ψ(a)·g = incl·ψ(b)` and `proj·ψ(a) = ψ(b)·f`.
    pub fn is_isomorphism_of(&self, sf: &SplitFunctor) -> bool {
        if sf.poset() != &self.poset || sf.dims() != self.dims.as_slice() {
            return false;
        }
        for alpha in 0..self.poset.len() {
            if !(&self.psi[alpha] * &self.psi_inv[alpha]).is_identity() {
                return false;
            }
        }
        self.poset.strict_pairs().into_iter().all(|(lo, hi)| {
            let incl = inclusion_matrix(&self.poset, &self.component_dims, lo, hi);
            let proj = projection_matrix(&self.poset, &self.component_dims, lo, hi);
            &self.psi[hi] * sf.g_idx(lo, hi) == &incl * &self.psi[lo]
                && &proj * &self.psi[hi] == &self.psi[lo] * sf.f_idx(lo, hi)
        })
    }
}
