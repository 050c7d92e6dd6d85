//! The derived diagram of pairs attached to a split functor.
//!
//! For a split functor over a poset `A`, take the poset `A₁` of pairs
//! `(α, a)` with `a ≤ α`, ordered coordinatewise. Each pair carries the
//! subspace `R(α, a) = im(g_{a→α}) ⊆ G(α)` — the copy of `G(a)` sitting
//! inside `G(α)`. These spaces support two interlocking map systems:
//!
//! * covariant maps `L` along growing pairs, induced by the injections;
//! * contravariant maps `R` along shrinking pairs, induced by retracting
//!   to the small element and re-injecting.
//!
//! [`Coupling::verify`] checks that both systems compose, that moving the
//! big coordinate alone is invertible, that the two systems commute on
//! squares, and that on boundary pairs they restrict to the original
//! arrows. [`Coupling::is_limit_at`] checks that each `R(α, a)` is the
//! limit of the system below it. Functions [`zeta_mu_are_natural`] check
//! that the zeta and Möbius operators, acting blockwise on stacks of
//! copies of `G(α)`, commute with transport along the pair poset.

use std::collections::BTreeMap;

use crate::linalg::{rat_int, Matrix, Subspace};
use crate::poset::{FinitePoset, PosetError};

use super::SplitFunctor;

/// The pair poset of a split functor with its subspaces and map systems.
#[derive(Clone, Debug)]
pub struct Coupling {
    pairs: FinitePoset,
    /// Pair index → `(alpha, a)` as base-poset indices.
    pair_elems: Vec<(usize, usize)>,
    /// `R(α, a)` as a subspace of `G(α)`.
    spaces: Vec<Subspace>,
    /// Covariant maps: `(p, q)` with `p ≤ q` maps `R(p) → R(q)`, in the
    /// canonical bases of the two subspaces.
    l: BTreeMap<(usize, usize), Matrix>,
    /// Contravariant maps: `(p, q)` with `p ≤ q` maps `R(q) → R(p)`.
    r: BTreeMap<(usize, usize), Matrix>,
}

impl Coupling {
    /// Builds the full pair diagram of a split functor.
    pub fn build(sf: &SplitFunctor) -> Result<Self, PosetError> {
        let base = sf.poset();
        let mut pair_elems = Vec::new();
        for alpha in 0..base.len() {
            for a in base.down_set_idx(alpha) {
                pair_elems.push((alpha, a));
            }
        }
        let ids: Vec<String> = pair_elems
            .iter()
            .map(|&(alpha, a)| format!("({},{})", base.element(alpha), base.element(a)))
            .collect();
        let pairs = FinitePoset::from_leq_table(ids, |i, j| {
            let (ai, xi) = pair_elems[i];
            let (aj, xj) = pair_elems[j];
            base.leq_idx(ai, aj) && base.leq_idx(xi, xj)
        })?;
        let spaces: Vec<Subspace> = pair_elems
            .iter()
            .map(|&(alpha, a)| Subspace::image(sf.g_idx(a, alpha)))
            .collect();

        let mut l = BTreeMap::new();
        let mut r = BTreeMap::new();
        for p in 0..pairs.len() {
            for q in 0..pairs.len() {
                if !pairs.leq_idx(p, q) {
                    continue;
                }
                let (alpha, a) = pair_elems[p];
                let (beta, b) = pair_elems[q];
                // L: restrict the injection G(α) → G(β).
                let up = sf.g_idx(alpha, beta) * &spaces[p].basis().transpose();
                l.insert(
                    (p, q),
                    spaces[q]
                        .corestrict_columns(&up)
                        .expect("injections carry pair spaces into pair spaces"),
                );
                // R: strip to G(b), retract to G(a), re-inject into G(α).
                let raw = &(sf.g_idx(a, alpha) * sf.f_idx(a, b)) * sf.f_idx(b, beta);
                let down = &raw * &spaces[q].basis().transpose();
                r.insert(
                    (p, q),
                    spaces[p]
                        .corestrict_columns(&down)
                        .expect("retractions carry pair spaces into pair spaces"),
                );
            }
        }
        Ok(Coupling {
            pairs,
            pair_elems,
            spaces,
            l,
            r,
        })
    }

    /// The poset of pairs `(α, a)`, ordered coordinatewise, with ids
    /// `"(α,a)"`.
    pub fn pairs_poset(&self) -> &FinitePoset {
        &self.pairs
    }

    /// Base-poset indices `(alpha, a)` of a pair.
    pub fn pair_elem(&self, p: usize) -> (usize, usize) {
        self.pair_elems[p]
    }

    /// Index of the pair `(alpha, a)`, if `a ≤ alpha`.
    pub fn pair_index(&self, alpha: usize, a: usize) -> Option<usize> {
        self.pair_elems.iter().position(|&e| e == (alpha, a))
    }

    pub fn space(&self, p: usize) -> &Subspace {
        &self.spaces[p]
    }

    /// The covariant map `R(p) → R(q)` for `p ≤ q`.
    pub fn l_map(&self, p: usize, q: usize) -> &Matrix {
        &self.l[&(p, q)]
    }

    /// The contravariant map `R(q) → R(p)` for `p ≤ q`.
    pub fn r_map(&self, p: usize, q: usize) -> &Matrix {
        &self.r[&(p, q)]
    }

    /// Checks the whole map system against the originating functor:
    /// composition of `L` and of `R`, invertibility when only the big
    /// coordinate moves, commutation of `L` past `R` on squares, and the
    /// boundary identities (on pairs `(a,a) ≤ (α,α)` the maps are exactly
    /// the original injection and retraction).
    pub fn verify(&self, sf: &SplitFunctor) -> bool {
        let n = self.pairs.len();
        // Composition.
        for p in 0..n {
            for q in p..n {
                if !self.pairs.leq_idx(p, q) {
                    continue;
                }
                for s in q..n {
                    if !self.pairs.leq_idx(q, s) {
                        continue;
                    }
                    if &(&self.l[&(q, s)] * &self.l[&(p, q)]) != &self.l[&(p, s)] {
                        return false;
                    }
                    if &(&self.r[&(p, q)] * &self.r[&(q, s)]) != &self.r[&(p, s)] {
                        return false;
                    }
                }
            }
        }
        // Moving only the big coordinate is invertible, with the two
        // systems inverse to each other.
        for p in 0..n {
            for q in 0..n {
                if !self.pairs.leq_idx(p, q) || self.pair_elems[p].1 != self.pair_elems[q].1 {
                    continue;
                }
                if !(&self.l[&(p, q)] * &self.r[&(p, q)]).is_identity() {
                    return false;
                }
                if !(&self.r[&(p, q)] * &self.l[&(p, q)]).is_identity() {
                    return false;
                }
            }
        }
        // Squares: lowering the small coordinate commutes with raising the
        // big one.
        let base = sf.poset();
        for (p01, &(alpha, a)) in self.pair_elems.iter().enumerate() {
            for b in base.down_set_idx(a) {
                for beta in base.up_set_idx(alpha) {
                    let p00 = self.pair_index(alpha, b).expect("pair exists");
                    let p10 = self.pair_index(beta, b).expect("pair exists");
                    let p11 = self.pair_index(beta, a).expect("pair exists");
                    let via_low = &self.l[&(p00, p10)] * &self.r[&(p00, p01)];
                    let via_high = &self.r[&(p10, p11)] * &self.l[&(p01, p11)];
                    if via_low != via_high {
                        return false;
                    }
                }
            }
        }
        // Boundary identities.
        for alpha in 0..base.len() {
            for a in base.down_set_idx(alpha) {
                let bottom = self.pair_index(a, a).expect("diagonal pair exists");
                let top = self.pair_index(alpha, alpha).expect("diagonal pair exists");
                if &self.l[&(bottom, top)] != sf.g_idx(a, alpha)
                    || &self.r[&(bottom, top)] != sf.f_idx(a, alpha)
                {
                    return false;
                }
            }
        }
        true
    }

    /// Checks that `R(q)` is the limit of the contravariant system strictly
    /// below `q`: the stacked map `φ = (R_{q→p})_p` is injective and its
    /// image is exactly the compatible tuples.
    pub fn is_limit_at(&self, q: usize) -> bool {
        let down = self.pairs.down_set_idx(q);
        let blocks: Vec<Matrix> = down.iter().map(|&p| self.r[&(p, q)].clone()).collect();
        let phi = Matrix::vstack(&blocks);
        if phi.rank() != self.spaces[q].dim() {
            return false;
        }
        // One constraint row block per strict pair p2 < p1 below q:
        // R_{p1→p2}·x_{p1} − x_{p2} = 0.
        let offsets: Vec<usize> = down
            .iter()
            .scan(0, |acc, &p| {
                let here = *acc;
                *acc += self.spaces[p].dim();
                Some(here)
            })
            .collect();
        let total: usize = down.iter().map(|&p| self.spaces[p].dim()).sum();
        let mut rows: Vec<Matrix> = Vec::new();
        for (i1, &p1) in down.iter().enumerate() {
            for (i2, &p2) in down.iter().enumerate() {
                if p1 == p2 || !self.pairs.leq_idx(p2, p1) {
                    continue;
                }
                let map = &self.r[&(p2, p1)];
                let mut row = Matrix::zeros(map.rows(), total);
                for rr in 0..map.rows() {
                    for cc in 0..map.cols() {
                        row.set(rr, offsets[i1] + cc, map.get(rr, cc).clone());
                    }
                    row.set(rr, offsets[i2] + rr, rat_int(-1));
                }
                rows.push(row);
            }
        }
        let constraints = if rows.is_empty() {
            Matrix::zeros(0, total)
        } else {
            Matrix::vstack(&rows)
        };
        Subspace::image(&phi) == Subspace::kernel(&constraints)
    }
}

/// The blockwise zeta operator at a pair `(alpha, a)`: it acts on a stack
/// of one copy of `G(alpha)` per element `c ≤ a` (in element order),
/// sending the family `(m_c)` to `(Σ_{d ≤ c} m_d)`.
pub fn zeta_block_at(sf: &SplitFunctor, alpha: usize, a: usize) -> Matrix {
    let down = sf.poset().down_set_idx(a);
    let w = sf.dim_idx(alpha);
    block_grid(&down, &down, w, w, |c, d| {
        sf.poset().leq_idx(d, c).then(|| Matrix::identity(w))
    })
}

/// The blockwise Möbius operator at a pair `(alpha, a)` — the inverse of
/// [`zeta_block_at`].
pub fn mobius_block_at(sf: &SplitFunctor, alpha: usize, a: usize) -> Matrix {
    let down = sf.poset().down_set_idx(a);
    let w = sf.dim_idx(alpha);
    let mob = sf.poset().mobius();
    block_grid(&down, &down, w, w, |c, d| {
        let mu = mob.mu_idx(c, d);
        (mu != 0).then(|| Matrix::identity(w).scale(&rat_int(mu)))
    })
}

/// Blockwise transport along `(beta, b) ≤ (alpha, a)`: drops the stack
/// entries with `c ≰ b` and applies the retraction `G(alpha) → G(beta)` to
/// the rest.
pub fn transport_block(
    sf: &SplitFunctor,
    (alpha, a): (usize, usize),
    (beta, b): (usize, usize),
) -> Matrix {
    assert!(
        sf.poset().leq_idx(beta, alpha) && sf.poset().leq_idx(b, a),
        "transport runs down the pair order"
    );
    let rows = sf.poset().down_set_idx(b);
    let cols = sf.poset().down_set_idx(a);
    let f = sf.f_idx(beta, alpha).clone();
    block_grid(&rows, &cols, sf.dim_idx(beta), sf.dim_idx(alpha), |d, c| {
        (c == d).then(|| f.clone())
    })
}

/// Zeta and Möbius commute with transport along every comparable pair of
/// pairs — the operators are natural in the pair poset.
pub fn zeta_mu_are_natural(sf: &SplitFunctor) -> bool {
    let base = sf.poset();
    let mut pairs = Vec::new();
    for alpha in 0..base.len() {
        for a in base.down_set_idx(alpha) {
            pairs.push((alpha, a));
        }
    }
    pairs.iter().all(|&(alpha, a)| {
        pairs
            .iter()
            .filter(|&&(beta, b)| base.leq_idx(beta, alpha) && base.leq_idx(b, a))
            .all(|&(beta, b)| {
                let t = transport_block(sf, (alpha, a), (beta, b));
                let zeta_hi = zeta_block_at(sf, alpha, a);
                let zeta_lo = zeta_block_at(sf, beta, b);
                let mu_hi = mobius_block_at(sf, alpha, a);
                let mu_lo = mobius_block_at(sf, beta, b);
                &zeta_lo * &t == &t * &zeta_hi && &mu_lo * &t == &t * &mu_hi
            })
    })
}

/// The comparison map `j` at a pair `(alpha, a)`: each vector of
/// `R(α, a)` is sent to the stack, over `c ≤ a`, of its `c`-interaction
/// part inside `G(α)` — the blockwise Möbius operator applied to the tuple
/// of its projections. Columns are indexed by the canonical basis of
/// `R(α, a)`.
pub fn j_matrix(sf: &SplitFunctor, alpha: usize, a: usize) -> Matrix {
    assert!(sf.poset().leq_idx(a, alpha), "j lives on pairs a ≤ alpha");
    let fam = sf.projector_family_at_idx(alpha);
    let terms = fam.interaction_terms();
    let down_alpha = sf.poset().down_set_idx(alpha);
    let basis_t = Subspace::image(sf.g_idx(a, alpha)).basis().transpose();
    let blocks: Vec<Matrix> = sf
        .poset()
        .down_set_idx(a)
        .into_iter()
        .map(|c| {
            let local = down_alpha
                .iter()
                .position(|&x| x == c)
                .expect("c ≤ a ≤ alpha");
            terms.term_idx(local) * &basis_t
        })
        .collect();
    Matrix::vstack(&blocks)
}

/// `j` is injective at every pair, with or without decomposability.
pub fn j_is_injective(sf: &SplitFunctor) -> bool {
    let base = sf.poset();
    (0..base.len()).all(|alpha| {
        base.down_set_idx(alpha).into_iter().all(|a| {
            let j = j_matrix(sf, alpha, a);
            j.rank() == j.cols()
        })
    })
}

/// The naturality square of `j` at `alpha`: for every `a ≤ alpha`,
/// including the pair space into `G(α)` and then taking `j` at the top
/// agrees with `j` at `(α, a)` followed by the block inclusion. Holds
/// exactly when the intersection identity holds at `alpha`.
pub fn j_squares_hold_at(sf: &SplitFunctor, alpha: usize) -> bool {
    let base = sf.poset();
    let down_alpha = base.down_set_idx(alpha);
    let w = sf.dim_idx(alpha);
    let j_top = j_matrix(sf, alpha, alpha);
    base.down_set_idx(alpha).into_iter().all(|a| {
        let inclusion_raw = Subspace::image(sf.g_idx(a, alpha)).basis().transpose();
        let lhs = &j_top * &inclusion_raw;
        let down_a = base.down_set_idx(a);
        let incl = block_grid(&down_alpha, &down_a, w, w, |c, d| {
            (c == d).then(|| Matrix::identity(w))
        });
        let rhs = &incl * &j_matrix(sf, alpha, a);
        lhs == rhs
    })
}

/// Assembles a block matrix from row/column block labels of uniform block
/// size; `None` blocks are zero.
fn block_grid(
    row_blocks: &[usize],
    col_blocks: &[usize],
    row_w: usize,
    col_w: usize,
    mut entry: impl FnMut(usize, usize) -> Option<Matrix>,
) -> Matrix {
    if row_blocks.is_empty() || col_blocks.is_empty() {
        return Matrix::zeros(row_blocks.len() * row_w, col_blocks.len() * col_w);
    }
    let grid: Vec<Vec<Matrix>> = row_blocks
        .iter()
        .map(|&rb| {
            col_blocks
                .iter()
                .map(|&cb| entry(rb, cb).unwrap_or_else(|| Matrix::zeros(row_w, col_w)))
                .collect()
        })
        .collect();
    Matrix::from_blocks(&grid)
}
