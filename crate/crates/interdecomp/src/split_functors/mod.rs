//! Poset-indexed vector-space diagrams with a chosen splitting, and their
//! decomposition into direct sums of one-component diagrams.
//!
//! A split functor over a finite poset assigns a space `G(a) = ℚ^{d_a}` to
//! each element and, to every comparable pair `b ≤ a`, an injection
//! `g_{b→a} : G(b) → G(a)` and a retraction `f_{a→b} : G(a) → G(b)` with
//! `f ∘ g = id`. Injections compose covariantly, retractions
//! contravariantly. At every element `α` the composites
//! `π^α_a = g_{a→α} ∘ f_{α→a}` (one per `a ≤ α`) form a projector family on
//! `G(α)`, and the whole diagram is decomposable exactly when each of these
//! families passes the pairwise intersection test. Decomposing produces a
//! basis change `ψ(α)` at every element under which all injections become
//! coordinate-block inclusions and all retractions become coordinate-block
//! projections — the diagram is revealed as a direct sum of blocks, one per
//! poset element, with block `a` appearing in `G(α)` for every `α ≥ a`.
//!
//! Submodules:
//!
//! * [`components`] — building diagrams that are direct sums of blocks by
//!   construction.
//! * [`decompose`] — the decomposition itself ([`SplitFunctor::decompose`]).
//! * [`couplings`] — the derived diagram of pairs `(α, a)` with its
//!   covariant/contravariant map system, limit comparisons, and the
//!   naturality of zeta/Möbius operators.

pub mod components;
pub mod couplings;
pub mod decompose;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::poset::{FinitePoset, PosetError};
use crate::projectors::ProjectorFamily;

pub use decompose::SplitDecomposition;

/// Which half of a split functor an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowKind {
    /// The covariant injections `g`.
    Injection,
    /// The contravariant retractions `f`.
    Retraction,
}

impl fmt::Display for ArrowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowKind::Injection => write!(f, "G"),
            ArrowKind::Retraction => write!(f, "F"),
        }
    }
}

/// Errors raised while building or validating a split functor.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("expected {expected} dimensions, got {got}")]
    DimCount { expected: usize, got: usize },
    #[error("missing {kind} arrow for covering pair {lower} ⋖ {upper}")]
    MissingArrow {
        kind: ArrowKind,
        lower: String,
        upper: String,
    },
    #[error("{kind} arrow given for {lower}, {upper}, which is not a covering pair")]
    UnexpectedArrow {
        kind: ArrowKind,
        lower: String,
        upper: String,
    },
    #[error(
        "{kind} arrow for {lower} ≤ {upper} is {got_rows}×{got_cols}, expected {want_rows}×{want_cols}"
    )]
    ArrowShape {
        kind: ArrowKind,
        lower: String,
        upper: String,
        want_rows: usize,
        want_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("retraction after injection is not the identity on {lower} ≤ {upper}")]
    NotSplit { lower: String, upper: String },
    #[error("{kind} arrows fail to compose on the chain {bottom} ≤ {middle} ≤ {top}")]
    NotFunctorial {
        kind: ArrowKind,
        bottom: String,
        middle: String,
        top: String,
    },
    #[error(
        "retracting from {top} to {middle} does not carry the injection from {bottom} onto its short form"
    )]
    MixedComposite {
        bottom: String,
        middle: String,
        top: String,
    },
    #[error("elements {lower} and {upper} are not comparable")]
    NotComparable { lower: String, upper: String },
    #[error("block arrow for component {component} on {lower} ≤ {upper} is not invertible")]
    BlockNotInvertible {
        component: String,
        lower: String,
        upper: String,
    },
}

/// Where the decomposability of a split functor first breaks: at element
/// `alpha`, the projectors of `left` and `right` fail the intersection
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness {
    pub alpha: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for SplitWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "intersection identity fails at {} for the pair ({}, {})",
            self.alpha, self.left, self.right
        )
    }
}

/// A poset-indexed diagram of spaces with compatible injections and
/// retractions (`f ∘ g = id` on every comparable pair).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitFunctor {
    poset: FinitePoset,
    dims: Vec<usize>,
    /// Injection for each comparable pair, keyed `(lower, upper)`; the
    /// matrix is `dims[upper] × dims[lower]`. Diagonal entries are
    /// identities.
    g: BTreeMap<(usize, usize), Matrix>,
    /// Retraction for each comparable pair, keyed `(lower, upper)`; the
    /// matrix is `dims[lower] × dims[upper]`.
    f: BTreeMap<(usize, usize), Matrix>,
}

impl SplitFunctor {
    /// Builds a split functor from closures giving the arrows of every
    /// strictly comparable pair `(lower, upper)`, then validates shapes,
    /// composition, and the splitting identity.
    pub fn from_arrows(
        poset: FinitePoset,
        dims: Vec<usize>,
        mut g: impl FnMut(usize, usize) -> Matrix,
        mut f: impl FnMut(usize, usize) -> Matrix,
    ) -> Result<Self, SplitError> {
        let mut g_map = BTreeMap::new();
        let mut f_map = BTreeMap::new();
        for (lo, hi) in poset.strict_pairs() {
            g_map.insert((lo, hi), g(lo, hi));
            f_map.insert((lo, hi), f(lo, hi));
        }
        SplitFunctor::assemble(poset, dims, g_map, f_map)
    }

    /// Builds a split functor from arrows on the covering pairs alone,
    /// keyed `(lower, upper)`. Longer arrows are composed along covering
    /// chains; validation then confirms the composites are
    /// path-independent. Exactly the covering pairs must be present.
    pub fn from_generators(
        poset: FinitePoset,
        dims: Vec<usize>,
        g_cov: BTreeMap<(usize, usize), Matrix>,
        f_cov: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self, SplitError> {
        let covering = poset.covering_pairs();
        for (kind, map) in [
            (ArrowKind::Injection, &g_cov),
            (ArrowKind::Retraction, &f_cov),
        ] {
            for &(lo, hi) in &covering {
                if !map.contains_key(&(lo, hi)) {
                    return Err(SplitError::MissingArrow {
                        kind,
                        lower: poset.element(lo).to_string(),
                        upper: poset.element(hi).to_string(),
                    });
                }
            }
            for &(lo, hi) in map.keys() {
                if !covering.contains(&(lo, hi)) {
                    return Err(SplitError::UnexpectedArrow {
                        kind,
                        lower: poset
                            .elements()
                            .get(lo)
                            .cloned()
                            .unwrap_or_else(|| format!("#{lo}")),
                        upper: poset
                            .elements()
                            .get(hi)
                            .cloned()
                            .unwrap_or_else(|| format!("#{hi}")),
                    });
                }
            }
        }
        // Shape-check the generators up front so composition is well-posed.
        if dims.len() != poset.len() {
            return Err(SplitError::DimCount {
                expected: poset.len(),
                got: dims.len(),
            });
        }
        for (kind, map) in [
            (ArrowKind::Injection, &g_cov),
            (ArrowKind::Retraction, &f_cov),
        ] {
            for (&(lo, hi), m) in map.iter() {
                let (want_rows, want_cols) = match kind {
                    ArrowKind::Injection => (dims[hi], dims[lo]),
                    ArrowKind::Retraction => (dims[lo], dims[hi]),
                };
                if m.rows() != want_rows || m.cols() != want_cols {
                    return Err(SplitError::ArrowShape {
                        kind,
                        lower: poset.element(lo).to_string(),
                        upper: poset.element(hi).to_string(),
                        want_rows,
                        want_cols,
                        got_rows: m.rows(),
                        got_cols: m.cols(),
                    });
                }
            }
        }

        // Compose arrows for the remaining pairs along one covering chain
        // each; full validation afterwards rejects path-dependent inputs.
        let mut g_map = g_cov;
        let mut f_map = f_cov;
        let mut pairs = poset.strict_pairs();
        // Short intervals first so every composite's first step is ready.
        pairs.sort_by_key(|&(lo, hi)| {
            poset
                .down_set_idx(hi)
                .iter()
                .filter(|&&m| poset.leq_idx(lo, m))
                .count()
        });
        for (lo, hi) in pairs {
            if g_map.contains_key(&(lo, hi)) {
                continue;
            }
            let step = (0..poset.len())
                .find(|&m| {
                    m != lo && m != hi && poset.leq_idx(lo, m) && covering.contains(&(m, hi))
                })
                .expect("a non-covering interval contains an intermediate element");
            let g_hi = &g_map[&(step, hi)] * &g_map[&(lo, step)];
            let f_lo = &f_map[&(lo, step)] * &f_map[&(step, hi)];
            g_map.insert((lo, hi), g_hi);
            f_map.insert((lo, hi), f_lo);
        }
        SplitFunctor::assemble(poset, dims, g_map, f_map)
    }

    /// Installs identity arrows on the diagonal and validates everything.
    fn assemble(
        poset: FinitePoset,
        dims: Vec<usize>,
        mut g: BTreeMap<(usize, usize), Matrix>,
        mut f: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self, SplitError> {
        if dims.len() != poset.len() {
            return Err(SplitError::DimCount {
                expected: poset.len(),
                got: dims.len(),
            });
        }
        for a in 0..poset.len() {
            g.insert((a, a), Matrix::identity(dims[a]));
            f.insert((a, a), Matrix::identity(dims[a]));
        }
        let sf = SplitFunctor { poset, dims, g, f };
        sf.validate()?;
        Ok(sf)
    }

    fn validate(&self) -> Result<(), SplitError> {
        let poset = &self.poset;
        for (lo, hi) in poset.strict_pairs() {
            for (kind, m) in [
                (ArrowKind::Injection, &self.g[&(lo, hi)]),
                (ArrowKind::Retraction, &self.f[&(lo, hi)]),
            ] {
                let (want_rows, want_cols) = match kind {
                    ArrowKind::Injection => (self.dims[hi], self.dims[lo]),
                    ArrowKind::Retraction => (self.dims[lo], self.dims[hi]),
                };
                if m.rows() != want_rows || m.cols() != want_cols {
                    return Err(SplitError::ArrowShape {
                        kind,
                        lower: poset.element(lo).to_string(),
                        upper: poset.element(hi).to_string(),
                        want_rows,
                        want_cols,
                        got_rows: m.rows(),
                        got_cols: m.cols(),
                    });
                }
            }
            if !(&self.f[&(lo, hi)] * &self.g[&(lo, hi)]).is_identity() {
                return Err(SplitError::NotSplit {
                    lower: poset.element(lo).to_string(),
                    upper: poset.element(hi).to_string(),
                });
            }
        }
        for (lo, hi) in poset.strict_pairs() {
            for mid in 0..poset.len() {
                if mid == lo || mid == hi || !poset.leq_idx(lo, mid) || !poset.leq_idx(mid, hi) {
                    continue;
                }
                if self.g[&(lo, hi)] != &self.g[&(mid, hi)] * &self.g[&(lo, mid)] {
                    return Err(SplitError::NotFunctorial {
                        kind: ArrowKind::Injection,
                        bottom: poset.element(lo).to_string(),
                        middle: poset.element(mid).to_string(),
                        top: poset.element(hi).to_string(),
                    });
                }
                if self.f[&(lo, hi)] != &self.f[&(lo, mid)] * &self.f[&(mid, hi)] {
                    return Err(SplitError::NotFunctorial {
                        kind: ArrowKind::Retraction,
                        bottom: poset.element(lo).to_string(),
                        middle: poset.element(mid).to_string(),
                        top: poset.element(hi).to_string(),
                    });
                }
                // Mixed composite: retracting a long injection lands on the
                // short injection. Implied by the axioms above, but part of
                // the validated contract.
                if &self.f[&(mid, hi)] * &self.g[&(lo, hi)] != self.g[&(lo, mid)] {
                    return Err(SplitError::MixedComposite {
                        bottom: poset.element(lo).to_string(),
                        middle: poset.element(mid).to_string(),
                        top: poset.element(hi).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    /// Space dimensions per poset element.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_idx(&self, a: usize) -> usize {
        self.dims[a]
    }

    /// The injection `G(lower) → G(upper)`; panics unless `lower ≤ upper`.
    pub fn g_idx(&self, lower: usize, upper: usize) -> &Matrix {
        self.g
            .get(&(lower, upper))
            .unwrap_or_else(|| panic!("no injection: {lower} is not below {upper}"))
    }

    /// The retraction `G(upper) → G(lower)`; panics unless `lower ≤ upper`.
    pub fn f_idx(&self, lower: usize, upper: usize) -> &Matrix {
        self.f
            .get(&(lower, upper))
            .unwrap_or_else(|| panic!("no retraction: {lower} is not below {upper}"))
    }

    /// The injection by element ids.
    pub fn g(&self, lower: &str, upper: &str) -> Result<&Matrix, SplitError> {
        let (lo, hi) = (self.poset.index_of(lower)?, self.poset.index_of(upper)?);
        self.g
            .get(&(lo, hi))
            .ok_or_else(|| SplitError::NotComparable {
                lower: lower.to_string(),
                upper: upper.to_string(),
            })
    }

    /// The retraction by element ids.
    pub fn f(&self, lower: &str, upper: &str) -> Result<&Matrix, SplitError> {
        let (lo, hi) = (self.poset.index_of(lower)?, self.poset.index_of(upper)?);
        self.f
            .get(&(lo, hi))
            .ok_or_else(|| SplitError::NotComparable {
                lower: lower.to_string(),
                upper: upper.to_string(),
            })
    }

    /// The projector family induced on `G(alpha)`: one projector
    /// `g_{a→α} ∘ f_{α→a}` per element `a ≤ alpha`, indexed by the down-set
    /// subposet of `alpha`.
    pub fn projector_family_at_idx(&self, alpha: usize) -> ProjectorFamily {
        let down = self.poset.down_set_idx(alpha);
        let sub = self.poset.down_set_poset(alpha);
        let pis: Vec<Matrix> = down
            .iter()
            .map(|&a| self.g_idx(a, alpha) * self.f_idx(a, alpha))
            .collect();
        ProjectorFamily::new(sub, self.dims[alpha], pis)
            .expect("split composites are idempotent projectors")
    }

    /// The projector family at an element id.
    pub fn projector_family_at(&self, alpha: &str) -> Result<ProjectorFamily, SplitError> {
        Ok(self.projector_family_at_idx(self.poset.index_of(alpha)?))
    }

    /// Scans elements in id order and reports the first intersection
    /// failure, if any.
    pub fn first_obstruction(&self) -> Option<SplitWitness> {
        for alpha in 0..self.poset.len() {
            let fam = self.projector_family_at_idx(alpha);
            if let Some((i, j)) = fam.intersection_witness_idx() {
                return Some(SplitWitness {
                    alpha: self.poset.element(alpha).to_string(),
                    left: fam.poset().element(i).to_string(),
                    right: fam.poset().element(j).to_string(),
                });
            }
        }
        None
    }

    /// True when the intersection identity holds at every element.
    pub fn is_decomposable(&self) -> bool {
        self.first_obstruction().is_none()
    }

    /// One witness per failing element, in id order.
    pub fn obstructions(&self) -> Vec<SplitWitness> {
        (0..self.poset.len())
            .filter_map(|alpha| {
                let fam = self.projector_family_at_idx(alpha);
                fam.intersection_witness_idx().map(|(i, j)| SplitWitness {
                    alpha: self.poset.element(alpha).to_string(),
                    left: fam.poset().element(i).to_string(),
                    right: fam.poset().element(j).to_string(),
                })
            })
            .collect()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::{rat_int, Rat};
    use num_traits::One;

    pub(crate) fn chain_functor() -> SplitFunctor {
        let poset = FinitePoset::chain(2);
        SplitFunctor::from_arrows(
            poset,
            vec![1, 2],
            |_, _| Matrix::from_rows(vec![vec![rat_int(1)], vec![rat_int(0)]]),
            |_, _| Matrix::from_rows(vec![vec![rat_int(1), rat_int(0)]]),
        )
        .unwrap()
    }

    /// Two incomparable elements under a common top, realized as the
    /// direct sum of one one-dimensional block per lower element (nothing
    /// new at the top).
    pub(crate) fn vee_functor() -> SplitFunctor {
        let poset = FinitePoset::from_relations(
            vec!["l".into(), "r".into(), "t".into()],
            &[("l", "t"), ("r", "t")],
        )
        .unwrap();
        components::sum_of_constant_components(&poset, &[1, 1, 0])
    }

    #[test]
    fn chain_projectors_and_obstructions() {
        let sf = chain_functor();
        let fam = sf.projector_family_at_idx(1);
        assert_eq!(
            fam.projector_idx(0),
            &Matrix::from_rows(vec![
                vec![rat_int(1), rat_int(0)],
                vec![rat_int(0), rat_int(0)]
            ])
        );
        assert!(fam.projector_idx(1).is_identity());
        assert!(sf.first_obstruction().is_none());
        assert!(sf.is_decomposable());
    }

    #[test]
    fn validation_rejects_bad_arrows() {
        let poset = FinitePoset::chain(2);
        // Wrong shape.
        let err = SplitFunctor::from_arrows(
            poset.clone(),
            vec![1, 2],
            |_, _| Matrix::identity(2),
            |_, _| Matrix::from_rows(vec![vec![rat_int(1), rat_int(0)]]),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            SplitError::ArrowShape {
                kind: ArrowKind::Injection,
                ..
            }
        ));

        // Retraction that is not a left inverse.
        let err = SplitFunctor::from_arrows(
            poset,
            vec![1, 2],
            |_, _| Matrix::from_rows(vec![vec![rat_int(1)], vec![rat_int(0)]]),
            |_, _| Matrix::from_rows(vec![vec![rat_int(0), rat_int(1)]]),
        )
        .unwrap_err();
        assert_eq!(
            err,
            SplitError::NotSplit {
                lower: "0".into(),
                upper: "1".into()
            }
        );

        // Composite mismatch along a 3-chain: the long arrows are still a
        // splitting pair of each other, but disagree with the composed
        // covering steps.
        let poset = FinitePoset::chain(3);
        let flip = |lo: usize, hi: usize| {
            if (lo, hi) == (0, 2) {
                Matrix::from_rows(vec![vec![-Rat::one()]])
            } else {
                Matrix::identity(1)
            }
        };
        let err = SplitFunctor::from_arrows(poset, vec![1, 1, 1], flip, flip).unwrap_err();
        assert_eq!(
            err,
            SplitError::NotFunctorial {
                kind: ArrowKind::Injection,
                bottom: "0".into(),
                middle: "1".into(),
                top: "2".into()
            }
        );
    }

    #[test]
    fn generators_compose_and_are_strict() {
        let poset = FinitePoset::chain(3);
        let two = Matrix::from_rows(vec![vec![rat_int(2)]]);
        let half = Matrix::from_rows(vec![vec![Rat::new(1.into(), 2.into())]]);
        let mut g = BTreeMap::new();
        let mut f = BTreeMap::new();
        g.insert((0, 1), two.clone());
        g.insert((1, 2), two.clone());
        f.insert((0, 1), half.clone());
        f.insert((1, 2), half.clone());
        let sf = SplitFunctor::from_generators(poset.clone(), vec![1, 1, 1], g.clone(), f.clone())
            .unwrap();
        assert_eq!(
            sf.g("0", "2").unwrap(),
            &Matrix::from_rows(vec![vec![rat_int(4)]])
        );
        assert_eq!(
            sf.f("0", "2").unwrap(),
            &Matrix::from_rows(vec![vec![Rat::new(1.into(), 4.into())]])
        );

        // Missing covering arrow.
        let mut g_missing = g.clone();
        g_missing.remove(&(1, 2));
        let err = SplitFunctor::from_generators(poset.clone(), vec![1, 1, 1], g_missing, f.clone())
            .unwrap_err();
        assert_eq!(
            err,
            SplitError::MissingArrow {
                kind: ArrowKind::Injection,
                lower: "1".into(),
                upper: "2".into()
            }
        );

        // Arrow on a non-covering pair.
        let mut g_extra = g;
        g_extra.insert((0, 2), Matrix::identity(1));
        let err = SplitFunctor::from_generators(poset, vec![1, 1, 1], g_extra, f).unwrap_err();
        assert_eq!(
            err,
            SplitError::UnexpectedArrow {
                kind: ArrowKind::Injection,
                lower: "0".into(),
                upper: "2".into()
            }
        );
    }

    #[test]
    fn comparability_errors_by_id() {
        let sf = vee_functor();
        let err = sf.g("l", "r").unwrap_err();
        assert_eq!(
            err,
            SplitError::NotComparable {
                lower: "l".into(),
                upper: "r".into()
            }
        );
        assert!(sf.g("nope", "t").is_err());
    }

    #[test]
    fn block_sum_is_decomposable_everywhere() {
        let sf = vee_functor();
        assert_eq!(sf.dims(), &[1, 1, 2]);
        assert!(sf.is_decomposable());
        for alpha in 0..3 {
            let fam = sf.projector_family_at_idx(alpha);
            assert!(fam.is_functorial());
            assert!(fam.is_presheafable());
        }
    }

    /// Tampering with one retraction breaks decomposability while leaving
    /// the functor axioms intact: the perturbation is supported on the
    /// block of an element incomparable to the target, so every composite
    /// identity still holds, but at the top the pair of incomparable
    /// projectors stops commuting past the intersection identity.
    #[test]
    fn retraction_perturbation_defeats_decomposability() {
        let sf = vee_functor();
        let poset = sf.poset().clone();
        let (l, r, t) = (0usize, 1usize, 2usize);
        // G(t) has blocks for l, r in element order; tamper with f_{t→l}
        // in the r-block column.
        let mut delta = Matrix::zeros(1, 2);
        delta.set(0, 1, rat_int(1));
        let perturbed = SplitFunctor::from_arrows(
            poset,
            sf.dims().to_vec(),
            |lo, hi| sf.g_idx(lo, hi).clone(),
            |lo, hi| {
                if (lo, hi) == (l, t) {
                    sf.f_idx(lo, hi) + &delta
                } else {
                    sf.f_idx(lo, hi).clone()
                }
            },
        )
        .expect("perturbed arrows still satisfy the functor axioms");
        assert!(!perturbed.is_decomposable());
        let w = perturbed.first_obstruction().unwrap();
        assert_eq!(w.alpha, "t");
        assert_eq!((w.left.as_str(), w.right.as_str()), ("l", "r"));
        let _ = r;
    }
}
