//! Probability measures on finite product spaces and their interaction
//! decomposition.
//!
//! A configuration space is a finite product `E = E_1 × … × E_k`. Functions
//! `E → ℚ` form the ambient space ℚ^|E|, and every subset `a` of factors
//! induces the conditional-expectation projector `E[· | ω_a]`. These
//! projectors, indexed by the powerset lattice, form a projector family in
//! the sense of [`crate::projectors`]; the family decomposes into
//! interaction subspaces exactly when the measure is a product measure.
//!
//! Conditional expectations are taken as operators that vanish off the
//! support of the measure: the row of a configuration with zero mass is
//! zero. On the support the entry at `(ω, ω′)` is the usual
//! `[ω′_a = ω_a]·P(ω′)/P_a(ω_a)`. This convention keeps the whole family
//! functorial, presheafable, and exactly aligned with the product-measure
//! criterion even for degenerate measures.

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{format_rat, Matrix, Rat, Subspace};
use crate::poset::{subset_id, FinitePoset};
use crate::projectors::{Decomposition, NotDecomposable, ProjectorFamily};

/// Errors raised while building configuration spaces or measures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("duplicate factor `{0}`")]
    DuplicateFactor(String),
    #[error("factor `{0}` has no values")]
    EmptyFactor(String),
    #[error("too many factors: {0} (limit 16)")]
    TooManyFactors(usize),
    #[error("unknown factor `{0}`")]
    UnknownFactor(String),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("negative weight {weight} at configuration {config}")]
    NegativeWeight { config: String, weight: String },
    #[error("weights sum to {total}, expected 1")]
    TotalMassNotOne { total: String },
    #[error("factor distribution {index} has {got} weights, factor has {expected} values")]
    FactorSize {
        index: usize,
        expected: usize,
        got: usize,
    },
}

/// A finite product `E_1 × … × E_k` with named factors.
///
/// Configurations are enumerated in mixed-radix order with the **first**
/// factor varying slowest, so for sizes `[2, 3]` the order is
/// `(0,0), (0,1), (0,2), (1,0), (1,1), (1,2)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConfigurationSpace {
    names: Vec<String>,
    sizes: Vec<usize>,
}

impl ConfigurationSpace {
    /// Builds a space from `(factor name, cardinality)` pairs in declaration
    /// order.
    pub fn new(factors: Vec<(String, usize)>) -> Result<Self, MeasureError> {
        if factors.len() > 16 {
            return Err(MeasureError::TooManyFactors(factors.len()));
        }
        let mut names = Vec::with_capacity(factors.len());
        let mut sizes = Vec::with_capacity(factors.len());
        for (name, size) in factors {
            if names.contains(&name) {
                return Err(MeasureError::DuplicateFactor(name));
            }
            if size == 0 {
                return Err(MeasureError::EmptyFactor(name));
            }
            names.push(name);
            sizes.push(size);
        }
        Ok(ConfigurationSpace { names, sizes })
    }

    pub fn factor_names(&self) -> &[String] {
        &self.names
    }

    pub fn factor_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn num_factors(&self) -> usize {
        self.names.len()
    }

    /// Total number of configurations `|E|`.
    pub fn total(&self) -> usize {
        self.sizes.iter().product()
    }

    /// The configuration at an enumeration index.
    pub fn config(&self, mut index: usize) -> Vec<usize> {
        assert!(index < self.total(), "configuration index out of range");
        let mut out = vec![0; self.sizes.len()];
        for i in (0..self.sizes.len()).rev() {
            out[i] = index % self.sizes[i];
            index /= self.sizes[i];
        }
        out
    }

    /// The enumeration index of a configuration.
    pub fn index_of(&self, config: &[usize]) -> usize {
        assert_eq!(
            config.len(),
            self.sizes.len(),
            "configuration has wrong arity"
        );
        let mut idx = 0;
        for (c, s) in config.iter().zip(&self.sizes) {
            assert!(c < s, "configuration value out of range");
            idx = idx * s + c;
        }
        idx
    }

    /// All configurations in enumeration order.
    pub fn configs(&self) -> Vec<Vec<usize>> {
        (0..self.total()).map(|i| self.config(i)).collect()
    }

    /// Bitmask for a set of factor names (bit `i` = `factor_names()[i]`).
    pub fn mask_of<S: AsRef<str>>(&self, factors: &[S]) -> Result<usize, MeasureError> {
        let mut mask = 0usize;
        for f in factors {
            let i = self
                .names
                .iter()
                .position(|n| n == f.as_ref())
                .ok_or_else(|| MeasureError::UnknownFactor(f.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Canonical id (`{}`, `{x}`, `{x,y}`, …) for a factor-subset bitmask.
    pub fn subset_id(&self, mask: usize) -> String {
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        subset_id(&names, mask)
    }

    /// Number of joint values of the factors in `mask`.
    pub fn sub_total(&self, mask: usize) -> usize {
        self.sizes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| s)
            .product()
    }

    /// Enumeration index of `config`'s restriction to the factors in
    /// `mask`, using the same first-slowest rule among the kept factors.
    pub fn sub_index(&self, config: &[usize], mask: usize) -> usize {
        let mut idx = 0;
        for (i, (c, s)) in config.iter().zip(&self.sizes).enumerate() {
            if mask >> i & 1 == 1 {
                idx = idx * s + c;
            }
        }
        idx
    }

    /// The powerset of the factors ordered by inclusion, subsets enumerated
    /// by ascending bitmask.
    pub fn subsets_poset(&self) -> FinitePoset {
        FinitePoset::boolean_lattice(&self.names).expect("factor count already bounded")
    }

    /// Formats a configuration as comma-separated values, e.g. `0,2`.
    pub fn config_id(&self, config: &[usize]) -> String {
        config
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A rational probability measure on a configuration space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Measure {
    space: ConfigurationSpace,
    weights: Vec<Rat>,
}

impl Measure {
    /// Builds a measure from weights in enumeration order. Weights must be
    /// nonnegative and sum to exactly 1.
    pub fn new(space: ConfigurationSpace, weights: Vec<Rat>) -> Result<Self, MeasureError> {
        if weights.len() != space.total() {
            return Err(MeasureError::WeightCount {
                expected: space.total(),
                got: weights.len(),
            });
        }
        let mut total = Rat::zero();
        for (i, w) in weights.iter().enumerate() {
            if w < &Rat::zero() {
                return Err(MeasureError::NegativeWeight {
                    config: space.config_id(&space.config(i)),
                    weight: format_rat(w),
                });
            }
            total += w;
        }
        if total != Rat::from_integer(1.into()) {
            return Err(MeasureError::TotalMassNotOne {
                total: format_rat(&total),
            });
        }
        Ok(Measure { space, weights })
    }

    /// The uniform measure.
    pub fn uniform(space: ConfigurationSpace) -> Self {
        let n = space.total();
        let w = Rat::new(1.into(), (n as i64).into());
        Measure {
            space,
            weights: vec![w; n],
        }
    }

    /// The product measure with the given per-factor distributions.
    pub fn product_of(
        space: ConfigurationSpace,
        factors: &[Vec<Rat>],
    ) -> Result<Self, MeasureError> {
        assert_eq!(
            factors.len(),
            space.num_factors(),
            "one distribution per factor"
        );
        for (i, (dist, &size)) in factors.iter().zip(space.factor_sizes()).enumerate() {
            if dist.len() != size {
                return Err(MeasureError::FactorSize {
                    index: i,
                    expected: size,
                    got: dist.len(),
                });
            }
        }
        let weights: Vec<Rat> = space
            .configs()
            .iter()
            .map(|cfg| {
                cfg.iter()
                    .enumerate()
                    .map(|(i, &c)| factors[i][c].clone())
                    .product()
            })
            .collect();
        Measure::new(space, weights)
    }

    pub fn space(&self) -> &ConfigurationSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> &Rat {
        &self.weights[index]
    }

    /// Marginal distribution of the factors in `mask`, indexed by
    /// [`ConfigurationSpace::sub_index`].
    pub fn marginal_mask(&self, mask: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.space.sub_total(mask)];
        for (i, w) in self.weights.iter().enumerate() {
            let cfg = self.space.config(i);
            out[self.space.sub_index(&cfg, mask)] += w;
        }
        out
    }

    /// Marginal distribution by factor names.
    pub fn marginal<S: AsRef<str>>(&self, factors: &[S]) -> Result<Vec<Rat>, MeasureError> {
        Ok(self.marginal_mask(self.space.mask_of(factors)?))
    }

    /// The conditional-expectation projector onto functions of the factors
    /// in `mask`.
    ///
    /// Row `ω`, column `ω′` holds `[ω′_a = ω_a]·P(ω′)/P_a(ω_a)` when
    /// `P(ω) > 0`, and 0 when `P(ω) = 0`: averaging happens over the fiber
    /// of the visible coordinates, and configurations carrying no mass are
    /// projected away entirely.
    pub fn conditional_expectation_mask(&self, mask: usize) -> Matrix {
        let n = self.space.total();
        let marginal = self.marginal_mask(mask);
        let mut m = Matrix::zeros(n, n);
        for row in 0..n {
            if self.weights[row].is_zero() {
                continue;
            }
            let row_cfg = self.space.config(row);
            let key = self.space.sub_index(&row_cfg, mask);
            let mass = &marginal[key];
            for col in 0..n {
                if self.weights[col].is_zero() {
                    continue;
                }
                let col_cfg = self.space.config(col);
                if self.space.sub_index(&col_cfg, mask) == key {
                    m.set(row, col, &self.weights[col] / mass);
                }
            }
        }
        m
    }

    /// Conditional expectation by factor names.
    pub fn conditional_expectation<S: AsRef<str>>(
        &self,
        factors: &[S],
    ) -> Result<Matrix, MeasureError> {
        Ok(self.conditional_expectation_mask(self.space.mask_of(factors)?))
    }

    /// The projector family of all conditional expectations, indexed by the
    /// powerset of the factors.
    pub fn projector_family(&self) -> ProjectorFamily {
        let poset = self.space.subsets_poset();
        let pis: Vec<Matrix> = (0..poset.len())
            .map(|mask| self.conditional_expectation_mask(mask))
            .collect();
        ProjectorFamily::new(poset, self.space.total(), pis)
            .expect("conditional expectations are idempotent by construction")
    }

    /// Per-factor marginal distributions.
    pub fn factor_marginals(&self) -> Vec<Vec<Rat>> {
        (0..self.space.num_factors())
            .map(|i| self.marginal_mask(1 << i))
            .collect()
    }

    /// True when the measure is the product of its per-factor marginals:
    /// `P(ω) = Π_i P_i(ω_i)` for every configuration.
    pub fn is_product(&self) -> bool {
        self.product_factors().is_some()
    }

    /// The per-factor marginals when the measure is their product, `None`
    /// otherwise.
    pub fn product_factors(&self) -> Option<Vec<Vec<Rat>>> {
        let marginals = self.factor_marginals();
        let factors = self.space.configs().iter().enumerate().all(|(idx, cfg)| {
            let expected: Rat = cfg
                .iter()
                .enumerate()
                .map(|(i, &c)| marginals[i][c].clone())
                .product();
            self.weights[idx] == expected
        });
        factors.then_some(marginals)
    }

    /// Decomposes function space into interaction subspaces, one per subset
    /// of factors plus a top remainder, or reports a witness pair of
    /// subsets. Succeeds with a certificate exactly when the measure is a
    /// product measure.
    pub fn interaction_decomposition(&self) -> Result<Decomposition, NotDecomposable> {
        self.projector_family().decompose()
    }

    /// Expected interaction dimension `Π_{i ∈ a}(|E_i| − 1)` of a subset,
    /// valid for full-support product measures.
    pub fn product_interaction_dim(&self, mask: usize) -> usize {
        self.space
            .factor_sizes()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s - 1)
            .product()
    }
}

/// Brute-force rank of the interaction term of a subset — used to validate
/// the dimension formula.
pub fn interaction_rank(measure: &Measure, mask: usize) -> usize {
    let family = measure.projector_family();
    let terms = family.interaction_terms();
    Subspace::image(terms.term_idx(mask)).dim()
}
