//! JSON schemas for posets, projector families, measures, and split
//! functors, with canonical serialization.
//!
//! All loaders are strict: unknown fields, missing entries, malformed
//! keys, shape mismatches, and structural violations (non-idempotent
//! projectors, non-functorial arrows, …) are reported as [`LoadError`]s
//! rather than repaired. Emitters are canonical — map keys follow element
//! order, rationals are printed in lowest terms (`"p"` or `"p/q"` with a
//! positive denominator), matrices are row-major — so identical values
//! always serialize to identical bytes.
//!
//! Schemas:
//!
//! * poset: `{"elements": ["a", ...], "leq": [["a","b"], ...]}` — `leq`
//!   lists generating relations; the reflexive–transitive closure is
//!   computed on load, and emission lists the covering pairs.
//! * projector family: `{"poset": …, "dim": n, "projectors": {"a": [[…]]}}`
//!   with one `dim × dim` matrix per element.
//! * measure: `{"factors": {"x": 2, …}, "weights": {"0,1": "1/6", …}}` —
//!   factor declaration order fixes the configuration-tuple order in
//!   weight keys; missing keys mean weight zero.
//! * split functor: `{"poset": …, "dims": {"a": n, …}, "G": {"b<=a": […]},
//!   "F": {"a=>b": […]}}` — arrows are given for covering pairs only;
//!   composites are computed and coherence-checked on load.

use indexmap::IndexMap;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::factor_spaces::{ConfigurationSpace, Measure, MeasureError};
use crate::linalg::{format_rat, parse_rat, rat_int, Matrix, RatParseError};
use crate::poset::{FinitePoset, PosetError};
use crate::projectors::{ProjectorError, ProjectorFamily};
use crate::split_functors::{SplitError, SplitFunctor};

/// Error raised while loading or validating a JSON document.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Family(#[from] ProjectorError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("`{key}`: invalid rational `{text}`: {source}")]
    BadRational {
        key: String,
        text: String,
        source: RatParseError,
    },
    #[error("`{key}`: expected a {want_rows}x{want_cols} matrix, got {got_rows}x{got_cols}")]
    BadShape {
        key: String,
        want_rows: usize,
        want_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("missing entry for element `{0}`")]
    MissingEntry(String),
    #[error("unexpected key `{0}`")]
    UnexpectedKey(String),
    #[error("invalid arrow key `{key}`: expected the form `{expected}`")]
    BadArrowKey { key: String, expected: &'static str },
    #[error("invalid configuration key `{key}`: {reason}")]
    BadConfigKey { key: String, reason: String },
}

/// Wire form of a finite poset: elements plus generating relations.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSchema {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

impl PosetSchema {
    pub fn to_poset(&self) -> Result<FinitePoset, PosetError> {
        FinitePoset::from_relations(self.elements.clone(), &self.leq)
    }

    /// Canonical wire form: covering pairs as generators, in index order.
    pub fn from_poset(poset: &FinitePoset) -> Self {
        PosetSchema {
            elements: poset.elements().to_vec(),
            leq: poset
                .covering_pairs()
                .into_iter()
                .map(|(lo, hi)| (poset.element(lo).to_string(), poset.element(hi).to_string()))
                .collect(),
        }
    }
}

/// Wire form of a projector family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySchema {
    pub poset: PosetSchema,
    pub dim: usize,
    pub projectors: IndexMap<String, Vec<Vec<String>>>,
}

/// Wire form of a measure on a finite product space.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSchema {
    pub factors: IndexMap<String, usize>,
    pub weights: IndexMap<String, String>,
}

/// Wire form of a split functor: covering-pair arrow generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSchema {
    pub poset: PosetSchema,
    pub dims: IndexMap<String, usize>,
    #[serde(rename = "G")]
    pub g: IndexMap<String, Vec<Vec<String>>>,
    #[serde(rename = "F")]
    pub f: IndexMap<String, Vec<Vec<String>>>,
}

fn parse_matrix(
    key: &str,
    rows: &[Vec<String>],
    want_rows: usize,
    want_cols: usize,
) -> Result<Matrix, LoadError> {
    let shape_err = |got_rows, got_cols| LoadError::BadShape {
        key: key.to_string(),
        want_rows,
        want_cols,
        got_rows,
        got_cols,
    };
    if rows.len() != want_rows {
        return Err(shape_err(rows.len(), rows.first().map_or(0, Vec::len)));
    }
    let mut out = Matrix::zeros(want_rows, want_cols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != want_cols {
            return Err(shape_err(rows.len(), row.len()));
        }
        for (c, text) in row.iter().enumerate() {
            let v = parse_rat(text).map_err(|source| LoadError::BadRational {
                key: key.to_string(),
                text: text.clone(),
                source,
            })?;
            out.set(r, c, v);
        }
    }
    Ok(out)
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(format_rat).collect())
        .collect()
}

/// Checks that `map` has exactly the poset's elements as keys and returns
/// the values in element order.
fn per_element<'a, T>(
    poset: &FinitePoset,
    map: &'a IndexMap<String, T>,
) -> Result<Vec<&'a T>, LoadError> {
    for key in map.keys() {
        if poset.index_of(key).is_err() {
            return Err(LoadError::UnexpectedKey(key.clone()));
        }
    }
    poset
        .elements()
        .iter()
        .map(|id| {
            map.get(id)
                .ok_or_else(|| LoadError::MissingEntry(id.clone()))
        })
        .collect()
}

impl FamilySchema {
    pub fn to_family(&self) -> Result<ProjectorFamily, LoadError> {
        let poset = self.poset.to_poset()?;
        let mats = per_element(&poset, &self.projectors)?
            .into_iter()
            .zip(poset.elements())
            .map(|(rows, id)| parse_matrix(id, rows, self.dim, self.dim))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProjectorFamily::new(poset, self.dim, mats)?)
    }

    pub fn from_family(family: &ProjectorFamily) -> Self {
        let poset = family.poset();
        FamilySchema {
            poset: PosetSchema::from_poset(poset),
            dim: family.dim(),
            projectors: poset
                .elements()
                .iter()
                .enumerate()
                .map(|(a, id)| (id.clone(), matrix_rows(family.projector_idx(a))))
                .collect(),
        }
    }
}

impl MeasureSchema {
    pub fn to_measure(&self) -> Result<Measure, LoadError> {
        let space = ConfigurationSpace::new(
            self.factors
                .iter()
                .map(|(name, &size)| (name.clone(), size))
                .collect(),
        )?;
        let bad = |key: &str, reason: String| LoadError::BadConfigKey {
            key: key.to_string(),
            reason,
        };
        let mut weights = vec![rat_int(0); space.total()];
        for (key, text) in &self.weights {
            let parts: Vec<&str> = key.split(',').collect();
            if parts.len() != space.factor_sizes().len() {
                return Err(bad(
                    key,
                    format!(
                        "expected {} comma-separated indices, got {}",
                        space.factor_sizes().len(),
                        parts.len()
                    ),
                ));
            }
            let mut config = Vec::with_capacity(parts.len());
            for (i, part) in parts.iter().enumerate() {
                let v: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| bad(key, format!("`{part}` is not an index")))?;
                if v >= space.factor_sizes()[i] {
                    return Err(bad(
                        key,
                        format!(
                            "index {v} out of range for factor `{}` of size {}",
                            space.factor_names()[i],
                            space.factor_sizes()[i]
                        ),
                    ));
                }
                config.push(v);
            }
            let value = parse_rat(text).map_err(|source| LoadError::BadRational {
                key: key.clone(),
                text: text.clone(),
                source,
            })?;
            weights[space.index_of(&config)] = value;
        }
        Ok(Measure::new(space, weights)?)
    }

    /// Canonical wire form: only nonzero weights, in enumeration order.
    pub fn from_measure(measure: &Measure) -> Self {
        let space = measure.space();
        MeasureSchema {
            factors: space
                .factor_names()
                .iter()
                .zip(space.factor_sizes())
                .map(|(name, &size)| (name.clone(), size))
                .collect(),
            weights: measure
                .weights()
                .iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(i, w)| (space.config_id(&space.config(i)), format_rat(w)))
                .collect(),
        }
    }
}

impl SplitSchema {
    pub fn to_split_functor(&self) -> Result<SplitFunctor, LoadError> {
        let poset = self.poset.to_poset()?;
        let dims: Vec<usize> = per_element(&poset, &self.dims)?
            .into_iter()
            .copied()
            .collect();
        let mut g_cov = BTreeMap::new();
        for (key, rows) in &self.g {
            let (lo_id, hi_id) = key.split_once("<=").ok_or(LoadError::BadArrowKey {
                key: key.clone(),
                expected: "b<=a",
            })?;
            let lo = poset.index_of(lo_id.trim())?;
            let hi = poset.index_of(hi_id.trim())?;
            g_cov.insert((lo, hi), parse_matrix(key, rows, dims[hi], dims[lo])?);
        }
        let mut f_cov = BTreeMap::new();
        for (key, rows) in &self.f {
            let (hi_id, lo_id) = key.split_once("=>").ok_or(LoadError::BadArrowKey {
                key: key.clone(),
                expected: "a=>b",
            })?;
            let lo = poset.index_of(lo_id.trim())?;
            let hi = poset.index_of(hi_id.trim())?;
            f_cov.insert((lo, hi), parse_matrix(key, rows, dims[lo], dims[hi])?);
        }
        Ok(SplitFunctor::from_generators(poset, dims, g_cov, f_cov)?)
    }

    pub fn from_split_functor(sf: &SplitFunctor) -> Self {
        let poset = sf.poset();
        let covering = poset.covering_pairs();
        SplitSchema {
            poset: PosetSchema::from_poset(poset),
            dims: poset
                .elements()
                .iter()
                .enumerate()
                .map(|(a, id)| (id.clone(), sf.dim_idx(a)))
                .collect(),
            g: covering
                .iter()
                .map(|&(lo, hi)| {
                    let key = format!("{}<={}", poset.element(lo), poset.element(hi));
                    (key, matrix_rows(sf.g_idx(lo, hi)))
                })
                .collect(),
            f: covering
                .iter()
                .map(|&(lo, hi)| {
                    let key = format!("{}=>{}", poset.element(hi), poset.element(lo));
                    (key, matrix_rows(sf.f_idx(lo, hi)))
                })
                .collect(),
        }
    }
}

fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("schema serializes");
    out.push('\n');
    out
}

pub fn family_from_str(s: &str) -> Result<ProjectorFamily, LoadError> {
    serde_json::from_str::<FamilySchema>(s)?.to_family()
}

pub fn family_to_string(family: &ProjectorFamily) -> String {
    to_canonical_json(&FamilySchema::from_family(family))
}

pub fn measure_from_str(s: &str) -> Result<Measure, LoadError> {
    serde_json::from_str::<MeasureSchema>(s)?.to_measure()
}

pub fn measure_to_string(measure: &Measure) -> String {
    to_canonical_json(&MeasureSchema::from_measure(measure))
}

pub fn split_from_str(s: &str) -> Result<SplitFunctor, LoadError> {
    serde_json::from_str::<SplitSchema>(s)?.to_split_functor()
}

pub fn split_to_string(sf: &SplitFunctor) -> String {
    to_canonical_json(&SplitSchema::from_split_functor(sf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn fork_family_json() -> &'static str {
        r#"{
            "poset": {
                "elements": ["0", "1", "1'"],
                "leq": [["0", "1"], ["0", "1'"]]
            },
            "dim": 3,
            "projectors": {
                "0":  [["1","0","0"],["0","0","0"],["0","0","0"]],
                "1":  [["1","0","0"],["0","1","0"],["0","0","0"]],
                "1'": [["1","0","0"],["0","0","0"],["0","0","1"]]
            }
        }"#
    }

    #[test]
    fn family_round_trips_through_json() {
        let family = family_from_str(fork_family_json()).unwrap();
        assert_eq!(family.dim(), 3);
        assert!(family.is_functorial());
        let emitted = family_to_string(&family);
        let again = family_from_str(&emitted).unwrap();
        assert_eq!(emitted, family_to_string(&again));
        for a in 0..3 {
            assert_eq!(family.projector_idx(a), again.projector_idx(a));
        }
    }

    #[test]
    fn family_loader_rejects_structural_problems() {
        let bad_dim = fork_family_json().replace("\"dim\": 3", "\"dim\": 2");
        assert!(matches!(
            family_from_str(&bad_dim),
            Err(LoadError::BadShape { .. })
        ));

        let bad_rat = fork_family_json().replace("\"1\",\"0\",\"0\"", "\"x\",\"0\",\"0\"");
        assert!(matches!(
            family_from_str(&bad_rat),
            Err(LoadError::BadRational { .. })
        ));

        // Non-idempotent matrix: structural violation, not a parse error.
        let not_proj = fork_family_json().replace(
            "[[\"1\",\"0\",\"0\"],[\"0\",\"0\",\"0\"],[\"0\",\"0\",\"0\"]]",
            "[[\"1\",\"1\",\"0\"],[\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\"]]",
        );
        assert!(matches!(
            family_from_str(&not_proj),
            Err(LoadError::Family(_))
        ));

        let missing = fork_family_json().replace(
            "\"1'\": [[\"1\",\"0\",\"0\"],[\"0\",\"0\",\"0\"],[\"0\",\"0\",\"1\"]]",
            "\"1'\": [[\"1\",\"0\",\"0\"],[\"0\",\"0\",\"0\"],[\"0\",\"0\",\"1\"]], \"ghost\": []",
        );
        assert!(matches!(
            family_from_str(&missing),
            Err(LoadError::UnexpectedKey(k)) if k == "ghost"
        ));
    }

    #[test]
    fn measure_parses_sparse_weights_in_declaration_order() {
        let text = r#"{
            "factors": {"x": 2, "y": 3},
            "weights": {"0,0": "1/2", "1,2": "1/2"}
        }"#;
        let m = measure_from_str(text).unwrap();
        assert_eq!(m.space().factor_names(), ["x", "y"]);
        // First factor is slowest: (0,0) is index 0, (1,2) is index 5.
        assert_eq!(m.weights()[0], rat(1, 2));
        assert_eq!(m.weights()[5], rat(1, 2));
        assert!(m.weights()[1..5].iter().all(|w| w.is_zero()));

        let emitted = measure_to_string(&m);
        let again = measure_from_str(&emitted).unwrap();
        assert_eq!(again.weights(), m.weights());
        assert_eq!(emitted, measure_to_string(&again));
    }

    #[test]
    fn measure_loader_rejects_bad_keys_and_masses() {
        let short_key = r#"{"factors": {"x": 2, "y": 3}, "weights": {"0": "1"}}"#;
        assert!(matches!(
            measure_from_str(short_key),
            Err(LoadError::BadConfigKey { .. })
        ));
        let out_of_range = r#"{"factors": {"x": 2, "y": 3}, "weights": {"0,3": "1"}}"#;
        assert!(matches!(
            measure_from_str(out_of_range),
            Err(LoadError::BadConfigKey { .. })
        ));
        let wrong_mass = r#"{"factors": {"x": 2, "y": 3}, "weights": {"0,0": "1/3"}}"#;
        assert!(matches!(
            measure_from_str(wrong_mass),
            Err(LoadError::Measure(MeasureError::TotalMassNotOne { .. }))
        ));
        let unknown_field = r#"{"factors": {"x": 2}, "weights": {"0": "1"}, "extra": 0}"#;
        assert!(matches!(
            measure_from_str(unknown_field),
            Err(LoadError::Json(_))
        ));
    }

    #[test]
    fn split_functor_round_trips_through_covering_generators() {
        let sf = crate::split_functors::tests::vee_functor();
        let emitted = split_to_string(&sf);
        let again = split_from_str(&emitted).unwrap();
        assert_eq!(again.poset(), sf.poset());
        assert_eq!(again.dims(), sf.dims());
        for (lo, hi) in sf.poset().strict_pairs() {
            assert_eq!(again.g_idx(lo, hi), sf.g_idx(lo, hi));
            assert_eq!(again.f_idx(lo, hi), sf.f_idx(lo, hi));
        }
        assert_eq!(emitted, split_to_string(&again));
    }

    #[test]
    fn split_loader_composes_and_checks_coherence() {
        // 3-chain given by covering generators only; composites multiply.
        let text = r#"{
            "poset": {"elements": ["a", "b", "c"], "leq": [["a","b"], ["b","c"]]},
            "dims": {"a": 1, "b": 1, "c": 1},
            "G": {"a<=b": [["2"]], "b<=c": [["3"]]},
            "F": {"b=>a": [["1/2"]], "c=>b": [["1/3"]]}
        }"#;
        let sf = split_from_str(text).unwrap();
        let a = sf.poset().index_of("a").unwrap();
        let c = sf.poset().index_of("c").unwrap();
        assert_eq!(sf.g_idx(a, c), &Matrix::from_rows(vec![vec![rat_int(6)]]));
        assert_eq!(sf.f_idx(a, c), &Matrix::from_rows(vec![vec![rat(1, 6)]]));

        let not_split = text.replace("[[\"1/2\"]]", "[[\"1/3\"]]");
        assert!(matches!(
            split_from_str(&not_split),
            Err(LoadError::Split(SplitError::NotSplit { .. }))
        ));

        let bad_key = text.replace("\"a<=b\"", "\"a<b\"");
        assert!(matches!(
            split_from_str(&bad_key),
            Err(LoadError::BadArrowKey { .. })
        ));

        // Arrows must be covering generators, not arbitrary comparable pairs.
        let extra = text.replace(
            "\"G\": {\"a<=b\": [[\"2\"]],",
            "\"G\": {\"a<=c\": [[\"6\"]], \"a<=b\": [[\"2\"]],",
        );
        assert!(matches!(
            split_from_str(&extra),
            Err(LoadError::Split(SplitError::UnexpectedArrow { .. }))
        ));
    }
}
