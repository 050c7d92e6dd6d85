//! Finite posets with string-named elements, plus the Möbius machinery the
//! decomposition algorithms are built on.
//!
//! The order relation is stored as a dense boolean table, so `leq` queries
//! are O(1). Posets are immutable after construction and cheap to clone at
//! the sizes this crate targets (tens of elements).

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{rat_int, Matrix, Rat};

/// Errors raised while building or querying a poset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAntisymmetric(String, String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("set is not a lower set: contains `{0}` but not `{1}` <= `{0}`")]
    NotLowerSet(String, String),
    #[error("coefficient family has {got} entries, poset has {expected}")]
    FamilySize { expected: usize, got: usize },
    #[error("coefficient family entry `{element}` has dimension {got}, expected {expected}")]
    FamilyDimMismatch {
        element: String,
        expected: usize,
        got: usize,
    },
    #[error("element id `{0}` is reserved for the adjoined top")]
    ReservedTop(String),
}

/// A finite partially ordered set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// `leq[i * n + j]` is true when `elements[i] <= elements[j]`.
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from an explicit relation table.
    /// `table(i, j)` must answer "is `elements[i] <= elements[j]`?".
    /// Reflexivity, antisymmetry and transitivity are all verified.
    pub fn from_leq_table(
        elements: Vec<String>,
        table: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, PosetError> {
        let n = elements.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = table(i, j);
            }
        }
        let poset = FinitePoset {
            index: Self::build_index(&elements)?,
            elements,
            leq,
        };
        poset.validate()?;
        Ok(poset)
    }

    /// Builds a poset from generating relations `(lower, upper)`.
    ///
    /// The reflexive-transitive closure of the generators is taken first;
    /// antisymmetry is then verified on the closure, so a generating cycle
    /// is reported as an antisymmetry violation.
    pub fn from_relations<S: AsRef<str>>(
        elements: Vec<String>,
        relations: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let n = elements.len();
        let index = Self::build_index(&elements)?;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in relations {
            let lo = *index
                .get(lo.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(lo.as_ref().to_string()))?;
            let hi = *index
                .get(hi.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(hi.as_ref().to_string()))?;
            leq[lo * n + hi] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let poset = FinitePoset {
            elements,
            index,
            leq,
        };
        poset.validate()?;
        Ok(poset)
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        FinitePoset::from_leq_table(elements, |i, j| i <= j).expect("chain is a valid poset")
    }

    /// `n` pairwise incomparable elements `0, …, n-1`.
    pub fn antichain(n: usize) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        FinitePoset::from_leq_table(elements, |i, j| i == j).expect("antichain is a valid poset")
    }

    /// The lattice of subsets of the given generators, ordered by inclusion.
    ///
    /// Element ids look like `{}`, `{x}`, `{x,y}` with generator names in
    /// declaration order; subsets are enumerated by ascending bitmask with
    /// bit `i` standing for `generators[i]`.
    pub fn boolean_lattice<S: AsRef<str>>(generators: &[S]) -> Result<Self, PosetError> {
        let k = generators.len();
        assert!(k <= 16, "boolean lattice limited to 16 generators");
        let names: Vec<&str> = generators.iter().map(AsRef::as_ref).collect();
        let elements: Vec<String> = (0..1usize << k)
            .map(|mask| subset_id(&names, mask))
            .collect();
        FinitePoset::from_leq_table(elements, |i, j| i & j == i)
    }

    fn build_index(elements: &[String]) -> Result<HashMap<String, usize>, PosetError> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        Ok(index)
    }

    fn validate(&self) -> Result<(), PosetError> {
        let n = self.len();
        for i in 0..n {
            if !self.leq_idx(i, i) {
                return Err(PosetError::NotReflexive(self.elements[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq_idx(i, j) && self.leq_idx(j, i) {
                    return Err(PosetError::NotAntisymmetric(
                        self.elements[i].clone(),
                        self.elements[j].clone(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq_idx(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq_idx(j, k) && !self.leq_idx(i, k) {
                        return Err(PosetError::NotTransitive(
                            self.elements[i].clone(),
                            self.elements[j].clone(),
                            self.elements[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    /// Index of an element id.
    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    /// O(1) order query by index.
    pub fn leq_idx(&self, lo: usize, hi: usize) -> bool {
        self.leq[lo * self.len() + hi]
    }

    /// Order query by element id.
    pub fn leq(&self, lo: &str, hi: &str) -> Result<bool, PosetError> {
        Ok(self.leq_idx(self.index_of(lo)?, self.index_of(hi)?))
    }

    /// The down-set `{b : b <= a}`, indices ascending.
    pub fn down_set_idx(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq_idx(b, a)).collect()
    }

    /// The down-set by element id.
    pub fn down_set(&self, a: &str) -> Result<Vec<&str>, PosetError> {
        Ok(self
            .down_set_idx(self.index_of(a)?)
            .into_iter()
            .map(|i| self.elements[i].as_str())
            .collect())
    }

    /// The up-set `{b : a <= b}`, indices ascending.
    pub fn up_set_idx(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq_idx(a, b)).collect()
    }

    /// True when `set` is downward closed.
    pub fn is_lower_set_idx(&self, set: &[usize]) -> bool {
        self.lower_set_violation(set).is_none()
    }

    /// True when the named set is downward closed.
    pub fn is_lower_set<S: AsRef<str>>(&self, set: &[S]) -> Result<bool, PosetError> {
        let idx = self.indices_of(set)?;
        Ok(self.is_lower_set_idx(&idx))
    }

    /// A witness `(member, missing)` when `set` is not downward closed.
    fn lower_set_violation(&self, set: &[usize]) -> Option<(usize, usize)> {
        let mut member = vec![false; self.len()];
        for &i in set {
            member[i] = true;
        }
        for &i in set {
            for b in 0..self.len() {
                if self.leq_idx(b, i) && !member[b] {
                    return Some((i, b));
                }
            }
        }
        None
    }

    /// All lower sets, each as an ascending index list, enumerated in
    /// ascending bitmask order. Intended for small posets; panics above 20
    /// elements.
    pub fn lower_sets(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        assert!(n <= 20, "lower-set enumeration limited to 20 elements");
        let mut out = Vec::new();
        for mask in 0..(1usize << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if self.is_lower_set_idx(&set) {
                out.push(set);
            }
        }
        out
    }

    /// All pairs `(lo, hi)` with `lo < hi` strictly, in lexicographic index
    /// order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for lo in 0..self.len() {
            for hi in 0..self.len() {
                if lo != hi && self.leq_idx(lo, hi) {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// All covering pairs `(lo, hi)`: `lo < hi` with nothing strictly
    /// between.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(lo, hi)| {
                !(0..self.len())
                    .any(|m| m != lo && m != hi && self.leq_idx(lo, m) && self.leq_idx(m, hi))
            })
            .collect()
    }

    /// Greatest lower bound of two elements, if one exists.
    ///
    /// Returns `None` when the pair has no lower bound dominating every other
    /// lower bound — e.g. when two distinct maximal lower bounds exist.
    pub fn meet_idx(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&c| self.leq_idx(c, a) && self.leq_idx(c, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&d| lower.iter().all(|&c| self.leq_idx(c, d)))
    }

    /// Greatest lower bound by element id.
    pub fn meet(&self, a: &str, b: &str) -> Result<Option<&str>, PosetError> {
        Ok(self
            .meet_idx(self.index_of(a)?, self.index_of(b)?)
            .map(|i| self.elements[i].as_str()))
    }

    /// True when every pair of elements has a meet.
    pub fn is_meet_semilattice(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.meet_idx(a, b).is_some()))
    }

    /// Induced subposet on the given indices (kept in ascending index
    /// order, original ids preserved).
    pub fn restrict_idx(&self, keep: &[usize]) -> FinitePoset {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let elements: Vec<String> = keep.iter().map(|&i| self.elements[i].clone()).collect();
        FinitePoset::from_leq_table(elements, |i, j| self.leq_idx(keep[i], keep[j]))
            .expect("induced subposet of a valid poset is valid")
    }

    /// The subposet on the down-set of `a` — everything at or below `a`.
    pub fn down_set_poset(&self, a: usize) -> FinitePoset {
        self.restrict_idx(&self.down_set_idx(a))
    }

    /// Adjoins a fresh top element `⊤` above everything.
    pub fn augment(&self) -> Result<AugmentedPoset, PosetError> {
        if self.index.contains_key(TOP_ID) {
            return Err(PosetError::ReservedTop(TOP_ID.to_string()));
        }
        let n = self.len();
        let mut elements = self.elements.clone();
        elements.push(TOP_ID.to_string());
        let poset = FinitePoset::from_leq_table(elements, |i, j| {
            if j == n {
                true
            } else if i == n {
                false
            } else {
                self.leq_idx(i, j)
            }
        })
        .expect("augmenting a valid poset stays valid");
        Ok(AugmentedPoset { poset, top: n })
    }

    /// Möbius function of the poset as a dense integer table.
    pub fn mobius(&self) -> MobiusTable {
        MobiusTable::new(self)
    }

    /// The zeta matrix `Z[a][b] = [b <= a]` as a rational matrix, rows and
    /// columns in element order.
    pub fn zeta_matrix(&self) -> Matrix {
        Matrix::from_fn(self.len(), self.len(), |a, b| {
            if self.leq_idx(b, a) {
                rat_int(1)
            } else {
                rat_int(0)
            }
        })
    }

    /// Zeta transform of a coefficient family: `out[a] = Σ_{b <= a} m[b]`.
    /// All entries of `m` must have the same length.
    pub fn zeta_apply(&self, m: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>, PosetError> {
        let dim = self.family_dim(m)?;
        Ok((0..self.len())
            .map(|a| {
                let mut acc = vec![Rat::zero(); dim];
                for b in self.down_set_idx(a) {
                    for (x, y) in acc.iter_mut().zip(&m[b]) {
                        *x += y;
                    }
                }
                acc
            })
            .collect())
    }

    /// Möbius transform of a coefficient family:
    /// `out[a] = Σ_{b <= a} μ(a,b)·m[b]`. Inverse of [`Self::zeta_apply`].
    pub fn mobius_apply(&self, m: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>, PosetError> {
        let dim = self.family_dim(m)?;
        let mu = self.mobius();
        Ok((0..self.len())
            .map(|a| {
                let mut acc = vec![Rat::zero(); dim];
                for b in self.down_set_idx(a) {
                    let coef = rat_int(mu.mu_idx(a, b));
                    if coef.is_zero() {
                        continue;
                    }
                    for (x, y) in acc.iter_mut().zip(&m[b]) {
                        *x += &coef * y;
                    }
                }
                acc
            })
            .collect())
    }

    /// Membership test for the subspace `W(B)` of coefficient families that
    /// cannot distinguish elements with the same visible part of `B`:
    /// `v ∈ W(B)` iff `v_a = v_c` whenever `â ∩ B = ĉ ∩ B` (where `â` is the
    /// down-set of `a`). `B` must be a lower set.
    pub fn w_space_contains_idx(
        &self,
        b_set: &[usize],
        family: &[Vec<Rat>],
    ) -> Result<bool, PosetError> {
        self.family_dim(family)?;
        if let Some((member, missing)) = self.lower_set_violation(b_set) {
            return Err(PosetError::NotLowerSet(
                self.elements[member].clone(),
                self.elements[missing].clone(),
            ));
        }
        let mut in_b = vec![false; self.len()];
        for &i in b_set {
            in_b[i] = true;
        }
        // Signature of `a` = its down-set intersected with B.
        let signature = |a: usize| -> Vec<usize> {
            self.down_set_idx(a)
                .into_iter()
                .filter(|&x| in_b[x])
                .collect()
        };
        for a in 0..self.len() {
            for c in a + 1..self.len() {
                if signature(a) == signature(c) && family[a] != family[c] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Named-element version of [`Self::w_space_contains_idx`].
    pub fn w_space_contains<S: AsRef<str>>(
        &self,
        b_set: &[S],
        family: &[Vec<Rat>],
    ) -> Result<bool, PosetError> {
        let idx = self.indices_of(b_set)?;
        self.w_space_contains_idx(&idx, family)
    }

    fn indices_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>, PosetError> {
        ids.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    fn family_dim(&self, m: &[Vec<Rat>]) -> Result<usize, PosetError> {
        if m.len() != self.len() {
            return Err(PosetError::FamilySize {
                expected: self.len(),
                got: m.len(),
            });
        }
        let dim = m.first().map_or(0, Vec::len);
        for (i, v) in m.iter().enumerate() {
            if v.len() != dim {
                return Err(PosetError::FamilyDimMismatch {
                    element: self.elements[i].clone(),
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        Ok(dim)
    }
}

/// Reserved id for the adjoined top element.
pub const TOP_ID: &str = "⊤";

/// A poset together with a distinguished adjoined top element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AugmentedPoset {
    poset: FinitePoset,
    top: usize,
}

impl AugmentedPoset {
    /// The underlying poset including the top element (always last).
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn top_index(&self) -> usize {
        self.top
    }

    pub fn top_id(&self) -> &str {
        TOP_ID
    }

    /// Number of elements excluding the top.
    pub fn base_len(&self) -> usize {
        self.top
    }
}

/// Builds the canonical subset id for a bitmask over generator names.
pub(crate) fn subset_id(names: &[&str], mask: usize) -> String {
    let chosen: Vec<&str> = names
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, n)| *n)
        .collect();
    format!("{{{}}}", chosen.join(","))
}

/// Integer Möbius function of a poset, stored densely.
///
/// `mu(a, b)` is defined for `b <= a` by `mu(a, a) = 1` and
/// `mu(a, b) = -Σ_{b < c <= a} mu(a, c)`; it is 0 for incomparable pairs.
/// The table inverts the zeta transform: summing `mu(a, b)` over any
/// interval `[c, a]` yields 1 exactly when `c = a` and 0 otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MobiusTable {
    n: usize,
    values: Vec<i64>,
}

impl MobiusTable {
    fn new(poset: &FinitePoset) -> Self {
        let n = poset.len();
        let mut values = vec![0i64; n * n];
        let mut known = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                if poset.leq_idx(b, a) {
                    Self::fill(poset, a, b, &mut values, &mut known);
                }
            }
        }
        MobiusTable { n, values }
    }

    fn fill(
        poset: &FinitePoset,
        a: usize,
        b: usize,
        values: &mut [i64],
        known: &mut [bool],
    ) -> i64 {
        let n = poset.len();
        if known[a * n + b] {
            return values[a * n + b];
        }
        let v = if a == b {
            1
        } else {
            let mut acc: i64 = 0;
            for c in 0..n {
                if c != b && poset.leq_idx(b, c) && poset.leq_idx(c, a) {
                    acc = acc
                        .checked_add(Self::fill(poset, a, c, values, known))
                        .expect("Möbius value overflowed i64");
                }
            }
            acc.checked_neg().expect("Möbius value overflowed i64")
        };
        values[a * n + b] = v;
        known[a * n + b] = true;
        v
    }

    /// `μ(a, b)` by index; 0 when `b` is not below `a`.
    pub fn mu_idx(&self, a: usize, b: usize) -> i64 {
        self.values[a * self.n + b]
    }

    /// The table as a rational matrix with `M[a][b] = μ(a, b)`.
    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |a, b| rat_int(self.mu_idx(a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: Vec<&str>) -> Vec<String> {
        v.into_iter().map(String::from).collect()
    }

    /// The four-element poset with a, b both below c, d and nothing else:
    /// the standard example of a pair (c, d) without a meet.
    fn no_meet_poset() -> FinitePoset {
        FinitePoset::from_relations(
            ids(vec!["a", "b", "c", "d"]),
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap()
    }

    #[test]
    fn validation_reports_each_axiom() {
        // Reflexivity.
        let err =
            FinitePoset::from_leq_table(ids(vec!["x", "y"]), |i, j| i == 0 && j == 0).unwrap_err();
        assert_eq!(err, PosetError::NotReflexive("y".into()));
        // Antisymmetry.
        let err = FinitePoset::from_leq_table(ids(vec!["x", "y"]), |_, _| true).unwrap_err();
        assert_eq!(err, PosetError::NotAntisymmetric("x".into(), "y".into()));
        // Transitivity: x <= y <= z without x <= z.
        let err = FinitePoset::from_leq_table(ids(vec!["x", "y", "z"]), |i, j| {
            i == j || (i == 0 && j == 1) || (i == 1 && j == 2)
        })
        .unwrap_err();
        assert_eq!(
            err,
            PosetError::NotTransitive("x".into(), "y".into(), "z".into())
        );
        // Duplicates.
        let err = FinitePoset::from_relations::<&str>(ids(vec!["x", "x"]), &[]).unwrap_err();
        assert_eq!(err, PosetError::DuplicateElement("x".into()));
    }

    #[test]
    fn closure_makes_cycles_antisymmetry_failures() {
        let err = FinitePoset::from_relations(
            ids(vec!["x", "y", "z"]),
            &[("x", "y"), ("y", "z"), ("z", "x")],
        )
        .unwrap_err();
        assert!(matches!(err, PosetError::NotAntisymmetric(_, _)));
    }

    #[test]
    fn closure_fills_in_transitivity() {
        let p = FinitePoset::from_relations(ids(vec!["x", "y", "z"]), &[("x", "y"), ("y", "z")])
            .unwrap();
        assert!(p.leq("x", "z").unwrap());
        assert_eq!(p.down_set("z").unwrap(), vec!["x", "y", "z"]);
    }

    #[test]
    fn down_sets_and_lower_sets_on_chain() {
        let p = FinitePoset::chain(3);
        assert_eq!(p.down_set("2").unwrap(), vec!["0", "1", "2"]);
        assert_eq!(p.down_set("0").unwrap(), vec!["0"]);
        assert!(p.is_lower_set::<&str>(&[]).unwrap());
        assert!(p.is_lower_set(&["0", "1"]).unwrap());
        assert!(!p.is_lower_set(&["1"]).unwrap());
        // All lower sets of the chain are the prefixes.
        assert_eq!(
            p.lower_sets(),
            vec![vec![], vec![0], vec![0, 1], vec![0, 1, 2]]
        );
    }

    #[test]
    fn meets_on_powerset() {
        let p = FinitePoset::boolean_lattice(&["1", "2"]).unwrap();
        assert_eq!(p.elements(), &["{}", "{1}", "{2}", "{1,2}"]);
        assert_eq!(p.meet("{1}", "{2}").unwrap(), Some("{}"));
        assert_eq!(p.meet("{1}", "{1,2}").unwrap(), Some("{1}"));
        assert!(p.is_meet_semilattice());
    }

    #[test]
    fn meet_absent_when_two_maximal_lower_bounds() {
        let p = no_meet_poset();
        assert_eq!(p.meet("c", "d").unwrap(), None);
        assert!(!p.is_meet_semilattice());
        // Pairs involving a minimal element still have meets.
        assert_eq!(p.meet("a", "c").unwrap(), Some("a"));
        assert_eq!(p.meet("a", "b").unwrap(), None);
    }

    #[test]
    fn meet_satisfies_universal_property() {
        for p in [
            FinitePoset::chain(4),
            FinitePoset::boolean_lattice(&["x", "y", "z"]).unwrap(),
            no_meet_poset(),
        ] {
            for a in 0..p.len() {
                for b in 0..p.len() {
                    if let Some(d) = p.meet_idx(a, b) {
                        assert!(p.leq_idx(d, a) && p.leq_idx(d, b));
                        for c in 0..p.len() {
                            if p.leq_idx(c, a) && p.leq_idx(c, b) {
                                assert!(p.leq_idx(c, d));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mobius_on_chain_telescopes() {
        let p = FinitePoset::chain(3);
        let mu = p.mobius();
        assert_eq!(mu.mu_idx(2, 2), 1);
        assert_eq!(mu.mu_idx(2, 1), -1);
        assert_eq!(mu.mu_idx(2, 0), 0);
        assert_eq!(mu.mu_idx(0, 0), 1);
    }

    #[test]
    fn mobius_on_powerset_alternates() {
        let p = FinitePoset::boolean_lattice(&["1", "2"]).unwrap();
        let mu = p.mobius();
        let idx = |s: &str| p.index_of(s).unwrap();
        assert_eq!(mu.mu_idx(idx("{1,2}"), idx("{1,2}")), 1);
        assert_eq!(mu.mu_idx(idx("{1,2}"), idx("{1}")), -1);
        assert_eq!(mu.mu_idx(idx("{1,2}"), idx("{2}")), -1);
        assert_eq!(mu.mu_idx(idx("{1,2}"), idx("{}")), 1);
    }

    #[test]
    fn mobius_inverts_zeta_on_interval_sums() {
        // Σ_{c <= b <= a} μ(a,b) = [a = c] for every pair c <= a.
        for p in [
            FinitePoset::chain(5),
            FinitePoset::boolean_lattice(&["x", "y", "z"]).unwrap(),
            no_meet_poset(),
        ] {
            let mu = p.mobius();
            for a in 0..p.len() {
                for c in p.down_set_idx(a) {
                    let total: i64 = (0..p.len())
                        .filter(|&b| p.leq_idx(c, b) && p.leq_idx(b, a))
                        .map(|b| mu.mu_idx(a, b))
                        .sum();
                    assert_eq!(total, i64::from(a == c));
                }
            }
        }
    }

    #[test]
    fn zeta_and_mobius_apply_are_inverse() {
        let p = no_meet_poset();
        let family: Vec<Vec<Rat>> = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(-1), rat_int(0)],
            vec![rat_int(3), rat_int(5)],
            vec![rat_int(0), rat_int(7)],
        ];
        let z = p.zeta_apply(&family).unwrap();
        // Spot-check: c accumulates a, b and itself.
        assert_eq!(z[2], vec![rat_int(3), rat_int(7)]);
        assert_eq!(p.mobius_apply(&z).unwrap(), family);
        assert_eq!(
            p.zeta_apply(&p.mobius_apply(&family).unwrap()).unwrap(),
            family
        );
    }

    #[test]
    fn family_shape_errors() {
        let p = FinitePoset::chain(2);
        let err = p.zeta_apply(&[vec![rat_int(1)]]).unwrap_err();
        assert_eq!(
            err,
            PosetError::FamilySize {
                expected: 2,
                got: 1
            }
        );
        let err = p
            .zeta_apply(&[vec![rat_int(1)], vec![rat_int(1), rat_int(2)]])
            .unwrap_err();
        assert!(matches!(err, PosetError::FamilyDimMismatch { .. }));
    }

    #[test]
    fn w_space_on_chain_forces_equal_components() {
        // With B = {0} every element sees the same part of B, so membership
        // forces all components equal.
        let p = FinitePoset::chain(3);
        let b = ["0"];
        let v = |x: i64| vec![rat_int(x)];
        assert!(p.w_space_contains(&b, &[v(4), v(4), v(4)]).unwrap());
        assert!(!p.w_space_contains(&b, &[v(4), v(4), v(5)]).unwrap());
    }

    #[test]
    fn w_space_requires_lower_set() {
        let p = FinitePoset::chain(3);
        let err = p
            .w_space_contains(
                &["1"],
                &[vec![rat_int(0)], vec![rat_int(0)], vec![rat_int(0)]],
            )
            .unwrap_err();
        assert_eq!(err, PosetError::NotLowerSet("1".into(), "0".into()));
    }

    #[test]
    fn w_space_strictly_larger_than_zeta_image() {
        // On the no-meet poset with B = {a, b}, both c and d see all of B,
        // so W(B) only ties the c and d components. The zeta image of
        // families supported on B additionally forces v_c = v_a + v_b; a
        // family with v_c = v_d but v_c ≠ v_a + v_b exhibits the gap.
        let p = no_meet_poset();
        let b = ["a", "b"];
        let v = |x: i64| vec![rat_int(x)];
        // ζ of a family supported on B lands in W(B).
        let supported = vec![v(2), v(3), v(0), v(0)];
        let z = p.zeta_apply(&supported).unwrap();
        assert_eq!(z, vec![v(2), v(3), v(5), v(5)]);
        assert!(p.w_space_contains(&b, &z).unwrap());
        // ζ of a family with support outside B still lands in W(B) …
        let outside = vec![v(0), v(0), v(1), v(1)];
        let z = p.zeta_apply(&outside).unwrap();
        assert!(p.w_space_contains(&b, &z).unwrap());
        // … which exhibits a W(B) member that no family supported on B hits:
        // here v_c = v_d = 1 but v_a + v_b = 0.
        assert_eq!(z, vec![v(0), v(0), v(1), v(1)]);
    }

    #[test]
    fn restriction_to_down_set() {
        let p = FinitePoset::boolean_lattice(&["1", "2"]).unwrap();
        let sub = p.down_set_poset(p.index_of("{1}").unwrap());
        assert_eq!(sub.elements(), &["{}", "{1}"]);
        assert!(sub.leq("{}", "{1}").unwrap());
    }

    #[test]
    fn augmentation_adds_a_top() {
        let p = no_meet_poset();
        let aug = p.augment().unwrap();
        let q = aug.poset();
        assert_eq!(q.len(), 5);
        assert_eq!(q.element(aug.top_index()), TOP_ID);
        for i in 0..q.len() {
            assert!(q.leq_idx(i, aug.top_index()));
        }
        assert!(!q.leq_idx(aug.top_index(), 0));
        // The reserved id cannot be augmented twice.
        assert!(matches!(q.augment(), Err(PosetError::ReservedTop(_))));
    }

    #[test]
    fn covering_pairs_skip_composites() {
        let p = FinitePoset::chain(3);
        assert_eq!(p.covering_pairs(), vec![(0, 1), (1, 2)]);
        let b = FinitePoset::boolean_lattice(&["1", "2"]).unwrap();
        assert_eq!(b.covering_pairs(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
