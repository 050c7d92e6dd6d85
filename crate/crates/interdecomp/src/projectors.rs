//! Poset-indexed projector families and their decomposition into
//! interaction subspaces.
//!
//! A family assigns to every poset element `a` a projector `π_a` on a common
//! space ℚⁿ. Möbius inversion turns the family into *interaction terms*
//! `s_a = Σ_{b ≤ a} μ(a,b)·π_b` plus a remainder `s_⊤ = id − Σ_a s_a`. The
//! family is decomposable — i.e. comes from a direct sum
//! `ℚⁿ = ⊕_a S_a ⊕ S_⊤` with every `π_a` projecting onto `⊕_{b ≤ a} S_b` —
//! exactly when the pairwise intersection identity
//! `π_a·π_b = Σ_{c ≤ a, c ≤ b} s_c` holds, and then `S_a = im s_a`.

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{rat_int, Matrix, Rat, Subspace};
use crate::poset::{FinitePoset, PosetError, TOP_ID};

/// Errors raised while building a projector family.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectorError {
    #[error("family has {got} projectors, poset has {expected} elements")]
    FamilySize { expected: usize, got: usize },
    #[error("projector for `{element}` is {rows}x{cols}, expected {dim}x{dim}")]
    WrongShape {
        element: String,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("matrix for `{element}` is not idempotent")]
    NotIdempotent { element: String },
    #[error("poset is not a meet semilattice; use the general intersection test")]
    NotMeetSemilattice,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Failure witness: a pair of elements at which the pairwise intersection
/// identity `π_a·π_b = Σ_{c ≤ a, c ≤ b} s_c` does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not decomposable: intersection identity fails at pair (`{left}`, `{right}`)")]
pub struct NotDecomposable {
    pub left: String,
    pub right: String,
}

/// A family of projectors indexed by a finite poset, one per element, all
/// acting on the same ℚⁿ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectorFamily {
    poset: FinitePoset,
    dim: usize,
    pi: Vec<Matrix>,
}

impl ProjectorFamily {
    /// Builds a family from projectors listed in poset element order.
    /// Every matrix must be `dim`×`dim` and idempotent.
    pub fn new(poset: FinitePoset, dim: usize, pi: Vec<Matrix>) -> Result<Self, ProjectorError> {
        if pi.len() != poset.len() {
            return Err(ProjectorError::FamilySize {
                expected: poset.len(),
                got: pi.len(),
            });
        }
        for (i, m) in pi.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(ProjectorError::WrongShape {
                    element: poset.element(i).to_string(),
                    rows: m.rows(),
                    cols: m.cols(),
                    dim,
                });
            }
            if !m.is_projector() {
                return Err(ProjectorError::NotIdempotent {
                    element: poset.element(i).to_string(),
                });
            }
        }
        Ok(ProjectorFamily { poset, dim, pi })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projector_idx(&self, a: usize) -> &Matrix {
        &self.pi[a]
    }

    pub fn projector(&self, a: &str) -> Result<&Matrix, ProjectorError> {
        Ok(&self.pi[self.poset.index_of(a)?])
    }

    /// True when images grow along the order: `π_a·π_b = π_b` for every
    /// `b ≤ a` (so `im π_b ⊆ im π_a`).
    pub fn is_functorial(&self) -> bool {
        self.poset
            .strict_pairs()
            .into_iter()
            .all(|(b, a)| &(&self.pi[a] * &self.pi[b]) == &self.pi[b])
    }

    /// True when kernels shrink along the order: `π_b·π_a = π_b` for every
    /// `b ≤ a` (the tower property of conditional expectations; equivalently
    /// `π_b` factors through `π_a`, so the family is a presheaf of split
    /// surjections onto the images).
    pub fn is_presheafable(&self) -> bool {
        self.poset
            .strict_pairs()
            .into_iter()
            .all(|(b, a)| &(&self.pi[b] * &self.pi[a]) == &self.pi[b])
    }

    /// Möbius inversion of the family: the interaction terms
    /// `s_a = Σ_{b ≤ a} μ(a,b)·π_b` together with `s_⊤ = id − Σ_a s_a`.
    pub fn interaction_terms(&self) -> InteractionTerms {
        let mu = self.poset.mobius();
        let mut terms = Vec::with_capacity(self.poset.len());
        for a in 0..self.poset.len() {
            let mut acc = Matrix::zeros(self.dim, self.dim);
            for b in self.poset.down_set_idx(a) {
                let coef = mu.mu_idx(a, b);
                if coef == 0 {
                    continue;
                }
                acc = &acc + &self.pi[b].scale(&rat_int(coef));
            }
            terms.push(acc);
        }
        let mut top = Matrix::identity(self.dim);
        for t in &terms {
            top = &top - t;
        }
        InteractionTerms {
            poset: self.poset.clone(),
            dim: self.dim,
            terms,
            top,
        }
    }

    /// Intersection test in meet-semilattice form: `π_a·π_b = π_{a∧b}` for
    /// all pairs. Errors when some pair has no meet.
    pub fn satisfies_intersection_semilattice(&self) -> Result<bool, ProjectorError> {
        for a in 0..self.poset.len() {
            for b in 0..self.poset.len() {
                let m = self
                    .poset
                    .meet_idx(a, b)
                    .ok_or(ProjectorError::NotMeetSemilattice)?;
                if &self.pi[a] * &self.pi[b] != self.pi[m] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// First pair (in lexicographic element order) at which the pairwise
    /// intersection identity fails, or `None` when the family satisfies it.
    pub fn intersection_witness_idx(&self) -> Option<(usize, usize)> {
        let terms = self.interaction_terms();
        self.intersection_witness_with(&terms)
    }

    pub(crate) fn intersection_witness_with(
        &self,
        terms: &InteractionTerms,
    ) -> Option<(usize, usize)> {
        for a in 0..self.poset.len() {
            for b in 0..self.poset.len() {
                let lhs = &self.pi[a] * &self.pi[b];
                let mut rhs = Matrix::zeros(self.dim, self.dim);
                for c in 0..self.poset.len() {
                    if self.poset.leq_idx(c, a) && self.poset.leq_idx(c, b) {
                        rhs = &rhs + terms.term_idx(c);
                    }
                }
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Pairwise intersection test in general-poset form:
    /// `π_a·π_b = Σ_{c ≤ a, c ≤ b} s_c` for all ordered pairs.
    pub fn satisfies_intersection(&self) -> bool {
        self.intersection_witness_idx().is_none()
    }

    /// Every unordered pair `{a, b}` (as ids, in element order) at which the
    /// intersection identity fails in either composition order.
    pub fn intersection_witnesses(&self) -> Vec<(String, String)> {
        let terms = self.interaction_terms();
        let fails = |a: usize, b: usize| {
            let lhs = &self.pi[a] * &self.pi[b];
            let mut rhs = Matrix::zeros(self.dim, self.dim);
            for c in 0..self.poset.len() {
                if self.poset.leq_idx(c, a) && self.poset.leq_idx(c, b) {
                    rhs = &rhs + terms.term_idx(c);
                }
            }
            lhs != rhs
        };
        let mut out = Vec::new();
        for a in 0..self.poset.len() {
            for b in a..self.poset.len() {
                if fails(a, b) || fails(b, a) {
                    out.push((
                        self.poset.element(a).to_string(),
                        self.poset.element(b).to_string(),
                    ));
                }
            }
        }
        out
    }

    /// Intersection test along an independent route: for every `b`, the
    /// Möbius transform of the transported family `a ↦ π_a(π_b v)` must be
    /// supported on the down-set of `b`, for every basis vector `v`.
    ///
    /// Mathematically equivalent to [`Self::satisfies_intersection`], but
    /// computed through the coefficient-family transforms instead of matrix
    /// products, so the two routes cross-validate each other.
    pub fn satisfies_intersection_support_form(&self) -> bool {
        for b in 0..self.poset.len() {
            for i in 0..self.dim {
                let mut basis_vec = vec![Rat::zero(); self.dim];
                basis_vec[i] = rat_int(1);
                let transported = self.pi[b].apply(&basis_vec);
                let family: Vec<Vec<Rat>> = self.pi.iter().map(|p| p.apply(&transported)).collect();
                let inverted = self
                    .poset
                    .mobius_apply(&family)
                    .expect("family built from the poset has matching shape");
                for c in 0..self.poset.len() {
                    if !self.poset.leq_idx(c, b) && inverted[c].iter().any(|x| !x.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Decomposes the family into interaction subspaces, or reports the
    /// first pair at which the intersection identity fails.
    ///
    /// On success the result carries `S_a = im s_a` for every element plus
    /// `S_⊤ = im s_⊤`, and `certified` records that the terms were verified
    /// to be mutually annihilating projectors whose images sum directly to
    /// the whole space.
    pub fn decompose(&self) -> Result<Decomposition, NotDecomposable> {
        let terms = self.interaction_terms();
        if let Some((a, b)) = self.intersection_witness_with(&terms) {
            return Err(NotDecomposable {
                left: self.poset.element(a).to_string(),
                right: self.poset.element(b).to_string(),
            });
        }
        let mut certified = true;
        // δ-orthogonality over A ∪ {⊤}: s_x·s_y = [x = y]·s_x.
        let n = self.poset.len();
        let all: Vec<&Matrix> = terms
            .terms
            .iter()
            .chain(std::iter::once(&terms.top))
            .collect();
        for (x, sx) in all.iter().enumerate() {
            for (y, sy) in all.iter().enumerate() {
                let prod = *sx * *sy;
                let expected = if x == y {
                    (*sx).clone()
                } else {
                    Matrix::zeros(self.dim, self.dim)
                };
                if prod != expected {
                    certified = false;
                }
            }
        }
        let subspaces: Vec<Subspace> = (0..n).map(|a| Subspace::image(&terms.terms[a])).collect();
        let top_subspace = Subspace::image(&terms.top);
        let mut spanning: Vec<Subspace> = subspaces.clone();
        spanning.push(top_subspace.clone());
        if !Subspace::direct_sum_is_ambient(&spanning) {
            certified = false;
        }
        Ok(Decomposition {
            poset: self.poset.clone(),
            dim: self.dim,
            terms,
            subspaces,
            top_subspace,
            certified,
        })
    }
}

/// The Möbius inversion of a projector family: one term per poset element
/// plus the top remainder. Summing terms over a down-set reconstructs the
/// original projector: `Σ_{b ≤ a} s_b = π_a`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InteractionTerms {
    poset: FinitePoset,
    dim: usize,
    terms: Vec<Matrix>,
    top: Matrix,
}

impl InteractionTerms {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn term_idx(&self, a: usize) -> &Matrix {
        &self.terms[a]
    }

    pub fn term(&self, a: &str) -> Result<&Matrix, PosetError> {
        Ok(&self.terms[self.poset.index_of(a)?])
    }

    /// The remainder term for the adjoined top: `id − Σ_a s_a`.
    pub fn top(&self) -> &Matrix {
        &self.top
    }

    /// Recomputes `Σ_{b ≤ a} s_b`, which equals `π_a` for the family the
    /// terms came from.
    pub fn sum_over_down_set(&self, a: usize) -> Matrix {
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for b in self.poset.down_set_idx(a) {
            acc = &acc + &self.terms[b];
        }
        acc
    }
}

/// A certified decomposition of ℚⁿ into interaction subspaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    poset: FinitePoset,
    dim: usize,
    terms: InteractionTerms,
    subspaces: Vec<Subspace>,
    top_subspace: Subspace,
    certified: bool,
}

impl Decomposition {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &InteractionTerms {
        &self.terms
    }

    pub fn subspace_idx(&self, a: usize) -> &Subspace {
        &self.subspaces[a]
    }

    pub fn subspace(&self, a: &str) -> Result<&Subspace, PosetError> {
        Ok(&self.subspaces[self.poset.index_of(a)?])
    }

    /// The complement subspace attached to the adjoined top.
    pub fn top_subspace(&self) -> &Subspace {
        &self.top_subspace
    }

    /// True when the certificate checks passed: terms are mutually
    /// annihilating projectors and their images sum directly to ℚⁿ.
    pub fn certified(&self) -> bool {
        self.certified
    }

    /// Dimensions of the subspaces in element order, the top last, keyed by
    /// element id.
    pub fn dims(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = self
            .poset
            .elements()
            .iter()
            .zip(&self.subspaces)
            .map(|(e, s)| (e.clone(), s.dim()))
            .collect();
        out.push((TOP_ID.to_string(), self.top_subspace.dim()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn diag(entries: &[i64]) -> Matrix {
        Matrix::diagonal(&entries.iter().map(|&x| rat_int(x)).collect::<Vec<_>>())
    }

    /// Three-element poset 0 ≤ 1, 0 ≤ 1' with diagonal projectors: the
    /// canonical decomposable example.
    fn fork_poset() -> FinitePoset {
        FinitePoset::from_relations(
            vec!["0".into(), "1".into(), "1'".into()],
            &[("0", "1"), ("0", "1'")],
        )
        .unwrap()
    }

    fn fork_family() -> ProjectorFamily {
        ProjectorFamily::new(
            fork_poset(),
            3,
            vec![diag(&[1, 0, 0]), diag(&[1, 1, 0]), diag(&[1, 0, 1])],
        )
        .unwrap()
    }

    /// Same poset, but the two middle projectors overlap in direction e2:
    /// π_1' maps e2 ↦ e2+e3, so im π_1 ∩ im π_1' is larger than im π_0.
    fn overlapping_family() -> ProjectorFamily {
        let pi_fork = Matrix::from_rows(vec![
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
        ]);
        ProjectorFamily::new(
            fork_poset(),
            3,
            vec![diag(&[1, 0, 0]), diag(&[1, 1, 0]), pi_fork],
        )
        .unwrap()
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let p = fork_poset();
        let err = ProjectorFamily::new(p.clone(), 3, vec![diag(&[1, 0, 0])]).unwrap_err();
        assert!(matches!(err, ProjectorError::FamilySize { .. }));
        let err = ProjectorFamily::new(
            p.clone(),
            3,
            vec![diag(&[1, 0]), diag(&[1, 1, 0]), diag(&[1, 0, 1])],
        )
        .unwrap_err();
        assert!(matches!(err, ProjectorError::WrongShape { .. }));
        let shear = Matrix::from_rows(vec![
            vec![rat_int(1), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1)],
        ]);
        let err = ProjectorFamily::new(p, 3, vec![diag(&[1, 0, 0]), shear, diag(&[1, 0, 1])])
            .unwrap_err();
        assert_eq!(
            err,
            ProjectorError::NotIdempotent {
                element: "1".into()
            }
        );
    }

    #[test]
    fn functorial_and_presheafable_on_the_fork() {
        let f = fork_family();
        assert!(f.is_functorial());
        assert!(f.is_presheafable());
    }

    #[test]
    fn functoriality_fails_when_images_do_not_nest() {
        // π_0 projects onto e1 but π_1 projects onto e2: im π_0 ⊄ im π_1.
        let p = FinitePoset::chain(2);
        let f = ProjectorFamily::new(p, 2, vec![diag(&[1, 0]), diag(&[0, 1])]).unwrap();
        assert!(!f.is_functorial());
        assert!(!f.is_presheafable());
    }

    #[test]
    fn presheafable_but_not_functorial() {
        // π_0 kills e2 and keeps e1+e2 ↦ e1: a projector onto e1 along e2.
        // π_1 projects onto span{e1+e2} along e2 … take instead the skew
        // projector pair: π_1 onto span{e1+e2} along e1.
        let p = FinitePoset::chain(2);
        let skew = Matrix::from_rows(vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(1)],
        ]);
        let f = ProjectorFamily::new(p, 2, vec![diag(&[1, 0]), skew]).unwrap();
        // im π_0 = e1 is not fixed by π_1 (π_1 e1 = 0): not functorial.
        assert!(!f.is_functorial());
        // π_0·π_1: e2 ↦ e1+e2 ↦ e1 ≠ π_0 e2 = 0: not presheafable either.
        assert!(!f.is_presheafable());
    }

    #[test]
    fn interaction_terms_on_the_fork() {
        let terms = fork_family().interaction_terms();
        assert_eq!(terms.term("0").unwrap(), &diag(&[1, 0, 0]));
        assert_eq!(terms.term("1").unwrap(), &diag(&[0, 1, 0]));
        assert_eq!(terms.term("1'").unwrap(), &diag(&[0, 0, 1]));
        assert!(terms.top().is_zero());
    }

    #[test]
    fn interaction_terms_on_a_chain_telescope() {
        let p = FinitePoset::chain(3);
        let f = ProjectorFamily::new(
            p,
            3,
            vec![diag(&[1, 0, 0]), diag(&[1, 1, 0]), diag(&[1, 1, 1])],
        )
        .unwrap();
        let terms = f.interaction_terms();
        assert_eq!(terms.term("1").unwrap(), &diag(&[0, 1, 0]));
        assert_eq!(terms.term("2").unwrap(), &diag(&[0, 0, 1]));
        assert!(terms.top().is_zero());
    }

    #[test]
    fn terms_reconstruct_any_family() {
        // Reconstruction Σ_{b ≤ a} s_b = π_a is a pure Möbius identity and
        // holds even for incompatible families.
        let f = overlapping_family();
        let terms = f.interaction_terms();
        for a in 0..f.poset().len() {
            assert_eq!(&terms.sum_over_down_set(a), f.projector_idx(a));
        }
    }

    #[test]
    fn semilattice_and_general_tests_agree_on_the_fork() {
        let good = fork_family();
        assert!(good.satisfies_intersection_semilattice().unwrap());
        assert!(good.satisfies_intersection());
        assert!(good.satisfies_intersection_support_form());

        let bad = overlapping_family();
        assert!(!bad.satisfies_intersection_semilattice().unwrap());
        assert!(!bad.satisfies_intersection());
        assert!(!bad.satisfies_intersection_support_form());
        assert_eq!(bad.intersection_witness_idx(), Some((1, 2)));
    }

    #[test]
    fn semilattice_test_requires_meets() {
        // a, b < c, d: the pair (c, d) has no meet, so the semilattice form
        // refuses to answer while the general form still decides.
        let p = FinitePoset::from_relations(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        // π_a, π_b split ℚ² and both tops see everything: decomposable even
        // though no meet exists (s_c = s_d = s_⊤ = 0, s_a + s_b = id).
        let f = ProjectorFamily::new(
            p.clone(),
            2,
            vec![
                diag(&[1, 0]),
                diag(&[0, 1]),
                Matrix::identity(2),
                Matrix::identity(2),
            ],
        )
        .unwrap();
        assert_eq!(
            f.satisfies_intersection_semilattice().unwrap_err(),
            ProjectorError::NotMeetSemilattice
        );
        assert!(f.satisfies_intersection());
        assert!(f.satisfies_intersection_support_form());
        let d = f.decompose().unwrap();
        assert!(d.certified());
        assert_eq!(d.subspace("c").unwrap().dim(), 0);

        // The all-identity scalar family on the same poset is NOT
        // decomposable: already at (a, b) the product is 1 while a and b
        // share no lower bounds, so the s-sum is empty.
        let id_family = ProjectorFamily::new(p, 1, vec![Matrix::identity(1); 4]).unwrap();
        assert!(!id_family.satisfies_intersection());
        assert!(!id_family.satisfies_intersection_support_form());
        assert_eq!(id_family.intersection_witness_idx(), Some((0, 1)));
    }

    #[test]
    fn decompose_certifies_the_fork() {
        let d = fork_family().decompose().unwrap();
        assert!(d.certified());
        assert_eq!(d.subspace("0").unwrap().dim(), 1);
        assert_eq!(d.subspace("1").unwrap().dim(), 1);
        assert_eq!(d.subspace("1'").unwrap().dim(), 1);
        assert_eq!(d.top_subspace().dim(), 0);
        let e2: Vec<Rat> = vec![rat_int(0), rat_int(1), rat_int(0)];
        assert!(d.subspace("1").unwrap().contains(&e2));
    }

    #[test]
    fn decompose_identity_family_puts_everything_at_the_bottom() {
        // A single element with π = id: S_elem = ℚⁿ and S_⊤ = 0.
        let p = FinitePoset::antichain(1);
        let f = ProjectorFamily::new(p, 2, vec![Matrix::identity(2)]).unwrap();
        let d = f.decompose().unwrap();
        assert!(d.certified());
        assert_eq!(d.subspace("0").unwrap().dim(), 2);
        assert_eq!(d.top_subspace().dim(), 0);
    }

    #[test]
    fn decompose_zero_family_puts_everything_at_the_top() {
        let p = FinitePoset::antichain(1);
        let f = ProjectorFamily::new(p, 2, vec![Matrix::zeros(2, 2)]).unwrap();
        let d = f.decompose().unwrap();
        assert!(d.certified());
        assert_eq!(d.subspace("0").unwrap().dim(), 0);
        assert_eq!(d.top_subspace().dim(), 2);
    }

    #[test]
    fn decompose_reports_minimal_witness() {
        let err = overlapping_family().decompose().unwrap_err();
        assert_eq!(err.left, "1");
        assert_eq!(err.right, "1'");
        // The witness is genuine: recompute both sides at the pair.
        let f = overlapping_family();
        let terms = f.interaction_terms();
        let lhs = f.projector("1").unwrap() * f.projector("1'").unwrap();
        let rhs = terms.term("0").unwrap();
        assert_ne!(&lhs, rhs);
    }

    #[test]
    fn halves_do_not_round() {
        // A projector with entries 1/2: averaging on two points.
        let half = rat(1, 2);
        let avg = Matrix::from_rows(vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), half],
        ]);
        let p = FinitePoset::chain(2);
        let f = ProjectorFamily::new(p, 2, vec![avg, Matrix::identity(2)]).unwrap();
        assert!(f.is_functorial());
        assert!(f.is_presheafable());
        let d = f.decompose().unwrap();
        assert!(d.certified());
        assert_eq!(d.subspace("0").unwrap().dim(), 1);
        assert_eq!(d.subspace("1").unwrap().dim(), 1);
        assert_eq!(d.top_subspace().dim(), 0);
    }
}
