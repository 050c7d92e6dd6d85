//! Linear subspaces of ℚⁿ with a canonical basis.
//!
//! A subspace is stored as the reduced row echelon form of any spanning set,
//! one basis vector per row. Because the reduced form is canonical, two
//! subspaces are equal as sets exactly when their stored bases are equal,
//! so `==` is genuine subspace equality.

use num_traits::Zero;

use super::matrix::Matrix;
use super::rat::Rat;

/// A subspace of ℚⁿ, represented by its canonical (rref) basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Basis vectors as rows, in reduced row echelon form with no zero rows.
    basis: Matrix,
    /// Pivot column of each basis row.
    pivots: Vec<usize>,
}

impl Subspace {
    /// The zero subspace of ℚⁿ.
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    /// The whole of ℚⁿ.
    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (red, pivots) = m.rref_with_pivots();
        let rank = pivots.len();
        Subspace {
            ambient: m.cols(),
            basis: red.submatrix(0, rank, 0, m.cols()),
            pivots,
        }
    }

    /// Span of the columns of `m` — the image of `m` as a linear map.
    pub fn image(m: &Matrix) -> Self {
        Subspace::row_space(&m.transpose())
    }

    /// Null space of `m`.
    pub fn kernel(m: &Matrix) -> Self {
        Subspace::row_space(&m.kernel_basis())
    }

    /// Span of a list of vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        Subspace::row_space(&Matrix::from_rows(vectors.to_vec()))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// True when `v` lies in the subspace.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not
    /// in the subspace. Because the basis is in reduced form, the coordinate
    /// of basis row `i` can be read off at that row's pivot column.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient, "vector has wrong ambient dimension");
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        // Verify that the pivot coordinates actually reproduce v.
        for c in 0..self.ambient {
            let mut acc = Rat::zero();
            for (i, coef) in coords.iter().enumerate() {
                acc += coef * self.basis.get(i, c);
            }
            if acc != v[c] {
                return None;
            }
        }
        Some(coords)
    }

    /// Expresses each column of `m` in this subspace's basis, producing the
    /// matrix of the corestriction `ℚᵏ → self`. `None` if some column of `m`
    /// falls outside the subspace.
    pub fn corestrict_columns(&self, m: &Matrix) -> Option<Matrix> {
        assert_eq!(
            m.rows(),
            self.ambient,
            "column space has wrong ambient dimension"
        );
        let mut cols = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            cols.push(self.coordinates(&m.col(c))?);
        }
        let coord = Matrix::from_fn(self.dim(), m.cols(), |r, c| cols[c][r].clone());
        Some(coord)
    }

    /// True when `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        (0..self.basis.rows()).all(|r| other.contains(self.basis.row(r)))
    }

    /// Sum of subspaces (the span of their union).
    pub fn sum(spaces: &[Subspace]) -> Subspace {
        assert!(!spaces.is_empty(), "sum of no subspaces is ambiguous");
        let ambient = spaces[0].ambient;
        let stacked: Vec<Matrix> = spaces
            .iter()
            .map(|s| {
                assert_eq!(s.ambient, ambient, "ambient dimension mismatch");
                s.basis.clone()
            })
            .collect();
        Subspace::row_space(&Matrix::vstack(&stacked))
    }

    /// True when the listed subspaces form a direct sum equal to all of ℚⁿ:
    /// concatenated bases have rank equal to both the dimension sum and the
    /// ambient dimension.
    pub fn direct_sum_is_ambient(spaces: &[Subspace]) -> bool {
        assert!(
            !spaces.is_empty(),
            "direct sum of no subspaces is ambiguous"
        );
        let ambient = spaces[0].ambient;
        for s in spaces {
            assert_eq!(s.ambient, ambient, "ambient dimension mismatch");
        }
        let total: usize = spaces.iter().map(Subspace::dim).sum();
        if total != ambient {
            return false;
        }
        Subspace::sum(spaces).dim() == ambient
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::rat_int;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn span_canonicalizes() {
        let s1 = Subspace::span(3, &vecs(&[&[1, 1, 0], &[0, 0, 1]]));
        let s2 = Subspace::span(3, &vecs(&[&[1, 1, 1], &[2, 2, 1]]));
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
    }

    #[test]
    fn membership_and_coordinates() {
        let s = Subspace::span(3, &vecs(&[&[1, 0, 1], &[0, 1, 1]]));
        let v: Vec<Rat> = vecs(&[&[2, 3, 5]]).remove(0);
        let coords = s.coordinates(&v).unwrap();
        assert_eq!(coords, vec![rat_int(2), rat_int(3)]);
        let w: Vec<Rat> = vecs(&[&[1, 0, 0]]).remove(0);
        assert!(!s.contains(&w));
    }

    #[test]
    fn image_and_kernel_split_dimensions() {
        let m = Matrix::from_rows(vecs(&[&[1, 0, 1], &[0, 0, 0], &[1, 0, 1]]));
        let im = Subspace::image(&m);
        let ker = Subspace::kernel(&m);
        assert_eq!(im.dim(), 1);
        assert_eq!(ker.dim(), 2);
        assert_eq!(im.dim() + ker.dim(), m.cols());
    }

    #[test]
    fn direct_sum_checks() {
        let e1 = Subspace::span(2, &vecs(&[&[1, 0]]));
        let e2 = Subspace::span(2, &vecs(&[&[0, 1]]));
        let diag = Subspace::span(2, &vecs(&[&[1, 1]]));
        assert!(Subspace::direct_sum_is_ambient(&[e1.clone(), e2.clone()]));
        assert!(Subspace::direct_sum_is_ambient(&[e1.clone(), diag.clone()]));
        // Overlapping spans: ranks collapse.
        assert!(!Subspace::direct_sum_is_ambient(&[e1.clone(), e2, diag]));
        // Dimension shortfall.
        assert!(!Subspace::direct_sum_is_ambient(&[e1]));
        // Zero summands are harmless.
        let z = Subspace::zero(2);
        assert!(Subspace::direct_sum_is_ambient(&[Subspace::full(2), z]));
    }

    #[test]
    fn containment() {
        let line = Subspace::span(3, &vecs(&[&[1, 1, 0]]));
        let plane = Subspace::span(3, &vecs(&[&[1, 0, 0], &[0, 1, 0]]));
        assert!(line.is_subspace_of(&plane));
        assert!(!plane.is_subspace_of(&line));
        assert!(Subspace::zero(3).is_subspace_of(&line));
    }

    #[test]
    fn corestriction_matrix() {
        let s = Subspace::span(3, &vecs(&[&[1, 0, 1], &[0, 1, 1]]));
        // Map ℚ¹ → ℚ³ sending e1 to (1, 2, 3) = 1·b1 + 2·b2.
        let m = Matrix::from_rows(vecs(&[&[1], &[2], &[3]]));
        let core = s.corestrict_columns(&m).unwrap();
        assert_eq!(core, Matrix::from_rows(vecs(&[&[1], &[2]])));
        // A column outside the subspace is rejected.
        let bad = Matrix::from_rows(vecs(&[&[1], &[0], &[0]]));
        assert!(s.corestrict_columns(&bad).is_none());
    }
}
