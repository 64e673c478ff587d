use super::{AlgebraError, Field, Matrix};

/// A linear subspace of `K^n`, stored as its reduced row-echelon basis.
///
/// The basis is canonical, so two subspaces are equal exactly when their
/// bases are equal entry by entry; `PartialEq` is that comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

/// Row space of `m` in canonical form.
pub fn rref<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::row_space(m)
}

impl<F: Field> Subspace<F> {
    pub fn row_space(m: &Matrix<F>) -> Self {
        let mut basis = m.clone();
        let pivots = basis.rref_in_place();
        Subspace { ambient_dim: m.cols(), basis, pivots }
    }

    pub fn zero(field: F, n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: F, n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn span(field: F, n: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self, AlgebraError> {
        Ok(Self::row_space(&Matrix::from_rows(field, n, vectors)?))
    }

    /// The subspace cut out by `constraints · x = 0`.
    pub fn from_constraints(constraints: &Matrix<F>) -> Self {
        kernel(constraints)
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[F::Elem]> {
        self.basis.row_iter()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_same_ambient(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(AlgebraError::DimensionMismatch { left: self.ambient_dim, right: other.ambient_dim });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> Result<bool, AlgebraError> {
        if v.len() != self.ambient_dim {
            return Err(AlgebraError::DimensionMismatch { left: self.ambient_dim, right: v.len() });
        }
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate().skip(p) {
                w[j] = f.sub(&w[j], &f.mul(&c, b));
            }
        }
        Ok(w.iter().all(|e| f.is_zero(e)))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool, AlgebraError> {
        self.check_same_ambient(other)?;
        for v in other.basis_vectors() {
            if !self.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rows spanning the space of linear functionals vanishing on `self`.
    pub fn annihilator(&self) -> Matrix<F> {
        kernel(&self.basis).basis
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_ambient(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let stacked = self.annihilator().vstack(&other.annihilator())?;
        Ok(kernel(&stacked))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_ambient(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Direct product `self × other` inside `K^(n+m)`.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.ambient_dim, other.ambient_dim);
        let f = self.field().clone();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for v in self.basis_vectors() {
            let mut r = v.to_vec();
            r.resize(n + m, f.zero());
            rows.push(r);
        }
        for v in other.basis_vectors() {
            let mut r = vec![f.zero(); n];
            r.extend_from_slice(v);
            rows.push(r);
        }
        // already in canonical form: pivots of the two blocks stay ordered
        let basis = Matrix::from_rows(f, n + m, rows).expect("rows have ambient length");
        let pivots = self.pivots.iter().copied().chain(other.pivots.iter().map(|p| p + n)).collect();
        Subspace { ambient_dim: n + m, basis, pivots }
    }

    /// Image under the coordinate projection onto `coords` (in that order).
    pub fn restrict(&self, coords: &[usize]) -> Self {
        let selected = self.basis.select_columns(coords);
        let mut s = Self::row_space(&selected);
        s.ambient_dim = coords.len();
        s
    }

    /// `{x ∈ self : x|coords ∈ sub}`.
    pub fn constrain(&self, coords: &[usize], sub: &Self) -> Result<Self, AlgebraError> {
        if coords.len() != sub.ambient_dim {
            return Err(AlgebraError::DimensionMismatch { left: coords.len(), right: sub.ambient_dim });
        }
        if sub.is_full() {
            return Ok(self.clone());
        }
        let f = self.field().clone();
        let ann = sub.annihilator();
        let mut rows = Vec::with_capacity(ann.rows());
        for a in ann.row_iter() {
            let mut r = vec![f.zero(); self.ambient_dim];
            for (k, &c) in coords.iter().enumerate() {
                r[c] = a[k].clone();
            }
            rows.push(r);
        }
        let extra = Matrix::from_rows(f, self.ambient_dim, rows)?;
        let stacked = self.annihilator().vstack(&extra)?;
        Ok(kernel(&stacked))
    }
}

/// Null space `{x : m·x = 0}`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let f = m.field().clone();
    let n = m.cols();
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut rows = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(r.get(i, free));
        }
        rows.push(v);
    }
    let basis = Matrix::from_rows(f, n, rows).expect("kernel vectors have length n");
    Subspace::row_space(&basis)
}

/// `{m·v : v ∈ s}`.
pub fn image<F: Field>(m: &Matrix<F>, s: &Subspace<F>) -> Result<Subspace<F>, AlgebraError> {
    if m.cols() != s.ambient_dim() {
        return Err(AlgebraError::DimensionMismatch { left: m.cols(), right: s.ambient_dim() });
    }
    let mapped = s.basis().mul(&m.transpose())?;
    let mut out = Subspace::row_space(&mapped);
    out.ambient_dim = m.rows();
    Ok(out)
}

/// One solution of `m·x = rhs`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, rhs: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, AlgebraError> {
    if rhs.len() != m.rows() {
        return Err(AlgebraError::DimensionMismatch { left: m.rows(), right: rhs.len() });
    }
    let f = m.field().clone();
    let n = m.cols();
    let rows = m
        .row_iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.to_vec();
            r.push(b.clone());
            r
        })
        .collect();
    let mut aug = Matrix::from_rows(f.clone(), n + 1, rows)?;
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![f.zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(i, n).clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = gf(2);
        let id = rref(&Matrix::identity(f, 2));
        assert_eq!(id.dim(), 2);
        assert_eq!(id.basis(), &Matrix::identity(f, 2));
        let z = rref(&Matrix::zeros(f, 2, 2));
        assert_eq!(z.dim(), 0);
    }

    #[test]
    fn rref_repeated_row() {
        // row space of [[1,1],[1,1]] over GF(2) is {00, 11}
        let s = rref(&Matrix::from_i64(gf(2), &[&[1, 1], &[1, 1]]));
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &Matrix::from_i64(gf(2), &[&[1, 1]]));
    }

    #[test]
    fn rref_idempotent() {
        let f = gf(3);
        let s = rref(&Matrix::from_i64(f, &[&[2, 1, 0], &[1, 1, 1], &[0, 2, 2]]));
        assert_eq!(rref(s.basis()), s);
    }

    #[test]
    fn intersect_examples() {
        let f = gf(2);
        let full = Subspace::full(f, 3);
        let b = Subspace::span(f, 3, vec![vec![1, 1, 0]]).unwrap();
        assert_eq!(full.intersect(&b).unwrap(), b);

        let q = Rationals;
        let l1 = Subspace::span(q, 2, vec![vec![q.from_i64(1), q.from_i64(0)]]).unwrap();
        let l2 = Subspace::span(q, 2, vec![vec![q.from_i64(1), q.from_i64(1)]]).unwrap();
        assert!(l1.intersect(&l2).unwrap().is_zero());

        // brute-force: the two planes share only (0,1,0) besides zero
        let a = Subspace::span(f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let c = Subspace::span(f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let i = a.intersect(&c).unwrap();
        assert_eq!(i, Subspace::span(f, 3, vec![vec![0, 1, 0]]).unwrap());
        assert!(matches!(a.intersect(&Subspace::full(f, 2)), Err(AlgebraError::DimensionMismatch { .. })));
    }

    #[test]
    fn kernel_and_image_examples() {
        let f = gf(2);
        assert!(kernel(&Matrix::identity(f, 3)).is_zero());
        let z = Matrix::zeros(f, 2, 3);
        assert!(image(&z, &Subspace::full(f, 3)).unwrap().is_zero());
        let k = kernel(&Matrix::from_i64(f, &[&[1, 1]]));
        assert_eq!(k, Subspace::span(f, 2, vec![vec![1, 1]]).unwrap());
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = gf(3);
        let m = Matrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        let x = solve(&m, &[2, 1]).unwrap().unwrap();
        assert_eq!(m.apply(&x).unwrap(), vec![2, 1]);
        let singular = Matrix::from_i64(f, &[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&singular, &[0, 1]).unwrap(), None);
        assert!(solve(&m, &[1]).is_err());
    }

    #[test]
    fn product_is_block_diagonal() {
        let f = gf(2);
        let a = Subspace::span(f, 2, vec![vec![1, 1]]).unwrap();
        let b = Subspace::full(f, 1);
        let p = a.product(&b);
        assert_eq!(p.ambient_dim(), 3);
        assert_eq!(p, Subspace::span(f, 3, vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap());
    }

    #[test]
    fn restrict_and_constrain() {
        let f = gf(2);
        let s = Subspace::span(f, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert!(s.restrict(&[0, 2]).is_full());
        let only_zero_first = Subspace::zero(f, 1);
        let c = s.constrain(&[0], &only_zero_first).unwrap();
        assert_eq!(c, Subspace::span(f, 3, vec![vec![0, 1, 1]]).unwrap());
    }

    #[test]
    fn annihilator_double_dual() {
        let f = gf(3);
        let s = Subspace::span(f, 4, vec![vec![1, 2, 0, 1], vec![0, 1, 1, 2]]).unwrap();
        assert_eq!(Subspace::from_constraints(&s.annihilator()), s);
        assert_eq!(Subspace::<PrimeField>::zero(f, 4).annihilator().rows(), 4);
    }
}
