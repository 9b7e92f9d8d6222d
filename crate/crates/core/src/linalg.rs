//! Dense exact linear algebra: Gauss-Jordan elimination, kernels and
//! subspaces of `k^n` stored in reduced row echelon form.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatK {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl MatK {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        MatK {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(cols: usize, field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::AmbientMismatch(cols, row.len()));
            }
            if row.iter().any(|s| s.field() != field) {
                return Err(Error::FieldMismatch);
            }
            data.extend(row);
        }
        Ok(MatK {
            rows: nrows,
            cols,
            field,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows).map(|r| dot(self.row(r), v, self.field)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form, its rank and the pivot columns.
    ///
    /// Over the rationals the pivot row is the candidate with the fewest
    /// nonzero entries (then the smallest coefficient heights).
    pub fn rref(&self) -> (MatK, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let candidates = (r..m.rows).filter(|&i| !m.get(i, c).is_zero());
            let best = match m.field {
                Field::Prime(_) => candidates.min(),
                Field::Rational => candidates.min_by_key(|&i| {
                    let row = m.row(i);
                    let nnz = row.iter().filter(|s| !s.is_zero()).count();
                    let height: u64 = row.iter().map(Scalar::height).sum();
                    (nnz, height, i)
                }),
            };
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Right null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, rank, pivots) = self.rref();
        let field = self.field;
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, field, basis).expect("kernel vectors have ambient size")
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Subspace of `k^n`, stored as the nonzero rows of its reduced row echelon
/// form. Two subspaces are equal exactly when these rows coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: MatK,
}

impl Subspace {
    pub fn zero(ambient: usize, field: Field) -> Self {
        Subspace {
            ambient,
            basis: MatK::zeros(0, ambient, field),
        }
    }

    pub fn full(ambient: usize, field: Field) -> Self {
        Subspace {
            ambient,
            basis: MatK::identity(ambient, field),
        }
    }

    pub fn from_spanning(ambient: usize, field: Field, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = MatK::from_rows(ambient, field, vectors)?;
        let (r, rank, _) = m.rref();
        Ok(Subspace {
            ambient,
            basis: MatK::from_rows(ambient, field, r.to_rows().into_iter().take(rank).collect())?,
        })
    }

    /// Accepts rows only if they already are a reduced row echelon basis.
    pub fn from_rref_rows(ambient: usize, field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = MatK::from_rows(ambient, field, rows)?;
        let canonical = Self::from_spanning(ambient, field, m.to_rows())?;
        if canonical.basis != m {
            return Err(Error::Json("subspace rows are not in reduced row echelon form".into()));
        }
        Ok(canonical)
    }

    pub fn coordinate(ambient: usize, field: Field, indices: &[usize]) -> Self {
        let rows = indices
            .iter()
            .map(|&i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Self::from_spanning(ambient, field, rows).expect("unit vectors")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.to_rows()
    }

    pub fn basis_matrix(&self) -> &MatK {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut rows = self.basis();
        rows.push(v.to_vec());
        MatK::from_rows(self.ambient, self.field(), rows)
            .map(|m| m.rank() == self.dim())
            .unwrap_or(false)
    }

    /// Vectors `a` with `a . u = 0` for all `u` in the subspace.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        let mut constraints = self.annihilator().basis();
        constraints.extend(other.annihilator().basis());
        Ok(MatK::from_rows(self.ambient, self.field(), constraints)?.kernel())
    }

    /// Intersection with the span of the given standard basis vectors.
    pub fn restrict_to_coordinates(&self, indices: &[usize]) -> Result<Subspace> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.ambient) {
            return Err(Error::AmbientMismatch(self.ambient, bad + 1));
        }
        self.intersect(&Subspace::coordinate(self.ambient, self.field(), indices))
    }
}

/// Incrementally built echelon basis used for membership of vectors in a
/// growing span. Each inserted row is reduced against all earlier rows, so
/// reducing a vector row by row in insertion order clears every pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    width: usize,
    field: Field,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new(width: usize, field: Field) -> Self {
        EchelonBasis {
            width,
            field,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inverse().expect("nonzero");
        let r: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
        self.rows.push((p, r));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> MatK {
        let f = Field::Rational;
        let cols = rows.first().map_or(0, |r| r.len());
        MatK::from_rows(
            cols,
            f,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn v(field: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = MatK::identity(3, Field::Rational);
        assert_eq!(id.rref(), (id.clone(), 3, vec![0, 1, 2]));
        let (r, rank, _) = q(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, q(&[&[1, 2], &[0, 0]]));
        assert_eq!(rank, 1);
        let z = MatK::zeros(2, 3, Field::Rational);
        assert_eq!(z.rref().1, 0);
        assert_eq!(z.rref().0, z);
    }

    #[test]
    fn kernel_examples() {
        let f = Field::Rational;
        let k = q(&[&[1, 0, 0]]).kernel();
        assert_eq!(k.dim(), 2);
        assert_eq!(k, Subspace::coordinate(3, f, &[1, 2]));
        assert!(MatK::identity(4, f).kernel().is_zero());

        let f2 = Field::Prime(2); // constructed directly: F_2 is outside the admissible range
        let m = MatK::from_rows(2, f2, vec![v(f2, &[1, 1]), v(f2, &[1, -1])]).unwrap();
        let k = m.kernel();
        assert_eq!(k.basis(), vec![v(f2, &[1, 1])]);
    }

    #[test]
    fn intersect_examples() {
        let f = Field::Rational;
        let a1 = Subspace::coordinate(5, f, &[1, 2, 3, 4]);
        let a5 = Subspace::coordinate(5, f, &[0, 1, 2, 3]);
        assert_eq!(a1.intersect(&a5).unwrap().dim(), 3);
        assert_eq!(a1.intersect(&a1).unwrap(), a1);
        let other = Subspace::full(4, f);
        assert!(matches!(a1.intersect(&other), Err(Error::AmbientMismatch(5, 4))));
    }

    #[test]
    fn restrict_examples() {
        let f = Field::Rational;
        let u = Subspace::from_spanning(3, f, vec![v(f, &[1, 0, 1])]).unwrap();
        assert!(u.restrict_to_coordinates(&[0, 1]).unwrap().is_zero());
        assert_eq!(
            Subspace::full(3, f).restrict_to_coordinates(&[1]).unwrap(),
            Subspace::coordinate(3, f, &[1])
        );
        let plane = Subspace::coordinate(3, f, &[1, 2]);
        assert_eq!(plane.restrict_to_coordinates(&[1, 2]).unwrap(), plane);
    }

    #[test]
    fn rref_rows_validation() {
        let f = Field::Rational;
        assert!(Subspace::from_rref_rows(2, f, vec![v(f, &[1, 2])]).is_ok());
        assert!(Subspace::from_rref_rows(2, f, vec![v(f, &[2, 4])]).is_err());
        assert!(Subspace::from_rref_rows(2, f, vec![v(f, &[0, 1]), v(f, &[1, 0])]).is_err());
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = MatK> {
        proptest::collection::vec(-2i64..3, rows * cols).prop_map(move |xs| {
            let f = Field::Rational;
            MatK::from_rows(cols, f, xs.chunks(cols).map(|c| v(f, c)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn kernel_is_consistent(m in arb_matrix(3, 5)) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.dim(), m.cols());
            for b in k.basis() {
                prop_assert!(m.mul_vec(&b).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn intersection_dimension_bound(a in arb_matrix(3, 5), b in arb_matrix(3, 5)) {
            let f = Field::Rational;
            let u = Subspace::from_spanning(5, f, a.to_rows()).unwrap();
            let w = Subspace::from_spanning(5, f, b.to_rows()).unwrap();
            let i = u.intersect(&w).unwrap();
            prop_assert!(i.dim() + 5 >= u.dim() + w.dim());
            for x in i.basis() {
                prop_assert!(u.contains(&x) && w.contains(&x));
            }
        }

        #[test]
        fn canonical_under_change_of_spanning_set(a in arb_matrix(3, 4), c in -3i64..4) {
            let f = Field::Rational;
            let rows = a.to_rows();
            let u = Subspace::from_spanning(4, f, rows.clone()).unwrap();
            // add a combination of the first two rows and permute
            let extra: Vec<Scalar> = rows[0].iter().zip(&rows[1])
                .map(|(x, y)| x + &(&f.from_i64(c) * y)).collect();
            let mut shuffled = vec![extra, rows[2].clone(), rows[1].clone(), rows[0].clone()];
            shuffled.rotate_left(1);
            prop_assert_eq!(Subspace::from_spanning(4, f, shuffled).unwrap(), u);
        }
    }
}
