//! Dense matrices over `F_{q²}` and kernels over the subfield `F_q`.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::gf::{Elt, FieldTower};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

/// Result of Gauss–Jordan elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Index<(usize, usize)> for Mat {
    type Output = Elt;
    fn index(&self, (r, c): (usize, usize)) -> &Elt {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Elt {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Elt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Elt::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Elt::ONE;
        }
        m
    }

    /// Builds from equal-length rows; `cols` is needed for the empty case.
    pub fn from_rows(rows: Vec<Vec<Elt>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Mat { rows: r, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    /// `rows × n` matrix with entry `(i, j) = α_j^i`.
    pub fn vandermonde(gf: &FieldTower, alpha: &[Elt], rows: usize) -> Mat {
        Mat::from_fn(rows, alpha.len(), |i, j| gf.pow(alpha[j], i as u64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elt] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Elt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Position of the first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data.iter().position(|e| !e.is_zero()).map(|i| (i / self.cols, i % self.cols))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn map(&self, f: impl Fn(Elt) -> Elt) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&e| f(e)).collect() }
    }

    pub fn mul(&self, gf: &FieldTower, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::LengthMismatch { expected: self.cols, got: rhs.rows });
        }
        Ok(Mat::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(Elt::ZERO, |acc, j| gf.add(acc, gf.mul(self[(r, j)], rhs[(j, c)])))
        }))
    }

    pub fn mul_vec(&self, gf: &FieldTower, v: &[Elt]) -> Result<Vec<Elt>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|r| gf.dot(self.row(r), v)).collect())
    }

    /// Reduced row echelon form, pivoting on the first nonzero entry.
    pub fn rref(&self, gf: &FieldTower) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = gf.inv(m[(r, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = gf.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = gf.mul(factor, m[(r, j)]);
                    m[(i, j)] = gf.sub(m[(i, j)], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self, gf: &FieldTower) -> usize {
        self.rref(gf).rank
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column in ascending order,
    /// each scaled so its first nonzero coordinate is 1.
    pub fn kernel(&self, gf: &FieldTower) -> Vec<Vec<Elt>> {
        let Rref { matrix: r, pivots, .. } = self.rref(gf);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<Elt>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Elt::ZERO; self.cols];
                v[f] = Elt::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = gf.neg(r[(row, f)]);
                }
                let lead = *v.iter().find(|e| !e.is_zero()).expect("v[f] = 1");
                let s = gf.inv(lead).expect("nonzero");
                v.iter().map(|&e| gf.mul(e, s)).collect()
            })
            .collect();
        debug_assert!(basis.iter().all(|b| self.mul_vec(gf, b).unwrap().iter().all(|e| e.is_zero())));
        basis
    }

    /// The `F_q` system equivalent to `Mx = 0` with `x ∈ F_q^cols`: each row
    /// `Σ m_j x_j = 0` splits into its `1`- and `θ`-coordinates, giving a
    /// `2·rows × cols` matrix with entries in `F_q`.
    pub fn split_over_subfield(&self, gf: &FieldTower) -> Mat {
        Mat::from_fn(2 * self.rows, self.cols, |r, c| {
            let (lo, hi) = gf.coords(self[(r / 2, c)]);
            gf.from_coords(if r % 2 == 0 { lo } else { hi }, 0)
        })
    }

    /// An `F_q`-basis of `{x ∈ F_q^cols : Mx = 0}`.
    pub fn subfield_kernel(&self, gf: &FieldTower) -> Vec<Vec<Elt>> {
        // rref of an F_q matrix never leaves F_q, so the kernel basis is over F_q
        let basis = self.split_over_subfield(gf).kernel(gf);
        debug_assert!(basis.iter().flatten().all(|&e| gf.is_in_base_field(e)));
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn f9() -> FieldTower {
        FieldTower::new(3, 1).unwrap()
    }

    fn fourth_roots(t: &FieldTower) -> Vec<Elt> {
        let th = t.theta();
        vec![Elt::ONE, t.from_int(2), th, t.mul(t.from_int(2), th)]
    }

    #[test]
    fn vandermonde_examples() {
        let t = f9();
        let v = Mat::vandermonde(&t, &[Elt::ZERO, Elt::ONE], 2);
        assert_eq!(v, Mat::from_rows(vec![vec![Elt::ONE, Elt::ONE], vec![Elt::ZERO, Elt::ONE]], 2).unwrap());
        let alpha = fourth_roots(&t);
        assert!(Mat::vandermonde(&t, &alpha, 1).data().iter().all(|&e| e == Elt::ONE));
    }

    #[test]
    fn vandermonde_columns_are_companion_eigenvectors() {
        let t = f9();
        let alpha = fourth_roots(&t);
        let v = Mat::vandermonde(&t, &alpha, 4);
        // companion matrix of x⁴ − 1: superdiagonal ones, last row (1, 0, 0, 0)
        let mut comp = Mat::zeros(4, 4);
        for i in 0..3 {
            comp[(i, i + 1)] = Elt::ONE;
        }
        comp[(3, 0)] = Elt::ONE;
        let tv = comp.mul(&t, &v).unwrap();
        for (j, &a) in alpha.iter().enumerate() {
            for i in 0..4 {
                assert_eq!(tv[(i, j)], t.mul(a, v[(i, j)]));
            }
        }
    }

    #[test]
    fn rref_examples() {
        let t = f9();
        let id = Mat::identity(3);
        let r = id.rref(&t);
        assert_eq!((r.matrix, r.rank), (id, 3));
        let z = Mat::zeros(2, 3);
        let r = z.rref(&t);
        assert_eq!((r.matrix, r.rank), (z, 0));
        let alpha: Vec<Elt> = t.elements().take(6).collect();
        assert_eq!(Mat::vandermonde(&t, &alpha, 6).rank(&t), 6);
    }

    #[test]
    fn kernel_examples() {
        let t = f9();
        assert!(Mat::vandermonde(&t, &fourth_roots(&t), 4).kernel(&t).is_empty());
        let one_one = Mat::from_rows(vec![vec![Elt::ONE, Elt::ONE]], 2).unwrap();
        assert_eq!(one_one.kernel(&t), vec![vec![Elt::ONE, t.from_int(-1)]]);
        let alpha = fourth_roots(&t);
        assert_eq!(Mat::vandermonde(&t, &alpha, 2).kernel(&t).len(), 2);
    }

    #[test]
    fn subfield_kernel_examples() {
        let t = f9();
        let one_one = Mat::from_rows(vec![vec![Elt::ONE, Elt::ONE]], 2).unwrap();
        let k = one_one.subfield_kernel(&t);
        assert_eq!(k, vec![vec![Elt::ONE, t.from_int(2)]]);
        assert!(k[0].iter().all(|e| !e.is_zero()));
        let one_theta = Mat::from_rows(vec![vec![Elt::ONE, t.theta()]], 2).unwrap();
        assert!(one_theta.subfield_kernel(&t).is_empty());
        // over F_{q²} the same row does have a kernel
        assert_eq!(one_theta.kernel(&t).len(), 1);
    }

    #[test]
    fn kernel_of_wide_vandermonde_annihilates() {
        let t = f9();
        let alpha = fourth_roots(&t);
        let g = Poly::from_roots(&t, &alpha).unwrap();
        let v = Mat::vandermonde(&t, &alpha, 3);
        let k = v.kernel(&t);
        assert_eq!(k.len(), 1);
        // the dual multipliers 1/G'(α_i) span that kernel
        let d = g.derivative(&t);
        let u: Vec<Elt> = alpha.iter().map(|&a| t.inv(d.eval(&t, a)).unwrap()).collect();
        let s = t.inv(u[0]).unwrap();
        let u: Vec<Elt> = u.iter().map(|&x| t.mul(x, s)).collect();
        assert_eq!(k[0], u);
    }
}
