//! Dense exact linear algebra over the rationals, plus a tiny Smith normal
//! form for integer matrices. Sizes here are small (rank at most ~10 for
//! lattice work, a few dozen for cyclotomic basis solves), so plain Gaussian
//! elimination with exact arithmetic is entirely adequate.

use super::Rat;
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Row-major dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<Rat>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, a: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        RatMat { rows: r, cols: c, a: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = RatMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let s = &self[(i, k)];
                if s.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = s * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    s += &self[(i, j)] * &v[j];
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &f * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Solve `self * x = b`; `None` if inconsistent. Free variables are set
    /// to zero, so the answer is one particular solution.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut aug = RatMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(RatMat::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= m[(c, c)].clone();
            let inv = m[(c, c)].recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let v = &m[(i, j)] - &f * &m[(c, j)];
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.a[i * self.cols + j]
    }
}

/// Invariant factors (the nonzero diagonal of the Smith normal form, each
/// dividing the next) of a small integer matrix. Used to extract abelian
/// group structure from relation matrices.
pub fn smith_invariant_factors(mat: &[Vec<i64>]) -> Vec<u64> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut a: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut top = 0;
    while top < rows && top < cols {
        // Find a nonzero entry to pivot on.
        let Some((pi, pj)) = (top..rows)
            .flat_map(|i| (top..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }
        // Clear the row and column; restart if a remainder improves the pivot.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in top + 1..rows {
                if !a[i][top].is_zero() {
                    let q = &a[i][top] / &a[top][top];
                    for j in top..cols {
                        let v = &a[i][j] - &q * &a[top][j];
                        a[i][j] = v;
                    }
                    if !a[i][top].is_zero() {
                        a.swap(top, i);
                        dirty = true;
                    }
                }
            }
            for j in top + 1..cols {
                if !a[top][j].is_zero() {
                    let q = &a[top][j] / &a[top][top];
                    for row in a.iter_mut().skip(top) {
                        let v = &row[j] - &q * &row[top];
                        row[j] = v;
                    }
                    if !a[top][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(top, j);
                        }
                        dirty = true;
                    }
                }
            }
        }
        out.push(a[top][top].abs());
        top += 1;
    }
    // Enforce divisibility d1 | d2 | ... with gcd/lcm passes.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 1..out.len() {
            let (lo, hi) = out.split_at_mut(i);
            let x = &mut lo[i - 1];
            let y = &mut hi[0];
            if !(&*y % &*x).is_zero() {
                let g = num::Integer::gcd(x, y);
                let l = &*x * &*y / &g;
                *x = g;
                *y = l;
                changed = true;
            }
        }
    }
    out.into_iter()
        .filter(|d| !d.is_zero())
        .map(|d| {
            use num::ToPrimitive;
            d.to_u64().expect("invariant factor fits u64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};

    #[test]
    fn solve_and_rank() {
        let m = RatMat::from_rows(vec![
            vec![rint(1), rint(2)],
            vec![rint(3), rint(4)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det(), rint(-2));
        let x = m.solve(&[rint(5), rint(11)]).unwrap();
        assert_eq!(x, vec![rint(1), rint(2)]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.mul(&m), RatMat::identity(2));
    }

    #[test]
    fn singular_matrix() {
        let m = RatMat::from_rows(vec![
            vec![rint(1), rint(2)],
            vec![rint(2), rint(4)],
        ]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.det(), rint(0));
        assert!(m.solve(&[rint(1), rint(3)]).is_none());
        assert!(m.inverse().is_none());
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert_eq!(m.mul_vec(&ker[0]), vec![rint(0), rint(0)]);
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let m = RatMat::from_rows(vec![vec![rint(1), rint(1), rint(1)]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v)[0].is_zero());
        }
    }

    #[test]
    fn fractional_entries() {
        let m = RatMat::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 5), rat(1, 7)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
    }

    #[test]
    fn smith_form_examples() {
        // diag(2,6) relations for C2 x C6
        assert_eq!(smith_invariant_factors(&[vec![2, 0], vec![0, 6]]), vec![2, 6]);
        // C4 presented with a redundant relation
        assert_eq!(smith_invariant_factors(&[vec![4], vec![8]]), vec![4]);
        // divisibility fix-up needed
        assert_eq!(smith_invariant_factors(&[vec![6, 0], vec![0, 4]]), vec![2, 12]);
        assert_eq!(
            smith_invariant_factors(&[vec![2, 3, 0], vec![0, 2, 3], vec![3, 0, 2]]),
            vec![1, 1, 35]
        );
    }
}
