//! Dense matrices over cyclotomic numbers.

use super::cyclotomic::Cyclotomic;

/// Row-major dense matrix over [`Cyclotomic`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<Cyclotomic>,
}

impl CycMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        CycMat { rows, cols, a: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CycMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclotomic::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        CycMat { rows: r, cols: c, a: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cyclotomic) -> Self {
        let mut m = CycMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix from entries.
    pub fn diag(entries: &[Cyclotomic]) -> Self {
        let n = entries.len();
        let mut m = CycMat::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Permutation matrix: maps basis vector `j` to basis vector `perm[j]`,
    /// i.e. `m[(perm[j], j)] = 1`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = CycMat::zero(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = Cyclotomic::one();
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &CycMat) -> CycMat {
        assert_eq!(self.cols, other.rows);
        let mut out = CycMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let s = &self[(i, k)];
                if s.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(s * &other[(k, j)]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Cyclotomic::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        s = s + &self[(i, j)] * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> CycMat {
        CycMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Cyclotomic) -> CycMat {
        let mut out = self.clone();
        for x in &mut out.a {
            *x = &*x * c;
        }
        out
    }

    pub fn add(&self, other: &CycMat) -> CycMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = &*x + y;
        }
        out
    }

    pub fn sub(&self, other: &CycMat) -> CycMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = &*x - y;
        }
        out
    }

    pub fn pow(&self, e: u32) -> CycMat {
        assert!(self.is_square());
        let mut acc = CycMat::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Cyclotomic {
        assert!(self.is_square());
        let mut t = Cyclotomic::zero();
        for i in 0..self.rows {
            t = t + self[(i, i)].clone();
        }
        t
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
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
            let inv = self[(r, c)].inv();
            for j in c..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        self[(i, j)] = &self[(i, j)] - &(&f * &self[(r, j)]);
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

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Cyclotomic>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Cyclotomic::zero(); self.cols];
                v[f] = Cyclotomic::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -&m[(r, f)];
                }
                v
            })
            .collect()
    }

    pub fn solve(&self, b: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        assert_eq!(self.rows, b.len());
        let mut aug = CycMat::zero(self.rows, self.cols + 1);
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
        let mut x = vec![Cyclotomic::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<CycMat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = CycMat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Cyclotomic::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(CycMat::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn det(&self) -> Cyclotomic {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Cyclotomic::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Cyclotomic::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det = det * m[(c, c)].clone();
            let inv = m[(c, c)].inv();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    m[(i, j)] = &m[(i, j)] - &(&f * &m[(c, j)]);
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for CycMat {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CycMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        &mut self.a[i * self.cols + j]
    }
}

impl std::fmt::Debug for CycMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Scale a projective point so its first nonzero coordinate is 1.
pub fn canonical_point(v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let Some(lead) = v.iter().find(|c| !c.is_zero()) else {
        panic!("zero vector is not a projective point");
    };
    let inv = lead.inv();
    v.iter().map(|c| c * &inv).collect()
}

/// Are two nonzero vectors equal up to scalar?
pub fn projectively_equal(a: &[Cyclotomic], b: &[Cyclotomic]) -> bool {
    canonical_point(a) == canonical_point(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: i64) -> Cyclotomic {
        Cyclotomic::from_int(k)
    }

    #[test]
    fn det_and_inverse_over_roots() {
        let i = Cyclotomic::root_of_unity(4, 1);
        // [[i, 1], [0, i]] has det -1
        let m = CycMat::from_rows(vec![
            vec![i.clone(), c(1)],
            vec![c(0), i.clone()],
        ]);
        assert_eq!(m.det(), c(-1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), CycMat::identity(2));
    }

    #[test]
    fn kernel_and_rank_with_cyclotomics() {
        let w = Cyclotomic::root_of_unity(3, 1);
        // rows (1, w, w^2) and (w, w^2, 1) are proportional
        let m = CycMat::from_rows(vec![
            vec![c(1), w.clone(), w.pow(2)],
            vec![w.clone(), w.pow(2), c(1)],
        ]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn permutation_and_diag() {
        let p = CycMat::permutation(&[1, 2, 0]);
        let e0 = vec![c(1), c(0), c(0)];
        assert_eq!(p.mul_vec(&e0), vec![c(0), c(1), c(0)]);
        let d = CycMat::diag(&[c(2), c(3)]);
        assert_eq!(d.det(), c(6));
        assert_eq!(d.trace(), c(5));
    }

    #[test]
    fn projective_helpers() {
        let w = Cyclotomic::root_of_unity(3, 1);
        let v1 = vec![w.clone(), w.pow(2)];
        let v2 = vec![c(1), w.clone()];
        assert!(projectively_equal(&v1, &v2));
        let v3 = vec![c(1), w.pow(2)];
        assert!(!projectively_equal(&v1, &v3));
    }

    #[test]
    fn solve_small_system() {
        let w = Cyclotomic::root_of_unity(8, 1);
        let m = CycMat::from_rows(vec![
            vec![c(1), w.clone()],
            vec![w.clone(), c(1)],
        ]);
        let b = vec![c(1), c(0)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }
}
