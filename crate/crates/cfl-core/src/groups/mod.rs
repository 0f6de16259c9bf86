//! Finite groups given by explicit generators.
//!
//! Elements are matrices over cyclotomic numbers (linear, projective, or
//! weighted-projective), permutations, or lattice isometries. A group is
//! closed by breadth-first products from its generators; the multiplication
//! table is then recovered from the generator columns and the generator words
//! of each element, so no further matrix arithmetic is needed.

pub mod catalog;
pub mod construct;
pub mod fingerprint;
pub mod subgroups;

use crate::exact::linalg::CycMat;
use crate::lattice::{mat_mul, IsoMat};
use crate::{Error, Result};
use std::collections::HashMap;

/// Default bound on closure size; anything bigger is a modeling error here.
pub const DEFAULT_MAX_ORDER: usize = 4000;

/// How matrix entries are read: on the nose, up to scalar, or up to the
/// weighted scaling `row i -> s^(w_i) * row i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MatrixMode {
    Linear,
    Projective,
    Weighted(Vec<u32>),
}

/// A matrix element, stored in canonical form for its mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixElem {
    mat: CycMat,
    mode: MatrixMode,
}

impl MatrixElem {
    pub fn new(mat: CycMat, mode: MatrixMode) -> Self {
        assert!(mat.is_square());
        if let MatrixMode::Weighted(w) = &mode {
            assert_eq!(w.len(), mat.rows);
            assert!(w.iter().any(|&x| x == 1), "need a weight-1 row to canonicalize");
        }
        let mut e = MatrixElem { mat, mode };
        e.canonicalize();
        e
    }

    pub fn linear(mat: CycMat) -> Self {
        Self::new(mat, MatrixMode::Linear)
    }

    pub fn projective(mat: CycMat) -> Self {
        Self::new(mat, MatrixMode::Projective)
    }

    pub fn mat(&self) -> &CycMat {
        &self.mat
    }

    pub fn mode(&self) -> &MatrixMode {
        &self.mode
    }

    fn canonicalize(&mut self) {
        match &self.mode {
            MatrixMode::Linear => {}
            MatrixMode::Projective => {
                let lead = (0..self.mat.rows * self.mat.cols)
                    .map(|k| &self.mat[(k / self.mat.cols, k % self.mat.cols)])
                    .find(|c| !c.is_zero())
                    .expect("zero matrix is not projective")
                    .clone();
                self.mat = self.mat.scale(&lead.inv());
            }
            MatrixMode::Weighted(w) => {
                let n = self.mat.cols;
                let mut lead = None;
                'scan: for i in 0..self.mat.rows {
                    if w[i] != 1 {
                        continue;
                    }
                    for j in 0..n {
                        if !self.mat[(i, j)].is_zero() {
                            lead = Some(self.mat[(i, j)].clone());
                            break 'scan;
                        }
                    }
                }
                let s = lead.expect("weighted matrix needs a nonzero weight-1 row").inv();
                let mut out = self.mat.clone();
                for i in 0..out.rows {
                    let f = s.pow(w[i] as i64);
                    for j in 0..n {
                        out[(i, j)] = &out[(i, j)] * &f;
                    }
                }
                self.mat = out;
            }
        }
    }
}

/// One element of a concretely represented group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Matrix(MatrixElem),
    Perm(Vec<usize>),
    Isometry(IsoMat),
}

impl GroupElement {
    pub fn matrix(mat: CycMat, mode: MatrixMode) -> Self {
        GroupElement::Matrix(MatrixElem::new(mat, mode))
    }

    pub fn perm(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation");
            seen[i] = true;
        }
        GroupElement::Perm(images)
    }

    pub fn identity_like(&self) -> Self {
        match self {
            GroupElement::Matrix(m) => {
                GroupElement::matrix(CycMat::identity(m.mat.rows), m.mode.clone())
            }
            GroupElement::Perm(p) => GroupElement::Perm((0..p.len()).collect()),
            GroupElement::Isometry(m) => GroupElement::Isometry(
                (0..m.len()).map(|i| (0..m.len()).map(|j| (i == j) as i64).collect()).collect(),
            ),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => {
                assert_eq!(a.mode, b.mode, "mixed matrix modes");
                GroupElement::matrix(a.mat.mul(&b.mat), a.mode.clone())
            }
            (GroupElement::Perm(p), GroupElement::Perm(q)) => {
                assert_eq!(p.len(), q.len());
                GroupElement::Perm(q.iter().map(|&i| p[i]).collect())
            }
            (GroupElement::Isometry(a), GroupElement::Isometry(b)) => {
                GroupElement::Isometry(mat_mul(a, b))
            }
            _ => panic!("cannot multiply group elements of different kinds"),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Matrix(m) => GroupElement::matrix(
                m.mat.inverse().expect("group matrix must be invertible"),
                m.mode.clone(),
            ),
            GroupElement::Perm(p) => {
                let mut inv = vec![0; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    inv[j] = i;
                }
                GroupElement::Perm(inv)
            }
            GroupElement::Isometry(m) => {
                // Inverse of an integer isometry is integral; invert over Q.
                let n = m.len();
                let rm = crate::exact::ratlin::RatMat::from_fn(n, n, |i, j| {
                    crate::exact::rint(m[i][j])
                });
                let inv = rm.inverse().expect("isometry must be invertible");
                GroupElement::Isometry(
                    (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| {
                                    use num::ToPrimitive;
                                    assert!(inv[(i, j)].is_integer());
                                    inv[(i, j)].to_integer().to_i64().unwrap()
                                })
                                .collect()
                        })
                        .collect(),
                )
            }
        }
    }
}

/// Plain multiplication table; index 0 is always the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulTable {
    pub n: usize,
    t: Vec<u32>,
}

impl MulTable {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        let table = MulTable { n, t: rows.into_iter().flatten().collect() };
        table.check();
        table
    }

    fn check(&self) {
        let n = self.n;
        assert!(n > 0);
        for i in 0..n {
            assert_eq!(self.mul(0, i), i, "index 0 must be the identity");
            assert_eq!(self.mul(i, 0), i, "index 0 must be the identity");
            // Each row and column is a permutation.
            let mut seen_r = vec![false; n];
            let mut seen_c = vec![false; n];
            for j in 0..n {
                let r = self.mul(i, j);
                let c = self.mul(j, i);
                assert!(!seen_r[r] && !seen_c[c], "table is not a Latin square");
                seen_r[r] = true;
                seen_c[c] = true;
            }
        }
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.t[i * self.n + j] as usize
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.n).find(|&j| self.mul(i, j) == 0).unwrap()
    }

    pub fn power(&self, i: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, i);
        }
        acc
    }

    pub fn element_order(&self, i: usize) -> u64 {
        let mut acc = i;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, i);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.mul(i, j) != self.mul(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| (0..self.n).all(|j| self.mul(i, j) == self.mul(j, i)))
            .collect()
    }

    pub fn commutator(&self, i: usize, j: usize) -> usize {
        let ii = self.inverse(i);
        let ji = self.inverse(j);
        self.mul(self.mul(ii, ji), self.mul(i, j))
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        // g h g^-1
        self.mul(self.mul(g, h), self.inverse(g))
    }

    pub fn exponent(&self) -> u64 {
        (0..self.n).map(|i| self.element_order(i)).fold(1, num::integer::lcm)
    }

    /// Sorted (order, count) pairs over all elements.
    pub fn order_histogram(&self) -> Vec<(u64, u64)> {
        let mut map: std::collections::BTreeMap<u64, u64> = Default::default();
        for i in 0..self.n {
            *map.entry(self.element_order(i)).or_insert(0) += 1;
        }
        map.into_iter().collect()
    }
}

/// A closed group: elements, multiplication table, generator words.
#[derive(Clone)]
pub struct FiniteGroup {
    pub elems: Vec<GroupElement>,
    pub table: MulTable,
    /// For each element, a product of generator indices realizing it
    /// (empty word for the identity).
    pub words: Vec<Vec<u16>>,
    index: HashMap<GroupElement, u32>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

impl FiniteGroup {
    /// Breadth-first closure from generators.
    pub fn closure(gens: &[GroupElement], max_order: usize) -> Result<Self> {
        let with_pairs: Vec<(GroupElement, ())> = gens.iter().map(|g| (g.clone(), ())).collect();
        let (g, _) = closure_paired(&with_pairs, max_order, |_, _| ())?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.index.contains_key(e)
    }

    pub fn identity(&self) -> &GroupElement {
        &self.elems[0]
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.table.element_order(i)
    }

    /// Rebuild a group from a bare multiplication table via its regular
    /// permutation representation. Element `i` becomes the permutation
    /// `j -> t.mul(i, j)`; element indices are preserved.
    pub fn from_table(t: &MulTable) -> FiniteGroup {
        let n = t.n;
        let elems: Vec<GroupElement> = (0..n)
            .map(|i| GroupElement::perm((0..n).map(|j| t.mul(i, j)).collect()))
            .collect();
        let mut gens: Vec<usize> = Vec::new();
        let mut words: Vec<Option<Vec<u16>>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut reached = 1;
        while reached < n {
            let g = (0..n).find(|&i| words[i].is_none()).unwrap();
            words[g] = Some(vec![gens.len() as u16]);
            gens.push(g);
            reached += 1;
            let mut queue: std::collections::VecDeque<usize> =
                (0..n).filter(|&i| words[i].is_some()).collect();
            while let Some(x) = queue.pop_front() {
                for (k, &gg) in gens.iter().enumerate() {
                    let y = t.mul(x, gg);
                    if words[y].is_none() {
                        let mut w = words[x].clone().unwrap();
                        w.push(k as u16);
                        words[y] = Some(w);
                        reached += 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        let index: HashMap<GroupElement, u32> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        FiniteGroup {
            elems,
            table: t.clone(),
            words: words.into_iter().map(|w| w.unwrap()).collect(),
            index,
        }
    }
}

/// Closure that carries a second component along each element (for tracking
/// the same abstract group in two representations at once). Equality and
/// hashing use only the first component; if two products agree there but
/// disagree in the companion, the pairing is not a homomorphism and an
/// inconsistency error is returned.
pub fn paired_closure(
    gen_pairs: &[(GroupElement, GroupElement)],
    max_order: usize,
) -> Result<(FiniteGroup, Vec<GroupElement>)> {
    let pairs: Vec<(GroupElement, GroupElement)> = gen_pairs.to_vec();
    closure_paired(&pairs, max_order, |a: &GroupElement, b: &GroupElement| a.mul(b))
}

fn closure_paired<C: Clone + PartialEq + std::fmt::Debug>(
    gens: &[(GroupElement, C)],
    max_order: usize,
    mul_companion: impl Fn(&C, &C) -> C,
) -> Result<(FiniteGroup, Vec<C>)> {
    assert!(!gens.is_empty(), "need at least one generator");
    let id = gens[0].0.identity_like();
    let id_c = {
        // The companion identity is the first generator's companion raised to
        // that generator's order. If the pairing is a homomorphism this is the
        // identity, which we confirm by idempotence.
        let (g0, c0) = &gens[0];
        let mut acc_g = g0.clone();
        let mut acc_c = c0.clone();
        let mut steps = 0;
        while acc_g != id {
            acc_g = acc_g.mul(g0);
            acc_c = mul_companion(&acc_c, c0);
            steps += 1;
            if steps > max_order {
                return Err(Error::Domain("generator order exceeds limit".into()));
            }
        }
        if mul_companion(&acc_c, &acc_c) != acc_c {
            return Err(Error::Inconsistent(
                "paired closure: companion of the identity is not idempotent".into(),
            ));
        }
        acc_c
    };

    let mut index: HashMap<GroupElement, u32> = HashMap::new();
    index.insert(id.clone(), 0);
    let mut elems = vec![id];
    let mut companions = vec![id_c];
    let mut words: Vec<Vec<u16>> = vec![Vec::new()];
    // gencol[g][i] = index of elems[i] * gens[g]
    let mut gencol: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut head = 0;
    while head < elems.len() {
        for (gi, (g, gc)) in gens.iter().enumerate() {
            let prod = elems[head].mul(g);
            let prod_c = mul_companion(&companions[head], gc);
            let idx = match index.get(&prod) {
                Some(&i) => {
                    if companions[i as usize] != prod_c {
                        return Err(Error::Inconsistent(format!(
                            "paired closure: companions disagree at element {i}: {:?} vs {:?}",
                            companions[i as usize], prod_c
                        )));
                    }
                    i
                }
                None => {
                    let i = elems.len() as u32;
                    if elems.len() >= max_order {
                        return Err(Error::Domain(format!(
                            "group closure exceeds {max_order} elements"
                        )));
                    }
                    index.insert(prod.clone(), i);
                    elems.push(prod);
                    companions.push(prod_c);
                    let mut w = words[head].clone();
                    w.push(gi as u16);
                    words.push(w);
                    i
                }
            };
            gencol[gi].push(idx);
        }
        head += 1;
    }

    // Multiplication table from generator columns: i * j follows j's word.
    let n = elems.len();
    let mut t = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = i as u32;
            for &g in &words[j] {
                acc = gencol[g as usize][acc as usize];
            }
            t[i * n + j] = acc;
        }
    }
    let table = MulTable { n, t };
    table.check();
    let group = FiniteGroup { elems, table, words, index };
    Ok((group, companions))
}

/// Abstract group from a bare multiplication table, realized by its right
/// regular permutation action (`g` maps `x` to `x * g`).
pub fn group_from_mul(table: &MulTable) -> FiniteGroup {
    let n = table.n;
    let gens: Vec<GroupElement> = (0..n)
        .map(|g| GroupElement::Perm((0..n).map(|x| table.mul(x, g)).collect()))
        .collect();
    let g = FiniteGroup::closure(&gens, n + 1).expect("regular representation closes");
    assert_eq!(g.order(), n);
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic::Cyclotomic;
    use crate::exact::rat;

    fn cyc(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn perm_group_s3() {
        let g = FiniteGroup::closure(
            &[GroupElement::perm(vec![1, 2, 0]), GroupElement::perm(vec![1, 0, 2])],
            100,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.table.is_abelian());
        assert_eq!(g.table.order_histogram(), vec![(1, 1), (2, 3), (3, 2)]);
        assert_eq!(g.table.center(), vec![0]);
        assert_eq!(g.table.exponent(), 6);
    }

    #[test]
    fn matrix_group_q8() {
        let i = cyc(4, 1);
        let a = GroupElement::matrix(
            CycMat::from_rows(vec![
                vec![i.clone(), Cyclotomic::zero()],
                vec![Cyclotomic::zero(), -&i],
            ]),
            MatrixMode::Linear,
        );
        let b = GroupElement::matrix(
            CycMat::from_rows(vec![
                vec![Cyclotomic::zero(), Cyclotomic::from_int(-1)],
                vec![Cyclotomic::one(), Cyclotomic::zero()],
            ]),
            MatrixMode::Linear,
        );
        let g = FiniteGroup::closure(&[a, b], 100).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.table.order_histogram(), vec![(1, 1), (2, 1), (4, 6)]);
        assert_eq!(g.table.center().len(), 2);
    }

    #[test]
    fn projective_mode_kills_scalars() {
        let i = cyc(4, 1);
        // iI is projectively trivial.
        let s = GroupElement::matrix(CycMat::diag(&[i.clone(), i.clone()]), MatrixMode::Projective);
        assert_eq!(s, s.identity_like());
        // diag(i, -i) is projectively diag(1, -1), order 2.
        let d = GroupElement::matrix(CycMat::diag(&[i.clone(), -&i]), MatrixMode::Projective);
        let g = FiniteGroup::closure(&[d], 10).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn weighted_mode_scales_by_weight() {
        // On weights (1,1,2): diag(s, s, s^2) is trivial.
        let w = MatrixMode::Weighted(vec![1, 1, 2]);
        let i = cyc(4, 1);
        let m = GroupElement::matrix(
            CycMat::diag(&[i.clone(), i.clone(), Cyclotomic::from_int(-1)]),
            w.clone(),
        );
        assert_eq!(m, m.identity_like());
        // diag(1, 1, -1) is not trivial: order 2.
        let f = GroupElement::matrix(
            CycMat::diag(&[Cyclotomic::one(), Cyclotomic::one(), Cyclotomic::from_int(-1)]),
            w,
        );
        let g = FiniteGroup::closure(&[f], 10).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn closure_limit_enforced() {
        let c5 = GroupElement::perm(vec![1, 2, 3, 4, 0]);
        assert!(FiniteGroup::closure(&[c5], 4).is_err());
    }

    #[test]
    fn isometry_elements() {
        let lat = crate::lattice::PicLattice::del_pezzo(6);
        let w = crate::lattice::weyl_closure(6);
        let gens: Vec<GroupElement> =
            (1..3).map(|i| GroupElement::Isometry(w.mat(i))).collect();
        let g = FiniteGroup::closure(&gens, 100).unwrap();
        for e in &g.elems {
            if let GroupElement::Isometry(m) = e {
                assert!(lat.is_isometry(m));
            }
        }
    }

    #[test]
    fn paired_closure_consistency() {
        // C4 as a matrix group paired with itself as a permutation group.
        let i = cyc(4, 1);
        let m = GroupElement::matrix(CycMat::diag(&[i.clone()]), MatrixMode::Linear);
        let p = GroupElement::perm(vec![1, 2, 3, 0]);
        let (g, companions) = paired_closure(&[(m, p)], 100).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(companions.len(), 4);
        // Companion of the identity is the identity permutation.
        assert_eq!(companions[0], GroupElement::perm(vec![0, 1, 2, 3]));

        // Pairing a C4 generator with a C2 one is the quotient homomorphism,
        // so it closes fine and the companions repeat.
        let m4 = GroupElement::matrix(CycMat::diag(&[i.clone()]), MatrixMode::Linear);
        let swap = GroupElement::perm(vec![1, 0]);
        let (g2, comps2) = paired_closure(&[(m4, swap.clone())], 100).unwrap();
        assert_eq!(g2.order(), 4);
        assert_eq!(comps2.iter().filter(|c| **c == swap).count(), 2);

        // Pairing C2 with C3 is not a homomorphism in either direction.
        let m2 = GroupElement::matrix(CycMat::diag(&[Cyclotomic::from_int(-1)]), MatrixMode::Linear);
        let three = GroupElement::perm(vec![1, 2, 0]);
        assert!(paired_closure(&[(m2, three)], 100).is_err());
    }

    #[test]
    fn regular_representation_roundtrip() {
        let g = FiniteGroup::closure(
            &[GroupElement::perm(vec![1, 2, 0]), GroupElement::perm(vec![1, 0, 2])],
            100,
        )
        .unwrap();
        let h = group_from_mul(&g.table);
        assert_eq!(h.order(), 6);
        assert_eq!(h.table.order_histogram(), g.table.order_histogram());
    }

    #[test]
    fn mul_table_sanity() {
        let g = FiniteGroup::closure(&[GroupElement::perm(vec![1, 2, 3, 0])], 100).unwrap();
        let t = &g.table;
        assert_eq!(t.element_order(1), 4);
        assert_eq!(t.power(1, 2), t.mul(1, 1));
        assert_eq!(t.inverse(1), t.power(1, 3));
        assert!(t.is_abelian());
        assert_eq!(rat(1, 2) * rat(2, 1), rat(1, 1));
    }
}
