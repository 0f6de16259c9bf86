//! Subgroup machinery on multiplication tables: closures, exhaustive
//! subgroup enumeration, conjugacy, quotients, and isomorphism testing.

use super::MulTable;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// Smallest subgroup containing the seed elements, as sorted indices.
pub fn closure_of_subset(t: &MulTable, seed: &[usize]) -> Vec<usize> {
    let mut in_set = vec![false; t.n];
    in_set[0] = true;
    let mut members = vec![0usize];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in seed {
        if !in_set[s] {
            in_set[s] = true;
            members.push(s);
            queue.push_back(s);
        }
    }
    while let Some(g) = queue.pop_front() {
        // Multiply with every current member on both sides.
        let snapshot: Vec<usize> = members.clone();
        for &h in &snapshot {
            for p in [t.mul(g, h), t.mul(h, g)] {
                if !in_set[p] {
                    in_set[p] = true;
                    members.push(p);
                    queue.push_back(p);
                }
            }
        }
    }
    members.sort_unstable();
    members
}

/// Reindexed multiplication table of a subgroup (members sorted, containing 0).
pub fn subgroup_table(t: &MulTable, members: &[usize]) -> MulTable {
    assert_eq!(members.first(), Some(&0), "subgroup must contain the identity first");
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let rows: Vec<Vec<u32>> = members
        .iter()
        .map(|&a| {
            members
                .iter()
                .map(|&b| {
                    let p = t.mul(a, b);
                    *pos.get(&p).unwrap_or_else(|| panic!("subset not closed: {a}*{b}={p}"))
                        as u32
                })
                .collect()
        })
        .collect();
    MulTable::from_rows(rows)
}

/// The derived (commutator) subgroup.
pub fn derived_subgroup(t: &MulTable) -> Vec<usize> {
    let mut comms: BTreeSet<usize> = BTreeSet::new();
    for i in 0..t.n {
        for j in 0..t.n {
            comms.insert(t.commutator(i, j));
        }
    }
    let seed: Vec<usize> = comms.into_iter().collect();
    closure_of_subset(t, &seed)
}

/// Subgroup generated by all squares and commutators; the quotient by it is
/// the largest elementary abelian 2-quotient.
fn squares_and_commutators(t: &MulTable) -> Vec<usize> {
    let mut seed: BTreeSet<usize> = BTreeSet::new();
    for i in 0..t.n {
        seed.insert(t.mul(i, i));
        for j in 0..t.n {
            seed.insert(t.commutator(i, j));
        }
    }
    let seed: Vec<usize> = seed.into_iter().collect();
    closure_of_subset(t, &seed)
}

/// Quotient by a normal subgroup: returns the coset table and, for each
/// element, its coset index. Coset 0 is the one containing the identity.
pub fn quotient_table(t: &MulTable, normal: &[usize]) -> (MulTable, Vec<usize>) {
    let nset: HashSet<usize> = normal.iter().copied().collect();
    // Normality check.
    for g in 0..t.n {
        for &h in normal {
            assert!(nset.contains(&t.conjugate(g, h)), "subgroup is not normal");
        }
    }
    let mut coset_of = vec![usize::MAX; t.n];
    let mut reps: Vec<usize> = Vec::new();
    for g in 0..t.n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(g);
        for &h in normal {
            coset_of[t.mul(g, h)] = c;
        }
        assert_eq!(coset_of[g], c);
    }
    let q = reps.len();
    let rows: Vec<Vec<u32>> = (0..q)
        .map(|a| (0..q).map(|b| coset_of[t.mul(reps[a], reps[b])] as u32).collect())
        .collect();
    (MulTable::from_rows(rows), coset_of)
}

/// Every subgroup, as sorted member lists. Exhaustive: any subgroup is
/// generated by cyclic subgroups, so repeatedly absorbing one more cyclic
/// subgroup reaches everything.
pub fn all_subgroups(t: &MulTable) -> Vec<Vec<usize>> {
    let mut cyclics: BTreeSet<Vec<usize>> = BTreeSet::new();
    for g in 0..t.n {
        cyclics.insert(closure_of_subset(t, &[g]));
    }
    let cyclics: Vec<Vec<usize>> = cyclics.into_iter().collect();
    let mut seen: BTreeSet<Vec<usize>> = cyclics.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = cyclics.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclics {
                if c.iter().all(|x| h.binary_search(x).is_ok()) {
                    continue;
                }
                let mut seed = h.clone();
                seed.extend_from_slice(c);
                let k = closure_of_subset(t, &seed);
                if seen.insert(k.clone()) {
                    next.push(k);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

pub fn conjugate_subgroup(t: &MulTable, g: usize, members: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = members.iter().map(|&h| t.conjugate(g, h)).collect();
    out.sort_unstable();
    out
}

pub fn is_normal(t: &MulTable, members: &[usize]) -> bool {
    (0..t.n).all(|g| conjugate_subgroup(t, g, members) == members)
}

pub fn normal_subgroups(t: &MulTable) -> Vec<Vec<usize>> {
    all_subgroups(t).into_iter().filter(|s| is_normal(t, s)).collect()
}

/// One representative per conjugacy class of subgroups, with orbit sizes.
pub fn subgroups_up_to_conjugacy(t: &MulTable) -> Vec<(Vec<usize>, usize)> {
    let subs = all_subgroups(t);
    let index: HashMap<&[usize], usize> =
        subs.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut assigned = vec![false; subs.len()];
    let mut out = Vec::new();
    for (i, s) in subs.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for g in 0..t.n {
            let c = conjugate_subgroup(t, g, s);
            let j = *index.get(c.as_slice()).expect("conjugate of a subgroup is a subgroup");
            orbit.insert(j);
        }
        for &j in &orbit {
            assigned[j] = true;
        }
        out.push((s.clone(), orbit.len()));
    }
    out
}

/// Subgroups of index 2 (= kernels of surjections onto the 2-element group).
pub fn index2_subgroups(t: &MulTable) -> Vec<Vec<usize>> {
    let n2 = squares_and_commutators(t);
    let (q, proj) = quotient_table(t, &n2);
    // q is elementary abelian of exponent <= 2: give each element F2
    // coordinates relative to a greedy basis.
    let mut basis: Vec<usize> = Vec::new();
    let mut span: HashMap<usize, u32> = HashMap::new();
    span.insert(0, 0);
    for g in 1..q.n {
        if span.contains_key(&g) {
            continue;
        }
        let bit = 1u32 << basis.len();
        basis.push(g);
        let snapshot: Vec<(usize, u32)> = span.iter().map(|(&e, &m)| (e, m)).collect();
        for (e, m) in snapshot {
            span.insert(q.mul(e, g), m | bit);
        }
    }
    assert_eq!(span.len(), q.n);
    let r = basis.len();
    let mut out = Vec::new();
    for phi in 1u32..(1 << r) {
        let members: Vec<usize> = (0..t.n)
            .filter(|&i| (span[&proj[i]] & phi).count_ones() % 2 == 0)
            .collect();
        out.push(members);
    }
    out.sort();
    out.dedup();
    out
}

pub fn is_cyclic(t: &MulTable) -> bool {
    (0..t.n).any(|i| t.element_order(i) == t.n as u64)
}

/// Dihedral of order `2m`, `m >= 2`; the Klein four-group counts (`m = 2`).
pub fn is_dihedral(t: &MulTable) -> bool {
    let n = t.n;
    if n < 4 || n % 2 != 0 {
        return false;
    }
    let m = (n / 2) as u64;
    for g in 0..n {
        if t.element_order(g) != m {
            continue;
        }
        let rot: Vec<usize> = {
            let mut v = vec![0];
            let mut acc = 0;
            for _ in 1..m {
                acc = t.mul(acc, g);
                v.push(acc);
            }
            v
        };
        let in_rot: HashSet<usize> = rot.iter().copied().collect();
        for s in 0..n {
            if in_rot.contains(&s) || t.element_order(s) != 2 {
                continue;
            }
            if t.conjugate(s, g) == t.inverse(g) {
                return true;
            }
        }
    }
    false
}

/// Backtracking isomorphism test on multiplication tables.
pub fn isomorphic(a: &MulTable, b: &MulTable) -> bool {
    if a.n != b.n || a.order_histogram() != b.order_histogram() {
        return false;
    }
    if a.is_abelian() != b.is_abelian() {
        return false;
    }
    // Greedy generating sequence for a.
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0usize; 1];
    while span.len() < a.n {
        let in_span: HashSet<usize> = span.iter().copied().collect();
        // Take a highest-order element outside the span: fewer candidate
        // images, earlier pruning.
        let g = (0..a.n)
            .filter(|x| !in_span.contains(x))
            .max_by_key(|&x| a.element_order(x))
            .unwrap();
        gens.push(g);
        span = closure_of_subset(a, &gens);
    }
    let mut images: Vec<usize> = Vec::new();
    try_extend(a, b, &gens, &mut images)
}

/// With `images` fixed for a prefix of `gens`, try all consistent
/// completions. Once every generator has an image the consistency check has
/// verified an injective homomorphism on all of `a`, which by equal order is
/// an isomorphism.
fn try_extend(a: &MulTable, b: &MulTable, gens: &[usize], images: &mut Vec<usize>) -> bool {
    if images.len() == gens.len() {
        return check_generated_map(a, b, gens, images);
    }
    let g = gens[images.len()];
    let want = a.element_order(g);
    for cand in 0..b.n {
        if b.element_order(cand) != want {
            continue;
        }
        images.push(cand);
        // The partial map must be consistent on the subgroup the prefix
        // generates, otherwise no completion can work.
        if check_generated_map(a, b, &gens[..images.len()], images)
            && try_extend(a, b, gens, images)
        {
            return true;
        }
        images.pop();
    }
    false
}

/// Does `gens -> images` extend to an injective homomorphism on the subgroup
/// generated by `gens`?
fn check_generated_map(a: &MulTable, b: &MulTable, gens: &[usize], images: &[usize]) -> bool {
    let mut map: HashMap<usize, usize> = HashMap::new();
    map.insert(0, 0);
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    let mut used: HashSet<usize> = HashSet::new();
    used.insert(0);
    while let Some(x) = queue.pop_front() {
        let fx = map[&x];
        for (i, &g) in gens.iter().enumerate() {
            let y = a.mul(x, g);
            let fy = b.mul(fx, images[i]);
            match map.get(&y) {
                Some(&v) => {
                    if v != fy {
                        return false;
                    }
                }
                None => {
                    if !used.insert(fy) {
                        return false;
                    }
                    map.insert(y, fy);
                    queue.push_back(y);
                }
            }
        }
    }
    // map is a bijection from <gens> onto its image that intertwines right
    // multiplication by generators; verify it is a full homomorphism.
    let dom: Vec<usize> = map.keys().copied().collect();
    for &x in &dom {
        for &y in &dom {
            if map.get(&a.mul(x, y)) != Some(&b.mul(map[&x], map[&y])) {
                return false;
            }
        }
    }
    true
}

/// Label for a cyclic group of the given order.
pub fn cyclic_label(order: usize) -> String {
    order.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteGroup, GroupElement};

    fn s3() -> MulTable {
        FiniteGroup::closure(
            &[GroupElement::perm(vec![1, 2, 0]), GroupElement::perm(vec![1, 0, 2])],
            100,
        )
        .unwrap()
        .table
    }

    fn c(n: usize) -> MulTable {
        let mut p: Vec<usize> = (1..n).collect();
        p.push(0);
        FiniteGroup::closure(&[GroupElement::perm(p)], 200).unwrap().table
    }

    fn d8() -> MulTable {
        FiniteGroup::closure(
            &[GroupElement::perm(vec![1, 2, 3, 0]), GroupElement::perm(vec![0, 3, 2, 1])],
            100,
        )
        .unwrap()
        .table
    }

    #[test]
    fn subgroups_of_s3() {
        let t = s3();
        let subs = all_subgroups(&t);
        // 1, three C2, one C3, S3.
        assert_eq!(subs.len(), 6);
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 2, 2, 3, 6]);
        let up_to_conj = subgroups_up_to_conjugacy(&t);
        assert_eq!(up_to_conj.len(), 4);
        let normals = normal_subgroups(&t);
        assert_eq!(normals.len(), 3); // 1, C3, S3
    }

    #[test]
    fn derived_and_quotient() {
        let t = s3();
        let d = derived_subgroup(&t);
        assert_eq!(d.len(), 3);
        let (q, _) = quotient_table(&t, &d);
        assert_eq!(q.n, 2);
        assert!(is_cyclic(&q));
    }

    #[test]
    fn index2_of_dihedral() {
        // D8 has three subgroups of index 2: C4 and two Klein fours.
        let t = d8();
        let subs = index2_subgroups(&t);
        assert_eq!(subs.len(), 3);
        let mut kinds: Vec<bool> = subs
            .iter()
            .map(|s| is_cyclic(&subgroup_table(&t, s)))
            .collect();
        kinds.sort();
        assert_eq!(kinds, vec![false, false, true]);
        // S3 has one (the 3-cycle kernel is index 2).
        assert_eq!(index2_subgroups(&s3()).len(), 1);
        // C3 has none.
        assert_eq!(index2_subgroups(&c(3)).len(), 0);
    }

    #[test]
    fn dihedral_recognition() {
        assert!(is_dihedral(&d8()));
        assert!(is_dihedral(&s3())); // D6
        assert!(!is_dihedral(&c(4)));
        assert!(!is_dihedral(&c(6)));
        // Klein four counts as dihedral here.
        let v4 = FiniteGroup::closure(
            &[GroupElement::perm(vec![1, 0, 2, 3]), GroupElement::perm(vec![0, 1, 3, 2])],
            100,
        )
        .unwrap()
        .table;
        assert!(is_dihedral(&v4));
        assert!(!is_cyclic(&v4));
        assert!(is_cyclic(&c(12)));
    }

    #[test]
    fn isomorphism_basic() {
        assert!(isomorphic(&s3(), &s3()));
        assert!(!isomorphic(&s3(), &c(6)));
        assert!(isomorphic(&c(6), &c(6)));
        // Two different-looking D8 copies.
        let other_d8 = FiniteGroup::closure(
            &[GroupElement::perm(vec![1, 2, 3, 0, 5, 4]), GroupElement::perm(vec![0, 3, 2, 1, 4, 5])],
            100,
        )
        .unwrap()
        .table;
        assert!(isomorphic(&d8(), &other_d8));
        // Q8 vs D8: same order, different histograms.
        let i = crate::exact::cyclotomic::Cyclotomic::root_of_unity(4, 1);
        let q8 = FiniteGroup::closure(
            &[
                GroupElement::matrix(
                    crate::exact::linalg::CycMat::diag(&[i.clone(), -&i]),
                    crate::groups::MatrixMode::Linear,
                ),
                GroupElement::matrix(
                    crate::exact::linalg::CycMat::from_rows(vec![
                        vec![
                            crate::exact::cyclotomic::Cyclotomic::zero(),
                            crate::exact::cyclotomic::Cyclotomic::from_int(-1),
                        ],
                        vec![
                            crate::exact::cyclotomic::Cyclotomic::one(),
                            crate::exact::cyclotomic::Cyclotomic::zero(),
                        ],
                    ]),
                    crate::groups::MatrixMode::Linear,
                ),
            ],
            100,
        )
        .unwrap()
        .table;
        assert!(!isomorphic(&q8, &d8()));
    }

    #[test]
    fn conjugacy_orbit_sizes() {
        let t = s3();
        let reps = subgroups_up_to_conjugacy(&t);
        let two_cycle_class = reps.iter().find(|(s, _)| s.len() == 2).unwrap();
        assert_eq!(two_cycle_class.1, 3);
    }
}
