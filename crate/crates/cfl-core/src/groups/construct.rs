//! Analytic constructions of reference groups as multiplication tables, and a
//! backtracking monomorphism search between tables.
//!
//! Everything here is index arithmetic; no closure pass is needed, so the
//! conic-bundle classifiers can compare against reference presentations of
//! orders far beyond what matrix closures would make pleasant.

use std::collections::{HashMap, HashSet};

use super::subgroups::{closure_of_subset, quotient_table};
use super::MulTable;
use crate::{Error, Result};

/// Cyclic group of order `n`, identity at index 0.
pub fn cyclic_table(n: usize) -> MulTable {
    assert!(n > 0);
    MulTable::from_rows(
        (0..n).map(|i| (0..n).map(|j| ((i + j) % n) as u32).collect()).collect(),
    )
}

/// Direct product; element `(i, j)` sits at index `i * b.n + j`.
pub fn direct_product(a: &MulTable, b: &MulTable) -> MulTable {
    let n = a.n * b.n;
    let mut rows = vec![vec![0u32; n]; n];
    for i1 in 0..a.n {
        for j1 in 0..b.n {
            for i2 in 0..a.n {
                for j2 in 0..b.n {
                    rows[i1 * b.n + j1][i2 * b.n + j2] =
                        (a.mul(i1, i2) * b.n + b.mul(j1, j2)) as u32;
                }
            }
        }
    }
    MulTable::from_rows(rows)
}

/// Split extension of a cyclic normal part of order `m` by a cyclic group of
/// order `n` whose chosen generator acts by `x -> r*x` on `Z_m`. Element
/// `(v, j)` sits at index `v + m * j`.
pub fn semidirect_cyclic(m: usize, n: usize, r: usize) -> Result<MulTable> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("orders must be positive".into()));
    }
    let r = r % m;
    if num::integer::gcd(r as i64, m as i64) != 1 {
        return Err(Error::Domain("the action multiplier must be a unit".into()));
    }
    // Powers of r modulo m, one per outer exponent.
    let mut rp = vec![1 % m; n];
    for j in 1..n {
        rp[j] = rp[j - 1] * r % m;
    }
    if rp[n - 1] * r % m != 1 % m {
        return Err(Error::Domain("the action order must divide the outer order".into()));
    }
    let idx = |v: usize, j: usize| v + m * j;
    let mut rows = vec![vec![0u32; m * n]; m * n];
    for v1 in 0..m {
        for j1 in 0..n {
            for v2 in 0..m {
                for j2 in 0..n {
                    rows[idx(v1, j1)][idx(v2, j2)] =
                        idx((v1 + rp[j1] * v2) % m, (j1 + j2) % n) as u32;
                }
            }
        }
    }
    Ok(MulTable::from_rows(rows))
}

/// Dihedral group of order `2m` (`m = 1` gives the two-element group, `m = 2`
/// the Klein four-group).
pub fn dihedral_table(m: usize) -> MulTable {
    assert!(m >= 1);
    let r = if m == 1 { 0 } else { m - 1 };
    semidirect_cyclic(m, 2, r).expect("dihedral parameters are always valid")
}

/// The order-`4m` group `(2m : 2)` with the outer involution acting by
/// `g -> g^(m+1)` on the cyclic part; `m` must be a power of two, at least 2.
/// `m = 2` yields the dihedral group of order 8.
pub fn modular_table(m: usize) -> Result<MulTable> {
    if m < 2 || !m.is_power_of_two() {
        return Err(Error::Domain("the modular parameter must be a power of two, at least 2".into()));
    }
    semidirect_cyclic(2 * m, 2, m + 1)
}

/// `(2m : 2) x q` for odd `q`; the product of the modular group with a cyclic
/// group of odd order. Element `(i, j)` sits at index `i * q + j`.
pub fn modular_product(m: usize, q: usize) -> Result<MulTable> {
    if q % 2 == 0 {
        return Err(Error::Domain("the cyclic factor must have odd order".into()));
    }
    Ok(direct_product(&modular_table(m)?, &cyclic_table(q)))
}

/// `2 x 2n`: the product of a two-element group with a cyclic group of order
/// `2n`. Element `(i, j)` sits at index `i * 2n + j`.
pub fn two_cross_table(n: usize) -> MulTable {
    assert!(n >= 1);
    direct_product(&cyclic_table(2), &cyclic_table(2 * n))
}

/// Dicyclic group of order `4k`: `a` of order `2k`, `b^2 = a^k`, and `b`
/// inverting `a`. `k = 1` gives the cyclic group of order 4, `k = 2` the
/// quaternions. Element `a^v b^j` sits at index `v + 2k * j` for `j` in 0..2.
pub fn dicyclic_table(k: usize) -> MulTable {
    assert!(k >= 1);
    let m = 2 * k;
    let idx = |v: usize, j: usize| v + m * j;
    let mut rows = vec![vec![0u32; 2 * m]; 2 * m];
    for v1 in 0..m {
        for v2 in 0..m {
            for j2 in 0..2 {
                rows[idx(v1, 0)][idx(v2, j2)] = idx((v1 + v2) % m, j2) as u32;
                let v = (v1 + m - v2) % m;
                rows[idx(v1, 1)][idx(v2, j2)] = if j2 == 0 {
                    idx(v, 1) as u32
                } else {
                    idx((v + k) % m, 0) as u32
                };
            }
        }
    }
    MulTable::from_rows(rows)
}

/// Central product of `a` with a cyclic group of order `2s`, glued along the
/// central involution `z` of `a` and the unique involution of the cyclic
/// factor.
pub fn central_product_cyclic(a: &MulTable, z: usize, s: usize) -> MulTable {
    assert!(a.element_order(z) == 2, "glue element must be an involution");
    let prod = direct_product(a, &cyclic_table(2 * s));
    let glue = closure_of_subset(&prod, &[z * 2 * s + s]);
    quotient_table(&prod, &glue).0
}

/// A short generating sequence found greedily: repeatedly adjoin the smallest
/// element outside the span of the previous picks.
pub fn generating_sequence(t: &MulTable) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = closure_of_subset(t, &[]);
    while closed.len() < t.n {
        let in_closed: HashSet<usize> = closed.iter().copied().collect();
        let g = (0..t.n).find(|i| !in_closed.contains(i)).unwrap();
        gens.push(g);
        closed = closure_of_subset(t, &gens);
    }
    gens
}

/// Whether `sub` embeds into `big` as a subgroup: backtracking search for a
/// monomorphism, assigning images to a generating sequence and propagating
/// products.
pub fn try_embed(sub: &MulTable, big: &MulTable) -> bool {
    if big.n % sub.n != 0 {
        return false;
    }
    let avail: HashMap<u64, u64> = big.order_histogram().into_iter().collect();
    for (o, c) in sub.order_histogram() {
        if avail.get(&o).copied().unwrap_or(0) < c {
            return false;
        }
    }
    let gens = generating_sequence(sub);
    let big_orders: Vec<u64> = (0..big.n).map(|i| big.element_order(i)).collect();
    let mut map: HashMap<usize, usize> = HashMap::new();
    map.insert(0, 0);
    extend_embedding(sub, big, &gens, 0, &map, &big_orders)
}

fn extend_embedding(
    sub: &MulTable,
    big: &MulTable,
    gens: &[usize],
    k: usize,
    map: &HashMap<usize, usize>,
    big_orders: &[u64],
) -> bool {
    if k == gens.len() {
        return true;
    }
    let g = gens[k];
    let want = sub.element_order(g);
    for h in 0..big.n {
        if big_orders[h] != want {
            continue;
        }
        if let Some(extended) = grow_partial_hom(sub, big, map, g, h) {
            if extend_embedding(sub, big, gens, k + 1, &extended, big_orders) {
                return true;
            }
        }
    }
    false
}

/// Extend a partial homomorphism (defined on a subgroup) by one generator
/// image, closing under products; `None` on any inconsistency or collision.
fn grow_partial_hom(
    sub: &MulTable,
    big: &MulTable,
    map: &HashMap<usize, usize>,
    g: usize,
    h: usize,
) -> Option<HashMap<usize, usize>> {
    let mut out = map.clone();
    let mut queue: Vec<usize> = Vec::new();
    match out.get(&g) {
        Some(&old) if old != h => return None,
        Some(_) => return Some(out),
        None => {
            out.insert(g, h);
            queue.push(g);
        }
    }
    while let Some(x) = queue.pop() {
        let known: Vec<usize> = out.keys().copied().collect();
        for y in known {
            for (p, q) in [
                (sub.mul(x, y), big.mul(out[&x], out[&y])),
                (sub.mul(y, x), big.mul(out[&y], out[&x])),
            ] {
                match out.get(&p) {
                    Some(&img) if img != q => return None,
                    Some(_) => {}
                    None => {
                        out.insert(p, q);
                        queue.push(p);
                    }
                }
            }
        }
    }
    let image: HashSet<usize> = out.values().copied().collect();
    if image.len() != out.len() {
        return None;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog::Catalog;
    use crate::groups::subgroups::{is_cyclic, is_dihedral, isomorphic};

    #[test]
    fn reference_tables_match_catalog() {
        let cat = Catalog::builtin();
        assert_eq!(cat.identify(&dihedral_table(4)).unwrap(), "D8");
        assert_eq!(cat.identify(&modular_table(2).unwrap()).unwrap(), "D8");
        assert_eq!(cat.identify(&modular_table(4).unwrap()).unwrap(), "M16");
        assert_eq!(cat.identify(&two_cross_table(2)).unwrap(), "4x2");
        assert_eq!(cat.identify(&two_cross_table(1)).unwrap(), "2^2");
        assert_eq!(cat.identify(&dihedral_table(3)).unwrap(), "S3");
        assert_eq!(cat.identify(&cyclic_table(12)).unwrap(), "12");
        assert_eq!(cat.identify(&direct_product(&dihedral_table(3), &cyclic_table(2))).unwrap(), "S3x2");
        assert!(isomorphic(&modular_product(2, 1).unwrap(), &dihedral_table(4)));
        assert!(isomorphic(&modular_product(2, 3).unwrap(), &direct_product(&dihedral_table(4), &cyclic_table(3))));
        assert_eq!(cat.identify(&dicyclic_table(2)).unwrap(), "Q8");
        assert!(is_cyclic(&dicyclic_table(1)));
        // gluing a cyclic 4 onto the dihedral of order 8 over its center
        let pauli = central_product_cyclic(&dihedral_table(4), 2, 2);
        assert_eq!(cat.identify(&pauli).unwrap(), "4.2^2");
        // the same central product built from the quaternions
        assert!(isomorphic(&pauli, &central_product_cyclic(&dicyclic_table(2), 2, 2)));
    }

    #[test]
    fn semidirect_validation() {
        assert!(semidirect_cyclic(8, 2, 3).is_ok());
        // 2 is not a unit modulo 8
        assert!(semidirect_cyclic(8, 2, 2).is_err());
        // 3 has order 2 modulo 8, not 4; order must divide the outer order
        assert!(semidirect_cyclic(8, 4, 3).is_ok());
        assert!(semidirect_cyclic(8, 3, 3).is_err());
        assert!(modular_table(3).is_err());
        assert!(modular_table(1).is_err());
        assert!(modular_product(4, 2).is_err());
    }

    #[test]
    fn dihedral_and_cyclic_shapes() {
        for m in 2..=9 {
            let d = dihedral_table(m);
            assert!(is_dihedral(&d), "order {}", 2 * m);
            assert_eq!(d.n, 2 * m);
        }
        assert!(is_cyclic(&dihedral_table(1)));
        for n in 1..=12 {
            assert!(is_cyclic(&cyclic_table(n)));
        }
        // 2 x 2n is cyclic for no n
        for n in 1..=6 {
            assert!(!is_cyclic(&two_cross_table(n)));
        }
    }

    #[test]
    fn generating_sequences_are_short() {
        assert_eq!(generating_sequence(&cyclic_table(12)).len(), 1);
        assert!(generating_sequence(&dihedral_table(6)).len() <= 2);
        assert!(generating_sequence(&two_cross_table(4)).len() <= 2);
        assert!(generating_sequence(&modular_product(4, 3).unwrap()).len() <= 3);
    }

    #[test]
    fn embedding_search() {
        // subgroup chains of dihedral groups
        assert!(try_embed(&dihedral_table(3), &dihedral_table(12)));
        assert!(try_embed(&cyclic_table(6), &dihedral_table(6)));
        assert!(try_embed(&dihedral_table(2), &dihedral_table(4)));
        // order obstructions
        assert!(!try_embed(&cyclic_table(4), &two_cross_table(1)));
        assert!(!try_embed(&dihedral_table(5), &dihedral_table(12)));
        // same order, different groups
        assert!(!try_embed(&dihedral_table(4), &two_cross_table(2)));
        // the modular group of order 16 contains 4 x 2 but not the dihedral of order 8
        let m16 = modular_table(4).unwrap();
        assert!(try_embed(&two_cross_table(2), &m16));
        assert!(!try_embed(&dihedral_table(4), &m16));
        // products embed componentwise
        let d8x3 = direct_product(&dihedral_table(4), &cyclic_table(3));
        assert!(try_embed(&dihedral_table(4), &d8x3));
        assert!(try_embed(&cyclic_table(12), &d8x3));
        assert!(!try_embed(&dihedral_table(6), &d8x3));
    }
}
