//! Structure fingerprints for finite groups, used to identify a group up to
//! isomorphism against the catalog without running a full isomorphism search.

use super::subgroups::{
    derived_subgroup, index2_subgroups, quotient_table, subgroup_table,
};
use super::MulTable;
use std::fmt;

/// Invariants of a group up to isomorphism. The base layer (order, element
/// order histogram, commutativity, center, abelianization, exponent, derived
/// subgroup order) separates all small groups except a few pairs at order 16
/// and beyond; `refinement` settles those.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupFingerprint {
    pub order: usize,
    pub order_histogram: Vec<(u64, u64)>,
    pub abelian: bool,
    pub center_order: usize,
    /// Invariant factors of the abelianization, each dividing the next.
    pub abelianization: Vec<u64>,
    pub exponent: u64,
    pub derived_order: usize,
    pub refinement: Option<Refinement>,
}

/// Second layer, computed for groups of order 16 and up: base fingerprints of
/// every index-2 subgroup (sorted) and of the quotient by the center.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Refinement {
    pub index2: Vec<String>,
    pub center_quotient: String,
}

impl GroupFingerprint {
    pub fn of(t: &MulTable) -> Self {
        let mut fp = Self::base(t);
        if t.n >= 16 {
            let mut index2: Vec<String> = index2_subgroups(t)
                .iter()
                .map(|s| Self::base(&subgroup_table(t, s)).to_string())
                .collect();
            index2.sort();
            let (zq, _) = quotient_table(t, &t.center());
            fp.refinement = Some(Refinement {
                index2,
                center_quotient: Self::base(&zq).to_string(),
            });
        }
        fp
    }

    /// The first layer only, never recursing.
    pub fn base(t: &MulTable) -> Self {
        let derived = derived_subgroup(t);
        let (ab, _) = quotient_table(t, &derived);
        GroupFingerprint {
            order: t.n,
            order_histogram: t.order_histogram(),
            abelian: t.is_abelian(),
            center_order: t.center().len(),
            abelianization: abelian_invariant_factors(&ab),
            exponent: t.exponent(),
            derived_order: derived.len(),
            refinement: None,
        }
    }
}

impl fmt::Display for GroupFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o={};h=", self.order)?;
        for (i, (ord, count)) in self.order_histogram.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{ord}:{count}")?;
        }
        let ab: Vec<String> = self.abelianization.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            ";a={};z={};q=[{}];e={};d={}",
            if self.abelian { 1 } else { 0 },
            self.center_order,
            ab.join(","),
            self.exponent,
            self.derived_order
        )?;
        if let Some(r) = &self.refinement {
            write!(f, ";i2=[{}];zq=({})", r.index2.join("|"), r.center_quotient)?;
        }
        Ok(())
    }
}

/// Invariant factors `d1 | d2 | ... | dk` of an abelian group given by its
/// multiplication table. Counts, for each prime power `p^k`, how many
/// elements have order dividing `p^k`; those counts determine the number of
/// cyclic `p`-power factors of each size.
pub fn abelian_invariant_factors(t: &MulTable) -> Vec<u64> {
    assert!(t.is_abelian(), "invariant factors need an abelian group");
    let n = t.n as u64;
    if n == 1 {
        return vec![];
    }
    let orders: Vec<u64> = (0..t.n).map(|i| t.element_order(i)).collect();
    let mut primes: Vec<u64> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    // exps_by_prime[p] = exponents of the cyclic p-factors, descending.
    let mut exps_by_prime: Vec<Vec<u32>> = Vec::new();
    for &p in &primes {
        // a[k] = log_p of the number of elements with order dividing p^k.
        let mut a: Vec<u32> = vec![0];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let cnt = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let mut log = 0u32;
            let mut c = cnt;
            while c > 1 {
                assert_eq!(c % p, 0, "element count must be a power of {p}");
                c /= p;
                log += 1;
            }
            if log == *a.last().unwrap() {
                break;
            }
            a.push(log);
        }
        // m_k = a[k] - a[k-1] = number of factors with exponent >= k.
        let m: Vec<u32> = (1..a.len()).map(|k| a[k] - a[k - 1]).collect();
        let parts = m.first().copied().unwrap_or(0);
        let exps: Vec<u32> = (1..=parts)
            .map(|i| m.iter().filter(|&&mk| mk >= i).count() as u32)
            .collect();
        exps_by_prime.push(exps);
    }
    let width = exps_by_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = Vec::new();
    for j in 0..width {
        let mut d = 1u64;
        for (pi, &p) in primes.iter().enumerate() {
            if let Some(&e) = exps_by_prime[pi].get(j) {
                d *= p.pow(e);
            }
        }
        factors.push(d);
    }
    factors.reverse(); // ascending, d1 | d2 | ... | dk
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteGroup, GroupElement};

    fn cyclic(n: usize) -> MulTable {
        let mut p: Vec<usize> = (1..n).collect();
        p.push(0);
        FiniteGroup::closure(&[GroupElement::perm(p)], 300).unwrap().table
    }

    fn product(a: &MulTable, b: &MulTable) -> MulTable {
        let n = a.n * b.n;
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (xa, xb) = (x / b.n, x % b.n);
                        let (ya, yb) = (y / b.n, y % b.n);
                        (a.mul(xa, ya) * b.n + b.mul(xb, yb)) as u32
                    })
                    .collect()
            })
            .collect();
        MulTable::from_rows(rows)
    }

    #[test]
    fn invariant_factors_of_products() {
        assert_eq!(abelian_invariant_factors(&cyclic(12)), vec![12]);
        assert_eq!(abelian_invariant_factors(&cyclic(1)), Vec::<u64>::new());
        let c2xc4 = product(&cyclic(2), &cyclic(4));
        assert_eq!(abelian_invariant_factors(&c2xc4), vec![2, 4]);
        let c6xc2 = product(&cyclic(6), &cyclic(2));
        assert_eq!(abelian_invariant_factors(&c6xc2), vec![2, 6]);
        let c2c2c2 = product(&product(&cyclic(2), &cyclic(2)), &cyclic(2));
        assert_eq!(abelian_invariant_factors(&c2c2c2), vec![2, 2, 2]);
        // C2 x C4 and C8 have the same order but different factors.
        assert_ne!(
            abelian_invariant_factors(&cyclic(8)),
            abelian_invariant_factors(&c2xc4)
        );
        let c12xc2 = product(&cyclic(12), &cyclic(2));
        assert_eq!(abelian_invariant_factors(&c12xc2), vec![2, 12]);
    }

    #[test]
    fn s3_fingerprint() {
        let t = FiniteGroup::closure(
            &[GroupElement::perm(vec![1, 2, 0]), GroupElement::perm(vec![1, 0, 2])],
            100,
        )
        .unwrap()
        .table;
        let fp = GroupFingerprint::of(&t);
        assert_eq!(fp.order, 6);
        assert!(!fp.abelian);
        assert_eq!(fp.center_order, 1);
        assert_eq!(fp.abelianization, vec![2]);
        assert_eq!(fp.exponent, 6);
        assert_eq!(fp.derived_order, 3);
        assert!(fp.refinement.is_none());
        assert_eq!(fp.to_string(), "o=6;h=1:1,2:3,3:2;a=0;z=1;q=[2];e=6;d=3");
    }

    #[test]
    fn refinement_kicks_in_at_order_16() {
        let c2xc8 = product(&cyclic(2), &cyclic(8));
        let fp = GroupFingerprint::of(&c2xc8);
        let r = fp.refinement.as_ref().expect("order 16 must refine");
        // C2 x C8 has three index-2 subgroups: two copies of C8 and one
        // C2 x C4, so two distinct base prints among the three.
        assert_eq!(r.index2.len(), 3);
        let mut distinct = r.index2.clone();
        distinct.dedup();
        assert_eq!(distinct.len(), 2);
        // Abelian group: center quotient is trivial.
        assert_eq!(r.center_quotient, "o=1;h=1:1;a=1;z=1;q=[];e=1;d=1");
        // Below order 16 no refinement.
        assert!(GroupFingerprint::of(&cyclic(12)).refinement.is_none());
    }
}
