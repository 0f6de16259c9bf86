//! Degree-5 del Pezzo surface: five-point configurations on the line and
//! the Petersen combinatorics of the ten exceptional classes.
//!
//! A configuration of five distinct points on the projective line
//! determines the surface together with a marked point; projective
//! equivalences of ordered configurations are computed exactly. The ten
//! classes are labelled by pairs from {1..5} so that two classes meet
//! exactly when their pairs are disjoint, and symbol permutations act on
//! the Picard lattice through that labelling.

use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::linalg::{projectively_equal, CycMat};
use crate::groups::{FiniteGroup, GroupElement};
use crate::lattice::{IsoMat, PicLattice};
use crate::{Error, Result};

/// Five distinct points on the projective line, in a fixed order, each
/// stored as homogeneous coordinates.
#[derive(Clone, Debug)]
pub struct FivePointConfig {
    pub points: [(Cyclotomic, Cyclotomic); 5],
}

fn det2(p: &(Cyclotomic, Cyclotomic), q: &(Cyclotomic, Cyclotomic)) -> Cyclotomic {
    &(&p.0 * &q.1) - &(&q.0 * &p.1)
}

impl FivePointConfig {
    pub fn new(points: [(Cyclotomic, Cyclotomic); 5]) -> Result<FivePointConfig> {
        for (a, b) in &points {
            if a.is_zero() && b.is_zero() {
                return Err(Error::Domain("zero vector is not a point".into()));
            }
        }
        for i in 0..5 {
            for j in i + 1..5 {
                if det2(&points[i], &points[j]).is_zero() {
                    return Err(Error::Domain(format!("points {i} and {j} coincide")));
                }
            }
        }
        Ok(FivePointConfig { points })
    }

    /// The fifth roots of unity in order: point i is zeta_5^i.
    pub fn standard() -> FivePointConfig {
        let pts = std::array::from_fn(|i| {
            (Cyclotomic::root_of_unity(5, i as i64), Cyclotomic::one())
        });
        FivePointConfig { points: pts }
    }

    /// The fifth roots of unity in the order of the cube map: point i is
    /// zeta_5^(3i).
    pub fn twisted() -> FivePointConfig {
        let pts = std::array::from_fn(|i| {
            (Cyclotomic::root_of_unity(5, 3 * i as i64), Cyclotomic::one())
        });
        FivePointConfig { points: pts }
    }

    /// Reorder: entry i of the result is entry images[i] of this config.
    pub fn permuted(&self, images: &[usize; 5]) -> FivePointConfig {
        let pts = std::array::from_fn(|i| self.points[images[i]].clone());
        FivePointConfig { points: pts }
    }
}

/// The projective transformation taking the ordered configuration P to the
/// ordered configuration Q, if one exists. The map is pinned down by the
/// first three points and then checked on the remaining two.
pub fn five_point_equivalent(
    p: &FivePointConfig,
    q: &FivePointConfig,
) -> Result<Option<CycMat>> {
    // frame(c) sends c0, c1, c2 to 0, infinity, (1:1).
    let frame = |c: &FivePointConfig| {
        let s01 = det2(&c.points[2], &c.points[1]);
        let s00 = det2(&c.points[2], &c.points[0]);
        CycMat::from_rows(vec![
            vec![&s01 * &c.points[0].1, -&(&s01 * &c.points[0].0)],
            vec![&s00 * &c.points[1].1, -&(&s00 * &c.points[1].0)],
        ])
    };
    let fp = frame(p);
    let fq = frame(q);
    let m = fq
        .inverse()
        .ok_or_else(|| Error::Inconsistent("frame map must be invertible".into()))?
        .mul(&fp);
    for i in 3..5 {
        let img = m.mul_vec(&[p.points[i].0.clone(), p.points[i].1.clone()]);
        let target = [q.points[i].0.clone(), q.points[i].1.clone()];
        if !projectively_equal(&img, &target) {
            return Ok(None);
        }
    }
    Ok(Some(m))
}

/// Labels of the ten exceptional classes: the four blowup classes E1..E4
/// followed by the six pencil classes Fab (a < b in {1..4}).
pub fn line_labels() -> Vec<String> {
    let mut out: Vec<String> = (1..=4).map(|a| format!("E{a}")).collect();
    for a in 1..=4u32 {
        for b in a + 1..=4 {
            out.push(format!("F{a}{b}"));
        }
    }
    out
}

/// Pair in {1..5} attached to each class slot: Ea gets {a,5}, and Fab gets
/// the complement of {a,b} inside {1..4}. With this labelling two classes
/// meet exactly when their pairs are disjoint.
pub fn line_pairs() -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (1..=4).map(|a| (a, 5)).collect();
    for a in 1..=4usize {
        for b in a + 1..=4 {
            let rest: Vec<usize> = (1..=4).filter(|&m| m != a && m != b).collect();
            out.push((rest[0], rest[1]));
        }
    }
    out
}

/// Class vectors in the Picard basis (L, e1..e4).
pub fn line_classes() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in 1..=4usize {
        let mut v = vec![0i64; 5];
        v[a] = 1;
        out.push(v);
    }
    for a in 1..=4usize {
        for b in a + 1..=4 {
            let mut v = vec![0i64; 5];
            v[0] = 1;
            v[a] = -1;
            v[b] = -1;
            out.push(v);
        }
    }
    out
}

/// Permutation of the ten class slots induced by a permutation of the five
/// symbols (images sigma[i] for i in 1..=5; sigma[0] ignored).
pub fn symbol_perm_to_line_perm(sigma: &[usize; 6]) -> Vec<usize> {
    let pairs = line_pairs();
    let image_of = |(a, b): (usize, usize)| {
        let (x, y) = (sigma[a], sigma[b]);
        let key = if x < y { (x, y) } else { (y, x) };
        pairs
            .iter()
            .position(|&p| p == key)
            .expect("image pair is a class pair")
    };
    pairs.iter().map(|&p| image_of(p)).collect()
}

/// Isometry of the degree-5 Picard lattice induced by a symbol permutation.
pub fn dp5_isometry(lat: &PicLattice, sigma: &[usize; 6]) -> Result<IsoMat> {
    let classes = line_classes();
    let perm = symbol_perm_to_line_perm(sigma);
    lat.isometry_from_class_permutation(&classes, &perm)
        .ok_or_else(|| {
            Error::Inconsistent("symbol permutation does not extend to an isometry".into())
        })
}

/// Close a set of symbol permutations into a group of lattice isometries.
pub fn isometry_group(lat: &PicLattice, sigmas: &[[usize; 6]]) -> Result<Vec<IsoMat>> {
    let gens: Vec<GroupElement> = sigmas
        .iter()
        .map(|s| dp5_isometry(lat, s).map(GroupElement::Isometry))
        .collect::<Result<_>>()?;
    let group = FiniteGroup::closure(&gens, 200)?;
    Ok(group
        .elems
        .into_iter()
        .map(|e| match e {
            GroupElement::Isometry(m) => m,
            _ => unreachable!("closure of isometries"),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROT: [usize; 6] = [0, 2, 3, 4, 5, 1];
    const FLIP: [usize; 6] = [0, 1, 5, 4, 3, 2];

    fn ratio(m: &CycMat, num: (usize, usize), den: (usize, usize)) -> Cyclotomic {
        &m[num] / &m[den]
    }

    #[test]
    fn petersen_meeting_rule() {
        let lat = PicLattice::del_pezzo(5);
        let classes = line_classes();
        let pairs = line_pairs();
        assert_eq!(classes.len(), 10);
        for (i, c) in classes.iter().enumerate() {
            assert_eq!(lat.pairing(c, c), -1, "class {i}");
            let mut meets = 0;
            for (j, d) in classes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let m = lat.pairing(c, d);
                assert!(m == 0 || m == 1);
                let (a, b) = pairs[i];
                let (x, y) = pairs[j];
                let disjoint = a != x && a != y && b != x && b != y;
                assert_eq!(m == 1, disjoint, "classes {i},{j}");
                meets += m;
            }
            assert_eq!(meets, 3, "class {i} should meet three others");
        }
    }

    #[test]
    fn configuration_equivalences() {
        let p = FivePointConfig::standard();
        // Every configuration is equivalent to itself by the identity.
        let id = five_point_equivalent(&p, &p).unwrap().unwrap();
        assert!(id[(0, 1)].is_zero() && id[(1, 0)].is_zero());
        assert!(ratio(&id, (0, 0), (1, 1)).is_one());
        // The cyclic shift is realized by z -> zeta_5 z.
        let rot = [ROT[1] - 1, ROT[2] - 1, ROT[3] - 1, ROT[4] - 1, ROT[5] - 1];
        let m = five_point_equivalent(&p, &p.permuted(&rot)).unwrap().unwrap();
        assert!(m[(0, 1)].is_zero() && m[(1, 0)].is_zero());
        assert_eq!(ratio(&m, (0, 0), (1, 1)), Cyclotomic::root_of_unity(5, 1));
        // The flip fixing the first point is realized by z -> 1/z.
        let flip = [FLIP[1] - 1, FLIP[2] - 1, FLIP[3] - 1, FLIP[4] - 1, FLIP[5] - 1];
        let m = five_point_equivalent(&p, &p.permuted(&flip)).unwrap().unwrap();
        assert!(m[(0, 0)].is_zero() && m[(1, 1)].is_zero());
        assert!(ratio(&m, (0, 1), (1, 0)).is_one());
        // A bare transposition of the first two points is not projective.
        let swap = [1usize, 0, 2, 3, 4];
        assert!(five_point_equivalent(&p, &p.permuted(&swap)).unwrap().is_none());
    }

    #[test]
    fn twisted_configuration() {
        let p = FivePointConfig::standard();
        let t = FivePointConfig::twisted();
        // Same ordered points only after the exponent-3 relabelling, which
        // is not projective: the two ordered configurations differ.
        assert!(five_point_equivalent(&p, &t).unwrap().is_none());
        // The shift acts on the twisted configuration through zeta_5^3.
        let rot = [1usize, 2, 3, 4, 0];
        let m = five_point_equivalent(&t, &t.permuted(&rot)).unwrap().unwrap();
        assert!(m[(0, 1)].is_zero() && m[(1, 0)].is_zero());
        assert_eq!(ratio(&m, (0, 0), (1, 1)), Cyclotomic::root_of_unity(5, 3));
    }

    #[test]
    fn dihedral_action_is_minimal() {
        let lat = PicLattice::del_pezzo(5);
        let dihedral = isometry_group(&lat, &[ROT, FLIP]).unwrap();
        assert_eq!(dihedral.len(), 10);
        assert_eq!(lat.invariant_rank(&dihedral), 0);
        // The full symbol group also leaves no invariant part.
        let swap12: [usize; 6] = [0, 2, 1, 3, 4, 5];
        let all = isometry_group(&lat, &[ROT, swap12]).unwrap();
        assert_eq!(all.len(), 120);
        assert_eq!(lat.invariant_rank(&all), 0);
    }

    #[test]
    fn symbol_stabilizer_is_not_minimal() {
        let lat = PicLattice::del_pezzo(5);
        // Permutations fixing symbol 5 stabilize the blowup classes setwise.
        let swap12: [usize; 6] = [0, 2, 1, 3, 4, 5];
        let cycle4: [usize; 6] = [0, 2, 3, 4, 1, 5];
        let sub = isometry_group(&lat, &[swap12, cycle4]).unwrap();
        assert_eq!(sub.len(), 24);
        assert!(lat.invariant_rank(&sub) >= 1);
    }

    #[test]
    fn pentagon_orbit() {
        let pairs = line_pairs();
        let perm = symbol_perm_to_line_perm(&ROT);
        let lat = PicLattice::del_pezzo(5);
        let classes = line_classes();
        let start = pairs.iter().position(|&p| p == (1, 2)).unwrap();
        let mut orbit = vec![start];
        loop {
            let next = perm[*orbit.last().unwrap()];
            if next == start {
                break;
            }
            orbit.push(next);
        }
        assert_eq!(orbit.len(), 5);
        // The orbit forms a closed chain: each class meets exactly two
        // others in the orbit.
        for &i in &orbit {
            let met = orbit
                .iter()
                .filter(|&&j| j != i && lat.pairing(&classes[i], &classes[j]) == 1)
                .count();
            assert_eq!(met, 2, "class {i}");
        }
    }
}
