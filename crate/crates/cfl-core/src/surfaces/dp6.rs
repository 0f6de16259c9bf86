//! Degree-6 del Pezzo surface: the hexagon of exceptional classes and the
//! dihedral action on it.
//!
//! The six classes form a cycle in which consecutive classes meet and all
//! others are disjoint. Vertex permutations of that hexagon that extend to
//! isometries of the Picard lattice are exactly the dihedral symmetries;
//! minimality of a subgroup is decided by the invariant rank of its
//! isometry group.

use crate::groups::{FiniteGroup, GroupElement};
use crate::lattice::{IsoMat, PicLattice};
use crate::{Error, Result};

/// Labels of the hexagon vertices in cyclic order.
pub fn hexagon_labels() -> Vec<String> {
    ["E1", "F12", "E2", "F23", "E3", "F13"]
        .into_iter()
        .map(str::to_string)
        .collect()
}

/// Class vectors of the hexagon vertices in the Picard basis (L, e1..e3),
/// in the same cyclic order as the labels.
pub fn hexagon_classes() -> Vec<Vec<i64>> {
    vec![
        vec![0, 1, 0, 0],
        vec![1, -1, -1, 0],
        vec![0, 0, 1, 0],
        vec![1, 0, -1, -1],
        vec![0, 0, 0, 1],
        vec![1, -1, 0, -1],
    ]
}

/// Rotation of the hexagon by one step.
pub fn rotation() -> Vec<usize> {
    vec![1, 2, 3, 4, 5, 0]
}

/// Reflection of the hexagon through vertices 0 and 3.
pub fn reflection() -> Vec<usize> {
    vec![0, 5, 4, 3, 2, 1]
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// Rotation by two steps (an order-3 symmetry).
pub fn double_rotation() -> Vec<usize> {
    compose(&rotation(), &rotation())
}

/// Reflection through edge midpoints (rotation then vertex reflection).
pub fn edge_reflection() -> Vec<usize> {
    compose(&rotation(), &reflection())
}

/// The antipodal map (rotation cubed).
pub fn antipode() -> Vec<usize> {
    compose(&rotation(), &double_rotation())
}

/// Isometry of the degree-6 Picard lattice induced by a vertex permutation
/// of the hexagon.
pub fn vertex_perm_isometry(lat: &PicLattice, perm: &[usize]) -> Result<IsoMat> {
    lat.isometry_from_class_permutation(&hexagon_classes(), perm)
        .ok_or_else(|| {
            Error::Inconsistent("vertex permutation does not extend to an isometry".into())
        })
}

/// Close vertex permutations into the group of isometries they generate.
/// No generators yields the trivial group.
pub fn isometry_group(lat: &PicLattice, perms: &[Vec<usize>]) -> Result<FiniteGroup> {
    let identity: Vec<usize> = (0..6).collect();
    let mut gens: Vec<GroupElement> = vec![GroupElement::Isometry(
        vertex_perm_isometry(lat, &identity)?,
    )];
    for p in perms {
        gens.push(GroupElement::Isometry(vertex_perm_isometry(lat, p)?));
    }
    FiniteGroup::closure(&gens, 100)
}

/// Whether the subgroup generated by the given hexagon symmetries acts
/// minimally, i.e. leaves no invariant class beyond the canonical one.
pub fn dp6_minimality(perms: &[Vec<usize>]) -> Result<bool> {
    let lat = PicLattice::del_pezzo(6);
    let group = isometry_group(&lat, perms)?;
    let mats: Vec<IsoMat> = group
        .elems
        .into_iter()
        .map(|e| match e {
            GroupElement::Isometry(m) => Ok(m),
            _ => Err(Error::Inconsistent("expected isometries".into())),
        })
        .collect::<Result<_>>()?;
    Ok(lat.invariant_rank(&mats) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::subgroups::isomorphic;

    #[test]
    fn hexagon_meetings() {
        let lat = PicLattice::del_pezzo(6);
        let classes = hexagon_classes();
        for (i, c) in classes.iter().enumerate() {
            assert_eq!(lat.pairing(c, c), -1);
            for (j, d) in classes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let adjacent = (i + 1) % 6 == j || (j + 1) % 6 == i;
                assert_eq!(lat.pairing(c, d) == 1, adjacent, "vertices {i},{j}");
                assert!(lat.pairing(c, d) == 0 || lat.pairing(c, d) == 1);
            }
        }
    }

    #[test]
    fn dihedral_group_and_minimality() {
        let lat = PicLattice::del_pezzo(6);
        let full = isometry_group(&lat, &[rotation(), reflection()]).unwrap();
        assert_eq!(full.order(), 12);
        assert!(dp6_minimality(&[rotation(), reflection()]).unwrap());
        // The rotation alone already acts minimally.
        assert!(dp6_minimality(&[rotation()]).unwrap());
    }

    #[test]
    fn two_triangle_groups_differ_only_in_the_action() {
        let lat = PicLattice::del_pezzo(6);
        // Both subgroups are S3, but one mixes the two vertex parities and
        // the other preserves them.
        let mixing = [double_rotation(), edge_reflection()];
        let preserving = [double_rotation(), reflection()];
        let a = isometry_group(&lat, &mixing).unwrap();
        let b = isometry_group(&lat, &preserving).unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(b.order(), 6);
        assert!(isomorphic(&a.table, &b.table));
        assert!(!a.table.is_abelian());
        assert!(dp6_minimality(&mixing).unwrap());
        assert!(!dp6_minimality(&preserving).unwrap());
    }

    #[test]
    fn small_subgroups_are_not_minimal() {
        // A single reflection through opposite vertices.
        assert!(!dp6_minimality(&[reflection()]).unwrap());
        // The antipodal involution.
        assert!(!dp6_minimality(&[antipode()]).unwrap());
        // The trivial group.
        assert!(!dp6_minimality(&[]).unwrap());
    }

    #[test]
    fn non_symmetry_is_rejected() {
        let lat = PicLattice::del_pezzo(6);
        // Swapping two non-adjacent vertices only is not an isometry.
        let bad = vec![2usize, 1, 0, 3, 4, 5];
        assert!(vertex_perm_isometry(&lat, &bad).is_err());
    }
}
