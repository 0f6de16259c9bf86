//! Finite group actions on the projective plane and their fixed loci.

use super::{intersect_subspaces, point_key, rref_basis, subspace_contains};
use crate::exact::linalg::{canonical_point, projectively_equal, CycMat};
use crate::exact::cyclotomic::Cyclotomic;
use crate::groups::{FiniteGroup, GroupElement, MatrixMode, DEFAULT_MAX_ORDER};
use crate::{Error, Result};

/// A finite subgroup of PGL_3 given by generating matrices.
#[derive(Debug, Clone)]
pub struct P2GroupAction {
    pub group: FiniteGroup,
    pub generators: Vec<CycMat>,
}

impl P2GroupAction {
    pub fn from_generators(gens: &[CycMat]) -> Result<Self> {
        let mut elems = Vec::new();
        for g in gens {
            if g.rows != 3 || g.cols != 3 {
                return Err(Error::Domain("plane actions need 3x3 matrices".into()));
            }
            if g.det().is_zero() {
                return Err(Error::Domain("singular generator".into()));
            }
            elems.push(GroupElement::matrix(g.clone(), MatrixMode::Projective));
        }
        if elems.is_empty() {
            elems.push(GroupElement::matrix(CycMat::identity(3), MatrixMode::Projective));
        }
        let group = FiniteGroup::closure(&elems, DEFAULT_MAX_ORDER)?;
        Ok(P2GroupAction { group, generators: gens.to_vec() })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Canonicalized matrices of all group elements.
    pub fn element_matrices(&self) -> Vec<&CycMat> {
        self.group
            .elems
            .iter()
            .map(|e| match e {
                GroupElement::Matrix(m) => m.mat(),
                _ => unreachable!("plane action elements are matrices"),
            })
            .collect()
    }
}

/// Structure of the set of points fixed by every element of the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum P2FixedStructure {
    /// No common fixed point.
    None,
    /// Exactly one fixed point.
    OnePoint { point: Vec<Cyclotomic> },
    /// Exactly three fixed points, in a deterministic order.
    ThreePoints { points: Vec<Vec<Cyclotomic>> },
    /// A pointwise-fixed line plus one fixed point off the line. The line
    /// is given by two spanning points in reduced echelon form.
    LinePlusPoint { line: Vec<Vec<Cyclotomic>>, point: Vec<Cyclotomic> },
}

impl P2FixedStructure {
    pub fn kind(&self) -> &'static str {
        match self {
            P2FixedStructure::None => "none",
            P2FixedStructure::OnePoint { .. } => "one_point",
            P2FixedStructure::ThreePoints { .. } => "three_points",
            P2FixedStructure::LinePlusPoint { .. } => "line_plus_point",
        }
    }
}

/// Smallest n >= 1 with m^n scalar, together with that scalar.
pub(crate) fn projective_order(m: &CycMat, limit: u32) -> Result<(u32, Cyclotomic)> {
    fn scalar_of(m: &CycMat) -> Option<Cyclotomic> {
        let c = m[(0, 0)].clone();
        for i in 0..m.rows {
            for j in 0..m.cols {
                if i == j {
                    if m[(i, j)] != c {
                        return None;
                    }
                } else if !m[(i, j)].is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }
    let mut acc = m.clone();
    for n in 1..=limit {
        if let Some(c) = scalar_of(&acc) {
            return Ok((n, c));
        }
        acc = acc.mul(m);
    }
    Err(Error::Domain(format!("no scalar power of the matrix up to exponent {limit}")))
}

/// Eigenvalue decomposition of a square matrix of finite projective order.
/// Each entry is an eigenvalue with a basis (echelon rows) of its
/// eigenspace; the dimensions add up to the size of the matrix.
pub fn eigenspaces(m: &CycMat) -> Result<Vec<(Cyclotomic, Vec<Vec<Cyclotomic>>)>> {
    assert!(m.is_square());
    let n = m.rows;
    let (ord, c) = projective_order(m, 600)?;
    if ord == 1 {
        let id = CycMat::identity(n);
        return Ok(vec![(c, (0..n).map(|i| id.row(i).to_vec()).collect())]);
    }
    // m^ord = c I. Normalize by mu with mu^ord = 1/c, so the candidate
    // eigenvalues of m are exactly the inverses of mu * (ord-th roots of 1).
    let (r, j) = c.as_root_of_unity().ok_or_else(|| {
        Error::Domain(format!("matrix power is the non-root-of-unity scalar {c}"))
    })?;
    let mu = Cyclotomic::root_of_unity(r * ord, -(j as i64));
    let mut out = Vec::new();
    let mut total = 0;
    for i in 0..ord {
        let s = &mu * &Cyclotomic::root_of_unity(ord, i as i64);
        let shifted = m.scale(&s).sub(&CycMat::identity(n));
        let ker = shifted.kernel();
        if !ker.is_empty() {
            total += ker.len();
            let basis = rref_basis(&CycMat::from_rows(ker));
            out.push((s.inv(), basis));
        }
    }
    if total != n {
        return Err(Error::Inconsistent(format!(
            "eigenspaces of a finite-order matrix span dimension {total} of {n}"
        )));
    }
    Ok(out)
}

/// Classify the common fixed locus of a finite plane action. The witnesses
/// returned are verified to be fixed by every group element.
pub fn p2_fixed_structure(action: &P2GroupAction) -> Result<P2FixedStructure> {
    let gens: Vec<&CycMat> = action
        .generators
        .iter()
        .filter(|g| projective_order(g, 600).map(|(n, _)| n > 1).unwrap_or(true))
        .collect();
    if gens.is_empty() {
        return Err(Error::Domain(
            "trivial plane action fixes the whole plane, not a finite structure".into(),
        ));
    }

    // Components of the fixed locus arise as intersections of eigenspaces,
    // one choice per generator. Keep only maximal nonzero intersections.
    let mut components: Vec<Vec<Vec<Cyclotomic>>> =
        eigenspaces(gens[0])?.into_iter().map(|(_, b)| b).collect();
    for g in &gens[1..] {
        let spaces = eigenspaces(g)?;
        let mut next: Vec<Vec<Vec<Cyclotomic>>> = Vec::new();
        for comp in &components {
            for (_, es) in &spaces {
                let inter = intersect_subspaces(comp, es, 3);
                if !inter.is_empty() {
                    next.push(inter);
                }
            }
        }
        components = prune_subspaces(next);
    }
    components = prune_subspaces(components);

    let mut dims: Vec<usize> = components.iter().map(|c| c.len()).collect();
    dims.sort_unstable();
    let structure = match dims.as_slice() {
        [] => P2FixedStructure::None,
        [1] => P2FixedStructure::OnePoint { point: canonical_point(&components[0][0]) },
        [1, 1, 1] => {
            let mut points: Vec<Vec<Cyclotomic>> =
                components.iter().map(|c| canonical_point(&c[0])).collect();
            points.sort_by_key(|p| point_key(p));
            P2FixedStructure::ThreePoints { points }
        }
        [1, 2] => {
            let (line, pt) = if components[0].len() == 2 {
                (&components[0], &components[1])
            } else {
                (&components[1], &components[0])
            };
            let point = canonical_point(&pt[0]);
            if subspace_contains(line, pt, 3) {
                return Err(Error::Inconsistent("fixed point lies on the fixed line".into()));
            }
            P2FixedStructure::LinePlusPoint { line: line.clone(), point }
        }
        other => {
            return Err(Error::Inconsistent(format!(
                "unexpected fixed-component dimensions {other:?} for a finite plane action"
            )))
        }
    };
    verify_fixed_structure(action, &structure)?;
    Ok(structure)
}

fn prune_subspaces(mut spaces: Vec<Vec<Vec<Cyclotomic>>>) -> Vec<Vec<Vec<Cyclotomic>>> {
    spaces.sort_by(|a, b| b.len().cmp(&a.len()));
    let mut kept: Vec<Vec<Vec<Cyclotomic>>> = Vec::new();
    for s in spaces {
        if !kept.iter().any(|k| subspace_contains(k, &s, 3)) {
            kept.push(s);
        }
    }
    kept
}

fn verify_fixed_structure(action: &P2GroupAction, s: &P2FixedStructure) -> Result<()> {
    let fixes_point = |p: &[Cyclotomic]| -> bool {
        action.element_matrices().iter().all(|m| projectively_equal(&m.mul_vec(p), p))
    };
    let ok = match s {
        P2FixedStructure::None => true,
        P2FixedStructure::OnePoint { point } => fixes_point(point),
        P2FixedStructure::ThreePoints { points } => points.iter().all(|p| fixes_point(&p[..])),
        P2FixedStructure::LinePlusPoint { line, point } => {
            let mid: Vec<Cyclotomic> =
                line[0].iter().zip(&line[1]).map(|(a, b)| a + b).collect();
            fixes_point(point)
                && fixes_point(&line[0])
                && fixes_point(&line[1])
                && fixes_point(&mid)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Inconsistent("computed fixed structure fails verification".into()))
    }
}

/// Embed a group of invertible 2x2 matrices into the automorphisms of the
/// plane via the block matrix diag(g, 1). The result acts on P^2 with the
/// same group order (the embedding is faithful, even on scalars).
pub fn gl2_to_aut_p2(gens: &[CycMat]) -> Result<P2GroupAction> {
    let mut embedded = Vec::new();
    let mut linear = Vec::new();
    for g in gens {
        if g.rows != 2 || g.cols != 2 {
            return Err(Error::Domain("expected 2x2 matrices".into()));
        }
        if g.det().is_zero() {
            return Err(Error::Domain("singular generator".into()));
        }
        linear.push(GroupElement::matrix(g.clone(), MatrixMode::Linear));
        embedded.push(CycMat::from_fn(3, 3, |i, j| {
            if i < 2 && j < 2 {
                g[(i, j)].clone()
            } else if i == 2 && j == 2 {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        }));
    }
    let action = P2GroupAction::from_generators(&embedded)?;
    if !linear.is_empty() {
        let source = FiniteGroup::closure(&linear, DEFAULT_MAX_ORDER)?;
        if source.order() != action.order() {
            return Err(Error::Inconsistent(format!(
                "plane embedding not faithful: {} linear elements, {} plane elements",
                source.order(),
                action.order()
            )));
        }
    }
    Ok(action)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    fn diag3(a: Cyclotomic, b: Cyclotomic, c: Cyclotomic) -> CycMat {
        CycMat::diag(&[a, b, c])
    }

    #[test]
    fn eigenspaces_of_diagonal_matrix() {
        let m = diag3(Cyclotomic::one(), zeta(3, 1), zeta(3, 2));
        let es = eigenspaces(&m).unwrap();
        assert_eq!(es.len(), 3);
        let mut vals: Vec<Cyclotomic> = es.iter().map(|(v, _)| v.clone()).collect();
        vals.sort_by_key(|v| format!("{v}"));
        let mut expect = vec![Cyclotomic::one(), zeta(3, 1), zeta(3, 2)];
        expect.sort_by_key(|v| format!("{v}"));
        assert_eq!(vals, expect);
        for (_, basis) in &es {
            assert_eq!(basis.len(), 1);
        }
    }

    #[test]
    fn eigenspaces_of_scaled_cycle() {
        // zeta8 * 3-cycle: the cube is the scalar zeta8^3, exercising the
        // normalization of non-identity scalar powers.
        let m = CycMat::permutation(&[1, 2, 0]).scale(&zeta(8, 1));
        let es = eigenspaces(&m).unwrap();
        let mut vals: Vec<String> = es.iter().map(|(v, _)| format!("{v}")).collect();
        vals.sort();
        let mut expect: Vec<String> = (0..3)
            .map(|i| format!("{}", &zeta(8, 1) * &zeta(3, i)))
            .collect();
        expect.sort();
        assert_eq!(vals, expect);
        // Verify each claimed eigenpair.
        for (v, basis) in &es {
            for b in basis {
                let image = m.mul_vec(b);
                let scaled: Vec<Cyclotomic> = b.iter().map(|x| x * v).collect();
                assert_eq!(image, scaled);
            }
        }
    }

    #[test]
    fn fixed_structure_three_points() {
        let a = P2GroupAction::from_generators(&[diag3(
            Cyclotomic::one(),
            zeta(3, 1),
            zeta(3, 2),
        )])
        .unwrap();
        match p2_fixed_structure(&a).unwrap() {
            P2FixedStructure::ThreePoints { points } => {
                assert_eq!(points.len(), 3);
                for p in &points {
                    assert_eq!(p.iter().filter(|c| !c.is_zero()).count(), 1);
                }
            }
            other => panic!("expected three points, got {}", other.kind()),
        }
    }

    #[test]
    fn fixed_structure_line_plus_point() {
        let a = P2GroupAction::from_generators(&[diag3(
            Cyclotomic::one(),
            Cyclotomic::one(),
            zeta(4, 1),
        )])
        .unwrap();
        match p2_fixed_structure(&a).unwrap() {
            P2FixedStructure::LinePlusPoint { line, point } => {
                assert_eq!(point, vec![
                    Cyclotomic::zero(),
                    Cyclotomic::zero(),
                    Cyclotomic::one()
                ]);
                assert_eq!(line.len(), 2);
                assert!(line.iter().all(|v| v[2].is_zero()));
            }
            other => panic!("expected line plus point, got {}", other.kind()),
        }
    }

    #[test]
    fn fixed_structure_one_point_for_embedded_dihedral() {
        // Dihedral group of order 8 inside GL_2.
        let d = CycMat::diag(&[Cyclotomic::one(), -&Cyclotomic::one()]);
        let s = CycMat::permutation(&[1, 0]);
        let a = gl2_to_aut_p2(&[d, s]).unwrap();
        assert_eq!(a.order(), 8);
        match p2_fixed_structure(&a).unwrap() {
            P2FixedStructure::OnePoint { point } => {
                assert_eq!(point, vec![
                    Cyclotomic::zero(),
                    Cyclotomic::zero(),
                    Cyclotomic::one()
                ]);
            }
            other => panic!("expected one point, got {}", other.kind()),
        }
    }

    #[test]
    fn fixed_structure_none() {
        // diag(1, z3, z3^2) and the coordinate rotation generate an action
        // without common fixed points.
        let a = P2GroupAction::from_generators(&[
            diag3(Cyclotomic::one(), zeta(3, 1), zeta(3, 2)),
            CycMat::permutation(&[1, 2, 0]),
        ])
        .unwrap();
        assert_eq!(a.order(), 9);
        assert_eq!(p2_fixed_structure(&a).unwrap(), P2FixedStructure::None);
    }

    #[test]
    fn faithful_embedding_of_scalars() {
        let a = gl2_to_aut_p2(&[CycMat::identity(2).scale(&zeta(4, 1))]).unwrap();
        assert_eq!(a.order(), 4);
    }

    #[test]
    fn trivial_action_is_rejected() {
        let a = P2GroupAction::from_generators(&[]).unwrap();
        assert!(p2_fixed_structure(&a).is_err());
    }
}
