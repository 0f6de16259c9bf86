//! Geometric models of the surfaces underlying the classification: the
//! projective plane, cubic surfaces, degree-2 del Pezzo (quartic) models,
//! degree-4 and degree-5 del Pezzo configurations, and the hexagon of
//! lines on a degree-6 surface.
//!
//! All coordinates live in cyclotomic fields, so every incidence test,
//! eigenspace computation, and invariance check here is exact.

pub mod cubic;
pub mod dp4;
pub mod dp5;
pub mod dp6;
pub mod p2;
pub mod quartic;
pub mod scene;

use crate::exact::linalg::{canonical_point, CycMat};
use crate::exact::cyclotomic::Cyclotomic;
use crate::{Error, Result};

/// Fixed locus of an automorphism on a surface: a finite set of isolated
/// points together with a (possibly empty) list of pointwise-fixed curves,
/// recorded by genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLocus {
    /// Number of isolated fixed points.
    pub isolated_points: usize,
    /// Genera of the pointwise-fixed curves.
    pub curve_genera: Vec<u32>,
}

impl FixedLocus {
    pub fn points(n: usize) -> Self {
        FixedLocus { isolated_points: n, curve_genera: Vec::new() }
    }

    pub fn with_curves(n: usize, genera: &[u32]) -> Self {
        FixedLocus { isolated_points: n, curve_genera: genera.to_vec() }
    }
}

// ---------------------------------------------------------------------------
// Subspace utilities. A subspace of C^n is held as a matrix whose rows form
// a basis; the reduced row echelon form makes the representation canonical.

/// Canonical basis (rref rows) for the row space of `m`. Returns an empty
/// list for the zero space.
pub(crate) fn rref_basis(m: &CycMat) -> Vec<Vec<Cyclotomic>> {
    let mut r = m.clone();
    let pivots = r.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub(crate) fn basis_to_mat(rows: &[Vec<Cyclotomic>], cols: usize) -> CycMat {
    if rows.is_empty() {
        return CycMat::zero(0, cols);
    }
    CycMat::from_rows(rows.to_vec())
}

/// Annihilator of a row space: vectors x with M x = 0.
pub(crate) fn annihilator(rows: &[Vec<Cyclotomic>], cols: usize) -> Vec<Vec<Cyclotomic>> {
    if rows.is_empty() {
        let id = CycMat::identity(cols);
        return (0..cols).map(|i| id.row(i).to_vec()).collect();
    }
    basis_to_mat(rows, cols).kernel()
}

/// Intersection of two subspaces given by basis rows, via annihilators.
pub(crate) fn intersect_subspaces(
    a: &[Vec<Cyclotomic>],
    b: &[Vec<Cyclotomic>],
    cols: usize,
) -> Vec<Vec<Cyclotomic>> {
    let mut ann = annihilator(a, cols);
    ann.extend(annihilator(b, cols));
    let ann = rref_basis(&basis_to_mat(&ann, cols));
    let common = annihilator(&ann, cols);
    rref_basis(&basis_to_mat(&common, cols))
}

/// True if the row space of `inner` is contained in that of `outer`.
pub(crate) fn subspace_contains(
    outer: &[Vec<Cyclotomic>],
    inner: &[Vec<Cyclotomic>],
    cols: usize,
) -> bool {
    if inner.is_empty() {
        return true;
    }
    if outer.is_empty() {
        return false;
    }
    let outer_rank = outer.len();
    let mut all = outer.to_vec();
    all.extend(inner.iter().cloned());
    basis_to_mat(&all, cols).rank() == outer_rank
}

/// Deterministic sort key for an exact point or vector.
pub(crate) fn point_key(v: &[Cyclotomic]) -> String {
    let parts: Vec<String> = v.iter().map(|c| format!("{c}")).collect();
    parts.join(",")
}

// ---------------------------------------------------------------------------
// Cross-ratios and the j-invariant of four points on a line.

/// 2x2 determinant of two points on the projective line.
fn det2(p: &(Cyclotomic, Cyclotomic), q: &(Cyclotomic, Cyclotomic)) -> Cyclotomic {
    &(&p.0 * &q.1) - &(&q.0 * &p.1)
}

/// Cross-ratio (p1,p2; p3,p4) of four pairwise distinct points on P^1.
pub fn cross_ratio(pts: &[(Cyclotomic, Cyclotomic); 4]) -> Result<Cyclotomic> {
    for i in 0..4 {
        for j in i + 1..4 {
            if det2(&pts[i], &pts[j]).is_zero() {
                return Err(Error::Domain(format!(
                    "cross-ratio needs distinct points; arguments {i} and {j} coincide"
                )));
            }
        }
    }
    let num = &det2(&pts[0], &pts[2]) * &det2(&pts[1], &pts[3]);
    let den = &det2(&pts[1], &pts[2]) * &det2(&pts[0], &pts[3]);
    Ok(&num / &den)
}

/// j-invariant of an unordered 4-point set on the projective line:
/// j = 256 (L^2 - L + 1)^3 / (L^2 (L - 1)^2) for any cross-ratio ordering L.
/// The value is checked to be independent of the ordering.
pub fn j_from_four_points(pts: &[(Cyclotomic, Cyclotomic); 4]) -> Result<Cyclotomic> {
    fn j_of(l: &Cyclotomic) -> Result<Cyclotomic> {
        let one = Cyclotomic::one();
        let l2 = l * l;
        let num = &(&(&l2 - l) + &one).pow(3) * &Cyclotomic::from_int(256);
        let lm1 = l - &one;
        let den = &l2 * &(&lm1 * &lm1);
        Ok(&num / &den)
    }

    let mut value: Option<Cyclotomic> = None;
    let mut order = [0usize, 1, 2, 3];
    // Iterate all 24 orderings via Heap's algorithm.
    let mut c = [0usize; 4];
    let mut i = 0;
    loop {
        let arranged = [
            pts[order[0]].clone(),
            pts[order[1]].clone(),
            pts[order[2]].clone(),
            pts[order[3]].clone(),
        ];
        let j = j_of(&cross_ratio(&arranged)?)?;
        match &value {
            None => value = Some(j),
            Some(v) => {
                if *v != j {
                    return Err(Error::Inconsistent(
                        "j-invariant differs across cross-ratio orderings".into(),
                    ));
                }
            }
        }
        // Heap's algorithm step.
        loop {
            if i >= 4 {
                return Ok(value.unwrap());
            }
            if c[i] < i {
                if i % 2 == 0 {
                    order.swap(0, i);
                } else {
                    order.swap(c[i], i);
                }
                c[i] += 1;
                i = 0;
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Pencils of diagonal quadrics.

/// Degenerate members of the pencil s*A + t*B of two diagonal quadrics in
/// the coordinates listed in `support`: for each index i in the support the
/// member vanishing on coordinate i is (s:t) = (-b_i : a_i). Entries of `a`
/// and `b` are the diagonal coefficients.
pub fn diagonal_pencil_degenerate_members(
    a: &[Cyclotomic],
    b: &[Cyclotomic],
    support: &[usize],
) -> Result<Vec<(Cyclotomic, Cyclotomic)>> {
    if a.len() != b.len() {
        return Err(Error::Domain("diagonal pencils need equal lengths".into()));
    }
    let mut out = Vec::new();
    for &i in support {
        let (ai, bi) = (&a[i], &b[i]);
        if ai.is_zero() && bi.is_zero() {
            return Err(Error::Domain(format!(
                "coordinate {i} is absent from both quadrics"
            )));
        }
        out.push((-bi, ai.clone()));
    }
    Ok(out)
}

/// Canonicalize a projective point so equal points get equal coordinates.
pub fn normalize_point(v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    canonical_point(v)
}

/// True iff the polynomial is identically zero.
pub(crate) fn poly_is_zero(p: &crate::exact::poly::ParamPoly) -> bool {
    p.as_constant().is_some_and(|c| c.is_zero())
}

/// Matrix of a group element that is known to be a matrix.
pub(crate) fn elem_matrix(e: &crate::groups::GroupElement) -> &CycMat {
    match e {
        crate::groups::GroupElement::Matrix(m) => m.mat(),
        _ => panic!("expected a matrix group element"),
    }
}

/// Subgroup of all elements fixing the point `p` projectively. The input
/// group must consist of matrix elements.
pub fn stabilizer(
    group: &crate::groups::FiniteGroup,
    p: &[Cyclotomic],
) -> Result<crate::groups::FiniteGroup> {
    use crate::exact::linalg::projectively_equal;
    let fixing: Vec<crate::groups::GroupElement> = group
        .elems
        .iter()
        .filter(|e| projectively_equal(&elem_matrix(e).mul_vec(p), p))
        .cloned()
        .collect();
    let sub = crate::groups::FiniteGroup::closure(&fixing, group.order())?;
    if sub.order() != fixing.len() {
        return Err(Error::Inconsistent(
            "point stabilizer is not closed under multiplication".into(),
        ));
    }
    Ok(sub)
}
