//! Degree-4 del Pezzo surface cut out by a pencil of diagonal quadrics.
//!
//! The sixteen exceptional classes carry a faithful action of the
//! automorphism group. We track that action three ways at once:
//! combinatorially (permutations of the classes), geometrically
//! (projective 5x5 matrices on the ambient space), and lattice
//! theoretically (isometries of the Picard lattice), and cross-check the
//! representations against each other while building the group.

use std::sync::OnceLock;

use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::linalg::{projectively_equal, CycMat};
use crate::exact::poly::ParamPoly;
use crate::groups::{paired_closure, FiniteGroup, GroupElement, MatrixMode};
use crate::lattice::{IsoMat, PicLattice};
use crate::surfaces::scene::{parse_scenes, SceneData};
use crate::surfaces::{
    diagonal_pencil_degenerate_members, elem_matrix, j_from_four_points, poly_is_zero,
};
use crate::{Error, Result};

const SCENES: &str = include_str!("../../data/scenes/dp4.scene");

/// Number of exceptional classes on a degree-4 del Pezzo surface.
pub const CLASS_COUNT: usize = 16;

/// Unordered index pairs {i,j} in {1..5}, in the order used for class slots
/// 6..16.
const PAIRS: [(usize, usize); 10] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

/// Class labels in slot order: the conic class R0, the five classes R1..R5,
/// then the ten classes Rij.
pub fn class_labels() -> Vec<String> {
    let mut out = vec!["R0".to_string()];
    for i in 1..=5 {
        out.push(format!("R{i}"));
    }
    for (i, j) in PAIRS {
        out.push(format!("R{i}{j}"));
    }
    out
}

fn pair_index(i: usize, j: usize) -> usize {
    let key = if i < j { (i, j) } else { (j, i) };
    6 + PAIRS.iter().position(|&p| p == key).expect("pair in range")
}

/// Class vectors in the Picard basis (L, e1..e5): R_i maps to e_i, R_ij to
/// L - e_i - e_j, and R0 to 2L - e_1 - ... - e_5.
pub fn class_vectors() -> Vec<Vec<i64>> {
    let mut out = vec![vec![2, -1, -1, -1, -1, -1]];
    for i in 1..=5 {
        let mut v = vec![0i64; 6];
        v[i] = 1;
        out.push(v);
    }
    for (i, j) in PAIRS {
        let mut v = vec![0i64; 6];
        v[0] = 1;
        v[i] = -1;
        v[j] = -1;
        out.push(v);
    }
    out
}

/// Class permutation induced by the sign change of coordinate k: it swaps
/// R0 with Rk, swaps R_i with R_ik for i != k, and sends R_ij (k not in
/// {i,j}) to R_lm where {l,m} is the complement of {i,j,k}.
pub fn sign_change_perm(k: usize) -> Vec<usize> {
    assert!((1..=5).contains(&k), "coordinate index out of range");
    let mut perm: Vec<usize> = (0..CLASS_COUNT).collect();
    perm[0] = k;
    perm[k] = 0;
    for i in 1..=5 {
        if i == k {
            continue;
        }
        perm[i] = pair_index(i, k);
        perm[pair_index(i, k)] = i;
    }
    for (i, j) in PAIRS {
        if i == k || j == k {
            continue;
        }
        let rest: Vec<usize> = (1..=5).filter(|&m| m != i && m != j && m != k).collect();
        perm[pair_index(i, j)] = pair_index(rest[0], rest[1]);
    }
    perm
}

/// Class permutation induced by a permutation of the five coordinates,
/// given as images sigma[i] for i in 1..=5 (sigma[0] is ignored).
pub fn subscript_perm(sigma: &[usize; 6]) -> Vec<usize> {
    let mut perm = vec![0usize; CLASS_COUNT];
    for i in 1..=5 {
        assert!((1..=5).contains(&sigma[i]));
        perm[i] = sigma[i];
    }
    for (i, j) in PAIRS {
        perm[pair_index(i, j)] = pair_index(sigma[i], sigma[j]);
    }
    perm
}

/// Named generators and the class permutations they induce.
pub fn generator_class_perms() -> Vec<(String, Vec<usize>)> {
    let mut out = vec![
        // g1 cycles R1 -> R3 -> R2 and fixes R4, R5: a point on the
        // section t1 = 0 lands on the section t3 = 0 under the matrix.
        ("g1".to_string(), subscript_perm(&[0, 3, 1, 2, 4, 5])),
        // g2 swaps R2 with R3 and R4 with R5.
        ("g2".to_string(), subscript_perm(&[0, 1, 3, 2, 5, 4])),
    ];
    for k in 1..=5 {
        out.push((format!("i{k}"), sign_change_perm(k)));
    }
    out
}

/// Lattice isometries extending the generator class permutations:
/// (name, class permutation, isometry) triples.
pub fn dp4_isometries(lat: &PicLattice) -> Result<Vec<(String, Vec<usize>, IsoMat)>> {
    let classes = class_vectors();
    generator_class_perms()
        .into_iter()
        .map(|(name, perm)| {
            let iso = lat
                .isometry_from_class_permutation(&classes, &perm)
                .ok_or_else(|| {
                    Error::Inconsistent(format!(
                        "class permutation for {name} does not extend to an isometry"
                    ))
                })?;
            Ok((name, perm, iso))
        })
        .collect()
}

/// A pencil of two diagonal quadrics in P^4 whose base locus is the
/// surface, together with a marked point on it.
pub struct DP4Model {
    pub scene: SceneData,
    /// Diagonal coefficients of the first quadric.
    pub diag_a: Vec<Cyclotomic>,
    /// Diagonal coefficients of the second quadric.
    pub diag_b: Vec<Cyclotomic>,
    pub base: Vec<Cyclotomic>,
}

fn diagonal_coeffs(p: &ParamPoly, nvars: usize) -> Result<Vec<Cyclotomic>> {
    let half = &Cyclotomic::one() / &Cyclotomic::from_int(2);
    let mut coeffs = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let second = p
            .derivative(i)
            .derivative(i)
            .as_constant()
            .ok_or_else(|| Error::Domain("form is not quadratic".into()))?;
        coeffs.push(&second * &half);
    }
    Ok(coeffs)
}

/// Coefficients of each t_i^2 in a quadratic form, via second partials.
/// Cross terms do not contribute to these probes, so the caller must still
/// compare full polynomials when exact identity matters.
fn square_coeffs(p: &ParamPoly, nvars: usize) -> Result<Vec<Cyclotomic>> {
    diagonal_coeffs(p, nvars)
}

impl DP4Model {
    pub fn from_scene(scene: SceneData) -> Result<DP4Model> {
        let n = scene.vars.len();
        if n != 5 {
            return Err(Error::Domain("expected five coordinates".into()));
        }
        let q1 = scene.poly("q1")?.clone();
        let q2 = scene.poly("q2")?.clone();
        let diag_a = diagonal_coeffs(&q1, n)?;
        let diag_b = diagonal_coeffs(&q2, n)?;
        // Both forms must really be diagonal: rebuild and compare.
        for (q, diag) in [(&q1, &diag_a), (&q2, &diag_b)] {
            let mut rebuilt = ParamPoly::zero(&scene.vars);
            for (i, c) in diag.iter().enumerate() {
                rebuilt = &rebuilt + &ParamPoly::var(&scene.vars, i).pow(2).scale(c);
            }
            let diff = &rebuilt + &q.scale(&-&Cyclotomic::one());
            if !poly_is_zero(&diff) {
                return Err(Error::Domain("quadric is not diagonal".into()));
            }
        }
        let base = scene.point("base")?.to_vec();
        let model = DP4Model { scene, diag_a, diag_b, base };
        if !model.contains_point(&model.base) {
            return Err(Error::Inconsistent(
                "marked point is not on the base locus".into(),
            ));
        }
        Ok(model)
    }

    pub fn contains_point(&self, pt: &[Cyclotomic]) -> bool {
        ["q1", "q2"].iter().all(|name| {
            self.scene
                .poly(name)
                .map(|q| q.eval(pt).is_zero())
                .unwrap_or(false)
        })
    }

    /// If the matrix maps the span of the two quadrics into itself, return
    /// the 2x2 change it induces on the pencil; otherwise None.
    pub fn pencil_transform(&self, m: &CycMat) -> Result<Option<CycMat>> {
        let n = self.scene.vars.len();
        if m.rows != n || m.cols != n {
            return Err(Error::Domain("matrix size does not match coordinates".into()));
        }
        let q1 = self.scene.poly("q1")?;
        let q2 = self.scene.poly("q2")?;
        let idx: Vec<usize> = (0..n).collect();
        let mat: Vec<Vec<Cyclotomic>> = (0..n).map(|i| m.row(i).to_vec()).collect();
        // Pick probe coordinates where the 2x2 of diagonal coefficients is
        // invertible, so the candidate pencil coordinates are determined.
        let (r, s, det) = (0..n)
            .flat_map(|r| (0..n).map(move |s| (r, s)))
            .filter(|&(r, s)| r < s)
            .find_map(|(r, s)| {
                let d = &(&self.diag_a[r] * &self.diag_b[s])
                    - &(&self.diag_a[s] * &self.diag_b[r]);
                (!d.is_zero()).then_some((r, s, d))
            })
            .ok_or_else(|| Error::Domain("quadrics do not span a pencil".into()))?;
        let mut rows = Vec::new();
        for q in [q1, q2] {
            let qt = q.linear_substitute(&idx, &mat);
            let u = square_coeffs(&qt, n)?;
            let alpha = &(&(&u[r] * &self.diag_b[s]) - &(&u[s] * &self.diag_b[r])) / &det;
            let beta = &(&(&self.diag_a[r] * &u[s]) - &(&self.diag_a[s] * &u[r])) / &det;
            let candidate = &q1.scale(&alpha) + &q2.scale(&beta);
            let diff = &qt + &candidate.scale(&-&Cyclotomic::one());
            if !poly_is_zero(&diff) {
                return Ok(None);
            }
            rows.push(vec![alpha, beta]);
        }
        let t = CycMat::from_rows(rows);
        if t.det().is_zero() {
            return Ok(None);
        }
        Ok(Some(t))
    }

    /// Indices of the diagonal hyperplane sections t_i = 0 passing through
    /// a point (0-based coordinate indices).
    pub fn sections_through(&self, pt: &[Cyclotomic]) -> Vec<usize> {
        (0..self.scene.vars.len()).filter(|&i| pt[i].is_zero()).collect()
    }

    /// j-invariant of the genus-1 curve cut by t_i = 0. Restricting the
    /// pencil to that hyperplane leaves four degenerate members; the curve
    /// is the double cover of the pencil line branched there.
    pub fn section_j_invariant(&self, i: usize) -> Result<Cyclotomic> {
        let support: Vec<usize> = (0..self.scene.vars.len()).filter(|&k| k != i).collect();
        let members = diagonal_pencil_degenerate_members(&self.diag_a, &self.diag_b, &support)?;
        let arr: [(Cyclotomic, Cyclotomic); 4] = members
            .try_into()
            .map_err(|_| Error::Domain("expected four degenerate members".into()))?;
        j_from_four_points(&arr)
    }
}

/// The surface together with its automorphism group in all three
/// representations, and the stabilizer of the marked point.
pub struct Dp4Data {
    pub model: DP4Model,
    pub lattice: PicLattice,
    pub labels: Vec<String>,
    pub class_vectors: Vec<Vec<i64>>,
    /// Named generators: (name, matrix, class permutation, isometry).
    pub gens: Vec<(String, CycMat, Vec<usize>, IsoMat)>,
    /// Full automorphism group (matrix elements), order 96.
    pub group: FiniteGroup,
    /// Class permutations aligned with `group.elems`.
    pub companions: Vec<GroupElement>,
    /// Picard isometries aligned with `group.elems`.
    pub isometries: Vec<IsoMat>,
    /// Stabilizer of the marked point, order 24.
    pub stab: FiniteGroup,
    pub stab_companions: Vec<GroupElement>,
    pub stab_isometries: Vec<IsoMat>,
    /// Index of each stabilizer element inside `group`.
    pub stab_in_group: Vec<usize>,
}

impl Dp4Data {
    /// Index of a named generator in `gens`.
    pub fn gen_named(&self, name: &str) -> Result<&(String, CycMat, Vec<usize>, IsoMat)> {
        self.gens
            .iter()
            .find(|(n, _, _, _)| n == name)
            .ok_or_else(|| Error::Parse(format!("no generator named {name}")))
    }
}

static CELL: OnceLock<std::result::Result<Dp4Data, String>> = OnceLock::new();

/// Build (once) and return the shared degree-4 surface data.
pub fn dp4() -> Result<&'static Dp4Data> {
    CELL.get_or_init(|| build_dp4().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::Inconsistent(e.clone()))
}

fn build_dp4() -> Result<Dp4Data> {
    let mut scenes = parse_scenes(SCENES)?;
    if scenes.len() != 1 {
        return Err(Error::Parse("expected a single scene".into()));
    }
    let model = DP4Model::from_scene(scenes.pop().unwrap())?;
    let lattice = PicLattice::del_pezzo(4);
    let labels = class_labels();
    let vectors = class_vectors();

    let mut gens = Vec::new();
    let mut pairs: Vec<(GroupElement, GroupElement)> = Vec::new();
    for (name, perm, iso) in dp4_isometries(&lattice)? {
        let mat = model.scene.gen(&name)?.clone();
        if model.pencil_transform(&mat)?.is_none() {
            return Err(Error::Inconsistent(format!(
                "generator {name} does not preserve the pencil"
            )));
        }
        pairs.push((
            GroupElement::matrix(mat.clone(), MatrixMode::Projective),
            GroupElement::perm(perm.clone()),
        ));
        gens.push((name, mat, perm, iso));
    }

    let (group, companions) = paired_closure(&pairs, 200)?;
    if group.order() != 96 {
        return Err(Error::Inconsistent(format!(
            "automorphism group has order {}, expected 96",
            group.order()
        )));
    }
    let isometries = companion_isometries(&lattice, &vectors, &companions)?;

    // Stabilizer of the marked point, with aligned companions.
    let mut stab_pairs = Vec::new();
    let mut fixing = Vec::new();
    for (i, e) in group.elems.iter().enumerate() {
        let m = elem_matrix(e);
        if projectively_equal(&m.mul_vec(&model.base), &model.base) {
            stab_pairs.push((e.clone(), companions[i].clone()));
            fixing.push(i);
        }
    }
    let (stab, stab_companions) = paired_closure(&stab_pairs, 200)?;
    if stab.order() != fixing.len() || stab.order() != 24 {
        return Err(Error::Inconsistent(format!(
            "point stabilizer has order {}, expected 24",
            stab.order()
        )));
    }
    let stab_isometries = companion_isometries(&lattice, &vectors, &stab_companions)?;
    let stab_in_group = stab
        .elems
        .iter()
        .map(|e| {
            group
                .index_of(e)
                .ok_or_else(|| Error::Inconsistent("stabilizer element outside group".into()))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Dp4Data {
        model,
        lattice,
        labels,
        class_vectors: vectors,
        gens,
        group,
        companions,
        isometries,
        stab,
        stab_companions,
        stab_isometries,
        stab_in_group,
    })
}

fn companion_isometries(
    lat: &PicLattice,
    vectors: &[Vec<i64>],
    companions: &[GroupElement],
) -> Result<Vec<IsoMat>> {
    companions
        .iter()
        .map(|c| match c {
            GroupElement::Perm(p) => lat
                .isometry_from_class_permutation(vectors, p)
                .ok_or_else(|| {
                    Error::Inconsistent("companion permutation has no isometry".into())
                }),
            _ => Err(Error::Inconsistent("companion is not a permutation".into())),
        })
        .collect()
}
