//! Cubic surfaces: a pointed two-parameter family, its most symmetric
//! member, the 27 lines, Eckardt points, and the isometries the line
//! action induces on the exceptional lattice.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::p2::eigenspaces;
use super::scene::{parse_scenes, SceneData};
use super::{elem_matrix, intersect_subspaces, point_key, poly_is_zero, stabilizer};
use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::linalg::{canonical_point, CycMat};
use crate::exact::poly::{ParamPoly, VarSet};
use crate::groups::{FiniteGroup, GroupElement, MatrixMode, DEFAULT_MAX_ORDER};
use crate::lattice::{IsoMat, PicLattice};
use crate::{Error, Result};

const SCENES: &str = include_str!("../../data/scenes/cubic.scene");

/// A line in P^3 spanned by two points, with a canonical key built from
/// its exterior (Pluecker) coordinates.
#[derive(Debug, Clone)]
pub struct Line {
    pub p: Vec<Cyclotomic>,
    pub q: Vec<Cyclotomic>,
    key: String,
}

fn pluecker(p: &[Cyclotomic], q: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let mut out = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            out.push(&(&p[i] * &q[j]) - &(&q[i] * &p[j]));
        }
    }
    out
}

impl Line {
    pub fn through(p: &[Cyclotomic], q: &[Cyclotomic]) -> Result<Line> {
        assert_eq!(p.len(), 4);
        assert_eq!(q.len(), 4);
        let pl = pluecker(p, q);
        if pl.iter().all(|c| c.is_zero()) {
            return Err(Error::Domain("coincident points span no line".into()));
        }
        let key = point_key(&canonical_point(&pl));
        Ok(Line { p: p.to_vec(), q: q.to_vec(), key })
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    /// True for two distinct lines with a common point.
    pub fn meets(&self, other: &Line) -> bool {
        if self.key == other.key {
            return false;
        }
        CycMat::from_rows(vec![
            self.p.clone(),
            self.q.clone(),
            other.p.clone(),
            other.q.clone(),
        ])
        .det()
        .is_zero()
    }

    pub fn contains(&self, pt: &[Cyclotomic]) -> bool {
        CycMat::from_rows(vec![self.p.clone(), self.q.clone(), pt.to_vec()]).rank() == 2
    }

    pub fn meet_point(&self, other: &Line) -> Result<Vec<Cyclotomic>> {
        let a = [self.p.clone(), self.q.clone()];
        let b = [other.p.clone(), other.q.clone()];
        let inter = intersect_subspaces(&a, &b, 4);
        if inter.len() != 1 {
            return Err(Error::Domain("lines do not meet in a single point".into()));
        }
        Ok(canonical_point(&inter[0]))
    }
}

/// A cubic surface in P^3, possibly with extra parameter variables after
/// the four coordinates.
#[derive(Debug, Clone)]
pub struct CubicModel {
    pub vars: Arc<VarSet>,
    pub f: ParamPoly,
    pub base_point: Vec<Cyclotomic>,
}

impl CubicModel {
    fn from_scene(sc: &SceneData) -> Result<CubicModel> {
        if sc.vars.len() < 4 {
            return Err(Error::Parse(format!("scene {} needs 4 coordinates", sc.name)));
        }
        Ok(CubicModel {
            vars: sc.vars.clone(),
            f: sc.poly("surface")?.clone(),
            base_point: canonical_point(sc.point("base")?),
        })
    }

    /// F with the four coordinates substituted; parameters stay symbolic.
    pub fn value_at(&self, pt: &[Cyclotomic]) -> ParamPoly {
        let mut map: Vec<Option<ParamPoly>> = vec![None; self.vars.len()];
        for i in 0..4 {
            map[i] = Some(ParamPoly::constant(&self.vars, pt[i].clone()));
        }
        self.f.substitute(&map)
    }

    /// True if the point lies on the surface for every parameter value.
    pub fn contains_point(&self, pt: &[Cyclotomic]) -> bool {
        poly_is_zero(&self.value_at(pt))
    }

    /// The scalar lambda with F(m x) = lambda F(x), if m preserves the
    /// surface identically in the parameters.
    pub fn preserves(&self, m: &CycMat) -> Option<Cyclotomic> {
        let rows: Vec<Vec<Cyclotomic>> =
            (0..4).map(|i| (0..4).map(|j| m[(i, j)].clone()).collect()).collect();
        let g = self.f.linear_substitute(&[0, 1, 2, 3], &rows);
        g.scalar_ratio_to(&self.f)
    }

    /// True if the whole line lies on the surface (checked symbolically by
    /// substituting the line parametrization, reusing t0, t1 as the line
    /// parameters in a simultaneous substitution).
    pub fn contains_line(&self, line: &Line) -> bool {
        let mut map: Vec<Option<ParamPoly>> = vec![None; self.vars.len()];
        for i in 0..4 {
            let s = ParamPoly::var(&self.vars, 0).scale(&line.p[i]);
            let t = ParamPoly::var(&self.vars, 1).scale(&line.q[i]);
            map[i] = Some(&s + &t);
        }
        poly_is_zero(&self.f.substitute(&map))
    }

    /// Substitute exact values for parameter variables (indices past 3).
    pub fn specialize(&self, values: &[(usize, Cyclotomic)]) -> CubicModel {
        let mut map: Vec<Option<ParamPoly>> = vec![None; self.vars.len()];
        for (i, v) in values {
            assert!(*i >= 4, "only parameters can be specialized");
            map[*i] = Some(ParamPoly::constant(&self.vars, v.clone()));
        }
        CubicModel {
            vars: self.vars.clone(),
            f: self.f.substitute(&map),
            base_point: self.base_point.clone(),
        }
    }

    /// The permutation the transform induces on the given lines:
    /// line i maps to line perm[i].
    pub fn action_on_lines(&self, m: &CycMat, lines: &[Line]) -> Result<Vec<usize>> {
        if self.preserves(m).is_none() {
            return Err(Error::Domain(
                "transformation does not preserve the surface".into(),
            ));
        }
        let index: HashMap<&str, usize> =
            lines.iter().enumerate().map(|(i, l)| (l.key(), i)).collect();
        let mut perm = Vec::with_capacity(lines.len());
        let mut seen = vec![false; lines.len()];
        for l in lines {
            let img = Line::through(&m.mul_vec(&l.p), &m.mul_vec(&l.q))?;
            let &j = index.get(img.key()).ok_or_else(|| {
                Error::Domain("transformation does not permute the given lines".into())
            })?;
            if seen[j] {
                return Err(Error::Inconsistent("two lines map to the same line".into()));
            }
            seen[j] = true;
            perm.push(j);
        }
        Ok(perm)
    }

    pub fn partials(&self) -> Vec<ParamPoly> {
        (0..4).map(|i| self.f.derivative(i)).collect()
    }

    /// True if F is a sum of four cubes with nonzero constant coefficients.
    /// Such a form is visibly smooth: the partials are c_i t_i^2 and vanish
    /// together only at the origin.
    pub fn smooth_by_structure(&self) -> bool {
        let mut rebuilt = ParamPoly::zero(&self.vars);
        for i in 0..4 {
            let third = self.f.derivative(i).derivative(i).derivative(i);
            match third.as_constant() {
                Some(v) if !v.is_zero() => {
                    let ci = &v * &Cyclotomic::from_int(6).inv();
                    rebuilt = &rebuilt + &ParamPoly::var(&self.vars, i).pow(3).scale(&ci);
                }
                _ => return false,
            }
        }
        poly_is_zero(&(&rebuilt + &self.f.scale(&-&Cyclotomic::one())))
    }

    /// True when some partial derivative evaluates at the point to a nonzero
    /// constant: the surface is then smooth there for every parameter value.
    pub fn gradient_unit_at(&self, pt: &[Cyclotomic]) -> bool {
        self.partials().iter().any(|d| {
            let mut map: Vec<Option<ParamPoly>> = vec![None; self.vars.len()];
            for i in 0..4 {
                map[i] = Some(ParamPoly::constant(&self.vars, pt[i].clone()));
            }
            d.substitute(&map).as_constant().is_some_and(|c| !c.is_zero())
        })
    }
}

/// The 27 lines of a sum-of-cubes surface: for each of the three ways to
/// pair up the coordinates and each pair of cube roots of unity, the line
/// spanned by (1, -w, 0, 0)-type points in the paired slots. Every
/// candidate is verified on the surface; the result is sorted by line key
/// and checked to be 27 distinct lines forming a 10-regular graph.
pub fn lines_on_surface(model: &CubicModel) -> Result<Vec<Line>> {
    let pairings = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let mut lines: Vec<Line> = Vec::new();
    for pr in &pairings {
        for w1 in 0..3 {
            for w2 in 0..3 {
                let mut p = vec![Cyclotomic::zero(); 4];
                let mut q = vec![Cyclotomic::zero(); 4];
                p[pr[0].0] = Cyclotomic::one();
                p[pr[0].1] = -&Cyclotomic::root_of_unity(3, w1);
                q[pr[1].0] = Cyclotomic::one();
                q[pr[1].1] = -&Cyclotomic::root_of_unity(3, w2);
                let line = Line::through(&p, &q)?;
                if !model.contains_line(&line) {
                    return Err(Error::Inconsistent(
                        "candidate line does not lie on the surface".into(),
                    ));
                }
                lines.push(line);
            }
        }
    }
    lines.sort_by(|a, b| a.key.cmp(&b.key));
    if lines.len() != 27 || lines.windows(2).any(|w| w[0].key == w[1].key) {
        return Err(Error::Inconsistent("expected 27 distinct lines".into()));
    }
    for i in 0..27 {
        let deg = (0..27).filter(|&j| lines[i].meets(&lines[j])).count();
        if deg != 10 {
            return Err(Error::Inconsistent(format!(
                "line {i} meets {deg} others instead of 10"
            )));
        }
    }
    Ok(lines)
}

/// The 27 lines of the most symmetric cubic surface.
pub fn fermat_lines() -> Result<Vec<Line>> {
    Ok(fermat()?.lines.clone())
}

/// Points lying on three of the given lines. Concurrences of more than
/// three lines are rejected as inconsistent.
pub fn eckardt_points(lines: &[Line]) -> Result<Vec<Vec<Cyclotomic>>> {
    use std::collections::BTreeSet;
    let mut through: HashMap<String, (Vec<Cyclotomic>, BTreeSet<usize>)> = HashMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i].meets(&lines[j]) {
                let pt = lines[i].meet_point(&lines[j])?;
                let key = point_key(&pt);
                let entry = through.entry(key).or_insert_with(|| (pt, BTreeSet::new()));
                entry.1.insert(i);
                entry.1.insert(j);
            }
        }
    }
    let mut out = Vec::new();
    for (_, (pt, ls)) in through {
        if ls.len() >= 3 {
            if ls.len() > 3 {
                return Err(Error::Inconsistent(format!(
                    "{} lines concurrent in one point",
                    ls.len()
                )));
            }
            out.push(pt);
        }
    }
    out.sort_by_key(|p| point_key(p));
    Ok(out)
}

fn find_six_skew(meets: &[Vec<bool>]) -> Option<Vec<usize>> {
    fn go(meets: &[Vec<bool>], start: usize, acc: &mut Vec<usize>) -> bool {
        if acc.len() == 6 {
            return true;
        }
        for i in start..meets.len() {
            if acc.iter().all(|&j| !meets[i][j]) {
                acc.push(i);
                if go(meets, i + 1, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    if go(meets, 0, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

/// Label each line with its class in the exceptional lattice: pick six
/// pairwise skew lines as the contracted classes, then read off the
/// remaining labels from incidence with those six. The full labeling is
/// validated against the intersection pairing for every pair of lines.
pub fn line_classes(lat: &PicLattice, lines: &[Line]) -> Result<Vec<Vec<i64>>> {
    let n = lines.len();
    let rank = lat.rank();
    let meets: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| lines[i].meets(&lines[j])).collect()).collect();
    let six = find_six_skew(&meets)
        .ok_or_else(|| Error::Inconsistent("no six pairwise skew lines found".into()))?;
    let mut classes: Vec<Vec<i64>> = vec![Vec::new(); n];
    for (k, &i) in six.iter().enumerate() {
        let mut v = vec![0i64; rank];
        v[k + 1] = 1;
        classes[i] = v;
    }
    for i in 0..n {
        if !classes[i].is_empty() {
            continue;
        }
        let met: Vec<usize> = (0..6).filter(|&k| meets[i][six[k]]).collect();
        classes[i] = match met.len() {
            // meets two of the six: the strict transform of a line through
            // the two corresponding points
            2 => {
                let mut v = vec![0i64; rank];
                v[0] = 1;
                v[met[0] + 1] = -1;
                v[met[1] + 1] = -1;
                v
            }
            // meets five of the six: the conic through those five points
            5 => {
                let missing = (0..6).find(|k| !met.contains(k)).unwrap();
                let mut v = vec![-1i64; rank];
                v[0] = 2;
                v[missing + 1] = 0;
                v
            }
            k => {
                return Err(Error::Inconsistent(format!(
                    "line meets {k} of the six contracted lines"
                )))
            }
        };
    }
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j {
                -1
            } else if meets[i][j] {
                1
            } else {
                0
            };
            if lat.pairing(&classes[i], &classes[j]) != expect {
                return Err(Error::Inconsistent(
                    "line labels disagree with the intersection pairing".into(),
                ));
            }
        }
    }
    Ok(classes)
}

/// Everything computed about the most symmetric pointed cubic: lines,
/// class labels, the full automorphism group, the stabilizer of the base
/// point, and the lattice isometry of every stabilizer element.
pub struct FermatCubic {
    pub model: CubicModel,
    pub lines: Vec<Line>,
    pub classes: Vec<Vec<i64>>,
    pub lattice: PicLattice,
    pub aut_gens: Vec<CycMat>,
    pub aut: FiniteGroup,
    pub stab: FiniteGroup,
    /// Aligned with `stab.elems`.
    pub stab_isometries: Vec<IsoMat>,
    pub trace_reps: Vec<(String, CycMat)>,
}

pub fn fermat() -> Result<&'static FermatCubic> {
    static CELL: OnceLock<std::result::Result<FermatCubic, String>> = OnceLock::new();
    match CELL.get_or_init(|| build_fermat().map_err(|e| e.to_string())) {
        Ok(f) => Ok(f),
        Err(m) => Err(Error::Inconsistent(m.clone())),
    }
}

fn build_fermat() -> Result<FermatCubic> {
    let scenes = parse_scenes(SCENES)?;
    let sc = scenes
        .iter()
        .find(|s| s.name == "cubic-fermat")
        .ok_or_else(|| Error::Parse("missing scene cubic-fermat".into()))?;
    let model = CubicModel::from_scene(sc)?;
    if !model.smooth_by_structure() {
        return Err(Error::Inconsistent("sum-of-cubes model must be smooth".into()));
    }
    let lines = lines_on_surface(&model)?;
    let lattice = PicLattice::del_pezzo(3);
    let classes = line_classes(&lattice, &lines)?;

    let aut_names = ["d1", "d2", "d3", "perm01", "cycle"];
    let mut aut_gens = Vec::new();
    let mut elems = Vec::new();
    for name in aut_names {
        let m = sc.gen(name)?.clone();
        if model.preserves(&m).is_none() {
            return Err(Error::Inconsistent(format!(
                "generator {name} does not preserve the surface"
            )));
        }
        elems.push(GroupElement::matrix(m.clone(), MatrixMode::Projective));
        aut_gens.push(m);
    }
    let aut = FiniteGroup::closure(&elems, DEFAULT_MAX_ORDER)?;
    if aut.order() != 648 {
        return Err(Error::Inconsistent(format!(
            "automorphism group has order {}, expected 648",
            aut.order()
        )));
    }
    let stab = stabilizer(&aut, &model.base_point)?;
    if stab.order() != 36 {
        return Err(Error::Inconsistent(format!(
            "stabilizer has order {}, expected 36",
            stab.order()
        )));
    }
    let mut stab_isometries = Vec::new();
    for e in &stab.elems {
        let perm = model.action_on_lines(elem_matrix(e), &lines)?;
        let iso = lattice.isometry_from_class_permutation(&classes, &perm).ok_or_else(|| {
            Error::Inconsistent("line permutation induces no lattice isometry".into())
        })?;
        stab_isometries.push(iso);
    }
    let mut trace_reps = Vec::new();
    for i in 1..=10 {
        let name = format!("r{i}");
        trace_reps.push((name.clone(), sc.gen(&name)?.clone()));
    }
    Ok(FermatCubic {
        model,
        lines,
        classes,
        lattice,
        aut_gens,
        aut,
        stab,
        stab_isometries,
        trace_reps,
    })
}

/// Expected lattice traces for the representatives r1..r10.
pub const TRACE_TABLE_EXPECTED: [i64; 10] = [6, -2, 2, -3, 3, 0, 1, 1, -1, -2];

#[derive(Debug, Clone)]
pub struct CubicTraceRow {
    pub name: String,
    /// Eigenvalues of the 4x4 representative, with multiplicity, sorted.
    pub eigenvalues: Vec<Cyclotomic>,
    pub computed_trace: i64,
    pub expected_trace: i64,
}

/// Compute the lattice trace of each representative through the line
/// action and pair it with the expected value.
pub fn trace_table(f: &FermatCubic) -> Result<Vec<CubicTraceRow>> {
    let mut out = Vec::new();
    for (idx, (name, m)) in f.trace_reps.iter().enumerate() {
        let perm = f.model.action_on_lines(m, &f.lines)?;
        let iso = f.lattice.isometry_from_class_permutation(&f.classes, &perm).ok_or_else(
            || Error::Inconsistent(format!("representative {name} induces no isometry")),
        )?;
        let mut eigenvalues = Vec::new();
        for (v, basis) in eigenspaces(m)? {
            for _ in 0..basis.len() {
                eigenvalues.push(v.clone());
            }
        }
        eigenvalues.sort_by_key(|c| format!("{c}"));
        out.push(CubicTraceRow {
            name: name.clone(),
            eigenvalues,
            computed_trace: f.lattice.trace_on_k_perp(&iso),
            expected_trace: TRACE_TABLE_EXPECTED[idx],
        });
    }
    Ok(out)
}

/// The two-parameter pointed family and its stratum generators.
pub struct CubicFamily {
    pub model: CubicModel,
    pub swap01: CycMat,
    pub rot3: CycMat,
    pub swap23: CycMat,
}

pub fn family() -> Result<CubicFamily> {
    let scenes = parse_scenes(SCENES)?;
    let sc = scenes
        .iter()
        .find(|s| s.name == "cubic-family")
        .ok_or_else(|| Error::Parse("missing scene cubic-family".into()))?;
    Ok(CubicFamily {
        model: CubicModel::from_scene(sc)?,
        swap01: sc.gen("swap01")?.clone(),
        rot3: sc.gen("rot3")?.clone(),
        swap23: sc.gen("swap23")?.clone(),
    })
}

impl CubicFamily {
    /// The stratum where the two parameters coincide (b substituted by a).
    pub fn model_equal_params(&self) -> CubicModel {
        let vars = &self.model.vars;
        let mut map: Vec<Option<ParamPoly>> = vec![None; vars.len()];
        map[5] = Some(ParamPoly::var(vars, 4));
        CubicModel {
            vars: vars.clone(),
            f: self.model.f.substitute(&map),
            base_point: self.model.base_point.clone(),
        }
    }

    pub fn model_values(&self, a: &Cyclotomic, b: &Cyclotomic) -> CubicModel {
        self.model.specialize(&[(4, a.clone()), (5, b.clone())])
    }
}

/// The three fixed points of the order-3 diagonal symmetry on any member
/// of the family: the intersection of the surface with the line
/// t0 = t1 = 0. The base point is among them.
pub fn order3_fixed_points(model: &CubicModel) -> Result<Vec<Vec<Cyclotomic>>> {
    let mut pts = Vec::new();
    for w in 0..3 {
        let pt = canonical_point(&[
            Cyclotomic::zero(),
            Cyclotomic::zero(),
            Cyclotomic::one(),
            -&Cyclotomic::root_of_unity(3, w),
        ]);
        if !model.contains_point(&pt) {
            return Err(Error::Inconsistent(
                "expected fixed point misses the surface".into(),
            ));
        }
        pts.push(pt);
    }
    pts.sort_by_key(|p| point_key(p));
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::linalg::projectively_equal;

    #[test]
    fn lines_card_graph_and_sample() {
        let f = fermat().unwrap();
        assert_eq!(f.lines.len(), 27);
        let one = Cyclotomic::one;
        let sample = Line::through(
            &[one(), -&one(), Cyclotomic::zero(), Cyclotomic::zero()],
            &[Cyclotomic::zero(), Cyclotomic::zero(), one(), -&one()],
        )
        .unwrap();
        assert!(f.lines.iter().any(|l| l.key() == sample.key()));
        assert!(f.model.contains_line(&sample));
    }

    #[test]
    fn eckardt_points_of_most_symmetric_surface() {
        let f = fermat().unwrap();
        let pts = eckardt_points(&f.lines).unwrap();
        assert_eq!(pts.len(), 18);
        assert!(pts.iter().any(|p| p == &f.model.base_point));
        // Each point lies on exactly three of the lines.
        for p in &pts {
            let c = f.lines.iter().filter(|l| l.contains(p)).count();
            assert_eq!(c, 3);
        }
    }

    #[test]
    fn automorphisms_act_transitively_on_lines() {
        let f = fermat().unwrap();
        assert_eq!(f.aut.order(), 648);
        let perms: Vec<Vec<usize>> = f
            .aut_gens
            .iter()
            .map(|m| f.model.action_on_lines(m, &f.lines).unwrap())
            .collect();
        let mut seen = vec![false; 27];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for p in &perms {
                if !seen[p[i]] {
                    seen[p[i]] = true;
                    stack.push(p[i]);
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn base_point_stabilizer_structure() {
        let f = fermat().unwrap();
        assert_eq!(f.stab.order(), 36);
        let name = crate::groups::catalog::Catalog::builtin().identify(&f.stab.table).unwrap();
        assert_eq!(name, "S3x6");
        // The diagonal order-3 representative fixes the base point, so it
        // must appear in the stabilizer.
        let r6 = f.trace_reps.iter().find(|(n, _)| n == "r6").unwrap().1.clone();
        assert!(f.stab.contains(&GroupElement::matrix(r6, MatrixMode::Projective)));
    }

    #[test]
    fn trace_table_from_line_action() {
        let f = fermat().unwrap();
        let rows = trace_table(f).unwrap();
        assert_eq!(rows.len(), 10);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.eigenvalues.len(), 4, "row {i}");
            assert_eq!(row.computed_trace, row.expected_trace, "row {}", row.name);
        }
    }

    #[test]
    fn family_invariance_by_stratum() {
        let fam = family().unwrap();
        let one = Cyclotomic::one();
        // Generic parameters: the transposition and the order-3 diagonal
        // preserve the surface; the second transposition does not.
        assert_eq!(fam.model.preserves(&fam.swap01), Some(one.clone()));
        assert_eq!(fam.model.preserves(&fam.rot3), Some(one.clone()));
        assert!(fam.model.preserves(&fam.swap23).is_none());
        // On the stratum a = b the second transposition acts.
        let eq = fam.model_equal_params();
        assert_eq!(eq.preserves(&fam.swap23), Some(one.clone()));
        assert!(eq.preserves(&fam.swap01).is_some());
        // At a = b = 0 all 27 lines of the sum-of-cubes surface appear.
        let zero_model = fam.model_values(&Cyclotomic::zero(), &Cyclotomic::zero());
        let f = fermat().unwrap();
        assert!(f.lines.iter().all(|l| zero_model.contains_line(l)));
        // A nonzero member of the family contains the base point but not
        // all those lines.
        let generic = fam.model_values(&Cyclotomic::from_int(1), &Cyclotomic::from_int(2));
        assert!(generic.contains_point(&fam.model.base_point));
        assert!(!f.lines.iter().all(|l| generic.contains_line(l)));
    }

    #[test]
    fn order3_fixed_points_on_every_member() {
        let fam = family().unwrap();
        let pts = order3_fixed_points(&fam.model).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().any(|p| p == &fam.model.base_point));
        for p in &pts {
            assert!(projectively_equal(&fam.rot3.mul_vec(p), p));
        }
        // The two isolated eigenvectors of the rotation are off the surface.
        let e0 =
            [Cyclotomic::one(), Cyclotomic::zero(), Cyclotomic::zero(), Cyclotomic::zero()];
        let e1 =
            [Cyclotomic::zero(), Cyclotomic::one(), Cyclotomic::zero(), Cyclotomic::zero()];
        assert!(!fam.model.contains_point(&e0));
        assert!(!fam.model.contains_point(&e1));
    }

    #[test]
    fn smoothness_checks() {
        let fam = family().unwrap();
        let f = fermat().unwrap();
        assert!(f.model.smooth_by_structure());
        assert!(!fam.model.smooth_by_structure());
        assert!(fam.model.gradient_unit_at(&fam.model.base_point));
    }
}
