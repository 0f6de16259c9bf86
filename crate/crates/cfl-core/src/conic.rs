//! Which finite groups act on a conic bundle with a fixed point.
//!
//! A bundle action is recorded as a group together with two designated
//! subgroups: the kernel of the action on the base curve and the kernel of
//! the action on the Picard lattice. The classifiers here decide membership
//! in the possible shapes: `classify_ne` recognizes the three cases that can
//! occur when the Picard kernel is trivial, `classify_ex` the dihedral-times-
//! cyclic shapes that occur when it is not. Both work on the abstract group
//! data; the geometry enters only through the worked blow-up example at the
//! bottom, which produces a bundle with five degenerate fibers.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::linalg::{projectively_equal, CycMat};
use crate::exact::poly::ParamPoly;
use crate::groups::construct::{
    central_product_cyclic, cyclic_table, dicyclic_table, dihedral_table, direct_product,
    modular_product, modular_table, semidirect_cyclic, two_cross_table,
};
use crate::groups::fingerprint::GroupFingerprint;
use crate::groups::subgroups::{
    closure_of_subset, is_cyclic, is_dihedral, is_normal, isomorphic, normal_subgroups,
    quotient_table, subgroup_table,
};
use crate::groups::{FiniteGroup, GroupElement, MatrixMode, MulTable};
use crate::surfaces::quartic::binary_form_distinct_roots;
use crate::{Error, Result};

/// Fixed points recorded for a bundle action, with the geometric flag saying
/// where they sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPointRecord {
    pub count: usize,
    /// Every recorded fixed point is the singular point of a degenerate fiber.
    pub on_singular_fibers: bool,
}

/// A finite group acting on a conic bundle, with its designated subgroups.
///
/// `kernel` collects the elements acting trivially on the base of the
/// fibration, `picard_kernel` those acting trivially on the Picard lattice.
/// Both are sorted member-index lists including the identity. A minimal
/// bundle that is not rational-ruled has at least 3 degenerate fibers, so a
/// recorded `singular_fiber_count` below 3 marks a non-minimal model; the
/// classifiers do not consume the count, only the examples and reports do.
#[derive(Debug, Clone)]
pub struct ConicBundleGroupData {
    pub group: FiniteGroup,
    pub kernel: Vec<usize>,
    pub picard_kernel: Vec<usize>,
    pub singular_fiber_count: Option<usize>,
    pub fixed_points: Option<FixedPointRecord>,
}

impl ConicBundleGroupData {
    pub fn new(
        group: FiniteGroup,
        kernel: Vec<usize>,
        picard_kernel: Vec<usize>,
        singular_fiber_count: Option<usize>,
        fixed_points: Option<FixedPointRecord>,
    ) -> Result<Self> {
        let t = &group.table;
        let mut kernel = kernel;
        let mut picard_kernel = picard_kernel;
        for members in [&mut kernel, &mut picard_kernel] {
            members.sort_unstable();
            members.dedup();
            if members.iter().any(|&i| i >= t.n) {
                return Err(Error::Domain("designated member index out of range".into()));
            }
            if closure_of_subset(t, members) != *members {
                return Err(Error::Domain("designated members do not form a subgroup".into()));
            }
        }
        let in_kernel: HashSet<usize> = kernel.iter().copied().collect();
        if !picard_kernel.iter().all(|i| in_kernel.contains(i)) {
            return Err(Error::Domain(
                "the Picard kernel must sit inside the base-action kernel".into(),
            ));
        }
        Ok(ConicBundleGroupData { group, kernel, picard_kernel, singular_fiber_count, fixed_points })
    }

    pub fn kernel_table(&self) -> MulTable {
        subgroup_table(&self.group.table, &self.kernel)
    }

    /// The base image `G / kernel`, with the projection map.
    pub fn base_quotient(&self) -> Result<(MulTable, Vec<usize>)> {
        if !is_normal(&self.group.table, &self.kernel) {
            return Err(Error::Domain("base-action kernel is not normal".into()));
        }
        Ok(quotient_table(&self.group.table, &self.kernel))
    }
}

/// Outcome of the classification when the Picard kernel is trivial.
///
/// `CaseI`: kernel of order 2, group `2 x 2n`. `CaseII`: Klein kernel, group
/// `2 x 2n`. `CaseIII`: Klein kernel, group `(2m:2) x q` where the outer
/// involution acts by `g -> g^(m+1)` on the cyclic part, `m` a power of two
/// and `q` odd; the dihedral group of order 8 realizes `m = 2, q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeCase {
    CaseI { n: usize },
    CaseII { n: usize },
    CaseIII { m: usize, q: usize },
    None,
}

/// Is the table `2 x 2n` for `n = t.n / 4`? Abelian groups of order `4n`
/// with exponent `2n` are exactly these (the only abelian extensions of a
/// two-element group by a cyclic group are `4n` and `2 x 2n`).
fn is_two_cross_even(t: &MulTable) -> bool {
    t.n % 4 == 0 && t.is_abelian() && t.exponent() == (t.n / 2) as u64
}

/// Classify a bundle action with trivial Picard kernel. The group must not
/// be cyclic, the kernel must be normal with cyclic base image; the decision
/// itself is by isomorphism search against the reference presentations.
pub fn classify_ne(data: &ConicBundleGroupData) -> Result<NeCase> {
    let t = &data.group.table;
    if is_cyclic(t) {
        return Err(Error::Domain("the acting group must be non-cyclic".into()));
    }
    if data.picard_kernel.len() != 1 {
        return Err(Error::Domain("the Picard kernel must be trivial for this classification".into()));
    }
    if !is_normal(t, &data.kernel) {
        return Err(Error::Domain("base-action kernel is not normal".into()));
    }
    let (base, _) = quotient_table(t, &data.kernel);
    if !is_cyclic(&base) {
        return Err(Error::Domain("base image is not cyclic".into()));
    }
    let kt = data.kernel_table();
    let order = t.n;
    match kt.n {
        2 if is_two_cross_even(t) => Ok(NeCase::CaseI { n: order / 4 }),
        4 if kt.exponent() == 2 => {
            if is_two_cross_even(t) {
                return Ok(NeCase::CaseII { n: order / 4 });
            }
            if !t.is_abelian() {
                let mut m = 2;
                while 4 * m <= order {
                    if order % (4 * m) == 0 {
                        let q = order / (4 * m);
                        if q % 2 == 1 && isomorphic(t, &modular_product(m, q)?) {
                            return Ok(NeCase::CaseIII { m, q });
                        }
                    }
                    m *= 2;
                }
            }
            Ok(NeCase::None)
        }
        _ => Ok(NeCase::None),
    }
}

/// Reference data: `2 x 2n` with its designated kernel, either the order-2
/// subgroup meeting only the involution factor (`klein = false`) or the full
/// Klein subgroup (`klein = true`).
pub fn reference_two_cross(n: usize, klein: bool) -> Result<ConicBundleGroupData> {
    let t = two_cross_table(n);
    let kernel = if klein { vec![0, n, 2 * n, 3 * n] } else { vec![0, 2 * n] };
    ConicBundleGroupData::new(FiniteGroup::from_table(&t), kernel, vec![0], None, None)
}

/// Reference data: `(2m:2) x q` with its designated Klein kernel generated by
/// the central involution of the cyclic part and the outer involution.
pub fn reference_modular(m: usize, q: usize) -> Result<ConicBundleGroupData> {
    let t = modular_product(m, q)?;
    let kernel = vec![0, m * q, 2 * m * q, 3 * m * q];
    ConicBundleGroupData::new(FiniteGroup::from_table(&t), kernel, vec![0], None, None)
}

const GL2_QUERY_BOUND: usize = 1000;
const GL2_CATALOG_BOUND: usize = 64;

struct Gl2Catalog {
    /// Non-abelian groups of 2x2 matrices containing -id, up to isomorphism,
    /// through order `GL2_CATALOG_BOUND`.
    groups: Vec<(GroupFingerprint, MulTable)>,
    a4: MulTable,
    s4: MulTable,
    a5: MulTable,
}

fn mat2(a: Cyclotomic, b: Cyclotomic, c: Cyclotomic, d: Cyclotomic) -> CycMat {
    CycMat::from_rows(vec![vec![a, b], vec![c, d]])
}

fn diag2(a: Cyclotomic, b: Cyclotomic) -> CycMat {
    mat2(a, Cyclotomic::zero(), Cyclotomic::zero(), b)
}

fn matrix_table(gens: Vec<CycMat>, max_order: usize) -> Result<MulTable> {
    let els: Vec<GroupElement> =
        gens.into_iter().map(|m| GroupElement::matrix(m, MatrixMode::Linear)).collect();
    let g = FiniteGroup::closure(&els, max_order)?;
    let minus = GroupElement::matrix(
        diag2(-&Cyclotomic::one(), -&Cyclotomic::one()),
        MatrixMode::Linear,
    );
    if !g.contains(&minus) {
        return Err(Error::Inconsistent("matrix group misses -id".into()));
    }
    Ok(g.table.clone())
}

fn perm_table(perms: Vec<Vec<usize>>) -> Result<MulTable> {
    let els: Vec<GroupElement> = perms.into_iter().map(GroupElement::perm).collect();
    Ok(FiniteGroup::closure(&els, 64)?.table.clone())
}

/// The catalog entries are the classical finite subgroups of the 2x2 matrix
/// group containing the negative identity: dihedral and dicyclic series,
/// the modular and semidihedral series, the rank-two monomial pieces, the
/// binary tetrahedral chain, and scalar extensions of these. Presentation
/// tables are used for the series; explicit matrix closures pin down the
/// exceptional entries.
///
/// Scalar extensions are only sound when they stay inside the matrix group:
/// a central product with a scalar cyclic group of order `2s` requires the
/// base realization to meet the scalars in exactly `{id, -id}`, and a direct
/// product with an odd scalar group requires the base scalar subgroup to
/// have two-power order. Each base is tagged with what it supports.
fn build_gl2_catalog() -> Result<Gl2Catalog> {
    let one = Cyclotomic::one();
    let i = Cyclotomic::root_of_unity(4, 1);
    let z = |n: u32, k: i64| Cyclotomic::root_of_unity(n, k);
    let swap = mat2(Cyclotomic::zero(), one.clone(), one.clone(), Cyclotomic::zero());
    let rot = mat2(Cyclotomic::zero(), one.clone(), -&one, Cyclotomic::zero());

    // (table, central products allowed, odd scalar products allowed)
    let mut bases: Vec<(MulTable, bool, bool)> = Vec::new();
    for k in 2..=16 {
        bases.push((dihedral_table(2 * k), true, true));
        bases.push((dicyclic_table(k), true, true));
    }
    for m in [4, 8, 16] {
        // the diagonal realization of (2m : 2) contains the scalar group of
        // order m, so central products along -id alone would leave GL2
        bases.push((modular_table(m)?, false, true));
        bases.push((semidirect_cyclic(2 * m, 2, m - 1)?, true, true));
    }
    // rank-two monomial pieces: scaling one coordinate, then swapping; their
    // scalar subgroups are a cyclic 4 and a cyclic 6 respectively
    bases.push((matrix_table(vec![diag2(i.clone(), one.clone()), swap.clone()], 64)?, false, true));
    bases.push((matrix_table(vec![diag2(z(3, 1), one.clone()), rot.clone()], 64)?, false, false));
    // binary tetrahedral and binary octahedral
    let half = &one / &Cyclotomic::from_int(2);
    let omega = mat2(
        &(&i - &one) * &half,
        &(&i + &one) * &half,
        &(&i - &one) * &half,
        &(&(-&i) - &one) * &half,
    );
    let tetra = vec![rot.clone(), diag2(i.clone(), -&i), omega];
    bases.push((matrix_table(tetra.clone(), 64)?, true, true));
    let mut octa = tetra;
    octa.push(diag2(z(8, 1), z(8, 7)));
    bases.push((matrix_table(octa, 64)?, true, true));

    let mut kept: Vec<(GroupFingerprint, MulTable)> = Vec::new();
    let push = |kept: &mut Vec<(GroupFingerprint, MulTable)>, t: MulTable| {
        if t.n > GL2_CATALOG_BOUND || t.is_abelian() {
            return;
        }
        let fp = GroupFingerprint::of(&t);
        if !kept.iter().any(|(f0, t0)| *f0 == fp && isomorphic(t0, &t)) {
            kept.push((fp, t));
        }
    };
    for (b, central_ok, odd_ok) in bases {
        let mut forms = vec![b.clone()];
        if central_ok {
            let centrals: Vec<usize> =
                b.center().into_iter().filter(|&x| b.element_order(x) == 2).collect();
            if centrals.len() == 1 {
                for s in [2usize, 4] {
                    if b.n * s <= GL2_CATALOG_BOUND {
                        forms.push(central_product_cyclic(&b, centrals[0], s));
                    }
                }
            }
        }
        for f in forms {
            if odd_ok {
                for q in [3usize, 5, 7, 9, 11, 13, 15] {
                    if f.n * q <= GL2_CATALOG_BOUND {
                        push(&mut kept, direct_product(&f, &cyclic_table(q)));
                    }
                }
            }
            push(&mut kept, f);
        }
    }

    Ok(Gl2Catalog {
        groups: kept,
        a4: perm_table(vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]])?,
        s4: perm_table(vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]])?,
        a5: perm_table(vec![vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]])?,
    })
}

fn gl2_catalog() -> Result<&'static Gl2Catalog> {
    static CELL: OnceLock<std::result::Result<Gl2Catalog, String>> = OnceLock::new();
    match CELL.get_or_init(|| build_gl2_catalog().map_err(|e| e.to_string())) {
        Ok(c) => Ok(c),
        Err(m) => Err(Error::Inconsistent(m.clone())),
    }
}

fn small_prime(o: u64) -> bool {
    o >= 2 && (2..o).take_while(|d| d * d <= o).all(|d| o % d != 0)
}

/// Group elements of prime order, bucketed by that order.
fn prime_order_elements(t: &MulTable) -> HashMap<usize, Vec<usize>> {
    let mut by_prime: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 1..t.n {
        let o = t.element_order(x);
        if small_prime(o) {
            by_prime.entry(o as usize).or_default().push(x);
        }
    }
    by_prime
}

/// Whether an abelian group needs at most two cyclic factors. The p-torsion
/// killed by p has order p^rank, so counting elements of each prime order
/// settles it without any subgroup search.
fn abelian_rank_at_most_two(t: &MulTable) -> bool {
    prime_order_elements(t).into_iter().all(|(p, xs)| xs.len() + 1 <= p * p)
}

/// Does the group contain an elementary abelian subgroup of order p^3 for
/// some prime p? Such a group has no faithful two-dimensional representation
/// (simultaneously diagonalizable elements span at most two characters).
fn has_elementary_cube(t: &MulTable) -> bool {
    for (p, xs) in prime_order_elements(t) {
        for (ai, &a) in xs.iter().enumerate() {
            let mut apow = vec![0usize; p];
            for u in 1..p {
                apow[u] = t.mul(apow[u - 1], a);
            }
            for &b in &xs[ai + 1..] {
                if t.mul(a, b) != t.mul(b, a) {
                    continue;
                }
                let mut span: HashSet<usize> = HashSet::with_capacity(p * p);
                let mut bp = 0usize;
                for _ in 0..p {
                    for &ap in &apow {
                        span.insert(t.mul(ap, bp));
                    }
                    bp = t.mul(bp, b);
                }
                if span.len() != p * p {
                    continue;
                }
                for &c in &xs {
                    if !span.contains(&c) && t.mul(a, c) == t.mul(c, a) && t.mul(b, c) == t.mul(c, b)
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// A matrix group containing -id projects, modulo its scalar part, onto a
/// group of fractional-linear transformations: cyclic, dihedral, or one of
/// the three polyhedral groups. If no central cyclic subgroup of even order
/// gives such a quotient, there is no embedding.
fn has_projective_line_quotient(t: &MulTable, cat: &Gl2Catalog) -> bool {
    for zc in t.center() {
        if t.element_order(zc) % 2 != 0 {
            continue;
        }
        let members = closure_of_subset(t, &[zc]);
        let (q, _) = quotient_table(t, &members);
        if is_cyclic(&q)
            || is_dihedral(&q)
            || (q.n == 12 && isomorphic(&q, &cat.a4))
            || (q.n == 24 && isomorphic(&q, &cat.s4))
            || (q.n == 60 && isomorphic(&q, &cat.a5))
        {
            return true;
        }
    }
    false
}

/// Decide whether the group is isomorphic to a group of invertible 2x2
/// matrices containing the negative identity.
///
/// Negative answers come only from sound structural obstructions (no central
/// involution, an elementary abelian p^3 subgroup, no projective-line
/// quotient); positive answers from the abelian rank criterion or an
/// isomorphism with a catalog entry. Everything else is refused rather than
/// guessed.
pub fn embeds_in_gl2_with_minus_id(group: &FiniteGroup) -> Result<bool> {
    gl2_minus_id_decision(&group.table)
}

pub(crate) fn gl2_minus_id_decision(t: &MulTable) -> Result<bool> {
    if t.n > GL2_QUERY_BOUND {
        return Err(Error::Domain("group order beyond the supported query bound".into()));
    }
    if t.n % 2 == 1 {
        return Ok(false);
    }
    if t.is_abelian() {
        // subgroups of the diagonal torus: rank at most two, even order
        return Ok(abelian_rank_at_most_two(t));
    }
    if t.center().len() % 2 == 1 {
        return Ok(false);
    }
    if t.n <= 256 && has_elementary_cube(t) {
        return Ok(false);
    }
    let cat = gl2_catalog()?;
    if !has_projective_line_quotient(t, cat) {
        return Ok(false);
    }
    if t.n <= GL2_CATALOG_BOUND {
        let fp = GroupFingerprint::of(t);
        if cat.groups.iter().any(|(f0, t0)| *f0 == fp && isomorphic(t0, t)) {
            return Ok(true);
        }
    }
    Err(Error::Domain("outside the embedding catalog bounds; no decision".into()))
}

/// Can the group be realized inside some `D_2m x n` with `m, n` at most the
/// group order? A subgroup of such a product projects onto a subgroup of a
/// dihedral group (itself dihedral or cyclic) and onto a subgroup of a
/// cyclic group, and the two projection kernels meet trivially. Conversely,
/// two normal subgroups with trivial intersection and quotients of those two
/// shapes embed the group into the product of its quotients, whose orders
/// are bounded by the group order. So the decision is a scan over pairs of
/// normal subgroups.
fn embeds_in_dihedral_cross_cyclic(t: &MulTable) -> bool {
    let normals = normal_subgroups(t);
    let mut dihedral_or_cyclic_quot = vec![false; normals.len()];
    let mut cyclic_quot = vec![false; normals.len()];
    for (i, n) in normals.iter().enumerate() {
        let (q, _) = quotient_table(t, n);
        cyclic_quot[i] = is_cyclic(&q);
        dihedral_or_cyclic_quot[i] = cyclic_quot[i] || is_dihedral(&q);
    }
    for (i, n1) in normals.iter().enumerate() {
        if !dihedral_or_cyclic_quot[i] {
            continue;
        }
        let s1: HashSet<usize> = n1.iter().copied().collect();
        for (j, n2) in normals.iter().enumerate() {
            if cyclic_quot[j] && n2.iter().filter(|x| s1.contains(x)).count() == 1 {
                return true;
            }
        }
    }
    false
}

/// Classify a bundle action with nontrivial Picard kernel: the kernel must be
/// dihedral or cyclic of even order, the base image cyclic or trivial, and
/// the whole group must embed in a dihedral-times-cyclic product. When fixed
/// points are recorded on an accepted action they must be flagged as
/// singular points of degenerate fibers.
pub fn classify_ex(data: &ConicBundleGroupData) -> Result<bool> {
    let t = &data.group.table;
    if data.picard_kernel.len() <= 1 {
        return Err(Error::Domain(
            "a nontrivial Picard kernel must be designated for this classification".into(),
        ));
    }
    if !is_normal(t, &data.kernel) {
        return Err(Error::Inconsistent("designated kernel is not normal".into()));
    }
    let kt = data.kernel_table();
    if !((is_cyclic(&kt) && kt.n % 2 == 0) || is_dihedral(&kt)) {
        return Ok(false);
    }
    let (base, _) = quotient_table(t, &data.kernel);
    if !is_cyclic(&base) {
        return Ok(false);
    }
    if !embeds_in_dihedral_cross_cyclic(t) {
        return Ok(false);
    }
    if let Some(rec) = &data.fixed_points {
        if rec.count > 0 && !rec.on_singular_fibers {
            return Err(Error::Inconsistent(
                "recorded fixed points of an exceptional bundle action must be singular points of degenerate fibers".into(),
            ));
        }
    }
    Ok(true)
}

/// Is the restriction of the kernel to a fiber model injective? The model is
/// the image group, so injectivity is order equality.
pub fn faithful_fiber_check(data: &ConicBundleGroupData, fiber_action: &FiniteGroup) -> bool {
    fiber_action.order() == data.kernel.len()
}

/// Every extension of a cyclic group of order `c` by an elementary abelian
/// kernel of order `2^a` (`a` = 1 or 2), as multiplication tables together
/// with the kernel member indices.
///
/// A presentation of such an extension is an action matrix `M` over the
/// two-element field with `M^c = id` plus the image `w` of the `c`-th power
/// of a lift, fixed by `M`; element `(v, j)` sits at index `v + 2^a * j` and
/// products twist by `M^j` with a carry cocycle `w`.
pub fn kernel_cyclic_extensions(a: u32, c: usize) -> Result<Vec<(MulTable, Vec<usize>)>> {
    if !(a == 1 || a == 2) || c == 0 {
        return Err(Error::Domain("kernel rank must be 1 or 2 and the quotient nontrivial".into()));
    }
    let dim = 1usize << a;
    // linear maps on bit vectors, as value tables
    let apply = |mat: [usize; 4], v: usize| -> usize {
        let b0 = (mat[0] & (v & 1)) ^ (mat[1] & ((v >> 1) & 1));
        let b1 = (mat[2] & (v & 1)) ^ (mat[3] & ((v >> 1) & 1));
        b0 | (b1 << 1)
    };
    let mut actions: Vec<Vec<usize>> = Vec::new();
    if a == 1 {
        actions.push(vec![0, 1]);
    } else {
        for bits in 0..16usize {
            let mat = [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1];
            if (mat[0] & mat[3]) ^ (mat[1] & mat[2]) != 1 {
                continue;
            }
            let table: Vec<usize> = (0..dim).map(|v| apply(mat, v)).collect();
            // need M^c = id
            let mut ok = true;
            for v in 0..dim {
                let mut acc = v;
                for _ in 0..c {
                    acc = table[acc];
                }
                if acc != v {
                    ok = false;
                    break;
                }
            }
            if ok {
                actions.push(table);
            }
        }
    }
    let mut out = Vec::new();
    for m in actions {
        // powers of the action
        let mut powers: Vec<Vec<usize>> = vec![(0..dim).collect()];
        for j in 1..c {
            let prev = &powers[j - 1];
            powers.push((0..dim).map(|v| m[prev[v]]).collect());
        }
        for w in 0..dim {
            if m[w] != w {
                continue;
            }
            let idx = |v: usize, j: usize| v + dim * j;
            let mut rows = vec![vec![0u32; dim * c]; dim * c];
            for v1 in 0..dim {
                for j1 in 0..c {
                    for v2 in 0..dim {
                        for j2 in 0..c {
                            let carry = if j1 + j2 >= c { w } else { 0 };
                            let v = v1 ^ powers[j1][v2] ^ carry;
                            rows[idx(v1, j1)][idx(v2, j2)] = idx(v, (j1 + j2) % c) as u32;
                        }
                    }
                }
            }
            out.push((MulTable::from_rows(rows), (0..dim).collect()));
        }
    }
    Ok(out)
}

/// Branch data for the hyperelliptic-fiber bundles: a squarefree binary form
/// of degree `2g + 2` presenting fibers of genus `g`.
#[derive(Debug, Clone)]
pub struct ExceptionalModelParams {
    pub g: u32,
    pub branch_form: ParamPoly,
}

impl ExceptionalModelParams {
    pub fn new(g: u32, branch_form: ParamPoly) -> Result<Self> {
        if g == 0 {
            return Err(Error::Domain("the genus parameter must be positive".into()));
        }
        if branch_form.vars().len() != 2 {
            return Err(Error::Domain("the branch form must be a binary form".into()));
        }
        let deg = (2 * g + 2) as usize;
        if !crate::surfaces::quartic::is_homogeneous(&branch_form, deg as i64) {
            return Err(Error::Domain("the branch form must be homogeneous of degree 2g+2".into()));
        }
        let distinct = binary_form_distinct_roots(&branch_form, deg)?;
        if distinct != deg {
            return Err(Error::Domain("the branch form must be squarefree".into()));
        }
        Ok(ExceptionalModelParams { g, branch_form })
    }
}

/// The blow-up example: the two-quadric quartic surface carries a Klein
/// four-group of sign changes fixing the marked point; blowing the point up
/// yields a conic bundle of degree 3 on which the group acts trivially on
/// the base, with five degenerate fibers and five fixed points.
#[derive(Debug, Clone)]
pub struct ConicBundleExample {
    pub data: ConicBundleGroupData,
    /// Restriction of the kernel to a fiber: projective 2x2 model.
    pub fiber_action: FiniteGroup,
    /// Fixed points of the group on the quartic surface itself.
    pub surface_fixed_points: usize,
}

pub fn dp4_blowup_example() -> Result<ConicBundleExample> {
    let d = crate::surfaces::dp4::dp4()?;
    let one = Cyclotomic::one();
    let minus = -&one;
    let sign = |k: usize| {
        let entries: Vec<Cyclotomic> =
            (0..5).map(|j| if j == k { minus.clone() } else { one.clone() }).collect();
        CycMat::diag(&entries)
    };
    let i4 = sign(3);
    let i5 = sign(4);
    // both involutions fix the marked base point
    let p = &d.model.base;
    for m in [&i4, &i5] {
        if !projectively_equal(&m.mul_vec(p), p) {
            return Err(Error::Inconsistent("sign change does not fix the marked point".into()));
        }
    }
    let group = FiniteGroup::closure(
        &[
            GroupElement::matrix(i4, MatrixMode::Projective),
            GroupElement::matrix(i5, MatrixMode::Projective),
        ],
        16,
    )?;
    if group.order() != 4 {
        return Err(Error::Inconsistent("the sign changes should span a Klein four-group".into()));
    }
    // Fixed points on the surface: joint eigenvectors. The only candidates
    // are the four sign-vector points in the first three coordinates and the
    // two remaining coordinate axes.
    let mut on_surface = 0;
    for (s1, s2) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        let pt = vec![
            Cyclotomic::from_int(s1),
            Cyclotomic::from_int(s2),
            one.clone(),
            Cyclotomic::zero(),
            Cyclotomic::zero(),
        ];
        if d.model.contains_point(&pt) {
            on_surface += 1;
        }
    }
    for axis in [3, 4] {
        let pt: Vec<Cyclotomic> = (0..5)
            .map(|j| if j == axis { one.clone() } else { Cyclotomic::zero() })
            .collect();
        if d.model.contains_point(&pt) {
            on_surface += 1;
        }
    }
    if on_surface != 4 {
        return Err(Error::Inconsistent("expected four joint fixed points on the surface".into()));
    }
    // On the exceptional line of the blow-up the two involutions act as the
    // same projective involution of the tangent directions, hence exactly
    // two more fixed points appear while the center itself disappears.
    let t4 = vec![minus.clone(), Cyclotomic::zero(), Cyclotomic::zero(), one.clone()];
    let t5 = vec![one.clone(), Cyclotomic::zero(), Cyclotomic::zero(), minus.clone()];
    if !projectively_equal(&t4, &t5) {
        return Err(Error::Inconsistent(
            "tangent involutions should agree projectively on the exceptional line".into(),
        ));
    }
    let fixed_on_blowup = on_surface - 1 + 2;
    // Degenerate fiber count from the degree-3 lattice: the conic class
    // -K - e has self-intersection 0 and anticanonical degree 2.
    let lat = crate::lattice::PicLattice::del_pezzo(3);
    let mut f: Vec<i64> = lat.k_class().iter().map(|c| -c).collect();
    f[6] -= 1;
    let fibers = lat.singular_fiber_count(&f)?;
    if fibers != fixed_on_blowup {
        return Err(Error::Inconsistent(
            "fixed point count and degenerate fiber count should agree".into(),
        ));
    }
    // the whole group acts trivially on the base, faithfully on every fiber
    let kernel: Vec<usize> = (0..4).collect();
    let fiber_action = FiniteGroup::closure(
        &[
            GroupElement::matrix(diag2(one.clone(), minus.clone()), MatrixMode::Projective),
            GroupElement::matrix(
                mat2(Cyclotomic::zero(), one.clone(), one, Cyclotomic::zero()),
                MatrixMode::Projective,
            ),
        ],
        16,
    )?;
    let data = ConicBundleGroupData::new(
        group,
        kernel,
        vec![0],
        Some(fibers),
        Some(FixedPointRecord { count: fixed_on_blowup, on_singular_fibers: true }),
    )?;
    Ok(ConicBundleExample { data, fiber_action, surface_fixed_points: on_surface })
}
