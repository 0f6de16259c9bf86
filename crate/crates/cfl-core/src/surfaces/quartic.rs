//! Degree-2 del Pezzo surface: double cover of the plane branched along a
//! quartic curve, with a marked point over (0:0:1).
//!
//! The branch curve is t2^4 + 2*f2*t2^2 + f4 with f2, f4 binary forms in
//! t0, t1. Automorphisms fixing the marked point normalize to the shape
//! (t0:t1:t2:w) -> (A(t0,t1):t2:w) with A a 2x2 matrix preserving f2 and
//! f4 exactly, so the point-fixing group is the exact symmetry group of
//! the pair of binary forms inside GL2. Fixed loci on the cover are
//! computed per element and per lift from the eigenstructure of A.

use std::sync::Arc;

use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::linalg::CycMat;
use crate::exact::poly::{ParamPoly, VarSet};
use crate::surfaces::p2::eigenspaces;
use crate::surfaces::{poly_is_zero, FixedLocus};
use crate::{Error, Result};

/// The two binary forms defining the branch quartic, over the variable
/// set (t0, t1).
pub struct QuarticModel {
    pub vars: Arc<VarSet>,
    pub f2: ParamPoly,
    pub f4: ParamPoly,
}

pub(crate) fn is_homogeneous(p: &ParamPoly, deg: i64) -> bool {
    // Euler identity: t0*dp/dt0 + t1*dp/dt1 = deg * p for homogeneous p.
    let vars = p.vars();
    let euler = &(&ParamPoly::var(vars, 0) * &p.derivative(0))
        + &(&ParamPoly::var(vars, 1) * &p.derivative(1));
    let scaled = p.scale(&Cyclotomic::from_int(deg));
    poly_is_zero(&(&euler + &scaled.scale(&-&Cyclotomic::one())))
}

impl QuarticModel {
    /// Branch data f2 = a*t0^2 + b*t0*t1 + c*t1^2, f4 = t0^4 +
    /// d*t0^2*t1^2 + t1^4.
    pub fn standard(
        a: &Cyclotomic,
        b: &Cyclotomic,
        c: &Cyclotomic,
        d: &Cyclotomic,
    ) -> QuarticModel {
        let vars = VarSet::new(&["t0", "t1"]);
        let t0 = ParamPoly::var(&vars, 0);
        let t1 = ParamPoly::var(&vars, 1);
        let f2 = &(&t0.pow(2).scale(a) + &(&t0 * &t1).scale(b)) + &t1.pow(2).scale(c);
        let f4 = &(&t0.pow(4) + &(&t0.pow(2) * &t1.pow(2)).scale(d)) + &t1.pow(4);
        QuarticModel { vars, f2, f4 }
    }

    /// Arbitrary binary forms of degrees 2 and 4 (f2 may be zero).
    pub fn custom(f2: ParamPoly, f4: ParamPoly) -> Result<QuarticModel> {
        let vars = f2.vars().clone();
        if vars.len() != 2 {
            return Err(Error::Domain("expected binary forms in two variables".into()));
        }
        if f4.is_zero() {
            return Err(Error::Domain("quartic form must be nonzero".into()));
        }
        if !is_homogeneous(&f2, 2) || !is_homogeneous(&f4, 4) {
            return Err(Error::Domain("forms must be homogeneous of degrees 2 and 4".into()));
        }
        Ok(QuarticModel { vars, f2, f4 })
    }

    fn transformed(&self, form: &ParamPoly, a: &CycMat) -> ParamPoly {
        let rows: Vec<Vec<Cyclotomic>> = (0..2).map(|i| a.row(i).to_vec()).collect();
        form.linear_substitute(&[0, 1], &rows)
    }

    /// Whether the matrix preserves both forms exactly.
    pub fn invariant_under(&self, a: &CycMat) -> bool {
        let neg = -&Cyclotomic::one();
        let d2 = &self.transformed(&self.f2, a) + &self.f2.scale(&neg);
        let d4 = &self.transformed(&self.f4, a) + &self.f4.scale(&neg);
        poly_is_zero(&d2) && poly_is_zero(&d4)
    }

    /// Rescale a matrix that preserves the forms up to scalars into one
    /// that preserves them exactly, when such a rescaling exists.
    pub fn exactify(&self, a: &CycMat) -> Result<CycMat> {
        let lambda = self
            .transformed(&self.f4, a)
            .scalar_ratio_to(&self.f4)
            .ok_or_else(|| Error::Domain("matrix does not scale the quartic form".into()))?;
        let (m, k) = lambda
            .as_root_of_unity()
            .ok_or_else(|| Error::Domain("quartic scaling is not a root of unity".into()))?;
        // c with c^4 = lambda^{-1}; the solutions differ by powers of z4.
        let base = Cyclotomic::root_of_unity(4 * m, -(k as i64));
        for t in 0..4u32 {
            let c = &base * &Cyclotomic::root_of_unity(4, t as i64);
            let scaled = a.scale(&c);
            if self.invariant_under(&scaled) {
                return Ok(scaled);
            }
        }
        Err(Error::Domain(
            "no rescaling preserves both forms exactly".into(),
        ))
    }

    /// Branch quartic value at a plane point (x0:x1:x2).
    pub fn curve_value(&self, x: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(x.len(), 3);
        let v2 = self.f2.eval(&x[..2]);
        let v4 = self.f4.eval(&x[..2]);
        let x2sq = &x[2] * &x[2];
        let two = Cyclotomic::from_int(2);
        &(&(&x2sq * &x2sq) + &(&(&two * &v2) * &x2sq)) + &v4
    }

    /// Restriction of the branch quartic to the line spanned by two plane
    /// points, as a binary form in the line parameters.
    pub fn restrict_to_line(&self, u: &[Cyclotomic], v: &[Cyclotomic]) -> ParamPoly {
        assert_eq!(u.len(), 3);
        assert_eq!(v.len(), 3);
        let lam = ParamPoly::var(&self.vars, 0);
        let mu = ParamPoly::var(&self.vars, 1);
        let lin: Vec<ParamPoly> = (0..3)
            .map(|i| &lam.scale(&u[i]) + &mu.scale(&v[i]))
            .collect();
        let f2l = self.f2.substitute(&[Some(lin[0].clone()), Some(lin[1].clone())]);
        let f4l = self.f4.substitute(&[Some(lin[0].clone()), Some(lin[1].clone())]);
        let t2sq = &lin[2] * &lin[2];
        let two = Cyclotomic::from_int(2);
        &(&(&t2sq * &t2sq) + &(&f2l * &t2sq).scale(&two)) + &f4l
    }

    /// Binary quartic whose roots are the directions of the bitangent
    /// lines through the marked point's image (0:0:1).
    pub fn bitangent_pencil(&self) -> ParamPoly {
        let neg = -&Cyclotomic::one();
        &self.f4 + &(&self.f2 * &self.f2).scale(&neg)
    }

    /// The branch curve is smooth exactly when f4 and f4 - f2^2 are both
    /// squarefree as binary forms.
    pub fn is_smooth(&self) -> Result<bool> {
        Ok(binary_form_distinct_roots(&self.f4, 4)? == 4
            && binary_form_distinct_roots(&self.bitangent_pencil(), 4)? == 4)
    }

    fn require_smooth(&self) -> Result<()> {
        if self.is_smooth()? {
            Ok(())
        } else {
            Err(Error::Domain("branch curve is singular".into()))
        }
    }
}

fn poly_trim(c: &mut Vec<Cyclotomic>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

fn poly_deg(c: &[Cyclotomic]) -> Option<usize> {
    c.iter().rposition(|x| !x.is_zero())
}

fn poly_rem(mut a: Vec<Cyclotomic>, b: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let db = poly_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    while let Some(da) = poly_deg(&a) {
        if da < db {
            break;
        }
        let factor = &a[da] / &lead;
        for i in 0..=db {
            let sub = &factor * &b[i];
            a[i + da - db] = &a[i + da - db] - &sub;
        }
        poly_trim(&mut a);
    }
    a
}

fn poly_gcd(mut a: Vec<Cyclotomic>, mut b: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
        poly_trim(&mut b);
    }
    a
}

fn poly_derivative(c: &[Cyclotomic]) -> Vec<Cyclotomic> {
    (1..c.len())
        .map(|i| &c[i] * &Cyclotomic::from_int(i as i64))
        .collect()
}

/// Number of distinct projective roots of a nonzero binary form of the
/// given degree.
pub fn binary_form_distinct_roots(q: &ParamPoly, deg: usize) -> Result<usize> {
    if q.is_zero() {
        return Err(Error::Domain("form vanishes identically".into()));
    }
    let one = ParamPoly::constant(q.vars(), Cyclotomic::one());
    let affine = q.substitute(&[None, Some(one)]);
    let mut u = affine.to_univariate(0)?;
    poly_trim(&mut u);
    let du = poly_deg(&u).map_or(0, |d| d);
    if u.is_empty() {
        // Only the root at infinity, with full multiplicity.
        return Ok(1);
    }
    let distinct_affine = if du == 0 {
        0
    } else {
        let g = poly_gcd(u.clone(), poly_derivative(&u));
        du - poly_deg(&g).unwrap_or(0)
    };
    Ok(distinct_affine + usize::from(du < deg))
}

fn block3(a: &CycMat) -> CycMat {
    CycMat::from_fn(3, 3, |i, j| {
        if i < 2 && j < 2 {
            a[(i, j)].clone()
        } else if i == 2 && j == 2 {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    })
}

/// Fixed locus on the double cover of the lift with the given sign of the
/// plane automorphism (t0:t1) -> A(t0,t1), t2 fixed. The +1 lift is the
/// one fixing both points over (0:0:1); the -1 lift composes it with the
/// deck involution.
pub fn quartic_fixed_locus(
    model: &QuarticModel,
    a: &CycMat,
    lift_sign: i8,
) -> Result<FixedLocus> {
    if lift_sign != 1 && lift_sign != -1 {
        return Err(Error::Domain("lift sign must be +1 or -1".into()));
    }
    if a.rows != 2 || a.cols != 2 {
        return Err(Error::Domain("expected a 2x2 matrix".into()));
    }
    if !model.invariant_under(a) {
        return Err(Error::Domain(
            "matrix does not preserve the branch forms exactly".into(),
        ));
    }
    let eig = eigenspaces(&block3(a))?;
    if eig.len() == 1 && eig[0].1.len() == 3 {
        // The plane action is trivial: the +1 lift is the identity and the
        // -1 lift is the deck involution, fixing the genus-3 branch curve.
        return if lift_sign == 1 {
            Err(Error::Domain(
                "identity lift fixes the whole surface".into(),
            ))
        } else {
            model.require_smooth()?;
            Ok(FixedLocus::with_curves(0, &[3]))
        };
    }
    let mut isolated = 0usize;
    let mut genera = Vec::new();
    for (nu, basis) in &eig {
        let nu2 = nu * nu;
        let lift_fixes_fiber = if lift_sign == 1 {
            nu2.is_one()
        } else {
            (-&nu2).is_one()
        };
        match basis.len() {
            1 => {
                let bval = model.curve_value(&basis[0]);
                if bval.is_zero() {
                    // One point over a branch point; fixed by both lifts.
                    isolated += 1;
                } else if lift_fixes_fiber {
                    isolated += 2;
                }
            }
            2 => {
                let restricted = model.restrict_to_line(&basis[0], &basis[1]);
                let distinct = binary_form_distinct_roots(&restricted, 4)?;
                if lift_fixes_fiber {
                    if distinct != 4 {
                        return Err(Error::Domain(
                            "branch points collide on a pointwise-fixed line".into(),
                        ));
                    }
                    genera.push(1);
                } else {
                    // Only the ramification points over the line are fixed.
                    isolated += distinct;
                }
            }
            other => {
                return Err(Error::Inconsistent(format!(
                    "unexpected eigenspace dimension {other}"
                )))
            }
        }
    }
    Ok(FixedLocus { isolated_points: isolated, curve_genera: genera })
}

/// One row of the symmetry table for the standard branch family: the
/// parameter constraints cutting the stratum, the expected group label,
/// and generators of the symmetry group.
pub struct Table2Row {
    pub label: &'static str,
    /// Substituted values for a, b, c, d; None keeps a parameter free.
    pub subs: [Option<&'static str>; 4],
    /// Generator matrices, entries as expressions.
    pub gens: &'static [[&'static str; 4]],
    /// Whether the final generator must be rescaled into exact invariance
    /// against the concrete stratum forms.
    pub exactify_last: bool,
    pub order: usize,
}

const SWAP: [&str; 4] = ["0", "1", "1", "0"];
const ROT4: [&str; 4] = ["0", "1", "-1", "0"];

/// The six strata of the standard family and their symmetry groups.
pub const TABLE2: [Table2Row; 6] = [
    Table2Row {
        label: "2^2",
        subs: [None, Some("0"), None, None],
        gens: &[["-1", "0", "0", "1"], ["1", "0", "0", "-1"]],
        exactify_last: false,
        order: 4,
    },
    Table2Row {
        label: "D8",
        subs: [None, Some("0"), Some("a"), None],
        gens: &[SWAP, ROT4],
        exactify_last: false,
        order: 8,
    },
    Table2Row {
        label: "4x2",
        subs: [Some("0"), Some("0"), None, Some("0")],
        gens: &[["z4", "0", "0", "1"], ["1", "0", "0", "-1"]],
        exactify_last: false,
        order: 8,
    },
    Table2Row {
        label: "4.2^2",
        subs: [Some("0"), Some("0"), Some("0"), None],
        gens: &[["z4", "0", "0", "z4"], ["1", "0", "0", "-1"], SWAP],
        exactify_last: false,
        order: 16,
    },
    Table2Row {
        label: "4.A4",
        subs: [Some("0"), Some("0"), Some("0"), Some("2+4*z3")],
        gens: &[
            ["z4", "0", "0", "z4"],
            ["z4", "0", "0", "-z4"],
            ROT4,
            // Order-3 rotation of the branch tetrahedron, up to rescaling.
            ["(-1+z4)/2", "(1+z4)/2", "(-1+z4)/2", "(-1-z4)/2"],
        ],
        exactify_last: true,
        order: 48,
    },
    Table2Row {
        label: "4.D8",
        subs: [Some("0"), Some("0"), Some("0"), Some("0")],
        gens: &[["z4", "0", "0", "1"], ["1", "0", "0", "z4"], SWAP],
        exactify_last: false,
        order: 32,
    },
];

fn parse_entry(vars: &Arc<VarSet>, src: &str) -> Result<Cyclotomic> {
    ParamPoly::parse(vars, src)?
        .as_constant()
        .ok_or_else(|| Error::Parse(format!("entry {src} is not constant")))
}

fn parse_gen(src: &[&str; 4]) -> Result<CycMat> {
    let vars = VarSet::new(&[]);
    let e: Vec<Cyclotomic> = src
        .iter()
        .map(|s| parse_entry(&vars, s))
        .collect::<Result<_>>()?;
    Ok(CycMat::from_rows(vec![
        vec![e[0].clone(), e[1].clone()],
        vec![e[2].clone(), e[3].clone()],
    ]))
}

/// The standard family with symbolic parameters, constrained to a
/// stratum: polynomials live over (t0, t1, a, b, c, d).
fn constrained_family(subs: &[Option<&'static str>; 4]) -> Result<(Arc<VarSet>, ParamPoly, ParamPoly)> {
    let vars = VarSet::new(&["t0", "t1", "a", "b", "c", "d"]);
    let f2 = ParamPoly::parse(&vars, "a*t0^2 + b*t0*t1 + c*t1^2")?;
    let f4 = ParamPoly::parse(&vars, "t0^4 + d*t0^2*t1^2 + t1^4")?;
    let mut map: Vec<Option<ParamPoly>> = vec![None; 6];
    for (i, s) in subs.iter().enumerate() {
        if let Some(src) = s {
            map[2 + i] = Some(ParamPoly::parse(&vars, src)?);
        }
    }
    Ok((vars.clone(), f2.substitute(&map), f4.substitute(&map)))
}

fn symbolic_invariant(f2: &ParamPoly, f4: &ParamPoly, a: &CycMat) -> bool {
    let rows: Vec<Vec<Cyclotomic>> = (0..2).map(|i| a.row(i).to_vec()).collect();
    let neg = -&Cyclotomic::one();
    let d2 = &f2.linear_substitute(&[0, 1], &rows) + &f2.scale(&neg);
    let d4 = &f4.linear_substitute(&[0, 1], &rows) + &f4.scale(&neg);
    poly_is_zero(&d2) && poly_is_zero(&d4)
}

/// Concrete model for a fully specialized row (all parameters fixed).
fn concrete_model(row: &Table2Row) -> Result<QuarticModel> {
    let vars = VarSet::new(&[]);
    let val = |s: &Option<&'static str>| match s {
        Some(src) => parse_entry(&vars, src),
        None => Err(Error::Domain("row keeps a parameter free".into())),
    };
    Ok(QuarticModel::standard(
        &val(&row.subs[0])?,
        &val(&row.subs[1])?,
        &val(&row.subs[2])?,
        &val(&row.subs[3])?,
    ))
}

/// Generic values for the free parameters of each row, chosen so that the
/// branch curve is smooth and no larger stratum group survives.
const ROW_DEFAULTS: [[&str; 4]; 6] = [
    ["2", "0", "3", "1"],
    ["2", "0", "2", "1"],
    ["0", "0", "2", "0"],
    ["0", "0", "0", "1"],
    ["0", "0", "0", "2+4*z3"],
    ["0", "0", "0", "0"],
];

/// A smooth concrete member of a row's stratum, with free parameters
/// filled in by generic defaults.
pub fn row_concrete_model(index: usize) -> Result<QuarticModel> {
    let row = TABLE2
        .get(index)
        .ok_or_else(|| Error::Domain(format!("no table row {index}")))?;
    let vars = VarSet::new(&[]);
    let vals: Vec<Cyclotomic> = ROW_DEFAULTS[index]
        .iter()
        .map(|s| parse_entry(&vars, s))
        .collect::<Result<_>>()?;
    let model = QuarticModel::standard(&vals[0], &vals[1], &vals[2], &vals[3]);
    if !model.is_smooth()? {
        return Err(Error::Inconsistent(format!(
            "default member of row {} is not smooth",
            row.label
        )));
    }
    for (g, src) in row_generators(row)?.iter().zip(row.gens) {
        if !model.invariant_under(g) {
            return Err(Error::Inconsistent(format!(
                "row {} generator {src:?} does not fix the default member",
                row.label
            )));
        }
    }
    Ok(model)
}

/// Final generator list of a row, with the last generator rescaled into
/// exact invariance when the row requires it.
pub fn row_generators(row: &Table2Row) -> Result<Vec<CycMat>> {
    let mut gens: Vec<CycMat> = row
        .gens
        .iter()
        .map(parse_gen)
        .collect::<Result<_>>()?;
    if row.exactify_last {
        let model = concrete_model(row)?;
        let last = gens.pop().expect("row has generators");
        gens.push(model.exactify(&last)?);
    }
    Ok(gens)
}

/// Verification outcome for one symmetry-table row.
pub struct Table2Report {
    pub label: String,
    pub order: usize,
    pub identified: String,
    /// Generators preserve the constrained forms with the remaining
    /// parameters left symbolic.
    pub invariance_symbolic: bool,
    /// No other row's (larger) group survives this row's constraints.
    pub maximal: bool,
}

/// Check one row of the symmetry table: symbolic invariance of its
/// generators, the group order and catalog identity, and maximality
/// against the other rows' groups.
pub fn table2_verify(index: usize) -> Result<Table2Report> {
    use crate::groups::catalog::Catalog;
    use crate::groups::{FiniteGroup, GroupElement, MatrixMode};

    let row = TABLE2
        .get(index)
        .ok_or_else(|| Error::Domain(format!("no table row {index}")))?;
    let (_, f2, f4) = constrained_family(&row.subs)?;
    let gens = row_generators(row)?;
    let invariance_symbolic = gens.iter().all(|g| symbolic_invariant(&f2, &f4, g));

    let elems: Vec<GroupElement> = gens
        .iter()
        .map(|g| GroupElement::matrix(g.clone(), MatrixMode::Linear))
        .collect();
    let group = FiniteGroup::closure(&elems, 400)?;
    let identified = Catalog::builtin().identify(&group.table)?;

    let mut maximal = true;
    for (j, other) in TABLE2.iter().enumerate() {
        if j == index || other.order <= row.order {
            continue;
        }
        let other_gens = row_generators(other)?;
        if other_gens.iter().all(|g| symbolic_invariant(&f2, &f4, g)) {
            maximal = false;
        }
    }

    Ok(Table2Report {
        label: row.label.to_string(),
        order: group.order(),
        identified,
        invariance_symbolic,
        maximal,
    })
}

/// The branch data t2^4 + t0*t1*(t0^2 + t1^2) admitting an order-8
/// symmetry whose two lifts have different numbers of fixed points.
pub fn order_eight_example() -> Result<QuarticModel> {
    let vars = VarSet::new(&["t0", "t1"]);
    let f2 = ParamPoly::zero(&vars);
    let f4 = ParamPoly::parse(&vars, "t0^3*t1 + t0*t1^3")?;
    QuarticModel::custom(f2, f4)
}
