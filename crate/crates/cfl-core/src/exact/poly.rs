//! Multivariate polynomials over cyclotomic numbers.
//!
//! Variables live in a shared [`VarSet`]; a polynomial is a map from exponent
//! vectors to coefficients. Coordinates and free parameters are both ordinary
//! variables, so a substitution can target coordinates while parameters ride
//! along untouched.

use super::cyclotomic::Cyclotomic;
use super::Rat;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::One;
use std::collections::BTreeMap;
use std::sync::Arc;

/// An ordered set of variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new(names: &[&str]) -> Arc<VarSet> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        for n in &names {
            assert!(!n.is_empty());
            let mut chars = n.chars();
            let head = chars.next().unwrap();
            assert!(head.is_ascii_alphabetic() || head == '_', "bad variable name {n}");
        }
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), names.len(), "duplicate variable names");
        Arc::new(VarSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
}

/// Exponent vector, ordered by total degree then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), &self.0).cmp(&(other.total(), &other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over [`Cyclotomic`] in the variables of a [`VarSet`].
#[derive(Clone, PartialEq, Eq)]
pub struct ParamPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Mono, Cyclotomic>,
}

impl ParamPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        ParamPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Cyclotomic) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, Cyclotomic::one())
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        assert!(i < vars.len());
        let mut exps = vec![0u16; vars.len()];
        exps[i] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(Mono(exps), Cyclotomic::one());
        p
    }

    pub fn var_named(vars: &Arc<VarSet>, name: &str) -> Self {
        Self::var(vars, vars.index(name).unwrap_or_else(|| panic!("no variable {name}")))
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Mono) -> Cyclotomic {
        self.terms.get(mono).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// The constant value, if no variable appears.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.terms.is_empty() {
            return Some(Cyclotomic::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.total() == 0 {
                return Some(c.clone());
            }
        }
        None
    }

    fn same_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable sets"
        );
    }

    fn insert(&mut self, m: Mono, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `map[i]` (if present) for variable `i`. Unmapped variables
    /// stay as themselves.
    pub fn substitute(&self, map: &[Option<ParamPoly>]) -> Self {
        assert_eq!(map.len(), self.vars.len());
        let mut out = Self::zero(&self.vars);
        for (mono, coeff) in &self.terms {
            let mut term = Self::constant(&self.vars, coeff.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match &map[i] {
                    Some(p) => {
                        p.same_vars(self);
                        p.pow(e as u32)
                    }
                    None => {
                        let mut exps = vec![0u16; self.vars.len()];
                        exps[i] = e;
                        let mut p = Self::zero(&self.vars);
                        p.terms.insert(Mono(exps), Cyclotomic::one());
                        p
                    }
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    /// `p(M x)` on the listed variables: variable `idx[i]` is replaced by
    /// `sum_j M[i][j] * idx[j]`. Other variables (parameters) are unchanged.
    pub fn linear_substitute(&self, idx: &[usize], mat: &[Vec<Cyclotomic>]) -> Self {
        assert_eq!(mat.len(), idx.len());
        let mut map: Vec<Option<ParamPoly>> = vec![None; self.vars.len()];
        for (i, row) in mat.iter().enumerate() {
            assert_eq!(row.len(), idx.len());
            let mut lin = Self::zero(&self.vars);
            for (j, c) in row.iter().enumerate() {
                lin = &lin + &Self::var(&self.vars, idx[j]).scale(c);
            }
            map[idx[i]] = Some(lin);
        }
        self.substitute(&map)
    }

    /// Evaluate with one value per variable.
    pub fn eval(&self, vals: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(vals.len(), self.vars.len());
        let mut acc = Cyclotomic::zero();
        for (mono, coeff) in &self.terms {
            let mut t = coeff.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    t = t * vals[i].pow(e as i64);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// `d/d(var)`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (mono, coeff) in &self.terms {
            let e = mono.0[var];
            if e == 0 {
                continue;
            }
            let mut m = mono.clone();
            m.0[var] = e - 1;
            out.insert(m, coeff * &Cyclotomic::from_int(e as i64));
        }
        out
    }

    /// If `self = lambda * other` for a scalar `lambda` (with `other != 0`),
    /// return `lambda`.
    pub fn scalar_ratio_to(&self, other: &Self) -> Option<Cyclotomic> {
        self.same_vars(other);
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Cyclotomic::zero());
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (m0, c0) = other.terms.iter().next_back().unwrap();
        let lambda = &self.coeff(m0) / c0;
        for (m, c) in &other.terms {
            if self.coeff(m) != &lambda * c {
                return None;
            }
        }
        Some(lambda)
    }

    /// View as univariate in `var`; fails if any other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Result<Vec<Cyclotomic>> {
        let mut out = vec![Cyclotomic::zero(); self.degree_in(var) as usize + 1];
        for (mono, coeff) in &self.terms {
            for (i, &e) in mono.0.iter().enumerate() {
                if i != var && e != 0 {
                    return Err(Error::Domain(format!(
                        "polynomial is not univariate in {}: {} appears",
                        self.vars.name(var),
                        self.vars.name(i)
                    )));
                }
            }
            out[mono.0[var] as usize] = coeff.clone();
        }
        Ok(out)
    }

    /// Coefficients as polynomials in the other variables: index `k` is the
    /// coefficient of `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<ParamPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.vars); d + 1];
        for (mono, coeff) in &self.terms {
            let k = mono.0[var] as usize;
            let mut m = mono.clone();
            m.0[var] = 0;
            out[k].insert(m, coeff.clone());
        }
        out
    }
}

impl std::ops::Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.same_vars(rhs);
        let mut out = ParamPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps: Vec<u16> =
                    ma.0.iter().zip(&mb.0).map(|(&x, &y)| x.checked_add(y).unwrap()).collect();
                out.insert(Mono(exps), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        let mut out = ParamPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }
}

impl std::fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            let (neg, mag) = match coeff.to_rat() {
                Some(r) if r < Rat::from(BigInt::from(0)) => {
                    (true, Cyclotomic::from_rat(-r))
                }
                _ => (false, coeff.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars_part: Vec<String> = mono
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars.name(i).to_string()
                    } else {
                        format!("{}^{}", self.vars.name(i), e)
                    }
                })
                .collect();
            if vars_part.is_empty() {
                write!(f, "{}", coeff_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars_part.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff_string(&mag), vars_part.join("*"))?;
            }
        }
        Ok(())
    }
}

fn coeff_string(c: &Cyclotomic) -> String {
    let s = c.to_string();
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

impl std::fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Univariate helpers over Cyclotomic (dense, little-endian).
// ---------------------------------------------------------------------------

pub fn cpoly_trim(v: &mut Vec<Cyclotomic>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

pub fn cpoly_derivative(a: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let mut out: Vec<Cyclotomic> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &Cyclotomic::from_int(i as i64))
        .collect();
    cpoly_trim(&mut out);
    out
}

pub fn cpoly_divrem(a: &[Cyclotomic], b: &[Cyclotomic]) -> (Vec<Cyclotomic>, Vec<Cyclotomic>) {
    let mut r = a.to_vec();
    cpoly_trim(&mut r);
    let mut b = b.to_vec();
    cpoly_trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].inv();
    let mut q = vec![Cyclotomic::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let f = &r[dr] * &lead_inv;
        q[dr - db] = f.clone();
        for i in 0..=db {
            r[dr - db + i] = &r[dr - db + i] - &(&f * &b[i]);
        }
        cpoly_trim(&mut r);
    }
    (q, r)
}

/// Monic gcd.
pub fn cpoly_gcd(a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    cpoly_trim(&mut r0);
    cpoly_trim(&mut r1);
    while !r1.is_empty() {
        let (_, r) = cpoly_divrem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.inv();
        for c in &mut r0 {
            *c = &*c * &inv;
        }
    }
    r0
}

/// A nonzero polynomial is squarefree iff it shares no root with its
/// derivative.
pub fn cpoly_squarefree(a: &[Cyclotomic]) -> bool {
    let mut t = a.to_vec();
    cpoly_trim(&mut t);
    assert!(!t.is_empty(), "squarefree test on zero polynomial");
    if t.len() <= 2 {
        return true;
    }
    cpoly_gcd(&t, &cpoly_derivative(&t)).len() == 1
}

/// Resultant of two univariate polynomials via the Sylvester determinant.
pub fn cpoly_resultant(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    cpoly_trim(&mut a);
    cpoly_trim(&mut b);
    assert!(!a.is_empty() && !b.is_empty(), "resultant of zero polynomial");
    let (da, db) = (a.len() - 1, b.len() - 1);
    if da == 0 {
        return a[0].pow(db as i64);
    }
    if db == 0 {
        return b[0].pow(da as i64);
    }
    let n = da + db;
    let mut m = super::linalg::CycMat::zero(n, n);
    for i in 0..db {
        for (j, c) in a.iter().enumerate() {
            m[(i, i + da - j)] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in b.iter().enumerate() {
            m[(db + i, i + db - j)] = c.clone();
        }
    }
    m.det()
}

// ---------------------------------------------------------------------------
// Parser.
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<VarSet>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<ParamPoly> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected )"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some(b'/') {
                    // Lookahead: a denominator must be a plain integer.
                    let save = self.pos;
                    self.pos += 1;
                    match self.integer() {
                        Ok(d) => d,
                        Err(_) => {
                            self.pos = save;
                            BigInt::one()
                        }
                    }
                } else {
                    BigInt::one()
                };
                if den == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                Ok(ParamPoly::constant(self.vars, Cyclotomic::from_rat(Rat::new(num, den))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                self.skip_ws();
                let name = self.ident();
                if let Some(rest) = name.strip_prefix('z') {
                    if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                        let n: u32 = rest
                            .parse()
                            .map_err(|_| self.err("root-of-unity order out of range"))?;
                        if n == 0 {
                            return Err(self.err("root-of-unity order must be positive"));
                        }
                        return Ok(ParamPoly::constant(
                            self.vars,
                            Cyclotomic::root_of_unity(n, 1),
                        ));
                    }
                }
                match self.vars.index(&name) {
                    Some(i) => Ok(ParamPoly::var(self.vars, i)),
                    None => Err(self.err(&format!("unknown variable {name}"))),
                }
            }
            _ => Err(self.err("expected atom")),
        }
    }

    fn factor(&mut self) -> Result<ParamPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent out of range"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn term(&mut self) -> Result<ParamPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.bump();
                    let f = self.factor()?;
                    let c = f
                        .as_constant()
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| self.err("divisor must be a nonzero constant"))?;
                    acc = acc.scale(&c.inv());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn expr(&mut self) -> Result<ParamPoly> {
        let mut acc = if self.eat(b'-') {
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }
}

impl ParamPoly {
    /// Parse an expression over the given variables. Grammar: `+ - * / ^`,
    /// parentheses, integers and fractions, variable names, and `z<n>` for
    /// the root of unity of order `n` (e.g. `z3`, `z8`). Division is only by
    /// nonzero constants.
    pub fn parse(vars: &Arc<VarSet>, src: &str) -> Result<Self> {
        let mut p = Parser { src: src.as_bytes(), pos: 0, vars };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn vs() -> Arc<VarSet> {
        VarSet::new(&["x", "y", "w"])
    }

    #[test]
    fn parse_and_display() {
        let v = vs();
        let p = ParamPoly::parse(&v, "x^2 + 2*x*y - 3/2").unwrap();
        assert_eq!(p.to_string(), "x^2 + 2*x*y - 3/2");
        let q = ParamPoly::parse(&v, "(x + y)^2").unwrap();
        let r = ParamPoly::parse(&v, "x^2 + 2*x*y + y^2").unwrap();
        assert_eq!(q, r);
        assert!(ParamPoly::parse(&v, "x +").is_err());
        assert!(ParamPoly::parse(&v, "q").is_err());
        assert!(ParamPoly::parse(&v, "x/y").is_err());
        assert_eq!(ParamPoly::parse(&v, "x/2").unwrap(), ParamPoly::parse(&v, "1/2*x").unwrap());
    }

    #[test]
    fn roots_of_unity_in_source() {
        let v = vs();
        let p = ParamPoly::parse(&v, "z3^2 + z3 + 1").unwrap();
        assert!(p.is_zero());
        let q = ParamPoly::parse(&v, "z4*x").unwrap();
        let q2 = &q * &q;
        assert_eq!(q2, ParamPoly::parse(&v, "-1*x^2").unwrap());
    }

    #[test]
    fn substitution_keeps_parameters() {
        let v = VarSet::new(&["x", "y", "a"]);
        // x -> x + a*y keeps a symbolic.
        let p = ParamPoly::parse(&v, "x^2 + a").unwrap();
        let sub = ParamPoly::parse(&v, "x + a*y").unwrap();
        let mut map = vec![None, None, None];
        map[0] = Some(sub);
        let q = p.substitute(&map);
        assert_eq!(q, ParamPoly::parse(&v, "x^2 + 2*a*x*y + a^2*y^2 + a").unwrap());
    }

    #[test]
    fn linear_substitute_swaps() {
        let v = vs();
        let p = ParamPoly::parse(&v, "x^2 + y^3").unwrap();
        let one = Cyclotomic::one();
        let zero = Cyclotomic::zero();
        // swap x and y
        let m = vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]];
        let q = p.linear_substitute(&[0, 1], &m);
        assert_eq!(q, ParamPoly::parse(&v, "y^2 + x^3").unwrap());
    }

    #[test]
    fn scalar_ratio() {
        let v = vs();
        let p = ParamPoly::parse(&v, "x^2 + y^2").unwrap();
        let q = ParamPoly::parse(&v, "3*x^2 + 3*y^2").unwrap();
        assert_eq!(q.scalar_ratio_to(&p), Some(Cyclotomic::from_int(3)));
        let r = ParamPoly::parse(&v, "3*x^2 + 2*y^2").unwrap();
        assert_eq!(r.scalar_ratio_to(&p), None);
        assert_eq!(ParamPoly::zero(&v).scalar_ratio_to(&p), Some(Cyclotomic::zero()));
    }

    #[test]
    fn eval_and_derivative() {
        let v = vs();
        let p = ParamPoly::parse(&v, "x^3 - 2*x*y + 1").unwrap();
        let val = p.eval(&[Cyclotomic::from_int(2), Cyclotomic::from_int(3), Cyclotomic::zero()]);
        assert_eq!(val, Cyclotomic::from_int(8 - 12 + 1));
        let dx = p.derivative(0);
        assert_eq!(dx, ParamPoly::parse(&v, "3*x^2 - 2*y").unwrap());
    }

    #[test]
    fn univariate_tools() {
        let v = VarSet::new(&["t"]);
        let p = ParamPoly::parse(&v, "t^4 - 1").unwrap();
        let u = p.to_univariate(0).unwrap();
        assert!(cpoly_squarefree(&u));
        let q = ParamPoly::parse(&v, "t^2 - 2*t + 1").unwrap().to_univariate(0).unwrap();
        assert!(!cpoly_squarefree(&q));
        // gcd((t-1)^2, t^2-1) = t - 1
        let r = ParamPoly::parse(&v, "t^2 - 1").unwrap().to_univariate(0).unwrap();
        let g = cpoly_gcd(&q, &r);
        assert_eq!(g.len(), 2);
        assert!(g[1].is_one());
        assert_eq!(g[0], Cyclotomic::from_int(-1));
    }

    #[test]
    fn resultants() {
        let v = VarSet::new(&["t"]);
        let f = ParamPoly::parse(&v, "t^2 - 3*t + 2").unwrap().to_univariate(0).unwrap();
        let g = ParamPoly::parse(&v, "t - 1").unwrap().to_univariate(0).unwrap();
        // shared root t = 1
        assert!(cpoly_resultant(&f, &g).is_zero());
        let h = ParamPoly::parse(&v, "t - 4").unwrap().to_univariate(0).unwrap();
        // res(f, t - 4) = f(4) = 6
        assert_eq!(cpoly_resultant(&f, &h), Cyclotomic::from_int(6));
        // disc-style check: res(t^2 + 1, 2t) = 4
        let f2 = ParamPoly::parse(&v, "t^2 + 1").unwrap().to_univariate(0).unwrap();
        assert_eq!(cpoly_resultant(&f2, &cpoly_derivative(&f2)), Cyclotomic::from_int(4));
    }

    #[test]
    fn coefficients_in_variable() {
        let v = vs();
        let p = ParamPoly::parse(&v, "x^2*y + x^2 + w*x + 5").unwrap();
        let cs = p.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], ParamPoly::parse(&v, "5").unwrap());
        assert_eq!(cs[1], ParamPoly::parse(&v, "w").unwrap());
        assert_eq!(cs[2], ParamPoly::parse(&v, "y + 1").unwrap());
        assert_eq!(p.degree_in(0), 2);
        assert_eq!(p.total_degree(), 3);
        assert_eq!(rat(1, 2) + rat(1, 2), rat(1, 1));
    }
}
