//! Cyclotomic numbers in canonical form.
//!
//! A value is stored by its conductor `n` and coordinates in the power basis
//! `1, z, ..., z^(phi(n)-1)` of `Q(zeta_n)`, where `z = zeta_n = e^(2*pi*i/n)`.
//! The representation is kept *canonical*: `n` is the smallest conductor whose
//! field contains the value, and `n != 2 (mod 4)` (fields with `n = 2m`, `m`
//! odd, coincide with those of conductor `m`). With that invariant, structural
//! equality is mathematical equality, and values can be hashed.

use super::ratlin::RatMat;
use super::{divisors, euler_phi, gcd_u32, lcm_u32, prime_divisors, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Rat, little-endian. Internal helpers.
// ---------------------------------------------------------------------------

fn ptrim(v: &mut Vec<Rat>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn pmul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ptrim(&mut out);
    out
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn pdivrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    ptrim(&mut r);
    let mut b = b.to_vec();
    ptrim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let f = &r[dr] * &lead_inv;
        q[dr - db] = f.clone();
        for i in 0..=db {
            let v = &r[dr - db + i] - &f * &b[i];
            r[dr - db + i] = v;
        }
        ptrim(&mut r);
    }
    (q, r)
}

/// Extended gcd: returns `(g, u, v)` with `u*a + v*b = g`, `g` monic or zero.
fn pext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    ptrim(&mut r0);
    ptrim(&mut r1);
    let mut u0 = vec![Rat::one()];
    let mut u1 = Vec::new();
    let mut v0 = Vec::new();
    let mut v1 = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1);
        let nu = psub(&u0, &pmul(&q, &u1));
        let nv = psub(&v0, &pmul(&q, &v1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, nu);
        v0 = std::mem::replace(&mut v1, nv);
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        for c in r0.iter_mut().chain(u0.iter_mut()).chain(v0.iter_mut()) {
            *c *= &inv;
        }
    }
    (r0, u0, v0)
}

fn psub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    ptrim(&mut out);
    out
}

// ---------------------------------------------------------------------------
// Field data cache.
// ---------------------------------------------------------------------------

/// Precomputed data for `Q(zeta_n)`: the minimal polynomial of `zeta_n` and
/// the reductions of `z^k` to the power basis, for every `k` needed by
/// products and Galois maps.
pub(crate) struct FieldData {
    pub phi: usize,
    /// `x^k` reduced mod the minimal polynomial, for `k < max(n, 2*phi - 1)`.
    /// Each row has length `phi`.
    pub pow_rows: Vec<Vec<Rat>>,
}

fn cyclotomic_min_poly(n: u32, memo: &mut HashMap<u32, Vec<Rat>>) -> Vec<Rat> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by the minimal polynomials of all lower-order roots.
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let q = cyclotomic_min_poly(d, memo);
        let (quot, rem) = pdivrem(&num, &q);
        assert!(rem.is_empty(), "cyclotomic polynomial division must be exact");
        num = quot;
    }
    memo.insert(n, num.clone());
    num
}

fn field(n: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    static MINPOLY: OnceLock<Mutex<HashMap<u32, Vec<Rat>>>> = OnceLock::new();
    debug_assert!(n == 1 || n % 4 != 2, "field conductor must be canonical");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    let min_poly = {
        let mut memo = MINPOLY.get_or_init(|| Mutex::new(HashMap::new())).lock().unwrap();
        cyclotomic_min_poly(n, &mut memo)
    };
    let phi = min_poly.len() - 1;
    assert_eq!(phi as u32, euler_phi(n));
    let rows_needed = (n as usize).max(2 * phi.max(1) - 1);
    let mut pow_rows = Vec::with_capacity(rows_needed);
    // Iteratively: row_{k+1} = shift(row_k) reduced by the monic min poly.
    let mut cur = vec![Rat::zero(); phi];
    if phi > 0 {
        cur[0] = Rat::one();
    }
    for _ in 0..rows_needed {
        pow_rows.push(cur.clone());
        // multiply by x
        let mut next = vec![Rat::zero(); phi];
        let carry = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !carry.is_zero() {
            // x^phi = -(min_poly - x^phi)
            for i in 0..phi {
                let v = &next[i] - &carry * &min_poly[i];
                next[i] = v;
            }
        }
        cur = next;
    }
    let data = Arc::new(FieldData { phi, pow_rows });
    cache.lock().unwrap().insert(n, data.clone());
    data
}

/// Canonical conductor: replace `n = 2 (mod 4)` by `n / 2`.
fn canonical_conductor(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

// ---------------------------------------------------------------------------
// The cyclotomic number type.
// ---------------------------------------------------------------------------

/// An element of the union of all cyclotomic fields of conductor <= 120 or
/// whatever conductors arise by arithmetic, in canonical minimal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    /// Length `phi(conductor)` coordinates in the power basis.
    coeffs: Vec<Rat>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![Rat::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![Rat::one()] }
    }

    pub fn from_rat(r: Rat) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rat(super::rint(k))
    }

    /// `zeta_n^k`, canonicalized.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as u32;
        if k == 0 {
            return Self::one();
        }
        let g = gcd_u32(n, k);
        let mut ord = n / g;
        let mut exp = k / g;
        let mut negate = false;
        if ord % 4 == 2 {
            // zeta_{2m}^e = (-1)^e * zeta_m^(e * (m+1)/2 mod m) for odd m.
            let m = ord / 2;
            negate = exp % 2 == 1;
            exp = exp * ((m + 1) / 2) % m;
            ord = m;
        }
        let f = field(ord);
        let mut coeffs = f.pow_rows[exp as usize].clone();
        if negate {
            for c in &mut coeffs {
                *c = -c.clone();
            }
        }
        let mut out = Cyclotomic { conductor: ord, coeffs };
        out.reduce_conductor();
        out
    }

    /// Conductor of the canonical representation.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.conductor == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Coordinates in the power basis of `Q(zeta_m)` for any multiple `m` of
    /// the conductor (with `m` canonical).
    fn embed_coeffs(&self, m: u32) -> Vec<Rat> {
        assert_eq!(m % self.conductor, 0);
        if m == self.conductor {
            return self.coeffs.clone();
        }
        let f = field(m);
        let stretch = (m / self.conductor) as usize;
        let mut out = vec![Rat::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in f.pow_rows[i * stretch].iter().enumerate() {
                out[j] += c * b;
            }
        }
        out
    }

    fn from_field_coeffs(n: u32, coeffs: Vec<Rat>) -> Self {
        let mut z = Cyclotomic { conductor: n, coeffs };
        z.reduce_conductor();
        z
    }

    /// Galois map `sigma_k: zeta_n -> zeta_n^k`, `gcd(k, n) = 1`. The
    /// conductor is unchanged.
    pub fn galois(&self, k: u32) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        assert_eq!(gcd_u32(n, k % n), 1, "galois exponent must be coprime");
        let f = field(n);
        let mut out = vec![Rat::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as u64 * k as u64 % n as u64) as usize;
            for (j, b) in f.pow_rows[e].iter().enumerate() {
                out[j] += c * b;
            }
        }
        Cyclotomic { conductor: n, coeffs: out }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        if self.conductor == 1 {
            self.clone()
        } else {
            self.galois(self.conductor - 1)
        }
    }

    /// Restore the canonical invariant: minimal conductor, not 2 mod 4.
    fn reduce_conductor(&mut self) {
        loop {
            let n = self.conductor;
            if n == 1 {
                return;
            }
            // Rational fast path: in the power basis, rationals are exactly
            // the span of the basis element 1.
            if self.coeffs[1..].iter().all(|c| c.is_zero()) {
                self.coeffs.truncate(1);
                self.conductor = 1;
                return;
            }
            let mut descended = false;
            for p in prime_divisors(n) {
                let d = canonical_conductor(n / p);
                if d == n {
                    continue;
                }
                if self.try_descend(d) {
                    descended = true;
                    break;
                }
            }
            if !descended {
                return;
            }
        }
    }

    /// If the value lies in `Q(zeta_d)` (`d | n`, canonical), rewrite it there.
    fn try_descend(&mut self, d: u32) -> bool {
        let n = self.conductor;
        debug_assert!(d < n && n % d == 0);
        // The subfield is the fixed field of {k in (Z/n)^*: k = 1 mod d}.
        for k in 2..n {
            if gcd_u32(k, n) == 1 && k % d == 1 % d {
                if self.galois(k).coeffs != self.coeffs {
                    return false;
                }
            }
        }
        // Membership established; solve for coordinates in the zeta_d basis.
        let f = field(n);
        let fd = field(d);
        let stretch = (n / d) as usize;
        let basis = RatMat::from_fn(f.phi, fd.phi, |i, j| f.pow_rows[j * stretch][i].clone());
        let sol = basis
            .solve(&self.coeffs)
            .expect("Galois-fixed value must lie in the subfield");
        self.conductor = d;
        self.coeffs = sol;
        true
    }

    fn add_impl(&self, other: &Self) -> Self {
        let m = canonical_conductor(lcm_u32(self.conductor, other.conductor));
        let mut a = self.embed_coeffs(m);
        let b = other.embed_coeffs(m);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        Self::from_field_coeffs(m, a)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let m = canonical_conductor(lcm_u32(self.conductor, other.conductor));
        let a = self.embed_coeffs(m);
        let b = other.embed_coeffs(m);
        let f = field(m);
        let prod = pmul(&a, &b);
        let mut out = vec![Rat::zero(); f.phi];
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < f.phi {
                out[k] += c;
            } else {
                for (j, b) in f.pow_rows[k].iter().enumerate() {
                    out[j] += c * b;
                }
            }
        }
        Self::from_field_coeffs(m, out)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.conductor == 1 {
            return Self::from_rat(self.coeffs[0].recip());
        }
        let f = field(self.conductor);
        // Reconstruct the minimal polynomial from x^phi's reduction row.
        let mut min_poly = vec![Rat::zero(); f.phi + 1];
        min_poly[f.phi] = Rat::one();
        for (i, c) in f.pow_rows[f.phi].iter().enumerate() {
            min_poly[i] = -c.clone();
        }
        let (g, u, _) = pext_gcd(&self.coeffs, &min_poly);
        assert_eq!(g.len(), 1, "nonzero cyclotomic must be invertible");
        let ginv = g[0].recip();
        let mut out = vec![Rat::zero(); f.phi];
        for (k, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c * &ginv;
            if k < f.phi {
                out[k] += &c;
            } else {
                for (j, b) in f.pow_rows[k].iter().enumerate() {
                    out[j] += &c * b;
                }
            }
        }
        // Inversion never changes the field generated, hence not the conductor.
        Cyclotomic { conductor: self.conductor, coeffs: out }
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            base = base.mul_impl(&base);
            e >>= 1;
        }
        acc
    }

    /// If the value is a root of unity, its exact order and an exponent:
    /// returns `(m, k)` with `self = zeta_m^k`, `gcd(k, m) = 1`, `m` minimal.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            let r = &self.coeffs[0];
            if r.is_one() {
                return Some((1, 0));
            }
            if (-r.clone()).is_one() {
                return Some((2, 1));
            }
            return None;
        }
        // Torsion in Q(zeta_n) is generated by -zeta_n.
        let n = self.conductor;
        let m0 = if n % 2 == 0 { n } else { 2 * n };
        if !self.pow(m0 as i64).is_one() {
            return None;
        }
        let ord = divisors(m0)
            .into_iter()
            .find(|&d| self.pow(d as i64).is_one())
            .expect("order divides m0");
        for k in 1..ord {
            if gcd_u32(k, ord) == 1 && *self == Cyclotomic::root_of_unity(ord, k as i64) {
                return Some((ord, k));
            }
        }
        if ord == 1 {
            return Some((1, 0));
        }
        unreachable!("root of unity of exact order {ord} must be a primitive power");
    }

    /// A square root, valid only for roots of unity: `zeta_m^k -> zeta_{2m}^k`.
    pub fn sqrt_root_of_unity(&self) -> Result<Self> {
        let (m, k) = self
            .as_root_of_unity()
            .ok_or_else(|| Error::Domain(format!("sqrt requested of non-root-of-unity {self}")))?;
        Ok(Cyclotomic::root_of_unity(2 * m, k as i64))
    }
}

// ---------------------------------------------------------------------------
// Operator impls.
// ---------------------------------------------------------------------------

macro_rules! binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$impl_fn(rhs)
            }
        }
        impl std::ops::$trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$impl_fn(&rhs)
            }
        }
        impl std::ops::$trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$impl_fn(rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Mul, mul, mul_impl);

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(&-rhs)
    }
}

impl std::ops::Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl std::ops::Div for &Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(&rhs.inv())
    }
}

impl std::ops::Div for Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: Cyclotomic) -> Cyclotomic {
        &self / &rhs
    }
}

impl std::fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let n = self.conductor;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c < &Rat::zero() { -c.clone() } else { c.clone() };
            if first {
                if c < &Rat::zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &Rat::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "z{n}")?;
                } else {
                    write!(f, "z{n}^{i}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn roots_of_unity_basics() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(2, 1), Cyclotomic::from_int(-1));
        assert_eq!(z(4, 2), Cyclotomic::from_int(-1));
        // zeta_n^n = 1 for a spread of conductors.
        for n in 1..=24 {
            assert!(z(n, 1).pow(n as i64).is_one(), "zeta_{n}^{n} != 1");
        }
        // zeta_8^2 = zeta_4 = i.
        assert_eq!(z(8, 1).pow(2), z(4, 1));
        // Conductor 2 mod 4 normalizes away: zeta_6 lives in Q(zeta_3).
        assert_eq!(z(6, 1).conductor(), 3);
        assert_eq!(z(6, 1), -z(3, 2));
        assert_eq!(z(6, 2), z(3, 1));
    }

    #[test]
    fn golden_identities() {
        // 1 + zeta_3 + zeta_3^2 = 0
        let s = z(3, 1) + z(3, 2) + Cyclotomic::one();
        assert!(s.is_zero());
        // sum of all primitive 5th roots = -1 (mu(5) = -1)
        let s5 = z(5, 1) + z(5, 2) + z(5, 3) + z(5, 4);
        assert_eq!(s5, Cyclotomic::from_int(-1));
        // (zeta_8 - zeta_8^3)^2 = 2
        let r = z(8, 1) - z(8, 3);
        assert_eq!(r.pow(2), Cyclotomic::from_int(2));
        // zeta_12^2 descends to conductor 3 canonically
        assert_eq!(z(12, 1).pow(2).conductor(), 3);
        assert_eq!(z(12, 2), z(6, 1));
    }

    #[test]
    fn descent_finds_minimal_conductor() {
        // zeta_12 * zeta_12^11 = 1 descends all the way.
        let p = z(12, 1) * z(12, 11);
        assert!(p.is_one());
        // zeta_8 + zeta_8^7 = sqrt(2) keeps conductor 8.
        let s = z(8, 1) + z(8, 7);
        assert_eq!(s.conductor(), 8);
        assert_eq!(s.pow(2), Cyclotomic::from_int(2));
        // zeta_15^5 = zeta_3.
        assert_eq!(z(15, 5), z(3, 1));
        assert_eq!(z(15, 5).conductor(), 3);
    }

    #[test]
    fn inverse_and_division() {
        for (n, k) in [(3, 1), (4, 1), (5, 2), (8, 3), (12, 7)] {
            let x = z(n, k) + Cyclotomic::from_int(2);
            let y = x.inv();
            assert!((&x * &y).is_one());
        }
        let a = z(5, 1) - z(5, 4);
        let b = z(5, 2) + Cyclotomic::one();
        let q = &a / &b;
        assert_eq!(&q * &b, a);
    }

    #[test]
    fn as_root_of_unity_exact_orders() {
        assert_eq!(Cyclotomic::one().as_root_of_unity(), Some((1, 0)));
        assert_eq!(Cyclotomic::from_int(-1).as_root_of_unity(), Some((2, 1)));
        assert_eq!(z(4, 1).as_root_of_unity(), Some((4, 1)));
        assert_eq!(z(12, 5).as_root_of_unity(), Some((12, 5)));
        // -zeta_3 has order 6.
        let w = -z(3, 1);
        let (m, k) = w.as_root_of_unity().unwrap();
        assert_eq!(m, 6);
        assert_eq!(w, Cyclotomic::root_of_unity(6, k as i64));
        // 1 + zeta_3 is itself a root of unity (= zeta_6).
        assert_eq!((z(3, 1) + Cyclotomic::one()).as_root_of_unity(), Some((6, 1)));
        // Non-roots report None.
        assert_eq!(Cyclotomic::from_int(2).as_root_of_unity(), None);
        assert_eq!((z(3, 1) + Cyclotomic::from_int(2)).as_root_of_unity(), None);
        assert_eq!((z(8, 1) + z(8, 7)).as_root_of_unity(), None);
        assert_eq!(Cyclotomic::zero().as_root_of_unity(), None);
    }

    #[test]
    fn sqrt_of_roots() {
        let i = z(4, 1);
        let s = i.sqrt_root_of_unity().unwrap();
        assert_eq!(&s * &s, i);
        let m1 = Cyclotomic::from_int(-1);
        let s = m1.sqrt_root_of_unity().unwrap();
        assert_eq!(&s * &s, m1);
        assert!(Cyclotomic::from_int(2).sqrt_root_of_unity().is_err());
    }

    #[test]
    fn galois_and_conjugation() {
        let x = z(5, 1) + z(5, 4); // 2 cos(2 pi / 5), real
        assert_eq!(x.conj(), x);
        let y = z(5, 1) - z(5, 4); // purely imaginary
        assert_eq!(y.conj(), -&y);
        // sigma_2 on zeta_5 hits zeta_5^2.
        assert_eq!(z(5, 1).galois(2), z(5, 2));
    }

    #[test]
    fn display_round_trip_spot_checks() {
        assert_eq!(Cyclotomic::zero().to_string(), "0");
        assert_eq!(Cyclotomic::from_rat(rat(-3, 2)).to_string(), "-3/2");
        assert_eq!(z(3, 1).to_string(), "z3");
        let x = z(8, 3) - Cyclotomic::from_rat(rat(1, 2));
        assert_eq!(x.to_string(), "z8^3 - 1/2");
    }

    #[test]
    fn arithmetic_across_fields() {
        // zeta_3 + zeta_4 lands in conductor 12.
        let s = z(3, 1) + z(4, 1);
        assert_eq!(s.conductor(), 12);
        // And subtracting one part recovers the other.
        assert_eq!(&s - &z(4, 1), z(3, 1));
        // Products of coprime-order roots multiply orders.
        let p = z(3, 1) * z(4, 1);
        assert_eq!(p.as_root_of_unity(), Some((12, 7)));
        assert_eq!(rint(0), Rat::zero());
    }
}
