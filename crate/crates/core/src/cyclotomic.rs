//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`.
//!
//! An element is stored as a rational polynomial in `ζ_M` of degree below
//! `φ(M)`, i.e. reduced modulo the cyclotomic polynomial `Φ_M`. That basis is
//! a true basis of the field, so for a fixed order the coefficient vector is
//! unique. Elements of different orders are compared after lifting both to the
//! lcm of the orders; hashing goes through the smallest subfield `Q(ζ_d)`
//! containing the element, so equal values hash equally whatever order they
//! were built in.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest order reachable by lcm coercion.
pub const MAX_ORDER: u32 = 360;

static PHI_TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();

fn cyclotomic_polys() -> &'static [Vec<i64>] {
    PHI_TABLE.get_or_init(|| {
        // x^n - 1 = prod_{d | n} Phi_d(x)
        let mut table: Vec<Vec<i64>> = vec![Vec::new(); MAX_ORDER as usize + 1];
        for n in 1..=MAX_ORDER as usize {
            let mut num = vec![0i64; n + 1];
            num[0] = -1;
            num[n] = 1;
            for d in 1..n {
                if n % d == 0 {
                    num = exact_div_monic(&num, &table[d]);
                }
            }
            table[n] = num;
        }
        table
    })
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (k, &dk) in den.iter().enumerate() {
                rem[i + k] -= c * dk;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Coefficients of `Φ_n`, lowest degree first. Panics above [`MAX_ORDER`].
pub fn cyclotomic_poly(n: u32) -> &'static [i64] {
    assert!(
        (1..=MAX_ORDER).contains(&n),
        "cyclotomic order {n} out of range"
    );
    &cyclotomic_polys()[n as usize]
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Number of primitive `n`-th roots of unity.
pub fn primitive_count(n: u64) -> u64 {
    totient(n)
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Minimal `k ≥ 1` with `x^k = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootLevel(pub u32);

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    fn raw(order: u32, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), totient(order as u64) as usize);
        Cyclotomic { order, coeffs }
    }

    /// Builds `Σ c_e ζ_M^e` from an arbitrary-length coefficient list.
    pub fn from_power_coeffs(order: u32, coeffs: &[BigRational]) -> Result<Self> {
        check_order(order)?;
        let mut full = vec![BigRational::zero(); order as usize];
        for (e, c) in coeffs.iter().enumerate() {
            full[e % order as usize] += c;
        }
        Ok(Self::raw(order, reduce(order, full)))
    }

    pub fn zero() -> Self {
        Self::raw(1, vec![BigRational::zero()])
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::raw(1, vec![r])
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `ζ_order^exponent`.
    pub fn root_of_unity(order: u32, exponent: i64) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        check_order(order).expect("root of unity order");
        let e = exponent.rem_euclid(order as i64) as usize;
        let mut full = vec![BigRational::zero(); order as usize];
        full[e] = BigRational::one();
        Self::raw(order, reduce(order, full))
    }

    /// `j₁ = e^{2πi/3}`.
    pub fn j1() -> Self {
        Self::root_of_unity(3, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Reduced coefficients (length `φ(order)`) in the power basis.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let lowered = self.lowered();
        (lowered.order == 1).then(|| lowered.coeffs[0].clone())
    }

    /// Lifts to `Q(ζ_target)`; `order` must divide `target`.
    pub fn lift(&self, target: u32) -> Result<Self> {
        if !target.is_multiple_of(self.order) {
            return Err(Error::Order(format!(
                "{} does not divide {}",
                self.order, target
            )));
        }
        check_order(target)?;
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut full = vec![BigRational::zero(); target as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[e * step] = c.clone();
            }
        }
        Ok(Self::raw(target, reduce(target, full)))
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        let l = self.order.lcm(&other.order);
        check_order(l)?;
        Ok((self.lift(l)?, other.lift(l)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.order == other.order {
            let c = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Ok(Self::raw(self.order, c));
        }
        let (a, b) = self.common(other)?;
        a.try_add(&b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            if other.order == 1 {
                return Ok(self.scale(&other.coeffs[0]));
            }
            if self.order == 1 {
                return Ok(other.scale(&self.coeffs[0]));
            }
            let (a, b) = self.common(other)?;
            return a.try_mul(&b);
        }
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + k] += a * b;
                }
            }
        }
        Ok(Self::raw(self.order, reduce(self.order, prod)))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::raw(self.order, self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn neg_ref(&self) -> Self {
        Self::raw(self.order, self.coeffs.iter().map(|c| -c).collect())
    }

    /// Galois automorphism `ζ ↦ ζ^k`, `gcd(k, order) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let m = self.order as i64;
        debug_assert_eq!(k.rem_euclid(m).gcd(&m), 1);
        let mut full = vec![BigRational::zero(); self.order as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[(e as i64 * k).rem_euclid(m) as usize] += c;
            }
        }
        Self::raw(self.order, reduce(self.order, full))
    }

    /// Complex conjugation, `ζ^e ↦ ζ^{-e}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let (_, n) = self.norm_parts();
        n
    }

    fn norm_parts(&self) -> (Self, BigRational) {
        let m = self.order as i64;
        // product of the non-identity conjugates
        let mut rest = Self::one();
        for k in 2..m.max(2) {
            if k.gcd(&m) == 1 {
                rest = rest.try_mul(&self.galois(k)).expect("same order");
            }
        }
        let n = self.try_mul(&rest).expect("same order");
        let lowered = n.lowered();
        debug_assert_eq!(lowered.order, 1);
        (rest, lowered.coeffs[0].clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let (rest, n) = self.norm_parts();
        Ok(rest.scale(&n.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut out = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = rat_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * e as f64 / m;
            acc += Complex64::from_polar(v, ang);
        }
        acc
    }

    /// Minimal `k` with `self^k = 1`.
    pub fn level(&self) -> Result<RootLevel> {
        let bound = self.order.lcm(&2);
        if !self.pow(bound as i64).is_one() {
            return Err(Error::NotRootOfUnity);
        }
        for d in divisors(bound) {
            if self.pow(d as i64).is_one() {
                return Ok(RootLevel(d));
            }
        }
        unreachable!("bound itself works")
    }

    /// For a root of unity, `(k, e)` with `self = ζ_k^e`, `k` the level and `0 ≤ e < k`.
    pub fn as_root(&self) -> Option<(u32, u32)> {
        let k = self.level().ok()?.0;
        (0..k)
            .find(|&e| Self::root_of_unity(k, e as i64) == *self)
            .map(|e| (k, e))
    }

    /// The same value in the smallest `Q(ζ_d)` containing it.
    /// `d` is chosen among the divisors of `order`, with `d ≡ 2 mod 4` skipped
    /// since `Q(ζ_{2m}) = Q(ζ_m)` for odd `m`.
    pub fn lowered(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            return Self::from_rational(self.coeffs[0].clone());
        }
        for d in divisors(self.order) {
            if d == self.order {
                break;
            }
            if d % 4 == 2 || d == 1 {
                continue;
            }
            if let Some(v) = self.express_in(d) {
                return v;
            }
        }
        self.clone()
    }

    // Solves for x in Q(ζ_d) whose lift to Q(ζ_M) equals self.
    fn express_in(&self, d: u32) -> Option<Self> {
        let n = totient(d as u64) as usize;
        let m = self.coeffs.len();
        // columns: lifts of ζ_d^k, k < φ(d)
        let cols: Vec<Vec<BigRational>> = (0..n)
            .map(|k| {
                Self::root_of_unity(d, k as i64)
                    .lift(self.order)
                    .unwrap()
                    .coeffs
            })
            .collect();
        let mut rows: Vec<Vec<BigRational>> = (0..m)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let sol = solve_exact(&mut rows, n)?;
        Some(Self::raw(d, sol))
    }

    /// Key identifying the value independently of its construction order.
    pub fn canonical_key(&self) -> (u32, Vec<BigRational>) {
        let l = self.lowered();
        (l.order, l.coeffs)
    }
}

// Gauss-Jordan on an augmented system; None when inconsistent.
fn solve_exact(rows: &mut [Vec<BigRational>], n: usize) -> Option<Vec<BigRational>> {
    let m = rows.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=n {
                    let t = &rows[pivot_row][c] * &f;
                    rows[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = rows[r][n].clone();
    }
    Some(sol)
}

fn check_order(order: u32) -> Result<()> {
    if order == 0 {
        return Err(Error::Order("order must be positive".into()));
    }
    if order > MAX_ORDER {
        return Err(Error::Order(format!(
            "order {order} exceeds cap {MAX_ORDER}"
        )));
    }
    Ok(())
}

// Full-length (any length) coefficient list -> remainder mod Phi_M.
fn reduce(order: u32, mut c: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_poly(order);
    let deg = phi.len() - 1;
    if c.len() <= deg {
        c.resize(deg, BigRational::zero());
        return c;
    }
    for i in (deg..c.len()).rev() {
        if c[i].is_zero() {
            continue;
        }
        let lead = std::mem::take(&mut c[i]);
        for (k, &pk) in phi[..deg].iter().enumerate() {
            if pk != 0 {
                c[i - deg + k] -= &lead * BigRational::from_integer(pk.into());
            }
        }
    }
    c.truncate(deg);
    c
}

fn rat_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = r.denom().bits().saturating_sub(60) as i64;
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        match self.common(other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => self.canonical_key() == other.canonical_key(),
        }
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$f(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl std::ops::AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        let mut acc = Cyclotomic::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl fmt::Display for Cyclotomic {
    /// Terms `c*z{M}^e` over the reduced basis of the smallest containing field.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.lowered();
        if let Some((k, e)) = l.as_root_cheap() {
            return match (k, e) {
                (1, _) => write!(f, "1"),
                (2, _) => write!(f, "-1"),
                _ => write!(f, "z{k}^{e}"),
            };
        }
        let mut first = true;
        for (e, c) in l.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if e == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "z{}^{e}", l.order)?;
            } else {
                write!(f, "{a}*z{}^{e}", l.order)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Cyclotomic {
    // Monomial check without powering: a root of unity in reduced form is
    // not always a single basis monomial, so only the obvious cases.
    fn as_root_cheap(&self) -> Option<(u32, u32)> {
        let nz: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect();
        if nz.len() != 1 {
            return None;
        }
        let c = &self.coeffs[nz[0]];
        if c.is_one() {
            if self.order == 1 {
                return Some((1, 0));
            }
            let e = nz[0] as u32;
            let g = e.gcd(&self.order);
            return Some((self.order / g, e / g));
        }
        if (-c).is_one() && self.order == 1 {
            return Some((2, 1));
        }
        None
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    order: u32,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut coeffs: Vec<[String; 2]> = self
            .coeffs
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        coeffs.resize(self.order as usize, ["0".into(), "1".into()]);
        CycJson {
            order: self.order,
            coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CycJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|[n, dn]| {
                let n: BigInt = n.parse().map_err(D::Error::custom)?;
                let dn: BigInt = dn.parse().map_err(D::Error::custom)?;
                if dn.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(n, dn))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Cyclotomic::from_power_coeffs(raw.order, &coeffs).map_err(D::Error::custom)
    }
}

/// Small cache of powers of a fixed root, for hot loops.
pub struct RootPowers {
    order: u32,
    powers: HashMap<u32, Cyclotomic>,
}

impl RootPowers {
    pub fn new(order: u32) -> Self {
        RootPowers {
            order,
            powers: HashMap::new(),
        }
    }

    pub fn get(&mut self, e: i64) -> Cyclotomic {
        let k = e.rem_euclid(self.order as i64) as u32;
        let order = self.order;
        self.powers
            .entry(k)
            .or_insert_with(|| Cyclotomic::root_of_unity(order, k as i64))
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        assert_eq!(cyclotomic_poly(1), &[-1, 1]);
        assert_eq!(cyclotomic_poly(3), &[1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), &[1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), &[1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), &[1, 0, -1, 0, 1]);
    }

    #[test]
    fn mixed_orders() {
        let j = Cyclotomic::j1();
        let minus_j = -&j;
        assert_eq!(minus_j, Cyclotomic::root_of_unity(6, 5));
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!((&i * &j).order(), 12);
        assert_eq!((&i * &i), Cyclotomic::from_int(-1));
    }

    #[test]
    fn lowered_roundtrip() {
        let x = Cyclotomic::root_of_unity(6, 2).lift(12).unwrap();
        let l = x.lowered();
        assert_eq!(l.order(), 3);
        assert_eq!(l, Cyclotomic::j1());
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::j1().to_string(), "z3^1");
        assert_eq!(Cyclotomic::from_int(-1).to_string(), "-1");
        assert_eq!(
            (Cyclotomic::from_int(1) - Cyclotomic::j1()).to_string(),
            "1 - z3^1"
        );
    }

    #[test]
    fn json_roundtrip() {
        let x = Cyclotomic::frac(3, 7) + Cyclotomic::root_of_unity(8, 3);
        let s = serde_json::to_string(&x).unwrap();
        let y: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(s.starts_with("{\"order\":8,\"coeffs\":[[\"3\",\"7\"]"));
    }
}
