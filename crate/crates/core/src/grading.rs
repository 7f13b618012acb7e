//! Grading groups `Z2^p x Z3^q` and their commutation factors.
//!
//! Elements are indexed by reading the bits as a binary number (first bit most
//! significant), multiplying by `3^q`, and adding the trits read in base 3.
//! Sector labels are the bit string and the trit string joined by `_`, e.g.
//! `1_10`; when one of the two parts is empty the separator is dropped.
//!
//! Search only looks at tables whose entries are roots of unity. This loses
//! nothing: bilinearity gives `ε(α,β)^{ord β} = ε(α, ord β · β) = ε(α,0) = 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest group order handled by [`search_tables`].
pub const MAX_SEARCH_ORDER: usize = 18;
/// Default cap on the number of generator-value assignments tried by a search.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub p: usize,
    pub q: usize,
}

impl Shape {
    pub fn new(p: usize, q: usize) -> Self {
        Shape { p, q }
    }

    pub fn order(self) -> usize {
        (1usize << self.p) * 3usize.pow(self.q as u32)
    }

    pub fn elements(self) -> Vec<GroupElement> {
        (0..self.order())
            .map(|i| GroupElement::from_index(self, i))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub bits: Vec<u8>,
    pub trits: Vec<u8>,
}

impl GroupElement {
    pub fn new(bits: &[u8], trits: &[u8]) -> Self {
        GroupElement {
            bits: bits.iter().map(|b| b % 2).collect(),
            trits: trits.iter().map(|t| t % 3).collect(),
        }
    }

    pub fn identity(shape: Shape) -> Self {
        GroupElement {
            bits: vec![0; shape.p],
            trits: vec![0; shape.q],
        }
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.bits.len(), self.trits.len())
    }

    pub fn is_identity(&self) -> bool {
        self.bits.iter().all(|&b| b == 0) && self.trits.iter().all(|&t| t == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "group shapes differ");
        GroupElement {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| (a + b) % 2)
                .collect(),
            trits: self
                .trits
                .iter()
                .zip(&other.trits)
                .map(|(a, b)| (a + b) % 3)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        GroupElement {
            bits: self.bits.clone(),
            trits: self.trits.iter().map(|t| (3 - t) % 3).collect(),
        }
    }

    pub fn scale(&self, k: u32) -> Self {
        GroupElement {
            bits: self
                .bits
                .iter()
                .map(|&b| ((b as u32 * k) % 2) as u8)
                .collect(),
            trits: self
                .trits
                .iter()
                .map(|&t| ((t as u32 * k) % 3) as u8)
                .collect(),
        }
    }

    /// Order of the element (divides 6).
    pub fn order(&self) -> u32 {
        let two = self.bits.iter().any(|&b| b != 0);
        let three = self.trits.iter().any(|&t| t != 0);
        match (two, three) {
            (false, false) => 1,
            (true, false) => 2,
            (false, true) => 3,
            (true, true) => 6,
        }
    }

    pub fn index(&self) -> usize {
        let b = self
            .bits
            .iter()
            .fold(0usize, |acc, &x| acc * 2 + x as usize);
        let t = self
            .trits
            .iter()
            .fold(0usize, |acc, &x| acc * 3 + x as usize);
        b * 3usize.pow(self.trits.len() as u32) + t
    }

    pub fn from_index(shape: Shape, mut i: usize) -> Self {
        let mut trits = vec![0u8; shape.q];
        for k in (0..shape.q).rev() {
            trits[k] = (i % 3) as u8;
            i /= 3;
        }
        let mut bits = vec![0u8; shape.p];
        for k in (0..shape.p).rev() {
            bits[k] = (i % 2) as u8;
            i /= 2;
        }
        GroupElement { bits, trits }
    }

    /// `(x, α)` with `x` in front.
    pub fn concat(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        let mut trits = self.trits.clone();
        trits.extend_from_slice(&other.trits);
        GroupElement { bits, trits }
    }

    pub fn label(&self) -> String {
        let b: String = self.bits.iter().map(|d| char::from(b'0' + d)).collect();
        let t: String = self.trits.iter().map(|d| char::from(b'0' + d)).collect();
        match (b.is_empty(), t.is_empty()) {
            (false, false) => format!("{b}_{t}"),
            (true, true) => "e".to_string(),
            _ => format!("{b}{t}"),
        }
    }

    /// Parses a label for a known shape. Underscores are optional.
    pub fn parse(shape: Shape, label: &str) -> Result<Self> {
        let digits: Vec<u8> = label
            .chars()
            .filter(|c| *c != '_' && *c != ' ')
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Invalid(format!("bad sector label '{label}'")))?;
        if label == "e" && shape.order() == 1 {
            return Ok(Self::identity(shape));
        }
        if digits.len() != shape.p + shape.q {
            return Err(Error::Invalid(format!(
                "label '{label}' does not fit shape {shape:?}"
            )));
        }
        let (b, t) = digits.split_at(shape.p);
        if b.iter().any(|&x| x > 1) || t.iter().any(|&x| x > 2) {
            return Err(Error::Invalid(format!(
                "bad digit in sector label '{label}'"
            )));
        }
        Ok(GroupElement {
            bits: b.to_vec(),
            trits: t.to_vec(),
        })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorClass {
    LieAlgebra,
    LieSuperalgebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTable {
    shape: Shape,
    entries: Vec<Cyclotomic>,
}

impl FactorTable {
    pub fn from_fn(shape: Shape, f: impl Fn(&GroupElement, &GroupElement) -> Cyclotomic) -> Self {
        let els = shape.elements();
        let mut entries = Vec::with_capacity(els.len() * els.len());
        for a in &els {
            for b in &els {
                entries.push(f(a, b));
            }
        }
        FactorTable { shape, entries }
    }

    pub fn from_entries(shape: Shape, entries: Vec<Cyclotomic>) -> Result<Self> {
        let n = shape.order();
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} entries for a group of order {n}",
                entries.len()
            )));
        }
        Ok(FactorTable { shape, entries })
    }

    /// Table of the trivial group, the single entry 1.
    pub fn trivial() -> Self {
        FactorTable {
            shape: Shape::new(0, 0),
            entries: vec![Cyclotomic::one()],
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn get(&self, a: &GroupElement, b: &GroupElement) -> &Cyclotomic {
        self.at(a.index(), b.index())
    }

    pub fn at(&self, i: usize, k: usize) -> &Cyclotomic {
        &self.entries[i * self.order() + k]
    }

    /// Entry by labels, e.g. `eps("01", "10")`.
    pub fn eps(&self, a: &str, b: &str) -> Result<&Cyclotomic> {
        let a = GroupElement::parse(self.shape, a)?;
        let b = GroupElement::parse(self.shape, b)?;
        Ok(self.get(&a, &b))
    }

    pub fn set(&mut self, a: &GroupElement, b: &GroupElement, v: Cyclotomic) {
        let n = self.order();
        self.entries[a.index() * n + b.index()] = v;
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.entries
            .chunks(self.order())
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn color_class(&self) -> ColorClass {
        let n = self.order();
        let minus = Cyclotomic::from_int(-1);
        if (0..n).any(|i| *self.at(i, i) == minus) {
            ColorClass::LieSuperalgebra
        } else {
            ColorClass::LieAlgebra
        }
    }

    /// Product table on `(Γ1 x Γ2)`: bits of both, then trits of both.
    pub fn product(&self, other: &FactorTable) -> FactorTable {
        let s1 = self.shape;
        let s2 = other.shape;
        let shape = Shape::new(s1.p + s2.p, s1.q + s2.q);
        FactorTable::from_fn(shape, |a, b| {
            let (a1, a2) = split(a, s1);
            let (b1, b2) = split(b, s1);
            self.get(&a1, &b1) * other.get(&a2, &b2)
        })
    }

    /// Entry keys independent of construction order.
    fn entry_keys(&self) -> Vec<String> {
        self.entries.iter().map(entry_key).collect()
    }

    /// Exact string of the table in index order.
    pub fn key(&self) -> String {
        format!(
            "{}:{}|{}",
            self.shape.p,
            self.shape.q,
            self.entry_keys().join(",")
        )
    }

    /// The table pulled back along an automorphism given as an index map.
    pub fn permuted(&self, perm: &[usize]) -> FactorTable {
        let n = self.order();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                entries.push(self.at(perm[i], perm[k]).clone());
            }
        }
        FactorTable {
            shape: self.shape,
            entries,
        }
    }
}

fn split(a: &GroupElement, s1: Shape) -> (GroupElement, GroupElement) {
    (
        GroupElement {
            bits: a.bits[..s1.p].to_vec(),
            trits: a.trits[..s1.q].to_vec(),
        },
        GroupElement {
            bits: a.bits[s1.p..].to_vec(),
            trits: a.trits[s1.q..].to_vec(),
        },
    )
}

fn entry_key(c: &Cyclotomic) -> String {
    match c.as_root() {
        Some((k, e)) => format!("r{k}.{e}"),
        None => {
            let (o, cs) = c.canonical_key();
            let parts: Vec<String> = cs.iter().map(|x| x.to_string()).collect();
            format!("c{o}[{}]", parts.join(";"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub sectors: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `ε(α,β)ε(β,α) = 1`, both bilinearity laws, and `ε(α,α) = ±1`.
pub fn validate_table(t: &FactorTable) -> Result<ValidationReport> {
    validate_table_with(t, Exec::default())
}

pub fn validate_table_with(t: &FactorTable, exec: Exec) -> Result<ValidationReport> {
    if let Some(pos) = t.entries.iter().position(|e| e.is_zero()) {
        let n = t.order();
        let a = GroupElement::from_index(t.shape, pos / n);
        let b = GroupElement::from_index(t.shape, pos % n);
        return Err(Error::Invalid(format!(
            "zero commutation factor at ({a}, {b})"
        )));
    }
    let els = t.shape.elements();
    let n = els.len();
    let lab = |i: usize| els[i].label();
    let add: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|k| els[i].add(&els[k]).index()).collect())
        .collect();

    let mut violations = Vec::new();
    let one = Cyclotomic::one();
    let minus = Cyclotomic::from_int(-1);
    for a in 0..n {
        for b in 0..n {
            if !(t.at(a, b) * t.at(b, a)).is_one() {
                violations.push(Violation {
                    axiom: "skew".into(),
                    sectors: vec![lab(a), lab(b)],
                });
            }
        }
        let d = t.at(a, a);
        if *d != one && *d != minus {
            violations.push(Violation {
                axiom: "diagonal".into(),
                sectors: vec![lab(a)],
            });
        }
    }
    let per_a = exec.map_range(n, |a| {
        let mut out = Vec::new();
        for b in 0..n {
            for c in 0..n {
                if *t.at(a, add[b][c]) != t.at(a, b) * t.at(a, c) {
                    out.push(Violation {
                        axiom: "right_linear".into(),
                        sectors: vec![lab(a), lab(b), lab(c)],
                    });
                }
                if *t.at(add[a][b], c) != t.at(a, c) * t.at(b, c) {
                    out.push(Violation {
                        axiom: "left_linear".into(),
                        sectors: vec![lab(a), lab(b), lab(c)],
                    });
                }
            }
        }
        out
    });
    violations.extend(per_a.into_iter().flatten());
    Ok(ValidationReport { violations })
}

/// The Z2 extension: a new leading bit `x`, factor `δ^{xy} U(α,β)`.
pub fn iterate_z2(t: &FactorTable, delta: &Cyclotomic) -> Result<FactorTable> {
    let minus = Cyclotomic::from_int(-1);
    if !delta.is_one() && *delta != minus {
        return Err(Error::Invalid(format!(
            "delta must be +1 or -1, got {delta}"
        )));
    }
    let z2 = FactorTable::from_fn(Shape::new(1, 0), |a, b| {
        if a.bits[0] == 1 && b.bits[0] == 1 {
            delta.clone()
        } else {
            Cyclotomic::one()
        }
    });
    Ok(z2.product(t))
}

/// The Z3 extension: a new leading trit with factor 1 on it.
pub fn iterate_z3(t: &FactorTable) -> FactorTable {
    let z3 = FactorTable::from_fn(Shape::new(0, 1), |_, _| Cyclotomic::one());
    z3.product(t)
}

fn check_cube_root(j: &Cyclotomic) -> Result<()> {
    if !j.pow(3).is_one() {
        return Err(Error::Invalid(format!(
            "j = {j} is not a cube root of unity"
        )));
    }
    Ok(())
}

/// The Z3 x Z3 factors `ε(α,β) = j^{α1 β2 - α2 β1}`.
pub fn canonical_z3z3(j: &Cyclotomic) -> Result<FactorTable> {
    check_cube_root(j)?;
    let pw = [Cyclotomic::one(), j.clone(), j.pow(2)];
    Ok(FactorTable::from_fn(Shape::new(0, 2), |a, b| {
        let e = (a.trits[0] as i32 * b.trits[1] as i32 - a.trits[1] as i32 * b.trits[0] as i32)
            .rem_euclid(3);
        pw[e as usize].clone()
    }))
}

/// The Z2 x Z3 x Z3 factors `δ^{xy} j^{α1 β2 - α2 β1}`.
pub fn canonical_z2z3z3(j: &Cyclotomic, delta: &Cyclotomic) -> Result<FactorTable> {
    let inner = canonical_z3z3(j)?;
    iterate_z2(&inner, delta)
}

/// `ε(a,b) = (-1)^{a·b}` on `Z2^p`.
pub fn z2_dot_table(p: usize) -> FactorTable {
    FactorTable::from_fn(Shape::new(p, 0), |a, b| {
        let dot: u32 = a
            .bits
            .iter()
            .zip(&b.bits)
            .map(|(x, y)| (x * y) as u32)
            .sum();
        Cyclotomic::from_int(if dot.is_multiple_of(2) { 1 } else { -1 })
    })
}

fn generators(shape: Shape) -> Vec<GroupElement> {
    let mut out = Vec::new();
    for i in 0..shape.p {
        let mut e = GroupElement::identity(shape);
        e.bits[i] = 1;
        out.push(e);
    }
    for i in 0..shape.q {
        let mut e = GroupElement::identity(shape);
        e.trits[i] = 1;
        out.push(e);
    }
    out
}

// components of an element on the generators
fn coords(a: &GroupElement) -> Vec<u32> {
    a.bits.iter().chain(&a.trits).map(|&x| x as u32).collect()
}

/// All valid tables on `Z2^p x Z3^q` with root-of-unity entries of order at most
/// `max_order`.
pub fn search_tables(p: usize, q: usize, max_order: u32) -> Result<Vec<FactorTable>> {
    search_tables_with(p, q, max_order, DEFAULT_BUDGET, Exec::default())
}

pub fn search_tables_with(
    p: usize,
    q: usize,
    max_order: u32,
    budget: u128,
    exec: Exec,
) -> Result<Vec<FactorTable>> {
    let shape = Shape::new(p, q);
    if shape.order() > MAX_SEARCH_ORDER {
        return Err(Error::Invalid(format!(
            "group order {} exceeds {MAX_SEARCH_ORDER}",
            shape.order()
        )));
    }
    if max_order == 0 || max_order > crate::cyclotomic::MAX_ORDER {
        return Err(Error::Invalid(format!(
            "max_order {max_order} out of range"
        )));
    }
    let gens = generators(shape);
    let r = gens.len();
    let roots: Vec<Cyclotomic> = (1..=max_order)
        .flat_map(|k| {
            (0..k)
                .filter(move |e| num_integer::gcd(*e, k) == 1)
                .map(move |e| Cyclotomic::root_of_unity(k, e as i64))
        })
        .collect();

    // upper-triangular generator slots with their locally admissible values
    let mut slots: Vec<(usize, usize, Vec<Cyclotomic>)> = Vec::new();
    for i in 0..r {
        for k in i..r {
            let oi = gens[i].order() as i64;
            let ok = gens[k].order() as i64;
            let vals: Vec<Cyclotomic> = roots
                .iter()
                .filter(|x| {
                    x.pow(oi).is_one() && x.pow(ok).is_one() && (i != k || x.pow(2).is_one())
                })
                .cloned()
                .collect();
            slots.push((i, k, vals));
        }
    }
    let size: u128 = slots.iter().map(|s| s.2.len() as u128).product();
    if size > budget {
        return Err(Error::Budget { size, budget });
    }
    let els = shape.elements();
    let cs: Vec<Vec<u32>> = els.iter().map(coords).collect();

    let candidates = exec.map_range(size as usize, |mut idx| {
        let mut g = vec![vec![Cyclotomic::one(); r]; r];
        for (i, k, vals) in &slots {
            let v = &vals[idx % vals.len()];
            idx /= vals.len();
            g[*i][*k] = v.clone();
            if i != k {
                g[*k][*i] = v.inv().expect("root of unity");
            }
        }
        let n = els.len();
        let mut entries = Vec::with_capacity(n * n);
        for ca in &cs {
            for cb in &cs {
                let mut v = Cyclotomic::one();
                for (i, &x) in ca.iter().enumerate() {
                    for (k, &y) in cb.iter().enumerate() {
                        if x * y != 0 {
                            v = &v * &g[i][k].pow((x * y) as i64);
                        }
                    }
                }
                entries.push(v);
            }
        }
        let t = FactorTable { shape, entries };
        match validate_table_with(&t, Exec::Sequential) {
            Ok(rep) if rep.is_valid() => Some(t),
            _ => None,
        }
    });
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in candidates.into_iter().flatten() {
        if seen.insert(t.key()) {
            out.push(t);
        }
    }
    Ok(out)
}

fn gl_matrices(n: usize, modulus: u32) -> Vec<Vec<Vec<u32>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let cells = n * n;
    let total = (modulus as usize).pow(cells as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut m = vec![vec![0u32; n]; n];
            for row in m.iter_mut() {
                for v in row.iter_mut() {
                    *v = (code % modulus as usize) as u32;
                    code /= modulus as usize;
                }
            }
            (det_mod(&m, modulus) != 0).then_some(m)
        })
        .collect()
}

fn det_mod(m: &[Vec<u32>], p: u32) -> u32 {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    let p = p as i64;
    let mut det = 1i64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] % p != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det = (det * a[c][c]).rem_euclid(p);
        let inv = (1..p).find(|x| (x * a[c][c]).rem_euclid(p) == 1).unwrap();
        for r in c + 1..n {
            let f = (a[r][c] * inv).rem_euclid(p);
            for k in c..n {
                a[r][k] = (a[r][k] - f * a[c][k]).rem_euclid(p);
            }
        }
    }
    det.rem_euclid(p) as u32
}

/// Every automorphism of `Z2^p x Z3^q` as a permutation of element indices.
pub fn automorphisms(shape: Shape) -> Vec<Vec<usize>> {
    let els = shape.elements();
    let mut out = Vec::new();
    for a in gl_matrices(shape.p, 2) {
        for b in gl_matrices(shape.q, 3) {
            let perm = els
                .iter()
                .map(|e| {
                    let bits: Vec<u8> = (0..shape.p)
                        .map(|i| {
                            ((0..shape.p)
                                .map(|k| a[i][k] * e.bits[k] as u32)
                                .sum::<u32>()
                                % 2) as u8
                        })
                        .collect();
                    let trits: Vec<u8> = (0..shape.q)
                        .map(|i| {
                            ((0..shape.q)
                                .map(|k| b[i][k] * e.trits[k] as u32)
                                .sum::<u32>()
                                % 3) as u8
                        })
                        .collect();
                    GroupElement { bits, trits }.index()
                })
                .collect();
            out.push(perm);
        }
    }
    out
}

/// Lexicographically smallest key over all relabelings by automorphisms.
pub fn canonical_key(t: &FactorTable, autos: &[Vec<usize>]) -> String {
    let keys = t.entry_keys();
    let n = t.order();
    autos
        .iter()
        .map(|perm| {
            let mut parts = Vec::with_capacity(n * n);
            for i in 0..n {
                for k in 0..n {
                    parts.push(keys[perm[i] * n + perm[k]].as_str());
                }
            }
            parts.join(",")
        })
        .min()
        .unwrap_or_default()
}

/// Groups tables up to grading-group automorphism. Classes are listed by first
/// occurrence and hold indices into `tables`.
pub fn classify_inequivalent(tables: &[FactorTable]) -> Result<Vec<Vec<usize>>> {
    classify_inequivalent_with(tables, Exec::default())
}

pub fn classify_inequivalent_with(tables: &[FactorTable], exec: Exec) -> Result<Vec<Vec<usize>>> {
    let Some(first) = tables.first() else {
        return Ok(Vec::new());
    };
    if tables.iter().any(|t| t.shape != first.shape) {
        return Err(Error::Invalid("tables live on different groups".into()));
    }
    let autos = automorphisms(first.shape);
    let keys = exec.map(tables, |t| canonical_key(t, &autos));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut by_key: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        match by_key.get(k.as_str()) {
            Some(&c) => classes[c].push(i),
            None => {
                by_key.insert(k, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    Ok(classes)
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    p: usize,
    q: usize,
    sectors: Vec<String>,
    entries: Vec<Vec<Cyclotomic>>,
}

impl Serialize for FactorTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson {
            p: self.shape.p,
            q: self.shape.q,
            sectors: self.shape.elements().iter().map(|e| e.label()).collect(),
            entries: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactorTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TableJson::deserialize(d)?;
        let shape = Shape::new(raw.p, raw.q);
        let n = shape.order();
        if raw.sectors.len() != n || raw.entries.len() != n {
            return Err(D::Error::custom("table size does not match group"));
        }
        let idx: Vec<usize> = raw
            .sectors
            .iter()
            .map(|l| GroupElement::parse(shape, l).map(|g| g.index()))
            .collect::<Result<_>>()
            .map_err(D::Error::custom)?;
        let mut entries = vec![Cyclotomic::one(); n * n];
        for (r, row) in raw.entries.into_iter().enumerate() {
            if row.len() != n {
                return Err(D::Error::custom("ragged table"));
            }
            for (c, v) in row.into_iter().enumerate() {
                entries[idx[r] * n + idx[c]] = v;
            }
        }
        Ok(FactorTable { shape, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        let s = Shape::new(2, 2);
        for i in 0..s.order() {
            assert_eq!(GroupElement::from_index(s, i).index(), i);
        }
        assert_eq!(
            GroupElement::parse(Shape::new(1, 2), "1_10")
                .unwrap()
                .index(),
            12
        );
    }

    #[test]
    fn gl_sizes() {
        assert_eq!(gl_matrices(2, 3).len(), 48);
        assert_eq!(gl_matrices(3, 2).len(), 168);
        assert_eq!(gl_matrices(1, 2).len(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let t = canonical_z3z3(&Cyclotomic::j1()).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: FactorTable = serde_json::from_str(&s).unwrap();
        assert_eq!(t, back);
    }
}
