//! The `(j, z)` Pascal triangle of `(A₁†+A₂†)^n`, normal ordering of words in
//! generators with scalar commutation data, symmetrized powers and their
//! truncation, the `w(a,b,c)` factor, and braid/permutation actions on words.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Element `a + b·j + c·j²` of `Z[j]/(j³−1)`; `z = 1 + j + j²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZJ(pub [i64; 3]);

impl ZJ {
    pub const ZERO: ZJ = ZJ([0, 0, 0]);
    pub const ONE: ZJ = ZJ([1, 0, 0]);
    pub const J: ZJ = ZJ([0, 1, 0]);
    pub const Z: ZJ = ZJ([1, 1, 1]);

    pub fn int(n: i64) -> ZJ {
        ZJ([n, 0, 0])
    }

    /// `j^e`.
    pub fn j_pow(e: i64) -> ZJ {
        let mut c = [0; 3];
        c[e.rem_euclid(3) as usize] = 1;
        ZJ(c)
    }

    /// Coefficients `(a, b, c)` of `a + b·j + c·z`.
    pub fn canonical(self) -> (i64, i64, i64) {
        let [a, b, c] = self.0;
        (a - c, b - c, c)
    }

    pub fn specialize(self, j: &Cyclotomic) -> Cyclotomic {
        let [a, b, c] = self.0;
        Cyclotomic::from_int(a)
            + &(j * &Cyclotomic::from_int(b))
            + &(&j.pow(2) * &Cyclotomic::from_int(c))
    }
}

impl std::ops::Add for ZJ {
    type Output = ZJ;
    fn add(self, o: ZJ) -> ZJ {
        ZJ([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl std::ops::Sub for ZJ {
    type Output = ZJ;
    fn sub(self, o: ZJ) -> ZJ {
        ZJ([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl std::ops::Mul for ZJ {
    type Output = ZJ;
    fn mul(self, o: ZJ) -> ZJ {
        let mut c = [0i64; 3];
        for i in 0..3 {
            for k in 0..3 {
                c[(i + k) % 3] = c[(i + k) % 3]
                    .checked_add(self.0[i].checked_mul(o.0[k]).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
        ZJ(c)
    }
}

impl std::ops::Mul<i64> for ZJ {
    type Output = ZJ;
    fn mul(self, k: i64) -> ZJ {
        ZJ(self.0.map(|x| x * k))
    }
}

impl std::ops::Add<i64> for ZJ {
    type Output = ZJ;
    fn add(self, k: i64) -> ZJ {
        self + ZJ::int(k)
    }
}

impl std::ops::Sub<i64> for ZJ {
    type Output = ZJ;
    fn sub(self, k: i64) -> ZJ {
        self - ZJ::int(k)
    }
}

impl fmt::Display for ZJ {
    /// Canonical `c·z + b·j + a`, e.g. `z-j`, `3z+1`, `2z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.canonical();
        let mut out = String::new();
        for (coef, sym) in [(c, "z"), (b, "j"), (a, "")] {
            if coef == 0 {
                continue;
            }
            let sign = if coef < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = coef.abs();
            let body = match (mag, sym) {
                (1, "") => "1".to_string(),
                (1, s) => s.to_string(),
                (m, s) => format!("{m}{s}"),
            };
            out.push_str(sign);
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Serialize for ZJ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleRow {
    pub n: usize,
    pub coeffs: Vec<ZJ>,
}

/// Row `n` from `c_{n+1;k} = c_{n;k} + j^{2(n−k+1)} c_{n;k−1}`, `c_{0;0} = 1`.
pub fn triangle_row(n: usize) -> TriangleRow {
    let mut row = vec![ZJ::ONE];
    for m in 0..n {
        let mut next = vec![ZJ::ZERO; m + 2];
        for (k, slot) in next.iter_mut().enumerate() {
            let keep = if k <= m { row[k] } else { ZJ::ZERO };
            let shifted = if k >= 1 {
                ZJ::j_pow(2 * (m as i64 - k as i64 + 1)) * row[k - 1]
            } else {
                ZJ::ZERO
            };
            *slot = keep + shifted;
        }
        row = next;
    }
    TriangleRow { n, coeffs: row }
}

/// Numeric row at `j` (with `z = 1 + j + j²`).
pub fn specialize_row(row: &TriangleRow, j: &Cyclotomic) -> Result<Vec<Cyclotomic>> {
    if !j.pow(3).is_one() {
        return Err(Error::Invalid(format!(
            "j = {j} is not a cube root of unity"
        )));
    }
    Ok(row.coeffs.iter().map(|c| c.specialize(j)).collect())
}

/// `w(a,b,c) = 1 + a⁻¹ + b⁻¹ + c a⁻¹ + c b⁻¹ + c a⁻¹ b⁻¹`.
pub fn w_factor(a: &Cyclotomic, b: &Cyclotomic, c: &Cyclotomic) -> Result<Cyclotomic> {
    let ai = a.inv()?;
    let bi = b.inv()?;
    if c.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let cai = c * &ai;
    Ok(Cyclotomic::one() + &ai + &bi + &cai + &(c * &bi) + &(&cai * &bi))
}

/// Normal-ordered polynomial: exponent vectors (ascending site order) → scalar.
pub type WordPoly = BTreeMap<Vec<u32>, Cyclotomic>;

/// Generators `D_1 … D_N` with `D_J D_K = a_{JK} D_K D_J`.
#[derive(Clone, Debug)]
pub struct WordSystem {
    a: Vec<Vec<Cyclotomic>>,
    pub nilpotent: bool,
}

/// A normal-ordered word with its scalar; `exps = None` is the zero word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentWord {
    pub scalar: Cyclotomic,
    pub exps: Option<Vec<u32>>,
}

impl NilpotentWord {
    pub fn letters(&self) -> Vec<usize> {
        self.exps.as_ref().map_or_else(Vec::new, |e| {
            e.iter()
                .enumerate()
                .flat_map(|(k, &n)| std::iter::repeat_n(k, n as usize))
                .collect()
        })
    }
}

impl WordSystem {
    /// Full data `a[J][K]`; requires `a[K][J] = a[J][K]⁻¹` and nonzero entries.
    pub fn new(a: Vec<Vec<Cyclotomic>>, nilpotent: bool) -> Result<Self> {
        let n = a.len();
        for (jj, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension("commutation data must be square".into()));
            }
            for k in 0..n {
                if jj == k {
                    continue;
                }
                if row[k].is_zero() || !(&row[k] * &a[k][jj]).is_one() {
                    return Err(Error::Inconsistent(format!(
                        "a[{jj}][{k}] a[{k}][{jj}] != 1"
                    )));
                }
            }
        }
        Ok(WordSystem { a, nilpotent })
    }

    /// `a_{JK} = q` for every `J < K`.
    pub fn uniform(sites: usize, q: &Cyclotomic, nilpotent: bool) -> Result<Self> {
        let qi = q.inv()?;
        let a = (0..sites)
            .map(|jj| {
                (0..sites)
                    .map(|k| match jj.cmp(&k) {
                        std::cmp::Ordering::Less => q.clone(),
                        std::cmp::Ordering::Greater => qi.clone(),
                        std::cmp::Ordering::Equal => Cyclotomic::one(),
                    })
                    .collect()
            })
            .collect();
        Self::new(a, nilpotent)
    }

    /// Three generators with `D₁D₂ = a D₂D₁`, `D₂D₃ = b D₃D₂`, `D₃D₁ = c D₁D₃`.
    pub fn three(a: &Cyclotomic, b: &Cyclotomic, c: &Cyclotomic, nilpotent: bool) -> Result<Self> {
        let one = Cyclotomic::one();
        let m = vec![
            vec![one.clone(), a.clone(), c.inv()?],
            vec![a.inv()?, one.clone(), b.clone()],
            vec![c.clone(), b.inv()?, one],
        ];
        Self::new(m, nilpotent)
    }

    pub fn sites(&self) -> usize {
        self.a.len()
    }

    /// `a_{JK}`.
    pub fn factor(&self, jj: usize, k: usize) -> &Cyclotomic {
        &self.a[jj][k]
    }

    /// `m · D_J` for a normal-ordered monomial `m`.
    fn times_gen(&self, exps: &[u32], jj: usize) -> Option<(Cyclotomic, Vec<u32>)> {
        if self.nilpotent && exps[jj] >= 1 {
            return None;
        }
        // D_K^e D_J = a_{KJ}^e D_J D_K^e for K > J
        let mut scalar = Cyclotomic::one();
        for (k, &e) in exps.iter().enumerate().skip(jj + 1) {
            if e > 0 {
                scalar = &scalar * &self.a[k][jj].pow(e as i64);
            }
        }
        let mut out = exps.to_vec();
        out[jj] += 1;
        Some((scalar, out))
    }

    pub fn mul_gen(&self, p: &WordPoly, jj: usize) -> WordPoly {
        let mut out = WordPoly::new();
        for (e, c) in p {
            if let Some((s, e2)) = self.times_gen(e, jj) {
                accumulate(&mut out, e2, c * &s);
            }
        }
        out
    }

    pub fn unit(&self) -> WordPoly {
        WordPoly::from([(vec![0; self.sites()], Cyclotomic::one())])
    }

    /// Normal form of a word by successive right multiplication.
    pub fn normal_form(&self, word: &[usize]) -> NilpotentWord {
        let mut exps = vec![0; self.sites()];
        let mut scalar = Cyclotomic::one();
        for &jj in word {
            match self.times_gen(&exps, jj) {
                Some((s, e)) => {
                    scalar = &scalar * &s;
                    exps = e;
                }
                None => {
                    return NilpotentWord {
                        scalar: Cyclotomic::zero(),
                        exps: None,
                    }
                }
            }
        }
        NilpotentWord {
            scalar,
            exps: Some(exps),
        }
    }

    /// Normal form by adjacent transpositions; `pick` chooses which
    /// out-of-order adjacent pair to swap among the candidates.
    pub fn normal_form_by_swaps(
        &self,
        word: &[usize],
        mut pick: impl FnMut(usize) -> usize,
    ) -> NilpotentWord {
        let mut w = word.to_vec();
        let mut scalar = Cyclotomic::one();
        loop {
            if self.nilpotent && w.windows(2).any(|p| p[0] == p[1]) {
                return NilpotentWord {
                    scalar: Cyclotomic::zero(),
                    exps: None,
                };
            }
            let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
                .filter(|&i| w[i] > w[i + 1])
                .collect();
            if inversions.is_empty() {
                break;
            }
            let i = inversions[pick(inversions.len()) % inversions.len()];
            // D_J D_K = a_{JK} D_K D_J
            scalar = &scalar * &self.a[w[i]][w[i + 1]];
            w.swap(i, i + 1);
        }
        let mut exps = vec![0; self.sites()];
        for &k in &w {
            exps[k] += 1;
        }
        NilpotentWord {
            scalar,
            exps: Some(exps),
        }
    }

    /// Normal form of `(Σ_J D_J)^n`.
    pub fn symmetrized_power(&self, n: usize) -> WordPoly {
        let mut p = self.unit();
        for _ in 0..n {
            let mut next = WordPoly::new();
            for jj in 0..self.sites() {
                for (e, c) in self.mul_gen(&p, jj) {
                    accumulate(&mut next, e, c);
                }
            }
            p = next;
        }
        p
    }

    /// Sum of normal forms of every word of length `n` with letters permuted by `sigma`.
    pub fn permuted_power(&self, sigma: &[usize], n: usize) -> WordPoly {
        let k = self.sites();
        let mut out = WordPoly::new();
        let total = k.pow(n as u32);
        for idx in 0..total {
            let mut x = idx;
            let word: Vec<usize> = (0..n)
                .map(|_| {
                    let l = x % k;
                    x /= k;
                    sigma[l]
                })
                .collect();
            let nf = self.normal_form(&word);
            if let Some(e) = nf.exps {
                accumulate(&mut out, e, nf.scalar);
            }
        }
        out
    }
}

fn accumulate(p: &mut WordPoly, e: Vec<u32>, c: Cyclotomic) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(e.clone()).or_default();
    *slot += &c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

/// Smallest `n ≤ max_n` with `(Σ D_J)^n = 0`, if any.
pub fn truncation_point(sys: &WordSystem, max_n: usize) -> Option<usize> {
    let mut p = sys.unit();
    for n in 0..=max_n {
        if p.is_empty() {
            return Some(n);
        }
        let mut next = WordPoly::new();
        for jj in 0..sys.sites() {
            for (e, c) in sys.mul_gen(&p, jj) {
                accumulate(&mut next, e, c);
            }
        }
        p = next;
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationTable {
    pub k: u32,
    pub sites: usize,
    /// `zero[n]` for `n = 0..=max_n`.
    pub zero: Vec<bool>,
}

/// Zero pattern of `(Σ D_J)^n` for nilpotent generators with `a_{JK} = e^{2πi/k}`.
pub fn truncation_table(k: u32, sites: usize, max_n: usize) -> Result<TruncationTable> {
    let sys = WordSystem::uniform(sites, &Cyclotomic::root_of_unity(k, 1), true)?;
    let mut zero = Vec::new();
    let mut p = sys.unit();
    for _ in 0..=max_n {
        zero.push(p.is_empty());
        let mut next = WordPoly::new();
        for jj in 0..sites {
            for (e, c) in sys.mul_gen(&p, jj) {
                accumulate(&mut next, e, c);
            }
        }
        p = next;
    }
    Ok(TruncationTable { k, sites, zero })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidGen {
    B12,
    B23,
}

impl BraidGen {
    fn swap(self) -> (usize, usize) {
        match self {
            BraidGen::B12 => (0, 1),
            BraidGen::B23 => (1, 2),
        }
    }
}

/// Exchanges the site labels in the word, then normal-orders.
pub fn braid_action(sys: &WordSystem, g: BraidGen, word: &NilpotentWord) -> NilpotentWord {
    let (p, q) = g.swap();
    let letters: Vec<usize> = word
        .letters()
        .into_iter()
        .map(|l| {
            if l == p {
                q
            } else if l == q {
                p
            } else {
                l
            }
        })
        .collect();
    if word.exps.is_none() {
        return word.clone();
    }
    let nf = sys.normal_form(&letters);
    NilpotentWord {
        scalar: &nf.scalar * &word.scalar,
        exps: nf.exps,
    }
}

/// The eigenvalue when `word` is mapped to a multiple of itself.
pub fn braid_eigenvalue(sys: &WordSystem, g: BraidGen, word: &NilpotentWord) -> Option<Cyclotomic> {
    let out = braid_action(sys, g, word);
    (out.exps == word.exps && word.exps.is_some()).then(|| &out.scalar / &word.scalar)
}

pub fn braid_power(sys: &WordSystem, g: BraidGen, word: &NilpotentWord, k: usize) -> NilpotentWord {
    (0..k).fold(word.clone(), |w, _| braid_action(sys, g, &w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermGen {
    S12,
    S23,
}

impl PermGen {
    pub fn sigma(self, sites: usize) -> Vec<usize> {
        let mut s: Vec<usize> = (0..sites).collect();
        match self {
            PermGen::S12 => s.swap(0, 1),
            PermGen::S23 => s.swap(1, 2),
        }
        s
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PermutationReport {
    pub invariant: bool,
    pub involution: bool,
    pub braid_relation: bool,
}

/// Applies `S` letterwise to the expansion of `(Σ A_J†)^n` and compares with
/// the unpermuted normal form; also checks `S² = 1` and
/// `S₁₂S₂₃S₁₂ = S₂₃S₁₂S₂₃` on the generators.
pub fn permutation_action(sys: &WordSystem, g: PermGen, n: usize) -> PermutationReport {
    let k = sys.sites();
    let s = g.sigma(k);
    let id: Vec<usize> = (0..k).collect();
    let (s12, s23) = (PermGen::S12.sigma(k), PermGen::S23.sigma(k));
    PermutationReport {
        invariant: sys.permuted_power(&s, n) == sys.symmetrized_power(n),
        involution: compose(&s, &s) == id,
        braid_relation: compose(&compose(&s12, &s23), &s12) == compose(&compose(&s23, &s12), &s23),
    }
}
