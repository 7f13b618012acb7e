//! Operators on a tensor product of small spaces, kept in factored form.
//!
//! A [`TensorOp`] is a finite sum of pure tensors `c · M_1 ⊗ … ⊗ M_k`. Products
//! stay factored, and sums are simplified by pulling the first nonzero entry
//! of every factor into the coefficient, merging equal terms, and folding
//! terms that differ in a single slot. When that does not decide whether an
//! operator vanishes, it is evaluated exactly on basis product states.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::gmat::Mat;

/// Square sparse matrix stored by columns, rows ascending, no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    n: usize,
    cols: Vec<Vec<(usize, Cyclotomic)>>,
}

impl SparseMat {
    pub fn from_dense(m: &Mat) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension("tensor factors must be square".into()));
        }
        let n = m.rows();
        let cols = (0..n)
            .map(|c| {
                (0..n)
                    .filter(|&r| !m.get(r, c).is_zero())
                    .map(|r| (r, m.get(r, c).clone()))
                    .collect()
            })
            .collect();
        Ok(SparseMat { n, cols })
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        SparseMat {
            n,
            cols: (0..n).map(|i| vec![(i, Cyclotomic::one())]).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn col(&self, c: usize) -> &[(usize, Cyclotomic)] {
        &self.cols[c]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(i, c)| c.len() == 1 && c[0].0 == i && c[0].1.is_one())
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        let cols = other
            .cols
            .iter()
            .map(|ocol| {
                let mut acc: Vec<Option<Cyclotomic>> = vec![None; self.n];
                for (k, b) in ocol {
                    for (r, a) in &self.cols[*k] {
                        let p = a * b;
                        match &mut acc[*r] {
                            Some(x) => *x += &p,
                            slot => *slot = Some(p),
                        }
                    }
                }
                acc.into_iter()
                    .enumerate()
                    .filter_map(|(r, v)| v.filter(|x| !x.is_zero()).map(|x| (r, x)))
                    .collect()
            })
            .collect();
        SparseMat { n: self.n, cols }
    }

    /// `Σ c_i M_i` over matrices of equal dimension.
    pub fn combination(n: usize, parts: &[(Cyclotomic, Option<&SparseMat>)]) -> SparseMat {
        let mut dense: Vec<Vec<Option<Cyclotomic>>> = vec![vec![None; n]; n];
        let mut push = |r: usize, c: usize, v: Cyclotomic| match &mut dense[c][r] {
            Some(x) => *x += &v,
            slot => *slot = Some(v),
        };
        for (coef, m) in parts {
            match m {
                None => (0..n).for_each(|i| push(i, i, coef.clone())),
                Some(m) => {
                    for (c, col) in m.cols.iter().enumerate() {
                        for (r, v) in col {
                            push(*r, c, coef * v);
                        }
                    }
                }
            }
        }
        let cols = dense
            .into_iter()
            .map(|col| {
                col.into_iter()
                    .enumerate()
                    .filter_map(|(r, v)| v.filter(|x| !x.is_zero()).map(|x| (r, x)))
                    .collect()
            })
            .collect();
        SparseMat { n, cols }
    }

    pub fn scale(&self, s: &Cyclotomic) -> SparseMat {
        SparseMat {
            n: self.n,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, v * s)).collect())
                .collect(),
        }
    }

    fn first_nonzero(&self) -> Option<&Cyclotomic> {
        self.cols.iter().find_map(|c| c.first().map(|(_, v)| v))
    }
}

#[derive(Clone, Debug)]
pub enum Factor {
    Id,
    M(Arc<SparseMat>),
}

impl Factor {
    pub fn mat(m: &Mat) -> Result<Factor> {
        Ok(Factor::M(Arc::new(SparseMat::from_dense(m)?)))
    }

    fn mul(&self, other: &Factor) -> Factor {
        match (self, other) {
            (Factor::Id, x) | (x, Factor::Id) => x.clone(),
            (Factor::M(a), Factor::M(b)) => Factor::M(Arc::new(a.mul(b))),
        }
    }

    fn is_id(&self) -> bool {
        matches!(self, Factor::Id)
    }
}

impl PartialEq for Factor {
    fn eq(&self, other: &Factor) -> bool {
        match (self, other) {
            (Factor::Id, Factor::Id) => true,
            (Factor::M(a), Factor::M(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Cyclotomic,
    pub factors: Vec<Factor>,
}

impl Term {
    // Moves the first nonzero entry of each factor into the coefficient.
    // Returns None for a vanishing term.
    fn normalized(mut self) -> Option<Term> {
        if self.coeff.is_zero() {
            return None;
        }
        for f in &mut self.factors {
            if let Factor::M(m) = f {
                let pivot = m.first_nonzero()?.clone();
                if !pivot.is_one() {
                    let scaled = m.scale(&pivot.inv().expect("nonzero pivot"));
                    self.coeff = &self.coeff * &pivot;
                    *m = Arc::new(scaled);
                }
                if m.is_identity() {
                    *f = Factor::Id;
                }
            }
        }
        Some(self)
    }
}

/// Slot layout of a tensor product. Oscillator slots are truncated at
/// `n_max` quanta; their protected states are those with total quanta
/// `≤ n_max − 2` over all oscillator slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub dims: Vec<usize>,
    pub oscillator: Vec<bool>,
}

impl Space {
    pub fn finite(dims: &[usize]) -> Space {
        Space {
            dims: dims.to_vec(),
            oscillator: vec![false; dims.len()],
        }
    }

    pub fn with_oscillators(finite: &[usize], count: usize, n_max: usize) -> Space {
        let mut dims = finite.to_vec();
        let mut osc = vec![false; finite.len()];
        dims.extend(std::iter::repeat_n(n_max + 1, count));
        osc.extend(std::iter::repeat_n(true, count));
        Space {
            dims,
            oscillator: osc,
        }
    }

    pub fn slots(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Quanta bound for protected states, `None` without oscillator slots.
    pub fn protected_quanta(&self) -> Option<usize> {
        self.dims
            .iter()
            .zip(&self.oscillator)
            .find(|(_, o)| **o)
            .map(|(d, _)| d.saturating_sub(3))
    }
}

/// Sparse vector over basis product states.
pub type State = HashMap<Vec<u16>, Cyclotomic>;

#[derive(Clone, Debug)]
pub struct TensorOp {
    slots: usize,
    terms: Vec<Term>,
}

impl TensorOp {
    pub fn zero(slots: usize) -> TensorOp {
        TensorOp {
            slots,
            terms: Vec::new(),
        }
    }

    pub fn identity(slots: usize) -> TensorOp {
        TensorOp {
            slots,
            terms: vec![Term {
                coeff: Cyclotomic::one(),
                factors: vec![Factor::Id; slots],
            }],
        }
    }

    /// One pure tensor; slots not listed are the identity.
    pub fn pure(space: &Space, coeff: Cyclotomic, parts: &[(usize, &Mat)]) -> Result<TensorOp> {
        let mut factors = vec![Factor::Id; space.slots()];
        for (slot, m) in parts {
            if *slot >= space.slots() || m.rows() != space.dims[*slot] {
                return Err(Error::Dimension(format!(
                    "factor for slot {slot} does not fit"
                )));
            }
            factors[*slot] = factors[*slot].mul(&Factor::mat(m)?);
        }
        Ok(TensorOp {
            slots: space.slots(),
            terms: Term { coeff, factors }.normalized().into_iter().collect(),
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    /// True when simplification removed every term.
    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &TensorOp) -> TensorOp {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let t = Term {
                    coeff: &a.coeff * &b.coeff,
                    factors: a
                        .factors
                        .iter()
                        .zip(&b.factors)
                        .map(|(x, y)| x.mul(y))
                        .collect(),
                };
                terms.extend(t.normalized());
            }
        }
        TensorOp {
            slots: self.slots,
            terms,
        }
        .simplified()
    }

    pub fn add(&self, other: &TensorOp) -> TensorOp {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TensorOp {
            slots: self.slots,
            terms,
        }
        .simplified()
    }

    pub fn scale(&self, s: &Cyclotomic) -> TensorOp {
        if s.is_zero() {
            return TensorOp::zero(self.slots);
        }
        TensorOp {
            slots: self.slots,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * s,
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &TensorOp) -> TensorOp {
        self.add(&other.scale(&Cyclotomic::from_int(-1)))
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, s: &Cyclotomic, other: &TensorOp) -> TensorOp {
        self.add(&other.scale(s))
    }

    fn simplified(self) -> TensorOp {
        let slots = self.slots;
        let mut terms = group_equal(self.terms);
        loop {
            let mut merged = false;
            for k in 0..slots {
                let (next, changed) = fold_slot(terms, k);
                terms = next;
                merged |= changed;
            }
            if !merged {
                break;
            }
            terms = group_equal(terms);
        }
        TensorOp { slots, terms }
    }

    /// Applies the operator to a sparse state.
    pub fn apply(&self, state: &State) -> State {
        let mut out: State = HashMap::new();
        for (basis, amp) in state {
            for t in &self.terms {
                let mut partial: Vec<(Vec<u16>, Cyclotomic)> =
                    vec![(basis.clone(), &t.coeff * amp)];
                for (k, f) in t.factors.iter().enumerate() {
                    if let Factor::M(m) = f {
                        let mut next = Vec::new();
                        for (b, a) in &partial {
                            for (r, v) in m.col(b[k] as usize) {
                                let mut nb = b.clone();
                                nb[k] = *r as u16;
                                next.push((nb, a * v));
                            }
                        }
                        partial = next;
                        if partial.is_empty() {
                            break;
                        }
                    }
                }
                for (b, a) in partial {
                    *out.entry(b).or_default() += &a;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Exact zero test; on oscillator spaces only protected basis states are probed.
    pub fn is_zero_on(&self, space: &Space) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let active: Vec<usize> = (0..self.slots)
            .filter(|&k| self.terms.iter().any(|t| !t.factors[k].is_id()))
            .collect();
        let bound = space.protected_quanta();
        let mut idx = vec![0u16; self.slots];
        loop {
            let quanta: usize = active
                .iter()
                .filter(|&&k| space.oscillator[k])
                .map(|&k| idx[k] as usize)
                .sum();
            if bound.is_none_or(|b| quanta <= b) {
                let state: State = HashMap::from([(idx.clone(), Cyclotomic::one())]);
                if !self.apply(&state).is_empty() {
                    return false;
                }
            }
            // odometer over the active slots, skipping unprotected states whole
            let mut pos = active.len();
            loop {
                if pos == 0 {
                    return true;
                }
                pos -= 1;
                let k = active[pos];
                idx[k] += 1;
                let over = space.oscillator[k]
                    && bound.is_some_and(|b| {
                        active
                            .iter()
                            .filter(|&&s| space.oscillator[s])
                            .map(|&s| idx[s] as usize)
                            .sum::<usize>()
                            > b
                    });
                if (idx[k] as usize) < space.dims[k] && !over {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Dense matrix of the full operator (small spaces only).
    pub fn to_dense(&self, space: &Space) -> Mat {
        let n = space.total_dim();
        let mut m = Mat::zeros(n, n);
        for col in 0..n {
            let b = unflatten(col, &space.dims);
            let out = self.apply(&HashMap::from([(b, Cyclotomic::one())]));
            for (rb, v) in out {
                m.set(flatten(&rb, &space.dims), col, v);
            }
        }
        m
    }
}

pub fn flatten(b: &[u16], dims: &[usize]) -> usize {
    b.iter()
        .zip(dims)
        .fold(0, |acc, (x, d)| acc * d + *x as usize)
}

pub fn unflatten(mut i: usize, dims: &[usize]) -> Vec<u16> {
    let mut b = vec![0u16; dims.len()];
    for k in (0..dims.len()).rev() {
        b[k] = (i % dims[k]) as u16;
        i /= dims[k];
    }
    b
}

fn group_equal(terms: Vec<Term>) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        if let Some(e) = out.iter_mut().find(|e| e.factors == t.factors) {
            e.coeff += &t.coeff;
        } else {
            out.push(t);
        }
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

// Folds terms agreeing outside slot k into one term.
fn fold_slot(terms: Vec<Term>, k: usize) -> (Vec<Term>, bool) {
    let mut groups: Vec<Vec<Term>> = Vec::new();
    for t in terms {
        let same = |e: &Vec<Term>| {
            e[0].factors
                .iter()
                .zip(&t.factors)
                .enumerate()
                .all(|(i, (a, b))| i == k || a == b)
        };
        if let Some(g) = groups.iter_mut().find(|g| same(g)) {
            g.push(t);
        } else {
            groups.push(vec![t]);
        }
    }
    let mut changed = false;
    let mut out = Vec::new();
    for g in groups {
        if g.len() == 1 {
            out.extend(g);
            continue;
        }
        changed = true;
        let n = g
            .iter()
            .find_map(|t| match &t.factors[k] {
                Factor::M(m) => Some(m.dim()),
                Factor::Id => None,
            })
            .expect("distinct terms differ in a matrix slot");
        let parts: Vec<(Cyclotomic, Option<&SparseMat>)> = g
            .iter()
            .map(|t| {
                let m = match &t.factors[k] {
                    Factor::M(m) => Some(m.as_ref()),
                    Factor::Id => None,
                };
                (t.coeff.clone(), m)
            })
            .collect();
        let combined = SparseMat::combination(n, &parts);
        let mut factors = g[0].factors.clone();
        factors[k] = Factor::M(Arc::new(combined));
        out.extend(
            Term {
                coeff: Cyclotomic::one(),
                factors,
            }
            .normalized(),
        );
    }
    (out, changed)
}

/// Truncated oscillator lowering operator with `a|n) = n|n−1)`.
pub fn lowering(n_max: usize) -> Mat {
    let mut m = Mat::zeros(n_max + 1, n_max + 1);
    for n in 1..=n_max {
        m.set(n - 1, n, Cyclotomic::from_int(n as i64));
    }
    m
}

/// Truncated oscillator raising operator with `a†|n) = |n+1)`.
pub fn raising(n_max: usize) -> Mat {
    let mut m = Mat::zeros(n_max + 1, n_max + 1);
    for n in 0..n_max {
        m.set(n + 1, n, Cyclotomic::one());
    }
    m
}
