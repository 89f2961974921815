//! Parabolic modules over the affine Hecke algebra and their canonical bases.
//!
//! For a weakly increasing index vector i in the fundamental domain of the
//! level-L right action on Z^t, the right module e_i H_t has basis <x| for x
//! in the orbit i . W, with <x| = e_i Tt_a for the minimal coset
//! representative a of x. In point coordinates the Tt_s action is local:
//! writing the point L-periodically (x_{k+t} = x_k + L), right multiplication
//! by Tt_{s_j} swaps the entries at positions j, j+1 and
//!
//!   x_j < x_{j+1}:  <x| Tt_s = <x.s|
//!   x_j > x_{j+1}:  <x| Tt_s = <x.s| + (v^-1 - v) <x|
//!   x_j = x_{j+1}:  <x| Tt_s = v^-1 <x|
//!
//! The bar involution fixes the length-zero point of each rotation sector,
//! and there is a unique bar-invariant basis c^-_x = <x| + sum P^-_{y,x} <y|
//! with coefficients in v^-1 Z[v^-1] (the parabolic Kazhdan-Lusztig
//! polynomials, signed). It is computed here by walking a reduced word of
//! the minimal representative and correcting with bar-invariant multiples of
//! lower basis elements, so the cost scales with the word length and the
//! support sizes rather than with Bruhat intervals.
//!
//! `stabilized_pkl` evaluates these polynomials at charged beta-sequence
//! points built from tuples of partitions, rechecking the answer at t+1 and
//! at widened charge gaps.

use crate::hecke;
use crate::laurent::LaurentPoly;
use crate::partitions::Partition;
use crate::weyl::{fundamental_rep, point_min_rep, AffinePermutation, CompositionIndex};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, thiserror::Error)]
pub enum PklError {
    #[error("point {0:?} is not in the orbit of {1:?}")]
    NotInOrbit(Vec<i64>, Vec<i64>),
    #[error("asymptotic range not reached; increase t or gaps ({0})")]
    Unstable(String),
    #[error("truncation {t} too small: component lengths reach {need}")]
    TruncationTooSmall { t: usize, need: usize },
    #[error("charges/residues must list {0} entries, got {1}")]
    BadCharges(usize, usize),
}

pub type PointVector = BTreeMap<Vec<i64>, LaurentPoly>;

struct Caches {
    lengths: HashMap<Vec<i64>, i64>,
    cminus: HashMap<Vec<i64>, Arc<PointVector>>,
    cplus: HashMap<Vec<i64>, Arc<PointVector>>,
}

/// The right module attached to an index vector, with its point calculus.
pub struct ParabolicModule {
    index: CompositionIndex,
    caches: Mutex<Caches>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Move {
    Ascent,
    Descent,
    Fixed,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Convention {
    Minus,
    Plus,
}

impl ParabolicModule {
    pub fn new(index: CompositionIndex) -> Self {
        ParabolicModule {
            index,
            caches: Mutex::new(Caches {
                lengths: HashMap::new(),
                cminus: HashMap::new(),
                cplus: HashMap::new(),
            }),
        }
    }

    pub fn index(&self) -> &CompositionIndex {
        &self.index
    }

    pub fn rank(&self) -> usize {
        self.index.rank()
    }

    pub fn level(&self) -> i64 {
        self.index.level()
    }

    pub fn in_orbit(&self, x: &[i64]) -> bool {
        x.len() == self.rank() && fundamental_rep(x, self.level()) == self.index.entries()
    }

    /// Basis vector <x|.
    pub fn bra(&self, x: &[i64]) -> Result<PointVector, PklError> {
        if !self.in_orbit(x) {
            return Err(PklError::NotInOrbit(x.to_vec(), self.index.entries().to_vec()));
        }
        let mut v = PointVector::new();
        v.insert(x.to_vec(), LaurentPoly::one());
        Ok(v)
    }

    fn apply_s(&self, x: &[i64], j: usize) -> Vec<i64> {
        let t = self.rank();
        let mut y = x.to_vec();
        if j == 0 {
            y[0] = x[t - 1] - self.level();
            y[t - 1] = x[0] + self.level();
        } else {
            y.swap(j - 1, j);
        }
        y
    }

    fn move_kind(&self, x: &[i64], j: usize) -> Move {
        let t = self.rank();
        let (a, b) = if j == 0 { (x[t - 1] - self.level(), x[0]) } else { (x[j - 1], x[j]) };
        match a.cmp(&b) {
            Ordering::Less => Move::Ascent,
            Ordering::Equal => Move::Fixed,
            Ordering::Greater => Move::Descent,
        }
    }

    /// Length of the minimal coset representative of x.
    pub fn point_len(&self, x: &[i64]) -> i64 {
        if let Some(&l) = self.caches.lock().unwrap().lengths.get(x) {
            return l;
        }
        let a = point_min_rep(&self.index, x).expect("point in orbit");
        let l = a.length();
        self.caches.lock().unwrap().lengths.insert(x.to_vec(), l);
        l
    }

    fn descent_of(&self, x: &[i64]) -> Option<usize> {
        (0..self.rank()).find(|&j| self.move_kind(x, j) == Move::Descent)
    }

    /// v . Tt_{s_j}
    pub fn act_ts(&self, vec: &PointVector, j: usize) -> PointVector {
        let mut out = PointVector::new();
        let lo = LaurentPoly::monomial(-1, 1);
        let diff = &lo - &LaurentPoly::monomial(1, 1); // v^-1 - v
        for (x, c) in vec {
            match self.move_kind(x, j) {
                Move::Ascent => add_to(&mut out, self.apply_s(x, j), c.clone()),
                Move::Descent => {
                    add_to(&mut out, self.apply_s(x, j), c.clone());
                    add_to(&mut out, x.clone(), c * &diff);
                }
                Move::Fixed => add_to(&mut out, x.clone(), c * &lo),
            }
        }
        out
    }

    /// v . Tt_{s_j}^{-1} = v . (Tt_{s_j} + v - v^-1)
    pub fn act_ts_inv(&self, vec: &PointVector, j: usize) -> PointVector {
        let mut out = PointVector::new();
        let hi = LaurentPoly::monomial(1, 1);
        let diff = &hi - &LaurentPoly::monomial(-1, 1); // v - v^-1
        for (x, c) in vec {
            match self.move_kind(x, j) {
                Move::Ascent => {
                    add_to(&mut out, self.apply_s(x, j), c.clone());
                    add_to(&mut out, x.clone(), c * &diff);
                }
                Move::Descent => add_to(&mut out, self.apply_s(x, j), c.clone()),
                Move::Fixed => add_to(&mut out, x.clone(), c * &hi),
            }
        }
        out
    }

    /// v . (Tt_{s_j} + v)
    pub fn act_bs(&self, vec: &PointVector, j: usize) -> PointVector {
        let mut out = PointVector::new();
        let hi = LaurentPoly::monomial(1, 1);
        let lo = LaurentPoly::monomial(-1, 1);
        let both = &hi + &lo;
        for (x, c) in vec {
            match self.move_kind(x, j) {
                Move::Ascent => {
                    add_to(&mut out, self.apply_s(x, j), c.clone());
                    add_to(&mut out, x.clone(), c * &hi);
                }
                Move::Descent => {
                    add_to(&mut out, self.apply_s(x, j), c.clone());
                    add_to(&mut out, x.clone(), c * &lo);
                }
                Move::Fixed => add_to(&mut out, x.clone(), c * &both),
            }
        }
        out
    }

    fn rotate_point(&self, x: &[i64], k: i64) -> Vec<i64> {
        let t = self.rank();
        let mut y = x.to_vec();
        if k >= 0 {
            for _ in 0..k {
                let first = y.remove(0);
                y.push(first + self.level());
            }
        } else {
            for _ in 0..(-k) {
                let last = y.pop().unwrap();
                y.insert(0, last - self.level());
            }
        }
        assert_eq!(y.len(), t);
        y
    }

    /// v . T_{pi^k}
    pub fn act_rotation(&self, vec: &PointVector, k: i64) -> PointVector {
        if k == 0 {
            return vec.clone();
        }
        vec.iter().map(|(x, c)| (self.rotate_point(x, k), c.clone())).collect()
    }

    /// v . X^mu, via the dominant splitting mu = a - b and
    /// X^mu = (Tt_{t_a})^{-1} Tt_{t_b}.
    pub fn act_x_monomial(&self, vec: &PointVector, mu: &[i64]) -> PointVector {
        assert_eq!(mu.len(), self.rank());
        let (a, b) = hecke::dominant_split(mu);
        let ta = AffinePermutation::translation(&a);
        let tb = AffinePermutation::translation(&b);
        let (ka, word_a) = ta.reduced_word();
        let mut cur = vec.clone();
        for &j in word_a.iter().rev() {
            cur = self.act_ts_inv(&cur, j);
        }
        cur = self.act_rotation(&cur, -ka);
        let (kb, word_b) = tb.reduced_word();
        cur = self.act_rotation(&cur, kb);
        for &j in &word_b {
            cur = self.act_ts(&cur, j);
        }
        cur
    }

    /// Expand into the T-basis of the Hecke algebra: <x| = v^{l(a)} sum over
    /// the stabilizer of T_{delta a}.
    pub fn to_hecke(&self, vec: &PointVector) -> hecke::HeckeElement {
        let mut out = hecke::HeckeElement::zero(self.rank());
        let stab = self.index.stabilizer_elements();
        for (x, c) in vec {
            let a = point_min_rep(&self.index, x).expect("point in orbit");
            let scaled = c.times_monomial(a.length(), 1);
            for d in &stab {
                out.insert_add(d.compose(&a), &scaled);
            }
        }
        out
    }

    /// Inverse of `to_hecke`; checks that the element really lies in the
    /// module (left invariance under the stabilizer).
    pub fn from_hecke(&self, h: &hecke::HeckeElement) -> Result<PointVector, PklError> {
        let mut out = PointVector::new();
        for (w, c) in h.terms() {
            let (delta, a) = self.index.min_coset_rep(w);
            if delta.is_identity() {
                let x = crate::weyl::act_right_level(self.index.entries(), &a, self.level());
                out.insert(x, c.div_signed_monomial(a.length(), 1));
            }
        }
        // verify
        let back = self.to_hecke(&out);
        if &back != h {
            return Err(PklError::NotInOrbit(vec![], self.index.entries().to_vec()));
        }
        Ok(out)
    }

    /// The module bar involution, through the Hecke realization. Intended for
    /// small vectors; the canonical basis solver never calls it.
    pub fn bar_module(&self, vec: &PointVector) -> Result<PointVector, PklError> {
        let stab_len = self.index.omega_length();
        // bar(e_i h) = e_i bar(h); bar(e_i) = v^{2 l(omega)} e_i, so
        // e_i bar(h) = v^{-2 l(omega)} bar(e_i h).
        let h = self.to_hecke(vec);
        let barred = hecke::bar(&h).scale_monomial(-2 * stab_len, 1);
        self.from_hecke(&barred)
    }

    /// c^-_x (Minus) or c^+_x (Plus), by the word walk with corrections.
    fn canonical(&self, x: &[i64], conv: Convention) -> Arc<PointVector> {
        // iterative worklist to keep the recursion depth flat
        let mut stack: Vec<Vec<i64>> = vec![x.to_vec()];
        while let Some(top) = stack.pop() {
            if self.cached(&top, conv).is_some() {
                continue;
            }
            if self.point_len(&top) == 0 {
                let mut v = PointVector::new();
                v.insert(top.clone(), LaurentPoly::one());
                self.store(&top, conv, v);
                continue;
            }
            let j = self.descent_of(&top).expect("positive length point has a descent");
            let child = self.apply_s(&top, j);
            let Some(c_child) = self.cached(&child, conv) else {
                stack.push(top);
                stack.push(child);
                continue;
            };
            let mut d = self.act_bs(&c_child, j);
            debug_assert!(d.get(&top).map(|c| c.is_one()).unwrap_or(false));
            // correct coefficients below the top, highest length first
            let mut missing = None;
            loop {
                let mut worst: Option<(i64, Vec<i64>, LaurentPoly)> = None;
                for (z, c) in &d {
                    if z == &top || c.is_zero() {
                        continue;
                    }
                    let g = match conv {
                        Convention::Minus => c.bar_invariant_completion_minus().0,
                        Convention::Plus => c.bar_invariant_completion_plus().0,
                    };
                    if g.is_zero() {
                        continue;
                    }
                    let l = self.point_len(z);
                    if worst.as_ref().map(|(wl, wz, _)| (l, z) > (*wl, wz)).unwrap_or(true) {
                        worst = Some((l, z.clone(), g));
                    }
                }
                let Some((_, z, g)) = worst else { break };
                let Some(cz) = self.cached(&z, conv) else {
                    missing = Some(z);
                    break;
                };
                for (y, c) in cz.iter() {
                    sub_to(&mut d, y.clone(), c * &g);
                }
            }
            if let Some(z) = missing {
                stack.push(top);
                stack.push(z);
                continue;
            }
            if cfg!(debug_assertions) {
                for (z, c) in &d {
                    if z == &top {
                        continue;
                    }
                    let ok = match conv {
                        Convention::Minus => c.in_v_negative(),
                        Convention::Plus => c.in_v_positive(),
                    };
                    debug_assert!(ok, "coefficient {c} at {z:?} breaks the triangular shape");
                }
            }
            self.store(&top, conv, d);
        }
        self.cached(x, conv).unwrap()
    }

    fn cached(&self, x: &[i64], conv: Convention) -> Option<Arc<PointVector>> {
        let caches = self.caches.lock().unwrap();
        match conv {
            Convention::Minus => caches.cminus.get(x).cloned(),
            Convention::Plus => caches.cplus.get(x).cloned(),
        }
    }

    fn store(&self, x: &[i64], conv: Convention, v: PointVector) {
        let mut caches = self.caches.lock().unwrap();
        let arc = Arc::new(v);
        match conv {
            Convention::Minus => caches.cminus.insert(x.to_vec(), arc),
            Convention::Plus => caches.cplus.insert(x.to_vec(), arc),
        };
    }

    /// The bar-invariant basis element with off-diagonal coefficients in
    /// v^-1 Z[v^-1].
    pub fn c_minus(&self, x: &[i64]) -> Result<Arc<PointVector>, PklError> {
        if !self.in_orbit(x) {
            return Err(PklError::NotInOrbit(x.to_vec(), self.index.entries().to_vec()));
        }
        Ok(self.canonical(x, Convention::Minus))
    }

    /// The bar-invariant basis element with off-diagonal coefficients in
    /// vZ[v]; for a trivial stabilizer it reproduces the ordinary canonical
    /// basis in point coordinates.
    pub fn c_plus(&self, x: &[i64]) -> Result<Arc<PointVector>, PklError> {
        if !self.in_orbit(x) {
            return Err(PklError::NotInOrbit(x.to_vec(), self.index.entries().to_vec()));
        }
        Ok(self.canonical(x, Convention::Plus))
    }
}

fn add_to(vec: &mut PointVector, key: Vec<i64>, val: LaurentPoly) {
    if val.is_zero() {
        return;
    }
    let entry = vec.entry(key.clone()).or_default();
    *entry += &val;
    if entry.is_zero() {
        vec.remove(&key);
    }
}

fn sub_to(vec: &mut PointVector, key: Vec<i64>, val: LaurentPoly) {
    if val.is_zero() {
        return;
    }
    let entry = vec.entry(key.clone()).or_default();
    *entry -= &val;
    if entry.is_zero() {
        vec.remove(&key);
    }
}

/// P^-_{y,x} for points of the orbit of i.
pub fn parabolic_kl(
    i: &CompositionIndex,
    y: &[i64],
    x: &[i64],
) -> Result<LaurentPoly, PklError> {
    let module = module_for(i);
    if !module.in_orbit(y) {
        return Err(PklError::NotInOrbit(y.to_vec(), i.entries().to_vec()));
    }
    let c = module.c_minus(x)?;
    Ok(c.get(y).cloned().unwrap_or_else(LaurentPoly::zero))
}

/// Shared registry so repeated queries reuse the per-module caches.
pub fn module_for(i: &CompositionIndex) -> Arc<ParabolicModule> {
    static MODULES: OnceLock<Mutex<HashMap<(Vec<i64>, i64), Arc<ParabolicModule>>>> =
        OnceLock::new();
    let registry = MODULES.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (i.entries().to_vec(), i.level());
    let mut map = registry.lock().unwrap();
    map.entry(key).or_insert_with(|| Arc::new(ParabolicModule::new(i.clone()))).clone()
}

// ---------------------------------------------------------------------------
// Stabilized polynomials at charged beta-sequence points.
// ---------------------------------------------------------------------------

/// Query for a stabilized polynomial between two tuples of partitions.
#[derive(Clone, Debug)]
pub struct StabilizedPklQuery {
    pub source: Vec<Partition>,
    pub target: Vec<Partition>,
    pub n: i64,
    /// residues mod n, one per component; ignored when `charges` is set
    pub residues: Option<Vec<i64>>,
    /// explicit charges; must satisfy the asymptotic separation themselves
    pub charges: Option<Vec<i64>>,
    /// truncation override
    pub t: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct StabilizedPklResult {
    pub value: LaurentPoly,
    pub charges: Vec<i64>,
    pub t: usize,
}

fn pad_components(q: &StabilizedPklQuery) -> (Vec<Partition>, Vec<Partition>, usize) {
    let l = q.source.len().max(q.target.len()).max(1);
    let mut s = q.source.clone();
    let mut t = q.target.clone();
    s.resize(l, Partition::empty());
    t.resize(l, Partition::empty());
    (s, t, l)
}

fn default_truncation(source: &[Partition], target: &[Partition]) -> usize {
    let max_len =
        source.iter().chain(target).map(|p| p.len()).max().unwrap_or(0);
    let boxes: i64 =
        source.iter().chain(target).map(|p| p.size()).sum();
    max_len + boxes as usize + 1
}

/// s_l = r_l lifted into [0, n); each next charge sits one gap of
/// n*(t + total boxes) higher, adjusted to its residue.
fn charge_schedule(residues: &[i64], n: i64, t: usize, boxes: i64) -> Vec<i64> {
    let l = residues.len();
    let mut s = vec![0i64; l];
    s[l - 1] = residues[l - 1].rem_euclid(n);
    for idx in (0..l.saturating_sub(1)).rev() {
        let base = s[idx + 1] + n * (t as i64 + boxes);
        s[idx] = base + (residues[idx] - base).rem_euclid(n);
    }
    s
}

/// Widen every charge gap by a positive multiple of n (residues preserved).
fn widen_charges(charges: &[i64], n: i64) -> Vec<i64> {
    let l = charges.len();
    let mut out = vec![0i64; l];
    out[l - 1] = charges[l - 1];
    for idx in (0..l.saturating_sub(1)).rev() {
        let gap = charges[idx] - charges[idx + 1];
        out[idx] = out[idx + 1] + gap + n * (gap / n + 1);
    }
    out
}

/// The point u = (u^(1), ..., u^(l)) with u^(b)_j = s_b + lambda_j + 1 - j.
fn charged_point(shapes: &[Partition], charges: &[i64], t: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(shapes.len() * t);
    for (shape, &s) in shapes.iter().zip(charges) {
        for j in 1..=t {
            out.push(s + shape.part(j) + 1 - j as i64);
        }
    }
    out
}

fn evaluate_once(
    source: &[Partition],
    target: &[Partition],
    charges: &[i64],
    t: usize,
    n: i64,
) -> Result<LaurentPoly, PklError> {
    let max_len = source.iter().chain(target).map(|p| p.len()).max().unwrap_or(0);
    if t < max_len {
        return Err(PklError::TruncationTooSmall { t, need: max_len });
    }
    let l = charges.len() as i64;
    let level = n * l;
    let u = charged_point(target, charges, t);
    let v = charged_point(source, charges, t);
    let i_entries = fundamental_rep(&u, level);
    let i = CompositionIndex::new(i_entries, level).expect("fundamental rep is valid");
    // source must live in the same orbit and rotation sector
    if fundamental_rep(&v, level) != i.entries()
        || v.iter().sum::<i64>() != u.iter().sum::<i64>()
    {
        return Ok(LaurentPoly::zero());
    }
    let module = module_for(&i);
    let c = module.c_minus(&u)?;
    Ok(c.get(&v).cloned().unwrap_or_else(LaurentPoly::zero))
}

/// Evaluate the stabilized polynomial; the value is recomputed at t+1 and at
/// widened charge gaps and must agree.
pub fn stabilized_pkl(q: &StabilizedPklQuery) -> Result<StabilizedPklResult, PklError> {
    let (source, target, l) = pad_components(q);
    let boxes: i64 = source.iter().chain(&target).map(|p| p.size()).sum();
    let t = q.t.unwrap_or_else(|| default_truncation(&source, &target));
    let charges = match (&q.charges, &q.residues) {
        (Some(c), _) => {
            if c.len() != l {
                return Err(PklError::BadCharges(l, c.len()));
            }
            c.clone()
        }
        (None, Some(r)) => {
            if r.len() != l {
                return Err(PklError::BadCharges(l, r.len()));
            }
            charge_schedule(r, q.n, t, boxes)
        }
        (None, None) => charge_schedule(&vec![0; l], q.n, t, boxes),
    };
    let value = evaluate_once(&source, &target, &charges, t, q.n)?;
    // stability: one more column
    let charges_t1 = match (&q.charges, &q.residues) {
        (Some(c), _) => c.clone(),
        (None, Some(r)) => charge_schedule(r, q.n, t + 1, boxes),
        (None, None) => charge_schedule(&vec![0; l], q.n, t + 1, boxes),
    };
    let again = evaluate_once(&source, &target, &charges_t1, t + 1, q.n)?;
    if again != value {
        return Err(PklError::Unstable(format!(
            "t={t}: {value} vs t={}: {again}",
            t + 1
        )));
    }
    // stability: wider gaps (trivial when l = 1)
    if l > 1 {
        let wide = widen_charges(&charges, q.n);
        let third = evaluate_once(&source, &target, &wide, t, q.n)?;
        if third != value {
            return Err(PklError::Unstable(format!(
                "gaps {charges:?}: {value} vs {wide:?}: {third}"
            )));
        }
    }
    Ok(StabilizedPklResult { value, charges, t })
}
