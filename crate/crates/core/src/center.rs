//! The two sides of the central-element expansion, and their cross-check.
//!
//! For an index vector i of level n and a partition lambda, the element
//! e_i s_lambda(X_1^-1, ..., X_r^-1) lies in the double coset space and
//! expands as (-v)^{(n-1)|lambda|} sum_sigma J_sigma c_sigma over the
//! canonical basis. `expand_oracle` computes that expansion directly by
//! working in the right module in point coordinates, grouping by double
//! cosets and eliminating against the canonical basis from the top down.
//!
//! `formula_j` evaluates the closed expression for the same coefficients:
//! a sum over tuples of partitions weighted by Littlewood-Richardson
//! coefficients, level-one stabilized polynomials at stretched conjugate
//! shapes, and one stabilized polynomial at the transposed distinguished
//! multipartition of the coset. `cross_check` demands exact equality.
//!
//! `satake_n1` is the rank-one-modulus expansion in the plain coset sums:
//! its coefficients match the charge Kostka-Foulkes polynomials after
//! v -> v^2 (pinned by the acceptance suite).

use crate::hecke::{
    self, double_coset_canonical, mul_gen_left, mul_gen_right, y_exponent, HeckeElement,
};
use crate::laurent::LaurentPoly;
use crate::partitions::{
    compute_mip, i_bullet, lr_coefficient, ssyt_weight_counts, MultipartitionWithResidues,
    Partition,
};
use crate::pkl::{module_for, stabilized_pkl, PklError, PointVector, StabilizedPklQuery};
use crate::weyl::{double_coset, double_coset_elements, point_min_rep, AffinePermutation,
    CompositionIndex, DoubleCoset};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum CenterError {
    #[error(transparent)]
    Hecke(#[from] hecke::HeckeError),
    #[error(transparent)]
    Pkl(#[from] PklError),
    #[error("element is not bi-invariant: {0}")]
    NotBiInvariant(String),
    #[error("elimination left a nonzero remainder")]
    Remainder,
}

/// Expansion of e_i s_lambda(X^{-1}) over the canonical basis of the double
/// coset space, after dividing by the global factor (-v)^{(n-1)|lambda|}.
#[derive(Clone, Debug)]
pub struct CentralExpansion {
    pub lambda: Partition,
    pub i: CompositionIndex,
    /// minimal coset representative -> (i-bullet vector of the coset, J)
    pub coefficients: BTreeMap<AffinePermutation, (Vec<i64>, LaurentPoly)>,
}

impl CentralExpansion {
    pub fn modulus(&self) -> i64 {
        self.i.level()
    }

    pub fn rank(&self) -> usize {
        self.i.rank()
    }
}

/// e_i s_lambda(X^{-1}) in right-module point coordinates.
fn central_point_vector(
    lambda: &Partition,
    i: &CompositionIndex,
) -> Result<PointVector, CenterError> {
    let module = module_for(i);
    let start = module.bra(i.entries()).expect("base point is in its own orbit");
    let mut acc = PointVector::new();
    if lambda.len() > i.rank() {
        return Err(CenterError::Hecke(hecke::HeckeError::TooManyRows(
            lambda.len(),
            i.rank(),
        )));
    }
    for (weight, count) in ssyt_weight_counts(lambda, i.rank()) {
        let neg: Vec<i64> = weight.iter().map(|w| -w).collect();
        let term = module.act_x_monomial(&start, &neg);
        let mult = LaurentPoly::monomial_big(0, BigInt::from(count));
        for (x, c) in term {
            let entry = acc.entry(x.clone()).or_default();
            *entry += &(&c * &mult);
            if entry.is_zero() {
                acc.remove(&x);
            }
        }
    }
    Ok(acc)
}

/// Group a bi-invariant point vector by double cosets, verifying both the
/// per-coset coefficient consistency and the invariance of the reconstructed
/// element under the stabilizer on both sides.
fn group_points_by_coset(
    i: &CompositionIndex,
    vec: &PointVector,
) -> Result<BTreeMap<AffinePermutation, (DoubleCoset, LaurentPoly)>, CenterError> {
    let module = module_for(i);
    // invariance of the underlying element
    let h = module.to_hecke(vec);
    let scaled = h.scale_monomial(-2, 1);
    for j in i.stabilizer_gens() {
        if mul_gen_left(j, &h) != scaled || mul_gen_right(&h, j) != scaled {
            return Err(CenterError::NotBiInvariant(format!(
                "stabilizer generator {j} does not act by v^-2"
            )));
        }
    }
    let mut out: BTreeMap<AffinePermutation, (DoubleCoset, LaurentPoly)> = BTreeMap::new();
    let mut consumed = 0usize;
    for (x, c) in vec {
        let a = point_min_rep(i, x).expect("support point lies in the orbit");
        let coset = double_coset(i, i, &a);
        if out.contains_key(&coset.min_rep) {
            continue;
        }
        let y = y_exponent(i, &coset);
        // expected point coefficient at every coset point: C * v^{y - l(a)}
        let c_sigma = c.div_signed_monomial(y - a.length(), 1);
        for w in double_coset_elements(i, i, &coset) {
            if !i.is_min_rep(&w) {
                continue;
            }
            let point = crate::weyl::act_right_level(i.entries(), &w, i.level());
            let expected = c_sigma.times_monomial(y - w.length(), 1);
            let got = vec.get(&point).cloned().unwrap_or_else(LaurentPoly::zero);
            if got != expected {
                return Err(CenterError::NotBiInvariant(format!(
                    "coset of {} has point coefficient {got}, expected {expected}",
                    coset.min_rep
                )));
            }
            consumed += 1;
        }
        out.insert(coset.min_rep.clone(), (coset, c_sigma));
    }
    if consumed != vec.len() {
        return Err(CenterError::NotBiInvariant(
            "support does not decompose into full cosets".into(),
        ));
    }
    Ok(out)
}

/// Coefficients of e_i s_lambda(X^{-1}) over the rescaled coset sums
/// Tt_sigma (no canonical-basis conversion).
pub fn central_in_coset_basis(
    lambda: &Partition,
    i: &CompositionIndex,
) -> Result<BTreeMap<AffinePermutation, (DoubleCoset, LaurentPoly)>, CenterError> {
    let vec = central_point_vector(lambda, i)?;
    group_points_by_coset(i, &vec)
}

/// Direct expansion of e_i s_lambda(X^{-1}) in the canonical basis, by
/// triangular elimination from the longest coset down.
pub fn expand_oracle(
    lambda: &Partition,
    i: &CompositionIndex,
) -> Result<CentralExpansion, CenterError> {
    let n = i.level();
    let mut working = central_in_coset_basis(lambda, i)?;
    let mut coefficients = BTreeMap::new();
    while !working.is_empty() {
        // any coset of maximal longest-element length is Bruhat-maximal
        let key = working
            .iter()
            .max_by_key(|(min, (coset, _))| (coset.longest.length(), (*min).clone()))
            .map(|(min, _)| min.clone())
            .unwrap();
        let (coset, c_sigma) = working.remove(&key).unwrap();
        let canonical = double_coset_canonical(i, i, &coset)?;
        for (min, coeff) in &canonical.terms {
            if min == &key {
                continue;
            }
            let sub = &c_sigma * coeff;
            let entry = working
                .entry(min.clone())
                .or_insert_with(|| (double_coset(i, i, min), LaurentPoly::zero()));
            entry.1 -= &sub;
            if entry.1.is_zero() {
                working.remove(min);
            }
        }
        if !c_sigma.is_zero() {
            let bullet = i_bullet(i, &coset);
            coefficients.insert(key, (bullet, c_sigma));
        }
    }
    // divide by the global normalization
    let total = (n - 1) * lambda.size();
    let sign = if total % 2 == 0 { 1 } else { -1 };
    let coefficients = coefficients
        .into_iter()
        .map(|(k, (b, c))| (k, (b, c.div_signed_monomial(total, sign))))
        .collect();
    Ok(CentralExpansion { lambda: lambda.clone(), i: i.clone(), coefficients })
}

// ---------------------------------------------------------------------------
// The closed formula.
// ---------------------------------------------------------------------------

/// One summand of the closed formula, kept for the support diagnostics.
#[derive(Clone, Debug)]
pub struct FormulaTerm {
    pub mu: Vec<Partition>,
    pub nu: Vec<Partition>,
    pub lr: BigInt,
    pub value: LaurentPoly,
}

/// Ordered compositions of `total` into `slots` nonnegative parts.
fn compositions(total: i64, slots: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for slot in 0..slots {
        let mut next = Vec::new();
        for prefix in &out {
            let used: i64 = prefix.iter().sum();
            let hi = if slot + 1 == slots { used..=used } else { 0..=used };
            let _ = hi;
            let remaining = total - used;
            let range = if slot + 1 == slots { remaining..=remaining } else { 0..=remaining };
            for v in range {
                let mut q = prefix.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn level_one_factor(nu: &Partition, mu: &Partition, n: i64) -> Result<LaurentPoly, PklError> {
    let target = mu.conjugate().stretch(n);
    Ok(stabilized_pkl(&StabilizedPklQuery {
        source: vec![nu.clone()],
        target: vec![target],
        n,
        residues: None,
        charges: None,
        t: None,
    })?
    .value)
}

/// J for one double coset, by the closed formula; returns the summands too.
pub fn formula_j_terms(
    lambda: &Partition,
    coset: &DoubleCoset,
    i: &CompositionIndex,
) -> Result<(LaurentPoly, Vec<FormulaTerm>), CenterError> {
    let n = i.level();
    let p = i_bullet(i, coset);
    if p.iter().any(|&x| x < 0) || p.iter().sum::<i64>() != n * lambda.size() {
        return Ok((LaurentPoly::zero(), vec![]));
    }
    let m = compute_mip(i, &p, n);
    if m.num_components() == 0 {
        let value =
            if lambda.is_empty() { LaurentPoly::one() } else { LaurentPoly::zero() };
        return Ok((value, vec![]));
    }
    let transposed = m.transpose();
    let target_shapes = transposed.shapes();
    let target_residues = transposed.residues();
    let l = m.num_components();

    let mut total = LaurentPoly::zero();
    let mut terms = Vec::new();
    for sizes in compositions(lambda.size(), l) {
        // tuples of partitions with the prescribed sizes
        let mut tuples: Vec<Vec<Partition>> = vec![vec![]];
        for &sz in &sizes {
            let mut next = Vec::new();
            for t in &tuples {
                for p in Partition::all_of_size(sz) {
                    let mut t2 = t.clone();
                    t2.push(p);
                    next.push(t2);
                }
            }
            tuples = next;
        }
        for mu_tuple in tuples {
            let factors: Vec<Partition> =
                mu_tuple.iter().filter(|p| !p.is_empty()).cloned().collect();
            let lr = lr_coefficient(lambda, &factors);
            if lr.is_zero() {
                continue;
            }
            let weight_exp: i64 =
                mu_tuple.iter().enumerate().map(|(b, p)| b as i64 * p.size()).sum();
            // per-slot level-one columns
            let mut slot_values: Vec<Vec<(Partition, LaurentPoly)>> = Vec::new();
            for mu in &mu_tuple {
                let mut col = Vec::new();
                for nu in Partition::all_of_size(n * mu.size()) {
                    let f = level_one_factor(&nu, mu, n)?;
                    if !f.is_zero() {
                        col.push((nu, f));
                    }
                }
                slot_values.push(col);
            }
            // product over the nu tuples
            let mut nu_tuples: Vec<(Vec<Partition>, LaurentPoly)> =
                vec![(vec![], LaurentPoly::one())];
            for col in &slot_values {
                let mut next = Vec::new();
                for (prefix, acc) in &nu_tuples {
                    for (nu, f) in col {
                        let mut p2 = prefix.clone();
                        p2.push(nu.clone());
                        next.push((p2, acc * f));
                    }
                }
                nu_tuples = next;
            }
            for (nu_tuple, level_one_product) in nu_tuples {
                let last = stabilized_pkl(&StabilizedPklQuery {
                    source: nu_tuple.clone(),
                    target: target_shapes.clone(),
                    n,
                    residues: Some(target_residues.clone()),
                    charges: None,
                    t: None,
                })?
                .value;
                if last.is_zero() {
                    continue;
                }
                let value = &(&level_one_product * &last).times_monomial(weight_exp, 1)
                    * &LaurentPoly::monomial_big(0, lr.clone());
                if value.is_zero() {
                    continue;
                }
                total += &value;
                terms.push(FormulaTerm {
                    mu: mu_tuple.clone(),
                    nu: nu_tuple,
                    lr: lr.clone(),
                    value,
                });
            }
        }
    }
    Ok((total, terms))
}

pub fn formula_j(
    lambda: &Partition,
    coset: &DoubleCoset,
    i: &CompositionIndex,
) -> Result<LaurentPoly, CenterError> {
    Ok(formula_j_terms(lambda, coset, i)?.0)
}

/// The distinguished multipartition attached to a coset in the support.
pub fn coset_multipartition(
    coset: &DoubleCoset,
    i: &CompositionIndex,
) -> Option<MultipartitionWithResidues> {
    let p = i_bullet(i, coset);
    if p.iter().any(|&x| x < 0) {
        return None;
    }
    Some(compute_mip(i, &p, i.level()))
}

// ---------------------------------------------------------------------------
// Cross-check.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CrossCheckRow {
    pub min_rep: AffinePermutation,
    pub i_bullet: Vec<i64>,
    pub oracle: LaurentPoly,
    pub formula: LaurentPoly,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub lambda: Partition,
    pub i: CompositionIndex,
    pub rows: Vec<CrossCheckRow>,
    pub passed: bool,
}

/// Compare the oracle expansion with the closed formula on every coset in
/// the oracle support.
pub fn cross_check(
    lambda: &Partition,
    i: &CompositionIndex,
) -> Result<CrossCheckReport, CenterError> {
    let oracle = expand_oracle(lambda, i)?;
    let mut rows = Vec::new();
    let mut passed = true;
    for (min, (bullet, coeff)) in &oracle.coefficients {
        let coset = double_coset(i, i, min);
        let f = formula_j(lambda, &coset, i)?;
        let ok = &f == coeff;
        passed &= ok;
        rows.push(CrossCheckRow {
            min_rep: min.clone(),
            i_bullet: bullet.clone(),
            oracle: coeff.clone(),
            formula: f,
            ok,
        });
    }
    Ok(CrossCheckReport { lambda: lambda.clone(), i: i.clone(), rows, passed })
}

// ---------------------------------------------------------------------------
// Rank-one-modulus expansion.
// ---------------------------------------------------------------------------

/// At modulus 1 the double cosets are indexed by partitions; expand
/// e s_lambda(X^{-1}) over the rescaled coset sums and return the
/// coefficients by partition.
pub fn satake_n1(
    lambda: &Partition,
    r: usize,
) -> Result<BTreeMap<Partition, LaurentPoly>, CenterError> {
    let i = CompositionIndex::new(vec![1; r], 1).expect("all-ones index");
    let grouped = central_in_coset_basis(lambda, &i)?;
    let mut out = BTreeMap::new();
    for (_, (coset, c)) in grouped {
        let mut bullet = i_bullet(&i, &coset);
        bullet.sort_unstable_by(|a, b| b.cmp(a));
        let mu = Partition::new(bullet).expect("support vectors are nonnegative");
        out.insert(mu, c);
    }
    Ok(out)
}

/// Bi-invariance statement used by the grouping step, checkable directly:
/// T_s (e_i z) = v^{-2} (e_i z) for each stabilizer generator.
pub fn centrality_transfer_holds(h: &HeckeElement, i: &CompositionIndex) -> bool {
    let scaled = h.scale_monomial(-2, 1);
    i.stabilizer_gens()
        .into_iter()
        .all(|j| mul_gen_left(j, h) == scaled && mul_gen_right(h, j) == scaled)
}
