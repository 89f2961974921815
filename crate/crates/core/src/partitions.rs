//! Partitions, tableaux and residue combinatorics.
//!
//! Contents: semistandard tableau enumeration (Kostka numbers and Schur
//! monomial weights), the iterated Littlewood-Richardson rule, the
//! charge-statistic Kostka-Foulkes polynomials, residue-labelled
//! multipartitions with their transpose, and the slice-addition algorithm
//! that turns a column diagram D_p into a multipartition with residues.
//!
//! Residues live in Z/nZ and are stored canonically in 0..n-1. Box contents
//! follow the row-minus-column convention: the (a, b) box of a partition
//! with residue r carries content a - b + r (mod n).

use crate::laurent::LaurentPoly;
use crate::weyl::{act_right_level, CompositionIndex, DoubleCoset};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing and positive: {0:?}")]
    NotAPartition(Vec<i64>),
    #[error("cannot parse: {0}")]
    Parse(String),
    #[error("sizes differ: {0} vs {1}")]
    SizeMismatch(i64, i64),
    #[error("no valid slice placement exists")]
    NoPlacement,
}

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p <= 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Part at 1-based row index, zero beyond the last row.
    pub fn part(&self, row: usize) -> i64 {
        if row >= 1 && row <= self.parts.len() {
            self.parts[row - 1]
        } else {
            0
        }
    }

    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0];
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as i64)
            .collect();
        Partition { parts }
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|row| self.part(row) >= other.part(row))
    }

    /// Stretch every part by the factor n.
    pub fn stretch(&self, n: i64) -> Partition {
        Partition { parts: self.parts.iter().map(|p| p * n).collect() }
    }

    fn partial_sums(&self, upto: usize) -> Vec<i64> {
        let mut acc = 0;
        (1..=upto)
            .map(|row| {
                acc += self.part(row);
                acc
            })
            .collect()
    }

    /// Dominance: self <= other iff every partial sum of self is bounded by
    /// the matching partial sum of other (sizes may differ; the total counts
    /// as the limit of the partial sums).
    pub fn dominance_leq(&self, other: &Partition) -> bool {
        let rows = self.len().max(other.len());
        let a = self.partial_sums(rows);
        let b = other.partial_sums(rows);
        a.iter().zip(&b).all(|(x, y)| x <= y)
    }

    /// Total order refining dominance on each size class: size first, then
    /// partial sums lexicographically.
    pub fn refined_cmp(&self, other: &Partition) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| {
            let rows = self.len().max(other.len());
            self.partial_sums(rows).cmp(&other.partial_sums(rows))
        })
    }

    /// Addable cells (row, col), 1-based.
    pub fn addable_cells(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for row in 1..=self.len() + 1 {
            let here = self.part(row);
            if row == 1 || here < self.part(row - 1) {
                out.push((row as i64, here + 1));
            }
        }
        out
    }

    /// Removable cells (row, col), 1-based.
    pub fn removable_cells(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for row in 1..=self.len() {
            if self.part(row) > self.part(row + 1) {
                out.push((row as i64, self.part(row)));
            }
        }
        out
    }

    pub fn with_cell_added(&self, row: i64) -> Partition {
        let mut parts = self.parts.clone();
        if row as usize == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[row as usize - 1] += 1;
        }
        Partition { parts }
    }

    /// All partitions of n.
    pub fn all_of_size(n: i64) -> Vec<Partition> {
        fn rec(remaining: i64, max: i64, acc: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: acc.clone() });
                return;
            }
            let top = remaining.min(max);
            for p in (1..=top).rev() {
                acc.push(p);
                rec(remaining - p, p, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        if n == 0 {
            return vec![Partition::empty()];
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| PartitionError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

// ---------------------------------------------------------------------------
// Semistandard tableaux: weights, Kostka numbers, charge.
// ---------------------------------------------------------------------------

fn horizontal_strips_between(
    inner: &Partition,
    outer_bound: &Partition,
) -> Vec<Partition> {
    // all nu with inner <= nu <= outer_bound and nu/inner a horizontal strip
    let rows = outer_bound.len().max(inner.len());
    let mut out = Vec::new();
    let mut current = vec![0i64; rows];
    fn rec(
        row: usize,
        rows: usize,
        inner: &Partition,
        outer: &Partition,
        current: &mut Vec<i64>,
        out: &mut Vec<Partition>,
    ) {
        if row > rows {
            let parts: Vec<i64> = current.clone();
            out.push(Partition::new(parts).unwrap());
            return;
        }
        // nu_row range: >= inner_row, <= outer_row, <= previous nu row,
        // horizontal strip: nu_row <= inner_{row-1} for row >= 2
        let mut hi = outer.part(row);
        if row >= 2 {
            hi = hi.min(inner.part(row - 1)).min(current[row - 2]);
        }
        let lo = inner.part(row);
        for val in lo..=hi {
            current[row - 1] = val;
            rec(row + 1, rows, inner, outer, current, out);
        }
        current[row - 1] = 0;
    }
    rec(1, rows, inner, outer_bound, &mut current, &mut out);
    out
}

/// Enumerate the weights of all semistandard tableaux of the given shape with
/// entries in 1..=max_entry, with multiplicities. The count at a sorted
/// weight is the Kostka number.
pub fn ssyt_weight_counts(shape: &Partition, max_entry: usize) -> BTreeMap<Vec<i64>, u64> {
    let mut out = BTreeMap::new();
    // chains empty = mu_0 <= mu_1 <= ... <= mu_k = shape by horizontal strips
    fn rec(
        level: usize,
        max_entry: usize,
        current: &Partition,
        shape: &Partition,
        weight: &mut Vec<i64>,
        out: &mut BTreeMap<Vec<i64>, u64>,
    ) {
        if level == max_entry {
            if current == shape {
                *out.entry(weight.clone()).or_insert(0) += 1;
            }
            return;
        }
        // remaining levels must be able to absorb the rest
        for nu in horizontal_strips_between(current, shape) {
            weight.push(nu.size() - current.size());
            rec(level + 1, max_entry, &nu, shape, weight, out);
            weight.pop();
        }
    }
    rec(0, max_entry, &Partition::empty(), shape, &mut Vec::new(), &mut out);
    out
}

/// Number of semistandard tableaux of the given shape and exact weight.
pub fn kostka(shape: &Partition, weight: &[i64]) -> u64 {
    if weight.iter().sum::<i64>() != shape.size() {
        return 0;
    }
    let counts = ssyt_weight_counts(shape, weight.len());
    counts.get(weight).copied().unwrap_or(0)
}

/// All semistandard fillings of the shape with exact weight, returned as row
/// vectors of entries.
fn ssyt_fillings(shape: &Partition, weight: &[i64]) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    fn rec(
        level: usize,
        weight: &[i64],
        current: &Partition,
        shape: &Partition,
        placed: &mut Vec<Partition>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if level == weight.len() {
            if current == shape {
                // reconstruct the filling from the chain
                let rows = shape.len();
                let mut fill = vec![Vec::new(); rows];
                for (row, f) in fill.iter_mut().enumerate() {
                    let row = row + 1;
                    for k in 1..placed.len() {
                        let added = placed[k].part(row) - placed[k - 1].part(row);
                        for _ in 0..added {
                            f.push(k);
                        }
                    }
                }
                out.push(fill);
            }
            return;
        }
        for nu in horizontal_strips_between(current, shape) {
            if nu.size() - current.size() != weight[level] {
                continue;
            }
            placed.push(nu.clone());
            rec(level + 1, weight, &nu, shape, placed, out);
            placed.pop();
        }
    }
    rec(0, weight, &Partition::empty(), shape, &mut vec![Partition::empty()], &mut out);
    out
}

/// Charge of a word with partition weight (Lascoux-Schutzenberger): extract
/// standard subwords from the right, wrapping cyclically, and sum their
/// indices.
fn charge_of_word(word: &[usize]) -> i64 {
    let mut letters: Vec<Option<usize>> = word.iter().map(|&x| Some(x)).collect();
    let mut total = 0i64;
    loop {
        let max_letter = match letters.iter().flatten().max() {
            Some(&m) => m,
            None => break,
        };
        let _ = max_letter;
        // positions of the extracted standard subword
        let mut chosen: Vec<usize> = Vec::new();
        // rightmost 1
        let p1 = letters
            .iter()
            .rposition(|x| *x == Some(1))
            .expect("weight is a partition, a 1 exists");
        chosen.push(p1);
        let mut next = 2;
        loop {
            let prev_pos = *chosen.last().unwrap();
            let found = letters[..prev_pos]
                .iter()
                .rposition(|x| *x == Some(next))
                .or_else(|| letters.iter().rposition(|x| *x == Some(next)));
            match found {
                Some(p) => {
                    chosen.push(p);
                    next += 1;
                }
                None => break,
            }
        }
        // index statistic on the extracted subword read in word order
        let mut by_pos: Vec<(usize, usize)> =
            chosen.iter().map(|&p| (p, letters[p].unwrap())).collect();
        by_pos.sort();
        let pos_of = |letter: usize| by_pos.iter().find(|(_, l)| *l == letter).unwrap().0;
        let mut index = 0i64;
        for letter in 2..=chosen.len() {
            if pos_of(letter) > pos_of(letter - 1) {
                index += 1;
            }
            total += index;
        }
        for p in chosen {
            letters[p] = None;
        }
    }
    total
}

/// Kostka-Foulkes polynomial: the charge generating function over
/// semistandard tableaux of the given shape and weight, in the variable v.
/// (The Hecke-side expansions recover these after substituting v -> v^2;
/// that global convention is pinned by the acceptance suite.)
pub fn kostka_foulkes(shape: &Partition, weight: &Partition) -> Result<LaurentPoly, PartitionError> {
    if shape.size() != weight.size() {
        return Err(PartitionError::SizeMismatch(shape.size(), weight.size()));
    }
    let mut out = LaurentPoly::zero();
    for filling in ssyt_fillings(shape, weight.parts()) {
        // reading word: rows bottom to top, each left to right
        let mut word = Vec::new();
        for row in filling.iter().rev() {
            word.extend_from_slice(row);
        }
        out += &LaurentPoly::monomial(charge_of_word(&word), 1);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Littlewood-Richardson.
// ---------------------------------------------------------------------------

/// Count Littlewood-Richardson skew tableaux of shape outer/inner and weight
/// mu: semistandard with lattice reverse reading word.
fn lr_skew_count(outer: &Partition, inner: &Partition, mu: &Partition) -> u64 {
    if !outer.contains(inner) || outer.size() - inner.size() != mu.size() {
        return 0;
    }
    // cells in reverse reading order: row 1 right-to-left, then row 2, ...
    let mut cells = Vec::new();
    for row in 1..=outer.len() {
        let from = inner.part(row);
        let to = outer.part(row);
        for col in (from + 1..=to).rev() {
            cells.push((row as i64, col));
        }
    }
    let l = mu.len();
    fn rec(
        idx: usize,
        cells: &[(i64, i64)],
        assignment: &mut Vec<usize>,
        counts: &mut Vec<i64>,
        mu: &Partition,
        l: usize,
        inner: &Partition,
        total: &mut u64,
    ) {
        if idx == cells.len() {
            *total += 1;
            return;
        }
        let (row, col) = cells[idx];
        for letter in 1..=l {
            if counts[letter - 1] >= mu.part(letter) {
                continue;
            }
            // lattice: after placing, counts stay weakly decreasing
            if letter > 1 && counts[letter - 1] + 1 > counts[letter - 2] {
                continue;
            }
            // row weakly increasing left to right: the cell to the right (if
            // in the skew shape) was placed earlier and must be >= letter
            let right = cells[..idx]
                .iter()
                .position(|&(r2, c2)| r2 == row && c2 == col + 1)
                .map(|p| assignment[p]);
            if let Some(rv) = right {
                if rv < letter {
                    continue;
                }
            }
            // column strictly increasing: cell above (if in the skew shape)
            // must be < letter
            if row > 1 && col > inner.part(row as usize - 1) {
                let above = cells[..idx]
                    .iter()
                    .position(|&(r2, c2)| r2 == row - 1 && c2 == col)
                    .map(|p| assignment[p]);
                match above {
                    Some(av) if av >= letter => continue,
                    None => continue, // above cell comes later in order: impossible
                    _ => {}
                }
            }
            assignment.push(letter);
            counts[letter - 1] += 1;
            rec(idx + 1, cells, assignment, counts, mu, l, inner, total);
            counts[letter - 1] -= 1;
            assignment.pop();
        }
    }
    let mut total = 0;
    rec(0, &cells, &mut Vec::new(), &mut vec![0; l], mu, l, inner, &mut total);
    total
}

/// Generalized Littlewood-Richardson coefficient: the multiplicity of
/// s_lambda in the product s_{mu_1} ... s_{mu_l}, by the iterated rule.
pub fn lr_coefficient(lambda: &Partition, factors: &[Partition]) -> BigInt {
    let mut state: BTreeMap<Partition, BigInt> = BTreeMap::new();
    state.insert(Partition::empty(), BigInt::one());
    for mu in factors {
        let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (nu, c) in &state {
            let target = nu.size() + mu.size();
            if target > lambda.size() {
                continue;
            }
            for lam in Partition::all_of_size(target) {
                if !lambda.contains(&lam) && lam.size() == lambda.size() {
                    continue;
                }
                let count = lr_skew_count(&lam, nu, mu);
                if count > 0 {
                    let e = next.entry(lam).or_insert_with(BigInt::zero);
                    *e += c * BigInt::from(count);
                }
            }
        }
        state = next;
    }
    state.get(lambda).cloned().unwrap_or_else(BigInt::zero)
}

// ---------------------------------------------------------------------------
// Multipartitions with residues.
// ---------------------------------------------------------------------------

/// Ordered tuple of partitions, each carrying a residue mod n. Trailing empty
/// components are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultipartitionWithResidues {
    components: Vec<(Partition, i64)>,
    n: i64,
}

impl MultipartitionWithResidues {
    pub fn new(mut components: Vec<(Partition, i64)>, n: i64) -> Self {
        while components.last().map(|(p, _)| p.is_empty()).unwrap_or(false) {
            components.pop();
        }
        let components =
            components.into_iter().map(|(p, r)| (p, r.rem_euclid(n))).collect();
        MultipartitionWithResidues { components, n }
    }

    pub fn empty(n: i64) -> Self {
        MultipartitionWithResidues { components: vec![], n }
    }

    pub fn components(&self) -> &[(Partition, i64)] {
        &self.components
    }

    pub fn modulus(&self) -> i64 {
        self.n
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn total_boxes(&self) -> i64 {
        self.components.iter().map(|(p, _)| p.size()).sum()
    }

    pub fn shapes(&self) -> Vec<Partition> {
        self.components.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn residues(&self) -> Vec<i64> {
        self.components.iter().map(|(_, r)| *r).collect()
    }

    /// Reverse the component order, conjugate each shape and negate each
    /// residue. Applying it twice returns the original.
    pub fn transpose(&self) -> MultipartitionWithResidues {
        let components = self
            .components
            .iter()
            .rev()
            .map(|(p, r)| (p.conjugate(), (-r).rem_euclid(self.n)))
            .collect();
        MultipartitionWithResidues::new(components, self.n)
    }
}

impl fmt::Display for MultipartitionWithResidues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, r)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}@{r}")?;
        }
        write!(f, ")")
    }
}

impl MultipartitionWithResidues {
    pub fn parse(s: &str, n: i64) -> Result<Self, PartitionError> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Self::empty(n));
        }
        // split on commas at depth zero
        let mut comps = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        let bytes: Vec<char> = inner.chars().collect();
        for (idx, ch) in bytes.iter().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    comps.push(inner[start..idx].to_string());
                    start = idx + 1;
                }
                _ => {}
            }
        }
        comps.push(inner[start..].to_string());
        let mut components = Vec::new();
        for c in comps {
            let c = c.trim();
            let (shape, res) = c
                .rsplit_once('@')
                .ok_or_else(|| PartitionError::Parse(c.to_string()))?;
            let p: Partition = shape.trim().parse()?;
            let r: i64 =
                res.trim().parse().map_err(|_| PartitionError::Parse(c.to_string()))?;
            components.push((p, r));
        }
        Ok(Self::new(components, n))
    }
}

// ---------------------------------------------------------------------------
// Column diagrams and the slice-addition algorithm.
// ---------------------------------------------------------------------------

/// Column diagram: column a (1-based) has height p_a, and the box in column a,
/// row j carries content i_a + p_a - j (mod n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpDiagram {
    pub n: i64,
    pub index: Vec<i64>,
    pub heights: Vec<i64>,
}

pub fn build_dp(i: &CompositionIndex, p: &[i64], n: i64) -> DpDiagram {
    assert_eq!(i.rank(), p.len(), "index and height vectors must have equal length");
    assert!(p.iter().all(|&h| h >= 0));
    DpDiagram { n, index: i.entries().to_vec(), heights: p.to_vec() }
}

impl DpDiagram {
    pub fn max_height(&self) -> i64 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn total_boxes(&self) -> i64 {
        self.heights.iter().sum()
    }

    /// Content of the box in column a (1-based), row j, canonical in 0..n-1.
    pub fn content(&self, a: usize, j: i64) -> i64 {
        (self.index[a - 1] + self.heights[a - 1] - j).rem_euclid(self.n)
    }

    /// Contents of row k, in column order; empty above the tallest column.
    pub fn slice(&self, k: i64) -> Vec<i64> {
        (1..=self.index.len())
            .filter(|&a| self.heights[a - 1] >= k)
            .map(|a| self.content(a, k))
            .collect()
    }

    /// The grid of contents, top row first, as displayed: residues are shown
    /// as 1..n (so 0 prints as n), blank above short columns.
    pub fn content_grid(&self) -> Vec<Vec<Option<i64>>> {
        let kmax = self.max_height();
        (1..=kmax)
            .rev()
            .map(|j| {
                (1..=self.index.len())
                    .map(|a| {
                        if self.heights[a - 1] >= j {
                            let c = self.content(a, j);
                            Some(if c == 0 { self.n } else { c })
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let grid = self.content_grid();
        let mut out = String::new();
        for row in grid {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.map(|v| v.to_string()).unwrap_or_else(|| ".".to_string()))
                .collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// All vertical-strip extensions of `shape` whose added cells draw their
/// contents (relative to the residue) from the multiset `avail`; returns
/// (new shape, leftover multiset).
fn vertical_strip_extensions(
    shape: &Partition,
    residue: i64,
    n: i64,
    avail: &BTreeMap<i64, usize>,
) -> Vec<(Partition, BTreeMap<i64, usize>)> {
    let rows = shape.len() + 1;
    let mut out = Vec::new();
    fn rec(
        row: usize,
        rows: usize,
        shape: &Partition,
        residue: i64,
        n: i64,
        new_parts: &mut Vec<i64>,
        avail: &mut BTreeMap<i64, usize>,
        out: &mut Vec<(Partition, BTreeMap<i64, usize>)>,
    ) {
        if row > rows {
            let mut parts = new_parts.clone();
            while parts.last() == Some(&0) {
                parts.pop();
            }
            out.push((Partition::new(parts).unwrap(), avail.clone()));
            return;
        }
        let old = shape.part(row);
        // option: leave the row unchanged
        let prev = if row >= 2 { new_parts[row - 2] } else { i64::MAX };
        if old <= prev {
            new_parts.push(old);
            rec(row + 1, rows, shape, residue, n, new_parts, avail, out);
            new_parts.pop();
        }
        // option: add one cell at (row, old + 1)
        if old + 1 <= prev {
            let content = (row as i64 - (old + 1) + residue).rem_euclid(n);
            if avail.get(&content).copied().unwrap_or(0) > 0 {
                *avail.get_mut(&content).unwrap() -= 1;
                new_parts.push(old + 1);
                rec(row + 1, rows, shape, residue, n, new_parts, avail, out);
                new_parts.pop();
                *avail.get_mut(&content).unwrap() += 1;
            }
        }
    }
    let mut avail = avail.clone();
    rec(1, rows, shape, residue, n, &mut Vec::new(), &mut avail, &mut out);
    out
}

/// Decompose `avail` into new one-column components: a new component with
/// residue rho and height h consumes contents rho, rho+1, ..., rho+h-1
/// (mod n). Returns the possible lists of (residue, height).
fn new_component_decompositions(avail: &BTreeMap<i64, usize>, n: i64) -> Vec<Vec<(i64, i64)>> {
    let total: usize = avail.values().sum();
    if total == 0 {
        return vec![vec![]];
    }
    let mut results: Vec<Vec<(i64, i64)>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    fn rec(
        avail: &mut BTreeMap<i64, usize>,
        n: i64,
        acc: &mut Vec<(i64, i64)>,
        results: &mut Vec<Vec<(i64, i64)>>,
        seen: &mut std::collections::BTreeSet<Vec<(i64, i64)>>,
    ) {
        let total: usize = avail.values().sum();
        if total == 0 {
            let mut sorted = acc.clone();
            sorted.sort();
            if seen.insert(sorted) {
                results.push(acc.clone());
            }
            return;
        }
        // choose the smallest residue still available as the start of a chain
        // (canonical, since chains are unordered at this stage); also allow
        // every other residue to start a chain to cover wrap-around cases.
        let starts: Vec<i64> = avail.iter().filter(|(_, &c)| c > 0).map(|(&r, _)| r).collect();
        for rho in starts {
            // extend the chain as far as each prefix allows
            let mut h = 0i64;
            loop {
                let content = (rho + h).rem_euclid(n);
                if avail.get(&content).copied().unwrap_or(0) == 0 {
                    break;
                }
                *avail.get_mut(&content).unwrap() -= 1;
                h += 1;
                acc.push((rho, h));
                rec(avail, n, acc, results, seen);
                acc.pop();
            }
            // restore
            for back in 0..h {
                let content = (rho + back).rem_euclid(n);
                *avail.get_mut(&content).unwrap() += 1;
            }
        }
    }
    rec(&mut avail.clone(), n, &mut Vec::new(), &mut results, &mut seen);
    results
}

type Components = Vec<(Partition, i64)>;

/// All ways to place one slice onto the current components (vertical strips
/// on existing components, leftovers as new one-column components appended in
/// increasing residue order).
fn slice_placements(current: &Components, slice: &[i64], n: i64) -> Vec<Components> {
    let mut avail: BTreeMap<i64, usize> = BTreeMap::new();
    for &c in slice {
        *avail.entry(c.rem_euclid(n)).or_insert(0) += 1;
    }
    let mut results = Vec::new();
    fn rec(
        idx: usize,
        current: &Components,
        n: i64,
        avail: &BTreeMap<i64, usize>,
        acc: &mut Components,
        results: &mut Vec<Components>,
    ) {
        if idx == current.len() {
            for decomp in new_component_decompositions(avail, n) {
                let mut full = acc.clone();
                let mut news: Vec<(Partition, i64)> = decomp
                    .iter()
                    .map(|&(rho, h)| (Partition::new(vec![1; h as usize]).unwrap(), rho))
                    .collect();
                // increasing residue, larger shape first among equal residues
                news.sort_by(|a, b| {
                    a.1.cmp(&b.1).then_with(|| b.0.refined_cmp(&a.0))
                });
                full.extend(news);
                results.push(full);
            }
            return;
        }
        let (shape, residue) = &current[idx];
        for (ext, leftover) in vertical_strip_extensions(shape, *residue, n, avail) {
            acc.push((ext, *residue));
            rec(idx + 1, current, n, &leftover, acc, results);
            acc.pop();
        }
    }
    rec(0, current, n, &avail, &mut Vec::new(), &mut results);
    results
}

/// Position-wise comparison of component sequences: first difference decides,
/// larger size first, then dominance refined to a total order by partial
/// sums, with smaller residue preferred as the final tie-break.
fn cmp_components(a: &Components, b: &Components) -> Ordering {
    let len = a.len().max(b.len());
    for idx in 0..len {
        let (pa, ra) = a.get(idx).cloned().unwrap_or((Partition::empty(), i64::MAX));
        let (pb, rb) = b.get(idx).cloned().unwrap_or((Partition::empty(), i64::MAX));
        let c = pa.refined_cmp(&pb);
        if c != Ordering::Equal {
            return c;
        }
        // equal shapes: prefer the smaller residue
        let c = rb.cmp(&ra);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

/// The multipartition with residues obtained by adding the slices of D_p from
/// the top row down, choosing at each step the placement maximal for the
/// component order.
pub fn compute_mip(i: &CompositionIndex, p: &[i64], n: i64) -> MultipartitionWithResidues {
    let dp = build_dp(i, p, n);
    let mut current: Components = Vec::new();
    for k in (1..=dp.max_height()).rev() {
        let slice = dp.slice(k);
        if slice.is_empty() {
            continue;
        }
        let placements = slice_placements(&current, &slice, n);
        assert!(!placements.is_empty(), "no valid placement for slice {k}");
        current = placements.into_iter().max_by(|a, b| cmp_components(a, b)).unwrap();
    }
    MultipartitionWithResidues::new(current, n)
}

/// Reference implementation used by the tests: enumerate every placement
/// sequence across all slices and keep the maximal final result.
pub fn compute_mip_exhaustive(
    i: &CompositionIndex,
    p: &[i64],
    n: i64,
) -> MultipartitionWithResidues {
    let dp = build_dp(i, p, n);
    let slices: Vec<Vec<i64>> =
        (1..=dp.max_height()).rev().map(|k| dp.slice(k)).filter(|s| !s.is_empty()).collect();
    let mut states: Vec<Components> = vec![Vec::new()];
    for slice in &slices {
        let mut next = Vec::new();
        for st in &states {
            next.extend(slice_placements(st, slice, n));
        }
        // per-step maximality, evaluated over the full enumeration
        let best = next.iter().cloned().max_by(|a, b| cmp_components(a, b)).unwrap();
        states = next.into_iter().filter(|c| cmp_components(c, &best) == Ordering::Equal).collect();
    }
    let best = states.into_iter().max_by(|a, b| cmp_components(a, b)).unwrap_or_default();
    MultipartitionWithResidues::new(best, n)
}

/// The vector i . sigma_0 - i for the longest element sigma_0 of the double
/// coset, under the right action of level n = i.level().
pub fn i_bullet(i: &CompositionIndex, coset: &DoubleCoset) -> Vec<i64> {
    let top = act_right_level(i.entries(), &coset.longest, i.level());
    top.iter().zip(i.entries()).map(|(a, b)| a - b).collect()
}
