//! Graded local cohomology of monomial quotients `R/I`.
//!
//! The Taylor complex resolves `R/I`; dualizing into `omega_R = R(-n)` and
//! taking cohomology gives `E^i = Ext^i(R/I, omega_R)`, and local duality
//! turns that into `h^i(R/I)_j = dim E^{n-i}_{-j}`.
//!
//! Every map in the dual Taylor complex is multigraded, so the degree-`d`
//! matrix is block diagonal with one block per multidegree `a`, `|a| = d`.
//! The block at `a` only depends on which generator subsets `S` satisfy
//! `lcm(S) >= 1 - a` componentwise; [`ExtEngine`] computes each distinct
//! block once and counts how many multidegrees of each degree share it.
//! [`ext_dimensions_by_degree`] assembles the whole degree-`d` matrices
//! instead and serves as an independent check.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{gin, GinOptions};
use crate::hilbert::dimension;
use crate::ideal::MonomialIdeal;
use crate::linalg::rank_i64;
use crate::ring::{enumerate_monomials, monomial_count, Monomial, TermOrder};

/// Largest number of generators accepted for the Taylor complex.
pub const TAYLOR_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct DegreeWindow {
    lo: i64,
    hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty degree window {lo}:{hi}")));
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, j: i64) -> bool {
        self.lo <= j && j <= self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &DegreeWindow) -> DegreeWindow {
        DegreeWindow { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }
}

impl TryFrom<[i64; 2]> for DegreeWindow {
    type Error = Error;
    fn try_from(v: [i64; 2]) -> Result<Self> {
        DegreeWindow::new(v[0], v[1])
    }
}

impl From<DegreeWindow> for [i64; 2] {
    fn from(w: DegreeWindow) -> Self {
        [w.lo, w.hi]
    }
}

/// `j_hi = deg lcm(gens) + 1` bounds the regularity from the Taylor shifts;
/// `j_lo = -(j_hi + n + 2)`.
pub fn default_window(ideal: &MonomialIdeal) -> DegreeWindow {
    let hi = ideal.lcm_all().degree() as i64 + 1;
    DegreeWindow { lo: -(hi + ideal.n() as i64 + 2), hi }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: i64,
    pub monomial: Monomial,
}

/// Homogeneous map between graded free modules `⊕ R(-source[c]) -> ⊕ R(-target[r])`
/// with signed monomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub entries: Vec<MapEntry>,
}

impl GradedMap {
    /// `Hom(-, R(-n))` of this map.
    pub fn dual(&self, n: usize) -> GradedMap {
        let n = n as i64;
        GradedMap {
            source: self.target.iter().map(|g| n - g).collect(),
            target: self.source.iter().map(|g| n - g).collect(),
            entries: self
                .entries
                .iter()
                .map(|e| MapEntry { row: e.col, col: e.row, coeff: e.coeff, monomial: e.monomial.clone() })
                .collect(),
        }
    }
}

/// Rank over Q of the degree-`j` component of `map`, assembled from the
/// monomial bases of every free summand.
pub fn graded_component_rank(map: &GradedMap, n: usize, j: i64) -> usize {
    let basis = |gens: &[i64]| -> Vec<Vec<Monomial>> {
        gens.iter()
            .map(|&g| if j - g < 0 { Vec::new() } else { enumerate_monomials(n, (j - g) as u32, TermOrder::Lex) })
            .collect()
    };
    let cols = basis(&map.source);
    let rows = basis(&map.target);
    let mut row_index: HashMap<(usize, &Monomial), usize> = HashMap::new();
    for (r, mons) in rows.iter().enumerate() {
        for m in mons {
            let k = row_index.len();
            row_index.insert((r, m), k);
        }
    }
    let mut col_offset = Vec::with_capacity(cols.len());
    let mut ncols = 0;
    for mons in &cols {
        col_offset.push(ncols);
        ncols += mons.len();
    }
    if row_index.is_empty() || ncols == 0 {
        return 0;
    }
    let mut matrix = vec![vec![0i64; ncols]; row_index.len()];
    for e in &map.entries {
        for (k, w) in cols[e.col].iter().enumerate() {
            let image = w.mul(&e.monomial);
            let r = row_index[&(e.row, &image)];
            matrix[r][col_offset[e.col] + k] += e.coeff;
        }
    }
    rank_i64(&matrix)
}

/// Free complex `F_p -> ... -> F_1 -> F_0 = R`, modules given by the degrees
/// of their generators; `differentials[k]` maps `F_{k+1}` to `F_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFreeComplex {
    pub n: usize,
    pub modules: Vec<Vec<i64>>,
    pub differentials: Vec<GradedMap>,
}

impl GradedFreeComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    /// Twists `-deg` of each summand, per homological position.
    pub fn shifts(&self) -> Vec<Vec<i64>> {
        self.modules.iter().map(|m| m.iter().map(|g| -g).collect()).collect()
    }

    /// Checks `d_k ∘ d_{k+1} = 0` symbolically.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|pair| {
            let (lower, upper) = (&pair[0], &pair[1]);
            let mut acc: HashMap<(usize, usize, Monomial), i64> = HashMap::new();
            for u in &upper.entries {
                for l in lower.entries.iter().filter(|l| l.col == u.row) {
                    *acc.entry((l.row, u.col, l.monomial.mul(&u.monomial))).or_insert(0) += l.coeff * u.coeff;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

fn subsets_by_size(mu: usize, max_size: usize) -> Vec<Vec<u32>> {
    let mut levels = vec![Vec::new(); max_size.min(mu) + 1];
    for mask in 0u32..(1u32 << mu) {
        let k = mask.count_ones() as usize;
        if k <= max_size {
            levels[k].push(mask);
        }
    }
    levels
}

fn lcm_of(gens: &[Monomial], n: usize, mask: u32) -> Monomial {
    (0..gens.len()).filter(|&t| mask & (1 << t) != 0).fold(Monomial::one(n), |acc, t| acc.lcm(&gens[t]))
}

/// `(-1)^{#elements of T below t}`: the Taylor sign of removing `t` from `T`.
fn taylor_sign(t_mask: u32, t: usize) -> i64 {
    if (t_mask & ((1u32 << t) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_cap(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.gens().len() > TAYLOR_CAP {
        return Err(Error::GeneratorCap { count: ideal.gens().len(), cap: TAYLOR_CAP });
    }
    Ok(())
}

/// The Taylor resolution of `R/I`; position `k` has one summand
/// `R(-deg lcm S)` for each `k`-subset `S` of the generators.
pub fn taylor_complex(ideal: &MonomialIdeal) -> Result<GradedFreeComplex> {
    check_cap(ideal)?;
    let n = ideal.n();
    let gens = ideal.gens();
    let mu = gens.len();
    let levels = subsets_by_size(mu, mu);
    let lcms: Vec<Vec<Monomial>> = levels.iter().map(|l| l.iter().map(|&m| lcm_of(gens, n, m)).collect()).collect();
    let index: Vec<HashMap<u32, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, &m)| (m, i)).collect()).collect();
    let modules = lcms.iter().map(|l| l.iter().map(|m| m.degree() as i64).collect()).collect::<Vec<Vec<i64>>>();
    let mut differentials = Vec::with_capacity(mu);
    for k in 1..=mu {
        let mut entries = Vec::new();
        for (col, &mask) in levels[k].iter().enumerate() {
            for t in (0..mu).filter(|&t| mask & (1 << t) != 0) {
                let face = mask & !(1 << t);
                let row = index[k - 1][&face];
                let monomial = lcms[k][col].div(&lcms[k - 1][row]).expect("lcm of a subset divides");
                entries.push(MapEntry { row, col, coeff: taylor_sign(mask, t), monomial });
            }
        }
        differentials.push(GradedMap { source: modules[k].clone(), target: modules[k - 1].clone(), entries });
    }
    Ok(GradedFreeComplex { n, modules, differentials })
}

/// `dim E^i_d` for `d` in `degrees`, from the dualized Taylor complex by
/// assembling and ranking the full degree-`d` matrices.
pub fn ext_dimensions_by_degree(
    ideal: &MonomialIdeal,
    i: usize,
    degrees: RangeInclusive<i64>,
) -> Result<BTreeMap<i64, u64>> {
    let complex = taylor_complex(ideal)?;
    let n = complex.n;
    let mut out = BTreeMap::new();
    if i >= complex.modules.len() {
        for d in degrees {
            out.insert(d, 0);
        }
        return Ok(out);
    }
    let dual_gens: Vec<i64> = complex.modules[i].iter().map(|g| n as i64 - g).collect();
    // coboundary out of position i is the dual of d_{i+1}; into position i the dual of d_i
    let outgoing = complex.differentials.get(i).map(|d| d.dual(n));
    let incoming = i.checked_sub(1).map(|k| complex.differentials[k].dual(n));
    for d in degrees {
        let size: u128 = dual_gens.iter().map(|&g| monomial_count(n, d - g)).sum();
        let r_out = outgoing.as_ref().map_or(0, |m| graded_component_rank(m, n, d));
        let r_in = incoming.as_ref().map_or(0, |m| graded_component_rank(m, n, d));
        out.insert(d, (size - r_out as u128 - r_in as u128) as u64);
    }
    Ok(out)
}

/// One multigraded block class: per variable, the least exponent the lcm of
/// a subset must reach, and the cohomology of the resulting block complex.
#[derive(Debug, Clone)]
struct BlockClass {
    /// For each variable either `None` (free: `a_i >= 1`) or the range of
    /// `a_i` values `lo..=hi` (all `<= 0`) sharing this block.
    ranges: Vec<Option<(i64, i64)>>,
    /// `dim H^k` of the block for `k = 0..=n`.
    cohomology: Vec<u64>,
}

/// Multigraded Ext engine for `R/I`.
#[derive(Debug, Clone)]
pub struct ExtEngine {
    n: usize,
    classes: Vec<BlockClass>,
}

impl ExtEngine {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        let n = ideal.n();
        let gens: Vec<Vec<u32>> = ideal.gens().iter().map(|g| g.exponents().to_vec()).collect();
        // thresholds per variable: 0 (no constraint) then each distinct positive exponent
        let thresholds: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                let mut t: Vec<u32> = gens.iter().map(|g| g[v]).filter(|&e| e > 0).collect();
                t.push(0);
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for t in &thresholds {
            tuples = tuples
                .into_iter()
                .flat_map(|prefix| {
                    (0..t.len()).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        let classes = tuples
            .par_iter()
            .filter_map(|tuple| {
                let th: Vec<u32> = tuple.iter().zip(&thresholds).map(|(&k, t)| t[k]).collect();
                let cohomology = block_cohomology(n, &gens, &th);
                if cohomology.iter().all(|&h| h == 0) {
                    return None;
                }
                let ranges = tuple
                    .iter()
                    .zip(&thresholds)
                    .map(|(&k, t)| {
                        if k == 0 {
                            None
                        } else {
                            // c = 1 - a ranges over (t[k-1], t[k]]
                            Some((1 - t[k] as i64, -(t[k - 1] as i64)))
                        }
                    })
                    .collect();
                Some(BlockClass { ranges, cohomology })
            })
            .collect();
        Ok(ExtEngine { n, classes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim E^i_d` for every `d` in `degrees`.
    pub fn ext_dimensions(&self, i: usize, degrees: RangeInclusive<i64>) -> BTreeMap<i64, u64> {
        let mut out: BTreeMap<i64, u64> = degrees.clone().map(|d| (d, 0)).collect();
        if i > self.n {
            return out;
        }
        let (dmin, dmax) = (*degrees.start(), *degrees.end());
        for class in self.classes.iter().filter(|c| c.cohomology[i] > 0) {
            for (d, count) in multidegree_counts(&class.ranges, dmin, dmax) {
                *out.get_mut(&d).expect("in range") += count * class.cohomology[i];
            }
        }
        out
    }

    /// Whether `E^i` is nonzero in some degree (not just in a window).
    pub fn ext_nonzero(&self, i: usize) -> bool {
        i <= self.n && self.classes.iter().any(|c| c.cohomology[i] > 0)
    }

    pub fn table(&self, window: DegreeWindow) -> LCTable {
        let n = self.n;
        let mut rows = vec![vec![0u64; window.len()]; n + 1];
        for (i, row) in rows.iter_mut().enumerate() {
            let dims = self.ext_dimensions(n - i, -window.hi..=-window.lo);
            for (k, j) in window.degrees().enumerate() {
                row[k] = dims[&-j];
            }
        }
        LCTable { n, window, rows }
    }
}

/// `dim H^k`, `k = 0..=n`, of the block at thresholds `th`: the cochain
/// complex spanned by generator subsets `S` with `lcm(S) >= th`.
///
/// Those subsets are closed under enlargement, so the block is the quotient
/// of the acyclic cochain complex of the full simplex by that of
/// `D = {S : lcm(S) does not reach th}`, giving `H^k = H~^{k-2}(D)`.
/// `D` is the union of the full simplices on `G_v = {g : g_v < th_v}` over
/// the variables with `th_v > 0`, so by the nerve lemma it has the
/// cohomology of the nerve of that cover, a complex on at most `n` vertices.
fn block_cohomology(n: usize, gens: &[Vec<u32>], th: &[u32]) -> Vec<u64> {
    let mut out = vec![0u64; n + 1];
    let constrained = th.iter().any(|&t| t > 0);
    if gens.is_empty() {
        // only the empty subset, with lcm 1
        out[0] = u64::from(!constrained);
        return out;
    }
    if !constrained {
        return out;
    }
    let words = gens.len().div_ceil(64);
    let cover: Vec<Vec<u64>> = (0..n)
        .filter(|&v| th[v] > 0)
        .map(|v| {
            let mut bits = vec![0u64; words];
            for (k, g) in gens.iter().enumerate() {
                if g[v] < th[v] {
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
            bits
        })
        .filter(|bits| bits.iter().any(|&w| w != 0))
        .collect();
    let m = cover.len();
    // the empty face always qualifies: all generators lie in the empty intersection
    let is_face = |mask: u32| -> bool {
        mask == 0
            || (0..words)
                .any(|w| (0..m).filter(|&t| mask & (1 << t) != 0).fold(u64::MAX, |acc, t| acc & cover[t][w]) != 0)
    };
    // faces[s] = nerve faces with s vertices; size s is simplicial dimension s - 1
    let mut faces: Vec<Vec<u32>> = vec![Vec::new(); m + 2];
    for mask in 0u32..(1 << m) {
        if is_face(mask) {
            faces[mask.count_ones() as usize].push(mask);
        }
    }
    let ranks: Vec<usize> = (0..=m)
        .map(|s| {
            let (src, dst) = (&faces[s], &faces[s + 1]);
            if src.is_empty() || dst.is_empty() {
                return 0;
            }
            let row_of: HashMap<u32, usize> = dst.iter().enumerate().map(|(i, &f)| (f, i)).collect();
            let mut matrix = vec![vec![0i64; src.len()]; dst.len()];
            for (col, &f) in src.iter().enumerate() {
                for t in (0..m).filter(|&t| f & (1 << t) == 0) {
                    let big = f | (1 << t);
                    if let Some(&row) = row_of.get(&big) {
                        matrix[row][col] = taylor_sign(big, t);
                    }
                }
            }
            rank_i64(&matrix)
        })
        .collect();
    // H^k of the block is the reduced cohomology of the nerve in dimension k - 2,
    // carried by faces with k - 1 vertices
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let s = k - 1;
        if s > m {
            break;
        }
        let before = if s == 0 { 0 } else { ranks[s - 1] };
        *slot = (faces[s].len() - ranks[s] - before) as u64;
    }
    out
}

/// Cohomology of the block complex spanned by subsets whose lcm reaches `th`,
/// by direct elimination on the Taylor subsets (test oracle).
#[cfg(test)]
fn block_cohomology_direct(n: usize, levels: &[Vec<u32>], lcms: &[Vec<Vec<u32>>], th: &[u32]) -> Vec<u64> {
    let qualifies = |e: &Vec<u32>| e.iter().zip(th).all(|(a, b)| a >= b);
    let members: Vec<Vec<u32>> = levels
        .iter()
        .zip(lcms)
        .map(|(l, ls)| l.iter().zip(ls).filter(|(_, e)| qualifies(e)).map(|(&m, _)| m).collect())
        .collect();
    let mu_bits: u32 = levels.iter().flatten().fold(0, |acc, &m| acc | m);
    // rank of the coboundary from level k to level k + 1
    let ranks: Vec<usize> = (0..=n)
        .map(|k| {
            let (Some(src), Some(dst)) = (members.get(k), members.get(k + 1)) else { return 0 };
            if src.is_empty() || dst.is_empty() {
                return 0;
            }
            let row_of: HashMap<u32, usize> = dst.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let mut matrix = vec![vec![0i64; src.len()]; dst.len()];
            for (col, &s) in src.iter().enumerate() {
                let mut free = mu_bits & !s;
                while free != 0 {
                    let t = free.trailing_zeros() as usize;
                    free &= free - 1;
                    let big = s | (1 << t);
                    if let Some(&row) = row_of.get(&big) {
                        matrix[row][col] = taylor_sign(big, t);
                    }
                }
            }
            rank_i64(&matrix)
        })
        .collect();
    (0..=n)
        .map(|k| {
            let size = members.get(k).map_or(0, Vec::len);
            let before = if k == 0 { 0 } else { ranks[k - 1] };
            (size - ranks[k] - before) as u64
        })
        .collect()
}

/// For each total degree `d` in `[dmin, dmax]`, the number of integer vectors
/// with `a_i` in the given range (or `a_i >= 1` when free) summing to `d`.
fn multidegree_counts(ranges: &[Option<(i64, i64)>], dmin: i64, dmax: i64) -> Vec<(i64, u64)> {
    // bounded coordinates first: their partial sums stay in a small range
    let mut dist: BTreeMap<i64, u64> = BTreeMap::from([(0, 1)]);
    for &(lo, hi) in ranges.iter().flatten() {
        let mut next = BTreeMap::new();
        for (&s, &c) in &dist {
            for a in lo..=hi {
                *next.entry(s + a).or_insert(0) += c;
            }
        }
        dist = next;
    }
    for _ in ranges.iter().filter(|r| r.is_none()) {
        let mut next = BTreeMap::new();
        for (&s, &c) in &dist {
            for a in 1..=(dmax - s) {
                *next.entry(s + a).or_insert(0) += c;
            }
        }
        dist = next;
    }
    dist.into_iter().filter(|(d, _)| (dmin..=dmax).contains(d)).collect()
}

/// `dim E^i_d` (with `E^i = Ext^i(R/I, omega_R)`) for `d` in the window.
pub fn ext_dimensions(ideal: &MonomialIdeal, i: usize, window: DegreeWindow) -> Result<BTreeMap<i64, u64>> {
    Ok(ExtEngine::new(ideal)?.ext_dimensions(i, window.degrees()))
}

/// Window of graded local cohomology dimensions `h^i(R/I)_j`, `0 <= i <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LCTable {
    n: usize,
    window: DegreeWindow,
    rows: Vec<Vec<u64>>,
}

impl LCTable {
    pub fn zero(n: usize, window: DegreeWindow) -> Self {
        LCTable { n, window, rows: vec![vec![0; window.len()]; n + 1] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    /// `h^i_j`, zero outside the window or for `i > n`.
    pub fn get(&self, i: usize, j: i64) -> u64 {
        if i > self.n || !self.window.contains(j) {
            return 0;
        }
        self.rows[i][(j - self.window.lo) as usize]
    }

    pub fn set(&mut self, i: usize, j: i64, value: u64) {
        let k = (j - self.window.lo) as usize;
        self.rows[i][k] = value;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    /// Nonzero entries of row `i` as `j -> h^i_j`.
    pub fn row_map(&self, i: usize) -> BTreeMap<i64, u64> {
        self.window.degrees().zip(&self.rows[i]).filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v)).collect()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.rows[i].iter().all(|&v| v == 0)
    }

    /// Restriction to a sub-window (entries outside the table read as zero).
    pub fn restrict(&self, window: DegreeWindow) -> LCTable {
        let mut out = LCTable::zero(self.n, window);
        for i in 0..=self.n {
            for j in window.degrees() {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// First `(i, j)`, by increasing `i` then `j`, where the tables differ on
    /// the union of their windows.
    pub fn first_difference(&self, other: &LCTable) -> Option<(usize, i64)> {
        let w = self.window.hull(&other.window);
        (0..=self.n.max(other.n))
            .flat_map(|i| w.degrees().map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }

    /// Whether row `i` agrees with `other`'s row `i` on the union window.
    pub fn row_equal(&self, other: &LCTable, i: usize) -> bool {
        let w = self.window.hull(&other.window);
        w.degrees().all(|j| self.get(i, j) == other.get(i, j))
    }

    /// Entrywise `self <= other` on the union window.
    pub fn le(&self, other: &LCTable) -> bool {
        let w = self.window.hull(&other.window);
        (0..=self.n.max(other.n)).all(|i| w.degrees().all(|j| self.get(i, j) <= other.get(i, j)))
    }
}

#[derive(Serialize, Deserialize)]
struct LCTableRecord {
    n: usize,
    window: DegreeWindow,
    rows: BTreeMap<usize, BTreeMap<i64, u64>>,
}

impl Serialize for LCTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = (0..=self.n).map(|i| (i, self.row_map(i))).filter(|(_, r)| !r.is_empty()).collect();
        LCTableRecord { n: self.n, window: self.window, rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LCTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = LCTableRecord::deserialize(d)?;
        let mut t = LCTable::zero(rec.n, rec.window);
        for (i, row) in rec.rows {
            for (j, v) in row {
                if i > rec.n || !rec.window.contains(j) {
                    return Err(serde::de::Error::custom(format!("entry ({i}, {j}) outside the table")));
                }
                t.set(i, j, v);
            }
        }
        Ok(t)
    }
}

pub fn local_cohomology_table(ideal: &MonomialIdeal, window: DegreeWindow) -> Result<LCTable> {
    Ok(ExtEngine::new(ideal)?.table(window))
}

/// `(depth R/I, dim R/I)`.
pub fn depth_and_dim(ideal: &MonomialIdeal) -> Result<(usize, usize)> {
    let dim = dimension(ideal)?;
    let engine = ExtEngine::new(ideal)?;
    let mut window = default_window(ideal);
    let depth = loop {
        let table = engine.table(window);
        if let Some(i) = (0..=dim).find(|&i| !table.row_is_zero(i)) {
            break i;
        }
        if window.lo < -(1 << 20) {
            return Err(Error::Internal(format!("no nonzero local cohomology up to degree {}", window.lo)));
        }
        window.lo *= 2;
    };
    if (0..depth).any(|i| engine.ext_nonzero(ideal.n() - i)) {
        return Err(Error::Internal("local cohomology below the depth found outside the window".into()));
    }
    if ideal.is_strongly_stable().is_stable() && ideal.depth_positive_stable()? != (depth > 0) {
        return Err(Error::Internal("depth disagrees with the last-variable criterion".into()));
    }
    Ok((depth, dim))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SequentialCmVerdict {
    /// Tables of `R/I` and `R/gin(I)` agree on the window; not a proof.
    ConsistentWithSequentiallyCM,
    /// A window entry differs, which rules out sequential Cohen-Macaulayness.
    NotSequentiallyCM,
}

pub fn sequentially_cm_verdict(
    ideal: &MonomialIdeal,
    window: DegreeWindow,
    options: &GinOptions,
) -> Result<SequentialCmVerdict> {
    let generic = gin(&crate::parse::IdealInput::Monomial(ideal.clone()), options)?;
    sequentially_cm_verdict_with_gin(ideal, &generic, window)
}

pub fn sequentially_cm_verdict_with_gin(
    ideal: &MonomialIdeal,
    generic: &MonomialIdeal,
    window: DegreeWindow,
) -> Result<SequentialCmVerdict> {
    let a = local_cohomology_table(ideal, window)?;
    let b = local_cohomology_table(generic, window)?;
    Ok(if a == b { SequentialCmVerdict::ConsistentWithSequentiallyCM } else { SequentialCmVerdict::NotSequentiallyCM })
}

/// Table of `S/IS`, `S = R[t]`, from that of `R/I`:
/// `h^i(S/IS)_j = sum_{h >= j} h^{i-1}(R/I)_{h+1}`.
///
/// The input must vanish in its top degree, so that every tail sum is
/// determined; the output covers `[lo - 1, hi]`.
pub fn extension_recursion(table: &LCTable) -> Result<LCTable> {
    let w = table.window();
    if (0..=table.n()).any(|i| table.get(i, w.hi) != 0) {
        return Err(Error::TailNotClosed { degree: w.hi });
    }
    let out_window = DegreeWindow::new(w.lo - 1, w.hi)?;
    let mut out = LCTable::zero(table.n() + 1, out_window);
    for i in 1..=table.n() + 1 {
        // running tail sum from the top
        let mut tail = 0u64;
        for j in out_window.degrees().rev() {
            tail += table.get(i - 1, j + 1);
            out.set(i, j, tail);
        }
    }
    Ok(out)
}
