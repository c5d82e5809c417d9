//! Basis and normal forms of the quadratic algebra `T(V)/(rel)`.
//!
//! With the relation solved for a leading pair (α,β), α ≠ β, the words with
//! no contiguous (α,β) factor ("avoiding words") form a basis of the
//! quotient. Coordinates on that basis are computed by per-degree exact
//! linear algebra: for each degree the reductions of the boundary words
//! `c·β` (c avoiding, ending in α) are solved from the linear system that
//! makes every `w·rel` reduce to zero. Naive single-rule rewriting is not
//! used; with letter-changing right-hand sides it need not terminate.
//!
//! An independent oracle ([`SliceOracle`]) computes the rank of the degree-m
//! slice of the two-sided ideal by direct sparse Gaussian elimination over
//! the raw word space, with no shared machinery, so the two routes can be
//! cross-checked.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::Series;
use crate::word::{enumerate_words, Alphabet, Element, QuadraticRelation, Word};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// The word-space sizes beyond which degree computations are refused.
pub const DEFAULT_WORD_GUARD: u64 = 200_000;

/// A sparse vector over `u32` coordinate indices, sorted by index, no zero
/// entries.
pub type SparseVec = Vec<(u32, Rational)>;

/// `acc += c * row`, merging sorted sparse vectors.
pub fn add_scaled(acc: &mut SparseVec, row: &[(u32, Rational)], c: &Rational) {
    if c.is_zero() || row.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(acc.len() + row.len());
    let mut i = 0;
    let mut j = 0;
    while i < acc.len() || j < row.len() {
        if j >= row.len() || (i < acc.len() && acc[i].0 < row[j].0) {
            out.push(acc[i].clone());
            i += 1;
        } else if i >= acc.len() || row[j].0 < acc[i].0 {
            let v = &row[j].1 * c;
            if !v.is_zero() {
                out.push((row[j].0, v));
            }
            j += 1;
        } else {
            let v = &acc[i].1 + &(&row[j].1 * c);
            if !v.is_zero() {
                out.push((acc[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *acc = out;
}

fn scale_vec(v: &mut SparseVec, c: &Rational) {
    if c.is_one() {
        return;
    }
    for (_, x) in v.iter_mut() {
        *x *= c;
    }
}

/// The designated off-diagonal word (α, β) the relation is solved for.
///
/// Invariants: α ≠ β and the relation's coefficient on (α, β) is 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LeadingPair {
    pub alpha: u8,
    pub beta: u8,
}

impl LeadingPair {
    pub fn new(alpha: u8, beta: u8, relation: &QuadraticRelation) -> Result<LeadingPair> {
        if alpha == beta {
            return Err(Error::Usage(format!(
                "leading pair must be off-diagonal, got ({}, {})",
                alpha + 1,
                beta + 1
            )));
        }
        if !relation.coeff_pair(alpha, beta).is_one() {
            return Err(Error::Usage(format!(
                "relation coefficient on (u{}, u{}) is {}, expected 1",
                alpha + 1,
                beta + 1,
                relation.coeff_pair(alpha, beta)
            )));
        }
        Ok(LeadingPair { alpha, beta })
    }
}

/// All loop-degree-`m` words containing no contiguous factor (α, β), in
/// deg-lex order.
pub fn avoiding_words(alphabet: &Alphabet, lp: LeadingPair, m: u32) -> Vec<Word> {
    enumerate_words(alphabet, m)
        .into_iter()
        .filter(|w| !w.contains_factor(lp.alpha, lp.beta))
        .collect()
}

/// Which route produced a Hilbert dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Series,
    AvoidingWords,
    Oracle,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct HilbertEntry {
    pub degree: u32,
    /// dimension by each route that was run at this degree
    pub by_route: Vec<(Route, u64)>,
    pub agreed: bool,
}

impl HilbertEntry {
    pub fn dim(&self) -> u64 {
        self.by_route[0].1
    }
}

/// Graded dimensions of the quotient algebra with per-entry provenance.
#[derive(Clone, Debug, serde::Serialize)]
pub struct HilbertTable {
    pub entries: Vec<HilbertEntry>,
    pub agreement: bool,
}

impl HilbertTable {
    pub fn from_routes(routes: Vec<(Route, Vec<Option<u64>>)>, n: usize) -> HilbertTable {
        let mut entries = Vec::with_capacity(n + 1);
        let mut agreement = true;
        for m in 0..=n {
            let by_route: Vec<(Route, u64)> = routes
                .iter()
                .filter_map(|(r, dims)| dims.get(m).copied().flatten().map(|d| (*r, d)))
                .collect();
            let agreed = by_route.windows(2).all(|w| w[0].1 == w[1].1);
            agreement &= agreed;
            entries.push(HilbertEntry {
                degree: m as u32,
                by_route,
                agreed,
            });
        }
        HilbertTable {
            entries,
            agreement,
        }
    }

    pub fn dims(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.dim()).collect()
    }
}

/// The loop-degree Hilbert denominator `1 - Σ_i t^{|u_i|} + t^D` of the
/// quotient algebra.
pub fn hilbert_denominator(alphabet: &Alphabet, relation_degree: u32, n: usize) -> Series {
    let mut terms: Vec<(usize, i64)> = alphabet
        .degrees()
        .iter()
        .map(|&d| (d as usize, -1))
        .collect();
    terms.push((relation_degree as usize, 1));
    Series::from_terms(n, &terms)
}

/// Hilbert dimensions through degree `n` by the generating-series route.
pub fn hilbert_from_series(
    alphabet: &Alphabet,
    relation_degree: u32,
    n: usize,
) -> Result<HilbertTable> {
    let dims = hilbert_series_dims(alphabet, relation_degree, n)?;
    Ok(HilbertTable::from_routes(
        vec![(Route::Series, dims.into_iter().map(Some).collect())],
        n,
    ))
}

pub fn hilbert_series_dims(
    alphabet: &Alphabet,
    relation_degree: u32,
    n: usize,
) -> Result<Vec<u64>> {
    let q = hilbert_denominator(alphabet, relation_degree, n);
    let inv = q.inverse()?;
    inv.coeffs()
        .iter()
        .enumerate()
        .map(|(m, c)| {
            c.to_i64().filter(|v| *v >= 0).map(|v| v as u64).ok_or_else(|| {
                Error::Inconsistency(format!(
                    "series dimension at degree {m} is {c}, not a non-negative integer"
                ))
            })
        })
        .collect()
}

enum Append {
    Avoid(u32),
    Bad(u32),
}

struct DegreeTable {
    avoiding: Vec<Word>,
    index: HashMap<Word, u32>,
    /// appends[x][i] = outcome of (avoiding word i at degree m - |x|) · x
    appends: Vec<Option<Vec<Append>>>,
    /// reductions of the boundary words, indexed by the ids in `appends`
    bad_rows: Vec<SparseVec>,
    bad_words: Vec<Word>,
}

/// Normal-form engine for one presentation: computes coordinates on the
/// avoiding-word basis, degree by degree, memoizing each degree's tables.
/// Values handed out are immutable; the memo behaves as an insert-if-absent
/// map, so the engine can be shared across threads.
pub struct QuotientEngine {
    alphabet: Arc<Alphabet>,
    relation: QuadraticRelation,
    lp: LeadingPair,
    guard: u64,
    tables: Mutex<Vec<Arc<DegreeTable>>>,
}

impl QuotientEngine {
    pub fn new(
        relation: QuadraticRelation,
        lp: LeadingPair,
        guard: u64,
    ) -> QuotientEngine {
        QuotientEngine {
            alphabet: relation.alphabet().clone(),
            relation,
            lp,
            guard,
            tables: Mutex::new(Vec::new()),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn relation(&self) -> &QuadraticRelation {
        &self.relation
    }

    pub fn leading_pair(&self) -> LeadingPair {
        self.lp
    }

    pub fn guard(&self) -> u64 {
        self.guard
    }

    /// True when degree `m` fits under the word-space guard.
    pub fn degree_feasible(&self, m: u32) -> bool {
        self.alphabet.word_counts(m as usize)[m as usize] <= self.guard
    }

    /// Number of avoiding words at degree `m` (building tables as needed).
    pub fn dimension(&self, m: u32) -> Result<u64> {
        Ok(self.table(m)?.avoiding.len() as u64)
    }

    pub fn basis(&self, m: u32) -> Result<Vec<Word>> {
        Ok(self.table(m)?.avoiding.clone())
    }

    fn table(&self, m: u32) -> Result<Arc<DegreeTable>> {
        let mut tables = self.tables.lock().unwrap();
        while tables.len() <= m as usize {
            let next = tables.len() as u32;
            let t = self.build_degree(next, &tables)?;
            tables.push(Arc::new(t));
        }
        Ok(tables[m as usize].clone())
    }

    fn build_degree(&self, m: u32, lower: &[Arc<DegreeTable>]) -> Result<DegreeTable> {
        let words = self.alphabet.word_counts(m as usize)[m as usize];
        if words > self.guard {
            return Err(Error::GuardRefused {
                degree: m as usize,
                words,
                limit: self.guard,
            });
        }
        let avoiding = avoiding_words(&self.alphabet, self.lp, m);
        let index: HashMap<Word, u32> = avoiding
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        let (alpha, beta) = (self.lp.alpha, self.lp.beta);

        // append outcomes per letter; bad ids assigned in source order
        let mut appends: Vec<Option<Vec<Append>>> = Vec::new();
        let mut bad_words = Vec::new();
        for x in 0..self.alphabet.len() as u8 {
            let d = self.alphabet.degree(x);
            if d > m {
                appends.push(None);
                continue;
            }
            let src = &lower[(m - d) as usize];
            let outcomes = src
                .avoiding
                .iter()
                .map(|c| {
                    if x == beta && c.letters().last() == Some(&alpha) {
                        let id = bad_words.len() as u32;
                        bad_words.push(c.append(x));
                        Append::Bad(id)
                    } else {
                        Append::Avoid(index[&c.append(x)])
                    }
                })
                .collect();
            appends.push(Some(outcomes));
        }

        let mut table = DegreeTable {
            avoiding,
            index,
            appends,
            bad_rows: vec![Vec::new(); bad_words.len()],
            bad_words,
        };
        if !table.bad_words.is_empty() {
            self.solve_bad_rows(m, lower, &mut table)?;
        }
        Ok(table)
    }

    /// Solve the reductions of the boundary words at degree `m` from the
    /// equations `N(c' · rel) = 0`, one per avoiding word `c'` of degree
    /// `m - D`. Equations whose boundary word ends in (α, α, β) can couple
    /// through a (β, β) relation term; everything else resolves directly.
    fn solve_bad_rows(
        &self,
        m: u32,
        lower: &[Arc<DegreeTable>],
        table: &mut DegreeTable,
    ) -> Result<()> {
        let big_d = self.relation.degree();
        let (alpha, beta) = (self.lp.alpha, self.lp.beta);
        let pairs = self.relation.pairs();
        let eq_src = &lower[(m - big_d) as usize];
        let d_alpha = self.alphabet.degree(alpha);
        let mut solved = vec![false; table.bad_words.len()];
        let mut coupled: Vec<(u32, HashMap<u32, Rational>, SparseVec)> = Vec::new();

        // two passes: boundary words not ending (α, α, β) first; they never
        // reference unsolved rows
        let mut order: Vec<u32> = (0..eq_src.avoiding.len() as u32).collect();
        order.sort_by_key(|&ci| eq_src.avoiding[ci as usize].letters().last() == Some(&alpha));

        for ci in order {
            let cprime = &eq_src.avoiding[ci as usize];
            // the unknown this equation determines: id of (c'·α)·β
            let cmid_deg = m - big_d + d_alpha;
            let cmid_idx = lower[cmid_deg as usize].index[&cprime.append(alpha)];
            let self_id = match table.appends[beta as usize].as_ref().unwrap()[cmid_idx as usize]
            {
                Append::Bad(id) => id,
                Append::Avoid(_) => unreachable!("c'·α ends with α, so ·β is a boundary word"),
            };

            let mut known: SparseVec = Vec::new();
            let mut unknowns: HashMap<u32, Rational> = HashMap::new();
            for (i, j, coef) in &pairs {
                let di = self.alphabet.degree(*i);
                let k1 = m - big_d + di;
                // first append: c' · i at degree k1
                let src1 = &lower[(m - big_d) as usize];
                let step1 = if *i == beta && cprime.letters().last() == Some(&alpha) {
                    // boundary word at a lower degree; its reduction is known
                    let t1 = &lower[k1 as usize];
                    let id = match t1.appends[beta as usize].as_ref().unwrap()
                        [src1.index[cprime] as usize]
                    {
                        Append::Bad(id) => id,
                        Append::Avoid(_) => unreachable!(),
                    };
                    t1.bad_rows[id as usize].clone()
                } else {
                    vec![(lower[k1 as usize].index[&cprime.append(*i)], Rational::one())]
                };
                // second append into degree m
                for (idx, c1) in &step1 {
                    let c = coef * c1;
                    match table.appends[*j as usize].as_ref().unwrap()[*idx as usize] {
                        Append::Avoid(t) => add_scaled(&mut known, &[(t, Rational::one())], &c),
                        Append::Bad(id) => {
                            if solved[id as usize] {
                                add_scaled(&mut known, &table.bad_rows[id as usize], &c);
                            } else {
                                let e = unknowns.entry(id).or_default();
                                *e += &c;
                                if e.is_zero() {
                                    unknowns.remove(&id);
                                }
                            }
                        }
                    }
                }
            }
            if unknowns.len() == 1 {
                let (&id, c) = unknowns.iter().next().unwrap();
                let mut row = known;
                scale_vec(&mut row, &(-c.recip()));
                table.bad_rows[id as usize] = row;
                solved[id as usize] = true;
            } else if unknowns.is_empty() {
                return Err(Error::Inconsistency(format!(
                    "degree-{m} reduction system lost its unknown for equation {cprime}"
                )));
            } else {
                coupled.push((self_id, unknowns, known));
            }
        }

        // late equations can resolve unknowns referenced by earlier ones;
        // substitute to a fixpoint before solving what is left as a block
        loop {
            let mut progressed = false;
            let mut remaining = Vec::with_capacity(coupled.len());
            for (self_id, mut unknowns, mut known) in coupled.drain(..) {
                let ids: Vec<u32> = unknowns.keys().copied().collect();
                for id in ids {
                    if solved[id as usize] {
                        let c = unknowns.remove(&id).unwrap();
                        let row = table.bad_rows[id as usize].clone();
                        add_scaled(&mut known, &row, &c);
                    }
                }
                if unknowns.len() == 1 {
                    let (&id, c) = unknowns.iter().next().unwrap();
                    let mut row = known;
                    scale_vec(&mut row, &(-c.recip()));
                    table.bad_rows[id as usize] = row;
                    solved[id as usize] = true;
                    progressed = true;
                } else if unknowns.is_empty() {
                    if !known.is_empty() {
                        return Err(Error::Inconsistency(format!(
                            "degree-{m} reduction system is overdetermined"
                        )));
                    }
                    progressed = true;
                } else {
                    remaining.push((self_id, unknowns, known));
                }
            }
            coupled = remaining;
            if !progressed {
                break;
            }
        }

        if !coupled.is_empty() {
            self.solve_coupled(m, &coupled, table, &mut solved)?;
        }
        if let Some(unsolved) = solved.iter().position(|s| !s) {
            return Err(Error::Inconsistency(format!(
                "degree-{m} reduction system left {} unresolved",
                table.bad_words[unsolved]
            )));
        }
        Ok(())
    }

    /// Exact Gaussian elimination on the coupled block.
    #[allow(clippy::needless_range_loop)]
    fn solve_coupled(
        &self,
        m: u32,
        coupled: &[(u32, HashMap<u32, Rational>, SparseVec)],
        table: &mut DegreeTable,
        solved: &mut [bool],
    ) -> Result<()> {
        // dense system over the coupled unknown ids
        let mut ids: Vec<u32> = coupled
            .iter()
            .flat_map(|(_, unk, _)| unk.keys().copied())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let pos: HashMap<u32, usize> = ids.iter().enumerate().map(|(p, &id)| (id, p)).collect();
        let n = ids.len();
        if coupled.len() != n {
            return Err(Error::Inconsistency(format!(
                "degree-{m} coupled reduction block is not square: {} equations, {n} unknowns",
                coupled.len()
            )));
        }
        let mut mat: Vec<Vec<Rational>> = coupled
            .iter()
            .map(|(_, unk, _)| {
                let mut row = vec![Rational::zero(); n];
                for (id, c) in unk {
                    row[pos[id]] = c.clone();
                }
                row
            })
            .collect();
        let mut rhs: Vec<SparseVec> = coupled
            .iter()
            .map(|(_, _, known)| {
                let mut k = known.clone();
                scale_vec(&mut k, &-Rational::one());
                k
            })
            .collect();
        // forward elimination with partial pivoting by smallest bit size
        let mut piv_of_col = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for col in 0..n {
            let piv = (0..coupled.len())
                .filter(|&r| !used[r] && !mat[r][col].is_zero())
                .min_by_key(|&r| mat[r][col].bit_size())
                .ok_or_else(|| {
                    Error::Inconsistency(format!(
                        "degree-{m} coupled reduction block is singular at column {col}"
                    ))
                })?;
            used[piv] = true;
            piv_of_col[col] = piv;
            for r in 0..coupled.len() {
                if r != piv && !used[r] && !mat[r][col].is_zero() {
                    let f = &mat[r][col] / &mat[piv][col];
                    for c2 in col..n {
                        if !mat[piv][c2].is_zero() {
                            let delta = &mat[piv][c2] * &f;
                            mat[r][c2] -= &delta;
                        }
                    }
                    let pivot_rhs = rhs[piv].clone();
                    add_scaled(&mut rhs[r], &pivot_rhs, &-f);
                }
            }
        }
        // back substitution
        let mut solution: Vec<Option<SparseVec>> = vec![None; n];
        for col in (0..n).rev() {
            let piv = piv_of_col[col];
            let mut acc = rhs[piv].clone();
            for c2 in col + 1..n {
                if !mat[piv][c2].is_zero() {
                    let sub = solution[c2].as_ref().unwrap().clone();
                    add_scaled(&mut acc, &sub, &-&mat[piv][c2]);
                }
            }
            scale_vec(&mut acc, &mat[piv][col].recip());
            solution[col] = Some(acc);
        }
        for (p, id) in ids.iter().enumerate() {
            table.bad_rows[*id as usize] = solution[p].take().unwrap();
            solved[*id as usize] = true;
        }
        Ok(())
    }

    /// Coordinates of a word on the avoiding basis of its degree.
    pub fn reduce_word(&self, w: &Word) -> Result<SparseVec> {
        let mut state: SparseVec = vec![(0, Rational::one())];
        let mut deg = 0u32;
        for &x in w.letters() {
            deg += self.alphabet.degree(x);
            let t = self.table(deg)?;
            let outcomes = t.appends[x as usize].as_ref().unwrap();
            let mut next: SparseVec = Vec::new();
            for (idx, c) in &state {
                match outcomes[*idx as usize] {
                    Append::Avoid(j) => add_scaled(&mut next, &[(j, Rational::one())], c),
                    Append::Bad(id) => add_scaled(&mut next, &t.bad_rows[id as usize], c),
                }
            }
            state = next;
        }
        Ok(state)
    }

    /// Coordinates of a homogeneous element on the avoiding basis of its
    /// degree: the unique representation modulo the ideal slice. Linear,
    /// and vanishes exactly on the slice.
    pub fn coordinates(&self, x: &Element) -> Result<Coordinates> {
        if x.is_zero() {
            return Err(Error::Usage(
                "zero element has no well-defined degree; reduce terms directly".into(),
            ));
        }
        let degree = x.homogeneous_degree().ok_or_else(|| {
            Error::Usage("quotient coordinates need a homogeneous element".into())
        })?;
        let mut acc: SparseVec = Vec::new();
        for (w, c) in x.iter() {
            let red = self.reduce_word(w)?;
            add_scaled(&mut acc, &red, c);
        }
        Ok(Coordinates {
            degree,
            entries: acc,
        })
    }

    /// The avoiding word behind a coordinate index.
    pub fn basis_word(&self, m: u32, idx: u32) -> Result<Word> {
        Ok(self.table(m)?.avoiding[idx as usize].clone())
    }
}

/// Coordinates of a homogeneous element on the avoiding-word basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Coordinates {
    pub degree: u32,
    pub entries: SparseVec,
}

impl Coordinates {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Incremental reduced echelon form over sparse rational rows. Pivots are
/// chosen by smallest numerator/denominator bit size, ties broken toward
/// the smallest column; rows already installed are kept fully reduced
/// against every pivot.
#[derive(Clone, Default)]
pub struct Rref {
    /// pivot column -> normalized row (pivot coefficient 1)
    pivots: HashMap<u32, SparseVec>,
    pub rank: u64,
}

impl Rref {
    pub fn new() -> Rref {
        Rref::default()
    }

    /// Reduce a vector against the echelon rows (exact).
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            let hit = v.iter().find(|(c, _)| self.pivots.contains_key(c)).cloned();
            match hit {
                None => return v,
                Some((col, coef)) => {
                    add_scaled(&mut v, &self.pivots[&col], &-coef);
                }
            }
        }
    }

    /// Reduce `row` and, if nonzero, install it as a new pivot row.
    /// Returns true when the row was independent of the span so far.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let (col, coef) = row
            .iter()
            .min_by_key(|(c, v)| (v.bit_size(), *c))
            .cloned()
            .unwrap();
        scale_vec(&mut row, &coef.recip());
        let touched: Vec<u32> = self
            .pivots
            .iter()
            .filter(|(_, pr)| pr.iter().any(|(c, _)| *c == col))
            .map(|(pc, _)| *pc)
            .collect();
        for pc in touched {
            let mut pr = self.pivots.remove(&pc).unwrap();
            let coef = pr
                .iter()
                .find(|(c, _)| *c == col)
                .map(|(_, v)| v.clone())
                .unwrap();
            add_scaled(&mut pr, &row, &-coef);
            self.pivots.insert(pc, pr);
        }
        self.pivots.insert(col, row);
        self.rank += 1;
        true
    }
}

/// Echelon form of a degree slice of the two-sided ideal, produced by
/// direct sparse Gaussian elimination over the raw word space; the
/// independent cross-check for every dimension the engine computes.
pub struct SliceEchelon {
    rref: Rref,
    pub rank: u64,
    pub word_count: u64,
    words: Vec<Word>,
    index: HashMap<Word, u32>,
}

impl SliceEchelon {
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.rref.reduce(v)
    }

    pub fn word_vector(&self, x: &Element) -> Result<SparseVec> {
        let mut v: SparseVec = Vec::new();
        for (w, c) in x.iter() {
            let idx = *self.index.get(w).ok_or_else(|| {
                Error::Usage(format!("word {w} is not in this degree slice"))
            })?;
            add_scaled(&mut v, &[(idx, Rational::one())], c);
        }
        Ok(v)
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        Ok(self.reduce(self.word_vector(x)?).is_empty())
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }
}

/// Memoized per-degree ideal-slice elimination for one relation.
pub struct SliceOracle {
    relation: QuadraticRelation,
    guard: u64,
    memo: Mutex<HashMap<u32, Arc<SliceEchelon>>>,
}

impl SliceOracle {
    pub fn new(relation: QuadraticRelation, guard: u64) -> SliceOracle {
        SliceOracle {
            relation,
            guard,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn relation(&self) -> &QuadraticRelation {
        &self.relation
    }

    /// Rank over the rationals of the span of `w1 · rel · w2` at loop degree
    /// `m`, by exact Gaussian elimination with pivots chosen by smallest
    /// coefficient bit size.
    pub fn rank(&self, m: u32) -> Result<u64> {
        Ok(self.echelon(m)?.rank)
    }

    pub fn echelon(&self, m: u32) -> Result<Arc<SliceEchelon>> {
        if let Some(e) = self.memo.lock().unwrap().get(&m) {
            return Ok(e.clone());
        }
        let built = Arc::new(self.build(m)?);
        // insert-if-absent: a concurrent builder may have won the race
        let mut memo = self.memo.lock().unwrap();
        Ok(memo.entry(m).or_insert(built).clone())
    }

    fn build(&self, m: u32) -> Result<SliceEchelon> {
        let alphabet = self.relation.alphabet();
        let count = alphabet.word_counts(m as usize)[m as usize];
        if count > self.guard {
            return Err(Error::GuardRefused {
                degree: m as usize,
                words: count,
                limit: self.guard,
            });
        }
        let words = enumerate_words(alphabet, m);
        let index: HashMap<Word, u32> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        let mut rref = Rref::new();
        let big_d = self.relation.degree();
        if m >= big_d {
            let pairs = self.relation.pairs();
            let free = m - big_d;
            for s1 in 0..=free {
                let lefts = enumerate_words(alphabet, s1);
                let rights = enumerate_words(alphabet, free - s1);
                for w1 in &lefts {
                    for w2 in &rights {
                        let mut row: SparseVec = Vec::new();
                        for (i, j, c) in &pairs {
                            let w = w1.concat(&Word::new(vec![*i, *j])).concat(w2);
                            add_scaled(&mut row, &[(index[&w], Rational::one())], c);
                        }
                        rref.insert(row);
                    }
                }
            }
        }
        Ok(SliceEchelon {
            rank: rref.rank,
            rref,
            word_count: words.len() as u64,
            words,
            index,
        })
    }
}

/// Checks that the avoiding words are a complement of the degree-`m` ideal
/// slice: the counts match and the avoiding words stay independent modulo
/// the slice.
pub fn verify_complement_basis(
    oracle: &SliceOracle,
    lp: LeadingPair,
    m: u32,
) -> Result<bool> {
    let ech = oracle.echelon(m)?;
    let alphabet = oracle.relation.alphabet();
    let avoiding = avoiding_words(alphabet, lp, m);
    if ech.word_count - ech.rank != avoiding.len() as u64 {
        return Ok(false);
    }
    // independence modulo the slice: extend the elimination with the unit
    // vectors of the avoiding words; all of them must stay independent
    let mut ext = ech.rref.clone();
    for w in &avoiding {
        let unit = vec![(ech.index[w], Rational::one())];
        if !ext.insert(unit) {
            return Ok(false);
        }
    }
    Ok(true)
}
