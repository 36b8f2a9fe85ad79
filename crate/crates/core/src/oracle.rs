//! Brute-force machinery that works from the operation tables alone: an
//! exhaustive search for embeddings into partial functions, exhaustive
//! enumeration of small axiom models, and a differential check of the two
//! against the axiom checker.
//!
//! The embedding search decomposes a representation on a base `{1..k}`
//! into its rows: for a fixed point `x`, the map `a ↦ f_a(x)` is a
//! homomorphism into the "row algebra" `{⊥, 1..k}` with
//! `u - v = (u if u ≠ v else ⊥)` and `u ▷ v = (v if u ≠ ⊥ else ⊥)`. Any
//! `k` such homomorphisms, taken together, form a homomorphism into the
//! partial functions on `{1..k}`, injective exactly when every pair of
//! distinct elements is separated by some row. The search enumerates the
//! row homomorphisms (labels up to renaming) and then looks for a
//! separating choice of at most `k` rows.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::laws::{check_axioms, check_derived_laws};
use crate::algebra::{Elem, FiniteAlgebra};
use crate::error::{Error, Result, MAX_ELEMENTS};
use crate::pfun::{close_generators, random_partial_function, Base, ConcreteAlgebra, PartialFunction, Relation};
use crate::representations::{verify_representation, Representation, RepresentationKind, State};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_base_size: usize,
    pub max_algebra_size: usize,
    /// Backtracking nodes allowed per search before giving up.
    pub node_limit: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_base_size: 4,
            max_algebra_size: MAX_ELEMENTS,
            node_limit: 20_000_000,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_base_size == 0 || self.max_algebra_size == 0 || self.node_limit == 0 {
            return Err(Error::Precondition("search budget fields must be positive".into()));
        }
        Ok(())
    }
}

const PFUN_BASE_CAP: u32 = 6;

/// All partial functions on `{1..k}`, ordered lexicographically by
/// `(f(1), .., f(k))` with undefined first.
pub fn enumerate_pfuns(k: u32) -> Result<Vec<PartialFunction>> {
    if k > PFUN_BASE_CAP {
        return Err(Error::SizeCap {
            what: "partial function enumeration base",
            actual: k as usize,
            cap: PFUN_BASE_CAP as usize,
        });
    }
    let base = Base(k);
    let radix = k as u64 + 1;
    let count = radix.pow(k);
    Ok((0..count)
        .map(|mut code| {
            let mut images = vec![0; k as usize];
            for slot in images.iter_mut().rev() {
                *slot = (code % radix) as u32;
                code /= radix;
            }
            let pairs = images
                .iter()
                .enumerate()
                .filter(|(_, &y)| y != 0)
                .map(|(x, &y)| (x as u32 + 1, y));
            PartialFunction::new(base, pairs).expect("one image per point")
        })
        .collect())
}

const BOT: u8 = u8::MAX;
const UNSET: u8 = u8::MAX - 1;

fn row_minus(u: u8, v: u8) -> u8 {
    if u == v {
        BOT
    } else {
        u
    }
}

fn row_restrict(u: u8, v: u8) -> u8 {
    if u == BOT {
        BOT
    } else {
        v
    }
}

/// A homomorphism into the row algebra; labels are `0..labels`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    values: Vec<u8>,
    labels: usize,
}

struct NodeCounter {
    nodes: u64,
    limit: u64,
}

impl NodeCounter {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.limit
    }
}

struct RowSearch<'a> {
    alg: &'a FiniteAlgebra,
    order: Vec<Elem>,
    max_labels: usize,
    val: Vec<u8>,
    trail: Vec<Elem>,
    rows: Vec<Row>,
}

impl RowSearch<'_> {
    /// Sets `e := v` and propagates through both tables; false on conflict.
    fn assign(&mut self, e: Elem, v: u8) -> bool {
        let n = self.alg.size();
        self.val[e] = v;
        self.trail.push(e);
        let mut queue = vec![e];
        while let Some(x) = queue.pop() {
            for y in 0..n {
                if self.val[y] == UNSET {
                    continue;
                }
                for (p, q) in [(x, y), (y, x)] {
                    let (vp, vq) = (self.val[p], self.val[q]);
                    for (r, want) in [
                        (self.alg.minus(p, q), row_minus(vp, vq)),
                        (self.alg.restrict(p, q), row_restrict(vp, vq)),
                    ] {
                        match self.val[r] {
                            UNSET => {
                                self.val[r] = want;
                                self.trail.push(r);
                                queue.push(r);
                            }
                            got if got != want => return false,
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for e in self.trail.drain(mark..) {
            self.val[e] = UNSET;
        }
    }

    fn search(&mut self, pos: usize, used: usize, counter: &mut NodeCounter) -> bool {
        if !counter.tick() {
            return false;
        }
        let Some(pos) = (pos..self.order.len()).find(|&i| self.val[self.order[i]] == UNSET) else {
            if self.val.iter().any(|&v| v != BOT) {
                self.rows.push(Row {
                    values: self.val.clone(),
                    labels: used,
                });
            }
            return true;
        };
        let e = self.order[pos];
        let choices = std::iter::once(BOT).chain(0..(used + 1).min(self.max_labels) as u8);
        for v in choices {
            let mark = self.trail.len();
            let next_used = if v != BOT && v as usize == used { used + 1 } else { used };
            if self.assign(e, v) && !self.search(pos + 1, next_used, counter) {
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

/// Every nonzero row homomorphism with at most `max_labels` labels, or
/// `None` when the node limit runs out.
fn row_homomorphisms(alg: &FiniteAlgebra, max_labels: usize, counter: &mut NodeCounter) -> Option<Vec<Row>> {
    let mut s = RowSearch {
        alg,
        order: alg.top_down_order(),
        max_labels,
        val: vec![UNSET; alg.size()],
        trail: Vec::new(),
        rows: Vec::new(),
    };
    if !s.assign(alg.zero(), BOT) {
        return Some(Vec::new());
    }
    s.search(0, 0, counter).then_some(s.rows)
}

struct Cover<'a> {
    pair_count: usize,
    rows: &'a [Row],
    separates: Vec<Vec<u64>>,
    chosen: Vec<usize>,
}

impl Cover<'_> {
    fn first_uncovered(&self, covered: &[u64]) -> Option<usize> {
        (0..self.pair_count).find(|&i| covered[i / 64] >> (i % 64) & 1 == 0)
    }

    /// `Some(true)` when a cover of at most `depth` rows was found.
    fn search(&mut self, covered: &mut Vec<u64>, depth: usize, counter: &mut NodeCounter) -> Option<bool> {
        if !counter.tick() {
            return None;
        }
        let Some(pair) = self.first_uncovered(covered) else {
            return Some(true);
        };
        if depth == 0 {
            return Some(false);
        }
        for r in 0..self.rows.len() {
            if self.separates[r][pair / 64] >> (pair % 64) & 1 == 0 {
                continue;
            }
            let saved = covered.clone();
            for (w, s) in covered.iter_mut().zip(&self.separates[r]) {
                *w |= s;
            }
            self.chosen.push(r);
            match self.search(covered, depth - 1, counter) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.chosen.pop();
            *covered = saved;
        }
        Some(false)
    }
}

#[derive(Clone, Debug)]
pub enum EmbeddingVerdict {
    Found(Representation),
    /// No embedding on any base up to the searched size.
    None {
        max_base_size: usize,
    },
    Inconclusive {
        nodes: u64,
    },
}

impl EmbeddingVerdict {
    pub fn is_found(&self) -> bool {
        matches!(self, EmbeddingVerdict::Found(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, EmbeddingVerdict::Inconclusive { .. })
    }
}

impl fmt::Display for EmbeddingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingVerdict::Found(rep) => write!(f, "found on {}", rep.base()),
            EmbeddingVerdict::None { max_base_size } => {
                write!(f, "none on any base of size <= {max_base_size}")
            }
            EmbeddingVerdict::Inconclusive { nodes } => {
                write!(f, "inconclusive after {nodes} nodes")
            }
        }
    }
}

/// Searches for an embedding into the partial functions on the smallest
/// base `{1..k}` with `k ≤ budget.max_base_size`.
pub fn brute_force_embedding(alg: &FiniteAlgebra, budget: &SearchBudget) -> Result<EmbeddingVerdict> {
    budget.validate()?;
    let n = alg.size();
    if n > budget.max_algebra_size {
        return Err(Error::SizeCap {
            what: "embedding search algebra",
            actual: n,
            cap: budget.max_algebra_size,
        });
    }
    let mut counter = NodeCounter {
        nodes: 0,
        limit: budget.node_limit,
    };
    let max_k = budget.max_base_size.min(BOT as usize - 2);
    let Some(rows) = row_homomorphisms(alg, max_k, &mut counter) else {
        return Ok(EmbeddingVerdict::Inconclusive { nodes: counter.nodes });
    };
    let pairs: Vec<(Elem, Elem)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let words = pairs.len().div_ceil(64).max(1);
    for k in 0..=max_k {
        let usable: Vec<Row> = rows.iter().filter(|r| r.labels <= k).cloned().collect();
        let separates = usable
            .iter()
            .map(|r| {
                let mut bits = vec![0u64; words];
                for (i, &(a, b)) in pairs.iter().enumerate() {
                    if r.values[a] != r.values[b] {
                        bits[i / 64] |= 1 << (i % 64);
                    }
                }
                bits
            })
            .collect();
        let mut cover = Cover {
            pair_count: pairs.len(),
            rows: &usable,
            separates,
            chosen: Vec::new(),
        };
        let mut covered = vec![0u64; words];
        match cover.search(&mut covered, k, &mut counter) {
            None => return Ok(EmbeddingVerdict::Inconclusive { nodes: counter.nodes }),
            Some(false) => continue,
            Some(true) => {
                let chosen: Vec<&Row> = cover.chosen.iter().map(|&r| &usable[r]).collect();
                let rep = assemble(alg, k, &chosen);
                debug_assert!(verify_representation(&rep).passed());
                return Ok(EmbeddingVerdict::Found(rep));
            }
        }
    }
    Ok(EmbeddingVerdict::None { max_base_size: max_k })
}

fn assemble(alg: &FiniteAlgebra, k: usize, rows: &[&Row]) -> Representation {
    let base = Base(k as u32);
    let assignment = alg
        .elements()
        .map(|a| {
            let pairs = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.values[a] != BOT)
                .map(|(x, r)| (x as u32 + 1, r.values[a] as u32 + 1));
            Relation::new(base, pairs).expect("rows and labels fit the base")
        })
        .collect();
    Representation {
        source: alg.clone(),
        states: base.points().map(State::Point).collect(),
        assignment,
        kind: RepresentationKind::External,
    }
}

/// The least base size admitting an embedding, within the budget.
pub fn minimal_embedding_base(alg: &FiniteAlgebra, budget: &SearchBudget) -> Result<Option<usize>> {
    match brute_force_embedding(alg, budget)? {
        EmbeddingVerdict::Found(rep) => Ok(Some(rep.states.len())),
        EmbeddingVerdict::None { .. } => Ok(None),
        EmbeddingVerdict::Inconclusive { nodes } => {
            Err(Error::Budget(format!("embedding search stopped after {nodes} nodes")))
        }
    }
}

const CANONICAL_CAP: usize = 8;

fn permutations_fixing_zero(n: usize) -> Vec<Vec<Elem>> {
    fn go(rest: &mut Vec<Elem>, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(&mut (1..n).collect(), &mut vec![0], &mut out);
    }
    out
}

/// The relabelling with the least table key among those sending the zero
/// to element 0. Names are dropped.
pub fn canonical_form(alg: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let n = alg.size();
    if n > CANONICAL_CAP {
        return Err(Error::SizeCap {
            what: "canonical form",
            actual: n,
            cap: CANONICAL_CAP,
        });
    }
    let z = alg.zero();
    let mut to_zero_first: Vec<Elem> = (0..n).collect();
    to_zero_first.swap(0, z);
    let base = alg.permute(&to_zero_first)?.without_names();
    permutations_fixing_zero(n)
        .iter()
        .map(|p| base.permute(p))
        .collect::<Result<Vec<_>>>()
        .map(|forms| {
            forms
                .into_iter()
                .min_by(|a, b| a.table_key().cmp(&b.table_key()))
                .expect("at least the identity")
        })
}

/// An open or filled cell of the two tables, minus cells first.
type Cell = usize;

enum Eval {
    Val(Elem),
    /// Every argument is known but this cell is still open.
    Need(Cell),
    Blocked,
}

/// Partially filled tables: cells `0..n²` hold `-`, cells `n²..2n²` hold `▷`.
struct PartialTables {
    n: usize,
    cells: Vec<Option<Elem>>,
    trail: Vec<Cell>,
}

impl PartialTables {
    fn op(&self, offset: usize, a: &Eval, b: &Eval) -> Eval {
        match (a, b) {
            (Eval::Val(a), Eval::Val(b)) => {
                let c = offset + a * self.n + b;
                self.cells[c].map_or(Eval::Need(c), Eval::Val)
            }
            _ => Eval::Blocked,
        }
    }

    fn m(&self, a: &Eval, b: &Eval) -> Eval {
        self.op(0, a, b)
    }

    fn r(&self, a: &Eval, b: &Eval) -> Eval {
        self.op(self.n * self.n, a, b)
    }

    fn meet(&self, a: &Eval, b: &Eval) -> Eval {
        self.m(a, &self.m(a, b))
    }

    fn set(&mut self, c: Cell, v: Elem) {
        self.cells[c] = Some(v);
        self.trail.push(c);
    }

    fn undo(&mut self, mark: usize) {
        for c in self.trail.drain(mark..) {
            self.cells[c] = None;
        }
    }

    /// Both sides of one axiom instance: false on a clash; a side that
    /// lacks only its outermost cell is forced to the other side's value.
    fn equate(&mut self, lhs: Eval, rhs: Eval, changed: &mut bool) -> bool {
        match (lhs, rhs) {
            (Eval::Val(x), Eval::Val(y)) => x == y,
            (Eval::Val(v), Eval::Need(c)) | (Eval::Need(c), Eval::Val(v)) => {
                self.set(c, v);
                *changed = true;
                true
            }
            _ => true,
        }
    }

    /// Forces cells to a fixpoint; false if some axiom instance fails.
    fn propagate(&mut self) -> bool {
        let n = self.n;
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                let a = &Eval::Val(a);
                for b in 0..n {
                    let b = &Eval::Val(b);
                    let ok = self.equate(self.m(a, &self.m(b, a)), Eval::Val(val(a)), &mut changed)
                        && self.equate(self.meet(a, b), self.meet(b, a), &mut changed)
                        && self.equate(self.r(&self.meet(a, b), a), self.meet(a, b), &mut changed);
                    if !ok {
                        return false;
                    }
                    for c in 0..n {
                        let c = &Eval::Val(c);
                        let ok = self.equate(self.m(&self.m(a, b), c), self.m(&self.m(a, c), b), &mut changed)
                            && self.equate(
                                self.meet(&self.r(a, c), &self.r(b, c)),
                                self.r(&self.r(a, b), c),
                                &mut changed,
                            );
                        if !ok {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn val(e: &Eval) -> Elem {
    match e {
        Eval::Val(v) => *v,
        _ => unreachable!("variables are always values"),
    }
}

#[derive(Clone, Debug)]
pub struct ModelEnumeration {
    pub size: usize,
    /// Canonical forms, ordered by table key.
    pub models: Vec<FiniteAlgebra>,
    /// False when the node limit stopped the search early.
    pub exhaustive: bool,
    pub nodes: u64,
}

/// All algebras of size `n` satisfying the axioms, up to isomorphism.
/// Element 0 is the zero; `a - a = 0` and `a - 0 = a` are fixed up front,
/// and every axiom instance is propagated as cells fill.
pub fn enumerate_axiom_models(n: usize, budget: &SearchBudget) -> Result<ModelEnumeration> {
    budget.validate()?;
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > CANONICAL_CAP {
        return Err(Error::SizeCap {
            what: "model enumeration",
            actual: n,
            cap: CANONICAL_CAP,
        });
    }
    let mut t = PartialTables {
        n,
        cells: vec![None; 2 * n * n],
        trail: Vec::new(),
    };
    for a in 0..n {
        t.set(a * n + a, 0);
        t.set(a * n, a);
    }
    let mut counter = NodeCounter {
        nodes: 0,
        limit: budget.node_limit,
    };
    let mut keys: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut models = Vec::new();
    let exhaustive = !t.propagate()
        || fill(&mut t, &mut counter, &mut |t| {
            let (minus, restrict) = t.cells.split_at(n * n);
            let alg = FiniteAlgebra::from_flat(
                n,
                minus.iter().map(|c| c.unwrap()).collect(),
                restrict.iter().map(|c| c.unwrap()).collect(),
            )?;
            let canon = canonical_form(&alg)?;
            if keys.insert(canon.table_key()) {
                models.push(canon);
            }
            Ok(())
        })?;
    models.sort_by_key(|m| m.table_key());
    Ok(ModelEnumeration {
        size: n,
        models,
        exhaustive,
        nodes: counter.nodes,
    })
}

/// Branches on the first open cell; false when the node limit runs out.
fn fill(
    t: &mut PartialTables,
    counter: &mut NodeCounter,
    emit: &mut dyn FnMut(&PartialTables) -> Result<()>,
) -> Result<bool> {
    if !counter.tick() {
        return Ok(false);
    }
    let Some(cell) = t.cells.iter().position(Option::is_none) else {
        emit(t)?;
        return Ok(true);
    };
    for v in 0..t.n {
        let mark = t.trail.len();
        t.set(cell, v);
        let ok = t.propagate();
        if ok && !fill(t, counter, emit)? {
            return Ok(false);
        }
        t.undo(mark);
    }
    Ok(true)
}

/// `count` closures of random partial functions: base size 1–4, 1–3
/// generators, redrawn whenever the closure exceeds the element cap.
pub fn random_corpus(seed: u64, count: usize) -> Vec<ConcreteAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Vec::with_capacity(count);
    while corpus.len() < count {
        let base = Base(rng.gen_range(1..=4));
        let gens: Vec<PartialFunction> = (0..rng.gen_range(1..=3))
            .map(|_| random_partial_function(base, &mut rng))
            .collect();
        match close_generators(base, &gens) {
            Ok(c) => corpus.push(c),
            Err(Error::SizeCap { .. }) => continue,
            Err(e) => unreachable!("closing random functions: {e}"),
        }
    }
    corpus
}

/// Whether every algebra of a corpus passes the axioms and the derived
/// laws; returns the indices that do not.
pub fn soundness_failures(corpus: &[ConcreteAlgebra]) -> Vec<usize> {
    corpus
        .iter()
        .enumerate()
        .filter(|(_, c)| !check_axioms(&c.abstract_alg).passed() || !check_derived_laws(&c.abstract_alg).passed())
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug)]
pub struct DifferentialEntry {
    pub index: usize,
    pub size: usize,
    pub axioms_pass: bool,
    pub verdict: EmbeddingVerdict,
}

impl DifferentialEntry {
    /// `None` while the search is inconclusive.
    pub fn agrees(&self) -> Option<bool> {
        match &self.verdict {
            EmbeddingVerdict::Inconclusive { .. } => None,
            v => Some(v.is_found() == self.axioms_pass),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DifferentialReport {
    pub entries: Vec<DifferentialEntry>,
}

impl DifferentialReport {
    pub fn agreements(&self) -> usize {
        self.entries.iter().filter(|e| e.agrees() == Some(true)).count()
    }

    pub fn disagreements(&self) -> Vec<&DifferentialEntry> {
        self.entries.iter().filter(|e| e.agrees() == Some(false)).collect()
    }

    pub fn inconclusive(&self) -> Vec<&DifferentialEntry> {
        self.entries.iter().filter(|e| e.agrees().is_none()).collect()
    }

    pub fn all_agree(&self) -> bool {
        self.agreements() == self.entries.len()
    }
}

impl fmt::Display for DifferentialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let token = match e.agrees() {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INCONCLUSIVE",
            };
            writeln!(
                f,
                "{token} algebra {} size {}: axioms {}, embedding {}",
                e.index,
                e.size,
                if e.axioms_pass { "pass" } else { "fail" },
                e.verdict
            )?;
        }
        write!(
            f,
            "summary: {} agree, {} disagree, {} inconclusive",
            self.agreements(),
            self.disagreements().len(),
            self.inconclusive().len()
        )
    }
}

/// Compares the axiom checker with the embedding search on each algebra.
pub fn differential_check(corpus: &[FiniteAlgebra], budget: &SearchBudget) -> Result<DifferentialReport> {
    let entries = corpus
        .iter()
        .enumerate()
        .map(|(index, alg)| {
            Ok(DifferentialEntry {
                index,
                size: alg.size(),
                axioms_pass: check_axioms(alg).passed(),
                verdict: brute_force_embedding(alg, budget)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DifferentialReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::representations::canonical_theta;

    #[test]
    fn pfun_counts() {
        assert_eq!(enumerate_pfuns(0).unwrap().len(), 1);
        let one = enumerate_pfuns(1).unwrap();
        assert_eq!(one.len(), 2);
        assert!(one[0].is_empty());
        assert_eq!(enumerate_pfuns(2).unwrap().len(), 9);
        assert_eq!(enumerate_pfuns(3).unwrap().len(), 64);
        let distinct: BTreeSet<_> = enumerate_pfuns(3).unwrap().into_iter().collect();
        assert_eq!(distinct.len(), 64);
        assert!(enumerate_pfuns(7).is_err());
    }

    #[test]
    fn embedding_examples() {
        let budget = SearchBudget::default();
        let EmbeddingVerdict::Found(rep) = brute_force_embedding(&fixtures::f0(), &budget).unwrap() else {
            panic!("F0 embeds");
        };
        assert!(rep.states.is_empty());

        let f2 = fixtures::f2();
        let mf = canonical_theta(&f2).unwrap().states.len();
        let tight = SearchBudget {
            max_base_size: mf,
            ..budget.clone()
        };
        let EmbeddingVerdict::Found(rep) = brute_force_embedding(&f2, &tight).unwrap() else {
            panic!("F2 embeds on |MF| points");
        };
        assert!(verify_representation(&rep).passed());
        assert_eq!(rep.states.len(), 2);

        for alg in fixtures::all_functional() {
            let v = brute_force_embedding(&alg, &budget).unwrap();
            let EmbeddingVerdict::Found(rep) = v else { panic!("{v}") };
            assert!(verify_representation(&rep).passed());
        }
    }

    #[test]
    fn n1_has_no_embedding() {
        let budget = SearchBudget {
            max_base_size: 3,
            ..Default::default()
        };
        let v = brute_force_embedding(&fixtures::n1(), &budget).unwrap();
        assert!(matches!(v, EmbeddingVerdict::None { max_base_size: 3 }), "{v}");
    }

    #[test]
    fn node_limit_gives_inconclusive() {
        let budget = SearchBudget {
            node_limit: 1,
            ..Default::default()
        };
        let v = brute_force_embedding(&fixtures::f2(), &budget).unwrap();
        assert!(v.is_inconclusive());
        let m = enumerate_axiom_models(3, &budget).unwrap();
        assert!(!m.exhaustive);
    }

    #[test]
    fn small_model_counts() {
        let budget = SearchBudget::default();
        let one = enumerate_axiom_models(1, &budget).unwrap();
        assert_eq!(one.models.len(), 1);
        let two = enumerate_axiom_models(2, &budget).unwrap();
        assert!(two.exhaustive);
        assert_eq!(two.models.len(), 1);
        let f1 = canonical_form(&fixtures::f1()).unwrap();
        assert_eq!(two.models[0].table_key(), f1.table_key());
        assert_eq!(two.models[0].restrict_rows(), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn size_three_models_include_f3_and_f4() {
        let m = enumerate_axiom_models(3, &SearchBudget::default()).unwrap();
        assert!(m.exhaustive);
        let keys: Vec<_> = m.models.iter().map(FiniteAlgebra::table_key).collect();
        let f3 = canonical_form(&fixtures::f3()).unwrap().table_key();
        let f4 = canonical_form(&fixtures::f4()).unwrap().table_key();
        assert_ne!(f3, f4);
        assert!(keys.contains(&f3) && keys.contains(&f4));
        for alg in &m.models {
            assert!(check_axioms(alg).passed());
        }
    }

    #[test]
    fn canonical_form_is_invariant() {
        let f2 = fixtures::f2();
        let swapped = f2.permute(&[0, 2, 1, 3]).unwrap();
        assert_eq!(
            canonical_form(&f2).unwrap().table_key(),
            canonical_form(&swapped).unwrap().table_key()
        );
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = random_corpus(7, 10);
        let b = random_corpus(7, 10);
        assert_eq!(a.len(), 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.elements, y.elements);
        }
        assert!(soundness_failures(&a).is_empty());
    }

    #[test]
    fn differential_examples() {
        let budget = SearchBudget {
            max_base_size: 3,
            ..Default::default()
        };
        let report = differential_check(&[fixtures::f0(), fixtures::n1(), fixtures::f4()], &budget).unwrap();
        assert!(report.all_agree(), "{report}");
        assert!(!report.entries[1].axioms_pass);
    }
}
