//! Concrete partial functions on a finite base and the algebras they
//! generate under relative complement and domain restriction.
//!
//! A base of size `n` is the point set `{1, .., n}`; domain and codomain
//! are always the same set.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::error::{Error, Result, MAX_ELEMENTS};

/// The point set `{1, .., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base(pub u32);

impl Base {
    pub fn size(self) -> u32 {
        self.0
    }

    pub fn points(self) -> impl Iterator<Item = u32> {
        1..=self.0
    }

    pub fn contains(self, p: u32) -> bool {
        (1..=self.0).contains(&p)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base 1..{}", self.0)
    }
}

/// An arbitrary binary relation on a base; functionality is not assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub base: Base,
    pub pairs: BTreeSet<(u32, u32)>,
}

impl Relation {
    pub fn new(base: Base, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        for &(x, y) in &pairs {
            for p in [x, y] {
                if !base.contains(p) {
                    return Err(Error::PointOutOfBase { point: p, size: base.0 });
                }
            }
        }
        Ok(Relation { base, pairs })
    }

    pub fn empty(base: Base) -> Self {
        Relation {
            base,
            pairs: BTreeSet::new(),
        }
    }

    pub fn domain(&self) -> BTreeSet<u32> {
        self.pairs.iter().map(|&(x, _)| x).collect()
    }

    fn same_base(&self, other: &Relation) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base.0, other.base.0));
        }
        Ok(())
    }

    /// Set difference of graphs.
    pub fn minus(&self, other: &Relation) -> Result<Relation> {
        self.same_base(other)?;
        Ok(Relation {
            base: self.base,
            pairs: self.pairs.difference(&other.pairs).copied().collect(),
        })
    }

    /// `other` restricted to the domain of `self`.
    pub fn restrict(&self, other: &Relation) -> Result<Relation> {
        self.same_base(other)?;
        let dom = self.domain();
        Ok(Relation {
            base: self.base,
            pairs: other.pairs.iter().filter(|(x, _)| dom.contains(x)).copied().collect(),
        })
    }

    /// The first pair of conflicting images, if any.
    pub fn functionality_violation(&self) -> Option<(u32, u32, u32)> {
        self.pairs
            .iter()
            .zip(self.pairs.iter().skip(1))
            .find(|((x1, _), (x2, _))| x1 == x2)
            .map(|(&(x, y), &(_, z))| (x, y, z))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}->{y}")?;
        }
        write!(f, "}}")
    }
}

/// A functional relation: `(x, y)` and `(x, z)` in the graph imply `y = z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialFunction(Relation);

impl PartialFunction {
    pub fn new(base: Base, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        Self::from_relation(Relation::new(base, pairs)?)
    }

    pub fn from_relation(r: Relation) -> Result<Self> {
        match r.functionality_violation() {
            Some((x, y, z)) => Err(Error::NotFunctional { x, y, z }),
            None => Ok(PartialFunction(r)),
        }
    }

    pub fn empty(base: Base) -> Self {
        PartialFunction(Relation::empty(base))
    }

    /// The identity function on `points`.
    pub fn identity_on(base: Base, points: impl IntoIterator<Item = u32>) -> Result<Self> {
        Self::new(base, points.into_iter().map(|p| (p, p)))
    }

    pub fn base(&self) -> Base {
        self.0.base
    }

    pub fn graph(&self) -> &BTreeSet<(u32, u32)> {
        &self.0.pairs
    }

    pub fn as_relation(&self) -> &Relation {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.pairs.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<u32> {
        self.0.domain()
    }

    pub fn apply(&self, x: u32) -> Option<u32> {
        self.0.pairs.range((x, 0)..=(x, u32::MAX)).next().map(|&(_, y)| y)
    }

    pub fn is_subset(&self, other: &PartialFunction) -> bool {
        self.0.pairs.is_subset(&other.0.pairs)
    }

    /// Parses the literal syntax `{1->1, 2->2}` over the given base.
    pub fn parse(base: Base, text: &str) -> Result<Self> {
        let perr = |col: usize, msg: String| Error::Parse { line: 1, col, msg };
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| perr(1, format!("expected {{...}}, found `{t}`")))?;
        let mut pairs = Vec::new();
        let mut offset = 1 + text.find('{').unwrap_or(0);
        for item in inner.split(',') {
            let col = offset + 1 + (item.len() - item.trim_start().len());
            offset += item.len() + 1;
            let item = item.trim();
            if item.is_empty() {
                if inner.trim().is_empty() {
                    break;
                }
                return Err(perr(col, "empty pair".into()));
            }
            let (x, y) = item
                .split_once("->")
                .ok_or_else(|| perr(col, format!("expected `x->y`, found `{item}`")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| perr(col, format!("not a point: `{}`", s.trim())))
            };
            pairs.push((num(x)?, num(y)?));
        }
        Self::new(base, pairs)
    }
}

impl fmt::Display for PartialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `f - g`: the graph of `f` minus the graph of `g`.
pub fn pf_minus(f: &PartialFunction, g: &PartialFunction) -> Result<PartialFunction> {
    Ok(PartialFunction(f.0.minus(&g.0)?))
}

/// `f ▷ g`: `g` restricted to the domain of `f`.
pub fn pf_restrict(f: &PartialFunction, g: &PartialFunction) -> Result<PartialFunction> {
    Ok(PartialFunction(f.0.restrict(&g.0)?))
}

pub fn is_injective_pf(f: &PartialFunction) -> bool {
    let mut seen = BTreeSet::new();
    f.graph().iter().all(|&(_, y)| seen.insert(y))
}

/// Closes `generators` under two binary operations. The result lists the
/// generators first (deduplicated, in order), then each breadth-first wave
/// of new products sorted ascending.
fn close<T: Clone + Ord + std::hash::Hash>(
    generators: &[T],
    minus: impl Fn(&T, &T) -> T,
    restrict: impl Fn(&T, &T) -> T,
    cap: usize,
) -> Result<Vec<T>> {
    let mut elements: Vec<T> = Vec::new();
    let mut index: HashMap<T, usize> = HashMap::new();
    for g in generators {
        if !index.contains_key(g) {
            index.insert(g.clone(), elements.len());
            elements.push(g.clone());
        }
    }
    let mut done = 0;
    loop {
        let len = elements.len();
        if len > cap {
            return Err(Error::SizeCap {
                what: "closure",
                actual: len,
                cap,
            });
        }
        let mut wave = BTreeSet::new();
        for i in 0..len {
            for j in 0..len {
                if i < done && j < done {
                    continue;
                }
                for v in [minus(&elements[i], &elements[j]), restrict(&elements[i], &elements[j])] {
                    if !index.contains_key(&v) {
                        wave.insert(v);
                    }
                }
            }
        }
        if wave.is_empty() {
            return Ok(elements);
        }
        done = len;
        for v in wave {
            index.insert(v.clone(), elements.len());
            elements.push(v);
        }
    }
}

/// Tabulates `-` and `▷` on a list of relations that is closed under both.
fn tabulate<T: Clone + Eq + std::hash::Hash>(
    elements: &[T],
    minus: impl Fn(&T, &T) -> T,
    restrict: impl Fn(&T, &T) -> T,
) -> Result<FiniteAlgebra> {
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    if index.len() != elements.len() {
        return Err(Error::Precondition("duplicate elements".into()));
    }
    let n = elements.len();
    let lookup = |v: &T, what: &str, i: usize, j: usize| {
        index
            .get(v)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("not closed: {what} of elements {i} and {j}")))
    };
    let mut mt = vec![vec![0; n]; n];
    let mut rt = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            mt[i][j] = lookup(&minus(&elements[i], &elements[j]), "-", i, j)?;
            rt[i][j] = lookup(&restrict(&elements[i], &elements[j]), "▷", i, j)?;
        }
    }
    FiniteAlgebra::new(mt, rt)
}

fn check_bases<'a>(base: Base, items: impl IntoIterator<Item = &'a Relation>) -> Result<()> {
    for r in items {
        if r.base != base {
            return Err(Error::BaseMismatch(base.0, r.base.0));
        }
    }
    Ok(())
}

/// Closure of a set of relations under relational `-` and `▷`.
pub fn close_relations(base: Base, generators: &[Relation]) -> Result<(Vec<Relation>, FiniteAlgebra)> {
    if generators.is_empty() {
        return Err(Error::Empty);
    }
    check_bases(base, generators)?;
    let elems = close(
        generators,
        |a, b| a.minus(b).expect("shared base"),
        |a, b| a.restrict(b).expect("shared base"),
        MAX_ELEMENTS,
    )?;
    let alg = tabulate_relations(&elems)?;
    Ok((elems, alg))
}

/// Operation tables of a list of relations closed under `-` and `▷`, in the
/// given order.
pub fn tabulate_relations(elements: &[Relation]) -> Result<FiniteAlgebra> {
    if let Some(first) = elements.first() {
        check_bases(first.base, elements)?;
    }
    tabulate(
        elements,
        |a, b| a.minus(b).expect("shared base"),
        |a, b| a.restrict(b).expect("shared base"),
    )
}

/// An algebra of partial functions together with its abstract tables.
#[derive(Clone, Debug)]
pub struct ConcreteAlgebra {
    pub base: Base,
    /// The dictionary: element id `i` denotes `elements[i]`.
    pub elements: Vec<PartialFunction>,
    pub abstract_alg: FiniteAlgebra,
}

impl ConcreteAlgebra {
    /// Tabulates an explicitly listed family, which must be closed.
    pub fn from_elements(base: Base, elements: Vec<PartialFunction>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Empty);
        }
        if elements.len() > MAX_ELEMENTS {
            return Err(Error::SizeCap {
                what: "algebra",
                actual: elements.len(),
                cap: MAX_ELEMENTS,
            });
        }
        check_bases(base, elements.iter().map(PartialFunction::as_relation))?;
        let abstract_alg = tabulate(
            &elements,
            |a, b| pf_minus(a, b).expect("shared base"),
            |a, b| pf_restrict(a, b).expect("shared base"),
        )?;
        Ok(ConcreteAlgebra {
            base,
            elements,
            abstract_alg,
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn function(&self, a: Elem) -> &PartialFunction {
        &self.elements[a]
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        self.abstract_alg = self.abstract_alg.with_names(names)?;
        Ok(self)
    }

    /// Checks that the tables agree with pointwise evaluation everywhere.
    pub fn is_coherent(&self) -> bool {
        let g = &self.abstract_alg;
        g.elements().all(|i| {
            g.elements().all(|j| {
                let (fi, fj) = (&self.elements[i], &self.elements[j]);
                pf_minus(fi, fj).ok().as_ref() == Some(&self.elements[g.minus(i, j)])
                    && pf_restrict(fi, fj).ok().as_ref() == Some(&self.elements[g.restrict(i, j)])
            })
        })
    }
}

/// The least family containing the generators and closed under `-` and `▷`.
pub fn close_generators(base: Base, generators: &[PartialFunction]) -> Result<ConcreteAlgebra> {
    if generators.is_empty() {
        return Err(Error::Precondition(
            "at least one generator is required: algebras are nonempty".into(),
        ));
    }
    check_bases(base, generators.iter().map(PartialFunction::as_relation))?;
    let elements = close(
        generators,
        |a, b| pf_minus(a, b).expect("shared base"),
        |a, b| pf_restrict(a, b).expect("shared base"),
        MAX_ELEMENTS,
    )?;
    ConcreteAlgebra::from_elements(base, elements)
}

/// Parses generator literals, reporting functionality errors.
pub fn parse_generators(base: Base, literals: &[&str]) -> Result<Vec<PartialFunction>> {
    literals.iter().map(|l| PartialFunction::parse(base, l)).collect()
}

/// A family of subsets of `{1, .., universe}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldOfSets {
    pub universe: u32,
    pub sets: Vec<BTreeSet<u32>>,
}

impl FieldOfSets {
    /// All subsets, ordered by their bit mask (`∅, {1}, {2}, {1,2}, ..`).
    pub fn powerset(universe: u32) -> Self {
        let sets = (0u64..1 << universe)
            .map(|mask| (1..=universe).filter(|p| mask >> (p - 1) & 1 == 1).collect())
            .collect();
        FieldOfSets { universe, sets }
    }
}

/// Interprets a field of sets as a `{-, ▷}`-algebra with `a - b = a ∩ ¬b`
/// and `a ▷ b = a ∩ b`, realised by the identity functions on its members.
pub fn boolean_as_diffrest(field: &FieldOfSets) -> Result<ConcreteAlgebra> {
    let u = field.universe;
    let all: BTreeSet<u32> = (1..=u).collect();
    if field.sets.is_empty() {
        return Err(Error::Empty);
    }
    let members: BTreeSet<&BTreeSet<u32>> = field.sets.iter().collect();
    if members.len() != field.sets.len() {
        return Err(Error::Precondition("duplicate sets in field".into()));
    }
    for s in &field.sets {
        if !s.is_subset(&all) {
            return Err(Error::Precondition(format!("{s:?} is not inside 1..{u}")));
        }
        let comp: BTreeSet<u32> = all.difference(s).copied().collect();
        if !members.contains(&comp) {
            return Err(Error::Precondition(format!("not closed under complement at {s:?}")));
        }
        for t in &field.sets {
            let meet: BTreeSet<u32> = s.intersection(t).copied().collect();
            if !members.contains(&meet) {
                return Err(Error::Precondition(format!(
                    "not closed under intersection at {s:?}, {t:?}"
                )));
            }
        }
    }
    let base = Base(u);
    let elements = field
        .sets
        .iter()
        .map(|s| PartialFunction::identity_on(base, s.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    ConcreteAlgebra::from_elements(base, elements)
}

/// Each point is mapped with probability ½, to a uniformly random image.
pub fn random_partial_function(base: Base, rng: &mut impl Rng) -> PartialFunction {
    let pairs: Vec<(u32, u32)> = base
        .points()
        .filter_map(|x| rng.gen_bool(0.5).then(|| (x, rng.gen_range(1..=base.0))))
        .collect();
    PartialFunction::new(base, pairs).expect("one image per point")
}
