//! Representations of finite `{-, ▷}`-algebras by partial functions: the
//! canonical construction over maximal filters, its injective variant, the
//! atom-based complete constructions, and the checks that certify them.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::downset::boolean_downset;
use crate::algebra::laws::check_axioms;
use crate::algebra::quotient::domain_quotient;
use crate::algebra::{Elem, ElementSet, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::filters::{enumerate_filters, FilterFamily};
use crate::pfun::{is_injective_pf, Base, ConcreteAlgebra, PartialFunction, Relation};

/// What a point of the representation base stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum State {
    MaximalFilter(ElementSet),
    /// A `≈`-class of maximal filters, by class id.
    FilterClass(usize),
    Atom(Elem),
    /// A `∼`-class of atoms, by its least atom.
    AtomClass(Elem),
    /// A bare base point of an externally supplied representation.
    Point(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepresentationKind {
    CanonicalTheta,
    InjectiveEta,
    AtomicTheta,
    AtomicEta,
    External,
}

impl fmt::Display for RepresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepresentationKind::CanonicalTheta => "theta",
            RepresentationKind::InjectiveEta => "eta",
            RepresentationKind::AtomicTheta => "atomic-theta",
            RepresentationKind::AtomicEta => "atomic-eta",
            RepresentationKind::External => "external",
        })
    }
}

/// A map from algebra elements to relations on the point set
/// `{1, .., states.len()}`; point `i + 1` is `states[i]`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub source: FiniteAlgebra,
    pub states: Vec<State>,
    pub assignment: Vec<Relation>,
    pub kind: RepresentationKind,
}

impl Representation {
    pub fn base(&self) -> Base {
        Base(self.states.len() as u32)
    }

    /// The identity-style representation given by a concrete algebra's
    /// own dictionary.
    pub fn from_concrete(c: &ConcreteAlgebra) -> Self {
        Representation {
            source: c.abstract_alg.clone(),
            states: c.base.points().map(State::Point).collect(),
            assignment: c.elements.iter().map(|f| f.as_relation().clone()).collect(),
            kind: RepresentationKind::External,
        }
    }

    pub fn value(&self, a: Elem) -> &Relation {
        &self.assignment[a]
    }

    pub fn state_label(&self, i: usize) -> String {
        let alg = &self.source;
        let set_names = |s: &ElementSet| s.iter().map(|a| alg.name(a)).collect::<Vec<_>>().join(",");
        match &self.states[i] {
            State::MaximalFilter(s) => format!("filter {{{}}}", set_names(s)),
            State::FilterClass(c) => format!("filter-class {c}"),
            State::Atom(x) => format!("atom {}", alg.name(*x)),
            State::AtomClass(x) => format!("atom-class [{}]", alg.name(*x)),
            State::Point(p) => format!("point {p}"),
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "representation {}", self.kind)?;
        writeln!(f, "{}", self.base())?;
        for i in 0..self.states.len() {
            writeln!(f, "state {} = {}", i + 1, self.state_label(i))?;
        }
        for a in self.source.elements() {
            writeln!(f, "value {} = {}", self.source.name(a), self.assignment[a])?;
        }
        Ok(())
    }
}

fn require_axioms(alg: &FiniteAlgebra) -> Result<()> {
    let report = check_axioms(alg);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Axioms(Box::new(report)))
    }
}

fn relation(base: Base, pairs: impl IntoIterator<Item = (usize, usize)>) -> Relation {
    Relation::new(base, pairs.into_iter().map(|(x, y)| (x as u32 + 1, y as u32 + 1)))
        .expect("state indices lie in the base")
}

/// `aθ = {(ξ, μ) : ξ ≈ μ, a ∈ μ}` over the maximal filters.
pub fn canonical_theta(alg: &FiniteAlgebra) -> Result<Representation> {
    require_axioms(alg)?;
    let fam = enumerate_filters(alg)?;
    canonical_theta_from(&fam)
}

pub fn canonical_theta_from(fam: &FilterFamily) -> Result<Representation> {
    let alg = &fam.parent;
    let mf = fam.maximal_filters();
    // two ≈-equivalent maximal filters sharing an element are equal
    for (i, &xi) in mf.iter().enumerate() {
        for &mu in &mf[i + 1..] {
            if fam.approx(xi, mu) && !xi.intersection(mu).is_empty() {
                return Err(Error::Inconsistent {
                    law: "≈ is equality on maximal filters sharing an element".into(),
                    witness: xi.intersection(mu).to_vec(),
                });
            }
        }
    }
    let base = Base(mf.len() as u32);
    let mfr = &mf;
    let assignment = alg
        .elements()
        .map(|a| {
            let mf = mfr;
            let pairs = (0..mf.len()).flat_map(|x| {
                (0..mf.len())
                    .filter(move |&y| mf[y].contains(a) && fam.approx(mf[x], mf[y]))
                    .map(move |y| (x, y))
            });
            relation(base, pairs.collect::<Vec<_>>())
        })
        .collect();
    Ok(Representation {
        source: alg.clone(),
        states: mf.into_iter().map(State::MaximalFilter).collect(),
        assignment,
        kind: RepresentationKind::CanonicalTheta,
    })
}

/// `aη = {(⟦μ⟧, μ) : a ∈ μ}`; the base is the `≈`-classes of maximal
/// filters followed by the maximal filters themselves.
pub fn injective_eta(alg: &FiniteAlgebra) -> Result<Representation> {
    require_axioms(alg)?;
    let fam = enumerate_filters(alg)?;
    let eta = injective_eta_from(&fam)?;
    let theta = canonical_theta_from(&fam)?;
    check_eta_theta_coherence(&fam, &theta, &eta)?;
    Ok(eta)
}

pub fn injective_eta_from(fam: &FilterFamily) -> Result<Representation> {
    let alg = &fam.parent;
    let mf = fam.maximal_filters();
    let mut classes: Vec<usize> = Vec::new();
    for &mu in &mf {
        let c = fam.class_of(mu);
        if !classes.contains(&c) {
            classes.push(c);
        }
    }
    let offset = classes.len();
    let base = Base((offset + mf.len()) as u32);
    let state_of_class = |mu| classes.iter().position(|&c| c == fam.class_of(mu)).unwrap();
    let assignment = alg
        .elements()
        .map(|a| {
            let pairs: Vec<_> = mf
                .iter()
                .enumerate()
                .filter(|(_, mu)| mu.contains(a))
                .map(|(j, &mu)| (state_of_class(mu), offset + j))
                .collect();
            relation(base, pairs)
        })
        .collect();
    let mut states: Vec<State> = classes.iter().map(|&c| State::FilterClass(c)).collect();
    states.extend(mf.into_iter().map(State::MaximalFilter));
    Ok(Representation {
        source: alg.clone(),
        states,
        assignment,
        kind: RepresentationKind::InjectiveEta,
    })
}

/// `(ξ, μ) ∈ aθ ⟺ (⟦ξ⟧, μ) ∈ aη` for every element and pair of maximal
/// filters.
pub fn check_eta_theta_coherence(fam: &FilterFamily, theta: &Representation, eta: &Representation) -> Result<()> {
    let index_of = |st: State| {
        eta.states
            .iter()
            .position(|s| *s == st)
            .expect("η lists every maximal filter and its class") as u32
            + 1
    };
    for (x, xi) in theta.states.iter().enumerate() {
        let State::MaximalFilter(xi) = *xi else {
            unreachable!("θ states are maximal filters")
        };
        let class = index_of(State::FilterClass(fam.class_of(xi)));
        for (y, mu) in theta.states.iter().enumerate() {
            let mu_point = index_of(mu.clone());
            for a in theta.source.elements() {
                let in_theta = theta.assignment[a].pairs.contains(&(x as u32 + 1, y as u32 + 1));
                let in_eta = eta.assignment[a].pairs.contains(&(class, mu_point));
                if in_theta != in_eta {
                    return Err(Error::Inconsistent {
                        law: "(ξ,μ) ∈ aθ iff (⟦ξ⟧,μ) ∈ aη".into(),
                        witness: vec![a, x, y],
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomAnalysis {
    pub atoms: Vec<Elem>,
    pub atomic: bool,
    pub atomistic: bool,
}

/// Minimal nonzero elements.
pub fn atoms(alg: &FiniteAlgebra) -> Vec<Elem> {
    let z = alg.zero();
    alg.elements()
        .filter(|&x| x != z && alg.down_set(x) == [z, x].into_iter().collect())
        .collect()
}

/// Every nonzero element bounds an atom.
pub fn is_atomic(alg: &FiniteAlgebra) -> bool {
    let at: ElementSet = atoms(alg).into_iter().collect();
    alg.elements()
        .all(|a| a == alg.zero() || !alg.down_set(a).intersection(at).is_empty())
}

/// Every element is the least upper bound of the atoms below it.
pub fn is_atomistic(alg: &FiniteAlgebra) -> bool {
    let at: ElementSet = atoms(alg).into_iter().collect();
    alg.elements()
        .all(|a| alg.lub(alg.down_set(a).intersection(at)) == Some(a))
}

/// Atoms, atomicity and atomisticity; also checks that for each atom `x`
/// and element `a`, `x ▷ a` is `0` or an atom, and an atom exactly when
/// `x ⪯ a`.
pub fn atom_analysis(alg: &FiniteAlgebra) -> Result<AtomAnalysis> {
    let at = atoms(alg);
    let at_set: ElementSet = at.iter().copied().collect();
    for &x in &at {
        for a in alg.elements() {
            let r = alg.restrict(x, a);
            if r != alg.zero() && !at_set.contains(r) {
                return Err(Error::Inconsistent {
                    law: "x ▷ a is 0 or an atom".into(),
                    witness: vec![x, a],
                });
            }
            if at_set.contains(r) != alg.dom_leq(x, a) {
                return Err(Error::Inconsistent {
                    law: "x ▷ a is an atom iff x ⪯ a".into(),
                    witness: vec![x, a],
                });
            }
        }
    }
    Ok(AtomAnalysis {
        atoms: at,
        atomic: is_atomic(alg),
        atomistic: is_atomistic(alg),
    })
}

fn atomic_preconditions(alg: &FiniteAlgebra) -> Result<Vec<Elem>> {
    require_axioms(alg)?;
    let analysis = atom_analysis(alg)?;
    if !analysis.atomic {
        return Err(Error::Precondition("algebra is not atomic".into()));
    }
    Ok(analysis.atoms)
}

/// `aθ = {(x, y) : x, y atoms, x ∼ y, y ≤ a}`
pub fn atomic_theta(alg: &FiniteAlgebra) -> Result<Representation> {
    let at = atomic_preconditions(alg)?;
    let base = Base(at.len() as u32);
    let sim = |x: Elem, y: Elem| alg.dom_leq(x, y) && alg.dom_leq(y, x);
    let assignment = alg
        .elements()
        .map(|a| {
            let mut pairs = Vec::new();
            for (i, &x) in at.iter().enumerate() {
                for (j, &y) in at.iter().enumerate() {
                    if sim(x, y) && alg.leq(y, a) {
                        pairs.push((i, j));
                    }
                }
            }
            relation(base, pairs)
        })
        .collect();
    Ok(Representation {
        source: alg.clone(),
        states: at.into_iter().map(State::Atom).collect(),
        assignment,
        kind: RepresentationKind::AtomicTheta,
    })
}

/// `aη = {([x], x) : x atom, x ≤ a}`; the base is the `∼`-classes of atoms
/// followed by the atoms.
pub fn atomic_eta(alg: &FiniteAlgebra) -> Result<Representation> {
    let at = atomic_preconditions(alg)?;
    let q = domain_quotient(alg)?;
    let mut class_reps: Vec<Elem> = Vec::new();
    let mut class_of_atom = Vec::new();
    for &x in &at {
        let c = q.class_of[x];
        let idx = match class_reps.iter().position(|&r| q.class_of[r] == c) {
            Some(i) => i,
            None => {
                class_reps.push(x);
                class_reps.len() - 1
            }
        };
        class_of_atom.push(idx);
    }
    let offset = class_reps.len();
    let base = Base((offset + at.len()) as u32);
    let assignment = alg
        .elements()
        .map(|a| {
            let pairs: Vec<_> = at
                .iter()
                .enumerate()
                .filter(|(_, &x)| alg.leq(x, a))
                .map(|(j, _)| (class_of_atom[j], offset + j))
                .collect();
            relation(base, pairs)
        })
        .collect();
    let mut states: Vec<State> = class_reps.into_iter().map(State::AtomClass).collect();
    states.extend(at.into_iter().map(State::Atom));
    Ok(Representation {
        source: alg.clone(),
        states,
        assignment,
        kind: RepresentationKind::AtomicEta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerificationFailure {
    BaseMismatch { element: Elem },
    NotFunctional { element: Elem, x: u32, y: u32, z: u32 },
    ZeroNotEmpty,
    NotInjective { a: Elem, b: Elem },
    Minus { a: Elem, b: Elem },
    Restrict { a: Elem, b: Elem },
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationFailure::BaseMismatch { element } => {
                write!(f, "base: value of {element} is over a different base")
            }
            VerificationFailure::NotFunctional { element, x, y, z } => {
                write!(f, "functional: value of {element} has ({x},{y}) and ({x},{z})")
            }
            VerificationFailure::ZeroNotEmpty => write!(f, "zero: value of 0 is nonempty"),
            VerificationFailure::NotInjective { a, b } => {
                write!(f, "injective: {a} and {b} have the same value")
            }
            VerificationFailure::Minus { a, b } => write!(f, "minus: fails at a={a} b={b}"),
            VerificationFailure::Restrict { a, b } => write!(f, "restrict: fails at a={a} b={b}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub failures: Vec<VerificationFailure>,
    /// The image algebra, present when every check passes.
    pub certificate: Option<ConcreteAlgebra>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks functionality of every value, `0 ↦ ∅`, injectivity, and
/// preservation of `-` and `▷` on all pairs. Reports the first witness of
/// each failed check.
pub fn verify_representation(rep: &Representation) -> VerificationReport {
    let alg = &rep.source;
    let base = rep.base();
    let mut failures = Vec::new();
    if rep.assignment.len() != alg.size() {
        return VerificationReport {
            failures: vec![VerificationFailure::BaseMismatch {
                element: rep.assignment.len().min(alg.size()),
            }],
            certificate: None,
        };
    }
    if let Some(a) = alg.elements().find(|&a| rep.assignment[a].base != base) {
        failures.push(VerificationFailure::BaseMismatch { element: a });
        return VerificationReport {
            failures,
            certificate: None,
        };
    }
    if let Some((element, (x, y, z))) = alg
        .elements()
        .find_map(|a| rep.assignment[a].functionality_violation().map(|v| (a, v)))
    {
        failures.push(VerificationFailure::NotFunctional { element, x, y, z });
    }
    if !rep.assignment[alg.zero()].pairs.is_empty() {
        failures.push(VerificationFailure::ZeroNotEmpty);
    }
    'inj: for a in alg.elements() {
        for b in a + 1..alg.size() {
            if rep.assignment[a] == rep.assignment[b] {
                failures.push(VerificationFailure::NotInjective { a, b });
                break 'inj;
            }
        }
    }
    let pairs = || alg.elements().flat_map(|a| alg.elements().map(move |b| (a, b)));
    let v = &rep.assignment;
    if let Some((a, b)) = pairs().find(|&(a, b)| v[a].minus(&v[b]).ok().as_ref() != Some(&v[alg.minus(a, b)])) {
        failures.push(VerificationFailure::Minus { a, b });
    }
    if let Some((a, b)) = pairs().find(|&(a, b)| v[a].restrict(&v[b]).ok().as_ref() != Some(&v[alg.restrict(a, b)])) {
        failures.push(VerificationFailure::Restrict { a, b });
    }
    let certificate = if failures.is_empty() {
        let fns = v
            .iter()
            .map(|r| PartialFunction::from_relation(r.clone()))
            .collect::<Result<Vec<_>>>()
            .expect("checked functional");
        let c = ConcreteAlgebra::from_elements(base, fns).expect("checked closed");
        debug_assert_eq!(c.abstract_alg.table_key(), alg.table_key());
        Some(match alg.names() {
            Some(n) => c.with_names(n.to_vec()).expect("same size"),
            None => c,
        })
    } else {
        None
    };
    VerificationReport { failures, certificate }
}

/// Whether every value of the representation is an injective function.
pub fn all_values_injective(rep: &Representation) -> bool {
    rep.assignment.iter().all(|r| {
        PartialFunction::from_relation(r.clone())
            .map(|f| is_injective_pf(&f))
            .unwrap_or(false)
    })
}

#[derive(Clone, Debug)]
pub struct CompletenessOptions {
    /// Largest algebra scanned over all `2ⁿ` subsets.
    pub exhaustive_cap: usize,
    /// Random subsets drawn above the cap, besides all singletons and pairs.
    pub samples: usize,
    pub seed: u64,
    /// Refuse to sample: error above the cap instead.
    pub require_exhaustive: bool,
}

impl Default for CompletenessOptions {
    fn default() -> Self {
        CompletenessOptions {
            exhaustive_cap: 20,
            samples: 10_000,
            seed: 0,
            require_exhaustive: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub meet_complete: bool,
    pub meet_witness: Option<ElementSet>,
    pub join_complete: bool,
    pub join_witness: Option<ElementSet>,
    pub atomic_rep: bool,
    /// An element and one of its pairs lying under no atom.
    pub atomic_witness: Option<(Elem, (u32, u32))>,
    pub subsets_checked: u64,
    pub exhaustive: bool,
}

impl CompletenessReport {
    pub fn fully_complete(&self) -> bool {
        self.meet_complete && self.join_complete && self.atomic_rep
    }
}

/// Dense bit sets over the pairs occurring in any value.
struct PairSets {
    words: usize,
    sets: Vec<Vec<u64>>,
}

impl PairSets {
    fn new(rep: &Representation) -> Self {
        let all: BTreeSet<(u32, u32)> = rep.assignment.iter().flat_map(|r| r.pairs.iter().copied()).collect();
        let index: Vec<(u32, u32)> = all.into_iter().collect();
        let words = index.len().div_ceil(64).max(1);
        let sets = rep
            .assignment
            .iter()
            .map(|r| {
                let mut bits = vec![0u64; words];
                for p in &r.pairs {
                    let i = index.binary_search(p).unwrap();
                    bits[i / 64] |= 1 << (i % 64);
                }
                bits
            })
            .collect();
        PairSets { words, sets }
    }
}

/// Meet and join completeness over subsets, and atomicity of the
/// representation.
pub fn completeness_report(rep: &Representation) -> Result<CompletenessReport> {
    completeness_report_with(rep, &CompletenessOptions::default())
}

pub fn completeness_report_with(rep: &Representation, opts: &CompletenessOptions) -> Result<CompletenessReport> {
    let alg = &rep.source;
    let n = alg.size();
    let exhaustive = n <= opts.exhaustive_cap;
    if !exhaustive && opts.require_exhaustive {
        return Err(Error::SizeCap {
            what: "completeness subset scan",
            actual: n,
            cap: opts.exhaustive_cap,
        });
    }
    let ps = PairSets::new(rep);
    let mut meet_witness = None;
    let mut join_witness = None;
    let mut checked = 0u64;
    let mut inter = vec![0u64; ps.words];
    let mut uni = vec![0u64; ps.words];
    let mut check = |s: ElementSet, meet_w: &mut Option<ElementSet>, join_w: &mut Option<ElementSet>| {
        inter.iter_mut().for_each(|w| *w = u64::MAX);
        uni.iter_mut().for_each(|w| *w = 0);
        for a in s.iter() {
            for (k, w) in ps.sets[a].iter().enumerate() {
                inter[k] &= w;
                uni[k] |= w;
            }
        }
        if meet_w.is_none() && !s.is_empty() {
            if let Some(m) = alg.glb(s) {
                if ps.sets[m] != inter {
                    *meet_w = Some(s);
                }
            }
        }
        if join_w.is_none() {
            if let Some(j) = alg.lub(s) {
                if ps.sets[j] != uni {
                    *join_w = Some(s);
                }
            }
        }
    };
    if exhaustive {
        for mask in 0u64..1 << n {
            check(ElementSet(mask), &mut meet_witness, &mut join_witness);
            checked += 1;
            if meet_witness.is_some() && join_witness.is_some() {
                break;
            }
        }
    } else {
        let mut subsets = vec![ElementSet::EMPTY];
        for a in 0..n {
            subsets.push(ElementSet::singleton(a));
            for b in a + 1..n {
                subsets.push([a, b].into_iter().collect());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let full = alg.all().0;
        for _ in 0..opts.samples {
            subsets.push(ElementSet(rng.gen::<u64>() & full));
        }
        for s in subsets {
            check(s, &mut meet_witness, &mut join_witness);
            checked += 1;
        }
    }
    let atom_list = atoms(alg);
    let atomic_witness = alg.elements().find_map(|a| {
        rep.assignment[a]
            .pairs
            .iter()
            .find(|p| !atom_list.iter().any(|&x| rep.assignment[x].pairs.contains(p)))
            .map(|&p| (a, p))
    });
    Ok(CompletenessReport {
        meet_complete: meet_witness.is_none(),
        meet_witness,
        join_complete: join_witness.is_none(),
        join_witness,
        atomic_rep: atomic_witness.is_none(),
        atomic_witness,
        subsets_checked: checked,
        exhaustive,
    })
}

/// A map between the elements of two finite algebras.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub source: FiniteAlgebra,
    pub target: FiniteAlgebra,
    pub map: Vec<Elem>,
}

impl Homomorphism {
    pub fn new(source: FiniteAlgebra, target: FiniteAlgebra, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::Shape(format!(
                "map has {} entries for {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some((i, &v)) = map.iter().enumerate().find(|(_, &v)| v >= target.size()) {
            return Err(Error::Table {
                table: "map",
                row: i,
                col: 0,
                value: v,
                size: target.size(),
            });
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(alg: &FiniteAlgebra) -> Self {
        Homomorphism {
            source: alg.clone(),
            target: alg.clone(),
            map: alg.elements().collect(),
        }
    }

    /// A verified representation viewed as a map onto the tables of its image.
    pub fn from_representation(rep: &Representation) -> Result<Self> {
        let report = verify_representation(rep);
        let image = report
            .certificate
            .ok_or_else(|| Error::Precondition(format!("representation fails verification: {}", report.failures[0])))?;
        Ok(Homomorphism {
            source: rep.source.clone(),
            target: image.abstract_alg,
            map: rep.source.elements().collect(),
        })
    }

    fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn check_preserves(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for a in s.elements() {
            for b in s.elements() {
                if self.apply(s.minus(a, b)) != t.minus(self.apply(a), self.apply(b)) {
                    return Err(Error::NotHomomorphism {
                        law: "h(a - b) = h(a) - h(b)",
                        witness: vec![a, b],
                    });
                }
                if self.apply(s.restrict(a, b)) != t.restrict(self.apply(a), self.apply(b)) {
                    return Err(Error::NotHomomorphism {
                        law: "h(a ▷ b) = h(a) ▷ h(b)",
                        witness: vec![a, b],
                    });
                }
            }
        }
        Ok(())
    }

    fn subsets_checked(&self, cap: usize) -> Result<impl Iterator<Item = ElementSet>> {
        let n = self.source.size();
        if n > cap {
            return Err(Error::SizeCap {
                what: "homomorphism subset scan",
                actual: n,
                cap,
            });
        }
        Ok((0u64..1 << n).map(ElementSet))
    }

    fn image_of(&self, s: ElementSet) -> ElementSet {
        s.iter().map(|a| self.apply(a)).collect()
    }

    /// For every nonempty `S` with a meet, `h[S]` has a meet equal to `h(⋀S)`.
    pub fn is_meet_complete(&self) -> Result<bool> {
        Ok(self.subsets_checked(20)?.filter(|s| !s.is_empty()).all(|s| {
            self.source
                .glb(s)
                .is_none_or(|m| self.target.glb(self.image_of(s)) == Some(self.apply(m)))
        }))
    }

    /// For every `S` with a join, `h[S]` has a join equal to `h(⋁S)`.
    pub fn is_join_complete(&self) -> Result<bool> {
        Ok(self.subsets_checked(20)?.all(|s| {
            self.source
                .lub(s)
                .is_none_or(|j| self.target.lub(self.image_of(s)) == Some(self.apply(j)))
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub top: Elem,
    /// `h` maps `a↓` into `h(a)↓` preserving meet, complement, 0 and top.
    pub boolean_hom: bool,
    pub meet_complete: bool,
    pub join_complete: bool,
    /// Whether `h_a` preserves all meets and joins of subsets of `a↓`.
    pub restriction_complete: bool,
}

impl RestrictionReport {
    /// The induced map is a Boolean homomorphism, and it is complete
    /// whenever `h` is meet or join complete.
    pub fn holds(&self) -> bool {
        self.boolean_hom && (!(self.meet_complete || self.join_complete) || self.restriction_complete)
    }
}

/// Checks the map `a↓ → h(a)↓` induced by a homomorphism.
pub fn verify_hom_restriction(h: &Homomorphism, a: Elem) -> Result<RestrictionReport> {
    h.check_preserves()?;
    let (s, t) = (&h.source, &h.target);
    let ha = h.apply(a);
    let dom = boolean_downset(s, a)?;
    let cod = boolean_downset(t, ha)?;
    let cod_set = cod.member_set();
    let boolean_hom = h.apply(s.zero()) == t.zero()
        && dom.members.iter().all(|&b| {
            cod_set.contains(h.apply(b))
                && Some(h.apply(dom.complement_of(b).unwrap())) == cod.complement_of(h.apply(b))
                && dom
                    .members
                    .iter()
                    .all(|&c| h.apply(dom.meet(b, c)) == cod.meet(h.apply(b), h.apply(c)))
        });
    let meet_complete = h.is_meet_complete()?;
    let join_complete = h.is_join_complete()?;
    let restriction_complete = boolean_hom && {
        let m = &dom.members;
        (0u64..1 << m.len()).all(|mask| {
            let sub: Vec<Elem> = (0..m.len()).filter(|i| mask >> i & 1 == 1).map(|i| m[i]).collect();
            let meet = sub.iter().fold(a, |acc, &b| dom.meet(acc, b));
            let join = sub.iter().fold(s.zero(), |acc, &b| dom.join(acc, b));
            let img_meet = sub.iter().fold(ha, |acc, &b| cod.meet(acc, h.apply(b)));
            let img_join = sub.iter().fold(t.zero(), |acc, &b| cod.join(acc, h.apply(b)));
            h.apply(meet) == img_meet && h.apply(join) == img_join
        })
    };
    Ok(RestrictionReport {
        top: a,
        boolean_hom,
        meet_complete,
        join_complete,
        restriction_complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pfun::{boolean_as_diffrest, FieldOfSets};

    fn pairs(r: &Relation) -> Vec<(u32, u32)> {
        r.pairs.iter().copied().collect()
    }

    #[test]
    fn theta_of_f4() {
        let rep = canonical_theta(&fixtures::f4()).unwrap();
        assert_eq!(rep.states.len(), 2);
        // states: μf = {f} (point 1), μg = {g} (point 2)
        assert_eq!(pairs(rep.value(1)), vec![(1, 1), (2, 1)]);
        assert_eq!(pairs(rep.value(2)), vec![(1, 2), (2, 2)]);
        assert!(verify_representation(&rep).passed());
        let theta_f = PartialFunction::from_relation(rep.value(1).clone()).unwrap();
        assert!(!is_injective_pf(&theta_f));
    }

    #[test]
    fn theta_of_f2() {
        let rep = canonical_theta(&fixtures::f2()).unwrap();
        assert_eq!(pairs(rep.value(3)), vec![(1, 1), (2, 2)]);
        assert_eq!(pairs(rep.value(1)), vec![(1, 1)]);
        let report = verify_representation(&rep);
        assert!(report.passed());
        assert!(report.certificate.unwrap().is_coherent());
    }

    #[test]
    fn theta_of_f0_is_empty() {
        let rep = canonical_theta(&fixtures::f0()).unwrap();
        assert!(rep.states.is_empty());
        assert!(rep.value(0).pairs.is_empty());
        assert!(verify_representation(&rep).passed());
    }

    #[test]
    fn theta_refuses_non_axiom_input() {
        assert!(matches!(
            canonical_theta(&fixtures::n1()).unwrap_err(),
            Error::Axioms(_)
        ));
        assert!(matches!(injective_eta(&fixtures::n1()).unwrap_err(), Error::Axioms(_)));
    }

    #[test]
    fn eta_examples() {
        let rep = injective_eta(&fixtures::f4()).unwrap();
        // one class point, then the two filters
        assert_eq!(rep.states.len(), 3);
        assert_eq!(pairs(rep.value(1)), vec![(1, 2)]);
        assert!(all_values_injective(&rep));
        assert!(verify_representation(&rep).passed());

        let rep = injective_eta(&fixtures::f2()).unwrap();
        let h = pairs(rep.value(3));
        assert_eq!(h.len(), 2);
        assert_ne!(h[0].0, h[1].0);
        assert!(all_values_injective(&rep));

        let rep = injective_eta(&fixtures::f0()).unwrap();
        assert!(rep.states.is_empty());
    }

    #[test]
    fn atom_examples() {
        let f2 = fixtures::f2();
        let a = atom_analysis(&f2).unwrap();
        assert_eq!(a.atoms, vec![1, 2]);
        assert!(a.atomic && a.atomistic);
        let f4 = fixtures::f4();
        assert_eq!(atoms(&f4), vec![1, 2]);
        assert_eq!(f4.restrict(1, 2), 2);
        assert!(f4.dom_leq(1, 2));
        for alg in fixtures::all_functional() {
            let a = atom_analysis(&alg).unwrap();
            assert!(a.atomic && a.atomistic);
        }
        assert!(atoms(&fixtures::f0()).is_empty());
    }

    #[test]
    fn atomic_constructions() {
        let rep = atomic_theta(&fixtures::f4()).unwrap();
        assert_eq!(rep.states, vec![State::Atom(1), State::Atom(2)]);
        assert_eq!(pairs(rep.value(1)), vec![(1, 1), (2, 1)]);
        assert!(verify_representation(&rep).passed());

        let rep = atomic_theta(&fixtures::f3()).unwrap();
        assert_eq!(pairs(rep.value(1)), vec![(1, 1)]);

        let rep = atomic_theta(&fixtures::f0()).unwrap();
        assert!(rep.states.is_empty());

        for alg in fixtures::all_functional() {
            for rep in [atomic_theta(&alg).unwrap(), atomic_eta(&alg).unwrap()] {
                assert!(verify_representation(&rep).passed(), "{rep}");
                assert!(completeness_report(&rep).unwrap().fully_complete());
            }
            assert!(all_values_injective(&atomic_eta(&alg).unwrap()));
        }
    }

    #[test]
    fn corrupted_assignment_fails_injectivity() {
        let mut rep = canonical_theta(&fixtures::f2()).unwrap();
        rep.assignment[1] = Relation::empty(rep.base());
        rep.assignment[2] = Relation::empty(rep.base());
        let report = verify_representation(&rep);
        assert!(report
            .failures
            .contains(&VerificationFailure::NotInjective { a: 0, b: 1 }));
        assert!(report.certificate.is_none());
    }

    #[test]
    fn corrupted_distinct_values_fail_preservation() {
        let mut rep = canonical_theta(&fixtures::f2()).unwrap();
        rep.assignment.swap(1, 2);
        rep.assignment[3] = Relation::new(rep.base(), [(1, 2), (2, 2)]).unwrap();
        let report = verify_representation(&rep);
        assert!(!report.passed());
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, VerificationFailure::Minus { .. })));
    }

    #[test]
    fn identity_functions_represent_boolean_algebra() {
        let c = boolean_as_diffrest(&FieldOfSets::powerset(2)).unwrap();
        let rep = Representation::from_concrete(&c);
        assert!(verify_representation(&rep).passed());
    }

    #[test]
    fn completeness_examples() {
        let rep = atomic_theta(&fixtures::f2()).unwrap();
        let [k, m, h] = [1, 2, 3];
        let s: ElementSet = [k, m].into_iter().collect();
        assert_eq!(rep.source.lub(s), Some(h));
        let union: BTreeSet<_> = rep.value(k).pairs.union(&rep.value(m).pairs).copied().collect();
        assert_eq!(rep.value(h).pairs, union);
        assert!(completeness_report(&rep).unwrap().fully_complete());

        let rep = canonical_theta(&fixtures::f4()).unwrap();
        let report = completeness_report(&rep).unwrap();
        assert_eq!(report.subsets_checked, 8);
        assert!(report.fully_complete() && report.exhaustive);
    }

    #[test]
    fn completeness_detects_incomplete_map() {
        // F3 embedded in F2's representation with an extra point under
        // no atom: values {k}, {m} plus a stray pair on the top-less union
        let f3 = fixtures::f3();
        let base = Base(3);
        let rep = Representation {
            source: f3.clone(),
            states: (1..=3).map(State::Point).collect(),
            assignment: vec![
                Relation::empty(base),
                Relation::new(base, [(1, 1)]).unwrap(),
                Relation::new(base, [(2, 2)]).unwrap(),
            ],
            kind: RepresentationKind::External,
        };
        assert!(completeness_report(&rep).unwrap().fully_complete());
        // meet of {k, m} is 0 ↦ ∅; the join does not exist
        let report = completeness_report_with(
            &rep,
            &CompletenessOptions {
                exhaustive_cap: 1,
                require_exhaustive: true,
                ..Default::default()
            },
        );
        assert!(matches!(report.unwrap_err(), Error::SizeCap { .. }));
    }

    #[test]
    fn sampling_above_cap() {
        let rep = canonical_theta(&fixtures::f2()).unwrap();
        let opts = CompletenessOptions {
            exhaustive_cap: 2,
            samples: 50,
            ..Default::default()
        };
        let r = completeness_report_with(&rep, &opts).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.subsets_checked, 1 + 4 + 6 + 50);
        assert!(r.fully_complete());
    }

    #[test]
    fn hom_restrictions() {
        let f2 = fixtures::f2();
        let theta = canonical_theta(&f2).unwrap();
        let h = Homomorphism::from_representation(&theta).unwrap();
        let r = verify_hom_restriction(&h, 3).unwrap();
        assert!(r.holds() && r.restriction_complete && r.meet_complete && r.join_complete);

        for alg in fixtures::all_functional() {
            let id = Homomorphism::identity(&alg);
            for a in alg.elements() {
                assert!(verify_hom_restriction(&id, a).unwrap().holds());
            }
        }

        let constant_k = Homomorphism::new(f2.clone(), f2.clone(), vec![1; 4]).unwrap();
        assert!(matches!(
            verify_hom_restriction(&constant_k, 3).unwrap_err(),
            Error::NotHomomorphism { .. }
        ));
    }

    #[test]
    fn constant_zero_map_is_a_homomorphism() {
        // 0 - 0 = 0 and 0 ▷ 0 = 0, so collapsing everything to 0 preserves
        // both operations, and every image set is {0}
        let f2 = fixtures::f2();
        let zero = Homomorphism::new(f2.clone(), f2.clone(), vec![0; 4]).unwrap();
        zero.check_preserves().unwrap();
        let r = verify_hom_restriction(&zero, 3).unwrap();
        assert!(r.boolean_hom && r.meet_complete && r.join_complete);
        assert!(r.holds());
    }
}
