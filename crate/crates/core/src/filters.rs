//! Filters of the derived meet-semilattice, the lifted domain preorder
//! `F ⪯̂ G ⟺ G ▷ F ⊆ F`, maximal filters and their relation to the
//! ultrafilters of the Boolean downsets.

use crate::algebra::downset::boolean_downset;
use crate::algebra::quotient::{domain_quotient, DomainQuotient};
use crate::algebra::{Elem, ElementSet, FiniteAlgebra};
use crate::error::{Error, Result};

/// A nonempty, upward closed, meet-closed set of elements.
pub type Filter = ElementSet;

fn inconsistent(law: &str, witness: Vec<Elem>) -> Error {
    Error::Inconsistent {
        law: law.to_string(),
        witness,
    }
}

pub fn is_filter(alg: &FiniteAlgebra, s: ElementSet) -> bool {
    !s.is_empty()
        && s.iter().all(|a| alg.up_set(a).is_subset(s))
        && s.iter().all(|a| s.iter().all(|b| s.contains(alg.meet(a, b))))
}

pub fn is_proper(alg: &FiniteAlgebra, f: Filter) -> bool {
    !f.contains(alg.zero())
}

/// `S ▷ T = {s ▷ t : s ∈ S, t ∈ T}`
pub fn restrict_sets(alg: &FiniteAlgebra, s: ElementSet, t: ElementSet) -> ElementSet {
    let mut out = ElementSet::EMPTY;
    for a in s.iter() {
        for b in t.iter() {
            out.insert(alg.restrict(a, b));
        }
    }
    out
}

/// `F ⪯̂ G ⟺ G ▷ F ⊆ F`
pub fn domhat(alg: &FiniteAlgebra, f: Filter, g: Filter) -> bool {
    g.iter().all(|b| f.iter().all(|a| f.contains(alg.restrict(b, a))))
}

/// Every filter, found by scanning all `2ⁿ` subsets. Independent of the
/// enumeration used by [`enumerate_filters`]; for cross-checking at small
/// sizes.
pub fn brute_force_filters(alg: &FiniteAlgebra) -> Result<Vec<Filter>> {
    let n = alg.size();
    if n > 20 {
        return Err(Error::SizeCap {
            what: "subset scan",
            actual: n,
            cap: 20,
        });
    }
    let mut out: Vec<Filter> = (1u64..1 << n).map(ElementSet).filter(|&s| is_filter(alg, s)).collect();
    out.sort_by(|a, b| a.lex_cmp(*b));
    Ok(out)
}

/// `F` is maximal iff it is proper and some `a ∈ F` has, for every `b`,
/// exactly one of `a ⊓ b` and `a - b` in `F`.
pub fn is_maximal(alg: &FiniteAlgebra, f: Filter) -> bool {
    is_proper(alg, f)
        && f.iter().any(|a| {
            alg.elements()
                .all(|b| f.contains(alg.meet(a, b)) != f.contains(alg.minus(a, b)))
        })
}

/// Maximal filters in lexicographic order of their member lists.
pub fn maximal_filters(alg: &FiniteAlgebra) -> Vec<Filter> {
    principal_filters(alg)
        .into_iter()
        .filter(|&f| is_maximal(alg, f))
        .collect()
}

/// The order-theoretic maxima among proper filters, from a subset scan.
pub fn brute_force_maximal_filters(alg: &FiniteAlgebra) -> Result<Vec<Filter>> {
    let proper: Vec<Filter> = brute_force_filters(alg)?
        .into_iter()
        .filter(|&f| is_proper(alg, f))
        .collect();
    Ok(proper
        .iter()
        .copied()
        .filter(|&f| !proper.iter().any(|&g| g != f && f.is_subset(g)))
        .collect())
}

/// In a finite meet-semilattice a filter contains the meet of all its
/// members, so every filter is principal.
fn principal_filters(alg: &FiniteAlgebra) -> Vec<Filter> {
    let mut out: Vec<Filter> = alg
        .elements()
        .map(|a| alg.up_set(a))
        .filter(|&s| is_filter(alg, s))
        .collect();
    out.sort_by(|a, b| a.lex_cmp(*b));
    out.dedup();
    out
}

#[derive(Clone, Debug)]
pub struct FilterFamily {
    pub parent: FiniteAlgebra,
    pub quotient: DomainQuotient,
    /// `quotient` as an algebra, for filters of `A/∼`.
    pub quotient_alg: FiniteAlgebra,
    /// All filters, full filter included, in lexicographic order.
    pub all_filters: Vec<Filter>,
    /// Indices of the maximal proper filters.
    pub maximal: Vec<usize>,
    /// `domhat[i]` holds the indices `j` with `all_filters[i] ⪯̂ all_filters[j]`.
    pub domhat: Vec<ElementSet>,
    /// `≈`-class of each filter, numbered by least member filter.
    pub approx_class: Vec<usize>,
}

pub fn enumerate_filters(alg: &FiniteAlgebra) -> Result<FilterFamily> {
    let quotient = domain_quotient(alg)?;
    let all_filters = principal_filters(alg);
    let k = all_filters.len();
    if !all_filters.contains(&alg.all()) {
        return Err(inconsistent("full filter is a filter", vec![]));
    }
    let maximal = (0..k).filter(|&i| is_maximal(alg, all_filters[i])).collect();
    let domhat: Vec<ElementSet> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| {
                    let product = restrict_sets(alg, all_filters[j], all_filters[i]);
                    alg.up_closure(product).is_subset(all_filters[i])
                })
                .collect()
        })
        .collect();
    let mut approx_class = vec![usize::MAX; k];
    let mut next = 0;
    for i in 0..k {
        if approx_class[i] == usize::MAX {
            for j in i..k {
                if domhat[i].contains(j) && domhat[j].contains(i) {
                    approx_class[j] = next;
                }
            }
            next += 1;
        }
    }
    let fam = FilterFamily {
        parent: alg.clone(),
        quotient_alg: quotient.as_algebra(),
        quotient,
        all_filters,
        maximal,
        domhat,
        approx_class,
    };
    // ⪯̂ is a preorder containing ⊇
    for i in 0..k {
        for j in 0..k {
            if fam.all_filters[j].is_subset(fam.all_filters[i]) && !fam.domhat[i].contains(j) {
                return Err(inconsistent("⪯̂ contains ⊇", fam.all_filters[i].to_vec()));
            }
            if fam.domhat[i].contains(j) && !fam.domhat[j].is_subset(fam.domhat[i]) {
                return Err(inconsistent("⪯̂ transitive", fam.all_filters[i].to_vec()));
            }
        }
    }
    Ok(fam)
}

impl FilterFamily {
    pub fn index_of(&self, f: Filter) -> Option<usize> {
        self.all_filters.iter().position(|&g| g == f)
    }

    pub fn maximal_filters(&self) -> Vec<Filter> {
        self.maximal.iter().map(|&i| self.all_filters[i]).collect()
    }

    pub fn full_filter(&self) -> Filter {
        self.parent.all()
    }

    pub fn domhat(&self, f: Filter, g: Filter) -> bool {
        match (self.index_of(f), self.index_of(g)) {
            (Some(i), Some(j)) => self.domhat[i].contains(j),
            _ => domhat(&self.parent, f, g),
        }
    }

    pub fn approx(&self, f: Filter, g: Filter) -> bool {
        self.domhat(f, g) && self.domhat(g, f)
    }

    /// `≈`-class id of a filter.
    pub fn class_of(&self, f: Filter) -> usize {
        self.approx_class[self.index_of(f).expect("a filter of this algebra")]
    }

    pub fn class_count(&self) -> usize {
        self.approx_class.iter().max().map_or(0, |m| m + 1)
    }

    /// `(G ▷ F)↑`, the representative of `⟦F⟧ ∧ ⟦G⟧`.
    pub fn filter_meet(&self, f: Filter, g: Filter) -> Result<Filter> {
        let alg = &self.parent;
        let m = alg.up_closure(restrict_sets(alg, g, f));
        if !is_filter(alg, m) {
            return Err(inconsistent("(G ▷ F)↑ is a filter", m.to_vec()));
        }
        // it is the greatest lower bound of ⟦F⟧ and ⟦G⟧ in the ⪯̂ order
        if !(self.domhat(m, f) && self.domhat(m, g)) {
            return Err(inconsistent("(G ▷ F)↑ is a lower bound", m.to_vec()));
        }
        for &h in &self.all_filters {
            if self.domhat(h, f) && self.domhat(h, g) && !self.domhat(h, m) {
                return Err(inconsistent("(G ▷ F)↑ is the greatest lower bound", h.to_vec()));
            }
        }
        Ok(m)
    }

    /// The bijection between maximal filters containing `a` and the
    /// ultrafilters of the Boolean algebra `a↓`.
    pub fn ultrafilter_bijection(&self, a: Elem) -> Result<UltrafilterBijection> {
        let alg = &self.parent;
        if a == alg.zero() {
            return Ok(UltrafilterBijection { top: a, pairs: vec![] });
        }
        let down = boolean_downset(alg, a)?;
        let down_set = down.member_set();
        let ultrafilters = down.ultrafilters();
        let containing: Vec<Filter> = self.maximal_filters().into_iter().filter(|mu| mu.contains(a)).collect();
        let mut pairs = Vec::new();
        for &mu in &containing {
            let nu = mu.intersection(down_set);
            if !ultrafilters.contains(&nu) {
                return Err(inconsistent("μ ∩ a↓ is an ultrafilter", mu.to_vec()));
            }
            if alg.up_closure(nu) != mu {
                return Err(inconsistent("(μ ∩ a↓)↑ = μ", mu.to_vec()));
            }
            pairs.push((mu, nu));
        }
        for &nu in &ultrafilters {
            let mu = alg.up_closure(nu);
            if !is_maximal(alg, mu) {
                return Err(inconsistent("ν↑ is maximal", nu.to_vec()));
            }
            if mu.intersection(down_set) != nu {
                return Err(inconsistent("ν↑ ∩ a↓ = ν", nu.to_vec()));
            }
            if !containing.contains(&mu) {
                return Err(inconsistent("ν↑ contains a", nu.to_vec()));
            }
        }
        if ultrafilters.len() != containing.len() {
            return Err(inconsistent("bijection cardinality", vec![a]));
        }
        Ok(UltrafilterBijection { top: a, pairs })
    }

    /// A maximal filter containing the proper filter `f`: the least member
    /// `a` of `f` is chosen, then the lexicographically least ultrafilter of
    /// `a↓` extending `f ∩ a↓`, which is lifted by upward closure.
    pub fn extend_to_maximal(&self, f: Filter) -> Result<Filter> {
        let alg = &self.parent;
        if !is_filter(alg, f) {
            return Err(Error::Precondition(format!("{f:?} is not a filter")));
        }
        if !is_proper(alg, f) {
            return Err(Error::Precondition(
                "the improper filter has no maximal extension".into(),
            ));
        }
        let a = f.min().expect("filters are nonempty");
        let down = boolean_downset(alg, a)?;
        let trace = f.intersection(down.member_set());
        let nu = down
            .ultrafilters()
            .into_iter()
            .find(|nu| trace.is_subset(*nu))
            .ok_or_else(|| inconsistent("some ultrafilter extends F ∩ a↓", f.to_vec()))?;
        let mu = alg.up_closure(nu);
        if !is_maximal(alg, mu) || !f.is_subset(mu) {
            return Err(inconsistent("extension is a maximal superset", f.to_vec()));
        }
        Ok(mu)
    }

    /// `π[F]↑` as a set of quotient classes. Checks `F ⪯̂ G ⟺ π[G]↑ ⊆ π[F]↑`
    /// against every filter `G`.
    pub fn project_filter(&self, f: Filter) -> Result<ElementSet> {
        let pf = self.project_raw(f);
        for &g in &self.all_filters {
            let pg = self.project_raw(g);
            if self.domhat(f, g) != pg.is_subset(pf) {
                return Err(inconsistent("F ⪯̂ G iff π[G]↑ ⊆ π[F]↑", g.to_vec()));
            }
        }
        Ok(pf)
    }

    fn project_raw(&self, f: Filter) -> ElementSet {
        let q = &self.quotient_alg;
        let classes: ElementSet = f.iter().map(|a| self.quotient.class_of[a]).collect();
        q.up_closure(classes)
    }

    /// `(μ/∼)↑`, checked to be a maximal filter of the quotient.
    pub fn filter_down(&self, mu: Filter) -> Result<ElementSet> {
        if !is_maximal(&self.parent, mu) {
            return Err(Error::Precondition(format!("{mu:?} is not maximal")));
        }
        let image = self.project_raw(mu);
        let q = &self.quotient_alg;
        if !is_filter(q, image) || !is_maximal(q, image) {
            return Err(inconsistent("(μ/∼)↑ is maximal in A/∼", mu.to_vec()));
        }
        Ok(image)
    }

    /// Computes `(μ ▷ F)↑`; when proper it must be maximal, and properness
    /// must coincide with `μ ⪯̂ F`.
    pub fn filter_up_check(&self, mu: Filter, f: Filter) -> Result<FilterUp> {
        let alg = &self.parent;
        if !is_maximal(alg, mu) {
            return Err(Error::Precondition(format!("{mu:?} is not maximal")));
        }
        let up = alg.up_closure(restrict_sets(alg, mu, f));
        let proper = is_proper(alg, up);
        if proper && !is_maximal(alg, up) {
            return Err(inconsistent("proper (μ ▷ F)↑ is maximal", up.to_vec()));
        }
        if proper != self.domhat(mu, f) {
            return Err(inconsistent("(μ ▷ F)↑ maximal iff μ ⪯̂ F", f.to_vec()));
        }
        if proper && !self.approx(mu, up) {
            return Err(inconsistent("μ ≈ (μ ▷ F)↑", f.to_vec()));
        }
        Ok(if proper {
            FilterUp::Maximal(up)
        } else {
            FilterUp::Improper
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterUp {
    Maximal(Filter),
    Improper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltrafilterBijection {
    pub top: Elem,
    /// `(μ, μ ∩ a↓)` for each maximal filter `μ ∋ a`.
    pub pairs: Vec<(Filter, ElementSet)>,
}

impl UltrafilterBijection {
    pub fn forward(&self, mu: Filter) -> Option<ElementSet> {
        self.pairs.iter().find(|p| p.0 == mu).map(|p| p.1)
    }

    pub fn backward(&self, nu: ElementSet) -> Option<Filter> {
        self.pairs.iter().find(|p| p.1 == nu).map(|p| p.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[Elem]) -> ElementSet {
        xs.iter().copied().collect()
    }

    const Z: Elem = 0;
    const K: Elem = 1;
    const M: Elem = 2;
    const H: Elem = 3;

    #[test]
    fn f2_filters() {
        let fam = enumerate_filters(&fixtures::f2()).unwrap();
        assert_eq!(
            fam.all_filters,
            vec![set(&[Z, K, M, H]), set(&[K, H]), set(&[M, H]), set(&[H])]
        );
        assert_eq!(fam.maximal_filters(), vec![set(&[K, H]), set(&[M, H])]);
        assert_eq!(brute_force_filters(&fam.parent).unwrap(), fam.all_filters);
    }

    #[test]
    fn f4_filters_and_approx() {
        let fam = enumerate_filters(&fixtures::f4()).unwrap();
        let (f, g) = (set(&[1]), set(&[2]));
        assert_eq!(fam.all_filters, vec![set(&[0, 1, 2]), f, g]);
        assert!(fam.approx(f, g));
        assert_eq!(fam.class_of(f), fam.class_of(g));
        assert_eq!(fam.maximal_filters(), vec![f, g]);
    }

    #[test]
    fn f0_only_full_filter() {
        let fam = enumerate_filters(&fixtures::f0()).unwrap();
        assert_eq!(fam.all_filters, vec![set(&[0])]);
        assert!(fam.maximal.is_empty());
    }

    #[test]
    fn filter_meets() {
        let fam = enumerate_filters(&fixtures::f2()).unwrap();
        let full = fam.full_filter();
        assert_eq!(fam.filter_meet(set(&[K, H]), set(&[M, H])).unwrap(), full);
        let fam4 = enumerate_filters(&fixtures::f4()).unwrap();
        assert_eq!(fam4.filter_meet(set(&[1]), set(&[2])).unwrap(), set(&[1]));
        for fam in fixtures::all_functional().iter().map(|a| enumerate_filters(a).unwrap()) {
            for &f in &fam.all_filters {
                assert_eq!(fam.filter_meet(f, f).unwrap(), f);
            }
        }
    }

    #[test]
    fn maximality() {
        let f2 = fixtures::f2();
        assert!(!is_maximal(&f2, set(&[H])));
        // neither h ⊓ k = k nor h - k = m lies in {h}
        assert!(!set(&[H]).contains(f2.meet(H, K)) && !set(&[H]).contains(f2.minus(H, K)));
        assert_eq!(maximal_filters(&fixtures::f1()), vec![set(&[1])]);
        assert!(maximal_filters(&fixtures::f0()).is_empty());
        for alg in fixtures::all_functional() {
            assert_eq!(maximal_filters(&alg), brute_force_maximal_filters(&alg).unwrap());
        }
    }

    #[test]
    fn ultrafilter_bijections() {
        let fam = enumerate_filters(&fixtures::f2()).unwrap();
        let b = fam.ultrafilter_bijection(H).unwrap();
        assert_eq!(b.pairs.len(), 2);
        assert_eq!(b.forward(set(&[K, H])), Some(set(&[K, H])));
        let b = fam.ultrafilter_bijection(K).unwrap();
        assert_eq!(b.pairs, vec![(set(&[K, H]), set(&[K]))]);
        assert!(fam.ultrafilter_bijection(Z).unwrap().pairs.is_empty());
        // atoms: a↓ = {0, a}, one ultrafilter {a}
        for x in [K, M] {
            let b = fam.ultrafilter_bijection(x).unwrap();
            assert_eq!(b.pairs.len(), 1);
            assert_eq!(b.pairs[0].1, set(&[x]));
        }
    }

    #[test]
    fn extensions() {
        let fam = enumerate_filters(&fixtures::f2()).unwrap();
        assert_eq!(fam.extend_to_maximal(set(&[H])).unwrap(), set(&[K, H]));
        for mu in fam.maximal_filters() {
            assert_eq!(fam.extend_to_maximal(mu).unwrap(), mu);
        }
        assert!(matches!(
            fam.extend_to_maximal(fam.full_filter()).unwrap_err(),
            Error::Precondition(_)
        ));
        let fam4 = enumerate_filters(&fixtures::f4()).unwrap();
        assert_eq!(fam4.extend_to_maximal(set(&[1])).unwrap(), set(&[1]));
    }

    #[test]
    fn projections() {
        let fam = enumerate_filters(&fixtures::f4()).unwrap();
        let pf = fam.project_filter(set(&[1])).unwrap();
        let pg = fam.project_filter(set(&[2])).unwrap();
        assert_eq!(pf, pg);
        assert_eq!(pf, set(&[fam.quotient.class_of[1]]));
        for mu in fam.maximal_filters() {
            fam.filter_down(mu).unwrap();
        }
    }

    #[test]
    fn filter_up() {
        let fam = enumerate_filters(&fixtures::f2()).unwrap();
        let (kh, mh) = (set(&[K, H]), set(&[M, H]));
        assert_eq!(fam.filter_up_check(kh, set(&[M, H])).unwrap(), FilterUp::Improper);
        assert!(!fam.domhat(kh, mh));
        for mu in fam.maximal_filters() {
            assert_eq!(fam.filter_up_check(mu, mu).unwrap(), FilterUp::Maximal(mu));
        }
    }

    #[test]
    fn filter_lemmas_on_fixtures() {
        for alg in fixtures::all_functional() {
            let fam = enumerate_filters(&alg).unwrap();
            // a ⪯ b iff a↑ ⪯̂ b↑
            for a in alg.elements() {
                for b in alg.elements() {
                    assert_eq!(alg.dom_leq(a, b), fam.domhat(alg.up_set(a), alg.up_set(b)));
                }
            }
            for &f in &fam.all_filters {
                if fam.domhat(f, fam.full_filter()) {
                    assert_eq!(f, fam.full_filter());
                }
                for &g in &fam.all_filters {
                    if !f.intersection(g).is_empty() {
                        assert_eq!(fam.domhat(f, g), g.is_subset(f));
                    }
                }
            }
        }
    }
}
