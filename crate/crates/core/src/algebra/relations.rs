use super::{Elem, ElementSet, FiniteAlgebra};
use crate::error::{Error, Result};

/// A binary relation on the elements of a finite algebra, one bit row per
/// element: `rows[a].contains(b)` means `a R b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemRelation {
    rows: Vec<ElementSet>,
}

impl ElemRelation {
    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> bool) -> Self {
        ElemRelation {
            rows: (0..n).map(|a| (0..n).filter(|&b| f(a, b)).collect()).collect(),
        }
    }

    #[inline]
    pub fn holds(&self, a: Elem, b: Elem) -> bool {
        self.rows[a].contains(b)
    }

    /// `{b : a R b}`
    pub fn successors(&self, a: Elem) -> ElementSet {
        self.rows[a]
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|a| self.holds(a, a))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.size()).all(|a| self.rows[a].iter().all(|b| self.rows[b].is_subset(self.rows[a])))
    }

    pub fn is_subset(&self, other: &ElemRelation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(r, o)| r.is_subset(*o))
    }

    pub fn converse(&self) -> Self {
        ElemRelation::from_fn(self.size(), |a, b| self.holds(b, a))
    }

    pub fn intersection(&self, other: &ElemRelation) -> Self {
        ElemRelation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(r, o)| r.intersection(*o))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DerivedRelations {
    /// `a ≤ b ⟺ a ⊓ b = a`
    pub leq: ElemRelation,
    /// `a ⪯ b ⟺ a = b ▷ a`
    pub domleq: ElemRelation,
    /// `∼`, the equivalence induced by `⪯`
    pub domeq: ElemRelation,
}

impl DerivedRelations {
    /// The strict domain relation `a ≺ b`: `a ⪯ b` and not `a ∼ b`.
    /// Evaluated on demand; no table is kept for it.
    pub fn dom_strict(&self, a: Elem, b: Elem) -> bool {
        self.domleq.holds(a, b) && !self.domeq.holds(a, b)
    }
}

/// Computes `≤`, `⪯` and `∼`, asserting that `⪯` is a preorder containing
/// `≤`, that `a ⪯ 0` forces `a = 0`, and that `a ≤ b ⪯ a` forces `a = b`.
pub fn derived_relations(alg: &FiniteAlgebra) -> Result<DerivedRelations> {
    let n = alg.size();
    let leq = ElemRelation::from_fn(n, |a, b| alg.leq(a, b));
    let domleq = ElemRelation::from_fn(n, |a, b| alg.dom_leq(a, b));
    let domeq = domleq.intersection(&domleq.converse());

    let fail = |law: &str, witness: Vec<Elem>| Error::Inconsistent {
        law: law.to_string(),
        witness,
    };
    if let Some(a) = (0..n).find(|&a| !domleq.holds(a, a)) {
        return Err(fail("⪯ reflexive", vec![a]));
    }
    for a in 0..n {
        for b in domleq.successors(a).iter() {
            if let Some(c) = domleq.successors(b).difference(domleq.successors(a)).min() {
                return Err(fail("⪯ transitive", vec![a, b, c]));
            }
        }
        if let Some(b) = leq.successors(a).difference(domleq.successors(a)).min() {
            return Err(fail("≤ contained in ⪯", vec![a, b]));
        }
    }
    let z = alg.zero();
    if let Some(a) = (0..n).find(|&a| a != z && domleq.holds(a, z)) {
        return Err(fail("a ⪯ 0 implies a = 0", vec![a]));
    }
    for a in 0..n {
        for b in leq.successors(a).iter() {
            if a != b && domleq.holds(b, a) {
                return Err(fail("a ≤ b and b ⪯ a imply a = b", vec![a, b]));
            }
        }
    }
    Ok(DerivedRelations { leq, domleq, domeq })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn f2_domain_order() {
        let r = derived_relations(&fixtures::f2()).unwrap();
        let [k, h] = [1, 3];
        assert!(r.domleq.holds(k, h));
        assert!(!r.domleq.holds(h, k));
        assert!(r.dom_strict(k, h));
    }

    #[test]
    fn f4_equal_domains() {
        let r = derived_relations(&fixtures::f4()).unwrap();
        let [f, g] = [1, 2];
        assert!(r.domeq.holds(f, g));
        assert!(!r.leq.holds(f, g));
        assert!(!r.dom_strict(f, g));
    }

    #[test]
    fn zero_is_domain_bottom() {
        for alg in fixtures::all_functional() {
            let r = derived_relations(&alg).unwrap();
            let z = alg.zero();
            for a in alg.elements() {
                assert!(r.domleq.holds(z, a));
                if r.domleq.holds(a, z) {
                    assert_eq!(a, z);
                }
            }
            assert!(r.domleq.is_reflexive() && r.domleq.is_transitive());
            assert!(r.leq.is_subset(&r.domleq));
        }
    }

    #[test]
    fn relational_algebra_breaks_domain_order() {
        // in N1, d ≤ c while c ⪯ d (c = d ▷ c)
        let n1 = fixtures::n1();
        let err = derived_relations(&n1).unwrap_err();
        assert!(matches!(err, Error::Inconsistent { .. }));
    }
}
