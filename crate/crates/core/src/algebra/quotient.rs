use super::laws::check_subtraction_axioms;
use super::relations::derived_relations;
use super::{Elem, FiniteAlgebra};
use crate::error::{Error, Result};

/// The quotient `A/∼` of an algebra by domain equivalence, with the meet
/// `[a] ∧ [b] = [a ▷ b]` and subtraction `[a] - [b] = [a - (b ▷ a)]`.
#[derive(Clone, Debug)]
pub struct DomainQuotient {
    pub parent: FiniteAlgebra,
    /// The projection `π`.
    pub class_of: Vec<usize>,
    /// Least member of each class.
    pub class_rep: Vec<Elem>,
    pub meet: Vec<Vec<usize>>,
    pub qminus: Vec<Vec<usize>>,
}

impl DomainQuotient {
    pub fn class_count(&self) -> usize {
        self.class_rep.len()
    }

    pub fn members(&self, class: usize) -> Vec<Elem> {
        self.parent.elements().filter(|&a| self.class_of[a] == class).collect()
    }

    /// The quotient as a finite algebra whose `-` is the quotient
    /// subtraction and whose `▷` is the quotient meet.
    pub fn as_algebra(&self) -> FiniteAlgebra {
        let alg = FiniteAlgebra::new(self.qminus.clone(), self.meet.clone()).expect("quotient tables are well formed");
        let names = self
            .class_rep
            .iter()
            .map(|&r| format!("[{}]", self.parent.name(r)))
            .collect();
        alg.with_names(names).expect("one name per class")
    }
}

pub fn domain_quotient(alg: &FiniteAlgebra) -> Result<DomainQuotient> {
    let rel = derived_relations(alg)?;
    let n = alg.size();
    let mut class_of = vec![usize::MAX; n];
    let mut class_rep = Vec::new();
    for a in 0..n {
        if class_of[a] == usize::MAX {
            let id = class_rep.len();
            class_rep.push(a);
            for b in rel.domeq.successors(a).iter() {
                class_of[b] = id;
            }
        }
    }
    let c = class_rep.len();
    let mut meet = vec![vec![usize::MAX; c]; c];
    let mut qminus = vec![vec![usize::MAX; c]; c];
    let inconsistent = |law: &str, witness: Vec<Elem>| Error::Inconsistent {
        law: law.to_string(),
        witness,
    };
    for a in 0..n {
        for b in 0..n {
            let (pa, pb) = (class_of[a], class_of[b]);
            let m = class_of[alg.restrict(a, b)];
            if meet[pa][pb] == usize::MAX {
                meet[pa][pb] = m;
            } else if meet[pa][pb] != m {
                return Err(inconsistent("[a] ∧ [b] = [a ▷ b] well defined", vec![a, b]));
            }
            let d = class_of[alg.minus(a, alg.restrict(b, a))];
            if qminus[pa][pb] == usize::MAX {
                qminus[pa][pb] = d;
            } else if qminus[pa][pb] != d {
                return Err(inconsistent("[a] - [b] = [a - (b ▷ a)] well defined", vec![a, b]));
            }
        }
    }
    let q = DomainQuotient {
        parent: alg.clone(),
        class_of,
        class_rep,
        meet,
        qminus,
    };

    // the quotient is a subtraction algebra whose derived meet is ∧
    let qa = q.as_algebra();
    let report = check_subtraction_axioms(&qa);
    if let Some(r) = report.failures().next() {
        let w = match &r.verdict {
            super::laws::Verdict::Fail(w) => w.clone(),
            super::laws::Verdict::Pass => unreachable!(),
        };
        return Err(inconsistent(&format!("quotient {}", r.law), w));
    }
    for x in 0..c {
        for y in 0..c {
            if qa.meet(x, y) != q.meet[x][y] {
                return Err(inconsistent("quotient meet agrees with ∧", vec![x, y]));
            }
        }
    }
    // ⪯ and ≤ coincide on every downset
    for a in 0..n {
        let down = alg.down_set(a);
        for b in down.iter() {
            for c in down.iter() {
                if rel.domleq.holds(b, c) != rel.leq.holds(b, c) {
                    return Err(inconsistent("⪯ equals ≤ on a↓", vec![a, b, c]));
                }
            }
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn f4_collapses_equal_domains() {
        let q = domain_quotient(&fixtures::f4()).unwrap();
        assert_eq!(q.class_count(), 2);
        assert_eq!(q.members(0), vec![0]);
        assert_eq!(q.members(1), vec![1, 2]);
        // the two-element subtraction algebra
        let qa = q.as_algebra();
        assert_eq!(qa.minus_rows(), vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn f2_singleton_classes() {
        let q = domain_quotient(&fixtures::f2()).unwrap();
        assert_eq!(q.class_count(), 4);
        let [k, m] = [1, 2];
        assert_eq!(q.meet[q.class_of[k]][q.class_of[m]], q.class_of[0]);
    }

    #[test]
    fn f0_single_class() {
        let q = domain_quotient(&fixtures::f0()).unwrap();
        assert_eq!(q.class_count(), 1);
    }

    #[test]
    fn projection_respects_operations() {
        for alg in fixtures::all_functional() {
            let q = domain_quotient(&alg).unwrap();
            for a in alg.elements() {
                for b in alg.elements() {
                    assert_eq!(q.meet[q.class_of[a]][q.class_of[b]], q.class_of[alg.restrict(a, b)]);
                    assert_eq!(
                        q.qminus[q.class_of[a]][q.class_of[b]],
                        q.class_of[alg.minus(a, alg.restrict(b, a))]
                    );
                }
            }
        }
    }
}
