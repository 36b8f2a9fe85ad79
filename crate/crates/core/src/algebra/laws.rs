//! Exhaustive evaluation of the defining axioms and their consequences.

use std::fmt;

use super::{Elem, FiniteAlgebra};

/// An equation or implication over a finite algebra, checked on every
/// assignment of its variables.
pub struct Law {
    pub name: &'static str,
    pub statement: &'static str,
    pub vars: &'static [&'static str],
    holds: fn(&FiniteAlgebra, &[Elem]) -> bool,
    /// Optional filter on the first two variables; assignments it rejects
    /// hold vacuously and are skipped.
    premise: Option<fn(&FiniteAlgebra, Elem, Elem) -> bool>,
}

impl Law {
    pub fn holds_at(&self, alg: &FiniteAlgebra, assignment: &[Elem]) -> bool {
        assert_eq!(assignment.len(), self.vars.len());
        if let Some(p) = self.premise {
            if !p(alg, assignment[0], assignment[1]) {
                return true;
            }
        }
        (self.holds)(alg, assignment)
    }

    /// The lexicographically first violating assignment, if any.
    pub fn first_counterexample(&self, alg: &FiniteAlgebra) -> Option<Vec<Elem>> {
        let n = alg.size();
        let arity = self.vars.len();
        let mut asg = vec![0; arity];
        loop {
            let skip_prefix = arity >= 2 && self.premise.is_some_and(|p| !p(alg, asg[0], asg[1]));
            if skip_prefix {
                // advance past every assignment sharing the first two values
                for v in asg.iter_mut().skip(2) {
                    *v = n - 1;
                }
            } else if !(self.holds)(alg, &asg) {
                return Some(asg);
            }
            let mut i = arity;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                asg[i] += 1;
                if asg[i] < n {
                    break;
                }
                asg[i] = 0;
            }
        }
    }

    pub fn check(&self, alg: &FiniteAlgebra) -> LawResult {
        LawResult {
            law: self.name,
            statement: self.statement,
            vars: self.vars,
            verdict: match self.first_counterexample(alg) {
                None => Verdict::Pass,
                Some(w) => Verdict::Fail(w),
            },
        }
    }
}

const ABC: &[&str] = &["a", "b", "c"];
const AB: &[&str] = &["a", "b"];

/// The five defining equations. The first three alone axiomatise
/// subtraction algebras.
pub static AXIOMS: [Law; 5] = [
    Law {
        name: "Ax.1",
        statement: "a - (b - a) = a",
        vars: AB,
        holds: |g, v| g.minus(v[0], g.minus(v[1], v[0])) == v[0],
        premise: None,
    },
    Law {
        name: "Ax.2",
        statement: "a ⊓ b = b ⊓ a",
        vars: AB,
        holds: |g, v| g.meet(v[0], v[1]) == g.meet(v[1], v[0]),
        premise: None,
    },
    Law {
        name: "Ax.3",
        statement: "(a - b) - c = (a - c) - b",
        vars: ABC,
        holds: |g, v| g.minus(g.minus(v[0], v[1]), v[2]) == g.minus(g.minus(v[0], v[2]), v[1]),
        premise: None,
    },
    Law {
        name: "Ax.4",
        statement: "(a ▷ c) ⊓ (b ▷ c) = (a ▷ b) ▷ c",
        vars: ABC,
        holds: |g, v| {
            g.meet(g.restrict(v[0], v[2]), g.restrict(v[1], v[2])) == g.restrict(g.restrict(v[0], v[1]), v[2])
        },
        premise: None,
    },
    Law {
        name: "Ax.5",
        statement: "(a ⊓ b) ▷ a = a ⊓ b",
        vars: AB,
        holds: |g, v| {
            let m = g.meet(v[0], v[1]);
            g.restrict(m, v[0]) == m
        },
        premise: None,
    },
];

/// Consequences of the axioms, used as a self-test of table construction.
pub static DERIVED_LAWS: [Law; 9] = [
    Law {
        name: "disjoint-zero",
        statement: "b ⊓ (a - b) = 0",
        vars: AB,
        holds: |g, v| g.meet(v[1], g.minus(v[0], v[1])) == g.zero(),
        premise: None,
    },
    Law {
        name: "minus-meet",
        statement: "a - (a ⊓ b) = a - b",
        vars: AB,
        holds: |g, v| g.minus(v[0], g.meet(v[0], v[1])) == g.minus(v[0], v[1]),
        premise: None,
    },
    Law {
        name: "meet-minus",
        statement: "a ⊓ (b - c) = (a ⊓ b) - c",
        vars: ABC,
        holds: |g, v| g.meet(v[0], g.minus(v[1], v[2])) == g.minus(g.meet(v[0], v[1]), v[2]),
        premise: None,
    },
    Law {
        name: "restricts",
        statement: "b ▷ a ≤ a",
        vars: AB,
        holds: |g, v| g.leq(g.restrict(v[1], v[0]), v[0]),
        premise: None,
    },
    Law {
        name: "restrict-assoc",
        statement: "a ▷ (b ▷ c) = (a ▷ b) ▷ c",
        vars: ABC,
        holds: |g, v| g.restrict(v[0], g.restrict(v[1], v[2])) == g.restrict(g.restrict(v[0], v[1]), v[2]),
        premise: None,
    },
    Law {
        name: "restrict-meet-lift",
        statement: "(a ▷ b) ▷ (a ⊓ b) = a ⊓ b",
        vars: AB,
        holds: |g, v| {
            let m = g.meet(v[0], v[1]);
            g.restrict(g.restrict(v[0], v[1]), m) == m
        },
        premise: None,
    },
    Law {
        name: "restrict-meet",
        statement: "a ▷ (b ⊓ c) = (a ▷ b) ⊓ c",
        vars: ABC,
        holds: |g, v| g.restrict(v[0], g.meet(v[1], v[2])) == g.meet(g.restrict(v[0], v[1]), v[2]),
        premise: None,
    },
    Law {
        name: "restrict-minus",
        statement: "(a ▷ b) - c = a ▷ (b - c)",
        vars: ABC,
        holds: |g, v| g.minus(g.restrict(v[0], v[1]), v[2]) == g.restrict(v[0], g.minus(v[1], v[2])),
        premise: None,
    },
    Law {
        name: "restrict-monotone",
        statement: "a ≤ b and c ≤ d imply a ▷ c ≤ b ▷ d",
        vars: &["a", "b", "c", "d"],
        holds: |g, v| {
            !(g.leq(v[0], v[1]) && g.leq(v[2], v[3])) || g.leq(g.restrict(v[0], v[2]), g.restrict(v[1], v[3]))
        },
        premise: Some(|g, a, b| g.leq(a, b)),
    },
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Vec<Elem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: &'static str,
    pub statement: &'static str,
    pub vars: &'static [&'static str],
    pub verdict: Verdict,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// `a=c b=d` style rendering of the witness, using element names.
    pub fn witness_text(&self, alg: &FiniteAlgebra) -> Option<String> {
        match &self.verdict {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(
                self.vars
                    .iter()
                    .zip(w)
                    .map(|(v, &e)| format!("{v}={}", alg.name(e)))
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<LawResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(LawResult::passed)
    }

    pub fn get(&self, law: &str) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    /// Re-evaluates every failure witness against the tables.
    pub fn witnesses_genuine(&self, alg: &FiniteAlgebra) -> bool {
        let all_laws = || AXIOMS.iter().chain(DERIVED_LAWS.iter());
        self.failures().all(|r| match &r.verdict {
            Verdict::Fail(w) => all_laws()
                .find(|l| l.name == r.law)
                .is_some_and(|l| !l.holds_at(alg, w)),
            Verdict::Pass => true,
        })
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.verdict {
                Verdict::Pass => writeln!(f, "PASS {}: {}", r.law, r.statement)?,
                Verdict::Fail(w) => {
                    let witness: Vec<String> = r.vars.iter().zip(w).map(|(v, e)| format!("{v}={e}")).collect();
                    writeln!(f, "FAIL {}: {} witness {}", r.law, r.statement, witness.join(" "))?
                }
            }
        }
        Ok(())
    }
}

pub fn check_laws<'a>(alg: &FiniteAlgebra, laws: impl IntoIterator<Item = &'a Law>) -> AxiomReport {
    AxiomReport {
        results: laws.into_iter().map(|l| l.check(alg)).collect(),
    }
}

/// Evaluates the five axioms on every assignment.
pub fn check_axioms(alg: &FiniteAlgebra) -> AxiomReport {
    check_laws(alg, &AXIOMS)
}

/// Evaluates the derived laws on every assignment.
pub fn check_derived_laws(alg: &FiniteAlgebra) -> AxiomReport {
    check_laws(alg, &DERIVED_LAWS)
}

/// Only the three subtraction-algebra axioms.
pub fn check_subtraction_axioms(alg: &FiniteAlgebra) -> AxiomReport {
    check_laws(alg, &AXIOMS[..3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn f2_and_f0_pass_all_axioms() {
        assert!(check_axioms(&fixtures::f2()).passed());
        assert!(check_axioms(&fixtures::f0()).passed());
    }

    #[test]
    fn relational_n1_fails_only_ax5() {
        let n1 = fixtures::n1();
        let report = check_axioms(&n1);
        for law in ["Ax.1", "Ax.2", "Ax.3", "Ax.4"] {
            assert!(report.get(law).unwrap().passed(), "{law}");
        }
        let ax5 = report.get("Ax.5").unwrap();
        let (c, d) = (n1.element_by_name("c").unwrap(), n1.element_by_name("d").unwrap());
        assert_eq!(ax5.verdict, Verdict::Fail(vec![c, d]));
        assert_eq!(ax5.witness_text(&n1).unwrap(), "a=c b=d");
        // (c ⊓ d) ▷ c = c but c ⊓ d = d
        assert_eq!(n1.meet(c, d), d);
        assert_eq!(n1.restrict(d, c), c);
        assert!(report.witnesses_genuine(&n1));
    }

    #[test]
    fn derived_law_instances() {
        let f2 = fixtures::f2();
        let [k, m, h] = [1, 2, 3];
        // (k ▷ h) - m = k = k ▷ (h - m)
        assert_eq!(f2.minus(f2.restrict(k, h), m), k);
        assert_eq!(f2.restrict(k, f2.minus(h, m)), k);
        assert!(DERIVED_LAWS[7].holds_at(&f2, &[k, h, m]));

        let f4 = fixtures::f4();
        let [f, g] = [1, 2];
        assert_eq!(f4.restrict(g, f), f);
        assert!(DERIVED_LAWS[3].holds_at(&f4, &[f, g]));

        for alg in fixtures::all_functional() {
            let z = alg.zero();
            for law in DERIVED_LAWS.iter() {
                assert!(law.holds_at(&alg, &vec![z; law.vars.len()]));
            }
            assert!(check_derived_laws(&alg).passed());
        }
    }

    #[test]
    fn monotone_law_catches_violation() {
        // N1 is relational; perturb F2 so that ▷ is not monotone
        let f2 = fixtures::f2();
        let mut restrict = f2.restrict_rows();
        restrict[3][3] = 1; // h ▷ h = k
        let bad = FiniteAlgebra::new(f2.minus_rows(), restrict).unwrap();
        let report = check_derived_laws(&bad);
        assert!(!report.passed());
        assert!(report.witnesses_genuine(&bad));
        assert!(!check_axioms(&bad).passed());
    }
}
