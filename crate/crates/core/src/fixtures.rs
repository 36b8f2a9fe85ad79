//! Small named algebras used throughout the tests and documentation.
//!
//! | name | base | elements |
//! |------|------|----------|
//! | F0 | – | the one-element algebra |
//! | F1 | {1} | ∅, k={(1,1)} |
//! | F2 | {1,2} | ∅, k={(1,1)}, m={(2,2)}, h={(1,1),(2,2)} |
//! | F3 | {1,2} | ∅, k, m (no top) |
//! | F4 | {1,2} | ∅, f={(1,1)}, g={(1,2)} |
//! | N1 | {1,2} | relations ∅, d={(1,1)}, e={(1,2)}, c={(1,1),(1,2)} |

use crate::algebra::laws::check_axioms;
use crate::algebra::FiniteAlgebra;
use crate::pfun::{tabulate_relations, Base, ConcreteAlgebra, PartialFunction, Relation};

fn concrete(base: u32, elements: &[(&str, &[(u32, u32)])]) -> ConcreteAlgebra {
    let base = Base(base);
    let fns = elements
        .iter()
        .map(|(_, pairs)| PartialFunction::new(base, pairs.iter().copied()).expect("functional"))
        .collect();
    let names = elements.iter().map(|(n, _)| n.to_string()).collect();
    let c = ConcreteAlgebra::from_elements(base, fns)
        .and_then(|c| c.with_names(names))
        .expect("fixture is closed");
    assert!(check_axioms(&c.abstract_alg).passed());
    c
}

pub fn f0() -> FiniteAlgebra {
    FiniteAlgebra::new(vec![vec![0]], vec![vec![0]])
        .and_then(|a| a.with_names(vec!["0".into()]))
        .unwrap()
}

pub fn f1_concrete() -> ConcreteAlgebra {
    concrete(1, &[("0", &[]), ("k", &[(1, 1)])])
}

pub fn f2_concrete() -> ConcreteAlgebra {
    concrete(
        2,
        &[("0", &[]), ("k", &[(1, 1)]), ("m", &[(2, 2)]), ("h", &[(1, 1), (2, 2)])],
    )
}

pub fn f3_concrete() -> ConcreteAlgebra {
    concrete(2, &[("0", &[]), ("k", &[(1, 1)]), ("m", &[(2, 2)])])
}

pub fn f4_concrete() -> ConcreteAlgebra {
    concrete(2, &[("0", &[]), ("f", &[(1, 1)]), ("g", &[(1, 2)])])
}

pub fn f1() -> FiniteAlgebra {
    f1_concrete().abstract_alg
}

pub fn f2() -> FiniteAlgebra {
    f2_concrete().abstract_alg
}

pub fn f3() -> FiniteAlgebra {
    f3_concrete().abstract_alg
}

pub fn f4() -> FiniteAlgebra {
    f4_concrete().abstract_alg
}

/// The relations of N1; `c` is not a function.
pub fn n1_relations() -> Vec<Relation> {
    let base = Base(2);
    [&[][..], &[(1, 1)], &[(1, 2)], &[(1, 1), (1, 2)]]
        .iter()
        .map(|pairs| Relation::new(base, pairs.iter().copied()).unwrap())
        .collect()
}

pub fn n1() -> FiniteAlgebra {
    tabulate_relations(&n1_relations())
        .and_then(|a| a.with_names(["0", "d", "e", "c"].map(String::from).to_vec()))
        .expect("N1 is closed")
}

/// F0 to F4.
pub fn all_functional() -> Vec<FiniteAlgebra> {
    vec![f0(), f1(), f2(), f3(), f4()]
}
