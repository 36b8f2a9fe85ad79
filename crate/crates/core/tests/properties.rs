//! Invariants checked over random closures of partial functions and over
//! every small model of the axioms.

use diffrest::algebra::downset::boolean_downset;
use diffrest::algebra::laws::{check_axioms, check_derived_laws};
use diffrest::algebra::relations::derived_relations;
use diffrest::algebra::FiniteAlgebra;
use diffrest::filters::{brute_force_filters, brute_force_maximal_filters, domhat, enumerate_filters, is_filter};
use diffrest::format::{parse_algebra, parse_concrete, write_algebra, write_concrete};
use diffrest::oracle::{
    brute_force_embedding, canonical_form, enumerate_axiom_models, random_corpus, EmbeddingVerdict, SearchBudget,
};
use diffrest::pfun::{close_generators, Base, ConcreteAlgebra, PartialFunction};
use diffrest::representations::{
    atomic_eta, atomic_theta, canonical_theta, canonical_theta_from, check_eta_theta_coherence, completeness_report,
    injective_eta_from, verify_representation,
};
use proptest::prelude::*;

/// Base size, then up to three generators given as `(point, image or none)`
/// lists.
fn closure() -> impl Strategy<Value = ConcreteAlgebra> {
    (1u32..=3)
        .prop_flat_map(|k| {
            let pf = proptest::collection::vec(proptest::option::of(1..=k), k as usize);
            (Just(k), proptest::collection::vec(pf, 1..=3))
        })
        .prop_filter_map("closure too large", |(k, gens)| {
            let base = Base(k);
            let gens: Vec<PartialFunction> = gens
                .into_iter()
                .map(|img| {
                    let pairs = img
                        .into_iter()
                        .enumerate()
                        .filter_map(|(x, y)| y.map(|y| (x as u32 + 1, y)));
                    PartialFunction::new(base, pairs).unwrap()
                })
                .collect();
            close_generators(base, &gens).ok()
        })
}

fn small_models() -> Vec<FiniteAlgebra> {
    (1..=6)
        .flat_map(|n| {
            let m = enumerate_axiom_models(n, &SearchBudget::default()).unwrap();
            assert!(m.exhaustive);
            m.models
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closures_satisfy_axioms_and_derived_laws(c in closure()) {
        prop_assert!(c.is_coherent());
        prop_assert!(check_axioms(&c.abstract_alg).passed());
        prop_assert!(check_derived_laws(&c.abstract_alg).passed());
    }

    #[test]
    fn orders_match_inclusion(c in closure()) {
        let alg = &c.abstract_alg;
        let rel = derived_relations(alg).unwrap();
        prop_assert!(rel.domleq.is_reflexive() && rel.domleq.is_transitive());
        prop_assert!(rel.leq.is_subset(&rel.domleq));
        for a in alg.elements() {
            for b in alg.elements() {
                let (f, g) = (c.function(a), c.function(b));
                prop_assert_eq!(alg.leq(a, b), f.is_subset(g));
                prop_assert_eq!(alg.dom_leq(a, b), f.domain().is_subset(&g.domain()));
            }
        }
    }

    #[test]
    fn downsets_are_boolean_and_orders_agree_there(c in closure()) {
        let alg = &c.abstract_alg;
        for a in alg.elements() {
            let d = boolean_downset(alg, a).unwrap();
            prop_assert!(d.check_boolean_laws().is_ok());
            for &b in &d.members {
                for &e in &d.members {
                    prop_assert_eq!(alg.dom_leq(b, e), alg.leq(b, e));
                }
            }
        }
    }

    #[test]
    fn principal_filters_embed_the_domain_order(c in closure()) {
        let alg = &c.abstract_alg;
        for a in alg.elements() {
            prop_assert!(is_filter(alg, alg.up_set(a)));
            for b in alg.elements() {
                prop_assert_eq!(alg.dom_leq(a, b), domhat(alg, alg.up_set(a), alg.up_set(b)));
            }
        }
    }

    #[test]
    fn filters_match_subset_scan(c in closure()) {
        let alg = &c.abstract_alg;
        prop_assume!(alg.size() <= 16);
        let fam = enumerate_filters(alg).unwrap();
        prop_assert_eq!(&brute_force_filters(alg).unwrap(), &fam.all_filters);
        let mut fast = fam.maximal_filters();
        let mut slow = brute_force_maximal_filters(alg).unwrap();
        fast.sort_by(|a, b| a.lex_cmp(*b));
        slow.sort_by(|a, b| a.lex_cmp(*b));
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn representations_verify_and_are_complete(c in closure()) {
        let alg = &c.abstract_alg;
        let fam = enumerate_filters(alg).unwrap();
        let theta = canonical_theta_from(&fam).unwrap();
        let eta = injective_eta_from(&fam).unwrap();
        check_eta_theta_coherence(&fam, &theta, &eta).unwrap();
        for rep in [theta, eta, atomic_theta(alg).unwrap(), atomic_eta(alg).unwrap()] {
            prop_assert!(verify_representation(&rep).passed(), "{} fails", rep.kind);
            prop_assert!(completeness_report(&rep).unwrap().fully_complete(), "{} incomplete", rep.kind);
        }
    }

    #[test]
    fn oracle_embeds_within_maximal_filter_count(c in closure()) {
        let alg = &c.abstract_alg;
        let mf = canonical_theta(alg).unwrap().states.len();
        let budget = SearchBudget { max_base_size: 4, ..Default::default() };
        match brute_force_embedding(alg, &budget).unwrap() {
            EmbeddingVerdict::Found(rep) => {
                prop_assert!(rep.states.len() <= mf.max(1));
                prop_assert!(verify_representation(&rep).passed());
            }
            v => prop_assert!(false, "oracle verdict {}", v),
        }
    }

    #[test]
    fn canonical_form_ignores_relabelling(c in closure(), shift in 0usize..8) {
        let alg = &c.abstract_alg;
        prop_assume!(alg.size() <= 8);
        let n = alg.size();
        // rotate the nonzero elements
        let zero = alg.zero();
        let nonzero: Vec<usize> = alg.elements().filter(|&a| a != zero).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        for (i, &a) in nonzero.iter().enumerate() {
            perm[a] = nonzero[(i + shift) % nonzero.len().max(1)];
        }
        let moved = alg.permute(&perm).unwrap();
        prop_assert_eq!(canonical_form(alg).unwrap(), canonical_form(&moved).unwrap());
    }

    #[test]
    fn file_formats_round_trip(c in closure()) {
        let alg = c.abstract_alg.clone();
        prop_assert_eq!(parse_algebra(&write_algebra(&alg)).unwrap(), alg);
        let text = write_concrete(&c);
        let back = parse_concrete(&text).unwrap();
        prop_assert_eq!(&back.elements, &c.elements);
        prop_assert_eq!(write_concrete(&back), text);
    }

    #[test]
    fn results_are_deterministic(seed in any::<u64>()) {
        let a: Vec<_> = random_corpus(seed, 5).into_iter().map(|c| c.abstract_alg).collect();
        let b: Vec<_> = random_corpus(seed, 5).into_iter().map(|c| c.abstract_alg).collect();
        prop_assert_eq!(&a, &b);
        for alg in &a {
            prop_assert_eq!(canonical_theta(alg).unwrap().to_string(), canonical_theta(alg).unwrap().to_string());
        }
    }
}

#[test]
fn model_counts_up_to_six() {
    let counts: Vec<usize> = (1..=6)
        .map(|n| {
            enumerate_axiom_models(n, &SearchBudget::default())
                .unwrap()
                .models
                .len()
        })
        .collect();
    assert_eq!(counts, [1, 1, 2, 4, 7, 14]);
}

#[test]
fn small_models_are_representable() {
    for alg in small_models() {
        assert!(check_derived_laws(&alg).passed(), "{}", write_algebra(&alg));
        let fam = enumerate_filters(&alg).unwrap();
        let theta = canonical_theta_from(&fam).unwrap();
        assert!(verify_representation(&theta).passed(), "{}", write_algebra(&alg));
        let eta = injective_eta_from(&fam).unwrap();
        check_eta_theta_coherence(&fam, &theta, &eta).unwrap();
        assert!(completeness_report(&eta).unwrap().fully_complete());
    }
}

#[test]
fn small_models_are_pairwise_non_isomorphic() {
    let models = small_models();
    for (i, a) in models.iter().enumerate() {
        assert_eq!(&canonical_form(a).unwrap(), a);
        for b in &models[i + 1..] {
            assert_ne!(a.table_key(), b.table_key());
        }
    }
}
