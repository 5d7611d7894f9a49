mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use common::{all_subgroups, catalog, closure, oracle_spectrum, pair_degree};
use relcomm::classifier::{verify_classification, Verdict};
use relcomm::commdeg::{comm_degree, degree_spectrum, degree_spectrum_with, Centralizers, SpectrumOptions};
use relcomm::group::{direct_product, semidirect_product, DEFAULT_ORDER_CAP};
use relcomm::lab;
use relcomm::lattice::{SubgroupLattice, DEFAULT_LATTICE_CAP};
use relcomm::rational::Rat;
use relcomm::{arith, FiniteGroup};

fn small_catalog() -> &'static [FiniteGroup] {
    static GROUPS: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| catalog(64))
}

fn catalog_group() -> impl Strategy<Value = FiniteGroup> {
    (0..small_catalog().len()).prop_map(|i| small_catalog()[i].clone())
}

fn perm_group() -> impl Strategy<Value = FiniteGroup> {
    (3usize..=5)
        .prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (Just(n), prop::collection::vec(perm, 1..=3))
        })
        .prop_map(|(n, gens)| FiniteGroup::from_permutations(n, &gens, DEFAULT_ORDER_CAP).unwrap())
}

fn any_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![catalog_group(), perm_group()]
}

fn lattice(g: &FiniteGroup) -> SubgroupLattice {
    SubgroupLattice::build(g, DEFAULT_LATTICE_CAP).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lattice_matches_closure_oracle(g in any_group()) {
        let l = lattice(&g);
        let engine: BTreeSet<Vec<usize>> = l.subgroups().iter().map(|h| h.elements()).collect();
        let oracle = all_subgroups(&g);
        prop_assert_eq!(l.len(), engine.len());
        prop_assert_eq!(engine, oracle);
    }

    #[test]
    fn spectrum_matches_pair_count_oracle(g in any_group()) {
        let l = lattice(&g);
        let s = degree_spectrum(&g, &l);
        let subs: BTreeSet<Vec<usize>> = l.subgroups().iter().map(|h| h.elements()).collect();
        prop_assert_eq!(&s.values, &oracle_spectrum(&g, &subs));
        for (v, w) in s.values.iter().zip(&s.witnesses) {
            prop_assert_eq!(&pair_degree(&g, &w.elements()), v);
        }
    }

    #[test]
    fn spectrum_shape(g in any_group()) {
        let s = degree_spectrum(&g, &lattice(&g));
        prop_assert!(s.values[0].is_one());
        prop_assert_eq!(s.minimum(), &comm_degree(&g));
        prop_assert!(s.values.windows(2).all(|w| w[0] > w[1]));
        prop_assert_eq!(s.len() == 1, g.is_abelian());
        prop_assert_ne!(s.len(), 2);
    }

    #[test]
    fn witnesses_come_first_in_lattice_order(g in any_group()) {
        let l = lattice(&g);
        let cent = Centralizers::new(&g);
        let s = degree_spectrum(&g, &l);
        for (v, w) in s.values.iter().zip(&s.witnesses) {
            let first = l.subgroups().iter().find(|h| &cent.degree(h) == v).unwrap();
            prop_assert_eq!(first, w);
        }
    }

    #[test]
    fn central_dedup_keeps_values(g in any_group()) {
        let l = lattice(&g);
        let full = degree_spectrum(&g, &l);
        let dedup = degree_spectrum_with(&g, &l, SpectrumOptions { central_dedup: true });
        prop_assert_eq!(full.values, dedup.values);
    }

    #[test]
    fn conjugate_subgroups_share_degrees(g in any_group(), pick in any::<prop::sample::Index>(), x in any::<prop::sample::Index>()) {
        let l = lattice(&g);
        let cent = Centralizers::new(&g);
        let h = &l.subgroups()[pick.index(l.len())];
        let c = g.conjugate_subgroup(h, x.index(g.order()));
        prop_assert_eq!(cent.degree(h), cent.degree(&c));
        prop_assert!(l.index_of(&c).is_some());
    }

    #[test]
    fn orbit_stabilizer(g in any_group()) {
        let classes = g.conjugacy_classes();
        prop_assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
        for class in &classes {
            for &x in class {
                prop_assert_eq!(class.len() * g.centralizer(x).order(), g.order());
            }
        }
    }

    #[test]
    fn sylow_counts(g in any_group()) {
        let l = lattice(&g);
        let n = g.order() as u64;
        for p in arith::primes_dividing(n) {
            let sylows = l.sylow_subgroups(p).unwrap();
            let count = sylows.len() as u64;
            prop_assert_eq!(count % p, 1);
            prop_assert_eq!((n / arith::p_part(n, p)) % count, 0);
            for &i in &sylows {
                prop_assert_eq!(l.get(i).order() as u64, arith::p_part(n, p));
            }
        }
    }

    #[test]
    fn solvable_chain_length_is_big_omega(g in any_group()) {
        // every group below order 60 is solvable
        prop_assume!(g.order() < 60);
        let l = lattice(&g);
        prop_assert_eq!(l.max_chain_length() as u32, arith::big_omega(g.order() as u64));
    }

    #[test]
    fn covers_are_maximal_subgroups(g in any_group()) {
        let l = lattice(&g);
        for i in 0..l.len() {
            let h = l.get(i);
            for &j in l.covers_of(i) {
                let k = l.get(j);
                prop_assert!(h.is_subgroup_of(k) && h.order() < k.order());
                let between = l.subgroups().iter().any(|m| h.is_subgroup_of(m) && m.is_subgroup_of(k) && m != h && m != k);
                prop_assert!(!between);
            }
        }
    }

    #[test]
    fn classified_groups_match(g in catalog_group()) {
        let r = verify_classification(&g, &lattice(&g)).unwrap();
        if r.case.is_classified() {
            prop_assert_eq!(r.verdict, Verdict::Match, "{}", r.case);
        }
        if (3..=5).contains(&r.computed.len()) {
            prop_assert!(r.case.is_classified(), "{} has {} values", r.name, r.computed.len());
        }
    }

    #[test]
    fn omega_and_chain_bounds(g in any_group()) {
        let a = lab::GroupAnalysis::new(g, DEFAULT_LATTICE_CAP).unwrap();
        prop_assert!(lab::check_chain_bound(&a).holds);
        prop_assert!(lab::check_omega_bound(&a).holds);
        prop_assert!(lab::check_distinct_prime_degrees(&a).holds);
    }

    #[test]
    fn trivial_action_gives_direct_product(a in 1usize..8, b in 1usize..8) {
        let n = FiniteGroup::cyclic(a);
        let h = FiniteGroup::dihedral(b.max(2));
        let identity: Vec<Vec<usize>> = (0..h.order()).map(|_| (0..a).collect()).collect();
        let semi = semidirect_product(&n, &h, &identity, DEFAULT_ORDER_CAP).unwrap();
        let direct = direct_product(&n, &h, DEFAULT_ORDER_CAP).unwrap();
        prop_assert_eq!(semi.rows(), direct.rows());
    }

    #[test]
    fn rationals_stay_reduced(a in 0u64..10_000, b in 1u64..10_000, c in 1u64..10_000, d in 1u64..10_000) {
        let x = Rat::new(a, b) * Rat::new(c, d);
        let y: Rat = x.to_string().parse().unwrap();
        prop_assert_eq!(&x, &y);
        let num: u64 = x.numer().to_string().parse().unwrap();
        let den: u64 = x.denom().to_string().parse().unwrap();
        prop_assert_eq!(arith::gcd(num, den), 1);
        prop_assert_eq!(num * b * d, a * c * den);
    }
}

#[test]
fn closure_oracle_sanity() {
    let s3 = FiniteGroup::symmetric(3);
    assert_eq!(all_subgroups(&s3).len(), 6);
    assert_eq!(closure(&s3, &[1]).len(), s3.element_order(1));
}
