//! Oracles shared by the integration suites. Everything here is written
//! against raw multiplication tables so that it stays independent of the
//! lattice and degree engines it checks.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::io::Write;

use relcomm::catalog::builtin_catalog;
use relcomm::group::DEFAULT_ORDER_CAP;
use relcomm::rational::Rat;
use relcomm::FiniteGroup;

/// Catalog groups up to `max_order`, built and named.
pub fn catalog(max_order: usize) -> Vec<FiniteGroup> {
    builtin_catalog(max_order)
        .unwrap()
        .iter()
        .map(|e| e.build(DEFAULT_ORDER_CAP).unwrap())
        .collect()
}

/// Closure of `gens` by repeated multiplication.
pub fn closure(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    let mut frontier: Vec<usize> = vec![0];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Every subgroup, found by closing each known subgroup under one more
/// element until nothing new appears.
pub fn all_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: Vec<Vec<usize>> = vec![vec![0]];
    found.insert(vec![0]);
    while let Some(h) = queue.pop() {
        for x in 0..n {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let k: Vec<usize> = closure(g, &gens).into_iter().collect();
            if found.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    found
}

/// `#{(h, y) : hy = yh} / (|H||G|)` by double loop.
pub fn pair_degree(g: &FiniteGroup, h: &[usize]) -> Rat {
    let n = g.order();
    let mut pairs = 0u64;
    for &x in h {
        for y in 0..n {
            if g.mul(x, y) == g.mul(y, x) {
                pairs += 1;
            }
        }
    }
    Rat::new(pairs, (h.len() * n) as u64)
}

/// Distinct pair-count degrees over the given subgroups, decreasing.
pub fn oracle_spectrum(g: &FiniteGroup, subgroups: &BTreeSet<Vec<usize>>) -> Vec<Rat> {
    let values: BTreeSet<Rat> = subgroups.iter().map(|h| pair_degree(g, h)).collect();
    values.into_iter().rev().collect()
}

/// Decreasing list from `(num, den)` pairs.
pub fn set(pairs: &[(i64, i64)]) -> Vec<Rat> {
    let values: BTreeSet<Rat> = pairs.iter().map(|&(n, d)| Rat::new(n, d)).collect();
    values.into_iter().rev().collect()
}

/// Writes a line past the test harness's output capture.
pub fn report(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}
