//! Finite groups as dense multiplication tables.
//!
//! Elements are indices `0..n` and the identity is always index 0. Every
//! constructor either validates its input ([`FiniteGroup::from_table`]) or is
//! correct by construction (the named families, products, permutation closure).

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Default ceiling on the order of any constructed group.
pub const DEFAULT_ORDER_CAP: usize = 1024;

/// Tables up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;

/// Number of random triples checked above the exhaustive limit.
pub const ASSOCIATIVITY_SAMPLES: usize = 100_000;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    element_orders: Vec<u32>,
    name: Option<String>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Builds a group from an untrusted Cayley table, relabelling so that the
    /// identity sits at index 0 (swapping it with whatever was there).
    pub fn from_table(rows: &[Vec<usize>], name: Option<String>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(not_a_group("empty table", vec![]));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(not_a_group("table is not square", vec![r]));
            }
            if let Some(c) = row.iter().position(|&v| v >= n) {
                return Err(not_a_group("entry out of range", vec![r, c]));
            }
        }
        let at = |a: usize, b: usize| rows[a][b];

        for r in 0..n {
            let mut seen = Bitset::new(n);
            for c in 0..n {
                if !seen.insert(at(r, c)) {
                    return Err(not_a_group("row is not a permutation", vec![r, c]));
                }
            }
        }
        for c in 0..n {
            let mut seen = Bitset::new(n);
            for r in 0..n {
                if !seen.insert(at(r, c)) {
                    return Err(not_a_group("column is not a permutation", vec![r, c]));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| not_a_group("no identity element", vec![]))?;

        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(not_a_group("associativity fails", vec![a, b, c]));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d0fa_550c);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(not_a_group("associativity fails", vec![a, b, c]));
                }
            }
        }

        // transposition relabelling: identity <-> 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(at(a, b)) as u32;
            }
        }
        Ok(Self::from_trusted(n, table, name))
    }

    /// Assembles a group from a table already known to be a group with identity 0.
    pub(crate) fn from_trusted(order: usize, table: Vec<u32>, name: Option<String>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            inv[x] = row.iter().position(|&v| v == 0).expect("row without identity") as u32;
        }
        let mut element_orders = vec![1u32; order];
        for (x, slot) in element_orders.iter_mut().enumerate() {
            let mut y = x;
            let mut k = 1;
            while y != 0 {
                y = table[y * order + x] as usize;
                k += 1;
            }
            *slot = k;
        }
        FiniteGroup {
            order,
            table,
            inv,
            element_orders,
            name,
        }
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    /// The product `a * b` applies `a` first, then `b`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Self> {
        for (gi, g) in generators.iter().enumerate() {
            let mut seen = Bitset::new(degree.max(1));
            if g.len() != degree || g.iter().any(|&v| v >= degree || !seen.insert(v)) {
                return Err(Error::BadParams(format!(
                    "generator {gi} is not a permutation of 0..{degree}"
                )));
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let gens: Vec<Vec<u32>> = generators
            .iter()
            .map(|g| g.iter().map(|&v| v as u32).collect())
            .collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut head = 0;
        while head < elements.len() {
            for s in &gens {
                let prod = compose(&elements[head], s);
                if !index.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded {
                            cap,
                            reached: elements.len() + 1,
                        });
                    }
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                }
            }
            head += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elements[a], &elements[b])] as u32;
            }
        }
        Ok(Self::from_trusted(n, table, None))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n`, element `i` is the `i`-th power of the generator 1.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(n, |a, b| (a + b) % n).named(format!("C{n}"))
    }

    /// Dihedral group of order `2n`; index `i + n*j` stands for `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(2 * n, |x, y| {
            let (a, b) = (x % n, x / n);
            let (c, d) = (y % n, y / n);
            let rot = if b == 0 { a + c } else { a + n - c };
            rot % n + n * ((b + d) % 2)
        })
        .named(format!("D{}", 2 * n))
    }

    /// Dicyclic group of order `4n`: `<a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>`.
    /// Index `i + 2n*j` stands for `a^i x^j`.
    pub fn dicyclic(n: usize) -> Self {
        assert!(n >= 1);
        let m = 2 * n;
        Self::from_fn(2 * m, |x, y| {
            let (i, j) = (x % m, x / m);
            let (k, l) = (y % m, y / m);
            if j == 0 {
                (i + k) % m + m * l
            } else if l == 0 {
                (i + m - k) % m + m
            } else {
                (i + m - k + n) % m
            }
        })
        .named(format!("Q{}", 4 * n))
    }

    /// `(C_p)^rank`, elements indexed by their base-`p` digit vectors.
    pub fn elementary_abelian(p: usize, rank: u32) -> Self {
        let n = p.pow(rank);
        Self::from_fn(n, |mut a, mut b| {
            let (mut out, mut place) = (0, 1);
            for _ in 0..rank {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        })
        .named(if rank == 1 {
            format!("C{p}")
        } else {
            format!("C{p}^{rank}")
        })
    }

    /// Unitriangular 3x3 matrices over `F_p`; `(a, b, c)` at index `a + p*b + p^2*c`
    /// with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')`.
    pub fn heisenberg(p: usize) -> Self {
        let split = |x: usize| (x % p, (x / p) % p, x / (p * p));
        Self::from_fn(p * p * p, |x, y| {
            let (a, b, c) = split(x);
            let (a2, b2, c2) = split(y);
            (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
        })
        .named(format!("Heis{p}"))
    }

    /// `SL(2,3)` from its 24 matrices, identity first.
    pub fn sl23() -> Self {
        let mut mats: Vec<[usize; 4]> = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        if (a * d + 3 * 3 - b * c) % 3 == 1 {
                            mats.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let id = mats.iter().position(|m| *m == [1, 0, 0, 1]).unwrap();
        mats.swap(0, id);
        let mul = |x: [usize; 4], y: [usize; 4]| {
            [
                (x[0] * y[0] + x[1] * y[2]) % 3,
                (x[0] * y[1] + x[1] * y[3]) % 3,
                (x[2] * y[0] + x[3] * y[2]) % 3,
                (x[2] * y[1] + x[3] * y[3]) % 3,
            ]
        };
        let pos: HashMap<[usize; 4], usize> = mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Self::from_fn(mats.len(), |a, b| pos[&mul(mats[a], mats[b])]).named("SL(2,3)".into())
    }

    pub fn symmetric(n: usize) -> Self {
        let gens = match n {
            0 | 1 => vec![],
            2 => vec![vec![1, 0]],
            _ => vec![cycle_perm(n, &(0..n).collect::<Vec<_>>()), cycle_perm(n, &[0, 1])],
        };
        Self::from_permutations(n.max(1), &gens, usize::MAX)
            .expect("symmetric group generators")
            .named(format!("S{n}"))
    }

    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Vec<usize>> = (0..n.saturating_sub(2))
            .map(|i| cycle_perm(n, &[i, i + 1, i + 2]))
            .collect();
        Self::from_permutations(n.max(1), &gens, usize::MAX)
            .expect("alternating group generators")
            .named(format!("A{n}"))
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = f(a, b) as u32;
            }
        }
        Self::from_trusted(n, table, None)
    }

    pub fn named(mut self, name: String) -> Self {
        self.name = Some(name);
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a] as usize
    }

    pub fn element_orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.element_orders.iter().map(|&o| o as usize)
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        let k = k % self.element_order(a);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `g a g^-1`
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// The table as rows of element indices.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    /// Every Sylow subgroup is normal. Uses the fact that a Sylow `p`-subgroup
    /// is normal exactly when the `p`-elements number `|G|_p`.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.order as u64;
        arith::primes_dividing(n).into_iter().all(|p| {
            let p_elements = self
                .element_orders()
                .filter(|&o| o == 1 || arith::prime_power(o as u64).is_some_and(|(q, _)| q == p))
                .count() as u64;
            p_elements == arith::p_part(n, p)
        })
    }

    pub fn exponent(&self) -> usize {
        self.element_orders().fold(1u64, |acc, o| arith::lcm(acc, o as u64)) as usize
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generating_set();
        let members = Bitset::from_indices(
            self.order,
            (0..self.order).filter(|&x| gens.iter().all(|&y| self.commute(x, y))),
        );
        Subgroup::from_bitset_unchecked(members)
    }

    pub fn centralizer(&self, x: usize) -> Subgroup {
        Subgroup::from_bitset_unchecked(Bitset::from_indices(
            self.order,
            (0..self.order).filter(|&y| self.commute(x, y)),
        ))
    }

    /// Conjugacy classes, each sorted, listed by smallest member (identity first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = Bitset::new(self.order);
        let mut classes = Vec::new();
        for x in 0..self.order {
            if assigned.contains(x) {
                continue;
            }
            let mut class = Bitset::new(self.order);
            for g in 0..self.order {
                class.insert(self.conjugate(x, g));
            }
            assigned.union_with(&class);
            classes.push(class.to_vec());
        }
        classes
    }

    /// Subgroup generated by the given elements.
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut members = Bitset::new(self.order);
        members.insert(0);
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for &s in gens {
                let z = self.mul(y, s);
                if members.insert(z) {
                    queue.push(z);
                }
            }
        }
        Subgroup::from_bitset_unchecked(members)
    }

    /// A small generating set, picked greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = self.generated(&[]);
        for x in 1..self.order {
            if !reached.contains(x) {
                gens.push(x);
                reached = self.generated(&gens);
            }
        }
        gens
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.is_normal_with(h, &self.generating_set())
    }

    /// Normality test against a known generating set of the whole group.
    pub fn is_normal_with(&self, h: &Subgroup, gens: &[usize]) -> bool {
        gens.iter()
            .all(|&g| h.members().iter().all(|x| h.contains(self.conjugate(x, g))))
    }

    /// `g H g^-1`
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        Subgroup::from_bitset_unchecked(Bitset::from_indices(
            self.order,
            h.members().iter().map(|x| self.conjugate(x, g)),
        ))
    }

    /// Quotient by a normal subgroup. Cosets are numbered in order of their
    /// smallest element, so the identity coset is 0.
    pub fn quotient(&self, normal: &Subgroup) -> Result<QuotientMap> {
        if !self.is_normal(normal) {
            return Err(Error::BadParams("quotient by a non-normal subgroup".into()));
        }
        let n = self.order;
        let kernel = normal.elements();
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &k in &kernel {
                projection[self.mul(x, k)] = id;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = projection[self.mul(reps[i], reps[j])] as u32;
            }
        }
        let target = FiniteGroup::from_trusted(m, table, self.name.as_ref().map(|s| format!("{s}/N")));
        Ok(QuotientMap {
            target,
            projection,
            representatives: reps,
        })
    }

    pub fn central_quotient(&self) -> QuotientMap {
        let mut q = self.quotient(&self.center()).expect("center is normal");
        q.target.name = self.name.as_ref().map(|s| format!("{s}/Z"));
        q
    }
}

/// `a` then `b`
fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&i| b[i as usize]).collect()
}

/// The permutation of `0..degree` given by a single cycle.
pub fn cycle_perm(degree: usize, cycle: &[usize]) -> Vec<usize> {
    cycles_to_perm(degree, std::slice::from_ref(&cycle.to_vec()))
}

/// Product of disjoint cycles as an image list.
pub fn cycles_to_perm(degree: usize, cycles: &[Vec<usize>]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..degree).collect();
    for cycle in cycles {
        for (k, &from) in cycle.iter().enumerate() {
            perm[from] = cycle[(k + 1) % cycle.len()];
        }
    }
    perm
}

fn not_a_group(reason: &str, witness: Vec<usize>) -> Error {
    Error::NotAGroup {
        reason: reason.into(),
        witness,
    }
}

/// `a x b`, with `(i, j)` at index `i * |b| + j`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > cap {
        return Err(Error::OrderCapExceeded { cap, reached: n });
    }
    let g = FiniteGroup::from_fn(n, |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
    Ok(match (a.name(), b.name()) {
        (Some(l), Some(r)) => g.named(format!("{l}x{r}")),
        _ => g,
    })
}

/// `n ⋊ h` with `(n1,h1)(n2,h2) = (n1 * action[h1](n2), h1 h2)`, laid out like
/// [`direct_product`]. `action[h]` is the image list of the automorphism
/// attached to `h`; composition must satisfy `action[h1 h2] = action[h1] ∘ action[h2]`.
pub fn semidirect_product(n: &FiniteGroup, h: &FiniteGroup, action: &[Vec<usize>], cap: usize) -> Result<FiniteGroup> {
    let (nn, nh) = (n.order(), h.order());
    if nn * nh > cap {
        return Err(Error::OrderCapExceeded { cap, reached: nn * nh });
    }
    if action.len() != nh {
        return Err(Error::BadParams(format!(
            "action lists {} maps for a group of order {nh}",
            action.len()
        )));
    }
    for (hi, phi) in action.iter().enumerate() {
        if phi.len() != nn {
            return Err(Error::BadParams(format!("action of {hi} has wrong length")));
        }
        let mut seen = vec![usize::MAX; nn];
        for (x, &y) in phi.iter().enumerate() {
            if y >= nn {
                return Err(Error::NotAnAutomorphism { h: hi, a: x, b: x });
            }
            if seen[y] != usize::MAX {
                return Err(Error::NotAnAutomorphism {
                    h: hi,
                    a: seen[y],
                    b: x,
                });
            }
            seen[y] = x;
        }
        for a in 0..nn {
            for b in 0..nn {
                if phi[n.mul(a, b)] != n.mul(phi[a], phi[b]) {
                    return Err(Error::NotAnAutomorphism { h: hi, a, b });
                }
            }
        }
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            let composite = &action[h.mul(h1, h2)];
            if (0..nn).any(|x| composite[x] != action[h1][action[h2][x]]) {
                return Err(Error::NotAHomomorphism { h1, h2 });
            }
        }
    }
    let g = FiniteGroup::from_fn(nn * nh, |x, y| {
        let (n1, h1) = (x / nh, x % nh);
        let (n2, h2) = (y / nh, y % nh);
        n.mul(n1, action[h1][n2]) * nh + h.mul(h1, h2)
    });
    Ok(match (n.name(), h.name()) {
        (Some(l), Some(r)) => g.named(format!("{l}:{r}")),
        _ => g,
    })
}

/// Extends automorphisms given on some elements of `h` to a full action,
/// walking `h` breadth-first from the identity.
pub fn extend_action(n: &FiniteGroup, h: &FiniteGroup, images: &[(usize, Vec<usize>)]) -> Result<Vec<Vec<usize>>> {
    let nn = n.order();
    for (hi, phi) in images {
        if *hi >= h.order() || phi.len() != nn {
            return Err(Error::BadParams(format!("malformed action image for element {hi}")));
        }
    }
    let mut action: Vec<Option<Vec<usize>>> = vec![None; h.order()];
    action[0] = Some((0..nn).collect());
    let mut queue = VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        let phi_y = action[y].clone().expect("queued elements carry a map");
        for (s, phi_s) in images {
            let z = h.mul(y, *s);
            let phi_z: Vec<usize> = (0..nn).map(|x| phi_y[phi_s[x]]).collect();
            match &action[z] {
                Some(existing) if *existing != phi_z => {
                    return Err(Error::NotAHomomorphism { h1: y, h2: *s });
                }
                Some(_) => {}
                None => {
                    action[z] = Some(phi_z);
                    queue.push_back(z);
                }
            }
        }
    }
    let reached = action.iter().filter(|a| a.is_some()).count();
    if reached != h.order() {
        return Err(Error::IncompleteAction {
            reached,
            order: h.order(),
        });
    }
    Ok(action.into_iter().map(Option::unwrap).collect())
}

/// A subgroup as a membership set over its parent's element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Bitset,
    order: usize,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order, self.members)
    }
}

impl Subgroup {
    pub(crate) fn from_bitset_unchecked(members: Bitset) -> Self {
        let order = members.count();
        Subgroup { members, order }
    }

    /// Validates that `members` is a subgroup of `g`.
    pub fn from_members(g: &FiniteGroup, members: Bitset) -> Result<Self> {
        if members.capacity() != g.order() || !members.contains(0) {
            return Err(Error::BadParams("subgroup must contain the identity".into()));
        }
        let elems = members.to_vec();
        for &a in &elems {
            for &b in &elems {
                if !members.contains(g.mul(a, b)) {
                    return Err(Error::BadParams(format!("not closed: {a} * {b}")));
                }
            }
        }
        Ok(Self::from_bitset_unchecked(members))
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_bitset_unchecked(Bitset::full(g.order()))
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_bitset_unchecked(Bitset::from_indices(g.order(), [0]))
    }

    pub fn parent_order(&self) -> usize {
        self.members.capacity()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Self::from_bitset_unchecked(self.members.intersection(&other.members))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        let e = self.elements();
        e.iter()
            .enumerate()
            .all(|(i, &a)| e[i + 1..].iter().all(|&b| g.commute(a, b)))
    }

    /// The subgroup as a standalone group, members relabelled in increasing order.
    pub fn to_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let elems = self.elements();
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        FiniteGroup::from_fn(elems.len(), |a, b| pos[g.mul(elems[a], elems[b])])
    }
}

/// Sorted by order, then lexicographically by member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Projection onto a quotient group. The source group is not retained; the
/// projection has one entry per source element.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub target: FiniteGroup,
    pub projection: Vec<usize>,
    /// Smallest source element of each coset.
    pub representatives: Vec<usize>,
}

impl QuotientMap {
    pub fn source_order(&self) -> usize {
        self.projection.len()
    }

    pub fn fiber_size(&self) -> usize {
        self.source_order() / self.target.order()
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_bitset_unchecked(Bitset::from_indices(
            self.source_order(),
            (0..self.source_order()).filter(|&x| h.contains(self.projection[x])),
        ))
    }

    /// Image of a source subgroup in the target.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_bitset_unchecked(Bitset::from_indices(
            self.target.order(),
            h.members().iter().map(|x| self.projection[x]),
        ))
    }
}
