//! Subgroup lattices by cyclic-join closure.
//!
//! Every subgroup is generated by finitely many cyclic subgroups, so starting
//! from the trivial group and repeatedly joining each known subgroup with each
//! cyclic subgroup reaches all of them. The joins recorded along the way give
//! the cover relation for free: the minimal overgroups of `H` are exactly the
//! minimal members of `{<H, x> : x ∉ H}`.

use std::collections::HashMap;

use crate::arith;
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// Default ceiling on the order of a group whose lattice we enumerate.
pub const DEFAULT_LATTICE_CAP: usize = 768;

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    parent_order: usize,
    subgroups: Vec<Subgroup>,
    index: HashMap<Bitset, usize>,
    /// Upward covers (minimal proper overgroups) per subgroup.
    covers: Vec<Vec<usize>>,
    /// Downward covers (maximal proper subgroups) per subgroup.
    maximal_of: Vec<Vec<usize>>,
}

/// Frobenius kernel and complement data of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusShape {
    pub kernel: Subgroup,
    pub complement: Subgroup,
    pub complement_order: usize,
    pub is_minimal: bool,
}

impl SubgroupLattice {
    pub fn build(g: &FiniteGroup, cap: usize) -> Result<Self> {
        let n = g.order();
        if n > cap {
            return Err(Error::LatticeCapExceeded { cap, order: n });
        }

        // distinct cyclic subgroups, each with one generator
        let mut cyclic_gens: Vec<usize> = Vec::new();
        let mut seen_cyclic: HashMap<Bitset, ()> = HashMap::new();
        for x in 1..n {
            let c = g.generated(&[x]);
            if seen_cyclic.insert(c.members().clone(), ()).is_none() {
                cyclic_gens.push(x);
            }
        }

        let mut sets: Vec<Bitset> = vec![Bitset::from_indices(n, [0])];
        let mut elems: Vec<Vec<usize>> = vec![vec![0]];
        let mut index: HashMap<Bitset, usize> = HashMap::new();
        index.insert(sets[0].clone(), 0);
        let mut joins: Vec<Vec<usize>> = Vec::new();

        let mut head = 0;
        while head < sets.len() {
            let mut out = Vec::new();
            for &x in &cyclic_gens {
                if sets[head].contains(x) {
                    continue;
                }
                let (k_set, k_elems) = join(g, &sets[head], &elems[head], x);
                let k = match index.get(&k_set) {
                    Some(&k) => k,
                    None => {
                        let k = sets.len();
                        index.insert(k_set.clone(), k);
                        sets.push(k_set);
                        elems.push(k_elems);
                        k
                    }
                };
                out.push(k);
            }
            out.sort_unstable();
            out.dedup();
            joins.push(out);
            head += 1;
        }

        // sort by (order, member list) and renumber
        let subgroups: Vec<Subgroup> = sets.into_iter().map(Subgroup::from_bitset_unchecked).collect();
        let mut perm: Vec<usize> = (0..subgroups.len()).collect();
        perm.sort_by(|&a, &b| subgroups[a].cmp(&subgroups[b]));
        let mut rank = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            rank[old] = new;
        }
        let mut sorted: Vec<Option<Subgroup>> = subgroups.into_iter().map(Some).collect();
        let subgroups: Vec<Subgroup> = perm.iter().map(|&old| sorted[old].take().unwrap()).collect();
        let mut join_sets: Vec<Vec<usize>> = vec![Vec::new(); perm.len()];
        for (old, js) in joins.into_iter().enumerate() {
            let mut js: Vec<usize> = js.into_iter().map(|k| rank[k]).collect();
            js.sort_unstable();
            join_sets[rank[old]] = js;
        }

        let mut covers = vec![Vec::new(); subgroups.len()];
        let mut maximal_of = vec![Vec::new(); subgroups.len()];
        for (h, js) in join_sets.iter().enumerate() {
            // candidates are sorted by order, so only earlier ones can sit inside later ones
            for (pos, &k) in js.iter().enumerate() {
                let minimal = js[..pos].iter().all(|&other| {
                    !(subgroups[other].order() < subgroups[k].order() && subgroups[other].is_subgroup_of(&subgroups[k]))
                });
                if minimal {
                    covers[h].push(k);
                    maximal_of[k].push(h);
                }
            }
        }
        for m in &mut maximal_of {
            m.sort_unstable();
        }

        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();
        Ok(SubgroupLattice {
            parent_order: n,
            subgroups,
            index,
            covers,
            maximal_of,
        })
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.members()).copied()
    }

    /// Index of the whole group (always last).
    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn covers_of(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn maximal_of(&self, i: usize) -> &[usize] {
        &self.maximal_of[i]
    }

    pub fn maximal_subgroups(&self) -> Vec<&Subgroup> {
        self.maximal_of[self.whole()]
            .iter()
            .map(|&i| &self.subgroups[i])
            .collect()
    }

    /// Longest chain `1 = H_0 < H_1 < ... < H_l = G`, counted in strict inclusions.
    pub fn max_chain_length(&self) -> usize {
        let mut len = vec![0usize; self.len()];
        for i in 1..self.len() {
            len[i] = self.maximal_of[i].iter().map(|&j| len[j] + 1).max().unwrap_or(0);
        }
        len[self.whole()]
    }

    pub fn normal_subgroups(&self, g: &FiniteGroup) -> Vec<usize> {
        let gens = g.generating_set();
        (0..self.len())
            .filter(|&i| g.is_normal_with(&self.subgroups[i], &gens))
            .collect()
    }

    /// All Sylow `p`-subgroups, in lattice order.
    pub fn sylow_subgroups(&self, p: u64) -> Result<Vec<usize>> {
        let n = self.parent_order as u64;
        if !arith::is_prime(p) || !n.is_multiple_of(p) {
            return Err(Error::NoSuchPrime {
                p,
                order: self.parent_order,
            });
        }
        let full = arith::p_part(n, p) as usize;
        Ok((0..self.len()).filter(|&i| self.subgroups[i].order() == full).collect())
    }

    /// The first Sylow `p`-subgroup in lattice order.
    pub fn sylow(&self, p: u64) -> Result<&Subgroup> {
        let all = self.sylow_subgroups(p)?;
        Ok(&self.subgroups[all[0]])
    }

    /// The Frobenius kernel, if `g` is a Frobenius group: a normal subgroup
    /// `1 < N < G` of order coprime to its index with `C_G(x) ⊆ N` for every
    /// non-identity `x ∈ N`.
    pub fn frobenius_shape(&self, g: &FiniteGroup) -> Option<FrobeniusShape> {
        let n = g.order();
        let gens = g.generating_set();
        let kernel_idx = (1..self.len().saturating_sub(1)).find(|&i| {
            let k = &self.subgroups[i];
            arith::gcd(k.order() as u64, (n / k.order()) as u64) == 1
                && g.is_normal_with(k, &gens)
                && k.members().iter().skip(1).all(|x| g.centralizer(x).is_subgroup_of(k))
        })?;
        let kernel = self.subgroups[kernel_idx].clone();
        let complement_order = n / kernel.order();
        let complement_idx = (0..self.len())
            .find(|&i| self.subgroups[i].order() == complement_order)
            .expect("Schur-Zassenhaus complement");
        let maximal = &self.maximal_of[self.whole()];
        let kernel_elementary = kernel.is_abelian(g)
            && arith::prime_power(kernel.order() as u64)
                .is_some_and(|(p, _)| kernel.members().iter().skip(1).all(|x| g.element_order(x) as u64 == p));
        let is_minimal = kernel_elementary
            && arith::is_prime(complement_order as u64)
            && maximal.contains(&kernel_idx)
            && maximal.contains(&complement_idx);
        Some(FrobeniusShape {
            kernel,
            complement: self.subgroups[complement_idx].clone(),
            complement_order,
            is_minimal,
        })
    }
}

/// `<H, x>` grown one left coset of `H` at a time; only right multiplication by
/// `x` can leave the current union of cosets.
fn join(g: &FiniteGroup, h_set: &Bitset, h_elems: &[usize], x: usize) -> (Bitset, Vec<usize>) {
    let mut set = h_set.clone();
    let mut elems = h_elems.to_vec();
    let mut i = 0;
    while i < elems.len() {
        let y = g.mul(elems[i], x);
        if !set.contains(y) {
            for &h in h_elems {
                let z = g.mul(y, h);
                set.insert(z);
                elems.push(z);
            }
        }
        i += 1;
    }
    (set, elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(g: &FiniteGroup) -> SubgroupLattice {
        SubgroupLattice::build(g, DEFAULT_LATTICE_CAP).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(lattice(&FiniteGroup::symmetric(4)).len(), 30);
        assert_eq!(lattice(&FiniteGroup::cyclic(7)).len(), 2);
        assert_eq!(lattice(&FiniteGroup::dicyclic(2)).len(), 6);
        assert_eq!(lattice(&FiniteGroup::trivial()).len(), 1);
    }

    #[test]
    fn lattice_is_sorted_and_bounded() {
        let l = lattice(&FiniteGroup::dihedral(6));
        assert_eq!(l.get(0).order(), 1);
        assert_eq!(l.get(l.whole()).order(), 12);
        assert!(l.subgroups().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn maximal_subgroups() {
        let d8 = lattice(&FiniteGroup::dihedral(4));
        let m = d8.maximal_subgroups();
        assert_eq!(m.len(), 3);
        assert!(m.iter().all(|s| s.order() == 4));
        assert_eq!(lattice(&FiniteGroup::cyclic(9)).maximal_subgroups().len(), 1);
        let a4 = lattice(&FiniteGroup::alternating(4));
        let mut orders: Vec<_> = a4.maximal_subgroups().iter().map(|s| s.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![3, 3, 3, 3, 4]);
    }

    #[test]
    fn chain_lengths() {
        assert_eq!(lattice(&FiniteGroup::cyclic(27)).max_chain_length(), 3);
        assert_eq!(lattice(&FiniteGroup::symmetric(4)).max_chain_length(), 4);
        assert_eq!(lattice(&FiniteGroup::trivial()).max_chain_length(), 0);
    }

    #[test]
    fn sylow_subgroups() {
        let s4 = FiniteGroup::symmetric(4);
        let l = lattice(&s4);
        assert_eq!(l.sylow(2).unwrap().order(), 8);
        assert_eq!(l.sylow_subgroups(2).unwrap().len(), 3);
        assert!(matches!(l.sylow(5), Err(Error::NoSuchPrime { p: 5, .. })));
        let c6 = FiniteGroup::cyclic(6);
        let l = lattice(&c6);
        let p3 = l.sylow(3).unwrap();
        assert_eq!(p3.order(), 3);
        assert!(c6.is_normal(p3));
    }

    #[test]
    fn frobenius_shapes() {
        let d18 = FiniteGroup::dihedral(9);
        let f = lattice(&d18).frobenius_shape(&d18).unwrap();
        assert_eq!((f.kernel.order(), f.complement_order, f.is_minimal), (9, 2, false));

        let a4 = FiniteGroup::alternating(4);
        let f = lattice(&a4).frobenius_shape(&a4).unwrap();
        assert_eq!((f.kernel.order(), f.complement_order, f.is_minimal), (4, 3, true));

        let q8 = FiniteGroup::dicyclic(2);
        assert!(lattice(&q8).frobenius_shape(&q8).is_none());
        let s4 = FiniteGroup::symmetric(4);
        assert!(lattice(&s4).frobenius_shape(&s4).is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let g = FiniteGroup::cyclic(20);
        assert!(matches!(
            SubgroupLattice::build(&g, 10),
            Err(Error::LatticeCapExceeded { cap: 10, order: 20 })
        ));
    }
}
