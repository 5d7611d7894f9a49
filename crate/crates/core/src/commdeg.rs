//! Commutativity degrees `d(G)`, `d(H,G)`, `d(H,K)` and the spectrum `D(G)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::rational::Rat;

/// `k(G)/|G|`.
pub fn comm_degree(g: &FiniteGroup) -> Rat {
    Rat::new(g.conjugacy_classes().len() as u64, g.order() as u64)
}

/// `d(H,G)`, computing the needed centralizer orders directly.
pub fn rel_comm_degree(g: &FiniteGroup, h: &Subgroup) -> Rat {
    let n = g.order();
    let pairs: u64 = h
        .members()
        .iter()
        .map(|x| (0..n).filter(|&y| g.commute(x, y)).count() as u64)
        .sum();
    Rat::new(pairs, (h.order() * n) as u64)
}

/// `d(H,K)` with centralizers taken inside `K`.
pub fn rel_comm_degree_within(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<Rat> {
    if !h.is_subgroup_of(k) || k.parent_order() != g.order() {
        return Err(Error::NotNested);
    }
    let k_elems = k.elements();
    let pairs: u64 = h
        .members()
        .iter()
        .map(|x| k_elems.iter().filter(|&&y| g.commute(x, y)).count() as u64)
        .sum();
    Ok(Rat::new(pairs, (h.order() * k.order()) as u64))
}

/// Literal count of commuting pairs in `H × G`.
pub fn pair_count_oracle(g: &FiniteGroup, h: &Subgroup) -> Rat {
    let mut pairs = 0u64;
    for x in h.elements() {
        for y in 0..g.order() {
            if g.mul(x, y) == g.mul(y, x) {
                pairs += 1;
            }
        }
    }
    Rat::new(pairs, (h.order() * g.order()) as u64)
}

/// Centralizer of every element, computed once per group.
#[derive(Clone, Debug)]
pub struct Centralizers {
    sets: Vec<Bitset>,
}

impl Centralizers {
    pub fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut sets: Vec<Bitset> = (0..n).map(|_| Bitset::new(n)).collect();
        for x in 0..n {
            sets[x].insert(x);
            for y in x + 1..n {
                if g.commute(x, y) {
                    sets[x].insert(y);
                    sets[y].insert(x);
                }
            }
        }
        Centralizers { sets }
    }

    pub fn of(&self, x: usize) -> &Bitset {
        &self.sets[x]
    }

    pub fn size(&self, x: usize) -> usize {
        self.sets[x].count()
    }

    /// `Σ_{x∈H} |C_G(x)|`
    pub fn pair_count(&self, h: &Subgroup) -> u64 {
        h.members().iter().map(|x| self.sets[x].count() as u64).sum()
    }

    pub fn degree(&self, h: &Subgroup) -> Rat {
        Rat::new(self.pair_count(h), (h.order() * self.sets.len()) as u64)
    }

    /// `d(H,K)` for `H ≤ K`.
    pub fn degree_within(&self, k: &Subgroup, h: &Subgroup) -> Result<Rat> {
        if !h.is_subgroup_of(k) {
            return Err(Error::NotNested);
        }
        let pairs: u64 = h
            .members()
            .iter()
            .map(|x| self.sets[x].intersection_count(k.members()) as u64)
            .sum();
        Ok(Rat::new(pairs, (h.order() * k.order()) as u64))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpectrumOptions {
    /// Only evaluate subgroups containing `Z(G)`. The values are unchanged
    /// because `d(H,G) = d(HZ,G)`, but witnesses become the least subgroup
    /// containing the center rather than the least subgroup overall.
    pub central_dedup: bool,
}

/// Distinct values of `d(H,G)` in decreasing order, each with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSpectrum {
    pub values: Vec<Rat>,
    #[serde(serialize_with = "serialize_witnesses")]
    pub witnesses: Vec<Subgroup>,
}

fn serialize_witnesses<S: serde::Serializer>(w: &[Subgroup], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(w.len()))?;
    for h in w {
        seq.serialize_element(&h.elements())?;
    }
    seq.end()
}

impl DegreeSpectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Position `k` of `value` as `d_k`.
    pub fn index_of(&self, value: &Rat) -> Option<usize> {
        self.values.binary_search_by(|v| value.cmp(v)).ok()
    }

    pub fn contains(&self, value: &Rat) -> bool {
        self.index_of(value).is_some()
    }

    /// `d(G)`, the last value.
    pub fn minimum(&self) -> &Rat {
        self.values.last().expect("spectrum always contains 1")
    }
}

/// `d(H,G)` for every subgroup of the lattice, in lattice order.
pub fn degree_table(g: &FiniteGroup, lattice: &SubgroupLattice, cent: &Centralizers) -> Vec<Rat> {
    let n = g.order() as u64;
    lattice
        .subgroups()
        .par_iter()
        .map(|h| Rat::new(cent.pair_count(h), h.order() as u64 * n))
        .collect()
}

pub fn degree_spectrum(g: &FiniteGroup, lattice: &SubgroupLattice) -> DegreeSpectrum {
    degree_spectrum_with(g, lattice, SpectrumOptions::default())
}

pub fn degree_spectrum_with(g: &FiniteGroup, lattice: &SubgroupLattice, opts: SpectrumOptions) -> DegreeSpectrum {
    let cent = Centralizers::new(g);
    let n = g.order() as u64;
    let subs = lattice.subgroups();
    let keep: Vec<usize> = match opts.central_dedup {
        true => {
            let z = g.center();
            (0..subs.len()).filter(|&i| z.is_subgroup_of(&subs[i])).collect()
        }
        false => (0..subs.len()).collect(),
    };
    let degrees: Vec<(Rat, usize)> = keep
        .into_par_iter()
        .map(|i| (Rat::new(cent.pair_count(&subs[i]), subs[i].order() as u64 * n), i))
        .collect();
    collect_spectrum(subs, degrees)
}

/// Spectrum from a full per-subgroup degree table (as from [`degree_table`]).
pub fn spectrum_from_table(lattice: &SubgroupLattice, degrees: &[Rat]) -> DegreeSpectrum {
    collect_spectrum(lattice.subgroups(), degrees.iter().cloned().zip(0..).collect())
}

/// `hits` pairs a value with a lattice index; lattice order is witness order.
fn collect_spectrum(subs: &[Subgroup], mut hits: Vec<(Rat, usize)>) -> DegreeSpectrum {
    hits.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    hits.dedup_by(|later, first| later.0 == first.0);
    DegreeSpectrum {
        values: hits.iter().map(|(v, _)| v.clone()).collect(),
        witnesses: hits.iter().map(|&(_, i)| subs[i].clone()).collect(),
    }
}
