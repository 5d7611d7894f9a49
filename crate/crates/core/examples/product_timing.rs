//! Times lattice and spectrum construction for the large product groups.

use std::time::Instant;

use relcomm::commdeg::degree_spectrum;
use relcomm::group::direct_product;
use relcomm::lattice::SubgroupLattice;
use relcomm::FiniteGroup;

fn main() {
    let pairs = [
        ("A4xS4", FiniteGroup::alternating(4), FiniteGroup::symmetric(4)),
        ("S4xS4", FiniteGroup::symmetric(4), FiniteGroup::symmetric(4)),
    ];
    for (name, a, b) in pairs {
        let t = Instant::now();
        let g = direct_product(&a, &b, 1024).unwrap();
        let l = SubgroupLattice::build(&g, 768).unwrap();
        let built = t.elapsed();
        let s = degree_spectrum(&g, &l);
        println!(
            "{name}: {} subgroups, |D| = {}, lattice {:?}, total {:?}",
            l.len(),
            s.len(),
            built,
            t.elapsed()
        );
    }
}
