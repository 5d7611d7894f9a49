//! Regenerates the stored multiplication tables for every group of order at
//! most 32 under `data/small/`.
//!
//! Every group of order <= 32 is solvable, so it has a normal subgroup `H` of
//! prime index `p` and arises as a cyclic extension: pick `t` outside `H`,
//! then conjugation by `t` is an automorphism `a` of `H` and `t^p = h0` with
//! `a(h0) = h0` and `a^p` equal to conjugation by `h0`. Conversely every such
//! pair `(a, h0)` defines a group. We enumerate all of them from the groups of
//! smaller order and keep one per isomorphism class.
//!
//! Usage: `cargo run --release --example gen_small_groups [-- OUT_DIR]`

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use relcomm::arith;
use relcomm::FiniteGroup;
use sha2::{Digest, Sha256};

const MAX_ORDER: usize = 32;
const KNOWN_COUNTS: [usize; 33] = [
    0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1, 51,
];

/// Per-element invariant used both for bucketing and to prune isomorphism search.
type ElemSig = (usize, usize, usize);

struct Candidate {
    group: FiniteGroup,
    sigs: Vec<ElemSig>,
}

fn element_sigs(g: &FiniteGroup) -> Vec<ElemSig> {
    let n = g.order();
    let mut roots = vec![0usize; n];
    for y in 0..n {
        roots[g.mul(y, y)] += 1;
    }
    (0..n)
        .map(|x| {
            let cent = (0..n).filter(|&y| g.commute(x, y)).count();
            (g.element_order(x), cent, roots[x])
        })
        .collect()
}

fn group_key(g: &FiniteGroup, sigs: &[ElemSig]) -> Vec<usize> {
    let n = g.order();
    let mut sorted = sigs.to_vec();
    sorted.sort_unstable();
    let mut commutators = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            commutators.push(c);
        }
    }
    commutators.sort_unstable();
    commutators.dedup();
    let derived = g.generated(&commutators).order();
    let mut key = vec![n, g.center().order(), derived, g.conjugacy_classes().len()];
    for (o, c, r) in sorted {
        key.extend([o, c, r]);
    }
    key
}

/// Extends `gens[i] -> images[i]` to a map on `<gens>`; `None` if it is not a
/// well-defined injective homomorphism there.
fn extend_map(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let z = g.mul(y, s);
            let img = h.mul(map[y], t);
            if map[z] == usize::MAX {
                if used[img] {
                    return None;
                }
                used[img] = true;
                map[z] = img;
                queue.push(z);
            } else if map[z] != img {
                return None;
            }
        }
    }
    Some(map)
}

fn isomorphic(a: &Candidate, b: &Candidate) -> bool {
    let gens = a.group.generating_set();
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..b.group.order()).filter(|&y| b.sigs[y] == a.sigs[x]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &choices, &mut images)
}

fn search(a: &Candidate, b: &Candidate, gens: &[usize], choices: &[Vec<usize>], images: &mut Vec<usize>) -> bool {
    let depth = images.len();
    if depth == gens.len() {
        return true;
    }
    for &y in &choices[depth] {
        images.push(y);
        if extend_map(&a.group, &b.group, &gens[..=depth], images).is_some() && search(a, b, gens, choices, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// All automorphisms of `h`, as element maps.
fn automorphisms(h: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = h.order();
    let gens = h.generating_set();
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..n).filter(|&y| h.element_order(y) == h.element_order(x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut images = Vec::new();
    fn rec(
        h: &FiniteGroup,
        gens: &[usize],
        choices: &[Vec<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let depth = images.len();
        if depth == gens.len() {
            if let Some(map) = extend_map(h, h, gens, images) {
                if map.iter().all(|&v| v != usize::MAX) {
                    out.push(map);
                }
            }
            return;
        }
        for &y in &choices[depth] {
            images.push(y);
            if extend_map(h, h, &gens[..=depth], images).is_some() {
                rec(h, gens, choices, images, out);
            }
            images.pop();
        }
    }
    rec(h, &gens, &choices, &mut images, &mut out);
    out
}

/// Group of pairs `(h, i)`, index `h + i·|H|`, standing for `h·t^i`.
fn extension(h: &FiniteGroup, p: usize, alpha: &[usize], h0: usize) -> FiniteGroup {
    let m = h.order();
    let n = m * p;
    let mut powers = vec![(0..m).collect::<Vec<_>>()];
    for i in 1..p {
        let prev: &Vec<usize> = &powers[i - 1];
        powers.push(prev.iter().map(|&x| alpha[x]).collect());
    }
    let mut rows = vec![vec![0usize; n]; n];
    for (a, row) in rows.iter_mut().enumerate() {
        let (h1, i) = (a % m, a / m);
        for (b, cell) in row.iter_mut().enumerate() {
            let (h2, j) = (b % m, b / m);
            let mut x = h.mul(h1, powers[i][h2]);
            let mut k = i + j;
            if k >= p {
                x = h.mul(x, h0);
                k -= p;
            }
            *cell = x + k * m;
        }
    }
    FiniteGroup::from_table(&rows, None).expect("cyclic extension is a group")
}

fn extensions_of(h: &FiniteGroup, p: usize) -> Vec<FiniteGroup> {
    let m = h.order();
    let mut out = Vec::new();
    for alpha in automorphisms(h) {
        let mut alpha_p: Vec<usize> = (0..m).collect();
        for _ in 0..p {
            alpha_p = alpha_p.iter().map(|&x| alpha[x]).collect();
        }
        for h0 in 0..m {
            if alpha[h0] != h0 {
                continue;
            }
            let inner = (0..m).all(|x| alpha_p[x] == h.conjugate(x, h0));
            if inner {
                out.push(extension(h, p, &alpha, h0));
            }
        }
    }
    out
}

fn main() {
    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/small"));
    fs::create_dir_all(&out_dir).expect("create output directory");

    let mut by_order: Vec<Vec<Candidate>> = (0..=MAX_ORDER).map(|_| Vec::new()).collect();
    let trivial = FiniteGroup::trivial();
    by_order[1].push(Candidate {
        sigs: element_sigs(&trivial),
        group: trivial,
    });

    for n in 2..=MAX_ORDER {
        let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        let mut found: Vec<(Vec<usize>, Candidate)> = Vec::new();
        for p in arith::primes_dividing(n as u64) {
            let p = p as usize;
            let bases: Vec<FiniteGroup> = by_order[n / p].iter().map(|c| c.group.clone()).collect();
            for h in &bases {
                for g in extensions_of(h, p) {
                    let sigs = element_sigs(&g);
                    let key = group_key(&g, &sigs);
                    let cand = Candidate { group: g, sigs };
                    let bucket = buckets.entry(key.clone()).or_default();
                    if bucket.iter().any(|&i| isomorphic(&found[i].1, &cand)) {
                        continue;
                    }
                    bucket.push(found.len());
                    found.push((key, cand));
                }
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(
            found.len(),
            KNOWN_COUNTS[n],
            "found {} groups of order {n}",
            found.len()
        );
        eprintln!("order {n}: {} groups", found.len());
        by_order[n] = found.into_iter().map(|(_, c)| c).collect();
    }

    let mut manifest = String::new();
    for (n, groups) in by_order.iter().enumerate().skip(1) {
        for (k, c) in groups.iter().enumerate() {
            let file = format!("T{n:02}_{:02}.tbl", k + 1);
            let mut text = format!("{n}\n");
            for row in c.group.rows() {
                let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                text.push_str(&line.join(" "));
                text.push('\n');
            }
            fs::write(out_dir.join(&file), &text).expect("write table");
            let _ = writeln!(manifest, "{:x}  {file}", Sha256::digest(text.as_bytes()));
        }
    }
    fs::write(out_dir.join("MANIFEST"), manifest).expect("write manifest");
}
