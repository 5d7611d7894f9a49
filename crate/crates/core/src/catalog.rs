//! Named groups: constructor families, hand-built examples, and the stored
//! tables of every group of order at most 32.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup};
use crate::lattice::DEFAULT_LATTICE_CAP;
use crate::spec::{Action, GroupSpec};

/// Environment variable overriding the stored-table directory.
pub const DATA_DIR_ENV: &str = "RELCOMM_DATA_DIR";

pub const STORED_MAX_ORDER: usize = 32;

/// Number of groups of each order up to 32, indexed by order.
pub const SMALL_GROUP_COUNTS: [usize; 33] = [
    0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1, 51,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: GroupSpec,
}

impl CatalogEntry {
    fn new(name: impl Into<String>, spec: GroupSpec) -> Self {
        CatalogEntry {
            name: name.into(),
            spec,
        }
    }

    /// Builds the group and names it after the entry.
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        Ok(self.spec.build(cap)?.named(self.name.clone()))
    }
}

pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/small"),
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// `file name -> sha256` from the directory's MANIFEST.
pub fn read_manifest(dir: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(dir.join("MANIFEST"))
        .map_err(|e| Error::Data(format!("{}: {e}", dir.join("MANIFEST").display())))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (hash, file) = line
            .split_once("  ")
            .ok_or_else(|| Error::Data(format!("MANIFEST line {}: expected `<sha256>  <file>`", i + 1)))?;
        out.insert(file.trim().to_string(), hash.trim().to_string());
    }
    Ok(out)
}

/// Parses the stored-table format: the order on the first line, then one
/// row of space-separated indices per line.
pub fn parse_table(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .and_then(|l| l.trim().parse().ok())
        .ok_or_else(|| Error::Data("missing order line".into()))?;
    let rows: Vec<Vec<usize>> = lines
        .map(|l| {
            l.split_whitespace()
                .map(|v| v.parse().map_err(|_| Error::Data(format!("bad entry `{v}`"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Data(format!("table is not {n}x{n}")));
    }
    Ok(rows)
}

fn load_checked(dir: &Path, file: &str, manifest: &BTreeMap<String, String>) -> Result<FiniteGroup> {
    let path = dir.join(file);
    let bytes = fs::read(&path).map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
    let expected = manifest
        .get(file)
        .ok_or_else(|| Error::Data(format!("{file} is not listed in MANIFEST")))?;
    if hex_digest(&bytes) != *expected {
        return Err(Error::Data(format!("{file}: checksum mismatch")));
    }
    let text = String::from_utf8(bytes).map_err(|_| Error::Data(format!("{file}: not UTF-8")))?;
    let rows = parse_table(&text).map_err(|e| Error::Data(format!("{file}: {e}")))?;
    let name = file.trim_end_matches(".tbl").to_string();
    FiniteGroup::from_table(&rows, Some(name))
}

/// Every stored table, validated against the MANIFEST checksums and as a
/// group, with the per-order counts checked against [`SMALL_GROUP_COUNTS`].
pub fn stored_tables(dir: &Path) -> Result<Vec<(String, FiniteGroup)>> {
    let manifest = read_manifest(dir)?;
    let mut out = Vec::new();
    let mut counts = [0usize; STORED_MAX_ORDER + 1];
    for file in manifest.keys() {
        let g = load_checked(dir, file, &manifest)?;
        if g.order() > STORED_MAX_ORDER {
            return Err(Error::Data(format!("{file}: order {} is out of range", g.order())));
        }
        counts[g.order()] += 1;
        out.push((file.trim_end_matches(".tbl").to_string(), g));
    }
    for n in 1..=STORED_MAX_ORDER {
        if counts[n] != SMALL_GROUP_COUNTS[n] {
            return Err(Error::Data(format!(
                "{} stored groups of order {n}, expected {}",
                counts[n], SMALL_GROUP_COUNTS[n]
            )));
        }
    }
    Ok(out)
}

fn is_stored_id(id: &str) -> bool {
    let b = id.as_bytes();
    b.len() == 6
        && b[0] == b'T'
        && b[3] == b'_'
        && id[1..3].parse::<usize>().is_ok()
        && id[4..].parse::<usize>().is_ok()
}

/// Resolves a catalog name to a group.
pub fn named_group(id: &str, cap: usize) -> Result<FiniteGroup> {
    if is_stored_id(id) {
        let dir = data_dir();
        let manifest = read_manifest(&dir)?;
        let file = format!("{id}.tbl");
        if !manifest.contains_key(&file) {
            return Err(Error::UnknownGroup(id.to_string()));
        }
        return load_checked(&dir, &file, &manifest);
    }
    if let Some(g) = code_built(id) {
        return Ok(g);
    }
    if let Some(e) = special_entries().iter().find(|e| e.name == id) {
        return e.build(cap);
    }
    if let Some(spec) = family_spec(id) {
        return Ok(spec.build(cap)?.named(id.to_string()));
    }
    Err(Error::UnknownGroup(id.to_string()))
}

/// `C<n>`, `D<2n>` and `Q<4n>`.
fn family_spec(id: &str) -> Option<GroupSpec> {
    let (head, num) = id.split_at(1);
    let n: usize = num.parse().ok().filter(|&n| n >= 1)?;
    match head {
        "C" => Some(GroupSpec::Cyclic(n)),
        "D" if n.is_multiple_of(2) => Some(GroupSpec::Dihedral(n / 2)),
        "Q" if n.is_multiple_of(4) => Some(GroupSpec::Dicyclic(n / 4)),
        _ => None,
    }
}

/// `C_n ⋊ C_m` with the generator acting as `x ↦ kx`.
fn cyclic_semidirect(n: usize, m: usize, k: usize) -> GroupSpec {
    GroupSpec::Semidirect {
        n: Box::new(GroupSpec::Cyclic(n)),
        h: Box::new(GroupSpec::Cyclic(m)),
        action: Action::HGen((0..n).map(|x| x * k % n).collect()),
    }
}

/// `(C_p)^r ⋊ C_m` with the generator acting by the matrix `rows` on digit vectors.
fn linear_semidirect(p: usize, m: usize, rows: &[Vec<usize>]) -> GroupSpec {
    let r = rows.len();
    let perm = (0..p.pow(r as u32))
        .map(|x| {
            let digits: Vec<usize> = (0..r).map(|i| x / p.pow(i as u32) % p).collect();
            (0..r)
                .map(|i| {
                    let v: usize = (0..r).map(|j| rows[i][j] * digits[j]).sum::<usize>() % p;
                    v * p.pow(i as u32)
                })
                .sum()
        })
        .collect();
    GroupSpec::Semidirect {
        n: Box::new(GroupSpec::ElementaryAbelian { p, rank: r as u32 }),
        h: Box::new(GroupSpec::Cyclic(m)),
        action: Action::HGen(perm),
    }
}

/// Companion matrix of a monic cubic over `F_p` whose order is `q`.
fn companion_of_order(p: usize, q: usize) -> Vec<Vec<usize>> {
    let mul = |a: &Vec<Vec<usize>>, b: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum::<usize>() % p)
                    .collect()
            })
            .collect()
    };
    let id: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| usize::from(i == j)).collect()).collect();
    for c0 in 1..p {
        for c1 in 0..p {
            for c2 in 0..p {
                // x^3 = c2 x^2 + c1 x + c0
                let m = vec![vec![0, 0, c0], vec![1, 0, c1], vec![0, 1, c2]];
                let mut power = m.clone();
                let mut order = 1;
                while power != id && order <= 100 {
                    power = mul(&power, &m);
                    order += 1;
                }
                if order == q {
                    return m;
                }
            }
        }
    }
    unreachable!("no companion matrix of order {q} over F_{p}")
}

/// Automorphism of the Heisenberg group mod `p` lifting `[[a, b], [c, d]]`,
/// as an image list over element indices `x + p*y + p^2*z`.
fn heisenberg_lift(p: usize, m: [[usize; 2]; 2]) -> Vec<usize> {
    let [[a, b], [c, d]] = m;
    let det = (a * d + p * p - (b * c) % p) % p;
    (0..p * p * p)
        .map(|e| {
            let (x, y, z) = (e % p, (e / p) % p, e / (p * p));
            let nx = (a * x + b * y) % p;
            let ny = (c * x + d * y) % p;
            // quadratic correction so the map respects (x,y,z)(x',y',z') = (.., z+z'+xy')
            let half = p.div_ceil(2);
            let q = a * c % p * (x * (x + p - 1) % p) % p * half
                + b * d % p * (y * (y + p - 1) % p) % p * half
                + b * c % p * (x * y % p);
            let nz = (det * z + q) % p;
            nx + p * ny + p * p * nz
        })
        .collect()
}

fn perm_order(perm: &[usize]) -> usize {
    let mut cur = perm.to_vec();
    let mut k = 1;
    while cur.iter().enumerate().any(|(i, &v)| i != v) {
        cur = cur.iter().map(|&v| perm[v]).collect();
        k += 1;
    }
    k
}

fn perm_power(perm: &[usize], k: usize) -> Vec<usize> {
    let mut cur: Vec<usize> = (0..perm.len()).collect();
    for _ in 0..k {
        cur = cur.iter().map(|&v| perm[v]).collect();
    }
    cur
}

/// `Heis(p) ⋊ C_3` via a determinant-one matrix of order 3.
fn heisenberg_by_c3(p: usize, m: [[usize; 2]; 2]) -> GroupSpec {
    let phi = heisenberg_lift(p, m);
    let k = perm_order(&phi);
    let psi = perm_power(&phi, k / 3);
    GroupSpec::Semidirect {
        n: Box::new(GroupSpec::Heisenberg(p)),
        h: Box::new(GroupSpec::Cyclic(3)),
        action: Action::HGen(psi),
    }
}

/// Permutation list to disjoint cycles (fixed points dropped).
fn to_cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut cycle = vec![s];
        seen[s] = true;
        let mut x = perm[s];
        while x != s {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        out.push(cycle);
    }
    out
}

/// Signed permutation of `m` coordinates as a permutation of `2m` points,
/// point `c + m*s` standing for `(-1)^s e_c`.
fn signed(m: usize, f: impl Fn(usize) -> (usize, bool)) -> Vec<Vec<usize>> {
    let perm: Vec<usize> = (0..2 * m)
        .map(|pt| {
            let (c, s) = (pt % m, pt / m == 1);
            let (c2, flip) = f(c);
            c2 + m * usize::from(s ^ flip)
        })
        .collect();
    to_cycles(&perm)
}

/// Extraspecial of order 32, plus type: Pauli X and Z on two real qubits.
fn es32_plus() -> GroupSpec {
    let gens = vec![
        signed(4, |c| (c ^ 1, false)),
        signed(4, |c| (c, c & 1 == 1)),
        signed(4, |c| (c ^ 2, false)),
        signed(4, |c| (c, c & 2 == 2)),
    ];
    GroupSpec::Perm {
        degree: 8,
        generators: gens,
    }
}

/// Extraspecial of order 32, minus type: left multiplication by `i`, `j` on
/// the quaternions tensored with Pauli X and Z on the plane.
fn es32_minus() -> GroupSpec {
    // basis 1, i, j, k; left multiplication tables as (target, negate)
    const LI: [(usize, bool); 4] = [(1, false), (0, true), (3, false), (2, true)];
    const LJ: [(usize, bool); 4] = [(2, false), (3, true), (0, true), (1, false)];
    let gens = vec![
        signed(8, |c| {
            let (t, s) = LI[c % 4];
            (t + 4 * (c / 4), s)
        }),
        signed(8, |c| {
            let (t, s) = LJ[c % 4];
            (t + 4 * (c / 4), s)
        }),
        signed(8, |c| (c ^ 4, false)),
        signed(8, |c| (c, c & 4 == 4)),
    ];
    GroupSpec::Perm {
        degree: 16,
        generators: gens,
    }
}

/// Groups defined by code rather than by a spec.
fn code_built(id: &str) -> Option<FiniteGroup> {
    match id {
        "ES243" => Some(extraspecial_243()),
        "U64" => Some(unitary_sylow_64()),
        _ => None,
    }
}

/// Extraspecial `3^{1+4}` of exponent 3: two Heisenberg groups with their
/// centers identified.
fn extraspecial_243() -> FiniteGroup {
    let h = FiniteGroup::heisenberg(3);
    let g = direct_product(&h, &h, 1024).expect("order 729");
    // (z, z^-1) with z = (0,0,1) at index 9
    let z = 9;
    let glue = g.generated(&[z * 27 + h.inv(z)]);
    let q = g.quotient(&glue).expect("central subgroup");
    FiniteGroup::from_table(&q.target.rows(), Some("ES243".into())).expect("quotient is a group")
}

/// Sylow 2-subgroup of `SU(3,4)`: pairs `(a, b)` over `F_16` with
/// `b + b^4 = a^5`, multiplied by `(a, b)(a', b') = (a + a', b + b' + a a'^4)`.
fn unitary_sylow_64() -> FiniteGroup {
    // F_16 = F_2[x] / (x^4 + x + 1)
    let mul = |mut a: usize, mut b: usize| {
        let mut r = 0;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & 16 != 0 {
                a ^= 0b10011;
            }
        }
        r
    };
    let pow = |a: usize, e: u32| (0..e).fold(1, |acc, _| mul(acc, a));
    let mut elems: Vec<(usize, usize)> = Vec::new();
    for a in 0..16 {
        for b in 0..16 {
            if b ^ pow(b, 4) == pow(a, 5) {
                elems.push((a, b));
            }
        }
    }
    let index: BTreeMap<(usize, usize), usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let rows: Vec<Vec<usize>> = elems
        .iter()
        .map(|&(a, b)| {
            elems
                .iter()
                .map(|&(c, d)| index[&(a ^ c, b ^ d ^ mul(a, pow(c, 4)))])
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows, Some("U64".into())).expect("unitary Sylow subgroup")
}

fn f21() -> GroupSpec {
    cyclic_semidirect(7, 3, 2)
}

fn f55() -> GroupSpec {
    cyclic_semidirect(11, 5, 3)
}

fn prod(a: GroupSpec, b: GroupSpec) -> GroupSpec {
    GroupSpec::Product(Box::new(a), Box::new(b))
}

/// Hand-picked groups beyond the constructor families and stored tables.
pub fn special_entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        use GroupSpec::*;
        let ea = |p, rank| ElementaryAbelian { p, rank };
        let d8 = || Dihedral(4);
        let q8 = || Dicyclic(2);
        let heis3 = || Heisenberg(3);
        vec![
            CatalogEntry::new("S3", Symmetric(3)),
            CatalogEntry::new("S4", Symmetric(4)),
            CatalogEntry::new("S5", Symmetric(5)),
            CatalogEntry::new("A4", Alternating(4)),
            CatalogEntry::new("A5", Alternating(5)),
            CatalogEntry::new("Heis3", heis3()),
            CatalogEntry::new("Heis5", Heisenberg(5)),
            CatalogEntry::new("C2^2", ea(2, 2)),
            CatalogEntry::new("C2^3", ea(2, 3)),
            CatalogEntry::new("C2^4", ea(2, 4)),
            CatalogEntry::new("C2^5", ea(2, 5)),
            CatalogEntry::new("C3^2", ea(3, 2)),
            CatalogEntry::new("C3^3", ea(3, 3)),
            CatalogEntry::new("C5^2", ea(5, 2)),
            CatalogEntry::new("ES32+", es32_plus()),
            CatalogEntry::new("ES32-", es32_minus()),
            CatalogEntry::new("ES243", Named("ES243".into())),
            CatalogEntry::new("U64", Named("U64".into())),
            CatalogEntry::new("SL23", Sl23),
            CatalogEntry::new("F20", cyclic_semidirect(5, 4, 2)),
            CatalogEntry::new("F21", f21()),
            CatalogEntry::new("F52", cyclic_semidirect(13, 4, 5)),
            CatalogEntry::new("F55", f55()),
            CatalogEntry::new("F56", linear_semidirect(2, 7, &companion_of_order(2, 7))),
            CatalogEntry::new("C3^2:C2", linear_semidirect(3, 2, &[vec![2, 0], vec![0, 2]])),
            CatalogEntry::new("C5^2:C2", linear_semidirect(5, 2, &[vec![4, 0], vec![0, 4]])),
            CatalogEntry::new("C5^2:C3", linear_semidirect(5, 3, &[vec![0, 4], vec![1, 4]])),
            CatalogEntry::new("C7^2:C3", linear_semidirect(7, 3, &[vec![2, 0], vec![0, 2]])),
            CatalogEntry::new("C49:C3", cyclic_semidirect(49, 3, 18)),
            CatalogEntry::new("C3^3:C13", linear_semidirect(3, 13, &companion_of_order(3, 13))),
            CatalogEntry::new("Heis5:C3", heisenberg_by_c3(5, [[0, 4], [1, 4]])),
            CatalogEntry::new("D8xC3", prod(d8(), Cyclic(3))),
            CatalogEntry::new("S3xC5", prod(Symmetric(3), Cyclic(5))),
            CatalogEntry::new("D8xS3", prod(d8(), Symmetric(3))),
            CatalogEntry::new("A4xC5", prod(Alternating(4), Cyclic(5))),
            CatalogEntry::new("SL23xC5", prod(Sl23, Cyclic(5))),
            CatalogEntry::new("D8xHeis3", prod(d8(), heis3())),
            CatalogEntry::new("Q8xHeis3", prod(q8(), heis3())),
            CatalogEntry::new("D8xF21", prod(d8(), f21())),
            CatalogEntry::new("Q8xF21", prod(q8(), f21())),
            CatalogEntry::new("D10xHeis3", prod(Dihedral(5), heis3())),
            CatalogEntry::new("D10xF21", prod(Dihedral(5), f21())),
            CatalogEntry::new("D14xHeis3", prod(Dihedral(7), heis3())),
            CatalogEntry::new("F20xF21", prod(cyclic_semidirect(5, 4, 2), f21())),
            CatalogEntry::new("S3xF55", prod(Symmetric(3), f55())),
            CatalogEntry::new("A4xF55", prod(Alternating(4), f55())),
            CatalogEntry::new("A4xS4", prod(Alternating(4), Symmetric(4))),
        ]
    })
}

/// Orders of the special entries, without building them.
fn special_order(e: &CatalogEntry) -> Result<usize> {
    match e.name.as_str() {
        "ES243" => Ok(243),
        "U64" => Ok(64),
        _ => e.spec.order(),
    }
}

/// Catalog of all named groups up to `max_order`, sorted by order then name.
pub fn builtin_catalog(max_order: usize) -> Result<Vec<CatalogEntry>> {
    if max_order > DEFAULT_LATTICE_CAP {
        return Err(Error::BadParams(format!(
            "catalog order {max_order} exceeds the lattice cap {DEFAULT_LATTICE_CAP}"
        )));
    }
    let mut out: Vec<(usize, CatalogEntry)> = Vec::new();
    for n in 1..=max_order {
        out.push((n, CatalogEntry::new(format!("C{n}"), GroupSpec::Cyclic(n))));
    }
    for n in 2..=max_order / 2 {
        out.push((2 * n, CatalogEntry::new(format!("D{}", 2 * n), GroupSpec::Dihedral(n))));
    }
    for n in 2..=max_order / 4 {
        out.push((4 * n, CatalogEntry::new(format!("Q{}", 4 * n), GroupSpec::Dicyclic(n))));
    }
    for e in special_entries() {
        let order = special_order(e)?;
        if order <= max_order {
            out.push((order, e.clone()));
        }
    }
    let manifest = read_manifest(&data_dir())?;
    for file in manifest.keys() {
        let id = file.trim_end_matches(".tbl");
        let order: usize = id[1..3]
            .parse()
            .map_err(|_| Error::Data(format!("bad table name {file}")))?;
        if order <= max_order {
            out.push((order, CatalogEntry::new(id, GroupSpec::Named(id.to_string()))));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.name.cmp(&b.1.name)));
    Ok(out.into_iter().map(|(_, e)| e).collect())
}

/// Coprime pairs for the product-spectrum audit.
pub fn coprime_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("D8", "C3"),
        ("S3", "C5"),
        ("D8", "Heis3"),
        ("Q8", "Heis3"),
        ("D8", "F21"),
        ("Q8", "F21"),
        ("D10", "Heis3"),
        ("D10", "F21"),
        ("D14", "Heis3"),
        ("F20", "F21"),
        ("SL23", "C5"),
        ("A4", "C5"),
        ("S3", "F55"),
        ("A4", "F55"),
    ]
}
