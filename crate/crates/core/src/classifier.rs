//! Recognition of the groups whose spectra have three, four or five values,
//! plus the two p-group families with closed-form spectra.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::commdeg::{degree_spectrum, DegreeSpectrum};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, QuotientMap};
use crate::lattice::{FrobeniusShape, SubgroupLattice};
use crate::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `Ḡ ≅ C_p × C_p`
    T3i {
        p: u64,
    },
    /// `Ḡ` nonabelian of order `pq`, `p > q`
    T3ii {
        p: u64,
        q: u64,
    },
    /// `|Ḡ| = p³`, no abelian maximal subgroup in `G`
    T4i {
        p: u64,
    },
    /// `Ḡ ≅ (C_p × C_p) ⋊ C_q` minimal Frobenius, Sylow `p` of `G` abelian
    T4ii {
        p: u64,
        q: u64,
    },
    /// `|Ḡ| = p³`, `G` has an abelian maximal subgroup
    N5i {
        p: u64,
    },
    /// `|Ḡ| = p⁴`, class sizes `1` and `p^m`
    N5ii {
        p: u64,
        m: u32,
    },
    /// `Ḡ ≅ C_p ⋊ C_{q²}` Frobenius
    NN5i {
        p: u64,
        q: u64,
    },
    /// `Ḡ ≅ C_{p²} ⋊ C_q` Frobenius
    NN5ii {
        p: u64,
        q: u64,
    },
    /// `Ḡ ≅ (C_p × C_p) ⋊ C_q` Frobenius with a normal subgroup of order `p`
    NN5iii {
        p: u64,
        q: u64,
    },
    /// `Ḡ ≅ A4`, Sylow 2 of `G` nonabelian
    NN5ivA4,
    /// `Ḡ ≅ (C_p × C_p) ⋊ C_q` minimal Frobenius, Sylow `p` nonabelian, `p > q`
    NN5ivPq {
        p: u64,
        q: u64,
    },
    /// `Ḡ ≅ (C_p)³ ⋊ C_q` minimal Frobenius, Sylow `p` abelian
    NN5v {
        p: u64,
        q: u64,
    },
    /// p-group with an abelian maximal subgroup, `|Ḡ| = p^n`
    L31 {
        p: u64,
        n: u32,
    },
    /// p-group with class sizes `1` and `p^m`, `|Ḡ| = p^n`
    L32 {
        p: u64,
        m: u32,
        n: u32,
    },
    Unclassified,
}

impl CaseTag {
    pub fn label(&self) -> &'static str {
        match self {
            CaseTag::T3i { .. } => "T3.i",
            CaseTag::T3ii { .. } => "T3.ii",
            CaseTag::T4i { .. } => "T4.i",
            CaseTag::T4ii { .. } => "T4.ii",
            CaseTag::N5i { .. } => "N5.i",
            CaseTag::N5ii { .. } => "N5.ii",
            CaseTag::NN5i { .. } => "NN5.i",
            CaseTag::NN5ii { .. } => "NN5.ii",
            CaseTag::NN5iii { .. } => "NN5.iii",
            CaseTag::NN5ivA4 => "NN5.iv-A4",
            CaseTag::NN5ivPq { .. } => "NN5.iv-pq",
            CaseTag::NN5v { .. } => "NN5.v",
            CaseTag::L31 { .. } => "L31",
            CaseTag::L32 { .. } => "L32",
            CaseTag::Unclassified => "Unclassified",
        }
    }

    /// `(p, q, m, n)` as present for the case.
    pub fn params(&self) -> (Option<u64>, Option<u64>, Option<u32>, Option<u32>) {
        use CaseTag::*;
        match *self {
            T3i { p } | T4i { p } | N5i { p } => (Some(p), None, None, None),
            N5ii { p, m } => (Some(p), None, Some(m), None),
            T3ii { p, q }
            | T4ii { p, q }
            | NN5i { p, q }
            | NN5ii { p, q }
            | NN5iii { p, q }
            | NN5ivPq { p, q }
            | NN5v { p, q } => (Some(p), Some(q), None, None),
            NN5ivA4 => (Some(2), Some(3), None, None),
            L31 { p, n } => (Some(p), None, None, Some(n)),
            L32 { p, m, n } => (Some(p), None, Some(m), Some(n)),
            Unclassified => (None, None, None, None),
        }
    }

    pub fn is_classified(&self) -> bool {
        *self != CaseTag::Unclassified
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())?;
        let (p, q, m, n) = self.params();
        let parts: Vec<String> = [("p", p), ("q", q), ("m", m.map(u64::from)), ("n", n.map(u64::from))]
            .iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
            .collect();
        if !parts.is_empty() && *self != CaseTag::NN5ivA4 {
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for CaseTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let (p, q, m, n) = self.params();
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("case", self.label())?;
        if let Some(p) = p {
            map.serialize_entry("p", &p)?;
        }
        if let Some(q) = q {
            map.serialize_entry("q", &q)?;
        }
        if let Some(m) = m {
            map.serialize_entry("m", &m)?;
        }
        if let Some(n) = n {
            map.serialize_entry("n", &n)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusSummary {
    pub kernel_order: usize,
    pub kernel_cyclic: bool,
    pub kernel_elementary: bool,
    pub complement_order: usize,
    pub complement_cyclic: bool,
    pub is_minimal: bool,
}

/// Invariants of `Ḡ = G/Z(G)` that the case hypotheses refer to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientShape {
    pub order: usize,
    pub factorization: Vec<(u64, u32)>,
    pub is_abelian: bool,
    /// `(p, rank)` when `Ḡ` is elementary abelian and nontrivial.
    pub elementary_abelian: Option<(u64, u32)>,
    /// `(p, q)` with `p > q` when `Ḡ` is nonabelian of order `pq`.
    pub nonabelian_pq: Option<(u64, u64)>,
    pub is_a4: bool,
    pub frobenius: Option<FrobeniusSummary>,
    pub exponent: usize,
    pub element_orders: Vec<usize>,
    /// Primes `p` for which `Ḡ` has a normal subgroup of order `p`.
    pub normal_prime_orders: Vec<u64>,
}

/// The central quotient together with its lattice and shape.
#[derive(Clone, Debug)]
pub struct CentralQuotient {
    pub map: QuotientMap,
    pub lattice: SubgroupLattice,
    pub frobenius: Option<FrobeniusShape>,
    pub shape: QuotientShape,
}

fn is_elementary(g: &FiniteGroup, members: impl Iterator<Item = usize>, order: usize) -> bool {
    match arith::prime_power(order as u64) {
        Some((p, _)) => {
            let mut members = members;
            members.all(|x| x == 0 || g.element_order(x) as u64 == p)
        }
        None => false,
    }
}

pub fn analyze_quotient(g: &FiniteGroup, cap: usize) -> Result<CentralQuotient> {
    let map = g.central_quotient();
    let q = &map.target;
    let lattice = SubgroupLattice::build(q, cap)?;
    let order = q.order();
    let factorization = arith::factorize(order as u64);
    let is_abelian = q.is_abelian();
    let elementary_abelian = if is_abelian && order > 1 && is_elementary(q, 0..order, order) {
        factorization.first().map(|&(p, k)| (p, k))
    } else {
        None
    };
    let nonabelian_pq = match factorization.as_slice() {
        [(a, 1), (b, 1)] if !is_abelian => Some((*b, *a)),
        _ => None,
    };
    let is_a4 = order == 12 && !is_abelian && q.center().order() == 1 && q.element_orders().all(|o| o != 6);
    let frobenius = lattice.frobenius_shape(q);
    let summary = frobenius.as_ref().map(|f| {
        let has_order = |h: &crate::group::Subgroup| h.members().iter().any(|x| q.element_order(x) == h.order());
        FrobeniusSummary {
            kernel_order: f.kernel.order(),
            kernel_cyclic: has_order(&f.kernel),
            kernel_elementary: f.kernel.is_abelian(q) && is_elementary(q, f.kernel.members().iter(), f.kernel.order()),
            complement_order: f.complement_order,
            complement_cyclic: has_order(&f.complement),
            is_minimal: f.is_minimal,
        }
    });
    let element_orders: Vec<usize> = q.element_orders().collect::<BTreeSet<_>>().into_iter().collect();
    let gens = q.generating_set();
    let normal_prime_orders: Vec<u64> = lattice
        .subgroups()
        .iter()
        .filter(|h| arith::is_prime(h.order() as u64) && q.is_normal_with(h, &gens))
        .map(|h| h.order() as u64)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let shape = QuotientShape {
        order,
        factorization,
        is_abelian,
        elementary_abelian,
        nonabelian_pq,
        is_a4,
        frobenius: summary,
        exponent: q.exponent(),
        element_orders,
        normal_prime_orders,
    };
    Ok(CentralQuotient {
        map,
        lattice,
        frobenius,
        shape,
    })
}

pub fn quotient_shape(g: &FiniteGroup) -> Result<QuotientShape> {
    Ok(analyze_quotient(g, g.order().max(1))?.shape)
}

/// Distinct conjugacy class sizes of `G`, ascending.
pub fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
    g.conjugacy_classes()
        .iter()
        .map(Vec::len)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn has_abelian_maximal(g: &FiniteGroup, lattice: &SubgroupLattice) -> bool {
    lattice.maximal_subgroups().iter().any(|m| m.is_abelian(g))
}

fn sylow_is_abelian(g: &FiniteGroup, lattice: &SubgroupLattice, p: u64) -> bool {
    lattice.sylow(p).map(|s| s.is_abelian(g)).unwrap_or(false)
}

/// Hypotheses are tested in a fixed order: three values, four values, the
/// nilpotent and non-nilpotent five-value cases, then the two p-group lemmas.
pub fn classify(g: &FiniteGroup, lattice: &SubgroupLattice) -> Result<CaseTag> {
    if g.is_abelian() {
        return Ok(CaseTag::Unclassified);
    }
    let cq = analyze_quotient(g, lattice.parent_order().max(1))?;
    Ok(classify_with(g, lattice, &cq))
}

pub fn classify_with(g: &FiniteGroup, lattice: &SubgroupLattice, cq: &CentralQuotient) -> CaseTag {
    if g.is_abelian() {
        return CaseTag::Unclassified;
    }
    let shape = &cq.shape;
    if g.is_nilpotent() {
        let Some((p, k)) = arith::prime_power(shape.order as u64) else {
            return CaseTag::Unclassified;
        };
        let abelian_max = has_abelian_maximal(g, lattice);
        let sizes = class_sizes(g);
        let two_sizes = match sizes.as_slice() {
            [1, s] => arith::prime_power(*s as u64).filter(|&(r, _)| r == p).map(|(_, m)| m),
            _ => None,
        };
        if k == 2 && shape.elementary_abelian == Some((p, 2)) {
            return CaseTag::T3i { p };
        }
        if k == 3 && !abelian_max {
            return CaseTag::T4i { p };
        }
        if k == 3 && abelian_max {
            return CaseTag::N5i { p };
        }
        if k == 4 {
            if let Some(m @ 1..=3) = two_sizes {
                return CaseTag::N5ii { p, m };
            }
        }
        if abelian_max && k >= 2 {
            return CaseTag::L31 { p, n: k };
        }
        if let Some(m) = two_sizes {
            if m >= 1 && m <= k {
                return CaseTag::L32 { p, m, n: k };
            }
        }
        return CaseTag::Unclassified;
    }

    if let Some((p, q)) = shape.nonabelian_pq {
        return CaseTag::T3ii { p, q };
    }
    let Some(f) = &shape.frobenius else {
        return CaseTag::Unclassified;
    };
    let Some((p, a)) = arith::prime_power(f.kernel_order as u64) else {
        return CaseTag::Unclassified;
    };
    let Some((q, b)) = arith::prime_power(f.complement_order as u64) else {
        return CaseTag::Unclassified;
    };
    let sylow_abelian = sylow_is_abelian(g, lattice, p);
    match (a, b) {
        (2, 1) if f.kernel_elementary && f.is_minimal => {
            if sylow_abelian {
                CaseTag::T4ii { p, q }
            } else if shape.is_a4 {
                CaseTag::NN5ivA4
            } else if p > q {
                CaseTag::NN5ivPq { p, q }
            } else {
                CaseTag::Unclassified
            }
        }
        (1, 2) if f.complement_cyclic => CaseTag::NN5i { p, q },
        (2, 1) if f.kernel_cyclic => CaseTag::NN5ii { p, q },
        (2, 1) if f.kernel_elementary && shape.normal_prime_orders.contains(&p) && sylow_abelian => {
            CaseTag::NN5iii { p, q }
        }
        (3, 1) if f.kernel_elementary && f.is_minimal && sylow_abelian => CaseTag::NN5v { p, q },
        _ => CaseTag::Unclassified,
    }
}

fn pw(p: u64, e: u32) -> i64 {
    (p as i64).pow(e)
}

fn frac(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

fn require_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadParams(format!("{p} is not prime")))
    }
}

fn require_pair(p: u64, q: u64) -> Result<()> {
    require_prime(p)?;
    require_prime(q)?;
    if p == q {
        return Err(Error::BadParams(format!("p and q must differ, both are {p}")));
    }
    Ok(())
}

fn sorted_desc(values: impl IntoIterator<Item = Rat>) -> Vec<Rat> {
    let set: BTreeSet<Rat> = values.into_iter().collect();
    set.into_iter().rev().collect()
}

/// The closed-form spectrum for a case, in decreasing order.
pub fn predicted_spectrum(tag: &CaseTag) -> Result<Vec<Rat>> {
    use CaseTag::*;
    let one = Rat::one();
    let values: Vec<Rat> = match *tag {
        T3i { p } => {
            require_prime(p)?;
            let p = p as i64;
            vec![one, frac(2 * p - 1, p * p), frac(p * p + p - 1, p * p * p)]
        }
        T3ii { p, q } => {
            require_pair(p, q)?;
            let (p, q) = (p as i64, q as i64);
            vec![one, frac(p + q - 1, p * q), frac(p + q * q - 1, p * q * q)]
        }
        T4i { p } => {
            require_prime(p)?;
            vec![
                one,
                frac(pw(p, 2) + pw(p, 1) - 1, pw(p, 3)),
                frac(2 * pw(p, 2) - 1, pw(p, 4)),
                frac(pw(p, 2) + pw(p, 3) - 1, pw(p, 5)),
            ]
        }
        T4ii { p, q } => {
            require_pair(p, q)?;
            let (p, q) = (p as i64, q as i64);
            vec![
                one,
                frac(p + q - 1, p * q),
                frac(p * p + q - 1, p * p * q),
                frac(p * p + q * q - 1, p * p * q * q),
            ]
        }
        N5i { p } => {
            require_prime(p)?;
            let p = p as i64;
            vec![
                one,
                frac(2 * p - 1, p * p),
                frac(p * p + p - 1, p * p * p),
                frac(3 * p - 2, p * p * p),
                frac(2 * p * p - 1, p * p * p * p),
            ]
        }
        N5ii { p, m } => {
            require_prime(p)?;
            if !(1..=3).contains(&m) {
                return Err(Error::BadParams(format!("m must be 1, 2 or 3, got {m}")));
            }
            std::iter::once(one)
                .chain((1..=4).map(|i| frac(pw(p, m) + pw(p, i) - 1, pw(p, m + i))))
                .collect()
        }
        NN5i { p, q } => {
            require_pair(p, q)?;
            let p = p as i64;
            std::iter::once(one)
                .chain((1..=4).map(|i| frac(p + pw(q, i) - 1, p * pw(q, i))))
                .collect()
        }
        NN5ii { p, q } | NN5iii { p, q } => {
            require_pair(p, q)?;
            let (p, q) = (p as i64, q as i64);
            vec![
                one,
                frac(p + q - 1, p * q),
                frac(p * p + q - 1, p * p * q),
                frac(p * p + q * q + p * q - p - q, p * p * q * q),
                frac(p * p + q * q - 1, p * p * q * q),
            ]
        }
        NN5ivA4 => vec![one, frac(7, 12), frac(1, 2), frac(3, 8), frac(7, 24)],
        NN5ivPq { p, q } => {
            require_pair(p, q)?;
            if p < q {
                return Err(Error::BadParams(format!("needs p > q, got p={p}, q={q}")));
            }
            let (p, q) = (p as i64, q as i64);
            vec![
                one,
                frac(p * p + q - 1, p * p * q),
                frac(p * q + p - 1, p * p * q),
                frac(p * q + p * p - 1, p * p * p * q),
                frac(p * p * q + p * p - 1, p * p * p * p * q),
            ]
        }
        NN5v { p, q } => {
            require_pair(p, q)?;
            let (p, q) = (p as i64, q as i64);
            vec![
                one,
                frac(p + q - 1, p * q),
                frac(p * p + q - 1, p * p * q),
                frac(p * p * p + q - 1, p * p * p * q),
                frac(p * p * p + q * q - 1, p * p * p * q * q),
            ]
        }
        L31 { p, n } => return lemma31_spectrum(p, n),
        L32 { p, m, n } => return lemma32_spectrum(p, m, n),
        Unclassified => return Err(Error::BadParams("no prediction for an unclassified group".into())),
    };
    Ok(sorted_desc(values))
}

/// Spectrum of a p-group with an abelian maximal subgroup and `|Ḡ| = p^n`.
pub fn lemma31_spectrum(p: u64, n: u32) -> Result<Vec<Rat>> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::BadParams(format!("n must be at least 2, got {n}")));
    }
    let tail = frac(p as i64 - 1, pw(p, n));
    let inside = (0..n).map(|i| frac(pw(p, i) + p as i64 - 1, pw(p, i + 1)));
    let outside = (2..=n).map(|j| frac(pw(p, j - 1) + p as i64 - 1, pw(p, j + 1)) + tail.clone());
    Ok(sorted_desc(inside.chain(outside)))
}

/// Spectrum of a p-group whose noncentral classes all have size `p^m`, `|Ḡ| = p^n`.
pub fn lemma32_spectrum(p: u64, m: u32, n: u32) -> Result<Vec<Rat>> {
    require_prime(p)?;
    if m < 1 || m > n {
        return Err(Error::BadParams(format!("needs 1 <= m <= n, got m={m}, n={n}")));
    }
    Ok(sorted_desc(
        (0..=n).map(|i| frac(pw(p, m) + pw(p, i) - 1, pw(p, m + i))),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Match,
    Mismatch,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub name: String,
    pub order: usize,
    pub center_order: usize,
    pub case: CaseTag,
    pub predicted: Vec<Rat>,
    pub computed: DegreeSpectrum,
    pub verdict: Verdict,
}

/// Verdict rules: a classified group must match its prediction exactly; an
/// unclassified group with three to five values is a mismatch against the
/// empty prediction, since every such group should fall under some case.
pub fn verdict_for(tag: &CaseTag, predicted: &[Rat], computed: &[Rat]) -> Verdict {
    if tag.is_classified() {
        if predicted == computed {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    } else if (3..=5).contains(&computed.len()) {
        Verdict::Mismatch
    } else {
        Verdict::NotApplicable
    }
}

pub fn verify_classification(g: &FiniteGroup, lattice: &SubgroupLattice) -> Result<ClassificationReport> {
    let computed = degree_spectrum(g, lattice);
    verify_with_spectrum(g, lattice, computed)
}

pub fn verify_with_spectrum(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
    computed: DegreeSpectrum,
) -> Result<ClassificationReport> {
    let case = classify(g, lattice)?;
    let predicted = if case.is_classified() {
        predicted_spectrum(&case)?
    } else {
        Vec::new()
    };
    let verdict = verdict_for(&case, &predicted, &computed.values);
    Ok(ClassificationReport {
        name: g.name().unwrap_or("G").to_string(),
        order: g.order(),
        center_order: g.center().order(),
        case,
        predicted,
        computed,
        verdict,
    })
}
