//! Audits of conjectured and proven spectrum inequalities.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith;
use crate::classifier::{analyze_quotient, CentralQuotient};
use crate::commdeg::{degree_table, spectrum_from_table, Centralizers, DegreeSpectrum};
use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::rational::Rat;

/// How `Z(H,G)` is read in the Ω audit.
pub const OMEGA_INTERPRETATION: &str = "Z(H,G) = H ∩ Z(G)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckKind {
    ChainBound,
    OmegaBound,
    ProductSpectrum,
    ProductCardinality,
    PrimePowerOrders,
    DistinctPrimeDegrees,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRecord {
    pub subject: String,
    pub check: CheckKind,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub detail: Value,
}

impl AuditRecord {
    fn new(subject: impl Into<String>, check: CheckKind, witness: Option<Value>, detail: Value) -> Self {
        AuditRecord {
            subject: subject.into(),
            check,
            holds: witness.is_none(),
            witness,
            detail,
        }
    }
}

/// Everything the audits and the classifier need about one group.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub group: FiniteGroup,
    pub lattice: SubgroupLattice,
    pub center: Subgroup,
    pub centralizers: Centralizers,
    /// `d(H,G)` per lattice member.
    pub degrees: Vec<Rat>,
    pub spectrum: DegreeSpectrum,
    pub quotient: CentralQuotient,
}

impl GroupAnalysis {
    pub fn new(group: FiniteGroup, cap: usize) -> Result<Self> {
        let lattice = SubgroupLattice::build(&group, cap)?;
        let centralizers = Centralizers::new(&group);
        let degrees = degree_table(&group, &lattice, &centralizers);
        let spectrum = spectrum_from_table(&lattice, &degrees);
        let quotient = analyze_quotient(&group, cap)?;
        Ok(GroupAnalysis {
            center: group.center(),
            group,
            lattice,
            centralizers,
            degrees,
            spectrum,
            quotient,
        })
    }

    pub fn name(&self) -> String {
        self.group.name().unwrap_or("G").to_string()
    }

    /// `d(<x>, G)`
    pub fn cyclic_degree(&self, x: usize) -> Rat {
        self.centralizers.degree(&self.group.generated(&[x]))
    }
}

/// `|D(G)| ≥ l_M(Ḡ) + 1`
pub fn check_chain_bound(a: &GroupAnalysis) -> AuditRecord {
    let size = a.spectrum.len();
    let chain = a.quotient.lattice.max_chain_length();
    let detail = json!({ "spectrum_size": size, "quotient_chain_length": chain });
    let witness = (size < chain + 1).then(|| detail.clone());
    AuditRecord::new(a.name(), CheckKind::ChainBound, witness, detail)
}

/// For `d(H,G) = d_k`, `Ω(|H / H∩Z(G)|) ≤ k`.
pub fn check_omega_bound(a: &GroupAnalysis) -> AuditRecord {
    let mut worst_slack: Option<i64> = None;
    let mut witness = None;
    for (h, d) in a.lattice.subgroups().iter().zip(&a.degrees) {
        let k = a.spectrum.index_of(d).expect("degree is in the spectrum");
        let central = h.intersection(&a.center).order();
        let omega = arith::big_omega((h.order() / central) as u64);
        let slack = k as i64 - omega as i64;
        worst_slack = Some(worst_slack.map_or(slack, |w| w.min(slack)));
        if slack < 0 && witness.is_none() {
            witness = Some(json!({
                "subgroup": h.elements(),
                "order": h.order(),
                "degree": d,
                "k": k,
                "omega": omega,
            }));
        }
    }
    let detail = json!({
        "interpretation": OMEGA_INTERPRETATION,
        "subgroups_checked": a.lattice.len(),
        "spectrum_size": a.spectrum.len(),
        "min_slack": worst_slack,
    });
    AuditRecord::new(a.name(), CheckKind::OmegaBound, witness, detail)
}

fn set_product(a: &[Rat], b: &[Rat]) -> BTreeSet<Rat> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn strings(values: impl IntoIterator<Item = Rat>) -> Vec<String> {
    values.into_iter().map(|v| v.to_string()).collect()
}

fn product_subject(h: &FiniteGroup, k: &FiniteGroup) -> String {
    format!("{}x{}", h.name().unwrap_or("H"), k.name().unwrap_or("K"))
}

/// Spectra of `H`, `K` and `H×K`.
fn three_spectra(h: &FiniteGroup, k: &FiniteGroup, cap: usize) -> Result<[DegreeSpectrum; 3]> {
    let hk = direct_product(h, k, cap.max(h.order() * k.order()))?;
    if hk.order() > cap {
        return Err(Error::LatticeCapExceeded { cap, order: hk.order() });
    }
    let spectrum = |g: &FiniteGroup| -> Result<DegreeSpectrum> {
        let l = SubgroupLattice::build(g, cap)?;
        Ok(crate::commdeg::degree_spectrum(g, &l))
    };
    Ok([spectrum(h)?, spectrum(k)?, spectrum(&hk)?])
}

/// `D(H×K) = D(H)·D(K)` and `D(H) ∩ D(K) = {1}` for coprime orders.
pub fn product_spectrum(h: &FiniteGroup, k: &FiniteGroup, cap: usize) -> Result<AuditRecord> {
    if arith::gcd(h.order() as u64, k.order() as u64) != 1 {
        return Err(Error::NotCoprime(h.order(), k.order()));
    }
    let [dh, dk, dhk] = three_spectra(h, k, cap)?;
    let product = set_product(&dh.values, &dk.values);
    let direct: BTreeSet<Rat> = dhk.values.iter().cloned().collect();
    let common: BTreeSet<Rat> = dh.values.iter().filter(|v| dk.contains(v)).cloned().collect();
    let equal = product == direct;
    let trivial_meet = common.len() == 1 && common.contains(&Rat::one());
    let detail = json!({
        "left": strings(dh.values.clone()),
        "right": strings(dk.values.clone()),
        "product_size": product.len(),
        "direct_size": direct.len(),
    });
    let witness = (!(equal && trivial_meet)).then(|| {
        json!({
            "only_in_product": strings(product.difference(&direct).cloned()),
            "only_in_direct": strings(direct.difference(&product).cloned()),
            "common": strings(common.iter().cloned()),
        })
    });
    Ok(AuditRecord::new(
        product_subject(h, k),
        CheckKind::ProductSpectrum,
        witness,
        detail,
    ))
}

/// `|D(H×K)| − |D(H)|·|D(K)|`, for any pair of orders.
pub fn product_cardinality_delta(h: &FiniteGroup, k: &FiniteGroup, cap: usize) -> Result<i64> {
    let [dh, dk, dhk] = three_spectra(h, k, cap)?;
    Ok(dhk.len() as i64 - (dh.len() * dk.len()) as i64)
}

/// Lower bound on `|D(H×K)|` for coprime pairs: `|D(H)| + |D(K)|` when both
/// factors are nonabelian, `|D(H)| + |D(K)| − 1` otherwise.
pub fn check_product_cardinality(h: &FiniteGroup, k: &FiniteGroup, cap: usize) -> Result<AuditRecord> {
    if arith::gcd(h.order() as u64, k.order() as u64) != 1 {
        return Err(Error::NotCoprime(h.order(), k.order()));
    }
    let [dh, dk, dhk] = three_spectra(h, k, cap)?;
    let both_nonabelian = dh.len() > 1 && dk.len() > 1;
    let bound = dh.len() + dk.len() - usize::from(!both_nonabelian);
    let detail = json!({
        "left_size": dh.len(),
        "right_size": dk.len(),
        "product_size": dhk.len(),
        "bound": bound,
        "delta": dhk.len() as i64 - (dh.len() * dk.len()) as i64,
    });
    let witness = (dhk.len() < bound).then(|| detail.clone());
    Ok(AuditRecord::new(
        product_subject(h, k),
        CheckKind::ProductCardinality,
        witness,
        detail,
    ))
}

/// Every nontrivial element of `Ḡ` has order `p` or `p²`. Only defined for
/// non-nilpotent groups with five spectrum values.
pub fn check_prime_power_orders(a: &GroupAnalysis) -> Result<AuditRecord> {
    if a.group.is_nilpotent() || a.spectrum.len() != 5 {
        return Err(Error::Inapplicable(format!(
            "needs a non-nilpotent group with five degrees, {} has {}",
            a.name(),
            a.spectrum.len()
        )));
    }
    let orders = &a.quotient.shape.element_orders;
    let bad: Vec<usize> = orders
        .iter()
        .copied()
        .filter(|&o| o > 1 && !matches!(arith::prime_power(o as u64), Some((_, 1 | 2))))
        .collect();
    let detail = json!({ "quotient_element_orders": orders });
    let witness = (!bad.is_empty()).then(|| json!({ "orders": bad }));
    Ok(AuditRecord::new(a.name(), CheckKind::PrimePowerOrders, witness, detail))
}

/// Elements of distinct prime orders in `Ḡ` whose centralizers have prime
/// power image generate subgroups of different degrees, unless `|Ḡ| = pq`.
pub fn check_distinct_prime_degrees(a: &GroupAnalysis) -> AuditRecord {
    let q = &a.quotient.map;
    let z = a.center.order();
    // degree -> (prime, representative) for the first qualifying element seen
    let mut by_degree: BTreeMap<Rat, Vec<(u64, usize)>> = BTreeMap::new();
    let mut qualifying = 0usize;
    for (bar, &x) in q.representatives.iter().enumerate() {
        let order = q.target.element_order(bar) as u64;
        if !arith::is_prime(order) {
            continue;
        }
        let image = a.centralizers.size(x) / z;
        if arith::prime_power(image as u64).is_none() {
            continue;
        }
        qualifying += 1;
        let entry = by_degree.entry(a.cyclic_degree(x)).or_default();
        if !entry.iter().any(|&(p, _)| p == order) {
            entry.push((order, x));
        }
    }
    let qbar = q.target.order() as u64;
    let mut witness = None;
    'outer: for (d, reps) in &by_degree {
        for (i, &(p, x)) in reps.iter().enumerate() {
            for &(r, y) in &reps[i + 1..] {
                if qbar != p * r {
                    witness = Some(json!({
                        "x": x, "y": y, "orders": [p, r], "degree": d,
                    }));
                    break 'outer;
                }
            }
        }
    }
    let detail = json!({ "quotient_order": qbar, "qualifying_elements": qualifying });
    AuditRecord::new(a.name(), CheckKind::DistinctPrimeDegrees, witness, detail)
}
