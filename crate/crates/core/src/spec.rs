//! JSON group specifications.
//!
//! A spec is a single-key object naming a constructor, for example
//! `{"dihedral": 9}` or
//! `{"semidirect": {"n": {"cyclic": 5}, "h": {"cyclic": 4}, "action": {"h_gen": [0,2,4,1,3]}}}`.
//! The bare string `"sl23"` is the one constructor without arguments.

use serde_json::{json, Map, Value};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{cycles_to_perm, direct_product, extend_action, semidirect_product, FiniteGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Half the order: `Dihedral(n)` has order `2n`.
    Dihedral(usize),
    /// `Dicyclic(n)` has order `4n`.
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian {
        p: usize,
        rank: u32,
    },
    Heisenberg(usize),
    Sl23,
    /// Generators as lists of disjoint cycles on `0..degree`.
    Perm {
        degree: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
    Table(Vec<Vec<usize>>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        n: Box<GroupSpec>,
        h: Box<GroupSpec>,
        action: Action,
    },
    Named(String),
}

/// How `h` acts on `n`, as permutations of `n`'s element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Image of element 1 of `h`, which must generate `h`.
    HGen(Vec<usize>),
    /// Images of chosen elements that together generate `h`.
    Images(Vec<(usize, Vec<usize>)>),
}

pub const MAX_SYMMETRIC_DEGREE: usize = 6;

fn schema(field: &str, msg: impl Into<String>) -> Error {
    Error::schema(field, msg)
}

fn as_uint(v: &Value, field: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| schema(field, "expected a non-negative integer"))
}

fn as_positive(v: &Value, field: &str) -> Result<usize> {
    match as_uint(v, field)? {
        0 => Err(schema(field, "must be at least 1")),
        n => Ok(n),
    }
}

fn as_prime(v: &Value, field: &str) -> Result<usize> {
    let p = as_uint(v, field)?;
    if arith::is_prime(p as u64) {
        Ok(p)
    } else {
        Err(schema(field, format!("{p} is not prime")))
    }
}

fn as_uint_list(v: &Value, field: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| schema(field, "expected an array of integers"))?
        .iter()
        .map(|x| as_uint(x, field))
        .collect()
}

fn as_object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(field, "expected an object"))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, field: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(&format!("{field}.{key}"), "missing"))
}

fn only_keys(obj: &Map<String, Value>, allowed: &[&str], field: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(&format!("{field}.{k}"), "unknown field")),
        None => Ok(()),
    }
}

/// Parses JSON text into a spec. Bounds are checked here; construction is
/// deferred to [`GroupSpec::build`].
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    GroupSpec::from_json(&value)
}

impl GroupSpec {
    pub fn from_json(value: &Value) -> Result<Self> {
        from_value(value, "spec")
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupSpec::Cyclic(n) => json!({ "cyclic": n }),
            GroupSpec::Dihedral(n) => json!({ "dihedral": n }),
            GroupSpec::Dicyclic(n) => json!({ "dicyclic": n }),
            GroupSpec::Symmetric(n) => json!({ "symmetric": n }),
            GroupSpec::Alternating(n) => json!({ "alternating": n }),
            GroupSpec::ElementaryAbelian { p, rank } => {
                json!({ "elementary_abelian": { "p": p, "rank": rank } })
            }
            GroupSpec::Heisenberg(p) => json!({ "heisenberg": p }),
            GroupSpec::Sl23 => json!("sl23"),
            GroupSpec::Perm { degree, generators } => {
                json!({ "perm": { "degree": degree, "generators": generators } })
            }
            GroupSpec::Table(rows) => json!({ "table": rows }),
            GroupSpec::Product(a, b) => json!({ "product": [a.to_json(), b.to_json()] }),
            GroupSpec::Semidirect { n, h, action } => {
                let action = match action {
                    Action::HGen(perm) => json!({ "h_gen": perm }),
                    Action::Images(images) => json!({
                        "images": images
                            .iter()
                            .map(|(e, perm)| json!({ "element": e, "perm": perm }))
                            .collect::<Vec<_>>()
                    }),
                };
                json!({ "semidirect": { "n": n.to_json(), "h": h.to_json(), "action": action } })
            }
            GroupSpec::Named(id) => json!({ "named": id }),
        }
    }

    /// Group order, building only what cannot be read off the constructor.
    pub fn order(&self) -> Result<usize> {
        Ok(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Dicyclic(n) => 4 * n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
            GroupSpec::ElementaryAbelian { p, rank } => p.pow(*rank),
            GroupSpec::Heisenberg(p) => p * p * p,
            GroupSpec::Sl23 => 24,
            GroupSpec::Table(rows) => rows.len(),
            GroupSpec::Product(a, b) => a.order()? * b.order()?,
            GroupSpec::Semidirect { n, h, .. } => n.order()? * h.order()?,
            GroupSpec::Perm { .. } | GroupSpec::Named(_) => self.build(crate::group::DEFAULT_ORDER_CAP)?.order(),
        })
    }

    /// Constructs the group, refusing anything past `cap` elements.
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        let check = |order: usize| {
            if order > cap {
                Err(Error::OrderCapExceeded { cap, reached: order })
            } else {
                Ok(())
            }
        };
        match self {
            GroupSpec::Cyclic(n) => {
                check(*n)?;
                Ok(FiniteGroup::cyclic(*n))
            }
            GroupSpec::Dihedral(n) => {
                check(2 * n)?;
                Ok(FiniteGroup::dihedral(*n))
            }
            GroupSpec::Dicyclic(n) => {
                check(4 * n)?;
                Ok(FiniteGroup::dicyclic(*n))
            }
            GroupSpec::Symmetric(n) => {
                check(self.order()?)?;
                Ok(FiniteGroup::symmetric(*n))
            }
            GroupSpec::Alternating(n) => {
                check(self.order()?)?;
                Ok(FiniteGroup::alternating(*n))
            }
            GroupSpec::ElementaryAbelian { p, rank } => {
                check(p.pow(*rank))?;
                Ok(FiniteGroup::elementary_abelian(*p, *rank))
            }
            GroupSpec::Heisenberg(p) => {
                check(p * p * p)?;
                Ok(FiniteGroup::heisenberg(*p))
            }
            GroupSpec::Sl23 => {
                check(24)?;
                Ok(FiniteGroup::sl23())
            }
            GroupSpec::Perm { degree, generators } => {
                let perms: Vec<Vec<usize>> = generators
                    .iter()
                    .map(|cycles| cycles_to_perm(*degree, cycles))
                    .collect();
                FiniteGroup::from_permutations(*degree, &perms, cap)
            }
            GroupSpec::Table(rows) => {
                check(rows.len())?;
                FiniteGroup::from_table(rows, None)
            }
            GroupSpec::Product(a, b) => direct_product(&a.build(cap)?, &b.build(cap)?, cap),
            GroupSpec::Semidirect { n, h, action } => {
                let n = n.build(cap)?;
                let h = h.build(cap)?;
                check(n.order() * h.order())?;
                let images = match action {
                    Action::HGen(perm) => {
                        if h.order() > 1 && h.generated(&[1]).order() != h.order() {
                            return Err(schema(
                                "semidirect.action.h_gen",
                                "element 1 does not generate h; use `images`",
                            ));
                        }
                        if h.order() == 1 {
                            vec![]
                        } else {
                            vec![(1, perm.clone())]
                        }
                    }
                    Action::Images(images) => images.clone(),
                };
                let full = extend_action(&n, &h, &images)?;
                semidirect_product(&n, &h, &full, cap)
            }
            GroupSpec::Named(id) => crate::catalog::named_group(id, cap),
        }
    }
}

fn from_value(value: &Value, field: &str) -> Result<GroupSpec> {
    if let Some(s) = value.as_str() {
        return match s {
            "sl23" => Ok(GroupSpec::Sl23),
            other => Err(schema(field, format!("unknown constructor `{other}`"))),
        };
    }
    let obj = as_object(value, field)?;
    if obj.len() != 1 {
        return Err(schema(field, "expected exactly one constructor key"));
    }
    let (key, arg) = obj.iter().next().expect("one entry");
    let here = format!("{field}.{key}");
    let here = here.as_str();
    match key.as_str() {
        "cyclic" => Ok(GroupSpec::Cyclic(as_positive(arg, here)?)),
        "dihedral" => Ok(GroupSpec::Dihedral(as_positive(arg, here)?)),
        "dicyclic" => Ok(GroupSpec::Dicyclic(as_positive(arg, here)?)),
        "symmetric" | "alternating" => {
            let n = as_positive(arg, here)?;
            if n > MAX_SYMMETRIC_DEGREE {
                return Err(schema(here, format!("degree {n} exceeds {MAX_SYMMETRIC_DEGREE}")));
            }
            Ok(if key == "symmetric" {
                GroupSpec::Symmetric(n)
            } else {
                GroupSpec::Alternating(n)
            })
        }
        "elementary_abelian" => {
            let o = as_object(arg, here)?;
            only_keys(o, &["p", "rank"], here)?;
            let p = as_prime(get(o, "p", here)?, &format!("{here}.p"))?;
            let rank = as_positive(get(o, "rank", here)?, &format!("{here}.rank"))?;
            Ok(GroupSpec::ElementaryAbelian { p, rank: rank as u32 })
        }
        "heisenberg" => Ok(GroupSpec::Heisenberg(as_prime(arg, here)?)),
        "sl23" => Ok(GroupSpec::Sl23),
        "perm" => {
            let o = as_object(arg, here)?;
            only_keys(o, &["degree", "generators"], here)?;
            let degree = as_positive(get(o, "degree", here)?, &format!("{here}.degree"))?;
            let gfield = format!("{here}.generators");
            let gens = get(o, "generators", here)?
                .as_array()
                .ok_or_else(|| schema(&gfield, "expected an array of generators"))?;
            let mut generators = Vec::new();
            for (i, g) in gens.iter().enumerate() {
                let f = format!("{gfield}[{i}]");
                let cycles = g.as_array().ok_or_else(|| schema(&f, "expected an array of cycles"))?;
                let mut seen = vec![false; degree];
                let mut parsed = Vec::new();
                for c in cycles {
                    let cycle = as_uint_list(c, &f)?;
                    for &x in &cycle {
                        if x >= degree {
                            return Err(schema(&f, format!("point {x} outside 0..{degree}")));
                        }
                        if std::mem::replace(&mut seen[x], true) {
                            return Err(schema(&f, format!("point {x} repeated")));
                        }
                    }
                    parsed.push(cycle);
                }
                generators.push(parsed);
            }
            Ok(GroupSpec::Perm { degree, generators })
        }
        "table" => {
            let rows = arg
                .as_array()
                .ok_or_else(|| schema(here, "expected an array of rows"))?;
            let n = rows.len();
            if n == 0 {
                return Err(schema(here, "empty table"));
            }
            let mut out = Vec::with_capacity(n);
            for (i, r) in rows.iter().enumerate() {
                let f = format!("{here}[{i}]");
                let row = as_uint_list(r, &f)?;
                if row.len() != n {
                    return Err(schema(&f, format!("row has {} entries, expected {n}", row.len())));
                }
                if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                    return Err(schema(&f, format!("entry {bad} outside 0..{n}")));
                }
                out.push(row);
            }
            Ok(GroupSpec::Table(out))
        }
        "product" => {
            let parts = arg
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| schema(here, "expected an array of two specs"))?;
            Ok(GroupSpec::Product(
                Box::new(from_value(&parts[0], &format!("{here}[0]"))?),
                Box::new(from_value(&parts[1], &format!("{here}[1]"))?),
            ))
        }
        "semidirect" => {
            let o = as_object(arg, here)?;
            only_keys(o, &["n", "h", "action"], here)?;
            let n = from_value(get(o, "n", here)?, &format!("{here}.n"))?;
            let h = from_value(get(o, "h", here)?, &format!("{here}.h"))?;
            let afield = format!("{here}.action");
            let a = as_object(get(o, "action", here)?, &afield)?;
            let action = match (a.get("h_gen"), a.get("images")) {
                (Some(p), None) if a.len() == 1 => Action::HGen(as_uint_list(p, &format!("{afield}.h_gen"))?),
                (None, Some(list)) if a.len() == 1 => {
                    let ifield = format!("{afield}.images");
                    let list = list.as_array().ok_or_else(|| schema(&ifield, "expected an array"))?;
                    let mut images = Vec::new();
                    for (i, item) in list.iter().enumerate() {
                        let f = format!("{ifield}[{i}]");
                        let io = as_object(item, &f)?;
                        only_keys(io, &["element", "perm"], &f)?;
                        let e = as_uint(get(io, "element", &f)?, &format!("{f}.element"))?;
                        let perm = as_uint_list(get(io, "perm", &f)?, &format!("{f}.perm"))?;
                        images.push((e, perm));
                    }
                    Action::Images(images)
                }
                _ => return Err(schema(&afield, "expected exactly one of `h_gen` or `images`")),
            };
            Ok(GroupSpec::Semidirect {
                n: Box::new(n),
                h: Box::new(h),
                action,
            })
        }
        "named" => {
            let id = arg.as_str().ok_or_else(|| schema(here, "expected a catalog name"))?;
            Ok(GroupSpec::Named(id.to_string()))
        }
        other => Err(schema(field, format!("unknown constructor `{other}`"))),
    }
}
