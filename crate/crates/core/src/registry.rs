//! Claim manifest and grid verification.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chow::{canonical_class, DivisorClass, ScrollParams};
use crate::error::{EngineError, Result};
use crate::formula::Formula;
use crate::interval::DimRange;
use crate::riemann_roch::{FormalSheafClass, Hrr};
use crate::tower::{
    build_tower, epsilon, ext1_dim, forced_h1_next, ineq_value, whitney, Constituent, TowerSpec,
};
use crate::ulrich::{scan_hits, slope, ulrich_scan, ScanBox, UlrichStatus};

/// Manifest compiled into the binary.
pub const BUILTIN_MANIFEST: &str = include_str!("../claims/registry.toml");

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SCROLL_ULRICH_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparator {
    #[default]
    Equal,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Any,
    Odd,
    Even,
}

impl Parity {
    fn admits(self, r: Option<i64>) -> bool {
        match (self, r) {
            (Parity::Any, _) => true,
            (Parity::Odd, Some(r)) => r % 2 != 0,
            (Parity::Even, Some(r)) => r % 2 == 0,
            (_, None) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Domain {
    pub t_min: i64,
    pub t_max: i64,
    #[serde(default)]
    pub r_min: Option<i64>,
    #[serde(default)]
    pub r_max: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BranchRecord {
    #[serde(default)]
    pub parity: Parity,
    #[serde(default)]
    pub r_min: Option<i64>,
    #[serde(default)]
    pub expected: Vec<String>,
}

/// One manifest entry.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimRecord {
    pub id: String,
    pub reference: String,
    pub evaluator: String,
    #[serde(default)]
    pub comparator: Comparator,
    #[serde(default)]
    pub known_discrepancy: bool,
    pub domain: Domain,
    #[serde(rename = "branch", default)]
    pub branches: Vec<BranchRecord>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    #[serde(rename = "claim", default)]
    claims: Vec<ClaimRecord>,
}

type Values = Vec<Option<BigRational>>;
type EvalFn = fn(&Cell) -> Result<Values>;

struct Evaluator {
    name: &'static str,
    uses_r: bool,
    arity: usize,
    run: EvalFn,
}

/// Grid point handed to an evaluator.
pub struct Cell {
    pub t: i64,
    pub r: Option<i64>,
    params: ScrollParams,
}

impl Cell {
    fn r(&self) -> i64 {
        self.r.expect("evaluator declared to use r")
    }
}

fn int(n: impl Into<BigInt>) -> Option<BigRational> {
    Some(BigRational::from_integer(n.into()))
}

fn range_value(d: DimRange) -> Option<BigRational> {
    d.value().and_then(int)
}

fn divisor_values(d: DivisorClass) -> Values {
    vec![int(d.x), int(d.surf.alpha), int(d.surf.beta)]
}

fn tower(cell: &Cell, cs: &[Constituent]) -> Result<TowerSpec> {
    TowerSpec::new(&cell.params, cs.to_vec())
}

fn ev_ext_dims(c: &Cell) -> Result<Values> {
    use Constituent::*;
    let pairs = [(M2, M1), (M1, M2), (L1, M1), (M2, L1), (L2, M1), (M2, L2)];
    pairs
        .iter()
        .map(|&(a, base)| Ok(range_value(ext1_dim(a, &tower(c, &[base])?)?)))
        .collect()
}

fn ev_thm21_dim(c: &Cell) -> Result<Values> {
    let g = tower(c, &[Constituent::M1, Constituent::M2])?;
    Ok(vec![int(crate::tower::moduli_dim(&g)?)])
}

fn ev_thm21_special(c: &Cell) -> Result<Values> {
    let g = build_tower(&tower(c, &[Constituent::M1, Constituent::M2])?);
    let target = canonical_class(&c.params) + DivisorClass::xi().scale(4);
    Ok(divisor_values(g.c1 - target))
}

fn ev_thm22_dims(c: &Cell) -> Result<Values> {
    use Constituent::*;
    let towers = [[M1, L1], [L1, M2], [M1, L2], [L2, M2]];
    towers
        .iter()
        .map(|cs| Ok(int(crate::tower::moduli_dim(&tower(c, cs)?)?)))
        .collect()
}

fn sporadic(c: &Cell) -> Result<TowerSpec> {
    TowerSpec::sporadic(&c.params, c.r())
}

fn mixed(c: &Cell) -> Result<TowerSpec> {
    TowerSpec::mixed(&c.params, c.r())
}

fn ev_sporadic_c1(c: &Cell) -> Result<Values> {
    Ok(divisor_values(build_tower(&sporadic(c)?).c1))
}

fn ev_sporadic_c2(c: &Cell) -> Result<Values> {
    let g = build_tower(&sporadic(c)?);
    Ok(vec![int(g.c2.p), int(g.c2.q), int(g.c2.s)])
}

fn ev_sporadic_c3(c: &Cell) -> Result<Values> {
    Ok(vec![int(build_tower(&sporadic(c)?).c3)])
}

fn ev_sporadic_recursions(c: &Cell) -> Result<Values> {
    let r = c.r();
    let g = sporadic(c)?;
    let hrr = Hrr::new(&c.params);
    let gf = whitney(&c.params, &g.divisors());
    let next = FormalSheafClass::line(epsilon(r + 1).class(&c.params)?);
    let cur = FormalSheafClass::line(epsilon(r).class(&c.params)?);
    let h1 = forced_h1_next(&c.params, r)?.and_then(int);
    let chi_iv = hrr.chi_product(&gf, &next.dual())?;
    let chi_v = hrr.chi_product(&cur, &gf.dual())?;
    let chi_vi = hrr.chi_end_divisors(&g.divisors())?;
    Ok(vec![h1, int(chi_iv), int(chi_v), int(chi_vi)])
}

fn ev_sporadic_moduli_dim(c: &Cell) -> Result<Values> {
    Ok(vec![int(crate::tower::moduli_dim(&sporadic(c)?)?)])
}

fn ev_ineqpal_lhs(c: &Cell) -> Result<Values> {
    Ok(vec![int(ineq_value(c.r(), c.t)?)])
}

fn ev_mixed_c1(c: &Cell) -> Result<Values> {
    Ok(divisor_values(build_tower(&mixed(c)?).c1))
}

fn ev_mixed_chi_end(c: &Cell) -> Result<Values> {
    Ok(vec![int(crate::riemann_roch::chi_end(&mixed(c)?)?)])
}

fn ev_mixed_moduli_dim(c: &Cell) -> Result<Values> {
    Ok(vec![int(crate::tower::moduli_dim(&mixed(c)?)?)])
}

fn ev_tower_slopes(c: &Cell) -> Result<Values> {
    [sporadic(c)?, mixed(c)?]
        .iter()
        .map(|g| Ok(Some(slope(&c.params, &build_tower(g).formal()))))
        .collect()
}

fn ev_ulrich_scan_default(c: &Cell) -> Result<Values> {
    let hits = scan_hits(&ulrich_scan(&c.params, &ScanBox::default()));
    let ulrich: BTreeSet<DivisorClass> = hits
        .iter()
        .filter(|(_, v)| v.status == UlrichStatus::Ulrich)
        .map(|(d, _)| *d)
        .collect();
    let undecided = hits.len() - ulrich.len();
    let named = Constituent::ALL
        .iter()
        .map(|k| k.class(&c.params))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(vec![
        int(ulrich.len() as i64),
        int(undecided as i64),
        int(i64::from(ulrich == named)),
    ])
}

const EVALUATORS: &[Evaluator] = &[
    Evaluator {
        name: "ext_dims",
        uses_r: false,
        arity: 6,
        run: ev_ext_dims,
    },
    Evaluator {
        name: "thm21_dim",
        uses_r: false,
        arity: 1,
        run: ev_thm21_dim,
    },
    Evaluator {
        name: "thm21_special",
        uses_r: false,
        arity: 3,
        run: ev_thm21_special,
    },
    Evaluator {
        name: "thm22_dims",
        uses_r: false,
        arity: 4,
        run: ev_thm22_dims,
    },
    Evaluator {
        name: "sporadic_c1",
        uses_r: true,
        arity: 3,
        run: ev_sporadic_c1,
    },
    Evaluator {
        name: "sporadic_c2",
        uses_r: true,
        arity: 3,
        run: ev_sporadic_c2,
    },
    Evaluator {
        name: "sporadic_c3",
        uses_r: true,
        arity: 1,
        run: ev_sporadic_c3,
    },
    Evaluator {
        name: "sporadic_recursions",
        uses_r: true,
        arity: 4,
        run: ev_sporadic_recursions,
    },
    Evaluator {
        name: "sporadic_moduli_dim",
        uses_r: true,
        arity: 1,
        run: ev_sporadic_moduli_dim,
    },
    Evaluator {
        name: "ineqpal_lhs",
        uses_r: true,
        arity: 1,
        run: ev_ineqpal_lhs,
    },
    Evaluator {
        name: "mixed_c1",
        uses_r: true,
        arity: 3,
        run: ev_mixed_c1,
    },
    Evaluator {
        name: "mixed_chi_end",
        uses_r: true,
        arity: 1,
        run: ev_mixed_chi_end,
    },
    Evaluator {
        name: "mixed_moduli_dim",
        uses_r: true,
        arity: 1,
        run: ev_mixed_moduli_dim,
    },
    Evaluator {
        name: "tower_slopes",
        uses_r: true,
        arity: 2,
        run: ev_tower_slopes,
    },
    Evaluator {
        name: "ulrich_scan_default",
        uses_r: false,
        arity: 3,
        run: ev_ulrich_scan_default,
    },
];

/// Names accepted in the `evaluator` field.
pub fn evaluator_names() -> Vec<&'static str> {
    EVALUATORS.iter().map(|e| e.name).collect()
}

struct Branch {
    parity: Parity,
    r_min: Option<i64>,
    expected: Vec<Formula>,
}

/// A manifest entry with parsed formulas and a resolved evaluator.
pub struct Claim {
    pub record: ClaimRecord,
    branches: Vec<Branch>,
    evaluator: &'static Evaluator,
}

impl Claim {
    fn compile(record: ClaimRecord) -> Result<Self> {
        let bad = |reason: String| EngineError::Registry(format!("claim {}: {reason}", record.id));
        let evaluator = EVALUATORS
            .iter()
            .find(|e| e.name == record.evaluator)
            .ok_or_else(|| bad(format!("unknown evaluator '{}'", record.evaluator)))?;
        if evaluator.uses_r != record.domain.r_min.is_some() {
            return Err(bad(
                "r bounds must be given exactly when the evaluator depends on r".into(),
            ));
        }
        if record.domain.r_min.is_some() != record.domain.r_max.is_some() {
            return Err(bad("r_min and r_max must be given together".into()));
        }
        if record.branches.is_empty() {
            return Err(bad("at least one branch is required".into()));
        }
        let mut branches = Vec::new();
        for b in &record.branches {
            if !evaluator.uses_r && b.parity != Parity::Any {
                return Err(bad("parity branches need an r domain".into()));
            }
            let expected = b
                .expected
                .iter()
                .map(|s| Formula::parse(s))
                .collect::<Result<Vec<_>>>()?;
            match record.comparator {
                Comparator::Equal if expected.len() != evaluator.arity => {
                    return Err(bad(format!(
                        "evaluator {} yields {} values, branch lists {}",
                        evaluator.name,
                        evaluator.arity,
                        expected.len()
                    )))
                }
                Comparator::Positive if !expected.is_empty() => {
                    return Err(bad("positive comparator takes no expected formulas".into()))
                }
                _ => {}
            }
            branches.push(Branch {
                parity: b.parity,
                r_min: b.r_min,
                expected,
            });
        }
        Ok(Self {
            record,
            branches,
            evaluator,
        })
    }

    pub fn id(&self) -> &str {
        &self.record.id
    }

    fn branch(&self, r: Option<i64>) -> Option<&Branch> {
        self.branches
            .iter()
            .find(|b| b.parity.admits(r) && b.r_min.is_none_or(|m| r.is_some_and(|r| r >= m)))
    }

    fn cells(
        &self,
        t_range: &RangeInclusive<i64>,
        r_range: &RangeInclusive<i64>,
    ) -> Vec<(i64, Option<i64>)> {
        let d = &self.record.domain;
        let ts = (*t_range.start()).max(d.t_min)..=(*t_range.end()).min(d.t_max);
        let rs: Vec<Option<i64>> = match (d.r_min, d.r_max) {
            (Some(lo), Some(hi)) => ((*r_range.start()).max(lo)..=(*r_range.end()).min(hi))
                .map(Some)
                .collect(),
            _ => vec![None],
        };
        ts.flat_map(|t| rs.iter().map(move |&r| (t, r)))
            .filter(|&(_, r)| self.branch(r).is_some())
            .collect()
    }

    fn evaluate(&self, t: i64, r: Option<i64>) -> ClaimResult {
        let branch = self.branch(r).expect("cells are filtered by branch");
        let mut result = ClaimResult {
            claim_id: self.record.id.clone(),
            t,
            r,
            expected: String::new(),
            computed: String::new(),
            status: Status::Fail,
            known_discrepancy: self.record.known_discrepancy,
        };
        let computed = ScrollParams::sporadic(t)
            .and_then(|params| (self.evaluator.run)(&Cell { t, r, params }));
        let expected: Result<Vec<BigRational>> =
            branch.expected.iter().map(|f| f.eval(t, r)).collect();
        let (computed, expected) = match (computed, expected) {
            (Ok(c), Ok(e)) => (c, e),
            (Err(e), _) | (_, Err(e)) => {
                result.computed = format!("error: {e}");
                return result;
            }
        };
        result.computed = format_values(computed.iter().map(|v| v.as_ref()));
        let decided: Vec<_> = computed.iter().flatten().collect();
        match self.record.comparator {
            Comparator::Equal => {
                result.expected = format_values(expected.iter().map(Some));
                let mismatch = computed
                    .iter()
                    .zip(&expected)
                    .any(|(c, e)| c.as_ref().is_some_and(|c| c != e));
                result.status = if computed.len() != expected.len() || mismatch {
                    Status::Fail
                } else if decided.len() < computed.len() {
                    Status::Undecided
                } else {
                    Status::Pass
                };
            }
            Comparator::Positive => {
                result.expected = "> 0".into();
                result.status = if decided.iter().any(|v| **v <= BigRational::zero()) {
                    Status::Fail
                } else if decided.len() < computed.len() {
                    Status::Undecided
                } else {
                    Status::Pass
                };
            }
        }
        result
    }
}

fn format_value(v: Option<&BigRational>) -> String {
    match v {
        None => "?".into(),
        Some(q) if q.is_integer() => q.to_integer().to_string(),
        Some(q) => format!("{}/{}", q.numer(), q.denom()),
    }
}

fn format_values<'a, I: Iterator<Item = Option<&'a BigRational>>>(vs: I) -> String {
    let parts: Vec<String> = vs.map(format_value).collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join(", "))
    }
}

/// A compiled manifest.
pub struct Registry {
    claims: Vec<Claim>,
}

impl Registry {
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN_MANIFEST).expect("shipped manifest is valid")
    }

    pub fn from_toml(src: &str) -> Result<Self> {
        let m: Manifest = toml::from_str(src).map_err(|e| EngineError::Registry(e.to_string()))?;
        let mut seen = BTreeSet::new();
        let mut claims = Vec::new();
        for rec in m.claims {
            if !seen.insert(rec.id.clone()) {
                return Err(EngineError::Registry(format!(
                    "duplicate claim id {}",
                    rec.id
                )));
            }
            claims.push(Claim::compile(rec)?);
        }
        claims.sort_by(|a, b| a.record.id.cmp(&b.record.id));
        Ok(Self { claims })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| EngineError::Registry(format!("{}: {e}", path.display())))?;
        Self::from_toml(&src)
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id() == id)
    }

    /// Keeps only the named claims.
    pub fn select(mut self, ids: &[String]) -> Result<Self> {
        for id in ids {
            if self.get(id).is_none() {
                return Err(EngineError::Registry(format!("unknown claim id {id}")));
            }
        }
        self.claims.retain(|c| ids.iter().any(|i| i == c.id()));
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "UNDECIDED")]
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Undecided => "UNDECIDED",
        })
    }
}

/// Outcome at one grid point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub t: i64,
    pub r: Option<i64>,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    pub known_discrepancy: bool,
}

/// Worker count from `SCROLL_ULRICH_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Evaluates every claim at every admissible grid point, sorted by
/// `(claim id, t, r)`.
pub fn verify_claims(
    t_range: RangeInclusive<i64>,
    r_range: RangeInclusive<i64>,
    registry: &Registry,
) -> Vec<ClaimResult> {
    let jobs: Vec<(&Claim, i64, Option<i64>)> = registry
        .claims
        .iter()
        .flat_map(|c| {
            c.cells(&t_range, &r_range)
                .into_iter()
                .map(move |(t, r)| (c, t, r))
        })
        .collect();
    let run = || -> Vec<ClaimResult> {
        jobs.par_iter()
            .map(|(c, t, r)| c.evaluate(*t, *r))
            .collect()
    };
    let mut out = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    };
    out.sort_by(|a, b| (&a.claim_id, a.t, a.r).cmp(&(&b.claim_id, b.t, b.r)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(id: &str, t: i64, r: Option<i64>) -> ClaimResult {
        let reg = Registry::builtin();
        let rr = r.unwrap_or(1);
        let res = verify_claims(t..=t, rr..=rr, &reg.select(&[id.to_string()]).unwrap());
        res.into_iter()
            .find(|x| x.t == t && x.r == r)
            .expect("cell in domain")
    }

    #[test]
    fn shipped_manifest_compiles() {
        let reg = Registry::builtin();
        assert!(reg.claims().len() >= 15);
        assert!(reg.get("C1-MIXED").unwrap().record.known_discrepancy);
        assert!(!reg.get("THM21-DIM").unwrap().record.known_discrepancy);
    }

    #[test]
    fn documented_cells() {
        let a = one("THM38-DIMS", 1, Some(3));
        assert_eq!((a.status, a.computed.as_str()), (Status::Pass, "8"));
        let b = one("THMC-DIMS", 1, Some(3));
        assert_eq!((b.status, b.computed.as_str()), (Status::Pass, "10"));
        let c = one("C1-MIXED", 2, Some(3));
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.computed, "(3, 0, 5)");
        assert_eq!(c.expected, "(3, 0, 3)");
        assert_eq!(one("C1-MIXED", 2, Some(4)).status, Status::Fail);
        assert_eq!(one("C1-MIXED", 1, Some(4)).status, Status::Pass);
        assert_eq!(one("THM21-DIM", 7, None).computed, "53");
    }

    #[test]
    fn branch_restrictions_skip_cells() {
        let reg = Registry::builtin()
            .select(&["C3-SPORADIC".to_string()])
            .unwrap();
        let res = verify_claims(1..=1, 1..=4, &reg);
        let rs: Vec<_> = res.iter().map(|x| x.r.unwrap()).collect();
        assert_eq!(rs, vec![3, 4]);
    }

    #[test]
    fn manifest_validation() {
        let bad_eval = r#"
            [[claim]]
            id = "X"
            reference = "x"
            evaluator = "nope"
            domain = { t_min = 1, t_max = 2 }
            [[claim.branch]]
            expected = ["1"]
        "#;
        assert!(Registry::from_toml(bad_eval).is_err());
        let bad_arity = bad_eval.replace("nope", "thm22_dims");
        assert!(Registry::from_toml(&bad_arity).is_err());
        let needs_r = bad_eval.replace("nope", "mixed_c1");
        assert!(Registry::from_toml(&needs_r).is_err());
        let ok = bad_eval
            .replace("nope", "thm21_dim")
            .replace("\"1\"", "\"8*t-3\"");
        let reg = Registry::from_toml(&ok).unwrap();
        let res = verify_claims(1..=3, 1..=1, &reg);
        assert!(res.iter().all(|x| x.status == Status::Pass));
        assert!(Registry::from_toml("[[claim]]\nid = 1").is_err());
    }
}
