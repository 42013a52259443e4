//! Ulrich conditions for line bundles, duality, slope and box scans.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::chow::{canonical_class, DivisorClass, ScrollParams};
use crate::interval::CohInterval4;
use crate::riemann_roch::{FormalSheafClass, Hrr};
use crate::scroll::coh_scroll_line;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum UlrichStatus {
    #[serde(rename = "ULRICH")]
    Ulrich,
    #[serde(rename = "NOT_ULRICH")]
    NotUlrich,
    #[serde(rename = "UNDECIDED")]
    Undecided,
}

impl fmt::Display for UlrichStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ulrich => "ULRICH",
            Self::NotUlrich => "NOT_ULRICH",
            Self::Undecided => "UNDECIDED",
        })
    }
}

/// Verdict with the tables `H^*(D - j xi)`, `j = 1, 2, 3`.
///
/// The certificate is absent when a nonzero Euler characteristic already
/// rules the class out; `chi` always holds `chi(D - j xi)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UlrichVerdict {
    pub status: UlrichStatus,
    pub chi: [i64; 3],
    pub certificate: Option<[CohInterval4; 3]>,
}

fn twists(d: DivisorClass) -> [DivisorClass; 3] {
    [1, 2, 3].map(|j| d - DivisorClass::xi().scale(j))
}

fn verdict_from_tables(chi: [i64; 3], tables: [CohInterval4; 3]) -> UlrichVerdict {
    let status = if tables
        .iter()
        .all(|c| c.dims.iter().all(|d| d.value() == Some(0)))
    {
        UlrichStatus::Ulrich
    } else if chi.iter().any(|&c| c != 0) || tables.iter().any(|c| c.dims.iter().any(|d| d.lo > 0))
    {
        UlrichStatus::NotUlrich
    } else {
        UlrichStatus::Undecided
    };
    UlrichVerdict {
        status,
        chi,
        certificate: Some(tables),
    }
}

fn verdict(hrr: &Hrr, d: DivisorClass, prune: bool) -> UlrichVerdict {
    let ds = twists(d);
    let chi = ds.map(|x| hrr.chi_line(x));
    if prune && chi.iter().any(|&c| c != 0) {
        return UlrichVerdict {
            status: UlrichStatus::NotUlrich,
            chi,
            certificate: None,
        };
    }
    verdict_from_tables(chi, ds.map(|x| coh_scroll_line(hrr.params(), x)))
}

/// Full Ulrich check of `O(D)` against `xi`.
pub fn is_ulrich_line(params: &ScrollParams, d: DivisorClass) -> UlrichVerdict {
    verdict(&Hrr::new(params), d, false)
}

/// `K_X + 4 xi - D`.
pub fn ulrich_dual(params: &ScrollParams, d: DivisorClass) -> DivisorClass {
    canonical_class(params) + DivisorClass::xi().scale(4) - d
}

/// `c1(F) . xi^2 / rank`.
pub fn slope(params: &ScrollParams, f: &FormalSheafClass) -> BigRational {
    let deg = f.c1.triple(DivisorClass::xi(), DivisorClass::xi(), params);
    BigRational::new(deg, BigInt::from(f.rank))
}

/// Search box: `x in [x_min, x_max]`, `|alpha| <= alpha_max`, `|beta| <= beta_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanBox {
    pub x_min: i64,
    pub x_max: i64,
    pub alpha_max: i64,
    pub beta_max: i64,
}

impl Default for ScanBox {
    fn default() -> Self {
        Self {
            x_min: -2,
            x_max: 4,
            alpha_max: 8,
            beta_max: 8,
        }
    }
}

impl ScanBox {
    pub fn classes(&self) -> Vec<DivisorClass> {
        let mut out = Vec::new();
        for x in self.x_min..=self.x_max {
            for a in -self.alpha_max..=self.alpha_max {
                for b in -self.beta_max..=self.beta_max {
                    out.push(DivisorClass::new(x, a, b));
                }
            }
        }
        out
    }
}

/// Classifies every class in the box; output sorted by `(x, alpha, beta)`.
pub fn ulrich_scan(params: &ScrollParams, bx: &ScanBox) -> Vec<(DivisorClass, UlrichVerdict)> {
    let hrr = Hrr::new(params);
    let mut out: Vec<_> = bx
        .classes()
        .into_par_iter()
        .map(|d| (d, verdict(&hrr, d, true)))
        .collect();
    out.sort_by_key(|(d, _)| (d.x, d.surf.alpha, d.surf.beta));
    out
}

/// Entries of a scan that are not ruled out.
pub fn scan_hits(scan: &[(DivisorClass, UlrichVerdict)]) -> Vec<(DivisorClass, UlrichVerdict)> {
    scan.iter()
        .filter(|(_, v)| v.status != UlrichStatus::NotUlrich)
        .cloned()
        .collect()
}
