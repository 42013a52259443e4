//! Cohomology on the Hirzebruch surface `F_e`.

use std::fmt;

use serde::Serialize;

use crate::chow::{ScrollParams, SurfaceClass};
use crate::error::{EngineError, Result};
use crate::interval::CohInterval3;

/// Exact cohomology `(h0, h1, h2)` of a line bundle on `F_e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CohVector3 {
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
}

impl CohVector3 {
    pub const ZERO: CohVector3 = CohVector3 {
        h0: 0,
        h1: 0,
        h2: 0,
    };

    pub fn new(h0: i64, h1: i64, h2: i64) -> Self {
        Self { h0, h1, h2 }
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.h0, self.h1, self.h2]
    }

    pub fn chi(&self) -> i64 {
        self.h0 - self.h1 + self.h2
    }

    pub fn to_interval(&self) -> CohInterval3 {
        CohInterval3::exact(self.as_array())
    }
}

impl fmt::Display for CohVector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h0, self.h1, self.h2)
    }
}

/// `(h0, h1)` of `O(d)` on `P^1`.
pub fn coh_p1(d: i64) -> (i64, i64) {
    if d >= 0 {
        (d + 1, 0)
    } else {
        (0, -d - 1)
    }
}

/// Riemann-Roch on `F_e`: `chi(L) = 1 + L.(L - K)/2`.
pub fn surface_chi(e: i64, l: SurfaceClass) -> i64 {
    let k = SurfaceClass::new(-2, -2 - e);
    1 + l.dot(l - k, e) / 2
}

/// Cohomology of `O(alpha C + beta f)` on `F_e`.
pub fn coh_line_fe(e: i64, l: SurfaceClass) -> CohVector3 {
    assert!(e >= 0, "F_e needs e >= 0");
    match l.alpha {
        a if a >= 0 => {
            let (mut h0, mut h1) = (0, 0);
            for j in 0..=a {
                let (p, q) = coh_p1(l.beta - j * e);
                h0 += p;
                h1 += q;
            }
            CohVector3::new(h0, h1, 0)
        }
        -1 => CohVector3::ZERO,
        _ => {
            let k = SurfaceClass::new(-2, -2 - e);
            let d = coh_line_fe(e, k - l);
            CohVector3::new(d.h2, d.h1, d.h0)
        }
    }
}

/// Graded pieces `A^(n-j) B^j + L`, `j = 0..=n`, of `Sym^n E (x) L`, sub first.
pub fn sym_pieces(params: &ScrollParams, n: i64, l: SurfaceClass) -> Result<Vec<SurfaceClass>> {
    if n < 0 {
        return Err(EngineError::NegativeSymPower(n));
    }
    let (a, b) = (params.sub_line(), params.quotient_line());
    Ok((0..=n).map(|j| a.scale(n - j) + b.scale(j) + l).collect())
}

/// Graded pieces of `(Sym^n E)^dual (x) L`, sub first: `-n B + L, ..., -n A + L`.
pub fn dual_sym_pieces(
    params: &ScrollParams,
    n: i64,
    l: SurfaceClass,
) -> Result<Vec<SurfaceClass>> {
    if n < 0 {
        return Err(EngineError::NegativeSymPower(n));
    }
    let (a, b) = (params.sub_line(), params.quotient_line());
    Ok((0..=n)
        .map(|j| -(a.scale(j) + b.scale(n - j)) + l)
        .collect())
}

fn filtered(params: &ScrollParams, pieces: &[SurfaceClass]) -> CohInterval3 {
    CohInterval3::filtered(
        pieces
            .iter()
            .map(|&p| coh_line_fe(params.e(), p).to_interval()),
    )
    .expect("a filtration has at least one piece")
}

/// Interval cohomology of `Sym^n E (x) L` on `F_e`.
pub fn coh_sym_twist(params: &ScrollParams, n: i64, l: SurfaceClass) -> Result<CohInterval3> {
    Ok(filtered(params, &sym_pieces(params, n, l)?))
}

/// Interval cohomology of `(Sym^n E)^dual (x) L` on `F_e`.
pub fn coh_dual_sym_twist(params: &ScrollParams, n: i64, l: SurfaceClass) -> Result<CohInterval3> {
    Ok(filtered(params, &dual_sym_pieces(params, n, l)?))
}
