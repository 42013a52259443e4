//! Iterated extensions of Ulrich line bundles.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::chow::{Codim2Class, DivisorClass, ScrollParams};
use crate::error::{EngineError, Result};
use crate::interval::DimRange;
use crate::riemann_roch::{FormalSheafClass, Hrr};
use crate::scroll::coh_tower_twist;
use crate::ulrich::slope;

/// The four Ulrich line bundles on `F_0`-scrolls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Constituent {
    L1,
    L2,
    M1,
    M2,
}

impl Constituent {
    pub const ALL: [Constituent; 4] = [Self::L1, Self::L2, Self::M1, Self::M2];

    pub fn label(self) -> &'static str {
        match self {
            Self::L1 => "L1",
            Self::L2 => "L2",
            Self::M1 => "M1",
            Self::M2 => "M2",
        }
    }

    /// Line class on the given scroll.
    ///
    /// `L1 = xi + (2, -1)`, `L2 = xi + (-1, b - 1)` need `e = 0`;
    /// `M1 = 2xi + (-1, -t - 1)`, `M2 = (2, 3t - 1)` need `(b, k) = (2t, 3t)`.
    pub fn class(self, params: &ScrollParams) -> Result<DivisorClass> {
        let unavailable = |reason: &str| EngineError::ConstituentUnavailable {
            label: self.label().into(),
            reason: reason.into(),
        };
        match self {
            Self::L1 | Self::L2 if params.e() != 0 => Err(unavailable("requires e = 0")),
            Self::L1 => Ok(DivisorClass::new(1, 2, -1)),
            Self::L2 => Ok(DivisorClass::new(1, -1, params.b() - 1)),
            Self::M1 | Self::M2 => {
                let t = params
                    .sporadic_t()
                    .ok_or_else(|| unavailable("requires e = 0, b = 2t, k = 3t"))?;
                Ok(match self {
                    Self::M1 => DivisorClass::new(2, -1, -t - 1),
                    _ => DivisorClass::new(0, 2, 3 * t - 1),
                })
            }
        }
    }
}

impl fmt::Display for Constituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Constituent {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "L1" => Ok(Self::L1),
            "L2" => Ok(Self::L2),
            "M1" => Ok(Self::M1),
            "M2" => Ok(Self::M2),
            _ => Err(EngineError::UnknownConstituent(s.trim().to_string())),
        }
    }
}

/// `M1` for odd `r`, `M2` for even `r`.
pub fn epsilon(r: i64) -> Constituent {
    if r % 2 == 1 {
        Constituent::M1
    } else {
        Constituent::M2
    }
}

/// `L2` for odd `r`, `L1` for even `r`.
pub fn tau(r: i64) -> Constituent {
    if r % 2 == 1 {
        Constituent::L2
    } else {
        Constituent::L1
    }
}

/// An ordered list of constituents, innermost sub first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerSpec {
    params: ScrollParams,
    constituents: Vec<Constituent>,
    divisors: Vec<DivisorClass>,
}

impl TowerSpec {
    pub fn new(params: &ScrollParams, constituents: Vec<Constituent>) -> Result<Self> {
        if constituents.is_empty() {
            return Err(EngineError::EmptyTower);
        }
        let divisors = constituents
            .iter()
            .map(|c| c.class(params))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params: *params,
            constituents,
            divisors,
        })
    }

    /// Parses a comma- or space-separated list such as `M1,M2,L2`.
    pub fn parse(params: &ScrollParams, s: &str) -> Result<Self> {
        let cs = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, cs)
    }

    /// `[M1, M2, M1, ...]` of length `r`.
    pub fn sporadic(params: &ScrollParams, r: i64) -> Result<Self> {
        Self::new(params, (1..=r).map(epsilon).collect())
    }

    /// `[M1, M2, L2, L1, L2, ...]` of length `r`.
    pub fn mixed(params: &ScrollParams, r: i64) -> Result<Self> {
        Self::new(
            params,
            (1..=r)
                .map(|i| if i <= 2 { epsilon(i) } else { tau(i) })
                .collect(),
        )
    }

    pub fn params(&self) -> &ScrollParams {
        &self.params
    }

    pub fn constituents(&self) -> &[Constituent] {
        &self.constituents
    }

    pub fn divisors(&self) -> Vec<DivisorClass> {
        self.divisors.clone()
    }

    pub fn rank(&self) -> i64 {
        self.constituents.len() as i64
    }

    /// The first `r` constituents.
    pub fn truncate(&self, r: usize) -> Result<Self> {
        Self::new(
            &self.params,
            self.constituents[..r.min(self.constituents.len())].to_vec(),
        )
    }
}

impl fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<_> = self.constituents.iter().map(|c| c.label()).collect();
        write!(f, "[{}]", labels.join(", "))
    }
}

/// Rank, Chern classes and slope of a tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerClass {
    pub rank: i64,
    pub c1: DivisorClass,
    pub c2: Codim2Class,
    pub c3: BigInt,
    pub slope: BigRational,
}

impl TowerClass {
    pub fn formal(&self) -> FormalSheafClass {
        FormalSheafClass {
            rank: self.rank,
            c1: self.c1,
            c2: self.c2.clone(),
            c3: self.c3.clone(),
        }
    }
}

/// Chern data of an iterated extension by the Whitney formula.
pub fn whitney(params: &ScrollParams, ds: &[DivisorClass]) -> FormalSheafClass {
    let mut c1 = DivisorClass::ZERO;
    let mut c2 = Codim2Class::zero();
    let mut c3 = BigInt::from(0);
    for &d in ds {
        c3 += c2.dot(d, params);
        c2 += &c1.times(d, params);
        c1 = c1 + d;
    }
    FormalSheafClass {
        rank: ds.len() as i64,
        c1,
        c2,
        c3,
    }
}

pub fn build_tower(spec: &TowerSpec) -> TowerClass {
    let f = whitney(spec.params(), &spec.divisors());
    let slope = slope(spec.params(), &f);
    TowerClass {
        rank: f.rank,
        c1: f.c1,
        c2: f.c2,
        c3: f.c3,
        slope,
    }
}

/// `dim Ext^1(A, G) = h^1(G (x) A^dual)`.
pub fn ext1_dim(a: Constituent, base: &TowerSpec) -> Result<DimRange> {
    let d = a.class(base.params())?;
    Ok(coh_tower_twist(base, -d).dims[1])
}

/// Closed form for `h^1(G_r (x) M_eps(r+1)^dual)` on the sporadic tower.
pub fn lemma32_h1(r: i64, t: i64) -> i64 {
    if r % 2 == 1 {
        (r + 1) / 2 * (6 * t - 3) - (r - 1) / 2
    } else {
        r / 2 * (2 * t + 1) - (r - 2) / 2
    }
}

/// Engine value of `h^1(G_r (x) M_eps(r+1)^dual)` for the sporadic tower.
///
/// With `h^2 = h^3 = 0` forced, `h^1 = h^0 - chi`, where `h^0` is 0 for odd
/// `r` and 1 for even `r`. `None` when the interval data does not support
/// that reading.
pub fn forced_h1_next(params: &ScrollParams, r: i64) -> Result<Option<i64>> {
    let g = TowerSpec::sporadic(params, r)?;
    let twist = -epsilon(r + 1).class(params)?;
    let c = coh_tower_twist(&g, twist);
    let h0 = if r % 2 == 1 { 0 } else { 1 };
    if !(c.dims[2].is_zero() && c.dims[3].is_zero() && c.dims[0].contains(h0)) {
        return Ok(None);
    }
    let h1 = h0 - c.chi;
    Ok(c.dims[1].contains(h1).then_some(h1))
}

/// `1 - chi(G (x) G^dual)`.
pub fn moduli_dim(spec: &TowerSpec) -> Result<BigInt> {
    let chi = Hrr::new(spec.params()).chi_end_divisors(&spec.divisors())?;
    Ok(BigInt::from(1) - chi)
}

/// Left side of the dimension inequality for the sporadic towers:
/// `-chi_r + 1 + chi_(r-1) - h^1(G_(r-1) (x) M_eps(r)^dual)`.
pub fn ineq_value(r: i64, t: i64) -> Result<BigInt> {
    let params = ScrollParams::sporadic(t)?;
    if r < 2 {
        return Err(EngineError::Formula {
            formula: "ineq".into(),
            reason: format!("needs r >= 2, got {r}"),
        });
    }
    let hrr = Hrr::new(&params);
    let chi_r = hrr.chi_end_divisors(&TowerSpec::sporadic(&params, r)?.divisors())?;
    let chi_prev = hrr.chi_end_divisors(&TowerSpec::sporadic(&params, r - 1)?.divisors())?;
    Ok(-chi_r + 1 + chi_prev - lemma32_h1(r - 1, t))
}

pub fn ineq_check(r: i64, t: i64) -> Result<bool> {
    Ok(ineq_value(r, t)? > BigInt::from(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::canonical_class;
    use Constituent::*;

    fn tower(t: i64, cs: &[Constituent]) -> TowerSpec {
        TowerSpec::new(&ScrollParams::sporadic(t).unwrap(), cs.to_vec()).unwrap()
    }

    #[test]
    fn named_generators() {
        let p = ScrollParams::sporadic(1).unwrap();
        assert_eq!(
            TowerSpec::sporadic(&p, 5).unwrap().constituents(),
            &[M1, M2, M1, M2, M1]
        );
        assert_eq!(
            TowerSpec::mixed(&p, 6).unwrap().constituents(),
            &[M1, M2, L2, L1, L2, L1]
        );
        assert_eq!(
            TowerSpec::parse(&p, "m1, M2 l2").unwrap().to_string(),
            "[M1, M2, L2]"
        );
        assert!(matches!(
            TowerSpec::parse(&p, "M3"),
            Err(EngineError::UnknownConstituent(_))
        ));
        assert_eq!(TowerSpec::parse(&p, ""), Err(EngineError::EmptyTower));
    }

    #[test]
    fn constituents_need_the_right_scroll() {
        let p = ScrollParams::new(0, 3, 4).unwrap();
        assert!(L1.class(&p).is_ok());
        assert!(matches!(
            M1.class(&p),
            Err(EngineError::ConstituentUnavailable { .. })
        ));
        let q = ScrollParams::new(1, 5, 5).unwrap();
        assert!(L2.class(&q).is_err());
    }

    #[test]
    fn rank_two_sporadic_chern_data() {
        for t in 1..=10 {
            let g = build_tower(&tower(t, &[M1, M2]));
            assert_eq!(g.c1, DivisorClass::new(2, 1, 2 * t - 2));
            assert_eq!(g.c2, Codim2Class::new(4, 6 * t - 2, -(5 * t + 1)));
            assert_eq!(g.c3, BigInt::from(0));
            let p = ScrollParams::sporadic(t).unwrap();
            assert_eq!(g.c1, canonical_class(&p) + DivisorClass::xi().scale(4));
        }
    }

    #[test]
    fn single_constituent_is_the_line() {
        let g = build_tower(&tower(2, &[M1]));
        assert_eq!(g.c1, DivisorClass::new(2, -1, -3));
        assert_eq!(g.c2, Codim2Class::zero());
        assert_eq!(g.c3, BigInt::from(0));
    }

    #[test]
    fn sporadic_rank_three_c3_at_t_one() {
        assert_eq!(build_tower(&tower(1, &[M1, M2, M1])).c3, BigInt::from(16));
    }

    #[test]
    fn extension_dimensions() {
        for t in 1..=20 {
            let e = |a, base: &[Constituent]| ext1_dim(a, &tower(t, base)).unwrap();
            assert_eq!(e(M2, &[M1]), DimRange::exact(6 * t - 3));
            assert_eq!(e(M1, &[M2]), DimRange::exact(2 * t + 1));
            assert_eq!(e(L1, &[M1]), DimRange::exact(1));
            assert_eq!(e(M2, &[L1]), DimRange::exact(10 * t - 5));
            assert_eq!(e(L2, &[M1]), DimRange::exact(10 * t - 5));
            assert_eq!(e(M2, &[L2]), DimRange::exact(1));
        }
    }

    #[test]
    fn h1_closed_form_values() {
        for t in 1..=10 {
            assert_eq!(lemma32_h1(1, t), 6 * t - 3);
            assert_eq!(lemma32_h1(2, t), 2 * t + 1);
            assert_eq!(lemma32_h1(3, t), 12 * t - 7);
        }
    }

    #[test]
    fn forced_h1_matches_closed_form() {
        for t in 1..=6 {
            let p = ScrollParams::sporadic(t).unwrap();
            for r in 1..=10 {
                assert_eq!(
                    forced_h1_next(&p, r).unwrap(),
                    Some(lemma32_h1(r, t)),
                    "r={r} t={t}"
                );
            }
        }
    }

    #[test]
    fn moduli_dimensions() {
        for t in 1..=10 {
            assert_eq!(
                moduli_dim(&tower(t, &[M1, M2])).unwrap(),
                BigInt::from(8 * t - 3)
            );
            assert_eq!(moduli_dim(&tower(t, &[L1, M1])).unwrap(), BigInt::from(0));
            let p = ScrollParams::sporadic(t).unwrap();
            let s4 = TowerSpec::sporadic(&p, 4).unwrap();
            assert_eq!(moduli_dim(&s4).unwrap(), BigInt::from(4 * (8 * t - 4) + 1));
        }
    }

    #[test]
    fn inequality_values() {
        assert_eq!(ineq_value(2, 1).unwrap(), BigInt::from(3));
        assert_eq!(ineq_value(3, 1).unwrap(), BigInt::from(1));
        assert!(ineq_check(30, 30).unwrap());
        assert!(ineq_value(1, 1).is_err());
    }
}
