//! Hirzebruch-Riemann-Roch on the scroll.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::chow::{
    multiply, todd_class, Codim2Class, DivisorClass, GradedChowElement, ScrollParams,
};
use crate::error::{EngineError, Result};
use crate::tower::{whitney, TowerSpec};

/// Numerical data of a coherent sheaf: rank and Chern classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalSheafClass {
    pub rank: i64,
    pub c1: DivisorClass,
    pub c2: Codim2Class,
    pub c3: BigInt,
}

impl FormalSheafClass {
    pub fn new(
        rank: i64,
        c1: DivisorClass,
        c2: Codim2Class,
        c3: impl Into<BigInt>,
    ) -> Result<Self> {
        if rank < 1 {
            return Err(EngineError::ZeroRank);
        }
        Ok(Self {
            rank,
            c1,
            c2,
            c3: c3.into(),
        })
    }

    pub fn structure_sheaf() -> Self {
        Self::line(DivisorClass::ZERO)
    }

    pub fn line(d: DivisorClass) -> Self {
        Self {
            rank: 1,
            c1: d,
            c2: Codim2Class::zero(),
            c3: BigInt::from(0),
        }
    }

    pub fn dual(&self) -> Self {
        Self {
            rank: self.rank,
            c1: -self.c1,
            c2: self.c2.clone(),
            c3: -self.c3.clone(),
        }
    }
}

impl fmt::Display for FormalSheafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {} c1 = {} c2 = {} c3 = {}",
            self.rank, self.c1, self.c2, self.c3
        )
    }
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `ch = r + c1 + (c1^2 - 2c2)/2 + (c1^3 - 3 c1 c2 + 3 c3)/6`.
pub fn chern_character(params: &ScrollParams, f: &FormalSheafClass) -> GradedChowElement {
    let c1 = f.c1.to_graded();
    let c2 = f.c2.to_graded();
    let c3 = GradedChowElement::point(f.c3.clone());
    let c1_sq = multiply(&c1, &c1, params);
    let c1_cu = multiply(&c1_sq, &c1, params);
    let c1_c2 = multiply(&c1, &c2, params);

    let mut ch = GradedChowElement::scalar(BigRational::from_integer(f.rank.into()));
    ch = &ch + &c1;
    ch = &ch + &(&c1_sq - &c2.scale(&frac(2, 1))).scale(&frac(1, 2));
    let top = &(&c1_cu - &c1_c2.scale(&frac(3, 1))) + &c3.scale(&frac(3, 1));
    &ch + &top.scale(&frac(1, 6))
}

/// A Todd class bound to one scroll, reused across evaluations.
#[derive(Debug, Clone)]
pub struct Hrr {
    params: ScrollParams,
    td: GradedChowElement,
}

impl Hrr {
    pub fn new(params: &ScrollParams) -> Self {
        Self {
            params: *params,
            td: todd_class(params),
        }
    }

    pub fn params(&self) -> &ScrollParams {
        &self.params
    }

    /// Degree-3 part of `ch . td`.
    pub fn pair(&self, ch: &GradedChowElement) -> Result<BigInt> {
        let v = multiply(ch, &self.td, &self.params).deg3;
        if !v.is_integer() {
            return Err(EngineError::NonIntegralChi(v.to_string()));
        }
        Ok(v.to_integer())
    }

    pub fn chi(&self, f: &FormalSheafClass) -> Result<BigInt> {
        self.pair(&chern_character(&self.params, f))
    }

    pub fn chi_line(&self, d: DivisorClass) -> i64 {
        self.chi(&FormalSheafClass::line(d))
            .expect("line bundles have integral Euler characteristic")
            .to_i64()
            .expect("line Euler characteristic fits in i64")
    }

    /// `chi(F (x) G)` from the product of Chern characters.
    pub fn chi_product(&self, f: &FormalSheafClass, g: &FormalSheafClass) -> Result<BigInt> {
        let ch = multiply(
            &chern_character(&self.params, f),
            &chern_character(&self.params, g),
            &self.params,
        );
        self.pair(&ch)
    }

    /// Euler characteristic of `F (x) F^dual` by Riemann-Roch on the Chern data.
    pub fn chi_end_class(&self, f: &FormalSheafClass) -> Result<BigInt> {
        let ch = chern_character(&self.params, f);
        let end = multiply(&ch, &ch.dual_sign(), &self.params);
        self.pair(&end)
    }

    /// `sum_{i,j} chi(D_i - D_j)` over the constituents.
    pub fn chi_end_constituents(&self, ds: &[DivisorClass]) -> BigInt {
        let mut mult: BTreeMap<DivisorClass, i64> = BTreeMap::new();
        for d in ds {
            *mult.entry(*d).or_default() += 1;
        }
        let mut total = BigInt::from(0);
        for (a, ma) in &mult {
            for (b, mb) in &mult {
                total += BigInt::from(ma * mb) * self.chi_line(*a - *b);
            }
        }
        total
    }

    /// `chi(F (x) F^dual)` for an extension with the given constituents, by
    /// two routes that must agree.
    pub fn chi_end_divisors(&self, ds: &[DivisorClass]) -> Result<BigInt> {
        if ds.is_empty() {
            return Err(EngineError::EmptyTower);
        }
        let by_hrr = self.chi_end_class(&whitney(&self.params, ds))?;
        let by_sum = self.chi_end_constituents(ds);
        if by_hrr != by_sum {
            return Err(EngineError::OracleMismatch {
                what: "chi(End)".into(),
                left: by_hrr.to_string(),
                right: by_sum.to_string(),
            });
        }
        Ok(by_hrr)
    }
}

/// Euler characteristic by Hirzebruch-Riemann-Roch.
pub fn chi(params: &ScrollParams, f: &FormalSheafClass) -> Result<BigInt> {
    Hrr::new(params).chi(f)
}

/// Euler characteristic of a line bundle.
pub fn chi_line(params: &ScrollParams, d: DivisorClass) -> i64 {
    Hrr::new(params).chi_line(d)
}

/// `chi(G (x) G^dual)` for the tower `G`.
pub fn chi_end(tower: &TowerSpec) -> Result<BigInt> {
    Hrr::new(tower.params()).chi_end_divisors(&tower.divisors())
}
