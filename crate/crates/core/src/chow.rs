//! Numerical intersection theory on the scroll `X = P(E) -> F_e`.
//!
//! `E` is a rank-2 bundle on the Hirzebruch surface `F_e` with
//! `c1(E) = 3C + b f` and `c2(E) = k`. The numerical ring is generated by the
//! tautological class `xi` and the pullbacks `h1 = phi^*C`, `h2 = phi^*f`,
//! subject to
//!
//! ```text
//! h1^2 = -e F,  h1 h2 = F,  h2^2 = 0,  xi^2 = xi (3 h1 + b h2) - k F
//! ```
//!
//! where `F = phi^*[pt]` is the class of a fibre. The convention is
//! `phi_* O(xi) = E`, so `xi^2 - c1(E) xi + c2(E) = 0`.
//!
//! Coordinates are fixed once: divisors over `(xi, h1, h2)`, codimension-2
//! classes over `(xi h1, xi h2, F)`, and the point class in degree 3.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};

/// Scroll data `(e, b, k)`.
///
/// The constructor enforces `b - e < k < 2b - 4e` and `b >= 3e + 2`. When
/// `e = 0, b = 2t, k = 3t` the sporadic parameter `t` is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScrollParams {
    e: i64,
    b: i64,
    k: i64,
    sporadic_t: Option<i64>,
}

impl ScrollParams {
    pub fn new(e: i64, b: i64, k: i64) -> Result<Self> {
        let invalid = |reason: &str| EngineError::InvalidParams {
            e,
            b,
            k,
            reason: reason.to_string(),
        };
        if e < 0 {
            return Err(invalid("e must be non-negative"));
        }
        if !(b - e < k && k < 2 * b - 4 * e) {
            return Err(invalid("need b - e < k < 2b - 4e"));
        }
        if b < 3 * e + 2 {
            return Err(invalid("need b >= 3e + 2"));
        }
        let sporadic_t = (e == 0 && b % 2 == 0 && 2 * k == 3 * b).then_some(b / 2);
        Ok(Self {
            e,
            b,
            k,
            sporadic_t,
        })
    }

    /// The sporadic family `e = 0, b = 2t, k = 3t`.
    pub fn sporadic(t: i64) -> Result<Self> {
        if t < 1 {
            return Err(EngineError::InvalidParams {
                e: 0,
                b: 2 * t,
                k: 3 * t,
                reason: "sporadic parameter t must be at least 1".into(),
            });
        }
        Self::new(0, 2 * t, 3 * t)
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn sporadic_t(&self) -> Option<i64> {
        self.sporadic_t
    }

    /// `xi^3 = 6b - 9e - k`.
    pub fn degree(&self) -> i64 {
        6 * self.b - 9 * self.e - self.k
    }

    /// Sectional genus `2b - 3e - 2`.
    pub fn sectional_genus(&self) -> i64 {
        2 * self.b - 3 * self.e - 2
    }

    /// `h^0(E) - 1 = 4b - k - 6e + 4`.
    pub fn embedding_dim(&self) -> i64 {
        4 * self.b - self.k - 6 * self.e + 4
    }

    /// Slope shared by every Ulrich bundle: `d + g - 1`.
    pub fn ulrich_slope(&self) -> i64 {
        self.degree() + self.sectional_genus() - 1
    }

    /// `c1(E) = 3C + b f`.
    pub fn bundle_c1(&self) -> SurfaceClass {
        SurfaceClass::new(3, self.b)
    }

    /// Sub line bundle `A = 2C + (2b - k - 2e) f` of `E`.
    pub fn sub_line(&self) -> SurfaceClass {
        SurfaceClass::new(2, 2 * self.b - self.k - 2 * self.e)
    }

    /// Quotient line bundle `B = C + (k - b + 2e) f` of `E`.
    pub fn quotient_line(&self) -> SurfaceClass {
        SurfaceClass::new(1, self.k - self.b + 2 * self.e)
    }

    /// `K_{F_e} = -2C - (2 + e) f`.
    pub fn surface_canonical(&self) -> SurfaceClass {
        SurfaceClass::new(-2, -2 - self.e)
    }
}

impl fmt::Display for ScrollParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={} b={} k={}", self.e, self.b, self.k)?;
        if let Some(t) = self.sporadic_t {
            write!(f, " (t={t})")?;
        }
        Ok(())
    }
}

/// `alpha C + beta f` on `F_e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub alpha: i64,
    pub beta: i64,
}

impl SurfaceClass {
    pub const ZERO: SurfaceClass = SurfaceClass { alpha: 0, beta: 0 };

    pub const fn new(alpha: i64, beta: i64) -> Self {
        Self { alpha, beta }
    }

    pub fn scale(self, n: i64) -> Self {
        Self::new(n * self.alpha, n * self.beta)
    }

    /// Intersection number on `F_e`.
    pub fn dot(self, other: SurfaceClass, e: i64) -> i64 {
        -e * self.alpha * other.alpha + self.alpha * other.beta + self.beta * other.alpha
    }
}

impl Add for SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, o: SurfaceClass) -> SurfaceClass {
        SurfaceClass::new(self.alpha + o.alpha, self.beta + o.beta)
    }
}

impl Sub for SurfaceClass {
    type Output = SurfaceClass;
    fn sub(self, o: SurfaceClass) -> SurfaceClass {
        SurfaceClass::new(self.alpha - o.alpha, self.beta - o.beta)
    }
}

impl Neg for SurfaceClass {
    type Output = SurfaceClass;
    fn neg(self) -> SurfaceClass {
        SurfaceClass::new(-self.alpha, -self.beta)
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// `x xi + phi^*(alpha C + beta f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub x: i64,
    pub surf: SurfaceClass,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass {
        x: 0,
        surf: SurfaceClass::ZERO,
    };

    pub const fn new(x: i64, alpha: i64, beta: i64) -> Self {
        Self {
            x,
            surf: SurfaceClass::new(alpha, beta),
        }
    }

    pub const fn xi() -> Self {
        Self::new(1, 0, 0)
    }

    pub const fn pullback(surf: SurfaceClass) -> Self {
        Self { x: 0, surf }
    }

    pub fn scale(self, n: i64) -> Self {
        Self {
            x: n * self.x,
            surf: self.surf.scale(n),
        }
    }

    pub fn to_graded(self) -> GradedChowElement {
        GradedChowElement::from_divisor(self)
    }

    /// Product of two divisors as a codimension-2 class.
    pub fn times(self, other: DivisorClass, params: &ScrollParams) -> Codim2Class {
        let prod = multiply(&self.to_graded(), &other.to_graded(), params);
        Codim2Class::from_rational(&prod.deg2)
            .expect("integral classes multiply to integral classes")
    }

    /// Triple intersection `D1 . D2 . D3`.
    pub fn triple(self, d2: DivisorClass, d3: DivisorClass, params: &ScrollParams) -> BigInt {
        self.times(d2, params).dot(d3, params)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass {
            x: self.x + o.x,
            surf: self.surf + o.surf,
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        DivisorClass {
            x: self.x - o.x,
            surf: self.surf - o.surf,
        }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            x: -self.x,
            surf: -self.surf,
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}xi + ({}, {})",
            self.x, self.surf.alpha, self.surf.beta
        )
    }
}

/// `p (xi h1) + q (xi h2) + s F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Codim2Class {
    pub p: BigInt,
    pub q: BigInt,
    pub s: BigInt,
}

impl Codim2Class {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, s: impl Into<BigInt>) -> Self {
        Self {
            p: p.into(),
            q: q.into(),
            s: s.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The fibre class `F`.
    pub fn fibre() -> Self {
        Self::new(0, 0, 1)
    }

    fn from_rational(c: &[BigRational; 3]) -> Option<Self> {
        let int = |r: &BigRational| r.is_integer().then(|| r.to_integer());
        Some(Self {
            p: int(&c[0])?,
            q: int(&c[1])?,
            s: int(&c[2])?,
        })
    }

    pub fn to_graded(&self) -> GradedChowElement {
        let mut g = GradedChowElement::zero();
        g.deg2 = [
            BigRational::from_integer(self.p.clone()),
            BigRational::from_integer(self.q.clone()),
            BigRational::from_integer(self.s.clone()),
        ];
        g
    }

    /// Degree of `self . D`.
    pub fn dot(&self, d: DivisorClass, params: &ScrollParams) -> BigInt {
        multiply(&self.to_graded(), &d.to_graded(), params)
            .deg3
            .to_integer()
    }
}

impl Add for &Codim2Class {
    type Output = Codim2Class;
    fn add(self, o: &Codim2Class) -> Codim2Class {
        Codim2Class {
            p: &self.p + &o.p,
            q: &self.q + &o.q,
            s: &self.s + &o.s,
        }
    }
}

impl AddAssign<&Codim2Class> for Codim2Class {
    fn add_assign(&mut self, o: &Codim2Class) {
        self.p += &o.p;
        self.q += &o.q;
        self.s += &o.s;
    }
}

impl fmt::Display for Codim2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.s)
    }
}

/// An element of the numerical ring with rational coefficients, truncated
/// above degree 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedChowElement {
    pub deg0: BigRational,
    /// Over `(xi, h1, h2)`.
    pub deg1: [BigRational; 3],
    /// Over `(xi h1, xi h2, F)`.
    pub deg2: [BigRational; 3],
    /// Degree of the point component.
    pub deg3: BigRational,
}

fn rz() -> BigRational {
    BigRational::zero()
}

fn ri(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GradedChowElement {
    pub fn zero() -> Self {
        Self {
            deg0: rz(),
            deg1: [rz(), rz(), rz()],
            deg2: [rz(), rz(), rz()],
            deg3: rz(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    pub fn scalar(c: BigRational) -> Self {
        let mut g = Self::zero();
        g.deg0 = c;
        g
    }

    pub fn from_divisor(d: DivisorClass) -> Self {
        let mut g = Self::zero();
        g.deg1 = [ri(d.x), ri(d.surf.alpha), ri(d.surf.beta)];
        g
    }

    pub fn point(n: impl Into<BigInt>) -> Self {
        let mut g = Self::zero();
        g.deg3 = BigRational::from_integer(n.into());
        g
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            deg0: &self.deg0 * c,
            deg1: self.deg1.clone().map(|v| v * c),
            deg2: self.deg2.clone().map(|v| v * c),
            deg3: &self.deg3 * c,
        }
    }

    /// Flips the sign of the odd-degree components.
    pub fn dual_sign(&self) -> Self {
        Self {
            deg0: self.deg0.clone(),
            deg1: self.deg1.clone().map(|v| -v),
            deg2: self.deg2.clone(),
            deg3: -self.deg3.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Denominators of all coefficients.
    pub fn denominators(&self) -> Vec<BigInt> {
        std::iter::once(&self.deg0)
            .chain(self.deg1.iter())
            .chain(self.deg2.iter())
            .chain(std::iter::once(&self.deg3))
            .map(|c| c.denom().clone())
            .collect()
    }
}

impl Add for &GradedChowElement {
    type Output = GradedChowElement;
    fn add(self, o: &GradedChowElement) -> GradedChowElement {
        GradedChowElement {
            deg0: &self.deg0 + &o.deg0,
            deg1: std::array::from_fn(|i| &self.deg1[i] + &o.deg1[i]),
            deg2: std::array::from_fn(|i| &self.deg2[i] + &o.deg2[i]),
            deg3: &self.deg3 + &o.deg3,
        }
    }
}

impl Sub for &GradedChowElement {
    type Output = GradedChowElement;
    fn sub(self, o: &GradedChowElement) -> GradedChowElement {
        self + &o.scale(&ri(-1))
    }
}

impl Mul<&BigRational> for &GradedChowElement {
    type Output = GradedChowElement;
    fn mul(self, c: &BigRational) -> GradedChowElement {
        self.scale(c)
    }
}

// deg1 x deg1 -> deg2 over (xi h1, xi h2, F).
fn mul_11(u: &[BigRational; 3], v: &[BigRational; 3], params: &ScrollParams) -> [BigRational; 3] {
    let (e, b, k) = (ri(params.e), ri(params.b), ri(params.k));
    let xx = &u[0] * &v[0];
    let xh1 = &u[0] * &v[1] + &u[1] * &v[0];
    let xh2 = &u[0] * &v[2] + &u[2] * &v[0];
    let h1h1 = &u[1] * &v[1];
    let h1h2 = &u[1] * &v[2] + &u[2] * &v[1];
    [
        &xx * ri(3) + xh1,
        &xx * &b + xh2,
        -(&xx * &k) - h1h1 * &e + h1h2,
    ]
}

// deg1 x deg2 -> point.
fn mul_12(u: &[BigRational; 3], w: &[BigRational; 3], params: &ScrollParams) -> BigRational {
    let (e, b) = (ri(params.e), ri(params.b));
    // xi.(xi h1) = b - 3e, h1.(xi h1) = -e, h2.(xi h1) = 1
    // xi.(xi h2) = 3,      h1.(xi h2) = 1,  h2.(xi h2) = 0
    // xi.F = 1,            h1.F = 0,        h2.F = 0
    let on_xih1 = &u[0] * (&b - ri(3) * &e) - &u[1] * &e + &u[2];
    let on_xih2 = &u[0] * ri(3) + &u[1];
    let on_f = u[0].clone();
    &w[0] * on_xih1 + &w[1] * on_xih2 + &w[2] * on_f
}

/// Product in the numerical ring, truncated above degree 3.
pub fn multiply(
    a: &GradedChowElement,
    b: &GradedChowElement,
    params: &ScrollParams,
) -> GradedChowElement {
    let deg0 = &a.deg0 * &b.deg0;
    let deg1 = std::array::from_fn(|i| &a.deg0 * &b.deg1[i] + &b.deg0 * &a.deg1[i]);
    let cross = mul_11(&a.deg1, &b.deg1, params);
    let deg2 = std::array::from_fn(|i| &a.deg0 * &b.deg2[i] + &b.deg0 * &a.deg2[i] + &cross[i]);
    let deg3 = &a.deg0 * &b.deg3
        + &b.deg0 * &a.deg3
        + mul_12(&a.deg1, &b.deg2, params)
        + mul_12(&b.deg1, &a.deg2, params);
    GradedChowElement {
        deg0,
        deg1,
        deg2,
        deg3,
    }
}

/// `K_X = -2 xi + phi^*(K_S + c1(E))`.
pub fn canonical_class(params: &ScrollParams) -> DivisorClass {
    DivisorClass {
        x: -2,
        surf: params.surface_canonical() + params.bundle_c1(),
    }
}

/// Chern classes of the tangent bundle of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentChern {
    pub c1: DivisorClass,
    pub c2: Codim2Class,
    pub c3: BigInt,
}

/// `c(T_X) = (1 + 2xi - phi^*c1(E)) . phi^*(1 + c1(F_e) + 4[pt])`.
pub fn tangent_chern(params: &ScrollParams) -> TangentChern {
    let relative = DivisorClass {
        x: 2,
        surf: -params.bundle_c1(),
    };
    let base_c1 = DivisorClass::pullback(-params.surface_canonical());
    let base_c2 = Codim2Class::fibre().scale_int(4);
    let c1 = relative + base_c1;
    let c2 = &relative.times(base_c1, params) + &base_c2;
    let c3 = base_c2.dot(relative, params);
    TangentChern { c1, c2, c3 }
}

impl Codim2Class {
    pub fn scale_int(&self, n: i64) -> Self {
        Self {
            p: &self.p * n,
            q: &self.q * n,
            s: &self.s * n,
        }
    }
}

/// `td(X) = 1 + c1/2 + (c1^2 + c2)/12 + c1 c2/24`.
pub fn todd_class(params: &ScrollParams) -> GradedChowElement {
    let tc = tangent_chern(params);
    let c1 = tc.c1.to_graded();
    let c2 = tc.c2.to_graded();
    let half = BigRational::new(1.into(), 2.into());
    let twelfth = BigRational::new(1.into(), 12.into());
    let twenty_fourth = BigRational::new(1.into(), 24.into());

    let c1_sq = multiply(&c1, &c1, params);
    let c1_c2 = multiply(&c1, &c2, params);
    let mut td = GradedChowElement::one();
    td = &td + &c1.scale(&half);
    td = &td + &(&c1_sq + &c2).scale(&twelfth);
    td = &td + &c1_c2.scale(&twenty_fourth);
    td
}
