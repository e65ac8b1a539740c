//! Truncated Laurent series over the rationals, with the minimal-subtraction
//! splitting into strictly polar and holomorphic parts.
//!
//! A series is stored sparsely. Two bookkeeping exponents accompany the
//! coefficients:
//!
//! - `floor`: a lower bound for the support. Every exponent below `floor` is
//!   known to carry a zero coefficient, so the polar part of a value is always
//!   fully known.
//! - `cap`: the exactness horizon (exclusive). Coefficients at exponents
//!   `>= cap` are unknown; everything below `cap` is exact. A series with
//!   `cap == LaurentSeries::EXACT` is an honest Laurent polynomial with no
//!   truncation loss.
//!
//! Binary operations track both bounds pessimistically, so no reported
//! coefficient is ever wrong. Equality is only decided on the common window of
//! the two operands.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::rational::{Rational, format_rational};

/// Poles deeper than this abort the computation instead of growing silently.
pub const MAX_POLE_ORDER: i32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    floor: i32,
    cap: i32,
    coeffs: BTreeMap<i32, Rational>,
}

impl LaurentSeries {
    /// Cap value of a series that is exact at every exponent.
    pub const EXACT: i32 = i32::MAX;

    /// The zero series, exact everywhere.
    pub fn zero() -> Self {
        LaurentSeries {
            floor: 0,
            cap: Self::EXACT,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series 1, exact everywhere.
    pub fn one() -> Self {
        Self::monomial(0, crate::rational::rat_int(1))
    }

    /// `coeff * eps^exp`, exact everywhere.
    pub fn monomial(exp: i32, coeff: Rational) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(exp, coeff);
        LaurentSeries {
            floor: exp.min(0),
            cap: Self::EXACT,
            coeffs,
        }
    }

    /// Builds a series known exactly below `cap`. Terms at or above `cap` are
    /// discarded, zero terms are dropped, and the floor is derived from the
    /// support.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(cap: i32, terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (exp, c) in terms {
            if exp >= cap || c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(exp).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&exp);
            }
        }
        let floor = coeffs.keys().next().copied().unwrap_or(0).min(0);
        LaurentSeries { floor, cap, coeffs }
    }

    /// Builds a series from explicit bookkeeping bounds, validating that every
    /// stored exponent lies in `[floor, cap)`.
    pub fn from_parts(floor: i32, cap: i32, coeffs: BTreeMap<i32, Rational>) -> Result<Self> {
        if floor > cap {
            return Err(CoreError::Parse(format!(
                "series floor {floor} above cap {cap}"
            )));
        }
        let mut kept = BTreeMap::new();
        for (exp, c) in coeffs {
            if exp < floor || exp >= cap {
                return Err(CoreError::Parse(format!(
                    "exponent {exp} outside window [{floor},{cap})"
                )));
            }
            if !c.is_zero() {
                kept.insert(exp, c);
            }
        }
        Ok(LaurentSeries {
            floor,
            cap,
            coeffs: kept,
        })
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn is_exact(&self) -> bool {
        self.cap == Self::EXACT
    }

    /// True when the series is identically zero with no truncation loss.
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }

    /// True when every known coefficient is zero.
    pub fn is_zero_on_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `eps^exp`. Panics if the exponent is at or above the
    /// exactness horizon.
    pub fn coeff(&self, exp: i32) -> Rational {
        assert!(
            exp < self.cap,
            "coefficient of eps^{exp} requested but series only known below eps^{}",
            self.cap
        );
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let floor = self.floor.min(other.floor);
        let mut coeffs = self.coeffs.clone();
        coeffs.retain(|&e, _| e < cap);
        for (&e, c) in &other.coeffs {
            if e >= cap {
                continue;
            }
            let entry = coeffs.entry(e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        LaurentSeries { floor, cap, coeffs }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            floor: self.floor,
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            // The window knowledge survives: 0 * unknown = 0.
            return LaurentSeries {
                floor: self.floor,
                cap: Self::EXACT,
                coeffs: BTreeMap::new(),
            };
        }
        LaurentSeries {
            floor: self.floor,
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e, c.clone() * r.clone()))
                .collect(),
        }
    }

    /// Lowest exponent that may carry a nonzero coefficient: the first stored
    /// term, or the horizon when everything known is zero.
    fn support_min(&self) -> i32 {
        self.coeffs.keys().next().copied().unwrap_or(self.cap).min(self.cap)
    }

    /// Cauchy product. The result floor is the sum of the operand floors; the
    /// cap is chosen so that every reported coefficient is exact: unknown
    /// contributions to `eps^k` need one factor beyond an operand's horizon
    /// and a possibly nonzero coefficient from the other operand.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Self::zero());
        }
        let floor = self.floor.saturating_add(other.floor);
        if floor < -MAX_POLE_ORDER {
            return Err(CoreError::FloorExceeded {
                depth: floor,
                bound: MAX_POLE_ORDER,
            });
        }
        let from_self = if self.is_exact() {
            Self::EXACT
        } else {
            self.cap.saturating_add(other.support_min())
        };
        let from_other = if other.is_exact() {
            Self::EXACT
        } else {
            other.cap.saturating_add(self.support_min())
        };
        let cap = from_self.min(from_other);
        let mut coeffs: BTreeMap<i32, Rational> = BTreeMap::new();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if e >= cap {
                    break; // keys ascend, later eb only larger
                }
                let entry = coeffs.entry(e).or_insert_with(Rational::zero);
                *entry += ca.clone() * cb.clone();
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(LaurentSeries { floor, cap, coeffs })
    }

    /// The strict polar part: exponents `< 0` only. The polar part of any
    /// value is fully known, so the result carries no truncation loss.
    pub fn polar_part(&self) -> Self {
        let coeffs: BTreeMap<i32, Rational> = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e < 0)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        let cap = if self.cap >= 0 { Self::EXACT } else { self.cap };
        LaurentSeries {
            floor: self.floor.min(0),
            cap,
            coeffs,
        }
    }

    /// The holomorphic part: exponents `>= 0`, same horizon as the input.
    pub fn holomorphic_part(&self) -> Self {
        LaurentSeries {
            floor: 0,
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| **e >= 0)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// True when no known coefficient sits at a nonnegative exponent.
    pub fn is_strictly_polar(&self) -> bool {
        self.coeffs.keys().all(|&e| e < 0)
    }

    /// True when the (always exact) polar part vanishes.
    pub fn is_holomorphic(&self) -> bool {
        self.coeffs.keys().all(|&e| e >= 0)
    }

    /// Value equality on the common window of the two operands.
    pub fn eq_window(&self, other: &Self) -> Result<bool> {
        let hi = self.cap.min(other.cap);
        let lo = self.floor.min(other.floor);
        if hi <= lo {
            return Err(CoreError::DisjointWindows {
                floor_a: self.floor,
                cap_a: self.cap,
                floor_b: other.floor,
                cap_b: other.cap,
            });
        }
        for (&e, c) in &self.coeffs {
            if e < hi && other.coeff(e) != *c {
                return Ok(false);
            }
        }
        for (&e, c) in &other.coeffs {
            if e < hi && self.coeff(e) != *c {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Projection onto the strict polar part (minimal subtraction).
pub fn r_minus(a: &LaurentSeries) -> LaurentSeries {
    a.polar_part()
}

/// Complementary projection onto the holomorphic part.
pub fn r_plus(a: &LaurentSeries) -> LaurentSeries {
    a.holomorphic_part()
}

/// Checks the weight-one Rota-Baxter identity
/// `R_-(x)R_-(y) = R_-(x R_-(y)) + R_-(R_-(x) y) - R_-(x y)`
/// exactly on the common window of both sides.
pub fn rb_check(x: &LaurentSeries, y: &LaurentSeries) -> Result<bool> {
    let lhs = r_minus(x).try_mul(&r_minus(y))?;
    let rhs = r_minus(&x.try_mul(&r_minus(y))?)
        .add(&r_minus(&r_minus(x).try_mul(y)?))
        .sub(&r_minus(&x.try_mul(y)?));
    lhs.eq_window(&rhs)
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (&e, c)) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                match e {
                    0 => write!(f, "{}", format_rational(c))?,
                    1 => write!(f, "{}·ε", format_rational(c))?,
                    _ => write!(f, "{}·ε^{}", format_rational(c), e)?,
                }
            }
        }
        if !self.is_exact() {
            write!(f, " + O(ε^{})", self.cap)?;
        }
        Ok(())
    }
}
