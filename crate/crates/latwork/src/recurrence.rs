//! Linear lower-bound recurrences built from count tables.
//!
//! Both composition shapes turn a finite table of indecomposable or
//! piece counts into a linear recurrence whose solution undercounts the
//! true family totals: every composite lattice decomposes uniquely, so
//! truncating the table only drops nonnegative terms. The recurrence
//! can be evaluated exactly in big integers or in fixed-precision
//! arithmetic rounded strictly toward zero, so every reported value is
//! a certified lower bound on the true one.

use crate::table::{totals_by_convolution, CountTable, TableKind};
use num_bigint::BigUint;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Which composition the recurrence models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Stacking at a shared knot; coefficients are vi counts.
    VSum,
    /// Gluing along a two-element neck; coefficients are piece counts.
    V2Sum,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::VSum => "vsum",
            Shape::V2Sum => "v2sum",
        })
    }
}

impl std::str::FromStr for Shape {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vsum" => Ok(Shape::VSum),
            "v2sum" => Ok(Shape::V2Sum),
            other => Err(format!("unknown shape '{other}' (expected vsum or v2sum)")),
        }
    }
}

/// f(n) = sum of coeffs[i-1] * f(n-i), valid for n past the initial
/// segment; the initial segment holds f(1)..f(N) exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    pub shape: Shape,
    /// a_1..a_d; zero entries are allowed, at least one is positive
    /// for any table with a positive count in range.
    pub coeffs: Vec<BigUint>,
    /// f(1)..f(N).
    pub initial: Vec<BigUint>,
    /// The table the recurrence was built from.
    pub source: CountTable,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest n covered by the initial segment.
    pub fn horizon(&self) -> usize {
        self.initial.len()
    }

    /// f(n) for n >= 2 dominates the recurrence step even inside the
    /// initial segment (shorter compositions only add terms), so any
    /// index may serve in a certification window.
    pub fn coeff(&self, lag: usize) -> &BigUint {
        &self.coeffs[lag - 1]
    }
}

/// Ceiling on how many terms [`eval_sequence_exact`] and
/// [`eval_sequence_lower`] will produce in one call.
pub const EVAL_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("refusing to materialize {n} terms (cap {cap})")]
    ResourceCap { n: usize, cap: usize },
}

/// Stacking recurrence of order N-1 from a vi table covering sizes
/// 1..=N. The initial segment is the exact convolution of the table
/// with itself, so it agrees with the true totals through N.
pub fn build_recurrence_vsum(vi: &CountTable, n: usize) -> Recurrence {
    assert_eq!(vi.kind, TableKind::Vi, "stacking recurrences take vi counts");
    assert!(n >= 2, "order would be empty below n = 2");
    assert!(vi.max_n() >= n, "table covers {} < {n}", vi.max_n());
    let coeffs: Vec<BigUint> = (2..=n).map(|k| vi.get(k).unwrap().clone()).collect();
    let initial = totals_by_convolution(&vi.values()[..n]);
    Recurrence {
        shape: Shape::VSum,
        coeffs,
        initial,
        source: vi.clone(),
    }
}

/// Neck-gluing recurrence of order N-4 from a piece table covering
/// sizes 1..=N. Gluing a k-element piece onto an n-element lattice
/// yields n + k - 4 elements, so lag j carries the count of pieces on
/// j + 4 elements; the lag-1 coefficient is always zero because pieces
/// have at least six elements.
pub fn build_recurrence_v2sum(pc: &CountTable, n: usize) -> Recurrence {
    assert_eq!(pc.kind, TableKind::Piece, "gluing recurrences take piece counts");
    assert!(n >= 6, "no pieces exist below six elements");
    assert!(pc.max_n() >= n, "table covers {} < {n}", pc.max_n());
    let d = n - 4;
    let coeffs: Vec<BigUint> = (1..=d).map(|j| pc.get(j + 4).unwrap().clone()).collect();
    let mut initial: Vec<BigUint> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut acc = pc.get(m).unwrap().clone();
        for k in 6..m {
            // A piece on k elements glued atop a stack on m - k + 4.
            acc += pc.get(k).unwrap() * &initial[m - k + 4 - 1];
        }
        initial.push(acc);
    }
    Recurrence {
        shape: Shape::V2Sum,
        coeffs,
        initial,
        source: pc.clone(),
    }
}

/// f(1)..f(n_max) in exact integer arithmetic.
pub fn eval_sequence_exact(
    rec: &Recurrence,
    n_max: usize,
) -> Result<Vec<BigUint>, RecurrenceError> {
    if n_max > EVAL_CAP {
        return Err(RecurrenceError::ResourceCap {
            n: n_max,
            cap: EVAL_CAP,
        });
    }
    let mut f: Vec<BigUint> = rec.initial.iter().take(n_max).cloned().collect();
    for n in rec.horizon() + 1..=n_max {
        let mut acc = BigUint::zero();
        for (i, a) in rec.coeffs.iter().enumerate() {
            let lag = i + 1;
            // Indices at or below zero contribute nothing.
            if n > lag && !a.is_zero() {
                acc += a * &f[n - lag - 1];
            }
        }
        f.push(acc);
    }
    Ok(f)
}

/// Significand width for the directed-rounding evaluation mode.
pub const DEFAULT_PRECISION_BITS: u64 = 128;

/// Nonnegative fixed-precision value `mant * 2^exp` with all rounding
/// directed by the caller: the `_down` operations never overshoot the
/// true result and the `_up` operations never undershoot it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Fixed {
    mant: BigUint,
    exp: i64,
}

impl Fixed {
    pub(crate) fn zero() -> Self {
        Fixed {
            mant: BigUint::zero(),
            exp: 0,
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    fn trim_down(mant: BigUint, exp: i64, prec: u64) -> Self {
        let b = mant.bits();
        if b <= prec {
            return Fixed { mant, exp };
        }
        let s = b - prec;
        Fixed {
            mant: mant >> s,
            exp: exp + s as i64,
        }
    }

    fn trim_up(mant: BigUint, exp: i64, prec: u64) -> Self {
        let b = mant.bits();
        if b <= prec {
            return Fixed { mant, exp };
        }
        let s = b - prec;
        let dropped = mant.trailing_zeros().unwrap_or(0) < s;
        let mut m = mant >> s;
        let mut e = exp + s as i64;
        if dropped {
            m += 1u32;
            if m.bits() > prec {
                m >>= 1;
                e += 1;
            }
        }
        Fixed { mant: m, exp: e }
    }

    pub(crate) fn from_biguint_down(x: &BigUint, prec: u64) -> Self {
        Self::trim_down(x.clone(), 0, prec)
    }

    pub(crate) fn from_biguint_up(x: &BigUint, prec: u64) -> Self {
        Self::trim_up(x.clone(), 0, prec)
    }

    /// num/den rounded up; den must be positive.
    pub(crate) fn from_ratio_up(num: &BigUint, den: &BigUint, prec: u64) -> Self {
        assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let shift = prec + den.bits();
        let scaled = num << shift;
        let (q, r) = num_integer::Integer::div_rem(&scaled, den);
        let q = if r.is_zero() { q } else { q + 1u32 };
        Self::trim_up(q, -(shift as i64), prec)
    }

    fn add(a: &Fixed, b: &Fixed) -> (BigUint, i64) {
        if a.is_zero() {
            return (b.mant.clone(), b.exp);
        }
        if b.is_zero() {
            return (a.mant.clone(), a.exp);
        }
        let e = a.exp.min(b.exp);
        let ma = &a.mant << (a.exp - e) as u64;
        let mb = &b.mant << (b.exp - e) as u64;
        (ma + mb, e)
    }

    pub(crate) fn add_down(a: &Fixed, b: &Fixed, prec: u64) -> Fixed {
        let (m, e) = Self::add(a, b);
        Self::trim_down(m, e, prec)
    }

    pub(crate) fn mul_down(a: &Fixed, b: &Fixed, prec: u64) -> Fixed {
        Self::trim_down(&a.mant * &b.mant, a.exp + b.exp, prec)
    }

    pub(crate) fn mul_up(a: &Fixed, b: &Fixed, prec: u64) -> Fixed {
        Self::trim_up(&a.mant * &b.mant, a.exp + b.exp, prec)
    }

    /// Exact comparison of the represented values.
    pub(crate) fn cmp_value(&self, other: &Fixed) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            (false, false) => {}
        }
        if self.exp >= other.exp {
            (&self.mant << (self.exp - other.exp) as u64).cmp(&other.mant)
        } else {
            self.mant.cmp(&(&other.mant << (other.exp - self.exp) as u64))
        }
    }

    /// Exact comparison against an integer.
    #[cfg(test)]
    pub(crate) fn cmp_biguint(&self, x: &BigUint) -> Ordering {
        if self.exp >= 0 {
            (&self.mant << self.exp as u64).cmp(x)
        } else {
            self.mant.cmp(&(x << (-self.exp) as u64))
        }
    }
}

/// Walks f(1)..f(n_max) with every term rounded toward zero at `prec`
/// significand bits, so each visited value is a true lower bound on
/// the exact one, losing at most a factor (1 - 2^(1-prec)) per
/// operation. Memory stays at `order` values; the callback returns
/// false to stop early.
pub(crate) fn eval_sequence_lower_stream(
    rec: &Recurrence,
    n_max: usize,
    prec: u64,
    visit: &mut dyn FnMut(usize, &Fixed) -> bool,
) {
    let d = rec.order();
    let coeffs: Vec<Fixed> = rec
        .coeffs
        .iter()
        .map(|a| Fixed::from_biguint_down(a, prec))
        .collect();
    let mut ring: Vec<Fixed> = vec![Fixed::zero(); d];
    for n in 1..=n_max {
        let value = if n <= rec.horizon() {
            Fixed::from_biguint_down(&rec.initial[n - 1], prec)
        } else {
            let mut acc = Fixed::zero();
            for (i, a) in coeffs.iter().enumerate() {
                let lag = i + 1;
                if n > lag && !a.is_zero() {
                    let term = Fixed::mul_down(a, &ring[(n - lag) % d], prec);
                    acc = Fixed::add_down(&acc, &term, prec);
                }
            }
            acc
        };
        let keep_going = visit(n, &value);
        ring[n % d] = value;
        if !keep_going {
            return;
        }
    }
}

/// f(1)..f(n_max) in the rounded-toward-zero mode, materialized.
#[cfg(test)]
pub(crate) fn eval_sequence_lower(
    rec: &Recurrence,
    n_max: usize,
    prec: u64,
) -> Result<Vec<Fixed>, RecurrenceError> {
    if n_max > EVAL_CAP {
        return Err(RecurrenceError::ResourceCap {
            n: n_max,
            cap: EVAL_CAP,
        });
    }
    let mut f: Vec<Fixed> = Vec::with_capacity(n_max);
    eval_sequence_lower_stream(rec, n_max, prec, &mut |_, v| {
        f.push(v.clone());
        true
    });
    Ok(f)
}
