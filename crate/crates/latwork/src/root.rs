//! Dominant-root isolation for the auxiliary polynomial of a
//! recurrence, and the cruder one-term growth bound.
//!
//! The auxiliary polynomial p(x) = x^d - sum of a_i x^(d-i) has exactly
//! one positive real root by Descartes' rule (one sign change), and the
//! recurrence grows like that root. All sign decisions here are made in
//! exact rational arithmetic; the returned interval is aligned to the
//! requested tolerance grid, so the decimal truncations of the root lie
//! inside it rather than landing on whichever dyadic cell bisection
//! happened to stop in.

use crate::ratio::{format_decimal_ceil, format_decimal_floor, nth_root_floor};
use crate::recurrence::Recurrence;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Exact interval around the unique positive root, with the sign of
/// the polynomial at each endpoint as evidence. Either the signs are
/// strictly opposite, or the root was hit exactly and both are zero
/// with lo == hi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

impl RootBracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// Decimal endpoints rounded outward, so the printed interval
    /// still encloses the root.
    pub fn decimal_interval(&self, places: usize) -> (String, String) {
        (
            format_decimal_floor(&self.lo, places),
            format_decimal_ceil(&self.hi, places),
        )
    }
}

/// Sign of p(x) = x^d - sum a_i x^(d-i) at a positive rational x,
/// decided exactly by clearing denominators.
pub(crate) fn aux_sign(coeffs: &[BigUint], x: &BigRational) -> i8 {
    assert!(x.is_positive(), "auxiliary polynomial probed at x <= 0");
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    // Clearing q^d turns the comparison into p^d against
    // sum a_i p^(d-i) q^i; the sum folds up Horner-style in p with the
    // running power of q supplying each term's q^i.
    let mut rhs = BigUint::zero();
    let mut qi = BigUint::one();
    let mut lhs = BigUint::one();
    for a in coeffs {
        qi *= q;
        lhs *= p;
        rhs = rhs * p + a * &qi;
    }
    match lhs.cmp(&rhs) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Brackets the unique positive root of the auxiliary polynomial to
/// within `tol` by exact-sign bisection on [1, 1 + sum a_i], then
/// aligns the answer to the tol grid. An exact rational root comes
/// back as a zero-width bracket.
pub fn dominant_root(rec: &Recurrence, tol: &BigRational) -> RootBracket {
    assert!(tol.is_positive(), "tolerance must be positive");
    assert!(
        rec.coeffs.iter().any(|a| !a.is_zero()),
        "auxiliary polynomial needs a positive coefficient"
    );
    let coeffs = &rec.coeffs;
    let sum: BigUint = coeffs.iter().sum();
    let mut lo = BigRational::one();
    let mut hi = BigRational::from_integer(BigInt::from(sum) + 1);
    match aux_sign(coeffs, &lo) {
        0 => return exact_hit(lo),
        s => debug_assert_eq!(s, -1, "p(1) must not be positive"),
    }
    debug_assert_eq!(aux_sign(coeffs, &hi), 1, "p(1 + sum) must be positive");
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        match aux_sign(coeffs, &mid) {
            0 => return exact_hit(mid),
            -1 => lo = mid,
            _ => hi = mid,
        }
    }
    // Snap to the tol grid: the half-open cell [k tol, (k+1) tol)
    // holding the root becomes the answer, so every decimal
    // truncation of the root at this granularity stays inside.
    let k = (&lo / tol).floor();
    let g = (&k + BigRational::one()) * tol;
    let (cell_lo, cell_hi) = if g > hi {
        // no grid point splits the bracket; both ends share a cell
        (&k * tol, g)
    } else {
        match aux_sign(coeffs, &g) {
            0 => return exact_hit(g),
            -1 => (g.clone(), &g + tol),
            _ => (&k * tol, g),
        }
    };
    let sign_lo = aux_sign(coeffs, &cell_lo);
    let sign_hi = aux_sign(coeffs, &cell_hi);
    if sign_lo == 0 {
        return exact_hit(cell_lo);
    }
    if sign_hi == 0 {
        return exact_hit(cell_hi);
    }
    debug_assert!(sign_lo < 0 && sign_hi > 0, "root escaped its cell");
    RootBracket {
        lo: cell_lo,
        hi: cell_hi,
        sign_lo,
        sign_hi,
    }
}

fn exact_hit(r: BigRational) -> RootBracket {
    RootBracket {
        lo: r.clone(),
        hi: r,
        sign_lo: 0,
        sign_hi: 0,
    }
}

/// Denominator ceiling for [`simple_bound`] candidates.
pub const SIMPLE_BOUND_MAX_DENOM: u32 = 10_000;

/// The largest rational c with denominator at most 10^4 satisfying
/// c^(N-1) <= f_n: a growth bound needing only one table entry, since
/// stacking n - 1 copies of any witness already forces f to grow at
/// least geometrically.
pub fn simple_bound(f_n: &BigUint, n: usize) -> BigRational {
    assert!(n >= 2, "growth needs at least two sizes");
    assert!(!f_n.is_zero(), "cannot bound growth from a zero count");
    let e = (n - 1) as u32;
    let mut best = BigRational::zero();
    for q in 1..=SIMPLE_BOUND_MAX_DENOM {
        let qn = BigUint::from(q).pow(e);
        let p = nth_root_floor(&(f_n * qn), e);
        let cand = BigRational::new(BigInt::from(p), BigInt::from(q));
        if cand > best {
            best = cand;
        }
    }
    best
}
