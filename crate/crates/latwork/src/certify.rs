//! Machine-checkable certificates that a recurrence grows at least
//! like c^n.
//!
//! The induction behind a certificate: if c satisfies the auxiliary
//! polynomial inequality p(c) <= 0 and f(n) >= c^n holds for d
//! consecutive indices, then applying the recurrence step pushes the
//! bound to every later index. Both builders produce initial segments
//! that dominate their own recurrence step (shorter compositions only
//! add terms), so the window may sit anywhere, including inside the
//! initial segment. The certificate records the exact window values;
//! checking one needs no floating point at all.

use crate::ratio::gcd_all;
use crate::recurrence::{eval_sequence_lower_stream, Fixed, Recurrence, DEFAULT_PRECISION_BITS};
use crate::root::aux_sign;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

/// Hard ceiling on how far any window search or verification will
/// walk the sequence.
pub const WINDOW_CAP: usize = 5_000_000;

/// Proof that the recurrence's sequence eventually dominates c^n:
/// exact values for `order` consecutive indices from `window_start`,
/// each at least the matching power of c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub recurrence: Recurrence,
    /// Growth rate in lowest terms.
    pub c: BigRational,
    /// First index of the window; f(n) >= c^n holds from here on.
    pub window_start: usize,
    /// Exact f(window_start)..f(window_start + order - 1).
    pub window: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("rate {c} fails the polynomial check: c^d exceeds the coefficient side")]
    PolynomialCheckFailed { c: BigRational },
    #[error("no certification window within {search_cap} terms{}", gcd_note(.lag_gcd))]
    WindowNotFound {
        search_cap: usize,
        /// When the positive lags share a common divisor above one the
        /// sequence is confined to residue classes and the search is
        /// refused outright.
        lag_gcd: Option<usize>,
    },
    #[error("rate {c} is below one; only growth rates can be certified")]
    RateBelowOne { c: BigRational },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

fn gcd_note(g: &Option<usize>) -> String {
    match g {
        Some(g) => format!("; positive lags share gcd {g}, the sequence never leaves its residue classes"),
        None => String::new(),
    }
}

/// Exact f(start)..f(start + len - 1) computed by streaming the
/// recurrence with a ring buffer, so memory stays at `order` values.
fn exact_window(rec: &Recurrence, start: usize, len: usize) -> Vec<BigUint> {
    let d = rec.order();
    let hi = start + len - 1;
    let mut ring: Vec<BigUint> = vec![BigUint::zero(); d];
    let mut out = Vec::with_capacity(len);
    for n in 1..=hi {
        let value = if n <= rec.horizon() {
            rec.initial[n - 1].clone()
        } else {
            let mut acc = BigUint::zero();
            for (i, a) in rec.coeffs.iter().enumerate() {
                let lag = i + 1;
                if n > lag && !a.is_zero() {
                    acc += a * &ring[(n - lag) % d];
                }
            }
            acc
        };
        if n >= start {
            out.push(value.clone());
        }
        ring[n % d] = value;
    }
    out
}

/// Exact check of f(n) * q^n >= p^n across a window starting at n0.
fn window_satisfies(window: &[BigUint], n0: usize, c: &BigRational) -> bool {
    let p = c.numer().magnitude();
    let q = c.denom().magnitude();
    let mut p_pow = p.pow(n0 as u32);
    let mut q_pow = q.pow(n0 as u32);
    for f in window {
        if f * &q_pow < p_pow {
            return false;
        }
        p_pow *= p;
        q_pow *= q;
    }
    true
}

/// The recurrence step evaluated from the sequence's own earlier
/// values, with indices at or below zero contributing nothing. Both
/// builders emit initial segments dominating this step, which is what
/// lets a window sit inside the initial segment.
fn dominates_own_step(rec: &Recurrence) -> bool {
    for n in 2..=rec.horizon() {
        let mut step = BigUint::zero();
        for (i, a) in rec.coeffs.iter().enumerate() {
            let lag = i + 1;
            if n > lag && !a.is_zero() {
                step += a * &rec.initial[n - lag - 1];
            }
        }
        if rec.initial[n - 1] < step {
            return false;
        }
    }
    true
}

/// Searches for the first window of `order` consecutive indices where
/// a certified lower bound on f(n) meets a certified upper bound on
/// c^n. A hit guarantees the exact comparison succeeds.
fn float_window_search(rec: &Recurrence, c: &BigRational, cap: usize) -> Option<usize> {
    let prec = DEFAULT_PRECISION_BITS;
    let d = rec.order();
    let c_up = Fixed::from_ratio_up(c.numer().magnitude(), c.denom().magnitude(), prec);
    let mut c_pow = Fixed::from_biguint_up(&BigUint::one(), prec);
    let mut run = 0usize;
    let mut found = None;
    eval_sequence_lower_stream(rec, cap, prec, &mut |n, low| {
        c_pow = Fixed::mul_up(&c_pow, &c_up, prec);
        if low.cmp_value(&c_pow) != Ordering::Less {
            run += 1;
            if run >= d && found.is_none() {
                found = Some(n - d + 1);
                return false;
            }
        } else {
            run = 0;
        }
        true
    });
    found
}

/// Builds a certificate that f(n) >= c^n for all n >= window_start, or
/// explains why none exists. `pin` skips the search and checks the
/// given window start directly, for reproducing a known base case.
pub fn certify(
    rec: &Recurrence,
    c: &BigRational,
    search_cap: usize,
    pin: Option<usize>,
) -> Result<BoundCertificate, CertifyError> {
    if *c < BigRational::one() {
        return Err(CertifyError::RateBelowOne { c: c.clone() });
    }
    debug_assert!(
        dominates_own_step(rec),
        "initial segment falls below its own recurrence step"
    );
    if aux_sign(&rec.coeffs, c) > 0 {
        return Err(CertifyError::PolynomialCheckFailed { c: c.clone() });
    }
    let lags: Vec<usize> = rec
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, _)| i + 1)
        .collect();
    let g = gcd_all(&lags);
    if g > 1 {
        return Err(CertifyError::WindowNotFound {
            search_cap,
            lag_gcd: Some(g),
        });
    }
    let d = rec.order();
    let n0 = match pin {
        Some(n0) => {
            assert!(n0 >= 1, "window positions start at one");
            assert!(
                n0 + d - 1 <= WINDOW_CAP,
                "pinned window exceeds the supported range"
            );
            n0
        }
        None => {
            let cap = search_cap.min(WINDOW_CAP);
            float_window_search(rec, c, cap).ok_or(CertifyError::WindowNotFound {
                search_cap: cap,
                lag_gcd: None,
            })?
        }
    };
    let window = exact_window(rec, n0, d);
    if !window_satisfies(&window, n0, c) {
        if pin.is_some() {
            return Err(CertifyError::WindowNotFound {
                search_cap: n0,
                lag_gcd: None,
            });
        }
        unreachable!("directed rounding admitted a window the exact check rejects");
    }
    Ok(BoundCertificate {
        recurrence: rec.clone(),
        c: c.clone(),
        window_start: n0,
        window,
    })
}

/// Recomputes everything a certificate claims from its own initial
/// values: the polynomial inequality, the window values, the window
/// comparisons, and the initial segment's dominance over its own
/// step. Returns false when any recomputation disagrees; structural
/// damage is an error instead.
pub fn verify_certificate(cert: &BoundCertificate) -> Result<bool, CertifyError> {
    let rec = &cert.recurrence;
    let d = rec.order();
    if d == 0 {
        return Err(CertifyError::MalformedCertificate(
            "no coefficients".into(),
        ));
    }
    if rec.initial.is_empty() {
        return Err(CertifyError::MalformedCertificate(
            "no initial values".into(),
        ));
    }
    if cert.window.len() != d {
        return Err(CertifyError::MalformedCertificate(format!(
            "window holds {} values for an order-{d} recurrence",
            cert.window.len()
        )));
    }
    if cert.window_start == 0 {
        return Err(CertifyError::MalformedCertificate(
            "window positions start at one".into(),
        ));
    }
    if cert.window_start + d - 1 > WINDOW_CAP {
        return Err(CertifyError::MalformedCertificate(
            "window beyond the supported range".into(),
        ));
    }
    if !cert.c.is_positive() {
        return Err(CertifyError::MalformedCertificate(
            "rate must be positive".into(),
        ));
    }
    if cert.c < BigRational::one() {
        return Err(CertifyError::MalformedCertificate(
            "rate below one certifies nothing".into(),
        ));
    }
    if aux_sign(&rec.coeffs, &cert.c) > 0 {
        return Ok(false);
    }
    if !dominates_own_step(rec) {
        return Ok(false);
    }
    let recomputed = exact_window(rec, cert.window_start, d);
    if recomputed != cert.window {
        return Ok(false);
    }
    Ok(window_satisfies(&cert.window, cert.window_start, &cert.c))
}
