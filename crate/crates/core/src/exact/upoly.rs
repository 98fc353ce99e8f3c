//! Dense univariate polynomials over the rationals, lowest degree first.

use num_traits::{One, Zero};

use super::Rational;

pub(crate) type UPoly = Vec<Rational>;

pub(crate) fn trim(p: &mut UPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for zero.
pub(crate) fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> UPoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`. Panics if `b` is zero.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = b[db].recip();
    let mut rem: UPoly = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] * &lead_inv;
        let shift = dr - db;
        for (j, c) in b.iter().enumerate().take(db + 1) {
            if !c.is_zero() {
                rem[shift + j] -= &factor * c;
            }
        }
        quot[shift] = factor;
        rem.truncate(dr);
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn derivative(p: &[Rational]) -> UPoly {
    let mut out: UPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(k.into()))
        .collect();
    trim(&mut out);
    out
}

fn make_monic(mut p: UPoly) -> UPoly {
    trim(&mut p);
    if let Some(d) = degree(&p) {
        let lead = p[d].recip();
        for c in &mut p {
            *c *= &lead;
        }
    }
    p
}

pub(crate) fn gcd(a: &[Rational], b: &[Rational]) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(x)
}

/// Inverse of `a` modulo `m`, assuming `gcd(a, m) = 1`.
pub(crate) fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<UPoly> {
    // Extended Euclid tracking only the coefficient of `a`.
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (UPoly, UPoly) = (Vec::new(), vec![Rational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 = gcd up to a scalar, s0 * a = r0 (mod m)
    if degree(&r0) != Some(0) {
        return None;
    }
    let scale = r0[0].recip();
    let mut inv: UPoly = s0.into_iter().map(|c| c * &scale).collect();
    let (_, reduced) = divrem(&inv, m);
    inv = reduced;
    Some(inv)
}

pub(crate) fn is_squarefree(p: &[Rational]) -> bool {
    match degree(p) {
        None => false,
        Some(0) => true,
        Some(_) => degree(&gcd(p, &derivative(p))) == Some(0),
    }
}
