use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::{self, UPoly};
use super::{Field, Rational};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The `n`-th cyclotomic polynomial with integer coefficients, lowest degree
/// first: `x^n - 1` divided exactly by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    let field = field(n);
    field
        .modulus
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn compute_cyclotomic(n: u32) -> UPoly {
    let mut numer: UPoly = vec![Rational::zero(); n as usize + 1];
    numer[0] = -Rational::one();
    numer[n as usize] = Rational::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = upoly::divrem(&numer, &field(d).modulus);
        debug_assert!(r.is_empty(), "Φ_{d} must divide x^{n} - 1");
        numer = q;
    }
    numer
}

/// Shared data for `ℚ(ζ_N)`: the order and the reduction modulus `Φ_N`.
#[derive(Debug)]
struct CyclotomicField {
    order: u32,
    modulus: UPoly,
}

impl CyclotomicField {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_N`.
    fn reduce(&self, mut coeffs: UPoly) -> Vec<Rational> {
        let phi = self.degree();
        // Φ_N is monic, so plain synthetic division works.
        for k in (phi..coeffs.len()).rev() {
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[k]);
            for (j, m) in self.modulus[..phi].iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let slot = &mut coeffs[k - phi + j];
                if m.is_one() {
                    *slot -= &c;
                } else if (-m).is_one() {
                    *slot += &c;
                } else {
                    *slot -= &c * m;
                }
            }
        }
        coeffs.resize(phi, Rational::zero());
        coeffs
    }
}

fn field(order: u32) -> Arc<CyclotomicField> {
    static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = FIELDS.get_or_init(Default::default);
    if let Some(f) = cache.read().expect("field cache poisoned").get(&order) {
        return Arc::clone(f);
    }
    // Computed outside the lock: computing Φ_n recursively touches the cache.
    let modulus = compute_cyclotomic(order);
    let built = Arc::new(CyclotomicField { order, modulus });
    let mut guard = cache.write().expect("field cache poisoned");
    Arc::clone(guard.entry(order).or_insert(built))
}

/// An element of `ℚ(ζ_N)`, stored as coefficients of `1, ζ, …, ζ^{φ(N)-1}`.
///
/// Elements of different orders may be mixed freely; results live in the
/// field of the least common multiple of the orders.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn from_rational(value: Rational, order: u32) -> Self {
        let field = field(order);
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = value;
        Self { field, coeffs }
    }

    pub fn zero_in(order: u32) -> Self {
        Self::from_rational(Rational::zero(), order)
    }

    pub fn one_in(order: u32) -> Self {
        Self::from_rational(Rational::one(), order)
    }

    /// Builds an element from coefficients on the power basis; vectors longer
    /// than `φ(N)` are reduced, shorter ones are zero-padded.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        let field = field(order);
        let coeffs = field.reduce(coeffs);
        Self { field, coeffs }
    }

    /// `ζ_N^k`, for any integer `k`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Self::from_coeffs(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// Re-expresses the element in `ℚ(ζ_M)`, where `N` divides `M`.
    pub fn lift_to(&self, order: u32) -> Self {
        let own = self.order();
        assert!(
            order.is_multiple_of(own),
            "cannot lift an element of Q(z{own}) into Q(z{order})"
        );
        if order == own {
            return self.clone();
        }
        let step = (order / own) as usize;
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Self::from_coeffs(order, coeffs)
    }

    fn common_order(&self, other: &Self) -> u32 {
        self.order().lcm(&other.order())
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if self.order() == other.order() {
            (Cow::Borrowed(self), Cow::Borrowed(other))
        } else {
            let n = self.common_order(other);
            (Cow::Owned(self.lift_to(n)), Cow::Owned(other.lift_to(n)))
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_in(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(r.recip(), self.order()));
        }
        let inv = upoly::inverse_mod(&self.coeffs, &self.field.modulus)?;
        Some(Self::from_coeffs(self.order(), inv))
    }

    /// If the element equals `c · ζ_N^k` for a rational `c`, returns the
    /// smallest such `(c, k)`.
    pub fn as_scaled_root(&self) -> Option<(Rational, u32)> {
        if let Some(r) = self.as_rational() {
            return Some((r.clone(), 0));
        }
        let n = self.order();
        (1..n).find_map(|k| {
            let shifted = self * &Self::root_of_unity(n, -(k as i64));
            shifted.as_rational().map(|c| (c.clone(), k))
        })
    }
}

/// `ζ_{field_order}^{(field_order/root_order)·power}`: the `power`-th power of
/// a primitive `root_order`-th root of unity, expressed inside `ℚ(ζ_{field_order})`.
pub fn cyclotomic_embed(
    root_order: u32,
    power: i64,
    field_order: u32,
) -> Result<CyclotomicNumber, crate::Error> {
    if root_order == 0 || field_order == 0 || !field_order.is_multiple_of(root_order) {
        return Err(crate::Error::Divisibility {
            root_order,
            field_order,
        });
    }
    let step = (field_order / root_order) as i64;
    Ok(CyclotomicNumber::root_of_unity(
        field_order,
        (power.rem_euclid(root_order as i64)) * step,
    ))
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = self.aligned(rhs);
        CyclotomicNumber {
            field: Arc::clone(&a.field),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = self.aligned(rhs);
        CyclotomicNumber {
            field: Arc::clone(&a.field),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if let Some(r) = self.as_rational() {
            let mut out = rhs.scale(r);
            if self.order() != rhs.order() {
                out = out.lift_to(self.common_order(rhs));
            }
            return out;
        }
        if let Some(r) = rhs.as_rational() {
            let mut out = self.scale(r);
            if self.order() != rhs.order() {
                out = out.lift_to(self.common_order(rhs));
            }
            return out;
        }
        let (a, b) = self.aligned(rhs);
        let product = upoly::mul(&a.coeffs, &b.coeffs);
        CyclotomicNumber {
            field: Arc::clone(&a.field),
            coeffs: a.field.reduce(product),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Mul for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Zero for CyclotomicNumber {
    fn zero() -> Self {
        Self::zero_in(1)
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
}

impl One for CyclotomicNumber {
    fn one() -> Self {
        Self::one_in(1)
    }
}

impl Field for CyclotomicNumber {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn from_integer(n: &BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n.clone()), 1)
    }
}

impl From<Rational> for CyclotomicNumber {
    fn from(value: Rational) -> Self {
        Self::from_rational(value, 1)
    }
}

fn root_token(order: u32, k: u32) -> String {
    match k {
        0 => "1".to_string(),
        1 => format!("z{order}"),
        _ => format!("z{order}^{k}"),
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Scaled roots of unity print as `c*zN^k`; anything else as a sum over
    /// the power basis.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((c, k)) = self.as_scaled_root() {
            if k == 0 {
                return write!(f, "{c}");
            }
            let token = root_token(self.order(), k);
            return if c.is_one() {
                write!(f, "{token}")
            } else if (-&c).is_one() {
                write!(f, "-{token}")
            } else {
                write!(f, "{c}*{token}")
            };
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{}", root_token(self.order(), k as u32))?,
                (_, false) => write!(f, "{mag}*{}", root_token(self.order(), k as u32))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}](", self.order())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        for n in 1..=60 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn embed_examples() {
        let minus_one = cyclotomic_embed(2, 1, 2).unwrap();
        assert_eq!(minus_one.as_rational(), Some(&rat(-1, 1)));
        let one = cyclotomic_embed(3, 0, 3).unwrap();
        assert_eq!(one.as_rational(), Some(&rat(1, 1)));
        let z3 = cyclotomic_embed(3, 1, 3).unwrap();
        assert_eq!(z3.coeffs(), &[rat(0, 1), rat(1, 1)]);
        // z^2 = -1 - z in Q[z]/(z^2 + z + 1)
        assert_eq!(z3.pow(2).coeffs(), &[rat(-1, 1), rat(-1, 1)]);
        assert!(z3.pow(3) == CyclotomicNumber::one_in(3));
        assert!(matches!(
            cyclotomic_embed(4, 1, 6),
            Err(crate::Error::Divisibility { .. })
        ));
    }

    #[test]
    fn lifting_preserves_value() {
        let z3 = CyclotomicNumber::root_of_unity(3, 1);
        let z6 = CyclotomicNumber::root_of_unity(6, 2);
        assert_eq!(z3.lift_to(6), z6);
        assert_eq!(z3, z6);
        let sum = &z3 + &CyclotomicNumber::root_of_unity(4, 1);
        assert_eq!(sum.order(), 12);
    }

    #[test]
    fn inverse_of_non_rational() {
        let a = &CyclotomicNumber::root_of_unity(5, 1) + &CyclotomicNumber::from_rational(rat(2, 1), 5);
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, CyclotomicNumber::one_in(5));
    }

    #[test]
    fn display_tokens() {
        assert_eq!(CyclotomicNumber::root_of_unity(3, 2).to_string(), "z3^2");
        assert_eq!(CyclotomicNumber::root_of_unity(2, 1).to_string(), "-1");
        assert_eq!(
            CyclotomicNumber::root_of_unity(3, 1).scale(&rat(1, 9)).to_string(),
            "1/9*z3"
        );
        assert_eq!(CyclotomicNumber::root_of_unity(6, 3).to_string(), "-1");
        let mixed = &CyclotomicNumber::root_of_unity(5, 1) + &CyclotomicNumber::one_in(5);
        assert_eq!(mixed.to_string(), "1 + z5");
    }
}
