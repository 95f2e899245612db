//! Exact arithmetic in cyclotomic fields Q(ζₙ).
//!
//! A value is a polynomial in ζₙ of degree < φ(n), reduced modulo the n-th
//! cyclotomic polynomial Φₙ, stored as integer numerators over one positive
//! common denominator. The representation is canonical, so equality and
//! hashing are structural (within one conductor).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Φₙ, lowest degree first, by dividing xⁿ − 1 by Φ_d for
/// every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in arith::divisors(n as u64) {
        if d as u32 == n {
            continue;
        }
        let divisor = cyclotomic_polynomial(d as u32);
        poly = exact_monic_div(&poly, &divisor);
    }
    let poly = Arc::new(poly);
    phi_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division by cyclotomic factor must be exact");
    quot
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    nums: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        let deg = cyclotomic_polynomial(n).len() - 1;
        Cyclotomic { conductor: n, nums: vec![BigInt::zero(); deg], den: BigInt::one() }
    }

    pub fn one(n: u32) -> Self {
        Self::from_integer(n, 1)
    }

    pub fn from_integer(n: u32, k: i64) -> Self {
        let mut z = Self::zero(n);
        z.nums[0] = BigInt::from(k);
        z
    }

    pub fn from_rational(n: u32, q: &BigRational) -> Self {
        let mut z = Self::zero(n);
        z.nums[0] = q.numer().clone();
        z.den = q.denom().clone();
        z.normalize();
        z
    }

    /// ζₙᵏ for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigInt::zero(); e + 1];
        raw[e] = BigInt::one();
        Self::from_raw(n, raw, BigInt::one())
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// √2 = ζ₈ + ζ₈⁻¹.
    pub fn sqrt2() -> Self {
        &Self::zeta_pow(8, 1) + &Self::zeta_pow(8, -1)
    }

    /// √5 = 2(ζ₅ + ζ₅⁻¹) + 1.
    pub fn sqrt5() -> Self {
        let s = &Self::zeta_pow(5, 1) + &Self::zeta_pow(5, -1);
        &(&s + &s) + &Self::one(5)
    }

    fn from_raw(n: u32, mut raw: Vec<BigInt>, den: BigInt) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for i in (deg..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[i]);
            for (j, &p) in phi.iter().enumerate().take(deg) {
                if p != 0 {
                    raw[i - deg + j] -= &c * p;
                }
            }
        }
        raw.resize(deg, BigInt::zero());
        let mut z = Cyclotomic { conductor: n, nums: raw, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.nums {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.nums {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.nums {
                *c /= &g;
            }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.nums[0].is_one() && self.nums[1..].iter().all(|c| c.is_zero())
    }

    /// Coefficients of 1, ζ, ζ², … as exact rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.nums
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// The rational value, if this number lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.nums[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| BigRational::new(self.nums[0].clone(), self.den.clone()))
    }

    /// Image under the embedding Q(ζₙ) → Q(ζₘ), ζₙ ↦ ζₘ^(m/n).
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.conductor != 0 {
            return Err(Error::BadConductor { from: self.conductor, to: m });
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![BigInt::zero(); step * self.nums.len().max(1)];
        for (i, c) in self.nums.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::from_raw(m, raw, self.den.clone()))
    }

    /// Both operands over their least common conductor.
    fn align(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = arith::lcm(a.conductor as u64, b.conductor as u64) as u32;
        (a.lift(m).unwrap(), b.lift(m).unwrap())
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut raw = vec![BigInt::zero(); n];
        for (i, c) in self.nums.iter().enumerate() {
            raw[(n - i) % n] += c;
        }
        Self::from_raw(self.conductor, raw, self.den.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.conductor);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φₙ.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a: Vec<BigRational> = self.coefficients();
        let (g, s) = qpoly::ext_gcd_first(&a, &phi);
        // g is a nonzero constant because Φₙ is irreducible and a ≠ 0 mod Φₙ.
        let c = g[0].clone();
        let inv: Vec<BigRational> = s.iter().map(|x| x / &c).collect();
        let den = inv.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let raw = inv.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Ok(Self::from_raw(self.conductor, raw, den))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let raw = self.nums.iter().map(|c| c * q.numer()).collect();
        let mut z = Cyclotomic { conductor: self.conductor, nums: raw, den: &self.den * q.denom() };
        z.normalize();
        z
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, q) in self.coefficients().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{q}"),
                1 => format!("{q}*z{}", self.conductor),
                _ => format!("{q}*z{}^{i}", self.conductor),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::align(self, rhs);
        if a.den == b.den {
            let nums = a.nums.iter().zip(&b.nums).map(|(x, y)| x + y).collect();
            let mut z = Cyclotomic { conductor: a.conductor, nums, den: a.den };
            z.normalize();
            return z;
        }
        let nums = a.nums.iter().zip(&b.nums).map(|(x, y)| x * &b.den + y * &a.den).collect();
        let mut z = Cyclotomic { conductor: a.conductor, nums, den: &a.den * &b.den };
        z.normalize();
        z
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            nums: self.nums.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::align(self, rhs);
        if a.is_zero() || b.is_zero() {
            return Cyclotomic::zero(a.conductor);
        }
        let mut raw = vec![BigInt::zero(); a.nums.len() + b.nums.len() - 1];
        for (i, x) in a.nums.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.nums.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_raw(a.conductor, raw, &a.den * &b.den)
    }
}

/// Dense polynomials over Q, lowest degree first.
mod qpoly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
    }

    fn sub_scaled_shift(p: &mut Vec<BigRational>, q: &[BigRational], c: &BigRational, shift: usize) {
        if p.len() < q.len() + shift {
            p.resize(q.len() + shift, BigRational::zero());
        }
        for (i, x) in q.iter().enumerate() {
            p[i + shift] -= c * x;
        }
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if rem.len() < b.len() {
            return (vec![BigRational::zero()], rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] / &lead;
            if !c.is_zero() {
                sub_scaled_shift(&mut rem, b, &c, i);
            }
            quot[i] = c;
        }
        rem.truncate(db.max(1));
        trim(&mut rem);
        (quot, rem)
    }

    /// Returns (g, s) with s·a ≡ g (mod b) and g = gcd(a, b) up to units.
    pub fn ext_gcd_first(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let (mut r0, mut r1) = (b.to_vec(), a.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::from_integer(1.into())]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = divmod(&r0, &r1);
            let qs = mul(&q, &s1);
            let mut s2 = s0.clone();
            sub_scaled_shift(&mut s2, &qs, &BigRational::from_integer(1.into()), 0);
            trim(&mut s2);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let phi105 = cyclotomic_polynomial(105);
        assert_eq!(phi105.len() - 1, 48);
        assert!(phi105.contains(&-2));
    }

    #[test]
    fn roots_of_unity_relations() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::from_integer(4, -1));
        let z3 = Cyclotomic::zeta(3);
        let sum = &(&Cyclotomic::one(3) + &z3) + &(&z3 * &z3);
        assert!(sum.is_zero());
        assert!(Cyclotomic::zeta(7).pow(7).is_one());
    }

    #[test]
    fn square_roots() {
        let r2 = Cyclotomic::sqrt2();
        assert_eq!(&r2 * &r2, Cyclotomic::from_integer(8, 2));
        let r5 = Cyclotomic::sqrt5();
        assert_eq!(&r5 * &r5, Cyclotomic::from_integer(5, 5));
    }

    #[test]
    fn lift_is_compatible() {
        let z4 = Cyclotomic::zeta(4);
        assert_eq!(z4.lift(12).unwrap(), Cyclotomic::zeta_pow(12, 3));
        assert!(matches!(z4.lift(6), Err(Error::BadConductor { .. })));
        // mixed conductors combine over the lcm
        let prod = &Cyclotomic::zeta(4) * &Cyclotomic::zeta(3);
        assert_eq!(prod, Cyclotomic::zeta_pow(12, 7));
    }

    #[test]
    fn inverse_and_zero() {
        assert_eq!(Cyclotomic::zero(5).inverse(), Err(Error::DivisionByZero));
        let x = &Cyclotomic::one(7) - &Cyclotomic::zeta(7);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
    }

    fn arb_cyclotomic(n: u32) -> impl Strategy<Value = Cyclotomic> {
        let deg = cyclotomic_polynomial(n).len() - 1;
        (prop::collection::vec(-6i64..6, deg), 1i64..5).prop_map(move |(c, d)| {
            let raw = c.into_iter().map(BigInt::from).collect();
            Cyclotomic::from_raw(n, raw, BigInt::from(d))
        })
    }

    proptest! {
        #[test]
        fn field_axioms_q_zeta_15(a in arb_cyclotomic(15), b in arb_cyclotomic(15), c in arb_cyclotomic(15)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn lift_is_a_ring_map(a in arb_cyclotomic(6), b in arb_cyclotomic(6)) {
            let m = 30;
            prop_assert_eq!((&a * &b).lift(m).unwrap(), &a.lift(m).unwrap() * &b.lift(m).unwrap());
            prop_assert_eq!((&a + &b).lift(m).unwrap(), &a.lift(m).unwrap() + &b.lift(m).unwrap());
        }
    }
}
