//! Exact arithmetic on roots of unity and cyclotomic numbers.
//!
//! A [`RootOfUnity`] is `e^{2πiq}` for a reduced rational `q ∈ [0, 1)`. A
//! [`Cyclotomic`] is a finite formal sum `Σ c_j ζ_j` of roots of unity with
//! rational coefficients; products are sparse convolutions, and equality is
//! decided after reducing modulo the cyclotomic polynomial of the common order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Small exact rationals (ages, degrees, dimensions).
pub type Rational = num_rational::Ratio<i64>;

/// `e^{2πi·num/den}` with `gcd(num, den) = 1` and `0 ≤ num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    /// `e^{2πik/n}`.
    pub fn new(k: i64, n: u64) -> Self {
        assert!(n > 0, "root of unity with zero denominator");
        let r = k.rem_euclid(n as i64) as u64;
        let g = r.gcd(&n);
        RootOfUnity { num: r / g, den: n / g }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Multiplicative order.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    pub fn inv(self) -> Self {
        if self.num == 0 {
            self
        } else {
            RootOfUnity { num: self.den - self.num, den: self.den }
        }
    }

    pub fn pow(self, k: i64) -> Self {
        let e = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        RootOfUnity::new(e as i64, self.den)
    }

    /// The exponent `k` with `self = e^{2πik/n}`, if `n` is a multiple of the order.
    pub fn exponent_mod(self, n: u64) -> Option<u64> {
        n.is_multiple_of(self.den).then(|| self.num * (n / self.den))
    }

    /// The exponent as an exact rational in `[0, 1)`.
    pub fn as_fraction(self) -> Rational {
        Rational::new(self.num as i64, self.den as i64)
    }
}

impl Default for RootOfUnity {
    fn default() -> Self {
        Self::ONE
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let den = self.den.lcm(&rhs.den);
        let k = self.num * (den / self.den) + rhs.num * (den / rhs.den);
        RootOfUnity::new((k % den) as i64, den)
    }
}

impl core::iter::Product for RootOfUnity {
    fn product<I: Iterator<Item = RootOfUnity>>(iter: I) -> Self {
        iter.fold(RootOfUnity::ONE, |a, b| a * b)
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/{})", self.num, self.den)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/{})", self.num, self.den)
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut m = n;
    let mut result = n;
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

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n > 0);
    // Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}
    let mut num: Vec<i64> = vec![1];
    let mut den: Vec<i64> = vec![1];
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let factor = {
            let mut f = vec![0i64; d as usize + 1];
            f[0] = -1;
            f[d as usize] = 1;
            f
        };
        match mobius(n / d) {
            1 => num = poly_mul(&num, &factor),
            -1 => den = poly_mul(&den, &factor),
            _ => {}
        }
    }
    poly_exact_div(&num, &den)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a polynomial with leading coefficient ±1.
fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    debug_assert!(lead == 1 || lead == -1);
    let mut q = vec![0i64; rem.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl - 1] * lead;
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An element of a cyclotomic field: `Σ c_ζ ζ` over finitely many roots of unity.
///
/// The term map is not a canonical form (different term maps may represent the
/// same number); [`Cyclotomic::reduced`] gives the canonical coordinates.
#[derive(Clone, Default)]
pub struct Cyclotomic {
    terms: BTreeMap<RootOfUnity, BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_root(RootOfUnity::ONE)
    }

    pub fn from_root(z: RootOfUnity) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(z, BigRational::one());
        Cyclotomic { terms }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut c = Self::zero();
        c.add_term(RootOfUnity::ONE, q);
        c
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn add_term(&mut self, z: RootOfUnity, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(z).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&z);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RootOfUnity, &BigRational)> {
        self.terms.iter()
    }

    /// Least common multiple of the orders of the roots that occur.
    pub fn conductor_bound(&self) -> u64 {
        self.terms.keys().fold(1u64, |k, z| k.lcm(&z.den))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic { terms: self.terms.iter().map(|(z, c)| (*z, c * q)).collect() }
    }

    pub fn mul_root(&self, w: RootOfUnity) -> Self {
        Cyclotomic { terms: self.terms.iter().map(|(z, c)| (*z * w, c.clone())).collect() }
    }

    /// Canonical coordinates: `(K, c)` with `self = Σ_{j<φ(K)} c_j e^{2πij/K}`
    /// and `K` the lcm of the orders of the occurring roots.
    pub fn reduced(&self) -> (u64, Vec<BigRational>) {
        let k = self.conductor_bound();
        let mut dense = vec![BigRational::zero(); k as usize];
        for (z, c) in &self.terms {
            let j = z.exponent_mod(k).unwrap() as usize;
            dense[j] += c;
        }
        (k, reduce_mod_cyclotomic(dense, k))
    }

    fn reduced_at(&self, k: u64) -> Vec<BigRational> {
        let mut dense = vec![BigRational::zero(); k as usize];
        for (z, c) in &self.terms {
            let j = z.exponent_mod(k).expect("order divides k") as usize;
            dense[j] += c;
        }
        reduce_mod_cyclotomic(dense, k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.reduced().1.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the number is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        let (_, c) = self.reduced();
        if c.iter().skip(1).all(|x| x.is_zero()) {
            Some(c.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// A single root of unity, if the number is one.
    pub fn to_root(&self) -> Option<RootOfUnity> {
        let simplified = self.simplified();
        if simplified.terms.len() == 1 {
            let (z, c) = simplified.terms.iter().next().unwrap();
            if c.is_one() {
                return Some(*z);
            }
            if *c == -BigRational::one() {
                return Some(*z * RootOfUnity::minus_one());
            }
        }
        None
    }

    /// The number rewritten in its canonical coordinates.
    pub fn simplified(&self) -> Self {
        let (k, c) = self.reduced();
        let mut out = Self::zero();
        for (j, q) in c.into_iter().enumerate() {
            out.add_term(RootOfUnity::new(j as i64, k), q);
        }
        out
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let (z, c) = self.terms.iter().next().unwrap();
            return Some(Cyclotomic::from_root(z.inv()).scale(&c.recip()));
        }
        let (k, a) = self.reduced();
        let d = a.len();
        if a.iter().all(|x| x.is_zero()) {
            return None;
        }
        // Column j of the multiplication matrix is a·ζ^j reduced.
        let mut m = vec![vec![BigRational::zero(); d + 1]; d];
        for j in 0..d {
            let mut dense = vec![BigRational::zero(); k as usize];
            for (i, c) in a.iter().enumerate() {
                dense[(i + j) % k as usize] += c;
            }
            let col = reduce_mod_cyclotomic(dense, k);
            for i in 0..d {
                m[i][j] = col[i].clone();
            }
        }
        m[0][d] = BigRational::one();
        let x = solve_rational(m, d)?;
        let mut out = Self::zero();
        for (j, q) in x.into_iter().enumerate() {
            out.add_term(RootOfUnity::new(j as i64, k), q);
        }
        Some(out)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self * &inv)
    }

    /// Human-readable canonical form, e.g. `1/2 + -1/2*e(1/4)`.
    pub fn display_string(&self) -> String {
        if let Some(q) = self.to_rational() {
            return rational_string(&q);
        }
        let (k, c) = self.reduced();
        let parts: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(j, q)| {
                let z = RootOfUnity::new(j as i64, k);
                if z.is_one() {
                    rational_string(q)
                } else {
                    format!("{}*{}", rational_string(q), z)
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `p/q`, or `p` when the denominator is one.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn reduce_mod_cyclotomic(mut dense: Vec<BigRational>, k: u64) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(k);
    let deg = phi.len() - 1;
    for top in (deg..dense.len()).rev() {
        if dense[top].is_zero() {
            continue;
        }
        let c = core::mem::replace(&mut dense[top], BigRational::zero());
        let base = top - deg;
        for (j, &p) in phi.iter().enumerate().take(deg) {
            if p != 0 {
                dense[base + j] -= &c * BigRational::from_integer(BigInt::from(p));
            }
        }
    }
    dense.truncate(deg);
    dense
}

/// Solves the augmented `d × (d+1)` system; `None` if singular.
fn solve_rational(mut m: Vec<Vec<BigRational>>, d: usize) -> Option<Vec<BigRational>> {
    for col in 0..d {
        let pivot = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=d {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d].clone()).collect())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let k = self.conductor_bound().lcm(&other.conductor_bound());
        self.reduced_at(k) == other.reduced_at(k)
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({})", self.display_string())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_string())
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self += &rhs;
        self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        for (z, c) in &rhs.terms {
            self.add_term(*z, c.clone());
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { terms: self.terms.into_iter().map(|(z, c)| (z, -c)).collect() }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut out = self.clone();
        for (z, c) in &rhs.terms {
            out.add_term(*z, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut out = Cyclotomic::zero();
        for (z, c) in &self.terms {
            for (w, d) in &rhs.terms {
                out.add_term(*z * *w, c * d);
            }
        }
        out
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

/// Integer-weighted sum of roots of unity, for tight accumulation loops.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseSum {
    counts: BTreeMap<RootOfUnity, i64>,
}

impl PhaseSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: RootOfUnity) {
        self.add_count(z, 1);
    }

    pub fn add_count(&mut self, z: RootOfUnity, n: i64) {
        let e = self.counts.entry(z).or_insert(0);
        *e += n;
        if *e == 0 {
            self.counts.remove(&z);
        }
    }

    pub fn merge(&mut self, other: &PhaseSum) {
        for (z, n) in &other.counts {
            self.add_count(*z, *n);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let mut out = Cyclotomic::zero();
        for (z, n) in &self.counts {
            out.add_term(*z, BigRational::from_integer(BigInt::from(*n)));
        }
        out
    }
}

/// `1/n` as a big rational.
pub fn reciprocal(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n))
}

/// Convert a small rational to a big one.
pub fn big(q: Rational) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_reduce_and_multiply() {
        assert_eq!(RootOfUnity::new(2, 4), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::new(-1, 4), RootOfUnity::new(3, 4));
        assert_eq!(RootOfUnity::new(1, 4) * RootOfUnity::new(3, 4), RootOfUnity::ONE);
        assert_eq!(RootOfUnity::new(1, 6) * RootOfUnity::new(1, 3), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::new(1, 3).inv(), RootOfUnity::new(2, 3));
        assert_eq!(RootOfUnity::new(1, 8).pow(-3), RootOfUnity::new(5, 8));
        assert!(RootOfUnity::new(1, 4) < RootOfUnity::new(1, 2));
        assert_eq!(RootOfUnity::new(1, 4).exponent_mod(8), Some(2));
        assert_eq!(RootOfUnity::new(1, 4).exponent_mod(6), None);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, totient(n));
        }
    }

    #[test]
    fn sums_of_roots() {
        // 1 + ζ3 + ζ3² = 0
        let mut s = PhaseSum::new();
        for k in 0..3 {
            s.add(RootOfUnity::new(k, 3));
        }
        assert!(s.to_cyclotomic().is_zero());
        // i + i = 2i ; i * i = -1
        let i = Cyclotomic::from_root(RootOfUnity::new(1, 4));
        assert_eq!(&i * &i, Cyclotomic::from_integer(-1));
        assert_eq!((&i * &i).to_rational(), Some(BigRational::from_integer((-1).into())));
        // ζ8 + ζ8^7 = √2, (√2)² = 2
        let r2 = &Cyclotomic::from_root(RootOfUnity::new(1, 8)) + &Cyclotomic::from_root(RootOfUnity::new(7, 8));
        assert!(r2.to_rational().is_none());
        assert_eq!(&r2 * &r2, Cyclotomic::from_integer(2));
        assert_eq!(Cyclotomic::from_root(RootOfUnity::new(1, 2)).to_root(), Some(RootOfUnity::minus_one()));
    }

    #[test]
    fn inverses() {
        let r2 = &Cyclotomic::from_root(RootOfUnity::new(1, 8)) + &Cyclotomic::from_root(RootOfUnity::new(7, 8));
        let inv = r2.inverse().unwrap();
        assert_eq!(&r2 * &inv, Cyclotomic::one());
        let x = &Cyclotomic::from_integer(3) + &Cyclotomic::from_root(RootOfUnity::new(1, 3));
        assert_eq!(&x * &x.inverse().unwrap(), Cyclotomic::one());
        assert!(Cyclotomic::zero().inverse().is_none());
    }
}
