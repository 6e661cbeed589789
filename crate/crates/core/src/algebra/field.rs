//! Coefficient fields: the rationals and prime fields `Z/p`.
//!
//! Every computation in the crate is exact. Prime-field elements are stored
//! as `u32` residues in `[0, p)`; rationals use arbitrary precision.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field a ring is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

/// A sparse row: strictly increasing column indices with nonzero values.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseRow<E> {
    pub cols: Vec<u32>,
    pub vals: Vec<E>,
}

impl<E> SparseRow<E> {
    pub fn new() -> Self {
        SparseRow { cols: Vec::new(), vals: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn lead(&self) -> Option<u32> {
        self.cols.first().copied()
    }
}

/// Marker for "no pivot in this column".
pub const NO_PIVOT: u32 = u32::MAX;

/// Exact field arithmetic used by polynomials, Gröbner bases and linear algebra.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// `num / den`; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Uniform element (prime fields) or a small random integer (rationals).
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Integer value if the element is one (symmetric lift for prime fields).
    fn to_integer(&self, a: &Self::Elem) -> Option<BigInt>;
    /// Canonical text: symmetric residues for prime fields, `a` or `a/b` for rationals.
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn characteristic(&self) -> u64 {
        match self.spec() {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p as u64,
        }
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Reduces `row` by pivot rows whose leading entry is 1.
    ///
    /// `pivot_of[c]` is the index into `pivots` of the row leading at column
    /// `c`, or [`NO_PIVOT`]. Columns are scanned left to right, so pivots need
    /// not be mutually reduced. The result is not normalized.
    fn reduce_row(
        &self,
        row: &SparseRow<Self::Elem>,
        pivot_of: &[u32],
        pivots: &[SparseRow<Self::Elem>],
    ) -> SparseRow<Self::Elem> {
        let ncols = pivot_of.len();
        let Some(start) = row.lead() else {
            return SparseRow::new();
        };
        let mut dense: Vec<Self::Elem> = vec![self.zero(); ncols];
        for (c, v) in row.cols.iter().zip(&row.vals) {
            dense[*c as usize] = v.clone();
        }
        let mut out = SparseRow::new();
        for c in start as usize..ncols {
            if self.is_zero(&dense[c]) {
                continue;
            }
            let piv = pivot_of[c];
            if piv == NO_PIVOT {
                out.cols.push(c as u32);
                out.vals.push(std::mem::replace(&mut dense[c], self.zero()));
                continue;
            }
            let factor = self.neg(&dense[c]);
            let prow = &pivots[piv as usize];
            for (pc, pv) in prow.cols.iter().zip(&prow.vals).skip(1) {
                let t = self.mul(&factor, pv);
                let slot = &mut dense[*pc as usize];
                *slot = self.add(slot, &t);
            }
            dense[c] = self.zero();
        }
        out
    }

    /// Scales a row so its leading value is 1.
    fn normalize_row(&self, row: &mut SparseRow<Self::Elem>) {
        if let Some(lead) = row.vals.first() {
            if !self.is_one(lead) {
                let inv = self.inv(lead).expect("nonzero lead");
                for v in row.vals.iter_mut() {
                    *v = self.mul(v, &inv);
                }
            }
        }
    }
}

/// `Z/p` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= (1 << 31) {
            return Err(Error::InvalidArgument(format!(
                "prime modulus {p} does not fit the 31-bit residue representation"
            )));
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    fn mulmod(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn inv_u32(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Some(t.rem_euclid(self.p as i64) as u32)
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mulmod(*a, *b)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.inv_u32(*a)
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits")
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let d = self.from_bigint(den);
        self.inv_u32(d).map(|di| self.mulmod(self.from_bigint(num), di))
    }
    fn random(&self, rng: &mut dyn RngCore) -> u32 {
        // rejection sampling keeps the draw uniform
        let p = self.p as u64;
        let zone = (u32::MAX as u64 + 1) / p * p;
        loop {
            let v = rng.next_u32() as u64;
            if v < zone {
                return (v % p) as u32;
            }
        }
    }
    fn to_integer(&self, a: &u32) -> Option<BigInt> {
        let v = *a as i64;
        let p = self.p as i64;
        Some(BigInt::from(if v > p / 2 { v - p } else { v }))
    }
    fn format(&self, a: &u32) -> String {
        self.to_integer(a).unwrap().to_string()
    }

    fn reduce_row(&self, row: &SparseRow<u32>, pivot_of: &[u32], pivots: &[SparseRow<u32>]) -> SparseRow<u32> {
        let Some(start) = row.lead() else {
            return SparseRow::new();
        };
        let p = self.p as u64;
        let ncols = pivot_of.len();
        // number of products p^2 that can be accumulated before overflow
        let headroom = (u64::MAX / ((p - 1) * (p - 1)).max(1)).saturating_sub(1).max(1);
        DENSE_SCRATCH.with(|cell| {
            let mut dense = cell.borrow_mut();
            if dense.len() < ncols {
                dense.resize(ncols, 0);
            }
            for (c, v) in row.cols.iter().zip(&row.vals) {
                dense[*c as usize] = *v as u64;
            }
            let mut pending: u64 = 1;
            let mut out = SparseRow::new();
            for c in start as usize..ncols {
                let raw = dense[c];
                if raw == 0 {
                    continue;
                }
                let v = raw % p;
                dense[c] = 0;
                if v == 0 {
                    continue;
                }
                let piv = pivot_of[c];
                if piv == NO_PIVOT {
                    out.cols.push(c as u32);
                    out.vals.push(v as u32);
                    continue;
                }
                if pending >= headroom {
                    for slot in dense[c + 1..ncols].iter_mut() {
                        *slot %= p;
                    }
                    pending = 1;
                }
                let factor = p - v;
                let prow = &pivots[piv as usize];
                for (pc, pv) in prow.cols[1..].iter().zip(&prow.vals[1..]) {
                    dense[*pc as usize] += factor * (*pv as u64);
                }
                pending += 1;
            }
            out
        })
    }
}

thread_local! {
    static DENSE_SCRATCH: std::cell::RefCell<Vec<u64>> = const { std::cell::RefCell::new(Vec::new()) };
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let v = (rng.next_u32() % 201) as i64 - 100;
        self.from_i64(v)
    }
    fn to_integer(&self, a: &BigRational) -> Option<BigInt> {
        if a.is_integer() {
            Some(a.numer().clone())
        } else {
            None
        }
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n` (used to pick a second prime).
pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// Reduces a rational number to a prime field; `None` when `p` divides the denominator.
pub fn rational_to_prime(field: &PrimeField, a: &BigRational) -> Option<u32> {
    field.from_ratio(a.numer(), a.denom())
}

/// `true` when the rational is an integer with absolute value below `2^63`.
pub fn small_integer(a: &BigRational) -> Option<i64> {
    if a.is_integer() && a.numer().abs() < BigInt::from(i64::MAX) {
        a.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two_mod_113() {
        let f = PrimeField::new(113).unwrap();
        assert_eq!(f.mul(&57, &2), 1);
        assert_eq!(f.inv(&2), Some(57));
    }

    #[test]
    fn rejects_composite_and_zero() {
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(31991).is_ok());
    }

    #[test]
    fn every_nonzero_residue_is_invertible() {
        let f = PrimeField::new(113).unwrap();
        for a in 1..113u32 {
            let b = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &b), 1);
        }
    }

    #[test]
    fn symmetric_formatting() {
        let f = PrimeField::new(31991).unwrap();
        assert_eq!(f.format(&f.from_i64(-3)), "-3");
        assert_eq!(f.format(&5), "5");
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(31991));
        assert!(is_prime(2147483647));
        assert_eq!(next_prime(31991), 32003);
    }

    #[test]
    fn fast_row_reduction_matches_generic() {
        // the prime-field override must agree with the trait's generic path
        #[derive(Clone, Debug, PartialEq, Eq)]
        struct Slow(PrimeField);
        impl Field for Slow {
            type Elem = u32;
            fn spec(&self) -> FieldSpec { self.0.spec() }
            fn zero(&self) -> u32 { 0 }
            fn one(&self) -> u32 { 1 }
            fn is_zero(&self, a: &u32) -> bool { *a == 0 }
            fn add(&self, a: &u32, b: &u32) -> u32 { self.0.add(a, b) }
            fn sub(&self, a: &u32, b: &u32) -> u32 { self.0.sub(a, b) }
            fn neg(&self, a: &u32) -> u32 { self.0.neg(a) }
            fn mul(&self, a: &u32, b: &u32) -> u32 { self.0.mul(a, b) }
            fn inv(&self, a: &u32) -> Option<u32> { self.0.inv(a) }
            fn from_i64(&self, n: i64) -> u32 { self.0.from_i64(n) }
            fn from_bigint(&self, n: &BigInt) -> u32 { self.0.from_bigint(n) }
            fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Option<u32> { self.0.from_ratio(n, d) }
            fn random(&self, rng: &mut dyn RngCore) -> u32 { self.0.random(rng) }
            fn to_integer(&self, a: &u32) -> Option<BigInt> { self.0.to_integer(a) }
            fn format(&self, a: &u32) -> String { self.0.format(a) }
        }
        for p in [113u32, 2147483647] {
            let fast = PrimeField::new(p).unwrap();
            let slow = Slow(fast);
            let pivots = vec![
                SparseRow { cols: vec![1, 3, 4], vals: vec![1, p - 1, 7] },
                SparseRow { cols: vec![3, 4], vals: vec![1, 5] },
            ];
            let mut pivot_of = vec![NO_PIVOT; 6];
            pivot_of[1] = 0;
            pivot_of[3] = 1;
            let row = SparseRow { cols: vec![0, 1, 2, 3, 5], vals: vec![2, p - 3, 9, 4, 1] };
            assert_eq!(fast.reduce_row(&row, &pivot_of, &pivots), slow.reduce_row(&row, &pivot_of, &pivots));
        }
    }
}
