//! Sparse multivariate polynomials.
//!
//! Terms are kept sorted strictly descending in the ring's monomial order with
//! no zero coefficients, so equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::field::Field;
use super::monomial;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    coeffs: Vec<F::Elem>,
    /// `nvars` exponents per term, concatenated.
    exps: Vec<u8>,
}

/// The four arithmetic operations of [`Polynomial::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs && self.exps == other.exps
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial { ring: ring.clone(), coeffs: Vec::new(), exps: Vec::new() }
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        let n = ring.nvars();
        Self::monomial(ring, c, vec![0; n])
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Ring<F>, i: usize) -> Self {
        let mut e = vec![0u8; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, ring.field().one(), e)
    }

    pub fn monomial(ring: &Ring<F>, c: F::Elem, exps: Vec<u8>) -> Self {
        assert_eq!(exps.len(), ring.nvars());
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), coeffs: vec![c], exps }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(ring: &Ring<F>, terms: I) -> Self
    where
        I: IntoIterator<Item = (F::Elem, Vec<u8>)>,
    {
        let field = ring.field();
        let mut acc: FxHashMap<Vec<u8>, F::Elem> = FxHashMap::default();
        for (c, e) in terms {
            assert_eq!(e.len(), ring.nvars());
            if field.is_zero(&c) {
                continue;
            }
            match acc.get_mut(&e) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        let mut terms: Vec<(Vec<u8>, F::Elem)> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.exps.extend_from_slice(&e);
            p.coeffs.push(c);
        }
        p
    }

    /// Assembles a polynomial from terms already sorted and nonzero.
    pub(crate) fn from_sorted(ring: &Ring<F>, coeffs: Vec<F::Elem>, exps: Vec<u8>) -> Self {
        debug_assert_eq!(exps.len(), coeffs.len() * ring.nvars());
        let p = Polynomial { ring: ring.clone(), coeffs, exps };
        debug_assert!(p.check_invariants());
        p
    }

    pub(crate) fn check_invariants(&self) -> bool {
        let f = self.ring.field();
        if self.coeffs.iter().any(|c| f.is_zero(c)) {
            return false;
        }
        (1..self.len()).all(|i| self.ring.cmp_monomials(self.exponent(i - 1), self.exponent(i)) == Ordering::Greater)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.len() == 1 && self.exps.iter().all(|&e| e == 0))
    }

    pub fn coeff(&self, i: usize) -> &F::Elem {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn exponent(&self, i: usize) -> &[u8] {
        let n = self.ring.nvars();
        &self.exps[i * n..(i + 1) * n]
    }

    pub(crate) fn raw_exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn terms(&self) -> impl Iterator<Item = (&F::Elem, &[u8])> + '_ {
        let n = self.ring.nvars();
        self.coeffs.iter().zip(self.exps.chunks_exact(n.max(1)))
    }

    pub fn leading_monomial(&self) -> Option<&[u8]> {
        if self.is_zero() {
            None
        } else {
            Some(self.exponent(0))
        }
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.first()
    }

    /// Coefficient of a given monomial (zero when absent).
    pub fn coefficient_of(&self, e: &[u8]) -> F::Elem {
        // binary search on the descending term list
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.ring.cmp_monomials(self.exponent(mid), e) {
                Ordering::Equal => return self.coeffs[mid].clone(),
                Ordering::Greater => lo = mid + 1,
                Ordering::Less => hi = mid,
            }
        }
        self.field().zero()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms().map(|(_, e)| monomial::degree(e)).max()
    }

    /// Degree in the ring's grading, if every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let w = self.ring.grading();
        let mut it = self.terms().map(|(_, e)| monomial::weighted_degree(e, w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Largest graded degree of a term (the sugar of the polynomial).
    pub fn graded_degree(&self) -> u32 {
        let w = self.ring.grading();
        self.terms().map(|(_, e)| monomial::weighted_degree(e, w)).max().unwrap_or(0)
    }

    /// Variables appearing with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n).filter(|&v| self.terms().any(|(_, e)| e[v] > 0)).collect()
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.checked_add(other),
            ArithOp::Sub => self.checked_sub(other),
            ArithOp::Mul => self.checked_mul(other),
            ArithOp::ExactDiv => self.exact_div(other),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring, "add")?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring, "sub")?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring, "mul")?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let f = self.ring.field();
        let n = self.ring.nvars();
        let mut coeffs = Vec::with_capacity(self.len() + other.len());
        let mut exps = Vec::with_capacity((self.len() + other.len()) * n);
        let (mut i, mut j) = (0, 0);
        while i < self.len() || j < other.len() {
            let ord = if i == self.len() {
                Ordering::Less
            } else if j == other.len() {
                Ordering::Greater
            } else {
                self.ring.cmp_monomials(self.exponent(i), other.exponent(j))
            };
            match ord {
                Ordering::Greater => {
                    coeffs.push(self.coeffs[i].clone());
                    exps.extend_from_slice(self.exponent(i));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { f.neg(&other.coeffs[j]) } else { other.coeffs[j].clone() };
                    coeffs.push(c);
                    exps.extend_from_slice(other.exponent(j));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        f.sub(&self.coeffs[i], &other.coeffs[j])
                    } else {
                        f.add(&self.coeffs[i], &other.coeffs[j])
                    };
                    if !f.is_zero(&c) {
                        coeffs.push(c);
                        exps.extend_from_slice(self.exponent(i));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), coeffs, exps }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.len() == 1 {
            return self.mul_term(&other.coeffs[0], other.exponent(0));
        }
        if self.len() == 1 {
            return other.mul_term(&self.coeffs[0], self.exponent(0));
        }
        let f = self.ring.field();
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (a, ea) in self.terms() {
            for (b, eb) in other.terms() {
                terms.push((f.mul(a, b), monomial::mul(ea, eb)));
            }
        }
        Self::from_terms(&self.ring, terms)
    }

    /// `c * x^e * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, c: &F::Elem, e: &[u8]) -> Self {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let n = self.ring.nvars();
        let mut exps = Vec::with_capacity(self.exps.len());
        for (_, t) in self.terms() {
            monomial::mul_into(t, e, &mut exps);
        }
        let coeffs = self.coeffs.iter().map(|a| f.mul(a, c)).collect();
        debug_assert_eq!(exps.len(), self.len() * n);
        Polynomial { ring: self.ring.clone(), coeffs, exps }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect(),
            exps: self.exps.clone(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc).expect("nonzero")),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Exact quotient `self / g`; errors when the division leaves a remainder.
    pub fn exact_div(&self, g: &Self) -> Result<Self> {
        self.ring.check_same(&g.ring, "exact_div")?;
        let f = self.ring.field();
        let Some(glm) = g.leading_monomial() else {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        };
        let glc_inv = f.inv(g.leading_coeff().unwrap()).unwrap();
        let mut rem = self.clone();
        let mut quotient_terms = Vec::new();
        while let Some(rlm) = rem.leading_monomial() {
            if !monomial::divides(glm, rlm) {
                return Err(Error::NotDivisible(format!("{self} by {g}")));
            }
            let e = monomial::quotient(rlm, glm);
            let c = f.mul(rem.leading_coeff().unwrap(), &glc_inv);
            rem = rem.merge(&g.mul_term(&c, &e), true);
            quotient_terms.push((c, e));
        }
        Ok(Self::from_terms(&self.ring, quotient_terms))
    }

    /// Divides by the largest power of `x_v` dividing every term; returns the power.
    pub fn strip_variable(&self, v: usize) -> (Self, u8) {
        let k = self.terms().map(|(_, e)| e[v]).min().unwrap_or(0);
        if k == 0 {
            return (self.clone(), 0);
        }
        let n = self.ring.nvars();
        let mut exps = self.exps.clone();
        for t in 0..self.len() {
            exps[t * n + v] -= k;
        }
        (Polynomial { ring: self.ring.clone(), coeffs: self.coeffs.clone(), exps }, k)
    }

    pub fn derivative(&self, v: usize) -> Self {
        let f = self.ring.field();
        let terms = self.terms().filter(|(_, e)| e[v] > 0).map(|(c, e)| {
            let mut e2 = e.to_vec();
            e2[v] -= 1;
            (f.mul(c, &f.from_i64(e[v] as i64)), e2)
        });
        Self::from_terms(&self.ring, terms)
    }

    /// Value at a point of affine space.
    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.ring.nvars());
        let f = self.ring.field();
        let mut acc = f.zero();
        for (c, e) in self.terms() {
            let mut t = c.clone();
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = f.mul(&t, &f.pow(&point[v], k as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `x_i -> images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let target = images[0].ring().clone();
        for img in images {
            target.check_same(img.ring(), "substitute")?;
        }
        let f = target.field();
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(&target)]; images.len()];
        let mut terms: FxHashMap<Vec<u8>, F::Elem> = FxHashMap::default();
        for (c, e) in self.terms() {
            let mut t = Polynomial::constant(&target, c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[v].len() <= k as usize {
                    let next = powers[v].last().unwrap().mul_unchecked(&images[v]);
                    powers[v].push(next);
                }
                t = t.mul_unchecked(&powers[v][k as usize]);
            }
            for (tc, te) in t.terms() {
                match terms.get_mut(te) {
                    Some(acc) => *acc = f.add(acc, tc),
                    None => {
                        terms.insert(te.to_vec(), tc.clone());
                    }
                }
            }
        }
        Ok(Polynomial::from_terms(&target, terms.into_iter().map(|(e, c)| (c, e))))
    }

    /// Moves the polynomial to another ring with the same field, sending
    /// variable `i` to variable `var_map[i]` of the target.
    pub fn map_variables(&self, target: &Ring<F>, var_map: &[usize]) -> Polynomial<F> {
        assert_eq!(var_map.len(), self.ring.nvars());
        let m = target.nvars();
        let terms = self.terms().map(|(c, e)| {
            let mut t = vec![0u8; m];
            for (i, &k) in e.iter().enumerate() {
                t[var_map[i]] += k;
            }
            (c.clone(), t)
        });
        Polynomial::from_terms(target, terms)
    }

    /// Re-sorts the terms for a ring with the same variables but another order or grading.
    pub fn reorder(&self, target: &Ring<F>) -> Polynomial<F> {
        assert_eq!(target.nvars(), self.ring.nvars());
        Polynomial::from_terms(target, self.terms().map(|(c, e)| (c.clone(), e.to_vec())))
    }

    /// Applies a coefficient map into another field (e.g. reduction mod p).
    pub fn map_coefficients<G: Field>(
        &self,
        target: &Ring<G>,
        mut f: impl FnMut(&F::Elem) -> Option<G::Elem>,
    ) -> Option<Polynomial<G>> {
        assert_eq!(target.nvars(), self.ring.nvars());
        let mut terms = Vec::with_capacity(self.len());
        for (c, e) in self.terms() {
            terms.push((f(c)?, e.to_vec()));
        }
        Some(Polynomial::from_terms(target, terms))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::algebra::text::format_polynomial(self))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    /// Panics on ring mismatch; use [`Polynomial::checked_add`] to get an error.
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
            exps: self.exps.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    fn ring() -> Ring<PrimeField> {
        Ring::from_names(PrimeField::new(113).unwrap(), &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let (x, y) = (r.var(0), r.var(1));
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 2);
        assert!(lhs.check_invariants());
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let t = &(&y * &z) - &(&x * &x);
        let prod = &x * &t;
        assert_eq!(prod.exact_div(&x).unwrap(), t);
        assert!(matches!((&x + &y).exact_div(&z), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = ring();
        let s = Ring::from_names(PrimeField::new(113).unwrap(), &["a", "b"]).unwrap();
        assert!(matches!(r.var(0).checked_add(&s.var(0)), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn homogeneity() {
        let r = ring();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        assert_eq!((&(&x * &y) + &(&z * &z)).homogeneous_degree(), Some(2));
        assert_eq!((&x + &(&y * &z)).homogeneous_degree(), None);
    }

    #[test]
    fn substitution_composes() {
        let r = ring();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        // (yz, xz, xy) composed with itself is xyz * (x, y, z)
        let sigma = vec![&y * &z, &x * &z, &x * &y];
        let xyz = &(&x * &y) * &z;
        for (i, g) in sigma.iter().enumerate() {
            let h = g.substitute(&sigma).unwrap();
            assert_eq!(h, &xyz * &r.var(i));
        }
    }

    #[test]
    fn derivative_and_evaluate() {
        let r = ring();
        let (x, y) = (r.var(0), r.var(1));
        let f = &(&x * &x) + &(&x * &y);
        assert_eq!(f.derivative(0), &(&x + &x) + &y);
        assert_eq!(f.evaluate(&[2, 3, 0]), 10);
    }
}
