//! Hilbert series, dimension, degree and Hilbert polynomial of `R/I` for a
//! standard graded ring, computed from the leading monomials of a Gröbner basis.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::monomial;

/// Numerator `N(t)` of `HS(R/M) = N(t) / (1-t)^n` for a monomial ideal `M`.
pub fn series_numerator(gens: &[Vec<u8>], nvars: usize) -> Vec<i128> {
    let mut gens: Vec<Vec<u8>> = gens.to_vec();
    minimalize(&mut gens);
    let mut n = numerator_rec(gens, nvars);
    trim(&mut n);
    n
}

fn trim(p: &mut Vec<i128>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

/// Removes generators divisible by others and duplicates.
pub fn minimalize(gens: &mut Vec<Vec<u8>>) {
    gens.sort_by_key(|g| monomial::degree(g));
    gens.dedup();
    let mut keep: Vec<Vec<u8>> = Vec::with_capacity(gens.len());
    for g in gens.drain(..) {
        if !keep.iter().any(|k| monomial::divides(k, &g)) {
            keep.push(g);
        }
    }
    *gens = keep;
}

fn numerator_rec(gens: Vec<Vec<u8>>, nvars: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Vec::new();
    }
    // pairwise coprime generators: the numerator factors
    let mut used = vec![false; nvars];
    let mut coprime = true;
    'outer: for g in &gens {
        for (v, &e) in g.iter().enumerate() {
            if e > 0 {
                if used[v] {
                    coprime = false;
                    break 'outer;
                }
                used[v] = true;
            }
        }
    }
    if coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            let d = monomial::degree(g) as usize;
            let mut f = vec![0i128; d + 1];
            f[0] = 1;
            f[d] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // split off generators that are single variables
    if let Some(pos) = gens.iter().position(|g| monomial::degree(g) == 1) {
        let v = gens[pos].iter().position(|&e| e == 1).unwrap();
        let rest: Vec<Vec<u8>> = gens
            .iter()
            .enumerate()
            .filter(|(i, g)| *i != pos && g[v] == 0)
            .map(|(_, g)| g.clone())
            .collect();
        let sub = numerator_rec(rest, nvars);
        return poly_mul(&sub, &[1, -1]);
    }
    // pivot on the variable occurring in the most generators
    let mut count = vec![0usize; nvars];
    for g in &gens {
        for (v, &e) in g.iter().enumerate() {
            if e > 0 {
                count[v] += 1;
            }
        }
    }
    let v = (0..nvars).max_by_key(|&v| count[v]).unwrap();
    let mut exps: Vec<u8> = gens.iter().map(|g| g[v]).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    // x_v^e must stay outside M, or M + (x_v^e) would not shrink the problem
    let pure_power = gens
        .iter()
        .filter(|g| g.iter().enumerate().all(|(u, &k)| u == v || k == 0))
        .map(|g| g[v])
        .min()
        .unwrap_or(u8::MAX);
    let e = exps[exps.len() / 2].min(pure_power - 1).max(1);
    let mut pivot = vec![0u8; nvars];
    pivot[v] = e;

    // N(M) = N(M + (p)) + t^deg(p) N(M : p)
    let mut plus: Vec<Vec<u8>> = gens.iter().filter(|g| g[v] < e).cloned().collect();
    plus.push(pivot.clone());
    minimalize(&mut plus);
    let mut colon: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[v] = h[v].saturating_sub(e);
            h
        })
        .collect();
    minimalize(&mut colon);
    let mut out = numerator_rec(plus, nvars);
    let c = numerator_rec(colon, nvars);
    poly_add_shifted(&mut out, &c, e as usize);
    trim(&mut out);
    out
}

/// Dimension, degree and Hilbert polynomial of a graded quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// Number of variables of the ambient ring.
    pub nvars: usize,
    /// Numerator of the Hilbert series over `(1-t)^nvars`.
    pub numerator: Vec<i128>,
    /// Krull dimension minus one; `-1` for the empty scheme.
    pub proj_dim: i64,
    pub degree: i128,
    /// `a_j` with `P(t) = sum_j a_j * binom(t + j, j)`, for `j = 0..=proj_dim`.
    pub binomial_coeffs: Vec<i128>,
    /// The Hilbert function equals the Hilbert polynomial from this degree on.
    pub regularity_bound: i64,
}

impl HilbertData {
    pub fn from_numerator(numerator: Vec<i128>, nvars: usize) -> Self {
        if numerator.is_empty() {
            return HilbertData {
                nvars,
                numerator,
                proj_dim: -1,
                degree: 0,
                binomial_coeffs: Vec::new(),
                regularity_bound: 0,
            };
        }
        // strip factors (1 - t)
        let mut q = numerator.clone();
        let mut k = 0usize;
        while q.iter().sum::<i128>() == 0 && k < nvars {
            q = divide_by_one_minus_t(&q);
            k += 1;
        }
        let dim = nvars - k;
        let degree: i128 = q.iter().sum();
        // b_j with Q(t) = sum_j b_j (1 - t)^j
        let b = shift_to_one_minus_t(&q);
        let binomial_coeffs: Vec<i128> = (0..dim).map(|j| b.get(dim - 1 - j).copied().unwrap_or(0)).collect();
        let regularity_bound = (q.len() as i64 - 1) - dim as i64 + 1;
        HilbertData {
            nvars,
            numerator,
            proj_dim: dim as i64 - 1,
            degree,
            binomial_coeffs,
            regularity_bound: regularity_bound.max(0),
        }
    }

    pub fn from_leading_monomials(lms: &[Vec<u8>], nvars: usize) -> Self {
        Self::from_numerator(series_numerator(lms, nvars), nvars)
    }

    /// `dim_k (R/I)_t`, read off the series.
    pub fn hilbert_function(&self, t: i64) -> i128 {
        if t < 0 {
            return 0;
        }
        // coefficient of s^t in N(s)/(1-s)^n is sum_i N_i binom(t - i + n - 1, n - 1)
        let n = self.nvars as i64;
        let mut acc = 0i128;
        for (i, c) in self.numerator.iter().enumerate() {
            let s = t - i as i64;
            if s < 0 {
                break;
            }
            acc += c * monomial::binomial((s + n - 1) as u64, (n - 1) as u64) as i128;
        }
        acc
    }

    /// Hilbert polynomial evaluated at `t`.
    pub fn hilbert_polynomial(&self, t: i64) -> i128 {
        self.binomial_coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a * binom_poly(t + j as i64, j as i64))
            .sum()
    }

    /// The Hilbert polynomial in the monomial basis, constant term first.
    pub fn hilbert_polynomial_coefficients(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = Vec::new();
        for (j, a) in self.binomial_coeffs.iter().enumerate() {
            // binom(t + j, j) = prod_{i=1..j} (t + i) / j!
            let mut p = vec![BigRational::one()];
            for i in 1..=j {
                let mut next = vec![BigRational::zero(); p.len() + 1];
                for (k, c) in p.iter().enumerate() {
                    next[k] += c * BigRational::from_integer(BigInt::from(i));
                    next[k + 1] += c;
                }
                p = next;
            }
            let fact: BigInt = (1..=j).map(BigInt::from).product();
            if out.len() < p.len() {
                out.resize(p.len(), BigRational::zero());
            }
            for (k, c) in p.into_iter().enumerate() {
                out[k] += c * BigRational::new(BigInt::from(*a), fact.clone());
            }
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// Arithmetic genus `1 - P(0)` for a curve, or in general
    /// `(-1)^d (P(0) - 1)` for dimension `d`.
    pub fn arithmetic_genus(&self) -> i128 {
        let p0 = self.hilbert_polynomial(0);
        if self.proj_dim % 2 == 0 {
            p0 - 1
        } else {
            1 - p0
        }
    }

    /// Text form `a*C(t+j,j) + ...` with the top term last.
    pub fn polynomial_string(&self) -> String {
        let mut parts = Vec::new();
        for (j, a) in self.binomial_coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            let term = if j == 0 { "1".to_string() } else { format!("C(t+{j},{j})") };
            parts.push((*a, term));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (a, term)) in parts.into_iter().enumerate() {
            let abs = a.abs();
            if i == 0 {
                if a < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if a < 0 { " - " } else { " + " });
            }
            if term == "1" {
                s.push_str(&abs.to_string());
            } else if abs == 1 {
                s.push_str(&term);
            } else {
                s.push_str(&format!("{abs}*{term}"));
            }
        }
        s
    }
}

impl fmt::Display for HilbertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} deg {} P(t) = {}", self.proj_dim, self.degree, self.polynomial_string())
    }
}

/// `binom(x, k)` as a polynomial in `x`, valid for negative `x` too.
fn binom_poly(x: i64, k: i64) -> i128 {
    let mut num = 1i128;
    let mut den = 1i128;
    for i in 0..k {
        num *= (x - i) as i128;
        den *= (i + 1) as i128;
    }
    num / den
}

fn divide_by_one_minus_t(p: &[i128]) -> Vec<i128> {
    // p = (1 - t) q  =>  q_i = sum_{k <= i} p_k
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0i128;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    q
}

/// Coefficients of `Q` in powers of `(1 - t)`.
fn shift_to_one_minus_t(q: &[i128]) -> Vec<i128> {
    // Q(1 - u) = sum_i q_i (1 - u)^i
    let mut out = vec![0i128; q.len()];
    for (i, &c) in q.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (k, slot) in out.iter_mut().enumerate().take(i + 1) {
            let b = monomial::binomial(i as u64, k as u64) as i128;
            *slot += if k % 2 == 0 { c * b } else { -c * b };
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_ideal_is_projective_space() {
        let h = HilbertData::from_leading_monomials(&[], 4);
        assert_eq!(h.proj_dim, 3);
        assert_eq!(h.degree, 1);
        assert_eq!(h.binomial_coeffs, vec![0, 0, 0, 1]);
        for t in 0..10 {
            assert_eq!(h.hilbert_function(t), monomial::count_monomials(4, t as u32) as i128);
        }
    }

    #[test]
    fn twisted_cubic_leading_terms() {
        // grevlex leading terms of the twisted cubic: b^2, bc, c^2
        let lms = vec![vec![0, 2, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 2, 0]];
        let h = HilbertData::from_leading_monomials(&lms, 4);
        assert_eq!((h.proj_dim, h.degree), (1, 3));
        for t in 0..20 {
            assert_eq!(h.hilbert_polynomial(t), 3 * t as i128 + 1);
        }
        assert_eq!(h.arithmetic_genus(), 0);
    }

    #[test]
    fn unit_and_points() {
        let unit = HilbertData::from_leading_monomials(&[vec![0, 0]], 2);
        assert_eq!(unit.proj_dim, -1);
        // x^2, y in P^1 variables (x, y): a double point? no: finite length 2 scheme in A^2
        let art = HilbertData::from_leading_monomials(&[vec![2, 0], vec![0, 1]], 2);
        assert_eq!((art.proj_dim, art.degree), (-1, 2));
        // three points in the plane: leading terms xy, xz, yz
        let pts = HilbertData::from_leading_monomials(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]], 3);
        assert_eq!((pts.proj_dim, pts.degree), (0, 3));
        assert_eq!(pts.hilbert_polynomial(7), 3);
    }

    #[test]
    fn polynomial_in_monomial_basis() {
        let lms = vec![vec![0, 2, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 2, 0]];
        let h = HilbertData::from_leading_monomials(&lms, 4);
        let c = h.hilbert_polynomial_coefficients();
        assert_eq!(c, vec![BigRational::one(), BigRational::from_integer(3.into())]);
        assert_eq!(h.polynomial_string(), "-2 + 3*C(t+1,1)");
    }
}
