//! Helpers on exponent vectors stored as `&[u8]`.

use rustc_hash::FxHashMap;

#[inline]
pub fn degree(e: &[u8]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

#[inline]
pub fn weighted_degree(e: &[u8], w: &[u32]) -> u32 {
    e.iter().zip(w).map(|(&x, &w)| x as u32 * w).sum()
}

/// `a | b`
#[inline]
pub fn divides(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[inline]
pub fn lcm(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

#[inline]
pub fn coprime(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

/// Product of monomials; panics on exponent overflow past 255.
#[inline]
pub fn mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow (max 255 per variable)"))
        .collect()
}

#[inline]
pub fn mul_into(a: &[u8], b: &[u8], out: &mut Vec<u8>) {
    out.extend(
        a.iter()
            .zip(b)
            .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow (max 255 per variable)")),
    );
}

/// `b / a`, assuming `a | b`.
#[inline]
pub fn quotient(b: &[u8], a: &[u8]) -> Vec<u8> {
    b.iter().zip(a).map(|(&y, &x)| y - x).collect()
}

/// Short divisibility vector: bit `i mod 64` is set when some variable of
/// that residue class occurs. `mask(a) & !mask(b) != 0` rules out `a | b`.
#[inline]
pub fn mask(e: &[u8]) -> u64 {
    let mut m = 0u64;
    for (i, &x) in e.iter().enumerate() {
        if x > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

/// All exponent vectors of total degree `d` in `n` variables, in lex-descending order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left as u8;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    assert!(d <= 255, "degree too large for exponent storage");
    rec(0, d, &mut cur, &mut out);
    out
}

/// Number of monomials of degree `d` in `n` variables, `binom(n + d - 1, d)`.
pub fn count_monomials(n: usize, d: u32) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    binomial((n - 1) as u64 + d as u64, d as u64)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The monomials of one degree with an index lookup; the basis of a graded
/// piece in dense computations.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: u32,
    monomials: Vec<Vec<u8>>,
    index: FxHashMap<Vec<u8>, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        Self::from_list(nvars, degree, monomials_of_degree(nvars, degree))
    }

    pub fn from_list(nvars: usize, degree: u32, monomials: Vec<Vec<u8>>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { nvars, degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u8] {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &[u8]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.monomials.iter()
    }

    /// Table `t[i][v]` = index of `monomial(i) * x_v` in `next`.
    pub fn multiplication_table(&self, next: &MonomialBasis) -> Vec<Vec<usize>> {
        self.monomials
            .iter()
            .map(|m| {
                (0..self.nvars)
                    .map(|v| {
                        let mut e = m.clone();
                        e[v] += 1;
                        next.index_of(&e).expect("monomial of next degree")
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        for n in 1..6 {
            for d in 0..6 {
                assert_eq!(monomials_of_degree(n, d).len() as u128, count_monomials(n, d));
            }
        }
        assert_eq!(count_monomials(12, 5), 4368);
    }

    #[test]
    fn divisibility_and_masks() {
        let a = [1u8, 0, 2];
        let b = [1u8, 3, 2];
        assert!(divides(&a, &b));
        assert!(!divides(&b, &a));
        assert_eq!(mask(&a) & !mask(&b), 0);
        assert_eq!(lcm(&[2, 0, 1], &[0, 1, 3]), vec![2, 1, 3]);
        assert!(coprime(&[2, 0, 0], &[0, 1, 3]));
    }
}
