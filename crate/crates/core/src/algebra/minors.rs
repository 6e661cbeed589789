//! Minors of polynomial matrices.

use rand::RngCore;

use super::field::Field;
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
pub fn determinant<F: Field>(ring: &Ring<F>, m: &[Vec<Polynomial<F>>]) -> Result<Polynomial<F>> {
    let n = m.len();
    if n == 0 {
        return Ok(Polynomial::one(ring));
    }
    let mut a: Vec<Vec<Polynomial<F>>> = m.to_vec();
    let mut prev = Polynomial::one(ring);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // cheapest nonzero pivot below
            let Some(p) = (k + 1..n).filter(|&r| !a[r][k].is_zero()).min_by_key(|&r| a[r][k].len()) else {
                return Ok(Polynomial::zero(ring));
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Lexicographic successor of a strictly increasing index list in `0..n`.
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Lazy stream of the `c x c` minors, row subsets outermost.
pub struct Minors<'a, F: Field> {
    ring: Ring<F>,
    m: &'a [Vec<Polynomial<F>>],
    rows: Vec<usize>,
    cols: Vec<usize>,
    ncols: usize,
    done: bool,
}

impl<'a, F: Field> Minors<'a, F> {
    pub fn new(ring: &Ring<F>, m: &'a [Vec<Polynomial<F>>], c: usize) -> Result<Self> {
        let nrows = m.len();
        let ncols = m.first().map_or(0, |r| r.len());
        if c == 0 || c > nrows.min(ncols) {
            return Err(Error::InvalidArgument(format!("minors of order {c} of a {nrows}x{ncols} matrix")));
        }
        Ok(Minors { ring: ring.clone(), m, rows: (0..c).collect(), cols: (0..c).collect(), ncols, done: false })
    }

    /// Total number of minors, `binom(rows, c) * binom(cols, c)`.
    pub fn count(nrows: usize, ncols: usize, c: usize) -> u128 {
        super::monomial::binomial(nrows as u64, c as u64) * super::monomial::binomial(ncols as u64, c as u64)
    }
}

impl<F: Field> Iterator for Minors<'_, F> {
    type Item = Result<Polynomial<F>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let sub: Vec<Vec<Polynomial<F>>> =
            self.rows.iter().map(|&i| self.cols.iter().map(|&j| self.m[i][j].clone()).collect()).collect();
        let out = determinant(&self.ring, &sub);
        if !next_subset(&mut self.cols, self.ncols) {
            self.cols = (0..self.cols.len()).collect();
            if !next_subset(&mut self.rows, self.m.len()) {
                self.done = true;
            }
        }
        Some(out)
    }
}

/// `det(A M B)` for random scalar `A` (`c x rows`) and `B` (`cols x c`): by
/// Cauchy-Binet a random linear combination of all `c x c` minors of `M`.
pub fn random_minor_combination<F: Field>(
    ring: &Ring<F>,
    m: &[Vec<Polynomial<F>>],
    c: usize,
    rng: &mut dyn RngCore,
) -> Result<Polynomial<F>> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    if c == 0 || c > nrows.min(ncols) {
        return Err(Error::InvalidArgument(format!("minors of order {c} of a {nrows}x{ncols} matrix")));
    }
    let field = ring.field();
    let a: Vec<Vec<F::Elem>> = (0..c).map(|_| (0..nrows).map(|_| field.random(rng)).collect()).collect();
    let b: Vec<Vec<F::Elem>> = (0..ncols).map(|_| (0..c).map(|_| field.random(rng)).collect()).collect();
    // MB first: rows x c
    let mb: Vec<Vec<Polynomial<F>>> = m
        .iter()
        .map(|row| {
            (0..c)
                .map(|j| {
                    let mut acc = Polynomial::zero(ring);
                    for (k, e) in row.iter().enumerate() {
                        if !e.is_zero() && !field.is_zero(&b[k][j]) {
                            acc = &acc + &e.scale(&b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let amb: Vec<Vec<Polynomial<F>>> = a
        .iter()
        .map(|arow| {
            (0..c)
                .map(|j| {
                    let mut acc = Polynomial::zero(ring);
                    for (k, s) in arow.iter().enumerate() {
                        if !field.is_zero(s) && !mb[k][j].is_zero() {
                            acc = &acc + &mb[k][j].scale(s);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    determinant(ring, &amb)
}

/// Jacobian matrix `(dF_i / dx_j)`.
pub fn jacobian<F: Field>(forms: &[Polynomial<F>]) -> Vec<Vec<Polynomial<F>>> {
    forms.iter().map(|f| (0..f.ring().nvars()).map(|j| f.derivative(j)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::algebra::text::parse_polynomial;

    fn setup() -> Ring<PrimeField> {
        Ring::from_names(PrimeField::new(31991).unwrap(), &["x", "y", "z", "w"]).unwrap()
    }

    fn p(r: &Ring<PrimeField>, s: &str) -> Polynomial<PrimeField> {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn two_by_two() {
        let r = setup();
        let m = vec![vec![p(&r, "x"), p(&r, "y")], vec![p(&r, "z"), p(&r, "w")]];
        let all: Vec<_> = Minors::new(&r, &m, 2).unwrap().map(|x| x.unwrap()).collect();
        assert_eq!(all, vec![p(&r, "x*w-y*z")]);
    }

    #[test]
    fn gradient_minors() {
        let r = setup();
        let j = jacobian(&[p(&r, "x^2+y^2+z^2")]);
        let all: Vec<_> = Minors::new(&r, &j, 1).unwrap().map(|x| x.unwrap()).collect();
        assert_eq!(all, vec![p(&r, "2*x"), p(&r, "2*y"), p(&r, "2*z"), p(&r, "0")]);
    }

    #[test]
    fn bareiss_matches_expansion() {
        let r = setup();
        let m = vec![
            vec![p(&r, "x"), p(&r, "y"), p(&r, "0")],
            vec![p(&r, "0"), p(&r, "z"), p(&r, "x")],
            vec![p(&r, "w"), p(&r, "0"), p(&r, "y")],
        ];
        // x(zy - 0) - y(0 - xw) + 0
        assert_eq!(determinant(&r, &m).unwrap(), p(&r, "x*y*z+x*y*w"));
        let swapped = vec![m[1].clone(), m[0].clone(), m[2].clone()];
        assert_eq!(determinant(&r, &swapped).unwrap(), p(&r, "-x*y*z-x*y*w"));
    }

    #[test]
    fn count_and_range() {
        assert_eq!(Minors::<PrimeField>::count(12, 8, 5), 792 * 56);
        let r = setup();
        let m = vec![vec![p(&r, "x")]];
        assert!(Minors::new(&r, &m, 2).is_err());
    }
}
