//! Recognizing a reduced support that is a linear space.

use rand::RngCore;

use super::smooth::singular_locus;
use crate::algebra::ideal::monomials_of_graded_degree;
use crate::algebra::linalg::{inverse, rank};
use crate::algebra::field::SparseRow;
use crate::algebra::linalg::Echelon;
use crate::algebra::{Field, Ideal, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::ratmap::{random_linear_form, LinearSubspace};

/// The point supporting a zero-dimensional saturated ideal, if there is
/// exactly one.
///
/// For `t` with `HF(t) = HF(t + 1) = μ`, multiplication by `x_i / h` acts on
/// `(R/Z)_t`; its trace is `μ x_i(q) / h(q)` when `Z` lives at the single
/// point `q`, and `Z` lives at one point exactly when each of these
/// operators has a single eigenvalue.
fn single_point<F: Field>(z: &Ideal<F>, rng: &mut dyn RngCore) -> Result<Option<Vec<F::Elem>>> {
    let ring = z.ring().clone();
    let field = ring.field().clone();
    let h = z.hilbert_data()?;
    if h.proj_dim != 0 {
        return Ok(None);
    }
    let mu = h.degree as usize;
    let mu_f = field.from_i64(mu as i64);
    if field.is_zero(&mu_f) {
        return Err(Error::InvalidArgument(format!("multiplicity {mu} vanishes in the field")));
    }
    let mut t = 0u32;
    while h.hilbert_function(t as i64) != mu as i128 {
        t += 1;
    }
    let gb = z.groebner_basis()?;
    let std_t: Vec<Vec<u8>> = monomials_of_graded_degree(&ring, t).into_iter().filter(|m| !gb.lead_divides(m)).collect();
    let std_u: Vec<Vec<u8>> =
        monomials_of_graded_degree(&ring, t + 1).into_iter().filter(|m| !gb.lead_divides(m)).collect();
    if std_t.len() != mu || std_u.len() != mu {
        return Ok(None);
    }
    let index = |m: &[u8]| std_u.iter().position(|x| x.as_slice() == m).unwrap();
    let matrix = |g: &Polynomial<F>| -> Vec<Vec<F::Elem>> {
        let prods: Vec<Polynomial<F>> =
            std_t.iter().map(|s| g * &Polynomial::monomial(&ring, field.one(), s.clone())).collect();
        let nfs = gb.normal_forms(&prods);
        let mut m = vec![vec![field.zero(); mu]; mu];
        for (b, p) in nfs.iter().enumerate() {
            for (c, e) in p.terms() {
                m[index(e)][b] = c.clone();
            }
        }
        m
    };
    for _ in 0..8 {
        let hform = random_linear_form(&ring, rng);
        let Some(hinv) = inverse(&field, &matrix(&hform)) else {
            continue;
        };
        let mut point = Vec::with_capacity(ring.nvars());
        for i in 0..ring.nvars() {
            let mut op = mat_mul(&field, &hinv, &matrix(&ring.var(i)));
            let mut tr = field.zero();
            for (a, row) in op.iter().enumerate() {
                tr = field.add(&tr, &row[a]);
            }
            let lambda = field.div(&tr, &mu_f).unwrap();
            for (a, row) in op.iter_mut().enumerate() {
                row[a] = field.sub(&row[a], &lambda);
            }
            if !is_nilpotent(&field, &op) {
                return Ok(None);
            }
            point.push(lambda);
        }
        return Ok(Some(point));
    }
    Ok(None)
}

fn mat_mul<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(field.zero(), |acc, (x, brow)| field.add(&acc, &field.mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

/// `m^k = 0` for `k = size`, by repeated squaring.
fn is_nilpotent<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> bool {
    let mut p = m.to_vec();
    let mut k = 1;
    while k < m.len() {
        p = mat_mul(field, &p, &p);
        k *= 2;
    }
    p.iter().all(|r| r.iter().all(|x| field.is_zero(x)))
}

/// If the zero set of `I` is a linear space, that space.
///
/// Points of `V(I)` are found by slicing with random linear spaces of
/// complementary dimension; their span `Π` is accepted only after checking
/// that every equation of `Π` lies in the radical of `I` (so `V(I) ⊆ Π`)
/// and that `dim V(I) = dim Π`.
pub fn linear_support<F: Field>(i: &Ideal<F>, rng: &mut dyn RngCore) -> Result<Option<LinearSubspace<F>>> {
    let ring = i.ring().clone();
    let s = i.dim()?;
    if s < 0 {
        return Ok(None);
    }
    let s = s as usize;
    let n = ring.nvars();
    let mut span = Echelon::new(ring.field(), n);
    for _ in 0..s + 3 {
        let cuts: Vec<Polynomial<F>> = (0..s).map(|_| random_linear_form(&ring, rng)).collect();
        let z = i.add_generators(&cuts)?;
        let Some(p) = single_point(&z, rng)? else {
            return Ok(None);
        };
        let row = crate::algebra::linalg::sparse_from_dense(ring.field(), &p);
        span.insert(&row);
    }
    if span.rank() != s + 1 {
        return Ok(None);
    }
    let eqs = linear_forms_vanishing_on(&ring, span.rows());
    for l in &eqs {
        if !i.saturate_by_element(l)?.is_unit()? {
            return Ok(None);
        }
    }
    Ok(Some(LinearSubspace::from_equations(&ring, eqs)?))
}

/// Linear forms vanishing at the points spanned by `rows`.
fn linear_forms_vanishing_on<F: Field>(ring: &Ring<F>, rows: &[SparseRow<F::Elem>]) -> Vec<Polynomial<F>> {
    let mut e = Echelon::new(ring.field(), ring.nvars());
    for r in rows {
        e.insert(r);
    }
    e.nullspace()
        .iter()
        .map(|v| {
            let mut acc = Polynomial::zero(ring);
            for (&k, c) in v.cols.iter().zip(&v.vals) {
                acc = &acc + &ring.var(k as usize).scale(c);
            }
            acc
        })
        .collect()
}

/// Support of the singular locus of `V(I)`, read from general linear
/// sections.
#[derive(Clone, Debug)]
pub struct SingularSupport<F: Field> {
    /// Dimension of the singular locus; `-1` when `V(I)` is smooth.
    pub dim: i64,
    /// Codimension of the slices whose singular loci are finite.
    pub slice_codim: usize,
    /// Degree of the singular scheme of each such slice.
    pub slice_degrees: Vec<i128>,
    /// One point per slice, when each slice is singular at a single point.
    pub points: Vec<Vec<F::Elem>>,
    /// The top-dimensional support when it is a linear space.
    pub linear: Option<LinearSubspace<F>>,
}

impl<F: Field> SingularSupport<F> {
    /// Degree of the top-dimensional support, known when it is linear.
    pub fn degree(&self) -> Option<u64> {
        self.linear.as_ref().map(|_| 1)
    }
}

/// `I` restricted to a linear subspace, in the parameter ring of the subspace.
pub fn restrict_ideal<F: Field>(i: &Ideal<F>, l: &LinearSubspace<F>) -> Result<Ideal<F>> {
    let u = l.param[0].ring().clone();
    let gens = i.minimal_generators()?.iter().map(|g| g.substitute(&l.param)).collect::<Result<_>>()?;
    Ideal::new(&u, gens)
}

/// Saturated singular scheme of `V(I) ∩ L` for a random `L` of codimension `k`.
fn sliced_singular_scheme<F: Field>(
    i: &Ideal<F>,
    k: usize,
    rng: &mut dyn RngCore,
) -> Result<(LinearSubspace<F>, Ideal<F>)> {
    let l = LinearSubspace::random(i.ring(), k, rng)?;
    let xl = restrict_ideal(i, &l)?;
    let sing = singular_locus(&xl, rng)?.ideal.saturate_irrelevant(rng)?;
    Ok((l, sing))
}

/// Dimension of the singular locus of `V(I)` and, when it is a linear space
/// in its top dimension, that space.
///
/// A point of `Sing V(I)` on `L` is singular on `V(I) ∩ L`, so an empty
/// singular locus of a codimension-`k` slice bounds `dim Sing` by `k - 1`.
/// Slices are taken with `k = dim V(I), dim V(I) - 1, ...` until one is
/// singular; then `dim + 1` slices of that codimension must each be
/// singular at one point, those points must span a space `Π` of the right
/// dimension, `I` must vanish on `Π` and the Jacobian must drop rank at
/// random points of `Π`. Components of smaller dimension off `Π` are not
/// looked for.
pub fn singular_support<F: Field>(i: &Ideal<F>, rng: &mut dyn RngCore) -> Result<SingularSupport<F>> {
    let ring = i.ring().with_order(crate::algebra::MonomialOrder::grevlex())?;
    let i = i.with_order(ring.order().clone())?;
    let d = i.dim()?;
    if d < 0 {
        return Err(Error::InvalidArgument("singular locus of the empty scheme".into()));
    }
    let c = super::smooth::codimension(&i)?;
    let mut found = None;
    for k in (0..=d as usize).rev() {
        let (l, sing) = sliced_singular_scheme(&i, k, rng)?;
        let e = sing.dim()?;
        if e >= 0 {
            found = Some((k, e, l, sing));
            break;
        }
    }
    let Some((k, e, l, sing)) = found else {
        return Ok(SingularSupport { dim: -1, slice_codim: 0, slice_degrees: vec![], points: vec![], linear: None });
    };
    let dim = e + k as i64;
    let mut out = SingularSupport { dim, slice_codim: k, slice_degrees: vec![], points: vec![], linear: None };
    if e > 0 {
        return Ok(out);
    }
    let field = ring.field().clone();
    let mut slice = (l, sing);
    loop {
        let (l, sing) = &slice;
        out.slice_degrees.push(sing.degree()?);
        let Some(u) = single_point(sing, rng)? else {
            return Ok(out);
        };
        out.points.push(l.param.iter().map(|p| p.evaluate(&u)).collect());
        if out.points.len() == dim as usize + 1 {
            break;
        }
        slice = sliced_singular_scheme(&i, k, rng)?;
        if slice.1.dim()? != 0 {
            return Ok(out);
        }
    }
    let mut span = Echelon::new(&field, ring.nvars());
    for p in &out.points {
        span.insert(&crate::algebra::linalg::sparse_from_dense(&field, p));
    }
    if span.rank() != dim as usize + 1 {
        return Ok(out);
    }
    let pi = LinearSubspace::from_equations(&ring, linear_forms_vanishing_on(&ring, span.rows()))?;
    if jacobian_drops_on(&i, &pi, c, rng)? {
        out.linear = Some(pi);
    }
    Ok(out)
}

/// `I` vanishes on `Π` and its Jacobian has rank `< c` at random points of `Π`.
fn jacobian_drops_on<F: Field>(
    i: &Ideal<F>,
    pi: &LinearSubspace<F>,
    c: usize,
    rng: &mut dyn RngCore,
) -> Result<bool> {
    for g in i.generators() {
        if !g.substitute(&pi.param)?.is_zero() {
            return Ok(false);
        }
    }
    let gens = i.minimal_generators()?;
    let field = i.ring().field();
    let n = i.ring().nvars();
    let u = pi.param[0].ring().clone();
    for _ in 0..4 {
        let up: Vec<F::Elem> = (0..u.nvars()).map(|_| field.random(rng)).collect();
        let x: Vec<F::Elem> = pi.param.iter().map(|l| l.evaluate(&up)).collect();
        let rows: Vec<SparseRow<F::Elem>> = gens
            .iter()
            .map(|g| {
                let dense: Vec<F::Elem> = (0..n).map(|j| g.derivative(j).evaluate(&x)).collect();
                crate::algebra::linalg::sparse_from_dense(field, &dense)
            })
            .collect();
        if rank(field, &rows, n) >= c {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_polynomial;
    use crate::algebra::PrimeField;
    use crate::ratmap::trial_rng;

    #[test]
    fn vertex_of_a_cone() {
        let r = Ring::from_names(PrimeField::new(31991).unwrap(), &["a", "b", "c", "d"]).unwrap();
        let i = Ideal::new(&r, vec![parse_polynomial(&r, "a*c-b^2").unwrap()]).unwrap();
        let s = singular_support(&i, &mut trial_rng(2)).unwrap();
        assert_eq!(s.dim, 0);
        let l = s.linear.unwrap();
        assert_eq!(l.dim(), 0);
        // the vertex is (0:0:0:1)
        assert_eq!(l.param.iter().filter(|p| !p.is_zero()).count(), 1);
        assert!(!l.param[3].is_zero());
    }

    #[test]
    fn a_double_line_has_linear_support() {
        let r = Ring::from_names(PrimeField::new(31991).unwrap(), &["a", "b", "c", "d"]).unwrap();
        let i = Ideal::new(&r, vec![parse_polynomial(&r, "a^2").unwrap(), parse_polynomial(&r, "a*b").unwrap(), parse_polynomial(&r, "b^2").unwrap()]).unwrap();
        let l = linear_support(&i, &mut trial_rng(4)).unwrap().unwrap();
        assert_eq!(l.dim(), 1);
        let conic = Ideal::new(&r, vec![parse_polynomial(&r, "a*c-b^2").unwrap(), parse_polynomial(&r, "d").unwrap()]).unwrap();
        assert!(linear_support(&conic, &mut trial_rng(4)).unwrap().is_none());
    }

    #[test]
    fn cone_singular_along_a_line() {
        let r = Ring::from_names(PrimeField::new(31991).unwrap(), &["a", "b", "c", "d", "e"]).unwrap();
        let i = Ideal::new(&r, vec![parse_polynomial(&r, "a*c-b^2").unwrap()]).unwrap();
        let s = singular_support(&i, &mut trial_rng(6)).unwrap();
        assert_eq!((s.dim, s.slice_codim), (1, 1));
        assert_eq!(s.points.len(), 2);
        let l = s.linear.unwrap();
        assert_eq!(l.dim(), 1);
        for p in &l.param[..3] {
            assert!(p.is_zero());
        }
    }

    #[test]
    fn smooth_quadric_has_no_singular_support() {
        let r = Ring::from_names(PrimeField::new(31991).unwrap(), &["a", "b", "c", "d"]).unwrap();
        let i = Ideal::new(&r, vec![parse_polynomial(&r, "a*d-b*c").unwrap()]).unwrap();
        assert_eq!(singular_support(&i, &mut trial_rng(6)).unwrap().dim, -1);
    }
}
