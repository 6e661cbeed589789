//! Inversion through linear syzygies, and the inverse-map check.

use rustc_hash::FxHashMap;

use super::RationalMap;
use crate::algebra::field::SparseRow;
use crate::algebra::graded::linear_syzygies;
use crate::algebra::ideal::monomials_of_graded_degree;
use crate::algebra::linalg;
use crate::algebra::{Field, Ideal, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};

/// Outcome of the composition test `g ∘ f = T · id`.
#[derive(Clone, Debug)]
pub struct InverseCheck<F: Field> {
    pub is_inverse: bool,
    /// The common factor `T` when the test passes.
    pub factor: Option<Polynomial<F>>,
    pub diagnostic: Option<String>,
}

/// Whether `g ∘ f` equals `(x_0 T, ..., x_n T)` for one polynomial `T`.
///
/// `T` is read off the first nonzero coordinate of the composition.
pub fn is_inverse_map<F: Field>(f: &RationalMap<F>, g: &RationalMap<F>) -> Result<InverseCheck<F>> {
    if g.target().nvars() != f.source().nvars() {
        return Err(Error::RingMismatch(format!(
            "g maps to {} coordinates but f has {} source variables",
            g.target().nvars(),
            f.source().nvars()
        )));
    }
    let h = match super::compose(g, f) {
        Ok(h) => h,
        Err(Error::InsideBaseLocus(msg)) => {
            return Ok(InverseCheck { is_inverse: false, factor: None, diagnostic: Some(msg) });
        }
        Err(e) => return Err(e),
    };
    let ring = f.source();
    let fail = |msg: String| Ok(InverseCheck { is_inverse: false, factor: None, diagnostic: Some(msg) });
    let i = h.forms().iter().position(|p| !p.is_zero()).unwrap();
    let t = match h.forms()[i].exact_div(&ring.var(i)) {
        Ok(t) => t,
        Err(_) => return fail(format!("coordinate {i} of the composition is not divisible by {}", ring.names()[i])),
    };
    for (k, hk) in h.forms().iter().enumerate() {
        if *hk != &t * &ring.var(k) {
            return fail(format!("coordinate {k} of the composition differs from {} * T", ring.names()[k]));
        }
    }
    Ok(InverseCheck { is_inverse: true, factor: Some(t), diagnostic: None })
}

/// The matrix `Θ` of linear forms on the target with
/// `sum_i y_i L_ij(x) = sum_k x_k Θ_jk(y)` for each linear syzygy `j`.
#[derive(Clone, Debug)]
pub struct SyzygyMatrix<F: Field> {
    pub target: Ring<F>,
    /// `coeffs[j][k][i]`: coefficient of `y_i` in `Θ_jk`.
    coeffs: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> SyzygyMatrix<F> {
    pub fn new(f: &RationalMap<F>, target: &Ring<F>) -> Result<Self> {
        let syz = linear_syzygies(f.forms())?;
        let n = f.source().nvars();
        let m = f.target().nvars();
        let coeffs = syz
            .iter()
            .map(|tuple| {
                (0..n)
                    .map(|k| {
                        let mut e = vec![0u8; n];
                        e[k] = 1;
                        (0..m).map(|i| tuple[i].coefficient_of(&e)).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(SyzygyMatrix { target: target.clone(), coeffs })
    }

    /// Number of linear syzygies `q`.
    pub fn rows(&self) -> usize {
        self.coeffs.len()
    }

    pub fn entry(&self, j: usize, k: usize) -> Polynomial<F> {
        let t = &self.target;
        let mut acc = Polynomial::zero(t);
        for (i, c) in self.coeffs[j][k].iter().enumerate() {
            acc = &acc + &t.var(i).scale(c);
        }
        acc
    }
}

/// Result of the syzygy inversion.
#[derive(Clone, Debug)]
pub struct Inversion<F: Field> {
    /// The first candidate that passed the composition test.
    pub inverse: RationalMap<F>,
    /// Every minimal-degree kernel element found, in echelon order.
    pub candidates: Vec<RationalMap<F>>,
    pub certified: Vec<bool>,
    /// Degree of the inverse forms.
    pub degree: u32,
    pub syzygies: usize,
}

/// Inverts `f`, birational onto `V(a)`, from the kernel of `Θ mod a`.
///
/// The kernel is searched one degree at a time up to `max_degree`: for each
/// `e` the unknown forms `G_k` range over the standard monomials of degree `e`
/// modulo `a`, so forms lying in `a` never show up as solutions. Every
/// candidate of the first degree with a nonzero kernel is certified with
/// [`is_inverse_map`].
pub fn invert_birational_map_rs<F: Field>(f: &RationalMap<F>, a: &Ideal<F>, max_degree: u32) -> Result<Inversion<F>> {
    let target = f.target().with_order(MonomialOrder::grevlex())?;
    if a.ring().nvars() != target.nvars() || a.ring().field() != target.field() {
        return Err(Error::RingMismatch("image ideal must live in the target ring".into()));
    }
    let a = Ideal::new(&target, a.generators().iter().map(|p| p.reorder(&target)).collect())?
        .with_options(a.options().clone());
    let theta = SyzygyMatrix::new(f, &target)?;
    let field = target.field().clone();
    let n = f.source().nvars();
    let m = target.nvars();
    let q = theta.rows();
    if q == 0 {
        return Err(Error::InvalidArgument("the forms have no linear syzygies".into()));
    }
    for e in 1..=max_degree {
        let gb = a.groebner_basis_to_degree(e + 1)?;
        let std_e: Vec<Vec<u8>> =
            monomials_of_graded_degree(&target, e).into_iter().filter(|x| !gb.lead_divides(x)).collect();
        let std_next: Vec<Vec<u8>> =
            monomials_of_graded_degree(&target, e + 1).into_iter().filter(|x| !gb.lead_divides(x)).collect();
        if std_e.is_empty() {
            continue;
        }
        let next_index: FxHashMap<&[u8], u32> =
            std_next.iter().enumerate().map(|(i, x)| (x.as_slice(), i as u32)).collect();
        // mult[s][i] = NF(y_i * s) over std_next
        let mut products = Vec::with_capacity(std_e.len() * m);
        for s in &std_e {
            for i in 0..m {
                let mut x = s.clone();
                x[i] += 1;
                products.push(Polynomial::monomial(&target, field.one(), x));
            }
        }
        let nfs = gb.normal_forms(&products);
        let to_vec = |p: &Polynomial<F>| -> Vec<(u32, F::Elem)> {
            p.terms().map(|(c, x)| (next_index[x], c.clone())).collect()
        };
        let mult: Vec<Vec<(u32, F::Elem)>> = nfs.iter().map(to_vec).collect();
        let width = std_next.len() as u32;
        let mut rows = Vec::with_capacity(n * std_e.len());
        for k in 0..n {
            for si in 0..std_e.len() {
                let mut acc: FxHashMap<u32, F::Elem> = FxHashMap::default();
                for j in 0..q {
                    for (i, c) in theta.coeffs[j][k].iter().enumerate() {
                        if field.is_zero(c) {
                            continue;
                        }
                        for (col, v) in &mult[si * m + i] {
                            let key = j as u32 * width + col;
                            let t = field.mul(c, v);
                            let slot = acc.entry(key).or_insert_with(|| field.zero());
                            *slot = field.add(slot, &t);
                        }
                    }
                }
                let mut entries: Vec<(u32, F::Elem)> = acc.into_iter().filter(|(_, v)| !field.is_zero(v)).collect();
                entries.sort_unstable_by_key(|x| x.0);
                rows.push(SparseRow {
                    cols: entries.iter().map(|x| x.0).collect(),
                    vals: entries.into_iter().map(|x| x.1).collect(),
                });
            }
        }
        let kernel = linalg::relations(&field, &rows, q * std_next.len());
        if kernel.is_empty() {
            continue;
        }
        let d = std_e.len();
        let mut candidates = Vec::new();
        let mut certified = Vec::new();
        for v in &kernel {
            let mut forms = vec![Vec::new(); n];
            for (&idx, c) in v.cols.iter().zip(&v.vals) {
                let (k, si) = (idx as usize / d, idx as usize % d);
                forms[k].push((c.clone(), std_e[si].clone()));
            }
            let forms: Vec<Polynomial<F>> = forms.into_iter().map(|t| Polynomial::from_terms(&target, t)).collect();
            let g = RationalMap::new(&target, f.source(), forms)?;
            let ok = is_inverse_map(f, &g)?.is_inverse;
            candidates.push(g);
            certified.push(ok);
        }
        let Some(pos) = certified.iter().position(|&c| c) else {
            return Err(Error::Certification(format!(
                "{} kernel element(s) of degree {e} found, none passed the inverse-map test",
                candidates.len()
            )));
        };
        return Ok(Inversion { inverse: candidates[pos].clone(), candidates, certified, degree: e, syzygies: q });
    }
    Err(Error::BudgetExceeded(format!("no kernel generator up to degree {max_degree}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_polynomial;
    use crate::algebra::PrimeField;

    fn plane() -> Ring<PrimeField> {
        Ring::from_names(PrimeField::new(31991).unwrap(), &["x", "y", "z"]).unwrap()
    }

    fn map(r: &Ring<PrimeField>, forms: &[&str]) -> RationalMap<PrimeField> {
        RationalMap::new(r, r, forms.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn identity_is_its_own_inverse() {
        let r = plane();
        let id = RationalMap::identity(&r);
        let c = is_inverse_map(&id, &id).unwrap();
        assert!(c.is_inverse);
        assert!(c.factor.unwrap().is_constant());
    }

    #[test]
    fn squares_do_not_invert_the_cremona_map() {
        let r = plane();
        let s = map(&r, &["y*z", "x*z", "x*y"]);
        let sq = map(&r, &["x^2", "y^2", "z^2"]);
        let c = is_inverse_map(&s, &sq).unwrap();
        assert!(!c.is_inverse);
        assert!(c.diagnostic.is_some());
    }

    #[test]
    fn standard_cremona_inverts_to_itself() {
        let r = plane();
        let s = map(&r, &["y*z", "x*z", "x*y"]);
        let inv = invert_birational_map_rs(&s, &Ideal::zero(&r), 4).unwrap();
        assert_eq!(inv.degree, 2);
        assert_eq!(inv.syzygies, 2);
        assert!(is_inverse_map(&s, &inv.inverse).unwrap().is_inverse);
        // the inverse is sigma up to a scalar
        let lead = inv.inverse.forms()[0].leading_coeff().unwrap();
        let inv_lead = r.field().inv(lead).unwrap();
        for (g, h) in inv.inverse.forms().iter().zip(s.forms()) {
            assert_eq!(&g.scale(&inv_lead), h);
        }
    }

    #[test]
    fn conic_parameterization_inverts_on_its_image() {
        let line = Ring::from_names(PrimeField::new(31991).unwrap(), &["s", "t"]).unwrap();
        let conic = plane();
        let forms = ["s^2", "s*t", "t^2"].iter().map(|x| parse_polynomial(&line, x).unwrap()).collect();
        let f = RationalMap::new(&line, &conic, forms).unwrap();
        let a = Ideal::new(&conic, vec![parse_polynomial(&conic, "x*z-y^2").unwrap()]).unwrap();
        let inv = invert_birational_map_rs(&f, &a, 3).unwrap();
        assert_eq!(inv.degree, 1);
        assert!(is_inverse_map(&f, &inv.inverse).unwrap().is_inverse);
    }
}
