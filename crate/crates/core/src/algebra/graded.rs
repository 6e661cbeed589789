//! Linear algebra on graded pieces: coefficient matrices, linear relations
//! among forms, and linear syzygies.

use super::field::{Field, SparseRow};
use super::linalg::{self, Echelon};
use super::monomial::MonomialBasis;
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Forms of one degree written as rows over the monomial basis of that degree.
#[derive(Clone, Debug)]
pub struct GradedMatrix<F: Field> {
    field: F,
    basis: MonomialBasis,
    rows: Vec<SparseRow<F::Elem>>,
}

impl<F: Field> GradedMatrix<F> {
    /// Rows for `forms`, which must be homogeneous of degree `d` (zeros allowed).
    pub fn from_forms(ring: &Ring<F>, forms: &[Polynomial<F>], d: u32) -> Result<Self> {
        let basis = MonomialBasis::new(ring.nvars(), d);
        let rows = forms.iter().map(|f| coefficient_row(f, &basis)).collect::<Result<_>>()?;
        Ok(GradedMatrix { field: ring.field().clone(), basis, rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn rows(&self) -> &[SparseRow<F::Elem>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.field, &self.rows, self.ncols())
    }

    /// Basis of the coefficient vectors `c` with `sum_k c_k row_k = 0`.
    pub fn row_relations(&self) -> Vec<SparseRow<F::Elem>> {
        linalg::relations(&self.field, &self.rows, self.ncols())
    }
}

/// Coefficients of a degree-`d` form over `basis`.
pub fn coefficient_row<F: Field>(f: &Polynomial<F>, basis: &MonomialBasis) -> Result<SparseRow<F::Elem>> {
    let mut entries: Vec<(u32, F::Elem)> = Vec::with_capacity(f.len());
    for (c, e) in f.terms() {
        let k = basis
            .index_of(e)
            .ok_or_else(|| Error::NotHomogeneous(format!("{f} is not of degree {}", basis.degree)))?;
        entries.push((k as u32, c.clone()));
    }
    entries.sort_unstable_by_key(|x| x.0);
    Ok(SparseRow { cols: entries.iter().map(|x| x.0).collect(), vals: entries.into_iter().map(|x| x.1).collect() })
}

/// The form with coefficient row `row` over `basis`.
pub fn form_from_row<F: Field>(ring: &Ring<F>, row: &SparseRow<F::Elem>, basis: &MonomialBasis) -> Polynomial<F> {
    Polynomial::from_terms(ring, row.cols.iter().zip(&row.vals).map(|(&k, c)| (c.clone(), basis.get(k as usize).to_vec())))
}

/// `sum_k c_k forms_k` for a sparse coefficient vector.
pub fn combine<F: Field>(ring: &Ring<F>, forms: &[Polynomial<F>], c: &SparseRow<F::Elem>) -> Polynomial<F> {
    let mut acc = Polynomial::zero(ring);
    for (&k, v) in c.cols.iter().zip(&c.vals) {
        acc = &acc + &forms[k as usize].scale(v);
    }
    acc
}

/// A basis of the span of forms of one degree `d`, in reduced echelon form.
pub fn span_basis<F: Field>(ring: &Ring<F>, forms: &[Polynomial<F>], d: u32) -> Result<Vec<Polynomial<F>>> {
    let m = GradedMatrix::from_forms(ring, forms, d)?;
    let mut e = Echelon::new(ring.field(), m.ncols());
    for r in m.rows() {
        e.insert(r);
    }
    e.make_reduced();
    Ok(e.rows().iter().map(|r| form_from_row(ring, r, &m.basis)).collect())
}

/// Linear relations among forms of one degree `d`.
pub fn relations_among<F: Field>(ring: &Ring<F>, forms: &[Polynomial<F>], d: u32) -> Result<Vec<SparseRow<F::Elem>>> {
    Ok(GradedMatrix::from_forms(ring, forms, d)?.row_relations())
}

/// A basis of the tuples `(L_0, ..., L_m)` of linear forms with
/// `sum_i L_i F_i = 0`, from the relations among the products `x_k F_i`.
pub fn linear_syzygies<F: Field>(forms: &[Polynomial<F>]) -> Result<Vec<Vec<Polynomial<F>>>> {
    let Some(first) = forms.iter().find(|f| !f.is_zero()) else {
        return Err(Error::InvalidArgument("all forms are zero".into()));
    };
    let ring = first.ring().clone();
    let d = super::ideal::common_degree(forms)?;
    let n = ring.nvars();
    let mut products = Vec::with_capacity(forms.len() * n);
    for f in forms {
        ring.check_same(f.ring(), "linear_syzygies")?;
        for k in 0..n {
            products.push(f * &ring.var(k));
        }
    }
    let rel = relations_among(&ring, &products, d + 1)?;
    Ok(rel
        .iter()
        .map(|c| {
            let mut tuple = vec![Polynomial::zero(&ring); forms.len()];
            for (&idx, v) in c.cols.iter().zip(&c.vals) {
                let (i, k) = (idx as usize / n, idx as usize % n);
                tuple[i] = &tuple[i] + &ring.var(k).scale(v);
            }
            tuple
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::algebra::text::parse_polynomial;

    fn ring(names: &[&str]) -> Ring<PrimeField> {
        Ring::from_names(PrimeField::new(101).unwrap(), names).unwrap()
    }

    #[test]
    fn syzygies_of_conic_forms() {
        let r = ring(&["x", "y"]);
        let f: Vec<_> = ["x^2", "x*y", "y^2"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        let syz = linear_syzygies(&f).unwrap();
        assert_eq!(syz.len(), 2);
        for s in &syz {
            let mut acc = Polynomial::zero(&r);
            for (l, fi) in s.iter().zip(&f) {
                acc = &acc + &(l * fi);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn no_syzygies_for_powers() {
        let r = ring(&["x", "y"]);
        let f: Vec<_> = ["x^2", "y^2"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        assert!(linear_syzygies(&f).unwrap().is_empty());
    }

    #[test]
    fn span_drops_dependent_forms() {
        let r = ring(&["x", "y", "z"]);
        let f: Vec<_> =
            ["x^2+y*z", "x^2", "y*z", "z^2"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        assert_eq!(span_basis(&r, &f, 2).unwrap().len(), 3);
        let rel = relations_among(&r, &f, 2).unwrap();
        assert_eq!(rel.len(), 1);
        assert!(combine(&r, &f, &rel[0]).is_zero());
    }
}
