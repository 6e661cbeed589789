//! Equations of images by linear algebra.

use rustc_hash::FxHashMap;

use super::{LinearSubspace, RationalMap};
use crate::algebra::field::SparseRow;
use crate::algebra::graded::{relations_among, span_basis};
use crate::algebra::linalg;
use crate::algebra::monomial::MonomialBasis;
use crate::algebra::{Field, Ideal, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};

/// `F^α` for every monomial `α` of degree `d` in the target, in the order of
/// `MonomialBasis::new(m, d)`.
fn power_products<F: Field>(f: &RationalMap<F>, d: u32) -> (MonomialBasis, Vec<Polynomial<F>>) {
    let m = f.target().nvars();
    let mut basis = MonomialBasis::new(m, 0);
    let mut prods = vec![Polynomial::one(f.source())];
    for k in 1..=d {
        let next = MonomialBasis::new(m, k);
        let mut out = Vec::with_capacity(next.len());
        for a in next.iter() {
            let v = a.iter().position(|&x| x > 0).unwrap();
            let mut b = a.clone();
            b[v] -= 1;
            let prev = &prods[basis.index_of(&b).unwrap()];
            out.push(prev * &f.forms()[v]);
        }
        basis = next;
        prods = out;
    }
    (basis, prods)
}

fn target_forms<F: Field>(
    target: &Ring<F>,
    basis: &MonomialBasis,
    rel: &[SparseRow<F::Elem>],
) -> Vec<Polynomial<F>> {
    rel.iter()
        .map(|c| Polynomial::from_terms(target, c.cols.iter().zip(&c.vals).map(|(&k, v)| (v.clone(), basis.get(k as usize).to_vec()))))
        .collect()
}

/// A basis of the degree-`d` forms on the target vanishing on the image:
/// the linear relations among the products `F^α`, `|α| = d`.
pub fn homog_part_of_image<F: Field>(f: &RationalMap<F>, d: u32) -> Result<Vec<Polynomial<F>>> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let target = f.target().with_order(MonomialOrder::grevlex())?;
    let (basis, prods) = power_products(f, d);
    let rel = relations_among(f.source(), &prods, d * f.degree())?;
    let forms = target_forms(&target, &basis, &rel);
    span_basis(&target, &forms, d)
}

/// Quadrics through the images `eta(Z ∩ L)` for each subspace `L`, all
/// together: a candidate for the ideal of the base locus of the inverse of
/// `eta` restricted to `Z`.
///
/// A quadric `Q` qualifies for `L` when `Q(eta)` reduces to zero modulo
/// `I(Z) + I(L)`.
pub fn base_locus_of_inverse<F: Field>(
    z: &Ideal<F>,
    eta: &RationalMap<F>,
    subspaces: &[LinearSubspace<F>],
) -> Result<Ideal<F>> {
    let eta = eta.with_grevlex_source()?;
    let source = eta.source().clone();
    if z.ring().nvars() != source.nvars() {
        return Err(Error::RingMismatch("Z and the map source differ".into()));
    }
    let target = eta.target().with_order(MonomialOrder::grevlex())?;
    let (basis, prods) = power_products(&eta, 2);
    let zgens: Vec<Polynomial<F>> = z.generators().iter().map(|g| g.reorder(&source)).collect();
    let mut all = Vec::new();
    for l in subspaces {
        let mut gens = zgens.clone();
        gens.extend(l.equations.iter().map(|e| e.reorder(&source)));
        let zl = Ideal::new(&source, gens)?.with_options(z.options().clone());
        let gb = zl.groebner_basis_to_degree(2 * eta.degree())?;
        let nfs = gb.normal_forms(&prods);
        let mut index: FxHashMap<Vec<u8>, u32> = FxHashMap::default();
        let field = source.field();
        let rows: Vec<SparseRow<F::Elem>> = nfs
            .iter()
            .map(|p| {
                let mut e: Vec<(u32, F::Elem)> = p
                    .terms()
                    .map(|(c, x)| {
                        let n = index.len() as u32;
                        (*index.entry(x.to_vec()).or_insert(n), c.clone())
                    })
                    .collect();
                e.sort_unstable_by_key(|x| x.0);
                SparseRow { cols: e.iter().map(|x| x.0).collect(), vals: e.into_iter().map(|x| x.1).collect() }
            })
            .collect();
        let rel = linalg::relations(field, &rows, index.len());
        all.extend(target_forms(&target, &basis, &rel));
    }
    let quadrics = span_basis(&target, &all, 2)?;
    Ideal::new(&target, quadrics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_polynomial;
    use crate::algebra::PrimeField;
    use crate::ratmap::trial_rng;

    fn ring(names: &[&str]) -> Ring<PrimeField> {
        Ring::from_names(PrimeField::new(31991).unwrap(), names).unwrap()
    }

    #[test]
    fn conic_through_veronese_line() {
        let l = ring(&["s", "t"]);
        let p2 = ring(&["a", "b", "c"]);
        let forms = ["s^2", "s*t", "t^2"].iter().map(|x| parse_polynomial(&l, x).unwrap()).collect();
        let f = RationalMap::new(&l, &p2, forms).unwrap();
        let q = homog_part_of_image(&f, 2).unwrap();
        assert_eq!(q.len(), 1);
        assert!(q[0].substitute(f.forms()).unwrap().is_zero());
        assert!(homog_part_of_image(&f, 1).unwrap().is_empty());
    }

    #[test]
    fn inverse_base_locus_of_standard_cremona() {
        let r = ring(&["x", "y", "z"]);
        let forms = ["y*z", "x*z", "x*y"].iter().map(|x| parse_polynomial(&r, x).unwrap()).collect();
        let s = RationalMap::new(&r, &r, forms).unwrap();
        let mut rng = trial_rng(5);
        let subs: Vec<_> = (0..3).map(|_| LinearSubspace::random(&r, 1, &mut rng).unwrap()).collect();
        let b = base_locus_of_inverse(&Ideal::zero(&r), &s, &subs).unwrap();
        // the inverse is sigma again: its base locus is the three coordinate points
        assert_eq!(b.generators().len(), 3);
        let h = b.hilbert_data().unwrap();
        assert_eq!((h.proj_dim, h.degree), (0, 3));
    }
}
