//! Rational maps between projective spaces given by forms of one degree.

mod degree;
mod image;
mod inverse;

pub use degree::{degree_of_rational_map, projective_degrees, MapDegreeReport, TrialOutcome};
pub use image::{base_locus_of_inverse, homog_part_of_image};
pub use inverse::{invert_birational_map_rs, is_inverse_map, Inversion, InverseCheck, SyzygyMatrix};

use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::graded::{coefficient_row, form_from_row};
use crate::algebra::ideal::{common_degree, ring_map_kernel};
use crate::algebra::linalg::Echelon;
use crate::algebra::monomial::MonomialBasis;
use crate::algebra::text::{write_document, Document, DocumentKind};
use crate::algebra::{Field, GbOptions, Ideal, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};

/// Deterministic generator for one probabilistic trial.
pub fn trial_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `[F_0 : ... : F_m]` from `P(source)` to `P(target)`.
#[derive(Clone)]
pub struct RationalMap<F: Field> {
    source: Ring<F>,
    target: Ring<F>,
    forms: Vec<Polynomial<F>>,
    degree: u32,
}

impl<F: Field> fmt::Debug for RationalMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMap({} -> {}, degree {}, {:?})", self.source, self.target, self.degree, self.forms)
    }
}

impl<F: Field> fmt::Display for RationalMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.forms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl<F: Field> RationalMap<F> {
    pub fn new(source: &Ring<F>, target: &Ring<F>, forms: Vec<Polynomial<F>>) -> Result<Self> {
        if forms.len() != target.nvars() {
            return Err(Error::InvalidArgument(format!(
                "{} forms for a target with {} variables",
                forms.len(),
                target.nvars()
            )));
        }
        if source.field() != target.field() {
            return Err(Error::RingMismatch("source and target fields differ".into()));
        }
        if !source.is_standard_graded() {
            return Err(Error::InvalidArgument("map source must be standard graded".into()));
        }
        for f in &forms {
            source.check_same(f.ring(), "rational map form")?;
        }
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::InsideBaseLocus("all forms are zero".into()));
        }
        let degree = common_degree(&forms)?;
        Ok(RationalMap { source: source.clone(), target: target.clone(), forms, degree })
    }

    /// A map into a fresh target ring `y_0..y_m`.
    pub fn from_forms(forms: Vec<Polynomial<F>>, target_prefix: &str) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::InvalidArgument("empty form list".into()));
        };
        let source = first.ring().clone();
        let target = Ring::indexed(source.field().clone(), target_prefix, forms.len());
        Self::new(&source, &target, forms)
    }

    pub fn identity(ring: &Ring<F>) -> Self {
        Self::new(ring, ring, ring.vars()).expect("identity map")
    }

    pub fn source(&self) -> &Ring<F> {
        &self.source
    }

    pub fn target(&self) -> &Ring<F> {
        &self.target
    }

    pub fn forms(&self) -> &[Polynomial<F>] {
        &self.forms
    }

    /// Common degree of the forms.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Projective dimension of the source.
    pub fn source_dim(&self) -> usize {
        self.source.nvars() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target.nvars() - 1
    }

    /// The same map over a standard graded grevlex source.
    pub fn with_grevlex_source(&self) -> Result<Self> {
        if matches!(self.source.order(), MonomialOrder::Grevlex { weights: None }) {
            return Ok(self.clone());
        }
        let s = self.source.with_order(MonomialOrder::grevlex())?;
        let forms = self.forms.iter().map(|f| f.reorder(&s)).collect();
        Self::new(&s, &self.target, forms)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Vec<F::Elem> {
        self.forms.iter().map(|f| f.evaluate(point)).collect()
    }

    /// `self ∘ f`: the forms of `self` evaluated at the forms of `f`,
    /// matched by position. No common factor is removed.
    pub fn after(&self, f: &RationalMap<F>) -> Result<RationalMap<F>> {
        compose(self, f)
    }

    /// The map on `k[u]` obtained by substituting the linear forms `param`
    /// (one per source variable) into the forms.
    pub fn restrict(&self, param: &[Polynomial<F>]) -> Result<RationalMap<F>> {
        let forms: Vec<Polynomial<F>> = self.forms.iter().map(|f| f.substitute(param)).collect::<Result<_>>()?;
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::InsideBaseLocus("subspace lies in the base locus".into()));
        }
        let src = param
            .first()
            .map(|p| p.ring().clone())
            .ok_or_else(|| Error::InvalidArgument("empty parameterization".into()))?;
        RationalMap::new(&src, &self.target, forms)
    }

    pub fn restrict_to_linear_subspace(&self, l: &LinearSubspace<F>) -> Result<RationalMap<F>> {
        self.source.check_same(&l.ambient, "restrict_to_linear_subspace")?;
        self.restrict(&l.param)
    }

    /// The ideal `(F_0, ..., F_m)` in a grevlex copy of the source.
    pub fn forms_ideal(&self) -> Result<Ideal<F>> {
        let m = self.with_grevlex_source()?;
        Ideal::new(&m.source, m.forms.clone())
    }

    /// Saturated ideal of the base scheme, `(F) : m^∞`.
    pub fn base_locus_ideal(&self, rng: &mut dyn RngCore) -> Result<Ideal<F>> {
        self.forms_ideal()?.saturate_irrelevant(rng)
    }

    /// Full ideal of the closed image, by elimination.
    pub fn image_ideal(&self, opts: &GbOptions) -> Result<Ideal<F>> {
        let target = self.target.with_order(MonomialOrder::grevlex())?;
        ring_map_kernel(&self.forms, &target, opts)
    }

    pub fn to_document(&self) -> String {
        write_document(DocumentKind::Map, &self.source, Some(&self.target), &self.forms)
    }

    pub fn from_document(doc: &Document, field: F) -> Result<Self> {
        if doc.kind != DocumentKind::Map {
            return Err(Error::InvalidArgument("expected a `map` document".into()));
        }
        let source = doc.ring(field.clone())?;
        let target = doc.target_ring(field)?.expect("map documents carry a target");
        let forms = doc.polynomials(&source)?;
        for (i, f) in forms.iter().enumerate() {
            if !f.is_homogeneous() {
                return Err(Error::NotHomogeneous(format!("form {} of the map: {f}", i + 1)));
            }
        }
        Self::new(&source, &target, forms)
    }

    /// Reads a document whose integer coefficients are reduced into `field`.
    pub fn from_document_over(doc: &Document, field: F) -> Result<Self> {
        if doc.kind != DocumentKind::Map {
            return Err(Error::InvalidArgument("expected a `map` document".into()));
        }
        let source = doc.ring_over(field.clone())?;
        let target = doc.target_ring_over(field)?.expect("map documents carry a target");
        let forms = doc.polynomials(&source)?;
        Self::new(&source, &target, forms)
    }
}

/// `g ∘ f`, with `f`'s forms substituted positionally for `g`'s variables.
pub fn compose<F: Field>(g: &RationalMap<F>, f: &RationalMap<F>) -> Result<RationalMap<F>> {
    if g.source.nvars() != f.target.nvars() || g.source.field() != f.target.field() {
        return Err(Error::RingMismatch(format!("cannot compose: {} after {}", g.source, f.target)));
    }
    let forms: Vec<Polynomial<F>> = g.forms.iter().map(|h| h.substitute(&f.forms)).collect::<Result<_>>()?;
    if forms.iter().all(|h| h.is_zero()) {
        return Err(Error::InsideBaseLocus("the image of the first map lies in the base locus of the second".into()));
    }
    RationalMap::new(&f.source, &g.target, forms)
}

/// A linear subspace of `P(ambient)`, kept both as equations and as a
/// parameterization `x = param(u)`.
#[derive(Clone, Debug)]
pub struct LinearSubspace<F: Field> {
    pub ambient: Ring<F>,
    pub equations: Vec<Polynomial<F>>,
    pub param: Vec<Polynomial<F>>,
}

impl<F: Field> LinearSubspace<F> {
    /// The subspace cut out by linear forms (dependent forms are allowed).
    pub fn from_equations(ambient: &Ring<F>, equations: Vec<Polynomial<F>>) -> Result<Self> {
        let n = ambient.nvars();
        let basis = MonomialBasis::new(n, 1);
        let mut e = Echelon::new(ambient.field(), n);
        for l in &equations {
            ambient.check_same(l.ring(), "linear subspace")?;
            e.insert(&coefficient_row(l, &basis)?);
        }
        let kernel = e.nullspace();
        if kernel.is_empty() {
            return Err(Error::InvalidArgument("equations cut out the empty set".into()));
        }
        let u = Ring::indexed(ambient.field().clone(), "u", kernel.len());
        // x_i = sum_j kernel[j][i] u_j
        let mut param = vec![Polynomial::zero(&u); n];
        for (j, v) in kernel.iter().enumerate() {
            for (&i, c) in v.cols.iter().zip(&v.vals) {
                let t = u.var(j).scale(c);
                param[i as usize] = &param[i as usize] + &t;
            }
        }
        let eqs = e.rows().iter().map(|r| form_from_row(ambient, r, &basis)).collect();
        Ok(LinearSubspace { ambient: ambient.clone(), equations: eqs, param })
    }

    /// A random subspace of codimension `codim`.
    pub fn random(ambient: &Ring<F>, codim: usize, rng: &mut dyn RngCore) -> Result<Self> {
        let n = ambient.nvars();
        if codim >= n {
            return Err(Error::InvalidArgument(format!("codimension {codim} in P^{}", n - 1)));
        }
        for _ in 0..16 {
            let eqs: Vec<Polynomial<F>> = (0..codim).map(|_| random_linear_form(ambient, rng)).collect();
            let s = Self::from_equations(ambient, eqs)?;
            if s.equations.len() == codim {
                return Ok(s);
            }
        }
        Err(Error::InvalidArgument("could not sample independent linear forms".into()))
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.ambient.nvars() - 1 - self.equations.len()
    }

    pub fn ideal(&self) -> Result<Ideal<F>> {
        Ideal::new(&self.ambient, self.equations.clone())
    }
}

pub fn random_linear_form<F: Field>(ring: &Ring<F>, rng: &mut dyn RngCore) -> Polynomial<F> {
    let f = ring.field();
    let mut acc = Polynomial::zero(ring);
    for i in 0..ring.nvars() {
        acc = &acc + &ring.var(i).scale(&f.random(rng));
    }
    acc
}

/// A random point of `P(ring)`, never the zero vector.
pub fn random_point<F: Field>(ring: &Ring<F>, rng: &mut dyn RngCore) -> Vec<F::Elem> {
    let f = ring.field();
    loop {
        let p: Vec<F::Elem> = (0..ring.nvars()).map(|_| f.random(rng)).collect();
        if p.iter().any(|x| !f.is_zero(x)) {
            return p;
        }
    }
}

/// Random combination `sum c_i forms_i`.
pub fn random_combination<F: Field>(ring: &Ring<F>, forms: &[Polynomial<F>], rng: &mut dyn RngCore) -> Polynomial<F> {
    let f = ring.field();
    let mut acc = Polynomial::zero(ring);
    for g in forms {
        acc = &acc + &g.scale(&f.random(rng));
    }
    acc
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
    fn cremona_squared_is_cubic_times_identity() {
        let r = plane();
        let s = map(&r, &["y*z", "x*z", "x*y"]);
        let c = compose(&s, &s).unwrap();
        let xyz = parse_polynomial(&r, "x*y*z").unwrap();
        for (i, f) in c.forms().iter().enumerate() {
            assert_eq!(f, &(&xyz * &r.var(i)));
        }
        assert_eq!(compose(&RationalMap::identity(&r), &s).unwrap().forms(), s.forms());
    }

    #[test]
    fn zero_composition_is_reported() {
        let r = plane();
        let f = map(&r, &["x", "0", "0"]);
        let g = map(&r, &["y", "z", "z"]);
        assert!(matches!(compose(&g, &f), Err(Error::InsideBaseLocus(_))));
    }

    #[test]
    fn subspace_parameterization_satisfies_equations() {
        let r = plane();
        let mut rng = trial_rng(3);
        let l = LinearSubspace::random(&r, 1, &mut rng).unwrap();
        assert_eq!(l.dim(), 1);
        let on = l.equations[0].substitute(&l.param).unwrap();
        assert!(on.is_zero());
        let id = RationalMap::identity(&r).restrict_to_linear_subspace(&l).unwrap();
        assert_eq!(id.source().nvars(), 2);
        assert_eq!(id.degree(), 1);
    }

    #[test]
    fn base_locus_of_standard_cremona() {
        let r = plane();
        let s = map(&r, &["y*z", "x*z", "x*y"]);
        let b = s.base_locus_ideal(&mut trial_rng(1)).unwrap();
        let h = b.hilbert_data().unwrap();
        assert_eq!((h.proj_dim, h.degree), (0, 3));
    }
}
