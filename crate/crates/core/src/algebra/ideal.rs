//! Ideals with cached Gröbner bases, and the operations built on them.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::RngCore;

use super::f4::{groebner_basis, reduced_from_groebner, GbOptions, GroebnerBasis};
use super::field::Field;
use super::hilbert::HilbertData;
use super::monomial;
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::ring::Ring;
use super::text::{write_document, Document, DocumentKind};
use crate::error::{Error, Result};

/// An ideal given by generators; its Gröbner basis and Hilbert data are
/// computed on first use and cached.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
    opts: GbOptions,
    gb: OnceLock<Arc<GroebnerBasis<F>>>,
    hilbert: OnceLock<HilbertData>,
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("ring", &self.ring.names()).field("gens", &self.gens).finish()
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Name not among `names`, built from `base`.
fn fresh_name(names: &[String], base: &str) -> String {
    let mut s = base.to_string();
    while names.contains(&s) {
        s.push('_');
    }
    s
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            ring.check_same(g.ring(), "ideal generators")?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, opts: GbOptions::default(), gb: OnceLock::new(), hilbert: OnceLock::new() })
    }

    pub fn zero(ring: &Ring<F>) -> Self {
        Self::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// The ideal of all variables.
    pub fn irrelevant(ring: &Ring<F>) -> Self {
        Self::new(ring, ring.vars()).unwrap()
    }

    pub fn with_options(mut self, opts: GbOptions) -> Self {
        if opts != self.opts {
            self.opts = opts;
            self.gb = OnceLock::new();
        }
        self
    }

    pub fn options(&self) -> &GbOptions {
        &self.opts
    }

    /// Same options, new generators.
    fn derived(&self, ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Self {
        Ideal::new(ring, gens).unwrap().with_options(GbOptions { max_degree: None, ..self.opts.clone() })
    }

    fn from_gb(&self, gb: GroebnerBasis<F>) -> Self {
        let ideal = self.derived(gb.ring(), gb.polys().to_vec());
        if gb.is_complete() {
            let _ = ideal.gb.set(Arc::new(gb));
        }
        ideal
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    fn require_homogeneous(&self, what: &str) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_homogeneous()) {
            None => Ok(()),
            Some(g) => Err(Error::NotHomogeneous(format!("{what}: {g}"))),
        }
    }

    /// The reduced Gröbner basis for the ring's order.
    pub fn groebner_basis(&self) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner_basis(&self.ring, &self.gens, &GbOptions { max_degree: None, ..self.opts.clone() })?);
        Ok(self.gb.get_or_init(|| gb).clone())
    }

    /// A Gröbner basis valid up to degree `d` (homogeneous ideals).
    pub fn groebner_basis_to_degree(&self, d: u32) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        Ok(Arc::new(groebner_basis(&self.ring, &self.gens, &self.opts.with_max_degree(d))?))
    }

    pub fn is_gb_cached(&self) -> bool {
        self.gb.get().is_some()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.groebner_basis()?.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        self.groebner_basis()?.contains(f)
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        self.ring.check_same(&other.ring, "contains_ideal")?;
        let gb = self.groebner_basis()?;
        Ok(gb.normal_forms(&other.gens).iter().all(|p| p.is_zero()))
    }

    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Self> {
        self.ring.check_same(&other.ring, "sum")?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(self.derived(&self.ring, g))
    }

    pub fn add_generators(&self, extra: &[Polynomial<F>]) -> Result<Self> {
        let mut g = self.gens.clone();
        for p in extra {
            self.ring.check_same(p.ring(), "add_generators")?;
            g.push(p.clone());
        }
        Ok(self.derived(&self.ring, g))
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Self> {
        self.ring.check_same(&other.ring, "product")?;
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ok(self.derived(&self.ring, g))
    }

    /// Copy of the ideal in the same variables with another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        let r = self.ring.with_order(order)?;
        let g = self.gens.iter().map(|p| p.reorder(&r)).collect();
        Ok(self.derived(&r, g))
    }

    /// Ring `k[t, x]` with `t` of degree 0 eliminated first.
    fn t_ring(&self) -> Result<Ring<F>> {
        let mut names = vec![fresh_name(self.ring.names(), "t")];
        names.extend(self.ring.names().iter().cloned());
        let mut grading = vec![0];
        grading.extend_from_slice(self.ring.grading());
        let order = MonomialOrder::Block {
            split: 1,
            first: Box::new(MonomialOrder::grevlex()),
            second: Box::new(self.ring.order().clone()),
        };
        Ring::with_grading(self.ring.field().clone(), names, order, grading)
    }

    fn t_embed(&self, tr: &Ring<F>, p: &Polynomial<F>) -> Polynomial<F> {
        let map: Vec<usize> = (1..=self.ring.nvars()).collect();
        p.map_variables(tr, &map)
    }

    fn t_restrict(&self, tr: &Ring<F>, gb: &GroebnerBasis<F>) -> Vec<Polynomial<F>> {
        let n = self.ring.nvars();
        gb.polys()
            .iter()
            .filter(|p| p.terms().all(|(_, e)| e[0] == 0))
            .map(|p| {
                let terms = p.terms().map(|(c, e)| (c.clone(), e[1..].to_vec()));
                debug_assert_eq!(tr.nvars(), n + 1);
                Polynomial::from_terms(&self.ring, terms)
            })
            .collect()
    }

    /// `self ∩ other`, via `t·I + (1 - t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Self> {
        self.ring.check_same(&other.ring, "intersect")?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(self.derived(&self.ring, Vec::new()));
        }
        let tr = self.t_ring()?;
        let t = tr.var(0);
        let one_minus_t = &Polynomial::one(&tr) - &t;
        let mut g: Vec<Polynomial<F>> = self.gens.iter().map(|p| &t * &self.t_embed(&tr, p)).collect();
        g.extend(other.gens.iter().map(|p| &one_minus_t * &self.t_embed(&tr, p)));
        let gb = groebner_basis(&tr, &g, &GbOptions { max_degree: None, ..self.opts.clone() })?;
        Ok(self.derived(&self.ring, self.t_restrict(&tr, &gb)))
    }

    /// `self : (f)`.
    pub fn quotient_by_element(&self, f: &Polynomial<F>) -> Result<Self> {
        self.ring.check_same(f.ring(), "quotient")?;
        if f.is_zero() {
            return Err(Error::InvalidArgument("quotient by the zero polynomial".into()));
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![f.clone()])?)?;
        let g = inter.gens.iter().map(|p| p.exact_div(f)).collect::<Result<Vec<_>>>()?;
        Ok(self.derived(&self.ring, g))
    }

    /// `self : J`, the intersection of the quotients by the generators of `J`.
    pub fn quotient(&self, j: &Ideal<F>) -> Result<Self> {
        self.ring.check_same(&j.ring, "quotient")?;
        if j.gens.is_empty() {
            return Err(Error::InvalidArgument("quotient by the zero ideal".into()));
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &j.gens {
            let q = self.quotient_by_element(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// `self : J^∞` by iterated quotients until the ideal stops growing.
    pub fn saturate(&self, j: &Ideal<F>) -> Result<Self> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(j)?;
            if cur.contains_ideal(&next)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `self : f^∞` for homogeneous `f`, through one Gröbner basis of
    /// `I + (f - z)` in `k[x, z]` with `deg z = deg f` and `z` last in grevlex:
    /// dividing that basis by powers of `z` and putting `z = f` back yields
    /// generators of the saturation.
    pub fn saturate_by_element(&self, f: &Polynomial<F>) -> Result<Self> {
        self.ring.check_same(f.ring(), "saturate_by_element")?;
        self.require_homogeneous("saturate_by_element")?;
        if !self.ring.order().eq(&MonomialOrder::grevlex()) || !self.ring.is_standard_graded() {
            return Err(Error::InvalidArgument("saturate_by_element needs a standard graded grevlex ring".into()));
        }
        let e = f
            .homogeneous_degree()
            .ok_or_else(|| Error::NotHomogeneous(format!("saturating element {f}")))?;
        if e == 0 {
            return if f.is_zero() {
                Err(Error::InvalidArgument("saturation by zero".into()))
            } else {
                Ok(self.clone())
            };
        }
        let n = self.ring.nvars();
        let mut names = self.ring.names().to_vec();
        names.push(fresh_name(self.ring.names(), "z"));
        let mut w = vec![1u32; n];
        w.push(e);
        let zr = Ring::with_grading(self.ring.field().clone(), names, MonomialOrder::weighted_grevlex(w.clone()), w)?;
        let emb: Vec<usize> = (0..n).collect();
        let mut g: Vec<Polynomial<F>> = self.gens.iter().map(|p| p.map_variables(&zr, &emb)).collect();
        g.push(&f.map_variables(&zr, &emb) - &zr.var(n));
        let gb = groebner_basis(&zr, &g, &GbOptions { max_degree: None, ..self.opts.clone() })?;
        let mut images: Vec<Polynomial<F>> = self.ring.vars();
        images.push(f.clone());
        let mut out = Vec::new();
        for p in gb.polys() {
            let (q, _) = p.strip_variable(n);
            let back = q.substitute(&images)?;
            if !back.is_zero() {
                out.push(back);
            }
        }
        Ok(self.derived(&self.ring, out))
    }

    /// Saturation by the irrelevant ideal, `I : (x_0, ..., x_n)^∞`.
    ///
    /// In grevlex, dividing a homogeneous basis by the largest power of the
    /// last variable `ℓ` gives a basis of `I : ℓ^∞`, which contains the
    /// saturation and equals it exactly when both quotients have the same
    /// Hilbert polynomial. The last coordinate is tried first; random
    /// coordinates are used only when that certificate fails.
    pub fn saturate_irrelevant(&self, rng: &mut dyn RngCore) -> Result<Self> {
        self.require_homogeneous("saturate_irrelevant")?;
        if !self.ring.is_standard_graded() || !matches!(self.ring.order(), MonomialOrder::Grevlex { weights: None }) {
            return Err(Error::InvalidArgument("irrelevant saturation needs a standard graded grevlex ring".into()));
        }
        let n = self.ring.nvars();
        let gb = self.groebner_basis()?;
        let h = HilbertData::from_leading_monomials(&gb.leading_monomials(), n);
        if h.proj_dim < 0 {
            return Ok(self.derived(&self.ring, vec![Polynomial::one(&self.ring)]));
        }
        if let Some(s) = bayer_quotient(&gb, &h)? {
            return Ok(self.from_gb(s));
        }
        let field = self.ring.field();
        for _ in 0..8 {
            // ℓ = y_last after x_last ↦ (y_last - sum_{i<last} c_i y_i) / c_last
            let c: Vec<F::Elem> = (0..n).map(|_| field.random(rng)).collect();
            if field.is_zero(&c[n - 1]) {
                continue;
            }
            let inv = field.inv(&c[n - 1]).unwrap();
            let mut fwd = self.ring.vars();
            let mut last = self.ring.var(n - 1).scale(&inv);
            for (i, ci) in c.iter().enumerate().take(n - 1) {
                last = &last - &self.ring.var(i).scale(&field.mul(ci, &inv));
            }
            fwd[n - 1] = last;
            let moved: Vec<Polynomial<F>> = self.gens.iter().map(|p| p.substitute(&fwd)).collect::<Result<_>>()?;
            let moved_gb = groebner_basis(&self.ring, &moved, &GbOptions { max_degree: None, ..self.opts.clone() })?;
            if let Some(s) = bayer_quotient(&moved_gb, &h)? {
                // back: y_last ↦ ℓ(x) = sum c_i x_i
                let mut back = self.ring.vars();
                let mut l = Polynomial::zero(&self.ring);
                for (i, ci) in c.iter().enumerate() {
                    l = &l + &self.ring.var(i).scale(ci);
                }
                back[n - 1] = l;
                let gens: Vec<Polynomial<F>> = s.polys().iter().map(|p| p.substitute(&back)).collect::<Result<_>>()?;
                return Ok(self.derived(&self.ring, gens));
            }
        }
        Err(Error::Certification("irrelevant saturation: no certified linear form found in 8 attempts".into()))
    }

    /// Generators of `I ∩ k[x_k, ..., x_n]`, in a ring of the remaining variables.
    pub fn eliminate(&self, k: usize) -> Result<Self> {
        let n = self.ring.nvars();
        if k == 0 || k >= n {
            return Err(Error::InvalidArgument(format!("cannot eliminate {k} of {n} variables")));
        }
        let er = Ring::with_grading(
            self.ring.field().clone(),
            self.ring.names().to_vec(),
            MonomialOrder::elimination(k),
            self.ring.grading().to_vec(),
        )?;
        let g: Vec<Polynomial<F>> = self.gens.iter().map(|p| p.reorder(&er)).collect();
        let gb = groebner_basis(&er, &g, &GbOptions { max_degree: None, ..self.opts.clone() })?;
        let sub = Ring::with_grading(
            self.ring.field().clone(),
            self.ring.names()[k..].to_vec(),
            MonomialOrder::grevlex(),
            self.ring.grading()[k..].to_vec(),
        )?;
        let out = gb
            .polys()
            .iter()
            .filter(|p| p.terms().all(|(_, e)| e[..k].iter().all(|&x| x == 0)))
            .map(|p| Polynomial::from_terms(&sub, p.terms().map(|(c, e)| (c.clone(), e[k..].to_vec()))))
            .collect();
        Ok(self.derived(&sub, out))
    }

    /// Dimension, degree and Hilbert polynomial of `R/I`.
    pub fn hilbert_data(&self) -> Result<HilbertData> {
        if let Some(h) = self.hilbert.get() {
            return Ok(h.clone());
        }
        self.require_homogeneous("hilbert_data")?;
        if !self.ring.is_standard_graded() {
            return Err(Error::InvalidArgument("hilbert_data needs the standard grading".into()));
        }
        let gb = self.groebner_basis()?;
        let h = HilbertData::from_leading_monomials(&gb.leading_monomials(), self.ring.nvars());
        Ok(self.hilbert.get_or_init(|| h).clone())
    }

    /// Projective dimension of `V(I)`; `-1` when empty.
    pub fn dim(&self) -> Result<i64> {
        Ok(self.hilbert_data()?.proj_dim)
    }

    pub fn degree(&self) -> Result<i128> {
        Ok(self.hilbert_data()?.degree)
    }

    /// A basis of the degree-`d` piece `I_d`: for each standard-basis leading
    /// monomial `m` of degree `d`, the element `m - NF(m)`.
    pub fn graded_piece_basis(&self, d: u32) -> Result<Vec<Polynomial<F>>> {
        self.require_homogeneous("graded_piece_basis")?;
        let gb = self.groebner_basis_to_degree(d)?;
        let field = self.ring.field();
        let mons: Vec<Polynomial<F>> = monomials_of_graded_degree(&self.ring, d)
            .into_iter()
            .filter(|m| gb.lead_divides(m))
            .map(|m| Polynomial::monomial(&self.ring, field.one(), m))
            .collect();
        let nfs = gb.normal_forms(&mons);
        Ok(mons.iter().zip(nfs).map(|(m, r)| m - &r).collect())
    }

    /// `dim_k I_d`.
    pub fn graded_piece_dim(&self, d: u32) -> Result<usize> {
        self.require_homogeneous("graded_piece_dim")?;
        let gb = self.groebner_basis_to_degree(d)?;
        Ok(monomials_of_graded_degree(&self.ring, d).iter().filter(|m| gb.lead_divides(m)).count())
    }

    /// A minimal homogeneous generating set.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial<F>>> {
        self.require_homogeneous("minimal_generators")?;
        let gb = self.groebner_basis()?;
        if let Some(m) = gb.minimal_generators() {
            if gb.ring() == &self.ring {
                return Ok(m.to_vec());
            }
        }
        let fresh = groebner_basis(&self.ring, &self.gens, &GbOptions { max_degree: None, ..self.opts.clone() })?;
        Ok(fresh.minimal_generators().expect("homogeneous input").to_vec())
    }

    /// Number of minimal generators in each degree, as `(degree, count)`.
    pub fn minimal_generator_counts(&self) -> Result<Vec<(u32, usize)>> {
        let mut counts: Vec<(u32, usize)> = Vec::new();
        for g in self.minimal_generators()? {
            let d = g.homogeneous_degree().unwrap();
            match counts.iter_mut().find(|c| c.0 == d) {
                Some(c) => c.1 += 1,
                None => counts.push((d, 1)),
            }
        }
        counts.sort();
        Ok(counts)
    }

    /// Whether `I : (x_0..x_n)^∞ = I`; certified through the last variable
    /// of a grevlex basis when possible.
    pub fn is_saturated(&self, rng: &mut dyn RngCore) -> Result<bool> {
        let sat = self.saturate_irrelevant(rng)?;
        self.contains_ideal(&sat)
    }

    pub fn to_document(&self) -> String {
        write_document(DocumentKind::Ideal, &self.ring, None, &self.gens)
    }

    pub fn from_document(doc: &Document, field: F) -> Result<Self> {
        if doc.kind != DocumentKind::Ideal {
            return Err(Error::InvalidArgument("expected an `ideal` document".into()));
        }
        let ring = doc.ring(field)?;
        let gens = doc.polynomials(&ring)?;
        Ideal::new(&ring, gens)
    }
}

/// Monomials of graded degree `d` for the ring's grading.
pub fn monomials_of_graded_degree<F: Field>(ring: &Ring<F>, d: u32) -> Vec<Vec<u8>> {
    if ring.is_standard_graded() {
        return monomial::monomials_of_degree(ring.nvars(), d);
    }
    let w = ring.grading();
    assert!(w.iter().all(|&x| x > 0), "graded pieces need positive weights");
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    fn rec(i: usize, left: u32, w: &[u32], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = left / w[i];
        loop {
            cur[i] = e as u8;
            rec(i + 1, left - e * w[i], w, cur, out);
            if e == 0 {
                break;
            }
            e -= 1;
        }
        cur[i] = 0;
    }
    rec(0, d, w, &mut cur, &mut out);
    out
}

/// `I : x_last^∞` from a grevlex basis, accepted only when its Hilbert
/// polynomial equals that of `I` (then it is the irrelevant saturation).
fn bayer_quotient<F: Field>(gb: &GroebnerBasis<F>, h: &HilbertData) -> Result<Option<GroebnerBasis<F>>> {
    let ring = gb.ring();
    let n = ring.nvars();
    if !gb.polys().iter().any(|p| p.exponent(0)[n - 1] > 0) {
        return Ok(Some(gb.clone()));
    }
    let divided: Vec<Polynomial<F>> = gb.polys().iter().map(|p| p.strip_variable(n - 1).0).collect();
    let s = reduced_from_groebner(ring, &divided);
    let hs = HilbertData::from_leading_monomials(&s.leading_monomials(), n);
    if hs.binomial_coeffs == h.binomial_coeffs {
        Ok(Some(s))
    } else {
        Ok(None)
    }
}

/// Kernel of `k[y_0..y_m] -> k[x_0..x_n]`, `y_i ↦ F_i`, for forms of one
/// degree: elimination of `x` from the graph ideal `(y_i - F_i)` with
/// `deg y_i = deg F_i`.
pub fn ring_map_kernel<F: Field>(forms: &[Polynomial<F>], target: &Ring<F>, opts: &GbOptions) -> Result<Ideal<F>> {
    let Some(first) = forms.iter().find(|f| !f.is_zero()) else {
        return Err(Error::InvalidArgument("all forms are zero".into()));
    };
    let source = first.ring().clone();
    let d = common_degree(forms)?;
    if forms.len() != target.nvars() {
        return Err(Error::InvalidArgument(format!(
            "{} forms for a target with {} variables",
            forms.len(),
            target.nvars()
        )));
    }
    let n = source.nvars();
    let m = target.nvars();
    let mut names = source.names().to_vec();
    for y in target.names() {
        names.push(fresh_name(&names, y));
    }
    let mut grading = vec![1u32; n];
    grading.extend(std::iter::repeat(d).take(m));
    let order = MonomialOrder::Block {
        split: n,
        first: Box::new(MonomialOrder::grevlex()),
        second: Box::new(MonomialOrder::grevlex()),
    };
    let gr = Ring::with_grading(source.field().clone(), names, order, grading)?;
    let emb: Vec<usize> = (0..n).collect();
    let graph: Vec<Polynomial<F>> = forms
        .iter()
        .enumerate()
        .map(|(i, f)| &gr.var(n + i) - &f.map_variables(&gr, &emb))
        .collect();
    let gb = groebner_basis(&gr, &graph, opts)?;
    let out: Vec<Polynomial<F>> = gb
        .polys()
        .iter()
        .filter(|p| p.terms().all(|(_, e)| e[..n].iter().all(|&x| x == 0)))
        .map(|p| Polynomial::from_terms(target, p.terms().map(|(c, e)| (c.clone(), e[n..].to_vec()))))
        .collect();
    Ok(Ideal::new(target, out)?.with_options(GbOptions { max_degree: None, ..opts.clone() }))
}

/// The common degree of a list of homogeneous forms, ignoring zeros.
pub fn common_degree<F: Field>(forms: &[Polynomial<F>]) -> Result<u32> {
    let mut d = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        let e = f.homogeneous_degree().ok_or_else(|| Error::NotHomogeneous(f.to_string()))?;
        match d {
            None => d = Some(e),
            Some(d0) if d0 != e => {
                return Err(Error::NotHomogeneous(format!("forms of degrees {d0} and {e}")));
            }
            _ => {}
        }
    }
    d.ok_or_else(|| Error::InvalidArgument("all forms are zero".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::algebra::text::parse_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(names: &[&str]) -> Ring<PrimeField> {
        Ring::from_names(PrimeField::new(31991).unwrap(), names).unwrap()
    }

    fn ideal(r: &Ring<PrimeField>, src: &[&str]) -> Ideal<PrimeField> {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x0", "x1"]);
        let s = ideal(&r, &["x0*x1"]).saturate(&ideal(&r, &["x0"])).unwrap();
        assert!(s.equals(&ideal(&r, &["x1"])).unwrap());
        let s = ideal(&r, &["x0"]).saturate(&ideal(&r, &["x1"])).unwrap();
        assert!(s.equals(&ideal(&r, &["x0"])).unwrap());
        let s = ideal(&r, &["x0^2", "x0*x1"]).saturate(&ideal(&r, &["x0", "x1"])).unwrap();
        assert!(s.equals(&ideal(&r, &["x0"])).unwrap());
    }

    #[test]
    fn saturation_strategies_agree() {
        let r = ring(&["x", "y", "z", "w"]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // twisted cubic with an embedded point at (0:0:0:1) and junk at the irrelevant ideal
        let i = ideal(&r, &["x*z-y^2", "y*w-z^2", "x*w-y*z"]);
        let m = Ideal::irrelevant(&r);
        let messy = i.intersect(&ideal(&r, &["x", "y", "z^2"])).unwrap().product(&m).unwrap();
        let a = messy.saturate(&m).unwrap();
        let b = messy.saturate_irrelevant(&mut rng).unwrap();
        assert!(a.equals(&b).unwrap());
        let f = parse_polynomial(&r, "z").unwrap();
        let c = messy.saturate(&ideal(&r, &["z"])).unwrap();
        let d = messy.saturate_by_element(&f).unwrap();
        assert!(c.equals(&d).unwrap());
        assert!(c.equals(&i).unwrap());
    }

    #[test]
    fn eliminate_parabola() {
        let r = ring(&["s", "x", "y"]);
        let e = ideal(&r, &["x-s", "y-s^2"]).eliminate(1).unwrap();
        assert_eq!(e.generators().len(), 1);
        assert_eq!(e.generators()[0].to_string(), "x^2-y");
    }

    #[test]
    fn kernel_of_twisted_cubic() {
        let r = ring(&["s", "t"]);
        let y = ring(&["y0", "y1", "y2", "y3"]);
        let forms: Vec<_> = ["s^3", "s^2*t", "s*t^2", "t^3"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        let k = ring_map_kernel(&forms, &y, &GbOptions::default()).unwrap();
        assert_eq!(k.minimal_generator_counts().unwrap(), vec![(2, 3)]);
        let h = k.hilbert_data().unwrap();
        assert_eq!((h.proj_dim, h.degree), (1, 3));
    }

    #[test]
    fn graded_pieces() {
        let r = ring(&["x0", "x1"]);
        let i = ideal(&r, &["x0^2"]);
        assert_eq!(i.graded_piece_basis(2).unwrap().len(), 1);
        assert_eq!(i.graded_piece_dim(3).unwrap(), 2);
    }
}
