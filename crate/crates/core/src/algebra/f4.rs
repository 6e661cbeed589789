//! Gröbner bases by Faugère's F4: S-pairs of the lowest sugar degree are
//! reduced together as rows of one sparse matrix.
//!
//! Pairs are pruned with Buchberger's product and chain criteria in the
//! Gebauer–Möller formulation. Input generators enter the matrix at their
//! own sugar degree, so they are interreduced on the way in.

use std::sync::atomic::{AtomicUsize, Ordering};

use rustc_hash::FxHashMap;

use super::field::{Field, SparseRow, NO_PIVOT};
use super::monomial;
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Limits for a Gröbner basis computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbOptions {
    /// Maximum number of matrix reduction steps before giving up.
    pub max_steps: Option<usize>,
    /// Ignore pairs above this sugar degree; for homogeneous input the result
    /// is then a Gröbner basis up to that degree.
    pub max_degree: Option<u32>,
}

impl GbOptions {
    pub fn with_max_degree(&self, d: u32) -> Self {
        GbOptions { max_degree: Some(d), ..self.clone() }
    }
}

/// A reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    polys: Vec<Polynomial<F>>,
    masks: Vec<u64>,
    /// `Some(d)` when only pairs of sugar at most `d` were processed and some
    /// were left over.
    truncated_at: Option<u32>,
    steps: usize,
    /// For homogeneous input: the input rows that stayed independent of
    /// everything of lower degree, i.e. a minimal generating set.
    minimal_generators: Option<Vec<Polynomial<F>>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn is_complete(&self) -> bool {
        self.truncated_at.is_none()
    }

    /// Number of matrix steps used.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// A minimal homogeneous generating set of the ideal, up to the
    /// truncation degree; `None` for inhomogeneous input.
    pub fn minimal_generators(&self) -> Option<&[Polynomial<F>]> {
        self.minimal_generators.as_deref()
    }

    pub fn leading_monomials(&self) -> Vec<Vec<u8>> {
        self.polys.iter().map(|p| p.exponent(0).to_vec()).collect()
    }

    /// `true` when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.exponent(0).iter().all(|&e| e == 0))
    }

    /// Whether some leading monomial divides `m`.
    pub fn lead_divides(&self, m: &[u8]) -> bool {
        let mm = monomial::mask(m);
        self.polys
            .iter()
            .zip(&self.masks)
            .any(|(p, &k)| k & !mm == 0 && monomial::divides(p.exponent(0), m))
    }

    /// Fully reduced remainder of `f`.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.ring.check_same(f.ring(), "normal_form")?;
        Ok(self.normal_forms(std::slice::from_ref(f)).pop().unwrap())
    }

    /// Remainders of several polynomials, computed in one matrix.
    pub fn normal_forms(&self, fs: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        let reducer = Reducer::new(&self.polys);
        reduce_batch(&self.ring, &reducer, fs)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Leading-monomial lookup over a set of monic polynomials.
struct Reducer<'a, F: Field> {
    polys: Vec<&'a Polynomial<F>>,
    masks: Vec<u64>,
}

impl<'a, F: Field> Reducer<'a, F> {
    fn new(polys: &'a [Polynomial<F>]) -> Self {
        let polys: Vec<&Polynomial<F>> = polys.iter().collect();
        let masks = polys.iter().map(|p| monomial::mask(p.exponent(0))).collect();
        Reducer { polys, masks }
    }

    /// Index of the shortest polynomial whose leading monomial divides `m`.
    fn find(&self, m: &[u8]) -> Option<usize> {
        let mm = monomial::mask(m);
        let mut best: Option<usize> = None;
        for (i, p) in self.polys.iter().enumerate() {
            if self.masks[i] & !mm == 0 && monomial::divides(p.exponent(0), m) {
                if best.map_or(true, |b| self.polys[b].len() > p.len()) {
                    best = Some(i);
                }
            }
        }
        best
    }
}

/// Rows over a shared, lazily discovered set of monomial columns.
struct SymbolicMatrix<F: Field> {
    table: FxHashMap<Box<[u8]>, u32>,
    mons: Vec<Box<[u8]>>,
    next_unprocessed: usize,
    /// Reducer row for each monomial, if any.
    pivot: Vec<u32>,
    reducers: Vec<(Vec<u32>, Vec<F::Elem>)>,
    rows: Vec<(Vec<u32>, Vec<F::Elem>)>,
}

impl<F: Field> SymbolicMatrix<F> {
    fn new() -> Self {
        SymbolicMatrix {
            table: FxHashMap::default(),
            mons: Vec::new(),
            next_unprocessed: 0,
            pivot: Vec::new(),
            reducers: Vec::new(),
            rows: Vec::new(),
        }
    }

    fn column(&mut self, m: Vec<u8>) -> u32 {
        if let Some(&c) = self.table.get(m.as_slice()) {
            return c;
        }
        let c = self.mons.len() as u32;
        let b: Box<[u8]> = m.into_boxed_slice();
        self.mons.push(b.clone());
        self.table.insert(b, c);
        self.pivot.push(NO_PIVOT);
        c
    }

    fn expand(&mut self, p: &Polynomial<F>, mult: &[u8], skip_lead: bool) -> (Vec<u32>, Vec<F::Elem>) {
        let skip = usize::from(skip_lead);
        let mut cols = Vec::with_capacity(p.len());
        let mut vals = Vec::with_capacity(p.len());
        for (c, e) in p.terms().skip(skip) {
            cols.push(self.column(monomial::mul(e, mult)));
            vals.push(c.clone());
        }
        (cols, vals)
    }

    fn add_row(&mut self, p: &Polynomial<F>, mult: &[u8]) {
        let r = self.expand(p, mult, false);
        self.rows.push(r);
    }

    /// Adds a reducer row for every column divisible by a leading monomial.
    fn preprocess(&mut self, reducer: &Reducer<'_, F>) {
        while self.next_unprocessed < self.mons.len() {
            let c = self.next_unprocessed;
            self.next_unprocessed += 1;
            if self.pivot[c] != NO_PIVOT {
                continue;
            }
            let m = self.mons[c].clone();
            if let Some(g) = reducer.find(&m) {
                let p = reducer.polys[g];
                let mult = monomial::quotient(&m, p.exponent(0));
                self.add_reducer(p, &mult, c);
            }
        }
    }

    /// Installs `mult * p` (monic) as the pivot row of column `c`.
    fn add_reducer(&mut self, p: &Polynomial<F>, mult: &[u8], c: usize) {
        let mut row = self.expand(p, mult, true);
        row.0.insert(0, c as u32);
        row.1.insert(0, p.field().one());
        self.pivot[c] = self.reducers.len() as u32;
        self.reducers.push(row);
    }

    /// Sorts columns descending in the ring order and returns
    /// `(column monomials, pivot_of, reducer rows, rows)`.
    #[allow(clippy::type_complexity)]
    fn finish(
        self,
        ring: &Ring<F>,
    ) -> (Vec<Box<[u8]>>, Vec<u32>, Vec<SparseRow<F::Elem>>, Vec<SparseRow<F::Elem>>) {
        let n = self.mons.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by(|&a, &b| ring.cmp_monomials(&self.mons[b as usize], &self.mons[a as usize]));
        let mut new_index = vec![0u32; n];
        for (k, &old) in order.iter().enumerate() {
            new_index[old as usize] = k as u32;
        }
        let remap = |(cols, vals): (Vec<u32>, Vec<F::Elem>)| {
            let cols: Vec<u32> = cols.into_iter().map(|c| new_index[c as usize]).collect();
            debug_assert!(cols.windows(2).all(|w| w[0] < w[1]));
            SparseRow { cols, vals }
        };
        let mut pivot_of = vec![NO_PIVOT; n];
        for (old, &r) in self.pivot.iter().enumerate() {
            if r != NO_PIVOT {
                pivot_of[new_index[old] as usize] = r;
            }
        }
        let reducers = self.reducers.into_iter().map(remap).collect();
        let rows = self.rows.into_iter().map(remap).collect();
        let mut mons = self.mons;
        let mut sorted: Vec<Box<[u8]>> = Vec::with_capacity(n);
        for &old in &order {
            sorted.push(std::mem::take(&mut mons[old as usize]));
        }
        (sorted, pivot_of, reducers, rows)
    }
}

fn row_to_poly<F: Field>(ring: &Ring<F>, mons: &[Box<[u8]>], row: SparseRow<F::Elem>) -> Polynomial<F> {
    let mut exps = Vec::with_capacity(row.len() * ring.nvars());
    for &c in &row.cols {
        exps.extend_from_slice(&mons[c as usize]);
    }
    Polynomial::from_sorted(ring, row.vals, exps)
}

fn reduce_batch<F: Field>(ring: &Ring<F>, reducer: &Reducer<'_, F>, fs: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut sm = SymbolicMatrix::<F>::new();
    let one = vec![0u8; ring.nvars()];
    for f in fs {
        sm.add_row(f, &one);
    }
    sm.preprocess(reducer);
    let (mons, pivot_of, reducers, rows) = sm.finish(ring);
    let field = ring.field();
    rows.iter()
        .map(|r| row_to_poly(ring, &mons, field.reduce_row(r, &pivot_of, &reducers)))
        .collect()
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u8>,
    sugar: u32,
}

struct Engine<F: Field> {
    ring: Ring<F>,
    polys: Vec<Polynomial<F>>,
    sugar: Vec<u32>,
    redundant: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<F: Field> Engine<F> {
    fn active(&self) -> Vec<Polynomial<F>> {
        self.polys
            .iter()
            .zip(&self.redundant)
            .filter(|(_, r)| !**r)
            .map(|(p, _)| p.clone())
            .collect()
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &[u8]) -> u32 {
        let w = self.ring.grading();
        let ld = monomial::weighted_degree(lcm, w);
        let si = self.sugar[i] + ld - monomial::weighted_degree(self.polys[i].exponent(0), w);
        let sj = self.sugar[j] + ld - monomial::weighted_degree(self.polys[j].exponent(0), w);
        si.max(sj)
    }

    /// Gebauer–Möller update for a new basis element `h`.
    fn update(&mut self, h: Polynomial<F>, sugar: u32) {
        let hi = self.polys.len();
        let hlm = h.exponent(0).to_vec();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.redundant.push(false);

        let mut c: Vec<(usize, Vec<u8>, bool)> = (0..hi)
            .filter(|&g| !self.redundant[g])
            .map(|g| {
                let glm = self.polys[g].exponent(0);
                (g, monomial::lcm(glm, &hlm), monomial::coprime(glm, &hlm))
            })
            .collect();
        // ties keep the earliest candidate, so sort for a stable choice
        c.sort_by(|a, b| self.ring.cmp_monomials(&a.1, &b.1).then(a.0.cmp(&b.0)));
        let mut d: Vec<(usize, Vec<u8>, bool)> = Vec::new();
        for k in 0..c.len() {
            let (g, ref l, coprime) = c[k];
            let blocked = !coprime
                && (c[k + 1..].iter().any(|o| monomial::divides(&o.1, l))
                    || d.iter().any(|o| monomial::divides(&o.1, l)));
            if !blocked {
                d.push((g, l.clone(), coprime));
            }
        }

        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !monomial::divides(&hlm, &p.lcm) {
                return true;
            }
            let l1 = monomial::lcm(polys[p.i].exponent(0), &hlm);
            let l2 = monomial::lcm(polys[p.j].exponent(0), &hlm);
            l1 == p.lcm || l2 == p.lcm
        });
        for (g, l, coprime) in d {
            if coprime {
                continue;
            }
            let s = self.pair_sugar(g, hi, &l);
            self.pairs.push(Pair { i: g, j: hi, lcm: l, sugar: s });
        }
        for g in 0..hi {
            if !self.redundant[g] && monomial::divides(&hlm, self.polys[g].exponent(0)) {
                self.redundant[g] = true;
            }
        }
    }
}

static DEFAULT_STEP_BUDGET: AtomicUsize = AtomicUsize::new(0);

/// Step cap applied to every computation whose options leave `max_steps`
/// unset; `None` removes it.
pub fn set_default_step_budget(steps: Option<usize>) {
    DEFAULT_STEP_BUDGET.store(steps.unwrap_or(0), Ordering::Relaxed);
}

pub fn default_step_budget() -> Option<usize> {
    match DEFAULT_STEP_BUDGET.load(Ordering::Relaxed) {
        0 => None,
        n => Some(n),
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>], opts: &GbOptions) -> Result<GroebnerBasis<F>> {
    for g in gens {
        ring.check_same(g.ring(), "groebner_basis")?;
    }
    let mut pending: Vec<(Polynomial<F>, u32)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g.monic(), g.graded_degree()))
        .collect();
    pending.sort_by_key(|p| std::cmp::Reverse(p.1));
    let mut eng = Engine { ring: ring.clone(), polys: Vec::new(), sugar: Vec::new(), redundant: Vec::new(), pairs: Vec::new() };
    let mut steps = 0usize;
    let mut truncated_at = None;
    let one = vec![0u8; ring.nvars()];
    let homogeneous = pending.iter().all(|(g, _)| g.is_homogeneous());
    let mut minimal_generators = Vec::new();

    loop {
        let next_pair = eng.pairs.iter().map(|p| p.sugar).min();
        let next_input = pending.last().map(|p| p.1);
        let d = match (next_pair, next_input) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(maxd) = opts.max_degree {
            if d > maxd {
                truncated_at = Some(maxd);
                break;
            }
        }
        if let Some(cap) = opts.max_steps.or_else(default_step_budget) {
            if steps >= cap {
                return Err(Error::BudgetExceeded(format!(
                    "Gröbner basis stopped after {steps} steps at degree {d} with {} pairs and {} inputs left",
                    eng.pairs.len(),
                    pending.len()
                )));
            }
        }
        steps += 1;

        let active = eng.active();
        let reducer = Reducer::new(&active);
        let mut sm = SymbolicMatrix::<F>::new();
        let mut seen: FxHashMap<(usize, Vec<u8>), ()> = FxHashMap::default();
        let (selected, rest): (Vec<Pair>, Vec<Pair>) = std::mem::take(&mut eng.pairs).into_iter().partition(|p| p.sugar == d);
        eng.pairs = rest;
        for p in &selected {
            // the half of `i` becomes the pivot of the lcm column unless another
            // pair claimed it first, in which case it is reduced like the rest
            let c = sm.column(p.lcm.clone()) as usize;
            let mult_i = monomial::quotient(&p.lcm, eng.polys[p.i].exponent(0));
            if sm.pivot[c] == NO_PIVOT {
                sm.add_reducer(&eng.polys[p.i], &mult_i, c);
                seen.insert((p.i, mult_i), ());
            } else if seen.insert((p.i, mult_i.clone()), ()).is_none() {
                sm.add_row(&eng.polys[p.i], &mult_i);
            }
            let mult = monomial::quotient(&p.lcm, eng.polys[p.j].exponent(0));
            if seen.insert((p.j, mult.clone()), ()).is_none() {
                sm.add_row(&eng.polys[p.j], &mult);
            }
        }
        let n_pair_rows = sm.rows.len();
        while pending.last().is_some_and(|p| p.1 == d) {
            let (g, _) = pending.pop().unwrap();
            sm.add_row(&g, &one);
        }
        sm.preprocess(&reducer);
        let (mons, mut pivot_of, mut rows_piv, rows) = sm.finish(ring);
        let field = ring.field();
        let first_new = rows_piv.len();
        for (k, r) in rows.iter().enumerate() {
            let mut red = field.reduce_row(r, &pivot_of, &rows_piv);
            if red.is_empty() {
                continue;
            }
            if homogeneous && k >= n_pair_rows {
                minimal_generators.push(row_to_poly(ring, &mons, red.clone()));
            }
            field.normalize_row(&mut red);
            pivot_of[red.lead().unwrap() as usize] = rows_piv.len() as u32;
            rows_piv.push(red);
        }
        let mut new_polys: Vec<Polynomial<F>> = rows_piv
            .drain(first_new..)
            .map(|r| row_to_poly(ring, &mons, r))
            .collect();
        new_polys.sort_by(|a, b| ring.cmp_monomials(a.exponent(0), b.exponent(0)));
        for h in new_polys {
            eng.update(h, d);
        }
    }

    let minimal = eng.active();
    let polys = interreduce(ring, minimal);
    let masks = polys.iter().map(|p| monomial::mask(p.exponent(0))).collect();
    let minimal_generators = homogeneous.then_some(minimal_generators);
    Ok(GroebnerBasis { ring: ring.clone(), polys, masks, truncated_at, steps, minimal_generators })
}

/// Canonical reduced basis from polynomials already known to form a
/// Gröbner basis.
pub fn reduced_from_groebner<F: Field>(ring: &Ring<F>, polys: &[Polynomial<F>]) -> GroebnerBasis<F> {
    let mut ps: Vec<Polynomial<F>> = polys.iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    ps.sort_by(|a, b| ring.cmp_monomials(a.exponent(0), b.exponent(0)));
    let mut minimal: Vec<Polynomial<F>> = Vec::with_capacity(ps.len());
    for p in ps {
        if !minimal.iter().any(|q| monomial::divides(q.exponent(0), p.exponent(0))) {
            minimal.push(p);
        }
    }
    let polys = interreduce(ring, minimal);
    let masks = polys.iter().map(|p| monomial::mask(p.exponent(0))).collect();
    GroebnerBasis { ring: ring.clone(), polys, masks, truncated_at: None, steps: 0, minimal_generators: None }
}

/// Reduces the tails of a minimal basis and sorts it by leading monomial.
fn interreduce<F: Field>(ring: &Ring<F>, mut minimal: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    minimal.sort_by(|a, b| ring.cmp_monomials(a.exponent(0), b.exponent(0)));
    if minimal.iter().any(|p| p.is_constant()) {
        return vec![Polynomial::one(ring)];
    }
    let tails: Vec<Polynomial<F>> = minimal
        .iter()
        .map(|p| {
            let n = ring.nvars();
            Polynomial::from_sorted(ring, p.coeffs()[1..].to_vec(), p.raw_exponents()[n..].to_vec())
        })
        .collect();
    let reducer = Reducer::new(&minimal);
    let reduced = reduce_batch(ring, &reducer, &tails);
    minimal
        .iter()
        .zip(reduced)
        .map(|(p, t)| {
            let lead = Polynomial::monomial(ring, p.coeff(0).clone(), p.exponent(0).to_vec());
            &lead + &t
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::algebra::order::MonomialOrder;
    use crate::algebra::text::parse_polynomial;

    fn ring(names: &[&str]) -> Ring<PrimeField> {
        Ring::from_names(PrimeField::new(31991).unwrap(), names).unwrap()
    }

    fn polys(r: &Ring<PrimeField>, src: &[&str]) -> Vec<Polynomial<PrimeField>> {
        src.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()
    }

    #[test]
    fn principal_ideal() {
        let r = ring(&["x0", "x1"]);
        let gb = groebner_basis(&r, &polys(&r, &["x0"]), &GbOptions::default()).unwrap();
        assert_eq!(gb.polys(), polys(&r, &["x0"]).as_slice());
    }

    #[test]
    fn twisted_cubic_has_three_quadrics() {
        let r = ring(&["a", "b", "c", "d"]);
        let g = polys(&r, &["a*c-b^2", "b*d-c^2", "a*d-b*c", "a*(a*c-b^2)+b*(b*d-c^2)"]);
        let gb = groebner_basis(&r, &g, &GbOptions::default()).unwrap();
        assert_eq!(gb.len(), 3);
        assert!(gb.polys().iter().all(|p| p.homogeneous_degree() == Some(2)));
    }

    #[test]
    fn normal_form_single_step() {
        let r = ring(&["x", "y"]);
        let gb = groebner_basis(&r, &polys(&r, &["x^2-y^2"]), &GbOptions::default()).unwrap();
        let nf = gb.normal_form(&parse_polynomial(&r, "x^2").unwrap()).unwrap();
        assert_eq!(nf, parse_polynomial(&r, "y^2").unwrap());
        let one = Polynomial::one(&r);
        assert_eq!(gb.normal_form(&one).unwrap(), one);
    }

    #[test]
    fn elimination_of_parabola() {
        let f = PrimeField::new(31991).unwrap();
        let names = ["s", "x", "y"].iter().map(|s| s.to_string()).collect();
        let r = Ring::new(f, names, MonomialOrder::elimination(1)).unwrap();
        let gb = groebner_basis(&r, &polys(&r, &["x-s", "y-s^2"]), &GbOptions::default()).unwrap();
        let free: Vec<_> = gb.polys().iter().filter(|p| p.support_vars().iter().all(|&v| v > 0)).collect();
        assert_eq!(free.len(), 1);
        assert_eq!(free[0].clone(), parse_polynomial(&r, "x^2-y").unwrap());
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["x", "y"]);
        let gb = groebner_basis(&r, &polys(&r, &["x*y-1", "x"]), &GbOptions::default()).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn budget_is_reported() {
        let r = ring(&["a", "b", "c", "d"]);
        let g = polys(&r, &["a*c-b^2", "b*d-c^2", "a*d-b*c"]);
        let opts = GbOptions { max_steps: Some(1), max_degree: None };
        assert!(matches!(groebner_basis(&r, &g, &opts), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn cyclic4_matches_known_basis_size() {
        // cyclic-4 has a 7-element reduced grevlex basis
        let r = ring(&["a", "b", "c", "d"]);
        let g = polys(&r, &["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"]);
        let gb = groebner_basis(&r, &g, &GbOptions::default()).unwrap();
        assert_eq!(gb.len(), 7);
        for p in &g {
            assert!(gb.contains(p).unwrap());
        }
    }
}
