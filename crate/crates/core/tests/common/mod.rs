//! Property checks shared by the proptest suite and the acceptance runner.
//! Each check takes a seed and returns a description of the first violation.

#![allow(dead_code)]

use cremona::algebra::{Field, GbOptions, Ideal, MonomialOrder, Polynomial, PrimeField, Ring};
use cremona::constructions::veronese;
use cremona::geometry::number_connected_components;
use cremona::ratmap::{
    homog_part_of_image, invert_birational_map_rs, is_inverse_map, projective_degrees, trial_rng, LinearSubspace,
    RationalMap,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub const P: u32 = 32003;

pub fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

pub fn ring(n: usize) -> Ring<PrimeField> {
    Ring::indexed(field(), "x", n).with_order(MonomialOrder::grevlex()).unwrap()
}

fn e<T>(r: cremona::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_monomials(n: usize, d: u32) -> Vec<Vec<u8>> {
    if n == 1 {
        return vec![vec![d as u8]];
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in all_monomials(n - 1, d - a) {
            rest.insert(0, a as u8);
            out.push(rest);
        }
    }
    out
}

/// A homogeneous form of degree `d` with at most `terms` random terms.
pub fn random_form(r: &Ring<PrimeField>, d: u32, terms: usize, rng: &mut ChaCha8Rng) -> Polynomial<PrimeField> {
    let mons = all_monomials(r.nvars(), d);
    let t = (0..terms).map(|_| (rng.gen_range(1..P), mons[rng.gen_range(0..mons.len())].clone()));
    Polynomial::from_terms(r, t)
}

pub fn random_ideal(r: &Ring<PrimeField>, gens: usize, d: u32, terms: usize, seed: u64) -> Ideal<PrimeField> {
    let mut rng = trial_rng(seed);
    let g = (0..gens).map(|_| random_form(r, d, terms, &mut rng)).collect();
    Ideal::new(r, g).unwrap()
}

/// Images of the variables under `x ↦ L U x` with `L` unit lower and `U`
/// upper triangular with nonzero diagonal, so always invertible.
pub fn random_coordinate_change(r: &Ring<PrimeField>, rng: &mut ChaCha8Rng) -> Vec<Polynomial<PrimeField>> {
    let f = r.field().clone();
    let n = r.nvars();
    let mut lower = vec![vec![0u32; n]; n];
    let mut upper = vec![vec![0u32; n]; n];
    for i in 0..n {
        lower[i][i] = 1;
        upper[i][i] = rng.gen_range(1..P);
        for j in 0..n {
            if j < i {
                lower[i][j] = rng.gen_range(0..P);
            } else if j > i {
                upper[i][j] = rng.gen_range(0..P);
            }
        }
    }
    (0..n)
        .map(|i| {
            let terms = (0..n).map(|j| {
                let c = (0..n).fold(0u32, |acc, k| f.add(&acc, &f.mul(&lower[i][k], &upper[k][j])));
                let mut ex = vec![0u8; n];
                ex[j] = 1;
                (c, ex)
            });
            Polynomial::from_terms(r, terms)
        })
        .collect()
}

fn substitute_ideal(i: &Ideal<PrimeField>, images: &[Polynomial<PrimeField>]) -> Ideal<PrimeField> {
    let g = i.generators().iter().map(|p| p.substitute(images).unwrap()).collect();
    Ideal::new(i.ring(), g).unwrap()
}

/// Rank of a list of forms of one degree, by dense elimination mod `P`.
pub fn rank_of_forms(forms: &[Polynomial<PrimeField>], n: usize, d: u32) -> usize {
    let f = field();
    let mons = all_monomials(n, d);
    let mut rows: Vec<Vec<u32>> =
        forms.iter().map(|p| mons.iter().map(|m| p.coefficient_of(m)).collect()).collect();
    let mut rank = 0;
    for col in 0..mons.len() {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = f.inv(&rows[rank][col]).unwrap();
        let pivot: Vec<u32> = rows[rank].iter().map(|x| f.mul(x, &inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `dim (R/I)_t` from the span of `m · g` over generators `g`.
pub fn naive_hilbert_function(i: &Ideal<PrimeField>, t: u32) -> usize {
    let n = i.ring().nvars();
    let mut forms = Vec::new();
    for g in i.generators() {
        let d = g.total_degree().unwrap();
        if d <= t {
            for m in all_monomials(n, t - d) {
                forms.push(g.mul_term(&1, &m));
            }
        }
    }
    all_monomials(n, t).len() - rank_of_forms(&forms, n, t)
}

/// Computing a Gröbner basis of a reduced Gröbner basis returns it unchanged.
pub fn gb_idempotent(seed: u64, gens: usize, d: u32) -> Check {
    let r = ring(4);
    let i = random_ideal(&r, gens, d, 4, seed);
    let g1 = e(i.groebner_basis())?;
    let again = Ideal::new(&r, g1.polys().to_vec()).unwrap();
    let g2 = e(again.groebner_basis())?;
    ensure(g1.polys() == g2.polys(), || format!("seed {seed}: basis changed on recomputation"))
}

/// `I : m^∞` and `I : f^∞` are fixed by a second saturation, and the fast
/// irrelevant saturation agrees with iterated quotients.
pub fn saturation_stabilizes(seed: u64) -> Check {
    let r = ring(4);
    let mut rng = trial_rng(seed);
    let x0 = r.var(0);
    let extra = random_form(&r, 2, 3, &mut rng);
    let base = random_ideal(&r, 2, 2, 3, seed ^ 0x5a5a);
    let i = Ideal::new(&r, base.generators().iter().map(|g| g * &x0).chain([&extra * &x0]).collect()).unwrap();
    let s1 = e(i.saturate_irrelevant(&mut rng))?;
    let s2 = e(s1.saturate_irrelevant(&mut rng))?;
    ensure(e(s1.equals(&s2))?, || format!("seed {seed}: I:m^∞ not stable"))?;
    let slow = e(i.saturate(&Ideal::irrelevant(&r)))?;
    ensure(e(s1.equals(&slow))?, || format!("seed {seed}: saturation methods disagree"))?;
    let f1 = e(i.saturate_by_element(&x0))?;
    let f2 = e(f1.saturate_by_element(&x0))?;
    ensure(e(f1.equals(&f2))?, || format!("seed {seed}: I:x0^∞ not stable"))?;
    ensure(e(f1.contains_ideal(&base))?, || format!("seed {seed}: I:x0^∞ lost a generator"))
}

/// The Hilbert function from leading monomials matches direct linear
/// algebra, and equals the Hilbert polynomial on 20 degrees past the
/// regularity bound.
pub fn hilbert_agrees(seed: u64, gens: usize) -> Check {
    let r = ring(4);
    let i = random_ideal(&r, gens, 2, 4, seed);
    let h = e(i.hilbert_data())?;
    for t in 0..6 {
        let (a, b) = (h.hilbert_function(t as i64), naive_hilbert_function(&i, t) as i128);
        ensure(a == b, || format!("seed {seed}: HF({t}) = {a}, linear algebra gives {b}"))?;
    }
    let start = h.regularity_bound.max(0) + 1;
    for t in start..start + 20 {
        let (a, b) = (h.hilbert_function(t), h.hilbert_polynomial(t));
        ensure(a == b, || format!("seed {seed}: HF({t}) = {a} but HP({t}) = {b}"))?;
    }
    Ok(())
}

/// Each form from `homog_part_of_image` vanishes on the image, and the forms
/// span the degree-`d` part of the elimination kernel.
pub fn image_forms_match_kernel(f: &RationalMap<PrimeField>, d: u32) -> Check {
    let forms = e(homog_part_of_image(f, d))?;
    for g in &forms {
        let back = e(g.substitute(f.forms()))?;
        ensure(back.is_zero(), || format!("{g} does not vanish on the image"))?;
    }
    let kernel = e(cremona::algebra::ideal::ring_map_kernel(f.forms(), f.target(), &GbOptions::default()))?;
    let kd = e(kernel.graded_piece_basis(d))?;
    let n = f.target().nvars();
    let (a, b) = (rank_of_forms(&forms, n, d), rank_of_forms(&kd, n, d));
    ensure(a == forms.len(), || "image forms are dependent".into())?;
    ensure(a == b, || format!("{a} image forms, kernel has {b} in degree {d}"))?;
    let mut both = forms.clone();
    both.extend(kd);
    ensure(rank_of_forms(&both, n, d) == a, || "image forms and kernel span differ".into())
}

pub fn twisted_cubic() -> RationalMap<PrimeField> {
    veronese(&field(), 1, 3).unwrap()
}

pub fn veronese_surface() -> RationalMap<PrimeField> {
    veronese(&field(), 2, 2).unwrap()
}

/// `f` followed by a random change of coordinates of the target.
pub fn moved(f: &RationalMap<PrimeField>, seed: u64) -> RationalMap<PrimeField> {
    let mut rng = trial_rng(seed);
    let change = random_coordinate_change(f.target(), &mut rng);
    let forms = change.iter().map(|l| l.substitute(f.forms()).unwrap()).collect();
    RationalMap::new(f.source(), f.target(), forms).unwrap()
}

pub fn homog_part_on_veroneses(seed: u64) -> Check {
    image_forms_match_kernel(&moved(&twisted_cubic(), seed), 2)?;
    image_forms_match_kernel(&moved(&twisted_cubic(), seed), 3)?;
    image_forms_match_kernel(&moved(&veronese_surface(), seed), 2)
}

pub fn standard_cremona() -> RationalMap<PrimeField> {
    let r = ring(3);
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    RationalMap::new(&r, &r, vec![&y * &z, &x * &z, &x * &y]).unwrap()
}

/// `σ` conjugated by random coordinate changes is inverted by a certified
/// quadratic map and has projective degrees `(1, 2, 1)`.
pub fn cremona_certification(seed: u64) -> Check {
    let sigma = standard_cremona();
    let r = sigma.source().clone();
    let mut rng = trial_rng(seed);
    let a = random_coordinate_change(&r, &mut rng);
    let b = random_coordinate_change(&r, &mut rng);
    let inner: Vec<_> = sigma.forms().iter().map(|f| f.substitute(&a).unwrap()).collect();
    let forms = b.iter().map(|l| l.substitute(&inner).unwrap()).collect();
    let f = RationalMap::new(&r, &r, forms).unwrap();
    let inv = e(invert_birational_map_rs(&f, &Ideal::zero(&r), 3))?;
    ensure(inv.degree == 2, || format!("seed {seed}: inverse of degree {}", inv.degree))?;
    ensure(e(is_inverse_map(&f, &inv.inverse))?.is_inverse, || format!("seed {seed}: inverse fails"))?;
    ensure(e(is_inverse_map(&inv.inverse, &f))?.is_inverse, || format!("seed {seed}: inverse fails"))?;
    let pd = e(projective_degrees(&f, seed))?;
    ensure(pd == [1, 2, 1], || format!("seed {seed}: projective degrees {pd:?}"))
}

/// Components of a union of pairwise disjoint random points and lines in
/// `P^4`, and of a twisted cubic with a disjoint line, add up.
pub fn components_add(seed: u64, pieces: usize) -> Check {
    let r = ring(5);
    let mut rng = trial_rng(seed);
    let mut union: Option<Ideal<PrimeField>> = None;
    for k in 0..pieces {
        let codim = if k % 2 == 0 { 3 } else { 4 };
        let l = e(LinearSubspace::random(&r, codim, &mut rng))?;
        let li = e(l.ideal())?;
        union = Some(match union {
            None => li,
            Some(u) => e(u.intersect(&li))?,
        });
    }
    let u = union.unwrap();
    let c = e(number_connected_components(&u, &mut rng))?.count;
    ensure(c == pieces, || format!("seed {seed}: {c} components for {pieces} disjoint pieces"))?;

    let r3 = ring(4);
    let cubic = e(cremona::algebra::ideal::ring_map_kernel(
        moved(&twisted_cubic(), seed).forms(),
        &r3,
        &GbOptions::default(),
    ))?;
    let line = e(e(LinearSubspace::random(&r3, 2, &mut rng))?.ideal())?;
    let one = e(number_connected_components(&cubic, &mut rng))?.count;
    let two = e(number_connected_components(&e(cubic.intersect(&line))?, &mut rng))?.count;
    ensure((one, two) == (1, 2), || format!("seed {seed}: cubic {one}, cubic and line {two}"))
}

/// Dimension and degree do not change under a linear change of coordinates.
pub fn coordinate_change_invariance(seed: u64) -> Check {
    let r = ring(5);
    let i = random_ideal(&r, 3, 2, 5, seed);
    let mut rng = trial_rng(seed.wrapping_add(1));
    let j = substitute_ideal(&i, &random_coordinate_change(&r, &mut rng));
    let (a, b) = (e(i.hilbert_data())?, e(j.hilbert_data())?);
    ensure((a.proj_dim, a.degree) == (b.proj_dim, b.degree), || {
        format!("seed {seed}: ({}, {}) became ({}, {})", a.proj_dim, a.degree, b.proj_dim, b.degree)
    })?;
    ensure(a.binomial_coeffs == b.binomial_coeffs, || format!("seed {seed}: Hilbert polynomial changed"))
}

/// The kernel by elimination from the graph ideal agrees with `eliminate`
/// applied to the same graph ideal written with the map variables last.
pub fn elimination_matches_kernel(seed: u64) -> Check {
    let f = moved(&twisted_cubic(), seed);
    let k1 = e(cremona::algebra::ideal::ring_map_kernel(f.forms(), f.target(), &GbOptions::default()))?;
    // Graph of the map in k[s, t, y0..y3]; the forms are cubic so weight y by 3.
    let names: Vec<String> = ["s", "t"].iter().map(|s| s.to_string()).chain((0..4).map(|i| format!("y{i}"))).collect();
    let g = Ring::with_grading(field(), names, MonomialOrder::grevlex(), vec![1, 1, 3, 3, 3, 3]).unwrap();
    let emb = [0usize, 1];
    let graph: Vec<_> = f.forms().iter().enumerate().map(|(i, p)| &g.var(2 + i) - &p.map_variables(&g, &emb)).collect();
    let k2 = e(e(Ideal::new(&g, graph))?.eliminate(2))?;
    let k2 = Ideal::new(f.target(), k2.generators().iter().map(|p| p.reorder(f.target())).collect()).unwrap();
    ensure(e(k1.equals(&k2))?, || format!("seed {seed}: elimination and kernel differ"))
}
