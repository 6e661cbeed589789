//! Degree and projective degrees of a rational map by random specialization.

use rand::RngCore;
use serde::Serialize;

use super::{random_combination, random_point, trial_rng, RationalMap};
use crate::algebra::{Field, Ideal, Polynomial};
use crate::error::{Error, Result};

/// Fiber data from one random point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub seed: u64,
    pub fiber_dimension: i64,
    pub fiber_degree: i128,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapDegreeReport {
    /// Degree of the map; 0 when the general fiber is positive dimensional.
    pub degree: u64,
    pub fiber_dimension: i64,
    pub seeds: Vec<u64>,
    pub trials: usize,
    pub outcomes: Vec<TrialOutcome>,
    pub unanimous: bool,
}

/// Generic element `sum c_i F_i` that does not vanish at `value = F(p)`.
fn saturating_element<F: Field>(
    f: &RationalMap<F>,
    value: &[F::Elem],
    rng: &mut dyn RngCore,
) -> Polynomial<F> {
    let field = f.source().field();
    loop {
        let c: Vec<F::Elem> = (0..value.len()).map(|_| field.random(rng)).collect();
        let at = c.iter().zip(value).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)));
        if field.is_zero(&at) {
            continue;
        }
        let mut g = Polynomial::zero(f.source());
        for (ci, fi) in c.iter().zip(f.forms()) {
            g = &g + &fi.scale(ci);
        }
        return g;
    }
}

fn fiber_trial<F: Field>(f: &RationalMap<F>, seed: u64) -> Result<TrialOutcome> {
    let mut rng = trial_rng(seed);
    let field = f.source().field().clone();
    for _ in 0..32 {
        let p = random_point(f.source(), &mut rng);
        let v = f.evaluate(&p);
        let Some(k) = v.iter().position(|x| !field.is_zero(x)) else {
            continue;
        };
        // the 2x2 minors of [F(x); F(p)] are spanned by those through column k
        let gens: Vec<Polynomial<F>> = (0..v.len())
            .filter(|&i| i != k)
            .map(|i| &f.forms()[i].scale(&v[k]) - &f.forms()[k].scale(&v[i]))
            .filter(|g| !g.is_zero())
            .collect();
        let fiber = Ideal::new(f.source(), gens)?;
        let g = saturating_element(f, &v, &mut rng);
        let sat = fiber.saturate_by_element(&g)?;
        let h = sat.hilbert_data()?;
        return Ok(TrialOutcome { seed, fiber_dimension: h.proj_dim, fiber_degree: h.degree });
    }
    Err(Error::InsideBaseLocus("every sampled point fell in the base locus".into()))
}

/// Degree of `f` from the fibers over `trials` random points, seeds
/// `seed, seed + 1, ...`, decided by majority.
pub fn degree_of_rational_map<F: Field>(f: &RationalMap<F>, seed: u64, trials: usize) -> Result<MapDegreeReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is needed".into()));
    }
    let f = f.with_grevlex_source()?;
    let seeds: Vec<u64> = (0..trials as u64).map(|i| seed.wrapping_add(i)).collect();
    let outcomes: Vec<TrialOutcome> = seeds.iter().map(|&s| fiber_trial(&f, s)).collect::<Result<_>>()?;
    let key = |o: &TrialOutcome| if o.fiber_dimension == 0 { (0, o.fiber_degree) } else { (o.fiber_dimension, 0) };
    let mut best = None;
    for o in &outcomes {
        let votes = outcomes.iter().filter(|x| key(x) == key(o)).count();
        if 2 * votes > trials {
            best = Some(*o);
            break;
        }
    }
    let Some(win) = best else {
        let listed: Vec<String> =
            outcomes.iter().map(|o| format!("seed {}: dim {} deg {}", o.seed, o.fiber_dimension, o.fiber_degree)).collect();
        return Err(Error::TrialsDisagree(listed.join("; ")));
    };
    let unanimous = outcomes.iter().all(|o| key(o) == key(&win));
    let degree = if win.fiber_dimension == 0 { win.fiber_degree as u64 } else { 0 };
    Ok(MapDegreeReport { degree, fiber_dimension: win.fiber_dimension, seeds, trials, outcomes, unanimous })
}

/// Projective degrees `d_0, ..., d_n`: `d_i` is the degree of the closure of
/// the preimage of a random linear subspace of codimension `n - i`.
pub fn projective_degrees<F: Field>(f: &RationalMap<F>, seed: u64) -> Result<Vec<u64>> {
    let f = f.with_grevlex_source()?;
    let n = f.source_dim();
    let m = f.target_dim();
    let mut rng = trial_rng(seed);
    let mut out = vec![0u64; n + 1];
    out[n] = 1;
    for i in 0..n {
        let c = n - i;
        if c > m {
            continue;
        }
        let mut attempt = 0;
        out[i] = loop {
            let gens: Vec<Polynomial<F>> = (0..c).map(|_| random_combination(f.source(), f.forms(), &mut rng)).collect();
            let p = random_point(f.source(), &mut rng);
            let g = saturating_element(&f, &f.evaluate(&p), &mut rng);
            if g.is_zero() {
                continue;
            }
            let sat = Ideal::new(f.source(), gens)?.saturate_by_element(&g)?;
            let h = sat.hilbert_data()?;
            if h.proj_dim < 0 {
                break 0;
            }
            if h.proj_dim == i as i64 {
                break h.degree as u64;
            }
            attempt += 1;
            if attempt >= 3 {
                return Err(Error::TrialsDisagree(format!(
                    "preimage of a codimension {c} subspace has dimension {} instead of {i}",
                    h.proj_dim
                )));
            }
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_polynomial;
    use crate::algebra::{PrimeField, Ring};

    fn ring(names: &[&str]) -> Ring<PrimeField> {
        Ring::from_names(PrimeField::new(31991).unwrap(), names).unwrap()
    }

    fn map(r: &Ring<PrimeField>, t: &Ring<PrimeField>, forms: &[&str]) -> RationalMap<PrimeField> {
        RationalMap::new(r, t, forms.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn identity_has_degree_one() {
        let r = ring(&["x", "y", "z"]);
        let rep = degree_of_rational_map(&RationalMap::identity(&r), 0, 3).unwrap();
        assert_eq!(rep.degree, 1);
        assert!(rep.unanimous);
        assert_eq!(projective_degrees(&RationalMap::identity(&r), 0).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn double_cover_of_a_conic() {
        let l = ring(&["s", "t"]);
        let p2 = ring(&["a", "b", "c"]);
        let f = map(&l, &p2, &["s^4", "s^2*t^2", "t^4"]);
        assert_eq!(degree_of_rational_map(&f, 7, 3).unwrap().degree, 2);
    }

    #[test]
    fn standard_cremona_degrees() {
        let r = ring(&["x", "y", "z"]);
        let s = map(&r, &r, &["y*z", "x*z", "x*y"]);
        assert_eq!(degree_of_rational_map(&s, 0, 3).unwrap().degree, 1);
        assert_eq!(projective_degrees(&s, 0).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn projection_has_positive_fibers() {
        let r = ring(&["x", "y", "z"]);
        let l = ring(&["a", "b"]);
        let f = map(&r, &l, &["x", "y"]);
        let rep = degree_of_rational_map(&f, 0, 3).unwrap();
        assert_eq!((rep.degree, rep.fiber_dimension), (0, 1));
    }
}
