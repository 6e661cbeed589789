//! Singular loci and smoothness from Jacobian minors.

use rand::RngCore;
use serde::Serialize;

use crate::algebra::field::{next_prime, rational_to_prime};
use crate::algebra::graded::span_basis;
use crate::algebra::minors::{jacobian, random_minor_combination, Minors};
use crate::algebra::{Field, Ideal, PrimeField, Polynomial, RationalField, Ring};
use crate::error::{Error, Result};

/// Above this many minors only random combinations are used.
pub const EXHAUSTIVE_MINOR_LIMIT: u128 = 3000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinorStrategy {
    /// Every `c x c` minor.
    Exhaustive,
    /// This many random combinations of all minors (`det(A M B)`).
    Random(usize),
}

/// `I` plus order-`c` Jacobian minors.
#[derive(Clone, Debug)]
pub struct JacobianIdeal<F: Field> {
    pub ideal: Ideal<F>,
    pub codim: usize,
    pub strategy: MinorStrategy,
    /// Number of minors (or combinations) that entered the ideal.
    pub minors_used: usize,
}

/// Codimension of `V(I)` in its projective space; the ambient dimension
/// plus one when `V(I)` is empty.
pub fn codimension<F: Field>(i: &Ideal<F>) -> Result<usize> {
    let n = i.ring().nvars() as i64 - 1;
    Ok((n - i.dim()?) as usize)
}

/// `I` plus the order-`c` minors of the Jacobian of a minimal generating
/// set. Small cases use every minor; large ones use `extra + nvars` random
/// combinations, which cut out the same set for general choices.
pub fn jacobian_ideal<F: Field>(
    i: &Ideal<F>,
    c: usize,
    exhaustive: bool,
    extra: usize,
    rng: &mut dyn RngCore,
) -> Result<JacobianIdeal<F>> {
    let ring = i.ring().clone();
    let gens = i.minimal_generators()?;
    let jac = jacobian(&gens);
    let n = ring.nvars();
    if c == 0 || c > gens.len().min(n) {
        return Ok(JacobianIdeal { ideal: i.clone(), codim: c, strategy: MinorStrategy::Exhaustive, minors_used: 0 });
    }
    let count = Minors::<F>::count(gens.len(), n, c);
    let (minors, strategy) = if exhaustive || count <= EXHAUSTIVE_MINOR_LIMIT {
        let all: Vec<Polynomial<F>> = Minors::new(&ring, &jac, c)?.collect::<Result<_>>()?;
        (reduce_span(&ring, all)?, MinorStrategy::Exhaustive)
    } else {
        let k = n + extra;
        let combos: Vec<Polynomial<F>> =
            (0..k).map(|_| random_minor_combination(&ring, &jac, c, rng)).collect::<Result<_>>()?;
        (reduce_span(&ring, combos)?, MinorStrategy::Random(k))
    };
    let used = minors.len();
    let ideal = i.add_generators(&minors)?;
    Ok(JacobianIdeal { ideal, codim: c, strategy, minors_used: used })
}

/// A basis of the span of homogeneous polynomials, degree by degree.
fn reduce_span<F: Field>(ring: &Ring<F>, polys: Vec<Polynomial<F>>) -> Result<Vec<Polynomial<F>>> {
    let mut by_degree: std::collections::BTreeMap<u32, Vec<Polynomial<F>>> = Default::default();
    for p in polys.into_iter().filter(|p| !p.is_zero()) {
        let d = p.homogeneous_degree().ok_or_else(|| Error::NotHomogeneous(p.to_string()))?;
        by_degree.entry(d).or_default().push(p);
    }
    let mut out = Vec::new();
    for (d, ps) in by_degree {
        out.extend(span_basis(ring, &ps, d)?);
    }
    Ok(out)
}

/// The singular locus of `V(I)`, assumed equidimensional: `I` plus the
/// minors of order `codim I`.
pub fn singular_locus<F: Field>(i: &Ideal<F>, rng: &mut dyn RngCore) -> Result<JacobianIdeal<F>> {
    if i.is_zero() {
        return Err(Error::InvalidArgument("singular locus of the zero ideal".into()));
    }
    let c = codimension(i)?;
    jacobian_ideal(i, c, false, 4, rng)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Smooth,
    Singular,
    InconclusiveAtP,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessReport {
    pub codim: usize,
    pub prime: u32,
    /// Projective dimension of `V(J)`.
    pub jacobian_dim: i64,
    pub verdict: Verdict,
    pub strategy: MinorStrategy,
    pub minors_used: usize,
    /// Codimension seen at a second prime, when checked.
    pub second_prime: Option<(u32, usize)>,
    pub note: Option<String>,
}

/// Smoothness of `V(I)` over the algebraic closure of `Z/p`.
///
/// A random-combination Jacobian ideal with empty zero set proves
/// smoothness outright, since it lies inside the full Jacobian ideal.
pub fn is_smooth_mod_p(i: &Ideal<PrimeField>, rng: &mut dyn RngCore) -> Result<SmoothnessReport> {
    let prime = i.ring().field().modulus();
    let c = codimension(i)?;
    let mut report = SmoothnessReport {
        codim: c,
        prime,
        jacobian_dim: -1,
        verdict: Verdict::Smooth,
        strategy: MinorStrategy::Exhaustive,
        minors_used: 0,
        second_prime: None,
        note: None,
    };
    if c >= i.ring().nvars() {
        report.note = Some("empty scheme".into());
        return Ok(report);
    }
    let mut extra = 4;
    loop {
        let j = jacobian_ideal(i, c, false, extra, rng)?;
        let d = j.ideal.dim()?;
        report.jacobian_dim = d;
        report.strategy = j.strategy;
        report.minors_used = j.minors_used;
        if d < 0 {
            return Ok(report);
        }
        if j.strategy == MinorStrategy::Exhaustive || extra > i.ring().nvars() {
            report.verdict = Verdict::Singular;
            if j.strategy != MinorStrategy::Exhaustive {
                report.note = Some("singular points found with random minor combinations".into());
            }
            return Ok(report);
        }
        // a second, larger draw before declaring singular points
        extra += i.ring().nvars();
    }
}

/// Reduction of an ideal with rational coefficients modulo `p`.
pub fn reduce_mod_p(i: &Ideal<RationalField>, field: &PrimeField) -> Result<Ideal<PrimeField>> {
    let src = i.ring();
    let ring = Ring::with_grading(field.clone(), src.names().to_vec(), src.order().clone(), src.grading().to_vec())?;
    let gens = i
        .generators()
        .iter()
        .map(|g| {
            g.map_coefficients(&ring, |c| rational_to_prime(field, c))
                .ok_or_else(|| Error::InvalidArgument(format!("{} divides a denominator of {g}", field.modulus())))
        })
        .collect::<Result<_>>()?;
    Ideal::new(&ring, gens)
}

/// Smoothness over the rationals by reduction modulo `p`.
///
/// The codimension mod `p` is compared with the codimension at a second
/// prime; a mismatch means `p` is unsuitable and the verdict is
/// inconclusive.
pub fn is_smooth(i: &Ideal<RationalField>, p: u32, rng: &mut dyn RngCore) -> Result<SmoothnessReport> {
    for g in i.generators() {
        if g.coeffs().iter().any(|c| !c.is_integer()) {
            return Err(Error::InvalidArgument(format!("non-integer coefficients in {g}")));
        }
    }
    let fp = PrimeField::new(p)?;
    let q = if p == 32003 { 31991 } else { next_prime(32002) as u32 };
    let fq = PrimeField::new(q)?;
    let ip = reduce_mod_p(i, &fp)?;
    let iq = reduce_mod_p(i, &fq)?;
    let cq = codimension(&iq)?;
    let cp = codimension(&ip)?;
    if cp != cq {
        return Ok(SmoothnessReport {
            codim: cp,
            prime: p,
            jacobian_dim: 0,
            verdict: Verdict::InconclusiveAtP,
            strategy: MinorStrategy::Exhaustive,
            minors_used: 0,
            second_prime: Some((q, cq)),
            note: Some(format!("codimension {cp} mod {p} but {cq} mod {q}: choose another prime")),
        });
    }
    let mut r = is_smooth_mod_p(&ip, rng)?;
    r.second_prime = Some((q, cq));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_polynomial;
    use crate::ratmap::trial_rng;

    fn ideal<F: Field>(r: &Ring<F>, gens: &[&str]) -> Ideal<F> {
        Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn smooth_quadric_and_cone() {
        let r = Ring::from_names(PrimeField::new(113).unwrap(), &["a", "b", "c", "d"]).unwrap();
        let mut rng = trial_rng(0);
        let q = singular_locus(&ideal(&r, &["a*d-b*c"]), &mut rng).unwrap();
        assert_eq!(q.ideal.dim().unwrap(), -1);
        let p2 = Ring::from_names(PrimeField::new(113).unwrap(), &["x", "y", "z"]).unwrap();
        let cone = singular_locus(&ideal(&p2, &["x*z-y^2"]), &mut rng).unwrap();
        // a smooth conic in the plane
        assert_eq!(cone.ideal.dim().unwrap(), -1);
        let cone3 = singular_locus(&ideal(&r, &["a*c-b^2"]), &mut rng).unwrap();
        let h = cone3.ideal.hilbert_data().unwrap();
        assert_eq!((h.proj_dim, h.degree), (0, 1));
    }

    #[test]
    fn twisted_cubic_is_smooth_and_nodal_cubic_is_not() {
        let r = Ring::from_names(RationalField, &["a", "b", "c", "d"]).unwrap();
        let tc = ideal(&r, &["b^2-a*c", "b*c-a*d", "c^2-b*d"]);
        let rep = is_smooth(&tc, 113, &mut trial_rng(1)).unwrap();
        assert_eq!(rep.verdict, Verdict::Smooth);
        assert_eq!(rep.codim, 2);
        let p2 = Ring::from_names(RationalField, &["x", "y", "z"]).unwrap();
        let nodal = ideal(&p2, &["z*y^2-x^2*(x+z)"]);
        assert_eq!(is_smooth(&nodal, 113, &mut trial_rng(1)).unwrap().verdict, Verdict::Singular);
    }

    #[test]
    fn fractions_are_rejected() {
        let p2 = Ring::from_names(RationalField, &["x", "y", "z"]).unwrap();
        let i = ideal(&p2, &["x^2-1/2*y*z"]);
        assert!(is_smooth(&i, 113, &mut trial_rng(1)).is_err());
    }
}
