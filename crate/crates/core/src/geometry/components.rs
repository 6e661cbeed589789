//! Connected components of a reduced projective scheme through `h^0(O_X)`.

use rand::RngCore;
use serde::Serialize;

use crate::algebra::{Field, Ideal, MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::ratmap::random_linear_form;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentMethod {
    /// Empty or zero-dimensional scheme, read off the Hilbert data.
    Points,
    /// `R/I` has depth at least two, so `h^0(O_X) = 1`.
    DepthTwo,
    /// Sections `g / ℓ^t`, one value of `h^0` lower bound per `t` tried.
    Sections { attempts: Vec<(u32, usize)> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentsReport {
    pub count: usize,
    pub method: ComponentMethod,
}

/// Largest `t` tried before giving up on the section count.
pub const MAX_SECTION_DEGREE: u32 = 16;

/// Number of connected components of `V(I)`, for `V(I)` reduced (over the
/// algebraic closure it equals `h^0(O_X)`).
///
/// With `ℓ` a general linear form, `g ↦ g / ℓ^t` embeds
/// `((I + ℓ^t)^sat)_t / I_t` into `H^0(O_X)`, with equality for large `t`.
/// `t = 1, 2, 4, ...` is tried until two consecutive values agree.
pub fn number_connected_components<F: Field>(i: &Ideal<F>, rng: &mut dyn RngCore) -> Result<ComponentsReport> {
    let ring = i.ring().with_order(MonomialOrder::grevlex())?;
    if !ring.is_standard_graded() {
        return Err(Error::InvalidArgument("components need a standard graded ring".into()));
    }
    let i = i.with_order(MonomialOrder::grevlex())?;
    let sat = i.saturate_irrelevant(rng)?;
    let h = sat.hilbert_data()?;
    if h.proj_dim < 0 {
        return Ok(ComponentsReport { count: 0, method: ComponentMethod::Points });
    }
    if h.proj_dim == 0 {
        return Ok(ComponentsReport { count: h.degree as usize, method: ComponentMethod::Points });
    }
    let l = random_linear_form(&ring, rng);
    let cut = sat.add_generators(std::slice::from_ref(&l))?;
    if cut.is_saturated(rng)? {
        return Ok(ComponentsReport { count: 1, method: ComponentMethod::DepthTwo });
    }
    let mut attempts = Vec::new();
    let mut power = Polynomial::one(&ring);
    let mut have = 0;
    let mut t = 1;
    while t <= MAX_SECTION_DEGREE {
        while have < t {
            power = &power * &l;
            have += 1;
        }
        let j = sat.add_generators(std::slice::from_ref(&power))?.saturate_irrelevant(rng)?;
        let value = (h.hilbert_function(t as i64) - j.hilbert_data()?.hilbert_function(t as i64)) as usize;
        if let Some(&(_, prev)) = attempts.last() {
            if prev == value {
                attempts.push((t, value));
                return Ok(ComponentsReport { count: value, method: ComponentMethod::Sections { attempts } });
            }
        }
        attempts.push((t, value));
        t *= 2;
    }
    Err(Error::BudgetExceeded(format!(
        "section count did not stabilize up to degree {MAX_SECTION_DEGREE}: {attempts:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_polynomial;
    use crate::algebra::{PrimeField, Ring};
    use crate::ratmap::trial_rng;

    fn ideal(r: &Ring<PrimeField>, gens: &[&str]) -> Ideal<PrimeField> {
        Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
    }

    fn p3() -> Ring<PrimeField> {
        Ring::from_names(PrimeField::new(31991).unwrap(), &["a", "b", "c", "d"]).unwrap()
    }

    #[test]
    fn twisted_cubic_is_connected() {
        let r = p3();
        let rep = number_connected_components(&ideal(&r, &["b^2-a*c", "b*c-a*d", "c^2-b*d"]), &mut trial_rng(0)).unwrap();
        assert_eq!(rep.count, 1);
        assert_eq!(rep.method, ComponentMethod::DepthTwo);
    }

    #[test]
    fn skew_lines_are_two() {
        let r = p3();
        let rep = number_connected_components(&ideal(&r, &["a*c", "a*d", "b*c", "b*d"]), &mut trial_rng(1)).unwrap();
        assert_eq!(rep.count, 2);
        assert!(matches!(rep.method, ComponentMethod::Sections { .. }));
    }

    #[test]
    fn meeting_lines_are_one() {
        let r = p3();
        // lines a=b=0 and a=c=0 meet at (0:0:0:1)
        let rep = number_connected_components(&ideal(&r, &["a", "b*c"]), &mut trial_rng(2)).unwrap();
        assert_eq!(rep.count, 1);
    }

    #[test]
    fn points_and_empty() {
        let r = p3();
        let four = ideal(&r, &["a", "b*(b-c-d)", "c*d"]);
        assert_eq!(number_connected_components(&four, &mut trial_rng(3)).unwrap().count, 4);
        let empty = ideal(&r, &["a", "b", "c", "d"]);
        assert_eq!(number_connected_components(&empty, &mut trial_rng(3)).unwrap().count, 0);
    }
}
