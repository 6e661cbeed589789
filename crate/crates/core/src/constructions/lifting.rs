//! Lifting the restriction `φ'_0 : P^7 ⇢ P^11` to a map `φ_0 : P^8 ⇢ P^11`.

use super::linear_systems::quadrics_through;
use super::surfaces::SurfacePipeline;
use crate::algebra::{Ideal, MonomialOrder, PrimeField};
use crate::error::{Error, Result};
use crate::ratmap::{
    homog_part_of_image, invert_birational_map_rs, is_inverse_map, projective_degrees, trial_rng, LinearSubspace,
    RationalMap,
};

#[derive(Clone, Debug)]
pub struct Lifting {
    /// Quadrics through `S_0`.
    pub restriction: RationalMap<PrimeField>,
    /// Quadrics through the image of the restriction.
    pub image_quadrics: Ideal<PrimeField>,
    /// Inverse of the restriction on its image.
    pub restriction_inverse: RationalMap<PrimeField>,
    /// The inverse forms together with the image quadrics: a Cremona
    /// transformation of `P^11`.
    pub cremona: RationalMap<PrimeField>,
    pub cremona_inverse: RationalMap<PrimeField>,
    /// `cremona_inverse` on a random `P^8`.
    pub phi: RationalMap<PrimeField>,
    pub projective_degrees: Vec<u64>,
}

/// The `j = 0` lifting: invert `φ'_0` onto the complete intersection of
/// quadrics containing its image, append those quadrics to the inverse to
/// get a Cremona transformation of `P^11`, invert it, and restrict the
/// inverse to a random `P^8`.
pub fn lift_first_surface(s: &SurfacePipeline, seed: u64) -> Result<Lifting> {
    if s.j != 0 {
        return Err(Error::InvalidArgument(format!("the lifting recipe here is for j = 0, not {}", s.j)));
    }
    let restriction = quadrics_through(&s.surface)?;
    let target = restriction.target().with_order(MonomialOrder::grevlex())?;
    let image_quadrics = Ideal::new(&target, homog_part_of_image(&restriction, 2)?)?;
    let inv = invert_birational_map_rs(&restriction, &image_quadrics, 2)?;
    let mut forms = inv.inverse.forms().to_vec();
    forms.extend(image_quadrics.generators().iter().cloned());
    if forms.len() != target.nvars() {
        return Err(Error::Validation(format!(
            "{} inverse forms and quadrics do not give a self-map of P^{}",
            forms.len(),
            target.nvars() - 1
        )));
    }
    let cremona = RationalMap::new(inv.inverse.source(), inv.inverse.source(), forms)?;
    let back = invert_birational_map_rs(&cremona, &Ideal::zero(cremona.target()), 2)?;
    if !is_inverse_map(&back.inverse, &cremona)?.is_inverse {
        return Err(Error::Certification("the Cremona inverse fails the composition test both ways".into()));
    }
    let mut rng = trial_rng(seed);
    let p8 = LinearSubspace::random(back.inverse.source(), 3, &mut rng)?;
    let phi = back.inverse.restrict_to_linear_subspace(&p8)?;
    let projective_degrees = projective_degrees(&phi, seed)?;
    Ok(Lifting {
        restriction,
        image_quadrics,
        restriction_inverse: inv.inverse,
        cremona,
        cremona_inverse: back.inverse,
        phi,
        projective_degrees,
    })
}
