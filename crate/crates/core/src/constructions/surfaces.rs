//! Rational surfaces `S_j ⊂ P^7` obtained by inner projections of plane
//! parameterizations, `j = 0..3`.

use rand::RngCore;
use serde::Serialize;

use super::linear_systems::{linear_system_map, quadric_surface_parameterization, reduce_to_span, veronese};
use super::inner_projection;
use crate::algebra::{Field, Ideal, MonomialOrder, PrimeField, Ring};
use crate::error::{Error, Result};
use crate::geometry::{is_smooth_mod_p, number_connected_components, SmoothnessReport, Verdict};
use crate::ratmap::{homog_part_of_image, random_linear_form, random_point, trial_rng, RationalMap};

/// Number of points projected from for each `j`.
pub const PROJECTION_POINTS: [usize; 4] = [7, 8, 10, 8];

/// Resampling rounds before the pipeline gives up.
pub const MAX_ATTEMPTS: usize = 5;

/// The plane parameterization `ν_j` before projection:
///
/// * `j = 0`: plane quartics, into `P^14`;
/// * `j = 1`: the quadric surface `[x^2, xy, xz, yz]` followed by the cubic
///   Veronese map of `P^3`, into the span `P^15` of its image;
/// * `j = 2`: quintics singular at `(1:0:0)`, into `P^17`;
/// * `j = 3`: cubics through the coordinate points and `(1:1:1)`, followed by
///   the quadratic Veronese map of `P^5`, into the span `P^15`.
pub fn plane_parameterization<F: Field>(field: &F, j: usize) -> Result<RationalMap<F>> {
    let plane = Ring::indexed(field.clone(), "x", 3);
    let pt = |c: [i64; 3]| -> Vec<F::Elem> { c.iter().map(|&x| field.from_i64(x)).collect() };
    match j {
        0 => veronese(field, 2, 4),
        1 => reduce_to_span(&veronese(field, 3, 3)?.after(&quadric_surface_parameterization(field)?)?),
        2 => linear_system_map(&plane, 5, &[(pt([1, 0, 0]), 2)]),
        3 => {
            let base = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].map(|c| (pt(c), 1));
            let del_pezzo = linear_system_map(&plane, 3, &base)?;
            reduce_to_span(&veronese(field, 5, 2)?.after(&del_pezzo)?)
        }
        _ => Err(Error::InvalidArgument(format!("j = {j} is not one of 0, 1, 2, 3"))),
    }
}

/// Invariants of a built surface.
#[derive(Clone, Debug, Serialize)]
pub struct SurfaceInvariants {
    pub dim: i64,
    pub degree: i128,
    /// Arithmetic genera of two independent hyperplane sections.
    pub sectional_genera: [i128; 2],
    pub quadrics: usize,
    pub saturated: bool,
    pub smoothness: Option<SmoothnessReport>,
    pub components: Option<usize>,
}

impl SurfaceInvariants {
    pub fn sectional_genus(&self) -> i128 {
        self.sectional_genera[0]
    }
}

/// Expected `(degree, sectional genus, quadrics)` of `S_j`.
pub fn expected_invariants(j: usize) -> (i128, i128, usize) {
    (9 + j as i128, 3 + j as i128, 12 - j)
}

#[derive(Clone, Debug)]
pub struct SurfacePipeline {
    pub j: usize,
    pub seed: u64,
    pub nu: RationalMap<PrimeField>,
    pub psi: RationalMap<PrimeField>,
    /// Points of the plane projected from.
    pub points: Vec<Vec<u32>>,
    /// Ideal of `S_j`, generated by its quadrics.
    pub surface: Ideal<PrimeField>,
    pub invariants: SurfaceInvariants,
    /// Rejected samples, with the failed check.
    pub rejected: Vec<String>,
}

/// Arithmetic genus of the curve cut on `S` by a random hyperplane.
pub fn sectional_genus<F: Field>(s: &Ideal<F>, rng: &mut dyn RngCore) -> Result<i128> {
    let h = random_linear_form(s.ring(), rng);
    let c = s.add_generators(&[h])?.saturate_irrelevant(rng)?;
    let hd = c.hilbert_data()?;
    if hd.proj_dim != 1 {
        return Err(Error::Validation(format!("hyperplane section has dimension {}", hd.proj_dim)));
    }
    Ok(hd.arithmetic_genus())
}

/// Builds `ψ_j` by projecting `ν_j` from random points and validates its
/// image `S_j`: a saturated surface of degree `9 + j` and sectional genus
/// `3 + j` cut out by `12 - j` quadrics, smooth and connected. With
/// `full = false` smoothness and connectedness are skipped.
pub fn build_surface_pipeline(j: usize, seed: u64, field: &PrimeField, full: bool) -> Result<SurfacePipeline> {
    let nu = plane_parameterization(field, j)?;
    let (deg, genus, nquad) = expected_invariants(j);
    let mut rng = trial_rng(seed);
    let mut rejected = Vec::new();
    for _ in 0..MAX_ATTEMPTS {
        let points: Vec<Vec<u32>> = (0..PROJECTION_POINTS[j]).map(|_| random_point(nu.source(), &mut rng)).collect();
        let psi = match inner_projection(&nu, &points) {
            Ok(p) => p,
            Err(e) => {
                rejected.push(e.to_string());
                continue;
            }
        };
        match validate(&psi, deg, genus, nquad, full, &mut rng)? {
            Ok((surface, invariants)) => {
                return Ok(SurfacePipeline { j, seed, nu, psi, points, surface, invariants, rejected });
            }
            Err(why) => rejected.push(why),
        }
    }
    Err(Error::Validation(format!("S_{j}: no valid sample in {MAX_ATTEMPTS} attempts: {}", rejected.join("; "))))
}

type Validated = std::result::Result<(Ideal<PrimeField>, SurfaceInvariants), String>;

fn validate(
    psi: &RationalMap<PrimeField>,
    deg: i128,
    genus: i128,
    nquad: usize,
    full: bool,
    rng: &mut dyn RngCore,
) -> Result<Validated> {
    let quadrics = homog_part_of_image(psi, 2)?;
    if quadrics.len() != nquad {
        return Ok(Err(format!("{} quadrics instead of {nquad}", quadrics.len())));
    }
    let target = psi.target().with_order(MonomialOrder::grevlex())?;
    let s = Ideal::new(&target, quadrics)?;
    let h = s.hilbert_data()?;
    if (h.proj_dim, h.degree) != (2, deg) {
        return Ok(Err(format!("(dim, degree) = ({}, {}) instead of (2, {deg})", h.proj_dim, h.degree)));
    }
    let saturated = s.is_saturated(rng)?;
    if !saturated {
        return Ok(Err("quadric ideal is not saturated".into()));
    }
    let g = [sectional_genus(&s, rng)?, sectional_genus(&s, rng)?];
    if g != [genus, genus] {
        return Ok(Err(format!("sectional genera {g:?} instead of {genus}")));
    }
    let mut inv = SurfaceInvariants {
        dim: h.proj_dim,
        degree: h.degree,
        sectional_genera: g,
        quadrics: nquad,
        saturated,
        smoothness: None,
        components: None,
    };
    if full {
        let sm = is_smooth_mod_p(&s, rng)?;
        if sm.verdict != Verdict::Smooth {
            return Ok(Err(format!("not smooth: {:?}", sm.verdict)));
        }
        inv.smoothness = Some(sm);
        let c = number_connected_components(&s, rng)?.count;
        inv.components = Some(c);
        if c != 1 {
            return Ok(Err(format!("{c} connected components")));
        }
    }
    Ok(Ok((s, inv)))
}
