//! Lifts the restriction maps `φ'_j : P^7 ⇢ P^(11-j)` to maps `φ_j` on `P^8`.
//!
//! ```text
//! cargo run --release --example lifting -- <j> [seed] [prime]
//! ```
//!
//! Long-running for `j > 0`; nothing here is part of the default checks.

use std::time::Instant;

use cremona::algebra::{Ideal, MonomialOrder, Polynomial, PrimeField};
use cremona::constructions::{build_surface_pipeline, lift_first_surface, quadrics_through};
use cremona::ratmap::{
    base_locus_of_inverse, degree_of_rational_map, homog_part_of_image, invert_birational_map_rs, is_inverse_map,
    projective_degrees, random_point, trial_rng, LinearSubspace, RationalMap,
};
use cremona::Result;

/// The image of `φ'_j` is `Z_j ∩ D_j`: `3 - j` quadrics and one form of
/// degree `2 + j`. `η_j` is the inverse of `φ'_j` together with `D_j`.
struct RestrictionInverse {
    phi: RationalMap<PrimeField>,
    z: Ideal<PrimeField>,
    d: Polynomial<PrimeField>,
    eta: RationalMap<PrimeField>,
}

fn log(t: &Instant, msg: impl std::fmt::Display) {
    println!("[{:>8.1}s] {msg}", t.elapsed().as_secs_f64());
}

fn invert_restriction(j: usize, phi: RationalMap<PrimeField>, t: &Instant) -> Result<RestrictionInverse> {
    let deg = 2 + j as u32;
    let target = phi.target().with_order(MonomialOrder::grevlex())?;
    let quadrics = homog_part_of_image(&phi, 2)?;
    log(t, format!("{} quadrics through the image", quadrics.len()));
    let (z, d) = if j == 0 {
        let d = quadrics[3].clone();
        (Ideal::new(&target, quadrics[..3].to_vec())?, d)
    } else {
        let z = Ideal::new(&target, quadrics)?;
        let top = homog_part_of_image(&phi, deg)?;
        log(t, format!("{} forms of degree {deg} through the image", top.len()));
        let mut d = None;
        for g in top {
            if !z.contains(&g)? {
                d = Some(g);
                break;
            }
        }
        (z, d.expect("no form of top degree outside Z"))
    };
    let image = z.add_generators(&[d.clone()])?;
    let inv = invert_birational_map_rs(&phi, &image, deg)?;
    log(t, format!("inverse of φ'_{j}: {} forms of degree {}", inv.inverse.forms().len(), inv.degree));
    let mut forms = inv.inverse.forms().to_vec();
    forms.push(d.clone());
    let eta = RationalMap::from_forms(forms, "x")?.with_grevlex_source()?;
    Ok(RestrictionInverse { phi, z, d, eta })
}

/// `j = 3`: `η_3` is a Cremona transformation of `P^8`; invert it directly.
fn lift_3(r: &RestrictionInverse, t: &Instant) -> Result<RationalMap<PrimeField>> {
    let inv = invert_birational_map_rs(&r.eta, &Ideal::zero(r.eta.target()), 2)?;
    log(t, format!("inverse of η_3 has degree {}", inv.degree));
    Ok(inv.inverse)
}

/// The quadrics through `η(Z ∩ H)` for `N + 1` random hyperplanes `H`.
fn inverse_base_locus(
    z: &Ideal<PrimeField>,
    eta: &RationalMap<PrimeField>,
    seed: u64,
) -> Result<Ideal<PrimeField>> {
    let mut rng = trial_rng(seed);
    let n = eta.source().nvars();
    let hs: Vec<_> = (0..n).map(|_| LinearSubspace::random(eta.source(), 1, &mut rng)).collect::<Result<_>>()?;
    base_locus_of_inverse(&z.with_order(MonomialOrder::grevlex())?, eta, &hs)
}

/// `j = 1`: the quadrics through the base locus of `η_1^{-1}` define a map
/// `φ_1 : P^8 ⇢ P^10` with that base locus; its image replaces `Z_1`.
fn lift_1(r: &RestrictionInverse, seed: u64, t: &Instant) -> Result<RationalMap<PrimeField>> {
    let b = inverse_base_locus(&r.z, &r.eta, seed)?;
    log(t, format!("{} quadrics through the base locus of η_1^-1", b.generators().len()));
    let phi = RationalMap::from_forms(b.generators().to_vec(), "y")?;
    let z = Ideal::new(&phi.target().with_order(MonomialOrder::grevlex())?, homog_part_of_image(&phi, 2)?)?;
    log(t, format!("image of φ_1: {} quadrics", z.generators().len()));
    let inv = invert_birational_map_rs(&phi, &z, 3)?;
    log(t, format!("inverse of φ_1 has degree {}", inv.degree));
    Ok(phi)
}

/// `j = 2`: parameterize the quadric `Z_2` by the inverse `ρ` of the
/// projection from one of its points, find `α` with `α ∘ η_2 ∘ ρ` linear,
/// and take `φ_2 = ρ ∘ α` corrected by that linear map.
fn lift_2(r: &RestrictionInverse, seed: u64, t: &Instant) -> Result<RationalMap<PrimeField>> {
    let mut rng = trial_rng(seed);
    let p9 = r.eta.source().clone();
    // a general point of Z_2: the image of a random point of P^7
    let point = r.phi.evaluate(&random_point(r.phi.source(), &mut rng));
    let pivot = point.iter().position(|&c| c != 0).expect("zero point");
    let proj: Vec<Polynomial<PrimeField>> = (0..p9.nvars())
        .filter(|&k| k != pivot)
        .map(|k| {
            // x_k p_pivot - x_pivot p_k vanishes at the point
            &p9.var(k).scale(&point[pivot]) - &p9.var(pivot).scale(&point[k])
        })
        .collect();
    let projection = RationalMap::from_forms(proj, "u")?;
    let rho = invert_birational_map_rs(&projection, &r.z, 2)?.inverse;
    log(t, format!("parameterization ρ of Z_2 of degree {}", rho.degree()));
    let beta = r.eta.after(&rho)?;
    log(t, format!("β = η_2 ∘ ρ has degree {}", beta.degree()));
    let b = inverse_base_locus(&Ideal::zero(beta.source()), &beta, seed)?;
    let alpha = RationalMap::new(beta.target(), beta.source(), b.generators().to_vec())?;
    log(t, format!("α: {} quadrics", alpha.forms().len()));
    let linear = invert_birational_map_rs(&alpha.after(&beta)?, &Ideal::zero(beta.source()), 1);
    let alpha = match linear {
        Ok(l) => l.inverse.after(&alpha)?,
        Err(_) => alpha,
    };
    rho.after(&alpha)
}

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let j: usize = args.first().and_then(|a| a.parse().ok()).unwrap_or(0);
    let seed: u64 = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(0);
    let p: u32 = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(31991);
    let field = PrimeField::new(p)?;
    let t = Instant::now();
    let s = build_surface_pipeline(j, seed, &field, false)?;
    log(&t, format!("S_{j}: degree {}, {} quadrics", s.invariants.degree, s.invariants.quadrics));
    if j == 0 {
        let l = lift_first_surface(&s, seed)?;
        log(&t, format!("projective degrees of φ_0: {:?}", l.projective_degrees));
        return Ok(());
    }
    let r = invert_restriction(j, quadrics_through(&s.surface)?, &t)?;
    log(&t, format!("η_{j}: {} forms of degree {}, D_{j} of degree {}", r.eta.forms().len(), r.eta.degree(), r.d.total_degree().unwrap_or(0)));
    let phi = match j {
        1 => lift_1(&r, seed, &t)?,
        2 => lift_2(&r, seed, &t)?,
        _ => lift_3(&r, &t)?,
    };
    log(&t, format!("φ_{j}: P^8 ⇢ P^{}, degree {}", phi.target_dim(), phi.degree()));
    let md = degree_of_rational_map(&phi, seed, 3)?;
    log(&t, format!("map degree of φ_{j}: {} (unanimous: {})", md.degree, md.unanimous));
    log(&t, format!("projective degrees of φ_{j}: {:?}", projective_degrees(&phi, seed)?));
    if j == 3 {
        log(&t, format!("η_3 ∘ φ_3 is the identity: {}", is_inverse_map(&phi, &r.eta)?.is_inverse));
    }
    Ok(())
}
