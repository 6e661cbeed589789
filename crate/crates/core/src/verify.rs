//! Verification suites for the fixtures and the surface constructions.
//!
//! Every suite produces a [`VerificationReport`]: a list of named checks, each
//! with its expected value, computed value and timing. Values are compared as
//! their printed forms, so reports diff cleanly.

use std::fmt::{self, Display};
use std::time::Instant;

use serde::Serialize;

use crate::algebra::{Ideal, MonomialOrder, PrimeField};
use crate::constructions::{
    build_surface_pipeline, expected_invariants, fixture, fixture_registry, lift_first_surface, linear_system_map,
    quadrics_through, FixtureKind, FixtureRecord, EDGE,
};
use crate::error::{Error, Result};
use crate::geometry::{is_smooth_mod_p, number_connected_components, singular_support, Verdict};
use crate::ratmap::{degree_of_rational_map, homog_part_of_image, is_inverse_map, trial_rng, RationalMap};

pub const DEFAULT_PRIME: u32 = 31991;
/// The prime used by the original modular sessions.
pub const PAPER_PRIME: u32 = 113;

/// Projective degrees of the lifted `φ_0`.
pub const LIFTED_PROJECTIVE_DEGREES: [u64; 9] = [8, 16, 23, 23, 16, 8, 4, 2, 1];

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub prime: u32,
    pub seed: u64,
    /// Seeds per probabilistic check.
    pub trials: usize,
    /// Run slow-tagged checks.
    pub slow: bool,
    /// Skip checks that are neither fixture lookups nor small derived
    /// computations.
    pub fast: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { prime: DEFAULT_PRIME, seed: 0, trials: 3, slow: false, fast: false }
    }
}

impl RunConfig {
    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.prime)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// A computed value with nothing to compare against.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    pub seconds: f64,
    pub slow: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub prime: u32,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub seconds: f64,
    /// Document text produced by the command, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl VerificationReport {
    pub fn new(subject: &str, cfg: &RunConfig) -> Self {
        VerificationReport {
            subject: subject.to_string(),
            prime: cfg.prime,
            seed: cfg.seed,
            checks: Vec::new(),
            seconds: 0.0,
            output: None,
        }
    }

    /// Records a computed value.
    pub fn value(&mut self, name: &str, computed: impl Display, seconds: f64) {
        self.add(name, String::new(), computed.to_string(), Status::Info, seconds);
    }

    /// Records a comparison against an expected value.
    pub fn check(&mut self, name: &str, expected: impl Display, computed: impl Display, seconds: f64) {
        let (e, c) = (expected.to_string(), computed.to_string());
        let status = if e == c { Status::Pass } else { Status::Fail };
        self.add(name, e, c, status, seconds);
    }

    fn add(&mut self, name: &str, expected: String, computed: String, status: Status, seconds: f64) {
        self.checks.push(Check { name: name.to_string(), expected, computed, status, seconds, slow: false });
        self.seconds += seconds;
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{} [{verdict}] p={} seed={} {:.1}s", self.subject, self.prime, self.seed, self.seconds)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "ok  ",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
                Status::Info => "    ",
            };
            write!(f, "  {tag} {}: {}", c.name, c.computed)?;
            if c.status == Status::Fail {
                write!(f, " (expected {})", c.expected)?;
            }
            writeln!(f, " [{:.2}s]", c.seconds)?;
        }
        if let Some(out) = &self.output {
            write!(f, "{out}")?;
        }
        Ok(())
    }
}

/// Collects checks, timing each one from the previous.
struct Recorder {
    cfg: RunConfig,
    checks: Vec<Check>,
    start: Instant,
    lap: Instant,
}

impl Recorder {
    fn new(cfg: &RunConfig) -> Self {
        let now = Instant::now();
        Recorder { cfg: cfg.clone(), checks: Vec::new(), start: now, lap: now }
    }

    fn push(&mut self, name: &str, expected: String, computed: String, status: Status, slow: bool) {
        let now = Instant::now();
        self.checks.push(Check {
            name: name.to_string(),
            expected,
            computed,
            status,
            seconds: (now - self.lap).as_secs_f64(),
            slow,
        });
        self.lap = now;
    }

    fn eq(&mut self, name: &str, expected: impl Display, computed: impl Display) {
        let (e, c) = (expected.to_string(), computed.to_string());
        let status = if e == c { Status::Pass } else { Status::Fail };
        self.push(name, e, c, status, false);
    }

    fn skip(&mut self, name: &str, expected: impl Display, why: &str) {
        self.push(name, expected.to_string(), why.to_string(), Status::Skipped, false);
    }

    /// Runs `f` unless it is slow-tagged and slow checks are off. Errors
    /// become failing checks.
    fn guarded(&mut self, name: &str, slow: bool, f: impl FnOnce(&mut Recorder) -> Result<()>) {
        if slow && !self.cfg.slow {
            self.skip(name, "", "slow-tagged, pass --slow");
            return;
        }
        let before = self.checks.len();
        if let Err(e) = f(self) {
            self.push(name, "no error".into(), format!("error: {e}"), Status::Fail, slow);
        }
        for c in &mut self.checks[before..] {
            c.slow |= slow;
        }
    }

    fn finish(self, subject: &str) -> VerificationReport {
        VerificationReport {
            subject: subject.to_string(),
            prime: self.cfg.prime,
            seed: self.cfg.seed,
            checks: self.checks,
            seconds: self.start.elapsed().as_secs_f64(),
            output: None,
        }
    }
}

/// Short hex digest identifying an input text in error messages.
pub fn input_digest(text: &str) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(&Sha256::digest(text.as_bytes())[..6])
}

fn grevlex(i: Ideal<PrimeField>) -> Result<Ideal<PrimeField>> {
    i.with_order(MonomialOrder::grevlex())
}

fn image_quadrics(f: &RationalMap<PrimeField>) -> Result<Ideal<PrimeField>> {
    let target = f.target().with_order(MonomialOrder::grevlex())?;
    Ideal::new(&target, homog_part_of_image(f, 2)?)
}

fn counts(c: &[(u32, usize)]) -> String {
    let parts: Vec<String> = c.iter().map(|(d, n)| format!("{n} of degree {d}")).collect();
    parts.join(", ")
}

/// Verifies one shipped fixture against its expected invariants.
pub fn verify_fixture(name: &str, cfg: &RunConfig) -> Result<VerificationReport> {
    let rec = fixture(name)?;
    let field = cfg.field()?;
    let mut r = Recorder::new(cfg);
    r.eq("checksum", &rec.sha256, if rec.checksum_ok() { rec.sha256 } else { "mismatch" });
    let slow = rec.expected.slow;
    match rec.kind {
        FixtureKind::Map => r.guarded("map", false, |r| map_checks(r, &rec, &field, slow)),
        FixtureKind::Ideal => r.guarded("ideal", false, |r| ideal_checks(r, &rec, &field)),
        FixtureKind::Points => r.guarded("points", false, |r| lambda_checks(r, &rec, &field)),
    }
    Ok(r.finish(name))
}

fn map_checks(r: &mut Recorder, rec: &FixtureRecord, field: &PrimeField, slow: bool) -> Result<()> {
    let m = rec.map(field.clone())?;
    let e = &rec.expected;
    if let Some((d, n)) = e.generators {
        r.eq("forms", counts(&[(d, n)]), counts(&[(m.degree(), m.forms().len())]));
    }
    if let Some(inv_name) = e.inverse {
        let inv = fixture(inv_name)?.map(field.clone())?;
        r.eq(&format!("is_inverse_map with {inv_name}"), true, is_inverse_map(&m, &inv)?.is_inverse);
        r.eq(&format!("is_inverse_map of {inv_name}"), true, is_inverse_map(&inv, &m)?.is_inverse);
    }
    if e.dim.is_none() {
        return Ok(());
    }
    let seed = r.cfg.seed;
    r.guarded("base locus", slow, |r| {
        let mut rng = trial_rng(seed);
        let b = m.base_locus_ideal(&mut rng)?;
        let h = b.hilbert_data()?;
        r.eq("base locus (dim, degree)", format!("({}, {})", e.dim.unwrap(), e.degree.unwrap()), format!("({}, {})", h.proj_dim, h.degree));
        if let Some(hp) = &e.hilbert_binomial {
            r.eq("base locus Hilbert polynomial (binomial basis)", format!("{hp:?}"), format!("{:?}", h.binomial_coeffs));
        }
        if let Some(c) = e.components {
            r.eq("base locus connected components", c, number_connected_components(&b, &mut rng)?.count);
        }
        if let Some(sd) = e.singular_support_dim {
            if r.cfg.fast {
                r.skip("singular support (dim, degree)", format!("({sd}, 1)"), "skipped in fast mode");
            } else {
                let s = singular_support(&b, &mut rng)?;
                let deg = s.degree().map_or("non-linear".to_string(), |d| d.to_string());
                let want_deg = if e.singular_support_linear == Some(true) { "1" } else { "non-linear" };
                r.eq("singular support (dim, degree)", format!("({sd}, {want_deg})"), format!("({}, {deg})", s.dim));
            }
        }
        Ok(())
    });
    Ok(())
}

fn ideal_checks(r: &mut Recorder, rec: &FixtureRecord, field: &PrimeField) -> Result<()> {
    let e = &rec.expected;
    let (_, gens) = rec.generators(field.clone())?;
    if let Some((d, n)) = e.generators {
        let deg = gens.first().and_then(|g| g.total_degree()).unwrap_or(0);
        r.eq("generators", counts(&[(d, n)]), counts(&[(deg, gens.len())]));
    }
    let i = grevlex(rec.ideal(field.clone())?)?;
    let h = i.hilbert_data()?;
    r.eq("(dim, degree)", format!("({}, {})", e.dim.unwrap(), e.degree.unwrap()), format!("({}, {})", h.proj_dim, h.degree));
    if rec.name == EDGE {
        let fast = r.cfg.fast;
        if fast {
            r.skip("Edge chain", "", "skipped in fast mode");
        } else {
            r.guarded("Edge chain", true, |r| edge_chain(r, rec, field));
        }
    }
    Ok(())
}

/// The Edge quadrics together with `t_i t_8` give a map `P^8 ⇢ P^16` whose
/// image has degree 33 and is cut out by 21 quadrics.
fn edge_chain(r: &mut Recorder, rec: &FixtureRecord, field: &PrimeField) -> Result<()> {
    let (ring, mut forms) = rec.generators(field.clone())?;
    let t8 = ring.var(ring.nvars() - 1);
    forms.extend((0..ring.nvars()).map(|i| &ring.var(i) * &t8));
    let phi = RationalMap::from_forms(forms, "y")?;
    let y = image_quadrics(&phi)?;
    r.eq("image quadrics", 21, y.generators().len());
    r.eq("image degree", 33, y.hilbert_data()?.degree);
    Ok(())
}

/// The seven points, the quartics through them, the surface `Y ⊂ P^7` and
/// the quadrics through `Y`.
fn lambda_checks(r: &mut Recorder, rec: &FixtureRecord, field: &PrimeField) -> Result<()> {
    let e = &rec.expected;
    let mut rng = trial_rng(r.cfg.seed);
    let i = rec.ideal(field.clone())?;
    let (d, n) = e.generators.unwrap();
    r.eq("minimal generators", counts(&[(d, n)]), counts(&i.minimal_generator_counts()?));
    let h = i.hilbert_data()?;
    r.eq("(dim, degree)", format!("({}, {})", e.dim.unwrap(), e.degree.unwrap()), format!("({}, {})", h.proj_dim, h.degree));
    r.eq("quartics through the points", e.quartics.unwrap(), i.graded_piece_dim(4)?);

    let pts: Vec<_> = rec.points()?.points_over(field)?.into_iter().map(|p| (p, 1)).collect();
    let quartics = linear_system_map(i.ring(), 4, &pts)?;
    let y = image_quadrics(&quartics)?;
    let hy = y.hilbert_data()?;
    r.eq("Y quadrics", 12, y.generators().len());
    r.eq("Y (dim, degree)", "(2, 9)", format!("({}, {})", hy.proj_dim, hy.degree));
    r.eq("Y saturated", true, y.is_saturated(&mut rng)?);
    r.eq("Y smooth", format!("{:?}", Verdict::Smooth), format!("{:?}", is_smooth_mod_p(&y, &mut rng)?.verdict));

    let psi = quadrics_through(&y)?;
    let md = degree_of_rational_map(&psi, r.cfg.seed, r.cfg.trials)?;
    r.eq("degree of ψ", 1, md.degree);
    let z = image_quadrics(&psi)?;
    let hz = z.hilbert_data()?;
    r.eq("quadrics through the image of ψ", 4, z.generators().len());
    let codim = psi.target_dim() as i64 - hz.proj_dim;
    r.eq("complete intersection (codim, degree)", "(4, 16)", format!("({codim}, {})", hz.degree));
    Ok(())
}

/// Builds `S_j` with full validation and checks that the quadrics through it
/// give a birational map.
pub fn verify_construction(j: usize, cfg: &RunConfig) -> Result<VerificationReport> {
    let field = cfg.field()?;
    let mut r = Recorder::new(cfg);
    let subject = format!("S_{j}");
    r.guarded("pipeline", false, |r| {
        let s = build_surface_pipeline(j, r.cfg.seed, &field, true)?;
        let inv = &s.invariants;
        let (deg, genus, nquad) = expected_invariants(j);
        r.eq("rejected samples", "[]", format!("{:?}", s.rejected));
        r.eq("(dim, degree)", format!("(2, {deg})"), format!("({}, {})", inv.dim, inv.degree));
        r.eq("sectional genera", format!("[{genus}, {genus}]"), format!("{:?}", inv.sectional_genera));
        r.eq("quadrics", nquad, inv.quadrics);
        r.eq("saturated", true, inv.saturated);
        let verdict = inv.smoothness.as_ref().map(|s| format!("{:?}", s.verdict));
        r.eq("smooth", "Smooth", verdict.unwrap_or_default());
        r.eq("connected components", 1, inv.components.unwrap_or(0));
        let phi = quadrics_through(&s.surface)?;
        let md = degree_of_rational_map(&phi, r.cfg.seed, r.cfg.trials)?;
        let seeds = format!("{:?}", md.seeds);
        r.eq(&format!("degree of φ'_{j} over seeds {seeds}"), "1 (unanimous)", format!("{} ({})", md.degree, if md.unanimous { "unanimous" } else { "split" }));
        Ok(())
    });
    Ok(r.finish(&subject))
}

/// Rebuilds `φ_0` from `S_0` and compares its projective degrees.
pub fn verify_lifting(cfg: &RunConfig) -> Result<VerificationReport> {
    let field = cfg.field()?;
    let mut r = Recorder::new(cfg);
    r.guarded("lifting", false, |r| {
        let s = build_surface_pipeline(0, r.cfg.seed, &field, false)?;
        let l = lift_first_surface(&s, r.cfg.seed)?;
        r.eq("Cremona forms", "12 of degree 2", counts(&[(l.cremona.degree(), l.cremona.forms().len())]));
        r.eq("projective degrees of φ_0", format!("{LIFTED_PROJECTIVE_DEGREES:?}"), format!("{:?}", l.projective_degrees));
        Ok(())
    });
    Ok(r.finish("lifting of φ'_0"))
}

/// Names accepted by [`verify`].
pub fn subjects() -> Vec<String> {
    let mut v: Vec<String> = fixture_registry().iter().map(|f| f.name.to_string()).collect();
    v.extend((0..4).map(|j| format!("s{j}")));
    v.push("lifting".into());
    v
}

/// Verifies a fixture, a construction `s0`..`s3`, or `lifting`.
pub fn verify(name: &str, cfg: &RunConfig) -> Result<VerificationReport> {
    match name {
        "lifting" => verify_lifting(cfg),
        _ => match name.strip_prefix('s').and_then(|j| j.parse::<usize>().ok()) {
            Some(j) if j < 4 => verify_construction(j, cfg),
            _ => verify_fixture(name, cfg).map_err(|_| {
                Error::InvalidArgument(format!("unknown subject `{name}`; known: {}", subjects().join(", ")))
            }),
        },
    }
}

/// All fixtures, then the four constructions unless `cfg.fast`. Subjects run
/// on separate threads; reports come back in that fixed order.
pub fn verify_all(cfg: &RunConfig) -> Vec<Result<VerificationReport>> {
    let mut names: Vec<String> = fixture_registry().iter().map(|f| f.name.to_string()).collect();
    if !cfg.fast {
        names.extend((0..4).map(|j| format!("s{j}")));
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = names.iter().map(|n| scope.spawn(move || verify(n, cfg))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Validation("verification thread panicked".into()))))
            .collect()
    })
}
