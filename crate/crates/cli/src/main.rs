use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use cremona::algebra::text::{Document, DocumentKind};
use cremona::algebra::{set_default_step_budget, FieldSpec, Ideal, PrimeField};
use cremona::constructions::fixture;
use cremona::geometry::{is_smooth_mod_p, number_connected_components, singular_support};
use cremona::ratmap::{
    degree_of_rational_map, homog_part_of_image, invert_birational_map_rs, is_inverse_map, projective_degrees,
    trial_rng, RationalMap,
};
use cremona::verify::{self, input_digest, RunConfig, VerificationReport, DEFAULT_PRIME, PAPER_PRIME};

/// Rational maps between projective spaces over prime fields.
///
/// INPUT arguments are a file path, a fixture name (see `cremona verify --list`)
/// or an inline document.
#[derive(Parser, Debug)]
#[command(name = "cremona", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Characteristic used for rational inputs and constructions.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u32,

    /// Use p = 113.
    #[arg(long, global = true, conflicts_with = "prime")]
    paper_prime: bool,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Seeds per probabilistic check.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,

    /// Cap on reduction rounds of every Gröbner basis computation.
    #[arg(long, global = true)]
    budget_gb_steps: Option<usize>,

    /// Also run slow-tagged checks.
    #[arg(long, global = true)]
    slow: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis of an ideal.
    Gb { input: String },
    /// Projective dimension, degree and Hilbert polynomial of an ideal.
    DimDeg { input: String },
    /// Inverts a birational map onto its image.
    Invert {
        input: String,
        /// Largest degree tried for the inverse.
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Checks that two maps are mutually inverse.
    IsInverse { map: String, inverse: String },
    /// Degree of a rational map onto its image.
    MapDegree { input: String },
    /// Projective degrees of a rational map.
    ProjDegrees { input: String },
    /// Forms of the given degree vanishing on the image of a map.
    Image {
        input: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Saturated ideal of the base locus of a map.
    BaseLocus { input: String },
    /// Jacobian smoothness test of an ideal.
    Smooth {
        input: String,
        /// Also bound the singular locus when it is not empty.
        #[arg(long)]
        support: bool,
    },
    /// Number of connected components of the scheme of an ideal.
    Components { input: String },
    /// Builds and validates the surface S_j, j in 0..3.
    Construct { j: usize },
    /// Verifies a fixture, a construction s0..s3, or `lifting`.
    Verify {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Verifies every fixture and construction.
    VerifyAll {
        /// Fixtures and small derived checks only.
        #[arg(long)]
        fast: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_default_step_budget(cli.budget_gb_steps);
    match run(&cli) {
        Ok(reports) => {
            let ok = reports.iter().all(VerificationReport::passed);
            if let Err(e) = print(&reports, cli.format) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn print(reports: &[VerificationReport], format: Format) -> anyhow::Result<()> {
    let text = match format {
        Format::Text => reports.iter().map(|r| r.to_string()).collect(),
        Format::Json => match reports {
            [one] => serde_json::to_string_pretty(one)? + "\n",
            many => serde_json::to_string_pretty(many)? + "\n",
        },
    };
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        // a closed pipe (`| head`) is not an error
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn config(cli: &Cli) -> RunConfig {
    RunConfig {
        prime: if cli.paper_prime { PAPER_PRIME } else { cli.prime },
        seed: cli.seed,
        trials: cli.trials,
        slow: cli.slow,
        fast: false,
    }
}

/// A parsed input together with the prime it is read over.
struct Input {
    doc: Document,
    field: PrimeField,
    digest: String,
}

impl Input {
    fn load(arg: &str, cfg: &RunConfig) -> anyhow::Result<Input> {
        let text = if let Ok(f) = fixture(arg) {
            f.contents.to_string()
        } else if Path::new(arg).is_file() {
            std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
        } else {
            arg.to_string()
        };
        let digest = input_digest(&text);
        let doc = Document::parse(&text).with_context(|| format!("parsing input {digest}"))?;
        let p = match doc.field {
            FieldSpec::Prime(q) => q,
            FieldSpec::Rational => cfg.prime,
        };
        Ok(Input { doc, field: PrimeField::new(p)?, digest })
    }

    fn ideal(&self) -> anyhow::Result<Ideal<PrimeField>> {
        if self.doc.kind != DocumentKind::Ideal {
            bail!("input {} is not an ideal document", self.digest);
        }
        let ring = self.doc.ring_over(self.field.clone())?;
        Ok(Ideal::new(&ring, self.doc.polynomials(&ring)?)?)
    }

    fn map(&self) -> anyhow::Result<RationalMap<PrimeField>> {
        if self.doc.kind != DocumentKind::Map {
            bail!("input {} is not a map document", self.digest);
        }
        Ok(RationalMap::from_document_over(&self.doc, self.field.clone())?)
    }

    fn report(&self, op: &str, cfg: &RunConfig) -> VerificationReport {
        let mut r = VerificationReport::new(&format!("{op} {}", self.digest), cfg);
        r.prime = self.field.modulus();
        r
    }
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

fn run(cli: &Cli) -> anyhow::Result<Vec<VerificationReport>> {
    let cfg = config(cli);
    let op = op_name(&cli.command);
    let one = |r: anyhow::Result<VerificationReport>| r.map(|r| vec![r]).with_context(|| format!("{op} failed"));
    let on = |i: &Input, r: anyhow::Result<VerificationReport>| {
        r.map(|r| vec![r]).with_context(|| format!("{op} failed on input {}", i.digest))
    };
    match &cli.command {
        Command::Gb { input } => {
            let i = Input::load(input, &cfg)?;
            on(&i, gb(&i, &cfg))
        }
        Command::DimDeg { input } => {
            let i = Input::load(input, &cfg)?;
            on(&i, dim_deg(&i, &cfg))
        }
        Command::Invert { input, max_degree } => {
            let i = Input::load(input, &cfg)?;
            on(&i, invert(&i, *max_degree, &cfg))
        }
        Command::IsInverse { map, inverse } => {
            let (f, g) = (Input::load(map, &cfg)?, Input::load(inverse, &cfg)?);
            on(&f, is_inverse(&f, &g, &cfg))
        }
        Command::MapDegree { input } => {
            let i = Input::load(input, &cfg)?;
            on(&i, map_degree(&i, &cfg))
        }
        Command::ProjDegrees { input } => {
            let i = Input::load(input, &cfg)?;
            on(&i, proj_degrees(&i, &cfg))
        }
        Command::Image { input, degree } => {
            let i = Input::load(input, &cfg)?;
            on(&i, image(&i, *degree, &cfg))
        }
        Command::BaseLocus { input } => {
            let i = Input::load(input, &cfg)?;
            on(&i, base_locus(&i, &cfg))
        }
        Command::Smooth { input, support } => {
            let i = Input::load(input, &cfg)?;
            on(&i, smooth(&i, *support, &cfg))
        }
        Command::Components { input } => {
            let i = Input::load(input, &cfg)?;
            on(&i, components(&i, &cfg))
        }
        Command::Construct { j } => one(verify::verify_construction(*j, &cfg).map_err(Into::into)),
        Command::Verify { name, list } => {
            if *list {
                println!("{}", verify::subjects().join("\n"));
                return Ok(Vec::new());
            }
            one(verify::verify(name.as_deref().unwrap_or_default(), &cfg).map_err(Into::into))
        }
        Command::VerifyAll { fast } => {
            let cfg = RunConfig { fast: *fast, ..cfg };
            verify::verify_all(&cfg).into_iter().map(|r| r.context("verify-all failed")).collect()
        }
    }
}

fn op_name(c: &Command) -> &'static str {
    match c {
        Command::Gb { .. } => "gb",
        Command::DimDeg { .. } => "dim-deg",
        Command::Invert { .. } => "invert",
        Command::IsInverse { .. } => "is-inverse",
        Command::MapDegree { .. } => "map-degree",
        Command::ProjDegrees { .. } => "proj-degrees",
        Command::Image { .. } => "image",
        Command::BaseLocus { .. } => "base-locus",
        Command::Smooth { .. } => "smooth",
        Command::Components { .. } => "components",
        Command::Construct { .. } => "construct",
        Command::Verify { .. } => "verify",
        Command::VerifyAll { .. } => "verify-all",
    }
}

fn gb(input: &Input, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = input.report("gb", cfg);
    let i = input.ideal()?;
    let t = Instant::now();
    let g = i.groebner_basis()?;
    r.value("basis size", g.len(), secs(t));
    r.value("reduction rounds", g.steps(), 0.0);
    let basis = Ideal::new(g.ring(), g.polys().to_vec())?;
    r.output = Some(basis.to_document());
    Ok(r)
}

fn dim_deg(input: &Input, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = input.report("dim-deg", cfg);
    let i = input.ideal()?;
    let t = Instant::now();
    let h = i.hilbert_data()?;
    r.value("dimension", h.proj_dim, secs(t));
    r.value("degree", h.degree, 0.0);
    r.value("Hilbert polynomial", h.polynomial_string(), 0.0);
    r.value("Hilbert polynomial (binomial basis)", format!("{:?}", h.binomial_coeffs), 0.0);
    Ok(r)
}

fn invert(input: &Input, max_degree: u32, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = input.report("invert", cfg);
    let f = input.map()?;
    let t = Instant::now();
    let target = f.target().with_order(cremona::algebra::MonomialOrder::grevlex())?;
    let image = Ideal::new(&target, homog_part_of_image(&f, 2)?)?;
    let inv = invert_birational_map_rs(&f, &image, max_degree)?;
    r.value("inverse degree", inv.degree, secs(t));
    r.value("certified candidates", format!("{:?}", inv.certified), 0.0);
    r.output = Some(inv.inverse.to_document());
    Ok(r)
}

fn is_inverse(f: &Input, g: &Input, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = VerificationReport::new(&format!("is-inverse {} {}", f.digest, g.digest), cfg);
    r.prime = f.field.modulus();
    let (f, g) = (f.map()?, g.map()?);
    let t = Instant::now();
    let c = is_inverse_map(&f, &g)?;
    r.check("g after f is the identity", true, c.is_inverse, secs(t));
    if let Some(d) = c.diagnostic {
        r.value("diagnostic", d, 0.0);
    }
    Ok(r)
}

fn map_degree(input: &Input, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = input.report("map-degree", cfg);
    let f = input.map()?;
    let t = Instant::now();
    let d = degree_of_rational_map(&f, cfg.seed, cfg.trials)?;
    r.value("degree", d.degree, secs(t));
    r.value("fiber dimension", d.fiber_dimension, 0.0);
    r.value("seeds", format!("{:?}", d.seeds), 0.0);
    r.check("trials unanimous", true, d.unanimous, 0.0);
    Ok(r)
}

fn proj_degrees(input: &Input, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = input.report("proj-degrees", cfg);
    let f = input.map()?;
    let t = Instant::now();
    r.value("projective degrees", format!("{:?}", projective_degrees(&f, cfg.seed)?), secs(t));
    Ok(r)
}

fn image(input: &Input, degree: u32, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = input.report("image", cfg);
    let f = input.map()?;
    let t = Instant::now();
    let forms = homog_part_of_image(&f, degree)?;
    r.value(&format!("forms of degree {degree} on the image"), forms.len(), secs(t));
    r.output = Some(Ideal::new(f.target(), forms)?.to_document());
    Ok(r)
}

fn base_locus(input: &Input, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = input.report("base-locus", cfg);
    let f = input.map()?;
    let t = Instant::now();
    let b = f.base_locus_ideal(&mut trial_rng(cfg.seed))?;
    let h = b.hilbert_data()?;
    r.value("dimension", h.proj_dim, secs(t));
    r.value("degree", h.degree, 0.0);
    r.value("Hilbert polynomial", h.polynomial_string(), 0.0);
    r.output = Some(b.to_document());
    Ok(r)
}

fn smooth(input: &Input, support: bool, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = input.report("smooth", cfg);
    let i = input.ideal()?;
    let mut rng = trial_rng(cfg.seed);
    let t = Instant::now();
    let s = is_smooth_mod_p(&i, &mut rng)?;
    r.value("verdict", format!("{:?}", s.verdict), secs(t));
    r.value("codimension", s.codim, 0.0);
    r.value("minors", format!("{:?}, {} used", s.strategy, s.minors_used), 0.0);
    if support && s.verdict != cremona::geometry::Verdict::Smooth {
        let t = Instant::now();
        let sup = singular_support(&i, &mut rng)?;
        r.value("singular support dimension", sup.dim, secs(t));
        r.value("singular support degree", sup.degree().map_or("not linear".into(), |d| d.to_string()), 0.0);
    }
    Ok(r)
}

fn components(input: &Input, cfg: &RunConfig) -> anyhow::Result<VerificationReport> {
    let mut r = input.report("components", cfg);
    let i = input.ideal()?;
    let t = Instant::now();
    let c = number_connected_components(&i, &mut trial_rng(cfg.seed))?;
    r.value("connected components", c.count, secs(t));
    r.value("method", format!("{:?}", c.method), 0.0);
    Ok(r)
}
