use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// `println!` that ends the process quietly when stdout is a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
        }
    }};
}

use chevlab::chevalgebra::{lemma_lprime_check, ChevalleyAlgebra, Net};
use chevlab::chevgroup::{level_of_s, AdjointGroup, Letter};
use chevlab::exactrings::{Ideal, Ring};
use chevlab::rootsys::{Embedding, RootId, RootSystem};
use chevlab::starcond::{check_star, find_admissible_pair, StarOutcome, StarReport};
use chevlab::suite::{run_suite, seeded_element, tandem_verify, Mutation, Profile, SuiteConfig};
use chevlab::tandemlab::{extract_search, make_tandem};
use chevlab::Error;

#[derive(Parser)]
#[command(name = "chevlab", version, about = "Exact checks for Chevalley groups over commutative rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the roots of a system with their ids.
    Roots {
        #[arg(long)]
        system: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Condition (*) certificates.
    Star {
        #[command(subcommand)]
        command: StarCommand,
    },
    /// Nets of ideals.
    Net {
        #[command(subcommand)]
        command: NetCommand,
    },
    /// Adjoint group elements.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Tandem identities and the extraction procedure.
    Tandem {
        #[command(subcommand)]
        command: TandemCommand,
    },
    /// Run the acceptance suite.
    Suite {
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Flip one structure constant of D4 first; the suite must then fail.
        #[arg(long)]
        flip_sign: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

/// Where the subsystem comes from: a preset such as `E7:A7`, or `--system`
/// with explicit simple roots in doubled coordinates.
#[derive(Args, Clone)]
struct SubsystemArgs {
    /// Preset such as `E7:A7`, `D4:4A1` or `D2m:2mA1` (with --m), or a JSON
    /// list of simple roots (doubled coordinates) together with --system.
    #[arg(long)]
    subsystem: Option<String>,
    #[arg(long)]
    system: Option<String>,
    #[arg(long)]
    m: Option<usize>,
}

impl SubsystemArgs {
    fn embedding(&self) -> Result<Embedding> {
        let spec = self.subsystem.as_deref().ok_or_else(|| anyhow!("--subsystem is required"))?;
        embedding(spec, self.system.as_deref(), self.m)
    }
}

#[derive(Subcommand)]
enum StarCommand {
    /// Decide condition (*) and write a certificate.
    Check {
        /// Preset; alternatively use --subsystem.
        preset: Option<String>,
        #[arg(long)]
        subsystem: Option<String>,
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Load a certificate file and re-validate it.
    Validate { path: PathBuf },
}

#[derive(Subcommand)]
enum NetCommand {
    /// Build a net, validate it, and compare the level of S(sigma) with it.
    Check {
        #[command(flatten)]
        sub: SubsystemArgs,
        #[arg(long)]
        ring: String,
        /// Ideals on the outer orbits, `;`-separated, each a `,`-separated
        /// generator list. A single entry applies to every outer orbit.
        #[arg(long, conflicts_with = "net")]
        ideals: Option<String>,
        /// Net JSON file instead of --subsystem/--ideals.
        #[arg(long)]
        net: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Build an element from a word `id=xi,id=xi,...` (ids as listed by `roots`).
    Element {
        #[arg(long)]
        system: String,
        #[arg(long)]
        ring: String,
        #[arg(long, conflicts_with = "length")]
        word: Option<String>,
        /// Random word of this length (needs a finite ring).
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        emit_matrix: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TandemCommand {
    /// Check the tandem action identity on seeded tandems.
    Verify {
        #[arg(long, default_value = "D4")]
        system: String,
        #[arg(long, default_value = "mod:3")]
        ring: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the field-case extraction on a seeded tandem.
    Extract {
        #[command(flatten)]
        sub: SubsystemArgs,
        #[arg(long, default_value = "mod:3")]
        ring: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        length: usize,
        /// Root id of the tandem; defaults to the seed modulo the root count.
        #[arg(long)]
        root: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("CHEVLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn write_json(path: &Path, v: &str) -> Result<()> {
    std::fs::write(path, format!("{v}\n")).with_context(|| format!("writing {}", path.display()))
}

fn embedding(preset: &str, system: Option<&str>, m: Option<usize>) -> Result<Embedding> {
    if preset.trim_start().starts_with('[') {
        let system = system.ok_or_else(|| anyhow!("explicit simple roots need --system"))?;
        let sys = Arc::new(RootSystem::from_label(system)?);
        let coords: Vec<Vec<i64>> = serde_json::from_str(preset).context("parsing simple roots")?;
        let gens = coords.iter().map(|c| sys.lookup(c)).collect::<chevlab::Result<Vec<_>>>()?;
        Ok(Embedding::new(sys, &gens))
    } else {
        Ok(Embedding::from_preset(preset, m)?)
    }
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Roots { system, json } => roots(&system, json.as_deref()),
        Command::Star { command: StarCommand::Check { preset, subsystem, system, m, json } } => {
            let spec = preset.or(subsystem).ok_or_else(|| anyhow!("give a preset or --subsystem"))?;
            star_check(&embedding(&spec, system.as_deref(), m)?, json.as_deref())
        }
        Command::Star { command: StarCommand::Validate { path } } => star_validate(&path),
        Command::Net { command: NetCommand::Check { sub, ring, ideals, net, json } } => {
            net_check(&sub, &ring, ideals.as_deref(), net.as_deref(), json.as_deref())
        }
        Command::Group { command: GroupCommand::Element { system, ring, word, length, seed, emit_matrix, json } } => {
            group_element(&system, &ring, word.as_deref(), length, seed, emit_matrix, json.as_deref())
        }
        Command::Tandem { command: TandemCommand::Verify { system, ring, samples, seed, json } } => {
            let g = AdjointGroup::new(Arc::new(ChevalleyAlgebra::from_label(&system)?), &ring.parse()?);
            let rep = tandem_verify(&g, samples, seed)?;
            out!(
                "{}: {} checks on {} tandems over {}, {} failures",
                rep.system,
                rep.checks,
                rep.samples,
                rep.ring,
                rep.failures.len()
            );
            if let Some(p) = json {
                write_json(&p, &serde_json::to_string_pretty(&rep)?)?;
            }
            Ok(rep.passed())
        }
        Command::Tandem { command: TandemCommand::Extract { sub, ring, seed, length, root, json } } => {
            tandem_extract(&sub, &ring, seed, length, root, json.as_deref())
        }
        Command::Suite { profile, seed, flip_sign, json } => suite(profile, seed, flip_sign, json.as_deref()),
    }
}

fn roots(system: &str, json: Option<&Path>) -> Result<bool> {
    let s = RootSystem::from_label(system)?;
    let mut out = std::io::stdout().lock();
    let mut text = format!("{}: rank {}, {} roots (coordinates doubled)\n", s.label(), s.rank(), s.n_roots());
    let mut rows = Vec::new();
    for a in s.ids() {
        text.push_str(&format!("{:>4}  height {:>3}  {:?}\n", a.0, s.height(a), s.coords(a)));
        rows.push(json!({"id": a.0, "coords": s.coords(a), "simple_coeffs": s.simple_coeffs(a), "height": s.height(a)}));
    }
    match out.write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if let Some(p) = json {
        let v = json!({"system": s.label(), "rank": s.rank(), "roots": rows});
        write_json(p, &serde_json::to_string_pretty(&v)?)?;
    }
    Ok(true)
}

fn star_check(emb: &Embedding, json: Option<&Path>) -> Result<bool> {
    let outcome = check_star(emb);
    match &outcome {
        StarOutcome::Certificate(c) => {
            out!("{}: condition (*) holds; {} orbits, {} roots outside the subsystem", emb.label(), c.orbits.len(), c.member_count())
        }
        StarOutcome::Counterexample(g) => {
            out!("{}: condition (*) fails at {}", emb.label(), emb.sys.format_root(*g))
        }
    }
    if let Some(p) = json {
        write_json(p, &StarReport::new(emb, &outcome).to_json())?;
        // re-load and re-validate what was written
        let text = std::fs::read_to_string(p)?;
        StarReport::from_json(&text).context("re-validating the written report")?;
        out!("wrote {}", p.display());
    }
    Ok(outcome.is_pass())
}

fn star_validate(path: &Path) -> Result<bool> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match StarReport::from_json(&text) {
        Ok(rep) => {
            out!("{}: valid {} report for {}", path.display(), rep.status, rep.label);
            Ok(true)
        }
        Err(e) => {
            out!("{}: invalid: {e}", path.display());
            Ok(false)
        }
    }
}

fn parse_ideals(ring: &Ring, text: &str) -> Result<Vec<Ideal>> {
    text.split(';')
        .map(|part| {
            let gens = part.split(',').map(str::trim).filter(|g| !g.is_empty()).map(|g| ring.parse(g)).collect::<chevlab::Result<Vec<_>>>()?;
            Ok(Ideal::new(ring.clone(), gens)?)
        })
        .collect()
}

fn net_check(sub: &SubsystemArgs, ring: &str, ideals: Option<&str>, net: Option<&Path>, json: Option<&Path>) -> Result<bool> {
    let net = match net {
        Some(p) => {
            let v: Value = serde_json::from_str(&std::fs::read_to_string(p)?)?;
            Net::from_json(&v)?
        }
        None => {
            let ring: Ring = ring.parse()?;
            let emb = Arc::new(sub.embedding()?);
            let ideals = parse_ideals(&ring, ideals.unwrap_or("1"))?;
            let outer = emb.outer_orbits();
            let assignment: Vec<(usize, Ideal)> = match ideals.len() {
                1 => outer.iter().map(|&o| (o, ideals[0].clone())).collect(),
                k if k == outer.len() => outer.iter().copied().zip(ideals).collect(),
                k => bail!("{k} ideals given for {} outer orbits", outer.len()),
            };
            match Net::from_orbit_ideals(emb, &ring, &assignment) {
                Ok(n) => n,
                Err(e @ (Error::NetViolation { .. } | Error::PerpNonEmpty(_))) => {
                    out!("not a net: {e}");
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    let alg = ChevalleyAlgebra::new(net.embedding().sys.clone());
    out!("net {} on {} over {}", net.describe(), net.embedding().label(), net.ring());
    let mut ok = true;
    let mut out = json!({"net": net.to_json()});
    match lemma_lprime_check(&alg, &net) {
        Ok(rep) => {
            out!("L'(sigma) brackets stay in L'(sigma): {}; normalizer equals L(sigma): {}", rep.brackets_in_lprime, rep.normalizer_is_l_sigma);
            ok &= rep.holds();
            out["lprime"] = json!({"brackets_in_lprime": rep.brackets_in_lprime, "normalizer_is_l_sigma": rep.normalizer_is_l_sigma});
        }
        Err(e) => out!("L'(sigma) check skipped: {e}"),
    }
    if net.ring().is_finite() {
        let g = AdjointGroup::new(Arc::new(alg), net.ring());
        let rep = level_of_s(&g, &net)?;
        let levels: Vec<String> = rep.orbits.iter().map(|o| format!("{}", o.level)).collect();
        out!("level of S(sigma) per orbit: {} (matches: {})", levels.join(","), rep.matches_net());
        ok &= rep.exact && rep.matches_net();
        out["level"] = json!({"orbits": levels, "exact": rep.exact, "matches": rep.matches_net()});
    }
    if let Some(p) = json {
        write_json(p, &serde_json::to_string_pretty(&out)?)?;
    }
    Ok(ok)
}

fn parse_word(s: &RootSystem, ring: &Ring, text: &str) -> Result<Vec<Letter>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (id, xi) = t.split_once('=').ok_or_else(|| anyhow!("letter {t:?} is not id=xi"))?;
            let id: usize = id.trim().parse().with_context(|| format!("root id in {t:?}"))?;
            if id >= s.n_roots() {
                bail!("root id {id} out of range (0..{})", s.n_roots());
            }
            Ok(Letter { root: RootId(id), xi: ring.parse(xi.trim())? })
        })
        .collect()
}

fn group_element(system: &str, ring: &str, word: Option<&str>, length: Option<usize>, seed: u64, emit_matrix: bool, json: Option<&Path>) -> Result<bool> {
    let ring: Ring = ring.parse()?;
    let g = AdjointGroup::new(Arc::new(ChevalleyAlgebra::from_label(system)?), &ring);
    let el = match (word, length) {
        (Some(w), _) => g.from_word(&parse_word(g.system(), &ring, w)?),
        (None, Some(n)) => seeded_element(&g, seed, n)?,
        (None, None) => g.identity(),
    };
    let witness = el.inverse_witness_holds();
    let v = g.element_to_json(&el, emit_matrix);
    out!("{}", serde_json::to_string_pretty(&v)?);
    out!("inverse witness: {}", if witness { "ok" } else { "FAILED" });
    if let Some(p) = json {
        write_json(p, &serde_json::to_string_pretty(&v)?)?;
    }
    Ok(witness)
}

fn tandem_extract(sub: &SubsystemArgs, ring: &str, seed: u64, length: usize, root: Option<usize>, json: Option<&Path>) -> Result<bool> {
    let ring: Ring = ring.parse()?;
    let emb = sub.embedding()?;
    let s = emb.sys.clone();
    let g = AdjointGroup::new(Arc::new(ChevalleyAlgebra::new(s.clone())), &ring);
    let h = seeded_element(&g, seed, length)?;
    let alpha = RootId(root.unwrap_or(seed as usize % s.n_roots()));
    if alpha.0 >= s.n_roots() {
        bail!("root id {} out of range", alpha.0);
    }
    let t = make_tandem(&g, &h, alpha, &ring.one())?;
    let Some(gamma) = emb.sub.complement(&s).into_iter().find(|&c| !ring.is_zero(t.l.root_coeff(c))) else {
        out!("l has no coefficient outside the subsystem; nothing to extract");
        return Ok(true);
    };
    let (a1, a2, _) = find_admissible_pair(&s, &emb.sub, gamma).ok_or_else(|| anyhow!("no admissible pair for {}", s.format_root(gamma)))?;
    let mut out = json!({
        "tandem": {"word": g.element_to_json(&h, false)["word"], "root": s.coords(alpha), "l": g.algebra().vector_to_json(&t.l)},
        "gamma": s.coords(gamma),
        "pair": [s.coords(a1), s.coords(a2)],
    });
    let ok = match extract_search(&g, &emb, &t, gamma, a1, a2) {
        Ok(e) => {
            out!("gamma {}, pair ({}, {})", s.format_root(gamma), s.format_root(a1), s.format_root(a2));
            out!(
                "{:?} case{}: coefficient at {} is {}; g1 in P: {}; g2 in U': {}",
                e.case,
                e.t.as_ref().map(|t| format!(" at t = {}", ring.format(t))).unwrap_or_default(),
                s.format_root(e.target),
                ring.format(&e.coefficient),
                e.g1_in_parabolic,
                e.in_u_prime
            );
            out["case"] = json!(format!("{:?}", e.case).to_lowercase());
            out["t"] = json!(e.t.as_ref().map(|t| ring.format(t)));
            out["target"] = json!(s.coords(e.target));
            out["coefficient"] = json!(ring.format(&e.coefficient));
            out["g2"] = g.element_to_json(&e.result.g, false);
            out["l2"] = g.algebra().vector_to_json(&e.result.l);
            !ring.is_zero(&e.coefficient) && e.g1_in_parabolic && e.in_u_prime
        }
        Err(Error::NoWitness) => {
            out!("no t in {} makes the target coefficient nonzero", ring);
            out["case"] = json!("no-witness");
            false
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(p) = json {
        write_json(p, &serde_json::to_string_pretty(&out)?)?;
    }
    Ok(ok)
}

fn suite(profile: ProfileArg, seed: u64, flip_sign: bool, json: Option<&Path>) -> Result<bool> {
    let profile = match profile {
        ProfileArg::Quick => Profile::Quick,
        ProfileArg::Full => Profile::Full,
    };
    let mut cfg = SuiteConfig::new(profile, seed);
    if flip_sign {
        let d4 = RootSystem::from_label("D4")?;
        cfg.mutation = Some(Mutation::FlipSign(d4.simple(0), d4.simple(1)));
    }
    let rep = run_suite(&cfg);
    for c in &rep.criteria {
        out!("{} {:>2} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.detail);
    }
    out!("{}/{} criteria passed", rep.passed_count(), rep.criteria.len());
    if let Some(f) = rep.first_failure() {
        out!("first failure: criterion {} ({})", f.id, f.name);
    }
    if let Some(p) = json {
        write_json(p, &rep.to_json())?;
    }
    Ok(rep.all_passed())
}
