use std::fmt::Display;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dyck_tilings::error::Error;
use dyck_tilings::identities::{self, Grid, IdentityCase};
use dyck_tilings::{hermite, orders, paths, render, stirling, symmetric, tilings};
use paths::LatticePath;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dyck", version, about = "Enumerate, verify, biject and render Dyck tilings")]
struct Cli {
    /// Emit newline-delimited JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for `verify`.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Reserved; all commands are deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List combinatorial objects.
    Enumerate(EnumerateArgs),
    /// Check identities case by case.
    Verify(VerifyArgs),
    /// Apply a bijection and print the image with its statistics.
    Biject(BijectArgs),
    /// Draw a tiling or a Hasse diagram.
    Render(RenderArgs),
    /// Statistics of a tiling given as JSON.
    Stats {
        /// Tiling JSON, `@file`, or `-` for stdin.
        tiling: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Paths,
    Tilings,
    Hermite,
    Stirling,
    Matchings,
    Labelings,
    Forests,
    Ncp,
    SymmetricForests,
    SymmetricLabelings,
    SymmetricTilings,
    SymmetricHermite,
    SymmetricMatchings,
    Involutive,
}

#[derive(Args)]
struct EnumerateArgs {
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    lower: Option<String>,
    #[arg(long)]
    upper: Option<String>,
    /// Plane forest `(())()` or symmetric forest `(())()|1`.
    #[arg(long)]
    forest: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id, or `all`; `list` prints the registry.
    identity: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Composition for `zigzag`, e.g. `1,2`.
    #[arg(long, value_delimiter = ',')]
    comp: Option<Vec<usize>>,
    /// A single path or forest instead of the default grid.
    #[arg(long)]
    path: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bijection {
    Alpha,
    AlphaInv,
    AlphaK,
    AlphaKInv,
    F,
    FInv,
    Matching,
    MatchingInv,
    Perm,
    Post,
    Pre,
    Ncp,
    Phi,
    Psi,
    PsiInv,
}

#[derive(Args)]
struct BijectArgs {
    bijection: Bijection,
    input: String,
    #[arg(long, default_value_t = 1)]
    k: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Svg,
    Ascii,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    /// Tiling JSON, `@file` or `-`.
    Tiling,
    /// The empty tiling of a path.
    Empty,
    /// The symmetric tiling of a marked labeling.
    Phi,
    /// The k-Bruhat order on k-Stirling permutations.
    Hasse,
}

#[derive(Args)]
struct RenderArgs {
    object: Object,
    input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    format: Format,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

// A closed pipe (e.g. `dyck enumerate ... | head`) ends the program quietly.
fn emit(args: std::fmt::Arguments) {
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

struct Out {
    json: bool,
}

impl Out {
    fn item(&self, text: impl Display, value: Value) {
        if self.json {
            emit(format_args!("{value}\n"));
        } else {
            emit(format_args!("{text}\n"));
        }
    }
}

fn tiling_text(t: &tilings::Tiling) -> String {
    let tiles: Vec<String> = t.tiles().iter().map(|d| d.to_string()).collect();
    format!("{} {} {}", t.lower(), t.upper(), tiles.join(" ")).trim_end().to_string()
}

fn read_input(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(s)
    } else if let Some(file) = arg.strip_prefix('@') {
        std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{file}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_tiling(arg: &str) -> Result<tilings::Tiling, Failure> {
    let text = read_input(arg)?;
    let json: tilings::TilingJson =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("tiling JSON: {e}")))?;
    Ok(tilings::Tiling::from_json(&json)?)
}

fn need<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T, Failure> {
    v.as_ref().ok_or_else(|| Failure::Usage(format!("--{flag} is required")))
}

fn enumerate(a: &EnumerateArgs, out: &Out) -> Outcome {
    let path = |s: &str| LatticePath::parse_dyck(s, a.k);
    match a.kind {
        Kind::Paths => {
            for p in paths::enumerate_k_dyck(*need(&a.n, "n")?, a.k) {
                out.item(&p, json!(p));
            }
        }
        Kind::Tilings => {
            let list = match (&a.lower, &a.upper) {
                (Some(l), Some(u)) => tilings::enumerate_tilings(&path(l)?, &path(u)?)?,
                (Some(l), None) => tilings::enumerate_fixed_lower(&path(l)?)?,
                (None, Some(u)) => tilings::enumerate_fixed_upper(&path(u)?)?,
                (None, None) => return Err(Failure::Usage("--lower or --upper is required".into())),
            };
            for t in list {
                out.item(tiling_text(&t), json!(t));
            }
        }
        Kind::Hermite => {
            for h in hermite::enumerate_hermite(&path(need(&a.upper, "upper")?)?)? {
                out.item(&h, json!(h));
            }
        }
        Kind::Stirling => {
            for s in stirling::enumerate_stirling(*need(&a.n, "n")?, a.k) {
                out.item(&s, json!({ "word": s, "inv_k": s.inv_k() }));
            }
        }
        Kind::Matchings => {
            for m in hermite::enumerate_matchings(&path(need(&a.upper, "upper")?)?)? {
                out.item(&m, json!({ "matching": m, "crossings": m.crossings() }));
            }
        }
        Kind::Labelings => {
            let forest = match (&a.forest, &a.lower) {
                (Some(f), _) => f.parse::<paths::PlaneForest>()?,
                (None, Some(l)) => paths::path_to_forest(&path(l)?),
                _ => return Err(Failure::Usage("--forest or --lower is required".into())),
            };
            for l in paths::enumerate_increasing_labelings(&forest) {
                out.item(&l, json!(l.to_string()));
            }
        }
        Kind::Forests => {
            for f in paths::enumerate_forests(*need(&a.n, "n")?) {
                out.item(&f, json!(f.to_string()));
            }
        }
        Kind::Ncp => {
            for p in stirling::enumerate_ncp(*need(&a.n, "n")?, a.k) {
                out.item(&p, json!(p));
            }
        }
        Kind::SymmetricForests => {
            for f in symmetric::enumerate_symmetric_forests(*need(&a.n, "n")?) {
                out.item(&f, json!(f));
            }
        }
        Kind::SymmetricLabelings => {
            let f = symmetric::SymmetricForest::parse(need(&a.forest, "forest")?)?;
            for l in symmetric::enumerate_marked_labelings(&f) {
                out.item(&l, json!({ "labeling": l, "weight": l.weight(), "marks": l.mark_set().len() }));
            }
        }
        Kind::SymmetricTilings => {
            let list = match (&a.lower, &a.upper) {
                (Some(l), None) => symmetric::enumerate_symmetric_fixed_lower(&path(l)?)?,
                (None, Some(u)) => symmetric::enumerate_symmetric_fixed_upper(&path(u)?)?,
                _ => return Err(Failure::Usage("exactly one of --lower and --upper is required".into())),
            };
            for t in list {
                out.item(tiling_text(t.tiling()), json!({ "tiling": t.tiling(), "stats": t.stats() }));
            }
        }
        Kind::SymmetricHermite => {
            for h in symmetric::enumerate_symmetric_hermite(&path(need(&a.upper, "upper")?)?)? {
                out.item(&h, json!(h));
            }
        }
        Kind::SymmetricMatchings => {
            for m in symmetric::enumerate_symmetric_matchings(&path(need(&a.upper, "upper")?)?)? {
                out.item(&m, json!({ "matching": m, "cro": m.cro(), "sscr": m.sscr() }));
            }
        }
        Kind::Involutive => {
            for s in symmetric::enumerate_involutive(*need(&a.n, "n")?) {
                let text: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                out.item(text.join(","), json!(s));
            }
        }
    }
    Ok(())
}

fn verify(a: &VerifyArgs, out: &Out, jobs: Option<usize>) -> Outcome {
    if a.identity == "list" {
        for id in identities::registry() {
            out.item(format!("{:20} {}", id.id, id.summary), json!({ "identity": id.id, "summary": id.summary }));
        }
        return Ok(());
    }
    let selected: Vec<_> = if a.identity == "all" {
        identities::registry().iter().collect()
    } else {
        vec![identities::lookup(&a.identity)
            .ok_or_else(|| Failure::Usage(format!("unknown identity {:?}", a.identity)))?]
    };
    let grid = Grid { max_n: a.max_n, n: a.n, k: a.k, comp: a.comp.clone(), path: a.path.clone() };
    let mut work = Vec::new();
    for id in &selected {
        for params in id.cases(&grid)? {
            work.push((*id, params));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let results: Vec<Result<IdentityCase, Error>> =
        pool.install(|| work.par_iter().map(|(id, p)| id.check(p)).collect());
    let mut first_failure: Option<IdentityCase> = None;
    for r in results {
        let case = r?;
        let verdict = if case.pass { "PASS" } else { "FAIL" };
        out.item(
            format!("{verdict} {} {}: {} = {}", case.identity, case.params, case.lhs, case.rhs),
            serde_json::to_value(&case).expect("serializable case"),
        );
        if !case.pass && first_failure.is_none() {
            first_failure = Some(case);
        }
    }
    match first_failure {
        None => Ok(()),
        Some(c) => Err(Failure::Check(format!(
            "counterexample: {} {}\n  lhs = {}\n  rhs = {}",
            c.identity, c.params, c.lhs, c.rhs
        ))),
    }
}

fn biject(a: &BijectArgs, out: &Out) -> Outcome {
    let input = a.input.trim();
    let (image, stats): (String, Value) = match a.bijection {
        Bijection::Alpha => {
            let p: orders::Permutation = input.parse()?;
            let path = orders::alpha(&p)?;
            (path.to_string(), json!({ "inv": p.inv() }))
        }
        Bijection::AlphaInv => {
            let p = orders::alpha_inv(&LatticePath::parse_dyck(input, 1)?)?;
            (p.to_string(), json!({ "inv": p.inv() }))
        }
        Bijection::AlphaK => {
            let s = stirling::StirlingPermutation::parse(input, a.k)?;
            (stirling::alpha_k(&s)?.to_string(), json!({ "inv_k": s.inv_k() }))
        }
        Bijection::AlphaKInv => {
            let s = stirling::alpha_k_inv(&LatticePath::parse_dyck(input, a.k)?)?;
            (s.to_string(), json!({ "inv_k": s.inv_k() }))
        }
        Bijection::F => {
            let h = hermite::HermiteHistory::parse(input, a.k)?;
            let t = hermite::hermite_to_tiling(&h);
            (serde_json::to_string(&t).expect("tiling json"), json!({ "weight": h.weight(), "tiles": t.tiles().len() }))
        }
        Bijection::FInv => {
            let t = parse_tiling(input)?;
            let h = hermite::tiling_to_hermite(&t);
            (h.to_string(), json!({ "tiles": t.tiles().len(), "weight": h.weight() }))
        }
        Bijection::Matching => {
            let h = hermite::HermiteHistory::parse(input, 1)?;
            let m = hermite::hermite_to_matching(&h)?;
            (m.to_string(), json!({ "weight": h.weight(), "crossings": m.crossings() }))
        }
        Bijection::MatchingInv => {
            let m: hermite::Matching = input.parse()?;
            let h = hermite::matching_to_hermite(&m)?;
            (h.to_string(), json!({ "crossings": m.crossings(), "weight": h.weight() }))
        }
        Bijection::Perm => {
            let m: hermite::Matching = input.parse()?;
            let p = hermite::matching_to_permutation(&m);
            (p.to_string(), json!({ "crossings": m.crossings(), "inv": p.inv() }))
        }
        Bijection::Post | Bijection::Pre => {
            let l = paths::IncreasingLabeling::parse(input)?;
            let w = if matches!(a.bijection, Bijection::Post) {
                paths::post_order_word(&l)
            } else {
                paths::pre_order_word(&l)
            };
            (w.to_string(), json!({ "inversions": paths::labeling_inversions(&l).len(), "inv": w.inv() }))
        }
        Bijection::Ncp => {
            let s = stirling::StirlingPermutation::parse(input, a.k)?;
            let (ncp, labels) = stirling::stirling_to_ncp(&s);
            let forest = stirling::nesting_poset(&ncp);
            (ncp.to_string(), json!({ "labels": labels, "nesting_forest": forest.to_string() }))
        }
        Bijection::Phi => {
            let l = symmetric::MarkedIncreasingLabeling::parse(input)?;
            let t = symmetric::phi(&l)?;
            let s = t.stats();
            (
                serde_json::to_string(t.tiling()).expect("tiling json"),
                json!({ "inversions": l.inversions().len(), "weight": l.weight(), "marks": l.mark_set().len(), "tiling": s }),
            )
        }
        Bijection::Psi => {
            let h = symmetric::SymmetricHermiteHistory::parse(input)?;
            let t = symmetric::psi(&h)?;
            (
                serde_json::to_string(t.tiling()).expect("tiling json"),
                json!({ "norm": h.norm(), "pos": h.pos(), "tiling": t.stats() }),
            )
        }
        Bijection::PsiInv => {
            let t = symmetric::SymmetricTiling::new(parse_tiling(input)?)?;
            let h = symmetric::psi_inverse(&t)?;
            (h.to_string(), json!({ "norm": h.norm(), "pos": h.pos(), "tiling": t.stats() }))
        }
    };
    if out.json {
        // Tilings are printed as JSON already; embed them as objects.
        let output =
            serde_json::from_str::<Value>(&image).ok().filter(Value::is_object).unwrap_or(Value::String(image));
        emit(format_args!("{}\n", json!({ "input": input, "output": output, "stats": stats })));
    } else {
        emit(format_args!("{image}\nstats: {stats}\n"));
    }
    Ok(())
}

fn render_cmd(a: &RenderArgs) -> Outcome {
    let input = || need(&a.input, "input (positional)");
    let text = match a.object {
        Object::Hasse => {
            let poset = stirling::StirlingPoset::get(*need(&a.n, "n")?, a.k);
            match a.format {
                Format::Dot => render::hasse_dot(&poset),
                Format::Svg => render::hasse_svg(&poset),
                Format::Ascii => return Err(Failure::Usage("Hasse diagrams render as svg or dot".into())),
            }
        }
        obj => {
            let (t, center_line) = match obj {
                Object::Tiling => (parse_tiling(input()?)?, false),
                Object::Empty => (tilings::Tiling::empty(LatticePath::parse_dyck(input()?, a.k)?), false),
                _ => (symmetric::phi(&symmetric::MarkedIncreasingLabeling::parse(input()?)?)?.into_tiling(), true),
            };
            match a.format {
                Format::Svg => render::tiling_svg(&t, render::SvgOptions { center_line }),
                Format::Ascii => render::tiling_ascii(&t),
                Format::Dot => return Err(Failure::Usage("tilings render as svg or ascii".into())),
            }
        }
    };
    match &a.out {
        Some(file) => std::fs::write(file, text).map_err(|e| Failure::Check(format!("{}: {e}", file.display()))),
        None => {
            emit(format_args!("{text}"));
            Ok(())
        }
    }
}

fn stats_cmd(arg: &str, out: &Out) -> Outcome {
    let t = parse_tiling(arg)?;
    let s = tilings::stats(&t)?;
    let sym = symmetric::SymmetricTiling::new(t).ok().map(|st| st.stats());
    let value = json!({ "stats": s, "symmetric": sym });
    let mut text = format!("area {} tiles {} art {} art_k {}", s.area, s.tiles, s.art, s.art_k);
    if let Some(y) = sym {
        text += &format!(
            "\ntiles+ {} tiles0 {} area+ {} area0 {} art+ {} art0 {}",
            y.tiles_plus, y.tiles_zero, y.area_plus, y.area_zero, y.art_plus, y.art_zero
        );
    }
    out.item(text, value);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { json: cli.json };
    let _ = cli.seed;
    let result = match &cli.command {
        Command::Enumerate(a) => enumerate(a, &out),
        Command::Verify(a) => verify(a, &out, cli.jobs),
        Command::Biject(a) => biject(a, &out),
        Command::Render(a) => render_cmd(a),
        Command::Stats { tiling } => stats_cmd(tiling, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
