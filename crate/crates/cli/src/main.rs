use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use mss_core::couple::{bockstein_couple, CoupleFile};
use mss_core::graded::reindex::ungraded_remark_exponent;
use mss_core::graded::{Indexing, Mod2Poly, Reindexing, SignFamily};
use mss_core::instances::{sign_suite, Tower, TowerBody, TowerSpec};
use mss_core::io::{to_json, write_atomic};
use mss_core::ssengine::{compare_global_iso, leibniz_check, PageFile, PagePairing, PairingFile, VerdictFile};

#[derive(Parser)]
#[command(name = "mss", version, about = "Multiplicative spectral sequences over the integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Index {
    Engine,
    Paper,
}

impl From<Index> for Indexing {
    fn from(i: Index) -> Self {
        match i {
            Index::Engine => Indexing::Engine,
            Index::Paper => Indexing::Paper,
        }
    }
}

/// `r` or `r1..r2`.
fn parse_pages(s: &str) -> std::result::Result<(usize, usize), String> {
    let bad = || format!("expected r or r1..r2, got {s:?}");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let r = s.trim().parse().map_err(|_| bad())?;
            (r, r)
        }
    };
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[derive(clap::Args)]
struct TowerArgs {
    /// Tower spec (JSON).
    #[arg(long)]
    input: Vec<PathBuf>,
    /// Overrides the coefficients of the spec: Z, Z/n, laurent(d), laurent(d,n) or a ring file.
    #[arg(long)]
    coeff: Option<String>,
    /// Overrides the coefficient modulus of the spec (0 for Z).
    #[arg(long)]
    modulus: Option<u64>,
    /// Pages to emit, `r` or `r1..r2`.
    #[arg(long, value_parser = parse_pages)]
    pages: Option<(usize, usize)>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Bidegree convention of the written page files.
    #[arg(long, value_enum, default_value = "engine")]
    indexing: Index,
}

#[derive(Subcommand)]
enum Command {
    /// Builds a tower and writes its pages.
    Compute(TowerArgs),
    /// Writes page pairings and comparison verdicts.
    Pair(TowerArgs),
    /// Runs the sign-convention suite.
    Check {
        /// Exhaustive range for the symbolic sign identities.
        #[arg(long, default_value_t = 4)]
        range: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the assertions as JSON to this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrites a page file in the other indexing.
    Convert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Index,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn load_tower(path: &Path, args: &TowerArgs) -> Result<Tower> {
    let (mut spec, base) = TowerSpec::load(path)?;
    if let Some(c) = &args.coeff {
        spec.coefficients = Some(serde_json::Value::String(c.clone()));
    }
    if let Some(m) = args.modulus {
        spec.modulus = Some(m);
    }
    let tower = spec.build(&base).with_context(|| format!("building {}", path.display()))?;
    for note in &tower.notes {
        println!("{}: {note}", path.display());
    }
    Ok(tower)
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "tower".into())
}

fn write_page(file: &PageFile, out: &Path, name: &str, format: Format) -> Result<PathBuf> {
    let (ext, body) = match format {
        Format::Json => ("json", file.to_json()),
        Format::Csv => ("csv", file.to_csv()),
    };
    let path = out.join(format!("{name}.{ext}"));
    write_atomic(&path, body.as_bytes())?;
    Ok(path)
}

fn compute(args: &TowerArgs) -> Result<bool> {
    if args.input.is_empty() {
        bail!("compute needs --input");
    }
    let mut ok = true;
    for input in &args.input {
        let tower = load_tower(input, args)?;
        let name = stem(input);
        for data in tower.pages(args.pages) {
            let file = PageFile::from_page(&data).convert(args.indexing.into());
            let path = write_page(&file, &args.out, &format!("{name}_E{}", data.r), args.format)?;
            println!("wrote {}", path.display());
        }
        if let TowerBody::Bockstein { complex, pages } = &tower.body {
            let couple = bockstein_couple(complex, &pages.modulus)?;
            let path = args.out.join(format!("{name}_couple.json"));
            write_atomic(&path, CoupleFile::from_couple(&couple).to_json().as_bytes())?;
            println!("wrote {}", path.display());
            if !pages.cross_checked {
                println!("FAIL Bockstein pages disagree with the cochain formula");
                ok = false;
            }
        }
        if let Some(rep) = tower.abutment() {
            let path = args.out.join(format!("{name}_abutment.json"));
            write_atomic(&path, to_json(&rep).as_bytes())?;
            for d in rep.degrees.iter().filter(|d| !d.ok) {
                println!("FAIL abutment in total degree {}: H = {}", d.n, d.total);
            }
            println!("{} abutment to H^* (limit page {})", if rep.ok { "ok" } else { "FAIL" }, rep.limit);
            ok &= rep.ok;
        }
    }
    Ok(ok)
}

fn pairing_of(tower: &Tower, r: usize) -> Result<PagePairing> {
    tower
        .pairing(r)?
        .with_context(|| "this tower carries no product (set options.diagonal and use a kind with a cup product)")
}

fn verdict(out: &Path, name: &str, v: VerdictFile, asserted: bool) -> Result<bool> {
    write_atomic(&out.join(format!("{name}.json")), v.to_json().as_bytes())?;
    let status = match (v.isomorphic, asserted) {
        (true, _) => "ok",
        (false, true) => "FAIL",
        (false, false) => "differs",
    };
    let witness = v
        .counterexample
        .map(|c| format!(" at ({},{})[{}] x ({},{})[{}]", c[0], c[1], c[2], c[3], c[4], c[5]))
        .unwrap_or_default();
    println!("{status} {}: {} products checked{witness}", v.label, v.checked);
    Ok(v.isomorphic || !asserted)
}

fn pair(args: &TowerArgs) -> Result<bool> {
    let towers: Vec<(String, Tower)> = args
        .input
        .iter()
        .map(|p| load_tower(p, args).map(|t| (stem(p), t)))
        .collect::<Result<_>>()?;
    let (lo, hi) = match (towers.len(), args.pages) {
        (0, _) => bail!("pair needs --input"),
        (3.., _) => bail!("pair takes one or two inputs"),
        (_, Some(r)) => r,
        (_, None) => (2, 2),
    };
    let mut ok = true;
    let twist = Reindexing::PaperToEngine.transport(&ungraded_remark_exponent());
    for r in lo..=hi {
        let mut pairings = Vec::new();
        for (name, tower) in &towers {
            let pp = pairing_of(tower, r)?;
            let file = PairingFile::from_pairing(&pp);
            write_atomic(&args.out.join(format!("{name}_pairing_E{r}.json")), file.to_json().as_bytes())?;
            let rep = leibniz_check(&pp);
            ok &= verdict(&args.out, &format!("{name}_leibniz_E{r}"), VerdictFile::from_leibniz(&format!("{name} Leibniz E_{r}"), &rep), true)?;
            match &tower.body {
                TowerBody::Ahss { complex, ring, ahss } if r == 2 => {
                    let c = mss_core::instances::ahss_comparison(complex, ring, ahss)?;
                    let id = Some(&c.identification);
                    let g = compare_global_iso(&c.e2, &c.graded, id, &SignFamily::identity(), &Mod2Poly::zero());
                    ok &= verdict(&args.out, &format!("{name}_graded"), VerdictFile::from_verdict("E_2 vs graded cup", &g), true)?;
                    let u = compare_global_iso(&c.e2, &c.ungraded, id, &SignFamily::identity(), &Mod2Poly::zero());
                    verdict(&args.out, &format!("{name}_ungraded"), VerdictFile::from_verdict("E_2 vs ungraded cup", &u), false)?;
                    let t = compare_global_iso(&c.e2, &c.ungraded, id, &SignFamily::pq(), &twist);
                    let label = "E_2 vs ungraded cup, twisted by (-1)^(t(p+q))";
                    ok &= verdict(&args.out, &format!("{name}_ungraded_twisted"), VerdictFile::from_verdict(label, &t), true)?;
                }
                TowerBody::Group(g) => {
                    let label = "graded vs ungraded, twisted by (-1)^(t(p+q))";
                    ok &= verdict(&args.out, &format!("{name}_remark"), VerdictFile::from_verdict(label, &g.remark_verdict()), true)?;
                }
                _ => {}
            }
            pairings.push(pp);
        }
        if let [a, b] = &pairings[..] {
            let v = compare_global_iso(a, b, None, &SignFamily::identity(), &Mod2Poly::zero());
            let label = format!("{} vs {} on E_{r}", towers[0].0, towers[1].0);
            ok &= verdict(&args.out, &format!("compare_E{r}"), VerdictFile::from_verdict(&label, &v), true)?;
        }
    }
    Ok(ok)
}

fn check(range: i64, seed: u64, out: Option<&Path>) -> Result<bool> {
    let suite = sign_suite(range, seed);
    for a in &suite {
        println!("{} {}: {}", if a.passed { "ok" } else { "FAIL" }, a.name, a.detail);
    }
    if let Some(dir) = out {
        write_atomic(&dir.join("check.json"), to_json(&suite).as_bytes())?;
    }
    Ok(suite.iter().all(|a| a.passed))
}

fn convert(input: &Path, to: Index, out: &Path, format: Format) -> Result<bool> {
    let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let file = PageFile::from_json(&text, &input.display().to_string())?;
    // validates the differentials before rewriting
    file.to_page(&input.display().to_string())?;
    let target: Indexing = to.into();
    let name = format!("{}_{}", stem(input), serde_json::to_value(target)?.as_str().unwrap_or("page"));
    let path = write_page(&file.convert(target), out, &name, format)?;
    println!("wrote {}", path.display());
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Compute(args) => compute(args),
        Command::Pair(args) => pair(args),
        Command::Check { range, seed, out } => check(*range, *seed, out.as_deref()),
        Command::Convert { input, to, out, format } => convert(input, *to, out, *format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
