use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use scroll_ulrich::chow::{canonical_class, tangent_chern, todd_class, ScrollParams};
use scroll_ulrich::registry::{verify_claims, Registry};
use scroll_ulrich::report::ReportDocument;
use scroll_ulrich::riemann_roch::Hrr;
use scroll_ulrich::scroll::{coh_scroll_line, coh_tower_twist};
use scroll_ulrich::tower::{build_tower, moduli_dim, TowerSpec};
use scroll_ulrich::ulrich::{
    is_ulrich_line, scan_hits, ulrich_dual, ulrich_scan, ScanBox, UlrichStatus, UlrichVerdict,
};
use scroll_ulrich::{DivisorClass, EngineError};

#[derive(Parser)]
#[command(
    name = "scroll-ulrich",
    version,
    about = "Exact cohomology and Ulrich checks on 3-fold scrolls over F_e"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cohomology of x*xi + (alpha, beta).
    Coh {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Intersection data of the scroll.
    Chow {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Euler characteristic of a line class or of End of a tower.
    Chi {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        class: ClassArgs,
        /// Comma-separated constituents; prints chi(G (x) G^dual) instead.
        #[arg(long)]
        tower: Option<String>,
    },
    /// Ulrich checks for line classes.
    Ulrich {
        #[command(subcommand)]
        cmd: UlrichCmd,
    },
    /// Extension towers of Ulrich line bundles.
    Tower {
        #[command(subcommand)]
        cmd: TowerCmd,
    },
    /// Evaluate the claim registry over a grid.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum UlrichCmd {
    Check {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        verbose: bool,
    },
    Scan {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = -2, allow_negative_numbers = true)]
        x_min: i64,
        #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
        x_max: i64,
        #[arg(long, default_value_t = 8)]
        alpha_max: i64,
        #[arg(long, default_value_t = 8)]
        beta_max: i64,
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Rank, Chern classes and slope.
    Build(TowerArgs),
    /// Ulrich vanishing, chi(End) by both routes, moduli dimension.
    Verify(TowerArgs),
}

#[derive(Args)]
struct TowerArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Comma-separated constituents, sub first, e.g. M1,M2,L2.
    #[arg(long, conflicts_with_all = ["sporadic", "mixed"])]
    tower: Option<String>,
    /// Use [M1, M2, M1, ...] of this rank.
    #[arg(long, conflicts_with = "mixed")]
    sporadic: Option<i64>,
    /// Use [M1, M2, L2, L1, ...] of this rank.
    #[arg(long)]
    mixed: Option<i64>,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    e: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Shorthand for e = 0, b = 2t, k = 3t.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["e", "b", "k"])]
    t: Option<i64>,
}

#[derive(Args)]
struct ClassArgs {
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    xi: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    alpha: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    beta: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value = "1:10", value_parser = parse_range)]
    t_range: RangeInclusive<i64>,
    #[arg(long, default_value = "1:12", value_parser = parse_range)]
    r_range: RangeInclusive<i64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated claim ids.
    #[arg(long, value_delimiter = ',')]
    claims: Vec<String>,
    /// Manifest to use instead of the built-in one.
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Count known discrepancies as failures.
    #[arg(long)]
    strict: bool,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected a:b, got '{s}'"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in '{s}'"))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end in '{s}'"))?;
    if a > b {
        return Err(format!("empty range '{s}'"));
    }
    Ok(a..=b)
}

impl ParamArgs {
    fn resolve(&self) -> Result<ScrollParams, EngineError> {
        match (self.t, self.e, self.b, self.k) {
            (Some(t), ..) => ScrollParams::sporadic(t),
            (None, Some(e), Some(b), Some(k)) => ScrollParams::new(e, b, k),
            _ => Err(EngineError::InvalidParams {
                e: self.e.unwrap_or(0),
                b: self.b.unwrap_or(0),
                k: self.k.unwrap_or(0),
                reason: "give --t, or all of --e, --b, --k".into(),
            }),
        }
    }
}

impl ClassArgs {
    fn class(&self) -> DivisorClass {
        DivisorClass::new(self.xi, self.alpha, self.beta)
    }
}

impl TowerArgs {
    fn spec(&self) -> Result<TowerSpec, EngineError> {
        let p = self.params.resolve()?;
        match (&self.tower, self.sporadic, self.mixed) {
            (Some(s), _, _) => TowerSpec::parse(&p, s),
            (_, Some(r), _) => TowerSpec::sporadic(&p, r),
            (_, _, Some(r)) => TowerSpec::mixed(&p, r),
            _ => Err(EngineError::EmptyTower),
        }
    }
}

fn print_verdict(d: DivisorClass, v: &UlrichVerdict, verbose: bool) {
    println!("{d}\t{}", v.status);
    if !verbose {
        return;
    }
    for (j, chi) in v.chi.iter().enumerate() {
        match &v.certificate {
            Some(c) => println!("  H^*(D - {}xi) = {}", j + 1, c[j]),
            None => println!("  chi(D - {}xi) = {chi}", j + 1),
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, EngineError> {
    match cli.cmd {
        Cmd::Coh { params, class } => {
            let p = params.resolve()?;
            let c = coh_scroll_line(&p, class.class());
            for (i, d) in c.dims.iter().enumerate() {
                println!("h{i}\t{d}");
            }
            println!("chi\t{}", c.chi);
        }
        Cmd::Chow { params } => {
            let p = params.resolve()?;
            let tc = tangent_chern(&p);
            let td = todd_class(&p);
            println!("params\t{p}");
            println!("degree\t{}", p.degree());
            println!("sectional_genus\t{}", p.sectional_genus());
            println!("embedding_dim\t{}", p.embedding_dim());
            println!("ulrich_slope\t{}", p.ulrich_slope());
            println!("K_X\t{}", canonical_class(&p));
            println!("c1(T_X)\t{}", tc.c1);
            println!("c2(T_X)\t{}", tc.c2);
            println!("c3(T_X)\t{}", tc.c3);
            let fmt3 = |v: &[num_rational::BigRational; 3]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            println!(
                "todd\t{} | {} | {} | {}",
                td.deg0,
                fmt3(&td.deg1),
                fmt3(&td.deg2),
                td.deg3
            );
        }
        Cmd::Chi {
            params,
            class,
            tower,
        } => {
            let p = params.resolve()?;
            let hrr = Hrr::new(&p);
            match tower {
                Some(s) => {
                    let g = TowerSpec::parse(&p, &s)?;
                    println!("{}", hrr.chi_end_divisors(&g.divisors())?);
                }
                None => println!("{}", hrr.chi_line(class.class())),
            }
        }
        Cmd::Ulrich { cmd } => match cmd {
            UlrichCmd::Check {
                params,
                class,
                verbose,
            } => {
                let p = params.resolve()?;
                let d = class.class();
                let v = is_ulrich_line(&p, d);
                print_verdict(d, &v, verbose);
                if verbose {
                    println!("  dual = {}", ulrich_dual(&p, d));
                }
            }
            UlrichCmd::Scan {
                params,
                x_min,
                x_max,
                alpha_max,
                beta_max,
                verbose,
            } => {
                let p = params.resolve()?;
                let bx = ScanBox {
                    x_min,
                    x_max,
                    alpha_max,
                    beta_max,
                };
                let all = ulrich_scan(&p, &bx);
                let hits = scan_hits(&all);
                for (d, v) in &hits {
                    print_verdict(*d, v, verbose);
                }
                let pruned = all.iter().filter(|(_, v)| v.certificate.is_none()).count();
                let undecided = hits
                    .iter()
                    .filter(|(_, v)| v.status == UlrichStatus::Undecided)
                    .count();
                eprintln!(
                    "scanned {} classes: {} ruled out by chi, {} hits, {} undecided",
                    all.len(),
                    pruned,
                    hits.len(),
                    undecided
                );
            }
        },
        Cmd::Tower { cmd } => match cmd {
            TowerCmd::Build(args) => {
                let g = args.spec()?;
                let c = build_tower(&g);
                println!("tower\t{g}");
                println!("rank\t{}", c.rank);
                println!("c1\t{}", c.c1);
                println!("c2\t{}", c.c2);
                println!("c3\t{}", c.c3);
                println!("slope\t{}", c.slope);
            }
            TowerCmd::Verify(args) => {
                let g = args.spec()?;
                let p = *g.params();
                let c = build_tower(&g);
                let ulrich =
                    (1..=3).all(|j| coh_tower_twist(&g, DivisorClass::xi().scale(-j)).is_zero());
                let hrr = Hrr::new(&p);
                let chi_end = hrr.chi_end_divisors(&g.divisors())?;
                println!("tower\t{g}");
                println!("ulrich\t{}", if ulrich { "yes" } else { "not forced" });
                println!("slope\t{} (expected {})", c.slope, p.ulrich_slope());
                println!("chi_end\t{chi_end}");
                println!("moduli_dim\t{}", moduli_dim(&g)?);
            }
        },
        Cmd::Report(args) => {
            let mut reg = match &args.registry {
                Some(path) => Registry::load(path)?,
                None => Registry::builtin(),
            };
            if !args.claims.is_empty() {
                reg = reg.select(&args.claims)?;
            }
            let results = verify_claims(args.t_range.clone(), args.r_range.clone(), &reg);
            let doc = ReportDocument {
                t_range: args.t_range,
                r_range: args.r_range,
                claims: reg.claims().iter().map(|c| c.id().to_string()).collect(),
                results,
            };
            let text = match args.format {
                Format::Json => doc.to_json(),
                Format::Tsv => doc.to_tsv(),
            };
            match &args.out {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| EngineError::Registry(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            let s = doc.summary();
            eprintln!(
                "pass {} fail {} (known {}) undecided {}",
                s.pass, s.fail, s.fail_known, s.undecided
            );
            if s.blocking(args.strict) > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
