//! `sqavoid`: exact searches, constructions, bounds and density scans for
//! sets whose differences avoid the squares mod `m`.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqavoid::bounds::bound_report_for;
use sqavoid::constructions::{best_construction, cohen_set, p_square_set, product_set, ruzsa65, two_prime_set};
use sqavoid::density::{build_grid, build_synthetic_grid, density_scan, tv_distance_empirical, Variant};
use sqavoid::numtheory::{factorize, primes_in_class, ResidueClass};
use sqavoid::search::{ResultCache, ScanFilter, MAX_MODULUS};
use sqavoid::{max_avoiding_with, scan_table, Budget, SearchOptions};

use output::{Format, Printer};

const EXIT_DOMAIN: u8 = 1;
const EXIT_INEXACT: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "sqavoid", version, about = "Sets in Z_m whose differences avoid the squares")]
struct Cli {
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory holding the result cache.
    #[arg(long, global = true, env = "SQAVOID_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with_all = ["csv", "text"])]
    json: bool,
    #[arg(long, global = true, conflicts_with = "text")]
    csv: bool,
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Branch-and-bound node budget per modulus.
    #[arg(long, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_nodes: u64,
    /// Wall-clock cap per modulus, in seconds. Makes budgeted results timing dependent.
    #[arg(long)]
    time: Option<f64>,
    /// Only trust the node budget, not the construction seed.
    #[arg(long)]
    no_seed: bool,
}

impl BudgetArgs {
    fn options(&self) -> SearchOptions {
        let mut budget = Budget::nodes(self.budget_nodes);
        if let Some(t) = self.time {
            budget = budget.with_time(Duration::from_secs_f64(t.max(0.0)));
        }
        let mut opts = SearchOptions::new(budget);
        opts.seed_with_constructions = !self.no_seed;
        opts
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct RangeArgs {
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest avoiding set for one modulus.
    Search {
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Exit with status 2 unless the answer is proved.
        #[arg(long)]
        require_exact: bool,
    },
    /// Searches every modulus in a range.
    Scan {
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        squarefree_only: bool,
        #[arg(long)]
        odd_only: bool,
    },
    /// Builds an explicit avoiding set.
    Construct {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q1: Option<u64>,
        #[arg(long)]
        q2: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Upper bounds that apply to a modulus.
    Bounds {
        #[arg(long)]
        m: u64,
    },
    /// Failure counts of the truncation conditions over `m <= x`.
    Density {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long = "c", default_value_t = 1.0)]
        c: f64,
        #[arg(long, value_enum, default_value_t = VariantArg::Tail)]
        variant: VariantArg,
        /// Print the parameter grid instead of scanning.
        #[arg(long)]
        grid: bool,
        /// With --grid, treat x as a formal parameter (no prime tables).
        #[arg(long, requires = "grid")]
        synthetic: bool,
    },
    /// Total variation distance to independent Poisson variables.
    Tv {
        #[arg(long)]
        x: u64,
        /// Prime set `lo:hi:class` for primes in (lo, hi], class 1, 3 or all. Repeatable.
        #[arg(long = "set", required = true, value_parser = parse_set)]
        sets: Vec<SetSpec>,
    },
    /// Per-modulus summary CSV.
    Table {
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Cohen,
    TwoPrime,
    PSquare,
    Ruzsa65,
    Product,
    Best,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VariantArg {
    Tail,
    Smooth,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Tail => Variant::Tail,
            VariantArg::Smooth => Variant::Smooth,
        }
    }
}

#[derive(Clone, Debug)]
struct SetSpec {
    lo: f64,
    hi: f64,
    class: ResidueClass,
}

fn parse_set(s: &str) -> Result<SetSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, class] = parts[..] else {
        return Err(format!("expected lo:hi:class, got {s:?}"));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let class = match class {
        "1" => ResidueClass::One,
        "3" => ResidueClass::Three,
        "all" => ResidueClass::All,
        _ => return Err(format!("class must be 1, 3 or all, got {class:?}")),
    };
    Ok(SetSpec { lo: num(lo)?, hi: num(hi)?, class })
}

/// Why a run did not succeed.
enum Failure {
    Domain(String),
    Inexact,
    Usage(String),
}

impl From<sqavoid::Error> for Failure {
    fn from(e: sqavoid::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Inexact) => {
            eprintln!("error: budget exhausted before the answer was proved");
            ExitCode::from(EXIT_INEXACT)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let mut cache = cli.cache_dir.as_ref().map(ResultCache::open).transpose()?;
    let out = Printer::new(format);
    match cli.command {
        Command::Search { m, budget, require_exact } => {
            let result = match cache.as_ref().and_then(|c| c.exact(m)) {
                Some(hit) => hit.to_result(),
                None => {
                    let r = max_avoiding_with(m, &budget.options())?;
                    if let Some(c) = cache.as_mut() {
                        c.append(&r)?;
                    }
                    r
                }
            };
            out.search(&result);
            if require_exact && !result.exact {
                return Err(Failure::Inexact);
            }
        }
        Command::Scan { range, budget, squarefree_only, odd_only } => {
            check_range(range)?;
            let filter = ScanFilter { squarefree_only, odd_only };
            let records = scan_table(range.from..=range.to, &budget.options(), filter, cache.as_mut());
            out.scan(&records);
        }
        Command::Construct { method, p, q1, q2, m } => {
            let need = |v: Option<u64>, flag: &str| {
                v.ok_or_else(|| Failure::Usage(format!("--method {method:?} needs --{flag}")))
            };
            let c = match method {
                MethodArg::Cohen => cohen_set(need(p, "p")?)?,
                MethodArg::TwoPrime => two_prime_set(need(q1, "q1")?, need(q2, "q2")?)?,
                MethodArg::PSquare => p_square_set(need(p, "p")?)?,
                MethodArg::Ruzsa65 => ruzsa65(),
                MethodArg::Product => product_set(&factorize_checked(need(m, "m")?)?)?,
                MethodArg::Best => best_construction(&factorize_checked(need(m, "m")?)?)?,
            };
            out.construction(&c);
        }
        Command::Bounds { m } => out.bounds(&bound_report_for::<f64>(m)?),
        Command::Density { x, eps, c, variant, grid, synthetic } => {
            if grid {
                let g = if synthetic {
                    build_synthetic_grid::<f64>(x, eps, c)?
                } else {
                    build_grid::<f64>(x, eps, c)?
                };
                out.grid(&g);
            } else {
                if x.fract() != 0.0 || x < 0.0 {
                    return Err(Failure::Domain(format!("x = {x} must be a whole number for a scan")));
                }
                out.density(&density_scan::<f64>(x as u64, eps, c, variant.into())?);
            }
        }
        Command::Tv { x, sets } => {
            let sets = sets
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let mut t = primes_in_class(s.lo, s.hi, s.class)?;
                    t.label = format!("T{}", i + 1);
                    Ok(t)
                })
                .collect::<sqavoid::Result<Vec<_>>>()?;
            let tv: f64 = tv_distance_empirical(x, &sets)?;
            out.tv(x, &sets, tv);
        }
        Command::Table { range, budget } => {
            check_range(range)?;
            let records = scan_table(range.from..=range.to, &budget.options(), ScanFilter::default(), cache.as_mut());
            out.table(&records);
        }
    }
    Ok(())
}

fn factorize_checked(m: u64) -> Result<sqavoid::Factorization, Failure> {
    if m == 0 {
        return Err(Failure::Domain("modulus must be at least 1".into()));
    }
    Ok(factorize(m))
}

/// Empty ranges are fine; out-of-bound ones are rejected before any work.
fn check_range(r: RangeArgs) -> Result<(), Failure> {
    if r.from == 0 {
        return Err(Failure::Domain("range must start at 1 or later".into()));
    }
    if r.to > MAX_MODULUS && r.from <= r.to {
        return Err(Failure::Domain(format!("range end {} exceeds {MAX_MODULUS}", r.to)));
    }
    Ok(())
}
