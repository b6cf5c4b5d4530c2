//! Rendering of reports as text, CSV or versioned JSON.

use serde::Serialize;
use sqavoid::numtheory::{factorize, PrimeClassSet};
use sqavoid::search::ScanRecord;
use sqavoid::{BoundReportF64, ConstructionOutputF64, DensityReportF64, ParamGridF64, SearchResult};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    result: T,
}

pub struct Printer {
    format: Format,
}

fn dashed(set: &[u64]) -> String {
    set.iter().map(u64::to_string).collect::<Vec<_>>().join("-")
}

const SEARCH_HEADER: &str = "m,status,best_size,exact,lower_bound,upper_bound,nodes,witness,error";

fn search_row(r: &SearchResult) -> String {
    format!(
        "{},done,{},{},{},{},{},{},",
        r.m,
        r.best_size,
        r.exact,
        r.lower_bound,
        r.upper_bound,
        r.nodes_explored,
        dashed(&r.witness)
    )
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

impl Printer {
    pub fn new(format: Format) -> Self {
        Self { format }
    }

    fn json<T: Serialize>(&self, command: &str, result: T) {
        let env = Envelope {
            schema: SCHEMA,
            command,
            result,
        };
        println!("{}", serde_json::to_string_pretty(&env).expect("reports serialize"));
    }

    pub fn search(&self, r: &SearchResult) {
        match self.format {
            Format::Json => self.json("search", r),
            Format::Csv => println!("{SEARCH_HEADER}\n{}", search_row(r)),
            Format::Text => {
                let status = if r.exact { "exact" } else { "not proved" };
                println!("m = {}", r.m);
                println!("best size = {} ({status})", r.best_size);
                println!("bounds = [{}, {}]", r.lower_bound, r.upper_bound);
                println!("witness = {:?}", r.witness);
                println!("nodes = {}, {:.3}s", r.nodes_explored, r.elapsed_secs);
                if r.conventional {
                    println!("note: the value for m = 1 is a convention");
                }
            }
        }
    }

    pub fn scan(&self, records: &[ScanRecord]) {
        match self.format {
            Format::Json => self.json("scan", records),
            Format::Csv => {
                println!("{SEARCH_HEADER}");
                for rec in records {
                    match rec {
                        ScanRecord::Done(r) => println!("{}", search_row(r)),
                        ScanRecord::Failed { m, error } => println!("{m},failed,,,,,,,{}", quote(error)),
                    }
                }
            }
            Format::Text => {
                for rec in records {
                    match rec {
                        ScanRecord::Done(r) => println!(
                            "m = {:>6}  best = {:>4}  ub = {:>4}  {}",
                            r.m,
                            r.best_size,
                            r.upper_bound,
                            if r.exact { "exact" } else { "not proved" }
                        ),
                        ScanRecord::Failed { m, error } => println!("m = {m:>6}  failed: {error}"),
                    }
                }
            }
        }
    }

    pub fn construction(&self, c: &ConstructionOutputF64) {
        match self.format {
            Format::Json => self.json("construct", c),
            Format::Csv => println!(
                "m,method,size,guaranteed_size,set\n{},{:?},{},{},{}",
                c.m,
                c.method,
                c.size(),
                c.guaranteed_size,
                dashed(&c.set)
            ),
            Format::Text => {
                println!("m = {}", c.m);
                println!("method = {:?}", c.method);
                println!("size = {} (guaranteed {:.4})", c.size(), c.guaranteed_size);
                println!("set = {:?}", c.set);
            }
        }
    }

    pub fn bounds(&self, b: &BoundReportF64) {
        match self.format {
            Format::Json => self.json("bounds", b),
            Format::Csv => print!("{}\n{}", BoundReportF64::CSV_HEADER, b.to_csv()),
            Format::Text => {
                println!("m = {}", b.m);
                for e in &b.bounds {
                    let shown = e.value.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"));
                    let note = e.reason.as_deref().map(|r| format!("  ({r})")).unwrap_or_default();
                    println!("{:<16} {shown}{note}", e.name);
                }
                println!("best = {}", b.best);
            }
        }
    }

    pub fn density(&self, r: &DensityReportF64) {
        match self.format {
            Format::Json => self.json("density", r),
            Format::Csv => println!("{}\n{}", DensityReportF64::CSV_HEADER, r.to_csv_row()),
            Format::Text => {
                let opt = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.6}"));
                println!("x = {}, eps = {}, C = {}, variant = {}", r.x, r.eps, r.c, r.variant.name());
                println!("fail (i)   {:.6}", r.frac_i());
                println!("fail (ii)  {:.6}", r.frac_ii());
                println!("fail (iii) {:.6}", r.frac_iii());
                println!("fail (iv)  {}", opt(r.frac_iv()));
                println!("event E    {}", opt(r.frac_event_e()));
                println!("c(eps)     {:.6}", r.c_eps);
            }
        }
    }

    pub fn grid(&self, g: &ParamGridF64) {
        match self.format {
            Format::Json => self.json("grid", g),
            Format::Csv => {
                println!("j,y,primes,lambda");
                for (j, y) in g.y.iter().enumerate() {
                    let primes = if j == 0 { String::new() } else { g.t.get(j - 1).map_or(String::new(), |t| t.len().to_string()) };
                    let lambda = if j == 0 {
                        String::new()
                    } else {
                        g.lambda.as_ref().and_then(|l| l.get(j - 1)).map_or(String::new(), f64::to_string)
                    };
                    println!("{j},{y},{primes},{lambda}");
                }
            }
            Format::Text => {
                println!("theta = {}, J = {}, synthetic = {}", g.theta, g.j_max, g.synthetic);
                for (j, y) in g.y.iter().enumerate() {
                    println!("y_{j} = {y:e}");
                }
            }
        }
    }

    pub fn tv(&self, x: u64, sets: &[PrimeClassSet], tv: f64) {
        #[derive(Serialize)]
        struct Tv<'a> {
            x: u64,
            sets: &'a [PrimeClassSet],
            tv: f64,
        }
        match self.format {
            Format::Json => self.json("tv", Tv { x, sets, tv }),
            Format::Csv => {
                let desc: Vec<String> = sets.iter().map(|s| format!("{}:{}", s.lo, s.hi)).collect();
                println!("x,sets,tv\n{x},{},{tv}", desc.join(" "));
            }
            Format::Text => {
                for s in sets {
                    println!("{}: {} primes in ({}, {}], H1 = {:.6}", s.label, s.len(), s.lo, s.hi, s.h1::<f64>());
                }
                println!("tv = {tv}");
            }
        }
    }

    /// The table is CSV whatever the format flag says, except for JSON.
    pub fn table(&self, records: &[ScanRecord]) {
        #[derive(Serialize)]
        struct Row {
            m: u64,
            squarefree: bool,
            omega: usize,
            omega3: usize,
            best_size: Option<usize>,
            exact: Option<bool>,
            squarefree_bound: Option<f64>,
            best_analytic_bound: f64,
            error: Option<String>,
        }
        let rows: Vec<Row> = records
            .iter()
            .map(|rec| {
                let m = rec.m();
                let f = factorize(m);
                let report = sqavoid::bound_report::<f64>(&f);
                Row {
                    m,
                    squarefree: f.is_squarefree(),
                    omega: f.omega(),
                    omega3: f.omega3(),
                    best_size: rec.result().map(|r| r.best_size),
                    exact: rec.result().map(|r| r.exact),
                    squarefree_bound: sqavoid::bounds::squarefree_bound::<f64>(&f),
                    best_analytic_bound: report.best,
                    error: match rec {
                        ScanRecord::Failed { error, .. } => Some(error.clone()),
                        ScanRecord::Done(_) => None,
                    },
                }
            })
            .collect();
        if self.format == Format::Json {
            return self.json("table", rows);
        }
        println!("m,squarefree,omega,omega3,best_size,exact,squarefree_bound,best_analytic_bound");
        for r in rows {
            let best = r.best_size.map_or(String::new(), |b| b.to_string());
            let exact = match (r.exact, &r.error) {
                (Some(e), _) => e.to_string(),
                (None, _) => "failed".to_string(),
            };
            let sf = r.squarefree_bound.map_or(String::new(), |v| v.to_string());
            println!(
                "{},{},{},{},{best},{exact},{sf},{}",
                r.m, r.squarefree, r.omega, r.omega3, r.best_analytic_bound
            );
        }
    }
}
