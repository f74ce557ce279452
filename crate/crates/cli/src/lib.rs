//! Command-line front end. Each subcommand writes a run-configuration header
//! followed by its records, as TSV or as one JSON object per line.

pub mod records;

use std::io::{BufRead, Write};
use std::str::FromStr;

use biform_core::IntForm;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use qp_solver::{els_decide, ElsVerdict, PadicForm, Place, QpError, Reason, Verdict, DEFAULT_MAX_DEPTH};
use serde_json::Value;
use thiserror::Error;

pub use records::*;

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_PMAX: u64 = 100_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed form: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error(transparent)]
    Density(#[from] densities::DensityError),
    #[error(transparent)]
    Census(#[from] census::CensusError),
    #[error(transparent)]
    Inequality(#[from] pv_inequality::InequalityError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Qp(QpError::SingularDiscriminantZero | QpError::AllZero) => EXIT_DEGENERATE,
            CliError::Io(_) => EXIT_IO,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Parser, Debug, Clone)]
#[command(name = "biform", version, about = "Local solubility experiments for (2,2)-forms")]
pub struct Cli {
    /// Emit one JSON object per line instead of TSV
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel commands (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FormInput {
    /// Nine integers a00 a01 a02 a10 .. a22; omit to read one form per line
    #[arg(allow_negative_numbers = true, num_args = 0..)]
    pub form: Vec<String>,
    /// Batch input file; `-` or omitted means stdin
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    pub depth: u32,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Decide solubility over Q_p
    Decide {
        #[arg(long)]
        p: u64,
        /// Treat coefficients as known only modulo p^precision
        #[arg(long)]
        precision: Option<u32>,
        #[command(flatten)]
        input: FormInput,
    },
    /// Decide everywhere-local solubility
    Els {
        #[command(flatten)]
        input: FormInput,
    },
    /// Closed form and assembled local density at p
    Rho {
        #[arg(long)]
        p: u64,
    },
    /// Full table of case densities at p
    Table {
        #[arg(long)]
        p: u64,
    },
    /// Monte Carlo estimate of the density, or of a conditional class
    Mc {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Case1i, Case1iii, Case3, Case4, Case5, Half-S, Half-T or LineCondition
        #[arg(long)]
        case: Option<String>,
    },
    /// Enclosure of the product of local densities over primes
    Product {
        #[arg(long, default_value_t = DEFAULT_PMAX)]
        pmax: u64,
    },
    /// Monte Carlo density of real solubility
    Real {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Product over all places, real factor by sampling
    Global {
        #[arg(long, default_value_t = DEFAULT_PMAX)]
        pmax: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive census of forms over F_q
    Census {
        #[arg(long)]
        q: u32,
    },
    /// Exhaustive scan of the binomial inequality
    Scan {
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let mut c = RunConfig {
            command: String::new(),
            p: None,
            q: None,
            samples: None,
            seed: 0,
            max_depth: None,
            precision: None,
            p_max: None,
            selector: None,
            bounds: None,
            format: if self.json { Format::Json } else { Format::Tsv },
            out: self.out.clone(),
            threads: self.threads,
        };
        let name = match &self.command {
            Command::Decide { p, precision, input } => {
                (c.p, c.precision, c.max_depth) = (Some(*p), *precision, Some(input.depth));
                "decide"
            }
            Command::Els { input } => {
                c.max_depth = Some(input.depth);
                "els"
            }
            Command::Rho { p } => {
                c.p = Some(*p);
                "rho"
            }
            Command::Table { p } => {
                c.p = Some(*p);
                "table"
            }
            Command::Mc { p, samples, seed, case } => {
                (c.p, c.samples, c.seed, c.selector) = (Some(*p), Some(*samples), *seed, case.clone());
                c.max_depth = Some(DEFAULT_MAX_DEPTH);
                "mc"
            }
            Command::Product { pmax } => {
                c.p_max = Some(*pmax);
                "product"
            }
            Command::Real { samples, seed } => {
                (c.samples, c.seed) = (Some(*samples), *seed);
                "real"
            }
            Command::Global { pmax, samples, seed } => {
                (c.p_max, c.samples, c.seed) = (Some(*pmax), Some(*samples), *seed);
                "global"
            }
            Command::Census { q } => {
                c.q = Some(*q);
                "census"
            }
            Command::Scan { kmax, nmax, dmax } => {
                c.bounds = Some([*kmax, *nmax, *dmax]);
                "scan"
            }
        };
        c.command = name.to_string();
        c
    }
}

/// Parses nine whitespace-separated integers.
pub fn parse_form(s: &str) -> Result<IntForm, CliError> {
    let coeffs: Vec<BigInt> = s
        .split_whitespace()
        .map(|t| BigInt::from_str(t).map_err(|_| CliError::Parse(format!("not an integer: {t:?}"))))
        .collect::<Result<_, _>>()?;
    if coeffs.len() != 9 {
        return Err(CliError::Parse(format!("expected 9 integers, got {}", coeffs.len())));
    }
    Ok(IntForm::from_row_major(&coeffs))
}

fn form_strings(f: &IntForm) -> Vec<String> {
    f.to_row_major().iter().map(BigInt::to_string).collect()
}

fn reason_name(r: Reason) -> String {
    match r {
        Reason::Precision => "precision".into(),
        Reason::Depth => "depth".into(),
    }
}

pub fn decide_record(f: &IntForm, p: u64, precision: Option<u32>, depth: u32) -> Result<(DecideRecord, i32), CliError> {
    if !qp_solver::is_prime(p) {
        return Err(QpError::NotPrime(p).into());
    }
    let mut pf = match precision {
        Some(n) => PadicForm::from_residues(p, f, n),
        None => PadicForm::from_integers(p, f),
    };
    let v = qp_solver::decide_qp(&mut pf, depth)?;
    let mut rec = DecideRecord { form: form_strings(f), p, verdict: String::new(), reason: None, witness: None };
    let code = match v {
        Verdict::Soluble(w) => {
            rec.verdict = "soluble".into();
            rec.witness = Some(w.to_string());
            EXIT_POSITIVE
        }
        Verdict::Insoluble => {
            rec.verdict = "insoluble".into();
            EXIT_NEGATIVE
        }
        Verdict::Undetermined(r) => {
            rec.verdict = "undetermined".into();
            rec.reason = Some(reason_name(r));
            EXIT_UNDETERMINED
        }
    };
    Ok((rec, code))
}

pub fn els_record(f: &IntForm, depth: u32) -> Result<(ElsRecord, i32), CliError> {
    let rep = els_decide(f, depth)?;
    let (verdict, place, code) = match rep.verdict {
        ElsVerdict::Els => ("els", None, EXIT_POSITIVE),
        ElsVerdict::NotEls(pl) => ("not_els", Some(pl), EXIT_NEGATIVE),
        ElsVerdict::Undetermined(pl, _) => ("undetermined", Some(pl), EXIT_UNDETERMINED),
    };
    let rec = ElsRecord {
        form: form_strings(f),
        verdict: verdict.into(),
        place: place.as_ref().map(Place::to_string),
        discriminant: rep.discriminant.to_string(),
        primes: rep.primes.iter().map(BigInt::to_string).collect(),
    };
    Ok((rec, code))
}

/// Writes records in the chosen format.
pub struct Emitter<'a> {
    out: &'a mut dyn Write,
    format: Format,
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), "-".into())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn opt(s: &Option<String>) -> &str {
    s.as_deref().unwrap_or("-")
}

impl<'a> Emitter<'a> {
    pub fn new(out: &'a mut dyn Write, format: Format) -> Self {
        Emitter { out, format }
    }

    pub fn emit(&mut self, r: &Record) -> std::io::Result<()> {
        if self.format == Format::Json {
            let line = serde_json::to_string(r).map_err(std::io::Error::other)?;
            return writeln!(self.out, "{line}");
        }
        match r {
            Record::Config(c) => {
                let mut kv = Vec::new();
                flatten("", &serde_json::to_value(c).map_err(std::io::Error::other)?, &mut kv);
                for (k, v) in kv {
                    writeln!(self.out, "#{k}={v}")?;
                }
                Ok(())
            }
            Record::Decide(d) => writeln!(
                self.out,
                "decide\t{}\t{}\t{}\t{}\t{}",
                d.form.join(" "),
                d.p,
                d.verdict,
                opt(&d.reason),
                opt(&d.witness)
            ),
            Record::Els(e) => writeln!(
                self.out,
                "els\t{}\t{}\t{}\t{}\t{}",
                e.form.join(" "),
                e.verdict,
                opt(&e.place),
                e.discriminant,
                if e.primes.is_empty() { "-".to_string() } else { e.primes.join(",") }
            ),
            Record::Error(e) => writeln!(
                self.out,
                "error\t{}\t{}\t{}\t{}",
                e.line.map_or("-".to_string(), |l| l.to_string()),
                opt(&e.input),
                e.error,
                e.exit_code
            ),
            Record::Census(c) => {
                writeln!(self.out, "census\tq\ttype\tsubtype\tcount\texpected\tsmooth")?;
                for row in &c.rows {
                    let smooth = row.smooth.map_or("-".to_string(), |v| v.to_string());
                    writeln!(
                        self.out,
                        "census\t{}\t{}\t{}\t{}\t{}\t{}",
                        row.q, row.kind, row.subtype, row.count, row.expected, smooth
                    )?;
                }
                writeln!(self.out, "census\tmismatches\t{}", c.mismatches)
            }
            Record::Scan(s) => {
                writeln!(self.out, "scan\tchecked\t{}", s.checked)?;
                writeln!(self.out, "kind\tk\tn\td\tr")?;
                for i in &s.violations {
                    writeln!(self.out, "violation\t{i}")?;
                }
                for i in &s.excluded_failures {
                    writeln!(self.out, "excluded\t{i}")?;
                }
                Ok(())
            }
            other => {
                let v = serde_json::to_value(other).map_err(std::io::Error::other)?;
                let kind = v["kind"].as_str().unwrap_or("record").to_string();
                let mut kv = Vec::new();
                flatten("", &v, &mut kv);
                for (k, x) in kv.into_iter().filter(|(k, _)| k != "kind") {
                    writeln!(self.out, "{kind}\t{k}\t{x}")?;
                }
                Ok(())
            }
        }
    }
}

fn error_record(line: Option<u64>, input: Option<String>, e: &CliError) -> Record {
    Record::Error(ErrorRecord { line, input, error: e.to_string(), exit_code: e.exit_code() })
}

type FormJob<'j> = dyn Fn(&IntForm) -> Result<(Record, i32), CliError> + 'j;

fn run_forms(input: &FormInput, stdin: &mut dyn BufRead, em: &mut Emitter, job: &FormJob) -> Result<i32, CliError> {
    if !input.form.is_empty() {
        let text = input.form.join(" ");
        let f = parse_form(&text)?;
        let (rec, code) = job(&f)?;
        em.emit(&rec)?;
        return Ok(code);
    }
    let mut file_reader;
    let reader: &mut dyn BufRead = match input.input.as_deref() {
        None | Some("-") => stdin,
        Some(path) => {
            file_reader = std::io::BufReader::new(std::fs::File::open(path)?);
            &mut file_reader
        }
    };
    let mut sum = BatchSummary::default();
    let mut buf = String::new();
    let mut lineno = 0u64;
    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            break;
        }
        lineno += 1;
        let text = buf.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        sum.forms += 1;
        let outcome = parse_form(text).and_then(|f| job(&f));
        match outcome {
            Ok((rec, code)) => {
                match code {
                    EXIT_POSITIVE => sum.positive += 1,
                    EXIT_NEGATIVE => sum.negative += 1,
                    _ => sum.undetermined += 1,
                }
                em.emit(&rec)?;
            }
            Err(e) => {
                match e.exit_code() {
                    EXIT_DEGENERATE => sum.degenerate += 1,
                    _ => sum.malformed += 1,
                }
                em.emit(&error_record(Some(lineno), Some(text.to_string()), &e))?;
            }
        }
    }
    let decided = sum.positive + sum.negative + sum.undetermined;
    sum.rate = (decided > 0).then(|| sum.positive as f64 / decided as f64);
    let code = if sum.malformed > 0 { EXIT_USAGE } else { EXIT_POSITIVE };
    em.emit(&Record::Summary(sum))?;
    Ok(code)
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead, em: &mut Emitter) -> Result<i32, CliError> {
    use densities::*;
    let rec = match &cli.command {
        Command::Decide { p, precision, input } => {
            let (p, precision, depth) = (*p, *precision, input.depth);
            return run_forms(input, stdin, em, &|f| {
                decide_record(f, p, precision, depth).map(|(r, c)| (Record::Decide(r), c))
            });
        }
        Command::Els { input } => {
            let depth = input.depth;
            return run_forms(input, stdin, em, &|f| els_record(f, depth).map(|(r, c)| (Record::Els(r), c)));
        }
        Command::Rho { p } => {
            let closed = rho_closed(*p)?;
            let assembled = rho_assembled(*p)?;
            Record::Rho(RhoRecord { p: *p, equal: closed == assembled, approx: closed.to_f64(), closed, assembled })
        }
        Command::Table { p } => Record::Table(Box::new(build_case_table(*p)?)),
        Command::Mc { p, samples, seed, case } => match case {
            None => {
                let mc = mc_rho(*p, *samples, *seed)?;
                Record::Mc(McRecord { p: *p, selector: None, mc, exact: Some(rho_closed(*p)?) })
            }
            Some(name) => {
                let sel: Selector = name.parse()?;
                let mc = mc_conditional(*p, sel, *samples, *seed)?;
                Record::Mc(McRecord { p: *p, selector: Some(sel.name().to_string()), mc, exact: None })
            }
        },
        Command::Product { pmax } => {
            let product = prime_product(*pmax)?;
            Record::Product(ProductRecord { full: product.full(), product })
        }
        Command::Real { samples, seed } => Record::Real(mc_real_density(*samples, *seed)?),
        Command::Global { pmax, samples, seed } => Record::Global(Box::new(global_constant(*pmax, *samples, *seed)?)),
        Command::Census { q } => {
            let rep = census::run_census(*q)?;
            let rows = rep.rows();
            let mismatches = rows.iter().filter(|r| !r.matches()).count() as u64;
            let code = if mismatches == 0 { EXIT_POSITIVE } else { EXIT_NEGATIVE };
            em.emit(&Record::Census(CensusRecord { q: *q, total: rep.total, mismatches, rows }))?;
            return Ok(code);
        }
        Command::Scan { kmax, nmax, dmax } => {
            let rep = pv_inequality::scan(*kmax as usize, *nmax, *dmax)?;
            let code = if rep.violations.is_empty() { EXIT_POSITIVE } else { EXIT_NEGATIVE };
            em.emit(&Record::Scan(ScanRecord {
                checked: rep.checked,
                violations: rep.violations,
                excluded_failures: rep.excluded_failures,
            }))?;
            return Ok(code);
        }
    };
    em.emit(&rec)?;
    Ok(EXIT_POSITIVE)
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, stdin: &mut dyn BufRead, out: &mut dyn Write) -> i32 {
    let config = cli.config();
    let mut em = Emitter::new(out, config.format);
    if let Err(e) = em.emit(&Record::Config(config)) {
        eprintln!("biform: {e}");
        return EXIT_IO;
    }
    match execute(cli, stdin, &mut em) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("biform: {e}");
            let code = e.exit_code();
            if em.emit(&error_record(None, None, &e)).is_err() {
                return EXIT_IO;
            }
            code
        }
    }
}
