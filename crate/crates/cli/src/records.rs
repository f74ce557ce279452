//! Output schema. Every JSON output is a stream of one-line objects tagged by
//! `kind`; the first line is always the `config` record.

use census::ReportRow;
use densities::{CaseDensityTable, ExactRational, GlobalConstant, Interval, McEstimate, PrimeProduct, RealDensity};
use pv_inequality::InequalityInstance;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Tsv,
    Json,
}

/// Everything that determines a run's output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub p: Option<u64>,
    pub q: Option<u32>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub max_depth: Option<u32>,
    pub precision: Option<u32>,
    pub p_max: Option<u64>,
    pub selector: Option<String>,
    /// `k_max, n_max, d_max` for the inequality scan
    pub bounds: Option<[u32; 3]>,
    pub format: Format,
    pub out: Option<String>,
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideRecord {
    pub form: Vec<String>,
    pub p: u64,
    /// `soluble`, `insoluble` or `undetermined`
    pub verdict: String,
    pub reason: Option<String>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElsRecord {
    pub form: Vec<String>,
    /// `els`, `not_els` or `undetermined`
    pub verdict: String,
    /// failing or undecided place: `inf` or a prime
    pub place: Option<String>,
    pub discriminant: String,
    pub primes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub forms: u64,
    pub malformed: u64,
    /// discriminant zero (els) or all-zero forms (decide)
    pub degenerate: u64,
    pub positive: u64,
    pub negative: u64,
    pub undetermined: u64,
    /// positive / (positive + negative + undetermined)
    pub rate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub line: Option<u64>,
    pub input: Option<String>,
    pub error: String,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoRecord {
    pub p: u64,
    pub closed: ExactRational,
    pub assembled: ExactRational,
    pub equal: bool,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McRecord {
    pub p: u64,
    pub selector: Option<String>,
    pub mc: McEstimate,
    /// closed-form value when one is known
    pub exact: Option<ExactRational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductRecord {
    pub product: PrimeProduct,
    pub full: Interval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub q: u32,
    pub total: u64,
    pub mismatches: u64,
    pub rows: Vec<ReportRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub checked: u64,
    pub violations: Vec<InequalityInstance>,
    pub excluded_failures: Vec<InequalityInstance>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Config(RunConfig),
    Decide(DecideRecord),
    Els(ElsRecord),
    Summary(BatchSummary),
    Error(ErrorRecord),
    Rho(RhoRecord),
    Table(Box<CaseDensityTable>),
    Mc(McRecord),
    Product(ProductRecord),
    Real(RealDensity),
    Global(Box<GlobalConstant>),
    Census(CensusRecord),
    Scan(ScanRecord),
}
