//! The `zdkit` command line.
//!
//! [`run`] parses arguments, executes one subcommand and renders a [`RunReport`] as text or
//! JSON. Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Element, Ring, RingDescriptor, DEFAULT_MAX_ORDER};
use crate::codes::{self, Code};
use crate::construct::{self, ChangePointResult};
use crate::dss;
use crate::error::{Error, Result};
use crate::exact;
use crate::fhs::{self, Fhs};
use crate::io::{self, CodeDocument, DssDocument};
use crate::reproduce::{self, format_cwc, format_multiset, format_set, format_zd, Row, Status, Target};
use crate::zd::{self, FunctionTable};

#[derive(Debug, Parser)]
#[command(name = "zdkit", version, about = "Zero-difference functions, change points, and the codes, DSSs and FHSs they give")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest ring order accepted.
    #[arg(long, env = "ZDKIT_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER, global = true)]
    pub max_order: usize,
    /// Directory holding the published artifacts and imported tables.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Cosets of an order-`e` unit subgroup of `Z_n`.
    Zn,
    /// Cosets of an order-`e` unit subgroup of a product of finite fields.
    ProductFields,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Code,
    Dss,
    Fhs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a coset ZDB function.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Modulus for `zn`.
        #[arg(long, required_if_eq("family", "zn"))]
        n: Option<usize>,
        /// Field orders for `product-fields`, e.g. `3^2,5`.
        #[arg(long, required_if_eq("family", "product-fields"))]
        factors: Option<String>,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Move one point of a Type-A ZDB function into another class.
    ChangePoint {
        #[arg(long = "in")]
        input: PathBuf,
        /// Point to move; defaults to the singleton class.
        #[arg(long)]
        a0: Option<usize>,
        /// Point whose class receives `a0`; defaults to index 1, or the first index outside
        /// the class of `a0`.
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zero-difference spectrum, classification and counting identities.
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Cyclic-shift code of a table with its CCC/CWC certificates.
    Code {
        #[arg(long = "in")]
        input: PathBuf,
        /// Label used as the zero symbol.
        #[arg(long)]
        zero_label: Option<usize>,
        /// Include the codewords in the report.
        #[arg(long)]
        emit: bool,
    },
    /// Partition DSS of a table with its optimality certificate.
    Dss {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Frequency-hopping sequence of a table on a cyclic group.
    Fhs {
        #[arg(long = "in")]
        input: PathBuf,
        /// Generator index; defaults to the smallest generator.
        #[arg(long)]
        alpha: Option<usize>,
    },
    /// Exhaustively check external data.
    Verify {
        #[arg(long, value_enum)]
        kind: VerifyKind,
        #[arg(long = "in")]
        input: PathBuf,
        /// Alphabet size for text codes.
        #[arg(long)]
        q: Option<usize>,
    },
    /// Rewrite a table in canonical form.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Read a table with arbitrary labels, or a sequence over `Z_n`.
    Import {
        #[arg(long = "in")]
        input: PathBuf,
        /// Input is a comma-separated sequence indexed by `Z_n`.
        #[arg(long)]
        sequence: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild published examples and table rows.
    Reproduce {
        #[arg(long, value_enum, default_value_t = Target::All)]
        target: Target,
        #[arg(long, default_value_t = 64)]
        n_limit: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RunReport {
    fn input(&mut self, key: &str, value: impl Serialize) {
        self.inputs.insert(key.into(), json!(value));
    }

    fn result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.into(), json!(value));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.inputs {
            out += &format!("input.{k}: {}\n", plain(v));
        }
        for (k, v) in &self.results {
            out += &format!("{k}: {}\n", plain(v));
        }
        for row in &self.rows {
            out += &format!("{:<11} {}\n    claimed:  {}\n", row.status.as_str(), row.id, row.claimed);
            if !row.computed.is_empty() {
                out += &format!("    computed: {}\n", row.computed);
            }
            if !row.note.is_empty() {
                out += &format!("    note:     {}\n", row.note);
            }
        }
        for note in &self.notes {
            out += &format!("note: {note}\n");
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Exit code and rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let command = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match execute(&cli, command) {
        Ok(report) => Outcome {
            code: 0,
            stdout: match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn execute(cli: &Cli, command: String) -> Result<RunReport> {
    let mut report = RunReport {
        command,
        ..RunReport::default()
    };
    let max = cli.max_order;
    match &cli.command {
        Command::Construct { family, n, factors, e, out } => {
            report.input("e", e);
            let base = match family {
                Family::Zn => {
                    let n = n.ok_or_else(|| Error::InvalidParameter("--n is required".into()))?;
                    report.input("family", "zn");
                    report.input("n", n);
                    construct::family_zn(n, *e, max)?
                }
                Family::ProductFields => {
                    let text = factors.as_deref().ok_or_else(|| Error::InvalidParameter("--factors is required".into()))?;
                    let parsed = parse_factors(text)?;
                    report.input("family", "product-fields");
                    report.input("factors", text);
                    construct::family_product_fields(&parsed, *e, max)?
                }
            };
            report.result("group", base.table.ring().descriptor().to_string());
            report.result("subgroup_generators", base.subgroup.generators().iter().map(|g| g.index()).collect::<Vec<_>>());
            report.result("k", base.k());
            describe_table(&mut report, &base.table)?;
            write_table(&mut report, out.as_deref(), &base.table)?;
        }
        Command::ChangePoint { input, a0, a, out } => {
            report.input("in", input);
            let f = io::read_table(input, max)?;
            let a0 = match a0 {
                Some(i) => f.ring().element(*i)?,
                None => construct::singleton_point(&f).unwrap_or(Element::ZERO),
            };
            let a = match a {
                Some(i) => f.ring().element(*i)?,
                None => default_partner(&f, a0),
            };
            let cp = construct::change_point_general(&f, a0, a)?;
            describe_change_point(&mut report, &cp);
            describe_table(&mut report, &cp.table)?;
            write_table(&mut report, out.as_deref(), &cp.table)?;
        }
        Command::Spectrum { input } => {
            report.input("in", input);
            let f = io::read_table(input, max)?;
            describe_table(&mut report, &f)?;
            let s = zd::zd_spectrum(&f)?;
            let id = zd::check_identities(&s, &zd::preimage_stats(&f))?;
            report.result("balance_constant", exact::format_ratio(&id.balance_constant));
            report.result("max_lower_bound", id.max_lower_bound);
            report.result("identities", "all hold");
            report.result("lambda_by_index", &s.counts);
        }
        Command::Code { input, zero_label, emit } => {
            report.input("in", input);
            let mut f = io::read_table(input, max)?;
            if let Some(l) = zero_label {
                report.input("zero_label", l);
                f = f.with_zero_label(*l)?;
            }
            let code = codes::build_code(&f)?;
            describe_code(&mut report, &code, *emit);
            let s = zd::zd_spectrum(&f)?;
            let stats = zd::preimage_stats(&f);
            if code.d != f.n() - s.max {
                return Err(Error::Internal(format!("d = {} differs from n - λ = {}", code.d, f.n() - s.max)));
            }
            report.result("zd_parameters", format_zd(f.n(), f.m(), &s.values));
            report.result("zd_cwc_condition", codes::zd_cwc_optimality(f.n(), f.m(), s.max, stats.b0));
        }
        Command::Dss { input } => {
            report.input("in", input);
            let f = io::read_table(input, max)?;
            let s = zd::zd_spectrum(&f)?;
            let c = zd::classify(&s, &zd::preimage_stats(&f));
            let d = dss::build_dss(&f);
            let k = c.type_a.filter(|&k| c.zdb && s.max + 1 == k);
            let cert = dss::dss_certify(f.n(), f.m(), s.max, k)?;
            if d.rho != cert.rho {
                return Err(Error::Internal(format!("ρ = {} differs from n - λ = {}", d.rho, cert.rho)));
            }
            report.result("parameters", format!("({}, {}, {})", d.n(), format_multiset(&d.weights()), d.rho));
            report.result("zd_parameters", format_zd(f.n(), f.m(), &s.values));
            report.result("rho", d.rho);
            report.result("tau", d.tau());
            report.result("perfect", d.perfect);
            report.result("certificate", &cert);
            report.result("optimal", cert.optimal());
        }
        Command::Fhs { input, alpha } => {
            report.input("in", input);
            let f = io::read_table(input, max)?;
            let alpha = alpha.map(Element::new);
            let s = fhs::build_fhs(&f, alpha)?;
            let spec = zd::zd_spectrum(&f)?;
            let ab = zd::almost_balanced(&zd::preimage_stats(&f));
            let cert = fhs::fhs_certify(s.h_max, spec.mean, s.n(), s.m, ab)?;
            report.result("alpha", alpha.map_or(fhs::default_generator(&f)?.index(), |a| a.index()));
            describe_fhs(&mut report, &s);
            report.result("certificate", &cert);
            report.result("optimal", cert.optimal);
        }
        Command::Verify { kind, input, q } => {
            report.input("in", input);
            report.input("kind", format!("{kind:?}").to_lowercase());
            match kind {
                VerifyKind::Code => {
                    let doc = if is_json(input) {
                        io::read_json::<CodeDocument>(input)?
                    } else {
                        io::parse_code_text(&std::fs::read_to_string(input)?, *q)?
                    };
                    let code = codes::verify_code(doc.words, doc.q)?;
                    describe_code(&mut report, &code, false);
                }
                VerifyKind::Dss => {
                    let doc: DssDocument = io::read_json(input)?;
                    let ring = Arc::new(Ring::with_max_order(&doc.group, max)?);
                    let d = dss::verify_dss(ring, doc.elements())?;
                    let bound = dss::dss_bound(d.n(), d.q(), d.rho)?;
                    report.result("parameters", format!("({}, {}, {})", d.n(), format_multiset(&d.weights()), d.rho));
                    report.result("tau", d.tau());
                    report.result("perfect", d.perfect);
                    report.result("bound", bound);
                    report.result("optimal", bound == d.tau() as u128);
                }
                VerifyKind::Fhs => {
                    let seq = io::parse_sequence_text(&std::fs::read_to_string(input)?)?;
                    let s = fhs::analyze_sequence(&seq)?;
                    let cert = fhs::fhs_certify(s.h_max, s.c, s.n(), s.m, false)?;
                    describe_fhs(&mut report, &s);
                    report.result("optimal", cert.optimal);
                }
            }
        }
        Command::Export { input, out } => {
            report.input("in", input);
            let f = io::read_table(input, max)?.normalized();
            describe_table(&mut report, &f)?;
            write_table(&mut report, Some(out), &f)?;
        }
        Command::Import { input, sequence, out } => {
            report.input("in", input);
            let f = if *sequence {
                let text = std::fs::read_to_string(input)?;
                let labels: Vec<String> = text
                    .trim()
                    .trim_start_matches('{')
                    .trim_end_matches('}')
                    .split(',')
                    .map(|t| t.trim().to_string())
                    .filter(|t| !t.is_empty())
                    .collect();
                let ring = Arc::new(Ring::with_max_order(&RingDescriptor::zn(labels.len()), max)?);
                FunctionTable::from_labels(ring, &labels)?
            } else {
                let doc: LooseTable = io::read_json(input)?;
                let ring = Arc::new(Ring::with_max_order(&doc.group, max)?);
                let labels: Vec<String> = doc.values.iter().map(Value::to_string).collect();
                FunctionTable::from_labels(ring, &labels)?
            };
            describe_table(&mut report, &f)?;
            write_table(&mut report, out.as_deref(), &f)?;
        }
        Command::Reproduce { target, n_limit } => {
            report.input("target", target);
            report.input("n_limit", n_limit);
            let ctx = reproduce::Context {
                max_order: max,
                fixtures: cli.fixtures.clone().unwrap_or_else(reproduce::default_fixtures),
                n_limit: *n_limit,
            };
            report.rows = reproduce::reproduce(*target, &ctx);
            for status in [Status::Pass, Status::Fail, Status::Skip, Status::Discrepancy] {
                let count = report.rows.iter().filter(|r| r.status == status).count();
                report.result(&status.as_str().to_lowercase(), count);
            }
        }
    }
    Ok(report)
}

/// A table document whose labels may be any JSON values.
#[derive(Debug, Deserialize)]
struct LooseTable {
    group: RingDescriptor,
    values: Vec<Value>,
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

/// `3^2,5` -> `[(3, 2), (5, 1)]`.
pub fn parse_factors(text: &str) -> Result<Vec<(u64, u32)>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || Error::InvalidParameter(format!("field order {t:?} is not of the form p or p^r"));
            let (p, r) = match t.split_once('^') {
                Some((p, r)) => (p.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?),
                None => (t.parse().map_err(|_| bad())?, 1),
            };
            Ok((p, r))
        })
        .collect()
}

fn default_partner(f: &FunctionTable, a0: Element) -> Element {
    let block = f.value(a0);
    let one = Element::new(1);
    if f.n() > 1 && f.value(one) != block {
        return one;
    }
    f.ring()
        .elements()
        .find(|&x| f.value(x) != block)
        .unwrap_or(one)
}

fn class_name(c: &zd::Classification) -> String {
    match (c.type_a, c.type_b) {
        (Some(e), _) => format!("Type-A (e = {e})"),
        (None, Some(e)) => format!("Type-B (e = {e})"),
        _ => "neither".into(),
    }
}

fn describe_table(report: &mut RunReport, f: &FunctionTable) -> Result<()> {
    let s = zd::zd_spectrum(f)?;
    let stats = zd::preimage_stats(f);
    let c = zd::classify(&s, &stats);
    report.result("parameters", format_zd(f.n(), f.m(), &s.values));
    report.result("n", f.n());
    report.result("m", f.m());
    report.result("spectrum", format_set(&s.values));
    report.result("lambda_max", s.max);
    report.result("lambda_min", s.min);
    report.result("lambda_mean", exact::format_ratio(&s.mean));
    report.result("zdb", c.zdb);
    report.result("type", class_name(&c));
    report.result("almost_balanced", c.almost_balanced);
    report.result("blocks", format_multiset(&stats.sizes));
    Ok(())
}

fn describe_change_point(report: &mut RunReport, cp: &ChangePointResult) {
    report.result("a0", cp.a0.index());
    report.result("a", cp.a.index());
    report.result("k", cp.k);
    report.result("overlap_size", cp.overlap.len());
    report.result("case", cp.case);
    report.result("predicted_spectrum", format_set(&cp.predicted));
}

fn describe_code(report: &mut RunReport, code: &Code, emit: bool) {
    report.result("code", format_cwc(code));
    report.result("size", code.size());
    report.result("d", code.d);
    report.result("q", code.q);
    if let Some(w) = code.constant_weight() {
        let cert = codes::cwc_certify(code.n, code.d, w, code.q, code.size());
        report.result("cwc_bound", &cert);
        report.result("cwc_optimal", cert.optimal);
    }
    if let Some(comp) = code.constant_composition() {
        let cert = codes::ccc_certify(code.n, code.d, comp, code.size());
        report.result("composition", comp);
        report.result("ccc_bound", &cert);
        report.result("ccc_optimal", cert.optimal);
    }
    if emit {
        report.result("words", code.render());
    }
}

fn describe_fhs(report: &mut RunReport, s: &Fhs) {
    report.result("parameters", format!("({}, {}, {})", s.n(), s.m, s.h_max));
    report.result("h_max", s.h_max);
    report.result("c", exact::format_ratio(&s.c));
    report.result("lg_bound", s.lg_bound);
}

fn write_table(report: &mut RunReport, out: Option<&Path>, f: &FunctionTable) -> Result<()> {
    if let Some(path) = out {
        io::write_json(path, &io::export_table(f))?;
        report.result("written", path);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_lists() {
        assert_eq!(parse_factors("3^2, 5").unwrap(), vec![(3, 2), (5, 1)]);
        assert!(parse_factors("3^x").is_err());
    }

    #[test]
    fn usage_and_domain_exit_codes() {
        assert_eq!(run(["zdkit", "construct", "--family", "zn", "--n", "15", "--e", "4"]).code, 1);
        assert_eq!(run(["zdkit", "construct", "--family", "zn", "--e", "4"]).code, 2);
        assert_eq!(run(["zdkit", "frobnicate"]).code, 2);
        assert_eq!(run(["zdkit", "--help"]).code, 0);
    }

    #[test]
    fn construct_report() {
        let out = run(["zdkit", "--format", "json", "construct", "--family", "zn", "--n", "11", "--e", "5"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["results"]["parameters"], "(11, 3, 4)");
        assert_eq!(v["results"]["type"], "Type-A (e = 5)");
        assert_eq!(v["results"]["blocks"], "[5^2, 1]");
    }
}
