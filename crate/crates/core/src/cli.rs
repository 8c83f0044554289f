//! Command execution and rendering behind the `vfsig` binary.
//!
//! Every command produces deterministic output: identical inputs give
//! byte-identical bytes in all three formats. Numbers are rendered exactly,
//! integers as decimal strings and rationals as `num/den`; tables add an
//! advisory truncated-decimal column for human reading that carries no
//! additional information.

use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::determinantal::{all_monomial_certificates, verify_minor_ideal, MinorCertificate};
use crate::error::{Error, Result};
use crate::frobenius::{
    decompose_roots, decompose_roots_general, splitting_number, DecompositionMultiset,
    FrobeniusParams,
};
use crate::signature::{
    closed_form_alt, closed_form_limit, closed_forms_agree, convergence_table, surjection_chain,
    SignatureReport,
};
use crate::veronese::VeroneseContext;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;
pub const DEFAULT_MAX_MINORS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

/// Resource guards, validated before any computation starts.
#[derive(Debug, Clone, Copy)]
pub struct Guards {
    /// Cap on brute-force enumerations and on the number of output records
    /// a command may materialize.
    pub max_enum: u64,
    /// Cap on the number of maximal minors expanded by the span check.
    pub max_minors: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_enum: DEFAULT_MAX_ENUM,
            max_minors: DEFAULT_MAX_MINORS,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Command {
    Decompose {
        n: u32,
        d: u32,
        p: u64,
        e: u32,
        source_class: Option<u32>,
    },
    Signature {
        n: u32,
        d: u32,
        p: u64,
        e_max: u32,
    },
    VerifyMinors {
        n: u32,
        r: u32,
        certificates: Option<PathBuf>,
    },
    Chain {
        n: u32,
        d: u32,
    },
    Fsig {
        n: u32,
        d: u32,
        p: u64,
        e: u32,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub guards: Guards,
}

/// Rendered output plus the verification outcome; a false identity is a
/// reportable event, not an error.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub text: String,
    pub verification_failed: bool,
}

#[derive(Serialize)]
struct PaperFlags {
    closed_forms_agree: Option<bool>,
}

#[derive(Serialize)]
struct Envelope<P: Serialize, R: Serialize> {
    schema_version: u32,
    command: &'static str,
    params: P,
    results: R,
    paper_flags: PaperFlags,
}

fn to_json<P: Serialize, R: Serialize>(envelope: &Envelope<P, R>) -> String {
    let mut s = serde_json::to_string_pretty(envelope).expect("serializable");
    s.push('\n');
    s
}

/// Truncated decimal expansion of a rational, for advisory table columns.
pub fn decimal_approx(value: &BigRational, digits: u32) -> String {
    let negative = value.is_negative();
    let abs = value.abs();
    let int_part = abs.to_integer();
    let mut frac = &abs - BigRational::from_integer(int_part.clone());
    let mut s = String::new();
    if negative {
        s.push('-');
    }
    write!(s, "{int_part}.").expect("write to string");
    let ten = BigRational::from_integer(BigInt::from(10));
    for _ in 0..digits {
        frac *= &ten;
        let digit = frac.to_integer();
        write!(s, "{}", digit.to_u8().expect("single digit")).expect("write to string");
        frac -= BigRational::from_integer(digit);
    }
    s
}

fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            if i + 1 < cells.len() {
                for _ in cell.len()..widths[i] {
                    out.push(' ');
                }
            }
        }
        out.push('\n');
    };
    emit(
        &mut out,
        &header.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    );
    for row in rows {
        emit(&mut out, row);
    }
    out
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Execute a command; writes `--out` and certificate files as configured and
/// returns what should go to stdout.
pub fn execute(config: &RunConfig) -> Result<CommandOutput> {
    let output = match &config.command {
        Command::Decompose {
            n,
            d,
            p,
            e,
            source_class,
        } => cmd_decompose(*n, *d, *p, *e, *source_class, config)?,
        Command::Signature { n, d, p, e_max } => cmd_signature(*n, *d, *p, *e_max, config)?,
        Command::VerifyMinors { n, r, certificates } => {
            cmd_verify_minors(*n, *r, certificates.as_deref(), config)?
        }
        Command::Chain { n, d } => cmd_chain(*n, *d, config)?,
        Command::Fsig { n, d, p, e } => cmd_fsig(*n, *d, *p, *e, config)?,
    };
    match &config.out {
        Some(path) => {
            std::fs::write(path, &output.text).map_err(|e| {
                Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(CommandOutput {
                text: String::new(),
                verification_failed: output.verification_failed,
            })
        }
        None => Ok(output),
    }
}

fn check_class_budget(d: u32, guards: &Guards) -> Result<()> {
    if d as u64 > guards.max_enum {
        return Err(Error::GuardExceeded(format!(
            "d = {d} output records exceed the cap {}",
            guards.max_enum
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct DecomposeParams {
    n: u32,
    d: u32,
    p: u64,
    e: u32,
    source_class: u32,
}

#[derive(Serialize)]
struct DecomposeClassRow {
    class: u32,
    multiplicity: String,
}

#[derive(Serialize)]
struct DecomposeResults {
    experimental: bool,
    rank: String,
    total: String,
    classes: Vec<DecomposeClassRow>,
}

fn cmd_decompose(
    n: u32,
    d: u32,
    p: u64,
    e: u32,
    source_class: Option<u32>,
    config: &RunConfig,
) -> Result<CommandOutput> {
    check_class_budget(d, &config.guards)?;
    let ctx = VeroneseContext::new(n, d)?;
    let params = FrobeniusParams::new(ctx, p, e)?;
    let source = match source_class {
        Some(j) => ctx.class(j)?,
        None => ctx.canonical_class(),
    };
    // route p | d to the literal-reading path, marked experimental below
    let decomp: DecompositionMultiset = if (d as u64).is_multiple_of(p) {
        decompose_roots_general(&params, source)?
    } else {
        decompose_roots(&params, source)?
    };

    let header = ["class", "multiplicity"];
    let rows: Vec<Vec<String>> = decomp
        .multiplicities()
        .iter()
        .enumerate()
        .map(|(m, v)| vec![m.to_string(), v.to_string()])
        .collect();
    let text = match config.format {
        OutputFormat::Csv => render_csv(&header, &rows),
        OutputFormat::Table => {
            let mut s = format!(
                "root module decomposition  n={n} d={d} p={p} e={e} source class {}{}\n",
                source.index(),
                if decomp.is_experimental() {
                    "  [EXPERIMENTAL]"
                } else {
                    ""
                }
            );
            s.push_str(&render_table(&header, &rows));
            let _ = writeln!(s, "total {}  rank {}", decomp.total(), params.root_rank());
            s
        }
        OutputFormat::Json => to_json(&Envelope {
            schema_version: SCHEMA_VERSION,
            command: "decompose",
            params: DecomposeParams {
                n,
                d,
                p,
                e,
                source_class: source.index(),
            },
            results: DecomposeResults {
                experimental: decomp.is_experimental(),
                rank: params.root_rank().to_string(),
                total: decomp.total().to_string(),
                classes: decomp
                    .multiplicities()
                    .iter()
                    .enumerate()
                    .map(|(m, v)| DecomposeClassRow {
                        class: m as u32,
                        multiplicity: v.to_string(),
                    })
                    .collect(),
            },
            paper_flags: PaperFlags {
                closed_forms_agree: Some(closed_forms_agree(&ctx)),
            },
        }),
    };
    Ok(CommandOutput {
        text,
        verification_failed: false,
    })
}

#[derive(Serialize)]
struct SignatureParams {
    n: u32,
    d: u32,
    p: u64,
    e_max: u32,
}

#[derive(Serialize)]
struct SignatureRow {
    e: u32,
    rank: String,
    upper: String,
    lower: String,
    upper_normalized: String,
    lower_normalized: String,
    gap_normalized: String,
}

#[derive(Serialize)]
struct SignatureResults {
    canonical_class: u32,
    closed_form_limit: String,
    closed_form_alt: String,
    closed_forms_agree: bool,
    rows: Vec<SignatureRow>,
}

fn signature_rows(reports: &[SignatureReport]) -> Vec<SignatureRow> {
    reports
        .iter()
        .map(|r| SignatureRow {
            e: r.exponent,
            rank: r.rank.to_string(),
            upper: r.upper_bound.to_string(),
            lower: r.lower_bound.to_string(),
            upper_normalized: r.upper_normalized.to_string(),
            lower_normalized: r.lower_normalized.to_string(),
            gap_normalized: r.gap_normalized.to_string(),
        })
        .collect()
}

fn cmd_signature(n: u32, d: u32, p: u64, e_max: u32, config: &RunConfig) -> Result<CommandOutput> {
    check_class_budget(d, &config.guards)?;
    let ctx = VeroneseContext::new(n, d)?;
    let reports = convergence_table(&ctx, p, e_max)?;
    let limit_form = closed_form_limit(&ctx);
    let alt_form = closed_form_alt(&ctx);
    let agree = limit_form == alt_form;
    let k = ctx.canonical_class().index();

    let json_rows = signature_rows(&reports);
    let text = match config.format {
        OutputFormat::Csv => {
            let header = [
                "e",
                "rank",
                "upper",
                "lower",
                "upper_normalized",
                "lower_normalized",
                "gap_normalized",
                "closed_form_limit",
                "closed_form_alt",
                "closed_forms_agree",
            ];
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.exponent.to_string(),
                        r.rank.to_string(),
                        r.upper_bound.to_string(),
                        r.lower_bound.to_string(),
                        r.upper_normalized.to_string(),
                        r.lower_normalized.to_string(),
                        r.gap_normalized.to_string(),
                        r.closed_form_limit.to_string(),
                        r.closed_form_alt.to_string(),
                        r.closed_forms_agree.to_string(),
                    ]
                })
                .collect();
            render_csv(&header, &rows)
        }
        OutputFormat::Table => {
            let mut s =
                format!("dual F-signature bounds  n={n} d={d} p={p}  canonical class {k}\n");
            let _ = writeln!(
                s,
                "closed form ceil(n/d)/n = {}  [~{}]",
                limit_form,
                decimal_approx(&limit_form, 9)
            );
            let _ = writeln!(
                s,
                "closed form ceil(d/n)/d = {}  [~{}]",
                alt_form,
                decimal_approx(&alt_form, 9)
            );
            let _ = writeln!(s, "closed forms agree: {agree}");
            let header = [
                "e",
                "rank",
                "upper",
                "lower",
                "upper/rank",
                "lower/rank",
                "gap",
                "~upper/rank",
            ];
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.exponent.to_string(),
                        r.rank.to_string(),
                        r.upper_bound.to_string(),
                        r.lower_bound.to_string(),
                        r.upper_normalized.to_string(),
                        r.lower_normalized.to_string(),
                        r.gap_normalized.to_string(),
                        decimal_approx(&r.upper_normalized, 9),
                    ]
                })
                .collect();
            s.push_str(&render_table(&header, &rows));
            s
        }
        OutputFormat::Json => to_json(&Envelope {
            schema_version: SCHEMA_VERSION,
            command: "signature",
            params: SignatureParams { n, d, p, e_max },
            results: SignatureResults {
                canonical_class: k,
                closed_form_limit: limit_form.to_string(),
                closed_form_alt: alt_form.to_string(),
                closed_forms_agree: agree,
                rows: json_rows,
            },
            paper_flags: PaperFlags {
                closed_forms_agree: Some(agree),
            },
        }),
    };
    Ok(CommandOutput {
        text,
        verification_failed: false,
    })
}

#[derive(Serialize)]
struct VerifyParams {
    n: u32,
    r: u32,
}

#[derive(Serialize)]
struct CertificateSummary {
    count: u64,
    all_verified: bool,
    path: String,
}

#[derive(Serialize)]
struct VerifyResults {
    holds: bool,
    rank_found: u64,
    expected_rank: u64,
    minor_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<CertificateSummary>,
}

#[derive(Serialize)]
struct CertificateTermDump {
    coefficient: String,
    alpha: Vec<u32>,
    columns: Vec<usize>,
}

#[derive(Serialize)]
struct CertificateDump {
    target: String,
    target_exponents: Vec<u32>,
    target_sign: i8,
    verified: bool,
    terms: Vec<CertificateTermDump>,
}

#[derive(Serialize)]
struct CertificateFile {
    schema_version: u32,
    command: &'static str,
    params: VerifyParams,
    certificates: Vec<CertificateDump>,
}

fn dump_certificates(
    n: u32,
    r: u32,
    certs: &[MinorCertificate],
    path: &std::path::Path,
) -> Result<bool> {
    let mut dumps = Vec::with_capacity(certs.len());
    let mut all_verified = true;
    for c in certs {
        let verified = c.verify()?;
        all_verified &= verified;
        dumps.push(CertificateDump {
            target: c.target().to_string(),
            target_exponents: c.target().exponents().to_vec(),
            target_sign: c.target_sign(),
            verified,
            terms: c
                .terms()
                .iter()
                .map(|(coeff, sel)| CertificateTermDump {
                    coefficient: coeff.to_string(),
                    alpha: sel.alpha().to_vec(),
                    columns: sel.columns().to_vec(),
                })
                .collect(),
        });
    }
    let file = CertificateFile {
        schema_version: SCHEMA_VERSION,
        command: "verify-minors",
        params: VerifyParams { n, r },
        certificates: dumps,
    };
    let mut body = serde_json::to_string_pretty(&file).expect("serializable");
    body.push('\n');
    std::fs::write(path, body)
        .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))?;
    Ok(all_verified)
}

fn cmd_verify_minors(
    n: u32,
    r: u32,
    certificates: Option<&std::path::Path>,
    config: &RunConfig,
) -> Result<CommandOutput> {
    let verdict = verify_minor_ideal(n, r, config.guards.max_minors)?;

    let cert_summary = match certificates {
        Some(path) => {
            let count = crate::exactalg::binomial((n + r - 1) as u64, r as i64);
            if count > BigInt::from(config.guards.max_enum) {
                return Err(Error::GuardExceeded(format!(
                    "{count} certificate targets exceed the cap {}",
                    config.guards.max_enum
                )));
            }
            let certs = all_monomial_certificates(n, r)?;
            let all_verified = dump_certificates(n, r, &certs, path)?;
            Some(CertificateSummary {
                count: certs.len() as u64,
                all_verified,
                path: path.display().to_string(),
            })
        }
        None => None,
    };

    let failed = !verdict.holds
        || cert_summary
            .as_ref()
            .map(|c| !c.all_verified)
            .unwrap_or(false);

    let header = [
        "n",
        "r",
        "holds",
        "rank_found",
        "expected_rank",
        "minor_count",
    ];
    let row = vec![
        n.to_string(),
        r.to_string(),
        verdict.holds.to_string(),
        verdict.rank_found.to_string(),
        verdict.expected_rank.to_string(),
        verdict.minor_count.to_string(),
    ];
    let text = match config.format {
        OutputFormat::Csv => render_csv(&header, &[row]),
        OutputFormat::Table => {
            let mut s = format!(
                "minor ideal span check  n={n} r={r}: {}  (rank {}/{})\n",
                if verdict.holds { "holds" } else { "FAILED" },
                verdict.rank_found,
                verdict.expected_rank
            );
            if let Some(cs) = &cert_summary {
                let _ = writeln!(
                    s,
                    "certificates: {} targets, all verified: {}, written to {}",
                    cs.count, cs.all_verified, cs.path
                );
            }
            s
        }
        OutputFormat::Json => to_json(&Envelope {
            schema_version: SCHEMA_VERSION,
            command: "verify-minors",
            params: VerifyParams { n, r },
            results: VerifyResults {
                holds: verdict.holds,
                rank_found: verdict.rank_found,
                expected_rank: verdict.expected_rank,
                minor_count: verdict.minor_count,
                certificates: cert_summary,
            },
            paper_flags: PaperFlags {
                closed_forms_agree: None,
            },
        }),
    };
    Ok(CommandOutput {
        text,
        verification_failed: failed,
    })
}

#[derive(Serialize)]
struct ChainParams {
    n: u32,
    d: u32,
}

#[derive(Serialize)]
struct ChainRow {
    class: u32,
    source_copies: String,
    target_copies: String,
    ratio: String,
}

#[derive(Serialize)]
struct ChainResults {
    canonical_class: u32,
    records: Vec<ChainRow>,
}

fn cmd_chain(n: u32, d: u32, config: &RunConfig) -> Result<CommandOutput> {
    check_class_budget(d, &config.guards)?;
    let ctx = VeroneseContext::new(n, d)?;
    let chain = surjection_chain(&ctx);
    let k = chain.canonical_class().index();

    let json_rows: Vec<ChainRow> = chain
        .records()
        .iter()
        .map(|rec| ChainRow {
            class: rec.class_index,
            source_copies: rec.source_copies.to_string(),
            target_copies: rec.target_copies.to_string(),
            ratio: BigRational::new(rec.target_copies.clone(), rec.source_copies.clone())
                .to_string(),
        })
        .collect();
    let header = ["class", "source_copies", "target_copies", "ratio"];
    let rows: Vec<Vec<String>> = json_rows
        .iter()
        .map(|r| {
            vec![
                r.class.to_string(),
                r.source_copies.clone(),
                r.target_copies.clone(),
                r.ratio.clone(),
            ]
        })
        .collect();
    let text = match config.format {
        OutputFormat::Csv => render_csv(&header, &rows),
        OutputFormat::Table => {
            let mut s = format!("surjection chain onto the canonical class  n={n} d={d}  k={k}\n");
            s.push_str(&render_table(&header, &rows));
            s
        }
        OutputFormat::Json => to_json(&Envelope {
            schema_version: SCHEMA_VERSION,
            command: "chain",
            params: ChainParams { n, d },
            results: ChainResults {
                canonical_class: k,
                records: json_rows,
            },
            paper_flags: PaperFlags {
                closed_forms_agree: Some(closed_forms_agree(&ctx)),
            },
        }),
    };
    Ok(CommandOutput {
        text,
        verification_failed: false,
    })
}

#[derive(Serialize)]
struct FsigParams {
    n: u32,
    d: u32,
    p: u64,
    e: u32,
}

#[derive(Serialize)]
struct FsigResults {
    rank: String,
    splitting_number: String,
    estimate: String,
}

fn cmd_fsig(n: u32, d: u32, p: u64, e: u32, config: &RunConfig) -> Result<CommandOutput> {
    check_class_budget(d, &config.guards)?;
    let ctx = VeroneseContext::new(n, d)?;
    let params = FrobeniusParams::new(ctx, p, e)?;
    let a_e = splitting_number(&params)?;
    let rank = params.root_rank();
    let estimate = BigRational::new(a_e.clone(), rank.clone());

    let header = ["n", "d", "p", "e", "rank", "splitting_number", "estimate"];
    let row = vec![
        n.to_string(),
        d.to_string(),
        p.to_string(),
        e.to_string(),
        rank.to_string(),
        a_e.to_string(),
        estimate.to_string(),
    ];
    let text = match config.format {
        OutputFormat::Csv => render_csv(&header, &[row]),
        OutputFormat::Table => format!(
            "F-signature estimate  n={n} d={d} p={p} e={e}\nsplitting number {a_e} of rank {rank}: {estimate}  [~{}]\n",
            decimal_approx(&estimate, 9)
        ),
        OutputFormat::Json => to_json(&Envelope {
            schema_version: SCHEMA_VERSION,
            command: "fsig",
            params: FsigParams { n, d, p, e },
            results: FsigResults {
                rank: rank.to_string(),
                splitting_number: a_e.to_string(),
                estimate: estimate.to_string(),
            },
            paper_flags: PaperFlags {
                closed_forms_agree: Some(closed_forms_agree(&ctx)),
            },
        }),
    };
    Ok(CommandOutput {
        text,
        verification_failed: false,
    })
}

/// Process exit code for an error, mirroring the documented contract:
/// 1 = a verified identity failed, 2 = invalid input, 3 = guard exceeded.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::GuardExceeded(_) => 3,
        Error::CertificateFailed { .. } | Error::InconsistentDecomposition(_) => 1,
        _ => 2,
    }
}
