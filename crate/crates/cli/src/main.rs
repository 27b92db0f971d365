//! `k3lat` — command-line front end for the lattice decision procedures.
//!
//! Reports are line-oriented `key: value` text on standard output, identical
//! bytes for identical inputs and options.  Exit codes are stable across all
//! verbs: 0 = yes/success, 1 = no, 2 = unknown, 3 = invalid input.
//! Certificates can be written with `--out` and re-validated by passing the
//! written file back through `--check` of the same verb.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num::{BigInt, BigRational, Zero};

use k3lattice::criteria::{self, Certificate, Decision, SearchBudget, Verdict};
use k3lattice::embedding::SublatticeEmbedding;
use k3lattice::forms;
use k3lattice::io;
use k3lattice::lattice::{Lattice, NamedLattice};
use k3lattice::witness;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INVALID: u8 = 3;

#[derive(Parser)]
#[command(
    name = "k3lat",
    version,
    about = "Exact decision procedures for even lattices: embeddings, quotients, dominance"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Print rank, signature, determinant and parity of a lattice.
    Info {
        /// Lattice name (U, E8, E8(2), Lambda0, Lambda1, U(2)^3) or JSON file.
        lattice: String,
    },
    /// Print the discriminant-group structure of an integral lattice.
    Disc {
        lattice: String,
    },
    /// Print the dual lattice.
    Dual {
        lattice: String,
        /// Write the dual as a lattice JSON file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Validate a previously written dual against this input.
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Search for a nonzero vector of norm zero up to a height bound.
    Isotropic {
        lattice: String,
        /// Sup-norm bound for the coordinate search.
        #[arg(long, default_value_t = 10)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Decide rational equivalence of two quadratic forms.
    Equiv {
        a: String,
        b: String,
    },
    /// Find the least squarefree scale making two forms rationally equivalent.
    Similar {
        a: String,
        b: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Decide whether a form embeds into three hyperbolic planes over Q.
    #[command(name = "embed-u3")]
    EmbedU3 {
        lattice: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Kummer-dominance test: rational embedding into U^3 with certificate.
    Kummer {
        lattice: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Product-Kummer refinement: rational embedding into U^2.
    #[command(name = "product-kummer")]
    ProductKummer {
        lattice: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Shioda-Inose test: bounded search for a primitive embedding into U^3.
    #[command(name = "shioda-inose")]
    ShiodaInose {
        lattice: String,
        /// Height bound for the certificate search.
        #[arg(long, default_value_t = 10)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Nikulin quotient of a primitive sublattice of Lambda0.
    Quotient {
        /// Embedding JSON file with ambient Lambda0.
        embedding: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Push a primitive sublattice of U^3 through the fixed sandwich map.
    Sandwich {
        /// Embedding JSON file with ambient U^3.
        embedding: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Two-length obstruction against arising as a doubled quotient.
    Obstruction {
        lattice: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Verify the pinned witness computations end to end.
    #[command(name = "verify-paper")]
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::from(EXIT_YES);
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    match run(cli.verb) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

/// `Err` means invalid input (exit 3); `Ok` carries the verb's exit code.
fn run(verb: Verb) -> Result<u8, String> {
    match verb {
        Verb::Info { lattice } => {
            let l = load_lattice(&lattice)?;
            print_info(&l);
            Ok(EXIT_YES)
        }
        Verb::Disc { lattice } => {
            let l = load_lattice(&lattice)?;
            let d = l.discriminant_group().map_err(|e| e.to_string())?;
            let mut order = String::from("1");
            if !d.invariant_factors.is_empty() {
                let mut prod = d.invariant_factors[0].clone();
                for f in &d.invariant_factors[1..] {
                    prod *= f;
                }
                order = prod.to_string();
            }
            println!("order: {order}");
            println!("invariant-factors: {}", fmt_ints(&d.invariant_factors));
            if d.is_trivial() {
                println!("group: trivial");
            } else {
                let parts: Vec<String> =
                    d.invariant_factors.iter().map(|f| format!("Z/{f}")).collect();
                println!("group: {}", parts.join(" x "));
            }
            println!("2-length: {}", d.p_length(&2.into()));
            Ok(EXIT_YES)
        }
        Verb::Dual { lattice, out, check } => {
            let l = load_lattice(&lattice)?;
            let dual = l.dual();
            if let Some(path) = check {
                let claimed = load_lattice_file(&path)?;
                return Ok(if claimed.gram() == dual.gram() {
                    println!("check: ok");
                    EXIT_YES
                } else {
                    println!("check: mismatch");
                    EXIT_NO
                });
            }
            print_lattice(&dual);
            write_out(out, || io::lattice_to_json(&dual))?;
            Ok(EXIT_YES)
        }
        Verb::Isotropic { lattice, bound, out, check } => {
            let l = load_lattice(&lattice)?;
            let budget = SearchBudget::new(bound).map_err(|e| e.to_string())?;
            let d = match criteria::find_isotropic(&l, &budget) {
                criteria::IsotropicSearch::Found(v) => Decision::yes(
                    "isotropic-vector-found",
                    Certificate::IsotropicVector(v),
                ),
                criteria::IsotropicSearch::ProvablyNone(tag) => Decision::no(tag),
                criteria::IsotropicSearch::Exhausted => {
                    Decision::unknown(format!("exhausted-height-{}", budget.height_bound()))
                }
            };
            if let Some(path) = check {
                return check_certificate(&path, |cert| match cert {
                    Certificate::IsotropicVector(v) => {
                        criteria::check_isotropic_certificate(&l, v)
                    }
                    _ => Err("expected an isotropic-vector certificate".into()),
                });
            }
            print_decision(&d);
            write_out(out, || io::decision_to_json(&d))?;
            Ok(verdict_code(d.verdict))
        }
        Verb::Equiv { a, b } => {
            let qa = load_lattice(&a)?;
            let qb = load_lattice(&b)?;
            if forms::equivalent(&qa, &qb) {
                println!("equivalent: yes");
                Ok(EXIT_YES)
            } else {
                println!("equivalent: no");
                println!("reason: {}", equiv_difference(&qa, &qb));
                Ok(EXIT_NO)
            }
        }
        Verb::Similar { a, b, out, check } => {
            let qa = load_lattice(&a)?;
            let qb = load_lattice(&b)?;
            let d = criteria::isogeny_scale(&qa, &qb);
            if let Some(path) = check {
                return check_certificate(&path, |cert| match cert {
                    Certificate::Scale(s) => criteria::check_scale_certificate(&qa, &qb, s),
                    _ => Err("expected a scale certificate".into()),
                });
            }
            print_decision(&d);
            write_out(out, || io::decision_to_json(&d))?;
            Ok(verdict_code(d.verdict))
        }
        Verb::EmbedU3 { lattice, out, check } => {
            let t = load_lattice(&lattice)?;
            decision_verb(check, out, || criteria::embed_in_u3(&t), |cert| {
                embedding_check(cert, &t, &Lattice::hyperbolic(3), false)
            })
        }
        Verb::Kummer { lattice, out, check } => {
            let t = load_lattice(&lattice)?;
            decision_verb(check, out, || criteria::kummer_dominance(&t), |cert| {
                embedding_check(cert, &t, &Lattice::hyperbolic(3), false)
            })
        }
        Verb::ProductKummer { lattice, out, check } => {
            let t = load_lattice(&lattice)?;
            decision_verb(check, out, || criteria::product_kummer_dominance(&t), |cert| {
                embedding_check(cert, &t, &Lattice::hyperbolic(2), false)
            })
        }
        Verb::ShiodaInose { lattice, bound, out, check } => {
            let t = load_lattice(&lattice)?;
            let budget = SearchBudget::new(bound).map_err(|e| e.to_string())?;
            decision_verb(check, out, || criteria::shioda_inose(&t, &budget), |cert| {
                embedding_check(cert, &t, &Lattice::hyperbolic(3), true)
            })
        }
        Verb::Obstruction { lattice, out, check } => {
            let m = load_lattice(&lattice)?;
            decision_verb(check, out, || criteria::double_quotient_obstruction(&m), |cert| {
                match cert {
                    Certificate::Obstruction { rank, two_length } => {
                        criteria::check_obstruction_certificate(&m, *rank, *two_length)
                    }
                    _ => Err("expected an obstruction certificate".into()),
                }
            })
        }
        Verb::Quotient { embedding, out, check } => {
            let s = load_embedding_file(&embedding)?;
            let nq = criteria::nikulin_quotient(&s).map_err(|e| e.to_string())?;
            if let Some(path) = check {
                let claimed = load_lattice_file(&path)?;
                return Ok(if claimed.gram() == nq.quotient.gram() {
                    println!("check: ok");
                    EXIT_YES
                } else {
                    println!("check: mismatch");
                    EXIT_NO
                });
            }
            println!("quotient-rank: {}", nq.quotient.rank());
            println!("chain-input-in-quotient: {}", yes_no(nq.scaled_input_contained));
            println!("chain-doubled-quotient-in-input: {}", yes_no(nq.doubled_quotient_contained));
            print_lattice(&nq.quotient);
            write_out(out, || io::lattice_to_json(&nq.quotient))?;
            Ok(EXIT_YES)
        }
        Verb::Sandwich { embedding, out, check } => {
            let t = load_embedding_file(&embedding)?;
            if let Some(path) = check {
                let text = read_file(&path)?;
                let claimed = io::parse_embedding(&text).map_err(|e| e.to_string())?;
                return Ok(match check_sandwich_image(&t, &claimed) {
                    Ok(()) => {
                        println!("check: ok");
                        EXIT_YES
                    }
                    Err(why) => {
                        println!("check: mismatch");
                        println!("reason: {why}");
                        EXIT_NO
                    }
                });
            }
            let image = criteria::sandwich_embedding(&t).map_err(|e| e.to_string())?;
            println!("image-rank: {}", image.rank());
            println!(
                "primitive: {}",
                yes_no(image.is_primitive().map_err(|e| e.to_string())?)
            );
            for i in 0..image.coords().rows {
                println!("row: {}", fmt_row(image.coords().row(i)));
            }
            write_out(out, || io::embedding_to_json(&image))?;
            Ok(EXIT_YES)
        }
        Verb::VerifyPaper => {
            let reports = [
                witness::verify_sandwich_witness().map_err(|e| e.to_string())?,
                witness::verify_quotient_asymmetry().map_err(|e| e.to_string())?,
            ];
            let mut all = true;
            for r in &reports {
                println!("section: {}", r.title);
                for c in &r.checks {
                    if c.pass {
                        println!("ok: {}", c.label);
                    } else {
                        println!("FAIL: {}", c.label);
                        all = false;
                    }
                }
            }
            println!("result: {}", if all { "pass" } else { "fail" });
            Ok(if all { EXIT_YES } else { EXIT_NO })
        }
    }
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

fn load_lattice(arg: &str) -> Result<Lattice, String> {
    if let Some(named) = NamedLattice::parse(arg) {
        return Ok(named.lattice());
    }
    load_lattice_file(Path::new(arg))
}

fn load_lattice_file(path: &Path) -> Result<Lattice, String> {
    let text = read_file(path)?;
    io::parse_lattice(&text).map_err(|e| e.to_string())
}

fn load_embedding_file(path: &Path) -> Result<SublatticeEmbedding, String> {
    let text = read_file(path)?;
    io::parse_embedding(&text).map_err(|e| e.to_string())
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_out(out: Option<PathBuf>, render: impl FnOnce() -> String) -> Result<(), String> {
    if let Some(path) = out {
        fs::write(&path, render()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Report printing
// ---------------------------------------------------------------------------

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_row(row: &[BigRational]) -> String {
    let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
    format!("[{}]", cells.join(", "))
}

fn fmt_ints(v: &[BigInt]) -> String {
    let cells: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("[{}]", cells.join(", "))
}

fn print_info(l: &Lattice) {
    if let Some(name) = matching_name(l) {
        println!("name: {name}");
    }
    let (p, q) = l.signature();
    println!("rank: {}", l.rank());
    println!("signature: ({p}, {q})");
    println!("determinant: {}", l.det());
    println!("integral: {}", yes_no(l.is_integral()));
    println!("even: {}", yes_no(l.is_even()));
    println!("unimodular: {}", yes_no(l.is_unimodular()));
}

fn print_lattice(l: &Lattice) {
    if let Some(name) = matching_name(l) {
        println!("name: {name}");
    }
    println!("rank: {}", l.rank());
    for i in 0..l.gram().rows {
        println!("row: {}", fmt_row(l.gram().row(i)));
    }
}

fn matching_name(l: &Lattice) -> Option<&'static str> {
    const NAMED: [NamedLattice; 6] = [
        NamedLattice::U,
        NamedLattice::E8,
        NamedLattice::E8Doubled,
        NamedLattice::Lambda0,
        NamedLattice::Lambda1,
        NamedLattice::U2Cubed,
    ];
    NAMED.iter().find(|n| n.lattice().gram() == l.gram()).map(|n| n.name())
}

fn print_decision(d: &Decision) {
    println!("verdict: {}", d.verdict);
    println!("reason: {}", d.reason);
    for w in &d.warnings {
        println!("warning: {w}");
    }
    if let Some(cert) = &d.certificate {
        print_certificate(cert);
    }
}

fn print_certificate(cert: &Certificate) {
    match cert {
        Certificate::Embedding(e) => {
            println!("certificate: embedding");
            for i in 0..e.coords().rows {
                println!("row: {}", fmt_row(e.coords().row(i)));
            }
        }
        Certificate::IsotropicVector(v) => {
            println!("certificate: isotropic-vector");
            println!("vector: {}", fmt_ints(v));
        }
        Certificate::Scale(s) => {
            println!("certificate: scale");
            println!("n: {}", s.n);
        }
        Certificate::Obstruction { rank, two_length } => {
            println!("certificate: obstruction");
            println!("obstruction-rank: {rank}");
            println!("two-length: {two_length}");
        }
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

/// Rational forms are classified by (rank, signature, determinant class,
/// Hasse set); name the first of these that separates the two inputs.
fn equiv_difference(a: &Lattice, b: &Lattice) -> &'static str {
    let ia = forms::invariants(a);
    let ib = forms::invariants(b);
    if ia.rank != ib.rank {
        "rank-differs"
    } else if ia.sig != ib.sig {
        "signature-differs"
    } else if ia.det_class != ib.det_class {
        "determinant-class-differs"
    } else if ia.hasse != ib.hasse {
        "hasse-set-differs"
    } else {
        "none"
    }
}

// ---------------------------------------------------------------------------
// Verb plumbing shared by the decision commands
// ---------------------------------------------------------------------------

fn decision_verb(
    check: Option<PathBuf>,
    out: Option<PathBuf>,
    decide: impl FnOnce() -> Result<Decision, k3lattice::LatticeError>,
    validate: impl Fn(&Certificate) -> Result<(), String>,
) -> Result<u8, String> {
    if let Some(path) = check {
        return check_certificate(&path, validate);
    }
    let d = decide().map_err(|e| e.to_string())?;
    print_decision(&d);
    write_out(out, || io::decision_to_json(&d))?;
    Ok(verdict_code(d.verdict))
}

/// Load a decision file and re-validate its certificate against the current
/// inputs.  A file without a certificate cannot be checked and is invalid
/// input; a failing validation is a clean "no".
fn check_certificate(
    path: &Path,
    validate: impl Fn(&Certificate) -> Result<(), String>,
) -> Result<u8, String> {
    let text = read_file(path)?;
    let d = io::parse_decision(&text).map_err(|e| e.to_string())?;
    let cert = d.certificate.as_ref().ok_or("decision file carries no certificate")?;
    match validate(cert) {
        Ok(()) => {
            println!("certificate: valid");
            Ok(EXIT_YES)
        }
        Err(why) => {
            println!("certificate: invalid");
            println!("reason: {why}");
            Ok(EXIT_NO)
        }
    }
}

fn embedding_check(
    cert: &Certificate,
    claimed: &Lattice,
    ambient: &Lattice,
    require_primitive: bool,
) -> Result<(), String> {
    match cert {
        Certificate::Embedding(e) => {
            criteria::check_embedding_certificate(claimed, ambient, e, require_primitive)
        }
        _ => Err("expected an embedding certificate".into()),
    }
}

/// Independent validation of a claimed sandwich image: ambient, integrality,
/// primitivity, the doubled Gram matrix, and membership in twice the dual.
fn check_sandwich_image(
    t: &SublatticeEmbedding,
    claimed: &SublatticeEmbedding,
) -> Result<(), String> {
    if claimed.ambient().gram() != Lattice::lambda0().gram() {
        return Err("ambient is not Lambda0".into());
    }
    if !claimed.is_integral_coords() {
        return Err("coordinates are not integral".into());
    }
    if claimed.rank() != t.rank() {
        return Err("rank differs from the input".into());
    }
    let two = BigRational::from_integer(2.into());
    if *claimed.sub_gram() != t.sub_gram().scale(&two) {
        return Err("the image does not carry the doubled form".into());
    }
    if !claimed.is_primitive().map_err(|e| e.to_string())? {
        return Err("the image is not primitive".into());
    }
    let pairings = claimed.coords().mul(claimed.ambient().gram());
    for i in 0..pairings.rows {
        for e in pairings.row(i) {
            if !e.is_integer() || !(e.to_integer() % BigInt::from(2)).is_zero() {
                return Err("the image leaves twice the dual lattice".into());
            }
        }
    }
    Ok(())
}
