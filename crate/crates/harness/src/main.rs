//! conespec: exact cone spectra, dynamical-degree profiles,
//! exponential-polynomial analysis, and the generated-cycles calculus.
//!
//! Exit codes: 0 all checks pass, 1 a verification check failed,
//! 2 input or usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use conespec_cones::{cone_spectrum, is_alpha_amplified, AmplifiedOutcome};
use conespec_degrees::{ample_spectrum, big_spectrum, classify, cross_check_big, dynamical_degrees};
use conespec_exppoly::{dominant_signature, region_bound_check};
use conespec_gencycles::{
    atomic_decomposition, restrict_direct, support, GeneratedCycle,
};
use conespec_harness::files::{
    read_json, write_json, ConeFile, ExpPolyFile, MatrixFile, ModelFile, SystemFile, TreeFile,
};
use conespec_harness::generate::*;
use conespec_harness::suites::{run_suite, SUITES};
use conespec_kernel::algebraic::RealAlgebraic;
use conespec_kernel::rational::{parse_rational, rational_to_string, two_pow_neg};

#[derive(Parser)]
#[command(name = "conespec", version, about = "exact invariant-cone spectra and friends")]
struct Cli {
    /// Seed for generators and verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Instance count for verification suites.
    #[arg(long, global = true, default_value_t = 20)]
    count: usize,
    /// Precision (bits) for printed enclosures.
    #[arg(long, global = true, default_value_t = 128)]
    precision_bits: u32,
    /// Output format.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cone spectrum of a matrix on a polyhedral cone (or a single alpha test).
    Spectrum {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        cone: PathBuf,
        /// Test a single rational alpha instead of the whole spectrum.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = false)]
        allow_forward_only: bool,
    },
    /// Alpha-amplified feasibility test at one rational alpha.
    Amplified {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = false)]
        allow_forward_only: bool,
    },
    /// Dynamical degrees and Lyapunov exponents of a graded system.
    Degrees {
        #[arg(long)]
        system: PathBuf,
    },
    /// The spectrum of the big-cone action: the mu set.
    BigSpectrum {
        #[arg(long)]
        system: PathBuf,
    },
    /// The spectrum of the ample-cone action from a periodic subsystem tree.
    AmpleSpectrum {
        #[arg(long)]
        tree: PathBuf,
    },
    /// Hyperbolicity / amplified classification from a subsystem tree.
    Classify {
        #[arg(long)]
        tree: PathBuf,
    },
    /// Exponential-polynomial analysis: dominant signature and region bracket.
    Exppoly {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "1/4")]
        eps0: String,
        #[arg(long, default_value_t = 10000)]
        nmax: u64,
    },
    /// Generated-cycles calculus on a stratified model.
    Cycles {
        #[arg(long)]
        model: PathBuf,
        /// One of: check, restrict, decompose
        #[arg(long, default_value = "check")]
        op: String,
        /// Component data: id=v1,v2,... entries (repeatable).
        #[arg(long)]
        component: Vec<String>,
        /// Point ids of the closed set for restrict (down-closure is taken).
        #[arg(long)]
        set: Vec<String>,
    },
    /// Writes generated instance files.
    Generate {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Exponents for monomial-product (comma separated).
        #[arg(long)]
        exponents: Option<String>,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn show_value(v: &RealAlgebraic, bits: u32) -> String {
    match v {
        RealAlgebraic::Rational(r) => rational_to_string(r),
        _ => {
            let enc = v.enclosure(&two_pow_neg(bits.min(256)));
            format!("{} in [{}, {}]", v, rational_to_string(&enc.lo), rational_to_string(&enc.hi))
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    let bits = cli.precision_bits;
    match cli.command {
        Command::Spectrum {
            matrix,
            cone,
            alpha,
            allow_forward_only,
        } => {
            let m = read_json::<MatrixFile>(&matrix)
                .and_then(|f| f.to_matrix())
                .map_err(|e| e.to_string())?;
            let k = read_json::<ConeFile>(&cone)
                .and_then(|f| f.to_cone())
                .map_err(|e| e.to_string())?;
            if let Some(a) = alpha {
                let alpha = RealAlgebraic::Rational(
                    parse_rational(&a).map_err(|e| e.to_string())?,
                );
                return amplified_verdict(&m, &k, &alpha, allow_forward_only);
            }
            let sr = cone_spectrum(&m, &k, allow_forward_only).map_err(|e| e.to_string())?;
            println!("spectrum members: {}", sr.members().len());
            for v in &sr.verdicts {
                if v.member {
                    println!("  member {}", show_value(&v.value, bits));
                } else {
                    println!("  amplified at {}", show_value(&v.value, bits));
                }
            }
            Ok(true)
        }
        Command::Amplified {
            matrix,
            cone,
            alpha,
            allow_forward_only,
        } => {
            let m = read_json::<MatrixFile>(&matrix)
                .and_then(|f| f.to_matrix())
                .map_err(|e| e.to_string())?;
            let k = read_json::<ConeFile>(&cone)
                .and_then(|f| f.to_cone())
                .map_err(|e| e.to_string())?;
            let alpha =
                RealAlgebraic::Rational(parse_rational(&alpha).map_err(|e| e.to_string())?);
            amplified_verdict(&m, &k, &alpha, allow_forward_only)
        }
        Command::Degrees { system } => {
            let sys = read_json::<SystemFile>(&system)
                .and_then(|f| f.to_system())
                .map_err(|e| e.to_string())?;
            let p = dynamical_degrees(&sys).map_err(|e| e.to_string())?;
            for (i, l) in p.lambdas.iter().enumerate() {
                println!("lambda_{} = {}", i, show_value(l, bits));
            }
            for (i, mu) in p.mus.iter().enumerate() {
                println!("mu_{} = {}", i + 1, show_value(mu, bits));
            }
            Ok(true)
        }
        Command::BigSpectrum { system } => {
            let sys = read_json::<SystemFile>(&system)
                .and_then(|f| f.to_system())
                .map_err(|e| e.to_string())?;
            let bs = big_spectrum(&sys).map_err(|e| e.to_string())?;
            for v in &bs {
                println!("{}", show_value(v, bits));
            }
            // when a big model is present, run the internal cross-check
            if sys.big_model.is_some() {
                let rep = cross_check_big(&sys).map_err(|e| e.to_string())?;
                println!(
                    "cross-check vs cone spectrum: {}",
                    if rep.equal { "equal" } else { "MISMATCH" }
                );
                return Ok(rep.equal);
            }
            Ok(true)
        }
        Command::AmpleSpectrum { tree } => {
            let t = read_json::<TreeFile>(&tree)
                .and_then(|f| f.to_tree())
                .map_err(|e| e.to_string())?;
            let rep = ample_spectrum(&t).map_err(|e| e.to_string())?;
            if rep.root_only {
                println!("note: no proper periodic data supplied; the ample spectrum below is a lower bound");
            }
            for v in &rep.values {
                println!("{}", show_value(v, bits));
            }
            Ok(true)
        }
        Command::Classify { tree } => {
            let t = read_json::<TreeFile>(&tree)
                .and_then(|f| f.to_tree())
                .map_err(|e| e.to_string())?;
            let c = classify(&t.system, Some(&t)).map_err(|e| e.to_string())?;
            println!(
                "cohomologically-hyperbolic {}",
                verdict(c.cohomologically_hyperbolic, c.hyperbolic_witness.map(|i| format!("mu_{} = 1", i)))
            );
            println!("quasi-amplified {}", c.quasi_amplified);
            println!(
                "amplified {}",
                c.amplified.map(|b| b.to_string()).unwrap_or_else(|| "unknown (no tree)".into())
            );
            println!("int-amplified {}", c.int_amplified);
            Ok(true)
        }
        Command::Exppoly { input, eps0, nmax } => {
            let h = read_json::<ExpPolyFile>(&input)
                .and_then(|f| f.to_exppoly())
                .map_err(|e| e.to_string())?;
            let sig = dominant_signature(&h).map_err(|e| e.to_string())?;
            println!(
                "dominant signature: beta={} gamma={} a={} b={} (|S+| = {})",
                rational_to_string(&sig.beta),
                sig.gamma.as_ref().map(rational_to_string).unwrap_or_else(|| "-".into()),
                sig.a,
                sig.b.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
                sig.plus_terms.len()
            );
            if h.arity == 2 {
                let eps = parse_rational(&eps0).map_err(|e| e.to_string())?;
                let rep = region_bound_check(&h, &eps, nmax).map_err(|e| e.to_string())?;
                if rep.pre_asymptotic_window {
                    println!("note: stated region empty at this scale; pre-asymptotic window sampled");
                }
                println!(
                    "ratio bracket over {} samples: [{}, {}]",
                    rep.sample_count,
                    rational_to_string(&rep.c_lower),
                    rational_to_string(&rep.c_upper)
                );
            }
            Ok(true)
        }
        Command::Cycles {
            model,
            op,
            component,
            set,
        } => {
            let m = read_json::<ModelFile>(&model)
                .and_then(|f| f.to_model())
                .map_err(|e| e.to_string())?;
            let rep = m.validate();
            match op.as_str() {
                "check" => {
                    for v in &rep.violations {
                        println!("violation: {v}");
                    }
                    println!(
                        "model {}",
                        if rep.valid() { "valid" } else { "INVALID" }
                    );
                    Ok(rep.valid())
                }
                "restrict" | "decompose" => {
                    if !rep.valid() {
                        return Err("model is invalid; run --op check".into());
                    }
                    let mut alpha = GeneratedCycle::zero(&m);
                    for spec in &component {
                        let (id, vals) = spec
                            .split_once('=')
                            .ok_or_else(|| format!("bad --component {spec:?}"))?;
                        let idx = m.index_of(id).map_err(|e| e.to_string())?;
                        let parsed: Result<Vec<_>, _> = if vals.is_empty() {
                            Ok(vec![])
                        } else {
                            vals.split(',').map(parse_rational).collect()
                        };
                        alpha.components[idx] = parsed.map_err(|e| e.to_string())?;
                    }
                    if op == "decompose" {
                        let atoms = atomic_decomposition(&m, &alpha).map_err(|e| e.to_string())?;
                        for (x, v) in atoms {
                            println!(
                                "atom at {}: ({})",
                                m.points[x].id,
                                v.iter().map(rational_to_string).collect::<Vec<_>>().join(", ")
                            );
                        }
                        let supp = support(&m, &alpha);
                        println!(
                            "support: {}",
                            supp.iter()
                                .map(|&x| m.points[x].id.clone())
                                .collect::<Vec<_>>()
                                .join(", ")
                        );
                        return Ok(true);
                    }
                    // restrict
                    let mut pts = std::collections::BTreeSet::new();
                    for id in &set {
                        pts.insert(m.index_of(id).map_err(|e| e.to_string())?);
                    }
                    if pts.is_empty() {
                        return Err("--set needs at least one point id".into());
                    }
                    let closed = conespec_gencycles::ClosedSet(m.down_closure(&pts));
                    let rc = restrict_direct(&m, &alpha, &closed).map_err(|e| e.to_string())?;
                    println!(
                        "restriction class (pushout dim {}): ({})",
                        rc.space.dim(),
                        rc.class
                            .iter()
                            .map(rational_to_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    Ok(true)
                }
                other => Err(format!("unknown cycles op {other:?}")),
            }
        }
        Command::Generate {
            kind,
            out_dir,
            dim,
            exponents,
        } => {
            std::fs::create_dir_all(&out_dir).map_err(|e| e.to_string())?;
            match kind.as_str() {
                "diagonal-cone" => {
                    let inst = gen_diagonal(cli.seed, dim);
                    write_json(&out_dir.join("matrix.json"), &MatrixFile::from_matrix(&inst.matrix))
                        .map_err(|e| e.to_string())?;
                    write_json(&out_dir.join("cone.json"), &ConeFile::from_cone(&inst.cone))
                        .map_err(|e| e.to_string())?;
                }
                "permutation-scale" => {
                    let inst = gen_permutation_scale(cli.seed, dim);
                    write_json(&out_dir.join("matrix.json"), &MatrixFile::from_matrix(&inst.matrix))
                        .map_err(|e| e.to_string())?;
                    write_json(&out_dir.join("cone.json"), &ConeFile::from_cone(&inst.cone))
                        .map_err(|e| e.to_string())?;
                }
                "monomial-product" => {
                    let inst = match exponents {
                        Some(s) => {
                            let exps: Result<Vec<i64>, _> =
                                s.split(',').map(|x| x.trim().parse::<i64>()).collect();
                            monomial_product_with(&exps.map_err(|e| e.to_string())?)
                        }
                        None => gen_monomial_product(cli.seed, dim.max(1)),
                    };
                    write_json(&out_dir.join("system.json"), &SystemFile::from_system(&inst.system))
                        .map_err(|e| e.to_string())?;
                    write_json(&out_dir.join("tree.json"), &TreeFile::from_tree(&inst.tree))
                        .map_err(|e| e.to_string())?;
                }
                other => return Err(format!("unknown generator kind {other:?}")),
            }
            println!("wrote instance files to {}", out_dir.display());
            Ok(true)
        }
        Command::Verify { suite, workers } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(format!("unknown suite {:?}; available: {:?}", suite, SUITES));
            }
            let rep = run_suite(&suite, cli.count, cli.seed, workers);
            if cli.format == "json" {
                println!("{}", rep.to_json());
            } else {
                print!("{}", rep.to_text());
            }
            Ok(rep.all_pass())
        }
    }
}

fn verdict(flag: bool, witness: Option<String>) -> String {
    match (flag, witness) {
        (true, _) => "true".into(),
        (false, Some(w)) => format!("false ({w})"),
        (false, None) => "false".into(),
    }
}

fn amplified_verdict(
    m: &conespec_kernel::matrix::RationalMatrix,
    k: &conespec_cones::PolyhedralCone,
    alpha: &RealAlgebraic,
    allow_forward_only: bool,
) -> Result<bool, String> {
    // values outside the matrix spectrum are amplified trivially; report it
    let spec = conespec_kernel::spectrum::certified_spectrum(m, &two_pow_neg(64));
    let in_matrix_spectrum = spec
        .positive_real()
        .iter()
        .any(|(_, v)| v.equals(alpha));
    match is_alpha_amplified(m, k, alpha, allow_forward_only).map_err(|e| e.to_string())? {
        AmplifiedOutcome::Amplified { .. } => {
            if in_matrix_spectrum {
                println!("amplified (witness found)");
            } else {
                println!("amplified trivially (alpha is outside the matrix spectrum)");
            }
            Ok(true)
        }
        AmplifiedOutcome::NotAmplified { .. } => {
            println!("not amplified: alpha is in the cone spectrum");
            Ok(true)
        }
    }
}
