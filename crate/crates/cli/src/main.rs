//! Command-line front end: JSON matrix I/O, one subcommand per module
//! family, an SVG renderer for matchings, and the verification-suite
//! runner.

mod io;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lamdet::condense::{self, CondOptions};
use lamdet::scalar::{parse, Scalar};
use lamdet::{apps, asm, aztec, periodic, rr, shuffle, verify};

#[derive(Parser)]
#[command(name = "lamdet", about = "Exact lambda-determinants and Aztec diamond partition functions", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lambda-determinants and generalized partition functions by
    /// condensation.
    Det {
        /// JSON matrix {"rows": [["expr", ...], ...]}; the matrix A (or P
        /// when --q is given)
        #[arg(long)]
        matrix: PathBuf,
        /// Bias expression, e.g. "1", "3/2" or "lambda"
        #[arg(long, default_value = "lambda")]
        lambda: String,
        /// Face weights Q of order one less than the matrix
        #[arg(long)]
        q: Option<PathBuf>,
        /// Per-diagonal bias vector "e1,e2,..." of length 2n-1
        #[arg(long, value_name = "EXPRS")]
        lambda_vector: Option<String>,
        /// Per-antidiagonal bias vector "e1,e2,..." of length 2n-1
        #[arg(long, value_name = "EXPRS")]
        mu_vector: Option<String>,
        /// Print every intermediate matrix of the condensation run
        #[arg(long)]
        trace: bool,
    },
    /// Direct evaluation as a sum over alternating sign matrices.
    Rr {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        q: Option<PathBuf>,
        #[arg(long, default_value = "lambda")]
        lambda: String,
        #[arg(long, value_enum, default_value_t = FormArg::Min)]
        form: FormArg,
    },
    /// The order-lowering shuffling transform on face weights.
    Shuffle {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long, default_value = "lambda")]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Two-periodic weightings: sequences, products, periodicity,
    /// Somos-4 and the elliptic flow.
    Periodic {
        #[arg(long, default_value = "a")]
        a: String,
        #[arg(long, default_value = "b")]
        b: String,
        #[arg(long, default_value = "lambda")]
        lambda: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        check_somos: bool,
        #[arg(long)]
        check_elliptic: bool,
        /// Print the periodicity condition for this period
        #[arg(long)]
        periodicity: Option<usize>,
    },
    /// Worked applications.
    Apps {
        #[command(subcommand)]
        which: AppsCommand,
    },
    /// Alternating sign matrices: enumeration and validation.
    Asm {
        #[arg(long)]
        n: Option<usize>,
        /// Validate a JSON matrix {"n": .., "rows": [[..]]}
        #[arg(long)]
        validate: Option<PathBuf>,
        /// Emit JSON instead of sign grids
        #[arg(long)]
        json: bool,
    },
    /// Perfect matchings of the Aztec graph.
    Matchings {
        #[arg(long)]
        n: usize,
        /// Write all matchings as JSON lines to this file
        #[arg(long)]
        json: Option<PathBuf>,
        /// Render one matching (by index) as an SVG figure
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Index of the matching to render
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Render a matching read from a JSON file instead
        #[arg(long)]
        from: Option<PathBuf>,
        /// Face weights P for weighted sums
        #[arg(long)]
        p: Option<PathBuf>,
        /// Face weights Q for weighted sums
        #[arg(long)]
        q: Option<PathBuf>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 0xACCE97)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        instances: usize,
    },
}

#[derive(Subcommand)]
enum AppsCommand {
    /// Biased matchings of the 2n x 2n square grid.
    Square {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// The 2 x 2n rectangle band determinant.
    Fibonacci {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "lambda")]
        lambda: String,
    },
    /// Matchings with a fixed number of NW-boundary vertical dimers.
    Refined {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value = "lambda")]
        lambda: String,
    },
    /// Fractions of matchings by the dimer count at the central face.
    Holey {
        #[arg(long)]
        n: usize,
    },
    /// Generating polynomial of central-row vertical pairs.
    Gn {
        #[arg(long)]
        n: usize,
        /// Also print the numeric conjecture report
        #[arg(long)]
        report: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Min,
    Max,
    Corner,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e }));
            ExitCode::FAILURE
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn parse_vector(text: &str) -> Result<Vec<Scalar>, String> {
    text.split(',')
        .map(|s| parse(s.trim()).map_err(err))
        .collect()
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Det {
            matrix,
            lambda,
            q,
            lambda_vector,
            mu_vector,
            trace,
        } => {
            let a = io::read_matrix(&matrix)?;
            let q = q.map(|p| io::read_matrix(&p)).transpose()?;
            let lam = parse(&lambda).map_err(err)?;
            match (lambda_vector, mu_vector) {
                (None, None) => {
                    let opts = CondOptions {
                        trace,
                        ..CondOptions::default()
                    };
                    let run = match q {
                        None => condense::lambda_det_opt(&a, &lam, opts).map_err(err)?,
                        Some(q) => condense::cond_pq_opt(&a, &q, &lam, opts).map_err(err)?,
                    };
                    if trace {
                        for (k, m) in run.intermediates.iter().enumerate() {
                            println!("A_{k}:");
                            println!("{}", io::matrix_to_text(m));
                        }
                    }
                    println!("{}", run.result);
                }
                (lv, mv) => {
                    let n = a.order() - 1;
                    let lams = match lv {
                        Some(t) => parse_vector(&t)?,
                        None => vec![lam.clone(); 2 * n - 1],
                    };
                    let mus = match mv {
                        Some(t) => parse_vector(&t)?,
                        None => vec![Scalar::one(); 2 * n - 1],
                    };
                    let v = condense::lambda_mu_det(&a, &lams, &mus, q.as_ref()).map_err(err)?;
                    println!("{v}");
                }
            }
            Ok(())
        }
        Command::Rr {
            matrix,
            q,
            lambda,
            form,
        } => {
            let a = io::read_matrix(&matrix)?;
            let lam = parse(&lambda).map_err(err)?;
            let v = match q {
                None => rr::rr_det(&a, &lam).map_err(err)?,
                Some(qp) => {
                    let q = io::read_matrix(&qp)?;
                    let form = match form {
                        FormArg::Min => rr::RrForm::MinForm,
                        FormArg::Max => rr::RrForm::MaxForm,
                        FormArg::Corner => rr::RrForm::CornerForm,
                    };
                    rr::rr_general(&a, &q, &lam, form).map_err(err)?
                }
            };
            println!("{v}");
            Ok(())
        }
        Command::Shuffle {
            p,
            q,
            lambda,
            steps,
        } => {
            let mut p = io::read_matrix(&p)?;
            let mut q = io::read_matrix(&q)?;
            let lam = parse(&lambda).map_err(err)?;
            for _ in 0..steps {
                let (pn, qn) = shuffle::shuffle_step(&p, &q, &lam).map_err(err)?;
                p = pn;
                q = qn;
            }
            println!(
                "{}",
                serde_json::json!({
                    "p": io::matrix_rows(&p),
                    "q": io::matrix_rows(&q),
                })
            );
            Ok(())
        }
        Command::Periodic {
            a,
            b,
            lambda,
            n,
            check_somos,
            check_elliptic,
            periodicity,
        } => {
            let a = parse(&a).map_err(err)?;
            let b = parse(&b).map_err(err)?;
            let lam = parse(&lambda).map_err(err)?;
            if let Some(p) = periodicity {
                println!(
                    "periodicity condition p={p}: {}",
                    periodic::periodicity_polynomial(p).map_err(err)?
                );
            }
            let t = a.div(&b).map_err(err)?;
            let r = periodic::rk_sequence(&lam, &t, n).map_err(err)?;
            for (k, v) in r.iter().enumerate() {
                println!("r_{k} = {v}");
            }
            println!(
                "T_{n} = {}",
                periodic::tn_biased_product(n, &a, &b, &lam).map_err(err)?
            );
            if check_somos {
                let rep = periodic::somos4_check(&a, &b, &lam, n.max(6)).map_err(err)?;
                println!(
                    "somos4: alpha = {}, beta = {}, holds = {}",
                    rep.alpha, rep.beta, rep.holds
                );
            }
            if check_elliptic {
                let flow = periodic::elliptic_flow(&lam, &t, n).map_err(err)?;
                let k = periodic::biquadratic_invariant(&r[0], &r[1], &lam).map_err(err)?;
                println!("biquadratic invariant K = {k}");
                for (idx, p) in flow.iter().enumerate() {
                    let on_curve = periodic::e1_residual(p, &lam, &t)
                        .map_err(err)?
                        .is_zero();
                    println!("P_{idx} = ({}, {}), on curve: {on_curve}", p.x, p.y);
                }
            }
            Ok(())
        }
        Command::Apps { which } => {
            match which {
                AppsCommand::Square { n, lambda } => {
                    let lam = parse(&lambda).map_err(err)?;
                    println!("{}", apps::square_grid_partition(n, &lam).map_err(err)?);
                }
                AppsCommand::Fibonacci { n, lambda } => {
                    let lam = parse(&lambda).map_err(err)?;
                    println!("{}", apps::fibonacci_det(n, &lam).map_err(err)?);
                }
                AppsCommand::Refined { n, l, lambda } => {
                    let lam = parse(&lambda).map_err(err)?;
                    println!("{}", apps::refined_nw(n, l, &lam).map_err(err)?);
                }
                AppsCommand::Holey { n } => {
                    let f = apps::holey_fractions(n).map_err(err)?;
                    println!(
                        "{}",
                        serde_json::json!({
                            "n": n,
                            "p0": f.p0.to_string(),
                            "p1": f.p1.to_string(),
                            "p2": f.p2.to_string(),
                        })
                    );
                }
                AppsCommand::Gn { n, report } => {
                    let g = apps::gn_polynomial(n).map_err(err)?;
                    println!("{}", format_poly_in_x(&g));
                    if report {
                        let r = apps::gn_conjecture_report(n).map_err(err)?;
                        println!(
                            "{}",
                            serde_json::json!({
                                "n": r.n,
                                "roots_real_negative": r.roots_real_negative,
                                "interlaced_with_previous": r.interlaced_with_previous,
                                "largest_root_ratio": r.largest_root_ratio,
                                "coefficient_identity_defect":
                                    r.coefficient_identity_defect.to_string(),
                            })
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Asm { n, validate, json } => {
            if let Some(path) = validate {
                let text = std::fs::read_to_string(&path).map_err(err)?;
                let a = asm::Asm::from_json(&text).map_err(err)?;
                println!("valid order-{} alternating sign matrix", a.order());
                return Ok(());
            }
            let n = n.ok_or("either --n or --validate is required")?;
            let all = asm::enumerate_asm(n).map_err(err)?;
            for a in &all {
                if json {
                    println!("{}", a.to_json());
                } else {
                    println!("{}", a.to_grid());
                }
            }
            println!("{} matrices of order {n}", all.len());
            Ok(())
        }
        Command::Matchings {
            n,
            json,
            svg,
            index,
            from,
            p,
            q,
            lambda,
        } => {
            if let Some(path) = &from {
                let text = std::fs::read_to_string(path).map_err(err)?;
                let m = aztec::PerfectMatching::from_json(&text).map_err(err)?;
                if let Some(out) = &svg {
                    std::fs::write(out, svg::render_matching(&m)).map_err(err)?;
                    println!("wrote {}", out.display());
                }
                return Ok(());
            }
            let all = aztec::enumerate_matchings(n).map_err(err)?;
            println!("{} matchings of order {n}", all.len());
            if let (Some(pp), Some(qp), Some(ls)) = (&p, &q, &lambda) {
                let w = aztec::AztecWeighting::new(
                    io::read_matrix(pp)?,
                    io::read_matrix(qp)?,
                    aztec::Bias::Homogeneous(parse(ls).map_err(err)?),
                )
                .map_err(err)?;
                println!("partition function: {}", aztec::partition_brute(&w).map_err(err)?);
            }
            if let Some(out) = &json {
                let lines: Vec<String> = all.iter().map(|m| m.to_json()).collect();
                std::fs::write(out, lines.join("\n")).map_err(err)?;
                println!("wrote {}", out.display());
            }
            if let Some(out) = &svg {
                let m = all.get(index).ok_or("matching index out of range")?;
                std::fs::write(out, svg::render_matching(m)).map_err(err)?;
                println!("wrote {}", out.display());
            }
            Ok(())
        }
        Command::Verify {
            suite,
            max_order,
            seed,
            instances,
        } => {
            let reports = match suite.as_str() {
                "all" => verify::run_all(instances, max_order, seed),
                "oracle" => vec![verify::three_way_oracle(instances, max_order, seed)],
                "symbolic" => vec![verify::symbolic_golden_identities()],
                "counting" => vec![verify::counting_checks()],
                "order5" => vec![verify::order5_regression()],
                "pairs" => vec![verify::compatible_pair_sums(max_order)],
                "periodic" => vec![
                    verify::two_periodic_identities(max_order),
                    verify::periodicity_table(),
                    verify::periodic_closed_forms(),
                ],
                "elliptic" => vec![verify::elliptic_and_somos()],
                "apps" => vec![verify::applications()],
                "shuffle" => vec![verify::shuffle_checks(seed)],
                "performance" => vec![verify::performance_smoke(seed)],
                other => return Err(format!("unknown suite {other:?}")),
            };
            let mut ok = true;
            for r in &reports {
                println!("{}", r.line());
                ok &= r.passed;
            }
            if ok {
                Ok(())
            } else {
                Err("verification failed".into())
            }
        }
    }
}

fn format_poly_in_x(coeffs: &[lamdet::num::BigInt]) -> String {
    use lamdet::num::Zero;
    let mut parts = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = if c == &lamdet::num::BigInt::from(1) && k > 0 {
            String::new()
        } else {
            format!("{c}")
        };
        let var = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        let sep = if !coeff.is_empty() && !var.is_empty() {
            "*"
        } else {
            ""
        };
        parts.push(format!("{coeff}{sep}{var}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
