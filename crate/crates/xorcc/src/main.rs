use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use xorcc::boolfn::{make_fk, walsh_spectrum, MessageMap, PartialFn};
use xorcc::codes::{
    direct_sum, full_cube_code, greedy_covering, hamming_code, reed_muller_1_5, repetition_code,
    rm15_sampled_radius_check, rm15_walsh_certificate_exhaustive, verify_covering, CoveringCode,
    VerifyMode,
};
use xorcc::cube::{
    boundary, gamma_prime_segment_checks, harper_check, harper_check_sampled, initial_segment,
    isoperim_final_check, VertexSet,
};
use xorcc::error::Error;
use xorcc::fileio;
use xorcc::gf2::CubeMask;
use xorcc::nadt::{dtp_exact, nadt_complexity, synthesize_nadt, verify_nadt};
use xorcc::owcc::{
    chromatic_coloring_exact, conflict_graph, owcc_bounds, owcc_exact, synthesize_oneway,
    verify_oneway,
};
use xorcc::report::{CheckRow, Report, Verdict};
use xorcc::shifts::{max_subspace_in, preserving_shifts, span_of};
use xorcc::suite::{run_code_algebra_suite, run_equality_suite, run_separation_suite, SuiteConfig};

/// Exact complexity computations and verifications for partial XOR
/// functions: parity-query counts, one-way message widths, covering-code
/// protocols, and the supporting cube machinery.
#[derive(Parser)]
#[command(name = "xorcc", version, max_term_width = 100)]
struct Cli {
    /// Worker threads for parallel legs (default: all cores). Outputs are
    /// identical regardless of the value.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Raise the dimension cap for 2^n-sized operations (default 24).
    #[arg(long, global = true)]
    cap_override: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FnInput {
    /// Read the function from a file in the xorcc-fn format.
    #[arg(long, conflicts_with_all = ["fk", "n", "k"])]
    input: Option<PathBuf>,

    /// Use the f_k family member instead of a file.
    #[arg(long, requires = "n", requires = "k")]
    fk: bool,

    #[arg(long)]
    n: Option<usize>,

    #[arg(long)]
    k: Option<usize>,
}

impl FnInput {
    fn load(&self) -> Result<PartialFn, Error> {
        match (&self.input, self.fk) {
            (Some(path), false) => {
                let text = std::fs::read_to_string(path)?;
                fileio::parse_partial_fn(&path.display().to_string(), &text)
            }
            (None, true) => make_fk(
                self.n.expect("clap enforces"),
                self.k.expect("clap enforces"),
            ),
            _ => Err(Error::Usage(
                "provide either --input FILE or --fk --n N --k K".to_string(),
            )),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Nadt,
    Oneway,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Hamming,
    Rm15,
    Repetition,
    Greedy,
    Cube,
}

#[derive(Subcommand)]
enum Command {
    /// Exact non-adaptive parity query count of a partial function.
    Nadt {
        #[command(flatten)]
        function: FnInput,
    },
    /// Exact adaptive parity tree depth (n <= 6).
    Dtp {
        #[command(flatten)]
        function: FnInput,
    },
    /// One-way communication complexity of the lifted XOR function.
    Owcc {
        #[command(flatten)]
        function: FnInput,
        /// Exact value via the conflict-graph coloring (n <= 8); the
        /// default.
        #[arg(long, conflicts_with = "bounds")]
        exact: bool,
        /// Print lower and upper bounds instead; no dimension cap.
        #[arg(long)]
        bounds: bool,
    },
    /// Preserving-shift summary: set size, span dimension, largest
    /// contained subspace.
    Shifts {
        #[command(flatten)]
        function: FnInput,
    },
    /// Synthesize or verify protocols.
    Protocol {
        #[command(subcommand)]
        action: ProtocolAction,
    },
    /// Build, verify, or combine covering codes.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Hypercube isoperimetry checks.
    Iso {
        #[command(subcommand)]
        action: IsoAction,
    },
    /// Sumset procedure runs and cardinality bound checks.
    Sumset {
        #[command(subcommand)]
        action: SumsetAction,
    },
    /// Walsh spectrum of a total function, one row per nonzero
    /// coefficient.
    Fourier {
        #[command(flatten)]
        function: FnInput,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Theorem verification suites; one TSV row per check.
    Suite {
        #[command(subcommand)]
        which: SuiteKind,
    },
}

#[derive(Subcommand)]
enum ProtocolAction {
    /// Synthesize an optimal protocol for the function.
    Synth {
        #[arg(long, value_enum)]
        model: Model,
        #[command(flatten)]
        function: FnInput,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a protocol file against a function; exit 1 on mismatch.
    Verify {
        #[arg(long, value_enum)]
        model: Model,
        #[command(flatten)]
        function: FnInput,
        #[arg(long)]
        protocol: PathBuf,
    },
}

#[derive(Subcommand)]
enum CodeAction {
    Build {
        #[arg(long, value_enum)]
        family: Family,
        /// Hamming order (family hamming).
        #[arg(long)]
        m: Option<usize>,
        /// Block length (families repetition, cube, greedy).
        #[arg(long)]
        n: Option<usize>,
        /// Covering radius (family greedy).
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    Verify {
        /// Code file; or use --family to verify a built-in construction.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        family: Option<Family>,
        /// Hamming order (with --family hamming).
        #[arg(long)]
        m: Option<usize>,
        /// Block length (with --family repetition, cube, greedy).
        #[arg(long)]
        n: Option<usize>,
        /// Covering radius (with --family greedy).
        #[arg(long)]
        radius: Option<u32>,
        /// Sampled check with this many random points; default is
        /// exhaustive below n=25 (RM(1,5) defaults to 10^6 samples).
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Exhaustive Walsh sweep over all 2^32 five-variable functions
        /// (multi-hour); reports the exact RM(1,5) covering radius.
        #[arg(long)]
        walsh_sweep: bool,
    },
    /// Direct sum of two code files.
    Sum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        input2: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IsoAction {
    /// Harper verification: exhaustive for m <= 4, sampled above.
    Harper {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Initial-segment boundary lemma sweep up to m-max.
    Segment {
        #[arg(long, default_value_t = 14)]
        m_max: usize,
    },
    /// Boundary sizes of the initial segment with a elements.
    Boundary {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a: u64,
    },
    /// Window check of the component-boundary lemma.
    LemmaChecks {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SumsetAction {
    /// Run the transfer procedure on random spanning instances, tracing
    /// every step and asserting its invariants.
    Run {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cardinality bound: exhaustive at n=3, sampled otherwise.
    BoundCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SuiteKind {
    Equality {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    Separation {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    Codes {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => {
            std::fs::write(p, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Emit a report; exit code 1 when any row failed.
fn finish_report(report: Report, output: &Option<PathBuf>) -> Result<ExitCode, Error> {
    write_or_print(output, &report.to_tsv())?;
    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        for row in report.failures() {
            eprintln!("FAIL {} [{}]: {}", row.id, row.params, row.detail);
        }
        Ok(ExitCode::from(1))
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    if let Some(cap) = cli.cap_override {
        xorcc::gf2::set_dim_cap(cap);
        xorcc::owcc::set_chromatic_cap(cap.min(10));
    }

    match cli.command {
        Command::Nadt { function } => {
            let f = function.load()?;
            println!("{}", nadt_complexity(&f));
            Ok(ExitCode::SUCCESS)
        }
        Command::Dtp { function } => {
            let f = function.load()?;
            println!("{}", dtp_exact(&f)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Owcc {
            function,
            exact: _,
            bounds,
        } => {
            let f = function.load()?;
            if bounds {
                let (lo, hi) = owcc_bounds(&f);
                println!("{lo}\t{hi}");
            } else {
                println!("{}", owcc_exact(&f)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Shifts { function } => {
            let f = function.load()?;
            let d = preserving_shifts(&f);
            println!(
                "preserving\t{}\nspan_dim\t{}\nmax_subspace_dim\t{}",
                d.len(),
                span_of(&d).dim(),
                max_subspace_in(&d).dim()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Protocol { action } => match action {
            ProtocolAction::Synth {
                model,
                function,
                output,
            } => {
                let f = function.load()?;
                match model {
                    Model::Nadt => {
                        let l = max_subspace_in(&preserving_shifts(&f));
                        let p = synthesize_nadt(&f, &l)?;
                        write_or_print(&output, &fileio::emit_nadt_protocol(f.n(), &p))?;
                    }
                    Model::Oneway => {
                        let (chi, labels) = chromatic_coloring_exact(&conflict_graph(&f))?;
                        let t = xorcc::owcc::ceil_log2(chi);
                        let h = MessageMap::new(f.n(), t, labels)?;
                        let p = synthesize_oneway(&f, &h)?;
                        write_or_print(&output, &fileio::emit_oneway_protocol(&p))?;
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            ProtocolAction::Verify {
                model,
                function,
                protocol,
            } => {
                let f = function.load()?;
                let text = std::fs::read_to_string(&protocol)?;
                let path = protocol.display().to_string();
                let ok = match model {
                    Model::Nadt => {
                        let (n, p) = fileio::parse_nadt_protocol(&path, &text)?;
                        if n != f.n() {
                            return Err(Error::DimensionMismatch(format!(
                                "protocol is for n={n}, function has n={}",
                                f.n()
                            )));
                        }
                        verify_nadt(&f, &p)?
                    }
                    Model::Oneway => {
                        let p = fileio::parse_oneway_protocol(&path, &text)?;
                        verify_oneway(&f, &p)?
                    }
                };
                if ok {
                    println!("valid");
                    Ok(ExitCode::SUCCESS)
                } else {
                    println!("INVALID");
                    Ok(ExitCode::from(1))
                }
            }
        },
        Command::Code { action } => match action {
            CodeAction::Build {
                family,
                m,
                n,
                radius,
                output,
            } => {
                let code = build_code(family, m, n, radius)?;
                write_or_print(&output, &fileio::emit_covering_code(&code))?;
                Ok(ExitCode::SUCCESS)
            }
            CodeAction::Verify {
                input,
                family,
                m,
                n,
                radius,
                samples,
                seed,
                walsh_sweep,
            } => {
                if walsh_sweep {
                    let radius = rm15_walsh_certificate_exhaustive(|done, worst| {
                        eprintln!("swept {done} functions, covering radius so far {worst}");
                    });
                    println!("rm15_exact_covering_radius\t{radius}");
                    return Ok(if radius <= 12 {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    });
                }
                let code = match (&input, family) {
                    (Some(path), _) => {
                        let text = std::fs::read_to_string(path)?;
                        fileio::parse_covering_code(&path.display().to_string(), &text)?
                    }
                    (None, Some(family)) => build_code(family, m, n, radius)?,
                    (None, None) => {
                        return Err(Error::Usage(
                            "provide --input FILE or --family NAME".to_string(),
                        ))
                    }
                };
                let is_rm15 = code.n() == 32 && code.len() == 64;
                let report = match (samples, is_rm15) {
                    (Some(count), true) => rm15_sampled_radius_check(count, seed)?,
                    (Some(count), false) => {
                        verify_covering(&code, VerifyMode::Sampled { count, seed })?
                    }
                    // the RM(1,5) exhaustive certificate is the opt-in
                    // Walsh sweep; the default is a million samples
                    (None, true) => rm15_sampled_radius_check(1_000_000, seed)?,
                    (None, false) => verify_covering(&code, VerifyMode::Exhaustive)?,
                };
                println!(
                    "covered\t{}\nworst_distance\t{}\nexact_radius\t{}\npoints\t{}",
                    report.covered_within_claim,
                    report.worst_distance_seen,
                    report
                        .exact_radius
                        .map_or("unknown".to_string(), |r| r.to_string()),
                    report.points_checked
                );
                Ok(if report.covered_within_claim {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
            CodeAction::Sum {
                input,
                input2,
                output,
            } => {
                let a = fileio::parse_covering_code(
                    &input.display().to_string(),
                    &std::fs::read_to_string(&input)?,
                )?;
                let b = fileio::parse_covering_code(
                    &input2.display().to_string(),
                    &std::fs::read_to_string(&input2)?,
                )?;
                let s = direct_sum(&a, &b)?;
                write_or_print(&output, &fileio::emit_covering_code(&s))?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Iso { action } => match action {
            IsoAction::Harper { m, samples, seed } => {
                let report = match samples {
                    None if m <= 4 => harper_check(m)?,
                    None => harper_check_sampled(m, 100_000, seed)?,
                    Some(s) => harper_check_sampled(m, s, seed)?,
                };
                println!(
                    "m\t{}\nsubsets\t{}\nviolations\t{}",
                    report.m, report.subsets_checked, report.violations
                );
                Ok(if report.violations == 0 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
            IsoAction::Segment { m_max } => {
                let r = gamma_prime_segment_checks(m_max)?;
                let mut report = Report::new();
                for (id, ok) in [
                    ("iso/ball-boundary-identity", r.ball_identity_ok),
                    ("iso/segment-size-monotone", r.monotone_size_ok),
                    ("iso/segment-dimension-monotone", r.monotone_dimension_ok),
                    ("iso/bridging-radius-exists", r.bridging_radius_ok),
                ] {
                    report.push(CheckRow::new(
                        id,
                        format!("m_max={m_max}"),
                        if ok { Verdict::Pass } else { Verdict::Fail },
                        format!("checks={}", r.checks),
                    ));
                }
                finish_report(report, &None)
            }
            IsoAction::Boundary { m, a } => {
                let seg = initial_segment(m, a)?;
                let (g, gp) = boundary(&seg);
                println!("gamma\t{}\ngamma_prime\t{}", g.len(), gp.len());
                Ok(ExitCode::SUCCESS)
            }
            IsoAction::LemmaChecks {
                m,
                k,
                samples,
                seed,
            } => {
                let r = isoperim_final_check(m, k, samples.map(|s| (s, seed)))?;
                match r.window {
                    None => println!("window\tempty (vacuous pass)"),
                    Some((lo, hi)) => println!("window\t{lo}..={hi}"),
                }
                println!("sets\t{}\nviolations\t{}", r.sets_checked, r.violations);
                Ok(if r.violations == 0 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
        Command::Sumset { action } => match action {
            SumsetAction::Run {
                n,
                seed,
                samples,
                output,
            } => {
                use rand::rngs::StdRng;
                use rand::{Rng, SeedableRng};
                let mut rng = StdRng::seed_from_u64(seed);
                let mut dump = String::new();
                let mut runs = 0u64;
                while runs < samples {
                    let a = VertexSet::new(CubeMask::from_fn(n, |_| rng.gen_bool(0.4))?);
                    let b = VertexSet::new(CubeMask::from_fn(n, |_| rng.gen_bool(0.3))?);
                    match xorcc::sumset::run_algorithm1(&a, &b) {
                        Ok(trace) => {
                            runs += 1;
                            dump.push_str(&format!("run {runs}\n"));
                            dump.push_str(&trace.dump());
                        }
                        Err(Error::Precondition(_)) => continue,
                        Err(e) => return Err(e),
                    }
                }
                write_or_print(&output, &dump)?;
                Ok(ExitCode::SUCCESS)
            }
            SumsetAction::BoundCheck { n, samples, seed } => {
                use rand::rngs::StdRng;
                use rand::{Rng, SeedableRng};
                use xorcc::sumset::{sumset_bound_check, BoundOutcome};
                let mut checked = 0u64;
                let mut skipped = 0u64;
                let mut violations = 0u64;
                if n == 3 {
                    for a_bits in 1..256u64 {
                        for b_bits in 1..256u64 {
                            let a = vertex_set_from_bits(3, a_bits)?;
                            let b = vertex_set_from_bits(3, b_bits)?;
                            match sumset_bound_check(&a, &b)? {
                                BoundOutcome::Checked { holds, .. } => {
                                    checked += 1;
                                    if !holds {
                                        violations += 1;
                                    }
                                }
                                BoundOutcome::Skipped { .. } => skipped += 1,
                            }
                        }
                    }
                } else {
                    let mut rng = StdRng::seed_from_u64(seed);
                    while checked < samples {
                        let a = VertexSet::new(CubeMask::from_fn(n, |_| rng.gen_bool(0.5))?);
                        let b = VertexSet::new(CubeMask::from_fn(n, |_| rng.gen_bool(0.5))?);
                        match sumset_bound_check(&a, &b)? {
                            BoundOutcome::Checked { holds, .. } => {
                                checked += 1;
                                if !holds {
                                    violations += 1;
                                }
                            }
                            BoundOutcome::Skipped { .. } => skipped += 1,
                        }
                    }
                }
                println!("checked\t{checked}\nskipped\t{skipped}\nviolations\t{violations}");
                Ok(if violations == 0 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
        Command::Fourier { function, output } => {
            let f = function.load()?;
            if f.undefined_count() != 0 {
                return Err(Error::Usage(
                    "the Fourier transform applies to total functions".to_string(),
                ));
            }
            let spec = walsh_spectrum(f.n(), f.value())?;
            let mut out = String::from("s\tnumerator\tdenominator\n");
            for s in 0..1u64 << f.n() {
                let num = spec.numerator(s);
                if num != 0 {
                    out.push_str(&format!("{s}\t{num}\t{}\n", 1u64 << f.n()));
                }
            }
            write_or_print(&output, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite { which } => match which {
            SuiteKind::Equality {
                n_max,
                samples,
                seed,
                output,
            } => {
                let cfg = SuiteConfig {
                    n_max,
                    samples,
                    seed,
                };
                finish_report(run_equality_suite(&cfg)?, &output)
            }
            SuiteKind::Separation {
                samples,
                seed,
                output,
            } => finish_report(run_separation_suite(samples, seed)?, &output),
            SuiteKind::Codes { output } => finish_report(run_code_algebra_suite()?, &output),
        },
    }
}

fn vertex_set_from_bits(m: usize, bits: u64) -> Result<VertexSet, Error> {
    let idx: Vec<u64> = (0..1u64 << m).filter(|&i| bits >> i & 1 == 1).collect();
    VertexSet::from_indices(m, &idx)
}

fn build_code(
    family: Family,
    m: Option<usize>,
    n: Option<usize>,
    radius: Option<u32>,
) -> Result<CoveringCode, Error> {
    match family {
        Family::Hamming => hamming_code(m.ok_or_else(|| Error::Usage("--m required".into()))?),
        Family::Rm15 => Ok(reed_muller_1_5()),
        Family::Repetition => {
            repetition_code(n.ok_or_else(|| Error::Usage("--n required".into()))?)
        }
        Family::Cube => full_cube_code(n.ok_or_else(|| Error::Usage("--n required".into()))?),
        Family::Greedy => greedy_covering(
            n.ok_or_else(|| Error::Usage("--n required".into()))?,
            radius.ok_or_else(|| Error::Usage("--radius required".into()))?,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // a bounded pool keeps runs reproducible under any --jobs value
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
