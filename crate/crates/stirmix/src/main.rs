use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use stirmix::harness::Grid;
use stirmix::report::VerificationReport;
use stirmix::table::{self, Layout, Span, TableSpec};
use stirmix_core::bounded::{bell_le, stirling_bounded};
use stirmix_core::egf::{count_from_series, egf_mixed, EgfFamily};
use stirmix_core::exact::{bell, r_stirling};
use stirmix_core::mixed::{mixed_bell, mixed_count, mixed_count_relaxed, s_mixed};
use stirmix_core::oracle::{oracle_count, oracle_visit, DEFAULT_CAP};
use stirmix_core::{CellSpec, MixedAlgorithm, MixedParams, OracleQuery, SizeBand};

#[derive(Parser)]
#[command(
    name = "stirmix",
    version,
    about = "Mixed, restricted and associated Stirling numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct BandArgs {
    /// Smallest allowed block size.
    #[arg(long = "min")]
    min: Option<usize>,
    /// Largest allowed block size.
    #[arg(long = "max")]
    max: Option<usize>,
}

impl BandArgs {
    fn band(self) -> Result<SizeBand, String> {
        SizeBand::new(self.min.unwrap_or(1), self.max).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a single value.
    Compute {
        #[arg(long, value_enum)]
        family: ComputeFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        band: BandArgs,
        #[arg(long, value_enum, default_value = "closed-form")]
        algorithm: Algorithm,
    },
    /// Print a grid of values over n and k (fixed r) or n and r (fixed k).
    Table {
        #[arg(long, value_enum)]
        family: TableFamily,
        /// Rows, e.g. `3..7`.
        #[arg(long)]
        n: Span,
        /// Fixed k (with a range for `--r`), or a range of k.
        #[arg(long)]
        k: Span,
        /// Fixed r (with a range for `--k`), or a range of r.
        #[arg(long)]
        r: Option<Span>,
        #[command(flatten)]
        band: BandArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
        /// Emit zero entries instead of leaving them out.
        #[arg(long)]
        include_zeros: bool,
    },
    /// Print the coefficients of an exponential generating function.
    Egf {
        #[arg(long, value_enum)]
        family: EgfKind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// Cell counts per label, e.g. `2,1`.
        #[arg(long, value_delimiter = ',')]
        cells: Vec<usize>,
        #[command(flatten)]
        band: BandArgs,
        /// Highest power of x kept.
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Print n! [x^n] instead of the rational coefficients.
        #[arg(long)]
        counts: bool,
    },
    /// Count or list configurations by brute force.
    Oracle {
        #[arg(long)]
        n: usize,
        /// Cell counts per label, e.g. `2,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        cells: Vec<usize>,
        #[command(flatten)]
        band: BandArgs,
        /// Cells of the first label may be empty.
        #[arg(long)]
        label1_empty_ok: bool,
        /// Every cell may be empty.
        #[arg(long, conflicts_with = "label1_empty_ok")]
        all_empty_ok: bool,
        /// Elements 1..=p must lie in distinct blocks.
        #[arg(long, default_value_t = 0)]
        distinct_prefix: usize,
        /// Print every configuration, then the count.
        #[arg(long)]
        list: bool,
        /// Largest n the oracle accepts.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Check every registered identity over a parameter grid.
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        #[arg(long, default_value_t = 5)]
        max_r: usize,
        /// Upper block-size bounds; `inf` for none.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,inf")]
        upper: Vec<Bound>,
        /// Lower block-size bounds.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        lower: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        oracle_cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        /// Exit non-zero if a case outside the expected list is flagged.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeFamily {
    Stirling,
    Mixed,
    Bell,
    MixedBell,
    RStirling,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    ClosedForm,
    Convolution,
    ElementRecurrence,
    ThreeCase,
    Egf,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFamily {
    Mixed,
    Stirling,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EgfKind {
    Stirling,
    Mixed,
    Cells,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy)]
struct Bound(Option<usize>);

impl std::str::FromStr for Bound {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(Bound(None));
        }
        s.parse()
            .map(|m| Bound(Some(m)))
            .map_err(|e| format!("`{s}`: {e}"))
    }
}

// Failures caused by the arguments: reported with usage, exit 2.
fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command()
        .error(ErrorKind::ArgumentConflict, msg)
        .exit()
}

fn need(v: Option<usize>, flag: &str) -> usize {
    v.unwrap_or_else(|| usage_error(format!("{flag} is required here")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute {
            family,
            n,
            k,
            r,
            band,
            algorithm,
        } => {
            let band = band.band().unwrap_or_else(|e| usage_error(e));
            let value = match family {
                ComputeFamily::Stirling => stirling_bounded(n, need(k, "--k"), band),
                ComputeFamily::Bell => match (band.lo(), band.hi()) {
                    (1, None) => bell(n),
                    (1, Some(m)) => bell_le(n, m),
                    _ => usage_error("bell supports --max only"),
                },
                ComputeFamily::MixedBell => {
                    mixed_bell(n, need(k, "--k"), need(r, "--r")).unwrap_or_else(|e| usage_error(e))
                }
                ComputeFamily::RStirling => {
                    r_stirling(n, need(k, "--k"), need(r, "--r")).unwrap_or_else(|e| usage_error(e))
                }
                ComputeFamily::Mixed => {
                    let (k, r) = (need(k, "--k"), need(r, "--r"));
                    let p = MixedParams::new(n, k, r, band).unwrap_or_else(|e| usage_error(e));
                    let alg = match algorithm {
                        Algorithm::ClosedForm => Some(MixedAlgorithm::ClosedForm),
                        Algorithm::Convolution => Some(MixedAlgorithm::Convolution),
                        Algorithm::ElementRecurrence => Some(MixedAlgorithm::ElementRecurrence),
                        Algorithm::ThreeCase => Some(MixedAlgorithm::ThreeCase),
                        Algorithm::Egf | Algorithm::Oracle => None,
                    };
                    match (alg, algorithm) {
                        (Some(alg), _) => s_mixed(p, alg),
                        (None, Algorithm::Egf) => egf_mixed(&EgfFamily::Mixed { k, r }, band, n)
                            .and_then(|s| count_from_series(&s, n))
                            .unwrap_or_else(|e| usage_error(e)),
                        (None, _) => {
                            let spec = CellSpec::mixed(k, r).unwrap_or_else(|e| usage_error(e));
                            oracle_count(&OracleQuery::new(n, spec).band(band))
                                .unwrap_or_else(|e| usage_error(e))
                        }
                    }
                }
            };
            println!("{value}");
        }
        Command::Table {
            family,
            n,
            k,
            r,
            band,
            format,
            include_zeros,
        } => {
            let single = |s: &Span| (s.0.start() == s.0.end()).then(|| *s.0.start());
            let (layout, columns) = match (family, r) {
                (TableFamily::Stirling, None) => (Layout::Stirling, k),
                (TableFamily::Stirling, Some(_)) => {
                    usage_error("--r does not apply to stirling tables")
                }
                (TableFamily::Mixed, None) => usage_error("mixed tables need --r"),
                (TableFamily::Mixed, Some(r)) => match (single(&r), single(&k)) {
                    (Some(r), _) => (Layout::MixedFixedR(r), k),
                    (None, Some(k)) => (Layout::MixedFixedK(k), r),
                    (None, None) => usage_error("fix one of --k or --r to a single value"),
                },
            };
            let spec = TableSpec {
                layout,
                rows: n,
                columns,
                band: band.band().unwrap_or_else(|e| usage_error(e)),
                include_zeros,
            };
            let entries = table::build(&spec).unwrap_or_else(|e| usage_error(e));
            match format {
                TableFormat::Csv => print!("{}", table::render_csv(&spec, &entries)),
                TableFormat::Text => print!("{}", table::render_text(&spec, &entries)),
            }
        }
        Command::Egf {
            family,
            k,
            r,
            cells,
            band,
            order,
            counts,
        } => {
            let band = band.band().unwrap_or_else(|e| usage_error(e));
            let family = match family {
                EgfKind::Stirling => EgfFamily::Stirling { k: need(k, "--k") },
                EgfKind::Mixed => EgfFamily::Mixed {
                    k: need(k, "--k"),
                    r: need(r, "--r"),
                },
                EgfKind::Cells if cells.is_empty() => usage_error("--cells is required here"),
                EgfKind::Cells => EgfFamily::Cells(cells),
            };
            let series = egf_mixed(&family, band, order).unwrap_or_else(|e| usage_error(e));
            if counts {
                for n in 0..=order {
                    match count_from_series(&series, n) {
                        Ok(v) => println!("{v}"),
                        Err(e) => {
                            eprintln!("stirmix: {e}");
                            return ExitCode::FAILURE;
                        }
                    }
                }
            } else {
                print!("{series}");
            }
        }
        Command::Oracle {
            n,
            cells,
            band,
            label1_empty_ok,
            all_empty_ok,
            distinct_prefix,
            list,
            cap,
        } => {
            let band = band.band().unwrap_or_else(|e| usage_error(e));
            let spec = if all_empty_ok {
                CellSpec::relaxed(cells)
            } else {
                CellSpec::strict(cells).map(|s| if label1_empty_ok { s.allow_empty(0) } else { s })
            }
            .unwrap_or_else(|e| usage_error(e));
            let q = OracleQuery::new(n, spec.clone())
                .band(band)
                .distinct_prefix(distinct_prefix)
                .cap(cap);
            if list {
                let mut seen = 0u64;
                if let Err(e) = oracle_visit(&q, |c| {
                    seen += 1;
                    println!("{c}");
                }) {
                    usage_error(e);
                }
                println!("{seen}");
            } else {
                let count = oracle_count(&q).unwrap_or_else(|e| usage_error(e));
                // Cross-check against the formulas where they apply.
                let formula = match distinct_prefix {
                    0 if spec.is_strict() => mixed_count(n, &spec, band).ok(),
                    0 if spec.may_be_empty().iter().all(|&e| e) => {
                        Some(mixed_count_relaxed(n, &spec, band))
                    }
                    _ => None,
                };
                if formula.is_some_and(|f| f != count) {
                    eprintln!("stirmix: enumeration and formula disagree");
                    return ExitCode::FAILURE;
                }
                println!("{count}");
            }
        }
        Command::Verify {
            max_n,
            max_k,
            max_r,
            upper,
            lower,
            oracle_cap,
            format,
            output,
            strict,
        } => {
            if max_n > oracle_cap {
                usage_error(format!("--max-n {max_n} exceeds --oracle-cap {oracle_cap}"));
            }
            if lower.contains(&0) || upper.iter().any(|b| b.0 == Some(0)) {
                usage_error("block-size bounds must be positive");
            }
            let grid = Grid {
                max_n,
                max_k,
                max_r,
                upper_bounds: upper.iter().map(|b| b.0).collect(),
                lower_bounds: lower,
                oracle_cap,
            };
            let report = VerificationReport::run(&grid);
            let rendered = match format {
                ReportFormat::Json => report.to_json() + "\n",
                ReportFormat::Text => report.to_text(),
            };
            match output {
                Some(path) => {
                    if let Err(e) = fs::write(&path, rendered) {
                        eprintln!("stirmix: cannot write {}: {e}", path.display());
                        return ExitCode::FAILURE;
                    }
                }
                None => print!("{rendered}"),
            }
            let unexpected = report.unexpected_failures();
            if strict && !unexpected.is_empty() {
                for c in unexpected {
                    eprintln!("stirmix: unexpected failure in {}", c.id);
                }
                return ExitCode::FAILURE;
            }
        }
    }
    ExitCode::SUCCESS
}
