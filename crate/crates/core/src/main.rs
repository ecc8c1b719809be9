use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use affine_shuffles::cellini::{affine_shuffle, Family};
use affine_shuffles::harness::{tv_table, verify_dmp_with_fault, verify_group, Group, Profile};
use affine_shuffles::perm::{GroupAlgebraElement, Permutation, SignedPermutation, WeylElement};
use affine_shuffles::rational::{to_decimal_string, to_fraction_string, Rational};
use affine_shuffles::report::{to_csv, to_json};
use affine_shuffles::shuffles::{affine_a_2shuffle_sample, affine_c_shuffle_sample, riffle_sample};
use affine_shuffles::unimodal::{enumerate_unimodal, gannon_histogram};

#[derive(Parser)]
#[command(
    name = "affine-shuffles",
    version,
    about = "Exact affine shuffle measures and their checks"
)]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Render rationals as decimals with this many digits.
    #[arg(long, global = true)]
    decimal: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Dmp,
    Cellini,
    Tv,
    Gannon,
    Reciprocity,
    Reiner,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Riffle,
    AffineA,
    AffineC,
}

#[derive(Subcommand)]
enum Command {
    /// Print the affine k-shuffle measure, or one coefficient of it.
    Measure {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        /// One-line element, e.g. 3,1,-2.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Run a group of checks; exits nonzero if any fails.
    Verify {
        #[arg(value_enum)]
        group: GroupArg,
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
        /// Also run type-A and type-C class checks with one mass perturbed;
        /// they must fail.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Draw seeded samples, one element per line.
    Sample {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// List unimodal permutations, or the histogram of their cycle shapes.
    Unimodal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        histogram: bool,
    },
    /// Table of total variation distances to uniform for even k.
    Tv {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 6, 8])]
        k: Vec<u32>,
    },
}

enum Format {
    Text,
    Json,
    Csv,
}

struct Ctx {
    format: Format,
    decimal: Option<usize>,
}

impl Ctx {
    fn num(&self, r: &Rational) -> String {
        match self.decimal {
            Some(d) => to_decimal_string(r, d),
            None => to_fraction_string(r),
        }
    }
}

fn csv_rows<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record(&r).map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn render_measure<E: WeylElement + std::str::FromStr<Err = affine_shuffles::Error>>(
    ctx: &Ctx,
    family: Family,
    n: usize,
    k: u32,
    element: Option<&str>,
) -> Result<String, String> {
    let x: GroupAlgebraElement<E> = affine_shuffle(n, k);
    let terms: Vec<(E, Rational)> = match element {
        Some(s) => {
            let e: E = s.parse().map_err(|e: affine_shuffles::Error| e.to_string())?;
            if e.degree() != n {
                return Err(format!("element {e} has degree {}, expected {n}", e.degree()));
            }
            let c = x.coefficient(&e);
            vec![(e, c)]
        }
        None => x.terms().map(|(e, c)| (e.clone(), c.clone())).collect(),
    };
    Ok(match ctx.format {
        Format::Json => {
            let rows: Vec<_> = terms.iter().map(|(e, c)| json!([e.to_string(), ctx.num(c)])).collect();
            let v = json!({ "family": family.to_string(), "n": n, "k": k, "terms": rows });
            serde_json::to_string_pretty(&v).map_err(|e| e.to_string())? + "\n"
        }
        Format::Csv => csv_rows(
            ["element", "coefficient"],
            terms.iter().map(|(e, c)| [e.to_string(), ctx.num(c)]),
        )?,
        Format::Text => terms.iter().map(|(e, c)| format!("{e}\t{}\n", ctx.num(c))).collect(),
    })
}

fn run(cli: Cli) -> Result<(String, bool), String> {
    let ctx = Ctx {
        format: if cli.json {
            Format::Json
        } else if cli.csv {
            Format::Csv
        } else {
            Format::Text
        },
        decimal: cli.decimal,
    };
    match cli.command {
        Command::Measure { family, n, k, element } => {
            let out = match family {
                FamilyArg::A => render_measure::<Permutation>(&ctx, Family::A, n, k, element.as_deref())?,
                FamilyArg::C => render_measure::<SignedPermutation>(&ctx, Family::C, n, k, element.as_deref())?,
            };
            Ok((out, true))
        }
        Command::Verify {
            group,
            profile,
            inject_fault,
        } => {
            let group = match group {
                GroupArg::Dmp => Group::Dmp,
                GroupArg::Cellini => Group::Cellini,
                GroupArg::Tv => Group::Tv,
                GroupArg::Gannon => Group::Gannon,
                GroupArg::Reciprocity => Group::Reciprocity,
                GroupArg::Reiner => Group::Reiner,
                GroupArg::All => Group::All,
            };
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            let mut reports = verify_group(group, profile);
            if inject_fault {
                reports.push(verify_dmp_with_fault(Family::A, 3, 3));
                reports.push(verify_dmp_with_fault(Family::C, 2, 3));
            }
            let ok = reports.iter().all(|r| r.passed());
            let out = match ctx.format {
                Format::Json => to_json(&reports).map_err(|e| e.to_string())? + "\n",
                Format::Csv => to_csv(&reports).map_err(|e| e.to_string())?,
                Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
            };
            Ok((out, ok))
        }
        Command::Sample {
            model,
            n,
            k,
            seed,
            count,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<String> = match model {
                Model::Riffle => {
                    if k == 0 {
                        return Err("riffle needs k >= 1".into());
                    }
                    (0..count).map(|_| riffle_sample(n, k, &mut rng).to_string()).collect()
                }
                Model::AffineA => {
                    if k != 2 {
                        return Err("the affine type-A model is defined for k = 2 only".into());
                    }
                    (0..count)
                        .map(|_| affine_a_2shuffle_sample(n, &mut rng).to_string())
                        .collect()
                }
                Model::AffineC => {
                    if k == 0 {
                        return Err("affine-c needs k >= 1".into());
                    }
                    (0..count)
                        .map(|_| affine_c_shuffle_sample(n, k, &mut rng).to_string())
                        .collect()
                }
            };
            let out = match ctx.format {
                Format::Json => serde_json::to_string(&draws).map_err(|e| e.to_string())? + "\n",
                _ => draws.iter().map(|d| format!("{d}\n")).collect(),
            };
            Ok((out, true))
        }
        Command::Unimodal { n, histogram } => {
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let out = if histogram {
                let rows: Vec<(String, u64)> = gannon_histogram(n)
                    .into_iter()
                    .map(|(ms, c)| (ms.iter().map(ToString::to_string).collect::<String>(), c))
                    .collect();
                match ctx.format {
                    Format::Json => {
                        let v: Vec<_> = rows.iter().map(|(s, c)| json!({ "shapes": s, "count": c })).collect();
                        serde_json::to_string_pretty(&v).map_err(|e| e.to_string())? + "\n"
                    }
                    Format::Csv => csv_rows(
                        ["shapes", "count"],
                        rows.iter().map(|(s, c)| [s.clone(), c.to_string()]),
                    )?,
                    Format::Text => rows.iter().map(|(s, c)| format!("{s}\t{c}\n")).collect(),
                }
            } else {
                let ws: Vec<String> = enumerate_unimodal(n).iter().map(ToString::to_string).collect();
                match ctx.format {
                    Format::Json => serde_json::to_string(&ws).map_err(|e| e.to_string())? + "\n",
                    _ => ws.iter().map(|w| format!("{w}\n")).collect(),
                }
            };
            Ok((out, true))
        }
        Command::Tv { max_n, k } => {
            let rows = tv_table(max_n, &k).map_err(|e| e.to_string())?;
            let out = match ctx.format {
                Format::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(n, k, tv)| json!({ "n": n, "k": k, "tv": ctx.num(tv) }))
                        .collect();
                    serde_json::to_string_pretty(&v).map_err(|e| e.to_string())? + "\n"
                }
                Format::Csv => csv_rows(
                    ["n", "k", "tv"],
                    rows.iter()
                        .map(|(n, k, tv)| [n.to_string(), k.to_string(), ctx.num(tv)]),
                )?,
                Format::Text => rows
                    .iter()
                    .map(|(n, k, tv)| format!("n={n} k={k} tv={}\n", ctx.num(tv)))
                    .collect(),
            };
            Ok((out, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    let (text, ok) = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match out_path {
        Some(p) => File::create(&p).and_then(|mut f| f.write_all(text.as_bytes())),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
