//! `altsub`: subdivision rules for prime alternating links.
//!
//! Exit status is 0 on success, 2 when the diagram is rejected by
//! validation and 1 on any other failure. Failures print one line starting
//! with `error:` on stderr.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use altsub_core::layout::{check_crossings, tutte_layout, Shape};
use altsub_core::recurrence::{fit_recurrence, to_rationals, DEFAULT_ORDER_BUDGET};
use altsub_core::render::{emit_svg, emit_tiling_json, load_tiling_json, StyleSpec};
use altsub_core::rule::{
    derive_replacement_rule_with, emit_rule_json, to_subdivision_rule, verify_edge_compatibility,
    SubdivisionRule, DEFAULT_STATE_BUDGET,
};
use altsub_core::tiling::{
    census_by_counts, census_series, collapse_merged_edges, initial_tiling, maps_isomorphic,
    parse_seed, replacement_evolve, subdivide, CensusSeries, Tiling,
};
use altsub_core::{build_planar_map, checkerboard_with, parse_pd_code, truncate, validate, TruncatedComplex};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "altsub", version, about = "Subdivision rules for prime alternating link complements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a PD code is a reduced, prime, non-split alternating diagram.
    Validate(InputArgs),
    /// Derive the subdivision rule and print it as JSON.
    BuildRule {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subdivide a seed and write the tiling, its census or a drawing.
    Subdivide {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        stage: StageArgs,
        /// Check the result against the directly grown cover.
        #[arg(long)]
        oracle_check: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG drawing here.
        #[arg(long)]
        render: Option<PathBuf>,
        /// Also write the census CSV here.
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Tile counts per stage, optionally with a fitted recurrence.
    Census {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        stage: StageArgs,
        /// Fit a recurrence to the total counts and write it as JSON.
        #[arg(long)]
        recurrence: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ORDER_BUDGET)]
        order_budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a stage, from a PD code or from a saved tiling JSON.
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        stage: StageArgs,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        /// Face to use as the outer face.
        #[arg(long)]
        outer: Option<u32>,
        #[arg(long, value_enum, default_value_t = ShapeArg::Polygon)]
        shape: ShapeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// PD code file.
    input: PathBuf,
    /// Swap the clockwise and counterclockwise classes.
    #[arg(long)]
    flip_orientation: bool,
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    type_budget: usize,
}

#[derive(Args)]
struct StageArgs {
    /// `sphere`, a type name or a type id.
    #[arg(long, default_value = "sphere")]
    seed: String,
    #[arg(long, default_value_t = 0)]
    depth: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Svg,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Polygon,
    Circle,
}

enum Failure {
    Rejected(String),
    Error(String),
}

fn err(e: impl Display) -> Failure {
    Failure::Error(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Error(format!("cannot read {}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Error(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn complex(input: &InputArgs) -> Result<TruncatedComplex, Failure> {
    let text = read(&input.input)?;
    let diagram = parse_pd_code(&text).map_err(err)?;
    let map = build_planar_map(&diagram).map_err(err)?;
    let report = validate(&diagram, &map);
    if !report.admissible() {
        return Err(Failure::Rejected(report.to_string()));
    }
    let orient = checkerboard_with(&map, input.flip_orientation).map_err(err)?;
    truncate(&map, &orient).map_err(err)
}

fn rule(input: &InputArgs) -> Result<(TruncatedComplex, SubdivisionRule), Failure> {
    let c = complex(input)?;
    let replacement = derive_replacement_rule_with(&c, input.type_budget).map_err(err)?;
    let rule = to_subdivision_rule(&replacement).map_err(err)?;
    let compat = verify_edge_compatibility(&rule);
    if compat.mismatches > 0 {
        return Err(Failure::Error(format!("{} incompatible edge adjacencies", compat.mismatches)));
    }
    Ok((c, rule))
}

fn staged(rule: &SubdivisionRule, stage: &StageArgs) -> Result<Tiling, Failure> {
    let seed = parse_seed(rule, &stage.seed).map_err(err)?;
    let mut t = initial_tiling(rule, seed).map_err(err)?;
    for _ in 0..stage.depth {
        t = subdivide(rule, &t).map_err(err)?;
    }
    Ok(t)
}

fn svg(t: &Tiling, outer: Option<u32>, shape: Shape) -> Result<String, Failure> {
    let l = tutte_layout(t, outer, shape).map_err(err)?;
    let report = check_crossings(&t.map, &l);
    if !report.is_crossing_free() {
        return Err(Failure::Error(format!("layout is not crossing-free: {report:?}")));
    }
    Ok(emit_svg(t, &l, &StyleSpec::default()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate(input) => {
            let text = read(&input.input)?;
            let diagram = parse_pd_code(&text).map_err(err)?;
            let map = build_planar_map(&diagram).map_err(err)?;
            let report = validate(&diagram, &map);
            if report.admissible() {
                print!("{report}");
                Ok(())
            } else {
                Err(Failure::Rejected(report.to_string()))
            }
        }
        Command::BuildRule { input, out } => {
            let (_, rule) = rule(&input)?;
            write(out.as_deref(), &emit_rule_json(&rule))
        }
        Command::Subdivide { input, stage, oracle_check, format, out, render, census } => {
            let (c, rule) = rule(&input)?;
            let t = staged(&rule, &stage)?;
            if oracle_check {
                if t.outer.is_some() {
                    return Err(Failure::Error("--oracle-check needs the sphere seed".into()));
                }
                let collapsed = collapse_merged_edges(&rule, &t).map_err(err)?;
                let oracle = replacement_evolve(&c, stage.depth).map_err(err)?;
                if !maps_isomorphic(&collapsed, &oracle).isomorphic {
                    return Err(Failure::Error(format!("oracle mismatch at depth {}", stage.depth)));
                }
                eprintln!("oracle: isomorphic at depth {}", stage.depth);
            }
            let series = census_series(&rule, t.seed, stage.depth).map_err(err)?;
            if let Some(p) = &render {
                write(Some(p), &svg(&t, None, Shape::Polygon)?)?;
            }
            if let Some(p) = &census {
                write(Some(p), &series.to_csv())?;
            }
            let text = match format {
                Format::Csv => series.to_csv(),
                Format::Json => emit_tiling_json(&t),
                Format::Svg => svg(&t, None, Shape::Polygon)?,
            };
            write(out.as_deref(), &text)
        }
        Command::Census { input, stage, recurrence, order_budget, out } => {
            let (_, rule) = rule(&input)?;
            let seed = parse_seed(&rule, &stage.seed).map_err(err)?;
            let series: CensusSeries = census_by_counts(&rule, seed, stage.depth).map_err(err)?;
            if let Some(p) = &recurrence {
                let totals = to_rationals(&series.totals());
                match fit_recurrence(&totals, order_budget).map_err(err)? {
                    Some(r) => write(Some(p), &r.to_json())?,
                    None => {
                        return Err(Failure::Error(format!("no recurrence found at budget {order_budget}")))
                    }
                }
            }
            write(out.as_deref(), &series.to_csv())
        }
        Command::Render { input, stage, format, outer, shape, out } => {
            let shape = match shape {
                ShapeArg::Polygon => Shape::Polygon,
                ShapeArg::Circle => Shape::Circle,
            };
            let t = if input.input.extension().is_some_and(|e| e == "json") {
                load_tiling_json(&read(&input.input)?).map_err(err)?
            } else {
                staged(&rule(&input)?.1, &stage)?
            };
            let text = match format {
                Format::Svg => svg(&t, outer, shape)?,
                Format::Json => emit_tiling_json(&t),
                Format::Csv => return Err(Failure::Error("render writes svg or json".into())),
            };
            write(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(report)) => {
            print!("{report}");
            eprintln!("error: diagram rejected by validation");
            ExitCode::from(2)
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
