//! Command-line front end: input loading, subcommand dispatch, and
//! deterministic reports.
//!
//! Exit codes: 0 on success, 1 on input errors (malformed JSON, asymmetric
//! or odd Gram matrices, wrong signature, no interior point), 2 when a
//! requested certificate fails (the boundary is not a packing, or no
//! dimension verdict could be certified).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::blowup::{self, VcdMethod};
use crate::chamber::{self, Chamber};
use crate::error::{Error, Result};
use crate::fibration::{self, FibrationRow};
use crate::lattice::{enumerate_isotropic, enumerate_roots, GramLattice, Int, LatticeVector};
use crate::models::{self, Model};
use crate::packing::{self, render::RenderFormat, PackingGeometry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CERTIFICATE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "lowercase")]
pub enum Format {
    Svg,
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "amplecone",
    version,
    about = "Chamber walls, boundary sphere packings, Mordell-Weil ranks, and vcd reports for hyperbolic lattices"
)]
pub struct CliArgs {
    #[command(subcommand)]
    pub command: CommandKind,
}

#[derive(Subcommand, Debug)]
pub enum CommandKind {
    /// Full summary: signature, discriminant, walls, packing, fibrations, vcd
    Analyze(CommonArgs),
    /// List the roots below the height bound
    Roots(CommonArgs),
    /// Chamber walls accepted below the height bound
    Walls(CommonArgs),
    /// Exact packing certificate for the boundary spheres
    Packing(CommonArgs),
    /// Mordell-Weil rank table over all isotropic classes
    Fibrations(CommonArgs),
    /// Virtual cohomological dimension report
    Vcd(CommonArgs),
    /// Emit the boundary packing as SVG or JSON
    Render(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Lattice file: {"gram": [[..]], "ample": [..]?, "name": ".."?}
    pub input: PathBuf,
    /// Root height bound for wall acceptance
    #[arg(long, default_value_t = 20)]
    pub height: u64,
    /// Height bound for isotropic class enumeration
    #[arg(long, default_value_t = 10)]
    pub iso_height: u64,
    /// Reflection word bound for the divisor coverage certificate
    #[arg(long, default_value_t = 6)]
    pub word_bound: usize,
    /// Assert that the limit set is a Cantor set (cannot be verified here)
    #[arg(long)]
    pub assume_cantor: bool,
    /// Write output here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (json or text; render accepts svg and json)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Include model debug data in reports
    #[arg(long)]
    pub dump_debug: bool,
}

/// Resolved run configuration after argument validation.
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub height: u64,
    pub iso_height: u64,
    pub word_bound: usize,
    pub assume_cantor: bool,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub dump_debug: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Roots,
    Walls,
    Packing,
    Fibrations,
    Vcd,
    Render,
}

impl RunConfig {
    pub fn from_args(args: CliArgs) -> Result<RunConfig> {
        let (command, common) = match args.command {
            CommandKind::Analyze(c) => (Command::Analyze, c),
            CommandKind::Roots(c) => (Command::Roots, c),
            CommandKind::Walls(c) => (Command::Walls, c),
            CommandKind::Packing(c) => (Command::Packing, c),
            CommandKind::Fibrations(c) => (Command::Fibrations, c),
            CommandKind::Vcd(c) => (Command::Vcd, c),
            CommandKind::Render(c) => (Command::Render, c),
        };
        if common.height < 1 {
            return Err(Error::InvalidInput("--height must be at least 1".into()));
        }
        if common.iso_height < 1 {
            return Err(Error::InvalidInput(
                "--iso-height must be at least 1".into(),
            ));
        }
        let format = common.format.unwrap_or(match command {
            Command::Render => Format::Svg,
            _ => Format::Json,
        });
        match (command, format) {
            (Command::Render, Format::Text) => {
                return Err(Error::InvalidInput(
                    "render emits svg or json, not text".into(),
                ));
            }
            (c, Format::Svg) if c != Command::Render => {
                return Err(Error::InvalidInput("only render emits svg".into()));
            }
            _ => {}
        }
        Ok(RunConfig {
            command,
            input: common.input,
            height: common.height,
            iso_height: common.iso_height,
            word_bound: common.word_bound,
            assume_cantor: common.assume_cantor,
            out: common.out,
            format,
            dump_debug: common.dump_debug,
        })
    }
}

#[derive(Deserialize)]
struct LatticeFile {
    gram: Vec<Vec<i64>>,
    ample: Option<Vec<i64>>,
    name: Option<String>,
}

/// The validated input: lattice, interior class, display name.
pub struct LoadedLattice {
    pub lattice: GramLattice,
    pub ample: LatticeVector,
    pub name: String,
}

pub fn load_lattice(path: &Path) -> Result<LoadedLattice> {
    let text = std::fs::read_to_string(path)?;
    let file: LatticeFile = serde_json::from_str(&text)?;
    let rows: Vec<&[i64]> = file.gram.iter().map(|r| r.as_slice()).collect();
    let lattice = GramLattice::from_i64(&rows)?;
    lattice.validate_k3()?;
    let ample = match file.ample {
        Some(coords) => {
            let a = LatticeVector::from_i64(&coords);
            if !chamber::is_interior(&lattice, &a)? {
                return Err(Error::InvalidInput(
                    "given ample class is not interior to a chamber".into(),
                ));
            }
            a
        }
        None => chamber::find_interior_point(&lattice)?,
    };
    let name = file.name.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "lattice".into())
    });
    Ok(LoadedLattice {
        lattice,
        ample,
        name,
    })
}

/// Report header carried by every output.
#[derive(Serialize)]
pub struct Meta {
    pub name: String,
    pub tool_version: &'static str,
    pub height: u64,
    pub iso_height: u64,
    pub word_bound: usize,
}

impl Meta {
    fn new(config: &RunConfig, name: &str) -> Meta {
        Meta {
            name: name.to_string(),
            tool_version: env!("CARGO_PKG_VERSION"),
            height: config.height,
            iso_height: config.iso_height,
            word_bound: config.word_bound,
        }
    }
}

fn lowest_cusp(
    lattice: &GramLattice,
    ample: &LatticeVector,
    iso_height: u64,
) -> Result<LatticeVector> {
    let classes = enumerate_isotropic(lattice, ample, iso_height)?;
    classes
        .first()
        .map(|c| c.vec.clone())
        .ok_or(Error::NoEllipticFibration { height: iso_height })
}

fn build_chamber(loaded: &LoadedLattice, config: &RunConfig) -> Result<Chamber> {
    chamber::vinberg_walls(&loaded.lattice, &loaded.ample, config.height)
}

/// Executes the configured command; returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    match execute(config) {
        Ok((output, code)) => {
            let result = match &config.out {
                Some(path) => std::fs::write(path, output).map_err(Error::from),
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    lock.write_all(output.as_bytes())
                        .and_then(|_| lock.flush())
                        .map_err(Error::from)
                }
            };
            match result {
                Ok(()) => code,
                Err(err) => {
                    eprintln!("error: {err}");
                    EXIT_INPUT
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INPUT
        }
    }
}

fn execute(config: &RunConfig) -> Result<(String, i32)> {
    let loaded = load_lattice(&config.input)?;
    let meta = Meta::new(config, &loaded.name);
    match config.command {
        Command::Analyze => analyze(config, &loaded, meta),
        Command::Roots => roots(config, &loaded, meta),
        Command::Walls => walls(config, &loaded, meta),
        Command::Packing => packing_cmd(config, &loaded, meta),
        Command::Fibrations => fibrations(config, &loaded, meta),
        Command::Vcd => vcd(config, &loaded, meta),
        Command::Render => render(config, &loaded, meta),
    }
}

fn to_json_string(value: &serde_json::Value) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn analyze(config: &RunConfig, loaded: &LoadedLattice, meta: Meta) -> Result<(String, i32)> {
    let lattice = &loaded.lattice;
    let signature = lattice.signature()?;
    let discriminant = lattice.discriminant_group()?;
    let chamber = build_chamber(loaded, config)?;
    let certificate = packing::is_sphere_packing(&chamber);
    let fib = fibration::fibration_table(lattice, &loaded.ample, config.iso_height)?;
    let max_mw = fib.iter().map(|r| r.mw_rank).max();
    let report = blowup::vcd_report(
        lattice,
        &loaded.ample,
        config.height,
        config.iso_height,
        config.word_bound,
        config.assume_cantor,
        config.dump_debug,
    )?;

    let mut doc = json!({
        "meta": meta,
        "rho": lattice.dim(),
        "signature": { "positive": signature.0, "negative": signature.1 },
        "determinant": lattice.det().to_i64(),
        "discriminant_group": discriminant,
        "ample": loaded.ample,
        "wall_count": chamber.walls.len(),
        "packing": { "is_packing": certificate.is_packing, "is_connected": certificate.is_connected },
        "fibrations": { "classes": fib.len(), "max_mw_rank": max_mw },
        "vcd": { "method": report.method, "value": report.vcd },
    });
    if config.dump_debug {
        let bridge = models::lorentz::gram_to_lorentz(lattice)?;
        let sample = bridge.hyperboloid_point(&loaded.ample)?;
        let eta_word = models::moebius::MoebiusMap::new(vec![
            models::moebius::Generator::plane(unit_last(lattice.dim() - 1), 0.0)?,
            models::moebius::Generator::sphere(
                unit_last_vec(lattice.dim() - 1),
                std::f64::consts::SQRT_2,
            )?,
        ]);
        doc["debug"] = json!({
            "bridge_residual": bridge.residual(),
            "ample_in_models": {
                "hyperboloid": sample,
                "ball": sample.to_model(Model::Ball)?,
                "upper_half": sample.to_model(Model::UpperHalf)?,
            },
            "standard_transformation_word": eta_word,
        });
    }

    match config.format {
        Format::Text => {
            let mut s = String::new();
            s.push_str(&format!(
                "lattice {}  rho {}  signature ({}, {})  det {}\n",
                meta.name,
                lattice.dim(),
                signature.0,
                signature.1,
                lattice.det()
            ));
            s.push_str(&format!("ample class {}\n", loaded.ample));
            s.push_str(&format!(
                "walls: {} (sides certified up to height {})\n",
                chamber.walls.len(),
                config.height
            ));
            s.push_str(&format!(
                "packing: {}, connected: {}\n",
                certificate.is_packing, certificate.is_connected
            ));
            s.push_str(&format!(
                "isotropic classes up to height {}: {}, max Mordell-Weil rank {:?}\n",
                config.iso_height,
                fib.len(),
                max_mw
            ));
            s.push_str(&format!("vcd: {}\n", describe_vcd(&report)));
            Ok((s, EXIT_OK))
        }
        _ => Ok((to_json_string(&doc)?, EXIT_OK)),
    }
}

fn roots(config: &RunConfig, loaded: &LoadedLattice, meta: Meta) -> Result<(String, i32)> {
    let found = enumerate_roots(&loaded.lattice, &loaded.ample, config.height)?;
    let rows: Vec<chamber::Root> = found
        .into_iter()
        .map(|vec| chamber::Root {
            height: loaded.lattice.inner_unchecked(&vec, &loaded.ample),
            vec,
        })
        .collect();
    match config.format {
        Format::Text => {
            let mut s = format!("{} roots up to height {}\n", rows.len(), config.height);
            for r in &rows {
                s.push_str(&format!("height {:>4}  {}\n", r.height, r.vec));
            }
            Ok((s, EXIT_OK))
        }
        _ => {
            let doc = json!({ "meta": meta, "roots": rows });
            Ok((to_json_string(&doc)?, EXIT_OK))
        }
    }
}

fn walls(config: &RunConfig, loaded: &LoadedLattice, meta: Meta) -> Result<(String, i32)> {
    let chamber = build_chamber(loaded, config)?;
    match config.format {
        Format::Text => {
            let mut s = format!(
                "{} walls, sides certified up to height {}\n",
                chamber.walls.len(),
                config.height
            );
            for w in &chamber.walls {
                s.push_str(&format!("height {:>4}  {}\n", w.height, w.vec));
            }
            Ok((s, EXIT_OK))
        }
        _ => {
            let doc = json!({ "meta": meta, "chamber": chamber.to_json() });
            Ok((to_json_string(&doc)?, EXIT_OK))
        }
    }
}

fn packing_cmd(config: &RunConfig, loaded: &LoadedLattice, meta: Meta) -> Result<(String, i32)> {
    let chamber = build_chamber(loaded, config)?;
    let certificate = packing::is_sphere_packing(&chamber);
    let code = if certificate.is_packing {
        EXIT_OK
    } else {
        EXIT_CERTIFICATE
    };
    match config.format {
        Format::Text => {
            let mut s = format!(
                "packing: {} (walls {}, certified up to height {})\n",
                certificate.is_packing, certificate.wall_count, config.height
            );
            s.push_str(&format!("connected: {}\n", certificate.is_connected));
            for f in &certificate.failures {
                s.push_str(&format!(
                    "crossing pair: walls {} and {} pair to {} ({} , {})\n",
                    f.i, f.j, f.pairing, f.root_i, f.root_j
                ));
            }
            Ok((s, code))
        }
        _ => {
            let doc = json!({ "meta": meta, "certificate": certificate });
            Ok((to_json_string(&doc)?, code))
        }
    }
}

fn fibrations(config: &RunConfig, loaded: &LoadedLattice, meta: Meta) -> Result<(String, i32)> {
    let table = fibration::fibration_table(&loaded.lattice, &loaded.ample, config.iso_height)?;
    let rows: Vec<FibrationRow> = table.iter().map(FibrationRow::from).collect();
    match config.format {
        Format::Text => {
            let mut s = format!(
                "{} isotropic classes up to height {} (rho = {})\n",
                rows.len(),
                config.iso_height,
                loaded.lattice.dim()
            );
            for r in &rows {
                s.push_str(&format!(
                    "height {:>3}  fiber root rank {}  mw rank {}  {}\n",
                    r.height, r.fiber_root_rank, r.mw_rank, r.class
                ));
            }
            Ok((s, EXIT_OK))
        }
        _ => {
            let doc = json!({ "meta": meta, "fibrations": rows });
            Ok((to_json_string(&doc)?, EXIT_OK))
        }
    }
}

fn vcd(config: &RunConfig, loaded: &LoadedLattice, meta: Meta) -> Result<(String, i32)> {
    let report = blowup::vcd_report(
        &loaded.lattice,
        &loaded.ample,
        config.height,
        config.iso_height,
        config.word_bound,
        config.assume_cantor,
        config.dump_debug,
    )?;
    let code = if report.method == VcdMethod::Inconclusive {
        EXIT_CERTIFICATE
    } else {
        EXIT_OK
    };
    match config.format {
        Format::Text => {
            let mut s = format!("vcd: {}\n", describe_vcd(&report));
            s.push_str(&format!(
                "certificates: packing {} connected {} divisors_covered {} (H {}, H_iso {}, word bound {})\n",
                report.certificates.is_packing,
                report.certificates.is_connected,
                report.certificates.divisors_covered,
                config.height,
                config.iso_height,
                config.word_bound
            ));
            for cusp in &report.per_cusp {
                s.push_str(&format!(
                    "cusp {} height {}: mw rank {}, {:?}\n",
                    cusp.class.vec, cusp.class.height, cusp.mw_rank, cusp.exceptional
                ));
            }
            s.push_str(&format!(
                "boundary_dim_lower {}\n",
                report.boundary_dim_lower
            ));
            Ok((s, code))
        }
        _ => {
            let doc = json!({ "meta": meta, "report": report });
            Ok((to_json_string(&doc)?, code))
        }
    }
}

fn render(config: &RunConfig, loaded: &LoadedLattice, meta: Meta) -> Result<(String, i32)> {
    let chamber = build_chamber(loaded, config)?;
    let cusp = lowest_cusp(&loaded.lattice, &loaded.ample, config.iso_height)?;
    let geometry = PackingGeometry::new(&chamber, &cusp)?;
    let format = match config.format {
        Format::Svg => RenderFormat::Svg,
        Format::Json => RenderFormat::Json,
        Format::Text => unreachable!("rejected at configuration time"),
    };
    let output = match format {
        RenderFormat::Svg => {
            let svg = packing::render::render_svg(&geometry)?;
            // carry the report header as a comment on the first line
            let header = format!(
                "<!-- name={} height={} iso_height={} word_bound={} tool_version={} -->\n",
                meta.name, meta.height, meta.iso_height, meta.word_bound, meta.tool_version
            );
            match svg.find('\n') {
                Some(pos) => format!("{}{}{}", &svg[..=pos], header, &svg[pos + 1..]),
                None => format!("{header}{svg}"),
            }
        }
        RenderFormat::Json => {
            let body: serde_json::Value =
                serde_json::from_str(&packing::render::render_json(&geometry)?)?;
            let doc = json!({
                "meta": meta,
                "cusp_at_infinity": cusp,
                "scale": body["scale"],
                "spheres": body["spheres"],
            });
            to_json_string(&doc)?
        }
    };
    Ok((output, EXIT_OK))
}

fn describe_vcd(report: &blowup::BlownUpReport) -> String {
    let method = match report.method {
        VcdMethod::SpherePacking => "certified sphere packing",
        VcdMethod::CantorAssumed => "asserted Cantor-set limit set",
        VcdMethod::Inconclusive => "inconclusive",
    };
    match report.vcd {
        Some(v) => format!("{v} ({method})"),
        None => format!("unknown ({method})"),
    }
}

fn unit_last(dim: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[dim - 1] = 1.0;
    v
}

fn unit_last_vec(dim: usize) -> Vec<f64> {
    unit_last(dim)
}

/// Binary entry point.
pub fn main_entry() -> i32 {
    let args = CliArgs::parse();
    match RunConfig::from_args(args) {
        Ok(config) => run(&config),
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INPUT
        }
    }
}

// keep the serialize path for big heights exercised
#[allow(dead_code)]
fn height_to_json(h: &Int) -> serde_json::Value {
    match h.to_i64() {
        Some(v) => json!(v),
        None => json!(h.to_string()),
    }
}
