use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use qsudoku::io::from_json;
use qsudoku::{fixture_catalog, generate_mols, select_squares, LatinSquare, MolsSet, ProjectionKind, ProjectionSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProjectionArg {
    Coordinate,
    Modular,
}

impl From<ProjectionArg> for ProjectionKind {
    fn from(p: ProjectionArg) -> Self {
        match p {
            ProjectionArg::Coordinate => ProjectionKind::Coordinate,
            ProjectionArg::Modular => ProjectionKind::Modular,
        }
    }
}

#[derive(Debug, Args)]
pub struct MolsArgs {
    #[arg(long)]
    pub order: usize,
    /// Emit only the first COUNT squares.
    #[arg(long)]
    pub count: Option<usize>,
    /// Emit the embedded worked-example squares (orders 3 and 4).
    #[arg(long)]
    pub fixture: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Where the component squares come from and how symbols are projected.
#[derive(Debug, Args)]
pub struct SourceArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub projection: ProjectionArg,
    /// Require the embedded worked-example squares for both orders.
    #[arg(long, conflicts_with = "generated")]
    pub fixture: bool,
    /// Always use the cyclic / finite-field generators, even where a fixture exists.
    #[arg(long)]
    pub generated: bool,
    /// JSON file with at least two orthogonal squares of order m.
    #[arg(long, requires = "n_squares", conflicts_with_all = ["fixture", "generated"])]
    pub m_squares: Option<PathBuf>,
    /// JSON file with at least two orthogonal squares of order n.
    #[arg(long, requires = "m_squares")]
    pub n_squares: Option<PathBuf>,
    /// Number of product squares; more than two needs m = n.
    #[arg(long, default_value_t = 2)]
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SfdArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Latin,
    Mols,
    QuasiSudoku,
    Overlay,
    Oa,
    SlicedOa,
    Design,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// File to verify (JSON, or CSV with a `.meta.json` sidecar for arrays and designs).
    #[arg(required_unless_present = "fixture")]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Verify an embedded fixture instead of a file: fig2-order3, fig2-order4,
    /// fig4-a, fig4-b, fig6, fig8, fig7.
    #[arg(long, conflicts_with = "file")]
    pub fixture: Option<String>,
    /// Override the level counts of an array, e.g. 3,3,4,3.
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<usize>>,
    /// Strength to check for an array.
    #[arg(long)]
    pub strength: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct PlotDataArgs {
    /// Design file (JSON, or CSV with its `.meta.json` sidecar).
    pub file: PathBuf,
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub columns: Vec<usize>,
    /// Keep only the points of this slice.
    #[arg(long)]
    pub slice: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A fully resolved construction request.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: ProjectionSpec,
    pub m_squares: Vec<LatinSquare>,
    pub n_squares: Vec<LatinSquare>,
}

fn fixture_for(order: usize) -> Option<&'static str> {
    match order {
        3 => Some("fig2-order3"),
        4 => Some("fig2-order4"),
        _ => None,
    }
}

fn read_set(path: &Path, order: usize) -> Result<MolsSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let set: MolsSet = from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    if set.order() != order {
        bail!(
            "{} holds squares of order {}, expected {order}",
            path.display(),
            set.order()
        );
    }
    Ok(set)
}

fn component_set(order: usize, args: &SourceArgs, file: Option<&PathBuf>) -> Result<MolsSet> {
    if let Some(path) = file {
        return read_set(path, order);
    }
    if !args.generated {
        if let Some(name) = fixture_for(order) {
            return Ok(fixture_catalog(name)?);
        }
        if args.fixture {
            bail!("no embedded fixture for order {order} (fixtures exist for 3 and 4)");
        }
    }
    generate_mols(order).with_context(|| format!("generating squares of order {order}"))
}

impl RunConfig {
    pub fn resolve(args: &SourceArgs) -> Result<Self> {
        let spec = ProjectionSpec::new(args.projection.into(), args.m, args.n)?;
        if args.count > 2 && args.m != args.n {
            bail!("--count {} needs m = n", args.count);
        }
        let m_set = component_set(args.m, args, args.m_squares.as_ref())?;
        let n_set = component_set(args.n, args, args.n_squares.as_ref())?;
        Ok(Self {
            spec,
            m_squares: select_squares(&m_set, args.count)?,
            n_squares: select_squares(&n_set, args.count)?,
        })
    }
}
