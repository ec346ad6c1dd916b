//! File formats.
//!
//! JSON documents for squares, arrays, designs and construction bundles; CSV is
//! headerless numeric with a `<file>.meta.json` sidecar carrying everything
//! that is not a number in the grid.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::construction::Construction;
use crate::error::{Error, Result};
use crate::latin::MolsSet;
use crate::oa::{collapse_slices, partition_slices, ColumnProjection, OrthogonalArray, SlicedOA};
use crate::product::{Pair, ProductSquare, QuasiSudokuSquare};
use crate::projection::{ProjectedOverlay, ProjectionSpec};
use crate::report::VerificationReport;
use crate::sfd::{ColumnRelabeling, Provenance, SpaceFillingDesign};

pub const SYMBOL_ENCODING: &str = "(a,b) -> n*a+b";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    DirectProduct,
    QuasiSudoku,
}

/// A product square with flattened symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDoc {
    pub m: usize,
    pub n: usize,
    pub layout: Layout,
    pub encoding: String,
    pub row_labels: Vec<(usize, usize)>,
    pub col_labels: Vec<(usize, usize)>,
    pub rows: Vec<Vec<usize>>,
}

impl SquareDoc {
    pub fn from_product(sq: &ProductSquare, layout: Layout) -> Self {
        Self {
            m: sq.m(),
            n: sq.n(),
            layout,
            encoding: SYMBOL_ENCODING.into(),
            row_labels: sq.row_labels().to_vec(),
            col_labels: sq.col_labels().to_vec(),
            rows: sq.flat_rows(),
        }
    }

    pub fn from_quasi(sq: &QuasiSudokuSquare) -> Self {
        Self::from_product(sq.square(), Layout::QuasiSudoku)
    }

    fn pair_rows(&self) -> Result<Vec<Vec<Pair>>> {
        let limit = self.m * self.n;
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| {
                        if x < limit {
                            Ok(Pair::unflatten(x, self.n))
                        } else {
                            Err(Error::Parse(format!("symbol {x} outside [0, {limit})")))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_product(&self) -> Result<ProductSquare> {
        ProductSquare::from_parts(
            self.m,
            self.n,
            self.pair_rows()?,
            self.row_labels.clone(),
            self.col_labels.clone(),
        )
    }

    /// Reads the grid as quasi-Sudoku laid out; labels must be the standard ones.
    pub fn to_quasi(&self) -> Result<QuasiSudokuSquare> {
        if self.layout != Layout::QuasiSudoku {
            return Err(Error::Parse("square is not in quasi-Sudoku layout".into()));
        }
        let sq = QuasiSudokuSquare::from_grid(self.m, self.n, self.pair_rows()?)?;
        if sq.square().row_labels() != self.row_labels.as_slice()
            || sq.square().col_labels() != self.col_labels.as_slice()
        {
            return Err(Error::LabelMismatch);
        }
        Ok(sq)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlayDoc {
    pub m: usize,
    pub n: usize,
    pub rows: Vec<Vec<(usize, usize)>>,
}

impl OverlayDoc {
    pub fn from_overlay(o: &ProjectedOverlay) -> Self {
        Self {
            m: o.m(),
            n: o.n(),
            rows: o.to_rows(),
        }
    }

    pub fn to_overlay(&self) -> Result<ProjectedOverlay> {
        ProjectedOverlay::from_grid(self.m, self.n, self.rows.clone())
    }
}

/// An orthogonal array, optionally with its slicing and per-column collapses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OaDoc {
    pub levels: Vec<usize>,
    pub strength: usize,
    pub rows: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice_labels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projections: Option<Vec<ColumnProjection>>,
}

impl OaDoc {
    pub fn from_array(oa: &OrthogonalArray) -> Self {
        Self {
            levels: oa.levels().to_vec(),
            strength: oa.strength(),
            rows: oa.rows().to_vec(),
            slice_labels: None,
            projections: None,
        }
    }

    pub fn from_sliced(s: &SlicedOA) -> Self {
        Self {
            slice_labels: Some(s.slice_labels()),
            projections: s.projections().map(<[_]>::to_vec),
            ..Self::from_array(s.full())
        }
    }

    pub fn to_array(&self) -> Result<OrthogonalArray> {
        OrthogonalArray::new(self.levels.clone(), self.strength, self.rows.clone())
    }

    /// Rebuilds the sliced array; slice labels and projections must match what
    /// the construction itself derives.
    pub fn to_sliced(&self) -> Result<SlicedOA> {
        let projections = self
            .projections
            .as_ref()
            .ok_or_else(|| Error::Parse("array has no projections".into()))?;
        let spec = projections
            .iter()
            .find_map(|p| match p {
                ColumnProjection::SymbolM { spec } => Some(*spec),
                _ => None,
            })
            .ok_or_else(|| Error::Parse("array has no symbol projection".into()))?;
        let array = self.to_array()?;
        let sliced = collapse_slices(&partition_slices(&array, spec.m(), spec.n())?, &spec)?;
        if sliced.projections() != Some(projections.as_slice()) {
            return Err(Error::Parse("projections differ from the derived ones".into()));
        }
        if let Some(labels) = &self.slice_labels {
            if *labels != sliced.slice_labels() {
                return Err(Error::Parse("slice labels differ from the derived ones".into()));
            }
        }
        Ok(sliced)
    }
}

/// Everything `construct` produces, with the verification report attached.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bundle {
    pub projection: ProjectionSpec,
    pub m_squares: MolsSet,
    pub n_squares: MolsSet,
    pub products: Vec<SquareDoc>,
    pub quasi_sudoku: Vec<SquareDoc>,
    pub overlay: OverlayDoc,
    pub array: OaDoc,
    pub collapsed_slices: Vec<OaDoc>,
    pub report: VerificationReport,
}

impl Bundle {
    pub fn new(c: &Construction, m_squares: MolsSet, n_squares: MolsSet) -> Self {
        Self {
            projection: c.spec,
            m_squares,
            n_squares,
            products: c
                .products
                .iter()
                .map(|p| SquareDoc::from_product(p, Layout::DirectProduct))
                .collect(),
            quasi_sudoku: c.quasi.iter().map(SquareDoc::from_quasi).collect(),
            overlay: OverlayDoc::from_overlay(&c.overlay),
            array: OaDoc::from_sliced(&c.sliced),
            collapsed_slices: c.sliced.collapsed().iter().map(OaDoc::from_array).collect(),
            report: c.verify(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Non-numeric part of a design written as CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignMeta {
    pub seed: u64,
    pub columns: usize,
    pub provenance: Provenance,
    pub relabelings: Vec<ColumnRelabeling>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
}

fn csv_text(rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

fn csv_records(text: &str) -> Result<Vec<Vec<String>>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes())
        .records()
        .map(|r| {
            r.map(|rec| rec.iter().map(str::to_owned).collect())
                .map_err(|e| Error::Parse(e.to_string()))
        })
        .collect()
}

fn parse_field<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))
}

/// Point coordinates then slice label, one design row per line.
pub fn design_to_csv(d: &SpaceFillingDesign) -> (String, DesignMeta) {
    let text = csv_text(d.points.iter().zip(&d.slice_labels).map(|(p, l)| {
        p.iter()
            .map(|x| x.to_string())
            .chain(std::iter::once(l.to_string()))
            .collect()
    }));
    let meta = DesignMeta {
        seed: d.seed,
        columns: d.factors(),
        provenance: d.provenance.clone(),
        relabelings: d.relabelings.clone(),
        report: None,
    };
    (text, meta)
}

pub fn design_from_csv(text: &str, meta: &DesignMeta) -> Result<SpaceFillingDesign> {
    let mut points = Vec::new();
    let mut slice_labels = Vec::new();
    for (i, rec) in csv_records(text)?.into_iter().enumerate() {
        if rec.len() != meta.columns + 1 {
            return Err(Error::Parse(format!(
                "line {}: {} fields, expected {}",
                i + 1,
                rec.len(),
                meta.columns + 1
            )));
        }
        points.push(
            rec[..meta.columns]
                .iter()
                .map(|s| parse_field(s))
                .collect::<Result<Vec<f64>>>()?,
        );
        slice_labels.push(parse_field(&rec[meta.columns])?);
    }
    Ok(SpaceFillingDesign {
        seed: meta.seed,
        points,
        slice_labels,
        provenance: meta.provenance.clone(),
        relabelings: meta.relabelings.clone(),
    })
}

/// Non-numeric part of an array written as CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OaMeta {
    pub levels: Vec<usize>,
    pub strength: usize,
    /// Whether the last CSV field is a slice label.
    pub sliced: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projections: Option<Vec<ColumnProjection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
}

pub fn oa_to_csv(doc: &OaDoc) -> (String, OaMeta) {
    let labels = doc.slice_labels.as_ref();
    let text = csv_text(doc.rows.iter().enumerate().map(|(i, r)| {
        r.iter()
            .map(usize::to_string)
            .chain(labels.map(|l| l[i].to_string()))
            .collect()
    }));
    let meta = OaMeta {
        levels: doc.levels.clone(),
        strength: doc.strength,
        sliced: labels.is_some(),
        projections: doc.projections.clone(),
        report: None,
    };
    (text, meta)
}

pub fn oa_from_csv(text: &str, meta: &OaMeta) -> Result<OaDoc> {
    let k = meta.levels.len();
    let width = k + usize::from(meta.sliced);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (i, rec) in csv_records(text)?.into_iter().enumerate() {
        if rec.len() != width {
            return Err(Error::Parse(format!(
                "line {}: {} fields, expected {width}",
                i + 1,
                rec.len()
            )));
        }
        let values = rec.iter().map(|s| parse_field(s)).collect::<Result<Vec<usize>>>()?;
        if meta.sliced {
            labels.push(values[k]);
        }
        rows.push(values[..k].to_vec());
    }
    Ok(OaDoc {
        levels: meta.levels.clone(),
        strength: meta.strength,
        rows,
        slice_labels: meta.sliced.then_some(labels),
        projections: meta.projections.clone(),
    })
}
