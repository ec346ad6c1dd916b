//! Sliced space-filling designs from a collapsed quasi-sliced array.
//!
//! Per column: relabel the `mn` levels so each projected class occupies a
//! consecutive run, expand each relabeled level `k` into the ranks
//! `k*mn + 1 ..= (k+1)*mn`, then jitter every rank `x` to `(x - u) / N`.
//!
//! Randomness comes from ChaCha8 streams keyed by `(seed, column, stage)`, so
//! each column's draws are independent of every other column.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oa::{ColumnProjection, SlicedOA};
use crate::projection::ProjectionSpec;
use crate::report::{ReportItem, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Relabel = 0,
    Expand = 1,
    Jitter = 2,
}

/// Independent generator for one column and stage.
pub fn stream(seed: u64, column: usize, stage: Stage) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(column as u64 * 3 + stage as u64);
    rng
}

/// Uniform on a 2^-32 grid strictly inside (0, 1); keeps `x - u` exact in f64.
fn open_unit(rng: &mut impl RngCore) -> f64 {
    (f64::from(rng.next_u32()) + 0.5) / 4_294_967_296.0
}

/// Relabeling of one column's levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRelabeling {
    pub column: usize,
    /// `map[level]` is the relabeled level.
    pub map: Vec<usize>,
    /// `class_order[bin]` is the projected class placed in coarse bin `bin`.
    pub class_order: Vec<usize>,
}

impl ColumnRelabeling {
    /// Random class order, then random order within each class.
    pub fn from_classes(column: usize, classes: &[Vec<usize>], rng: &mut impl Rng) -> Result<Self> {
        let size = classes.first().map(Vec::len).unwrap_or(0);
        if size == 0 || classes.iter().any(|c| c.len() != size) {
            return Err(Error::UnevenClasses { column });
        }
        let total = size * classes.len();
        let mut class_order: Vec<usize> = (0..classes.len()).collect();
        class_order.shuffle(rng);
        let mut map = vec![usize::MAX; total];
        for (bin, &g) in class_order.iter().enumerate() {
            let mut members = classes[g].clone();
            members.shuffle(rng);
            for (offset, level) in members.into_iter().enumerate() {
                if level >= total || map[level] != usize::MAX {
                    return Err(Error::UnevenClasses { column });
                }
                map[level] = bin * size + offset;
            }
        }
        Ok(Self {
            column,
            map,
            class_order,
        })
    }

    pub fn class_size(&self) -> usize {
        self.map.len() / self.class_order.len()
    }

    /// Coarse bin holding projected class `g`.
    pub fn bin_of_class(&self, g: usize) -> Option<usize> {
        self.class_order.iter().position(|&c| c == g)
    }
}

fn column_projection(sliced: &SlicedOA, column: usize) -> Result<ColumnProjection> {
    let projections = sliced
        .projections()
        .ok_or_else(|| Error::MalformedArray("projections are not set".into()))?;
    projections.get(column).copied().ok_or(Error::ColumnOutOfRange {
        column,
        columns: projections.len(),
    })
}

pub fn plan_relabeling(sliced: &SlicedOA, column: usize, rng: &mut impl Rng) -> Result<ColumnRelabeling> {
    let proj = column_projection(sliced, column)?;
    ColumnRelabeling::from_classes(column, &proj.classes(), rng)
}

/// Replaces the occurrences of each level `k` by a random arrangement of
/// `k*c + 1 ..= (k+1)*c`, where `c = column.len() / levels`.
pub fn expand_levels(column: &[usize], levels: usize, rng: &mut impl Rng) -> Result<Vec<usize>> {
    let per = column.len().checked_div(levels).unwrap_or(0);
    let mut positions = vec![Vec::new(); levels];
    for (i, &k) in column.iter().enumerate() {
        if k >= levels {
            return Err(Error::CountMismatch {
                symbol: k,
                count: 1,
                expected: 0,
            });
        }
        positions[k].push(i);
    }
    if let Some((k, pos)) = positions
        .iter()
        .enumerate()
        .find(|(_, p)| p.len() != per || per * levels != column.len())
    {
        return Err(Error::CountMismatch {
            symbol: k,
            count: pos.len(),
            expected: per,
        });
    }
    let mut ranks = vec![0; column.len()];
    for (k, pos) in positions.iter().enumerate() {
        let mut values: Vec<usize> = (k * per + 1..=(k + 1) * per).collect();
        values.shuffle(rng);
        for (&i, v) in pos.iter().zip(values) {
            ranks[i] = v;
        }
    }
    Ok(ranks)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub m: usize,
    pub n: usize,
    pub projection: ProjectionSpec,
    pub levels: Vec<usize>,
    pub collapsed_levels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceFillingDesign {
    pub seed: u64,
    /// `N x k`, every coordinate in `[0, 1)`.
    pub points: Vec<Vec<f64>>,
    pub slice_labels: Vec<usize>,
    pub provenance: Provenance,
    pub relabelings: Vec<ColumnRelabeling>,
}

impl SpaceFillingDesign {
    pub fn runs(&self) -> usize {
        self.points.len()
    }

    pub fn factors(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn slice_count(&self) -> usize {
        self.provenance.m
    }

    pub fn slice_rows(&self, slice: usize) -> Vec<usize> {
        self.slice_labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == slice)
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn build_sfd(sliced: &SlicedOA, seed: u64) -> Result<SpaceFillingDesign> {
    let full = sliced.full();
    let projections = sliced
        .projections()
        .ok_or_else(|| Error::MalformedArray("projections are not set".into()))?;
    let spec = projections
        .iter()
        .find_map(|p| match p {
            ColumnProjection::SymbolM { spec } => Some(*spec),
            _ => None,
        })
        .ok_or_else(|| Error::MalformedArray("no symbol projection".into()))?;
    let n_runs = full.runs();
    let k = full.factors();
    let mut points = vec![vec![0.0; k]; n_runs];
    let mut relabelings = Vec::with_capacity(k);
    for j in 0..k {
        let plan = plan_relabeling(sliced, j, &mut stream(seed, j, Stage::Relabel))?;
        let relabeled: Vec<usize> = full.rows().iter().map(|r| plan.map[r[j]]).collect();
        let ranks = expand_levels(&relabeled, full.levels()[j], &mut stream(seed, j, Stage::Expand))?;
        let mut jitter = stream(seed, j, Stage::Jitter);
        for (point, x) in points.iter_mut().zip(ranks) {
            let u = open_unit(&mut jitter);
            point[j] = (x as f64 - u) / n_runs as f64;
        }
        relabelings.push(plan);
    }
    Ok(SpaceFillingDesign {
        seed,
        points,
        slice_labels: sliced.slice_labels(),
        provenance: Provenance {
            m: sliced.m(),
            n: sliced.n(),
            projection: spec,
            levels: full.levels().to_vec(),
            collapsed_levels: sliced.collapsed_levels().unwrap_or_default(),
        },
        relabelings,
    })
}

fn bin(c: f64, g: usize) -> Option<usize> {
    (0.0..1.0)
        .contains(&c)
        .then(|| ((c * g as f64).floor() as usize).min(g - 1))
}

fn check_column(d: &SpaceFillingDesign, column: usize) -> Result<()> {
    let k = d.factors();
    if column >= k {
        return Err(Error::ColumnOutOfRange { column, columns: k });
    }
    Ok(())
}

/// Exactly one point per interval `[i/N, (i+1)/N)` in every column.
pub fn verify_lhd(d: &SpaceFillingDesign) -> VerificationReport {
    let n_runs = d.runs();
    let mut report = VerificationReport::new(format!("Latin hypercube N={n_runs}"));
    for j in 0..d.factors() {
        report.push(match verify_1d_bins(d, &(0..n_runs).collect::<Vec<_>>(), n_runs, j) {
            Ok(r) => {
                let mut item = r.items.into_iter().next().expect("one item");
                item.label = format!("column {j}");
                item
            }
            Err(e) => ReportItem::fail(format!("column {j}"), vec![e.to_string()]),
        });
    }
    report
}

/// Every one of `g` equal bins of column `column` holds `|rows| / g` of the selected points.
pub fn verify_1d_bins(d: &SpaceFillingDesign, rows: &[usize], g: usize, column: usize) -> Result<VerificationReport> {
    check_column(d, column)?;
    if g == 0 || !rows.len().is_multiple_of(g) {
        return Err(Error::IndivisibleGrid {
            rows: rows.len(),
            g1: g,
            g2: 1,
        });
    }
    let expected = rows.len() / g;
    let mut counts = vec![0usize; g];
    let mut problems = Vec::new();
    for &r in rows {
        let c = d.points[r][column];
        match bin(c, g) {
            Some(b) => counts[b] += 1,
            None => problems.push(format!("row {r}: coordinate {c} outside [0,1)")),
        }
    }
    problems.extend(
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != expected)
            .map(|(b, c)| format!("bin {b} holds {c} points, expected {expected}")),
    );
    let mut report = VerificationReport::new(format!("1D {g} bins"));
    let label = format!("column {column}, {g} bins");
    report.push(if problems.is_empty() {
        ReportItem::pass(label, Some(expected))
    } else {
        ReportItem::fail(label, problems)
    });
    Ok(report)
}

/// Every cell of the `g1 x g2` grid on columns `(i, j)` holds `|rows| / (g1*g2)` points.
pub fn verify_2d_stratification(
    d: &SpaceFillingDesign,
    rows: &[usize],
    grid: (usize, usize),
    columns: (usize, usize),
) -> Result<VerificationReport> {
    let (g1, g2) = grid;
    let (ci, cj) = columns;
    check_column(d, ci)?;
    check_column(d, cj)?;
    if g1 == 0 || g2 == 0 || !rows.len().is_multiple_of(g1 * g2) {
        return Err(Error::IndivisibleGrid {
            rows: rows.len(),
            g1,
            g2,
        });
    }
    let expected = rows.len() / (g1 * g2);
    let mut counts = vec![0usize; g1 * g2];
    let mut problems = Vec::new();
    for &r in rows {
        let (x, y) = (d.points[r][ci], d.points[r][cj]);
        match (bin(x, g1), bin(y, g2)) {
            (Some(a), Some(b)) => counts[a * g2 + b] += 1,
            _ => problems.push(format!("row {r}: ({x}, {y}) outside [0,1)^2")),
        }
    }
    if let Some((cell, &c)) = counts.iter().enumerate().find(|(_, &c)| c != expected) {
        let bad = counts.iter().filter(|&&c| c != expected).count();
        problems.push(format!(
            "cell ({}, {}) holds {c} points, expected {expected} ({bad} cells off)",
            cell / g2,
            cell % g2
        ));
    }
    let mut report = VerificationReport::new(format!("2D {g1}x{g2} grid"));
    let label = format!("columns {ci},{cj} on {g1}x{g2}");
    report.push(if problems.is_empty() {
        ReportItem::pass(label, Some(expected))
    } else {
        ReportItem::fail(label, problems)
    });
    Ok(report)
}

/// Latin hypercube, full-design `mn x mn` stratification for every column pair,
/// and for every slice the collapsed-grid 2D and coarse-bin 1D stratification.
pub fn verify_design(d: &SpaceFillingDesign) -> VerificationReport {
    let mut report = VerificationReport::new(format!("sliced design N={} seed={}", d.runs(), d.seed));
    report.absorb(verify_lhd(d));
    let k = d.factors();
    let all: Vec<usize> = (0..d.runs()).collect();
    let fine: Vec<usize> = d.provenance.levels.clone();
    let coarse = d.provenance.collapsed_levels.clone();
    let run = |report: &mut VerificationReport, subject: String, r: Result<VerificationReport>| match r {
        Ok(mut sub) => {
            sub.subject = subject;
            report.absorb(sub);
        }
        Err(e) => report.push(ReportItem::fail(subject, vec![e.to_string()])),
    };
    for i in 0..k {
        for j in i + 1..k {
            run(
                &mut report,
                "full".into(),
                verify_2d_stratification(d, &all, (fine[i], fine[j]), (i, j)),
            );
        }
    }
    if coarse.len() != k {
        report.push(ReportItem::fail("slices", vec!["collapsed levels missing".into()]));
        return report;
    }
    for q in 0..d.slice_count() {
        let rows = d.slice_rows(q);
        for i in 0..k {
            run(
                &mut report,
                format!("slice {q}"),
                verify_1d_bins(d, &rows, coarse[i], i),
            );
            for j in i + 1..k {
                run(
                    &mut report,
                    format!("slice {q}"),
                    verify_2d_stratification(d, &rows, (coarse[i], coarse[j]), (i, j)),
                );
            }
        }
    }
    report
}
