use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use qsudoku::fixtures::{self, collapsed_slice_0_rows, overlay_grid};
use qsudoku::io::{
    design_from_csv, design_to_csv, from_json, oa_from_csv, oa_to_csv, sidecar_path, to_json, Bundle, DesignMeta,
    OaDoc, OaMeta, OverlayDoc, SquareDoc,
};
use qsudoku::{
    are_orthogonal, build_sfd, direct_product, fixture_catalog, generate_mols, quasi_sudoku_reorder, validate_latin,
    verify_design, verify_double_orthogonality, verify_oa_strength, verify_quasi_sudoku, Construction, Error,
    LatinSquare, MolsSet, OrthogonalArray, ReportItem, SpaceFillingDesign, VerificationReport,
};
use serde::{Deserialize, Serialize};

use crate::config::{
    ConstructArgs, Format, Kind, MolsArgs, PlotDataArgs, ReportFormat, RunConfig, SfdArgs, SourceArgs, VerifyArgs,
};

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// CSV goes to the output path and the metadata to its sidecar.
fn emit_csv_with_sidecar<T: Serialize>(text: &str, meta: &T, output: Option<&Path>) -> Result<()> {
    let path = output.ok_or_else(|| anyhow!("--format csv needs --output (the metadata goes to a sidecar file)"))?;
    emit(text, Some(path))?;
    emit(&to_json(meta), Some(&sidecar_path(path)))
}

pub fn mols(args: &MolsArgs) -> Result<bool> {
    if args.order == 6 {
        bail!("no pair of orthogonal Latin squares of order 6 exists (Euler's 36 officers problem)");
    }
    let set = if args.fixture {
        match args.order {
            3 => fixture_catalog("fig2-order3")?,
            4 => fixture_catalog("fig2-order4")?,
            o => bail!("no embedded fixture for order {o} (fixtures exist for 3 and 4)"),
        }
    } else {
        generate_mols(args.order)?
    };
    let set = match args.count {
        None => set,
        Some(0) => bail!("--count must be at least 1"),
        Some(k) if k > set.len() => bail!("only {} squares of order {} are available", set.len(), args.order),
        Some(k) => MolsSet::new(set.squares()[..k].to_vec())?,
    };
    let text = match args.format {
        Format::Json => to_json(&set),
        Format::Csv => {
            let mut out = String::new();
            for (i, sq) in set.squares().iter().enumerate() {
                for row in sq.rows() {
                    let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                    out.push_str(&format!("{i},{}\n", cells.join(",")));
                }
            }
            out
        }
    };
    emit(&text, args.output.as_deref())?;
    Ok(true)
}

fn build(source: &SourceArgs) -> Result<(Construction, RunConfig)> {
    let cfg = RunConfig::resolve(source)?;
    let c = qsudoku::construct(&cfg.m_squares, &cfg.n_squares, &cfg.spec)?;
    Ok((c, cfg))
}

pub fn construct(args: &ConstructArgs) -> Result<bool> {
    let (c, cfg) = build(&args.source)?;
    let bundle = Bundle::new(&c, MolsSet::new(cfg.m_squares)?, MolsSet::new(cfg.n_squares)?);
    eprint!("{}", bundle.report);
    let passed = bundle.report.passed();
    match args.format {
        Format::Json => emit(&to_json(&bundle), args.output.as_deref())?,
        Format::Csv => {
            let (text, mut meta) = oa_to_csv(&bundle.array);
            meta.report = Some(bundle.report);
            emit_csv_with_sidecar(&text, &meta, args.output.as_deref())?;
        }
    }
    Ok(passed)
}

/// A design together with the report produced when it was built.
#[derive(Debug, Serialize, Deserialize)]
struct DesignFile {
    #[serde(flatten)]
    design: SpaceFillingDesign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    report: Option<VerificationReport>,
}

pub fn sfd(args: &SfdArgs) -> Result<bool> {
    let (c, _) = build(&args.source)?;
    let design = build_sfd(&c.sliced, args.seed)?;
    let mut report = c.verify();
    let mut sub = verify_design(&design);
    sub.subject = "design".into();
    report.absorb(sub);
    eprint!("{report}");
    let passed = report.passed();
    match args.format {
        Format::Json => {
            let file = DesignFile {
                design,
                report: Some(report),
            };
            emit(&to_json(&file), args.output.as_deref())?;
        }
        Format::Csv => {
            let (text, mut meta) = design_to_csv(&design);
            meta.report = Some(report);
            emit_csv_with_sidecar(&text, &meta, args.output.as_deref())?;
        }
    }
    Ok(passed)
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, kind: Kind) -> Result<T> {
    from_json(text).map_err(|e| anyhow!("input does not parse as {kind:?}: {e}"))
}

fn read_design(path: &Path) -> Result<SpaceFillingDesign> {
    if is_csv(path) {
        let meta: DesignMeta = parse(&read(&sidecar_path(path))?, Kind::Design)?;
        Ok(design_from_csv(&read(path)?, &meta)?)
    } else {
        Ok(parse::<DesignFile>(&read(path)?, Kind::Design)?.design)
    }
}

fn read_oa(path: &Path, kind: Kind) -> Result<OaDoc> {
    if is_csv(path) {
        let meta: OaMeta = parse(&read(&sidecar_path(path))?, kind)?;
        Ok(oa_from_csv(&read(path)?, &meta)?)
    } else {
        parse(&read(path)?, kind)
    }
}

/// Turns a structural error into a failing report instead of aborting.
fn structure<T>(report: &mut VerificationReport, r: std::result::Result<T, Error>) -> Option<T> {
    match r {
        Ok(v) => {
            report.push(ReportItem::pass("structure", None));
            Some(v)
        }
        Err(e) => {
            report.push(ReportItem::fail("structure", vec![e.to_string()]));
            None
        }
    }
}

#[derive(Deserialize)]
struct RawMols {
    squares: Vec<Vec<Vec<usize>>>,
}

fn verify_mols(squares: Vec<Vec<Vec<usize>>>) -> VerificationReport {
    let mut report = VerificationReport::new(format!("{} squares", squares.len()));
    let mut valid: Vec<Option<LatinSquare>> = Vec::new();
    for (i, grid) in squares.into_iter().enumerate() {
        let label = format!("square {i} latin");
        match validate_latin(grid) {
            Ok(sq) => {
                report.push(ReportItem::pass(label, None));
                valid.push(Some(sq));
            }
            Err(e) => {
                report.push(ReportItem::fail(label, vec![e.to_string()]));
                valid.push(None);
            }
        }
    }
    for i in 0..valid.len() {
        for j in i + 1..valid.len() {
            if let (Some(a), Some(b)) = (&valid[i], &valid[j]) {
                let label = format!("squares {i},{j} orthogonal");
                report.push(match are_orthogonal(a, b) {
                    Ok(true) => ReportItem::pass(label, None),
                    Ok(false) => ReportItem::fail(label, vec!["some ordered pair repeats".into()]),
                    Err(e) => ReportItem::fail(label, vec![e.to_string()]),
                });
            }
        }
    }
    report
}

/// Embedded fixtures as the JSON a file of that kind would hold.
fn fixture_json(name: &str) -> Result<(Kind, String)> {
    let quasi = |first: bool| -> Result<String> {
        let four = fixture_catalog("fig2-order4")?;
        let three = fixture_catalog("fig2-order3")?;
        let (a1, b1) = four.first_and_last().expect("fixture has squares");
        let (a2, b2) = three.first_and_last().expect("fixture has squares");
        let prod = if first {
            direct_product(a1, a2)
        } else {
            direct_product(b1, b2)
        };
        Ok(to_json(&SquareDoc::from_quasi(&quasi_sudoku_reorder(&prod))))
    };
    let overlay = |text: &str| {
        to_json(&OverlayDoc {
            m: 4,
            n: 3,
            rows: overlay_grid(text).rows,
        })
    };
    Ok(match name {
        "fig2-order3" | "fig2-order4" => (Kind::Mols, to_json(&fixture_catalog(name)?)),
        "fig4-a" => (Kind::QuasiSudoku, quasi(true)?),
        "fig4-b" => (Kind::QuasiSudoku, quasi(false)?),
        "fig6" => (Kind::Overlay, overlay(fixtures::MODULAR_OVERLAY)),
        "fig8" => (Kind::Overlay, overlay(fixtures::COORDINATE_OVERLAY)),
        "fig7" => (
            Kind::Oa,
            to_json(&OaDoc {
                levels: vec![3, 3, 4, 3],
                strength: 2,
                rows: collapsed_slice_0_rows(),
                slice_labels: None,
                projections: None,
            }),
        ),
        other => bail!("unknown fixture `{other}`"),
    })
}

fn check_array(doc: &OaDoc, args: &VerifyArgs) -> VerificationReport {
    let levels = args.levels.clone().unwrap_or_else(|| doc.levels.clone());
    let strength = args.strength.unwrap_or(doc.strength);
    let mut report = VerificationReport::new("array");
    if let Some(oa) = structure(&mut report, OrthogonalArray::new(levels, strength, doc.rows.clone())) {
        return verify_oa_strength(&oa, strength);
    }
    report
}

pub fn verify(args: &VerifyArgs) -> Result<bool> {
    let (text, path) = match (&args.fixture, &args.file) {
        (Some(name), _) => {
            let (kind, text) = fixture_json(name)?;
            if kind != args.kind {
                bail!("fixture `{name}` is a {kind:?}, not a {:?}", args.kind);
            }
            (Some(text), None)
        }
        (None, Some(path)) => (None, Some(path.as_path())),
        (None, None) => bail!("give a FILE or --fixture NAME"),
    };
    let load = || -> Result<String> {
        match (&text, path) {
            (Some(t), _) => Ok(t.clone()),
            (None, Some(p)) => read(p),
            _ => unreachable!(),
        }
    };
    let report = match args.kind {
        Kind::Latin => {
            let grid: Vec<Vec<usize>> = parse(&load()?, args.kind)?;
            let mut report = VerificationReport::new("Latin square");
            match validate_latin(grid) {
                Ok(_) => report.push(ReportItem::pass("latin", None)),
                Err(e) => report.push(ReportItem::fail("latin", vec![e.to_string()])),
            }
            report
        }
        Kind::Mols => verify_mols(parse::<RawMols>(&load()?, args.kind)?.squares),
        Kind::QuasiSudoku => {
            let doc: SquareDoc = parse(&load()?, args.kind)?;
            let mut report = VerificationReport::new("quasi-Sudoku square");
            match structure(&mut report, doc.to_quasi()) {
                Some(q) => verify_quasi_sudoku(&q),
                None => report,
            }
        }
        Kind::Overlay => {
            let doc: OverlayDoc = parse(&load()?, args.kind)?;
            let mut report = VerificationReport::new("overlay");
            match structure(&mut report, doc.to_overlay()) {
                Some(o) => verify_double_orthogonality(&o),
                None => report,
            }
        }
        Kind::Oa => {
            let doc = match path {
                Some(p) => read_oa(p, args.kind)?,
                None => parse(&load()?, args.kind)?,
            };
            check_array(&doc, args)
        }
        Kind::SlicedOa => {
            let doc = match path {
                Some(p) => read_oa(p, args.kind)?,
                None => parse(&load()?, args.kind)?,
            };
            let mut report = VerificationReport::new("sliced array");
            if let Some(s) = structure(&mut report, doc.to_sliced()) {
                let mut full = verify_oa_strength(s.full(), 2);
                full.subject = "full array".into();
                report.absorb(full);
                report.absorb(s.verify());
            }
            report
        }
        Kind::Design => {
            let design = match path {
                Some(p) => read_design(p)?,
                None => bail!("no embedded design fixture"),
            };
            verify_design(&design)
        }
    };
    let passed = report.passed();
    match args.format {
        ReportFormat::Text => print!("{report}"),
        ReportFormat::Json => print!("{}", to_json(&report)),
    }
    Ok(passed)
}

pub fn plot_data(args: &PlotDataArgs) -> Result<bool> {
    let design = read_design(&args.file)?;
    let [i, j] = args.columns[..] else {
        bail!("--columns takes exactly two indices, e.g. --columns 0,1");
    };
    for c in [i, j] {
        if c >= design.factors() {
            return Err(Error::ColumnOutOfRange {
                column: c,
                columns: design.factors(),
            }
            .into());
        }
    }
    if let Some(q) = args.slice {
        if q >= design.slice_count() {
            return Err(Error::SliceOutOfRange {
                slice: q,
                slices: design.slice_count(),
            }
            .into());
        }
    }
    let mut out = String::from("x,y,slice\n");
    for (p, &label) in design.points.iter().zip(&design.slice_labels) {
        if args.slice.is_none_or(|q| q == label) {
            out.push_str(&format!("{},{},{label}\n", p[i], p[j]));
        }
    }
    emit(&out, args.output.as_deref())?;
    Ok(true)
}
