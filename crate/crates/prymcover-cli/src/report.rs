//! Table rows: per-case bucketing of analyzed covers by `(|G|, g_Z)` family,
//! split into hyperelliptic / non-hyperelliptic branches, with the variants
//! of Prym decompositions that occurred.

use std::collections::BTreeMap;

use prymcover::covers::{genus, Quadruple};
use prymcover::perm::PermGroup;
use prymcover::prym::{AnalysisReport, Verdict};
use serde::Serialize;

use crate::casefile::{CaseFile, DimVariant, ExpectedFamily};

#[derive(Clone, Debug, Serialize)]
pub struct FamilyRow {
    pub group_order: usize,
    pub g_z: u32,
    /// `[positive, negative]`: covers where a Prym piece was found / not.
    pub nonhyp: [usize; 2],
    pub hyp: [usize; 2],
    pub variants_nonhyp: Vec<DimVariant>,
    pub variants_hyp: Vec<DimVariant>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub case: String,
    pub g_x: u32,
    pub g_y: u32,
    pub d_x: u32,
    pub families: Vec<FamilyRow>,
}

pub fn build_row(
    case: &CaseFile,
    quadruples: &[Quadruple],
    reports: &[AnalysisReport],
) -> TableRow {
    let mut buckets: BTreeMap<(usize, u32), FamilyRow> = BTreeMap::new();
    for (q, report) in quadruples.iter().zip(reports) {
        let trivial = PermGroup::trivial(q.sigma.degree);
        let g_z = genus(&q.sigma, &q.group, &trivial).expect("valid quadruple");
        let entry = buckets.entry((q.group.order(), g_z)).or_insert(FamilyRow {
            group_order: q.group.order(),
            g_z,
            nonhyp: [0, 0],
            hyp: [0, 0],
            variants_nonhyp: Vec::new(),
            variants_hyp: Vec::new(),
        });
        let positive = report.verdict != Verdict::None;
        let counts = if report.x_hyperelliptic {
            &mut entry.hyp
        } else {
            &mut entry.nonhyp
        };
        counts[if positive { 0 } else { 1 }] += 1;
        if positive {
            let variant = DimVariant {
                dims: report.family_dims.clone(),
                degrees: report.family_degrees.clone(),
            };
            let variants = if report.x_hyperelliptic {
                &mut entry.variants_hyp
            } else {
                &mut entry.variants_nonhyp
            };
            if !variants.contains(&variant) {
                variants.push(variant);
            }
        }
    }
    TableRow {
        case: case.name.clone(),
        g_x: case.cover.g_x,
        g_y: case.cover.g_y,
        d_x: case.cover.d_x,
        families: buckets.into_values().collect(),
    }
}

fn fmt_variants(variants: &[DimVariant]) -> (String, String) {
    if variants.is_empty() {
        return ("-".into(), "-".into());
    }
    let dims = variants
        .iter()
        .map(|v| format!("{:?}", v.dims))
        .collect::<Vec<_>>()
        .join(" or ");
    let degs = variants
        .iter()
        .map(|v| format!("{:?}", v.degrees))
        .collect::<Vec<_>>()
        .join(" or ");
    (dims, degs)
}

/// Aligned text rendering, one line per `(|G|, g_Z)` family.
pub fn render(rows: &[TableRow]) -> String {
    let header = [
        "case", "gX,gY,dX", "#G,gZ", "nhyp", "hyp", "dims nhyp", "dims hyp", "deg nhyp",
        "deg hyp",
    ];
    let mut grid: Vec<[String; 9]> = Vec::new();
    for row in rows {
        for (i, fam) in row.families.iter().enumerate() {
            let (dims_n, degs_n) = fmt_variants(&fam.variants_nonhyp);
            let (dims_h, degs_h) = fmt_variants(&fam.variants_hyp);
            grid.push([
                if i == 0 { row.case.clone() } else { String::new() },
                if i == 0 {
                    format!("{},{},{}", row.g_x, row.g_y, row.d_x)
                } else {
                    String::new()
                },
                format!("{},{}", fam.group_order, fam.g_z),
                format!("[{},{}]", fam.nonhyp[0], fam.nonhyp[1]),
                format!("[{},{}]", fam.hyp[0], fam.hyp[1]),
                dims_n,
                dims_h,
                degs_n,
                degs_h,
            ]);
        }
        if row.families.is_empty() {
            grid.push([
                row.case.clone(),
                format!("{},{},{}", row.g_x, row.g_y, row.d_x),
                "-".into(),
                "-".into(),
                "-".into(),
                "-".into(),
                "-".into(),
                "-".into(),
                "-".into(),
            ]);
        }
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for line in &grid {
        for (i, cell) in line.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let fmt_line = |cells: &[String]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<w$}", c, w = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push_str(&fmt_line(
        &header.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    ));
    out.push('\n');
    for line in &grid {
        out.push_str(&fmt_line(line));
        out.push('\n');
    }
    out
}

/// Compare against the case's expected block; returns human-readable
/// mismatch descriptions (empty when everything matches).
pub fn compare_expected(row: &TableRow, expected: &[ExpectedFamily]) -> Vec<String> {
    let mut issues = Vec::new();
    if row.families.len() != expected.len() {
        issues.push(format!(
            "{}: {} families found, {} expected",
            row.case,
            row.families.len(),
            expected.len()
        ));
    }
    for exp in expected {
        let Some(fam) = row
            .families
            .iter()
            .find(|f| f.group_order == exp.group_order && f.g_z == exp.g_z)
        else {
            issues.push(format!(
                "{}: expected family (|G|,g_Z)=({},{}) not found",
                row.case, exp.group_order, exp.g_z
            ));
            continue;
        };
        if let Some(counts) = exp.nonhyp {
            if fam.nonhyp != counts {
                issues.push(format!(
                    "{} ({},{}): nonhyp counts {:?}, expected {:?}",
                    row.case, exp.group_order, exp.g_z, fam.nonhyp, counts
                ));
            }
        }
        if let Some(counts) = exp.hyp {
            if fam.hyp != counts {
                issues.push(format!(
                    "{} ({},{}): hyp counts {:?}, expected {:?}",
                    row.case, exp.group_order, exp.g_z, fam.hyp, counts
                ));
            }
        }
        for (got, want, which) in [
            (&fam.variants_nonhyp, &exp.variants_nonhyp, "nonhyp"),
            (&fam.variants_hyp, &exp.variants_hyp, "hyp"),
        ] {
            let mut got_sorted = got.clone();
            let mut want_sorted = want.clone();
            got_sorted.sort_by_key(|v| format!("{v:?}"));
            want_sorted.sort_by_key(|v| format!("{v:?}"));
            if got_sorted != want_sorted {
                issues.push(format!(
                    "{} ({},{}): {which} variants {:?}, expected {:?}",
                    row.case, exp.group_order, exp.g_z, got, want
                ));
            }
        }
    }
    issues
}
