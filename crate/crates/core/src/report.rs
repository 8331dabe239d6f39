//! Markdown analysis reports.
//!
//! What goes into a report depends on the input:
//!
//! | input               | file                          | contents                |
//! |---------------------|-------------------------------|-------------------------|
//! | numeric 2×2         | `Report_<name>.md`            | extensions + properties |
//! | parametric 2×2      | `Report_<name>_extensions.md` | extensions              |
//! | numeric n×m         | `Report_<name>_properties.md` | properties              |
//! | parametric n×m      | none                          |                         |

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::extensions::{
    block_formulas, extend, gamma1, gamma2, gamma3, BlockFormula, ClassParam, ExtensionClass,
};
use crate::game::Bimatrix;
use crate::solver::{solve, Analyses};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportKind {
    Full2x2Numeric,
    ExtensionsOnlySymbolic2x2,
    PropertiesOnlyNumericNxM,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportPlan {
    pub kind: ReportKind,
    /// `None` exactly when no report is produced.
    pub file_name: Option<String>,
}

pub const PROPERTY_SECTIONS: [&str; 3] = ["Nash Equilibria", "Maximin", "Dominated Strategies"];

pub fn plan_report(g: &Bimatrix, name: &str) -> ReportPlan {
    let (kind, suffix) = match (g.is_two_by_two(), g.is_numeric()) {
        (true, true) => (ReportKind::Full2x2Numeric, ""),
        (true, false) => (ReportKind::ExtensionsOnlySymbolic2x2, "_extensions"),
        (false, true) => (ReportKind::PropertiesOnlyNumericNxM, "_properties"),
        (false, false) => {
            return ReportPlan {
                kind: ReportKind::None,
                file_name: None,
            }
        }
    };
    ReportPlan {
        kind,
        file_name: Some(format!("Report_{name}{suffix}.md")),
    }
}

/// Report names are restricted to `[A-Za-z0-9_-]+`.
pub fn validate_name(name: &str) -> Result<()> {
    if !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
    {
        Ok(())
    } else {
        Err(Error::InvalidName(name.to_owned()))
    }
}

/// The report text, or `NoReport` for a parametric game that is not 2×2.
pub fn render_report(g: &Bimatrix, name: &str) -> Result<String> {
    validate_name(name)?;
    let plan = plan_report(g, name);
    let mut out = String::new();
    let _ = writeln!(out, "# Game report: {name}\n");
    let _ = writeln!(out, "Generated by qegs {}\n", env!("CARGO_PKG_VERSION"));
    out.push_str("**Input game**");
    if let Some(p) = g.parameter().filter(|_| !g.is_numeric()) {
        let _ = write!(out, " (parameter `{p}`)");
    }
    out.push_str("\n\n");
    out.push_str(&matrix_table(g));

    match plan.kind {
        ReportKind::None => return Err(Error::NoReport),
        ReportKind::Full2x2Numeric => {
            extension_sections(g, &mut out)?;
            property_sections(g, &mut out)?;
        }
        ReportKind::ExtensionsOnlySymbolic2x2 => {
            out.push_str("\n**Relabelled games**\n");
            for (label, h) in [("Γ1", gamma1(g)?), ("Γ2", gamma2(g)?), ("Γ3", gamma3(g)?)] {
                let _ = write!(out, "\n{label}:\n\n");
                out.push_str(&matrix_table(&h));
            }
            extension_sections(g, &mut out)?;
        }
        ReportKind::PropertiesOnlyNumericNxM => property_sections(g, &mut out)?,
    }
    Ok(out)
}

/// Writes the report into `out_dir` and returns its path.
pub fn generate_report(g: &Bimatrix, name: &str, out_dir: &Path) -> Result<PathBuf> {
    let text = render_report(g, name)?;
    let file = plan_report(g, name).file_name.ok_or(Error::NoReport)?;
    fs::create_dir_all(out_dir)?;
    let path = out_dir.join(file);
    fs::write(&path, text)?;
    Ok(path)
}

fn extension_sections(g: &Bimatrix, out: &mut String) -> Result<()> {
    for class in ExtensionClass::ALL {
        let _ = write!(out, "\n## {class}\n\n");
        match extend(g, class, (class.size() == 4).then_some(&ClassParam::Symbolic)) {
            Ok(ext) => {
                if let Some(p) = class.param_kind().name().filter(|_| !ext.is_numeric()) {
                    let _ = writeln!(out, "Parameter `{p}`{}.\n", param_note(p));
                }
                out.push_str(&matrix_table(&ext));
            }
            Err(Error::ParametricBase(_)) => {
                let formulas = block_formulas(class).expect("4x4 class");
                let p = class.param_kind().name().expect("parametrised class");
                let _ = writeln!(
                    out,
                    "Block form over the input game Γ and its relabellings, parameter `{p}`{}.\n",
                    param_note(p)
                );
                out.push_str(&block_table(&formulas));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn param_note(p: &str) -> &'static str {
    match p {
        "a" => " in [0, 1], a' = 1 - a, b = (2a - 1)^2, b' = 1 - b",
        _ => " in [0, 1], t' = 1 - t",
    }
}

fn property_sections(g: &Bimatrix, out: &mut String) -> Result<()> {
    let result = solve(g, Analyses::ALL)?;
    let sets = &result.sets;
    let row = |i: usize| label(g.row_labels(), i);
    let col = |j: usize| label(g.col_labels(), j);

    let _ = write!(out, "\n## {}\n\n", PROPERTY_SECTIONS[0]);
    let ne = sets.nash.as_deref().unwrap_or_default();
    if ne.is_empty() {
        out.push_str("No pure Nash equilibrium.\n");
    }
    for p in ne {
        let e = g.entry(p.row, p.col);
        let _ = writeln!(
            out,
            "- {p} = ({}, {}) with payoff ({}, {})",
            row(p.row),
            col(p.col),
            e.u1,
            e.u2
        );
    }

    let _ = write!(out, "\n## {}\n\n", PROPERTY_SECTIONS[1]);
    let (v1, v2) = result.security_levels.clone().expect("maximin requested");
    let _ = writeln!(
        out,
        "- Player 1: {} (security level {v1})",
        index_list(sets.maximin_rows.as_deref().unwrap_or_default(), &row)
    );
    let _ = writeln!(
        out,
        "- Player 2: {} (security level {v2})",
        index_list(sets.maximin_cols.as_deref().unwrap_or_default(), &col)
    );

    let _ = write!(out, "\n## {}\n\n", PROPERTY_SECTIONS[2]);
    let _ = writeln!(
        out,
        "- Player 1: {}",
        index_list(sets.dominated_rows.as_deref().unwrap_or_default(), &row)
    );
    let _ = writeln!(
        out,
        "- Player 2: {}",
        index_list(sets.dominated_cols.as_deref().unwrap_or_default(), &col)
    );
    Ok(())
}

fn label(labels: Option<&[String]>, i: usize) -> String {
    labels.map_or_else(|| (i + 1).to_string(), |l| l[i].clone())
}

fn index_list(idx: &[usize], name: &dyn Fn(usize) -> String) -> String {
    if idx.is_empty() {
        return "none".into();
    }
    idx.iter()
        .map(|&i| format!("{} ({})", i + 1, name(i)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn matrix_table(g: &Bimatrix) -> String {
    let mut out = String::from("|   |");
    for j in 0..g.cols() {
        let _ = write!(out, " {} |", label(g.col_labels(), j));
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(g.cols()));
    out.push('\n');
    for i in 0..g.rows() {
        let _ = write!(out, "| {} |", label(g.row_labels(), i));
        for j in 0..g.cols() {
            let _ = write!(out, " {} |", g.entry(i, j));
        }
        out.push('\n');
    }
    out
}

fn block_table(formulas: &[BlockFormula; 3]) -> String {
    let term = |f: &BlockFormula| {
        f.iter()
            .map(|(c, v)| format!("{}·{}", c.symbol(), v.symbol()))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    format!(
        "|   | I, iX | U1, U2 |\n|---|---|---|\n| I, iX | Γ | {} |\n| U1, U2 | {} | {} |\n",
        term(&formulas[0]),
        term(&formulas[1]),
        term(&formulas[2])
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::presets::*;
    use crate::game::PayoffPair;
    use crate::poly::PayoffPoly;

    fn symbolic_pd() -> Bimatrix {
        let x = PayoffPoly::var("x");
        Bimatrix::new(vec![
            vec![PayoffPair::new(x.clone(), x.clone()), PayoffPair::new(0, 5)],
            vec![PayoffPair::new(5, 0), PayoffPair::new(1, 1)],
        ])
        .unwrap()
    }

    fn symbolic_two_by_three() -> Bimatrix {
        let x = PayoffPoly::var("x");
        Bimatrix::new(vec![
            vec![PayoffPair::new(x, 0), PayoffPair::new(0, 5), PayoffPair::new(1, 1)],
            vec![PayoffPair::new(5, 0), PayoffPair::new(1, 1), PayoffPair::new(2, 2)],
        ])
        .unwrap()
    }

    fn h2(text: &str) -> Vec<&str> {
        text.lines().filter_map(|l| l.strip_prefix("## ")).collect()
    }

    #[test]
    fn plans() {
        let plan = |g: &Bimatrix| plan_report(g, "x");
        assert_eq!(plan(&prisoners_dilemma()).kind, ReportKind::Full2x2Numeric);
        assert_eq!(plan(&prisoners_dilemma()).file_name.as_deref(), Some("Report_x.md"));
        assert_eq!(
            plan(&symbolic_pd()).file_name.as_deref(),
            Some("Report_x_extensions.md")
        );
        assert_eq!(
            plan(&risky_two_by_three()).file_name.as_deref(),
            Some("Report_x_properties.md")
        );
        assert_eq!(plan(&symbolic_two_by_three()).kind, ReportKind::None);
    }

    #[test]
    fn full_report_sections() {
        let text = render_report(&prisoners_dilemma(), "pd").unwrap();
        let mut expected: Vec<&str> = ExtensionClass::ALL.iter().map(|c| c.name()).collect();
        expected.extend(PROPERTY_SECTIONS);
        assert_eq!(h2(&text), expected);
        assert!(text.contains("- (2, 2) = (2, 2) with payoff (1, 1)"));
        assert!(text.contains("| U | (4, 3/2) | (1/2, 3) | (9/4, 9/4) |"));
        let body = text.lines().filter(|l| !l.starts_with("Generated by"));
        for line in body {
            let b = line.as_bytes();
            let decimal = b.windows(3).any(|w| w[0].is_ascii_digit() && w[1] == b'.' && w[2].is_ascii_digit());
            assert!(!decimal, "{line}");
        }
        assert_eq!(text, render_report(&prisoners_dilemma(), "pd").unwrap());
    }

    #[test]
    fn symbolic_report_has_block_forms() {
        let text = render_report(&symbolic_pd(), "s").unwrap();
        let expected: Vec<&str> = ExtensionClass::ALL.iter().map(|c| c.name()).collect();
        assert_eq!(h2(&text), expected);
        assert!(text.contains("a·Γ + a'·Γ3"));
    }

    #[test]
    fn properties_report() {
        let text = render_report(&risky_two_by_three(), "g23").unwrap();
        assert_eq!(h2(&text), PROPERTY_SECTIONS);
        assert!(text.contains("- (2, 3) = (B, R) with payoff (3, 3)"));
        assert!(text.contains("- Player 1: 1 (T) (security level 2)"));
        assert!(text.contains("- Player 2: 1 (L)"));
    }

    #[test]
    fn no_report_and_bad_names() {
        assert!(matches!(
            render_report(&symbolic_two_by_three(), "x"),
            Err(Error::NoReport)
        ));
        assert!(matches!(
            render_report(&prisoners_dilemma(), "../evil"),
            Err(Error::InvalidName(_))
        ));
    }

    #[test]
    fn writes_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = generate_report(&prisoners_dilemma(), "pd", dir.path()).unwrap();
        assert_eq!(path.file_name().unwrap(), "Report_pd.md");
        assert!(fs::read_to_string(path).unwrap().starts_with("# Game report: pd"));
    }
}
