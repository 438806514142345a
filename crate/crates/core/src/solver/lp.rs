use std::fmt::Write;

use crate::solver::model::{ConstraintModel, Sense, Var};

const LINE_WIDTH: usize = 78;

/// Row name safe for LP readers: `feas-2 [1,2]` becomes `feas_2(1,2)`.
pub fn row_name(tag: &str, index: &[usize]) -> String {
    let idx: Vec<String> = index.iter().map(|i| i.to_string()).collect();
    format!("{}({})", tag.replace('-', "_"), idx.join(","))
}

/// Renders the model in CPLEX LP format with a zero objective.
///
/// Output depends only on the model, so equal inputs give identical bytes.
pub fn export_lp(model: &ConstraintModel) -> String {
    let mut out = String::new();
    let inst = model.instance();
    let _ = writeln!(
        out,
        "\\ teams={} problems={} rooms={}",
        inst.team_count(),
        inst.problem_count(),
        inst.rooms().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
    );
    out.push_str("Minimize\n obj: 0\nSubject To\n");
    for c in model.constraints() {
        let mut line = format!(" {}:", row_name(c.tag.name(), &c.index));
        for (n, &(v, a)) in c.terms.iter().enumerate() {
            let term = match (a, n) {
                (1, 0) => format!(" {}", model.var_name(v)),
                (-1, _) => format!(" - {}", model.var_name(v)),
                (1, _) => format!(" + {}", model.var_name(v)),
                (a, _) if a < 0 => format!(" - {} {}", -a, model.var_name(v)),
                (a, 0) => format!(" {a} {}", model.var_name(v)),
                (a, _) => format!(" + {a} {}", model.var_name(v)),
            };
            push_wrapped(&mut out, &mut line, &term);
        }
        let sense = match c.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        };
        push_wrapped(&mut out, &mut line, &format!(" {sense} {}", c.rhs));
        out.push_str(&line);
        out.push('\n');
    }
    if model.y_count() > 0 {
        out.push_str("Bounds\n");
        for v in model.x_count()..model.var_count() {
            let _ = writeln!(out, " 0 <= {} <= 1", model.var_name(v));
        }
    }
    out.push_str("Binary\n");
    let mut line = String::new();
    for v in 0..model.x_count() {
        push_wrapped(&mut out, &mut line, &format!(" {}", model.var_name(v)));
    }
    flush(&mut out, &mut line);
    if model.y_count() > 0 {
        out.push_str("General\n");
        for v in model.x_count()..model.var_count() {
            debug_assert!(matches!(model.var(v), Var::Y { .. }));
            push_wrapped(&mut out, &mut line, &format!(" {}", model.var_name(v)));
        }
        flush(&mut out, &mut line);
    }
    out.push_str("End\n");
    out
}

fn push_wrapped(out: &mut String, line: &mut String, piece: &str) {
    if !line.is_empty() && line.len() + piece.len() > LINE_WIDTH {
        out.push_str(line);
        out.push('\n');
        line.clear();
        line.push_str("   ");
    }
    line.push_str(piece);
}

fn flush(out: &mut String, line: &mut String) {
    if !line.is_empty() {
        out.push_str(line);
        out.push('\n');
        line.clear();
    }
}
