//! Minimal reader for the LP files written by `export_lp`.

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub name: String,
    pub terms: Vec<(i64, String)>,
    pub sense: String,
    pub rhs: i64,
}

#[derive(Debug, Default)]
pub struct LpFile {
    pub rows: Vec<Row>,
    pub bounds: BTreeMap<String, (i64, i64)>,
    pub binary: Vec<String>,
    pub general: Vec<String>,
}

fn is_var(tok: &str) -> bool {
    let mut parts = tok.split('_');
    matches!(parts.next(), Some("x" | "y"))
        && parts.clone().count() == 4
        && parts.all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()))
}

fn parse_row(text: &str) -> Result<Row, String> {
    let (name, body) = text.split_once(':').ok_or("row without name")?;
    let name = name.trim().to_string();
    let toks: Vec<&str> = body.split_whitespace().collect();
    let sense_at = toks
        .iter()
        .position(|t| matches!(*t, "<=" | ">=" | "="))
        .ok_or(format!("{name}: no sense"))?;
    let [rhs] = &toks[sense_at + 1..] else {
        return Err(format!("{name}: expected one rhs"));
    };
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut coef: Option<i64> = None;
    for &t in &toks[..sense_at] {
        match t {
            "+" => sign = 1,
            "-" => sign = -1,
            _ if is_var(t) => {
                terms.push((sign * coef.take().unwrap_or(1), t.to_string()));
                sign = 1;
            }
            _ => coef = Some(t.parse().map_err(|_| format!("{name}: bad token {t}"))?),
        }
    }
    if coef.is_some() {
        return Err(format!("{name}: dangling coefficient"));
    }
    let rhs = rhs.parse().map_err(|_| format!("{name}: bad rhs"))?;
    Ok(Row {
        name,
        terms,
        sense: toks[sense_at].to_string(),
        rhs,
    })
}

pub fn parse_lp(text: &str) -> Result<LpFile, String> {
    let mut lp = LpFile::default();
    let mut section = "";
    let mut pending: Option<String> = None;
    let mut ended = false;
    for line in text.lines() {
        if line.starts_with('\\') {
            continue;
        }
        if line.len() > 78 {
            return Err(format!("line longer than 78 characters: {line}"));
        }
        let trimmed = line.trim();
        if let Some(p) = pending.as_mut() {
            if line.starts_with("   ") && section == "Subject To" {
                p.push(' ');
                p.push_str(trimmed);
                continue;
            }
        }
        if let Some(p) = pending.take() {
            lp.rows.push(parse_row(&p)?);
        }
        match trimmed {
            "Minimize" | "Subject To" | "Bounds" | "Binary" | "General" => {
                section = match trimmed {
                    "Minimize" => "Minimize",
                    "Subject To" => "Subject To",
                    "Bounds" => "Bounds",
                    "Binary" => "Binary",
                    _ => "General",
                };
                continue;
            }
            "End" => {
                ended = true;
                continue;
            }
            _ => {}
        }
        if ended {
            return Err("text after End".into());
        }
        match section {
            "Minimize" => {
                if trimmed != "obj: 0" {
                    return Err(format!("unexpected objective {trimmed}"));
                }
            }
            "Subject To" => pending = Some(trimmed.to_string()),
            "Bounds" => {
                let t: Vec<&str> = trimmed.split_whitespace().collect();
                let [lo, "<=", v, "<=", hi] = t.as_slice() else {
                    return Err(format!("bad bound {trimmed}"));
                };
                lp.bounds.insert(v.to_string(), (lo.parse().unwrap(), hi.parse().unwrap()));
            }
            "Binary" => lp.binary.extend(trimmed.split_whitespace().map(String::from)),
            "General" => lp.general.extend(trimmed.split_whitespace().map(String::from)),
            _ => return Err(format!("line outside any section: {line}")),
        }
    }
    if let Some(p) = pending.take() {
        lp.rows.push(parse_row(&p)?);
    }
    if !ended {
        return Err("missing End".into());
    }
    Ok(lp)
}
