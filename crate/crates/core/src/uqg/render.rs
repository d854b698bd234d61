//! Text rendering shared by free and normal-form elements.

use crate::scalar::Scalar;

fn is_compound(s: &str) -> bool {
    s.contains(" + ") || s.contains(" - ")
}

fn piece(num: &str, mono: &str) -> String {
    if mono.is_empty() {
        return num.to_string();
    }
    match num {
        "1" => mono.to_string(),
        "-1" => format!("-{mono}"),
        n if is_compound(n) => format!("({n})*{mono}"),
        n => format!("{n}*{mono}"),
    }
}

fn join(pieces: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in pieces.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

/// Render `Σ c_t m_t`, grouping terms whose coefficients share a
/// denominator as `(Σ n_t m_t)/(d)`.
pub fn render_terms(rows: &[(String, Scalar)]) -> String {
    if rows.is_empty() {
        return "0".into();
    }
    let mut groups: Vec<(Option<String>, Vec<String>)> = Vec::new();
    for (mono, c) in rows {
        let (n, d) = c.render_parts();
        let p = piece(&n, mono);
        match groups.iter_mut().find(|g| g.0 == d) {
            Some(g) => g.1.push(p),
            None => groups.push((d, vec![p])),
        }
    }
    let mut summands = Vec::new();
    for (d, pieces) in groups {
        match d {
            None => summands.extend(pieces),
            Some(d) => {
                let inner = join(&pieces);
                let inner = if pieces.len() > 1 || inner.contains('*') && is_compound(&inner) {
                    format!("({inner})")
                } else {
                    inner
                };
                let d = if is_compound(&d) || d.contains('*') {
                    format!("({d})")
                } else {
                    d
                };
                summands.push(format!("{inner}/{d}"));
            }
        }
    }
    join(&summands)
}
