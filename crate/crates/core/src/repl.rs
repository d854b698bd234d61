//! Line evaluator behind `coideal eval` and the interactive prompt.
//!
//! ```text
//! case III-A7          set the case context (ambient algebra and B_i)
//! type B2              set only the ambient algebra
//! nf(x)                normal form in U_q(g); B_i expand to their definitions
//! tau(i, ±, x)         formal image under τ_i (+) or τ_i^- (-)
//! T(i, ±, x)           formal image under Lusztig's T_i (+) or T_i^{-1} (-)
//! x                    the parsed expression, unreduced
//! ```
//!
//! Calls nest, e.g. `nf(tau(1,-, B2))`. Node indices are 1-based.

use crate::braidact::{tau_images, CaseContext, TauDir};
use crate::error::{Error, Result};
use crate::lusztig::{lusztig_images, Direction, GeneratorImages};
use crate::rootdata::{CaseSpec, RootDatum};
use crate::uqg::{parse_expression, FreeElement, GenSymbol, Uq};

#[derive(Default)]
pub struct Session {
    case: Option<CaseContext>,
    uq: Option<Uq>,
}

/// Value of a line: a free expression or a reduced element, already rendered.
enum Value {
    Free(FreeElement),
    Reduced(String),
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Shift the offset of a parse error by `by`.
fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + by,
            message,
        },
        e => e,
    }
}

/// Split `text` at top-level commas, returning each piece with its offset.
fn split_args(text: &str, base: usize) -> Result<Vec<(&str, usize)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(parse_err(base + k, "unbalanced ')'"));
                }
            }
            ',' if depth == 0 => {
                out.push((&text[start..k], base + start));
                start = k + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(parse_err(base + text.len(), "missing ')'"));
    }
    out.push((&text[start..], base + start));
    Ok(out)
}

/// Split `name(args)` into its parts when `text` starts with a known function.
fn as_call(text: &str, base: usize) -> Result<Option<(&str, &str, usize)>> {
    let Some(open) = text.find('(') else {
        return Ok(None);
    };
    let name = text[..open].trim_end();
    if !matches!(name, "nf" | "tau" | "T") {
        return Ok(None);
    }
    let mut depth = 0;
    for (k, c) in text.char_indices().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    if k + 1 != text.len() {
                        return Err(parse_err(base + k + 1, format!("unexpected input after {name}(...)")));
                    }
                    return Ok(Some((name, &text[open + 1..k], open + 1)));
                }
            }
            _ => {}
        }
    }
    Err(parse_err(base + text.len(), "missing ')'"))
}

fn parse_node(text: &str, at: usize) -> Result<usize> {
    let t = text.trim();
    match t.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i),
        _ => Err(parse_err(at, format!("expected a node index, found {t:?}"))),
    }
}

fn parse_sign(text: &str, at: usize) -> Result<bool> {
    match text.trim() {
        "-" | "-1" => Ok(false),
        "+" | "" | "1" => Ok(true),
        t => Err(parse_err(at, format!("expected '+' or '-', found {t:?}"))),
    }
}

fn apply_images(x: &FreeElement, g: &GeneratorImages) -> Result<FreeElement> {
    let mut missing = None;
    let y = x.substitute(&mut |s| match g.image(s) {
        Some(v) => v,
        None => {
            if matches!(s, GenSymbol::K(_)) {
                missing.get_or_insert(s);
            }
            FreeElement::sym(s)
        }
    });
    match missing {
        Some(s) => Err(Error::Config(format!("{} is not defined on {s}", g.label))),
        None => Ok(y),
    }
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    pub fn with_case(id: &str) -> Result<Self> {
        let mut s = Session::new();
        s.set_case(id)?;
        Ok(s)
    }

    pub fn set_case(&mut self, id: &str) -> Result<()> {
        let case = CaseSpec::parse(id)?;
        let ctx = CaseContext::new(&case)?;
        self.uq = Some(ctx.uq.clone());
        self.case = Some(ctx);
        Ok(())
    }

    pub fn set_type(&mut self, name: &str) -> Result<()> {
        self.uq = Some(Uq::new(&RootDatum::parse(name)?)?);
        self.case = None;
        Ok(())
    }

    pub fn case(&self) -> Option<&CaseContext> {
        self.case.as_ref()
    }

    fn datum(&self) -> Option<&RootDatum> {
        self.uq.as_ref().map(|u| u.datum())
    }

    fn uq(&self, at: usize) -> Result<&Uq> {
        self.uq
            .as_ref()
            .ok_or_else(|| parse_err(at, "no algebra set; use `case ID` or `type NAME` first"))
    }

    fn value(&self, text: &str, base: usize) -> Result<Value> {
        let lead = text.len() - text.trim_start().len();
        let t = text.trim();
        let base = base + lead;
        let Some((name, inner, off)) = as_call(t, base)? else {
            return parse_expression(t, self.datum()).map(Value::Free).map_err(|e| shift(e, base));
        };
        let args = split_args(inner, base + off)?;
        let free = |v: Value, at: usize| match v {
            Value::Free(x) => Ok(x),
            Value::Reduced(_) => Err(parse_err(at, "reduced values cannot be mapped again; drop the inner nf")),
        };
        match (name, args.as_slice()) {
            ("nf", [(x, at)]) => {
                let x = free(self.value(x, *at)?, *at)?;
                let v = match &self.case {
                    Some(ctx) => ctx.value(&x)?,
                    None => self.uq(*at)?.normal_form(&x)?,
                };
                Ok(Value::Reduced(v.to_string()))
            }
            ("tau", [(i, ai), (s, as_), (x, ax)]) => {
                let ctx = self.case.as_ref().ok_or_else(|| parse_err(base, "tau needs a case context"))?;
                let i = parse_node(i, *ai)?;
                if i > ctx.case.sigma_rank() {
                    return Err(parse_err(*ai, format!("node {i} outside the restricted rank {}", ctx.case.sigma_rank())));
                }
                let dir = if parse_sign(s, *as_)? { TauDir::Tau } else { TauDir::TauMinus };
                let g = tau_images(&ctx.case, i - 1, dir)?;
                let x = free(self.value(x, *ax)?, *ax)?;
                apply_images(&x, &g.images).map(Value::Free)
            }
            ("T", [(i, ai), (s, as_), (x, ax)]) => {
                let rd = self.uq(base)?.datum().clone();
                let i = parse_node(i, *ai)?;
                rd.check_node(i - 1).map_err(|e| parse_err(*ai, e.to_string()))?;
                let dir = if parse_sign(s, *as_)? { Direction::Forward } else { Direction::Inverse };
                let g = lusztig_images(&rd, i - 1, dir)?;
                let x = free(self.value(x, *ax)?, *ax)?;
                apply_images(&x, &g).map(Value::Free)
            }
            _ => Err(parse_err(base, format!("wrong number of arguments to {name}"))),
        }
    }

    /// Evaluate one line and render the result.
    pub fn eval(&mut self, line: &str) -> Result<String> {
        let t = line.trim();
        if let Some(id) = t.strip_prefix("case ") {
            self.set_case(id.trim())?;
            return Ok(format!("case {}", id.trim()));
        }
        if let Some(name) = t.strip_prefix("type ") {
            self.set_type(name.trim())?;
            return Ok(format!("type {}", name.trim()));
        }
        Ok(match self.value(line, 0)? {
            Value::Free(x) => x.to_string(),
            Value::Reduced(s) => s,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_line() {
        let mut s = Session::new();
        s.eval("type A1").unwrap();
        assert_eq!(s.eval("nf(E1*F1)").unwrap(), s.eval("nf(F1*E1 + (K1 - K1^-1)/(q - q^-1))").unwrap());
        assert_eq!(s.eval("nf(E1*F1 - F1*E1 - (K1 - K1^-1)/(q - q^-1))").unwrap(), "0");
    }

    #[test]
    fn offsets_are_absolute() {
        let mut s = Session::new();
        s.eval("type A2").unwrap();
        match s.eval("nf(E1 * %)") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_context() {
        let mut s = Session::new();
        assert!(s.eval("nf(E1)").is_err());
        assert!(s.eval("tau(1,-,B1)").is_err());
    }
}
