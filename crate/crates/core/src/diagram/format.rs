//! Line-oriented EGD text format.
//!
//! ```text
//! # comment
//! knot trefoil
//! crossings 3
//! sign 1 +1
//! sign 2 +1
//! sign 3 +1
//! sequence 1o 2u 3o 1u 2o 3u
//! blob 2 -1
//! ```

use std::fmt;

use super::{Blob, Endpoint, EnhancedGaussDiagram, Sign};
use crate::error::{Error, Result};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_sign(token: &str, line: usize) -> Result<Sign> {
    match token {
        "+1" | "1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        _ => Err(syntax(line, format!("expected +1 or -1, found `{token}`"))),
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{token}`")))
}

fn parse_endpoint(token: &str, line: usize) -> Result<Endpoint> {
    let (digits, side) = match token.char_indices().last() {
        Some((idx, 'o')) => (&token[..idx], Sign::Plus),
        Some((idx, 'u')) => (&token[..idx], Sign::Minus),
        _ => {
            return Err(syntax(
                line,
                format!("endpoint `{token}` must be a crossing number followed by `o` or `u`"),
            ))
        }
    };
    Ok(Endpoint {
        crossing: parse_usize(digits, line, "a crossing number")?,
        side,
    })
}

/// Parses and validates EGD text.
pub fn parse_egd(text: &str) -> Result<EnhancedGaussDiagram> {
    let mut name = None;
    let mut count: Option<usize> = None;
    let mut signs: Vec<Option<Sign>> = Vec::new();
    let mut sequence: Option<Vec<Endpoint>> = None;
    let mut blobs = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap_or_default();
        let args: Vec<&str> = tokens.collect();
        match keyword {
            "knot" => {
                if args.is_empty() {
                    return Err(syntax(line, "`knot` needs a name"));
                }
                name = Some(args.join(" "));
            }
            "crossings" => {
                let [n] = args[..] else {
                    return Err(syntax(line, "`crossings` takes exactly one number"));
                };
                if count.is_some() {
                    return Err(syntax(line, "`crossings` given twice"));
                }
                let n = parse_usize(n, line, "a crossing count")?;
                count = Some(n);
                signs = vec![None; n];
            }
            "sign" => {
                let [j, s] = args[..] else {
                    return Err(syntax(line, "`sign` takes a crossing number and +1 or -1"));
                };
                let n = count.ok_or_else(|| syntax(line, "`sign` before `crossings`"))?;
                let j = parse_usize(j, line, "a crossing number")?;
                if j == 0 || j > n {
                    return Err(syntax(line, format!("crossing {j} outside 1..={n}")));
                }
                if signs[j - 1].is_some() {
                    return Err(syntax(line, format!("sign of crossing {j} given twice")));
                }
                signs[j - 1] = Some(parse_sign(s, line)?);
            }
            "sequence" => {
                if sequence.is_some() {
                    return Err(syntax(line, "`sequence` given twice"));
                }
                sequence = Some(
                    args.iter()
                        .map(|t| parse_endpoint(t, line))
                        .collect::<Result<_>>()?,
                );
            }
            "blob" => {
                let [p, d] = args[..] else {
                    return Err(syntax(line, "`blob` takes a position and +1 or -1"));
                };
                blobs.push(Blob {
                    position: parse_usize(p, line, "a blob position")?,
                    delta: parse_sign(d, line)?,
                });
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }

    let count = count.ok_or_else(|| Error::Validation("missing `crossings` line".into()))?;
    let signs = signs
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| Error::Validation(format!("missing sign for crossing {}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let sequence = match sequence {
        Some(s) => s,
        None if count == 0 => Vec::new(),
        None => return Err(Error::Validation("missing `sequence` line".into())),
    };
    let diagram = EnhancedGaussDiagram::new(signs, sequence, blobs)?;
    Ok(match name {
        Some(n) => diagram.with_name(n),
        None => diagram,
    })
}

impl EnhancedGaussDiagram {
    /// Canonical EGD text; `parse_egd(&d.to_egd_string())` returns `d`.
    pub fn to_egd_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for EnhancedGaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "knot {name}")?;
        }
        writeln!(f, "crossings {}", self.crossings())?;
        for (i, s) in self.signs.iter().enumerate() {
            writeln!(f, "sign {} {:+}", i + 1, s.value())?;
        }
        write!(f, "sequence")?;
        for ep in &self.endpoints {
            let side = if ep.side == Sign::Plus { 'o' } else { 'u' };
            write!(f, " {}{side}", ep.crossing)?;
        }
        writeln!(f)?;
        for blob in &self.blobs {
            writeln!(f, "blob {} {:+}", blob.position, blob.delta.value())?;
        }
        Ok(())
    }
}
