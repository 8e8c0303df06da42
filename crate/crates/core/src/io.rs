//! Plain-text module files.
//!
//! ```text
//! # the tangent bundle of the plane
//! ring p=2 n=2 vars=x,y,z
//! name T
//! gens [-1, -1, -1]
//! rels [[x], [y], [z]]
//! ```
//!
//! `gens [d_0, ...]` lists generator degrees (the summand `S(-d_k)`), and
//! `rels` is the relation matrix with one row per generator and one column
//! per relation. `rels []` gives a free module. `#` starts a comment and
//! `rels` may continue over several lines until its brackets close.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::groebner::vector::ModVec;
use crate::poly::{parse_polynomial_at, GradedRing, Polynomial};
use crate::resolve::{FreeModule, PresentedModule};

/// A parsed module together with its variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFile {
    pub module: PresentedModule,
    pub names: Vec<String>,
}

impl ModuleFile {
    /// Uses the ring's default variable names.
    pub fn new(module: PresentedModule) -> Self {
        let names = module.ring().default_names();
        ModuleFile { module, names }
    }
}

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        col,
        msg: msg.into(),
    })
}

/// A character with its 1-based position.
#[derive(Clone, Copy)]
struct Ch {
    c: char,
    line: usize,
    col: usize,
}

struct Cursor<'a> {
    chars: &'a [Ch],
    pos: usize,
    /// Position reported at end of input.
    end: (usize, usize),
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].c.is_whitespace() {
            self.pos += 1;
        }
    }

    fn here(&self) -> (usize, usize) {
        self.chars
            .get(self.pos)
            .map_or(self.end, |c| (c.line, c.col))
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.c)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => {
                let (l, k) = self.here();
                perr(l, k, format!("expected '{want}', found '{c}'"))
            }
            None => perr(
                self.end.0,
                self.end.1,
                format!("expected '{want}', found end of input"),
            ),
        }
    }

    /// Text up to the next `,` or `]` with the position of its first character.
    fn item(&mut self) -> Result<(String, usize, usize)> {
        self.skip_ws();
        let (l, k) = self.here();
        let start = self.pos;
        while self.pos < self.chars.len() && !matches!(self.chars[self.pos].c, ',' | ']' | '[') {
            if self.chars[self.pos].line != l {
                let c = self.chars[self.pos];
                return perr(c.line, c.col, "an entry may not span lines");
            }
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.c).collect();
        if s.trim().is_empty() {
            return perr(l, k, "empty entry");
        }
        Ok((s, l, k))
    }

    /// `[a, b, ...]` of items; `[]` allowed.
    fn list(&mut self) -> Result<Vec<(String, usize, usize)>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.item()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => {
                    let (l, k) = self.here();
                    return perr(l, k, "expected ',' or ']'");
                }
            }
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<(String, usize, usize)>>> {
        self.expect('[')?;
        let mut rows = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(rows);
        }
        loop {
            rows.push(self.list()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(rows);
                }
                _ => {
                    let (l, k) = self.here();
                    return perr(l, k, "expected ',' or ']' between rows");
                }
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => {
                let (l, k) = self.here();
                perr(l, k, format!("unexpected '{c}' after the value"))
            }
        }
    }
}

fn positioned(text: &str, line: usize, col0: usize) -> Vec<Ch> {
    text.chars()
        .enumerate()
        .map(|(i, c)| Ch {
            c,
            line,
            col: col0 + i,
        })
        .collect()
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

struct Header {
    ring: GradedRing,
    names: Vec<String>,
}

fn parse_ring(rest: &str, line: usize, col0: usize) -> Result<Header> {
    let mut p = None;
    let mut n = None;
    let mut names: Option<Vec<String>> = None;
    let mut col = col0;
    for word in rest.split(' ') {
        let here = col;
        col += word.chars().count() + 1;
        if word.is_empty() {
            continue;
        }
        let Some((key, val)) = word.split_once('=') else {
            return perr(line, here, format!("expected key=value, found '{word}'"));
        };
        let vcol = here + key.chars().count() + 1;
        match key {
            "p" => {
                p = Some(
                    val.parse::<u64>()
                        .or_else(|_| perr(line, vcol, "p must be an integer"))?,
                )
            }
            "n" => {
                n = Some(
                    val.parse::<usize>()
                        .or_else(|_| perr(line, vcol, "n must be an integer"))?,
                )
            }
            "vars" => {
                let v: Vec<String> = val.split(',').map(str::to_string).collect();
                if v.iter().any(|s| {
                    s.is_empty() || !s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                }) || !v
                    .iter()
                    .all(|s| s.chars().next().is_some_and(|c| c.is_ascii_alphabetic()))
                {
                    return perr(line, vcol, "variable names must be identifiers");
                }
                names = Some(v);
            }
            _ => return perr(line, here, format!("unknown ring key '{key}'")),
        }
    }
    let Some(p) = p else {
        return perr(line, col0, "ring needs p=<prime>");
    };
    let Some(n) = n else {
        return perr(line, col0, "ring needs n=<projective dimension>");
    };
    let ring = GradedRing::projective(p, n).map_err(|e| Error::Parse {
        line,
        col: col0,
        msg: e.to_string(),
    })?;
    let names = match names {
        Some(v) if v.len() != n + 1 => {
            return perr(
                line,
                col0,
                format!("{} variable names for {} variables", v.len(), n + 1),
            );
        }
        Some(v) => {
            let mut seen = std::collections::HashSet::new();
            if !v.iter().all(|s| seen.insert(s)) {
                return perr(line, col0, "duplicate variable name");
            }
            v
        }
        None => ring.default_names(),
    };
    Ok(Header { ring, names })
}

/// Parses a module file; errors carry 1-based line and column.
pub fn parse_module(text: &str) -> Result<ModuleFile> {
    let lines: Vec<&str> = text.lines().collect();
    let mut header: Option<Header> = None;
    let mut name: Option<String> = None;
    let mut gens: Option<Vec<i32>> = None;
    let mut rels: Option<Vec<Vec<(String, usize, usize)>>> = None;
    let mut i = 0;
    while i < lines.len() {
        let lineno = i + 1;
        let raw = strip_comment(lines[i]);
        i += 1;
        let trimmed = raw.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let (key, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed, ""));
        let rest_col = indent + key.len() + 2;
        let dup = |seen: bool| -> Result<()> {
            if seen {
                perr(lineno, indent + 1, format!("duplicate '{key}' line"))
            } else {
                Ok(())
            }
        };
        match key {
            "ring" => {
                dup(header.is_some())?;
                header = Some(parse_ring(rest.trim_end(), lineno, rest_col)?);
            }
            "name" => {
                dup(name.is_some())?;
                let v = rest.trim();
                if v.is_empty() {
                    return perr(lineno, rest_col, "empty name");
                }
                name = Some(v.to_string());
            }
            "gens" => {
                dup(gens.is_some())?;
                let chars = positioned(rest, lineno, rest_col);
                let mut cur = Cursor {
                    chars: &chars,
                    pos: 0,
                    end: (lineno, rest_col + rest.chars().count()),
                };
                let items = cur.list()?;
                cur.finish()?;
                let mut v = Vec::new();
                for (s, l, k) in items {
                    v.push(s.trim().parse::<i32>().or_else(|_| {
                        perr(l, k, format!("'{}' is not an integer degree", s.trim()))
                    })?);
                }
                gens = Some(v);
            }
            "rels" => {
                dup(rels.is_some())?;
                // Gather continuation lines until the brackets balance.
                let mut chars = positioned(rest, lineno, rest_col);
                let depth = |cs: &[Ch]| {
                    cs.iter()
                        .fold(0i64, |d, c| d + (c.c == '[') as i64 - (c.c == ']') as i64)
                };
                let mut end = (lineno, rest_col + rest.chars().count());
                while depth(&chars) > 0 && i < lines.len() {
                    let more = strip_comment(lines[i]);
                    chars.push(Ch {
                        c: '\n',
                        line: i,
                        col: end.1,
                    });
                    chars.extend(positioned(more, i + 1, 1));
                    end = (i + 1, more.chars().count() + 1);
                    i += 1;
                }
                let mut cur = Cursor {
                    chars: &chars,
                    pos: 0,
                    end,
                };
                let m = cur.matrix()?;
                cur.finish()?;
                rels = Some(m);
            }
            _ => return perr(lineno, indent + 1, format!("unknown line '{key}'")),
        }
    }
    let end_line = lines.len().max(1);
    let Some(Header { ring, names }) = header else {
        return perr(1, 1, "missing 'ring' line");
    };
    let Some(twists) = gens else {
        return perr(end_line, 1, "missing 'gens' line");
    };
    let rows = rels.unwrap_or_default();
    if !rows.is_empty() && rows.len() != twists.len() {
        let (_, l, k) = rows
            .last()
            .and_then(|r| r.first())
            .cloned()
            .unwrap_or_default();
        return perr(
            l.max(1),
            k.max(1),
            format!("{} rows for {} generators", rows.len(), twists.len()),
        );
    }
    let ncols = rows.first().map_or(0, |r| r.len());
    for r in &rows {
        if r.len() != ncols {
            let (_, l, k) = r.first().cloned().unwrap_or_default();
            return perr(
                l.max(1),
                k.max(1),
                format!("row has {} entries, expected {ncols}", r.len()),
            );
        }
    }
    let mut cols = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let mut entries = Vec::with_capacity(rows.len());
        let mut degree: Option<(i64, usize)> = None;
        for (k, row) in rows.iter().enumerate() {
            let (s, l, c) = &row[j];
            let lead = s.len() - s.trim_start().len();
            let f = parse_polynomial_at(ring, &names, s.trim(), *l, c + lead)?;
            if !f.is_homogeneous() {
                return Err(Error::GradedIncompatible {
                    row: k,
                    col: j,
                    detail: format!(
                        "entry '{}' at line {l}, column {c} is not homogeneous",
                        s.trim()
                    ),
                });
            }
            if let Some(d) = f.degree() {
                let total = d as i64 + twists[k] as i64;
                match degree {
                    None => degree = Some((total, k)),
                    Some((want, first)) if want != total => {
                        return Err(Error::GradedIncompatible {
                            row: k,
                            col: j,
                            detail: format!(
                                "entry '{}' at line {l}, column {c} has degree {total} but row {first} gives {want}",
                                s.trim()
                            ),
                        });
                    }
                    _ => {}
                }
            }
            entries.push(f);
        }
        cols.push(ModVec::from_entries(&entries));
    }
    let mut module = PresentedModule::from_columns(FreeModule::new(ring, twists), cols)?;
    if let Some(n) = name {
        module = module.with_name(n);
    }
    Ok(ModuleFile { module, names })
}

/// Normalized text; `parse_module` of it gives back the same module.
pub fn print_module(file: &ModuleFile) -> String {
    let m = &file.module;
    let ring = m.ring();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "ring p={} n={} vars={}",
        ring.p(),
        ring.projective_dim(),
        file.names.join(",")
    );
    if let Some(n) = m.name() {
        let _ = writeln!(out, "name {n}");
    }
    let gens: Vec<String> = m
        .generators()
        .twists()
        .iter()
        .map(|t| t.to_string())
        .collect();
    let _ = writeln!(out, "gens [{}]", gens.join(", "));
    if m.columns().is_empty() {
        out.push_str("rels []\n");
        return out;
    }
    let rows: Vec<String> = (0..m.generators().rank())
        .map(|k| {
            let row: Vec<String> = m
                .columns()
                .iter()
                .map(|c| c.entry(ring, k).display_with(&file.names))
                .collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    let _ = writeln!(out, "rels [{}]", rows.join(", "));
    out
}

/// Text for a module using the ring's default variable names.
pub fn module_to_text(m: &PresentedModule) -> String {
    print_module(&ModuleFile::new(m.clone()))
}

/// Convenience: the polynomial entries of relation column `j`.
pub fn column_entries(m: &PresentedModule, j: usize) -> Vec<Polynomial> {
    let ring = m.ring();
    (0..m.generators().rank())
        .map(|k| m.columns()[j].entry(ring, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{make_bundle, BundleCatalog};

    #[test]
    fn parses_a_quotient_ring() {
        let f = parse_module("ring p=5 n=2 vars=x,y,z\ngens [0]\nrels [[x*y]]\n").unwrap();
        assert_eq!(f.module.relation_twists(), &[2]);
        assert_eq!(f.module.generators().twists(), &[0]);
    }

    #[test]
    fn empty_relations_give_a_free_module() {
        let f = parse_module("ring p=3 n=1\ngens [1, -2]\nrels []\n").unwrap();
        assert!(f.module.is_free());
        assert_eq!(f.names, vec!["x", "y"]);
        let g = parse_module("ring p=3 n=1\ngens [0]\n").unwrap();
        assert!(g.module.is_free());
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let err =
            parse_module("ring p=5 n=2 vars=x,y,z\ngens [0, 0]\nrels [[x], [y^2]]\n").unwrap_err();
        match err {
            Error::GradedIncompatible { row, col, detail } => {
                assert_eq!((row, col), (1, 0));
                assert!(detail.contains("line 3"), "{detail}");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_module("ring p=5 n=2\ngens [0]\nrels [[x*y +]]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_module("ring p=4 n=2\ngens [0]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_module("ring p=5 n=2\ngens [0, q]\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                col: 10,
                msg: "'q' is not an integer degree".into()
            }
        );
        let err = parse_module("ring p=5 n=2\ngens [0]\nbogus 1\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    col: 1,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn printer_round_trips() {
        let r = GradedRing::projective(3, 2).unwrap();
        for m in [
            make_bundle(BundleCatalog::Tangent, r),
            make_bundle(BundleCatalog::Cotangent, r),
            make_bundle(BundleCatalog::Canonical, r),
        ] {
            let text = module_to_text(&m);
            let back = parse_module(&text).unwrap();
            assert_eq!(back.module, m, "{text}");
            assert_eq!(print_module(&back), text);
        }
    }

    #[test]
    fn multi_line_relations_and_comments() {
        let text = "# tangent\nring p=2 n=2 vars=a,b,c\nname T\ngens [-1, -1, -1]\nrels [[a],  # first\n      [b],\n      [c]]\n";
        let f = parse_module(text).unwrap();
        assert_eq!(f.module.name(), Some("T"));
        assert_eq!(f.names, vec!["a", "b", "c"]);
        let t = make_bundle(BundleCatalog::Tangent, f.module.ring());
        assert_eq!(f.module.relations(), t.relations());
        assert_eq!(
            print_module(&f),
            "ring p=2 n=2 vars=a,b,c\nname T\ngens [-1, -1, -1]\nrels [[a], [b], [c]]\n"
        );
    }
}
