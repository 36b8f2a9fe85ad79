//! Text formats.
//!
//! An algebra file:
//!
//! ```text
//! # F4
//! size 3
//! element_names 0 f g
//! minus
//! 0 0 0
//! 1 0 1
//! 2 2 0
//! restrict
//! 0 0 0
//! 0 1 2
//! 0 1 2
//! ```
//!
//! A concrete algebra file adds the base and one literal per element:
//!
//! ```text
//! base 1..2
//! dictionary
//! 0 {}
//! 1 {1->1}
//! 2 {1->2}
//! ```
//!
//! A corpus is several algebra files concatenated; each starts at its
//! `size` line. `#` starts a comment.

use std::fmt::Write as _;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::error::{Error, Result, MAX_ELEMENTS};
use crate::pfun::{Base, ConcreteAlgebra, PartialFunction};

struct Line<'a> {
    no: usize,
    /// Content with the comment removed.
    text: &'a str,
    /// 1-based column and text of each whitespace-separated token.
    tokens: Vec<(usize, &'a str)>,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn split_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (j, ch) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        tokens.push((text[..s].chars().count() + 1, &text[s..j]));
                        start = None;
                    }
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(Line {
                no: i + 1,
                text,
                tokens,
            })
        })
        .collect()
}

/// An algebra file, with the concrete sections when present.
#[derive(Clone, Debug)]
pub struct Document {
    pub algebra: FiniteAlgebra,
    pub concrete: Option<ConcreteAlgebra>,
}

struct Reader<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    /// Where an unexpected end of input is reported.
    end_line: usize,
}

impl<'a> Reader<'a> {
    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn next_line(&mut self, what: &str) -> Result<&Line<'a>> {
        let end = self.end_line;
        let line = self
            .lines
            .get(self.pos)
            .ok_or_else(|| perr(end, 1, format!("unexpected end of input: expected {what}")))?;
        self.pos += 1;
        Ok(line)
    }

    fn number(line: &Line, idx: usize, what: &str) -> Result<usize> {
        let (col, tok) = line.tokens[idx];
        tok.parse::<usize>()
            .map_err(|_| perr(line.no, col, format!("expected {what}, found `{tok}`")))
    }

    fn table(&mut self, name: &str, n: usize) -> Result<Vec<Elem>> {
        let mut cells = Vec::with_capacity(n * n);
        for row in 0..n {
            let line = self.next_line(&format!("row {} of the {name} table", row + 1))?;
            if line.tokens.len() != n {
                let col = line.tokens.get(n).map_or(line.text.len() + 1, |t| t.0);
                return Err(perr(
                    line.no,
                    col,
                    format!("{name} row {} has {} entries, expected {n}", row + 1, line.tokens.len()),
                ));
            }
            for i in 0..n {
                let v = Self::number(line, i, "an element id")?;
                if v >= n {
                    return Err(perr(
                        line.no,
                        line.tokens[i].0,
                        format!("{name}[{row}][{i}] = {v} is not an element id below {n}"),
                    ));
                }
                cells.push(v);
            }
        }
        Ok(cells)
    }

    /// One document starting at a `size` line; stops before the next one.
    fn document(&mut self) -> Result<Document> {
        let line = self.next_line("`size n`")?;
        let size_line = line.no;
        if line.tokens[0].1 != "size" || line.tokens.len() != 2 {
            return Err(perr(line.no, line.tokens[0].0, "expected `size n`"));
        }
        let n = Self::number(line, 1, "the element count")?;
        if n == 0 {
            return Err(perr(
                line.no,
                line.tokens[1].0,
                "an algebra must have at least one element",
            ));
        }
        if n > MAX_ELEMENTS {
            return Err(perr(
                line.no,
                line.tokens[1].0,
                format!("size {n} exceeds the cap of {MAX_ELEMENTS} elements"),
            ));
        }
        let mut names = None;
        let mut minus = None;
        let mut restrict = None;
        let mut base = None;
        let mut dictionary: Option<Vec<DictEntry>> = None;
        while let Some(line) = self.peek() {
            let (col, key) = line.tokens[0];
            let no = line.no;
            if key == "size" {
                break;
            }
            let dup = |present: bool| {
                if present {
                    Err(perr(no, col, format!("duplicate `{key}` section")))
                } else {
                    Ok(())
                }
            };
            match key {
                "element_names" => {
                    dup(names.is_some())?;
                    let line = self.next_line("element names")?;
                    let given: Vec<&str> = line.tokens[1..].iter().map(|t| t.1).collect();
                    if given.len() != n {
                        return Err(perr(no, col, format!("{} element names for {n} elements", given.len())));
                    }
                    for (i, name) in given.iter().enumerate() {
                        if given[..i].contains(name) {
                            return Err(perr(
                                no,
                                line.tokens[i + 1].0,
                                format!("duplicate element name `{name}`"),
                            ));
                        }
                    }
                    names = Some(given.into_iter().map(String::from).collect::<Vec<_>>());
                }
                "minus" | "restrict" => {
                    dup(if key == "minus" {
                        minus.is_some()
                    } else {
                        restrict.is_some()
                    })?;
                    let line = self.next_line(key)?;
                    if line.tokens.len() != 1 {
                        return Err(perr(
                            no,
                            line.tokens[1].0,
                            format!("rows of `{key}` start on the next line"),
                        ));
                    }
                    let cells = self.table(key, n)?;
                    if key == "minus" {
                        minus = Some(cells);
                    } else {
                        restrict = Some(cells);
                    }
                }
                "base" => {
                    dup(base.is_some())?;
                    let line = self.next_line("base")?;
                    let spec = line.tokens.get(1).filter(|_| line.tokens.len() == 2);
                    let k = spec
                        .and_then(|(_, s)| s.strip_prefix("1.."))
                        .and_then(|k| k.parse::<u32>().ok())
                        .ok_or_else(|| perr(no, spec.map_or(col, |t| t.0), "expected `base 1..k`"))?;
                    base = Some(Base(k));
                }
                "dictionary" => {
                    dup(dictionary.is_some())?;
                    self.next_line("dictionary")?;
                    let mut entries = Vec::with_capacity(n);
                    for _ in 0..n {
                        let line = self.next_line("a dictionary entry `id {..}`")?;
                        let (id_col, id) = line.tokens[0];
                        let elem = id
                            .parse::<usize>()
                            .ok()
                            .or_else(|| {
                                names
                                    .as_ref()
                                    .and_then(|ns: &Vec<String>| ns.iter().position(|s| s == id))
                            })
                            .filter(|&e| e < n)
                            .ok_or_else(|| perr(line.no, id_col, format!("`{id}` is not an element")))?;
                        let lit_col = line.tokens.get(1).map_or(line.text.len() + 1, |t| t.0);
                        let byte = line
                            .text
                            .char_indices()
                            .nth(lit_col - 1)
                            .map_or(line.text.len(), |c| c.0);
                        entries.push((elem, line.no, lit_col, &line.text[byte..]));
                    }
                    dictionary = Some(entries);
                }
                other => return Err(perr(no, col, format!("unknown section `{other}`"))),
            }
        }
        let minus = minus.ok_or_else(|| perr(size_line, 1, "missing `minus` table"))?;
        let restrict = restrict.ok_or_else(|| perr(size_line, 1, "missing `restrict` table"))?;
        let mut algebra = FiniteAlgebra::from_flat(n, minus, restrict)?;
        if let Some(names) = names {
            algebra = algebra.with_names(names)?;
        }
        let concrete = match (base, dictionary) {
            (None, None) => None,
            (Some(_), None) => return Err(perr(size_line, 1, "`base` without `dictionary`")),
            (None, Some(_)) => return Err(perr(size_line, 1, "`dictionary` without `base`")),
            (Some(base), Some(entries)) => Some(concrete_from(&algebra, base, entries)?),
        };
        Ok(Document { algebra, concrete })
    }
}

/// Element, line, column of the literal, literal text.
type DictEntry<'a> = (Elem, usize, usize, &'a str);

fn concrete_from(alg: &FiniteAlgebra, base: Base, entries: Vec<DictEntry>) -> Result<ConcreteAlgebra> {
    let n = alg.size();
    let mut fns: Vec<Option<PartialFunction>> = vec![None; n];
    let mut first_line = 0;
    for (elem, line, col, lit) in entries {
        if first_line == 0 {
            first_line = line;
        }
        if fns[elem].is_some() {
            return Err(perr(line, 1, format!("element {elem} listed twice")));
        }
        let f = PartialFunction::parse(base, lit).map_err(|e| match e {
            Error::Parse { col: c, msg, .. } => perr(line, col + c - 1, msg),
            other => perr(line, col, other.to_string()),
        })?;
        fns[elem] = Some(f);
    }
    let fns: Vec<PartialFunction> = fns.into_iter().map(|f| f.expect("n distinct entries")).collect();
    let c = ConcreteAlgebra::from_elements(base, fns).map_err(|e| perr(first_line, 1, format!("dictionary: {e}")))?;
    if c.abstract_alg.table_key() != alg.table_key() {
        return Err(perr(first_line, 1, "dictionary does not realise the operation tables"));
    }
    match alg.names() {
        Some(names) => c.with_names(names.to_vec()),
        None => Ok(c),
    }
}

fn reader(text: &str) -> Reader<'_> {
    Reader {
        lines: split_lines(text),
        pos: 0,
        end_line: text.lines().count() + 1,
    }
}

/// Parses a single algebra (or concrete algebra) file.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut r = reader(text);
    let doc = r.document()?;
    if let Some(line) = r.peek() {
        return Err(perr(
            line.no,
            line.tokens[0].0,
            "unexpected second algebra; use a corpus",
        ));
    }
    Ok(doc)
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    parse_document(text).map(|d| d.algebra)
}

pub fn parse_concrete(text: &str) -> Result<ConcreteAlgebra> {
    let doc = parse_document(text)?;
    doc.concrete
        .ok_or_else(|| perr(1, 1, "not a concrete algebra: missing `base` and `dictionary`"))
}

/// Parses concatenated algebra files.
pub fn parse_corpus(text: &str) -> Result<Vec<Document>> {
    let mut r = reader(text);
    let mut docs = Vec::new();
    while r.peek().is_some() {
        docs.push(r.document()?);
    }
    Ok(docs)
}

fn write_rows(out: &mut String, n: usize, cell: impl Fn(Elem, Elem) -> Elem) {
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| cell(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

pub fn write_algebra(alg: &FiniteAlgebra) -> String {
    let n = alg.size();
    let mut out = format!("size {n}\n");
    if let Some(names) = alg.names() {
        let _ = writeln!(out, "element_names {}", names.join(" "));
    }
    out.push_str("minus\n");
    write_rows(&mut out, n, |a, b| alg.minus(a, b));
    out.push_str("restrict\n");
    write_rows(&mut out, n, |a, b| alg.restrict(a, b));
    out
}

pub fn write_concrete(c: &ConcreteAlgebra) -> String {
    let mut out = write_algebra(&c.abstract_alg);
    let _ = writeln!(out, "base 1..{}", c.base.size());
    out.push_str("dictionary\n");
    for (i, f) in c.elements.iter().enumerate() {
        let _ = writeln!(out, "{i} {f}");
    }
    out
}
