//! Plain-text file formats.
//!
//! | extension | layout |
//! |-----------|--------|
//! | `.pcm` | `rows cols`, then `rows` lines of `cols` 0/1 characters, then optionally `# labels: a,b,...` |
//! | `.cfg` | `b k r t`, then `b` incidence rows, then `classes: c1,...,cb` (1-based classes) |
//! | `.dag` | `n r`, then one `tail head` pair per line (1-based vertices) |
//! | word   | one line of `n` characters from `0`, `1`, `?` |
//!
//! Writers emit a trailing newline; readers accept one.

use std::fmt::Write as _;
use std::path::Path;

use slrc_core::config::Configuration;
use slrc_core::graph::RepairGraph;
use slrc_core::{BitMatrix, LinearCode};

use crate::error::{Error, Result};

const LABEL_PREFIX: &str = "# labels:";

/// Contents of a `.pcm` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcmFile {
    pub matrix: BitMatrix,
    pub labels: Option<Vec<String>>,
}

impl PcmFile {
    pub fn from_code(code: &LinearCode) -> Self {
        PcmFile {
            matrix: code.pcm().clone(),
            labels: Some(code.labels().to_vec()),
        }
    }

    pub fn into_code(self) -> Result<LinearCode> {
        Ok(match self.labels {
            Some(labels) => LinearCode::with_labels(self.matrix, labels)?,
            None => LinearCode::new(self.matrix)?,
        })
    }
}

pub fn write_pcm(pcm: &PcmFile) -> String {
    let h = &pcm.matrix;
    let mut s = format!("{} {}\n", h.rows(), h.cols());
    for row in h.to_row_strings() {
        s.push_str(&row);
        s.push('\n');
    }
    if let Some(labels) = &pcm.labels {
        let _ = writeln!(s, "{LABEL_PREFIX} {}", labels.join(","));
    }
    s
}

/// Nonblank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

fn numbers(line: usize, text: &str, want: usize) -> Result<Vec<usize>> {
    let v: Vec<usize> = text
        .split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| Error::parse(line, format!("expected an integer, found {w:?}")))
        })
        .collect::<Result<_>>()?;
    if v.len() != want {
        return Err(Error::parse(
            line,
            format!("expected {want} integers, found {}", v.len()),
        ));
    }
    Ok(v)
}

fn bit_row(line: usize, text: &str, cols: usize) -> Result<Vec<u8>> {
    let row: Vec<u8> = text
        .trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::parse(line, format!("unexpected character {c:?}"))),
        })
        .collect::<Result<_>>()?;
    if row.len() != cols {
        return Err(Error::parse(
            line,
            format!("expected {cols} columns, found {}", row.len()),
        ));
    }
    Ok(row)
}

pub fn parse_pcm(text: &str) -> Result<PcmFile> {
    let mut it = lines(text);
    let (ln, header) = it.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let hv = numbers(ln, header, 2)?;
    let (rows, cols) = (hv[0], hv[1]);
    let mut data = Vec::with_capacity(rows);
    let mut last = ln;
    for _ in 0..rows {
        let (ln, l) = it
            .next()
            .ok_or_else(|| Error::parse(last + 1, format!("expected {rows} matrix rows")))?;
        data.push(bit_row(ln, l, cols)?);
        last = ln;
    }
    let mut labels = None;
    if let Some((ln, l)) = it.next() {
        let rest = l
            .strip_prefix(LABEL_PREFIX)
            .ok_or_else(|| Error::parse(ln, "unexpected content after the matrix"))?;
        let v: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
        if v.len() != cols {
            return Err(Error::parse(
                ln,
                format!("expected {cols} labels, found {}", v.len()),
            ));
        }
        labels = Some(v);
        if let Some((ln, _)) = it.next() {
            return Err(Error::parse(ln, "unexpected content after the labels"));
        }
    }
    let matrix = if rows == 0 {
        BitMatrix::zeros(0, cols)
    } else {
        BitMatrix::from_rows(&data)?
    };
    Ok(PcmFile { matrix, labels })
}

/// A configuration together with the `r` and `t` its header declares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfgFile {
    pub config: Configuration,
    pub r: usize,
    pub t: usize,
}

pub fn write_cfg(cfg: &CfgFile) -> String {
    let c = &cfg.config;
    let mut s = format!("{} {} {} {}\n", c.b(), c.k(), cfg.r, cfg.t);
    if c.b() > 0 {
        for row in c.incidence().to_row_strings() {
            s.push_str(&row);
            s.push('\n');
        }
    }
    let classes: Vec<String> = c.classes().iter().map(|x| (x + 1).to_string()).collect();
    let _ = writeln!(s, "classes: {}", classes.join(","));
    s
}

pub fn parse_cfg(text: &str) -> Result<CfgFile> {
    let mut it = lines(text);
    let (ln, header) = it.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let hv = numbers(ln, header, 4)?;
    let (b, k, r, t) = (hv[0], hv[1], hv[2], hv[3]);
    let mut rows = Vec::with_capacity(b);
    let mut last = ln;
    for _ in 0..b {
        let (ln, l) = it
            .next()
            .ok_or_else(|| Error::parse(last + 1, format!("expected {b} incidence rows")))?;
        rows.push(bit_row(ln, l, k)?);
        last = ln;
    }
    let (ln, l) = it
        .next()
        .ok_or_else(|| Error::parse(last + 1, "missing `classes:` line"))?;
    let rest = l
        .trim()
        .strip_prefix("classes:")
        .ok_or_else(|| Error::parse(ln, "expected `classes: c1,...,cb`"))?;
    let classes: Vec<usize> = if rest.trim().is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|w| match w.trim().parse::<usize>() {
                Ok(c) if c >= 1 => Ok(c - 1),
                _ => Err(Error::parse(
                    ln,
                    format!("class {:?} is not a positive integer", w.trim()),
                )),
            })
            .collect::<Result<_>>()?
    };
    if classes.len() != b {
        return Err(Error::parse(
            ln,
            format!("expected {b} classes, found {}", classes.len()),
        ));
    }
    if let Some((ln, _)) = it.next() {
        return Err(Error::parse(ln, "unexpected content after the classes"));
    }
    let lines = rows
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &x)| x == 1)
                .map(|(p, _)| p)
                .collect()
        })
        .collect();
    let config = Configuration::new(k, lines, classes)?;
    Ok(CfgFile { config, r, t })
}

/// A repair graph with its declared locality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagFile {
    pub graph: RepairGraph,
    pub r: usize,
}

pub fn write_dag(dag: &DagFile) -> String {
    let mut s = format!("{} {}\n", dag.graph.n(), dag.r);
    for (a, b) in dag.graph.edges() {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    s
}

/// Lines starting with `#` are comments.
pub fn parse_dag(text: &str) -> Result<DagFile> {
    let mut it = lines(text).filter(|(_, l)| !l.trim_start().starts_with('#'));
    let (ln, header) = it.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let hv = numbers(ln, header, 2)?;
    let (n, r) = (hv[0], hv[1]);
    let mut edges = Vec::new();
    for (ln, l) in it {
        let e = numbers(ln, l, 2)?;
        if e.iter().any(|&v| v == 0 || v > n) {
            return Err(Error::parse(ln, format!("vertices must lie in 1..={n}")));
        }
        edges.push((e[0] - 1, e[1] - 1));
    }
    Ok(DagFile {
        graph: RepairGraph::new(n, edges)?,
        r,
    })
}

/// `None` marks an erased symbol.
pub fn parse_word(text: &str) -> Result<Vec<Option<bool>>> {
    let mut it = lines(text);
    let (ln, l) = it.next().ok_or_else(|| Error::parse(1, "empty word"))?;
    if let Some((ln, _)) = it.next() {
        return Err(Error::parse(ln, "a word file holds a single line"));
    }
    l.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(Some(false)),
            '1' => Ok(Some(true)),
            '?' => Ok(None),
            _ => Err(Error::parse(ln, format!("unexpected character {c:?}"))),
        })
        .collect()
}

pub fn write_word(word: &[Option<bool>]) -> String {
    let mut s: String = word
        .iter()
        .map(|b| match b {
            Some(true) => '1',
            Some(false) => '0',
            None => '?',
        })
        .collect();
    s.push('\n');
    s
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
