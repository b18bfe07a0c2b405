use std::fmt;

use super::StallingsGraph;
use crate::error::{Error, Result};
use crate::words::{parse_word, Basis, Letter, ReducedWord};

/// A subgroup given by generators: `rank: r` followed by one word per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFile {
    pub basis: Basis,
    pub generators: Vec<ReducedWord>,
}

impl SubgroupFile {
    pub fn graph(&self) -> StallingsGraph {
        StallingsGraph::build(self.basis, &self.generators)
    }
}

impl fmt::Display for SubgroupFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank: {}", self.basis.rank())?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn header<'a>(line: (usize, &'a str), key: &str) -> Result<(usize, &'a str)> {
    let (no, l) = line;
    let value = l
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .ok_or_else(|| Error::Syntax {
            line: no,
            message: format!("expected '{key}: <value>'"),
        })?;
    Ok((no, value.trim()))
}

fn number(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Syntax {
        line,
        message: format!("expected a number, got '{s}'"),
    })
}

/// Parses a subgroup file. Generators are reduced; `#` starts a comment.
pub fn parse_subgroup_file(text: &str) -> Result<SubgroupFile> {
    let mut lines = content_lines(text);
    let first = lines.next().ok_or(Error::Syntax {
        line: 1,
        message: "empty subgroup file".into(),
    })?;
    let (no, rank) = header(first, "rank")?;
    let basis = Basis::new(number(no, rank)?)?;
    let mut generators = Vec::new();
    for (no, l) in lines {
        let w = parse_word(l, basis).map_err(|e| Error::Syntax {
            line: no,
            message: e.to_string(),
        })?;
        generators.push(w.reduce());
    }
    Ok(SubgroupFile { basis, generators })
}

impl StallingsGraph {
    /// Parses the canonical text form. The rank is taken from `basis` when
    /// given, otherwise from the largest generator that labels an edge.
    pub fn parse_text(text: &str, basis: Option<Basis>) -> Result<StallingsGraph> {
        let mut lines = content_lines(text);
        let first = lines.next().ok_or(Error::Syntax {
            line: 1,
            message: "empty graph file".into(),
        })?;
        let (no, n) = header(first, "vertices")?;
        let n = number(no, n)?;
        let second = lines.next().ok_or(Error::Syntax {
            line: no + 1,
            message: "missing 'base: 0'".into(),
        })?;
        let (no, base) = header(second, "base")?;
        let base = number(no, base)?;
        let mut edges = Vec::new();
        let mut max_gen = 0;
        for (no, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let [p, a, q] = parts[..] else {
                return Err(Error::Syntax {
                    line: no,
                    message: "expected '<source> <letter> <target>'".into(),
                });
            };
            let mut chars = a.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::Syntax {
                    line: no,
                    message: format!("bad edge label '{a}'"),
                });
            };
            if !c.is_ascii_lowercase() {
                return Err(Error::Syntax {
                    line: no,
                    message: format!("edge labels are positive letters, got '{c}'"),
                });
            }
            let g = (c as u8 - b'a') as usize;
            max_gen = max_gen.max(g + 1);
            edges.push((number(no, p)?, Letter::positive(g), number(no, q)?));
        }
        let basis = match basis {
            Some(b) if b.rank() >= max_gen => b,
            Some(b) => {
                return Err(Error::GeneratorOutOfRange {
                    index: max_gen,
                    rank: b.rank(),
                })
            }
            None => Basis::new(max_gen.max(1))?,
        };
        StallingsGraph::from_edges(basis, n, base, &edges)
    }
}
