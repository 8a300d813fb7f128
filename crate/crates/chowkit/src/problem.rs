//! The line-oriented problem-file format.
//!
//! ```text
//! # twisted cubic
//! ring x0 x1 x2 x3
//! poly x0*x2 - x1^2
//! poly x1*x3 - x2^2
//! poly x0*x3 - x1*x2
//! dim 1
//! ```
//!
//! Directives: `ring <vars>`, `blocks (<vars>)(<vars>)...`, `params
//! (<vars>)...` (coefficient blocks, only for `resultant`), `poly <expr>`,
//! `row <expr>, <expr>, ...` (matrix rows for `det`), `dim <r>`,
//! `format <a_1> ... <a_l>`, `seed <u64>`, `retries <k>`. Expressions use
//! `+ - * ^`, parentheses and integer literals. `#` starts a comment.

use std::collections::BTreeSet;
use std::sync::Arc;

use chowkit_core::{MPoly, VarTable};
use num_bigint::BigInt;

use crate::CliError;

/// A parsed problem file.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    /// variable blocks followed by parameter blocks
    pub table: Arc<VarTable>,
    /// number of leading variable blocks (the rest are parameters)
    pub var_blocks: usize,
    pub polys: Vec<MPoly>,
    pub rows: Vec<Vec<MPoly>>,
    pub dim: Option<usize>,
    pub format: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub retries: Option<usize>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, col, msg: msg.into() }
}

/// A source line with its number and the column where `rest` starts.
struct Line<'a> {
    no: usize,
    col: usize,
    rest: &'a str,
}

fn parse_groups(l: &Line) -> Result<Vec<Vec<String>>, CliError> {
    let mut out = Vec::new();
    let mut chars = l.rest.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '(' => {
                let start = i + 1;
                let mut end = None;
                for (j, d) in chars.by_ref() {
                    if d == ')' {
                        end = Some(j);
                        break;
                    }
                }
                let end = end.ok_or_else(|| err(l.no, l.col + i, "unclosed `(`"))?;
                let names: Vec<String> = l.rest[start..end].split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(err(l.no, l.col + i, "empty block"));
                }
                out.push(names);
            }
            _ => return Err(err(l.no, l.col + i, format!("expected `(`, found `{c}`"))),
        }
    }
    if out.is_empty() {
        return Err(err(l.no, l.col, "expected at least one `(...)` block"));
    }
    Ok(out)
}

fn parse_number<T: std::str::FromStr>(l: &Line, what: &str) -> Result<T, CliError> {
    let t = l.rest.trim();
    t.parse().map_err(|_| err(l.no, l.col, format!("expected {what}, found `{t}`")))
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut ring: Option<(usize, Vec<String>)> = None;
        let mut blocks: Option<(usize, Vec<Vec<String>>)> = None;
        let mut params: Vec<Vec<String>> = Vec::new();
        let mut poly_lines = Vec::new();
        let mut row_lines = Vec::new();
        let (mut dim, mut format, mut seed, mut retries) = (None, None, None, None);
        for (k, raw) in text.lines().enumerate() {
            let no = k + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let indent = content.len() - trimmed.len();
            let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let line = Line { no, col: indent + kw.len() + 2, rest };
            match kw {
                "ring" => {
                    let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    if names.is_empty() {
                        return Err(err(no, line.col, "`ring` needs at least one variable"));
                    }
                    ring = Some((no, names));
                }
                "blocks" => blocks = Some((no, parse_groups(&line)?)),
                "params" => params.extend(parse_groups(&line)?),
                "poly" => poly_lines.push((no, line.col, rest)),
                "row" => row_lines.push((no, line.col, rest)),
                "dim" => dim = Some(parse_number(&line, "a dimension")?),
                "format" => {
                    let f: Result<Vec<usize>, _> = rest.split_whitespace().map(str::parse).collect();
                    format = Some(f.map_err(|_| err(no, line.col, "expected non-negative integers"))?);
                }
                "seed" => seed = Some(parse_number(&line, "an unsigned integer")?),
                "retries" => retries = Some(parse_number(&line, "an unsigned integer")?),
                other => return Err(err(no, indent + 1, format!("unknown directive `{other}`"))),
            }
        }
        let var_groups = match (ring, blocks) {
            (None, None) => return Err(err(1, 1, "missing `ring` or `blocks` declaration")),
            (Some((_, names)), None) => vec![names],
            (None, Some((_, b))) => b,
            (Some((_, names)), Some((no, b))) => {
                let declared: BTreeSet<&String> = names.iter().collect();
                let grouped: BTreeSet<&String> = b.iter().flatten().collect();
                if declared != grouped || names.len() != b.iter().map(Vec::len).sum::<usize>() {
                    return Err(err(no, 1, "`blocks` must partition the `ring` variables"));
                }
                b
            }
        };
        let var_blocks = var_groups.len();
        let mut all = var_groups;
        all.extend(params);
        let table = VarTable::from_blocks(&all).map_err(|e| err(1, 1, e.to_string()))?;
        let polys = poly_lines
            .iter()
            .map(|&(no, col, src)| parse_expr(src, &table, no, col))
            .collect::<Result<Vec<_>, _>>()?;
        let mut rows = Vec::new();
        for &(no, col, src) in &row_lines {
            let mut entries = Vec::new();
            let mut offset = 0;
            for piece in src.split(',') {
                entries.push(parse_expr(piece, &table, no, col + offset)?);
                offset += piece.len() + 1;
            }
            rows.push(entries);
        }
        Ok(ProblemFile { table, var_blocks, polys, rows, dim, format, seed, retries })
    }

    /// Variable blocks only (no parameters).
    pub fn var_block_indices(&self) -> Vec<usize> {
        (0..self.var_blocks).collect()
    }
    pub fn param_block_indices(&self) -> Vec<usize> {
        (self.var_blocks..self.table.nblocks()).collect()
    }
}

// ---------------------------------------------------------------------------
// expressions

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    table: &'a Arc<VarTable>,
    line: usize,
    end_col: usize,
}

fn tokenize(src: &str, line: usize, col: usize) -> Result<Vec<(Tok, usize)>, CliError> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (at, c) = bytes[i];
        let here = col + at;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = if i < bytes.len() { bytes[i].0 } else { src.len() };
            out.push((Tok::Int(src[at..end].parse().expect("digits")), here));
        } else if c.is_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].1.is_alphanumeric() || bytes[i].1 == '_') {
                i += 1;
            }
            let end = if i < bytes.len() { bytes[i].0 } else { src.len() };
            out.push((Tok::Ident(src[at..end].to_string()), here));
        } else if "+-*^()".contains(c) {
            out.push((Tok::Op(c), here));
            i += 1;
        } else {
            return Err(err(line, here, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Parses one polynomial expression over `table`; `col` is the column of
/// the first character of `src` (for diagnostics).
pub fn parse_expr(src: &str, table: &Arc<VarTable>, line: usize, col: usize) -> Result<MPoly, CliError> {
    let toks = tokenize(src, line, col)?;
    let end_col = col + src.trim_end().len();
    let mut p = Parser { toks, pos: 0, table, line, end_col };
    if p.toks.is_empty() {
        return Err(err(line, col, "empty expression"));
    }
    let e = p.expr()?;
    if let Some((t, c)) = p.toks.get(p.pos) {
        return Err(err(line, *c, format!("unexpected `{}`", show(t))));
    }
    Ok(e)
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Int(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Op(c) => c.to_string(),
    }
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Op(c), _)) => Some(*c),
            _ => None,
        }
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> Result<MPoly, CliError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, CliError> {
        let mut acc = self.unary()?;
        while self.peek_op() == Some('*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, CliError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, CliError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.here();
        match self.toks.get(self.pos) {
            Some((Tok::Int(n), _)) => {
                let e: u32 = n.try_into().map_err(|_| err(self.line, col, "exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(err(self.line, col, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<MPoly, CliError> {
        let col = self.here();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return Err(err(self.line, col, "unexpected end of expression"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(MPoly::constant(self.table, n)),
            Tok::Ident(name) => match self.table.index_of(&name) {
                Some(v) => Ok(MPoly::var(self.table, v)),
                None => Err(err(self.line, col, format!("unknown variable `{name}`"))),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(err(self.line, self.here(), "expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(err(self.line, col, format!("unexpected `{c}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conic_instance() {
        let p = ProblemFile::parse("ring x0 x1 x2\npoly x0*x2 - x1^2\ndim 1").unwrap();
        assert_eq!(p.polys.len(), 1);
        assert_eq!(p.polys[0].to_string(), "x0*x2 - x1^2");
        assert_eq!(p.dim, Some(1));
        assert_eq!(p.table.nblocks(), 1);
    }

    #[test]
    fn multiprojective_instance() {
        let p = ProblemFile::parse("blocks (x0 x1)(y0 y1)\npoly x0*y0 + x1*y1\nformat 0 0 # comment").unwrap();
        assert_eq!(p.table.nblocks(), 2);
        assert_eq!(p.format, Some(vec![0, 0]));
    }

    #[test]
    fn malformed_poly_reports_location() {
        match ProblemFile::parse("ring x0 x1\npoly x0 +") {
            Err(CliError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 10)),
            other => panic!("{other:?}"),
        }
        match ProblemFile::parse("ring x0 x1\npoly x0 + z") {
            Err(CliError::Parse { line, col, msg }) => {
                assert_eq!((line, col), (2, 11));
                assert!(msg.contains("unknown variable"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rows_and_params() {
        let p = ProblemFile::parse("ring x y\nparams (a b)\nrow x + a, 1\nrow -2, y*b").unwrap();
        assert_eq!(p.rows.len(), 2);
        assert_eq!(p.rows[1][0].to_string(), "-2");
        assert_eq!(p.param_block_indices(), vec![1]);
    }

    #[test]
    fn precedence_and_unary_minus() {
        let p = ProblemFile::parse("ring x y\npoly -x^2*3 - (x - y)*-2").unwrap();
        assert_eq!(p.polys[0].to_string(), "-3*x^2 + 2*x - 2*y");
    }
}
