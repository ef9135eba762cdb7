//! Text formats: tangle words, framed links, β-sequence contexts and
//! S-matrix JSON files.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Value};
use tanglerep_core::diagram::{FramedLink, Generator, Slice, TangleWord};
use tanglerep_core::{DiagramError, EngineKind, Gaussian, LinearMap, Scalar};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("S-matrix file: {0}")]
    Schema(String),
}

/// Token with its 1-based column.
struct Token<'a> {
    column: usize,
    text: &'a str,
}

/// Line content before any `#`, split on whitespace.
fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { column: content[..s].chars().count() + 1, text: &content[s..i] });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { column: content[..s].chars().count() + 1, text: &content[s..] });
    }
    out
}

/// Non-blank lines as `(line number, tokens)`.
fn logical_lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, tokens(l))).filter(|(_, t)| !t.is_empty())
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

pub fn parse_tangle(text: &str) -> Result<TangleWord, ParseError> {
    let mut lines = logical_lines(text);
    match lines.next() {
        Some((n, toks)) if toks.len() == 1 && toks[0].text == "tangle" => {
            let _ = n;
        }
        Some((n, toks)) => return Err(ParseError::new(n, toks[0].column, "expected header `tangle`")),
        None => return Err(ParseError::new(1, 1, "empty input, expected header `tangle`")),
    }
    let mut slices = Vec::new();
    let mut slice_lines = Vec::new();
    let mut ended = false;
    for (n, toks) in lines.by_ref() {
        if toks.len() == 1 && toks[0].text == "end" {
            ended = true;
            break;
        }
        let mut gens = Vec::with_capacity(toks.len());
        for t in &toks {
            let g = Generator::from_token(t.text)
                .ok_or_else(|| ParseError::new(n, t.column, format!("unknown token `{}`", t.text)))?;
            gens.push(g);
        }
        slices.push(Slice(gens));
        slice_lines.push(n);
    }
    if !ended {
        return Err(ParseError::new(last_line(text), 1, "missing `end`"));
    }
    if let Some((n, toks)) = lines.next() {
        return Err(ParseError::new(n, toks[0].column, "unexpected content after `end`"));
    }
    TangleWord::new(slices).map_err(|e| match e {
        DiagramError::SliceMismatch { index, .. } => ParseError::new(slice_lines[index + 1], 1, e.to_string()),
        other => ParseError::new(1, 1, other.to_string()),
    })
}

/// Empty slices have no text form and are left out.
pub fn write_tangle(word: &TangleWord) -> String {
    let mut out = String::from("tangle\n");
    for s in word.slices() {
        if s.generators().is_empty() {
            continue;
        }
        let toks: Vec<&str> = s.generators().iter().map(|g| g.token()).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

fn single_line<'a>(text: &'a str, what: &str) -> Result<(usize, Vec<Token<'a>>), ParseError> {
    let mut lines = logical_lines(text);
    let first = lines.next().ok_or_else(|| ParseError::new(1, 1, format!("empty input, expected `{what}`")))?;
    if let Some((n, toks)) = lines.next() {
        return Err(ParseError::new(n, toks[0].column, format!("unexpected content after the {what} line")));
    }
    Ok(first)
}

struct Cursor<'a> {
    line: usize,
    toks: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, toks: Vec<Token<'a>>) -> Self {
        let end_column = toks.last().map(|t| t.column + t.text.chars().count()).unwrap_or(1);
        Cursor { line, toks, pos: 0, end_column }
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.column).unwrap_or(self.end_column)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), message)
    }

    fn expect(&mut self, word: &str) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some(t) if t.text == word => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected `{word}`, found `{}`", t.text))),
            None => Err(self.err(format!("expected `{word}`"))),
        }
    }

    /// `key=<int>`.
    fn keyed_int<T: FromStr>(&mut self, key: &str) -> Result<T, ParseError> {
        let t = self.toks.get(self.pos).ok_or_else(|| self.err(format!("expected `{key}=<int>`")))?;
        let value = t
            .text
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| self.err(format!("expected `{key}=<int>`, found `{}`", t.text)))?;
        let parsed = value.parse().map_err(|_| self.err(format!("`{value}` is not a valid integer")))?;
        self.pos += 1;
        Ok(parsed)
    }

    /// Integers up to `;` or the end of the line.
    fn int_list<T: FromStr>(&mut self) -> Result<Vec<(usize, T)>, ParseError> {
        let mut out = Vec::new();
        while let Some(t) = self.toks.get(self.pos) {
            if t.text == ";" {
                break;
            }
            let digits = t.text.strip_prefix('+').unwrap_or(t.text);
            let v = digits.parse().map_err(|_| self.err(format!("`{}` is not a valid integer", t.text)))?;
            out.push((t.column, v));
            self.pos += 1;
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some(t) => Err(self.err(format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

/// `link s=<int> braid: <±int list> ; framings: <int list>`.
pub fn parse_link(text: &str) -> Result<FramedLink, ParseError> {
    let (line, toks) = single_line(text, "link")?;
    let mut c = Cursor::new(line, toks);
    c.expect("link")?;
    let strands: usize = c.keyed_int("s")?;
    c.expect("braid:")?;
    let braid_col = c.column();
    let braid: Vec<(usize, i32)> = c.int_list()?;
    c.expect(";")?;
    c.expect("framings:")?;
    let framing_col = c.column();
    let framings: Vec<(usize, i64)> = c.int_list()?;
    c.finish()?;
    for &(col, g) in &braid {
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(ParseError::new(
                line,
                col,
                format!("braid generator {g} out of range for {strands} strands"),
            ));
        }
    }
    let _ = braid_col;
    FramedLink::new(strands, braid.into_iter().map(|x| x.1).collect(), framings.into_iter().map(|x| x.1).collect())
        .map_err(|e| match e {
            DiagramError::FramingCount { components, framings } => ParseError::new(
                line,
                framing_col,
                format!("closure has {components} component(s) but {framings} framing(s) were given"),
            ),
            other => ParseError::new(line, 1, other.to_string()),
        })
}

pub fn write_link(link: &FramedLink) -> String {
    format!("{link}\n")
}

/// Closure context for a β-sequence:
/// `sequence s=<int> hole=<int> below: <±ints> ; above: <±ints> ; powers: <ints>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub strands: usize,
    pub hole: usize,
    pub below: Vec<i32>,
    pub above: Vec<i32>,
    pub powers: Vec<i32>,
}

pub fn parse_sequence(text: &str) -> Result<SequenceSpec, ParseError> {
    let (line, toks) = single_line(text, "sequence")?;
    let mut c = Cursor::new(line, toks);
    c.expect("sequence")?;
    let strands = c.keyed_int("s")?;
    let hole = c.keyed_int("hole")?;
    c.expect("below:")?;
    let below = c.int_list()?.into_iter().map(|x| x.1).collect();
    c.expect(";")?;
    c.expect("above:")?;
    let above = c.int_list()?.into_iter().map(|x| x.1).collect();
    c.expect(";")?;
    c.expect("powers:")?;
    let powers = c.int_list()?.into_iter().map(|x| x.1).collect();
    c.finish()?;
    Ok(SequenceSpec { strands, hole, below, above, powers })
}

pub fn write_sequence(spec: &SequenceSpec) -> String {
    let join = |xs: &[i32]| xs.iter().map(|x| format!(" {x}")).collect::<String>();
    format!(
        "sequence s={} hole={} below:{} ; above:{} ; powers:{}\n",
        spec.strands,
        spec.hole,
        join(&spec.below),
        join(&spec.above),
        join(&spec.powers)
    )
}

/// Braid word given as whitespace- or comma-separated signed integers.
pub fn parse_braid_word(text: &str) -> Result<Vec<i32>, ParseError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.strip_prefix('+')
                .unwrap_or(t)
                .parse::<i32>()
                .ok()
                .filter(|g| *g != 0)
                .ok_or_else(|| ParseError::new(1, 1, format!("`{t}` is not a braid generator")))
        })
        .collect()
}

/// Exact binary value of a float pair.
pub fn exact_from_complex(z: &Complex64) -> Gaussian {
    Gaussian::new(Gaussian::from_f64(z.re).re, Gaussian::from_f64(z.im).re)
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixData {
    Float(LinearMap<Complex64>),
    Exact(LinearMap<Gaussian>),
}

impl MatrixData {
    pub fn engine(&self) -> EngineKind {
        match self {
            MatrixData::Float(_) => EngineKind::Float,
            MatrixData::Exact(_) => EngineKind::Exact,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            MatrixData::Float(m) => m.dim(),
            MatrixData::Exact(m) => m.dim(),
        }
    }

    /// Same matrix in the other engine. Floats convert to their exact binary value.
    pub fn with_engine(self, engine: EngineKind) -> MatrixData {
        match (self, engine) {
            (MatrixData::Exact(m), EngineKind::Float) => MatrixData::Float(m.map_scalars(|x| x.to_complex())),
            (MatrixData::Float(m), EngineKind::Exact) => MatrixData::Exact(m.map_scalars(exact_from_complex)),
            (m, _) => m,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SMatrixFile {
    pub data: MatrixData,
    pub epsilon: Option<f64>,
}

fn parse_entry(value: &Value, index: usize) -> Result<(Option<Complex64>, Option<Gaussian>), FormatError> {
    let bad = || FormatError::Schema(format!("entry {index}: expected [re, im] or a rational string"));
    match value {
        Value::Array(pair) if pair.len() == 2 => {
            let re = pair[0].as_f64().ok_or_else(bad)?;
            let im = pair[1].as_f64().ok_or_else(bad)?;
            Ok((Some(Complex64::new(re, im)), None))
        }
        Value::String(s) => {
            let g = Gaussian::from_str(s).map_err(|e| FormatError::Schema(format!("entry {index}: {e}")))?;
            Ok((None, Some(g)))
        }
        _ => Err(bad()),
    }
}

pub fn read_smatrix(text: &str) -> Result<SMatrixFile, FormatError> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root.as_object().ok_or_else(|| FormatError::Schema("top level must be an object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .filter(|d| *d >= 1)
        .ok_or_else(|| FormatError::Schema("`dim` must be a positive integer".into()))? as usize;
    let engine = match obj.get("engine").and_then(Value::as_str) {
        Some("float") => EngineKind::Float,
        Some("exact") => EngineKind::Exact,
        _ => return Err(FormatError::Schema("`engine` must be \"float\" or \"exact\"".into())),
    };
    let epsilon = match obj.get("epsilon") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_f64()
                .filter(|e| *e >= 0.0)
                .ok_or_else(|| FormatError::Schema("`epsilon` must be a nonnegative number".into()))?,
        ),
    };
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError::Schema("`entries` must be a list".into()))?;
    let expected = dim.checked_pow(4).ok_or_else(|| FormatError::Schema("`dim` too large".into()))?;
    if entries.len() != expected {
        return Err(FormatError::Schema(format!("expected {expected} entries for dim {dim}, found {}", entries.len())));
    }
    let parsed = entries.iter().enumerate().map(|(i, v)| parse_entry(v, i)).collect::<Result<Vec<_>, _>>()?;
    let data = match engine {
        EngineKind::Float => MatrixData::Float(
            LinearMap::new(
                dim,
                2,
                2,
                parsed.into_iter().map(|(f, g)| f.unwrap_or_else(|| g.expect("one is set").to_complex())).collect(),
            )
            .map_err(|e| FormatError::Schema(e.to_string()))?,
        ),
        EngineKind::Exact => MatrixData::Exact(
            LinearMap::new(
                dim,
                2,
                2,
                parsed
                    .into_iter()
                    .map(|(f, g)| {
                        g.unwrap_or_else(|| exact_from_complex(&f.expect("one is set")))
                    })
                    .collect(),
            )
            .map_err(|e| FormatError::Schema(e.to_string()))?,
        ),
    };
    Ok(SMatrixFile { data, epsilon })
}

pub fn write_smatrix(file: &SMatrixFile) -> String {
    let (engine, entries): (&str, Vec<Value>) = match &file.data {
        MatrixData::Float(m) => ("float", m.coeffs().iter().map(|z| json!([z.re, z.im])).collect()),
        MatrixData::Exact(m) => ("exact", m.coeffs().iter().map(|g| Value::String(g.to_string())).collect()),
    };
    let mut obj = serde_json::Map::new();
    obj.insert("dim".into(), json!(file.data.dim()));
    obj.insert("engine".into(), json!(engine));
    obj.insert("entries".into(), Value::Array(entries));
    if let Some(e) = file.epsilon {
        obj.insert("epsilon".into(), json!(e));
    }
    let mut out = serde_json::to_string_pretty(&Value::Object(obj)).expect("plain JSON values");
    out.push('\n');
    out
}

/// Exact scalars print in canonical form. Float scalars print their real
/// part alone when the imaginary part is zero.
pub fn format_scalar<S: Scalar>(x: &S) -> String {
    match S::ENGINE {
        EngineKind::Exact => x.to_string(),
        EngineKind::Float => {
            let z = x.to_complex();
            if z.im == 0.0 {
                format!("{}", z.re)
            } else if z.im < 0.0 {
                format!("{}-{}i", z.re, -z.im)
            } else {
                format!("{}+{}i", z.re, z.im)
            }
        }
    }
}

/// Rows of a map, one line each.
pub fn format_map<S: Scalar>(m: &LinearMap<S>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "map V^{} -> V^{}, dim V = {}", m.dom_arity(), m.cod_arity(), m.dim());
    let cells: Vec<String> = m.coeffs().iter().map(format_scalar).collect();
    let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| format!("{:>width$}", cells[r * m.cols() + c])).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
    out
}
