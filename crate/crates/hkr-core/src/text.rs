//! Plain-text formats for elements and cochain specifications.
//!
//! ```text
//! file    = header { entry } ;
//! header  = kind dim arity ;            kind = "sym" | "ext" | "bar" | "koszul"
//! entry   = slot { "|" slot } ":" rational ;
//! slot    = exponent { exponent }       (a monomial, one exponent per variable)
//!         | index { index } | "-"       (wedge slot: 1-based indices, "-" for empty)
//! ```
//!
//! `sym` entries have one monomial slot (arity 0). `ext` entries have one
//! wedge slot with `arity` indices. `bar` entries have `arity + 2` monomial
//! slots. `koszul` entries are `left | right | wedge` with `arity` indices.
//! Blank lines and text after `#` are ignored.
//!
//! Cochain specifications over `M = S(V)`:
//!
//! ```text
//! spec    = "cochain" dim arity [ "module" "sym" ] { line } ;
//! line    = "xi" index{arity} "=" value     (antisymmetric table entry, scaled by 1/arity!)
//!         | "delta" slots{arity−1} "=" value  (a point of ψ; the spec includes δψ)
//!         | "point" slots{arity} "=" value    (a point value of the cochain itself)
//! value   = "0" | term { ";" term } ;     term = exponents ":" rational
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::bar::BarChain;
use crate::bimodule::SymBimodule;
use crate::cochain::{Cochain, MultilinearTable};
use crate::error::{Error, Result};
use crate::ext::{ExtElement, ExtMonomial};
use crate::hkr::xi;
use crate::koszul::{KoszulChain, KoszulKey};
use crate::lincomb::LinComb;
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::sym::{Monomial, SymElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Sym,
    Ext,
    Bar,
    Koszul,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Sym => "sym",
            Kind::Ext => "ext",
            Kind::Bar => "bar",
            Kind::Koszul => "koszul",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Sym(SymElement),
    Ext(ExtElement),
    Bar(BarChain),
    Koszul(KoszulChain),
}

impl Element {
    pub fn kind(&self) -> Kind {
        match self {
            Element::Sym(_) => Kind::Sym,
            Element::Ext(_) => Kind::Ext,
            Element::Bar(_) => Kind::Bar,
            Element::Koszul(_) => Kind::Koszul,
        }
    }
}

/// A piece of a line with its 1-based starting column.
#[derive(Clone, Copy, Debug)]
struct Span<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

impl<'a> Span<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }

    fn trim(self) -> Span<'a> {
        let lead = self.text.len() - self.text.trim_start().len();
        let column = self.column + self.text[..lead].chars().count();
        Span { line: self.line, column, text: self.text.trim() }
    }

    fn split(self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut column = self.column;
        for piece in self.text.split(sep) {
            out.push(Span { line: self.line, column, text: piece }.trim());
            column += piece.chars().count() + 1;
        }
        out
    }

    fn split_once(self, sep: char) -> Option<(Span<'a>, Span<'a>)> {
        let (a, b) = self.text.split_once(sep)?;
        let left = Span { line: self.line, column: self.column, text: a }.trim();
        let right = Span { line: self.line, column: self.column + a.chars().count() + 1, text: b }.trim();
        Some((left, right))
    }

    fn words(self) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut column = self.column;
        let mut rest = self.text;
        while !rest.is_empty() {
            let lead = rest.len() - rest.trim_start().len();
            column += rest[..lead].chars().count();
            rest = &rest[lead..];
            if rest.is_empty() {
                break;
            }
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            out.push(Span { line: self.line, column, text: &rest[..end] });
            column += rest[..end].chars().count();
            rest = &rest[end..];
        }
        out
    }
}

/// Non-blank lines with comments removed.
fn lines(text: &str) -> impl Iterator<Item = Span<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let span = Span { line: i + 1, column: 1, text: body }.trim();
        (!span.text.is_empty()).then_some(span)
    })
}

fn parse_usize(span: Span<'_>, what: &str) -> Result<usize> {
    span.text.parse().map_err(|_| span.err(format!("expected {what}, found {:?}", span.text)))
}

fn parse_rational(span: Span<'_>) -> Result<Scalar> {
    if span.text.is_empty() {
        return Err(span.err("missing coefficient"));
    }
    parse_scalar(span.text).map_err(|m| span.err(m))
}

fn parse_monomial(span: Span<'_>, dim: usize) -> Result<Monomial> {
    let words = span.words();
    if words.len() != dim {
        return Err(span.err(format!("expected {dim} exponents, found {}", words.len())));
    }
    let exps = words
        .iter()
        .map(|w| w.text.parse::<u16>().map_err(|_| w.err(format!("malformed exponent {:?}", w.text))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Monomial::new(exps))
}

fn parse_indices(span: Span<'_>, dim: usize, count: usize) -> Result<Vec<usize>> {
    let words = if span.text == "-" { vec![] } else { span.words() };
    if words.len() != count {
        return Err(span.err(format!("expected {count} indices, found {}", words.len())));
    }
    words
        .iter()
        .map(|w| {
            let i = parse_usize(*w, "an index")?;
            if i == 0 || i > dim {
                return Err(w.err(format!("index {i} outside 1..={dim}")));
            }
            Ok(i - 1)
        })
        .collect()
}

fn parse_wedge(span: Span<'_>, dim: usize, count: usize) -> Result<(i64, ExtMonomial)> {
    let idx = parse_indices(span, dim, count)?;
    ExtMonomial::from_indices(&idx).ok_or_else(|| span.err("repeated wedge index"))
}

fn parse_header<'a>(span: Span<'a>, expected: Option<&str>) -> Result<(Span<'a>, usize, usize)> {
    let words = span.words();
    if words.len() != 3 {
        return Err(span.err("header must be \"kind dim arity\""));
    }
    if let Some(k) = expected {
        if words[0].text != k {
            return Err(words[0].err(format!("expected {k:?}")));
        }
    }
    Ok((words[0], parse_usize(words[1], "a dimension")?, parse_usize(words[2], "an arity")?))
}

pub fn parse_element(text: &str) -> Result<Element> {
    let mut it = lines(text);
    let header = it.next().ok_or_else(|| Error::parse(1, 1, "missing header"))?;
    let (kind_span, dim, arity) = parse_header(header, None)?;
    let kind = match kind_span.text {
        "sym" => Kind::Sym,
        "ext" => Kind::Ext,
        "bar" => Kind::Bar,
        "koszul" => Kind::Koszul,
        other => return Err(kind_span.err(format!("unknown kind {other:?}"))),
    };
    if kind == Kind::Sym && arity != 0 {
        return Err(header.err("sym elements have arity 0"));
    }
    let mut sym = LinComb::new();
    let mut ext = LinComb::new();
    let mut bar = LinComb::new();
    let mut kos = LinComb::new();
    for line in it {
        let (slots, coeff) = line.split_once(':').ok_or_else(|| line.err("expected \"slots : coefficient\""))?;
        let c = parse_rational(coeff)?;
        let slots = slots.split('|');
        let expected = match kind {
            Kind::Sym | Kind::Ext => 1,
            Kind::Bar => arity + 2,
            Kind::Koszul => 3,
        };
        if slots.len() != expected {
            return Err(line.err(format!("expected {expected} slots, found {}", slots.len())));
        }
        match kind {
            Kind::Sym => sym.add_term(parse_monomial(slots[0], dim)?, c),
            Kind::Ext => {
                let (sign, w) = parse_wedge(slots[0], dim, arity)?;
                ext.add_term(w, c * Scalar::from_integer(sign.into()));
            }
            Kind::Bar => {
                let key = slots.iter().map(|s| parse_monomial(*s, dim)).collect::<Result<Vec<_>>>()?;
                bar.add_term(key, c);
            }
            Kind::Koszul => {
                let left = parse_monomial(slots[0], dim)?;
                let right = parse_monomial(slots[1], dim)?;
                let (sign, w) = parse_wedge(slots[2], dim, arity)?;
                kos.add_term(KoszulKey::new(left, right, w), c * Scalar::from_integer(sign.into()));
            }
        }
    }
    Ok(match kind {
        Kind::Sym => Element::Sym(SymElement::from_terms(dim, sym)?),
        Kind::Ext => Element::Ext(ExtElement::from_terms(dim, ext)?),
        Kind::Bar => Element::Bar(BarChain::from_terms(dim, arity, bar)?),
        Kind::Koszul => Element::Koszul(KoszulChain::from_terms(dim, arity, kos)?),
    })
}

pub fn format_monomial(m: &Monomial) -> String {
    m.exponents().iter().map(u16::to_string).collect::<Vec<_>>().join(" ")
}

fn format_wedge(w: &ExtMonomial) -> String {
    if w.is_empty() {
        return "-".into();
    }
    w.indices().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn format_slots(slots: &[Monomial]) -> String {
    slots.iter().map(format_monomial).collect::<Vec<_>>().join(" | ")
}

pub fn format_element(e: &Element) -> String {
    let mut out = String::new();
    match e {
        Element::Sym(p) => {
            writeln!(out, "sym {} 0", p.dim()).unwrap();
            for (m, c) in p.terms() {
                writeln!(out, "{} : {}", format_monomial(m), format_scalar(c)).unwrap();
            }
        }
        Element::Ext(u) => {
            let arity = u.homogeneous_degree().unwrap_or(0);
            writeln!(out, "ext {} {arity}", u.dim()).unwrap();
            for (w, c) in u.terms() {
                writeln!(out, "{} : {}", format_wedge(w), format_scalar(c)).unwrap();
            }
        }
        Element::Bar(b) => {
            writeln!(out, "bar {} {}", b.dim(), b.arity()).unwrap();
            for (t, c) in b.terms() {
                writeln!(out, "{} : {}", format_slots(t), format_scalar(c)).unwrap();
            }
        }
        Element::Koszul(k) => {
            writeln!(out, "koszul {} {}", k.dim(), k.degree()).unwrap();
            for (key, c) in k.terms() {
                writeln!(
                    out,
                    "{} | {} | {} : {}",
                    format_monomial(&key.left),
                    format_monomial(&key.right),
                    format_wedge(&key.wedge),
                    format_scalar(c)
                )
                .unwrap();
            }
        }
    }
    out
}

/// Format of a polynomial value: `exps : p/q ; exps : p/q`, or `0`.
pub fn format_value(v: &LinComb<Monomial>) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter().map(|(m, c)| format!("{} : {}", format_monomial(m), format_scalar(c))).collect::<Vec<_>>().join(" ; ")
}

fn parse_value(span: Span<'_>, dim: usize) -> Result<LinComb<Monomial>> {
    let mut out = LinComb::new();
    if span.text == "0" {
        return Ok(out);
    }
    for term in span.split(';') {
        let (m, c) = term.split_once(':').ok_or_else(|| term.err("expected \"exponents : coefficient\""))?;
        out.add_term(parse_monomial(m, dim)?, parse_rational(c)?);
    }
    Ok(out)
}

fn parse_slots(span: Span<'_>, dim: usize, count: usize) -> Result<Vec<Monomial>> {
    if count == 0 {
        if !span.text.is_empty() {
            return Err(span.err("expected no slots"));
        }
        return Ok(vec![]);
    }
    let slots = span.split('|');
    if slots.len() != count {
        return Err(span.err(format!("expected {count} slots, found {}", slots.len())));
    }
    slots.iter().map(|s| parse_monomial(*s, dim)).collect()
}

/// A parsed cochain specification over `M = S(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpec {
    pub dim: usize,
    pub arity: usize,
    /// Antisymmetric table entered through `xi` lines.
    pub table: MultilinearTable<Monomial>,
    /// Points of the cochain `ψ` whose coboundary is included.
    pub coboundary_points: BTreeMap<Vec<Monomial>, LinComb<Monomial>>,
    pub points: BTreeMap<Vec<Monomial>, LinComb<Monomial>>,
}

impl CochainSpec {
    pub fn cochain(&self) -> Result<Cochain<SymBimodule>> {
        let mut parts = Vec::new();
        let one = Scalar::from_integer(1.into());
        if !self.table.is_zero() {
            parts.push((one.clone(), xi::<SymBimodule>(&self.table)?));
        }
        if !self.coboundary_points.is_empty() {
            let psi = Cochain::points(self.arity - 1, self.coboundary_points.clone())?;
            parts.push((one.clone(), psi.coboundary()));
        }
        if !self.points.is_empty() {
            parts.push((one, Cochain::points(self.arity, self.points.clone())?));
        }
        Cochain::linear_combination(self.arity, parts)
    }
}

/// Parses a cochain specification. Targets other than `sym` are reported as
/// [`Error::InvalidBimodule`].
pub fn parse_cochain_spec(text: &str) -> Result<CochainSpec> {
    let mut it = lines(text).peekable();
    let header = it.next().ok_or_else(|| Error::parse(1, 1, "missing header"))?;
    let (_, dim, arity) = parse_header(header, Some("cochain"))?;
    let mut entries: Vec<(Vec<usize>, LinComb<Monomial>)> = Vec::new();
    let mut coboundary_points = BTreeMap::new();
    let mut points = BTreeMap::new();
    for line in it {
        let words = line.words();
        let keyword = words[0];
        if keyword.text == "module" {
            let target = words.get(1).map(|w| w.text).unwrap_or("");
            if target != "sym" || words.len() != 2 {
                return Err(Error::InvalidBimodule(format!("unsupported target module {target:?} on line {}", line.line)));
            }
            continue;
        }
        let rest = Span { line: line.line, column: keyword.column + keyword.text.len(), text: &line.text[keyword.text.len()..] };
        let (lhs, rhs) = rest.split_once('=').ok_or_else(|| line.err("expected \"=\""))?;
        let value = parse_value(rhs, dim)?;
        match keyword.text {
            "xi" => {
                let idx = parse_indices(lhs, dim, arity)?;
                let mut sorted = idx.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != idx.len() {
                    return Err(lhs.err("repeated index in antisymmetric entry"));
                }
                entries.push((idx, value));
            }
            "delta" => {
                if arity == 0 {
                    return Err(keyword.err("delta needs arity at least 1"));
                }
                let slots = parse_slots(lhs, dim, arity - 1)?;
                let slot: &mut LinComb<Monomial> = coboundary_points.entry(slots).or_default();
                slot.add_assign(&value);
            }
            "point" => {
                let slots = parse_slots(lhs, dim, arity)?;
                let slot: &mut LinComb<Monomial> = points.entry(slots).or_default();
                slot.add_assign(&value);
            }
            other => return Err(keyword.err(format!("unknown generator {other:?}"))),
        }
    }
    let table = MultilinearTable::antisymmetric(dim, arity, entries)?;
    Ok(CochainSpec { dim, arity, table, coboundary_points, points })
}

/// Writes an antisymmetric table as `xi` lines (ascending indices only).
pub fn format_table_spec(table: &MultilinearTable<Monomial>) -> String {
    let mut out = format!("cochain {} {}\nmodule sym\n", table.dim(), table.arity());
    for (idx, value) in table.entries() {
        if idx.windows(2).all(|w| w[0] < w[1]) {
            let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(out, "xi {} = {}", idx.join(" "), format_value(value)).unwrap();
        }
    }
    out
}

/// Writes point values as `point` lines, skipping zero values.
pub fn format_points_spec(dim: usize, arity: usize, values: &[(Vec<Monomial>, LinComb<Monomial>)]) -> String {
    let mut out = format!("cochain {dim} {arity}\nmodule sym\n");
    for (t, v) in values {
        if !v.is_zero() {
            writeln!(out, "point {} = {}", format_slots(t), format_value(v)).unwrap();
        }
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn koszul_round_trip() {
        let text = "# sample\nkoszul 2 2\n1 0 | 0 2 | 2 1 : 3/2\n0 0 | 0 0 | 1 2 : -1\n";
        let e = parse_element(text).unwrap();
        let Element::Koszul(k) = &e else { panic!() };
        assert_eq!(k.terms().len(), 2);
        let printed = format_element(&e);
        assert_eq!(parse_element(&printed).unwrap(), e);
        assert!(printed.contains("1 0 | 0 2 | 1 2 : -3/2"));
    }

    #[test]
    fn bar_and_sym_round_trip() {
        for text in ["bar 2 1\n0 0 | 1 0 | 0 1 : 2\n", "sym 3 0\n1 2 0 : -1/3\n0 0 0 : 4\n", "ext 3 2\n3 1 : 1\n"] {
            let e = parse_element(text).unwrap();
            assert_eq!(parse_element(&format_element(&e)).unwrap(), e);
        }
    }

    #[test]
    fn zero_denominator_position() {
        let err = parse_element("sym 2 0\n1 0 : 1/0\n").unwrap_err();
        assert_eq!(err, Error::parse(2, 7, "zero denominator in \"1/0\""));
    }

    #[test]
    fn shape_errors_carry_position() {
        let err = parse_element("bar 2 1\n0 0 | 1 0 : 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 1, .. }));
        let err = parse_element("koszul 2 1\n0 0 | 0 0 | 3 : 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 13, .. }));
        let err = parse_element("sym 2 0\n1 x : 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }));
    }

    #[test]
    fn cochain_spec() {
        let text = "cochain 2 2\nmodule sym\nxi 2 1 = 1 0 : 1 ; 0 0 : -1/2\ndelta 1 1 = 0 0 : 2\npoint 1 0 | 0 1 = 0\n";
        let spec = parse_cochain_spec(text).unwrap();
        assert_eq!(spec.table.get(&[0, 1]), [(Monomial::new(vec![1, 0]), int(-1)), (Monomial::new(vec![0, 0]), frac(1, 2))].into_iter().collect());
        assert_eq!(spec.coboundary_points.len(), 1);
        let phi = spec.cochain().unwrap();
        assert_eq!(phi.arity(), 2);
        let again = parse_cochain_spec(&format_table_spec(&spec.table)).unwrap();
        assert_eq!(again.table, spec.table);
    }

    #[test]
    fn cochain_spec_errors() {
        assert!(matches!(parse_cochain_spec("cochain 2 1\nmodule weyl\n"), Err(Error::InvalidBimodule(_))));
        assert!(parse_cochain_spec("cochain 2 2\nxi 1 1 = 0\n").unwrap_err().is_parse());
        assert!(parse_cochain_spec("cochain 2 1\nfoo = 0\n").unwrap_err().is_parse());
        let empty = parse_cochain_spec("cochain 2 2\n").unwrap();
        assert!(empty.table.is_zero() && empty.points.is_empty());
    }
}
