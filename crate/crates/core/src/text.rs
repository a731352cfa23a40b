//! Line-oriented text formats for every value the command line reads or
//! writes. Blank lines and lines starting with `#` are ignored on input.
//! Printers emit canonical text, so `parse(print(x)) == x`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error as ThisError;

use crate::algebra::{Algebra, Element, ElementaryConstraint, Presentation};
use crate::calculus::{AtomicRelation, RelationSet, Trit, TritTable, ValuationFunction};
use crate::products::FilterOnFinite;
use crate::sampler::DenseRequest;
use crate::theory::TModelFragment;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, Error> {
    Err(ParseError {
        line,
        message: message.into(),
    }
    .into())
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number(line: usize, word: &str) -> Result<usize, Error> {
    match word.parse() {
        Ok(n) => Ok(n),
        Err(_) => err(line, format!("expected a natural number, got `{word}`")),
    }
}

fn numbers<'a>(line: usize, words: impl Iterator<Item = &'a str>) -> Result<Vec<usize>, Error> {
    words.map(|w| number(line, w)).collect()
}

fn literal(line: usize, word: &str) -> Result<(usize, bool), Error> {
    let Some((i, b)) = word.split_once('=') else {
        return err(line, format!("expected `i=b`, got `{word}`"));
    };
    let b = match b {
        "0" => false,
        "1" => true,
        _ => return err(line, format!("literal value must be 0 or 1, got `{b}`")),
    };
    Ok((number(line, i)?, b))
}

fn constraint<'a>(
    line: usize,
    words: impl Iterator<Item = &'a str>,
) -> Result<ElementaryConstraint, Error> {
    let lits = words
        .map(|w| literal(line, w))
        .collect::<Result<Vec<_>, _>>()?;
    ElementaryConstraint::new(lits).or_else(|e| err(line, e.to_string()))
}

fn header<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, Error> {
    match text.strip_prefix(key).and_then(|r| r.strip_prefix(':')) {
        Some(rest) => Ok(rest),
        None => err(line, format!("expected `{key}:`")),
    }
}

fn parse_presentation_lines<'a>(
    mut it: impl Iterator<Item = (usize, &'a str)>,
) -> Result<(Presentation, Vec<(usize, &'a str)>), Error> {
    let Some((line, first)) = it.next() else {
        return err(0, "missing `gens:` header");
    };
    let gens = numbers(line, header(line, first, "gens")?.split_whitespace())?;
    let mut forbidden = Vec::new();
    let mut rest = Vec::new();
    for (line, text) in it {
        let mut words = text.split_whitespace();
        if words.next() == Some("forbid") && rest.is_empty() {
            forbidden.push(constraint(line, words)?);
        } else {
            rest.push((line, text));
        }
    }
    match Presentation::new(gens, forbidden) {
        Ok(p) => Ok((p, rest)),
        Err(e) => err(line, e.to_string()),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, Error> {
    let (p, rest) = parse_presentation_lines(lines(text))?;
    match rest.first() {
        Some(&(line, t)) => err(line, format!("unexpected line `{t}`")),
        None => Ok(p),
    }
}

pub fn write_presentation(p: &Presentation) -> String {
    let mut out = String::from("gens:");
    for g in p.generators() {
        let _ = write!(out, " {g}");
    }
    out.push('\n');
    for c in p.forbidden() {
        let _ = writeln!(out, "forbid {c}");
    }
    out
}

/// Comma-separated assignment bitstrings; `-` is the zero element.
pub fn write_element(e: &Element) -> String {
    if e.is_zero() {
        "-".into()
    } else {
        e.to_string()
    }
}

pub fn parse_element(algebra: &Algebra, text: &str) -> Result<Element, String> {
    let text = text.trim();
    if text == "-" {
        return Ok(algebra.zero());
    }
    let width = algebra.presentation().generators().len();
    let mut indices = Vec::new();
    for bits in text.split(',') {
        let bits = bits.trim();
        if bits.len() != width || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(format!("`{bits}` is not a bitstring of length {width}"));
        }
        let code = if width == 0 {
            0
        } else {
            u32::from_str_radix(bits, 2).expect("checked")
        };
        match algebra.atoms().binary_search_by_key(&code, |a| a.code()) {
            Ok(k) => indices.push(k),
            Err(_) => return Err(format!("`{bits}` is not an atom")),
        }
    }
    algebra
        .from_atom_indices(indices)
        .map_err(|e| e.to_string())
}

pub fn parse_relations(text: &str) -> Result<RelationSet, Error> {
    let mut r = RelationSet::new();
    for (line, t) in lines(text) {
        let words: Vec<&str> = t.split_whitespace().collect();
        let rel = match words.as_slice() {
            ["geq", i, j] => AtomicRelation::geq(number(line, i)?, number(line, j)?),
            ["perp", i, j] => AtomicRelation::perp(number(line, i)?, number(line, j)?),
            _ => return err(line, format!("expected `geq i j` or `perp i j`, got `{t}`")),
        };
        r.insert(rel);
    }
    Ok(r)
}

pub fn write_relations(r: &RelationSet) -> String {
    r.to_string()
}

/// A table that need not satisfy the closure conditions. Omitted pairs are
/// UNDEF.
pub fn parse_table(text: &str) -> Result<TritTable, Error> {
    let mut it = lines(text);
    let Some((line, first)) = it.next() else {
        return err(0, "missing `dom:` header");
    };
    let domain = numbers(line, header(line, first, "dom")?.split_whitespace())?;
    if domain.windows(2).any(|w| w[0] >= w[1]) {
        return err(line, "domain must be strictly increasing");
    }
    let mut values: BTreeMap<(usize, usize), Trit> = BTreeMap::new();
    for (line, t) in it {
        let words: Vec<&str> = t.split_whitespace().collect();
        let [i, j, v] = words.as_slice() else {
            return err(line, format!("expected `i j GEQ|PERP|UNDEF`, got `{t}`"));
        };
        let (i, j) = (number(line, i)?, number(line, j)?);
        let v: Trit = v.parse().or_else(|m: String| err(line, m))?;
        if i >= j {
            return err(line, format!("pair ({i}, {j}) is not strictly increasing"));
        }
        if domain.binary_search(&i).is_err() || domain.binary_search(&j).is_err() {
            return err(line, format!("pair ({i}, {j}) is outside the domain"));
        }
        if values.insert((i, j), v).is_some_and(|old| old != v) {
            return err(line, format!("conflicting values for ({i}, {j})"));
        }
    }
    Ok(TritTable::with_default_undef(domain, values).expect("domain and pairs checked"))
}

/// A table that must also be a valuation function; a violation is a
/// semantic error, not a parse error.
pub fn parse_valuation(text: &str) -> Result<ValuationFunction, Error> {
    Ok(ValuationFunction::new(parse_table(text)?)?)
}

pub fn write_valuation(p: &ValuationFunction) -> String {
    p.to_string()
}

/// `gens`/`forbid` lines, then `L:`, `classes:`, one `x <label>: <element>`
/// per label in `L` order and `v:` listing the label of each element by atom
/// mask.
pub fn parse_model(text: &str) -> Result<TModelFragment, Error> {
    let (pres, rest) = parse_presentation_lines(lines(text))?;
    let algebra = Algebra::new(pres);
    let mut labels = None;
    let mut classes = None;
    let mut v = None;
    let mut x: Vec<(usize, usize, Element)> = Vec::new();
    let mut last = 0;
    for (line, t) in rest {
        last = line;
        let (key, value) = t.split_once(':').unwrap_or((t, ""));
        let words = value.split_whitespace();
        match key.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["L"] if labels.is_none() => labels = Some(numbers(line, words)?),
            ["classes"] if classes.is_none() => classes = Some(numbers(line, words)?),
            ["v"] if v.is_none() => v = Some(numbers(line, words)?),
            ["x", label] => {
                let label = number(line, label)?;
                let e = parse_element(&algebra, value).or_else(|m| err(line, m))?;
                x.push((line, label, e));
            }
            _ => return err(line, format!("unexpected line `{t}`")),
        }
    }
    let (Some(labels), Some(classes), Some(v)) = (labels, classes, v) else {
        return err(last, "model needs `L:`, `classes:` and `v:` lines");
    };
    let mut values = Vec::with_capacity(labels.len());
    for (k, &l) in labels.iter().enumerate() {
        match x.get(k) {
            Some((_, label, e)) if *label == l => values.push(e.clone()),
            Some((line, label, _)) => {
                return err(*line, format!("expected `x {l}:`, got `x {label}:`"))
            }
            None => return err(last, format!("missing `x {l}:`")),
        }
    }
    if let Some((line, _, _)) = x.get(labels.len()) {
        return err(*line, "more x lines than labels");
    }
    TModelFragment::new(algebra, labels, classes, v, values).or_else(|e| err(last, e.to_string()))
}

pub fn write_model(m: &TModelFragment) -> String {
    let join = |xs: &[usize]| xs.iter().map(|x| format!(" {x}")).collect::<String>();
    let mut out = write_presentation(m.algebra().presentation());
    let _ = writeln!(out, "L:{}", join(m.labels()));
    let _ = writeln!(out, "classes:{}", join(m.classes()));
    for (l, e) in m.labels().iter().zip(m.generators()) {
        let _ = writeln!(out, "x {l}: {}", write_element(e));
    }
    let _ = writeln!(out, "v:{}", join(m.levels()));
    out
}

pub fn parse_schedule(text: &str) -> Result<Vec<DenseRequest>, Error> {
    let mut out = Vec::new();
    for (line, t) in lines(text) {
        let mut words = t.split_whitespace();
        let req = match (words.next(), words.next()) {
            (Some("dom"), Some(i)) => {
                let i = number(line, i)?;
                if words.next().is_some() {
                    return err(line, "`dom` takes one index");
                }
                DenseRequest::DomainPoint(i)
            }
            (Some("dense"), Some(alpha)) => DenseRequest::DensityBelow {
                alpha: number(line, alpha)?,
                e: constraint(line, words)?,
            },
            _ => {
                return err(
                    line,
                    format!("expected `dom i` or `dense α i=b ...`, got `{t}`"),
                )
            }
        };
        out.push(req);
    }
    Ok(out)
}

pub fn write_schedule(reqs: &[DenseRequest]) -> String {
    reqs.iter().map(|r| format!("{r}\n")).collect()
}

/// `trivial`, `principal i0`, or one `member i j ...` line per member of
/// the filter, on an index set of `size` elements.
pub fn parse_filter(text: &str, size: usize) -> Result<FilterOnFinite, Error> {
    let mut members = Vec::new();
    let mut special = None;
    let mut last = 0;
    for (line, t) in lines(text) {
        last = line;
        let words: Vec<&str> = t.split_whitespace().collect();
        match words.as_slice() {
            ["trivial"] if special.is_none() && members.is_empty() => special = Some(None),
            ["principal", i] if special.is_none() && members.is_empty() => {
                special = Some(Some(number(line, i)?))
            }
            ["member", rest @ ..] if special.is_none() => {
                let mut mask = 0u32;
                for i in numbers(line, rest.iter().copied())? {
                    if i >= size || i >= 32 {
                        return err(
                            line,
                            format!("index {i} is outside the index set of size {size}"),
                        );
                    }
                    mask |= 1 << i;
                }
                members.push(mask);
            }
            _ => return err(line, format!("unexpected line `{t}`")),
        }
    }
    Ok(match special {
        Some(None) => FilterOnFinite::trivial(size)?,
        Some(Some(i)) => FilterOnFinite::principal(size, i)?,
        None if members.is_empty() => return err(last, "empty filter file"),
        None => FilterOnFinite::from_members(size, &members)?,
    })
}

pub fn write_filter(f: &FilterOnFinite) -> String {
    let kernel = f.kernel_indices();
    if kernel.len() == f.size() {
        "trivial\n".into()
    } else if let [i] = kernel.as_slice() {
        format!("principal {i}\n")
    } else {
        format!(
            "member {}\n",
            kernel
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )
    }
}

/// One tuple per line, written `(a,b,...)`; parentheses are optional on
/// input and entries may be separated by commas or spaces.
pub fn parse_branches(text: &str) -> Result<Vec<Vec<usize>>, Error> {
    lines(text)
        .map(|(line, t)| {
            let inner = t.trim_start_matches('(').trim_end_matches(')');
            numbers(
                line,
                inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|w| !w.is_empty()),
            )
        })
        .collect()
}

pub fn write_branches(branches: &[Vec<usize>]) -> String {
    branches
        .iter()
        .map(|b| {
            format!(
                "({})\n",
                b.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::theory::standard_model;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse(p) => p.line,
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn presentation_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = random::presentation(&mut rng, 6, 4);
            assert_eq!(parse_presentation(&write_presentation(&p)).unwrap(), p);
        }
        let p = parse_presentation("# two generators\ngens: 0 3\n\nforbid 0=1 3=0\n").unwrap();
        assert_eq!(write_presentation(&p), "gens: 0 3\nforbid 0=1 3=0\n");
    }

    #[test]
    fn presentation_errors_carry_lines() {
        assert_eq!(
            line_of(parse_presentation("gens: 0 1\nforbid 0=2").unwrap_err()),
            2
        );
        assert_eq!(line_of(parse_presentation("gens: 1 0").unwrap_err()), 1);
        assert_eq!(
            line_of(parse_presentation("gens: 0\nforbid 1=1").unwrap_err()),
            1
        );
        assert_eq!(line_of(parse_presentation("forbid 0=1").unwrap_err()), 1);
        assert_eq!(
            line_of(parse_presentation("gens: 0\nforbid 0=1 0=0").unwrap_err()),
            2
        );
    }

    #[test]
    fn element_round_trip() {
        let alg = Algebra::new(parse_presentation("gens: 0 1\nforbid 0=0 1=1").unwrap());
        for e in alg.elements().unwrap() {
            assert_eq!(parse_element(&alg, &write_element(&e)).unwrap(), e);
        }
        assert_eq!(write_element(&alg.one()), "00,10,11");
        assert!(parse_element(&alg, "01").is_err());
        assert!(parse_element(&alg, "1").is_err());
    }

    #[test]
    fn relations_and_valuations_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let p = random::valuation(&mut rng, (0..6).collect());
            let text = write_valuation(&p);
            assert_eq!(parse_valuation(&text).unwrap(), p);
            let r = p.rel();
            assert_eq!(parse_relations(&write_relations(&r)).unwrap(), r);
        }
        let p = parse_valuation("dom: 0 1 2\n0 1 GEQ\n").unwrap();
        assert_eq!(
            write_valuation(&p),
            "dom: 0 1 2\n0 1 GEQ\n0 2 UNDEF\n1 2 UNDEF\n"
        );
        assert_eq!(line_of(parse_table("dom: 0 1\n1 0 GEQ").unwrap_err()), 2);
        assert_eq!(line_of(parse_table("dom: 0 1\n0 1 MAYBE").unwrap_err()), 2);
        assert_eq!(
            line_of(parse_table("dom: 0 1\n0 1 GEQ\n0 1 PERP").unwrap_err()),
            3
        );
        assert!(matches!(
            parse_valuation("dom: 0 1 2\n0 1 GEQ\n1 2 GEQ\n0 2 UNDEF"),
            Err(Error::Calculus(_))
        ));
    }

    #[test]
    fn model_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let p = random::valuation(&mut rng, (0..4).collect());
            let m = standard_model(&p, 2).unwrap();
            let text = write_model(&m);
            assert_eq!(parse_model(&text).unwrap(), m, "{text}");
        }
        assert!(parse_model("gens: 0\nL: 0\nclasses: 0\nv: 0 0").is_err());
    }

    #[test]
    fn schedule_filter_and_branch_round_trips() {
        let s = parse_schedule("dom 3\ndense 4 0=1 1=0\n").unwrap();
        assert_eq!(write_schedule(&s), "dom 3\ndense 4 0=1 1=0\n");
        assert_eq!(line_of(parse_schedule("dom 3\ndense 4").unwrap_err()), 2);
        assert_eq!(line_of(parse_schedule("dom").unwrap_err()), 1);

        for text in ["trivial\n", "principal 2\n", "member 0 2\n"] {
            let f = parse_filter(text, 3).unwrap();
            assert_eq!(write_filter(&f), text);
        }
        let f = parse_filter("member 0 1\nmember 1\n", 3).unwrap();
        assert_eq!(f, FilterOnFinite::principal(3, 1).unwrap());
        assert!(matches!(
            parse_filter("member 0 1\nmember 1 2\n", 3),
            Err(Error::Product(_))
        ));
        assert!(matches!(
            parse_filter("member 0\nmember 1\n", 2),
            Err(Error::Product(_))
        ));
        assert_eq!(line_of(parse_filter("member 5", 3).unwrap_err()), 1);

        let b = parse_branches("(0,1)\n1 0\n(1, 1)\n").unwrap();
        assert_eq!(b, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(parse_branches(&write_branches(&b)).unwrap(), b);
    }
}
