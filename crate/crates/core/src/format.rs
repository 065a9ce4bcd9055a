//! Text formats: rule files, matrix files and words.
//!
//! Rule file:
//!
//! ```text
//! ca v1
//! sides: one
//! states: 3
//! neighborhood: 0 1
//! table:
//! 00 -> 0
//! 01 -> 1
//! ...
//! ```
//!
//! `states: n m` declares a block map with a target alphabet of `m`
//! symbols; `factors:` and `target-factors:` record product structure.
//! Symbols are single characters `0-9a-z` for alphabets of at most 36
//! symbols and dot-separated decimals (`12.0.17`) for larger ones. `#`
//! starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::alphabet::{index_word, pow_sat, word_index, Alphabet, Neighborhood, Sidedness, State};
use crate::blockmap::BlockMap;
use crate::error::{Error, Result};
use crate::rule::LocalRule;

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Largest alphabet written with one character per symbol.
pub const COMPACT_LIMIT: usize = 36;

pub fn format_state(s: State, alphabet_size: usize) -> String {
    if alphabet_size <= COMPACT_LIMIT {
        (DIGITS[s as usize] as char).to_string()
    } else {
        s.to_string()
    }
}

pub fn format_word(word: &[State], alphabet_size: usize) -> String {
    if alphabet_size <= COMPACT_LIMIT {
        word.iter().map(|&s| DIGITS[s as usize] as char).collect()
    } else {
        word.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(".")
    }
}

pub fn parse_state(text: &str, alphabet_size: usize) -> Option<State> {
    let s = if alphabet_size <= COMPACT_LIMIT {
        let mut chars = text.chars();
        let c = chars.next()?;
        if chars.next().is_some() {
            return None;
        }
        c.to_digit(36)?
    } else {
        text.parse().ok()?
    };
    ((s as usize) < alphabet_size).then_some(s)
}

pub fn parse_word(text: &str, alphabet_size: usize) -> Result<Vec<State>> {
    let bad = |sym: &str| Error::parse(1, format!("bad symbol {sym:?} for alphabet of size {alphabet_size}"));
    if alphabet_size <= COMPACT_LIMIT {
        text.chars()
            .map(|c| parse_state(&c.to_string(), alphabet_size).ok_or_else(|| bad(&c.to_string())))
            .collect()
    } else if text.is_empty() {
        Ok(Vec::new())
    } else {
        text.split('.')
            .map(|p| parse_state(p, alphabet_size).ok_or_else(|| bad(p)))
            .collect()
    }
}

/// Canonical text of a block map (or rule).
pub fn write_rule(map: &BlockMap) -> String {
    let mut out = String::new();
    out.push_str("ca v1\n");
    let sides = match map.sidedness() {
        Sidedness::OneSided => "one",
        Sidedness::TwoSided => "two",
    };
    let _ = writeln!(out, "sides: {sides}");
    let n = map.source().size();
    let m = map.target().size();
    if n == m && map.source().factors() == map.target().factors() {
        let _ = writeln!(out, "states: {n}");
        write_factors(&mut out, "factors", map.source());
    } else {
        let _ = writeln!(out, "states: {n} {m}");
        write_factors(&mut out, "factors", map.source());
        write_factors(&mut out, "target-factors", map.target());
    }
    let nb = map.neighborhood();
    let _ = writeln!(out, "neighborhood: {} {}", nb.lo, nb.hi);
    out.push_str("table:\n");
    let w = map.width();
    for (i, &s) in map.table().iter().enumerate() {
        let _ = writeln!(
            out,
            "{} -> {}",
            format_word(&index_word(i, n, w), n),
            format_state(s, m)
        );
    }
    out
}

fn write_factors(out: &mut String, key: &str, a: &Alphabet) {
    if !a.factors().is_empty() {
        let f: Vec<String> = a.factors().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{key}: {}", f.join(" "));
    }
}

pub fn parse_rule(text: &str) -> Result<LocalRule> {
    let map = parse_block_map(text)?;
    LocalRule::try_from(map)
}

pub fn parse_block_map(text: &str) -> Result<BlockMap> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty rule file"))?;
    if header != "ca v1" {
        return Err(Error::parse(ln, format!("expected header 'ca v1', found {header:?}")));
    }

    let mut sides = None;
    let mut states: Option<(usize, usize)> = None;
    let mut factors: Option<Vec<usize>> = None;
    let mut target_factors: Option<Vec<usize>> = None;
    let mut nbhd = None;
    let mut table_line = None;
    for (ln, line) in lines.by_ref() {
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(ln, format!("expected 'key: value', found {line:?}")))?;
        let value = value.trim();
        match key.trim() {
            "sides" => {
                sides = Some(match value {
                    "one" => Sidedness::OneSided,
                    "two" => Sidedness::TwoSided,
                    other => return Err(Error::parse(ln, format!("sides must be one|two, found {other:?}"))),
                })
            }
            "states" => {
                let nums = parse_numbers::<usize>(value, ln)?;
                states = Some(match nums.as_slice() {
                    [n] => (*n, *n),
                    [n, m] => (*n, *m),
                    _ => return Err(Error::parse(ln, "states takes one or two numbers")),
                });
            }
            "factors" => factors = Some(parse_numbers(value, ln)?),
            "target-factors" => target_factors = Some(parse_numbers(value, ln)?),
            "neighborhood" => {
                let nums = parse_numbers::<i32>(value, ln)?;
                match nums.as_slice() {
                    [i, j] => nbhd = Some(Neighborhood::new(*i, *j).map_err(|e| Error::parse(ln, e.to_string()))?),
                    _ => return Err(Error::parse(ln, "neighborhood takes two integers")),
                }
            }
            "table" => {
                if !value.is_empty() {
                    return Err(Error::parse(ln, "table: must be followed by a newline"));
                }
                table_line = Some(ln);
                break;
            }
            other => return Err(Error::parse(ln, format!("unknown key {other:?}"))),
        }
    }
    let table_ln = table_line.ok_or_else(|| Error::parse(0, "missing 'table:' section"))?;
    let sides = sides.ok_or_else(|| Error::parse(table_ln, "missing 'sides:'"))?;
    let (n, m) = states.ok_or_else(|| Error::parse(table_ln, "missing 'states:'"))?;
    let nbhd = nbhd.ok_or_else(|| Error::parse(table_ln, "missing 'neighborhood:'"))?;
    let mk = |size: usize, f: Option<Vec<usize>>| -> Result<Alphabet> {
        let a = match f {
            Some(f) => Alphabet::with_factors(&f)?,
            None => Alphabet::new(size)?,
        };
        if a.size() != size {
            return Err(Error::parse(table_ln, format!("factors multiply to {}, states is {size}", a.size())));
        }
        Ok(a)
    };
    let source = mk(n, factors).map_err(|e| relabel_line(e, table_ln))?;
    let target = mk(m, target_factors.or_else(|| (n == m).then(|| source.factors().to_vec()).filter(|f| !f.is_empty())))
        .map_err(|e| relabel_line(e, table_ln))?;

    let w = nbhd.width();
    let total = pow_sat(n, w);
    if total > 100_000_000 {
        return Err(Error::parse(table_ln, format!("table of {total} entries is too large")));
    }
    let mut table: Vec<Option<State>> = vec![None; total as usize];
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (ln, line) in lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| Error::parse(ln, format!("expected '<word> -> <state>', found {line:?}")))?;
        let word = parse_word(lhs.trim(), n).map_err(|e| relabel_line(e, ln))?;
        if word.len() != w {
            return Err(Error::parse(ln, format!("word has length {}, neighborhood width is {w}", word.len())));
        }
        let out = parse_state(rhs.trim(), m)
            .ok_or_else(|| Error::parse(ln, format!("bad output state {:?}", rhs.trim())))?;
        let idx = word_index(&word, n);
        if let Some(prev) = seen.insert(idx, ln) {
            return Err(Error::parse(ln, format!("duplicate window {} (first on line {prev})", lhs.trim())));
        }
        table[idx] = Some(out);
    }
    if let Some(missing) = table.iter().position(|e| e.is_none()) {
        return Err(Error::parse(
            0,
            format!("missing window {}", format_word(&index_word(missing, n, w), n)),
        ));
    }
    let table = table.into_iter().map(|e| e.unwrap_or(0)).collect();
    BlockMap::new(source, target, sides, nbhd, table)
}

fn relabel_line(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { message, .. } => Error::parse(line, message),
        other => Error::parse(line, other.to_string()),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

fn parse_numbers<T: std::str::FromStr>(value: &str, ln: usize) -> Result<Vec<T>> {
    value
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad number {t:?}"))))
        .collect()
}

/// Matrix file: first line `n`, then `n` rows of `n` nonnegative integers.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<u64>>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());
    let (ln, first) = lines.next().ok_or_else(|| Error::parse(1, "empty matrix file"))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::parse(ln, format!("expected matrix size, found {first:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for (ln, line) in lines {
        let row: Vec<u64> = parse_numbers(line, ln)?;
        if row.len() != n {
            return Err(Error::parse(ln, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(0, format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

pub fn write_matrix(m: &[Vec<u64>]) -> String {
    let mut out = format!("{}\n", m.len());
    for row in m {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&r.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Budget;

    const XOR: &str = "ca v1\n# xor\nsides: one\nstates: 2\nneighborhood: 0 1\ntable:\n00 -> 0\n01 -> 1 # comment\n10 -> 1\n11 -> 0\n";

    #[test]
    fn parse_and_write_roundtrip() {
        let r = parse_rule(XOR).unwrap();
        assert_eq!(r.table(), &[0, 1, 1, 0]);
        let text = r.to_string();
        let again = parse_rule(&text).unwrap();
        assert_eq!(r, again);
        assert_eq!(text, again.to_string());
    }

    #[test]
    fn missing_window_reported() {
        let text = XOR.replace("11 -> 0\n", "");
        let e = parse_rule(&text).unwrap_err();
        assert!(e.to_string().contains("missing window 11"), "{e}");
    }

    #[test]
    fn duplicate_window_has_line() {
        let text = format!("{XOR}01 -> 0\n");
        match parse_rule(&text).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 11);
                assert!(message.contains("duplicate"));
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn bad_header_and_symbol() {
        assert!(matches!(parse_rule("cellular v2\n"), Err(Error::Parse { line: 1, .. })));
        let text = XOR.replace("10 -> 1", "12 -> 1");
        assert!(matches!(parse_rule(&text), Err(Error::Parse { line: 9, .. })));
    }

    #[test]
    fn large_alphabet_words() {
        assert_eq!(format_word(&[17, 0, 3], 40), "17.0.3");
        assert_eq!(parse_word("17.0.3", 40).unwrap(), vec![17, 0, 3]);
        assert_eq!(format_word(&[17, 0, 3], 18), "h03");
        assert_eq!(parse_word("h03", 18).unwrap(), vec![17, 0, 3]);
        assert!(parse_word("i", 18).is_err());
    }

    #[test]
    fn block_map_with_target_roundtrip() {
        let a = Alphabet::with_factors(&[3, 2]).unwrap();
        let p = BlockMap::projection(&a, 0..1, Sidedness::OneSided).unwrap();
        let text = write_rule(&p);
        assert!(text.contains("states: 6 3\nfactors: 3 2\n"));
        assert_eq!(parse_block_map(&text).unwrap(), p);
        assert!(parse_rule(&text).is_err());
    }

    #[test]
    fn product_factors_roundtrip() {
        let b = Budget::default();
        let x = parse_rule(XOR).unwrap();
        let p = LocalRule::product(&x, &x, &b).unwrap();
        let text = p.to_string();
        assert!(text.contains("factors: 2 2"));
        assert_eq!(parse_rule(&text).unwrap(), p);
    }

    #[test]
    fn matrix_roundtrip() {
        let m = vec![vec![1, 1], vec![1, 0]];
        let text = write_matrix(&m);
        assert_eq!(text, "2\n1 1\n1 0\n");
        assert_eq!(parse_matrix(&text).unwrap(), m);
        assert!(parse_matrix("2\n1 1\n").is_err());
        assert!(matches!(parse_matrix("2\n1 1\n1\n"), Err(Error::Parse { line: 3, .. })));
    }
}
