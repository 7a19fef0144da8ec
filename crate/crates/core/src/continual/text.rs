//! Text format for presentations: a `basis` line, then sections
//! `[product]`, `[K0]`, `[K+]`, `[K-]`, `[K00]` of sparse entries
//! `(e1, e2) -> 2 e1 + -1/2 e2`. Missing entries are zero; `#` starts a
//! comment.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{BaseAlgebra, BilinearMap, ContinualPresentation, Elem};
use crate::error::{Error, Result};
use crate::scalar::{fmt_q, parse_q, Q};

const SECTIONS: [&str; 5] = ["product", "K0", "K+", "K-", "K00"];

fn write_table(f: &mut fmt::Formatter<'_>, name: &str, labels: &[String], t: &BilinearMap) -> fmt::Result {
    writeln!(f, "[{name}]")?;
    for (i, li) in labels.iter().enumerate() {
        for (j, lj) in labels.iter().enumerate() {
            let e = t.entry(i, j);
            if e.iter().all(Zero::is_zero) {
                continue;
            }
            let terms: Vec<String> = e
                .iter()
                .zip(labels)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{} {l}", fmt_q(c)) })
                .collect();
            writeln!(f, "({li}, {lj}) -> {}", terms.join(" + "))?;
        }
    }
    Ok(())
}

impl fmt::Display for ContinualPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = &self.base.labels;
        writeln!(f, "basis {}", labels.join(" "))?;
        let tables = [&self.base.product, &self.k0, &self.k_plus, &self.k_minus, &self.k00];
        for (name, t) in SECTIONS.iter().zip(tables) {
            write_table(f, name, labels, t)?;
        }
        Ok(())
    }
}

fn parse_elem(s: &str, labels: &[String]) -> Result<Elem> {
    let mut out = vec![Q::zero(); labels.len()];
    let find = |l: &str| {
        labels.iter().position(|x| x == l).ok_or_else(|| Error::Parse(format!("unknown basis label `{l}`")))
    };
    for term in s.split(" + ") {
        let term = term.trim();
        let (c, l) = match term.rsplit_once(' ') {
            Some((c, l)) => (parse_q(c)?, l),
            None => (Q::one(), term),
        };
        out[find(l)?] += c;
    }
    Ok(out)
}

impl FromStr for ContinualPresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut labels: Option<Vec<String>> = None;
        let mut tables: Vec<BilinearMap> = Vec::new();
        let mut current: Option<usize> = None;
        for (no, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Parse(format!("line {}: {m}", no + 1));
            if let Some(rest) = line.strip_prefix("basis") {
                let ls: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if ls.is_empty() || labels.is_some() {
                    return Err(err("expected one nonempty basis line"));
                }
                tables = vec![BilinearMap::zero(ls.len()); SECTIONS.len()];
                labels = Some(ls);
                continue;
            }
            let Some(ls) = &labels else {
                return Err(err("the basis line must come first"));
            };
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                current = Some(SECTIONS.iter().position(|s| *s == name).ok_or_else(|| err("unknown section"))?);
                continue;
            }
            let Some(sec) = current else {
                return Err(err("entry outside a section"));
            };
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("expected `(i, j) -> value`"))?;
            let pair = lhs.trim().strip_prefix('(').and_then(|l| l.strip_suffix(')')).ok_or_else(|| err("bad pair"))?;
            let (a, b) = pair.split_once(',').ok_or_else(|| err("bad pair"))?;
            let idx = |l: &str| ls.iter().position(|x| x == l.trim()).ok_or_else(|| err("unknown basis label"));
            let (i, j) = (idx(a)?, idx(b)?);
            tables[sec].set(i, j, parse_elem(rhs, ls).map_err(|e| err(&e.to_string()))?)?;
        }
        let labels = labels.ok_or_else(|| Error::Parse("missing basis line".into()))?;
        let mut it = tables.into_iter();
        let mut next = || it.next().expect("one table per section");
        let base = BaseAlgebra::new(labels, next())?;
        Ok(ContinualPresentation { base, k0: next(), k_plus: next(), k_minus: next(), k00: next() })
    }
}
