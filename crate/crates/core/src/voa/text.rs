//! Text format for vectors: `1 * a(-1)a(-1)|0> + -1/2 * a(-2)|0>`.
//!
//! The parser also accepts the shorthands `a` for `a(-1)|0>`, `1` or `vac`
//! for the vacuum, and monomials written without a coefficient.

use std::fmt;
use std::str::FromStr;

use super::{Partition, Vector};
use crate::error::{Error, Result};
use crate::scalar::{fmt_q, parse_q, Q};

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.parts() {
            write!(f, "a(-{p})")?;
        }
        write!(f, "|0>")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.terms().map(|(p, c)| format!("{} * {}", fmt_q(c), p)).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn parse_monomial(s: &str) -> Result<Partition> {
    let bad = || Error::Parse(format!("bad basis monomial `{s}`"));
    let s = s.trim();
    match s {
        "1" | "vac" | "|0>" => return Ok(Partition::vacuum()),
        "a" => return Ok(Partition::new(vec![1])),
        _ => {}
    }
    let mut rest = s.strip_suffix("|0>").unwrap_or(s);
    let mut parts = Vec::new();
    while !rest.is_empty() {
        let r = rest.strip_prefix("a(-").ok_or_else(bad)?;
        let close = r.find(')').ok_or_else(bad)?;
        let k: u32 = r[..close].parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        parts.push(k);
        rest = &r[close + 1..];
    }
    Ok(Partition::new(parts))
}

impl FromStr for Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Vector> {
        let s = s.trim();
        if s == "0" {
            return Ok(Vector::zero());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        let mut v = Vector::zero();
        for term in s.split(" + ") {
            let term = term.trim();
            let (c, m) = match term.split_once('*') {
                Some((c, m)) => (parse_q(c)?, m),
                None => match term.strip_prefix('-') {
                    Some(m) => (Q::from_integer((-1).into()), m),
                    None => (Q::from_integer(1.into()), term),
                },
            };
            v.add_term(parse_monomial(m)?, c);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_frac;

    #[test]
    fn vector_round_trip() {
        let mut v = Vector::zero();
        v.add_term(Partition::new(vec![1, 1]), q_frac(1, 2));
        v.add_term(Partition::new(vec![2]), q_frac(-3, 1));
        v.add_term(Partition::vacuum(), q_frac(7, 5));
        let s = v.to_string();
        assert_eq!(s.parse::<Vector>().unwrap(), v);
        assert_eq!("a".parse::<Vector>().unwrap(), Vector::a());
        assert_eq!("vac".parse::<Vector>().unwrap(), Vector::vacuum());
        assert_eq!("a(-2)a(-1)".parse::<Vector>().unwrap(), Vector::basis(Partition::new(vec![2, 1])));
        assert!("b(-1)|0>".parse::<Vector>().is_err());
        assert!("a(-0)|0>".parse::<Vector>().is_err());
    }
}
