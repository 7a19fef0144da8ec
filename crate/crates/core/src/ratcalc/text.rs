//! Exact textual serialization of rational functions.
//!
//! `arity=2; num: 1 * z1^1 z2^0 + -1 * z1^0 z2^1; den: (z1-z2)^2 z1^1`

use super::{AuxSymbol, PoleDivisor, Poly, Rf, AUX_COUNT};
use crate::error::{Error, Result};
use crate::scalar::{fmt_q, parse_q};

impl Rf {
    pub fn to_text(&self) -> String {
        let n = self.arity();
        let mut terms = Vec::new();
        for (e, c) in self.numerator().terms() {
            let mut parts: Vec<String> = (0..n).map(|i| format!("z{}^{}", i + 1, e[i])).collect();
            for sym in AuxSymbol::ALL {
                let x = e[n + sym.index()];
                if x != 0 {
                    parts.push(format!("{}^{}", sym.name(), x));
                }
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            terms.push(format!("{} * {}", fmt_q(c), parts.join(" ")));
        }
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let mut den = Vec::new();
        for (i, j, k) in self.divisor().pair_factors() {
            den.push(format!("(z{}-z{})^{}", i + 1, j + 1, k));
        }
        for (i, k) in self.divisor().axis_factors() {
            den.push(format!("z{}^{}", i + 1, k));
        }
        let den = if den.is_empty() { "1".to_string() } else { den.join(" ") };
        format!("arity={n}; num: {num}; den: {den}")
    }

    pub fn from_text(s: &str) -> Result<Rf> {
        let bad = |m: &str| Error::Parse(format!("{m} in `{s}`"));
        let mut parts = s.split(';').map(str::trim);
        let arity: usize = parts
            .next()
            .and_then(|p| p.strip_prefix("arity="))
            .ok_or_else(|| bad("missing arity"))?
            .trim()
            .parse()
            .map_err(|_| bad("bad arity"))?;
        let num_s = parts.next().and_then(|p| p.strip_prefix("num:")).ok_or_else(|| bad("missing num"))?;
        let den_s = parts.next().and_then(|p| p.strip_prefix("den:")).ok_or_else(|| bad("missing den"))?;
        if parts.next().is_some() {
            return Err(bad("trailing fields"));
        }
        let mut num = Poly::zero(arity);
        let num_s = num_s.trim();
        if num_s != "0" {
            for term in num_s.split(" + ") {
                let (c, mono) = term.split_once(" * ").ok_or_else(|| bad("bad term"))?;
                let c = parse_q(c)?;
                let mut e = vec![0i32; arity + AUX_COUNT];
                for f in mono.split_whitespace() {
                    if f == "1" {
                        continue;
                    }
                    let (name, x) = f.split_once('^').ok_or_else(|| bad("bad power"))?;
                    let x: i32 = x.parse().map_err(|_| bad("bad exponent"))?;
                    if let Some(sym) = AuxSymbol::from_name(name) {
                        e[arity + sym.index()] = x;
                    } else {
                        let i = var_index(name, arity).ok_or_else(|| bad("bad variable"))?;
                        if x < 0 {
                            return Err(bad("negative numerator exponent"));
                        }
                        e[i] = x;
                    }
                }
                num.add_term(e, c);
            }
        }
        let mut div = PoleDivisor::trivial(arity);
        let den_s = den_s.trim();
        if den_s != "1" {
            for f in den_s.split_whitespace() {
                let (base, k) = f.rsplit_once('^').ok_or_else(|| bad("bad factor"))?;
                let k: u32 = k.parse().map_err(|_| bad("bad factor exponent"))?;
                if let Some(inner) = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
                    let (a, b) = inner.split_once('-').ok_or_else(|| bad("bad pair factor"))?;
                    let i = var_index(a, arity).ok_or_else(|| bad("bad variable"))?;
                    let j = var_index(b, arity).ok_or_else(|| bad("bad variable"))?;
                    if i >= j {
                        return Err(bad("pair factor must be written (zi-zj) with i<j"));
                    }
                    let cur = div.pair(i, j);
                    div.set_pair(i, j, cur + k);
                } else {
                    let i = var_index(base, arity).ok_or_else(|| bad("bad variable"))?;
                    div.axis[i] += k;
                }
            }
        }
        Ok(Rf::new(num, div))
    }
}

fn var_index(name: &str, arity: usize) -> Option<usize> {
    let i: usize = name.strip_prefix('z')?.parse().ok()?;
    (1..=arity).contains(&i).then(|| i - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_frac;

    #[test]
    fn round_trip() {
        let f = Rf::linear_pow(3, 0, 2, -2)
            .mul(&Rf::var_pow(3, 1, -1))
            .unwrap()
            .add(&Rf::var(3, 0).scale(&q_frac(-3, 7)))
            .unwrap()
            .mul_aux(AuxSymbol::Epsilon, 2);
        let t = f.to_text();
        assert_eq!(Rf::from_text(&t).unwrap(), f);
        assert_eq!(Rf::from_text(&Rf::zero(2).to_text()).unwrap(), Rf::zero(2));
        assert_eq!(Rf::from_text(&Rf::one(0).to_text()).unwrap(), Rf::one(0));
        assert!(Rf::from_text("arity=1; num: 1 * z3^1; den: 1").is_err());
    }
}
