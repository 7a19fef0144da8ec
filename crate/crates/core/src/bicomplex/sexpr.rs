//! S-expression text for cochain trees.
//!
//! ```text
//! (delta (gen 1 2 "a(-1)|0>"))
//! (lin 2 1 (1 (insert X)) (-1 (compose 1 X)))
//! (star ((0 0)) 0 monomial X Y)
//! ```

use super::{Cochain, Grade, Kind, Tag};
use crate::diffalg::{self, BasisChoice, ProductContext};
use crate::error::{Error, Result};
use crate::scalar::{fmt_q, parse_q};
use crate::voa::Vector;

pub fn to_sexpr(c: &Cochain) -> String {
    let mut s = String::new();
    write(c, &mut s);
    s
}

fn write(c: &Cochain, s: &mut String) {
    let tag = c.tag();
    match c.kind() {
        Kind::Generator { anchor } => s.push_str(&format!("(gen {} {} \"{anchor}\")", tag.n, tag.m)),
        Kind::Zero => s.push_str(&format!("(zero {} {})", tag.n, tag.m)),
        Kind::LinearCombo(terms) => {
            s.push_str(&format!("(lin {} {}", tag.n, tag.m));
            for (k, t) in terms {
                s.push_str(&format!(" ({} ", fmt_q(k)));
                write(t, s);
                s.push(')');
            }
            s.push(')');
        }
        Kind::PermImage { sigma, child } => {
            let p: Vec<String> = sigma.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("(perm ({}) ", p.join(" ")));
            write(child, s);
            s.push(')');
        }
        Kind::ComposeAt { i, child } => unary(&format!("compose {i}"), child, s),
        Kind::InsertLeft(child) => unary("insert", child, s),
        Kind::InsertCyclic { child, .. } => unary("cyclic", child, s),
        Kind::Delta { child, .. } => unary("delta", child, s),
        Kind::DeltaHalf { child, .. } => unary("delta-half", child, s),
        Kind::Star(spec) => {
            let ids: Vec<String> = spec.ctx.identifications.iter().map(|(i, j)| format!("({i} {j})")).collect();
            let basis = match spec.ctx.basis {
                BasisChoice::Monomial => "monomial".to_string(),
                BasisChoice::Randomized(seed) => format!("random:{seed}"),
            };
            let head = if spec.swapped { "star-swapped" } else { "star" };
            s.push_str(&format!("({head} ({}) {} {basis} ", ids.join(" "), spec.ctx.t));
            write(&spec.left, s);
            s.push(' ');
            write(&spec.right, s);
            s.push(')');
        }
        Kind::FakeConstant { value } => s.push_str(&format!("(fake-const {} {} \"{value}\")", tag.n, tag.m)),
        Kind::FakeMulVar { slot, child } => unary(&format!("fake-mulvar {slot}"), child, s),
    }
}

fn unary(head: &str, child: &Cochain, s: &mut String) {
    s.push('(');
    s.push_str(head);
    s.push(' ');
    write(child, s);
    s.push(')');
}

#[derive(Debug, Clone)]
enum Sx {
    Atom(String),
    Str(String),
    List(Vec<Sx>),
}

fn tokenize(text: &str) -> Result<Vec<Sx>> {
    let mut stack: Vec<Vec<Sx>> = vec![Vec::new()];
    let mut chars = text.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '(' => stack.push(Vec::new()),
            ')' => {
                let done = stack.pop().filter(|_| !stack.is_empty()).ok_or_else(|| parse_err("unbalanced ')'"))?;
                stack.last_mut().unwrap().push(Sx::List(done));
            }
            '"' => {
                let mut lit = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some(c) => lit.push(c),
                        None => return Err(parse_err("unterminated string")),
                    }
                }
                stack.last_mut().unwrap().push(Sx::Str(lit));
            }
            c if c.is_whitespace() => {}
            c => {
                let mut atom = c.to_string();
                while let Some(&d) = chars.peek() {
                    if d.is_whitespace() || d == '(' || d == ')' || d == '"' {
                        break;
                    }
                    atom.push(d);
                    chars.next();
                }
                stack.last_mut().unwrap().push(Sx::Atom(atom));
            }
        }
    }
    if stack.len() != 1 {
        return Err(parse_err("unbalanced '('"));
    }
    Ok(stack.pop().unwrap())
}

fn parse_err(m: &str) -> Error {
    Error::Parse(format!("cochain expression: {m}"))
}

pub fn from_sexpr(text: &str) -> Result<Cochain> {
    let mut top = tokenize(text)?;
    if top.len() != 1 {
        return Err(parse_err("expected exactly one expression"));
    }
    build(&top.pop().unwrap())
}

fn atom(x: &Sx) -> Result<&str> {
    match x {
        Sx::Atom(a) => Ok(a),
        _ => Err(parse_err("expected an atom")),
    }
}

fn number(x: &Sx) -> Result<usize> {
    atom(x)?.parse().map_err(|_| parse_err("expected a nonnegative integer"))
}

fn grade(x: &Sx) -> Result<Grade> {
    match atom(x)? {
        "1/2" => Ok(Grade::Half),
        a => a.parse().map(Grade::Whole).map_err(|_| parse_err("expected a composability index")),
    }
}

fn vector(x: &Sx) -> Result<Vector> {
    match x {
        Sx::Str(s) => s.parse(),
        _ => Err(parse_err("expected a quoted vector")),
    }
}

fn build(x: &Sx) -> Result<Cochain> {
    let Sx::List(items) = x else { return Err(parse_err("expected a list")) };
    let head = items.first().ok_or_else(|| parse_err("empty list")).and_then(atom)?;
    let arg = |k: usize| items.get(k).ok_or_else(|| parse_err(&format!("missing argument to {head}")));
    let child = |k: usize| arg(k).and_then(build);
    match head {
        "gen" => Ok(Cochain::generator(vector(arg(3)?)?, number(arg(1)?)?, grade(arg(2)?)?)),
        "zero" => Ok(Cochain::zero(number(arg(1)?)?, grade(arg(2)?)?)),
        "fake-const" => Ok(Cochain::fake_constant(vector(arg(3)?)?, number(arg(1)?)?, grade(arg(2)?)?)),
        "lin" => {
            let tag = Tag::new(number(arg(1)?)?, grade(arg(2)?)?);
            let mut terms = Vec::new();
            for t in &items[3..] {
                let Sx::List(pair) = t else { return Err(parse_err("expected (coefficient term)")) };
                if pair.len() != 2 {
                    return Err(parse_err("expected (coefficient term)"));
                }
                terms.push((parse_q(atom(&pair[0])?)?, build(&pair[1])?));
            }
            if terms.is_empty() {
                return Ok(Cochain::zero(tag.n, tag.m));
            }
            if terms.len() == 1 && terms[0].0 == crate::scalar::q(1) && terms[0].1.tag() != tag {
                return terms[0].1.viewed_as(tag);
            }
            let c = Cochain::linear(terms)?;
            if c.tag() == tag { Ok(c) } else { c.viewed_as(tag) }
        }
        "perm" => {
            let Sx::List(p) = arg(1)? else { return Err(parse_err("expected a permutation list")) };
            child(2)?.perm(p.iter().map(number).collect::<Result<_>>()?)
        }
        "compose" => child(2)?.compose_at(number(arg(1)?)?),
        "insert" => child(1)?.insert_left(),
        "cyclic" => child(1)?.insert_cyclic(),
        "delta" => child(1)?.delta(),
        "delta-half" => child(1)?.delta_half(),
        "fake-mulvar" => child(2)?.fake_mul_var(number(arg(1)?)?),
        "star" | "star-swapped" => {
            let Sx::List(ids) = arg(1)? else { return Err(parse_err("expected identification list")) };
            let identifications = ids
                .iter()
                .map(|p| match p {
                    Sx::List(ij) if ij.len() == 2 => Ok((number(&ij[0])?, number(&ij[1])?)),
                    _ => Err(parse_err("expected (i j)")),
                })
                .collect::<Result<_>>()?;
            let t = number(arg(2)?)? as u32;
            let basis = match atom(arg(3)?)? {
                "monomial" => BasisChoice::Monomial,
                b => match b.strip_prefix("random:").and_then(|s| s.parse().ok()) {
                    Some(seed) => BasisChoice::Randomized(seed),
                    None => return Err(parse_err("expected monomial or random:SEED")),
                },
            };
            let ctx = ProductContext { identifications, t, basis };
            diffalg::star_node(&child(4)?, &child(5)?, &ctx, head == "star-swapped")
        }
        other => Err(parse_err(&format!("unknown node {other}"))),
    }
}
