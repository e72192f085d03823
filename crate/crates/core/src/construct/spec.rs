use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named group family with its parameters, as accepted by [`super::build`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GroupSpec {
    Cyclic(u64),
    /// Dihedral group of the given order `2n`.
    Dihedral(u64),
    Sym(u64),
    Alt(u64),
    /// `PSL(2, q)` on the projective line.
    Psl2(u64),
    /// `C_p x| C_{q^k}` acting on `p` points.
    Frobenius {
        p: u64,
        q: u64,
        k: u32,
    },
    TwoFrobenius {
        q: u64,
        n: u64,
        p: u64,
        c: u64,
    },
    /// `<a, b | a^p = b^{q^2} = 1, a^b = a^r>`; `default` marks the unparameterized form.
    Presented {
        p: u64,
        q: u64,
        r: u64,
        default: bool,
    },
    /// `GF(p)^d x| <A>` with `A` given row-major and its expected order.
    Affine {
        p: u64,
        d: u64,
        order: u64,
        matrix: Vec<u64>,
    },
    /// Explicit generators in cycle notation; `degree` defaults to the largest point plus one.
    Generators {
        generators: Vec<String>,
        degree: Option<usize>,
    },
    File(PathBuf),
}

pub const DEFAULT_PRESENTED: (u64, u64, u64) = (7, 3, 2);

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "Dihedral({n})"),
            GroupSpec::Sym(n) => write!(f, "Sym({n})"),
            GroupSpec::Alt(n) => write!(f, "Alt({n})"),
            GroupSpec::Psl2(q) => write!(f, "PSL(2,{q})"),
            GroupSpec::Frobenius { p, q, k } => write!(f, "Frob({p},{q},{k})"),
            GroupSpec::TwoFrobenius { q, n, p, c } => write!(f, "TwoFrob({q},{n},{p},{c})"),
            GroupSpec::Presented { default: true, .. } => write!(f, "Presented"),
            GroupSpec::Presented { p, q, r, .. } => write!(f, "Presented({p},{q},{r})"),
            GroupSpec::Affine {
                p,
                d,
                order,
                matrix,
            } => {
                write!(f, "Affine({p},{d},{order}")?;
                for x in matrix {
                    write!(f, ",{x}")?;
                }
                f.write_str(")")
            }
            GroupSpec::Generators { generators, degree } => {
                write!(f, "<{}>", generators.join(", "))?;
                if let Some(d) = degree {
                    write!(f, "@{d}")?;
                }
                Ok(())
            }
            GroupSpec::File(path) => write!(f, "File({})", path.display()),
        }
    }
}

fn perr(position: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        token: token.to_string(),
        message: message.into(),
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Positions in parse errors are 1-based character offsets into the input.
    fn from_str(text: &str) -> Result<Self> {
        let lead = text.len() - text.trim_start().len();
        let s = text.trim();
        if s.is_empty() {
            return Err(perr(1, "", "empty group specification"));
        }
        if s.starts_with('<') {
            return parse_generators(s, lead);
        }
        let name_end = s
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(s.len());
        let name = &s[..name_end];
        if name.is_empty() {
            return Err(perr(lead + 1, &s[..1], "expected a family name"));
        }
        let rest = &s[name_end..];
        let family = name.to_ascii_lowercase();
        if family == "presented" && rest.trim().is_empty() {
            let (p, q, r) = DEFAULT_PRESENTED;
            return Ok(GroupSpec::Presented {
                p,
                q,
                r,
                default: true,
            });
        }
        let args_start = lead + name_end;
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| {
                perr(
                    args_start + 1,
                    rest,
                    "expected a parenthesized argument list",
                )
            })?;
        if family == "file" {
            let path = inner.trim();
            if path.is_empty() {
                return Err(perr(args_start + 2, inner, "missing file path"));
            }
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        let mut args = Vec::new();
        let mut offset = args_start + 1;
        for piece in inner.split(',') {
            let tok = piece.trim();
            let pos = offset + (piece.len() - piece.trim_start().len()) + 1;
            let v: u64 = tok
                .parse()
                .map_err(|_| perr(pos, tok, "expected a non-negative integer"))?;
            args.push((v, pos, tok.to_string()));
            offset += piece.len() + 1;
        }
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(perr(
                    lead + 1,
                    name,
                    format!("{name} takes {n} argument(s), got {}", args.len()),
                ))
            }
        };
        let a = |i: usize| args[i].0;
        let spec = match family.as_str() {
            "cyclic" => {
                arity(1)?;
                GroupSpec::Cyclic(a(0))
            }
            "dihedral" => {
                arity(1)?;
                GroupSpec::Dihedral(a(0))
            }
            "sym" => {
                arity(1)?;
                GroupSpec::Sym(a(0))
            }
            "alt" => {
                arity(1)?;
                GroupSpec::Alt(a(0))
            }
            "psl" => {
                arity(2)?;
                if a(0) != 2 {
                    return Err(perr(args[0].1, &args[0].2, "only PSL(2,q) is supported"));
                }
                GroupSpec::Psl2(a(1))
            }
            "frob" | "frobenius" => {
                arity(3)?;
                GroupSpec::Frobenius {
                    p: a(0),
                    q: a(1),
                    k: a(2) as u32,
                }
            }
            "twofrob" => {
                arity(4)?;
                GroupSpec::TwoFrobenius {
                    q: a(0),
                    n: a(1),
                    p: a(2),
                    c: a(3),
                }
            }
            "presented" => {
                arity(3)?;
                GroupSpec::Presented {
                    p: a(0),
                    q: a(1),
                    r: a(2),
                    default: false,
                }
            }
            "affine" => {
                if args.len() < 3 {
                    return Err(perr(
                        lead + 1,
                        name,
                        "Affine takes p, d, order and d*d entries",
                    ));
                }
                let d = a(1);
                if args.len() as u64 != 3 + d * d {
                    return Err(perr(
                        lead + 1,
                        name,
                        format!("Affine with d = {d} needs {} matrix entries", d * d),
                    ));
                }
                GroupSpec::Affine {
                    p: a(0),
                    d,
                    order: a(2),
                    matrix: args[3..].iter().map(|x| x.0).collect(),
                }
            }
            _ => return Err(perr(lead + 1, name, "unknown group family")),
        };
        Ok(spec)
    }
}

fn parse_generators(s: &str, lead: usize) -> Result<GroupSpec> {
    let close = s
        .rfind('>')
        .ok_or_else(|| perr(lead + s.len(), s, "missing closing `>`"))?;
    let degree = match s[close + 1..].trim() {
        "" => None,
        tail => {
            let d = tail.strip_prefix('@').and_then(|d| d.trim().parse().ok());
            Some(d.ok_or_else(|| perr(lead + close + 2, tail, "expected `@degree`"))?)
        }
    };
    let body = &s[1..close];
    let mut generators = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut pieces = Vec::new();
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                pieces.push((start, &body[start..i]));
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(perr(lead + 2 + i, ")", "unbalanced parenthesis"));
        }
    }
    if depth != 0 {
        return Err(perr(lead + 1 + close, "(", "unbalanced parenthesis"));
    }
    pieces.push((start, &body[start..]));
    for (off, piece) in pieces {
        let g = piece.trim();
        if g.is_empty() {
            if body.trim().is_empty() {
                continue;
            }
            return Err(perr(lead + 2 + off, piece, "empty generator"));
        }
        crate::perm::Permutation::parse_cycles(g, None)
            .map_err(|e| perr(lead + 2 + off, g, e.to_string()))?;
        generators.push(g.to_string());
    }
    Ok(GroupSpec::Generators { generators, degree })
}

impl TryFrom<String> for GroupSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GroupSpec> for String {
    fn from(s: GroupSpec) -> String {
        s.to_string()
    }
}
