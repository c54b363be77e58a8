//! Plain-text lin2 format:
//!
//! ```text
//! c optional comments
//! p lin2 <num_vars> <num_eqs>
//! <weight> <rhs> <var> <var> ... 0
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Lin2Equation, Lin2System};
use crate::dimacs::{read_header, tokens};
use crate::error::{ParseError, ParseErrorKind};

pub fn parse_lin2(text: &str) -> Result<Lin2System, ParseError> {
    let mut toks = tokens(text);
    let (header_line, num_vars, num_eqs) = read_header(&mut toks, "lin2")?;
    let mut equations = Vec::with_capacity(num_eqs);
    let mut last_line = header_line;

    // Each equation: weight, rhs, then variables up to a terminating 0.
    while let Some((line, tok)) = toks.next() {
        let fail = |kind| ParseError { line, kind };
        if tok == "p" {
            return Err(fail(ParseErrorKind::DuplicateHeader));
        }
        let weight: BigInt =
            tok.parse().map_err(|_| fail(ParseErrorKind::InvalidToken(tok.to_string())))?;
        let Some(weight) = weight.to_biguint().filter(|w| !w.is_zero()) else {
            return Err(fail(ParseErrorKind::NonPositiveWeight));
        };
        let (line, rhs_tok) = toks.next().ok_or(fail(ParseErrorKind::Unterminated))?;
        let rhs: i8 = match rhs_tok {
            "1" | "+1" => 1,
            "-1" => -1,
            other => return Err(ParseError { line, kind: ParseErrorKind::BadRhs(other.into()) }),
        };
        let mut support = Vec::new();
        loop {
            let (line, t) = toks.next().ok_or(ParseError { line, kind: ParseErrorKind::Unterminated })?;
            last_line = line;
            let fail = |kind| ParseError { line, kind };
            let v: i64 = t.parse().map_err(|_| fail(ParseErrorKind::InvalidToken(t.to_string())))?;
            if v == 0 {
                break;
            }
            if v < 0 || v as usize > num_vars {
                return Err(fail(ParseErrorKind::VariableOutOfRange { var: v, num_vars }));
            }
            let v = v as u32;
            if support.contains(&v) {
                return Err(fail(ParseErrorKind::DuplicateVariable(v)));
            }
            support.push(v);
        }
        if support.is_empty() {
            return Err(ParseError { line: last_line, kind: ParseErrorKind::EmptySupport });
        }
        if equations.len() == num_eqs {
            return Err(ParseError {
                line: last_line,
                kind: ParseErrorKind::CountMismatch { expected: num_eqs, found: num_eqs + 1 },
            });
        }
        equations.push(Lin2Equation::new(support, rhs, weight).expect("validated equation"));
    }
    if equations.len() != num_eqs {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::CountMismatch { expected: num_eqs, found: equations.len() },
        });
    }
    Ok(Lin2System::new(num_vars, equations).expect("variables checked against header"))
}

pub fn serialize_lin2(s: &Lin2System) -> String {
    let mut out = String::new();
    writeln!(out, "p lin2 {} {}", s.num_vars(), s.num_equations()).unwrap();
    for e in s.equations() {
        write!(out, "{} {}", e.weight(), e.rhs()).unwrap();
        for v in e.support() {
            write!(out, " {v}").unwrap();
        }
        out.push_str(" 0\n");
    }
    out
}
