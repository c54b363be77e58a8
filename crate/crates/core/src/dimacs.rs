//! DIMACS CNF reading and writing.

use std::fmt::Write as _;

use crate::error::{ParseError, ParseErrorKind};
use crate::formula::{Clause, CnfFormula, Literal};

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Drop repeated literals inside a clause (reporting each) instead of
    /// rejecting the clause.
    pub lenient: bool,
}

/// A non-fatal observation made while parsing in lenient mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    parse_dimacs_with(text, ParseOptions::default()).map(|(f, _)| f)
}

/// Yields `(line number, token)` for every token outside comment lines.
pub(crate) fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('c'))
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)))
}

/// Reads `p <kind> <a> <b>` from the token stream.
pub(crate) fn read_header<'a>(
    toks: &mut impl Iterator<Item = (usize, &'a str)>,
    kind: &str,
) -> Result<(usize, usize, usize), ParseError> {
    let (line, p) = toks
        .next()
        .ok_or(ParseError { line: 1, kind: ParseErrorKind::MissingHeader })?;
    let err = |what: String| ParseError { line, kind: ParseErrorKind::MalformedHeader(what) };
    if p != "p" {
        return Err(ParseError { line, kind: ParseErrorKind::MissingHeader });
    }
    let mut field = || match toks.next() {
        Some((l, t)) if l == line => Ok(t),
        _ => Err(err("truncated".into())),
    };
    let k = field()?;
    if k != kind {
        return Err(err(format!("expected `p {kind}`, found `p {k}`")));
    }
    let a = field()?;
    let b = field()?;
    let a = a.parse::<usize>().map_err(|_| err(format!("bad count `{a}`")))?;
    let b = b.parse::<usize>().map_err(|_| err(format!("bad count `{b}`")))?;
    Ok((line, a, b))
}

pub fn parse_dimacs_with(
    text: &str,
    opts: ParseOptions,
) -> Result<(CnfFormula, Vec<Diagnostic>), ParseError> {
    let mut toks = tokens(text).peekable();
    let (header_line, num_vars, num_clauses) = read_header(&mut toks, "cnf")?;
    let mut diags = Vec::new();
    let mut clauses = Vec::with_capacity(num_clauses);
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = header_line;

    for (line, tok) in toks {
        last_line = line;
        let fail = |kind| ParseError { line, kind };
        if tok == "p" {
            return Err(fail(ParseErrorKind::DuplicateHeader));
        }
        let lit: i64 = tok
            .parse()
            .map_err(|_| fail(ParseErrorKind::InvalidToken(tok.to_string())))?;
        if lit == 0 {
            if current.is_empty() {
                return Err(fail(ParseErrorKind::EmptyClause));
            }
            if clauses.len() == num_clauses {
                return Err(fail(ParseErrorKind::CountMismatch {
                    expected: num_clauses,
                    found: num_clauses + 1,
                }));
            }
            // Validation happened literal by literal.
            clauses.push(Clause::new(std::mem::take(&mut current)).expect("validated clause"));
            continue;
        }
        if lit.unsigned_abs() as usize > num_vars || lit.unsigned_abs() > u64::from(u32::MAX) {
            return Err(fail(ParseErrorKind::VariableOutOfRange { var: lit, num_vars }));
        }
        let l = Literal::from_dimacs(lit).expect("nonzero literal in range");
        if let Some(prev) = current.iter().find(|p| p.var() == l.var()) {
            if *prev != l {
                return Err(fail(ParseErrorKind::Tautology(l.var())));
            }
            if !opts.lenient {
                return Err(fail(ParseErrorKind::DuplicateLiteral(lit)));
            }
            diags.push(Diagnostic { line, message: format!("dropped duplicate literal {lit}") });
            continue;
        }
        current.push(l);
    }
    if !current.is_empty() {
        return Err(ParseError { line: last_line, kind: ParseErrorKind::Unterminated });
    }
    if clauses.len() != num_clauses {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::CountMismatch { expected: num_clauses, found: clauses.len() },
        });
    }
    let f = CnfFormula::new(num_vars, clauses).expect("variables checked against header");
    Ok((f, diags))
}

pub fn serialize_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses()).unwrap();
    for c in f.clauses() {
        for l in c.literals() {
            write!(out, "{} ", l.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::complete_set;

    fn kind(text: &str) -> ParseErrorKind {
        parse_dimacs(text).unwrap_err().kind
    }

    #[test]
    fn parses_single_clause() {
        let f = parse_dimacs("p cnf 2 1\n1 -2 0").unwrap();
        assert_eq!(f, CnfFormula::from_dimacs_clauses(2, &[&[1, -2]]).unwrap());
    }

    #[test]
    fn parses_complete_set() {
        let f = parse_dimacs("p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0").unwrap();
        assert_eq!(f, complete_set(&[1, 2]).unwrap());
    }

    #[test]
    fn comments_and_spanning_clauses() {
        let text = "c hello\np cnf 3 2\n1 2\nc mid-clause comment\n 3 0 -1\n0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(f, CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3], &[-1]]).unwrap());
    }

    #[test]
    fn error_paths() {
        assert_eq!(kind("p cnf 1 1\n1 -1 0"), ParseErrorKind::Tautology(1));
        assert_eq!(kind("p cnf 2 1\n1 1 0"), ParseErrorKind::DuplicateLiteral(1));
        assert_eq!(kind("p cnf 2 1\n0"), ParseErrorKind::EmptyClause);
        assert_eq!(kind("p cnf 2 1\n3 0"), ParseErrorKind::VariableOutOfRange { var: 3, num_vars: 2 });
        assert_eq!(kind("p cnf 2 2\n1 0"), ParseErrorKind::CountMismatch { expected: 2, found: 1 });
        assert_eq!(kind("p cnf 2 1\n1 0 2 0"), ParseErrorKind::CountMismatch { expected: 1, found: 2 });
        assert_eq!(kind("p cnf 2 1\n1 2"), ParseErrorKind::Unterminated);
        assert_eq!(kind("1 2 0"), ParseErrorKind::MissingHeader);
        assert_eq!(kind(""), ParseErrorKind::MissingHeader);
        assert!(matches!(kind("p cnf x 1\n1 0"), ParseErrorKind::MalformedHeader(_)));
        assert!(matches!(kind("p wcnf 1 1\n1 0"), ParseErrorKind::MalformedHeader(_)));
        assert!(matches!(kind("p cnf 1\n1 0"), ParseErrorKind::MalformedHeader(_)));
        assert!(matches!(kind("p cnf 1 1\n1 a 0"), ParseErrorKind::InvalidToken(_)));
    }

    #[test]
    fn lenient_dedupes_with_diagnostic() {
        let (f, diags) =
            parse_dimacs_with("p cnf 2 1\n1 2 1 0", ParseOptions { lenient: true }).unwrap();
        assert_eq!(f, CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap());
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].line, 2);
        // Tautologies stay fatal.
        assert!(parse_dimacs_with("p cnf 1 1\n1 -1 0", ParseOptions { lenient: true }).is_err());
    }

    #[test]
    fn serializes() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, -2]]).unwrap();
        assert_eq!(serialize_dimacs(&f), "p cnf 2 1\n1 -2 0\n");
        assert_eq!(serialize_dimacs(&CnfFormula::empty(3)), "p cnf 3 0\n");
    }
}
