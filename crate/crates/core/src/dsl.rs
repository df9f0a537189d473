//! Line-oriented text format for recursion systems.
//!
//! ```text
//! # comments run to end of line
//! system R2 arity 2
//! gen s : phi 0 : [[0, 0], [1, 0]]
//! gen t : phi 0 : [[0, t], [0, s]]
//! ```
//!
//! Block entries are noncommutative polynomials: integers and fractions,
//! generator letters, `*` or juxtaposition for products, `+`/`-`, `^k`
//! powers and parentheses. `2st` and `2*s*t` denote the same term.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::DslError;
use crate::poly::NcPolynomial;
use crate::system::{GeneratorDef, RecursionSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

impl Token {
    fn text(&self) -> String {
        match &self.tok {
            Tok::Ident(s) => s.clone(),
            Tok::Int(n) => n.to_string(),
            Tok::Punct(c) => c.to_string(),
            Tok::End => "end of line".into(),
        }
    }
}

fn lex(line: &str, line_no: usize) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(digits.parse().expect("ascii digits")), column });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), column });
        } else if "[],:+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Punct(c), column });
            i += 1;
        } else {
            return Err(DslError::Syntax {
                line: line_no,
                column,
                token: c.to_string(),
                expected: "a number, name or one of [ ] , : + - * / ^ ( )".into(),
            });
        }
    }
    out.push(Token { tok: Tok::End, column: chars.len() + 1 });
    Ok(out)
}

/// A letter occurrence, checked against the declared generators once the
/// whole source has been read.
struct LetterUse {
    letter: char,
    line: usize,
    column: usize,
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    uses: &'a mut Vec<LetterUse>,
}

impl Cursor<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> DslError {
        let t = self.peek();
        DslError::Syntax { line: self.line, column: t.column, token: t.text(), expected: expected.into() }
    }

    fn punct(&mut self, c: char) -> Result<Token, DslError> {
        if self.peek().tok == Tok::Punct(c) {
            Ok(self.bump())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn keyword(&mut self, word: &str) -> Result<(), DslError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            _ => Err(self.error(&format!("'{word}'"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize), DslError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let col = self.bump().column;
                Ok((s, col))
            }
            _ => Err(self.error(what)),
        }
    }

    fn integer(&mut self, what: &str) -> Result<BigInt, DslError> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(what)),
        }
    }

    fn end(&mut self) -> Result<(), DslError> {
        if self.peek().tok == Tok::End {
            Ok(())
        } else {
            Err(self.error("end of line"))
        }
    }

    fn rational(&mut self) -> Result<BigRational, DslError> {
        let negative = if self.is_punct('-') {
            self.bump();
            true
        } else {
            false
        };
        let value = self.fraction()?;
        Ok(if negative { -value } else { value })
    }

    fn fraction(&mut self) -> Result<BigRational, DslError> {
        let num = self.integer("a number")?;
        if self.is_punct('/') {
            self.bump();
            let den_tok = self.peek().clone();
            let den = self.integer("a denominator")?;
            if den.is_zero() {
                return Err(DslError::Invalid { line: self.line, column: den_tok.column, detail: "zero denominator".into() });
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    // expr := [+|-] term ((+|-) term)*
    fn expr(&mut self) -> Result<NcPolynomial, DslError> {
        let mut acc = if self.is_punct('-') {
            self.bump();
            -&self.term()?
        } else {
            if self.is_punct('+') {
                self.bump();
            }
            self.term()?
        };
        loop {
            if self.is_punct('+') {
                self.bump();
                acc = &acc + &self.term()?;
            } else if self.is_punct('-') {
                self.bump();
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek().tok, Tok::Int(_) | Tok::Ident(_) | Tok::Punct('('))
    }

    // term := factor ([*] factor)*
    fn term(&mut self) -> Result<NcPolynomial, DslError> {
        let mut acc = self.factor()?;
        loop {
            if self.is_punct('*') {
                self.bump();
                acc = &acc * &self.factor()?;
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // factor := atom [^ uint]. A run of juxtaposed letters such as `st^2`
    // is a product of single-letter atoms, so the power binds to `t` only.
    fn factor(&mut self) -> Result<NcPolynomial, DslError> {
        let (prefix, base) = match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let col = self.bump().column;
                let mut letters = Vec::new();
                for (k, c) in s.chars().enumerate() {
                    if !c.is_alphabetic() {
                        return Err(DslError::Syntax {
                            line: self.line,
                            column: col + k,
                            token: c.to_string(),
                            expected: "generator letters".into(),
                        });
                    }
                    self.uses.push(LetterUse { letter: c, line: self.line, column: col + k });
                    letters.push(NcPolynomial::letter(c));
                }
                let last = letters.pop().expect("identifiers are nonempty");
                let prefix = letters.iter().fold(NcPolynomial::one(), |acc, l| &acc * l);
                (prefix, last)
            }
            _ => (NcPolynomial::one(), self.atom()?),
        };
        if self.is_punct('^') {
            self.bump();
            let tok = self.peek().clone();
            let k = self.integer("an exponent")?;
            let k = k.to_u32().filter(|&k| k <= 64).ok_or_else(|| DslError::Invalid {
                line: self.line,
                column: tok.column,
                detail: "exponent must be at most 64".into(),
            })?;
            Ok(&prefix * &base.pow(k))
        } else {
            Ok(&prefix * &base)
        }
    }

    // atom := int [/ int] | ( expr )
    fn atom(&mut self) -> Result<NcPolynomial, DslError> {
        match self.peek().tok.clone() {
            Tok::Int(_) => Ok(NcPolynomial::constant(self.fraction()?)),
            Tok::Punct('(') => {
                self.bump();
                let e = self.expr()?;
                self.punct(')')?;
                Ok(e)
            }
            _ => Err(self.error("a number, a generator or '('")),
        }
    }

    fn block(&mut self, arity: usize) -> Result<Vec<Vec<NcPolynomial>>, DslError> {
        let open = self.punct('[')?;
        let mut rows = Vec::new();
        loop {
            let row_open = self.punct('[')?;
            let mut row = vec![self.expr()?];
            while self.is_punct(',') {
                self.bump();
                row.push(self.expr()?);
            }
            self.punct(']')?;
            if row.len() != arity {
                return Err(DslError::ShapeMismatch {
                    line: self.line,
                    column: row_open.column,
                    detail: format!("row has {} entries, arity is {arity}", row.len()),
                });
            }
            rows.push(row);
            if self.is_punct(',') {
                self.bump();
            } else {
                break;
            }
        }
        self.punct(']')?;
        if rows.len() != arity {
            return Err(DslError::ShapeMismatch {
                line: self.line,
                column: open.column,
                detail: format!("block has {} rows, arity is {arity}", rows.len()),
            });
        }
        Ok(rows)
    }
}

/// Parses and validates a system definition.
pub fn parse_system(text: &str) -> Result<RecursionSystem, DslError> {
    let mut header: Option<(String, usize)> = None;
    let mut gens: Vec<GeneratorDef> = Vec::new();
    let mut uses: Vec<LetterUse> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = lex(raw, line)?;
        if toks.len() == 1 {
            continue;
        }
        let mut cur = Cursor { toks: &toks, pos: 0, line, uses: &mut uses };
        match &cur.peek().tok {
            Tok::Ident(k) if k == "system" => {
                if header.is_some() {
                    return Err(cur.error("a single header"));
                }
                cur.bump();
                let (name, _) = cur.ident("a system name")?;
                cur.keyword("arity")?;
                let tok = cur.peek().clone();
                let m = cur.integer("the arity")?;
                let m = m.to_usize().filter(|&m| m >= 2).ok_or_else(|| DslError::Invalid {
                    line,
                    column: tok.column,
                    detail: "arity must be an integer at least 2".into(),
                })?;
                cur.end()?;
                header = Some((name, m));
            }
            Tok::Ident(k) if k == "gen" => {
                let Some((_, arity)) = header else {
                    return Err(DslError::MissingHeader);
                };
                cur.bump();
                let (name, col) = cur.ident("a generator letter")?;
                let mut chars = name.chars();
                let letter = match (chars.next(), chars.next()) {
                    (Some(c), None) if c.is_alphabetic() => c,
                    _ => {
                        return Err(DslError::Syntax {
                            line,
                            column: col,
                            token: name,
                            expected: "a single-letter generator name".into(),
                        })
                    }
                };
                if gens.iter().any(|g| g.name == letter) {
                    return Err(DslError::DuplicateGenerator { line, column: col, name: letter });
                }
                cur.punct(':')?;
                cur.keyword("phi")?;
                let phi = cur.rational()?;
                cur.punct(':')?;
                let blocks = cur.block(arity)?;
                cur.end()?;
                gens.push(GeneratorDef::new(letter, phi, blocks));
            }
            _ => return Err(cur.error("'system' or 'gen'")),
        }
    }
    let (name, arity) = header.ok_or(DslError::MissingHeader)?;
    if let Some(u) = uses.iter().find(|u| !gens.iter().any(|g| g.name == u.letter)) {
        return Err(DslError::UndeclaredGenerator { line: u.line, column: u.column, name: u.letter });
    }
    RecursionSystem::new(name, arity, gens).map_err(|e| DslError::Invalid { line: 1, column: 1, detail: e.to_string() })
}

/// Parses one polynomial in the block-entry syntax, e.g. `(s t)^6` or
/// `s + t^2`. Letters are not checked against any system.
pub fn parse_polynomial(text: &str) -> Result<NcPolynomial, DslError> {
    let toks = lex(text, 1)?;
    let mut uses = Vec::new();
    let mut cur = Cursor { toks: &toks, pos: 0, line: 1, uses: &mut uses };
    let p = cur.expr()?;
    cur.end()?;
    Ok(p)
}

/// Normalized source text; `parse_system(&serialize_system(s)) == s`.
pub fn serialize_system(sys: &RecursionSystem) -> String {
    let mut out = format!("system {} arity {}\n", sys.name(), sys.arity());
    for g in sys.generators() {
        let rows: Vec<String> = g
            .blocks
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        out.push_str(&format!(
            "gen {} : phi {} : [{}]\n",
            g.name,
            crate::poly::fmt_rational(&g.phi),
            rows.join(", ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn juxtaposition_and_powers() {
        let src = "system X arity 2\ngen s : phi 1 : [[2st - 1/2, (s+t)^2], [0, -s]]\ngen t : phi 0 : [[0,0],[0,0]]\n";
        let sys = parse_system(src).unwrap();
        let e = &sys.generators()[0].blocks[0][0];
        assert_eq!(e.to_string(), "-1/2 + 2*s*t");
        assert_eq!(sys.generators()[0].blocks[0][1].num_terms(), 4);
    }

    #[test]
    fn power_binds_to_last_letter() {
        assert_eq!(parse_polynomial("st^2").unwrap(), NcPolynomial::word("stt"));
        assert_eq!(parse_polynomial("(st)^2").unwrap(), NcPolynomial::word("stst"));
        assert_eq!(parse_polynomial("(s t)^6").unwrap(), NcPolynomial::word("st").pow(6));
    }

    #[test]
    fn comments_and_blank_lines() {
        let src = "# header comment\n\nsystem S arity 2  # trailing\ngen a : phi -3/4 : [[a, 0], [0, 1]]\n";
        let sys = parse_system(src).unwrap();
        assert_eq!(sys.generators()[0].phi, BigRational::new(BigInt::from(-3), BigInt::from(4)));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_system("system S arity 2\ngen a : phi 1 [[a, 0], [0, 1]]\n").unwrap_err();
        assert_eq!(
            err,
            DslError::Syntax { line: 2, column: 15, token: "[".into(), expected: "':'".into() }
        );
    }

    #[test]
    fn missing_header() {
        assert_eq!(parse_system("gen a : phi 1 : [[a,0],[0,a]]").unwrap_err(), DslError::MissingHeader);
        assert_eq!(parse_system("# nothing\n").unwrap_err(), DslError::MissingHeader);
    }
}
