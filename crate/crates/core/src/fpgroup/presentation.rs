//! Finitely presented groups and their text format.
//!
//! ```text
//! gens: x y t
//! rels: [x,y], t^4, t^-1 x t = y, t^-1 y t = x^-1
//! ```
//!
//! A word is a juxtaposition of terms; a term is a generator name, a
//! parenthesised word or a commutator `[u, v]`, optionally raised to an
//! integer power with `^`. `[u, v]` stands for `u^-1 v^-1 u v` and a
//! top-level `u = v` for `u v^-1`. The relator list may continue over
//! several lines and may be empty. When every generator name is a single
//! character, an undeclared run such as `ab` is read as `a b`. `1` denotes
//! the identity. `#` starts a comment.

use std::fmt;

use super::word::{Letter, Word};
use super::FpError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Relators are freely reduced and empty ones dropped.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, FpError> {
        if generator_names.is_empty() {
            return Err(FpError::NoGenerators);
        }
        for (i, name) in generator_names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(FpError::InvalidName(name.clone()));
            }
            if generator_names[..i].contains(name) {
                return Err(FpError::InvalidName(format!("{name} declared twice")));
            }
        }
        let n = generator_names.len();
        if let Some(w) = relators.iter().find(|w| w.letters().iter().any(|l| l.generator() >= n)) {
            return Err(FpError::InvalidName(format!("relator {w:?} uses an undeclared generator")));
        }
        let relators = relators
            .into_iter()
            .map(|w| Word::new(w.letters().iter().copied()))
            .filter(|w| !w.is_empty())
            .collect();
        Ok(Presentation { generator_names, relators })
    }

    /// `< x_1, .., x_k | x_i^{s_i} >`
    pub fn free_product_of_cyclics(orders: &[u64]) -> Result<Self, FpError> {
        let names = if orders.len() <= 3 {
            ["x", "y", "z"][..orders.len()].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=orders.len()).map(|i| format!("x{i}")).collect()
        };
        let rels = orders.iter().enumerate().map(|(i, &s)| Word::power_of(Letter::gen(i), s as i64)).collect();
        Presentation::new(names, rels)
    }

    pub fn parse(text: &str) -> Result<Self, FpError> {
        Parser::parse(text)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Relator-by-generator exponent-sum matrix.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.exponent_sums(self.num_generators())).collect()
    }

    pub fn with_extra_relators(&self, extra: impl IntoIterator<Item = Word>) -> Self {
        let mut relators = self.relators.clone();
        relators.extend(extra.into_iter().filter(|w| !w.is_empty()));
        Presentation { generator_names: self.generator_names.clone(), relators }
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display(&self.generator_names).to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generator_names.join(" "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        if rels.is_empty() {
            writeln!(f, "rels:")
        } else {
            writeln!(f, "rels: {}", rels.join(", "))
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    Minus,
    Plus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

struct Parser {
    names: Vec<String>,
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn parse(text: &str) -> Result<Presentation, FpError> {
        let mut gens: Option<Vec<String>> = None;
        let mut rel_toks: Vec<Spanned> = Vec::new();
        let mut in_rels = false;
        let mut end = (1, 1);
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("");
            end = (lineno, line.chars().count() + 1);
            let trimmed = line.trim_start();
            let indent = line.len() - trimmed.len();
            if let Some(rest) = trimmed.strip_prefix("gens:") {
                if gens.is_some() {
                    return Err(syntax(lineno, indent + 1, "duplicate `gens:` line"));
                }
                let mut names = Vec::new();
                for t in lex(rest, lineno, indent + 6)? {
                    match t.tok {
                        Tok::Ident(name) => {
                            if names.contains(&name) {
                                return Err(syntax(t.line, t.column, &format!("generator `{name}` declared twice")));
                            }
                            names.push(name)
                        }
                        Tok::Comma => {}
                        _ => return Err(syntax(t.line, t.column, "expected a generator name")),
                    }
                }
                if names.is_empty() {
                    return Err(FpError::NoGenerators);
                }
                gens = Some(names);
                in_rels = false;
            } else if let Some(rest) = trimmed.strip_prefix("rels:") {
                if gens.is_none() {
                    return Err(syntax(lineno, indent + 1, "`rels:` before `gens:`"));
                }
                in_rels = true;
                rel_toks.extend(lex(rest, lineno, indent + 6)?);
            } else if trimmed.trim().is_empty() {
                continue;
            } else if in_rels {
                rel_toks.extend(lex(line, lineno, 1)?);
            } else {
                return Err(syntax(lineno, indent + 1, "expected `gens:` or `rels:`"));
            }
        }
        let names = gens.ok_or(FpError::NoGenerators)?;
        let mut parser = Parser { names, toks: rel_toks, pos: 0, end };
        let mut relators = Vec::new();
        if !parser.toks.is_empty() {
            loop {
                relators.push(parser.relator()?);
                match parser.next() {
                    None => break,
                    Some(Spanned { tok: Tok::Comma, .. }) => continue,
                    Some(t) => return Err(syntax(t.line, t.column, "expected `,` between relators")),
                }
            }
        }
        Presentation::new(parser.names, relators)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.column))
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), FpError> {
        let (line, column) = self.here();
        match self.next() {
            Some(s) if s.tok == want => Ok(()),
            _ => Err(syntax(line, column, &format!("expected {what}"))),
        }
    }

    fn relator(&mut self) -> Result<Word, FpError> {
        let lhs = self.word()?;
        if self.peek() == Some(&Tok::Equals) {
            self.next();
            let rhs = self.word()?;
            return Ok(lhs.concat(&rhs.inverse()));
        }
        Ok(lhs)
    }

    fn word(&mut self) -> Result<Word, FpError> {
        let mut w = Word::empty();
        let mut any = false;
        while matches!(self.peek(), Some(Tok::Ident(_) | Tok::Int(_) | Tok::LParen | Tok::LBracket)) {
            w = w.concat(&self.term()?);
            any = true;
        }
        if !any {
            let (line, column) = self.here();
            return Err(syntax(line, column, "expected a word"));
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, FpError> {
        let start = self.next().expect("caller peeked");
        let (prefix, base) = match start.tok {
            Tok::Ident(name) => self.resolve(&name, start.line, start.column)?,
            Tok::Int(1) => (Word::empty(), Word::empty()),
            Tok::Int(_) => return Err(syntax(start.line, start.column, "only `1` may appear as a word")),
            Tok::LParen => {
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                (Word::empty(), w)
            }
            Tok::LBracket => {
                let u = self.word()?;
                self.expect(Tok::Comma, "`,` inside commutator")?;
                let v = self.word()?;
                self.expect(Tok::RBracket, "`]`")?;
                (Word::empty(), Word::commutator(&u, &v))
            }
            _ => unreachable!(),
        };
        let exp = if self.peek() == Some(&Tok::Caret) {
            self.next();
            self.exponent()?
        } else {
            1
        };
        Ok(prefix.concat(&base.pow(exp)))
    }

    fn exponent(&mut self) -> Result<i64, FpError> {
        let (line, column) = self.here();
        let sign = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                -1
            }
            Some(Tok::Plus) => {
                self.next();
                1
            }
            _ => 1,
        };
        match self.next() {
            Some(Spanned { tok: Tok::Int(v), .. }) => Ok(sign * v),
            _ => Err(syntax(line, column, "expected an integer exponent")),
        }
    }

    /// Resolves an identifier to `(prefix, last letter)` so that an
    /// exponent binds to the last generator of a juxtaposed run.
    fn resolve(&self, name: &str, line: usize, column: usize) -> Result<(Word, Word), FpError> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok((Word::empty(), Word::new([Letter::gen(i)])));
        }
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let mut letters = Vec::new();
        for (k, c) in name.chars().enumerate() {
            match self.names.iter().position(|n| single && n.chars().eq(std::iter::once(c))) {
                Some(i) => letters.push(Letter::gen(i)),
                None => {
                    let (name, column) = if single { (c.to_string(), column + k) } else { (name.to_string(), column) };
                    return Err(FpError::UndeclaredGenerator { name, line, column });
                }
            }
        }
        let last = letters.pop().expect("identifiers are nonempty");
        Ok((Word::new(letters), Word::new([last])))
    }
}

fn syntax(line: usize, column: usize, message: &str) -> FpError {
    FpError::Syntax { line, column, message: message.to_string() }
}

fn lex(s: &str, line: usize, col0: usize) -> Result<Vec<Spanned>, FpError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        let simple = match c {
            '^' => Some(Tok::Caret),
            '-' => Some(Tok::Minus),
            '+' => Some(Tok::Plus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, line, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<i64>().map_err(|_| syntax(line, column, "integer out of range"))?;
            out.push(Spanned { tok: Tok::Int(v), line, column });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line, column });
        } else {
            return Err(syntax(line, column, &format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic() {
        let p = Presentation::parse("gens: a b\nrels: a^2, b^2").unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.exponent_matrix(), vec![vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn square_tiling_group() {
        let p = Presentation::parse("gens: x y t\nrels: [x,y], t^4, t^-1 x t = y, t^-1 y t = x^-1").unwrap();
        assert_eq!(p.relators().len(), 4);
        assert_eq!(p.exponent_matrix(), vec![vec![0, 0, 0], vec![0, 0, 4], vec![1, -1, 0], vec![1, 1, 0]]);
        assert_eq!(p.word_to_string(&p.relators()[0]), "x^-1 y^-1 x y");
        assert_eq!(p.word_to_string(&p.relators()[2]), "t^-1 x t y^-1");
    }

    #[test]
    fn undeclared_generator() {
        match Presentation::parse("gens: a b\nrels: a c") {
            Err(FpError::UndeclaredGenerator { name, line: 2, column: 9 }) => assert_eq!(name, "c"),
            other => panic!("{other:?}"),
        }
        match Presentation::parse("gens: foo bar\nrels: foo baz") {
            Err(FpError::UndeclaredGenerator { name, .. }) => assert_eq!(name, "baz"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn juxtaposed_single_letters() {
        let p = Presentation::parse("gens: a b\nrels: a^2, b^3, (ab)^3, ab^2").unwrap();
        let q = Presentation::parse("gens: a b\nrels: a^2, b^3, (a b)^3, a b^2").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn syntax_errors_have_positions() {
        for (text, line) in [
            ("gens: a\nrels: a^", 2),
            ("gens: a\nrels: (a", 2),
            ("gens: a\nrels: [a a]", 2),
            ("gens: a\nrels: a,,a", 2),
            ("rels: a", 1),
            ("gens: a\nfoo", 2),
            ("gens: a\nrels: a ! a", 2),
        ] {
            match Presentation::parse(text) {
                Err(FpError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert_eq!(Presentation::parse("gens:\nrels:"), Err(FpError::NoGenerators));
        assert_eq!(Presentation::parse(""), Err(FpError::NoGenerators));
    }

    #[test]
    fn empty_relators_and_continuations() {
        let z = Presentation::parse("gens: x\nrels:").unwrap();
        assert!(z.relators().is_empty());
        assert_eq!(Presentation::parse("gens: x"), Ok(z.clone()));
        let p = Presentation::parse("# comment\ngens: a b\nrels: a^2,\n  b^2 # trailing\n").unwrap();
        assert_eq!(p.relators().len(), 2);
        // trivial relators vanish
        assert!(Presentation::parse("gens: a\nrels: a a^-1, 1").unwrap().relators().is_empty());
    }

    #[test]
    fn round_trip() {
        for text in [
            "gens: x y t\nrels: [x,y], t^4, t^-1 x t = y, t^-1 y t = x^-1",
            "gens: a b\nrels: a^2, b^3, (a b)^3",
            "gens: x\nrels:",
            "gens: g1 g_2\nrels: g1^-5 g_2 g1 g_2^7",
        ] {
            let p = Presentation::parse(text).unwrap();
            assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
        }
    }
}
