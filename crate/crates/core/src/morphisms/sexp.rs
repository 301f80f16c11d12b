//! A small S-expression reader. `;` and `#` start comments that run to the
//! end of the line.

use std::fmt;

use crate::error::SexpError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Sym { name: String, line: usize, col: usize },
    List { items: Vec<Sexp>, line: usize, col: usize },
}

impl Sexp {
    pub fn line(&self) -> usize {
        match self {
            Sexp::Sym { line, .. } | Sexp::List { line, .. } => *line,
        }
    }

    pub fn col(&self) -> usize {
        match self {
            Sexp::Sym { col, .. } | Sexp::List { col, .. } => *col,
        }
    }

    pub fn sym(&self) -> Option<&str> {
        match self {
            Sexp::Sym { name, .. } => Some(name),
            Sexp::List { .. } => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List { items, .. } => Some(items),
            Sexp::Sym { .. } => None,
        }
    }

    /// The head symbol of a non-empty list.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|xs| xs.first()).and_then(Sexp::sym)
    }

    pub fn error(&self, msg: impl Into<String>) -> SexpError {
        SexpError::Syntax { line: self.line(), col: self.col(), msg: msg.into() }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Sym { name, .. } => f.write_str(name),
            Sexp::List { items, .. } => {
                f.write_str("(")?;
                for (k, x) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    col: usize,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' || c == '#' {
                while let Some(&(_, c)) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn err(&self, msg: &str) -> SexpError {
        SexpError::Syntax { line: self.line, col: self.col, msg: msg.to_string() }
    }

    fn read(&mut self) -> Result<Option<Sexp>, SexpError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        match self.chars.peek().map(|&(_, c)| c) {
            None => Ok(None),
            Some(')') => Err(self.err("unbalanced `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek().map(|&(_, c)| c) {
                        None => {
                            return Err(SexpError::Syntax { line, col, msg: "unclosed `(`".into() });
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(Some(Sexp::List { items, line, col }));
                        }
                        Some(_) => items.push(self.read()?.expect("input remains")),
                    }
                }
            }
            Some(_) => {
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' || c == '#' {
                        break;
                    }
                    name.push(c);
                    self.bump();
                }
                Ok(Some(Sexp::Sym { name, line, col }))
            }
        }
    }
}

/// Reads every top-level form in `text`.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, SexpError> {
    let mut r = Reader { chars: text.char_indices().peekable(), line: 1, col: 1 };
    let mut out = Vec::new();
    while let Some(x) = r.read()? {
        out.push(x);
    }
    Ok(out)
}

/// Reads exactly one form.
pub fn read_one(text: &str) -> Result<Sexp, SexpError> {
    let mut all = read_all(text)?;
    match all.len() {
        1 => Ok(all.pop().expect("one form")),
        0 => Err(SexpError::Syntax { line: 1, col: 1, msg: "empty input".into() }),
        _ => Err(all[1].error("trailing input after the first form")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_positions() {
        let xs = read_all("(comp (codiag a)\n  (diag a)) ; trailing\n# note\nx").unwrap();
        assert_eq!(xs.len(), 2);
        assert_eq!(xs[0].to_string(), "(comp (codiag a) (diag a))");
        let inner = &xs[0].list().unwrap()[2];
        assert_eq!((inner.line(), inner.col()), (2, 3));
        assert_eq!(xs[1].sym(), Some("x"));
        assert_eq!(xs[1].line(), 4);
    }

    #[test]
    fn reports_unbalanced_input() {
        assert!(matches!(read_all("(a (b)"), Err(SexpError::Syntax { line: 1, col: 1, .. })));
        assert!(matches!(read_all("a)"), Err(SexpError::Syntax { line: 1, col: 2, .. })));
        assert!(read_one("a b").is_err());
        assert!(read_one("  ").is_err());
    }
}
