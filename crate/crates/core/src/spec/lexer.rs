use num::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Eq,
    Colon,
    Tensor,
    Wedge,
    Prime,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{}`", s),
            Tok::Int(n) => format!("`{}`", n),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Tensor => "`⊗`".into(),
            Tok::Wedge => "`∧`".into(),
            Tok::Prime => "`'`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        message: message.into(),
    }
}

/// Tokenizes one physical line (1-based `line`; columns count characters).
pub(crate) fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let single = |tok| Token { tok, line, col };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(single(Tok::Ident(s)));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n: BigInt = s.parse().map_err(|_| syntax(line, col, "bad integer"))?;
            out.push(single(Tok::Int(n)));
            continue;
        }
        if c == '<' {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            match rest.as_str() {
                "<x>" => out.push(single(Tok::Tensor)),
                "<^>" => out.push(single(Tok::Wedge)),
                _ => return Err(syntax(line, col, "expected `<x>` or `<^>`")),
            }
            i += 3;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '=' => Tok::Eq,
            ':' => Tok::Colon,
            '⊗' => Tok::Tensor,
            '∧' => Tok::Wedge,
            '\'' | '′' => Tok::Prime,
            'ℏ' | 'ħ' => Tok::Ident("hbar".to_string()),
            other => return Err(syntax(line, col, format!("unexpected character `{}`", other))),
        };
        out.push(single(tok));
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let t = tokenize("  [F12, F21] = hbar*sinh(2*z*H)/z", 3).unwrap();
        assert_eq!(t[0].tok, Tok::LBrack);
        assert_eq!((t[0].line, t[0].col), (3, 3));
        assert_eq!(t[1].tok, Tok::Ident("F12".into()));
        assert!(t.iter().any(|x| x.tok == Tok::Slash));
    }

    #[test]
    fn ascii_and_unicode_operators_agree() {
        let a: Vec<Tok> = tokenize("A <x> B <^> C", 1).unwrap().into_iter().map(|t| t.tok).collect();
        let b: Vec<Tok> = tokenize("A ⊗ B ∧ C", 1).unwrap().into_iter().map(|t| t.tok).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_character_reports_column() {
        match tokenize("x = 1 $ 2", 7) {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (7, 7)),
            other => panic!("{:?}", other),
        }
    }
}
