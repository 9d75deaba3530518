//! Homogeneous noncommutative polynomial expressions such as `x*y - y*x` or
//! `2*a*b + b*b`, resolved into coordinate vectors of `V^{⊗n}`.

use crate::error::{Error, Result};
use crate::exactla::PrimeField;
use crate::tensor;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((Token::Plus, column));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, column));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, column));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse::<u64>().map_err(|_| Error::Parse {
                    line,
                    column,
                    message: format!("integer `{s}` is too large"),
                })?;
                out.push((Token::Int(v), column));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push((Token::Ident(chars[start..i].iter().collect()), column));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

/// A parsed homogeneous element of `V^{⊗degree}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    pub degree: usize,
    pub coords: Vec<u32>,
}

/// Parses `text` against the generator names. `line` and `col0` position
/// the expression inside a larger document for error reporting (columns are
/// 1-based).
pub fn parse_expression(
    text: &str,
    generators: &[String],
    field: PrimeField,
    line: usize,
    col0: usize,
) -> Result<TensorElement> {
    let tokens = tokenize(text, line, col0)?;
    let end_col = col0 + text.chars().count();
    let err = |column: usize, message: String| Error::Parse {
        line,
        column,
        message,
    };
    if tokens.is_empty() {
        return Err(err(col0, "empty expression".into()));
    }
    let d = generators.len();
    let mut terms: Vec<(u32, Vec<usize>)> = Vec::new();
    let mut pos = 0;
    let mut first = true;
    while pos < tokens.len() {
        let mut negative = false;
        match &tokens[pos].0 {
            Token::Plus if !first || pos == 0 => pos += 1,
            Token::Minus => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(err(tokens[pos].1, "expected `+` or `-`".into())),
        }
        first = false;
        let mut coeff: u32 = 1;
        let mut word = Vec::new();
        let mut expect_factor = true;
        while pos < tokens.len() {
            let (tok, column) = &tokens[pos];
            if expect_factor {
                match tok {
                    Token::Int(v) => coeff = field.mul(coeff, (*v % field.l() as u64) as u32),
                    Token::Ident(name) => {
                        let g = generators.iter().position(|n| n == name).ok_or_else(|| {
                            Error::UnknownGenerator {
                                name: name.clone(),
                                line,
                                column: *column,
                            }
                        })?;
                        word.push(g);
                    }
                    _ => return Err(err(*column, "expected a coefficient or generator".into())),
                }
                expect_factor = false;
                pos += 1;
            } else if *tok == Token::Star {
                expect_factor = true;
                pos += 1;
            } else {
                break;
            }
        }
        if expect_factor {
            return Err(err(end_col, "expression ends in an operator".into()));
        }
        if negative {
            coeff = field.neg(coeff);
        }
        terms.push((coeff, word));
    }
    let degree = terms[0].1.len();
    if terms.iter().any(|(_, w)| w.len() != degree) {
        return Err(err(col0, "expression is not homogeneous".into()));
    }
    let mut coords = vec![0u32; tensor::power(d, degree)];
    for (c, w) in terms {
        let idx = tensor::word_index(&w, d);
        coords[idx] = field.add(coords[idx], c);
    }
    Ok(TensorElement { degree, coords })
}

/// Renders a coordinate vector of `V^{⊗degree}` back as an expression.
pub fn format_expression(coords: &[u32], degree: usize, generators: &[String], field: PrimeField) -> String {
    let d = generators.len();
    let mut out = String::new();
    for (idx, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let word = tensor::index_word(idx, d, degree);
        let body: Vec<&str> = word.iter().map(|&g| generators[g].as_str()).collect();
        let (sign, mag) = if field.l() > 2 && c > field.l() / 2 {
            ("-", field.l() - c)
        } else {
            ("+", c)
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        if mag != 1 || body.is_empty() {
            out.push_str(&mag.to_string());
            if !body.is_empty() {
                out.push('*');
            }
        }
        out.push_str(&body.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
