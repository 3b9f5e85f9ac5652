//! PD text grammar: whitespace-separated terms.
//!
//! * `X[a,b,c,d]` — a crossing; slot 0 is the incoming under-strand, slots
//!   listed counterclockwise. Positive integer edge labels.
//! * `O` — a zero-crossing unknot component (oriented counterclockwise).
//! * `IN(k,f)` — nesting directive: split piece `k` (0-based, in order of
//!   first appearance) is drawn inside global face `f` of the diagram
//!   assembled from the earlier pieces.

use crate::error::PdError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Crossing([i64; 4]),
    Unknot,
    Nest { piece: usize, face: usize },
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, PdError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let mut j = i;
        while j < bytes.len() && !bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        let word = &text[start..j];
        out.push(parse_term(word, start)?);
        i = j;
    }
    Ok(out)
}

fn parse_term(word: &str, pos: usize) -> Result<Token, PdError> {
    if word == "O" {
        return Ok(Token::Unknot);
    }
    if let Some(rest) = word.strip_prefix("X[").or_else(|| word.strip_prefix("X(")) {
        let body = rest
            .strip_suffix(']')
            .or_else(|| rest.strip_suffix(')'))
            .ok_or_else(|| PdError::Syntax {
                pos,
                msg: format!("unterminated crossing term `{}`", word),
            })?;
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 4 {
            return Err(PdError::BadArity {
                index: usize::MAX, // fixed up by caller
                got: parts.len(),
            });
        }
        let mut slots = [0i64; 4];
        for (k, p) in parts.iter().enumerate() {
            let v: i64 = p.trim().parse().map_err(|_| PdError::Syntax {
                pos,
                msg: format!("bad edge label `{}`", p),
            })?;
            if v < 1 {
                return Err(PdError::Syntax {
                    pos,
                    msg: format!("edge labels must be positive, got {}", v),
                });
            }
            slots[k] = v;
        }
        return Ok(Token::Crossing(slots));
    }
    if let Some(rest) = word.strip_prefix("IN(") {
        let body = rest.strip_suffix(')').ok_or_else(|| PdError::Syntax {
            pos,
            msg: format!("unterminated nesting term `{}`", word),
        })?;
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 2 {
            return Err(PdError::Syntax {
                pos,
                msg: "IN takes exactly two arguments".into(),
            });
        }
        let piece: usize = parts[0].trim().parse().map_err(|_| PdError::Syntax {
            pos,
            msg: format!("bad piece index `{}`", parts[0]),
        })?;
        let face: usize = parts[1].trim().parse().map_err(|_| PdError::Syntax {
            pos,
            msg: format!("bad face id `{}`", parts[1]),
        })?;
        return Ok(Token::Nest { piece, face });
    }
    Err(PdError::Syntax {
        pos,
        msg: format!("unrecognized term `{}`", word),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_mixed_input() {
        let toks = tokenize("X[1,4,2,5]  O IN(1,1)\nX[3,6,4,1]").unwrap();
        assert_eq!(toks.len(), 4);
        assert_eq!(toks[0], Token::Crossing([1, 4, 2, 5]));
        assert_eq!(toks[1], Token::Unknot);
        assert_eq!(toks[2], Token::Nest { piece: 1, face: 1 });
    }

    #[test]
    fn rejects_wrong_arity() {
        assert!(matches!(
            tokenize("X[1,2,3]"),
            Err(PdError::BadArity { got: 3, .. })
        ));
    }

    #[test]
    fn rejects_garbage_with_position() {
        let err = tokenize("X[1,2,3,4] Y[1]").unwrap_err();
        match err {
            PdError::Syntax { pos, .. } => assert_eq!(pos, 11),
            other => panic!("unexpected {:?}", other),
        }
    }
}
