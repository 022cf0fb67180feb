//! JSON document formats: a pair of polynomial texts and a word of tagged
//! move records. Rationals travel as strings so no consumer has to worry
//! about number precision.

use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};
use tamedec_core::jung::{AutoPair, TameMove, TameWord};

use crate::parse::{parse_poly, parse_rational, ParseError};

/// A document failed to parse or violated a format invariant.
#[derive(Debug)]
pub struct DocError(pub String);

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for DocError {}

impl From<ParseError> for DocError {
    fn from(e: ParseError) -> Self {
        DocError(e.to_string())
    }
}

/// The coordinate images (P, Q) as polynomial text.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDocument {
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q")]
    pub q: String,
}

impl PairDocument {
    pub fn from_pair(pair: &AutoPair) -> Self {
        PairDocument {
            p: pair.p.to_string(),
            q: pair.q.to_string(),
        }
    }

    pub fn to_pair(&self) -> Result<AutoPair, DocError> {
        Ok(AutoPair::new(parse_poly(&self.p)?, parse_poly(&self.q)?))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveDoc {
    ElemY {
        p: String,
    },
    ElemX {
        q: String,
    },
    Linear {
        a: String,
        b: String,
        c: String,
        d: String,
    },
}

/// An ordered list of tame moves.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordDocument {
    pub moves: Vec<MoveDoc>,
}

impl WordDocument {
    pub fn from_word(word: &TameWord) -> Self {
        let moves = word
            .moves
            .iter()
            .map(|m| match m {
                TameMove::ElemY(p) => MoveDoc::ElemY { p: p.to_string() },
                TameMove::ElemX(q) => MoveDoc::ElemX { q: q.to_string() },
                TameMove::Linear { a, b, c, d } => MoveDoc::Linear {
                    a: a.to_string(),
                    b: b.to_string(),
                    c: c.to_string(),
                    d: d.to_string(),
                },
            })
            .collect();
        WordDocument { moves }
    }

    pub fn to_word(&self) -> Result<TameWord, DocError> {
        let mut moves = Vec::with_capacity(self.moves.len());
        for m in &self.moves {
            moves.push(match m {
                MoveDoc::ElemY { p } => {
                    let poly = parse_poly(p)?;
                    if !poly.is_univariate_x() {
                        return Err(DocError(format!(
                            "elem_y polynomial must lie in Q[x], got \"{poly}\""
                        )));
                    }
                    TameMove::ElemY(poly)
                }
                MoveDoc::ElemX { q } => {
                    let poly = parse_poly(q)?;
                    if !poly.is_univariate_y() {
                        return Err(DocError(format!(
                            "elem_x polynomial must lie in Q[y], got \"{poly}\""
                        )));
                    }
                    TameMove::ElemX(poly)
                }
                MoveDoc::Linear { a, b, c, d } => {
                    let a = parse_rational(a)?;
                    let b = parse_rational(b)?;
                    let c = parse_rational(c)?;
                    let d = parse_rational(d)?;
                    if (&a * &d - &b * &c).is_zero() {
                        return Err(DocError(
                            "linear move has zero determinant".to_string(),
                        ));
                    }
                    TameMove::Linear { a, b, c, d }
                }
            });
        }
        Ok(TameWord::new(moves))
    }
}
