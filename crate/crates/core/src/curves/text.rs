//! Text form of curve words: `A0 e1 A1 e2 ...`, alternating the face of
//! each arc with the edge it leaves through. A lone face `A3` is the empty
//! curve inside that face. An optional `| k0 k1 ...` tail gives the keys.

use super::{CurveError, CurveWord, Step};
use crate::tischler::TischlerGraph;

fn index(tok: &str, prefixes: &[char]) -> Result<usize, CurveError> {
    let rest = tok
        .strip_prefix(|c: char| prefixes.contains(&c))
        .ok_or_else(|| CurveError::Parse(format!("expected {}<n>, found `{tok}`", prefixes[0])))?;
    rest.parse()
        .map_err(|_| CurveError::Parse(format!("bad index in `{tok}`")))
}

/// Parses a word; `#` starts a comment.
pub fn parse_word(t: &TischlerGraph, text: &str) -> Result<CurveWord, CurveError> {
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let (word, keys) = match body.split_once('|') {
        Some((w, k)) => (w, Some(k)),
        None => (body.as_str(), None),
    };
    let toks: Vec<&str> = word.split_whitespace().collect();
    if toks.is_empty() {
        return Err(CurveError::Parse("empty curve".into()));
    }
    if toks.len() == 1 {
        let f = index(toks[0], &['A', 'f'])?;
        if f >= t.graph().face_count() {
            return Err(CurveError::NoSuchFace(f));
        }
        return Ok(CurveWord::empty(f));
    }
    if !toks.len().is_multiple_of(2) {
        return Err(CurveError::Parse("a face must precede every edge".into()));
    }
    let steps = toks
        .chunks(2)
        .map(|p| {
            Ok(Step {
                face: index(p[0], &['A', 'f'])?,
                edge: index(p[1], &['e'])?,
            })
        })
        .collect::<Result<Vec<_>, CurveError>>()?;
    let w = CurveWord::new(t, steps)?;
    match keys {
        None => Ok(w),
        Some(k) => {
            let keys = k
                .split_whitespace()
                .map(|x| {
                    x.parse()
                        .map_err(|_| CurveError::Parse(format!("bad key `{x}`")))
                })
                .collect::<Result<Vec<u64>, _>>()?;
            w.with_keys(keys)
        }
    }
}

pub fn format_word(w: &CurveWord) -> String {
    if w.is_empty() {
        return format!("A{}", w.home());
    }
    let mut s = w
        .steps()
        .iter()
        .map(|x| format!("A{} e{}", x.face, x.edge))
        .collect::<Vec<_>>()
        .join(" ");
    if let Some(k) = w.keys() {
        s.push_str(" |");
        for x in k {
            s.push_str(&format!(" {x}"));
        }
    }
    s
}
