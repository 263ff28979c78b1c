//! JSON documents for every series type, with exact `p/q` coefficients.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use kvassoc::kvgrt::DufloSeries;
use kvassoc::words::{is_lyndon, Word};
use kvassoc::{AssocSeries, CyclicSeries, LieSeries, Rational, TangentialDerivation, TautLog};

/// Documents above this truncation degree are rejected.
pub const MAX_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Lie,
    Assoc,
    Cyclic,
    Tder,
    TautLog,
    Duflo,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Lie => "lie",
            Kind::Assoc => "assoc",
            Kind::Cyclic => "cyclic",
            Kind::Tder => "tder",
            Kind::TautLog => "taut_log",
            Kind::Duflo => "duflo",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub basis_key: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDocument {
    pub kind: Kind,
    pub generators: usize,
    pub max_degree: usize,
    pub terms: Vec<Term>,
}

/// A parsed document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Series {
    Lie(LieSeries),
    Assoc(AssocSeries),
    Cyclic(CyclicSeries),
    Tder(TangentialDerivation),
    TautLog(TautLog),
    Duflo(DufloSeries),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    #[error("malformed JSON document: {0}")]
    Json(String),
    #[error("{0}")]
    Header(String),
    #[error("expected a {expected} document, found {found}")]
    Kind { expected: String, found: Kind },
    #[error("term {key:?}: {reason}")]
    Term { key: String, reason: String },
    #[error("term {key:?}: coefficient {coeff:?} is not a rational p/q")]
    Coeff { key: String, coeff: String },
    #[error("term {0:?} appears more than once")]
    Duplicate(String),
}

fn term_error(key: &str, reason: impl Into<String>) -> DocError {
    DocError::Term { key: key.to_string(), reason: reason.into() }
}

/// `x1x1x2`; the empty word is `1`.
pub fn word_key(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.letters().iter().map(|l| format!("x{}", l + 1)).collect()
}

/// Parses `x1x2…`, or the aliases `x, y, z, w` when there are at most four generators.
pub fn parse_word(key: &str, n: usize) -> Result<Word, String> {
    if key == "1" {
        return Ok(Word::default());
    }
    if key.is_empty() {
        return Err("empty word".into());
    }
    let mut letters = Vec::new();
    let mut chars = key.chars().peekable();
    while let Some(c) = chars.next() {
        let alias = match c {
            'x' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                if !digits.is_empty() {
                    let i: usize = digits.parse().map_err(|_| format!("bad generator index x{digits}"))?;
                    if i == 0 || i > n {
                        return Err(format!("generator x{i} outside x1..x{n}"));
                    }
                    letters.push((i - 1) as u8);
                    continue;
                }
                0
            }
            'y' => 1,
            'z' => 2,
            'w' => 3,
            _ => return Err(format!("unexpected character {c:?}")),
        };
        if n > 4 {
            return Err("letter aliases need at most four generators".into());
        }
        if alias >= n {
            return Err(format!("generator {c} outside the {n} generators"));
        }
        letters.push(alias as u8);
    }
    Ok(Word::new(letters))
}

impl Series {
    pub fn kind(&self) -> Kind {
        match self {
            Series::Lie(_) => Kind::Lie,
            Series::Assoc(_) => Kind::Assoc,
            Series::Cyclic(_) => Kind::Cyclic,
            Series::Tder(_) => Kind::Tder,
            Series::TautLog(_) => Kind::TautLog,
            Series::Duflo(_) => Kind::Duflo,
        }
    }
}

fn term(key: String, c: &Rational) -> Term {
    Term { basis_key: key, coeff: c.to_string() }
}

fn tder_terms(u: &TangentialDerivation) -> Vec<Term> {
    let mut out = Vec::new();
    for (k, comp) in u.components().iter().enumerate() {
        for (w, c) in comp.terms() {
            out.push(term(format!("slot:{}|{}", k + 1, word_key(&w)), &c));
        }
    }
    out
}

impl SeriesDocument {
    pub fn from_series(series: &Series) -> Self {
        let (generators, max_degree, terms) = match series {
            Series::Lie(a) => (a.n(), a.max_degree(), a.terms().iter().map(|(w, c)| term(word_key(w), c)).collect()),
            Series::Assoc(a) => (a.n(), a.max_degree(), a.terms().iter().map(|(w, c)| term(word_key(w), c)).collect()),
            Series::Cyclic(t) => {
                (t.n(), t.max_degree(), t.terms().iter().map(|(k, c)| term(word_key(k.representative()), c)).collect())
            }
            Series::Tder(u) => (u.n(), u.max_degree(), tder_terms(u)),
            Series::TautLog(g) => (g.n(), g.max_degree(), tder_terms(g.log())),
            Series::Duflo(f) => {
                (1, f.max_degree(), f.terms().iter().map(|(k, c)| term(format!("x1^{k}"), c)).collect())
            }
        };
        SeriesDocument { kind: series.kind(), generators, max_degree, terms }
    }

    pub fn from_json(text: &str) -> Result<Self, DocError> {
        serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    fn check_header(&self) -> Result<(), DocError> {
        let n = self.generators;
        if n == 0 {
            return Err(DocError::Header("generators must be at least 1".into()));
        }
        if self.max_degree > MAX_DEGREE {
            return Err(DocError::Header(format!("max_degree {} exceeds {MAX_DEGREE}", self.max_degree)));
        }
        if (n as u64).checked_pow(self.max_degree as u32).is_none() {
            return Err(DocError::Header(format!(
                "{n} generators up to degree {} overflow word codes",
                self.max_degree
            )));
        }
        if self.kind == Kind::Duflo && n != 1 {
            return Err(DocError::Header("duflo documents have one generator".into()));
        }
        Ok(())
    }

    /// Parsed coefficients, in document order, with zero terms skipped.
    fn coefficients(&self) -> Result<Vec<(&str, Rational)>, DocError> {
        let mut out = Vec::new();
        for t in &self.terms {
            let c: Rational =
                t.coeff.parse().map_err(|_| DocError::Coeff { key: t.basis_key.clone(), coeff: t.coeff.clone() })?;
            if !c.is_zero() {
                out.push((t.basis_key.as_str(), c));
            }
        }
        Ok(out)
    }

    fn word_in_range(&self, key: &str, lie_key: &str, allow_empty: bool) -> Result<Word, DocError> {
        let w = parse_word(lie_key, self.generators).map_err(|r| term_error(key, r))?;
        if w.is_empty() && !allow_empty {
            return Err(term_error(key, "degree 0 is not allowed here"));
        }
        if w.len() > self.max_degree {
            return Err(term_error(key, format!("degree {} exceeds max_degree {}", w.len(), self.max_degree)));
        }
        Ok(w)
    }

    fn lyndon(&self, key: &str, lie_key: &str) -> Result<Word, DocError> {
        let w = self.word_in_range(key, lie_key, false)?;
        if !is_lyndon(w.letters()) {
            return Err(term_error(key, "not a Lyndon word"));
        }
        Ok(w)
    }

    fn tder(&self) -> Result<TangentialDerivation, DocError> {
        let (n, m) = (self.generators, self.max_degree);
        let mut comps = vec![LieSeries::zero(n, m); n];
        let mut seen = BTreeSet::new();
        for (key, c) in self.coefficients()? {
            let rest = key.strip_prefix("slot:").ok_or_else(|| term_error(key, "expected slot:<k>|<word>"))?;
            let (slot, lie_key) = rest.split_once('|').ok_or_else(|| term_error(key, "expected slot:<k>|<word>"))?;
            let k: usize = slot.parse().map_err(|_| term_error(key, format!("bad slot {slot:?}")))?;
            if k == 0 || k > n {
                return Err(term_error(key, format!("slot {k} outside 1..{n}")));
            }
            let w = self.lyndon(key, lie_key)?;
            if !seen.insert((k, w.clone())) {
                return Err(DocError::Duplicate(key.to_string()));
            }
            comps[k - 1].add_basis(&w, c);
        }
        TangentialDerivation::normalize(comps).map_err(|e| DocError::Header(e.to_string()))
    }

    pub fn to_series(&self) -> Result<Series, DocError> {
        self.check_header()?;
        let (n, m) = (self.generators, self.max_degree);
        let mut seen = BTreeSet::new();
        let mut fresh = |key: &str, w: Word| {
            if seen.insert(w) {
                Ok(())
            } else {
                Err(DocError::Duplicate(key.to_string()))
            }
        };
        Ok(match self.kind {
            Kind::Lie => {
                let mut a = LieSeries::zero(n, m);
                for (key, c) in self.coefficients()? {
                    let w = self.lyndon(key, key)?;
                    fresh(key, w.clone())?;
                    a.add_basis(&w, c);
                }
                Series::Lie(a)
            }
            Kind::Assoc => {
                let mut a = AssocSeries::zero(n, m);
                for (key, c) in self.coefficients()? {
                    let w = self.word_in_range(key, key, true)?;
                    fresh(key, w.clone())?;
                    a.add_term(w.len(), w.code(n), c);
                }
                Series::Assoc(a)
            }
            Kind::Cyclic => {
                let mut t = CyclicSeries::zero(n, m);
                for (key, c) in self.coefficients()? {
                    let w = self.word_in_range(key, key, false)?;
                    fresh(key, kvassoc::words::canonical_necklace(&w).representative().clone())?;
                    t.add_word(w.len(), w.code(n), c);
                }
                Series::Cyclic(t)
            }
            Kind::Tder => Series::Tder(self.tder()?),
            Kind::TautLog => Series::TautLog(TautLog::exp(self.tder()?)),
            Kind::Duflo => {
                let mut f = DufloSeries::zero(m);
                for (key, c) in self.coefficients()? {
                    let power = key
                        .strip_prefix("x1^")
                        .or_else(|| key.strip_prefix("x^"))
                        .ok_or_else(|| term_error(key, "expected x1^<k>"))?;
                    let k: usize = power.parse().map_err(|_| term_error(key, format!("bad exponent {power:?}")))?;
                    if k < 2 || k > m {
                        return Err(term_error(key, format!("exponent {k} outside 2..{m}")));
                    }
                    fresh(key, Word::new(vec![0; k]))?;
                    f.set(k, c);
                }
                Series::Duflo(f)
            }
        })
    }

    /// Parses and checks that the document has the expected kind and generator count.
    pub fn expect(&self, kind: Kind, generators: usize) -> Result<Series, DocError> {
        if self.kind != kind {
            return Err(DocError::Kind { expected: kind.to_string(), found: self.kind });
        }
        if self.generators != generators {
            return Err(DocError::Header(format!(
                "a {kind} document with {generators} generators is required, found {}",
                self.generators
            )));
        }
        self.to_series()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_and_indices() {
        assert_eq!(parse_word("xyx", 2).unwrap(), Word::new(vec![0, 1, 0]));
        assert_eq!(parse_word("x1x12", 12).unwrap(), Word::new(vec![0, 11]));
        assert_eq!(parse_word("zw", 4).unwrap(), Word::new(vec![2, 3]));
        assert!(parse_word("z", 2).is_err());
        assert!(parse_word("xy", 5).is_err());
        assert!(parse_word("x0", 2).is_err());
        assert!(parse_word("x1+x2", 2).is_err());
        assert_eq!(word_key(&Word::new(vec![1, 0])), "x2x1");
    }

    #[test]
    fn diagnostics_name_the_term() {
        let doc = |kind: &str, terms: &str| {
            SeriesDocument::from_json(&format!(
                r#"{{"kind":"{kind}","generators":2,"max_degree":3,"terms":[{terms}]}}"#
            ))
            .unwrap()
        };
        let err = doc("lie", r#"{"basis_key":"yx","coeff":"1"}"#).to_series().unwrap_err();
        assert!(err.to_string().contains("\"yx\""), "{err}");
        let err = doc("lie", r#"{"basis_key":"xy","coeff":"1/0"}"#).to_series().unwrap_err();
        assert!(matches!(err, DocError::Coeff { .. }));
        let err =
            doc("cyclic", r#"{"basis_key":"xy","coeff":"1"},{"basis_key":"yx","coeff":"2"}"#).to_series().unwrap_err();
        assert_eq!(err, DocError::Duplicate("yx".into()));
        let err = doc("tder", r#"{"basis_key":"slot:3|x","coeff":"1"}"#).to_series().unwrap_err();
        assert!(err.to_string().contains("slot 3"), "{err}");
        assert!(doc("assoc", r#"{"basis_key":"xxyy","coeff":"1"}"#).to_series().is_err());
        assert!(SeriesDocument::from_json(r#"{"kind":"lie"}"#).is_err());
    }
}
