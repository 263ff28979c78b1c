//! Words over `n` letters, Lyndon words and necklaces.
//!
//! Letters are `0..n` internally (printed as `x1..xn`). A word of length `d`
//! is also packed into a `u64` code in base `n`, first letter most
//! significant, so numeric order on codes of one length is lexicographic order.

use std::collections::hash_map::Entry;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

pub type Letter = u8;

/// A finite word; the empty word is allowed but rarely used.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "x{}", l + 1)?;
        }
        if self.0.is_empty() {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn code(&self, n: usize) -> u64 {
        code_of(&self.0, n)
    }

    pub fn from_code(code: u64, n: usize, len: usize) -> Self {
        Word(letters_of(code, n, len))
    }

    /// Left rotation by `k` letters.
    pub fn rotate(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

/// `n^d` as u64.
pub fn word_count(n: usize, d: usize) -> u64 {
    (n as u64).pow(d as u32)
}

pub fn code_of(letters: &[Letter], n: usize) -> u64 {
    letters.iter().fold(0u64, |acc, &l| acc * n as u64 + l as u64)
}

pub fn letters_of(mut code: u64, n: usize, len: usize) -> Vec<Letter> {
    let mut v = vec![0; len];
    for slot in v.iter_mut().rev() {
        *slot = (code % n as u64) as Letter;
        code /= n as u64;
    }
    v
}

/// Code of the concatenation of a word of code `a` with one of code `b` and length `len_b`.
#[inline]
pub fn concat_code(a: u64, b: u64, len_b: usize, n: usize) -> u64 {
    a * word_count(n, len_b) + b
}

/// A Lyndon word together with its standard factorization split point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord {
    word: Word,
    split: Option<usize>,
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.word)
    }
}

impl LyndonWord {
    /// Wraps `w`, returning `None` unless it is Lyndon.
    pub fn try_new(w: Word) -> Option<Self> {
        if !is_lyndon(w.letters()) {
            return None;
        }
        let split = standard_split(w.letters());
        Some(LyndonWord { word: w, split })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(u, v)` with `v` the longest proper Lyndon suffix; `None` for letters.
    pub fn std_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        let k = self.split?;
        let (u, v) = self.word.letters().split_at(k);
        Some((
            LyndonWord::try_new(Word::new(u.to_vec())).expect("left factor is Lyndon"),
            LyndonWord::try_new(Word::new(v.to_vec())).expect("right factor is Lyndon"),
        ))
    }
}

/// Strictly smaller than every proper rotation.
pub fn is_lyndon(w: &[Letter]) -> bool {
    if w.is_empty() {
        return false;
    }
    let d = w.len();
    (1..d).all(|k| {
        let rot = w[k..].iter().chain(&w[..k]);
        w.iter().lt(rot)
    })
}

fn standard_split(w: &[Letter]) -> Option<usize> {
    if w.len() < 2 {
        return None;
    }
    (1..w.len()).find(|&i| is_lyndon(&w[i..]))
}

/// All Lyndon words of length `d` over `n` letters, in lexicographic order (Duval).
pub fn lyndon_words(n: usize, d: usize) -> Vec<LyndonWord> {
    duval(n, d)
        .into_iter()
        .map(|w| {
            let split = standard_split(&w);
            LyndonWord { word: Word::new(w), split }
        })
        .collect()
}

fn duval(n: usize, d: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    let top = (n - 1) as Letter;
    let mut w: Vec<Letter> = vec![0];
    loop {
        if w.len() == d {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == top {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out
}

/// A cyclic word, stored as its lexicographically minimal rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    representative: Word,
}

impl fmt::Debug for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tr({:?})", self.representative)
    }
}

impl Necklace {
    pub fn representative(&self) -> &Word {
        &self.representative
    }
}

pub fn canonical_necklace(w: &Word) -> Necklace {
    Necklace { representative: Word::new(min_rotation(w.letters())) }
}

pub fn min_rotation(w: &[Letter]) -> Vec<Letter> {
    let d = w.len();
    let mut best = 0;
    for k in 1..d {
        let cand = w[k..].iter().chain(&w[..k]);
        let cur = w[best..].iter().chain(&w[..best]);
        if cand.lt(cur) {
            best = k;
        }
    }
    let mut v = w.to_vec();
    v.rotate_left(best);
    v
}

/// Canonical necklace code of the word with code `code` and length `d`.
pub fn necklace_code(code: u64, n: usize, d: usize) -> u64 {
    if d <= 1 {
        return code;
    }
    let nd = word_count(n, d - 1);
    let mut best = code;
    let mut cur = code;
    for _ in 1..d {
        let first = cur / nd;
        cur = (cur % nd) * n as u64 + first;
        best = best.min(cur);
    }
    best
}

pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `(1/d) Σ_{e|d} μ(e) n^{d/e}`.
pub fn witt_dimension(n: usize, d: usize) -> u64 {
    if d == 0 {
        return 0;
    }
    let total: i128 = (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| mobius(e as u64) as i128 * (n as i128).pow((d / e) as u32))
        .sum();
    (total / d as i128) as u64
}

/// Lyndon basis data for one `(n, d)`: words, lookups, factorizations and
/// the integer expansion of each standard bracket in the word basis.
#[derive(Debug)]
pub struct LyndonTable {
    pub n: usize,
    pub degree: usize,
    pub codes: Vec<u64>,
    pub index: FxHashMap<u64, usize>,
    /// For `d ≥ 2`: `(left length, left index, right index)`.
    pub factors: Vec<Option<(usize, usize, usize)>>,
    /// `P_w` as sorted `(word code, coefficient)`; first entry is `(w, 1)`.
    pub expansions: Vec<Vec<(u64, i64)>>,
}

impl LyndonTable {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn word(&self, i: usize) -> Word {
        Word::from_code(self.codes[i], self.n, self.degree)
    }

    fn build(n: usize, d: usize) -> Self {
        let words = duval(n, d);
        let codes: Vec<u64> = words.iter().map(|w| code_of(w, n)).collect();
        let index: FxHashMap<u64, usize> = codes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut factors = Vec::with_capacity(words.len());
        let mut expansions = Vec::with_capacity(words.len());
        for (w, &code) in words.iter().zip(&codes) {
            if d == 1 {
                factors.push(None);
                expansions.push(vec![(code, 1)]);
                continue;
            }
            let k = standard_split(w).expect("Lyndon words of length ≥ 2 factor");
            let lt = lyndon_table(n, k);
            let rt = lyndon_table(n, d - k);
            let li = lt.index[&code_of(&w[..k], n)];
            let ri = rt.index[&code_of(&w[k..], n)];
            factors.push(Some((k, li, ri)));
            let mut acc: FxHashMap<u64, i64> = FxHashMap::default();
            for &(a, ca) in &lt.expansions[li] {
                for &(b, cb) in &rt.expansions[ri] {
                    *acc.entry(concat_code(a, b, d - k, n)).or_default() += ca * cb;
                    *acc.entry(concat_code(b, a, k, n)).or_default() -= ca * cb;
                }
            }
            let mut exp: Vec<(u64, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
            exp.sort_unstable();
            assert_eq!(exp.first(), Some(&(code, 1)), "bracket expansion is not unitriangular");
            expansions.push(exp);
        }
        LyndonTable { n, degree: d, codes, index, factors, expansions }
    }
}

type TableCache = Mutex<FxHashMap<(usize, usize), Arc<LyndonTable>>>;

/// Shared, lazily built Lyndon table.
pub fn lyndon_table(n: usize, d: usize) -> Arc<LyndonTable> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(n, d)) {
        return t.clone();
    }
    let built = Arc::new(LyndonTable::build(n, d));
    match cache.lock().unwrap().entry((n, d)) {
        Entry::Occupied(e) => e.get().clone(),
        Entry::Vacant(v) => v.insert(built).clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::new(s.bytes().map(|b| b - b'x').collect())
    }

    fn show(l: &LyndonWord) -> String {
        l.word().letters().iter().map(|&c| (b'x' + c) as char).collect()
    }

    #[test]
    fn small_lyndon_lists() {
        let l: Vec<String> = lyndon_words(2, 1).iter().map(show).collect();
        assert_eq!(l, ["x", "y"]);
        let l: Vec<String> = lyndon_words(2, 2).iter().map(show).collect();
        assert_eq!(l, ["xy"]);
        assert_eq!(lyndon_words(2, 5).len(), 6);
        let l: Vec<String> = lyndon_words(2, 4).iter().map(show).collect();
        assert_eq!(l, ["xxxy", "xxyy", "xyyy"]);
    }

    #[test]
    fn witt_numbers() {
        assert_eq!(witt_dimension(2, 2), 1);
        assert_eq!(witt_dimension(2, 5), 6);
        assert_eq!(witt_dimension(3, 3), 8);
        for n in 1..=4 {
            for d in 1..=7 {
                assert_eq!(lyndon_words(n, d).len() as u64, witt_dimension(n, d));
            }
        }
    }

    #[test]
    fn factorization() {
        let l = LyndonWord::try_new(w("xxyxy")).unwrap();
        let (u, v) = l.std_factorization().unwrap();
        assert_eq!((show(&u).as_str(), show(&v).as_str()), ("xxy", "xy"));
        let l = LyndonWord::try_new(w("xyy")).unwrap();
        let (u, v) = l.std_factorization().unwrap();
        assert_eq!((show(&u).as_str(), show(&v).as_str()), ("xy", "y"));
        assert!(LyndonWord::try_new(w("yx")).is_none());
        assert!(LyndonWord::try_new(w("xyxy")).is_none());
    }

    #[test]
    fn necklaces() {
        assert_eq!(canonical_necklace(&w("yxx")).representative(), &w("xxy"));
        assert_eq!(canonical_necklace(&w("xyxy")).representative(), &w("xyxy"));
        assert_eq!(canonical_necklace(&w("zyx")).representative(), &w("xzy"));
        let code = w("zyx").code(3);
        assert_eq!(necklace_code(code, 3, 3), w("xzy").code(3));
    }

    #[test]
    fn tables_are_triangular() {
        for d in 1..=6 {
            let t = lyndon_table(3, d);
            assert_eq!(t.len() as u64, witt_dimension(3, d));
            for (i, e) in t.expansions.iter().enumerate() {
                assert_eq!(e[0], (t.codes[i], 1));
            }
        }
        let t = lyndon_table(2, 2);
        assert_eq!(t.expansions[0], vec![(1, 1), (2, -1)]);
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
