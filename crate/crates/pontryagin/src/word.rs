//! Graded alphabets, words of the free associative algebra, elements with
//! exact rational coefficients, and bracket-to-tensor expansion in the
//! graded and ungraded conventions.

use crate::error::{Error, Result};
use crate::rational::Rational;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A graded alphabet `u_1 .. u_r` with loop degrees and a total order on the
/// letters. Letters are 0-based indices internally and rendered 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    degrees: Vec<u32>,
    /// rank[letter] = position in the total order, 0 = smallest
    rank: Vec<u8>,
}

impl Alphabet {
    pub fn new(degrees: Vec<u32>) -> Result<Alphabet> {
        let r = degrees.len();
        let rank = (0..r as u8).collect();
        Alphabet::with_order(degrees, rank)
    }

    /// `rank[i]` is the position of letter `i` in the order; must be a
    /// permutation of `0..r`.
    pub fn with_order(degrees: Vec<u32>, rank: Vec<u8>) -> Result<Alphabet> {
        let r = degrees.len();
        if r == 0 || r > 64 {
            return Err(Error::Usage(format!(
                "alphabet must have between 1 and 64 letters, got {r}"
            )));
        }
        if degrees.contains(&0) {
            return Err(Error::Usage("loop degrees must be positive".into()));
        }
        if rank.len() != r {
            return Err(Error::Usage("letter order has wrong length".into()));
        }
        let mut seen = vec![false; r];
        for &p in &rank {
            if (p as usize) >= r || seen[p as usize] {
                return Err(Error::Usage("letter order is not a permutation".into()));
            }
            seen[p as usize] = true;
        }
        Ok(Alphabet { degrees, rank })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, letter: u8) -> u32 {
        self.degrees[letter as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn rank(&self, letter: u8) -> u8 {
        self.rank[letter as usize]
    }

    pub fn ranks(&self) -> &[u8] {
        &self.rank
    }

    pub fn min_degree(&self) -> u32 {
        *self.degrees.iter().min().unwrap()
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&x| self.degree(x)).sum()
    }

    /// Lexicographic comparison under the alphabet order, a proper prefix
    /// comparing smaller.
    pub fn lex_cmp(&self, a: &Word, b: &Word) -> std::cmp::Ordering {
        let ar = a.letters().iter().map(|&x| self.rank(x));
        let br = b.letters().iter().map(|&x| self.rank(x));
        ar.cmp(br)
    }

    /// Loop degree first, then lexicographic. This single order drives
    /// leading-term selection everywhere.
    pub fn deglex_cmp(&self, a: &Word, b: &Word) -> std::cmp::Ordering {
        self.word_degree(a)
            .cmp(&self.word_degree(b))
            .then_with(|| self.lex_cmp(a, b))
    }

    /// Number of words of each loop degree `0..=n`, by the composition
    /// recurrence; lets callers guard against enumerating huge spaces.
    pub fn word_counts(&self, n: usize) -> Vec<u64> {
        let mut c = vec![0u64; n + 1];
        c[0] = 1;
        for m in 1..=n {
            let mut acc: u64 = 0;
            for &d in &self.degrees {
                if (d as usize) <= m {
                    acc = acc.saturating_add(c[m - d as usize]);
                }
            }
            c[m] = acc;
        }
        c
    }
}

/// A word in the free associative algebra: a sequence of letter indices.
/// The empty word is allowed (degree 0).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(letter: u8) -> Word {
        Word(vec![letter])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn append(&self, letter: u8) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn contains_factor(&self, a: u8, b: u8) -> bool {
        self.0.windows(2).any(|w| w[0] == a && w[1] == b)
    }

    /// 1-based letter indices, the external representation.
    pub fn display_indices(&self) -> Vec<u32> {
        self.0.iter().map(|&x| x as u32 + 1).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|&x| format!("u{}", x + 1)).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All words of loop degree exactly `m`, in deg-lex order under the
/// alphabet's order; deterministic.
pub fn enumerate_words(alphabet: &Alphabet, m: u32) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    // letters visited in rank order so the recursion emits lex order
    let mut by_rank: Vec<u8> = (0..alphabet.len() as u8).collect();
    by_rank.sort_by_key(|&x| alphabet.rank(x));
    fn rec(
        alphabet: &Alphabet,
        by_rank: &[u8],
        stack: &mut Vec<u8>,
        remaining: u32,
        out: &mut Vec<Word>,
    ) {
        if remaining == 0 {
            out.push(Word::new(stack.clone()));
            return;
        }
        for &x in by_rank {
            let d = alphabet.degree(x);
            if d <= remaining {
                stack.push(x);
                rec(alphabet, by_rank, stack, remaining - d, out);
                stack.pop();
            }
        }
    }
    rec(alphabet, &by_rank, &mut stack, m, &mut out);
    // all words share loop degree m, so deg-lex is just the lex tie-break
    out.sort_by(|a, b| alphabet.deglex_cmp(a, b));
    out
}

/// An element of the free associative algebra: a finite map from words to
/// nonzero rational coefficients, homogeneous or not.
#[derive(Clone, PartialEq, Debug)]
pub struct Element {
    alphabet: Arc<Alphabet>,
    terms: HashMap<Word, Rational>,
}

impl Element {
    pub fn zero(alphabet: Arc<Alphabet>) -> Element {
        Element {
            alphabet,
            terms: HashMap::new(),
        }
    }

    pub fn from_word(alphabet: Arc<Alphabet>, w: Word) -> Element {
        let mut e = Element::zero(alphabet);
        e.add_term(w, Rational::one());
        e
    }

    pub fn from_terms(
        alphabet: Arc<Alphabet>,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Element {
        let mut e = Element::zero(alphabet);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    /// Terms in deg-lex order; the canonical external view.
    pub fn sorted_terms(&self) -> Vec<(Word, Rational)> {
        let mut v: Vec<(Word, Rational)> =
            self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        v.sort_by(|a, b| self.alphabet.deglex_cmp(&a.0, &b.0));
        v
    }

    /// If every term has the same loop degree, that degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for w in self.terms.keys() {
            let d = self.alphabet.word_degree(w);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(self.alphabet.clone());
        }
        Element {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Bilinear extension of word concatenation.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check_alphabet(other)?;
        let mut out = Element::zero(self.alphabet.clone());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    fn check_alphabet(&self, other: &Element) -> Result<()> {
        if !Arc::ptr_eq(&self.alphabet, &other.alphabet) && self.alphabet != other.alphabet {
            return Err(Error::Usage(
                "elements belong to different alphabets".into(),
            ));
        }
        Ok(())
    }

    /// Pretty form like `u1.u2 - u2.u1`, terms in deg-lex order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.sorted_terms().iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if mag.is_one() {
                s.push_str(&w.to_string());
            } else {
                s.push_str(&format!("{mag}*{w}"));
            }
        }
        s
    }
}

/// A quadratic relation: an element supported on length-2 words,
/// homogeneous of a single loop degree.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadraticRelation {
    element: Element,
    degree: u32,
}

impl QuadraticRelation {
    pub fn new(element: Element) -> Result<QuadraticRelation> {
        if element.is_zero() {
            return Err(Error::Usage("quadratic relation must be nonzero".into()));
        }
        for w in element.terms.keys() {
            if w.len() != 2 {
                return Err(Error::Usage(format!(
                    "relation term {w} does not have length 2"
                )));
            }
        }
        let degree = element.homogeneous_degree().ok_or_else(|| {
            Error::Usage("quadratic relation must be homogeneous".into())
        })?;
        Ok(QuadraticRelation { element, degree })
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.element.alphabet()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff_pair(&self, i: u8, j: u8) -> Rational {
        self.element.coeff(&Word::new(vec![i, j]))
    }

    /// The relation's support as (first, second, coefficient) triples in
    /// deg-lex order.
    pub fn pairs(&self) -> Vec<(u8, u8, Rational)> {
        self.element
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| (w.letters()[0], w.letters()[1], c))
            .collect()
    }
}

/// An iterated bracket: a leaf letter or a pair of subtrees.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Bracket {
    Leaf(u8),
    Node(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn pair(l: Bracket, r: Bracket) -> Bracket {
        Bracket::Node(Box::new(l), Box::new(r))
    }

    pub fn degree(&self, alphabet: &Alphabet) -> u32 {
        match self {
            Bracket::Leaf(x) => alphabet.degree(*x),
            Bracket::Node(l, r) => l.degree(alphabet) + r.degree(alphabet),
        }
    }

    pub fn leaves(&self) -> Vec<u8> {
        match self {
            Bracket::Leaf(x) => vec![*x],
            Bracket::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    /// Recursive expansion with `[a, b] = ab - ba`.
    pub fn expand_ungraded(&self, alphabet: &Arc<Alphabet>) -> Element {
        match self {
            Bracket::Leaf(x) => Element::from_word(alphabet.clone(), Word::single(*x)),
            Bracket::Node(l, r) => {
                let a = l.expand_ungraded(alphabet);
                let b = r.expand_ungraded(alphabet);
                let ab = a.multiply(&b).expect("same alphabet");
                let ba = b.multiply(&a).expect("same alphabet");
                ab.sub(&ba).expect("same alphabet")
            }
        }
    }

    /// Recursive expansion with `[a, b] = ab - (-1)^{|a||b|} ba`, degrees
    /// taken as loop degrees.
    pub fn expand_graded(&self, alphabet: &Arc<Alphabet>) -> Element {
        match self {
            Bracket::Leaf(x) => Element::from_word(alphabet.clone(), Word::single(*x)),
            Bracket::Node(l, r) => {
                let a = l.expand_graded(alphabet);
                let b = r.expand_graded(alphabet);
                let ab = a.multiply(&b).expect("same alphabet");
                let ba = b.multiply(&a).expect("same alphabet");
                let sign = if (l.degree(alphabet) * r.degree(alphabet)) % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                ab.sub(&ba.scale(&sign)).expect("same alphabet")
            }
        }
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Leaf(x) => write!(f, "u{}", x + 1),
            Bracket::Node(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}
