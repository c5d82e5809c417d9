//! Lyndon words, standard factorization and bracketing, and the greedy
//! construction of the standard basis of the quadratic Lie algebra inside
//! the quotient algebra.

use crate::error::{Error, Result};
use crate::quotient::{QuotientEngine, Rref};
use crate::word::{Alphabet, Bracket, Word};

/// True iff `w` is strictly smallest among its cyclic rotations under the
/// alphabet order. Periodic words compare equal to some rotation and are
/// rejected.
pub fn is_lyndon(w: &Word, alphabet: &Alphabet) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::Domain("the empty word is not eligible".into()));
    }
    let n = w.len();
    let letters = w.letters();
    for rot in 1..n {
        let rotated = (0..n).map(|i| alphabet.rank(letters[(i + rot) % n]));
        let original = letters.iter().map(|&x| alphabet.rank(x));
        if original.cmp(rotated) != std::cmp::Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All Lyndon words of loop degree `m`, in lexicographic order under the
/// alphabet order. Generation is Duval's algorithm run in rank space, so
/// the output order is the enumeration order.
pub fn lyndon_words(alphabet: &Alphabet, m: u32) -> Vec<Word> {
    if m == 0 {
        return Vec::new();
    }
    let r = alphabet.len();
    // letter_of[rank] inverts the alphabet's rank permutation
    let mut letter_of = vec![0u8; r];
    for x in 0..r as u8 {
        letter_of[alphabet.rank(x) as usize] = x;
    }
    let deg_of_rank: Vec<u32> = letter_of.iter().map(|&x| alphabet.degree(x)).collect();
    let max_len = (m / alphabet.min_degree()) as usize;
    let mut out = Vec::new();
    // Duval: enumerate Lyndon words over ranks 0..r of length <= max_len
    let mut w: Vec<usize> = vec![0];
    loop {
        let degree: u32 = w.iter().map(|&c| deg_of_rank[c]).sum();
        if degree == m {
            out.push(Word::new(w.iter().map(|&c| letter_of[c]).collect()));
        }
        let k = w.len();
        let mut ext = w.clone();
        while ext.len() < max_len {
            ext.push(ext[ext.len() % k]);
        }
        w = ext;
        while let Some(&last) = w.last() {
            if last == r - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Standard factorization of a Lyndon word of length >= 2: `w = l1 l2`
/// where `l2` is the longest proper suffix of `w` that is Lyndon,
/// equivalently the lexicographically least proper suffix. Both parts are
/// Lyndon.
pub fn standard_factorization(w: &Word, alphabet: &Alphabet) -> Result<(Word, Word)> {
    if w.len() < 2 {
        return Err(Error::Domain(
            "standard factorization needs length at least 2".into(),
        ));
    }
    if !is_lyndon(w, alphabet)? {
        return Err(Error::Domain(format!("{w} is not a Lyndon word")));
    }
    let letters = w.letters();
    let mut best = 1;
    for start in 2..letters.len() {
        let cand = letters[start..].iter().map(|&x| alphabet.rank(x));
        let cur = letters[best..].iter().map(|&x| alphabet.rank(x));
        if cand.cmp(cur) == std::cmp::Ordering::Less {
            best = start;
        }
    }
    Ok((
        Word::new(letters[..best].to_vec()),
        Word::new(letters[best..].to_vec()),
    ))
}

/// The iterated bracket of a Lyndon word through its standard
/// factorization; leaves are letters.
pub fn bracketing(w: &Word, alphabet: &Alphabet) -> Result<Bracket> {
    if w.len() == 1 {
        if !is_lyndon(w, alphabet)? {
            unreachable!("single letters are always Lyndon");
        }
        return Ok(Bracket::Leaf(w.letters()[0]));
    }
    let (l1, l2) = standard_factorization(w, alphabet)?;
    Ok(Bracket::pair(
        bracketing(&l1, alphabet)?,
        bracketing(&l2, alphabet)?,
    ))
}

/// One element of the standard basis of the quadratic Lie algebra: a
/// Lyndon word, its bracketing, and the sphere the bracket contributes
/// (dimension = loop degree + 1).
#[derive(Clone, Debug)]
pub struct LyndonBasisEntry {
    pub word: Word,
    pub bracket: Bracket,
    pub loop_degree: u32,
    pub sphere_dim: u32,
}

/// The degree-`m` slice of the standard basis: Lyndon words processed in
/// ascending lexicographic order, keeping those whose bracket expansions
/// stay linearly independent in the quotient algebra. The engine must be
/// built on the ungraded relation.
pub fn standard_basis_degree(
    engine: &QuotientEngine,
    m: u32,
) -> Result<Vec<LyndonBasisEntry>> {
    let alphabet = engine.alphabet();
    let mut rref = Rref::new();
    let mut kept = Vec::new();
    for w in lyndon_words(alphabet, m) {
        let bracket = bracketing(&w, alphabet)?;
        let coords = engine.coordinates(&bracket.expand_ungraded(alphabet))?;
        if rref.insert(coords.entries) {
            kept.push(LyndonBasisEntry {
                word: w,
                bracket,
                loop_degree: m,
                sphere_dim: m + 1,
            });
        }
    }
    Ok(kept)
}

/// Standard basis entries of all loop degrees `1..=n`, lex-ordered within
/// each degree.
pub fn standard_basis(engine: &QuotientEngine, n: u32) -> Result<Vec<LyndonBasisEntry>> {
    let mut out = Vec::new();
    for m in 1..=n {
        out.extend(standard_basis_degree(engine, m)?);
    }
    Ok(out)
}
