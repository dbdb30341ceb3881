//! Words over `ℕ*` and `{x, y}`, their shuffle and quasi-shuffle products,
//! the dendriform/tridendriform splits of those products, the binarization
//! map, and the convergence predicates.
//!
//! Products are implemented by the inductive definitions (first-letter
//! extraction); the surjection enumerations [`enumerate_shuffles`] and
//! [`enumerate_quasi_shuffles`] give the equivalent non-inductive route and
//! drive the tree products.

use std::fmt;

use crate::algebra::{Basis, LinComb};
use crate::error::{Error, Result};

/// The two-letter alphabet of the integral side.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Bin {
    X,
    Y,
}

impl fmt::Display for Bin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bin::X => write!(f, "x"),
            Bin::Y => write!(f, "y"),
        }
    }
}

/// Alphabet of a word: positive integers or `{x, y}`.
pub trait Letter: Clone + Copy + Eq + Ord + std::hash::Hash + fmt::Debug + fmt::Display {
    /// Separator between letters in the text form.
    const SEP: &'static str;
    fn parse_letters(text: &str) -> Result<Vec<Self>>;
}

impl Letter for u64 {
    const SEP: &'static str = " ";

    fn parse_letters(text: &str) -> Result<Vec<u64>> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let n: u64 = tok.parse().map_err(|_| Error::Parse {
                msg: format!("`{tok}` is not a positive integer letter"),
                pos: 0,
            })?;
            if n == 0 {
                return Err(Error::Parse {
                    msg: "letters must be >= 1".into(),
                    pos: 0,
                });
            }
            letters.push(n);
        }
        Ok(letters)
    }
}

impl Letter for Bin {
    const SEP: &'static str = "";

    fn parse_letters(text: &str) -> Result<Vec<Bin>> {
        text.trim()
            .chars()
            .map(|c| match c {
                'x' => Ok(Bin::X),
                'y' => Ok(Bin::Y),
                other => Err(Error::Parse {
                    msg: format!("`{other}` is not a letter of {{x, y}}"),
                    pos: 0,
                }),
            })
            .collect()
    }
}

/// A finite word. The empty word is allowed and spelled `()` in text form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word<L: Letter> {
    letters: Vec<L>,
}

pub type PosWord = Word<u64>;
pub type BinWord = Word<Bin>;

impl<L: Letter> Word<L> {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn new(letters: Vec<L>) -> Self {
        Word { letters }
    }

    pub fn single(letter: L) -> Self {
        Word {
            letters: vec![letter],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn first(&self) -> Option<L> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<L> {
        self.letters.last().copied()
    }

    /// Word without its first letter.
    fn tail(&self) -> Word<L> {
        Word {
            letters: self.letters[1..].to_vec(),
        }
    }

    fn prepended(&self, letter: L) -> Word<L> {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word { letters }
    }
}

/// Canonical order: by length, then lexicographically on letters.
impl<L: Letter> Ord for Word<L> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl<L: Letter> PartialOrd for Word<L> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: Letter> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "{}", L::SEP)?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl<L: Letter> Basis for Word<L> {
    fn parse_basis(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "()" || t.is_empty() {
            return Ok(Word::empty());
        }
        Ok(Word::new(L::parse_letters(t)?))
    }
}

fn prepend<L: Letter>(letter: L, comb: &LinComb<Word<L>>) -> LinComb<Word<L>> {
    comb.map_linear(|w| LinComb::basis(w.prepended(letter)))
}

/// Shuffle product `u ⧢ v`, with `u ⧢ () = () ⧢ u = u`.
pub fn shuffle<L: Letter>(u: &Word<L>, v: &Word<L>) -> LinComb<Word<L>> {
    if u.is_empty() {
        return LinComb::basis(v.clone());
    }
    if v.is_empty() {
        return LinComb::basis(u.clone());
    }
    shuffle_left(u, v)
        .unwrap()
        .add(&shuffle_right(u, v).unwrap())
}

/// `u ≺ v = u₁(u₂…uₙ ⧢ v)`. Undefined (error) when `u` is empty.
pub fn shuffle_left<L: Letter>(u: &Word<L>, v: &Word<L>) -> Result<LinComb<Word<L>>> {
    let first = u.first().ok_or(Error::EmptyOperand { op: "shuffle ≺" })?;
    Ok(prepend(first, &shuffle(&u.tail(), v)))
}

/// `u ≻ v = v₁(u ⧢ v₂…vₖ)`. Undefined (error) when `v` is empty.
pub fn shuffle_right<L: Letter>(u: &Word<L>, v: &Word<L>) -> Result<LinComb<Word<L>>> {
    let first = v.first().ok_or(Error::EmptyOperand { op: "shuffle ≻" })?;
    Ok(prepend(first, &shuffle(u, &v.tail())))
}

/// Quasi-shuffle product `u ⊛ v` on words over `ℕ*`.
pub fn qshuffle(u: &PosWord, v: &PosWord) -> LinComb<PosWord> {
    if u.is_empty() {
        return LinComb::basis(v.clone());
    }
    if v.is_empty() {
        return LinComb::basis(u.clone());
    }
    let mut out = qshuffle_left(u, v).unwrap();
    out = out.add(&qshuffle_right(u, v).unwrap());
    out.add(&qshuffle_mid(u, v).unwrap())
}

/// `u ≺ v = u₁(u₂…uₙ ⊛ v)`.
pub fn qshuffle_left(u: &PosWord, v: &PosWord) -> Result<LinComb<PosWord>> {
    let first = u.first().ok_or(Error::EmptyOperand { op: "quasi-shuffle ≺" })?;
    Ok(prepend(first, &qshuffle(&u.tail(), v)))
}

/// `u ≻ v = v₁(u ⊛ v₂…vₖ)`.
pub fn qshuffle_right(u: &PosWord, v: &PosWord) -> Result<LinComb<PosWord>> {
    let first = v.first().ok_or(Error::EmptyOperand { op: "quasi-shuffle ≻" })?;
    Ok(prepend(first, &qshuffle(u, &v.tail())))
}

/// `u · v = (u₁+v₁)(u₂…uₙ ⊛ v₂…vₖ)`. Needs both operands nonempty.
pub fn qshuffle_mid(u: &PosWord, v: &PosWord) -> Result<LinComb<PosWord>> {
    let a = u.first().ok_or(Error::EmptyOperand { op: "quasi-shuffle ·" })?;
    let b = v.first().ok_or(Error::EmptyOperand { op: "quasi-shuffle ·" })?;
    let merged = a.checked_add(b).expect("letter sum overflows u64");
    Ok(prepend(merged, &qshuffle(&u.tail(), &v.tail())))
}

/// The binarization map `𝔰`: `n₁…n_k ↦ x^{n₁−1} y … x^{n_k−1} y`.
pub fn binarize(w: &PosWord) -> BinWord {
    let mut letters = Vec::new();
    for &n in w.letters() {
        for _ in 0..n - 1 {
            letters.push(Bin::X);
        }
        letters.push(Bin::Y);
    }
    Word::new(letters)
}

/// Inverse of `𝔰` on its image; words not ending in `y` are rejected.
pub fn unbinarize(w: &BinWord) -> Result<PosWord> {
    if let Some(last) = w.last() {
        if last != Bin::Y {
            return Err(Error::NotInImage(w.to_string()));
        }
    }
    let mut letters = Vec::new();
    let mut run = 0u64;
    for &l in w.letters() {
        match l {
            Bin::X => run += 1,
            Bin::Y => {
                letters.push(run + 1);
                run = 0;
            }
        }
    }
    Ok(Word::new(letters))
}

/// `true` iff `w = ()` or the first letter differs from `1`.
pub fn is_convergent_series_word(w: &PosWord) -> bool {
    w.first() != Some(1)
}

/// `true` iff `w = ()` or `w` starts with `x` and ends with `y`.
pub fn is_convergent_integral_word(w: &BinWord) -> bool {
    match (w.first(), w.last()) {
        (None, _) => true,
        (Some(a), Some(b)) => a == Bin::X && b == Bin::Y,
        _ => unreachable!(),
    }
}

/// A `(k, l)`-quasi-shuffle: a surjection `{1..k+l} ↠ {1..n}` increasing on
/// each block, fibers of size at most 2, every doubleton fiber mixing the two
/// blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiShuffleMap {
    k: usize,
    l: usize,
    /// `values[i] = σ(i+1)`, 1-based images.
    values: Vec<usize>,
    max: usize,
}

impl QuasiShuffleMap {
    pub fn new(k: usize, l: usize, values: Vec<usize>) -> Result<Self> {
        let max = values.iter().copied().max().unwrap_or(0);
        let map = QuasiShuffleMap { k, l, values, max };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Error::Parse { msg, pos: 0 };
        if self.k == 0 || self.l == 0 || self.values.len() != self.k + self.l {
            return Err(bad("quasi-shuffle needs k, l >= 1 and k+l values".into()));
        }
        for w in self.values[..self.k].windows(2) {
            if w[0] >= w[1] {
                return Err(bad("first block not strictly increasing".into()));
            }
        }
        for w in self.values[self.k..].windows(2) {
            if w[0] >= w[1] {
                return Err(bad("second block not strictly increasing".into()));
            }
        }
        let mut seen = vec![0usize; self.max + 1];
        for &v in &self.values {
            if v == 0 {
                return Err(bad("images are 1-based".into()));
            }
            seen[v] += 1;
        }
        for m in 1..=self.max {
            match seen[m] {
                0 => return Err(bad(format!("not surjective: {m} missing"))),
                1 => {}
                2 => {
                    // monotone blocks force the two preimages into distinct
                    // blocks, but assert it anyway
                    let pre: Vec<usize> = self
                        .values
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v == m)
                        .map(|(i, _)| i)
                        .collect();
                    if !(pre[0] < self.k && pre[1] >= self.k) {
                        return Err(bad(format!("fiber of {m} does not mix the blocks")));
                    }
                }
                _ => return Err(bad(format!("fiber of {m} has more than 2 elements"))),
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Size of the image `{1..n}`.
    pub fn max(&self) -> usize {
        self.max
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Preimages of `m` split by block: (index in `1..=k`, index in
    /// `k+1..=k+l`), both 1-based.
    pub fn fiber(&self, m: usize) -> (Option<usize>, Option<usize>) {
        let mut left = None;
        let mut right = None;
        for (i, &v) in self.values.iter().enumerate() {
            if v == m {
                if i < self.k {
                    left = Some(i + 1);
                } else {
                    right = Some(i + 1);
                }
            }
        }
        (left, right)
    }

    /// The fiber of 1, as the piece classifier: `{1}` for `≺`, `{k+1}` for
    /// `≻`, `{1, k+1}` for `·`.
    pub fn piece_of_one(&self) -> crate::algebra::Piece {
        use crate::algebra::Piece;
        match self.fiber(1) {
            (Some(1), None) => Piece::Left,
            (None, Some(i)) if i == self.k + 1 => Piece::Right,
            (Some(1), Some(i)) if i == self.k + 1 => Piece::Middle,
            other => unreachable!("monotone blocks force σ⁻¹(1) ⊆ {{1, k+1}}, got {other:?}"),
        }
    }

    /// Applies the surjection formula to a pair of words: position `m` of the
    /// output carries `w_i`, `w_j` or `w_i + w_j` according to the fiber.
    pub fn apply_to_words(&self, u: &PosWord, v: &PosWord) -> Result<PosWord> {
        if u.len() != self.k || v.len() != self.l {
            return Err(Error::ArityMismatch {
                expected: (self.k, self.l),
                found: (u.len(), v.len()),
            });
        }
        let mut letters = Vec::with_capacity(self.max);
        for m in 1..=self.max {
            let letter = match self.fiber(m) {
                (Some(i), None) => u.letters()[i - 1],
                (None, Some(j)) => v.letters()[j - self.k - 1],
                (Some(i), Some(j)) => u.letters()[i - 1]
                    .checked_add(v.letters()[j - self.k - 1])
                    .expect("letter sum overflows u64"),
                (None, None) => unreachable!("validated surjection"),
            };
            letters.push(letter);
        }
        Ok(Word::new(letters))
    }
}

/// A `(k, l)`-shuffle: a permutation of `{1..k+l}` increasing on each block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShuffleMap {
    k: usize,
    l: usize,
    values: Vec<usize>,
}

impl ShuffleMap {
    pub fn new(k: usize, l: usize, values: Vec<usize>) -> Result<Self> {
        let qsh = QuasiShuffleMap::new(k, l, values.clone())?;
        if qsh.max() != k + l {
            return Err(Error::Parse {
                msg: "shuffle must be a permutation (no merged fibers)".into(),
                pos: 0,
            });
        }
        Ok(ShuffleMap { k, l, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// View as a quasi-shuffle (all fibers singletons).
    pub fn as_quasi(&self) -> QuasiShuffleMap {
        QuasiShuffleMap::new(self.k, self.l, self.values.clone())
            .expect("a shuffle is a quasi-shuffle")
    }

    pub fn apply_to_words<L: Letter>(&self, u: &Word<L>, v: &Word<L>) -> Result<Word<L>> {
        if u.len() != self.k || v.len() != self.l {
            return Err(Error::ArityMismatch {
                expected: (self.k, self.l),
                found: (u.len(), v.len()),
            });
        }
        let mut letters = vec![None; self.k + self.l];
        for (i, &m) in self.values.iter().enumerate() {
            let letter = if i < self.k {
                u.letters()[i]
            } else {
                v.letters()[i - self.k]
            };
            letters[m - 1] = Some(letter);
        }
        Ok(Word::new(letters.into_iter().map(Option::unwrap).collect()))
    }
}

/// All `(k, l)`-shuffles in lexicographic order of their value sequences.
pub fn enumerate_shuffles(k: usize, l: usize) -> Vec<ShuffleMap> {
    assert!(k >= 1 && l >= 1, "shuffles need k, l >= 1");
    let mut out = Vec::new();
    // Walk the merge lattice: at each output position, take the next element
    // of block 1 or block 2.
    fn rec(k: usize, l: usize, i: usize, j: usize, acc1: &mut Vec<usize>, acc2: &mut Vec<usize>, out: &mut Vec<ShuffleMap>) {
        let next = i + j + 1;
        if i == k && j == l {
            let mut values = acc1.clone();
            values.extend_from_slice(acc2);
            out.push(ShuffleMap::new(k, l, values).expect("construction is valid"));
            return;
        }
        if i < k {
            acc1.push(next);
            rec(k, l, i + 1, j, acc1, acc2, out);
            acc1.pop();
        }
        if j < l {
            acc2.push(next);
            rec(k, l, i, j + 1, acc1, acc2, out);
            acc2.pop();
        }
    }
    rec(k, l, 0, 0, &mut Vec::new(), &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.values.cmp(&b.values));
    out
}

/// All `(k, l)`-quasi-shuffles in lexicographic order of their value
/// sequences. The fiber invariant is asserted during construction.
pub fn enumerate_quasi_shuffles(k: usize, l: usize) -> Vec<QuasiShuffleMap> {
    assert!(k >= 1 && l >= 1, "quasi-shuffles need k, l >= 1");
    let mut out = Vec::new();
    // Same walk with a third branch merging one element of each block.
    fn rec(k: usize, l: usize, i: usize, j: usize, next: usize, acc1: &mut Vec<usize>, acc2: &mut Vec<usize>, out: &mut Vec<QuasiShuffleMap>) {
        if i == k && j == l {
            let mut values = acc1.clone();
            values.extend_from_slice(acc2);
            out.push(QuasiShuffleMap::new(k, l, values).expect("construction is valid"));
            return;
        }
        if i < k {
            acc1.push(next);
            rec(k, l, i + 1, j, next + 1, acc1, acc2, out);
            acc1.pop();
        }
        if j < l {
            acc2.push(next);
            rec(k, l, i, j + 1, next + 1, acc1, acc2, out);
            acc2.pop();
        }
        if i < k && j < l {
            acc1.push(next);
            acc2.push(next);
            rec(k, l, i + 1, j + 1, next + 1, acc1, acc2, out);
            acc1.pop();
            acc2.pop();
        }
    }
    rec(k, l, 0, 0, 1, &mut Vec::new(), &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.values.cmp(&b.values));
    out
}
