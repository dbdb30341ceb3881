//! Formal linear combinations with exact rational coefficients.
//!
//! [`LinComb`] is the carrier of every algebra in this crate: a finite map
//! from basis elements to nonzero rationals. The basis supplies its own
//! canonical total order through the [`Basis`] trait, so equal combinations
//! always serialize identically. [`Augmented`] adjoins the unit `1` that the
//! split products treat specially.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Kept in canonical form (reduced, positive
/// denominator) by `num-rational`.
pub type Rational = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` with `q > 0`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::Parse {
        msg: format!("{msg} in coefficient `{text}`"),
        pos: 0,
    };
    let mut halves = text.splitn(2, '/');
    let numer: BigInt = halves
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| bad("invalid integer"))?;
    match halves.next() {
        None => Ok(Rational::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().map_err(|_| bad("invalid denominator"))?;
            if denom <= BigInt::zero() {
                return Err(bad("denominator must be positive"));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// A basis for formal linear combinations.
///
/// `Ord` must implement the canonical total order documented for the type
/// (words by length then lexicographic letters, trees by leaf count then
/// serialized string), and `Display`/`parse_basis` must round-trip.
pub trait Basis: Clone + Eq + Ord + fmt::Display {
    fn parse_basis(text: &str) -> Result<Self>;
}

/// Finite formal linear combination over `B` with exact coefficients.
///
/// No stored coefficient is zero; iteration follows the basis order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<B: Basis> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Basis> Default for LinComb<B> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<B: Basis> LinComb<B> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    /// The combination `1·b`.
    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::one())
    }

    /// The combination `c·b` (empty when `c = 0`).
    pub fn term(b: B, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `b`, zero if absent.
    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical basis order.
    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    /// Adds `c·b`, dropping the entry if the sum cancels.
    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in other.iter() {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in other.iter() {
            out.add_term(b.clone(), -c.clone());
        }
        out
    }

    /// Every coefficient multiplied by `c`; empty when `c = 0`.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (b, coeff) in self.iter() {
            out.terms.insert(b.clone(), coeff * c);
        }
        out
    }

    /// Linear extension of a basis map `B -> LinComb<C>`.
    pub fn map_linear<C: Basis>(&self, f: impl Fn(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            for (b2, c2) in f(b).iter() {
                out.add_term(b2.clone(), c * c2);
            }
        }
        out
    }

    /// Fallible linear extension, for maps whose basis image can error.
    pub fn try_map_linear<C: Basis>(
        &self,
        mut f: impl FnMut(&B) -> Result<LinComb<C>>,
    ) -> Result<LinComb<C>> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            for (b2, c2) in f(b)?.iter() {
                out.add_term(b2.clone(), c * c2);
            }
        }
        Ok(out)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Rational)>) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    /// JSON export: `[{"coeff": "...", "basis": "..."}, ...]`.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, (b, c)) in self.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!(
                "{{\"coeff\":\"{}\",\"basis\":\"{}\"}}",
                c,
                json_escape(&b.to_string())
            ));
        }
        out.push(']');
        out
    }

    /// Parses the output of `Display`: `0`, or terms `c*(basis)` joined by
    /// ` + ` / ` - `.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let mut rest = trimmed;
        let mut offset = text.len() - trimmed.len();
        let mut negate = false;
        loop {
            let star = rest.find("*(").ok_or(Error::Parse {
                msg: "expected `coeff*(basis)`".into(),
                pos: offset,
            })?;
            let coeff = parse_rational(rest[..star].trim())?;
            let coeff = if negate { -coeff } else { coeff };
            let body_start = star + 2;
            let close = matching_paren(rest, star + 1).ok_or(Error::Parse {
                msg: "unbalanced parenthesis".into(),
                pos: offset + star + 1,
            })?;
            let basis = B::parse_basis(&rest[body_start..close])?;
            out.add_term(basis, coeff);
            let tail = &rest[close + 1..];
            if tail.trim().is_empty() {
                return Ok(out);
            }
            if let Some(t) = tail.strip_prefix(" + ") {
                negate = false;
                offset += close + 4;
                rest = t;
            } else if let Some(t) = tail.strip_prefix(" - ") {
                negate = true;
                offset += close + 4;
                rest = t;
            } else {
                return Err(Error::Parse {
                    msg: "expected ` + ` or ` - ` between terms".into(),
                    pos: offset + close + 1,
                });
            }
        }
    }
}

/// Index of the `)` matching the `(` at byte `open`.
fn matching_paren(s: &str, open: usize) -> Option<usize> {
    let bytes = s.as_bytes();
    debug_assert_eq!(bytes[open], b'(');
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

impl<B: Basis> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.iter().enumerate() {
            if i == 0 {
                write!(f, "{c}*({b})")?;
            } else if c.is_negative() {
                write!(f, " - {}*({})", -c.clone(), b)?;
            } else {
                write!(f, " + {c}*({b})")?;
            }
        }
        Ok(())
    }
}

/// Bilinear extension of a basis-level product `f: B × B -> LinComb<B>`.
pub fn bilinear_extend<B: Basis>(
    f: impl Fn(&B, &B) -> LinComb<B>,
    a: &LinComb<B>,
    b: &LinComb<B>,
) -> LinComb<B> {
    let mut out = LinComb::zero();
    for (ba, ca) in a.iter() {
        for (bb, cb) in b.iter() {
            let prod = ca * cb;
            for (br, cr) in f(ba, bb).iter() {
                out.add_term(br.clone(), &prod * cr);
            }
        }
    }
    out
}

/// Fallible variant of [`bilinear_extend`] for split products that reject
/// empty operands.
pub fn try_bilinear_extend<B: Basis>(
    mut f: impl FnMut(&B, &B) -> Result<LinComb<B>>,
    a: &LinComb<B>,
    b: &LinComb<B>,
) -> Result<LinComb<B>> {
    let mut out = LinComb::zero();
    for (ba, ca) in a.iter() {
        for (bb, cb) in b.iter() {
            let prod = ca * cb;
            for (br, cr) in f(ba, bb)?.iter() {
                out.add_term(br.clone(), &prod * cr);
            }
        }
    }
    Ok(out)
}

/// Which piece of a (tri)dendriform product.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Piece {
    Left,
    Right,
    Middle,
    Full,
}

impl Piece {
    pub fn parse(text: &str) -> Result<Piece> {
        match text {
            "left" => Ok(Piece::Left),
            "right" => Ok(Piece::Right),
            "mid" | "middle" => Ok(Piece::Middle),
            "full" => Ok(Piece::Full),
            other => Err(Error::Parse {
                msg: format!("unknown piece `{other}` (expected left|right|mid|full)"),
                pos: 0,
            }),
        }
    }
}

/// Element of the augmented algebra `Ā = 𝕂·1 ⊕ A`.
///
/// The unit conventions are `1 ≻ a = a = a ≺ 1`, `1 ≺ a = 0 = a ≻ 1` and
/// `1 · a = 0 = a · 1`; a split product of two unit components is undefined
/// and reported as an error rather than silently dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Augmented<B: Basis> {
    pub scalar: Rational,
    pub body: LinComb<B>,
}

impl<B: Basis> Augmented<B> {
    pub fn unit() -> Self {
        Augmented {
            scalar: Rational::one(),
            body: LinComb::zero(),
        }
    }

    pub fn from_body(body: LinComb<B>) -> Self {
        Augmented {
            scalar: Rational::zero(),
            body,
        }
    }

    pub fn is_unit_free(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Augmented {
            scalar: &self.scalar + &other.scalar,
            body: self.body.add(&other.body),
        }
    }

    /// One of the split products `≺`, `≻`, `·`, extended by the unit rules
    /// above. `f` is the bilinear split on the non-unit part.
    pub fn split_product(
        &self,
        other: &Self,
        piece: Piece,
        f: impl FnMut(&B, &B) -> Result<LinComb<B>>,
    ) -> Result<Self> {
        if !self.scalar.is_zero() && !other.scalar.is_zero() {
            return Err(Error::UnitProductUndefined);
        }
        let mut body = try_bilinear_extend(f, &self.body, &other.body)?;
        match piece {
            // 1 ≺ b = 0 and a ≺ 1 = a
            Piece::Left => body = body.add(&self.body.scale(&other.scalar)),
            // 1 ≻ b = b and a ≻ 1 = 0
            Piece::Right => body = body.add(&other.body.scale(&self.scalar)),
            // 1 · b = 0 = a · 1
            Piece::Middle => {}
            Piece::Full => {
                return Err(Error::InvalidConfig(
                    "split_product takes left|right|mid; use full_product".into(),
                ))
            }
        }
        Ok(Augmented {
            scalar: Rational::zero(),
            body,
        })
    }

    /// The associative product of the augmentation: `1` is a genuine unit.
    pub fn full_product(
        &self,
        other: &Self,
        f: impl Fn(&B, &B) -> LinComb<B>,
    ) -> Self {
        let mut body = bilinear_extend(f, &self.body, &other.body);
        body = body.add(&self.body.scale(&other.scalar));
        body = body.add(&other.body.scale(&self.scalar));
        Augmented {
            scalar: &self.scalar * &other.scalar,
            body,
        }
    }
}
