//! Planar decorated Schroeder trees.
//!
//! Three flavours share the same Schroeder skeleton (every internal vertex
//! has at least two children):
//!
//! - [`AngleTree`]: angles decorated in an alphabet, the basis of the free
//!   tridendriform algebra (and, in the binary `{x,y}` case, of the free
//!   dendriform algebra — see [`BinaryTree`]);
//! - [`VertexTree`]: internal vertices decorated by positive integers, with
//!   each decoration at least the number of angles of its vertex;
//! - [`BinaryTree`]: exactly two children per internal vertex, decorated in
//!   `{x, y}`.
//!
//! Text grammar: leaf `|`; `V[a1,...,ak](c1,...,c{k+1})`; `N{d}(c1,...,ck)`;
//! `B{x}(l,r)`. A node with an omitted child list stands for the node whose
//! children are all leaves.

use std::fmt;

use crate::algebra::{Basis, LinComb};
use crate::error::{Error, Result};
use crate::words::{qshuffle, shuffle, Bin, BinWord, Letter, PosWord, Word};

/// Schroeder tree with angles decorated in `L`. A vertex with `c` children
/// carries `c - 1` angle decorations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AngleTree<L: Letter> {
    Leaf,
    Node {
        angles: Vec<L>,
        children: Vec<AngleTree<L>>,
    },
}

pub type PosAngleTree = AngleTree<u64>;

/// Schroeder tree with vertex decorations in `ℕ*`, each at least the number
/// of angles of its vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum VertexTree {
    Leaf,
    Node {
        dec: u64,
        children: Vec<VertexTree>,
    },
}

/// Planar binary tree with internal vertices decorated in `{x, y}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BinaryTree {
    Leaf,
    Node {
        dec: Bin,
        left: Box<BinaryTree>,
        right: Box<BinaryTree>,
    },
}

impl<L: Letter> AngleTree<L> {
    pub fn node(angles: Vec<L>, children: Vec<AngleTree<L>>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Parse {
                msg: "internal vertices need at least two children".into(),
                pos: 0,
            });
        }
        if angles.len() + 1 != children.len() {
            return Err(Error::Parse {
                msg: format!(
                    "{} angles do not fit {} children",
                    angles.len(),
                    children.len()
                ),
                pos: 0,
            });
        }
        Ok(AngleTree::Node { angles, children })
    }

    pub(crate) fn node_unchecked(angles: Vec<L>, children: Vec<AngleTree<L>>) -> Self {
        debug_assert!(children.len() >= 2 && angles.len() + 1 == children.len());
        AngleTree::Node { angles, children }
    }

    /// The one-node tree `Y[a]` with two leaf children.
    pub fn corolla(angles: Vec<L>) -> Result<Self> {
        let n = angles.len() + 1;
        Self::node(angles, vec![AngleTree::Leaf; n])
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, AngleTree::Leaf)
    }

    pub fn leaves(&self) -> usize {
        match self {
            AngleTree::Leaf => 1,
            AngleTree::Node { children, .. } => children.iter().map(|c| c.leaves()).sum(),
        }
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            AngleTree::Leaf => 0,
            AngleTree::Node { children, .. } => {
                1 + children.iter().map(|c| c.internal_vertices()).sum::<usize>()
            }
        }
    }
}

impl VertexTree {
    pub fn node(dec: u64, children: Vec<VertexTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Parse {
                msg: "internal vertices need at least two children".into(),
                pos: 0,
            });
        }
        if dec < (children.len() - 1) as u64 {
            return Err(Error::Parse {
                msg: format!(
                    "vertex decoration {} is below the angle count {}",
                    dec,
                    children.len() - 1
                ),
                pos: 0,
            });
        }
        Ok(VertexTree::Node { dec, children })
    }

    pub(crate) fn node_unchecked(dec: u64, children: Vec<VertexTree>) -> Self {
        debug_assert!(children.len() >= 2 && dec >= (children.len() - 1) as u64);
        VertexTree::Node { dec, children }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, VertexTree::Leaf)
    }

    pub fn leaves(&self) -> usize {
        match self {
            VertexTree::Leaf => 1,
            VertexTree::Node { children, .. } => children.iter().map(|c| c.leaves()).sum(),
        }
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            VertexTree::Leaf => 0,
            VertexTree::Node { children, .. } => {
                1 + children.iter().map(|c| c.internal_vertices()).sum::<usize>()
            }
        }
    }
}

impl BinaryTree {
    pub fn node(dec: Bin, left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node {
            dec,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// The one-node tree `B{z}(|,|)`.
    pub fn corolla(dec: Bin) -> Self {
        Self::node(dec, BinaryTree::Leaf, BinaryTree::Leaf)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }

    pub fn leaves(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Node { left, right, .. } => left.leaves() + right.leaves(),
        }
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node { left, right, .. } => {
                1 + left.internal_vertices() + right.internal_vertices()
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Display and parsing
// ---------------------------------------------------------------------------

impl<L: Letter> fmt::Display for AngleTree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleTree::Leaf => write!(f, "|"),
            AngleTree::Node { angles, children } => {
                write!(f, "V[")?;
                for (i, a) in angles.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, "](")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for VertexTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexTree::Leaf => write!(f, "|"),
            VertexTree::Node { dec, children } => {
                write!(f, "N{{{dec}}}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => write!(f, "|"),
            BinaryTree::Node { dec, left, right } => write!(f, "B{{{dec}}}({left},{right})"),
        }
    }
}

/// Recursive-descent scanner over the tree grammar. Nesting is capped so
/// hostile input cannot exhaust the stack.
struct Scanner<'a> {
    text: &'a str,
    pos: usize,
    depth: usize,
}

const MAX_NESTING: usize = 512;

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            text,
            pos: 0,
            depth: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            msg: msg.into(),
            pos: self.pos,
        }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(' ') {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{token}`")))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    /// Text up to (not including) the next occurrence of `close` at depth 0.
    fn until(&mut self, close: char) -> Result<&'a str> {
        let start = self.pos;
        for (i, c) in self.rest().char_indices() {
            if c == close {
                self.pos = start + i;
                return Ok(&self.text[start..start + i]);
            }
        }
        Err(self.err(format!("missing `{close}`")))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }
}

fn parse_angle_tree<L: Letter>(sc: &mut Scanner) -> Result<AngleTree<L>> {
    match sc.peek() {
        Some('|') => {
            sc.eat('|')?;
            Ok(AngleTree::Leaf)
        }
        Some('V') => {
            sc.eat('V')?;
            sc.eat('[')?;
            let raw = sc.until(']')?;
            sc.eat(']')?;
            let angles: Vec<L> = raw
                .split(',')
                .map(|t| {
                    let ls = L::parse_letters(t.trim())?;
                    if ls.len() != 1 {
                        return Err(Error::Parse {
                            msg: format!("`{t}` is not a single angle decoration"),
                            pos: 0,
                        });
                    }
                    Ok(ls[0])
                })
                .collect::<Result<_>>()?;
            if angles.is_empty() {
                return Err(sc.err("a node needs at least one angle"));
            }
            let children = if sc.peek() == Some('(') {
                parse_children(sc, |s| parse_angle_tree(s))?
            } else {
                vec![AngleTree::Leaf; angles.len() + 1]
            };
            AngleTree::node(angles, children)
        }
        _ => Err(sc.err("expected `|` or `V[...]`")),
    }
}

fn parse_vertex_tree(sc: &mut Scanner) -> Result<VertexTree> {
    match sc.peek() {
        Some('|') => {
            sc.eat('|')?;
            Ok(VertexTree::Leaf)
        }
        Some('N') => {
            sc.eat('N')?;
            sc.eat('{')?;
            let raw = sc.until('}')?;
            sc.eat('}')?;
            let dec: u64 = raw.trim().parse().map_err(|_| Error::Parse {
                msg: format!("`{raw}` is not a positive integer decoration"),
                pos: sc.pos,
            })?;
            if dec == 0 {
                return Err(sc.err("decorations must be >= 1"));
            }
            let children = if sc.peek() == Some('(') {
                parse_children(sc, parse_vertex_tree)?
            } else {
                vec![VertexTree::Leaf, VertexTree::Leaf]
            };
            VertexTree::node(dec, children)
        }
        _ => Err(sc.err("expected `|` or `N{...}`")),
    }
}

fn parse_binary_tree(sc: &mut Scanner) -> Result<BinaryTree> {
    match sc.peek() {
        Some('|') => {
            sc.eat('|')?;
            Ok(BinaryTree::Leaf)
        }
        Some('B') => {
            sc.eat('B')?;
            sc.eat('{')?;
            let raw = sc.until('}')?;
            sc.eat('}')?;
            let dec = match raw.trim() {
                "x" => Bin::X,
                "y" => Bin::Y,
                other => {
                    return Err(sc.err(format!("`{other}` is not a decoration of {{x, y}}")))
                }
            };
            if sc.peek() == Some('(') {
                let children = parse_children(sc, parse_binary_tree)?;
                if children.len() != 2 {
                    return Err(sc.err("binary nodes take exactly two children"));
                }
                let mut it = children.into_iter();
                Ok(BinaryTree::node(dec, it.next().unwrap(), it.next().unwrap()))
            } else {
                Ok(BinaryTree::corolla(dec))
            }
        }
        _ => Err(sc.err("expected `|` or `B{...}`")),
    }
}

fn parse_children<T>(sc: &mut Scanner, mut item: impl FnMut(&mut Scanner) -> Result<T>) -> Result<Vec<T>> {
    sc.depth += 1;
    if sc.depth > MAX_NESTING {
        return Err(sc.err(format!("trees nested deeper than {MAX_NESTING}")));
    }
    sc.eat('(')?;
    let mut out = vec![item(sc)?];
    while sc.peek() == Some(',') {
        sc.eat(',')?;
        out.push(item(sc)?);
    }
    sc.eat(')')?;
    sc.depth -= 1;
    Ok(out)
}

macro_rules! tree_basis {
    ($ty:ty, $parse:expr) => {
        impl Ord for $ty {
            /// Canonical order: leaf count, then serialized string.
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                self.leaves()
                    .cmp(&other.leaves())
                    .then_with(|| self.to_string().cmp(&other.to_string()))
            }
        }

        impl PartialOrd for $ty {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }

        impl Basis for $ty {
            fn parse_basis(text: &str) -> Result<Self> {
                let mut sc = Scanner::new(text.trim());
                let t = $parse(&mut sc)?;
                sc.finish()?;
                Ok(t)
            }
        }

        impl std::str::FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                Self::parse_basis(s)
            }
        }
    };
}

tree_basis!(PosAngleTree, |sc| parse_angle_tree::<u64>(sc));
tree_basis!(AngleTree<Bin>, |sc| parse_angle_tree::<Bin>(sc));
tree_basis!(VertexTree, parse_vertex_tree);
tree_basis!(BinaryTree, parse_binary_tree);

// ---------------------------------------------------------------------------
// Structural maps
// ---------------------------------------------------------------------------

/// Sums the angle decorations of every vertex into a vertex decoration,
/// keeping the tree structure. Lands in [`VertexTree`] because every angle
/// is at least 1.
pub fn iota(t: &PosAngleTree) -> VertexTree {
    match t {
        AngleTree::Leaf => VertexTree::Leaf,
        AngleTree::Node { angles, children } => {
            let dec = angles.iter().copied().sum();
            VertexTree::node_unchecked(dec, children.iter().map(iota).collect())
        }
    }
}

/// `flat(|) = ()`; `flat(B⁺_n(t₁…t_k)) = n·(flat(t₁) ⊛ … ⊛ flat(t_k))`.
pub fn flatten_series(t: &VertexTree) -> LinComb<PosWord> {
    match t {
        VertexTree::Leaf => LinComb::basis(Word::empty()),
        VertexTree::Node { dec, children } => {
            let mut product = LinComb::basis(PosWord::empty());
            for c in children {
                product = crate::algebra::bilinear_extend(qshuffle, &product, &flatten_series(c));
            }
            product.map_linear(|w| {
                let mut letters = Vec::with_capacity(w.len() + 1);
                letters.push(*dec);
                letters.extend_from_slice(w.letters());
                LinComb::basis(Word::new(letters))
            })
        }
    }
}

/// `flat(|) = ()`; `flat(B⁺_z(t₁,t₂)) = z·(flat(t₁) ⧢ flat(t₂))`.
pub fn flatten_int(t: &BinaryTree) -> LinComb<BinWord> {
    match t {
        BinaryTree::Leaf => LinComb::basis(Word::empty()),
        BinaryTree::Node { dec, left, right } => {
            let product =
                crate::algebra::bilinear_extend(shuffle, &flatten_int(left), &flatten_int(right));
            product.map_linear(|w| {
                let mut letters = Vec::with_capacity(w.len() + 1);
                letters.push(*dec);
                letters.extend_from_slice(w.letters());
                LinComb::basis(Word::new(letters))
            })
        }
    }
}

/// `true` iff `t = |` or the root decoration differs from 1.
pub fn is_convergent_vertex_tree(t: &VertexTree) -> bool {
    match t {
        VertexTree::Leaf => true,
        VertexTree::Node { dec, .. } => *dec != 1,
    }
}

/// `true` iff `t = |` or the root does not have a unique angle decorated 1.
pub fn is_convergent_angle_tree(t: &PosAngleTree) -> bool {
    match t {
        AngleTree::Leaf => true,
        AngleTree::Node { angles, .. } => !(angles.len() == 1 && angles[0] == 1),
    }
}

/// `true` iff `t = |`, or the root is decorated `x` and every internal
/// vertex both of whose children are leaves is decorated `y`. Equivalently,
/// every word of `flatten_int(t)` starts with `x` and ends with `y`.
pub fn is_convergent_binary_tree(t: &BinaryTree) -> bool {
    fn terminal_vertices_are_y(t: &BinaryTree) -> bool {
        match t {
            BinaryTree::Leaf => true,
            BinaryTree::Node { dec, left, right } => {
                if left.is_leaf() && right.is_leaf() {
                    *dec == Bin::Y
                } else {
                    terminal_vertices_are_y(left) && terminal_vertices_are_y(right)
                }
            }
        }
    }
    match t {
        BinaryTree::Leaf => true,
        BinaryTree::Node { dec, .. } => *dec == Bin::X && terminal_vertices_are_y(t),
    }
}

// ---------------------------------------------------------------------------
// Exhaustive enumerations (drive the verification suites and tests)
// ---------------------------------------------------------------------------

/// All Schroeder tree shapes with exactly `leaves` leaves, as lists of child
/// shapes per node; used below to decorate into the three flavours.
fn compositions(n: usize, min_parts: usize) -> Vec<Vec<usize>> {
    // all ways to write n = c_1 + ... + c_m with m >= min_parts, c_i >= 1
    let mut out = Vec::new();
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, min_parts: usize) {
        if rem == 0 {
            if cur.len() >= min_parts {
                out.push(cur.clone());
            }
            return;
        }
        for c in 1..=rem {
            cur.push(c);
            rec(rem - c, cur, out, min_parts);
            cur.pop();
        }
    }
    rec(n, &mut Vec::new(), &mut out, min_parts);
    out
}

/// Every angle tree with at most `max_leaves` leaves, all decorations drawn
/// from `decorations`.
pub fn enumerate_angle_trees(max_leaves: usize, decorations: &[u64]) -> Vec<PosAngleTree> {
    fn with_leaves(n: usize, decorations: &[u64]) -> Vec<PosAngleTree> {
        if n == 1 {
            return vec![AngleTree::Leaf];
        }
        let mut out = Vec::new();
        for comp in compositions(n, 2) {
            let child_choices: Vec<Vec<PosAngleTree>> =
                comp.iter().map(|&c| with_leaves(c, decorations)).collect();
            for children in cartesian(&child_choices) {
                for angles in words_over(decorations, comp.len() - 1) {
                    out.push(AngleTree::node_unchecked(angles, children.clone()));
                }
            }
        }
        out
    }
    let mut out = Vec::new();
    for n in 1..=max_leaves {
        out.extend(with_leaves(n, decorations));
    }
    out.sort();
    out
}

/// Every vertex tree with at most `max_leaves` leaves and decorations in
/// `1..=max_dec` (subject to the decoration >= angles invariant).
pub fn enumerate_vertex_trees(max_leaves: usize, max_dec: u64) -> Vec<VertexTree> {
    fn with_leaves(n: usize, max_dec: u64) -> Vec<VertexTree> {
        if n == 1 {
            return vec![VertexTree::Leaf];
        }
        let mut out = Vec::new();
        for comp in compositions(n, 2) {
            let child_choices: Vec<Vec<VertexTree>> =
                comp.iter().map(|&c| with_leaves(c, max_dec)).collect();
            let min_dec = (comp.len() - 1) as u64;
            for children in cartesian(&child_choices) {
                for dec in min_dec..=max_dec.max(min_dec) {
                    out.push(VertexTree::node_unchecked(dec, children.clone()));
                }
            }
        }
        out
    }
    let mut out = Vec::new();
    for n in 1..=max_leaves {
        out.extend(with_leaves(n, max_dec));
    }
    out.sort();
    out
}

/// Every binary tree with at most `max_leaves` leaves.
pub fn enumerate_binary_trees(max_leaves: usize) -> Vec<BinaryTree> {
    fn with_leaves(n: usize) -> Vec<BinaryTree> {
        if n == 1 {
            return vec![BinaryTree::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for left in with_leaves(k) {
                for right in with_leaves(n - k) {
                    for dec in [Bin::X, Bin::Y] {
                        out.push(BinaryTree::node(dec, left.clone(), right.clone()));
                    }
                }
            }
        }
        out
    }
    let mut out = Vec::new();
    for n in 1..=max_leaves {
        out.extend(with_leaves(n));
    }
    out.sort();
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for item in c {
                let mut row = prefix.clone();
                row.push(item.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}

fn words_over(alphabet: &[u64], len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for prefix in &out {
            for &a in alphabet {
                let mut row = prefix.clone();
                row.push(a);
                next.push(row);
            }
        }
        out = next;
    }
    out
}
