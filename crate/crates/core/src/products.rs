//! Comb decompositions, the grafting action `σ(t, s)` and the tree products.
//!
//! The free tridendriform products on angle- and vertex-decorated Schroeder
//! trees are sums of `σ(t, s)` over `(k, l)`-quasi-shuffles, where `k` and
//! `l` are the right/left comb lengths of the operands; the free dendriform
//! product on binary trees restricts the same action to plain shuffles. The
//! inductive route via the `∨`-grafting recursion is implemented separately
//! in [`tridend_product_inductive`] and kept independent so the two can be
//! checked against each other.

use crate::algebra::{LinComb, Piece};
use crate::error::{Error, Result};
use crate::trees::{AngleTree, BinaryTree, VertexTree};
use crate::words::{
    enumerate_quasi_shuffles, enumerate_shuffles, Bin, Letter, QuasiShuffleMap, ShuffleMap,
};

/// Which comb a decomposition follows.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Trees that the grafting action can take apart and rebuild: ordered
/// children plus one piece of node data (the angle word, the vertex
/// decoration, or the `{x,y}` label).
pub trait GraftTree: crate::algebra::Basis {
    type Data: Clone;

    fn leaf() -> Self;
    fn is_leaf(&self) -> bool;
    /// Children and node data of an internal vertex.
    fn parts(&self) -> Option<(Vec<Self>, Self::Data)>;
    fn assemble(children: Vec<Self>, data: Self::Data) -> Self;
}

/// Trees whose node data merges when a doubleton fiber lands two comb nodes
/// on the same ladder rung: concatenation of angle words, addition of vertex
/// decorations.
pub trait MergeData: GraftTree {
    fn merge(a: &Self::Data, b: &Self::Data) -> Self::Data;
}

impl<L: Letter> GraftTree for AngleTree<L>
where
    AngleTree<L>: crate::algebra::Basis,
{
    type Data = Vec<L>;

    fn leaf() -> Self {
        AngleTree::Leaf
    }

    fn is_leaf(&self) -> bool {
        matches!(self, AngleTree::Leaf)
    }

    fn parts(&self) -> Option<(Vec<Self>, Vec<L>)> {
        match self {
            AngleTree::Leaf => None,
            AngleTree::Node { angles, children } => Some((children.clone(), angles.clone())),
        }
    }

    fn assemble(children: Vec<Self>, data: Vec<L>) -> Self {
        AngleTree::node_unchecked(data, children)
    }
}

impl<L: Letter> MergeData for AngleTree<L>
where
    AngleTree<L>: crate::algebra::Basis,
{
    fn merge(a: &Vec<L>, b: &Vec<L>) -> Vec<L> {
        let mut out = a.clone();
        out.extend_from_slice(b);
        out
    }
}

impl GraftTree for VertexTree {
    type Data = u64;

    fn leaf() -> Self {
        VertexTree::Leaf
    }

    fn is_leaf(&self) -> bool {
        matches!(self, VertexTree::Leaf)
    }

    fn parts(&self) -> Option<(Vec<Self>, u64)> {
        match self {
            VertexTree::Leaf => None,
            VertexTree::Node { dec, children } => Some((children.clone(), *dec)),
        }
    }

    fn assemble(children: Vec<Self>, data: u64) -> Self {
        VertexTree::node_unchecked(data, children)
    }
}

impl MergeData for VertexTree {
    fn merge(a: &u64, b: &u64) -> u64 {
        a.checked_add(*b).expect("vertex decoration overflows u64")
    }
}

impl GraftTree for BinaryTree {
    type Data = Bin;

    fn leaf() -> Self {
        BinaryTree::Leaf
    }

    fn is_leaf(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }

    fn parts(&self) -> Option<(Vec<Self>, Bin)> {
        match self {
            BinaryTree::Leaf => None,
            BinaryTree::Node { dec, left, right } => {
                Some((vec![(**left).clone(), (**right).clone()], *dec))
            }
        }
    }

    fn assemble(children: Vec<Self>, data: Bin) -> Self {
        debug_assert_eq!(children.len(), 2);
        let mut it = children.into_iter();
        BinaryTree::node(data, it.next().unwrap(), it.next().unwrap())
    }
}

/// A tree taken apart along its rightmost or leftmost branch: part `i`
/// collects the children of the `i`-th branch node minus the branch child,
/// together with that node's data.
#[derive(Clone, Debug)]
pub struct CombDecomposition<T: GraftTree> {
    pub side: Side,
    pub parts: Vec<(Vec<T>, T::Data)>,
}

impl<T: GraftTree> CombDecomposition<T> {
    /// Number of nodes on the branch.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Rebuilds the original tree.
    pub fn reassemble(&self) -> T {
        let mut tree = T::leaf();
        for (forest, data) in self.parts.iter().rev() {
            let mut children = Vec::with_capacity(forest.len() + 1);
            match self.side {
                Side::Right => {
                    children.extend(forest.iter().cloned());
                    children.push(tree);
                }
                Side::Left => {
                    children.push(tree);
                    children.extend(forest.iter().cloned());
                }
            }
            tree = T::assemble(children, data.clone());
        }
        tree
    }
}

/// Decomposes `t` along its rightmost (`Side::Right`) or leftmost branch.
pub fn comb_decompose<T: GraftTree>(t: &T, side: Side) -> Result<CombDecomposition<T>> {
    if t.is_leaf() {
        return Err(Error::LeafInput {
            op: "comb decomposition",
        });
    }
    let mut parts = Vec::new();
    let mut cur = t.clone();
    loop {
        let (mut children, data) = cur.parts().expect("walked onto a leaf");
        let next = match side {
            Side::Right => children.pop().expect("internal vertices have children"),
            Side::Left => children.remove(0),
        };
        parts.push((children, data));
        if next.is_leaf() {
            return Ok(CombDecomposition { side, parts });
        }
        cur = next;
    }
}

/// Shared grafting core. `fibers[m-1]` holds the (left, right) preimages of
/// the ladder rung `m`; forests with index `<= k` hang left of the ladder,
/// the others right, every forest keeping its original order.
fn graft_ladder<T: GraftTree>(
    fibers: &[(Option<usize>, Option<usize>)],
    combs: (&CombDecomposition<T>, &CombDecomposition<T>),
    merge: impl Fn(&T::Data, &T::Data) -> T::Data,
) -> T {
    let (t_comb, s_comb) = combs;
    let k = t_comb.len();
    let mut tree = T::leaf();
    for (left, right) in fibers.iter().rev() {
        let mut children = Vec::new();
        let data = match (left, right) {
            (Some(i), None) => {
                let (forest, data) = &t_comb.parts[i - 1];
                children.extend(forest.iter().cloned());
                children.push(tree);
                data.clone()
            }
            (None, Some(j)) => {
                let (forest, data) = &s_comb.parts[j - k - 1];
                children.push(tree);
                children.extend(forest.iter().cloned());
                data.clone()
            }
            (Some(i), Some(j)) => {
                let (forest_t, data_t) = &t_comb.parts[i - 1];
                let (forest_s, data_s) = &s_comb.parts[j - k - 1];
                children.extend(forest_t.iter().cloned());
                children.push(tree);
                children.extend(forest_s.iter().cloned());
                merge(data_t, data_s)
            }
            (None, None) => unreachable!("surjectivity of the map"),
        };
        tree = T::assemble(children, data);
    }
    tree
}

/// The quasi-shuffle action `σ(t, s)` on angle or vertex trees.
pub fn sigma_action<T: MergeData>(sigma: &QuasiShuffleMap, t: &T, s: &T) -> Result<T> {
    let t_comb = comb_decompose(t, Side::Right)?;
    let s_comb = comb_decompose(s, Side::Left)?;
    if sigma.k() != t_comb.len() || sigma.l() != s_comb.len() {
        return Err(Error::ArityMismatch {
            expected: (sigma.k(), sigma.l()),
            found: (t_comb.len(), s_comb.len()),
        });
    }
    let fibers: Vec<_> = (1..=sigma.max()).map(|m| sigma.fiber(m)).collect();
    Ok(graft_ladder(&fibers, (&t_comb, &s_comb), T::merge))
}

/// The shuffle action `σ(t, s)` (singleton fibers only; keeps binary trees
/// binary).
pub fn sigma_action_shuffle<T: GraftTree>(sigma: &ShuffleMap, t: &T, s: &T) -> Result<T> {
    let t_comb = comb_decompose(t, Side::Right)?;
    let s_comb = comb_decompose(s, Side::Left)?;
    if sigma.k() != t_comb.len() || sigma.l() != s_comb.len() {
        return Err(Error::ArityMismatch {
            expected: (sigma.k(), sigma.l()),
            found: (t_comb.len(), s_comb.len()),
        });
    }
    let quasi = sigma.as_quasi();
    let fibers: Vec<_> = (1..=quasi.max()).map(|m| quasi.fiber(m)).collect();
    Ok(graft_ladder(&fibers, (&t_comb, &s_comb), |_, _| {
        unreachable!("shuffles have singleton fibers")
    }))
}

/// Tridendriform product on angle or vertex trees: the sum of `σ(t, s)` over
/// the quasi-shuffles whose fiber of 1 matches `piece` (`{1}` for left,
/// `{k+1}` for right, `{1, k+1}` for middle, everything for full).
pub fn tridend_product<T: MergeData>(t: &T, s: &T, piece: Piece) -> Result<LinComb<T>> {
    if t.is_leaf() || s.is_leaf() {
        return Err(Error::LeafInput {
            op: "tridendriform product",
        });
    }
    let k = comb_decompose(t, Side::Right)?.len();
    let l = comb_decompose(s, Side::Left)?.len();
    let mut out = LinComb::zero();
    for sigma in enumerate_quasi_shuffles(k, l) {
        if piece == Piece::Full || sigma.piece_of_one() == piece {
            out.add_term(sigma_action(&sigma, t, s)?, crate::algebra::rat(1));
        }
    }
    Ok(out)
}

/// Dendriform product on binary trees via the shuffle action. `piece` must
/// be left, right or full.
pub fn dend_product(t: &BinaryTree, s: &BinaryTree, piece: Piece) -> Result<LinComb<BinaryTree>> {
    if t.is_leaf() || s.is_leaf() {
        return Err(Error::LeafInput {
            op: "dendriform product",
        });
    }
    if piece == Piece::Middle {
        return Err(Error::InvalidConfig(
            "binary trees carry no middle product".into(),
        ));
    }
    let k = comb_decompose(t, Side::Right)?.len();
    let l = comb_decompose(s, Side::Left)?.len();
    let mut out = LinComb::zero();
    for sigma in enumerate_shuffles(k, l) {
        let keep = match piece {
            Piece::Full => true,
            p => sigma.as_quasi().piece_of_one() == p,
        };
        if keep {
            out.add_term(sigma_action_shuffle(&sigma, t, s)?, crate::algebra::rat(1));
        }
    }
    Ok(out)
}

/// Tridendriform product computed by the `∨`-grafting recursion:
///
/// - `t ≺ s` replaces the last child of `t` by `(last child) * s`,
/// - `t ≻ s` replaces the first child of `s` by `t * (first child)`,
/// - `t · s` merges the roots around `(last child of t) * (first child of s)`,
///
/// where `*` is the full product with the leaf acting as its unit. Exists as
/// an independent oracle for [`tridend_product`].
pub fn tridend_product_inductive<T: MergeData>(t: &T, s: &T, piece: Piece) -> Result<LinComb<T>> {
    if t.is_leaf() || s.is_leaf() {
        return Err(Error::LeafInput {
            op: "tridendriform product (inductive)",
        });
    }
    Ok(match piece {
        Piece::Left => inductive_prec(t, s),
        Piece::Right => inductive_succ(t, s),
        Piece::Middle => inductive_mid(t, s),
        Piece::Full => inductive_prec(t, s)
            .add(&inductive_succ(t, s))
            .add(&inductive_mid(t, s)),
    })
}

/// `a * b` with the leaf as unit: `| * b = b`, `a * | = a`, `| * | = |`.
fn inductive_star<T: MergeData>(a: &T, b: &T) -> LinComb<T> {
    if a.is_leaf() {
        return LinComb::basis(b.clone());
    }
    if b.is_leaf() {
        return LinComb::basis(a.clone());
    }
    inductive_prec(a, b)
        .add(&inductive_succ(a, b))
        .add(&inductive_mid(a, b))
}

fn inductive_prec<T: MergeData>(t: &T, s: &T) -> LinComb<T> {
    let (children, data) = t.parts().expect("callers exclude leaves");
    let last = children.last().unwrap();
    inductive_star(last, s).map_linear(|replacement| {
        let mut cs = children.clone();
        *cs.last_mut().unwrap() = replacement.clone();
        LinComb::basis(T::assemble(cs, data.clone()))
    })
}

fn inductive_succ<T: MergeData>(t: &T, s: &T) -> LinComb<T> {
    let (children, data) = s.parts().expect("callers exclude leaves");
    let first = children.first().unwrap();
    inductive_star(t, first).map_linear(|replacement| {
        let mut cs = children.clone();
        cs[0] = replacement.clone();
        LinComb::basis(T::assemble(cs, data.clone()))
    })
}

fn inductive_mid<T: MergeData>(t: &T, s: &T) -> LinComb<T> {
    let (t_children, t_data) = t.parts().expect("callers exclude leaves");
    let (s_children, s_data) = s.parts().expect("callers exclude leaves");
    let merged_data = T::merge(&t_data, &s_data);
    inductive_star(t_children.last().unwrap(), s_children.first().unwrap()).map_linear(
        |middle| {
            let mut cs = Vec::with_capacity(t_children.len() + s_children.len() - 1);
            cs.extend_from_slice(&t_children[..t_children.len() - 1]);
            cs.push(middle.clone());
            cs.extend_from_slice(&s_children[1..]);
            LinComb::basis(T::assemble(cs, merged_data.clone()))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    
    use crate::trees::{
        enumerate_angle_trees, enumerate_binary_trees, enumerate_vertex_trees, PosAngleTree,
    };
    use crate::words::QuasiShuffleMap;

    fn vt(text: &str) -> VertexTree {
        text.parse().unwrap()
    }

    fn bt(text: &str) -> BinaryTree {
        text.parse().unwrap()
    }

    fn at(text: &str) -> PosAngleTree {
        text.parse().unwrap()
    }

    fn vcomb(pairs: &[(&str, i64)]) -> LinComb<VertexTree> {
        LinComb::from_terms(pairs.iter().map(|(t, c)| (vt(t), rat(*c))))
    }

    #[test]
    fn comb_decompose_basics() {
        // single node, angle a: one part, forest = [|]
        let t = at("V[7]");
        let d = comb_decompose(&t, Side::Right).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.parts[0].0, vec![AngleTree::Leaf]);
        assert_eq!(d.parts[0].1, vec![7]);
        assert_eq!(d.reassemble(), t);

        // a left comb of depth 3 decomposed on the right: k = 1
        let left_comb = bt("B{x}(B{x}(B{y}(|,|),|),|)");
        let d = comb_decompose(&left_comb, Side::Right).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.reassemble(), left_comb);

        // two-rung right comb: parts [(F1, d1), (F2, d2)]
        let t = vt("N{5}(N{1}(|,|),N{6}(N{2}(|,|),|))");
        let d = comb_decompose(&t, Side::Right).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.parts[0], (vec![vt("N{1}(|,|)")], 5));
        assert_eq!(d.parts[1], (vec![vt("N{2}(|,|)")], 6));
        assert_eq!(d.reassemble(), t);

        // angle-tree analogue: each part carries the node's full angle word
        let t = at("V[7,8](|,V[1](|,|),V[9](|,|))");
        let d = comb_decompose(&t, Side::Right).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.parts[0], (vec![at("|"), at("V[1](|,|)")], vec![7, 8]));
        assert_eq!(d.parts[1], (vec![at("|")], vec![9]));
        assert_eq!(d.reassemble(), t);

        assert!(matches!(
            comb_decompose(&VertexTree::Leaf, Side::Right),
            Err(Error::LeafInput { .. })
        ));
    }

    #[test]
    fn comb_reassembles_everything() {
        for t in enumerate_vertex_trees(4, 3) {
            if t.is_leaf() {
                continue;
            }
            for side in [Side::Left, Side::Right] {
                assert_eq!(comb_decompose(&t, side).unwrap().reassemble(), t);
            }
        }
        for t in enumerate_binary_trees(4) {
            if t.is_leaf() {
                continue;
            }
            for side in [Side::Left, Side::Right] {
                assert_eq!(comb_decompose(&t, side).unwrap().reassemble(), t);
            }
        }
    }

    #[test]
    fn sigma_action_ladder_example() {
        // σ = (1,3,2,3), a (2,2)-quasi-shuffle, on the comb pair from the
        // worked four-forest picture, realized on vertex trees: the top rung
        // carries d₂ + d₄.
        let sigma = QuasiShuffleMap::new(2, 2, vec![1, 3, 2, 3]).unwrap();
        // t: right comb, nodes (d1=5, d2=6), forests F1 = [N{1}], F2 = [N{2}]
        let t = vt("N{5}(N{1}(|,|),N{6}(N{2}(|,|),|))");
        // s: left comb, nodes (d3=7, d4=8), forests F3 = [N{3}], F4 = [N{4}]
        let s = vt("N{7}(N{8}(|,N{4}(|,|)),N{3}(|,|))");
        let result = sigma_action(&sigma, &t, &s).unwrap();
        // ladder: rung1 = d1 with F1 left, rung2 = d3 with F3 right,
        // rung3 = d2+d4 with F2 left and F4 right
        let expected = vt(
            "N{5}(N{1}(|,|),N{7}(N{14}(N{2}(|,|),|,N{4}(|,|)),N{3}(|,|)))",
        );
        assert_eq!(result, expected);
    }

    #[test]
    fn sigma_action_identity_shuffle_makes_right_ladder() {
        let sigma = QuasiShuffleMap::new(1, 1, vec![1, 2]).unwrap();
        let a = at("V[1]");
        let b = at("V[2]");
        assert_eq!(
            sigma_action(&sigma, &a, &b).unwrap(),
            at("V[1](|,V[2](|,|))")
        );
        let wrong = QuasiShuffleMap::new(2, 1, vec![1, 2, 3]).unwrap();
        assert!(matches!(
            sigma_action(&wrong, &a, &b),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn vertex_product_matches_worked_example() {
        // N{2}(N{1},N{1}) ≺ N{2}: three right-grafted terms
        let t = vt("N{2}(N{1},N{1})");
        let s = vt("N{2}");
        assert_eq!(
            tridend_product(&t, &s, Piece::Left).unwrap(),
            vcomb(&[
                ("N{2}(N{1}(|,|),N{1}(|,N{2}(|,|)))", 1),
                ("N{2}(N{1}(|,|),N{2}(N{1}(|,|),|))", 1),
                ("N{2}(N{1}(|,|),N{3}(|,|,|))", 1),
            ])
        );
        assert_eq!(
            tridend_product(&t, &s, Piece::Right).unwrap(),
            vcomb(&[("N{2}(N{2}(N{1}(|,|),N{1}(|,|)),|)", 1)])
        );
        assert_eq!(
            tridend_product(&t, &s, Piece::Middle).unwrap(),
            vcomb(&[("N{4}(N{1}(|,|),N{1}(|,|),|)", 1)])
        );
        // full = left + right + middle
        let full = tridend_product(&t, &s, Piece::Full).unwrap();
        let sum = tridend_product(&t, &s, Piece::Left)
            .unwrap()
            .add(&tridend_product(&t, &s, Piece::Right).unwrap())
            .add(&tridend_product(&t, &s, Piece::Middle).unwrap());
        assert_eq!(full, sum);
    }

    #[test]
    fn angle_corolla_products() {
        let a = at("V[1]");
        let b = at("V[2]");
        assert_eq!(
            tridend_product(&a, &b, Piece::Left).unwrap(),
            LinComb::basis(at("V[1](|,V[2](|,|))"))
        );
        assert_eq!(
            tridend_product(&a, &b, Piece::Right).unwrap(),
            LinComb::basis(at("V[2](V[1](|,|),|)"))
        );
        assert_eq!(
            tridend_product(&a, &b, Piece::Middle).unwrap(),
            LinComb::basis(at("V[1,2](|,|,|)"))
        );
        assert!(matches!(
            tridend_product(&a, &AngleTree::Leaf, Piece::Full),
            Err(Error::LeafInput { .. })
        ));
    }

    #[test]
    fn binary_products() {
        let x = BinaryTree::corolla(Bin::X);
        let y = BinaryTree::corolla(Bin::Y);
        // Y[x] ⋆ Y[y] = right ladder + left ladder
        let full = dend_product(&x, &y, Piece::Full).unwrap();
        assert_eq!(
            full,
            LinComb::from_terms([
                (bt("B{x}(|,B{y}(|,|))"), rat(1)),
                (bt("B{y}(B{x}(|,|),|)"), rat(1)),
            ])
        );
        assert_eq!(
            dend_product(&x, &y, Piece::Left).unwrap(),
            LinComb::basis(bt("B{x}(|,B{y}(|,|))"))
        );
        assert!(dend_product(&x, &y, Piece::Middle).is_err());
    }

    #[test]
    fn binary_full_product_term_count_is_binomial() {
        fn binom(n: usize, k: usize) -> usize {
            (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
        }
        use num_traits::ToPrimitive;
        for t in enumerate_binary_trees(3) {
            for s in enumerate_binary_trees(3) {
                if t.is_leaf() || s.is_leaf() {
                    continue;
                }
                let k = comb_decompose(&t, Side::Right).unwrap().len();
                let l = comb_decompose(&s, Side::Left).unwrap().len();
                let full = dend_product(&t, &s, Piece::Full).unwrap();
                let count: usize = full
                    .iter()
                    .map(|(_, c)| c.to_integer().to_usize().unwrap())
                    .sum();
                assert_eq!(count, binom(k + l, k), "t={t} s={s}");
            }
        }
    }

    #[test]
    fn inductive_oracle_agrees_with_surjection_route() {
        // angle trees, <= 3 leaves each, decorations {1,2}
        let angle = enumerate_angle_trees(3, &[1, 2]);
        for t in &angle {
            for s in &angle {
                if t.is_leaf() || s.is_leaf() {
                    continue;
                }
                for piece in [Piece::Left, Piece::Right, Piece::Middle, Piece::Full] {
                    assert_eq!(
                        tridend_product(t, s, piece).unwrap(),
                        tridend_product_inductive(t, s, piece).unwrap(),
                        "t={t} s={s} {piece:?}"
                    );
                }
            }
        }
        // vertex trees too
        let vertex = enumerate_vertex_trees(3, 3);
        for t in &vertex {
            for s in &vertex {
                if t.is_leaf() || s.is_leaf() {
                    continue;
                }
                for piece in [Piece::Left, Piece::Right, Piece::Middle, Piece::Full] {
                    assert_eq!(
                        tridend_product(t, s, piece).unwrap(),
                        tridend_product_inductive(t, s, piece).unwrap(),
                        "t={t} s={s} {piece:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn inductive_base_cases() {
        // Y[a] ≻ Y[b] = left ladder, from the recursion base
        let a = at("V[1]");
        let b = at("V[2]");
        assert_eq!(
            tridend_product_inductive(&a, &b, Piece::Right).unwrap(),
            LinComb::basis(at("V[2](V[1](|,|),|)"))
        );
        // the worked vertex example through the inductive route
        assert_eq!(
            tridend_product_inductive(&vt("N{2}(N{1},N{1})"), &vt("N{2}"), Piece::Left).unwrap(),
            tridend_product(&vt("N{2}(N{1},N{1})"), &vt("N{2}"), Piece::Left).unwrap()
        );
    }

    #[test]
    fn dendriform_inductive_recursion_agrees() {
        // binary analogue of the grafting recursion, as a second oracle
        fn star(a: &BinaryTree, b: &BinaryTree) -> LinComb<BinaryTree> {
            if a.is_leaf() {
                return LinComb::basis(b.clone());
            }
            if b.is_leaf() {
                return LinComb::basis(a.clone());
            }
            prec(a, b).add(&succ(a, b))
        }
        fn prec(t: &BinaryTree, s: &BinaryTree) -> LinComb<BinaryTree> {
            let (children, dec) = t.parts().unwrap();
            star(&children[1], s).map_linear(|r| {
                LinComb::basis(BinaryTree::node(dec, children[0].clone(), r.clone()))
            })
        }
        fn succ(t: &BinaryTree, s: &BinaryTree) -> LinComb<BinaryTree> {
            let (children, dec) = s.parts().unwrap();
            star(t, &children[0]).map_linear(|r| {
                LinComb::basis(BinaryTree::node(dec, r.clone(), children[1].clone()))
            })
        }
        for t in enumerate_binary_trees(3) {
            for s in enumerate_binary_trees(3) {
                if t.is_leaf() || s.is_leaf() {
                    continue;
                }
                assert_eq!(dend_product(&t, &s, Piece::Left).unwrap(), prec(&t, &s));
                assert_eq!(dend_product(&t, &s, Piece::Right).unwrap(), succ(&t, &s));
            }
        }
    }

    #[test]
    fn products_preserve_convergence() {
        use crate::trees::{
            is_convergent_angle_tree, is_convergent_binary_tree, is_convergent_vertex_tree,
        };
        let vertex: Vec<VertexTree> = enumerate_vertex_trees(4, 3)
            .into_iter()
            .filter(|t| !t.is_leaf() && is_convergent_vertex_tree(t))
            .collect();
        for t in &vertex {
            for s in &vertex {
                for (tree, _) in tridend_product(t, s, Piece::Full).unwrap().iter() {
                    assert!(is_convergent_vertex_tree(tree), "t={t} s={s} term={tree}");
                }
            }
        }
        let angle: Vec<PosAngleTree> = enumerate_angle_trees(3, &[1, 2])
            .into_iter()
            .filter(|t| !t.is_leaf() && is_convergent_angle_tree(t))
            .collect();
        for t in &angle {
            for s in &angle {
                for (tree, _) in tridend_product(t, s, Piece::Full).unwrap().iter() {
                    assert!(is_convergent_angle_tree(tree), "t={t} s={s} term={tree}");
                }
            }
        }
        let binary: Vec<BinaryTree> = enumerate_binary_trees(4)
            .into_iter()
            .filter(|t| !t.is_leaf() && is_convergent_binary_tree(t))
            .collect();
        for t in &binary {
            for s in &binary {
                for (tree, _) in dend_product(t, s, Piece::Full).unwrap().iter() {
                    assert!(is_convergent_binary_tree(tree), "t={t} s={s} term={tree}");
                }
            }
        }
    }

    #[test]
    fn randomized_oracle_agreement_on_larger_trees() {
        use crate::verify::SplitMix64;
        let mut rng = SplitMix64::new(0x0_5add_0e1e);
        for _ in 0..100 {
            let t_leaves = 2 + rng.below(3) as usize;
            let s_leaves = 2 + rng.below(3) as usize;
            let t = random_angle_tree(&mut rng, t_leaves);
            let s = random_angle_tree(&mut rng, s_leaves);
            for piece in [Piece::Left, Piece::Right, Piece::Middle, Piece::Full] {
                assert_eq!(
                    tridend_product(&t, &s, piece).unwrap(),
                    tridend_product_inductive(&t, &s, piece).unwrap(),
                    "t={t} s={s} {piece:?}"
                );
            }
            let (t, s) = (iota_of(&t), iota_of(&s));
            for piece in [Piece::Left, Piece::Right, Piece::Middle, Piece::Full] {
                assert_eq!(
                    tridend_product(&t, &s, piece).unwrap(),
                    tridend_product_inductive(&t, &s, piece).unwrap(),
                    "t={t} s={s} {piece:?}"
                );
            }
        }
    }

    fn iota_of(t: &PosAngleTree) -> VertexTree {
        crate::trees::iota(t)
    }

    // random angle tree with the given number of leaves (>= 2), decorations
    // in {1, 2, 3}
    fn random_angle_tree(rng: &mut crate::verify::SplitMix64, leaves: usize) -> PosAngleTree {
        if leaves == 1 {
            return AngleTree::Leaf;
        }
        let arity = 2 + rng.below((leaves - 1).min(3) as u64) as usize;
        // split `leaves` into `arity` positive parts
        let mut parts = vec![1usize; arity];
        for _ in 0..leaves - arity {
            let i = rng.below(arity as u64) as usize;
            parts[i] += 1;
        }
        let children = parts
            .iter()
            .map(|&p| random_angle_tree(rng, p))
            .collect::<Vec<_>>();
        let angles = (0..arity - 1).map(|_| 1 + rng.below(3)).collect();
        AngleTree::node(angles, children).unwrap()
    }
}
