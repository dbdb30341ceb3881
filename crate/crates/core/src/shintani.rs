//! Shintani zeta values from convergent binary trees.
//!
//! A convergent binary tree slices into segments: maximal chains of
//! non-bifurcated `x`-vertices ending at a bifurcated-or-`y` vertex. The
//! segment lengths give the exponent word `ω_t`, and the 0/1 matrix `A_t`
//! records which bifurcation-set vertex sits below which `y`-vertex. The
//! truncated multi-sum of the resulting Shintani zeta function reproduces
//! the integral arborified value of the tree.

use crate::error::{Error, Result};
use crate::trees::{is_convergent_binary_tree, BinaryTree};
use crate::words::{Bin, PosWord, Word};

/// Address of a vertex: the left/right path from the root (`0` = left).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexPath(Vec<u8>);

impl VertexPath {
    pub fn root() -> Self {
        VertexPath(Vec::new())
    }

    fn child(&self, branch: u8) -> Self {
        let mut steps = self.0.clone();
        steps.push(branch);
        VertexPath(steps)
    }

    fn parent(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(VertexPath(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// Tree order with the root minimal: ancestor-or-equal.
    pub fn is_below(&self, other: &VertexPath) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn label(&self) -> String {
        if self.0.is_empty() {
            "ε".to_string()
        } else {
            self.0.iter().map(|b| char::from(b'0' + b)).collect()
        }
    }
}

impl std::fmt::Display for VertexPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Internal vertices in depth-first left-to-right order, with decoration and
/// the number of internal children.
fn internal_vertices(t: &BinaryTree) -> Vec<(VertexPath, Bin, usize)> {
    let mut out = Vec::new();
    fn walk(t: &BinaryTree, path: VertexPath, out: &mut Vec<(VertexPath, Bin, usize)>) {
        if let BinaryTree::Node { dec, left, right } = t {
            let internal_children =
                usize::from(!left.is_leaf()) + usize::from(!right.is_leaf());
            out.push((path.clone(), *dec, internal_children));
            walk(left, path.child(0), out);
            walk(right, path.child(1), out);
        }
    }
    walk(t, VertexPath::root(), &mut out);
    out
}

/// `B(t)`: the `y`-vertices together with the bifurcated `x`-vertices (both
/// children internal), in depth-first order.
pub fn bifurcation_set(t: &BinaryTree) -> Result<Vec<VertexPath>> {
    if t.is_leaf() {
        return Err(Error::LeafInput {
            op: "bifurcation set",
        });
    }
    Ok(internal_vertices(t)
        .into_iter()
        .filter(|(_, dec, internal_children)| *dec == Bin::Y || *internal_children == 2)
        .map(|(path, _, _)| path)
        .collect())
}

/// One segment: the chain of non-`B(t)` vertices descending to its endpoint
/// `v ∈ B(t)`, root-side first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    pub vertices: Vec<VertexPath>,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The endpoint in `B(t)`.
    pub fn end(&self) -> &VertexPath {
        self.vertices.last().expect("segments are nonempty")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SegmentDecomposition {
    pub bifurcation_set: Vec<VertexPath>,
    /// One segment per bifurcation-set vertex, in the same order.
    pub segments: Vec<Segment>,
}

/// Slices `t` into its segments: for each `v ∈ B(t)`, walk up through
/// vertices outside `B(t)` until the parent is in `B(t)` or the root is
/// reached.
pub fn segment_decomposition(t: &BinaryTree) -> Result<SegmentDecomposition> {
    let bset = bifurcation_set(t)?;
    let in_b: std::collections::BTreeSet<&VertexPath> = bset.iter().collect();
    let segments = bset
        .iter()
        .map(|v| {
            let mut vertices = vec![v.clone()];
            let mut cur = v.clone();
            while let Some(p) = cur.parent() {
                if in_b.contains(&p) {
                    break;
                }
                vertices.insert(0, p.clone());
                cur = p;
            }
            Segment { vertices }
        })
        .collect();
    Ok(SegmentDecomposition {
        bifurcation_set: bset,
        segments,
    })
}

/// The pair `(A_t, ω_t)`: rows indexed by `B(t)`, columns by the
/// `y`-vertices, both in depth-first order; `a_ij = 1` iff row vertex `i`
/// lies on the root path of column vertex `j` (inclusive); `ω_i` is the
/// length of the segment ending at row vertex `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShintaniDatum {
    /// `|B(t)| × |ν_y(t)|` matrix over {0, 1}.
    pub matrix: Vec<Vec<u8>>,
    pub exponents: PosWord,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl ShintaniDatum {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        let omega: Vec<String> = self
            .exponents
            .letters()
            .iter()
            .map(u64::to_string)
            .collect();
        let quote = |v: &[String]| {
            v.iter()
                .map(|s| format!("\"{}\"", crate::algebra::json_escape(s)))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{{\"matrix\":[{}],\"omega\":[{}],\"row_labels\":[{}],\"col_labels\":[{}]}}",
            rows.join(","),
            omega.join(","),
            quote(&self.row_labels),
            quote(&self.col_labels)
        )
    }
}

/// Extracts the Shintani datum of a convergent binary tree.
pub fn shintani_datum(t: &BinaryTree) -> Result<ShintaniDatum> {
    if !is_convergent_binary_tree(t) || t.is_leaf() {
        return Err(Error::NotConvergent(t.to_string()));
    }
    let decomposition = segment_decomposition(t)?;
    let rows = &decomposition.bifurcation_set;
    let cols: Vec<VertexPath> = internal_vertices(t)
        .into_iter()
        .filter(|(_, dec, _)| *dec == Bin::Y)
        .map(|(path, _, _)| path)
        .collect();
    let matrix: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| u8::from(r.is_below(c))).collect())
        .collect();
    let exponents = Word::new(
        decomposition
            .segments
            .iter()
            .map(|s| s.len() as u64)
            .collect(),
    );

    // membership in Σ_{n×r}(ℝ≥0): no zero row, no zero column
    for (i, row) in matrix.iter().enumerate() {
        assert!(
            row.contains(&1),
            "row {i} of the Shintani matrix is zero"
        );
    }
    for j in 0..cols.len() {
        assert!(
            matrix.iter().any(|r| r[j] == 1),
            "column {j} of the Shintani matrix is zero"
        );
    }
    // segments partition the internal vertices
    let covered: usize = decomposition.segments.iter().map(Segment::len).sum();
    assert_eq!(
        covered,
        t.internal_vertices(),
        "segments must cover every internal vertex exactly once"
    );

    Ok(ShintaniDatum {
        matrix,
        exponents,
        row_labels: rows.iter().map(VertexPath::label).collect(),
        col_labels: cols.iter().map(VertexPath::label).collect(),
    })
}

/// Truncated Shintani sum
/// `Σ_{1 ≤ m₁,…,m_r ≤ N} Π_i (a_{i1}m₁ + … + a_{ir}m_r)^{−ω_i}`.
///
/// Cost is `N^r`; capped at 3 columns. Each linear form is read from a
/// precomputed power table, and rows are folded in at the loop level where
/// their support completes, so the innermost loop touches only the rows
/// involving the last variable.
pub fn shintani_eval(datum: &ShintaniDatum, n: u64) -> Result<f64> {
    let r = datum.cols();
    if r > 3 {
        return Err(Error::TooManyColumns { count: r, max: 3 });
    }
    if r == 0 {
        return Ok(1.0);
    }
    let n = n as usize;
    let rows = datum.rows();
    let supports: Vec<Vec<usize>> = datum
        .matrix
        .iter()
        .map(|row| (0..r).filter(|&j| row[j] == 1).collect())
        .collect();
    let last_col: Vec<usize> = supports.iter().map(|s| *s.last().unwrap()).collect();
    // tables[i][s] = s^{-ω_i}, s up to |support| * N
    let tables: Vec<Vec<f64>> = (0..rows)
        .map(|i| {
            let e = datum.exponents.letters()[i];
            let top = supports[i].len() * n;
            let mut t = vec![0.0f64; top + 1];
            for s in 1..=top {
                t[s] = if e <= i32::MAX as u64 {
                    (s as f64).powi(-(e as i32))
                } else {
                    (s as f64).powf(-(e as f64))
                };
            }
            t
        })
        .collect();

    // rows grouped by the level at which their linear form completes
    let rows_at: Vec<Vec<usize>> = (0..r)
        .map(|j| (0..rows).filter(|&i| last_col[i] == j).collect())
        .collect();

    fn level(
        j: usize,
        r: usize,
        n: usize,
        partial: f64,
        sums: &mut Vec<usize>,
        supports: &[Vec<usize>],
        rows_at: &[Vec<usize>],
        tables: &[Vec<f64>],
    ) -> f64 {
        if j + 1 == r {
            return innermost(partial, n, sums, &rows_at[j], tables);
        }
        let mut acc = 0.0f64;
        for m in 1..=n {
            let mut p = partial;
            for &i in &rows_at[j] {
                p *= tables[i][sums[i] + m];
            }
            for i in 0..sums.len() {
                if supports[i].contains(&j) && !rows_at[j].contains(&i) {
                    sums[i] += m;
                }
            }
            acc += level(j + 1, r, n, p, sums, supports, rows_at, tables);
            for i in 0..sums.len() {
                if supports[i].contains(&j) && !rows_at[j].contains(&i) {
                    sums[i] -= m;
                }
            }
        }
        acc
    }

    /// Innermost loop: walks the completed-row tables on contiguous slices,
    /// four partial accumulators, fixed summation order.
    fn innermost(partial: f64, n: usize, sums: &[usize], rows: &[usize], tables: &[Vec<f64>]) -> f64 {
        let slices: Vec<&[f64]> = rows
            .iter()
            .map(|&i| &tables[i][sums[i] + 1..=sums[i] + n])
            .collect();
        let mut acc = [0.0f64; 4];
        match slices.len() {
            0 => return partial * n as f64,
            1 => {
                let a = slices[0];
                for (idx, &x) in a.iter().enumerate() {
                    acc[idx & 3] += x;
                }
            }
            2 => {
                let (a, b) = (slices[0], slices[1]);
                for idx in 0..n {
                    acc[idx & 3] += a[idx] * b[idx];
                }
            }
            3 => {
                let (a, b, c) = (slices[0], slices[1], slices[2]);
                for idx in 0..n {
                    acc[idx & 3] += a[idx] * b[idx] * c[idx];
                }
            }
            _ => {
                for idx in 0..n {
                    let mut p = 1.0f64;
                    for s in &slices {
                        p *= s[idx];
                    }
                    acc[idx & 3] += p;
                }
            }
        }
        partial * (acc[0] + acc[1] + acc[2] + acc[3])
    }

    let mut sums = vec![0usize; rows];
    Ok(level(0, r, n, 1.0, &mut sums, &supports, &rows_at, &tables))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{azv_integral, IntegralPath, QuadEvalConfig, SeriesEvalConfig};
    use crate::words::Word;

    fn bt(text: &str) -> BinaryTree {
        text.parse().unwrap()
    }

    /// The seven-vertex tree whose matrix is the worked 6×4 display.
    fn display_tree() -> BinaryTree {
        bt("B{x}(B{x}(B{y},B{y}),B{y}(|,B{x}(|,B{y})))")
    }

    #[test]
    fn bifurcation_set_examples() {
        // worked display tree: six elements (the x-vertex above the deepest
        // y is not bifurcated)
        assert_eq!(bifurcation_set(&display_tree()).unwrap().len(), 6);
        // corolla pair: both y-vertices plus the bifurcated root
        let b = bifurcation_set(&bt("B{x}(B{y},B{y})")).unwrap();
        assert_eq!(
            b.iter().map(VertexPath::label).collect::<Vec<_>>(),
            vec!["ε", "0", "1"]
        );
        // right ladder: only the y-vertex; the root rides on its segment
        let b = bifurcation_set(&bt("B{x}(|,B{y})")).unwrap();
        assert_eq!(b.iter().map(VertexPath::label).collect::<Vec<_>>(), vec!["1"]);
        assert!(bifurcation_set(&BinaryTree::Leaf).is_err());
    }

    #[test]
    fn segment_lengths() {
        // display tree: segment lengths (1,1,1,1,1,2) in DFS row order
        let d = segment_decomposition(&display_tree()).unwrap();
        let lens: Vec<usize> = d.segments.iter().map(Segment::len).collect();
        assert_eq!(lens, vec![1, 1, 1, 1, 1, 2]);
        // right ladder: one segment of length 2 through the root
        let d = segment_decomposition(&bt("B{x}(|,B{y})")).unwrap();
        assert_eq!(d.segments.len(), 1);
        assert_eq!(d.segments[0].len(), 2);
        assert_eq!(d.segments[0].vertices[0].label(), "ε");
        // corolla pair: three unit segments
        let d = segment_decomposition(&bt("B{x}(B{y},B{y})")).unwrap();
        assert!(d.segments.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn datum_of_display_tree_matches_known_matrix() {
        let datum = shintani_datum(&display_tree()).unwrap();
        assert_eq!(datum.rows(), 6);
        assert_eq!(datum.cols(), 4);
        // the known 6×4 matrix, re-expressed in depth-first row/column
        // order: rows (root, 0, 00, 01, 1, 111), columns (00, 01, 1, 111)
        assert_eq!(
            datum.matrix,
            vec![
                vec![1, 1, 1, 1],
                vec![1, 1, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 1],
                vec![0, 0, 0, 1],
            ]
        );
        assert_eq!(datum.exponents, Word::new(vec![1, 1, 1, 1, 1, 2]));
        // multiset of (row, exponent) pairs matches the published order
        // (red, yellow, cyan, blue, brown, green) with ω = 111211
        let mut ours: Vec<(Vec<u8>, u64)> = datum
            .matrix
            .iter()
            .cloned()
            .zip(datum.exponents.letters().iter().copied())
            .collect();
        // published columns are (red, yellow, blue, brown) = our (00, 01,
        // 111, 1): swap the last two columns
        let mut published: Vec<(Vec<u8>, u64)> = vec![
            (vec![1, 0, 0, 0], 1),
            (vec![0, 1, 0, 0], 1),
            (vec![1, 1, 0, 0], 1),
            (vec![0, 0, 1, 0], 2),
            (vec![0, 0, 1, 1], 1),
            (vec![1, 1, 1, 1], 1),
        ]
        .into_iter()
        .map(|(row, e)| (vec![row[0], row[1], row[3], row[2]], e))
        .collect();
        ours.sort();
        published.sort();
        assert_eq!(ours, published);
    }

    #[test]
    fn datum_small_examples() {
        let datum = shintani_datum(&bt("B{x}(B{y},B{y})")).unwrap();
        assert_eq!(datum.matrix, vec![vec![1, 1], vec![1, 0], vec![0, 1]]);
        assert_eq!(datum.exponents, Word::new(vec![1, 1, 1]));

        let datum = shintani_datum(&bt("B{x}(|,B{y})")).unwrap();
        assert_eq!(datum.matrix, vec![vec![1]]);
        assert_eq!(datum.exponents, Word::new(vec![2]));

        assert!(shintani_datum(&bt("B{y}(|,|)")).is_err());
    }

    #[test]
    fn eval_reduces_to_zeta_two_on_trivial_datum() {
        let datum = ShintaniDatum {
            matrix: vec![vec![1]],
            exponents: Word::new(vec![2]),
            row_labels: vec!["ε".into()],
            col_labels: vec!["1".into()],
        };
        let v = shintani_eval(&datum, 10_000).unwrap();
        assert!((v - 1.644_934_066_848_226_4).abs() < 2e-4);
    }

    #[test]
    fn eval_matches_double_zeta_target() {
        // Σ 1/(n m (n+m)) = 2ζ(2,1) = 2ζ(3) ≈ 2.4041138
        let datum = shintani_datum(&bt("B{x}(B{y},B{y})")).unwrap();
        let coarse = shintani_eval(&datum, 2_000).unwrap();
        assert!((coarse - 2.404_113_806_319_188_6).abs() < 1e-2, "got {coarse}");
        // truncation stability
        let coarser = shintani_eval(&datum, 1_000).unwrap();
        assert!((coarse - coarser).abs() < 1e-2);
    }

    #[test]
    fn eval_row_permutation_invariant() {
        let datum = shintani_datum(&bt("B{x}(B{y},B{y})")).unwrap();
        let permuted = ShintaniDatum {
            matrix: vec![
                datum.matrix[2].clone(),
                datum.matrix[0].clone(),
                datum.matrix[1].clone(),
            ],
            exponents: Word::new(vec![
                datum.exponents.letters()[2],
                datum.exponents.letters()[0],
                datum.exponents.letters()[1],
            ]),
            row_labels: vec!["a".into(), "b".into(), "c".into()],
            col_labels: datum.col_labels.clone(),
        };
        let a = shintani_eval(&datum, 300).unwrap();
        let b = shintani_eval(&permuted, 300).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn eval_column_cap() {
        let datum = ShintaniDatum {
            matrix: vec![vec![1, 1, 1, 1]],
            exponents: Word::new(vec![5]),
            row_labels: vec!["ε".into()],
            col_labels: vec!["a".into(), "b".into(), "c".into(), "d".into()],
        };
        assert!(matches!(
            shintani_eval(&datum, 10),
            Err(Error::TooManyColumns { .. })
        ));
    }

    #[test]
    fn theorem_series_representation_small_trees() {
        // ζ_{A_t}(ω_t) ≈ ζ_Int^T(t) for a few convergent trees with <= 2
        // y-vertices (the 3-column case is exercised by the acceptance suite)
        let series_cfg = SeriesEvalConfig::new(100_000).unwrap();
        let quad_cfg = QuadEvalConfig::default();
        for text in ["B{x}(B{y},B{y})", "B{x}(|,B{y})", "B{x}(B{y},B{x}(|,B{y}))"] {
            let t = bt(text);
            let datum = shintani_datum(&t).unwrap();
            let lhs = shintani_eval(&datum, 2_000).unwrap();
            let rhs = azv_integral(&t, IntegralPath::Series, &series_cfg, &quad_cfg)
                .unwrap()
                .value;
            assert!((lhs - rhs).abs() < 1e-2, "{text}: {lhs} vs {rhs}");
        }
    }
}
