//! The identity-verification harness behind `dendrizeta verify`.
//!
//! Three suites tie the modules together: exhaustive axiom checks in exact
//! arithmetic, exact morphism checks for the structural maps, and numeric
//! checks comparing independent evaluation routes. Every numeric threshold
//! comes from `tolerances.conf`, checked in next to this crate.

use std::time::Instant;

use crate::algebra::{rat, Augmented, Basis, LinComb, Piece};
use crate::error::{Error, Result};
use crate::numerics::{
    azv_integral, azv_series, eval_lincomb_words, mzv_integral_quad, mzv_series, IntegralPath,
    QuadEvalConfig, SeriesEvalConfig,
};
use crate::products::{
    comb_decompose, dend_product, sigma_action, tridend_product, tridend_product_inductive,
    MergeData, Side,
};
use crate::shintani::{shintani_datum, shintani_eval};
use crate::trees::{
    enumerate_angle_trees, enumerate_binary_trees, enumerate_vertex_trees, flatten_int,
    flatten_series, iota, is_convergent_angle_tree, is_convergent_binary_tree,
    is_convergent_vertex_tree, AngleTree, BinaryTree, PosAngleTree, VertexTree,
};
use crate::words::{
    enumerate_quasi_shuffles, is_convergent_series_word, qshuffle, qshuffle_left, qshuffle_mid,
    qshuffle_right, shuffle, shuffle_left, shuffle_right, Bin, BinWord, PosWord, Word,
};

/// Outcome of one named check. A failure always carries enough detail to
/// re-run the offending case from the CLI.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckReport {
    fn finish(name: &str, started: Instant, failure: Option<String>, detail: String) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: failure.unwrap_or(detail),
            seconds: started.elapsed().as_secs_f64(),
        }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {} ({:.2}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.detail
        )
    }
}

/// Thresholds and default cutoffs, parsed from `tolerances.conf`.
#[derive(Clone, Debug)]
pub struct Tolerances {
    pub series_cutoff: u64,
    pub shintani_cutoff: u64,
    pub quad_nodes: usize,
    pub zeta2_reference: f64,
    pub zeta2_tail_cap: f64,
    pub kontsevich_depth2: f64,
    pub kontsevich_depth3: f64,
    pub product_relation: f64,
    pub shintani_gap: f64,
    pub qshuffle_eval_slack: f64,
    pub shuffle_quad_slack: f64,
}

const TOLERANCES_FILE: &str = include_str!("../tolerances.conf");

/// The checked-in defaults.
pub fn default_tolerances() -> Tolerances {
    let get = |key: &str| -> f64 {
        TOLERANCES_FILE
            .lines()
            .filter_map(|line| {
                let line = line.split('#').next().unwrap_or("").trim();
                let (k, v) = line.split_once('=')?;
                (k.trim() == key).then(|| v.trim().parse::<f64>())
            })
            .next()
            .unwrap_or_else(|| panic!("tolerances.conf is missing `{key}`"))
            .expect("malformed value in tolerances.conf")
    };
    Tolerances {
        series_cutoff: get("series_cutoff") as u64,
        shintani_cutoff: get("shintani_cutoff") as u64,
        quad_nodes: get("quad_nodes") as usize,
        zeta2_reference: get("zeta2_reference"),
        zeta2_tail_cap: get("zeta2_tail_cap"),
        kontsevich_depth2: get("kontsevich_depth2"),
        kontsevich_depth3: get("kontsevich_depth3"),
        product_relation: get("product_relation"),
        shintani_gap: get("shintani_gap"),
        qshuffle_eval_slack: get("qshuffle_eval_slack"),
        shuffle_quad_slack: get("shuffle_quad_slack"),
    }
}

// ---------------------------------------------------------------------------
// Axiom suite
// ---------------------------------------------------------------------------

type LcProduct<B> = Box<dyn Fn(&LinComb<B>, &LinComb<B>) -> Result<LinComb<B>>>;

fn lc_split<B: Basis + 'static>(
    f: impl Fn(&B, &B) -> Result<LinComb<B>> + 'static,
) -> LcProduct<B> {
    Box::new(move |a, b| crate::algebra::try_bilinear_extend(|u, v| f(u, v), a, b))
}

/// Checks the seven tridendriform relations (or the three dendriform ones
/// when `mid` is absent) over all triples of `elems`.
fn check_axioms<B: Basis + 'static>(
    name: &str,
    elems: &[B],
    prec: LcProduct<B>,
    succ: LcProduct<B>,
    mid: Option<LcProduct<B>>,
) -> CheckReport {
    let started = Instant::now();
    let result = (|| -> Result<(usize, Option<String>)> {
        let lcs: Vec<LinComb<B>> = elems.iter().cloned().map(LinComb::basis).collect();
        let star = |a: &LinComb<B>, b: &LinComb<B>| -> Result<LinComb<B>> {
            let mut out = prec(a, b)?.add(&succ(a, b)?);
            if let Some(mid) = &mid {
                out = out.add(&mid(a, b)?);
            }
            Ok(out)
        };
        let mut cases = 0usize;
        for x in &lcs {
            for y in &lcs {
                for z in &lcs {
                    cases += 1;
                    let mut relations: Vec<(&str, LinComb<B>, LinComb<B>)> = vec![
                        ("(x<y)<z = x<(y*z)", prec(&prec(x, y)?, z)?, prec(x, &star(y, z)?)?),
                        ("(x>y)<z = x>(y<z)", prec(&succ(x, y)?, z)?, succ(x, &prec(y, z)?)?),
                        ("(x*y)>z = x>(y>z)", succ(&star(x, y)?, z)?, succ(x, &succ(y, z)?)?),
                    ];
                    if let Some(mid) = &mid {
                        relations.extend([
                            ("(x>y).z = x>(y.z)", mid(&succ(x, y)?, z)?, succ(x, &mid(y, z)?)?),
                            ("(x<y).z = x.(y>z)", mid(&prec(x, y)?, z)?, mid(x, &succ(y, z)?)?),
                            ("(x.y)<z = x.(y<z)", prec(&mid(x, y)?, z)?, mid(x, &prec(y, z)?)?),
                            ("(x.y).z = x.(y.z)", mid(&mid(x, y)?, z)?, mid(x, &mid(y, z)?)?),
                        ]);
                    }
                    for (label, lhs, rhs) in relations {
                        if lhs != rhs {
                            return Ok((cases, Some(format!(
                                "{label} fails for x=({x}), y=({y}), z=({z}): lhs = {lhs}, rhs = {rhs}"
                            ))));
                        }
                    }
                }
            }
        }
        Ok((cases, None))
    })();
    let relations = if mid.is_some() { 7 } else { 3 };
    match result {
        Ok((cases, failure)) => CheckReport::finish(
            name,
            started,
            failure,
            format!("{cases} triples x {relations} relations, exact"),
        ),
        Err(e) => CheckReport::finish(name, started, Some(format!("errored: {e}")), String::new()),
    }
}

/// Exhaustive (tri)dendriform axiom checks on words, angle trees, vertex
/// trees and binary trees, plus the surjection-vs-recursion oracle agreement
/// and the convergence-preservation property. `max_leaves` caps the tree
/// enumerations (at most 4); `decorations` supplies letters and angle
/// decorations.
pub fn run_axiom_suite(max_leaves: usize, decorations: &[u64]) -> Result<Vec<CheckReport>> {
    if max_leaves > 4 {
        return Err(Error::InvalidConfig(
            "axiom suite caps at 4 leaves (cost guard)".into(),
        ));
    }
    let mut reports = Vec::new();
    let vacuous = |name: &str| CheckReport {
        name: name.to_string(),
        passed: true,
        detail: "vacuous: 0 cases (empty decoration set)".into(),
        seconds: 0.0,
    };

    if decorations.is_empty() {
        reports.push(vacuous("tridendriform axioms / words"));
    } else {
        let words = nonempty_pos_words(2, decorations);
        reports.push(check_axioms(
            "tridendriform axioms / words",
            &words,
            lc_split(qshuffle_left),
            lc_split(qshuffle_right),
            Some(lc_split(qshuffle_mid)),
        ));
    }

    let bin_words: Vec<BinWord> = nonempty_bin_words(2);
    reports.push(check_axioms(
        "dendriform axioms / binary words",
        &bin_words,
        lc_split(shuffle_left),
        lc_split(shuffle_right),
        None,
    ));

    if decorations.is_empty() {
        reports.push(vacuous("tridendriform axioms / angle trees"));
        reports.push(vacuous("tridendriform axioms / vertex trees"));
    } else {
        let angle: Vec<PosAngleTree> = enumerate_angle_trees(max_leaves, decorations)
            .into_iter()
            .filter(|t| !t.is_leaf())
            .collect();
        reports.push(check_axioms(
            "tridendriform axioms / angle trees",
            &angle,
            lc_split(|t: &PosAngleTree, s| tridend_product(t, s, Piece::Left)),
            lc_split(|t: &PosAngleTree, s| tridend_product(t, s, Piece::Right)),
            Some(lc_split(|t: &PosAngleTree, s| {
                tridend_product(t, s, Piece::Middle)
            })),
        ));

        let max_dec = decorations.iter().copied().max().unwrap_or(2) + 1;
        let vertex: Vec<VertexTree> = enumerate_vertex_trees(max_leaves, max_dec)
            .into_iter()
            .filter(|t| !t.is_leaf())
            .collect();
        reports.push(check_axioms(
            "tridendriform axioms / vertex trees",
            &vertex,
            lc_split(|t: &VertexTree, s| tridend_product(t, s, Piece::Left)),
            lc_split(|t: &VertexTree, s| tridend_product(t, s, Piece::Right)),
            Some(lc_split(|t: &VertexTree, s| {
                tridend_product(t, s, Piece::Middle)
            })),
        ));
    }

    let binary: Vec<BinaryTree> = enumerate_binary_trees(max_leaves)
        .into_iter()
        .filter(|t| !t.is_leaf())
        .collect();
    reports.push(check_axioms(
        "dendriform axioms / binary trees",
        &binary,
        lc_split(|t: &BinaryTree, s| dend_product(t, s, Piece::Left)),
        lc_split(|t: &BinaryTree, s| dend_product(t, s, Piece::Right)),
        None,
    ));

    reports.push(oracle_agreement_check(max_leaves, decorations));
    reports.push(convergence_preservation_check());
    Ok(reports)
}

/// Surjection-formula products against the grafting recursion, exact, on
/// angle and vertex tree pairs.
fn oracle_agreement_check(max_leaves: usize, decorations: &[u64]) -> CheckReport {
    let started = Instant::now();
    let decorations = if decorations.is_empty() {
        &[1, 2][..]
    } else {
        decorations
    };
    let mut cases = 0usize;
    let mut failure = None;

    fn run<T: MergeData>(trees: &[T], cases: &mut usize, failure: &mut Option<String>) {
        for t in trees {
            for s in trees {
                for piece in [Piece::Left, Piece::Right, Piece::Middle, Piece::Full] {
                    *cases += 1;
                    let a = tridend_product(t, s, piece).unwrap();
                    let b = tridend_product_inductive(t, s, piece).unwrap();
                    if a != b {
                        *failure = Some(format!(
                            "{piece:?} differs for t=({t}), s=({s}): maps give {a}, recursion gives {b}"
                        ));
                        return;
                    }
                }
            }
        }
    }

    let angle: Vec<PosAngleTree> = enumerate_angle_trees(max_leaves, decorations)
        .into_iter()
        .filter(|t| !t.is_leaf())
        .collect();
    run(&angle, &mut cases, &mut failure);
    if failure.is_none() {
        let vertex: Vec<VertexTree> = enumerate_vertex_trees(max_leaves, 3)
            .into_iter()
            .filter(|t| !t.is_leaf())
            .collect();
        run(&vertex, &mut cases, &mut failure);
    }
    CheckReport::finish(
        "oracle agreement / surjection maps vs grafting recursion",
        started,
        failure,
        format!("{cases} product computations, exact"),
    )
}

/// Random pairs of convergent trees: every term of every product piece stays
/// convergent.
fn convergence_preservation_check() -> CheckReport {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x5eed_cafe);
    let mut cases = 0usize;
    let mut failure: Option<String> = None;

    let vertex: Vec<VertexTree> = enumerate_vertex_trees(4, 3)
        .into_iter()
        .filter(|t| !t.is_leaf() && is_convergent_vertex_tree(t))
        .collect();
    let angle: Vec<PosAngleTree> = enumerate_angle_trees(4, &[1, 2])
        .into_iter()
        .filter(|t| !t.is_leaf() && is_convergent_angle_tree(t))
        .collect();
    let binary: Vec<BinaryTree> = enumerate_binary_trees(4)
        .into_iter()
        .filter(|t| !t.is_leaf() && is_convergent_binary_tree(t))
        .collect();

    for _ in 0..200 {
        if failure.is_some() {
            break;
        }
        cases += 1;
        let (t, s) = (
            &vertex[rng.below(vertex.len() as u64) as usize],
            &vertex[rng.below(vertex.len() as u64) as usize],
        );
        for (term, _) in tridend_product(t, s, Piece::Full).unwrap().iter() {
            if !is_convergent_vertex_tree(term) {
                failure = Some(format!("vertex product {t} * {s} has divergent term {term}"));
            }
        }
        let (t, s) = (
            &angle[rng.below(angle.len() as u64) as usize],
            &angle[rng.below(angle.len() as u64) as usize],
        );
        for (term, _) in tridend_product(t, s, Piece::Full).unwrap().iter() {
            if !is_convergent_angle_tree(term) {
                failure = Some(format!("angle product {t} * {s} has divergent term {term}"));
            }
        }
        let (t, s) = (
            &binary[rng.below(binary.len() as u64) as usize],
            &binary[rng.below(binary.len() as u64) as usize],
        );
        for (term, _) in dend_product(t, s, Piece::Full).unwrap().iter() {
            if !is_convergent_binary_tree(term) {
                failure = Some(format!("binary product {t} * {s} has divergent term {term}"));
            }
        }
    }
    CheckReport::finish(
        "products preserve convergence (random pairs)",
        started,
        failure,
        format!("{cases} random pairs per tree flavour, exact predicate"),
    )
}

// ---------------------------------------------------------------------------
// Morphism suite
// ---------------------------------------------------------------------------

/// Exact checks that `ι`, `flatten_series` and `flatten_int` commute with
/// every product piece, that the free word-morphism factors as
/// `flatten ∘ ι`, and that the grafting action commutes with `ι`.
pub fn run_morphism_suite(max_leaves: usize) -> Result<Vec<CheckReport>> {
    if max_leaves > 4 {
        return Err(Error::InvalidConfig(
            "morphism suite caps at 4 leaves (cost guard)".into(),
        ));
    }
    let mut reports = Vec::new();
    let pieces = [Piece::Left, Piece::Right, Piece::Middle];

    {
        let started = Instant::now();
        let trees: Vec<PosAngleTree> = enumerate_angle_trees(max_leaves, &[1, 2])
            .into_iter()
            .filter(|t| !t.is_leaf())
            .collect();
        let mut cases = 0usize;
        let mut failure = None;
        'iota: for t in &trees {
            for s in &trees {
                for piece in pieces {
                    cases += 1;
                    let lhs =
                        tridend_product(t, s, piece)?.map_linear(|tree| LinComb::basis(iota(tree)));
                    let rhs = tridend_product(&iota(t), &iota(s), piece)?;
                    if lhs != rhs {
                        failure = Some(format!(
                            "iota({t} {piece:?} {s}) = {lhs} but iota(t) {piece:?} iota(s) = {rhs}"
                        ));
                        break 'iota;
                    }
                }
            }
        }
        reports.push(CheckReport::finish(
            "iota is a tridendriform morphism",
            started,
            failure,
            format!("{cases} products, exact"),
        ));
    }

    {
        let started = Instant::now();
        let trees: Vec<VertexTree> = enumerate_vertex_trees(max_leaves, 3)
            .into_iter()
            .filter(|t| !t.is_leaf())
            .collect();
        let mut cases = 0usize;
        let mut failure = None;
        'flat: for t in &trees {
            for s in &trees {
                for piece in pieces {
                    cases += 1;
                    let lhs = tridend_product(t, s, piece)?.map_linear(flatten_series);
                    let word_product = match piece {
                        Piece::Left => qshuffle_left,
                        Piece::Right => qshuffle_right,
                        Piece::Middle => qshuffle_mid,
                        Piece::Full => unreachable!(),
                    };
                    let rhs = crate::algebra::try_bilinear_extend(
                        word_product,
                        &flatten_series(t),
                        &flatten_series(s),
                    )?;
                    if lhs != rhs {
                        failure = Some(format!(
                            "flatten({t} {piece:?} {s}) = {lhs} but flatten(t) {piece:?} flatten(s) = {rhs}"
                        ));
                        break 'flat;
                    }
                }
            }
        }
        reports.push(CheckReport::finish(
            "flatten_series is a tridendriform morphism",
            started,
            failure,
            format!("{cases} products, exact"),
        ));
    }

    {
        let started = Instant::now();
        let trees: Vec<BinaryTree> = enumerate_binary_trees(max_leaves)
            .into_iter()
            .filter(|t| !t.is_leaf())
            .collect();
        let mut cases = 0usize;
        let mut failure = None;
        'flatint: for t in &trees {
            for s in &trees {
                for piece in [Piece::Left, Piece::Right] {
                    cases += 1;
                    let lhs = dend_product(t, s, piece)?.map_linear(flatten_int);
                    let word_product = match piece {
                        Piece::Left => shuffle_left,
                        Piece::Right => shuffle_right,
                        _ => unreachable!(),
                    };
                    let rhs = crate::algebra::try_bilinear_extend(
                        |u: &BinWord, v: &BinWord| word_product(u, v),
                        &flatten_int(t),
                        &flatten_int(s),
                    )?;
                    if lhs != rhs {
                        failure = Some(format!(
                            "flatten({t} {piece:?} {s}) = {lhs} but flatten(t) {piece:?} flatten(s) = {rhs}"
                        ));
                        break 'flatint;
                    }
                }
            }
        }
        reports.push(CheckReport::finish(
            "flatten_int is a dendriform morphism",
            started,
            failure,
            format!("{cases} products, exact"),
        ));
    }

    {
        let started = Instant::now();
        let trees = enumerate_angle_trees(max_leaves, &[1, 2, 3]);
        let mut cases = 0usize;
        let mut failure = None;
        for t in &trees {
            cases += 1;
            let free = free_word_image(t)?;
            let factored = flatten_series(&iota(t));
            let matches = if t.is_leaf() {
                free.scalar == rat(1)
                    && free.body.is_zero()
                    && factored == LinComb::basis(Word::empty())
            } else {
                free.scalar == rat(0) && free.body == factored
            };
            if !matches {
                failure = Some(format!(
                    "free image of ({t}) is {} + {} but flatten(iota(t)) = {factored}",
                    free.scalar, free.body
                ));
                break;
            }
        }
        // spot check: the middle product of two generators sums the letters
        if failure.is_none() {
            let y2: PosAngleTree = "V[2]".parse().unwrap();
            let y3: PosAngleTree = "V[3]".parse().unwrap();
            let product = tridend_product(&y2, &y3, Piece::Middle)?;
            let via_trees = product.map_linear(|t| flatten_series(&iota(t)));
            let via_words = qshuffle_mid(&Word::single(2), &Word::single(3))?;
            if via_trees != via_words {
                failure = Some(format!(
                    "Y[2].Y[3] flattens to {via_trees} but the word product gives {via_words}"
                ));
            }
        }
        reports.push(CheckReport::finish(
            "free word morphism factors as flatten o iota",
            started,
            failure,
            format!("{cases} trees, exact"),
        ));
    }

    {
        let started = Instant::now();
        let trees: Vec<PosAngleTree> = enumerate_angle_trees(4, &[1, 2])
            .into_iter()
            .filter(|t| !t.is_leaf())
            .collect();
        let mut cases = 0usize;
        let mut failure = None;
        'sigma: for t in &trees {
            for s in &trees {
                let k = comb_decompose(t, Side::Right)?.len();
                let l = comb_decompose(s, Side::Left)?.len();
                if k + l > 4 {
                    continue;
                }
                for sigma in enumerate_quasi_shuffles(k, l) {
                    cases += 1;
                    let lhs = iota(&sigma_action(&sigma, t, s)?);
                    let rhs = sigma_action(&sigma, &iota(t), &iota(s))?;
                    if lhs != rhs {
                        failure = Some(format!(
                            "sigma {:?} on ({t}, {s}): iota(sigma(t,s)) = {lhs}, sigma(iota t, iota s) = {rhs}",
                            sigma.values()
                        ));
                        break 'sigma;
                    }
                }
            }
        }
        reports.push(CheckReport::finish(
            "grafting action commutes with iota",
            started,
            failure,
            format!("{cases} grafts with k+l <= 4, exact"),
        ));
    }

    Ok(reports)
}

/// The free tridendriform morphism into words determined by `n ↦ "n"`,
/// computed through the grafting recursion in the augmented word algebra:
/// `t⁽¹⁾ ∨_ω t⁽²⁾ = (t⁽¹⁾ ≻ ω) ≺ t⁽²⁾`, and wider roots split off their
/// last child through the middle product. Independent of both `ι` and
/// `flatten`.
fn free_word_image(t: &PosAngleTree) -> Result<Augmented<PosWord>> {
    match t {
        AngleTree::Leaf => Ok(Augmented::unit()),
        AngleTree::Node { angles, children } => {
            if children.len() == 2 {
                let generator = Augmented::from_body(LinComb::basis(Word::single(angles[0])));
                let left = free_word_image(&children[0])?;
                let right = free_word_image(&children[1])?;
                let grown =
                    left.split_product(&generator, Piece::Right, qshuffle_right)?;
                grown.split_product(&right, Piece::Left, qshuffle_left)
            } else {
                let m = children.len();
                let head =
                    AngleTree::node_unchecked(angles[..m - 2].to_vec(), children[..m - 1].to_vec());
                let tail = AngleTree::node_unchecked(
                    vec![angles[m - 2]],
                    vec![AngleTree::Leaf, children[m - 1].clone()],
                );
                free_word_image(&head)?.split_product(
                    &free_word_image(&tail)?,
                    Piece::Middle,
                    qshuffle_mid,
                )
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Numeric suite
// ---------------------------------------------------------------------------

/// The numeric identity checks: the ζ(2) tail bound, the Kontsevich
/// relation through two independent algorithms, the worked arborified
/// product relation, the Shintani series representation, and the
/// evaluation-morphism properties.
pub fn run_numeric_suite(tol: &Tolerances) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    let series_cfg = SeriesEvalConfig {
        cutoff: tol.series_cutoff,
        report_tail: true,
    };
    let quad_cfg = QuadEvalConfig {
        nodes_per_axis: tol.quad_nodes,
        max_depth: 4,
    };
    let pw = |text: &str| PosWord::parse_basis(text).unwrap();
    let bw = |text: &str| BinWord::parse_basis(text).unwrap();

    {
        let started = Instant::now();
        let r = mzv_series(&pw("2"), &series_cfg).unwrap();
        let bound = r.tail_bound.unwrap();
        let gap = (r.value - tol.zeta2_reference).abs();
        let ok = gap <= bound && bound <= tol.zeta2_tail_cap;
        reports.push(CheckReport::finish(
            "zeta(2) within reported tail bound",
            started,
            (!ok).then(|| {
                format!(
                    "gap {gap:.3e} vs bound {bound:.3e} (cap {:.1e})",
                    tol.zeta2_tail_cap
                )
            }),
            format!(
                "gap {gap:.3e} <= bound {bound:.3e} <= cap {:.1e}",
                tol.zeta2_tail_cap
            ),
        ));
    }

    {
        let started = Instant::now();
        let quad2 = mzv_integral_quad(&bw("xy"), &quad_cfg).unwrap().value;
        let series2 = mzv_series(&pw("2"), &series_cfg).unwrap().value;
        let gap2 = (quad2 - series2).abs();
        let quad3 = mzv_integral_quad(&bw("xyy"), &quad_cfg).unwrap().value;
        let series3 = mzv_series(&pw("2 1"), &series_cfg).unwrap().value;
        let gap3 = (quad3 - series3).abs();
        let ok = gap2 < tol.kontsevich_depth2 && gap3 < tol.kontsevich_depth3;
        reports.push(CheckReport::finish(
            "Kontsevich relation (quadrature vs series)",
            started,
            (!ok).then(|| format!("xy gap {gap2:.3e}, xyy gap {gap3:.3e}")),
            format!(
                "xy gap {gap2:.3e} < {:.0e}; xyy gap {gap3:.3e} < {:.0e}",
                tol.kontsevich_depth2, tol.kontsevich_depth3
            ),
        ));
    }

    {
        let started = Instant::now();
        let t1: VertexTree = "N{2}(N{1},N{1})".parse().unwrap();
        let t2: VertexTree = "N{2}".parse().unwrap();
        let product = tridend_product(&t1, &t2, Piece::Full).unwrap();
        let lhs = azv_series(&t1, &series_cfg).unwrap().value
            * azv_series(&t2, &series_cfg).unwrap().value;
        let rhs_comb = product.map_linear(flatten_series);
        let rhs = eval_lincomb_words(&rhs_comb, &series_cfg).unwrap().value;
        let gap = (lhs - rhs).abs();
        let ok = gap < tol.product_relation;
        reports.push(CheckReport::finish(
            "worked arborified product relation",
            started,
            (!ok).then(|| format!("gap {gap:.3e} vs {:.0e}", tol.product_relation)),
            format!("(2z(2,1,1)+z(2,2))z(2) vs its 15-term expansion: gap {gap:.3e}"),
        ));
    }

    {
        let started = Instant::now();
        let mut rng = SplitMix64::new(0x7a3b_11d5);
        let mut trees = vec!["B{x}(B{y},B{y})".parse::<BinaryTree>().unwrap()];
        while trees.len() < 3 {
            // draw the last tree from the multi-column class so the full
            // triple-sum kernel gets exercised
            let min_y = if trees.len() == 2 { 3 } else { 1 };
            let t = random_convergent_binary_tree(&mut rng, 3, 6);
            if count_y(&t) >= min_y && !trees.contains(&t) {
                trees.push(t);
            }
        }
        let mut failure = None;
        let mut details = Vec::new();
        for t in &trees {
            let datum = shintani_datum(t).unwrap();
            let lhs = shintani_eval(&datum, tol.shintani_cutoff).unwrap();
            let rhs = azv_integral(t, IntegralPath::Series, &series_cfg, &quad_cfg)
                .unwrap()
                .value;
            let gap = (lhs - rhs).abs();
            details.push(format!("{t}: gap {gap:.3e}"));
            if gap >= tol.shintani_gap {
                failure = Some(format!("{t}: gap {gap:.3e} vs {:.0e}", tol.shintani_gap));
                break;
            }
        }
        reports.push(CheckReport::finish(
            "Shintani sums match the series route",
            started,
            failure,
            details.join("; "),
        ));
    }

    {
        let started = Instant::now();
        let mut failure = None;
        let mut worst = 0.0f64;
        let words: Vec<PosWord> = nonempty_pos_words(2, &[1, 2, 3])
            .into_iter()
            .filter(is_convergent_series_word)
            .collect();
        'outer: for u in &words {
            for v in &words {
                let eu = mzv_series(u, &series_cfg).unwrap();
                let ev = mzv_series(v, &series_cfg).unwrap();
                let prod = eval_lincomb_words(&qshuffle(u, v), &series_cfg).unwrap();
                let gap = (prod.value - eu.value * ev.value).abs();
                let allowance = prod.tail_bound.unwrap_or(0.0)
                    + eu.value.abs() * ev.tail_bound.unwrap_or(0.0)
                    + ev.value.abs() * eu.tail_bound.unwrap_or(0.0)
                    + tol.qshuffle_eval_slack;
                worst = worst.max(gap);
                if gap > allowance {
                    failure = Some(format!(
                        "u={u}, v={v}: gap {gap:.3e} vs allowance {allowance:.3e}"
                    ));
                    break 'outer;
                }
            }
        }
        reports.push(CheckReport::finish(
            "evaluation respects the quasi-shuffle product",
            started,
            failure,
            format!("{} convergent words, worst gap {worst:.3e}", words.len()),
        ));
    }

    {
        let started = Instant::now();
        let xy = bw("xy");
        let square = mzv_integral_quad(&xy, &quad_cfg).unwrap().value.powi(2);
        let mut expanded = 0.0f64;
        for (w, c) in shuffle(&xy, &xy).iter() {
            expanded += rational_to_f64(c) * mzv_integral_quad(w, &quad_cfg).unwrap().value;
        }
        let gap = (square - expanded).abs();
        let ok = gap <= tol.shuffle_quad_slack;
        reports.push(CheckReport::finish(
            "quadrature respects the shuffle product",
            started,
            (!ok).then(|| format!("gap {gap:.3e} vs {:.0e}", tol.shuffle_quad_slack)),
            format!("quad(xy)^2 vs quad(xy sh xy): gap {gap:.3e}"),
        ));
    }

    {
        let started = Instant::now();
        let t: BinaryTree = "B{x}(|,B{y})".parse().unwrap();
        let s: BinaryTree = "B{x}(B{y},B{y})".parse().unwrap();
        let et = azv_integral(&t, IntegralPath::Series, &series_cfg, &quad_cfg).unwrap();
        let es = azv_integral(&s, IntegralPath::Series, &series_cfg, &quad_cfg).unwrap();
        let mut rhs_value = 0.0f64;
        let mut rhs_tail = Some(0.0f64);
        for (term, c) in dend_product(&t, &s, Piece::Full).unwrap().iter() {
            let r = azv_integral(term, IntegralPath::Series, &series_cfg, &quad_cfg).unwrap();
            let cf = rational_to_f64(c);
            rhs_value += cf * r.value;
            rhs_tail = rhs_tail.zip(r.tail_bound).map(|(a, b)| a + cf.abs() * b);
        }
        let gap = (et.value * es.value - rhs_value).abs();
        let allowance = rhs_tail.unwrap_or(0.0)
            + et.value.abs() * es.tail_bound.unwrap_or(0.0)
            + es.value.abs() * et.tail_bound.unwrap_or(0.0)
            + tol.qshuffle_eval_slack;
        let ok = gap <= allowance;
        reports.push(CheckReport::finish(
            "integral arborified values respect the tree product",
            started,
            (!ok).then(|| format!("gap {gap:.3e} vs allowance {allowance:.3e}")),
            format!("gap {gap:.3e} within combined tails {allowance:.3e}"),
        ));
    }

    {
        let started = Instant::now();
        let mut failure = None;
        for text in ["2", "3", "2 1"] {
            let w = pw(text);
            let mut prev = 0.0f64;
            for n in [1_000u64, 2_000, 4_000] {
                let r = mzv_series(&w, &SeriesEvalConfig::new(n).unwrap()).unwrap();
                if r.value < prev {
                    failure = Some(format!("{text}: value decreased at cutoff {n}"));
                }
                prev = r.value;
            }
            let small = mzv_series(&w, &SeriesEvalConfig::new(1_000).unwrap()).unwrap();
            let large = mzv_series(&w, &SeriesEvalConfig::new(1_000_000).unwrap()).unwrap();
            let gap = (large.value - small.value).abs();
            if gap > small.tail_bound.unwrap() {
                failure = Some(format!(
                    "{text}: observed gap {gap:.3e} exceeds bound {:.3e}",
                    small.tail_bound.unwrap()
                ));
            }
        }
        reports.push(CheckReport::finish(
            "series truncation is monotone and tail bounds are sound",
            started,
            failure,
            "witnesses 2, 3, 2 1 at cutoffs 1e3..1e6".to_string(),
        ));
    }

    reports
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

/// Deterministic generator for the randomized checks.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound.max(1)
    }
}

/// Random binary tree with exactly `internal` internal vertices.
pub fn random_binary_tree(rng: &mut SplitMix64, internal: usize) -> BinaryTree {
    if internal == 0 {
        return BinaryTree::Leaf;
    }
    let dec = if rng.below(2) == 0 { Bin::X } else { Bin::Y };
    let left_size = rng.below(internal as u64) as usize;
    BinaryTree::node(
        dec,
        random_binary_tree(rng, left_size),
        random_binary_tree(rng, internal - 1 - left_size),
    )
}

/// Random convergent binary tree with between 1 and `max_y` `y`-vertices and
/// at most `max_internal` internal vertices.
pub fn random_convergent_binary_tree(
    rng: &mut SplitMix64,
    max_y: usize,
    max_internal: usize,
) -> BinaryTree {
    loop {
        let size = 1 + rng.below(max_internal as u64) as usize;
        let t = random_binary_tree(rng, size);
        let y_count = count_y(&t);
        if is_convergent_binary_tree(&t) && !t.is_leaf() && y_count >= 1 && y_count <= max_y {
            return t;
        }
    }
}

fn count_y(t: &BinaryTree) -> usize {
    match t {
        BinaryTree::Leaf => 0,
        BinaryTree::Node { dec, left, right } => {
            usize::from(*dec == Bin::Y) + count_y(left) + count_y(right)
        }
    }
}

fn nonempty_pos_words(max_len: usize, letters: &[u64]) -> Vec<PosWord> {
    let mut out = Vec::new();
    fn rec(cur: &mut Vec<u64>, max_len: usize, letters: &[u64], out: &mut Vec<PosWord>) {
        if !cur.is_empty() {
            out.push(Word::new(cur.clone()));
        }
        if cur.len() == max_len {
            return;
        }
        for &l in letters {
            cur.push(l);
            rec(cur, max_len, letters, out);
            cur.pop();
        }
    }
    rec(&mut Vec::new(), max_len, letters, &mut out);
    out.sort();
    out.dedup();
    out
}

fn nonempty_bin_words(max_len: usize) -> Vec<BinWord> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for mask in 0..(1u32 << len) {
            out.push(Word::new(
                (0..len)
                    .map(|i| if mask >> i & 1 == 0 { Bin::X } else { Bin::Y })
                    .collect(),
            ));
        }
    }
    out.sort();
    out
}

pub fn rational_to_f64(c: &crate::algebra::Rational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().expect("rational out of f64 range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_parse() {
        let t = default_tolerances();
        assert_eq!(t.series_cutoff, 100_000);
        assert_eq!(t.shintani_cutoff, 2_000);
        assert_eq!(t.quad_nodes, 64);
        assert!(t.zeta2_tail_cap > 0.0);
    }

    #[test]
    fn axiom_suite_small_passes() {
        let reports = run_axiom_suite(2, &[1, 2]).unwrap();
        for r in &reports {
            assert!(r.passed, "{r}");
        }
        assert!(run_axiom_suite(5, &[1]).is_err());
    }

    #[test]
    fn axiom_suite_empty_decorations_vacuous() {
        let reports = run_axiom_suite(2, &[]).unwrap();
        assert!(reports.iter().any(|r| r.detail.contains("vacuous")));
        assert!(reports.iter().all(|r| r.passed));
    }

    #[test]
    fn morphism_suite_small_passes() {
        let reports = run_morphism_suite(3).unwrap();
        for r in &reports {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn free_word_image_of_generator_product() {
        // Y[2] . Y[3] -> the one-letter word "5" through the pure word route
        let y2: PosAngleTree = "V[2]".parse().unwrap();
        let y3: PosAngleTree = "V[3]".parse().unwrap();
        let corolla = tridend_product(&y2, &y3, Piece::Middle).unwrap();
        assert_eq!(corolla.len(), 1);
        let (tree, _) = corolla.iter().next().unwrap();
        let image = free_word_image(tree).unwrap();
        assert_eq!(image.body, LinComb::basis(Word::single(5)));
    }

    #[test]
    fn random_tree_generator_respects_bounds() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..50 {
            let t = random_convergent_binary_tree(&mut rng, 3, 6);
            assert!(is_convergent_binary_tree(&t));
            assert!(count_y(&t) >= 1 && count_y(&t) <= 3);
            assert!(t.internal_vertices() <= 6);
        }
    }
}
