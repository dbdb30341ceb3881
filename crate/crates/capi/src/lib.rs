//! C ABI over the core library: opaque expression handles, status codes,
//! and newly allocated C strings for serialized output.
//!
//! Conventions:
//!
//! - every function returns a [`ZetaStatus`]; outputs go through `out`
//!   pointers that are written only on `Ok`;
//! - `ZetaExpr` handles own a linear combination of one basis kind and must
//!   be released with [`zeta_expr_free`];
//! - strings returned through `out` pointers are NUL-terminated, allocated
//!   by this library, and must be released with [`zeta_string_free`];
//! - [`zeta_last_error`] returns a thread-local description of the most
//!   recent failure, valid until the next call on the same thread.
//!
//! The matching header lives in `include/dendrizeta.h` (kept in sync with
//! `cbindgen.toml`).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dendrizeta::algebra::{Basis, LinComb, Piece};
use dendrizeta::error::Error;
use dendrizeta::numerics::{
    azv_integral, eval_lincomb_words, mzv_integral_quad, IntegralPath, QuadEvalConfig,
    SeriesEvalConfig,
};
use dendrizeta::products::{dend_product, tridend_product};
use dendrizeta::shintani::shintani_datum;
use dendrizeta::trees::{flatten_int, flatten_series, iota, BinaryTree, PosAngleTree, VertexTree};
use dendrizeta::words::{binarize, BinWord, PosWord};

/// Result discipline of every FFI entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZetaStatus {
    /// Success.
    ZetaOk = 0,
    /// Input text did not match the documented grammar.
    ZetaParseError = 1,
    /// Mathematically undefined request (empty split operand, leaf product,
    /// divergent input, depth or size cap).
    ZetaDomainError = 2,
    /// Invalid configuration or mismatched handle kinds.
    ZetaInvalidArgument = 3,
    /// A required pointer was NULL.
    ZetaNullPointer = 4,
    /// Internal panic; a bug, please report it.
    ZetaPanic = 5,
}

use ZetaStatus::*;

/// Basis selector for parsing.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZetaKind {
    ZetaPosWord = 0,
    ZetaBinWord = 1,
    ZetaAngleTree = 2,
    ZetaVertexTree = 3,
    ZetaBinaryTree = 4,
}

/// Product piece selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZetaPiece {
    ZetaLeft = 0,
    ZetaRight = 1,
    ZetaMiddle = 2,
    ZetaFull = 3,
}

impl From<ZetaPiece> for Piece {
    fn from(p: ZetaPiece) -> Piece {
        match p {
            ZetaPiece::ZetaLeft => Piece::Left,
            ZetaPiece::ZetaRight => Piece::Right,
            ZetaPiece::ZetaMiddle => Piece::Middle,
            ZetaPiece::ZetaFull => Piece::Full,
        }
    }
}

/// Opaque handle: a linear combination over one of the five basis kinds.
pub struct ZetaExpr(Repr);

enum Repr {
    PosWords(LinComb<PosWord>),
    BinWords(LinComb<BinWord>),
    AngleTrees(LinComb<PosAngleTree>),
    VertexTrees(LinComb<VertexTree>),
    BinaryTrees(LinComb<BinaryTree>),
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = CString::new(message.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = sanitized);
}

fn status_of(err: &Error) -> ZetaStatus {
    match err {
        Error::Parse { .. } => ZetaParseError,
        Error::InvalidConfig(_) => ZetaInvalidArgument,
        _ => ZetaDomainError,
    }
}

fn fail(err: Error) -> ZetaStatus {
    set_error(&err.to_string());
    status_of(&err)
}

/// Description of the most recent failure on this thread. The pointer stays
/// valid until the next library call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn zeta_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn guard<F: FnOnce() -> ZetaStatus>(f: F) -> ZetaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&msg);
            ZetaPanic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ZetaStatus> {
    if ptr.is_null() {
        set_error("NULL string argument");
        return Err(ZetaNullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        ZetaParseError
    })
}

fn give_expr(out: *mut *mut ZetaExpr, expr: ZetaExpr) -> ZetaStatus {
    if out.is_null() {
        set_error("NULL output pointer");
        return ZetaNullPointer;
    }
    unsafe { *out = Box::into_raw(Box::new(expr)) };
    ZetaOk
}

fn give_string(out: *mut *mut c_char, text: String) -> ZetaStatus {
    if out.is_null() {
        set_error("NULL output pointer");
        return ZetaNullPointer;
    }
    let c = CString::new(text.replace('\0', " ")).unwrap();
    unsafe { *out = c.into_raw() };
    ZetaOk
}

/// Parses a basis element or a serialized linear combination of the given
/// kind into a fresh handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_parse(
    kind: ZetaKind,
    text: *const c_char,
    out: *mut *mut ZetaExpr,
) -> ZetaStatus {
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        fn parse_comb<B: Basis>(text: &str) -> Result<LinComb<B>, Error> {
            if text.contains("*(") || text.trim() == "0" {
                LinComb::parse(text)
            } else {
                B::parse_basis(text).map(LinComb::basis)
            }
        }
        let repr = match kind {
            ZetaKind::ZetaPosWord => parse_comb(text).map(Repr::PosWords),
            ZetaKind::ZetaBinWord => parse_comb(text).map(Repr::BinWords),
            ZetaKind::ZetaAngleTree => parse_comb(text).map(Repr::AngleTrees),
            ZetaKind::ZetaVertexTree => parse_comb(text).map(Repr::VertexTrees),
            ZetaKind::ZetaBinaryTree => parse_comb(text).map(Repr::BinaryTrees),
        };
        match repr {
            Ok(repr) => give_expr(out, ZetaExpr(repr)),
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `expr` must be a pointer previously returned by this library and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn zeta_expr_free(expr: *mut ZetaExpr) {
    if !expr.is_null() {
        drop(Box::from_raw(expr));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `text` must originate from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zeta_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

unsafe fn expr_ref<'a>(expr: *const ZetaExpr) -> Result<&'a ZetaExpr, ZetaStatus> {
    if expr.is_null() {
        set_error("NULL expression handle");
        return Err(ZetaNullPointer);
    }
    Ok(&*expr)
}

/// Canonical text form of the expression.
///
/// # Safety
/// `expr` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_expr_to_string(
    expr: *const ZetaExpr,
    out: *mut *mut c_char,
) -> ZetaStatus {
    guard(|| {
        let expr = match expr_ref(expr) {
            Ok(e) => e,
            Err(s) => return s,
        };
        let text = match &expr.0 {
            Repr::PosWords(c) => c.to_string(),
            Repr::BinWords(c) => c.to_string(),
            Repr::AngleTrees(c) => c.to_string(),
            Repr::VertexTrees(c) => c.to_string(),
            Repr::BinaryTrees(c) => c.to_string(),
        };
        give_string(out, text)
    })
}

/// JSON form: array of `{"coeff": ..., "basis": ...}` objects.
///
/// # Safety
/// `expr` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_expr_to_json(
    expr: *const ZetaExpr,
    out: *mut *mut c_char,
) -> ZetaStatus {
    guard(|| {
        let expr = match expr_ref(expr) {
            Ok(e) => e,
            Err(s) => return s,
        };
        let text = match &expr.0 {
            Repr::PosWords(c) => c.to_json(),
            Repr::BinWords(c) => c.to_json(),
            Repr::AngleTrees(c) => c.to_json(),
            Repr::VertexTrees(c) => c.to_json(),
            Repr::BinaryTrees(c) => c.to_json(),
        };
        give_string(out, text)
    })
}

/// The requested product piece of two expressions of the same kind,
/// extended bilinearly over their terms.
///
/// # Safety
/// `a` and `b` must be live handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_product(
    piece: ZetaPiece,
    a: *const ZetaExpr,
    b: *const ZetaExpr,
    out: *mut *mut ZetaExpr,
) -> ZetaStatus {
    guard(|| {
        let (a, b) = match (expr_ref(a), expr_ref(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let piece: Piece = piece.into();
        use dendrizeta::algebra::try_bilinear_extend;
        use dendrizeta::words as w;
        let result = match (&a.0, &b.0) {
            (Repr::PosWords(a), Repr::PosWords(b)) => try_bilinear_extend(
                |u, v| match piece {
                    Piece::Left => w::qshuffle_left(u, v),
                    Piece::Right => w::qshuffle_right(u, v),
                    Piece::Middle => w::qshuffle_mid(u, v),
                    Piece::Full => Ok(w::qshuffle(u, v)),
                },
                a,
                b,
            )
            .map(Repr::PosWords),
            (Repr::BinWords(a), Repr::BinWords(b)) => try_bilinear_extend(
                |u, v| match piece {
                    Piece::Left => w::shuffle_left(u, v),
                    Piece::Right => w::shuffle_right(u, v),
                    Piece::Middle => Err(Error::InvalidConfig(
                        "the shuffle of binary words has no middle piece".into(),
                    )),
                    Piece::Full => Ok(w::shuffle(u, v)),
                },
                a,
                b,
            )
            .map(Repr::BinWords),
            (Repr::AngleTrees(a), Repr::AngleTrees(b)) => {
                try_bilinear_extend(|t, s| tridend_product(t, s, piece), a, b)
                    .map(Repr::AngleTrees)
            }
            (Repr::VertexTrees(a), Repr::VertexTrees(b)) => {
                try_bilinear_extend(|t, s| tridend_product(t, s, piece), a, b)
                    .map(Repr::VertexTrees)
            }
            (Repr::BinaryTrees(a), Repr::BinaryTrees(b)) => {
                try_bilinear_extend(|t, s| dend_product(t, s, piece), a, b)
                    .map(Repr::BinaryTrees)
            }
            _ => Err(Error::InvalidConfig(
                "product operands must share one basis kind".into(),
            )),
        };
        match result {
            Ok(repr) => give_expr(out, ZetaExpr(repr)),
            Err(e) => fail(e),
        }
    })
}

/// Flattens vertex trees to positive words, or binary trees to binary
/// words.
///
/// # Safety
/// `expr` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_flatten(
    expr: *const ZetaExpr,
    out: *mut *mut ZetaExpr,
) -> ZetaStatus {
    guard(|| {
        let expr = match expr_ref(expr) {
            Ok(e) => e,
            Err(s) => return s,
        };
        match &expr.0 {
            Repr::VertexTrees(c) => give_expr(
                out,
                ZetaExpr(Repr::PosWords(c.map_linear(flatten_series))),
            ),
            Repr::BinaryTrees(c) => give_expr(
                out,
                ZetaExpr(Repr::BinWords(c.map_linear(flatten_int))),
            ),
            _ => fail(Error::InvalidConfig(
                "flatten takes vertex trees or binary trees".into(),
            )),
        }
    })
}

/// Sums angle decorations into vertex decorations (angle trees only).
///
/// # Safety
/// `expr` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_iota(expr: *const ZetaExpr, out: *mut *mut ZetaExpr) -> ZetaStatus {
    guard(|| {
        let expr = match expr_ref(expr) {
            Ok(e) => e,
            Err(s) => return s,
        };
        match &expr.0 {
            Repr::AngleTrees(c) => give_expr(
                out,
                ZetaExpr(Repr::VertexTrees(
                    c.map_linear(|t| LinComb::basis(iota(t))),
                )),
            ),
            _ => fail(Error::InvalidConfig("iota takes angle trees".into())),
        }
    })
}

/// The binarization map on positive words, extended linearly.
///
/// # Safety
/// `expr` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_binarize(
    expr: *const ZetaExpr,
    out: *mut *mut ZetaExpr,
) -> ZetaStatus {
    guard(|| {
        let expr = match expr_ref(expr) {
            Ok(e) => e,
            Err(s) => return s,
        };
        match &expr.0 {
            Repr::PosWords(c) => give_expr(
                out,
                ZetaExpr(Repr::BinWords(
                    c.map_linear(|w| LinComb::basis(binarize(w))),
                )),
            ),
            _ => fail(Error::InvalidConfig("binarize takes positive words".into())),
        }
    })
}

/// Evaluates the expression through the truncated-series route. Accepts
/// positive words, vertex trees (flattened first) and binary trees (through
/// the binarization inverse). `out_tail` receives a rigorous tail
/// overestimate when one is available, `-1.0` otherwise.
///
/// # Safety
/// `expr` must be a live handle; `out_value` and `out_tail` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn zeta_eval_series(
    expr: *const ZetaExpr,
    cutoff: u64,
    out_value: *mut f64,
    out_tail: *mut f64,
) -> ZetaStatus {
    guard(|| {
        let expr = match expr_ref(expr) {
            Ok(e) => e,
            Err(s) => return s,
        };
        if out_value.is_null() || out_tail.is_null() {
            set_error("NULL output pointer");
            return ZetaNullPointer;
        }
        let cfg = match SeriesEvalConfig::new(cutoff) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        let result = match &expr.0 {
            Repr::PosWords(c) => eval_lincomb_words(c, &cfg),
            Repr::VertexTrees(c) => {
                eval_lincomb_words(&c.map_linear(flatten_series), &cfg)
            }
            Repr::BinaryTrees(c) => {
                let mut value = 0.0;
                let mut tail = Some(0.0f64);
                let mut failed = None;
                for (t, coeff) in c.iter() {
                    match azv_integral(t, IntegralPath::Series, &cfg, &QuadEvalConfig::default()) {
                        Ok(r) => {
                            let cf = dendrizeta::verify::rational_to_f64(coeff);
                            value += cf * r.value;
                            tail = tail.zip(r.tail_bound).map(|(a, b)| a + cf.abs() * b);
                        }
                        Err(e) => {
                            failed = Some(e);
                            break;
                        }
                    }
                }
                match failed {
                    Some(e) => Err(e),
                    None => Ok(dendrizeta::numerics::EvalResult {
                        value,
                        tail_bound: tail,
                    }),
                }
            }
            _ => Err(Error::InvalidConfig(
                "series evaluation takes positive words, vertex trees or binary trees".into(),
            )),
        };
        match result {
            Ok(r) => {
                *out_value = r.value;
                *out_tail = r.tail_bound.unwrap_or(-1.0);
                ZetaOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Evaluates a binary-word expression by simplex quadrature.
///
/// # Safety
/// `expr` must be a live handle; `out_value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_eval_quad(
    expr: *const ZetaExpr,
    nodes_per_axis: usize,
    out_value: *mut f64,
) -> ZetaStatus {
    guard(|| {
        let expr = match expr_ref(expr) {
            Ok(e) => e,
            Err(s) => return s,
        };
        if out_value.is_null() {
            set_error("NULL output pointer");
            return ZetaNullPointer;
        }
        let cfg = match QuadEvalConfig::new(nodes_per_axis, 4) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        let result = match &expr.0 {
            Repr::BinWords(c) => {
                let mut value = 0.0;
                let mut failed = None;
                for (w, coeff) in c.iter() {
                    match mzv_integral_quad(w, &cfg) {
                        Ok(r) => value += dendrizeta::verify::rational_to_f64(coeff) * r.value,
                        Err(e) => {
                            failed = Some(e);
                            break;
                        }
                    }
                }
                failed.map_or(Ok(value), Err)
            }
            _ => Err(Error::InvalidConfig(
                "quadrature takes binary words".into(),
            )),
        };
        match result {
            Ok(v) => {
                *out_value = v;
                ZetaOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Shintani datum of a single convergent binary tree, serialized as JSON
/// (matrix, omega, row and column labels).
///
/// # Safety
/// `expr` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_shintani_matrix(
    expr: *const ZetaExpr,
    out: *mut *mut c_char,
) -> ZetaStatus {
    guard(|| {
        let expr = match expr_ref(expr) {
            Ok(e) => e,
            Err(s) => return s,
        };
        let tree = match &expr.0 {
            Repr::BinaryTrees(c) if c.len() == 1 => c.iter().next().unwrap().0.clone(),
            _ => {
                return fail(Error::InvalidConfig(
                    "shintani matrix takes a single binary tree".into(),
                ))
            }
        };
        match shintani_datum(&tree) {
            Ok(datum) => give_string(out, datum.to_json()),
            Err(e) => fail(e),
        }
    })
}

/// Truncated Shintani sum of a single convergent binary tree.
///
/// # Safety
/// `expr` must be a live handle; `out_value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta_shintani_eval(
    expr: *const ZetaExpr,
    cutoff: u64,
    out_value: *mut f64,
) -> ZetaStatus {
    guard(|| {
        let expr = match expr_ref(expr) {
            Ok(e) => e,
            Err(s) => return s,
        };
        if out_value.is_null() {
            set_error("NULL output pointer");
            return ZetaNullPointer;
        }
        let tree = match &expr.0 {
            Repr::BinaryTrees(c) if c.len() == 1 => c.iter().next().unwrap().0.clone(),
            _ => {
                return fail(Error::InvalidConfig(
                    "shintani evaluation takes a single binary tree".into(),
                ))
            }
        };
        let result =
            shintani_datum(&tree).and_then(|d| dendrizeta::shintani::shintani_eval(&d, cutoff));
        match result {
            Ok(v) => {
                *out_value = v;
                ZetaOk
            }
            Err(e) => fail(e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn parse(kind: ZetaKind, text: &str) -> *mut ZetaExpr {
        let c = CString::new(text).unwrap();
        let mut out = ptr::null_mut();
        let status = unsafe { zeta_parse(kind, c.as_ptr(), &mut out) };
        assert_eq!(status, ZetaOk, "parse `{text}`");
        out
    }

    fn to_string(expr: *const ZetaExpr) -> String {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { zeta_expr_to_string(expr, &mut out) }, ZetaOk);
        let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        unsafe { zeta_string_free(out) };
        s
    }

    #[test]
    fn product_round_trip() {
        let a = parse(ZetaKind::ZetaPosWord, "1 2");
        let b = parse(ZetaKind::ZetaPosWord, "3 2");
        let mut out = ptr::null_mut();
        assert_eq!(
            unsafe { zeta_product(ZetaPiece::ZetaFull, a, b, &mut out) },
            ZetaOk
        );
        let text = to_string(out);
        assert!(text.contains("1*(4 4)"));
        assert!(text.contains("2*(4 2 2)"));
        unsafe {
            zeta_expr_free(a);
            zeta_expr_free(b);
            zeta_expr_free(out);
        }
    }

    #[test]
    fn flatten_iota_binarize_chain() {
        let t = parse(ZetaKind::ZetaAngleTree, "V[1,2]");
        let mut v = ptr::null_mut();
        assert_eq!(unsafe { zeta_iota(t, &mut v) }, ZetaOk);
        assert_eq!(to_string(v), "1*(N{3}(|,|,|))");
        let mut words = ptr::null_mut();
        assert_eq!(unsafe { zeta_flatten(v, &mut words) }, ZetaOk);
        assert_eq!(to_string(words), "1*(3)");
        let mut bin = ptr::null_mut();
        assert_eq!(unsafe { zeta_binarize(words, &mut bin) }, ZetaOk);
        assert_eq!(to_string(bin), "1*(xxy)");
        unsafe {
            zeta_expr_free(t);
            zeta_expr_free(v);
            zeta_expr_free(words);
            zeta_expr_free(bin);
        }
    }

    #[test]
    fn series_evaluation_and_tail() {
        let w = parse(ZetaKind::ZetaPosWord, "2");
        let (mut value, mut tail) = (0.0f64, 0.0f64);
        assert_eq!(
            unsafe { zeta_eval_series(w, 100_000, &mut value, &mut tail) },
            ZetaOk
        );
        assert!((value - 1.644_934_066_848).abs() < 2e-5);
        assert!(tail > 0.0 && tail <= 2e-5);
        unsafe { zeta_expr_free(w) };
    }

    #[test]
    fn quadrature_evaluation() {
        let w = parse(ZetaKind::ZetaBinWord, "xy");
        let mut value = 0.0f64;
        assert_eq!(unsafe { zeta_eval_quad(w, 64, &mut value) }, ZetaOk);
        assert!((value - 1.644_934).abs() < 1e-3);
        unsafe { zeta_expr_free(w) };
    }

    #[test]
    fn shintani_surface() {
        let t = parse(ZetaKind::ZetaBinaryTree, "B{x}(B{y},B{y})");
        let mut json = ptr::null_mut();
        assert_eq!(unsafe { zeta_shintani_matrix(t, &mut json) }, ZetaOk);
        let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
        assert!(text.contains("\"matrix\":[[1,1],[1,0],[0,1]]"));
        unsafe { zeta_string_free(json) };
        let mut value = 0.0f64;
        assert_eq!(unsafe { zeta_shintani_eval(t, 1_000, &mut value) }, ZetaOk);
        assert!((value - 2.404).abs() < 2e-2);
        unsafe { zeta_expr_free(t) };
    }

    #[test]
    fn errors_carry_messages_and_statuses() {
        let mut out = ptr::null_mut();
        let bad = CString::new("N{0}(|,|)").unwrap();
        let status = unsafe { zeta_parse(ZetaKind::ZetaVertexTree, bad.as_ptr(), &mut out) };
        assert_eq!(status, ZetaParseError);
        let msg = unsafe { CStr::from_ptr(zeta_last_error()) }
            .to_str()
            .unwrap();
        assert!(!msg.is_empty());

        // divergent word through the series evaluator
        let w = parse(ZetaKind::ZetaPosWord, "1 2");
        let (mut value, mut tail) = (0.0f64, 0.0f64);
        assert_eq!(
            unsafe { zeta_eval_series(w, 1_000, &mut value, &mut tail) },
            ZetaDomainError
        );
        unsafe { zeta_expr_free(w) };

        // mismatched kinds
        let a = parse(ZetaKind::ZetaPosWord, "2");
        let b = parse(ZetaKind::ZetaBinWord, "xy");
        let mut out = ptr::null_mut();
        assert_eq!(
            unsafe { zeta_product(ZetaPiece::ZetaFull, a, b, &mut out) },
            ZetaInvalidArgument
        );
        // empty operand on a split
        let e = parse(ZetaKind::ZetaPosWord, "()");
        assert_eq!(
            unsafe { zeta_product(ZetaPiece::ZetaLeft, e, a, &mut out) },
            ZetaDomainError
        );
        assert_eq!(
            unsafe { zeta_parse(ZetaKind::ZetaPosWord, ptr::null(), &mut out) },
            ZetaNullPointer
        );
        unsafe {
            zeta_expr_free(a);
            zeta_expr_free(b);
            zeta_expr_free(e);
        }
    }
}
