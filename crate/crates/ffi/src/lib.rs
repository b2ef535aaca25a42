//! C ABI for `doxa`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`-style
//! functions and released by the matching `*_free`. Every fallible function
//! returns a [`DoxaStatus`] and writes its result through an out pointer;
//! on failure [`doxa_last_error`] describes the problem. Strings returned by
//! the library are owned by the caller and released with
//! [`doxa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use doxa::formula::{parse, parse_model, Alphabet};
use doxa::horn::{self, classify_redundancy, horn_equiv_negation};
use doxa::lexredundancy::redundant_general;
use doxa::scenario::run_str;
use doxa::{apply_sequence, Comparison, DoxasticState, Error, Operator, RevisionStep};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoxaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InconsistentRevision = 4,
    BoundExceeded = 5,
    InvalidAlphabet = 6,
    InvalidState = 7,
    IndexOutOfRange = 8,
    UnsupportedOperator = 9,
    AlphabetOverlap = 10,
    Panic = 11,
}

impl From<&Error> for DoxaStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::NotHorn { .. } => {
                DoxaStatus::Parse
            }
            Error::InvalidAlphabet(_) => DoxaStatus::InvalidAlphabet,
            Error::BoundExceeded { .. } | Error::TooManyFormulae { .. } => {
                DoxaStatus::BoundExceeded
            }
            Error::InconsistentRevision { .. } => DoxaStatus::InconsistentRevision,
            Error::InvalidState(_) | Error::WidthMismatch { .. } => DoxaStatus::InvalidState,
            Error::IndexOutOfRange { .. } => DoxaStatus::IndexOutOfRange,
            Error::UnsupportedOperator(_) => DoxaStatus::UnsupportedOperator,
            Error::AlphabetOverlap(_) => DoxaStatus::AlphabetOverlap,
        }
    }
}

/// Propositional alphabet handle.
pub struct DoxaAlphabet {
    inner: Alphabet,
}

/// Doxastic state handle.
pub struct DoxaState {
    inner: DoxasticState,
}

/// Revision sequence handle, bound to an alphabet.
pub struct DoxaSequence {
    alphabet: Alphabet,
    steps: Vec<RevisionStep>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(DoxaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(DoxaStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DoxaStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> DoxaStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DoxaStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            DoxaStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(DoxaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn doxa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn doxa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates an alphabet from whitespace-separated variable names.
///
/// # Safety
/// `names` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_alphabet_new(
    names: *const c_char,
    out: *mut *mut DoxaAlphabet,
) -> DoxaStatus {
    guard(|| {
        let names = text(names, "names")?;
        let inner = Alphabet::new(names.split_whitespace())?;
        write(out, boxed(DoxaAlphabet { inner }))
    })
}

/// # Safety
/// `alphabet` must be null or a handle from [`doxa_alphabet_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn doxa_alphabet_free(alphabet: *mut DoxaAlphabet) {
    if !alphabet.is_null() {
        drop(Box::from_raw(alphabet));
    }
}

/// The flat state over `alphabet`.
///
/// # Safety
/// `alphabet` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_state_flat(
    alphabet: *const DoxaAlphabet,
    out: *mut *mut DoxaState,
) -> DoxaStatus {
    guard(|| {
        let al = handle(alphabet, "alphabet")?;
        let inner = DoxasticState::flat(&al.inner)?;
        write(out, boxed(DoxaState { inner }))
    })
}

/// The two-class state `[F, ~F]`.
///
/// # Safety
/// `alphabet` must be a live handle, `formula` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_state_from_formula(
    alphabet: *const DoxaAlphabet,
    formula: *const c_char,
    out: *mut *mut DoxaState,
) -> DoxaStatus {
    guard(|| {
        let al = handle(alphabet, "alphabet")?;
        let f = parse(text(formula, "formula")?, &al.inner)?;
        let inner = DoxasticState::from_formula(&f, &al.inner)?;
        write(out, boxed(DoxaState { inner }))
    })
}

/// # Safety
/// `state` must be null or a live state handle.
#[no_mangle]
pub unsafe extern "C" fn doxa_state_free(state: *mut DoxaState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Revises `state` by `formula` with the operator named `op` (`lex`, `nat`,
/// `sev`, `msev`, `dsev`, `res`, `vrad` or `full`) into a new state.
///
/// # Safety
/// `state` must be a live handle, `op` and `formula` valid C strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_state_revise(
    state: *const DoxaState,
    op: *const c_char,
    formula: *const c_char,
    out: *mut *mut DoxaState,
) -> DoxaStatus {
    guard(|| {
        let s = &handle(state, "state")?.inner;
        let op: Operator = text(op, "op")?.parse()?;
        let f = parse(text(formula, "formula")?, s.alphabet())?;
        let inner = op.apply(s, &f)?;
        write(out, boxed(DoxaState { inner }))
    })
}

/// Renders the state as `[ {a}, {a,b} | {}, {b} ]`. Free the result with
/// [`doxa_string_free`].
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_state_render(
    state: *const DoxaState,
    out: *mut *mut c_char,
) -> DoxaStatus {
    guard(|| {
        let s = handle(state, "state")?;
        write(out, owned_string(s.inner.to_string()))
    })
}

/// Number of classes of the state.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_state_class_count(
    state: *const DoxaState,
    out: *mut usize,
) -> DoxaStatus {
    guard(|| write(out, handle(state, "state")?.inner.len()))
}

/// Whether two states order the models identically.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_state_equal(
    a: *const DoxaState,
    b: *const DoxaState,
    out: *mut bool,
) -> DoxaStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        write(out, a.inner == b.inner)
    })
}

/// Compares two models given as `{a,c}` literals: writes -1 if `i` is
/// strictly more believed, 0 if equivalent, 1 otherwise.
///
/// # Safety
/// `state` must be a live handle, `i` and `j` valid C strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_state_compare(
    state: *const DoxaState,
    i: *const c_char,
    j: *const c_char,
    out: *mut i32,
) -> DoxaStatus {
    guard(|| {
        let s = &handle(state, "state")?.inner;
        let i = parse_model(text(i, "i")?, s.alphabet())?;
        let j = parse_model(text(j, "j")?, s.alphabet())?;
        let c = match s.compare(i, j) {
            Comparison::Less => -1,
            Comparison::Equal => 0,
            Comparison::Greater => 1,
        };
        write(out, c)
    })
}

/// An empty revision sequence over `alphabet`.
///
/// # Safety
/// `alphabet` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_sequence_new(
    alphabet: *const DoxaAlphabet,
    out: *mut *mut DoxaSequence,
) -> DoxaStatus {
    guard(|| {
        let al = handle(alphabet, "alphabet")?;
        write(
            out,
            boxed(DoxaSequence {
                alphabet: al.inner.clone(),
                steps: Vec::new(),
            }),
        )
    })
}

/// # Safety
/// `seq` must be null or a live sequence handle.
#[no_mangle]
pub unsafe extern "C" fn doxa_sequence_free(seq: *mut DoxaSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Appends a revision step.
///
/// # Safety
/// `seq` must be a live handle; `op` and `formula` valid C strings.
#[no_mangle]
pub unsafe extern "C" fn doxa_sequence_push(
    seq: *mut DoxaSequence,
    op: *const c_char,
    formula: *const c_char,
) -> DoxaStatus {
    guard(|| {
        let seq = seq.as_mut().ok_or_else(|| null("sequence"))?;
        let op: Operator = text(op, "op")?.parse()?;
        let f = parse(text(formula, "formula")?, &seq.alphabet)?;
        seq.steps.push(RevisionStep::new(op, f));
        Ok(())
    })
}

fn same_alphabet(seq: &DoxaSequence, state: &DoxaState) -> Result<(), Failure> {
    if seq.alphabet != *state.inner.alphabet() {
        return Err(Failure(
            DoxaStatus::InvalidAlphabet,
            "sequence and state use different alphabets".to_string(),
        ));
    }
    Ok(())
}

/// Applies the whole sequence to `state`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_sequence_apply(
    seq: *const DoxaSequence,
    state: *const DoxaState,
    out: *mut *mut DoxaState,
) -> DoxaStatus {
    guard(|| {
        let (seq, state) = (handle(seq, "sequence")?, handle(state, "state")?);
        same_alphabet(seq, state)?;
        let inner = apply_sequence(&state.inner, &seq.steps)?;
        write(out, boxed(DoxaState { inner }))
    })
}

/// Whether step `index` (0-based) of the sequence is redundant from `state`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_sequence_redundant(
    seq: *const DoxaSequence,
    state: *const DoxaState,
    index: usize,
    out: *mut bool,
) -> DoxaStatus {
    guard(|| {
        let (seq, state) = (handle(seq, "sequence")?, handle(state, "state")?);
        same_alphabet(seq, state)?;
        write(out, redundant_general(&state.inner, &seq.steps, index)?)
    })
}

unsafe fn horn_pair(
    first: *const c_char,
    second: *const c_char,
) -> Result<(horn::HornFormula, horn::HornFormula), Failure> {
    let (t1, t2) = (text(first, "first")?, text(second, "second")?);
    let al = horn::infer_alphabet([t1, t2])?;
    Ok((horn::parse(t1, &al)?, horn::parse(t2, &al)?))
}

/// Whether `lex(first)` is redundant before `lex(second)` from the flat
/// state, for Horn clause lists (`;` or newline separated).
///
/// # Safety
/// `first` and `second` must be valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_horn_redundant(
    first: *const c_char,
    second: *const c_char,
    out: *mut bool,
) -> DoxaStatus {
    guard(|| {
        let (f1, f2) = horn_pair(first, second)?;
        write(out, classify_redundancy(&f1, &f2).is_some())
    })
}

/// Whether the Horn clause list `first` is equivalent to the negation of
/// `second`.
///
/// # Safety
/// `first` and `second` must be valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_horn_neg_equiv(
    first: *const c_char,
    second: *const c_char,
    out: *mut bool,
) -> DoxaStatus {
    guard(|| {
        let (f1, f2) = horn_pair(first, second)?;
        write(out, horn_equiv_negation(&f1, &f2).result)
    })
}

/// Runs a scenario given as text and writes its output. Free the result with
/// [`doxa_string_free`].
///
/// # Safety
/// `scenario` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn doxa_scenario_run(
    scenario: *const c_char,
    out: *mut *mut c_char,
) -> DoxaStatus {
    guard(|| {
        let answers = run_str(text(scenario, "scenario")?).map_err(|e| {
            let status = DoxaStatus::from(&e.error);
            Failure(status, e.to_string())
        })?;
        write(out, owned_string(answers))
    })
}
