use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use doxa_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = doxa_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    doxa_string_free(p);
    s
}

unsafe fn alphabet(names: &str) -> *mut DoxaAlphabet {
    let mut al = ptr::null_mut();
    assert_eq!(
        doxa_alphabet_new(c(names).as_ptr(), &mut al),
        DoxaStatus::Ok
    );
    al
}

unsafe fn revise(s: *const DoxaState, op: &str, f: &str) -> *mut DoxaState {
    let mut out = ptr::null_mut();
    let status = doxa_state_revise(s, c(op).as_ptr(), c(f).as_ptr(), &mut out);
    assert_eq!(status, DoxaStatus::Ok, "{}", last_error());
    out
}

#[test]
fn revise_and_render() {
    unsafe {
        let al = alphabet("a b");
        let mut flat = ptr::null_mut();
        assert_eq!(doxa_state_flat(al, &mut flat), DoxaStatus::Ok);
        let s1 = revise(flat, "lex", "a | b");
        let s2 = revise(s1, "lex", "a");

        let mut text = ptr::null_mut();
        assert_eq!(doxa_state_render(s2, &mut text), DoxaStatus::Ok);
        assert_eq!(take_string(text), "[ {a}, {a,b} | {b} | {} ]");

        let mut n = 0usize;
        assert_eq!(doxa_state_class_count(s2, &mut n), DoxaStatus::Ok);
        assert_eq!(n, 3);

        let mut cmp = 0i32;
        assert_eq!(
            doxa_state_compare(s2, c("{b}").as_ptr(), c("{a}").as_ptr(), &mut cmp),
            DoxaStatus::Ok
        );
        assert_eq!(cmp, 1);

        let mut from_f = ptr::null_mut();
        assert_eq!(
            doxa_state_from_formula(al, c("a | b").as_ptr(), &mut from_f),
            DoxaStatus::Ok
        );
        let mut eq = false;
        assert_eq!(doxa_state_equal(s1, from_f, &mut eq), DoxaStatus::Ok);
        assert!(eq);

        for s in [flat, s1, s2, from_f] {
            doxa_state_free(s);
        }
        doxa_alphabet_free(al);
    }
}

#[test]
fn sequences_and_redundancy() {
    unsafe {
        let al = alphabet("a b");
        let mut seq = ptr::null_mut();
        assert_eq!(doxa_sequence_new(al, &mut seq), DoxaStatus::Ok);
        for f in ["a & b", "~a | b", "a"] {
            assert_eq!(
                doxa_sequence_push(seq, c("lex").as_ptr(), c(f).as_ptr()),
                DoxaStatus::Ok
            );
        }
        let mut flat = ptr::null_mut();
        assert_eq!(doxa_state_flat(al, &mut flat), DoxaStatus::Ok);
        let mut red = false;
        assert_eq!(
            doxa_sequence_redundant(seq, flat, 1, &mut red),
            DoxaStatus::Ok
        );
        assert!(red);
        assert_eq!(
            doxa_sequence_redundant(seq, flat, 2, &mut red),
            DoxaStatus::Ok
        );
        assert!(!red);
        assert_eq!(
            doxa_sequence_redundant(seq, flat, 3, &mut red),
            DoxaStatus::IndexOutOfRange
        );

        let mut end = ptr::null_mut();
        assert_eq!(doxa_sequence_apply(seq, flat, &mut end), DoxaStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(doxa_state_render(end, &mut text), DoxaStatus::Ok);
        assert_eq!(take_string(text), "[ {a,b} | {a} | {}, {b} ]");

        let other = alphabet("x");
        let mut other_flat = ptr::null_mut();
        assert_eq!(doxa_state_flat(other, &mut other_flat), DoxaStatus::Ok);
        assert_eq!(
            doxa_sequence_apply(seq, other_flat, &mut end),
            DoxaStatus::InvalidAlphabet
        );

        doxa_state_free(end);
        doxa_state_free(flat);
        doxa_state_free(other_flat);
        doxa_sequence_free(seq);
        doxa_alphabet_free(al);
        doxa_alphabet_free(other);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let al = alphabet("a");
        let mut flat = ptr::null_mut();
        assert_eq!(doxa_state_flat(al, &mut flat), DoxaStatus::Ok);
        assert!(doxa_last_error().is_null());

        let mut out = ptr::null_mut();
        let status = doxa_state_revise(flat, c("lex").as_ptr(), c("a & ~a").as_ptr(), &mut out);
        assert_eq!(status, DoxaStatus::InconsistentRevision);
        assert!(out.is_null());
        assert!(last_error().contains("inconsistent"));

        let status = doxa_state_revise(flat, c("rad").as_ptr(), c("a").as_ptr(), &mut out);
        assert_eq!(status, DoxaStatus::UnsupportedOperator);
        let status = doxa_state_revise(flat, c("lex").as_ptr(), c("a &").as_ptr(), &mut out);
        assert_eq!(status, DoxaStatus::Parse);
        let status = doxa_state_revise(flat, c("lex").as_ptr(), ptr::null(), &mut out);
        assert_eq!(status, DoxaStatus::NullPointer);
        assert_eq!(
            doxa_state_flat(ptr::null(), &mut out),
            DoxaStatus::NullPointer
        );

        let mut bad = ptr::null_mut();
        assert_eq!(
            doxa_alphabet_new(c("a a").as_ptr(), &mut bad),
            DoxaStatus::InvalidAlphabet
        );
        let invalid = [0xffu8, 0];
        assert_eq!(
            doxa_alphabet_new(invalid.as_ptr() as *const c_char, &mut bad),
            DoxaStatus::InvalidUtf8
        );

        doxa_state_free(flat);
        doxa_alphabet_free(al);
        doxa_state_free(ptr::null_mut());
        doxa_string_free(ptr::null_mut());
    }
}

#[test]
fn horn_checks() {
    unsafe {
        let mut r = false;
        assert_eq!(
            doxa_horn_redundant(c("a").as_ptr(), c("~a").as_ptr(), &mut r),
            DoxaStatus::Ok
        );
        assert!(r);
        assert_eq!(
            doxa_horn_redundant(c("a").as_ptr(), c("b").as_ptr(), &mut r),
            DoxaStatus::Ok
        );
        assert!(!r);
        assert_eq!(
            doxa_horn_neg_equiv(c("~x").as_ptr(), c("x").as_ptr(), &mut r),
            DoxaStatus::Ok
        );
        assert!(r);
        assert_eq!(
            doxa_horn_redundant(c("a | b").as_ptr(), c("a").as_ptr(), &mut r),
            DoxaStatus::Parse
        );
    }
}

#[test]
fn scenario_text() {
    unsafe {
        let mut out = ptr::null_mut();
        let text = c("vars a\nrevise lex a\nquery state\n");
        assert_eq!(doxa_scenario_run(text.as_ptr(), &mut out), DoxaStatus::Ok);
        assert_eq!(take_string(out), "[ {a} | {} ]\n");
        let text = c("vars a\nrevise lex a & ~a\n");
        assert_eq!(
            doxa_scenario_run(text.as_ptr(), &mut out),
            DoxaStatus::InconsistentRevision
        );
        assert!(last_error().starts_with("line 2:"));
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/doxa.h")).unwrap();
    for name in [
        "doxa_alphabet_new",
        "doxa_state_flat",
        "doxa_state_revise",
        "doxa_state_render",
        "doxa_sequence_redundant",
        "doxa_horn_neg_equiv",
        "doxa_scenario_run",
        "doxa_last_error",
        "DOXA_STATUS_INCONSISTENT_REVISION",
        "typedef struct DoxaState DoxaState;",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// The static library sits next to the test executable's `deps` directory.
fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libdoxa_ffi.a");
    lib.exists().then_some(lib)
}

fn have(tool: &str) -> bool {
    Command::new(tool).arg("--version").output().is_ok()
}

#[test]
fn c_program_links_and_runs() {
    assert!(have("cc"), "a C compiler is required for this test");
    let lib = static_lib().expect("libdoxa_ffi.a is built alongside the tests");
    let dir = std::env::temp_dir().join(format!("doxa-ffi-c-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let exe = dir.join("smoke");
    let build = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(
        build.status.success(),
        "{}",
        String::from_utf8_lossy(&build.stderr)
    );
    let run = Command::new(Path::new(&exe)).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "[ {a} | {} ]\ntrue\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
