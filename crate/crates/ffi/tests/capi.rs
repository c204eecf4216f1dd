use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use permutokit_ffi::*;
use serde_json::{json, Value};

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    pk_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = pk_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn run_matches_the_command_line_document() {
    unsafe {
        let mut out = ptr::null_mut();
        let input = cs(r#"{"F":[[1],[2,3]],"G":[[2],[1,3]]}"#);
        assert_eq!(pk_run(cs("comp").as_ptr(), cs("tits").as_ptr(), input.as_ptr(), 3, 3, &mut out), PkStatus::Ok);
        let doc: Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(doc["result"], json!([[1], [2], [3]]));

        let z = json!({"z": {"ground": [1, 2], "values": {"0": 0, "1": 1, "2": 1, "3": 1}}});
        assert_eq!(pk_run(cs("sections").as_ptr(), cs("count").as_ptr(), cs(&z.to_string()).as_ptr(), 3, 3, &mut out), PkStatus::Ok);
        assert_eq!(take(out), "2");

        assert_eq!(pk_run(cs("opens").as_ptr(), cs("check-indexing").as_ptr(), ptr::null(), 3, 2, &mut out), PkStatus::Ok);
        assert_eq!(serde_json::from_str::<Value>(&take(out)).unwrap()["passed"], json!(true));
    }
}

#[test]
fn run_reports_errors_by_status() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(pk_run(ptr::null(), cs("tits").as_ptr(), cs("{}").as_ptr(), 3, 3, &mut out), PkStatus::NullPointer);
        assert_eq!(pk_run(cs("comp").as_ptr(), cs("tits").as_ptr(), cs("nope").as_ptr(), 3, 3, &mut out), PkStatus::Invalid);
        assert!(last_error().contains("JSON"));
        assert_eq!(pk_run(cs("comp").as_ptr(), cs("tits").as_ptr(), cs("{}").as_ptr(), 3, 3, &mut out), PkStatus::Invalid);
        assert!(last_error().contains("F"));
        let bad = [0x66u8, 0xff, 0];
        assert_eq!(pk_run(bad.as_ptr().cast(), cs("tits").as_ptr(), cs("{}").as_ptr(), 3, 3, &mut out), PkStatus::Utf8);
        assert_eq!(pk_run(cs("comp").as_ptr(), cs("tits").as_ptr(), cs(r#"{"F":[[1]],"G":[[1]]}"#).as_ptr(), 3, 3, ptr::null_mut()), PkStatus::NullPointer);
    }
}

#[test]
fn check_passes_and_catches_mutants() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(pk_check(cs("o-bullet").as_ptr(), 3, 0, 100_000, false, &mut out), PkStatus::Ok);
        let doc: Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(doc["passed"], json!(true));
        assert_eq!(pk_check(cs("sigma").as_ptr(), 3, 0, 10_000, true, &mut out), PkStatus::LawViolation);
        assert_eq!(serde_json::from_str::<Value>(&take(out)).unwrap()["passed"], json!(false));
        assert_eq!(pk_check(cs("co").as_ptr(), 2, 0, 100, true, &mut out), PkStatus::Invalid);
        assert_eq!(pk_check(cs("unknown").as_ptr(), 2, 0, 100, false, &mut out), PkStatus::Invalid);
    }
}

#[test]
fn composition_handles() {
    unsafe {
        let (mut f, mut g, mut fg) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(pk_composition_from_json(cs("[[1],[2,3]]").as_ptr(), &mut f), PkStatus::Ok);
        assert_eq!(pk_composition_from_json(cs("[[2],[1,3]]").as_ptr(), &mut g), PkStatus::Ok);
        assert_eq!(pk_composition_tits(f, g, &mut fg), PkStatus::Ok);
        let mut len = 0usize;
        assert_eq!(pk_composition_len(fg, &mut len), PkStatus::Ok);
        assert_eq!(len, 3);
        let mut leq = false;
        assert_eq!(pk_composition_leq(f, fg, &mut leq), PkStatus::Ok);
        assert!(leq);
        let mut s = ptr::null_mut();
        assert_eq!(pk_composition_to_json(fg, &mut s), PkStatus::Ok);
        assert_eq!(take(s), "[[1],[2],[3]]");

        let mut bad = ptr::null_mut();
        assert_eq!(pk_composition_from_json(cs("[[1],[1]]").as_ptr(), &mut bad), PkStatus::Invalid);
        assert!(bad.is_null());
        let mut other = ptr::null_mut();
        pk_composition_from_json(cs("[[7]]").as_ptr(), &mut other);
        assert_eq!(pk_composition_tits(f, other, &mut bad), PkStatus::Invalid);
        assert_eq!(pk_composition_len(ptr::null(), &mut len), PkStatus::NullPointer);

        for h in [f, g, fg, other] {
            pk_composition_free(h);
        }
        pk_composition_free(ptr::null_mut());
    }
}

#[test]
fn boolean_function_handles() {
    unsafe {
        let perm = r#"{"ground":[1,2,3],"values":{"{}":0,"{1}":3,"{2}":3,"{3}":3,"{1,2}":5,"{1,3}":5,"{2,3}":5,"{1,2,3}":6}}"#;
        let mut z = ptr::null_mut();
        assert_eq!(pk_boolfun_from_json(cs(perm).as_ptr(), &mut z), PkStatus::Ok);
        let mut n = 0usize;
        assert_eq!(pk_sections_count(z, &mut n), PkStatus::Ok);
        assert_eq!(n, 7);
        let mut sub = false;
        assert_eq!(pk_boolfun_is_submodular(z, &mut sub), PkStatus::Ok);
        assert!(sub);

        let mut w = ptr::null_mut();
        pk_boolfun_from_json(cs(r#"{"ground":["a"],"values":{"0":0,"1":2}}"#).as_ptr(), &mut w);
        let mut zw = ptr::null_mut();
        assert_eq!(pk_boolfun_mul(z, w, &mut zw), PkStatus::Ok);
        assert_eq!(pk_sections_count(zw, &mut n), PkStatus::Ok);
        assert_eq!(n, 7);

        let mut s = ptr::null_mut();
        assert_eq!(pk_boolfun_to_json(w, &mut s), PkStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(pk_boolfun_from_json(cs(&take(s)).as_ptr(), &mut back), PkStatus::Ok);
        assert_eq!(pk_boolfun_mul(z, z, &mut zw), PkStatus::Invalid);
        assert_eq!(pk_boolfun_from_json(cs(r#"{"ground":[1],"values":{"0":1,"1":0}}"#).as_ptr(), &mut back), PkStatus::Invalid);

        for h in [z, w, zw, back] {
            pk_boolfun_free(h);
        }
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut out = ptr::null_mut();
        pk_run(cs("comp").as_ptr(), cs("tits").as_ptr(), cs("nope").as_ptr(), 3, 3, &mut out);
        assert!(!pk_last_error_message().is_null());
        std::thread::spawn(|| assert!(pk_last_error_message().is_null())).join().unwrap();
        assert!(CStr::from_ptr(pk_version()).to_str().unwrap().starts_with("0."));
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "permutokit.h"

int main(void) {
    PkComposition *f = NULL, *g = NULL, *fg = NULL;
    if (pk_composition_from_json("[[1],[2,3]]", &f) != PK_STATUS_OK) return 10;
    if (pk_composition_from_json("[[2],[1,3]]", &g) != PK_STATUS_OK) return 11;
    if (pk_composition_tits(f, g, &fg) != PK_STATUS_OK) return 12;
    char *s = NULL;
    if (pk_composition_to_json(fg, &s) != PK_STATUS_OK) return 13;
    int same = strcmp(s, "[[1],[2],[3]]") == 0;
    pk_string_free(s);
    pk_composition_free(f);
    pk_composition_free(g);
    pk_composition_free(fg);
    if (!same) return 14;
    char *doc = NULL;
    if (pk_check("sigma", 3, 0, 10000, true, &doc) != PK_STATUS_LAW_VIOLATION) return 15;
    pk_string_free(doc);
    if (pk_run("comp", "tits", "{", 3, 3, &doc) != PK_STATUS_INVALID) return 16;
    printf("%s\n", pk_last_error_message());
    return 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    assert!(include.join("permutokit.h").exists());
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = target.join("libpermutokit_ffi.a");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let exe = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .args(["-std=c11", "-Wall", "-Werror"])
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status();
    let status = match status {
        Ok(s) => s,
        Err(e) => panic!("no C compiler ({cc}): {e}"),
    };
    assert!(status.success(), "C build failed against {}", lib.display());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("JSON"));
}
