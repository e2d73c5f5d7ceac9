use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use dk2_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { dk2_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dk2_last_error()) }.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (Dk2Status, *mut Dk2Report) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs: Vec<_> = owned.iter().map(|c| c.as_ptr()).collect();
    let mut out = ptr::null_mut();
    let st = unsafe { dk2_run(ptrs.as_ptr(), ptrs.len(), &mut out) };
    (st, out)
}

#[test]
fn run_returns_report_handle() {
    let (st, rep) = run(&["dk2", "check", "relations", "--n", "3"]);
    assert_eq!(st, Dk2Status::Ok);
    assert_eq!(unsafe { dk2_report_exit_code(rep) }, 0);
    let json: serde_json::Value = serde_json::from_str(&take(unsafe { dk2_report_json(rep) })).unwrap();
    assert_eq!(json["verdict"], "pass");
    assert_eq!(json["command"], "check relations");
    unsafe { dk2_report_free(rep) };
}

#[test]
fn usage_errors_are_reported() {
    let (st, rep) = run(&["dk2", "check", "relations"]);
    assert_eq!(st, Dk2Status::Usage);
    assert!(rep.is_null());
    assert!(last_error().contains("--n"), "{}", last_error());
}

#[test]
fn null_arguments_are_rejected() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dk2_run(ptr::null(), 0, &mut out) }, Dk2Status::NullArgument);
    assert_eq!(unsafe { dk2_element_parse(3, ptr::null(), &mut out.cast()) }, Dk2Status::NullArgument);
    unsafe {
        dk2_report_free(ptr::null_mut());
        dk2_element_free(ptr::null_mut());
        dk2_series_free(ptr::null_mut());
        dk2_string_free(ptr::null_mut());
    }
}

#[test]
fn element_roundtrip_and_boundary() {
    let text = CString::new("[|l123|]").unwrap();
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { dk2_element_parse(3, text.as_ptr(), &mut x) }, Dk2Status::Ok);
    assert!(!unsafe { dk2_element_is_zero(x) });
    assert_eq!(take(unsafe { dk2_element_to_string(x) }), "[|l123|]");
    let mut dx = ptr::null_mut();
    assert_eq!(unsafe { dk2_element_boundary(x, &mut dx) }, Dk2Status::Ok);
    let d = take(unsafe { dk2_element_to_string(dx) });
    assert!(d.contains("a12") && d.contains("a13"), "{d}");
    let mut ddx = ptr::null_mut();
    assert_eq!(unsafe { dk2_element_boundary(dx, &mut ddx) }, Dk2Status::Ok);
    assert!(unsafe { dk2_element_is_zero(ddx) });
    unsafe {
        dk2_element_free(x);
        dk2_element_free(dx);
        dk2_element_free(ddx);
    }
}

#[test]
fn parse_errors_carry_a_message() {
    let text = CString::new("t1%").unwrap();
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { dk2_element_parse(3, text.as_ptr(), &mut x) }, Dk2Status::Parse);
    assert!(x.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn phi_series() {
    let v = CString::new("compactA").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dk2_phi(2, v.as_ptr(), &mut s) }, Dk2Status::Ok);
    assert_eq!(unsafe { dk2_series_order(s) }, 2);
    let json: serde_json::Value = serde_json::from_str(&take(unsafe { dk2_series_json(s) })).unwrap();
    assert!(json["h^2"].as_str().unwrap().contains("z(2)"));
    unsafe { dk2_series_free(s) };
    let bad = CString::new("sideways").unwrap();
    assert_ne!(unsafe { dk2_phi(2, bad.as_ptr(), &mut s) }, Dk2Status::Ok);
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(dk2_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compiles a small C client against the generated header and static library.
#[test]
fn c_client_links_against_header() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = root.join("include/dk2.h");
    assert!(header.exists(), "build script should have written {}", header.display());
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler ({cc})");
        return;
    }
    // The test binary lives in <target>/<profile>/deps; the static library sits one level up.
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libdk2_ffi.a");
    if !lib.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let mut build = Command::new(cargo);
        build.args(["build", "-p", "dk2-ffi", "--lib"]);
        if profile_dir.file_name().is_some_and(|n| n == "release") {
            build.arg("--release");
        }
        assert!(build.status().unwrap().success(), "building the static library failed");
    }
    let dir = tempdir();
    let src = dir.join("client.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "dk2.h"
int main(void) {
    const char *argv[] = {"dk2", "check", "relations", "--n", "3"};
    Dk2Report *r = NULL;
    if (dk2_run(argv, 5, &r) != DK2_STATUS_OK) { fprintf(stderr, "%s\n", dk2_last_error()); return 10; }
    int code = dk2_report_exit_code(r);
    char *json = dk2_report_json(r);
    int ok = strstr(json, "\"verdict\": \"pass\"") != NULL;
    dk2_string_free(json);
    dk2_report_free(r);
    Dk2Element *x = NULL, *dx = NULL;
    if (dk2_element_parse(3, "a12", &x) != DK2_STATUS_OK) return 11;
    if (dk2_element_boundary(x, &dx) != DK2_STATUS_OK || !dk2_element_is_zero(dx)) return 12;
    dk2_element_free(x);
    dk2_element_free(dx);
    return code == 0 && ok ? 0 : 13;
}
"#,
    )
    .unwrap();
    let exe = dir.join("client");
    let syntax = Command::new(&cc).args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"]).arg(root.join("include")).arg(&src).status().unwrap();
    assert!(syntax.success(), "header does not compile as C99");
    assert!(lib.exists(), "{} missing after build", lib.display());
    let linked = Command::new(&cc)
        .arg("-I")
        .arg(root.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(linked.success(), "linking the C client failed");
    let status = Command::new(&exe).status().unwrap();
    assert_eq!(status.code(), Some(0));
}

fn tempdir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("dk2-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
