use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use planemf_ffi::*;
use serde_json::Value;

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pmf_string_free(s);
    out
}

fn last_error() -> String {
    let p = pmf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn generate_serialize_parse_round_trip() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(pmf_instance_gen_gk(5, &mut inst), PmfStatus::Ok);
        assert_eq!(pmf_instance_num_vertices(inst), 10);
        assert_eq!(pmf_instance_num_demands(inst), 7);
        let mut text = ptr::null_mut();
        assert_eq!(pmf_instance_serialize(inst, &mut text), PmfStatus::Ok);
        let text = take_string(text);
        assert!(text.starts_with("planemf 1\n"));

        let c = CString::new(text.clone()).unwrap();
        let mut again = ptr::null_mut();
        assert_eq!(pmf_instance_parse(c.as_ptr(), &mut again), PmfStatus::Ok);
        let mut text2 = ptr::null_mut();
        assert_eq!(pmf_instance_serialize(again, &mut text2), PmfStatus::Ok);
        assert_eq!(take_string(text2), text);
        pmf_instance_free(inst);
        pmf_instance_free(again);
    }
}

#[test]
fn solve_stages_on_c4() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(pmf_instance_gen_c4(&mut inst), PmfStatus::Ok);
        let expected = [
            (PmfStage::Fractional, (2, 1)),
            (PmfStage::HalfInteger, (3, 2)),
            (PmfStage::Integer, (1, 1)),
        ];
        for (stage, value) in expected {
            let (mut num, mut den, mut json) = (0i64, 0i64, ptr::null_mut());
            assert_eq!(pmf_solve(inst, stage, &mut num, &mut den, &mut json), PmfStatus::Ok);
            assert_eq!((num, den), value, "{stage:?}");
            let doc: Value = serde_json::from_str(&take_string(json)).unwrap();
            assert_eq!(doc["value"]["num"], value.0);
            assert_eq!(doc["checks"]["feasible"], true);
            assert!(doc["paths"].is_array());
        }
        let mut json = ptr::null_mut();
        assert_eq!(
            pmf_solve(inst, PmfStage::PlusOne, ptr::null_mut(), ptr::null_mut(), &mut json),
            PmfStatus::Ok
        );
        take_string(json);
        pmf_instance_free(inst);
    }
}

#[test]
fn multicut_and_report() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(pmf_instance_gen_gk(3, &mut inst), PmfStatus::Ok);
        let (mut cost, mut json) = (0u64, ptr::null_mut());
        assert_eq!(pmf_multicut(inst, &mut cost, &mut json), PmfStatus::Ok);
        assert_eq!(cost, 2);
        let doc: Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["multicut"].as_array().unwrap().len(), 2);

        let (mut ok, mut json) = (0i32, ptr::null_mut());
        assert_eq!(pmf_report(inst, &mut ok, &mut json), PmfStatus::Ok);
        assert_eq!(ok, 1);
        let doc: Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["oracle_min_multicut"], 2);
        pmf_instance_free(inst);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(pmf_instance_gen_gk(2, &mut inst), PmfStatus::InvalidArgument);
        assert!(inst.is_null());
        assert!(last_error().contains("k"));

        let c = CString::new("planemf 1\nvertices 2\nedge 0 5 supply 1\n").unwrap();
        assert_eq!(pmf_instance_parse(c.as_ptr(), &mut inst), PmfStatus::Parse);
        assert!(last_error().contains("line 3"), "{}", last_error());

        assert_eq!(pmf_instance_parse(ptr::null(), &mut inst), PmfStatus::NullArgument);
        let bytes = b"planemf \xff\0";
        assert_eq!(
            pmf_instance_parse(bytes.as_ptr().cast(), &mut inst),
            PmfStatus::InvalidUtf8
        );

        let mut json = ptr::null_mut();
        assert_eq!(
            pmf_multicut(ptr::null(), ptr::null_mut(), &mut json),
            PmfStatus::NullArgument
        );
        assert_eq!(pmf_instance_num_edges(ptr::null()), 0);

        assert_eq!(pmf_instance_gen_c4(&mut inst), PmfStatus::Ok);
        assert!(pmf_last_error().is_null());
        assert_eq!(pmf_instance_serialize(inst, ptr::null_mut()), PmfStatus::NullArgument);
        pmf_instance_free(inst);
        pmf_instance_free(ptr::null_mut());
        pmf_string_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(pmf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(crate_dir.join("include/planemf.h")).unwrap();
    let source = std::fs::read_to_string(crate_dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 12);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct PmfInstance PmfInstance;"));
}

/// Compiles a small C program against the header and the static library.
/// Skipped when no C compiler or no static library is present.
#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|deps| deps.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libplanemf_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler unavailable");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("9/4"));
    assert!(lines.next().unwrap().contains("line 1"));
}
