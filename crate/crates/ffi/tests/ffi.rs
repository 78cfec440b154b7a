use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cubecycle_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cc_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn qn_counts_and_text_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cc_subgraph_qn(4, &mut g), CcStatus::Ok);
        assert_eq!(cc_subgraph_edge_count(g), 32);
        let mut count = 0;
        assert_eq!(cc_count_cycles(g, 4, 0, &mut count), CcStatus::Ok);
        assert_eq!(count, 24);
        let mut free = -1;
        assert_eq!(cc_is_cycle_free(g, 4, 0, &mut free), CcStatus::Ok);
        assert_eq!(free, 0);

        let mut text = ptr::null_mut();
        assert_eq!(cc_subgraph_to_text(g, &mut text), CcStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(cc_subgraph_parse(text, &mut again), CcStatus::Ok);
        assert_eq!(cc_subgraph_edge_count(again), 32);
        cc_string_free(text);
        cc_subgraph_free(again);
        cc_subgraph_free(g);
    }
}

#[test]
fn error_codes_match_the_cli() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cc_subgraph_qn(40, &mut g), CcStatus::InvalidParameter);
        assert!(g.is_null());
        assert!(last_error().contains("invalid parameter"));
        assert_eq!(cc_subgraph_qn(3, ptr::null_mut()), CcStatus::NullPointer);
        let bad = CString::new("dim=3\n{1}-{2}\n").unwrap();
        assert_eq!(
            cc_subgraph_parse(bad.as_ptr(), &mut g),
            CcStatus::InvalidParameter
        );
        let (mut total, mut x) = (0, 0);
        assert_eq!(
            cc_census(13, 4, 0, &mut total, &mut x),
            CcStatus::ResourceLimit
        );
        assert_eq!(cc_census(4, 6, 0, &mut total, &mut x), CcStatus::Ok);
        assert_eq!(6 * total, 32 * x);
        let mut count = 0;
        assert_eq!(
            cc_count_cycles(ptr::null(), 4, 0, &mut count),
            CcStatus::NullPointer
        );
        assert_eq!(cc_subgraph_edge_count(ptr::null()), 0);
    }
}

#[test]
fn representation_round_trip_and_mutation() {
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(cc_representation_build(9, 9, &mut rep), CcStatus::Ok);
        assert_eq!(cc_representation_verify(rep), CcStatus::Ok);
        let mut cycle = ptr::null_mut();
        assert_eq!(cc_representation_subgraph(rep, &mut cycle), CcStatus::Ok);
        assert_eq!(cc_subgraph_edge_count(cycle), 18);
        cc_subgraph_free(cycle);

        let mut json = ptr::null_mut();
        assert_eq!(cc_representation_to_json(rep, &mut json), CcStatus::Ok);
        let doc = CStr::from_ptr(json).to_str().unwrap().to_owned();
        cc_string_free(json);
        cc_representation_free(rep);

        let mut value: serde_json::Value = serde_json::from_str(&doc).unwrap();
        value["a_seq"][0] = serde_json::json!([1, 3, 9]);
        let mutated = CString::new(value.to_string()).unwrap();
        let mut broken = ptr::null_mut();
        let status = cc_representation_from_json(mutated.as_ptr(), &mut broken);
        if status == CcStatus::Ok {
            assert_eq!(
                cc_representation_verify(broken),
                CcStatus::VerificationFailure
            );
            assert!(last_error().contains("(i)"), "{}", last_error());
            cc_representation_free(broken);
        } else {
            assert_eq!(status, CcStatus::InvalidParameter);
        }
        assert_eq!(
            cc_representation_build(6, 6, &mut rep),
            CcStatus::InvalidParameter
        );
    }
}

#[test]
fn exponents_construction_and_oracle() {
    unsafe {
        let (mut num, mut den) = (0, 0);
        assert_eq!(
            cc_upper_bound_exponent(13, &mut num, &mut den),
            CcStatus::Ok
        );
        assert_eq!((num, den), (13, 15));
        assert_eq!(cc_lower_bound_exponent(2, &mut num, &mut den), CcStatus::Ok);
        assert_eq!((num, den), (2, 3));
        assert_eq!(
            cc_upper_bound_exponent(8, &mut num, &mut den),
            CcStatus::InvalidParameter
        );

        let mut kept = ptr::null_mut();
        assert_eq!(cc_construct(6, 2, 0.5, 7, 0, 0, &mut kept), CcStatus::Ok);
        let mut free = 0;
        assert_eq!(cc_is_cycle_free(kept, 4, 0, &mut free), CcStatus::Ok);
        assert_eq!(free, 1);
        cc_subgraph_free(kept);

        let mut value = 0;
        assert_eq!(cc_ex_cube(2, 4, 0, &mut value), CcStatus::Ok);
        assert_eq!(value, 3);
        assert!(!CStr::from_ptr(cc_version()).to_bytes().is_empty());
    }
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include").join("cubecycle.h");
    assert!(header.exists(), "header not generated");
    let exe = std::env::current_exe().unwrap();
    // `cargo test` rebuilds the archive in `deps/` but only `cargo build` copies it up.
    let deps_dir = exe.parent().unwrap();
    let lib = [deps_dir, deps_dir.parent().unwrap()]
        .iter()
        .map(|d| d.join("libcubecycle_ffi.a"))
        .find(|p| p.exists())
        .unwrap_or_else(|| deps_dir.join("libcubecycle_ffi.a"));
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
