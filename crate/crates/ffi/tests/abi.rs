use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use scroll_ulrich_ffi::*;

fn sporadic(t: i64) -> *mut SuParams {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { su_params_sporadic(t, &mut p) }, SuStatus::Ok);
    assert!(!p.is_null());
    p
}

#[test]
fn params_lifecycle_and_errors() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(su_params_new(0, 3, 3, &mut p), SuStatus::InvalidParams);
        assert!(p.is_null());
        assert_eq!(su_params_new(1, 5, 5, &mut p), SuStatus::Ok);
        su_params_free(p);
        su_params_free(ptr::null_mut());
        assert_eq!(
            su_params_sporadic(1, ptr::null_mut()),
            SuStatus::NullPointer
        );
    }
}

#[test]
fn cohomology_and_chi() {
    let p = sporadic(2);
    let (mut lo, mut hi, mut chi) = ([0i64; 4], [0i64; 4], 0i64);
    unsafe {
        let s = su_coh_scroll_line(p, 1, 0, -6, lo.as_mut_ptr(), hi.as_mut_ptr(), &mut chi);
        assert_eq!(s, SuStatus::Ok);
        assert_eq!((lo, hi, chi), ([0, 15, 0, 0], [0, 15, 0, 0], -15));

        let mut c = 0;
        assert_eq!(su_chi_line(p, 1, 0, 0, &mut c), SuStatus::Ok);
        assert_eq!(c, 15);
        assert_eq!(
            su_chi_line(ptr::null(), 1, 0, 0, &mut c),
            SuStatus::NullPointer
        );
        su_params_free(p);
    }
}

#[test]
fn ulrich_verdicts() {
    let p = sporadic(1);
    let mut u = SuUlrich::Undecided;
    unsafe {
        for (x, a, b) in [(0, 2, 2), (1, -1, 1), (1, 2, -1), (2, -1, -2)] {
            assert_eq!(su_is_ulrich_line(p, x, a, b, &mut u), SuStatus::Ok);
            assert_eq!(u, SuUlrich::Ulrich);
        }
        assert_eq!(su_is_ulrich_line(p, 0, 0, 0, &mut u), SuStatus::Ok);
        assert_eq!(u, SuUlrich::NotUlrich);
        su_params_free(p);
    }
}

#[test]
fn towers() {
    let p = sporadic(3);
    let mut tw = ptr::null_mut();
    let (mut rank, mut dim) = (0, 0);
    unsafe {
        let spec = CString::new("M1 M2 M1").unwrap();
        assert_eq!(su_tower_new(p, spec.as_ptr(), &mut tw), SuStatus::Ok);
        assert_eq!(su_tower_rank(tw, &mut rank), SuStatus::Ok);
        assert_eq!(su_tower_moduli_dim(tw, &mut dim), SuStatus::Ok);
        assert_eq!((rank, dim), (3, 2 * (8 * 3 - 4)));
        su_tower_free(tw);

        let bad = CString::new("M1,Q7").unwrap();
        assert_eq!(
            su_tower_new(p, bad.as_ptr(), &mut tw),
            SuStatus::InvalidArgument
        );
        assert!(tw.is_null());
        su_params_free(p);

        let mut q = ptr::null_mut();
        assert_eq!(su_params_new(1, 5, 5, &mut q), SuStatus::Ok);
        let spec = CString::new("M1,M2").unwrap();
        assert_eq!(
            su_tower_new(q, spec.as_ptr(), &mut tw),
            SuStatus::Unavailable
        );
        su_params_free(q);
    }
}

#[test]
fn report_json_roundtrip() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(su_report_json(1, 2, 2, 3, &mut s), SuStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        su_string_free(s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["grid"]["t_range"], serde_json::json!([1, 2]));
        assert!(v["summary"]["pass"].as_u64().unwrap() > 0);
        assert_eq!(
            su_report_json(2, 1, 1, 1, &mut s),
            SuStatus::InvalidArgument
        );
        assert!(s.is_null());
    }
}

#[test]
fn status_messages_are_static_strings() {
    for st in [SuStatus::Ok, SuStatus::InvalidParams, SuStatus::Internal] {
        let m = unsafe { CStr::from_ptr(su_status_message(st)) };
        assert!(!m.to_bytes().is_empty());
    }
}

#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libscroll_ulrich_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let out_dir = tempfile::tempdir().unwrap();
    let bin = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to compile");
    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
