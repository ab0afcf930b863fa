use std::ffi::{c_char, CStr, CString};
use std::ptr;

use serde_json::Value;
use tropbal_ffi::*;

fn take(s: *mut c_char) -> Value {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { tb_string_free(s) };
    serde_json::from_str(&text).unwrap()
}

fn last_error() -> Value {
    let p = tb_last_error();
    assert!(!p.is_null());
    serde_json::from_str(unsafe { CStr::from_ptr(p) }.to_str().unwrap()).unwrap()
}

fn fixture_json(name: &str) -> Value {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tb_fixture(name.as_ptr(), &mut out) }, TbStatus::Ok);
    take(out)
}

struct Loaded {
    deg: *mut TbDegeneration,
    curve: *mut TbCurve,
}

impl Drop for Loaded {
    fn drop(&mut self) {
        unsafe {
            tb_degeneration_free(self.deg);
            tb_curve_free(self.curve);
        }
    }
}

fn load(fx: &Value) -> Loaded {
    let deg_json = CString::new(fx["degeneration"].to_string()).unwrap();
    let curve_json = CString::new(fx["curve"].to_string()).unwrap();
    let mut deg = ptr::null_mut();
    let mut curve = ptr::null_mut();
    unsafe {
        assert_eq!(
            tb_degeneration_from_json(deg_json.as_ptr(), true, &mut deg),
            TbStatus::Ok
        );
        assert_eq!(
            tb_curve_from_json(curve_json.as_ptr(), &mut curve),
            TbStatus::Ok
        );
    }
    Loaded { deg, curve }
}

#[test]
fn check_fixture_through_handles() {
    let fx = fixture_json("k3-quartic");
    let h = load(&fx);
    let mut report = ptr::null_mut();
    let status = unsafe { tb_check(h.deg, h.curve, true, &mut report) };
    assert_eq!(status, TbStatus::Ok);
    let report = take(report);
    assert_eq!(report["overall"], "all_balanced");
    assert!(tb_last_error().is_null());
}

#[test]
fn violation_status() {
    let mut fx = fixture_json("toric-simplex");
    // Double one leg of the star; the other two no longer cancel it.
    let edges = fx["curve"]["edges"].as_array_mut().unwrap();
    let w = edges[0]["weight"].as_object_mut().unwrap();
    for v in w.values_mut() {
        *v = Value::from(v.as_i64().unwrap() * 2);
    }
    let h = load(&fx);
    let mut report = ptr::null_mut();
    let status = unsafe { tb_check(h.deg, h.curve, false, &mut report) };
    assert_eq!(status, TbStatus::Violation);
    let report = take(report);
    assert_eq!(report["overall"], "has_violation");
    assert!(report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v["status"] == "violated" && v["certificate"].is_object()));
}

#[test]
fn alpha_locate_skeleton() {
    let fx = fixture_json("k3-quartic");
    let h = load(&fx);
    let mut out = ptr::null_mut();

    let s = CString::new("D0").unwrap();
    assert_eq!(
        unsafe { tb_alpha(h.deg, s.as_ptr(), &mut out) },
        TbStatus::Ok
    );
    let alpha = take(out);
    assert_eq!(alpha["stratum"], serde_json::json!(["D0"]));
    assert_eq!(alpha["alpha"]["columns"], serde_json::json!(["H"]));

    let p = CString::new("D0=1/2,D1=1/2").unwrap();
    assert_eq!(
        unsafe { tb_locate(h.deg, p.as_ptr(), &mut out) },
        TbStatus::Ok
    );
    assert_eq!(take(out)["face"], serde_json::json!(["D0", "D1"]));

    assert_eq!(unsafe { tb_skeleton(h.deg, &mut out) }, TbStatus::Ok);
    assert_eq!(take(out)["faces"].as_array().unwrap().len(), 4);
}

#[test]
fn weights_from_annuli() {
    let fx = fixture_json("toric-simplex");
    let annuli = CString::new(fx["annuli"].to_string()).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { tb_weights(annuli.as_ptr(), &mut out) },
        TbStatus::Ok
    );
    let w = take(out);
    let edges = w["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 3);
    let curve_edges = fx["curve"]["edges"].as_array().unwrap();
    for (computed, given) in edges.iter().zip(curve_edges) {
        assert_eq!(computed["edge_id"], given["id"]);
        assert_eq!(computed["weight"], given["weight"]);
    }
}

#[test]
fn errors_set_status_and_last_error() {
    let fx = fixture_json("k3-quartic");
    let h = load(&fx);
    let mut out = ptr::null_mut();

    let p = CString::new("D0=1/2,D1=1/4").unwrap();
    assert_eq!(
        unsafe { tb_locate(h.deg, p.as_ptr(), &mut out) },
        TbStatus::ErrNotInSkeleton
    );
    assert!(out.is_null());
    assert_eq!(last_error()["error"], "E_NOT_IN_SKELETON");

    let s = CString::new("D0,D1,D2,D3").unwrap();
    assert_eq!(
        unsafe { tb_alpha(h.deg, s.as_ptr(), &mut out) },
        TbStatus::ErrUnknownName
    );
    assert_eq!(last_error()["error"], "E_UNKNOWN_STRATUM");

    let bad = CString::new("{").unwrap();
    let mut deg = ptr::null_mut();
    assert_eq!(
        unsafe { tb_degeneration_from_json(bad.as_ptr(), false, &mut deg) },
        TbStatus::ErrJson
    );
    assert!(deg.is_null());

    let name = CString::new("nope").unwrap();
    assert_eq!(
        unsafe { tb_fixture(name.as_ptr(), &mut out) },
        TbStatus::ErrUnknownName
    );
    assert_eq!(last_error()["error"], "E_UNKNOWN_FIXTURE");

    // A successful call clears the previous error.
    assert_eq!(unsafe { tb_skeleton(h.deg, &mut out) }, TbStatus::Ok);
    take(out);
    assert!(tb_last_error().is_null());
}

#[test]
fn null_arguments() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { tb_weights(ptr::null(), &mut out) },
        TbStatus::ErrNullPointer
    );
    assert_eq!(
        unsafe { tb_skeleton(ptr::null(), &mut out) },
        TbStatus::ErrNullPointer
    );
    let name = CString::new("k3-quartic").unwrap();
    assert_eq!(
        unsafe { tb_fixture(name.as_ptr(), ptr::null_mut()) },
        TbStatus::ErrNullPointer
    );
    unsafe {
        tb_degeneration_free(ptr::null_mut());
        tb_curve_free(ptr::null_mut());
        tb_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_curve_is_validation_error() {
    let mut fx = fixture_json("toric-simplex");
    fx["curve"]["edges"][0]["to"] = Value::from("c");
    let h = load(&fx);
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { tb_check(h.deg, h.curve, false, &mut report) },
        TbStatus::ErrValidation
    );
    assert!(report.is_null());
    assert_eq!(last_error()["error"], "E_LOOP");
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(tb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/tropbal.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "tb_degeneration_from_json",
        "tb_curve_from_json",
        "tb_check",
        "tb_alpha",
        "tb_locate",
        "tb_skeleton",
        "tb_weights",
        "tb_fixture",
        "tb_last_error",
        "tb_string_free",
        "TB_STATUS_VIOLATION",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"tropbal.h\"\nint main(void) { TbDegeneration *d = 0; char *s = 0;\n\
         return tb_skeleton(d, &s) == TB_STATUS_OK; }\n",
    )
    .unwrap();
    let status = match std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler found; skipping syntax check");
            return;
        }
    };
    assert!(status.success());
}
