use std::ffi::{c_char, CStr, CString};
use std::ptr;

use locikit_ffi::*;

const HYPER: &str = "\
[ring]
name = hyper
vars = x, y
relations = x*y

[[module]]
name = Rx
ideal = x

[[prime]]
name = px
gens = x
minimal_over = ring

[[prime]]
name = py
gens = y
minimal_over = ring

[[prime]]
name = m
gens = x, y

[[check]]
id = oracle
kind = oracle
module = Rx
";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    lk_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(lk_last_error_message()).to_str().unwrap().to_string()
}

unsafe fn parse(text: &str) -> *mut LkFixture {
    let mut fx = ptr::null_mut();
    assert_eq!(lk_fixture_parse(c(text).as_ptr(), &mut fx), LkStatus::Ok);
    fx
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(lk_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn locus_member_and_verify() {
    unsafe {
        let fx = parse(HYPER);
        let mut out = ptr::null_mut();
        assert_eq!(lk_compute_locus_json(fx, c("Rx").as_ptr(), c("fid").as_ptr(), &mut out), LkStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["kind"], "fid");
        assert_eq!(v["mode"], "closed-form");

        let mut b = -1;
        assert_eq!(lk_member(fx, c("Rx").as_ptr(), c("fid").as_ptr(), c("m").as_ptr(), &mut b), LkStatus::Ok);
        assert_eq!(b, 0);
        assert_eq!(lk_member(fx, c("Rx").as_ptr(), c("fid").as_ptr(), c("px").as_ptr(), &mut b), LkStatus::Ok);
        assert_eq!(b, 1);

        let mut exit = -1;
        assert_eq!(lk_verify_json(fx, ptr::null(), &mut out, &mut exit), LkStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(exit, 0);
        assert_eq!(report["checks"][0]["verdict"], "pass");
        assert_eq!(lk_verify_json(fx, c("oracle").as_ptr(), &mut out, &mut exit), LkStatus::Ok);
        take(out);

        assert_eq!(lk_fixture_print(fx, &mut out), LkStatus::Ok);
        let printed = take(out);
        let again = parse(&printed);
        assert_eq!(lk_fixture_print(again, &mut out), LkStatus::Ok);
        assert_eq!(take(out), printed);
        lk_fixture_free(again);
        lk_fixture_free(fx);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut fx = ptr::null_mut();
        let bad = c("[ring]\nvars = x\nrelations = y\n");
        assert_eq!(lk_fixture_parse(bad.as_ptr(), &mut fx), LkStatus::Parse);
        assert!(fx.is_null());
        assert!(last_error().contains("line 3"), "{}", last_error());
        assert_eq!(lk_fixture_parse(ptr::null(), &mut fx), LkStatus::NullPointer);
        assert_eq!(lk_fixture_parse(bad.as_ptr(), ptr::null_mut()), LkStatus::NullPointer);

        let fx = parse(HYPER);
        let mut out = ptr::null_mut();
        let mut b = 0;
        assert_eq!(lk_compute_locus_json(fx, c("nope").as_ptr(), c("cm").as_ptr(), &mut out), LkStatus::NotFound);
        assert_eq!(lk_compute_locus_json(fx, c("Rx").as_ptr(), c("bogus").as_ptr(), &mut out), LkStatus::InvalidArgument);
        assert_eq!(lk_member(fx, c("Rx").as_ptr(), c("cm").as_ptr(), c("q").as_ptr(), &mut b), LkStatus::NotFound);
        assert_eq!(lk_compute_locus_json(ptr::null(), c("Rx").as_ptr(), c("cm").as_ptr(), &mut out), LkStatus::NullPointer);
        let invalid = [0xffu8, 0];
        assert_eq!(
            lk_compute_locus_json(fx, invalid.as_ptr().cast(), c("cm").as_ptr(), &mut out),
            LkStatus::InvalidUtf8
        );
        assert_eq!(lk_compute_locus_json(fx, c("Rx").as_ptr(), c("cm").as_ptr(), &mut out), LkStatus::Ok);
        take(out);
        assert_eq!(last_error(), "");
        lk_fixture_free(fx);
        lk_fixture_free(ptr::null_mut());
        lk_string_free(ptr::null_mut());
    }
}

#[test]
fn polynomials_normalize() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(lk_poly_normalize(c("x, y").as_ptr(), c("(x + y)^2 - 2*x*y").as_ptr(), &mut out), LkStatus::Ok);
        assert_eq!(take(out), "x^2 + y^2");
        assert_eq!(lk_poly_normalize(c("x").as_ptr(), c("x + z").as_ptr(), &mut out), LkStatus::Parse);
        assert!(last_error().contains('z'));
    }
}
