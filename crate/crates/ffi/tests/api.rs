use std::ffi::{c_char, CStr, CString};
use std::ptr;

use pericat_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pericat_string_free(s);
    out
}

unsafe fn weight(s: &str) -> *mut PericatWeight {
    let mut w = ptr::null_mut();
    assert_eq!(
        pericat_weight_parse(cs(s).as_ptr(), &mut w),
        PericatStatus::Ok
    );
    w
}

unsafe fn last_error() -> String {
    CStr::from_ptr(pericat_last_error())
        .to_string_lossy()
        .into_owned()
}

#[test]
fn weights_and_blocks() {
    unsafe {
        let a = weight("-1,1,5");
        let b = weight("1,0,0");
        let mut s = ptr::null_mut();
        assert_eq!(pericat_weight_to_string(a, &mut s), PericatStatus::Ok);
        assert_eq!(take(s), "-1,1,5");
        assert_eq!(pericat_block_label_json(b, &mut s), PericatStatus::Ok);
        assert_eq!(take(s), r#"[{"key":"0","size":3,"odd":1}]"#);
        let mut same = true;
        assert_eq!(pericat_same_block(a, b, &mut same), PericatStatus::Ok);
        assert!(!same);
        let mut n = 0usize;
        assert_eq!(pericat_weight_rank(a, &mut n), PericatStatus::Ok);
        assert_eq!(n, 3);
        pericat_weight_free(a);
        pericat_weight_free(b);

        let sizes = [2usize, 1];
        let mut count = 0u64;
        assert_eq!(
            pericat_block_count(sizes.as_ptr(), 2, &mut count),
            PericatStatus::Ok
        );
        assert_eq!(count, 6);
    }
}

#[test]
fn tilting_and_theta() {
    unsafe {
        let w = weight("0,-1,1");
        let mut t = ptr::null_mut();
        assert_eq!(pericat_tilting(w, ptr::null(), &mut t), PericatStatus::Ok);
        let mut th = ptr::null_mut();
        assert_eq!(
            pericat_theta(cs("-1").as_ptr(), t, &mut th),
            PericatStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(pericat_char_to_json(th, &mut s), PericatStatus::Ok);
        let json = take(s);
        let mut back = ptr::null_mut();
        assert_eq!(
            pericat_char_from_json(cs(&json).as_ptr(), &mut back),
            PericatStatus::Ok
        );
        assert_eq!(pericat_char_to_json(back, &mut s), PericatStatus::Ok);
        assert_eq!(take(s), json);
        assert!(json.contains(r#""coeff":2"#), "{json}");
        for c in [t, th, back] {
            pericat_char_free(c);
        }
        pericat_weight_free(w);
    }
}

#[test]
fn kl_and_mult() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            pericat_kl_poly(cs("1324").as_ptr(), cs("3412").as_ptr(), &mut s),
            PericatStatus::Ok
        );
        assert_eq!(take(s), "[1,1]");
        let mu = weight("2,1,0");
        let lambda = weight("0,1,2");
        let mut m = -1i64;
        assert_eq!(
            pericat_verma_mult(mu, lambda, ptr::null(), &mut m),
            PericatStatus::Ok
        );
        assert_eq!(m, 1);
        pericat_weight_free(mu);
        pericat_weight_free(lambda);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(
            pericat_weight_parse(cs("x,1").as_ptr(), &mut w),
            PericatStatus::Parse
        );
        assert!(!last_error().is_empty());
        assert_eq!(
            pericat_weight_parse(ptr::null(), &mut w),
            PericatStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            pericat_weight_parse(bad.as_ptr().cast(), &mut w),
            PericatStatus::InvalidUtf8
        );

        let four = weight("0,1,0,0");
        let mut t = ptr::null_mut();
        assert_eq!(
            pericat_tilting(four, ptr::null(), &mut t),
            PericatStatus::NotWeaklyTypical
        );
        let mixed = weight("-1/2,0,1/2");
        assert_eq!(
            pericat_tilting(mixed, ptr::null(), &mut t),
            PericatStatus::NoTableEntry
        );
        assert_eq!(
            pericat_tilting(mixed, cs("2,2").as_ptr(), &mut t),
            PericatStatus::Parse
        );
        pericat_weight_free(four);
        pericat_weight_free(mixed);

        let ok = weight("1,0,0");
        let mut s = ptr::null_mut();
        assert_eq!(pericat_weight_to_string(ok, &mut s), PericatStatus::Ok);
        pericat_string_free(s);
        assert!(pericat_last_error().is_null());
        pericat_weight_free(ok);
    }
}
