use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use qutrit_witness_ffi::*;

fn witness(a: f64, b: f64, c: f64) -> *mut QwWitness {
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { qw_witness_new(a, b, c, &mut w) }, QwStatus::Ok);
    assert!(!w.is_null());
    w
}

#[test]
fn witness_lifecycle_and_matrix() {
    let w = witness(1.0, 1.0, 0.0);
    let mut re = [0.0; 81];
    let mut im = [0.0; 81];
    assert_eq!(
        unsafe { qw_witness_matrix(w, re.as_mut_ptr(), im.as_mut_ptr()) },
        QwStatus::Ok
    );
    let diag: Vec<f64> = (0..9).map(|k| re[10 * k]).collect();
    assert_eq!(diag, [1., 1., 0., 0., 1., 1., 1., 0., 1.]);
    assert_eq!(re.iter().filter(|&&x| x == -1.0).count(), 6);
    assert!(im.iter().all(|&x| x == 0.0));
    unsafe { qw_witness_free(w) };
    unsafe { qw_witness_free(ptr::null_mut()) };
}

#[test]
fn invalid_parameters_are_reported() {
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { qw_witness_new(-1.0, 0.0, 0.0, &mut w) },
        QwStatus::InvalidParams
    );
    assert!(w.is_null());
    assert_eq!(
        unsafe { qw_witness_new(f64::NAN, 0.0, 0.0, &mut w) },
        QwStatus::InvalidParams
    );
    assert_eq!(
        unsafe { qw_witness_new(1.0, 1.0, 0.0, ptr::null_mut()) },
        QwStatus::NullPointer
    );
}

#[test]
fn classification() {
    let mut out = QwClassification::default();
    let w = witness(1.0, 1.0, 0.0);
    assert_eq!(
        unsafe { qw_witness_classify(w, 1e-12, &mut out) },
        QwStatus::Ok
    );
    assert!(out.is_witness && out.on_ellipse && !out.is_psd);
    assert_eq!((out.indecomposable, out.failed_mask), (1, 0));
    unsafe { qw_witness_free(w) };

    let w = witness(0.5, 0.4, 0.4);
    assert_eq!(
        unsafe { qw_witness_classify(w, 1e-12, &mut out) },
        QwStatus::Ok
    );
    assert!(!out.is_witness);
    assert_eq!(out.indecomposable, -1);
    assert_eq!(out.failed_mask, QW_FAILED_SUM | QW_FAILED_PRODUCT);
    unsafe { qw_witness_free(w) };

    assert_eq!(
        unsafe { qw_witness_classify(ptr::null(), 1e-12, &mut out) },
        QwStatus::NullPointer
    );
}

#[test]
fn expectation_and_minimum() {
    let w = witness(0.0, 1.0, 1.0);
    let ones = [1.0; 3];
    let zeros = [0.0; 3];
    let mut v = f64::NAN;
    let st = unsafe {
        qw_witness_expectation(
            w,
            ones.as_ptr(),
            zeros.as_ptr(),
            ones.as_ptr(),
            zeros.as_ptr(),
            &mut v,
        )
    };
    assert_eq!(st, QwStatus::Ok);
    assert!(v.abs() < 1e-14);
    let e1 = [1.0, 0.0, 0.0];
    unsafe {
        qw_witness_expectation(
            w,
            e1.as_ptr(),
            zeros.as_ptr(),
            e1.as_ptr(),
            zeros.as_ptr(),
            &mut v,
        )
    };
    assert_eq!(v, 0.0);
    let st = unsafe {
        qw_witness_expectation(
            w,
            ptr::null(),
            zeros.as_ptr(),
            e1.as_ptr(),
            zeros.as_ptr(),
            &mut v,
        )
    };
    assert_eq!(st, QwStatus::NullPointer);
    unsafe { qw_witness_free(w) };

    let w = witness(0.5, 0.1, 1.4);
    assert_eq!(
        unsafe { qw_witness_min_product(w, 16, 3, &mut v) },
        QwStatus::Ok
    );
    assert!(v < -1e-4);
    assert_eq!(
        unsafe { qw_witness_min_product(w, 0, 3, &mut v) },
        QwStatus::InvalidParams
    );
    unsafe { qw_witness_free(w) };
}

#[test]
fn span_reports() {
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { qw_span_new(1.0, 1.0, 0.0, 0.0, 1e-4, 0, 0, &mut r) },
        QwStatus::Ok
    );
    assert_eq!(unsafe { qw_span_rank(r) }, 9);
    assert_eq!(unsafe { qw_span_vector_count(r) }, 9);
    assert!(!unsafe { qw_span_is_numeric(r) });
    let mut re = [0.0; 9];
    let mut im = [0.0; 9];
    assert_eq!(
        unsafe { qw_span_vector(r, 0, re.as_mut_ptr(), im.as_mut_ptr()) },
        QwStatus::Ok
    );
    assert_eq!(re, [1.0; 9]);
    assert_eq!(
        unsafe { qw_span_vector(r, 9, re.as_mut_ptr(), im.as_mut_ptr()) },
        QwStatus::IndexOutOfRange
    );
    unsafe { qw_span_free(r) };

    assert_eq!(
        unsafe { qw_span_new(0.0, 1.0, 0.0, 0.0, 1e-4, 0, 0, &mut r) },
        QwStatus::Ok
    );
    assert_eq!(unsafe { qw_span_rank(r) }, 7);
    unsafe { qw_span_free(r) };

    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { qw_span_new(0.5, 0.5, 0.0, 0.0, 1e-4, 0, 0, &mut r) },
        QwStatus::OffEllipse
    );
    let third = 1.0 / 3.0;
    assert_eq!(
        unsafe { qw_span_new(third, third, 0.0, 0.0, 1e-4, 0, 0, &mut r) },
        QwStatus::Degenerate
    );
    assert!(r.is_null());
    assert_eq!(
        unsafe { qw_span_new(third, third, 0.0, 0.0, 1e-4, 16, 0, &mut r) },
        QwStatus::Ok
    );
    assert!(unsafe { qw_span_is_numeric(r) });
    assert!((7..=9).contains(&unsafe { qw_span_rank(r) }));
    unsafe { qw_span_free(r) };
    assert_eq!(unsafe { qw_span_rank(ptr::null()) }, 0);
}

#[test]
fn status_messages_and_version() {
    for st in [QwStatus::Ok, QwStatus::Degenerate, QwStatus::Panic] {
        let msg = unsafe { CStr::from_ptr(qw_status_message(st)) };
        assert!(!msg.to_bytes().is_empty());
    }
    let v = unsafe { CStr::from_ptr(qw_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qutrit_witness.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "qw_witness_new",
        "qw_witness_free",
        "qw_witness_classify",
        "qw_witness_expectation",
        "qw_span_new",
        "qw_span_rank",
        "qw_span_free",
        "typedef struct QwWitness QwWitness",
        "QW_STATUS_DEGENERATE = 4",
    ] {
        assert!(text.contains(name), "missing {name}");
    }

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        "#include \"qutrit_witness.h\"\nint main(void) { QwWitness *w = 0; return qw_witness_new(1, 1, 0, &w) == QW_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let include = header.parent().unwrap();
    match Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(include)
        .arg(&src)
        .output()
    {
        Ok(out) => assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        ),
        Err(_) => eprintln!("no C compiler found, skipping header compile check"),
    }
}
