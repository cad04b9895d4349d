use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use cube_orient_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as std::os::raw::c_char; 256];
    let n = unsafe { cube_last_error_message(buf.as_mut_ptr(), buf.len()) };
    if n == 0 {
        return String::new();
    }
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut std::os::raw::c_char) -> String {
    assert!(!p.is_null(), "null string: {}", last_error());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { cube_string_free(p) };
    s
}

#[test]
fn construct_query_and_free() {
    unsafe {
        let mut h: *mut CubeOrientation = ptr::null_mut();
        assert_eq!(cube_orientation_inductive(2, &mut h), CubeStatus::Ok);
        assert_eq!(cube_orientation_dim(h), 4);

        let mut flag = false;
        assert_eq!(cube_orientation_is_eulerian(h, &mut flag), CubeStatus::Ok);
        assert!(flag);
        assert_eq!(cube_orientation_is_smooth(h, &mut flag), CubeStatus::Ok);
        assert!(flag);
        assert_eq!(cube_orientation_strongly_k_connected(h, 2, &mut flag), CubeStatus::Ok);
        assert!(flag);
        assert_eq!(cube_orientation_has_arc(h, 0, 1, &mut flag), CubeStatus::Ok);
        assert!(flag);

        let deleted = [5u32];
        assert_eq!(
            cube_orientation_strongly_connected(h, deleted.as_ptr(), 1, &mut flag),
            CubeStatus::Ok
        );
        assert!(flag);

        let json = take_string(cube_orientation_connectivity_report_json(h, 2));
        assert_eq!(json, r#"{"verdict":true,"k":2,"witness_deleted":[],"witness_side":[]}"#);
        cube_orientation_free(h);
    }
}

#[test]
fn failing_report_carries_witness() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(cube_orientation_inductive(1, &mut h), CubeStatus::Ok);
        let json = take_string(cube_orientation_connectivity_report_json(h, 2));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["verdict"], false);
        assert_eq!(v["witness_deleted"], serde_json::json!([0]));
        cube_orientation_free(h);
    }
}

#[test]
fn bytes_and_text_round_trip() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(cube_orientation_random_eulerian(6, 9, 500, &mut h), CubeStatus::Ok);
        let len = cube_orientation_byte_len(h);
        assert_eq!(len, 24);

        let mut small = [0u8; 4];
        let mut written = 0usize;
        assert_eq!(
            cube_orientation_to_bytes(h, small.as_mut_ptr(), small.len(), &mut written),
            CubeStatus::BufferTooSmall
        );
        assert_eq!(written, 24);

        let mut buf = vec![0u8; len];
        assert_eq!(
            cube_orientation_to_bytes(h, buf.as_mut_ptr(), buf.len(), &mut written),
            CubeStatus::Ok
        );
        let mut back = ptr::null_mut();
        assert_eq!(cube_orientation_from_bytes(6, buf.as_ptr(), buf.len(), &mut back), CubeStatus::Ok);

        let text = take_string(cube_orientation_to_text(h));
        assert!(text.starts_with("CUBEORIENT v1 d=6\n"));
        let c_text = CString::new(text.clone()).unwrap();
        let mut parsed = ptr::null_mut();
        assert_eq!(cube_orientation_from_text(c_text.as_ptr(), &mut parsed), CubeStatus::Ok);
        assert_eq!(take_string(cube_orientation_to_text(back)), text);
        assert_eq!(take_string(cube_orientation_to_text(parsed)), text);

        for p in [h, back, parsed] {
            cube_orientation_free(p);
        }
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(cube_orientation_euler_tour(3, &mut h), CubeStatus::NotEulerian);
        assert!(h.is_null());
        assert!(last_error().contains("odd degree"));

        assert_eq!(cube_orientation_euler_tour(0, &mut h), CubeStatus::DimOutOfRange);
        assert_eq!(cube_orientation_euler_tour(4, ptr::null_mut()), CubeStatus::NullPointer);

        let two = [0u8; 2];
        assert_eq!(cube_orientation_from_bytes(2, two.as_ptr(), 2, &mut h), CubeStatus::LengthMismatch);

        let bad = CString::new("CUBEORIENT v9 d=2\nf0\n").unwrap();
        assert_eq!(cube_orientation_from_text(bad.as_ptr(), &mut h), CubeStatus::Parse);

        let mut flag = false;
        assert_eq!(cube_orientation_is_eulerian(ptr::null(), &mut flag), CubeStatus::NullPointer);
        assert_eq!(cube_orientation_dim(ptr::null()), 0);
        assert!(cube_orientation_to_text(ptr::null()).is_null());

        let mut count = 0u64;
        assert_eq!(cube_count_eulerian_orientations(6, &mut count), CubeStatus::Infeasible);
        assert_eq!(cube_count_eulerian_orientations(2, &mut count), CubeStatus::Ok);
        assert_eq!(count, 2);

        assert_eq!(cube_orientation_euler_tour(4, &mut h), CubeStatus::Ok);
        assert_eq!(last_error(), "");
        cube_orientation_free(h);
        cube_orientation_free(ptr::null_mut());
    }
}

#[test]
fn numeric_entry_points() {
    unsafe {
        let mut bv = 0u64;
        assert_eq!(cube_harper_bv(17, 6, &mut bv), CubeStatus::Ok);
        assert_eq!(bv, 23);
        assert_eq!(cube_harper_bv(0, 6, &mut bv), CubeStatus::InvalidInput);

        let mut kappa = 0u32;
        assert_eq!(cube_undirected_node_connectivity(4, &mut kappa), CubeStatus::Ok);
        assert_eq!(kappa, 4);

        let (mut r, mut mp, mut count) = (0u32, 0u64, 0usize);
        let mut terms = [0u32; 8];
        assert_eq!(
            cube_cascade_representation(17, 6, &mut r, &mut mp, terms.as_mut_ptr(), terms.len(), &mut count),
            CubeStatus::Ok
        );
        assert_eq!((r, mp, count), (4, 10, 3));
        assert_eq!(&terms[..6], &[5, 4, 4, 3, 2, 2]);
        assert_eq!(
            cube_cascade_representation(17, 6, &mut r, &mut mp, terms.as_mut_ptr(), 2, &mut count),
            CubeStatus::BufferTooSmall
        );
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/cube_orient.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "cube_orientation_euler_tour",
        "cube_orientation_free",
        "cube_orientation_connectivity_report_json",
        "cube_harper_bv",
        "CUBE_STATUS_NOT_EULERIAN",
        "typedef struct CubeOrientation CubeOrientation;",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler available; skipped syntax check");
        return;
    };
    assert!(status.success(), "header failed to compile");
}
