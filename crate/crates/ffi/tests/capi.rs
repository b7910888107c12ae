use std::ffi::{c_char, CStr};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use potgraph_ffi::*;

fn cycle(k: u32) -> PgPattern {
    PgPattern { kind: PgPatternKind::Cycle, size: k }
}

unsafe fn sequence(terms: &[i64]) -> *mut PgSequence {
    let mut s = ptr::null_mut();
    assert_eq!(pg_sequence_new(terms.as_ptr(), terms.len(), &mut s), PgStatus::Ok);
    s
}

unsafe fn last_error() -> String {
    let mut needed = 0;
    assert_eq!(pg_last_error(ptr::null_mut(), 0, &mut needed), PgStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    assert_eq!(pg_last_error(buf.as_mut_ptr(), needed, &mut needed), PgStatus::Ok);
    CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
}

#[test]
fn sequence_round_trip_and_realization() {
    unsafe {
        let s = sequence(&[2, 3, 3, 2, 2]);
        let mut len = 0;
        assert_eq!(pg_sequence_len(s, &mut len), PgStatus::Ok);
        assert_eq!(len, 5);
        let mut needed = 0;
        assert_eq!(pg_sequence_terms(s, ptr::null_mut(), 0, &mut needed), PgStatus::BufferTooSmall);
        let mut terms = vec![0u32; needed];
        assert_eq!(pg_sequence_terms(s, terms.as_mut_ptr(), terms.len(), &mut needed), PgStatus::Ok);
        assert_eq!(terms, [3, 3, 2, 2, 2]);

        let mut g = ptr::null_mut();
        assert_eq!(pg_sequence_realize(s, &mut g), PgStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(pg_graph_degree_sequence(g, &mut back), PgStatus::Ok);
        let mut sum = 0;
        assert_eq!(pg_sequence_sum(back, &mut sum), PgStatus::Ok);
        assert_eq!(sum, 12);
        let mut deg = 0;
        assert_eq!(pg_graph_degree(g, 0, &mut deg), PgStatus::Ok);
        assert_eq!(deg, 3);
        pg_sequence_free(back);
        pg_graph_free(g);
        pg_sequence_free(s);
    }
}

#[test]
fn parse_and_reject() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(pg_sequence_parse(c"(8 8 8 3 3 3 3 3 3)".as_ptr(), &mut s), PgStatus::Ok);
        let mut graphical = false;
        assert_eq!(pg_sequence_is_graphical(s, &mut graphical), PgStatus::Ok);
        assert!(graphical);
        pg_sequence_free(s);

        let mut bad = ptr::null_mut();
        assert_eq!(pg_sequence_parse(c"2,-1".as_ptr(), &mut bad), PgStatus::InvalidInput);
        assert!(bad.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(pg_sequence_parse(ptr::null(), &mut bad), PgStatus::NullPointer);
    }
}

#[test]
fn graph_editing_and_two_switch() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(pg_graph_new(4, &mut g), PgStatus::Ok);
        assert_eq!(pg_graph_add_edge(g, 0, 1), PgStatus::Ok);
        assert_eq!(pg_graph_add_edge(g, 2, 3), PgStatus::Ok);
        assert_eq!(pg_graph_add_edge(g, 1, 1), PgStatus::InvalidInput);
        assert_eq!(pg_graph_two_switch(g, 0, 1, 2, 3), PgStatus::Ok);
        let mut has = false;
        assert_eq!(pg_graph_has_edge(g, 0, 2, &mut has), PgStatus::Ok);
        assert!(has);
        assert_eq!(pg_graph_has_edge(g, 0, 1, &mut has), PgStatus::Ok);
        assert!(!has);
        assert_eq!(pg_graph_two_switch(g, 0, 1, 2, 3), PgStatus::InvalidMove);
        let mut count = 0;
        assert_eq!(pg_graph_edge_count(g, &mut count), PgStatus::Ok);
        assert_eq!(count, 2);
        assert_eq!(pg_graph_degree(g, 9, &mut count), PgStatus::InvalidInput);
        pg_graph_free(g);
        assert_eq!(pg_graph_new(33, &mut g), PgStatus::InvalidInput);
    }
}

#[test]
fn decisions_with_witnesses() {
    unsafe {
        let s = sequence(&[2, 2, 2, 2, 2, 2]);
        let mut answer = PgAnswer::Unknown;
        let mut witness = ptr::null_mut();
        assert_eq!(pg_is_potentially(s, cycle(6), ptr::null(), &mut answer, &mut witness), PgStatus::Ok);
        assert_eq!(answer, PgAnswer::Yes);
        let mut hit = false;
        assert_eq!(pg_graph_contains(witness, cycle(6), &mut hit), PgStatus::Ok);
        assert!(hit);
        pg_graph_free(witness);

        assert_eq!(pg_is_forcibly(s, cycle(6), ptr::null(), &mut answer, &mut witness), PgStatus::Ok);
        assert_eq!(answer, PgAnswer::No);
        assert_eq!(pg_graph_contains(witness, cycle(6), &mut hit), PgStatus::Ok);
        assert!(!hit);
        pg_graph_free(witness);

        let tight = PgBudget { max_states: 1, max_moves: 1_000 };
        assert_eq!(pg_is_potentially(s, cycle(6), &tight, &mut answer, ptr::null_mut()), PgStatus::Ok);
        assert_eq!(answer, PgAnswer::Unknown);
        let zero = PgBudget { max_states: 0, max_moves: 1 };
        assert_eq!(pg_is_potentially(s, cycle(6), &zero, &mut answer, ptr::null_mut()), PgStatus::InvalidInput);
        assert_eq!(
            pg_is_potentially(s, cycle(2), ptr::null(), &mut answer, ptr::null_mut()),
            PgStatus::InvalidInput
        );
        pg_sequence_free(s);

        let ng = sequence(&[3, 3, 1, 1]);
        assert_eq!(pg_is_potentially(ng, cycle(3), ptr::null(), &mut answer, ptr::null_mut()), PgStatus::NotGraphical);
        pg_sequence_free(ng);
    }
}

#[test]
fn oracle_records() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(pg_sigma_oracle(cycle(7), 9, ptr::null(), 0, &mut r), PgStatus::Ok);
        let (mut value, mut impossible, mut certified) = (0, true, false);
        assert_eq!(pg_record_sigma(r, &mut value, &mut impossible), PgStatus::Ok);
        assert_eq!((value, impossible), (44, false));
        assert_eq!(pg_record_is_certified(r, &mut certified), PgStatus::Ok);
        assert!(certified);
        let (mut checked, mut unknown) = (0, 1);
        assert_eq!(pg_record_counts(r, &mut checked, &mut unknown), PgStatus::Ok);
        assert!(checked > 0);
        assert_eq!(unknown, 0);
        let mut w = ptr::null_mut();
        assert_eq!(pg_record_witness(r, &mut w), PgStatus::Ok);
        let mut terms = [0u32; 9];
        let mut needed = 0;
        assert_eq!(pg_sequence_terms(w, terms.as_mut_ptr(), 9, &mut needed), PgStatus::Ok);
        assert_eq!(terms, [8, 8, 8, 3, 3, 3, 3, 3, 3]);
        pg_sequence_free(w);

        assert_eq!(pg_record_to_json(r, ptr::null_mut(), 0, &mut needed), PgStatus::BufferTooSmall);
        let mut buf = vec![0 as c_char; needed];
        assert_eq!(pg_record_to_json(r, buf.as_mut_ptr(), needed, &mut needed), PgStatus::Ok);
        let json = CStr::from_ptr(buf.as_ptr()).to_str().unwrap();
        let record = potgraph::sigma::SigmaRecord::from_json(json).unwrap();
        assert_eq!(record.sigma, potgraph::sigma::SigmaValue::Value(44));
        pg_record_free(r);

        let k5 = PgPattern { kind: PgPatternKind::Clique, size: 5 };
        assert_eq!(pg_sigma_oracle(k5, 4, ptr::null(), 1, &mut r), PgStatus::Ok);
        assert_eq!(pg_record_sigma(r, &mut value, &mut impossible), PgStatus::Ok);
        assert!(impossible);
        assert_eq!(pg_record_witness(r, &mut w), PgStatus::NotFound);
        pg_record_free(r);
    }
}

#[test]
fn cycle_extension() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(pg_graph_new(6, &mut g), PgStatus::Ok);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 2), (4, 5)] {
            assert_eq!(pg_graph_add_edge(g, u, v), PgStatus::Ok);
        }
        let cyc = [0usize, 1, 2, 3];
        let mut longer = [0usize; 5];
        let mut out = ptr::null_mut();
        assert_eq!(
            pg_extend_cycle(g, cyc.as_ptr(), 4, 4, 0, ptr::null(), &mut out, longer.as_mut_ptr()),
            PgStatus::Ok
        );
        let mut hit = false;
        assert_eq!(pg_graph_contains(out, cycle(5), &mut hit), PgStatus::Ok);
        assert!(hit);
        for i in 0..5 {
            let mut e = false;
            assert_eq!(pg_graph_has_edge(out, longer[i], longer[(i + 1) % 5], &mut e), PgStatus::Ok);
            assert!(e);
        }
        pg_graph_free(out);
        // w = 1 has degree 2.
        assert_eq!(
            pg_extend_cycle(g, cyc.as_ptr(), 4, 4, 1, ptr::null(), &mut out, longer.as_mut_ptr()),
            PgStatus::Precondition
        );
        pg_graph_free(g);
    }
}

#[test]
fn status_messages_are_static_strings() {
    for s in [PgStatus::Ok, PgStatus::NotGraphical, PgStatus::Panic, PgStatus::NotFound] {
        let text = unsafe { CStr::from_ptr(pg_status_message(s)) };
        assert!(!text.to_bytes().is_empty());
    }
}

fn target_dir() -> PathBuf {
    // The test binary lives in <target>/<profile>/deps.
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

/// Integration tests only link the rlib, so the static archive is built on
/// demand with the same profile the tests use.
fn static_library() -> PathBuf {
    let status = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "--profile", "test", "-p", "potgraph-ffi", "--lib"])
        .status()
        .expect("cargo is runnable");
    assert!(status.success(), "building the static library failed");
    target_dir().join("libpotgraph_ffi.a")
}

#[test]
fn c_program_links_against_the_header() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = static_library();
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe = out_dir.join("potgraph_smoke");
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available as cc");
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
