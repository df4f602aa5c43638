use std::ffi::{CStr, CString};
use std::ptr;

use psi_score_ffi::*;

fn last_error() -> String {
    let p = psi_last_error_message();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn graph(text: &str) -> *mut PsiGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { psi_graph_from_edge_list(text.as_ptr(), &mut g) },
        PsiStatus::Ok
    );
    g
}

fn scores(r: *const PsiResult) -> Vec<f64> {
    unsafe {
        let mut v = vec![0.0; psi_result_len(r)];
        assert_eq!(psi_result_scores(r, v.as_mut_ptr(), v.len()), PsiStatus::Ok);
        v
    }
}

#[test]
fn chain_through_every_method() {
    unsafe {
        let g = graph("0 1\n");
        assert_eq!((psi_graph_num_nodes(g), psi_graph_num_edges(g)), (2, 1));
        let mut act = ptr::null_mut();
        assert_eq!(
            psi_activity_homogeneous(2, 0.5, 0.5, &mut act),
            PsiStatus::Ok
        );
        for method in [PsiMethod::PowerPsi, PsiMethod::PowerNf, PsiMethod::Exact] {
            let mut r = ptr::null_mut();
            assert_eq!(
                psi_compute(g, act, method, 1e-14, 10_000, &mut r),
                PsiStatus::Ok
            );
            assert!(psi_last_error_message().is_null());
            assert!(psi_result_converged(r));
            let s = scores(r);
            assert!(
                (s[0] - 0.25).abs() < 1e-12 && (s[1] - 0.375).abs() < 1e-12,
                "{method:?}: {s:?}"
            );
            if method == PsiMethod::Exact {
                assert_eq!((psi_result_iterations(r), psi_result_matvecs(r)), (0, 0));
            } else {
                assert!(psi_result_iterations(r) > 0 && psi_result_matvecs(r) > 0);
            }
            psi_result_free(r);
        }
        psi_activity_free(act);
        psi_graph_free(g);
    }
}

#[test]
fn labels_follow_first_appearance() {
    unsafe {
        let g = graph("% comment\n30 10\n10 20\n");
        let mut labels = [0u64; 3];
        assert_eq!(psi_graph_labels(g, labels.as_mut_ptr(), 3), PsiStatus::Ok);
        assert_eq!(labels, [30, 10, 20]);
        assert_eq!(
            psi_graph_labels(g, labels.as_mut_ptr(), 2),
            PsiStatus::InvalidArgument
        );
        assert!(last_error().contains("3 needed"));
        psi_graph_free(g);
    }
}

#[test]
fn graph_from_index_arrays_and_pagerank() {
    unsafe {
        let (f, l) = ([0usize, 1, 2], [1usize, 2, 0]);
        let mut g = ptr::null_mut();
        assert_eq!(
            psi_graph_from_edges(3, f.as_ptr(), l.as_ptr(), 3, &mut g),
            PsiStatus::Ok
        );
        let mut r = ptr::null_mut();
        assert_eq!(psi_pagerank(g, 0.85, 1e-12, 1000, &mut r), PsiStatus::Ok);
        for x in scores(r) {
            assert!((x - 1.0 / 3.0).abs() < 1e-12);
        }
        psi_result_free(r);

        assert_eq!(
            psi_pagerank(g, 1.2, 1e-12, 1000, &mut r),
            PsiStatus::InvalidArgument
        );
        assert!(last_error().contains("alpha"));
        psi_graph_free(g);

        let bad = [5usize];
        assert_eq!(
            psi_graph_from_edges(3, bad.as_ptr(), l.as_ptr(), 1, &mut g),
            PsiStatus::InvalidArgument
        );
    }
}

#[test]
fn activity_constructors() {
    unsafe {
        let g = graph("0 1\n1 2\n2 0\n");
        let (lambda, mu) = ([0.2, 0.4, 0.6], [0.5, 0.5, 0.5]);
        let mut a = ptr::null_mut();
        assert_eq!(
            psi_activity_from_arrays(lambda.as_ptr(), mu.as_ptr(), 3, &mut a),
            PsiStatus::Ok
        );
        let mut b = ptr::null_mut();
        assert_eq!(psi_activity_random(3, 7, &mut b), PsiStatus::Ok);
        for act in [a, b] {
            let mut exact = ptr::null_mut();
            let mut power = ptr::null_mut();
            assert_eq!(
                psi_compute(g, act, PsiMethod::Exact, 0.0, 0, &mut exact),
                PsiStatus::Ok
            );
            assert_eq!(
                psi_compute(g, act, PsiMethod::PowerPsi, 1e-13, 10_000, &mut power),
                PsiStatus::Ok
            );
            for (x, y) in scores(exact).iter().zip(scores(power)) {
                assert!((x - y).abs() < 1e-12);
            }
            psi_result_free(exact);
            psi_result_free(power);
        }
        psi_activity_free(a);
        psi_activity_free(b);

        let neg = [-1.0, 0.4, 0.6];
        assert_eq!(
            psi_activity_from_arrays(neg.as_ptr(), mu.as_ptr(), 3, &mut a),
            PsiStatus::InvalidArgument
        );
        assert_eq!(
            psi_activity_homogeneous(3, 0.0, 0.0, &mut a),
            PsiStatus::InvalidArgument
        );

        let mut small = ptr::null_mut();
        assert_eq!(
            psi_activity_homogeneous(2, 0.5, 0.5, &mut small),
            PsiStatus::Ok
        );
        let mut r = ptr::null_mut();
        assert_eq!(
            psi_compute(g, small, PsiMethod::PowerPsi, 1e-9, 100, &mut r),
            PsiStatus::InvalidArgument
        );
        assert!(r.is_null());
        psi_activity_free(small);
        psi_graph_free(g);
    }
}

#[test]
fn error_statuses() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            psi_graph_from_edge_list(ptr::null(), &mut g),
            PsiStatus::NullPointer
        );
        assert_eq!(last_error(), "text is null");

        let bad = CString::new("0 1\n2\n").unwrap();
        assert_eq!(
            psi_graph_from_edge_list(bad.as_ptr(), &mut g),
            PsiStatus::Parse
        );
        assert!(last_error().contains("line 2"));
        let empty = CString::new("# nothing\n").unwrap();
        assert_eq!(
            psi_graph_from_edge_list(empty.as_ptr(), &mut g),
            PsiStatus::Parse
        );

        let path = CString::new("/nonexistent/edges.txt").unwrap();
        assert_eq!(psi_graph_from_file(path.as_ptr(), &mut g), PsiStatus::Io);

        let ok = CString::new("0 1\n").unwrap();
        assert_eq!(
            psi_graph_from_edge_list(ok.as_ptr(), ptr::null_mut()),
            PsiStatus::NullPointer
        );

        let mut r = ptr::null_mut();
        assert_eq!(
            psi_compute(
                ptr::null(),
                ptr::null(),
                PsiMethod::PowerPsi,
                1e-9,
                10,
                &mut r
            ),
            PsiStatus::NullPointer
        );

        // null handles are tolerated by accessors and destructors
        assert_eq!(psi_graph_num_nodes(ptr::null()), 0);
        assert_eq!(psi_result_len(ptr::null()), 0);
        assert!(!psi_result_converged(ptr::null()));
        psi_graph_free(ptr::null_mut());
        psi_activity_free(ptr::null_mut());
        psi_result_free(ptr::null_mut());
    }
}

#[test]
fn dense_cap_and_non_convergence() {
    unsafe {
        let n = 2100;
        let f: Vec<usize> = (0..n).collect();
        let l: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
        let mut g = ptr::null_mut();
        assert_eq!(
            psi_graph_from_edges(n, f.as_ptr(), l.as_ptr(), n, &mut g),
            PsiStatus::Ok
        );
        let mut act = ptr::null_mut();
        assert_eq!(psi_activity_random(n, 1, &mut act), PsiStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(
            psi_compute(g, act, PsiMethod::Exact, 0.0, 0, &mut r),
            PsiStatus::DenseCapExceeded
        );

        assert_eq!(
            psi_compute(g, act, PsiMethod::PowerPsi, 1e-15, 1, &mut r),
            PsiStatus::Ok
        );
        assert!(!psi_result_converged(r));
        assert_eq!(psi_result_iterations(r), 1);
        psi_result_free(r);
        psi_activity_free(act);
        psi_graph_free(g);
    }
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(psi_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
