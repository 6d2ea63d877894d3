use chbound_core::audit::{
    check_lemma_num_1, check_surface_range, check_telescoping, run_checks, DBase, DSample,
    GridSpec, Selection, CHECK_NAMES,
};
use chbound_core::Int;

#[test]
fn default_grid_passes_every_check() {
    let grid = GridSpec::default();
    let reports = run_checks::<Int>(&grid, 4).unwrap();
    assert_eq!(reports.len(), CHECK_NAMES.len());
    for rep in &reports {
        assert!(rep.passed(), "{}: {:?}", rep.check, rep.violations.first());
        assert!(rep.tuples_examined > 0, "{} examined nothing", rep.check);
        assert_eq!(
            rep.tuples_total,
            rep.tuples_examined + rep.rejected.len() as u64
        );
    }
    let first = &reports[0];
    assert_eq!(first.check, "lemma_num_1");
    assert_eq!(first.tuples_total, 1095);
    assert!(first.rejected.is_empty());
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let grid = GridSpec {
        r_range: [4, 8],
        ..GridSpec::default()
    };
    let one = serde_json::to_string(&run_checks::<Int>(&grid, 1).unwrap()).unwrap();
    let many = serde_json::to_string(&run_checks::<Int>(&grid, 7).unwrap()).unwrap();
    assert_eq!(one, many);
}

#[test]
fn six_d_samples_on_small_r() {
    let grid = GridSpec {
        r_range: [4, 8],
        d_samples: (0..6).map(|j| DSample::new(DBase::D0, 1, j)).collect(),
        ..GridSpec::default()
    };
    let rep = check_lemma_num_1::<Int>(&grid, 3).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.tuples_total, grid.triples().len() as u64 * 6);
}

#[test]
fn machine_integers_give_the_same_reports() {
    let grid = GridSpec {
        r_range: [4, 7],
        ..GridSpec::default()
    };
    let big = serde_json::to_string(&run_checks::<Int>(&grid, 2).unwrap()).unwrap();
    let small = serde_json::to_string(&run_checks::<i128>(&grid, 2).unwrap()).unwrap();
    assert_eq!(big, small);
}

#[test]
fn profile_checks_up_to_gap_eight() {
    let grid = GridSpec {
        max_gap: 8,
        ..GridSpec::default()
    };
    let rep = check_telescoping::<Int>(&grid, 2).unwrap();
    assert!(rep.passed());
    // 1 + sum_{g=1}^{8} 2^{g-1}
    assert_eq!(rep.tuples_examined, 256);
    let rep = check_surface_range::<Int>(&grid, 2).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.tuples_examined, 256 + 9);
}

#[test]
fn explicit_selection_outside_hypotheses_is_rejected() {
    let grid = GridSpec {
        r_range: [6, 6],
        s: Selection::List(vec![9]),
        pi: Selection::List(vec![0]),
        ..GridSpec::default()
    }
    .with_checks(["lemma_num_1"]);
    let rep = &run_checks::<Int>(&grid, 1).unwrap()[0];
    assert_eq!(rep.tuples_examined, 0);
    assert_eq!(rep.rejected.len(), 5);
    assert!(rep.rejected[0].reason.contains("s > 2r-4"));
}
