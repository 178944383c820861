use stirmix::harness::{registry, run_cases, CaseResult, Grid, Point, Status};
use stirmix::report::VerificationReport;

fn small() -> Grid {
    Grid {
        max_n: 6,
        max_k: 3,
        max_r: 3,
        ..Grid::default()
    }
}

fn only(grid: &Grid, id: &str) -> CaseResult {
    let cases: Vec<_> = registry(grid).into_iter().filter(|c| c.id == id).collect();
    assert_eq!(cases.len(), 1, "{id}");
    run_cases(grid, &cases).remove(0)
}

#[test]
fn stated_bounds_give_an_empty_sum() {
    let result = only(&small(), "thm-2.9-as-stated");
    assert_eq!(result.status, Status::Flagged);
    let at = Point::new()
        .with("n", 4)
        .with("k", 2)
        .with("r", 2)
        .with("s", 1)
        .with_bound("m", None);
    let ce = result.counterexample_at(&at).expect("counterexample");
    assert_eq!((ce.lhs.as_str(), ce.rhs.as_str()), ("18", "0"));
}

#[test]
fn corrected_variants_pass() {
    for id in [
        "thm-2.9-corrected",
        "thm-2.9-labeled-corrected",
        "eq-rS-corrected",
        "eq-nS-corrected",
        "thm-fix",
    ] {
        let result = only(&small(), id);
        assert_eq!(
            result.status,
            Status::Pass,
            "{id}: {:?}",
            result.counterexamples.first()
        );
        assert!(result.points_checked > 0);
    }
}

#[test]
fn spot_values() {
    let grid = small();
    let side = |id: &str, point: Point| {
        let case = registry(&grid).into_iter().find(|c| c.id == id).unwrap();
        let truth = stirmix::harness::Truth::new(grid.oracle_cap);
        (
            (case.lhs)(&truth, &point).unwrap(),
            (case.rhs)(&truth, &point).unwrap(),
        )
    };
    let at = Point::new()
        .with("n", 4)
        .with("k", 2)
        .with("r", 2)
        .with("m", 4);
    let (lhs, rhs) = side("eq-rS-corrected", at);
    assert_eq!(
        (lhs.to_string(), rhs.to_string()),
        ("36".into(), "36".into())
    );
    let at = Point::new().with("n", 4).with("k", 3).with("r", 2);
    let (lhs, rhs) = side("thm-fix", at);
    assert_eq!((lhs.to_string(), rhs.to_string()), ("5".into(), "5".into()));
}

#[test]
fn reports_are_deterministic() {
    let a = VerificationReport::run(&small());
    let b = VerificationReport::run(&small());
    assert_eq!(a.canonical_json(), b.canonical_json());
    assert_eq!(a.digest(), b.digest());
    assert!(a.to_text().contains(&a.digest()));
}

#[test]
fn flagged_cases_carry_counterexamples() {
    let report = VerificationReport::run(&small());
    for case in &report.cases {
        assert!(case.points_checked > 0, "{}", case.id);
        match case.status {
            Status::Flagged => assert!(!case.counterexamples.is_empty(), "{}", case.id),
            Status::Pass => assert_eq!(case.points_failed, 0, "{}", case.id),
        }
    }
    assert!(report.unexpected_failures().is_empty());
}
