use kodaira::local::TypeFamily;
use kodaira::sweep::{run_sweep, RowVerdict, SweepReport, SweepSpec, SweepVerdict};

fn sweep(json: &str) -> SweepReport {
    run_sweep(&SweepSpec::parse(json).unwrap())
}

#[test]
fn order_ten_members_are_type_three() {
    let r = sweep(r#"{"family":"x1-5","p":5,"e":1,"s":[1,50],"t":[1,50],"assertion":"prop4.1.iv"}"#);
    assert_eq!(r.verdict, SweepVerdict::Pass);
    let checked: Vec<_> = r.rows.iter().filter(|row| row.flags.iter().any(|f| f == "order-10")).collect();
    assert!(!checked.is_empty());
    for row in checked {
        let rec = row.record.as_ref().unwrap();
        if rec.kodaira_type.is_additive() {
            assert_eq!(rec.kodaira_type.family(), TypeFamily::III, "{:?}", row.params);
            assert!(row.flags.iter().any(|f| f == "2-torsion-reduces-to-singular-point"));
        }
    }
}

#[test]
fn order_ten_outside_its_hypothesis_is_reported() {
    // the order-10 restriction assumes an unramified prime; at e = 2 it fails
    let r = sweep(r#"{"family":"x1-5","p":5,"e":2,"s":[1,20],"t":[1,20],"assertion":"prop4.1.iv"}"#);
    assert_eq!(r.verdict, SweepVerdict::Fail);
    assert!(r.counterexamples.iter().all(|&i| r.rows[i].label.as_deref() == Some("I0*")));
}

#[test]
fn multiplicative_members_are_exempt() {
    let r = sweep(r#"{"family":"x1-5","p":5,"e":1,"s":[1,10],"t":[1,10],"assertion":"prop4.1.i"}"#);
    for row in &r.rows {
        let divisible = row.params[0] % 5 == 0 || row.params[1] % 5 == 0;
        assert_eq!(row.verdict == RowVerdict::Exempt, divisible, "{:?}", row.params);
    }
    assert_eq!(r.rows_exempt, 36);
}

#[test]
fn generic_tate_normal_sweep_records_singular_members() {
    let r = sweep(r#"{"family":"tate-normal","p":7,"e":1,"b":[-10,10],"c":[-10,10],"assertion":"thm1.2-1.3-generic"}"#);
    assert_eq!(r.verdict, SweepVerdict::Pass);
    // errors are exactly the zeros of Δ = b³(16b² + b(1 − 20c − 8c²) + c(c − 1)³)
    for row in &r.rows {
        let [b, c] = row.params;
        let delta = b.pow(3) * (16 * b * b + b * (1 - 20 * c - 8 * c * c) + c * (c - 1).pow(3));
        assert_eq!(row.verdict == RowVerdict::Error, delta == 0, "{:?}", row.params);
    }
    assert_eq!(r.rows_error, 23);
}

#[test]
fn rows_follow_parameter_order() {
    let r = sweep(r#"{"family":"x1-11","p":11,"e":2,"n":[1,30],"assertion":"remark-x1-11"}"#);
    let ns: Vec<i64> = r.rows.iter().map(|row| row.params[0]).collect();
    assert_eq!(ns, (1..=30).collect::<Vec<_>>());
    assert_eq!(r.to_csv(), sweep(r#"{"family":"x1-11","p":11,"e":2,"n":[1,30],"assertion":"remark-x1-11"}"#).to_csv());
}
