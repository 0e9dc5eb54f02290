use grassmann_mu::commands::{run, Command, RunConfig};
use serde_json::{json, Value};

fn nu_report(n: usize) -> Value {
    let config = RunConfig {
        n: Some(n),
        cap: 12,
        ..RunConfig::new(Command::Nu)
    };
    let out = run(&config).unwrap();
    assert!(out.ok, "{}", out.summary);
    serde_json::from_str(&out.json).unwrap()
}

#[test]
fn nu_report_matches_the_intersection_statements() {
    let v = nu_report(7);
    let cells = &v["result"]["cells"];
    assert_eq!(cells["e+(1,4,5)"]["points"], json!([[0.0, 0.0, 0.0, 0.0]]));
    assert_eq!(cells["e+(1,4,5)"]["signs"], json!([-1]));
    assert_eq!(cells["e+(1,3,6)"]["points"], json!([]));
    assert_eq!(cells["e+(1,2,7)"]["points"], json!([]));
    assert_eq!(v["result"]["complex_sign"], 1);
    assert_eq!(v["result"]["nu_dot_S"], -1);
    assert_eq!(v["result"]["ledger"]["mu_coefficient"], "-1/4");
    assert_eq!(
        v["result"]["complex_sign"].as_i64().unwrap() * v["result"]["ledger"]["p1_vs_c2"].as_i64().unwrap(),
        v["result"]["nu_dot_S"].as_i64().unwrap()
    );
    for cell in cells.as_object().unwrap().values() {
        assert!(cell["residual_min_off_point"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn nu_report_does_not_depend_on_extra_columns() {
    let a = nu_report(7);
    let b = nu_report(9);
    assert_eq!(a["result"]["cells"], b["result"]["cells"]);
    assert_eq!(a["result"]["nu_dot_S"], b["result"]["nu_dot_S"]);
}
