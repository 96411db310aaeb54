use serde_json::Value;
use wiener_wasm_demo::{histogram_json, sample_json, table_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn tables() {
    let v = parse(table_json("stair", 3).unwrap());
    let w: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["wiener"].as_str().unwrap()).collect();
    assert_eq!(w, ["2", "20", "140"]);
    let v = parse(table_json("rect", 3).unwrap());
    assert_eq!(v.as_array().unwrap().len(), 9);
    assert_eq!(v[4]["wiener"], "56");
    assert_eq!(v[4]["mean"], "14/9");
    let v = parse(table_json("diamond", 2).unwrap());
    assert_eq!(v[2]["wiener"], "140");
    assert!(table_json("rect", 0).is_err());
    assert!(table_json("rect", 31).is_err());
    assert!(table_json("cube", 3).is_err());
}

#[test]
fn histograms_agree_with_tables() {
    let h = parse(histogram_json("rect", 2, 2).unwrap());
    assert_eq!(h["vertices"], 6);
    assert_eq!(h["wiener"], "56");
    let h = parse(histogram_json("stair", 3, 0).unwrap());
    assert_eq!(h["wiener"], "140");
    let pairs: u64 = h["bins"].as_array().unwrap().iter().map(|b| b["pairs"].as_u64().unwrap()).sum();
    assert_eq!(pairs, 64);
    let h = parse(histogram_json("diamond", 1, 0).unwrap());
    assert_eq!(h["wiener"], "56");
    assert!(histogram_json("rect", 8, 1).is_err());
}

#[test]
fn sampling_is_deterministic() {
    let a = sample_json("stair", 100, "1", 2000, 5).unwrap();
    assert_eq!(a, sample_json("stair", 100, "1", 2000, 5).unwrap());
    let v = parse(a);
    assert_eq!(v["scaled_moments"].as_array().unwrap().len(), 3);
    assert!(sample_json("rect", 100, "2/3", 2000, 5).is_err());
    assert!(sample_json("rect", 100, "1", 10, 5).is_err());
    assert!(sample_json("rect", 100, "one", 2000, 5).is_err());
}
