use borromean_web::{label_json, rectangle_view_json, tessellation_json};
use serde_json::Value;

#[test]
fn rectangle_view_for_h135() {
    let v: Value = serde_json::from_str(&rectangle_view_json("H", [1, 3, 5], "z", 0, 8).unwrap()).unwrap();
    assert_eq!(v["report"]["pass"], true);
    assert!(!v["points"].as_array().unwrap().is_empty());
    assert!(!v["lines"].as_array().unwrap().is_empty());
    assert!(rectangle_view_json("Q", [1, 1, 1], "z", 0, 8).is_err());
    assert!(rectangle_view_json("H", [1, 1, 1], "w", 0, 8).is_err());
}

#[test]
fn tessellation_and_labels() {
    let v: Value = serde_json::from_str(&tessellation_json(1).unwrap()).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 13);
    assert!(tessellation_json(9).is_err());
    let l: Value = serde_json::from_str(&label_json("", "b").unwrap()).unwrap();
    assert_eq!(l["label"], "1+0*w");
    assert!(label_json("ax", "b").is_err());
}
