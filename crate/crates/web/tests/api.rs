use eqlef_web::{circle_power, fixture, run_scene};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn circle_power_compares_equal() {
    for n in [0, 2, 3, 5, 8] {
        let v = parse(circle_power(n));
        assert_eq!(v["ok"], true, "{v}");
        assert_eq!(v["compare"]["status"], "success", "n={n}");
        let text = v["oracle"]["text"].as_str().unwrap();
        assert!(text.contains(&format!("homology trace {}", 1 - n as i64)), "{text}");
    }
}

#[test]
fn circle_power_one_skips_compare() {
    let v = parse(circle_power(1));
    assert_eq!(v["ok"], true);
    assert!(v.get("compare").is_none());
}

#[test]
fn circle_power_out_of_range() {
    let v = parse(circle_power(99));
    assert_eq!(v["ok"], false);
}

#[test]
fn run_scene_on_fixtures() {
    let names = parse(fixture(""));
    let names: Vec<&str> = names["names"].as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
    assert!(names.contains(&"sign_orientation"));
    let scene = parse(fixture("sign_orientation"));
    let v = parse(run_scene(scene["scene"].as_str().unwrap(), "sign", ""));
    assert_eq!(v["ok"], true, "{v}");

    let scene = parse(fixture("circle_z2_corrupted"));
    let v = parse(run_scene(scene["scene"].as_str().unwrap(), "compare", "cyclic+stab"));
    assert_eq!(v["ok"], true);
    assert_eq!(v["status"], "not-proven");
}

#[test]
fn run_scene_errors() {
    assert_eq!(parse(run_scene("", "nope", ""))["ok"], false);
    assert_eq!(parse(run_scene("", "euler", "some"))["ok"], false);
    let v = parse(run_scene("[complex]\nvertex a colour 7\n", "euler", ""));
    assert_eq!(v["ok"], false);
    assert!(v["error"].as_str().unwrap().contains("line"), "{v}");
    assert_eq!(parse(fixture("missing"))["ok"], false);
}
