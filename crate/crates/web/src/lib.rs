//! Browser bindings. Every entry point returns a JSON string: either
//! `{"ok": true, ...}` or `{"ok": false, "error": "..."}`.

use eqlef::fixtures::{self, circle_power_scene, MAX_CIRCLE_POWER};
use eqlef::lefschetz::SubgroupPolicy;
use eqlef::report::{run, Command, Report, Status};
use eqlef::scene::parse_scene;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn failure(msg: impl ToString) -> String {
    json!({ "ok": false, "error": msg.to_string() }).to_string()
}

fn report_json(r: &Report) -> Value {
    json!({
        "status": match r.status { Status::Success => "success", Status::NotProven => "not-proven" },
        "text": r.text(),
        "data": r.json,
    })
}

/// Runs one command (`euler`, `lef-comb`, `lef-smooth`, `compare`, `oracle`,
/// `sign`) on scene text. An empty policy uses the scene's own.
#[wasm_bindgen]
pub fn run_scene(text: &str, command: &str, policy: &str) -> String {
    let cmd: Command = match command.parse() {
        Ok(c) => c,
        Err(e) => return failure(e),
    };
    let policy = match policy {
        "" => None,
        p => match p.parse::<SubgroupPolicy>() {
            Ok(p) => Some(p),
            Err(e) => return failure(e),
        },
    };
    let scene = match parse_scene(text) {
        Ok(s) => s,
        Err(e) => return failure(e),
    };
    match run(&scene, cmd, policy) {
        Ok(r) => {
            let mut v = report_json(&r);
            v["ok"] = json!(true);
            v.to_string()
        }
        Err(e) => failure(e),
    }
}

/// Builds the z^n scene on the circle with complex conjugation and runs
/// the oracle and the comparison on it.
#[wasm_bindgen]
pub fn circle_power(n: u32) -> String {
    let Some(text) = circle_power_scene(n) else {
        return failure(format!("n must be between 0 and {MAX_CIRCLE_POWER}"));
    };
    let scene = match parse_scene(&text) {
        Ok(s) => s,
        Err(e) => return failure(e),
    };
    let mut out = json!({ "ok": true, "scene": text });
    for cmd in [Command::Oracle, Command::LefComb, Command::Compare] {
        if cmd == Command::Compare && !scene.has_smooth() {
            continue;
        }
        match run(&scene, cmd, None) {
            Ok(r) => out[cmd.name()] = report_json(&r),
            Err(e) => return failure(e),
        }
    }
    out.to_string()
}

/// Names of the bundled scenes, or the text of one of them.
#[wasm_bindgen]
pub fn fixture(name: &str) -> String {
    if name.is_empty() {
        return json!({ "ok": true, "names": fixtures::fixture_names() }).to_string();
    }
    match fixtures::fixture(name) {
        Some(t) => json!({ "ok": true, "name": name, "scene": t }).to_string(),
        None => failure(format!("no fixture {name}")),
    }
}
