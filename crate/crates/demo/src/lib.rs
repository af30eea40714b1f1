//! Browser bindings for the homing toolkit.
//!
//! Each export takes text as typed by the user and returns a JSON string.
//! The `*_json` functions hold the logic so they can be tested natively.

use homing_core::firings::{apply_word_with, canonicalize};
use homing_core::strategies::run_strategy;
use homing_core::{Code, FiringWord, Permutation, Strategy};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest permutation the page will trace step by step.
pub const MAX_DEMO_N: usize = 16;

#[derive(Serialize)]
struct Frame {
    perm: Permutation,
    code: String,
    weight: String,
    /// Value moved to reach this frame, absent on the first.
    moved: Option<usize>,
}

fn frame(perm: Permutation, moved: Option<usize>) -> Frame {
    let code = Code::of(&perm);
    Frame {
        code: code.to_string(),
        weight: code.weight().to_string(),
        perm,
        moved,
    }
}

fn parse_perm(text: &str) -> Result<Permutation, String> {
    let p: Permutation = text
        .trim()
        .parse()
        .map_err(|e: homing_core::Error| e.to_string())?;
    if p.len() > MAX_DEMO_N {
        return Err(format!("keep n at most {MAX_DEMO_N}, got {}", p.len()));
    }
    Ok(p)
}

/// Homes `perm` under `strategy` and lists every intermediate permutation.
pub fn trace_json(perm: &str, strategy: &str) -> Result<String, String> {
    let p = parse_perm(perm)?;
    let s: Strategy = strategy
        .trim()
        .parse()
        .map_err(|e: homing_core::Error| e.to_string())?;
    let trace = run_strategy(&p, s);
    let mut frames = vec![frame(trace.initial.clone(), None)];
    frames.extend(
        trace
            .steps
            .into_iter()
            .map(|st| frame(st.result, Some(st.value))),
    );
    serde_json::to_string(&frames).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Strip {
    code: String,
    weight: String,
    steps: Vec<homing_core::StripStep>,
}

/// Weight of a code together with the symbol removed at each step.
/// Accepts either a code such as `+0-` or a permutation.
pub fn weight_json(input: &str) -> Result<String, String> {
    let text = input.trim();
    let looks_like_perm =
        text.contains(',') || (!text.is_empty() && text.chars().all(|c| c.is_ascii_digit()));
    let code: Code = if looks_like_perm {
        Code::of(&parse_perm(text)?)
    } else {
        text.parse()
            .map_err(|e: homing_core::Error| e.to_string())?
    };
    let strip = Strip {
        weight: code.weight().to_string(),
        steps: code.strip_trace(),
        code: code.to_string(),
    };
    serde_json::to_string(&strip).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Firing {
    word: FiringWord,
    canonical: FiringWord,
    frames: Vec<Frame>,
}

/// Fires a word from the starting permutation `n, 2, ..., n-1, 1` with
/// `n = |word| + 2`, recording every displacement.
pub fn firing_json(word: &str) -> Result<String, String> {
    let w: FiringWord = word
        .trim()
        .parse()
        .map_err(|e: homing_core::Error| e.to_string())?;
    let n = w.len() + 2;
    if n > MAX_DEMO_N {
        return Err(format!(
            "keep the word shorter than {} letters",
            MAX_DEMO_N - 1
        ));
    }
    let canonical = canonicalize(&w).map_err(|e| e.to_string())?;
    let start = Permutation::tau(n).map_err(|e| e.to_string())?;
    let mut frames = vec![frame(start, None)];
    let mut prev = frames[0].perm.clone();
    apply_word_with(&w, n, &mut |q| {
        let moved = (1..=n)
            .find(|&v| prev.is_home(v) && prev.displace(v, q.position_of(v)).as_ref() == Ok(q));
        frames.push(frame(q.clone(), moved));
        prev = q.clone();
    })
    .map_err(|e| e.to_string())?;
    serde_json::to_string(&Firing {
        word: w,
        canonical,
        frames,
    })
    .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn trace(perm: &str, strategy: &str) -> Result<String, JsError> {
    trace_json(perm, strategy).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weight(input: &str) -> Result<String, JsError> {
    weight_json(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn fire(word: &str) -> Result<String, JsError> {
    firing_json(word).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_frames() {
        let json: serde_json::Value =
            serde_json::from_str(&trace_json("4,1,3,5,2", "smallest-first").unwrap()).unwrap();
        let frames = json.as_array().unwrap();
        assert_eq!(frames.len(), 4);
        assert_eq!(frames[0]["perm"], serde_json::json!([4, 1, 3, 5, 2]));
        assert_eq!(frames[0]["moved"], serde_json::Value::Null);
        assert_eq!(frames[3]["perm"], serde_json::json!([1, 2, 3, 4, 5]));
        assert_eq!(frames[1]["moved"], 1);
    }

    #[test]
    fn bad_input_names_token() {
        assert!(trace_json("4,1,x", "smallest-first")
            .unwrap_err()
            .contains('x'));
        assert!(trace_json("2,1", "sideways").is_err());
        assert!(trace_json(
            &(1..=20)
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
            "leftmost"
        )
        .is_err());
        assert!(firing_json("L3").is_err());
    }

    #[test]
    fn weight_of_code_and_perm() {
        let v: serde_json::Value = serde_json::from_str(&weight_json("++---").unwrap()).unwrap();
        assert_eq!(v["weight"], "31");
        assert_eq!(v["steps"].as_array().unwrap().len(), 5);
        let v: serde_json::Value =
            serde_json::from_str(&weight_json("7,6,8,1,3,2,5,4").unwrap()).unwrap();
        assert_eq!(v["code"], "++++--");
        assert_eq!(v["weight"], "63");
    }

    #[test]
    fn firing_frames() {
        let v: serde_json::Value =
            serde_json::from_str(&firing_json("L0,R1,R0,L1,R2,R1").unwrap()).unwrap();
        assert_eq!(v["canonical"], "R0,L1,R0,R1,R0,L3");
        let frames = v["frames"].as_array().unwrap();
        // 2^6 - 1 displacements after the start
        assert_eq!(frames.len(), 64);
        assert_eq!(
            frames[63]["perm"],
            serde_json::json!([7, 6, 8, 1, 3, 2, 5, 4])
        );
        for pair in frames.windows(2) {
            let a: u64 = pair[0]["weight"].as_str().unwrap().parse().unwrap();
            let b: u64 = pair[1]["weight"].as_str().unwrap().parse().unwrap();
            assert_eq!(b, a + 1);
        }
    }
}
