//! Browser bindings for the interactive demo in `www/`.
//!
//! Each export has a plain Rust counterpart returning `Result<_, String>`,
//! which the native tests exercise.

use wasm_bindgen::prelude::*;

use qcorr_core::interference::{interference_sweep, phase_family, phase_grid};
use qcorr_core::nonlocality::{behavior_chsh, classify_behavior, seesaw_optimize, SeesawConfig};
use qcorr_core::{BehaviorTable, TSIRELSON_BOUND};

const MAX_POINTS: usize = 4096;
const MAX_DIM: usize = 8;

/// Interleaved `[φ₀, I₀, φ₁, I₁, …]` for the phase family.
pub fn sweep(order: usize, dim: usize, points: usize) -> Result<Vec<f64>, String> {
    if !(1..=MAX_POINTS).contains(&points) {
        return Err(format!("points must lie in 1..={MAX_POINTS}"));
    }
    if dim > MAX_DIM {
        return Err(format!("dimension must be at most {MAX_DIM}"));
    }
    let family = phase_family(dim, order).map_err(|e| e.to_string())?;
    let rows = interference_sweep(family, &phase_grid(points), order).map_err(|e| e.to_string())?;
    Ok(rows.into_iter().flat_map(|(p, v)| [p, v]).collect())
}

/// Per-iteration CHSH values of a seesaw run.
pub fn seesaw(dim_a: usize, dim_b: usize, seed: u64) -> Result<Vec<f64>, String> {
    if !(2..=MAX_DIM).contains(&dim_a) || !(2..=MAX_DIM).contains(&dim_b) {
        return Err(format!("local dimensions must lie in 2..={MAX_DIM}"));
    }
    let r = seesaw_optimize(&SeesawConfig::new(dim_a, dim_b, seed)).map_err(|e| e.to_string())?;
    Ok(r.trace)
}

/// CHSH value and class of `λ·PR + (1−λ)·uniform`.
pub fn noisy_pr_box(lambda: f64) -> Result<(f64, &'static str), String> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(format!("λ = {lambda} outside [0, 1]"));
    }
    let table = BehaviorTable::pr_box()
        .mix(lambda, &BehaviorTable::uniform())
        .map_err(|e| e.to_string())?;
    let value = behavior_chsh(&table).map_err(|e| e.to_string())?;
    let class = classify_behavior(&table).map_err(|e| e.to_string())?;
    Ok((value, class.as_str()))
}

#[wasm_bindgen(js_name = phaseSweep)]
pub fn phase_sweep_js(order: usize, dim: usize, points: usize) -> Result<Vec<f64>, JsError> {
    sweep(order, dim, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = seesawTrace)]
pub fn seesaw_trace_js(dim_a: usize, dim_b: usize, seed: u32) -> Result<Vec<f64>, JsError> {
    seesaw(dim_a, dim_b, u64::from(seed)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = noisyPrChsh)]
pub fn noisy_pr_chsh_js(lambda: f64) -> Result<f64, JsError> {
    noisy_pr_box(lambda)
        .map(|r| r.0)
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = noisyPrClass)]
pub fn noisy_pr_class_js(lambda: f64) -> Result<String, JsError> {
    noisy_pr_box(lambda)
        .map(|r| r.1.to_string())
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = tsirelsonBound)]
pub fn tsirelson_bound() -> f64 {
    TSIRELSON_BOUND
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_interleaves_phase_and_value() {
        let v = sweep(2, 3, 181).unwrap();
        assert_eq!(v.len(), 362);
        for pair in v.chunks(2) {
            assert!((pair[1] - 0.5 * pair[0].cos()).abs() < 1e-12);
        }
        assert!(sweep(3, 4, 50)
            .unwrap()
            .chunks(2)
            .all(|p| p[1].abs() < 1e-12));
        assert!(sweep(3, 2, 10).is_err());
        assert!(sweep(2, 3, 0).is_err());
    }

    #[test]
    fn seesaw_trace_climbs_to_tsirelson() {
        let t = seesaw(2, 2, 7).unwrap();
        assert!(t.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        assert!((t.last().unwrap() - TSIRELSON_BOUND).abs() < 1e-6);
        assert!(seesaw(1, 2, 0).is_err());
    }

    #[test]
    fn noisy_box_thresholds() {
        assert_eq!(noisy_pr_box(1.0).unwrap(), (4.0, "supra-quantum"));
        assert_eq!(noisy_pr_box(0.5).unwrap().1, "local-witnessed");
        assert_eq!(noisy_pr_box(0.6).unwrap().1, "nonlocal");
        assert_eq!(noisy_pr_box(0.75).unwrap().1, "supra-quantum");
        assert!(noisy_pr_box(-0.1).is_err());
    }
}
