//! Fixtures shared by the benchmarks in `benches/`.

use clustercat::Tilting;

pub const ONE_ACC: &str = r#"{"surface":{"acc":1},"fountains":[{"acc":0,"base":"p0:0","left_from":2,"right_to":-2}]}"#;
pub const TWO_ACC: &str = r#"{"surface":{"acc":2},"fountains":[{"acc":0,"base":"p0:0","left_from":0,"right_to":-2},{"acc":1,"base":"p0:0","left_from":2,"right_to":-1}]}"#;

pub fn tilting(json: &str) -> Tilting {
    Tilting::from_json(json).expect("fixture is a valid tilting spec")
}
