#![allow(dead_code)]

use std::sync::Arc;

use glw_core::filters::{Lattices, DEFAULT_CAP};
use glw_core::presentation::{build_category, parse_category, CategoryData};

pub const W5: &str = include_str!("../../../../fixtures/w5.gcat");
pub const DUAL: &str = include_str!("../../../../fixtures/d.gcat");
pub const POINT: &str = include_str!("../../../../fixtures/point.gcat");
pub const WINDOW_FILTER: &str = include_str!("../../../../fixtures/window_filter.gfil");

pub fn category(text: &str) -> Arc<CategoryData> {
    Arc::new(build_category(parse_category(text).unwrap()).unwrap())
}

pub fn w5() -> Arc<CategoryData> {
    category(W5)
}

pub fn dual() -> Arc<CategoryData> {
    category(DUAL)
}

pub fn point() -> Arc<CategoryData> {
    category(POINT)
}

pub fn lattices(cat: &Arc<CategoryData>) -> Lattices {
    Lattices::new(cat, DEFAULT_CAP).unwrap()
}

pub fn obj(cat: &CategoryData, name: &str) -> usize {
    cat.object_index(name).unwrap()
}
