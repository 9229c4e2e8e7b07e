pub mod boxes;
pub mod check;
pub mod dist;
pub mod gen;
pub mod matroid;
