//! Helpers shared by several test targets. Each target uses a subset.
#![allow(dead_code)]

pub mod bundle_oracle;
pub mod curvature;
pub mod solutions;
