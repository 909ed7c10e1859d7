//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

pub mod fixtures;
pub mod golden;
pub mod mutation;
pub mod oracles;
