#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod cli;
pub mod experiments;
pub mod gate;
pub mod model;
pub mod numerics;
