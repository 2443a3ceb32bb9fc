#![allow(dead_code)]
pub mod winding;
