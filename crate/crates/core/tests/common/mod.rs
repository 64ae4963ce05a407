#![allow(dead_code)]

pub mod audit;
pub mod oracle;
pub mod props;
pub mod quivers;
