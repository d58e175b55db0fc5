//! Shared pieces of the integration suites: a seeded theory generator and
//! a naive ground forward-chaining oracle.

#![allow(dead_code)]

pub mod gen;
pub mod oracle;
