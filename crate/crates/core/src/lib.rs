//! Exact computations around Shapovalov forms: Kac and Kac–Kazhdan determinants,
//! Jantzen filtrations, integral root subsystems and admissible weights for the
//! Virasoro and Neveu–Schwarz algebras and affine Lie algebras, and the weight
//! bookkeeping of the minimal W-algebra reduction.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;

pub mod affine_adm;
pub mod error;
pub mod exactmath;
pub mod kacline;
pub mod neveu_schwarz;
pub mod partitions;
pub mod rootsystem;
pub mod shapovalov;
pub mod virasoro;
pub mod wreduction;

pub use error::{Error, Result};
