//! Exact and numeric machinery for the two-colour bubble algebra and its
//! one-colour Temperley-Lieb specialisation.

#![no_std]

extern crate alloc;

pub mod basis;
pub mod diagram;
pub mod exactpoly;
pub mod numeric;
pub mod spinchain;
pub mod stdmod;
pub mod yangbaxter;
