#![cfg_attr(not(feature = "std"), no_std)]

//! Numerical toolkit for analytic self-maps of the upper half-plane.
//!
//! The class of functions handled here consists of analytic maps
//! `f: ℂ⁺ → closure(ℂ⁺)` (Pick or Nevanlinna functions). The crate provides
//!
//! * exact arithmetic on open subsets of the circle `ℝ ∪ {∞}` ([`extreal`]),
//! * real Möbius automorphisms and Cayley maps to the disk ([`moebius`]),
//! * Kreĭn factors `p_J` and Kreĭn products `k_O` with certified truncation
//!   for infinite products ([`krein`]),
//! * Nevanlinna representations, Stieltjes inversion, Cauchy transforms and
//!   the Boole / Letac measure identities ([`nevanlinna`]),
//! * the factorization `f = k_{Γ(f)} g` and the exponential representation
//!   of the positive factor ([`factor`]),
//! * interpolation with prescribed real zeros and poles ([`interp`]).
//!
//! The crate is `no_std` (with `alloc`) when built with
//! `--no-default-features --features libm`.

extern crate alloc;

pub mod error;
pub mod extreal;
pub mod factor;
pub mod grid;
pub mod interp;
pub mod krein;
pub mod moebius;
pub mod nevanlinna;
pub mod numeric;

pub use error::{Error, Result};
pub use extreal::{Arc, ArcGenerator, ArcSet, ExtComplex, ExtPoint};
pub use num_complex::Complex64;
