//! # matterwave
//!
//! A deterministic numerical laboratory for matter-wave interferometry.
//!
//! The crate simulates two-mode Bose-Einstein-condensate interferometers at
//! the exact quantum and mean-field level, free-expansion interference of
//! split condensates, pairs of one-dimensional quasicondensates described as
//! Luttinger liquids (prethermalization, light-cone spreading of
//! correlations), synthetic interference images with fringe fitting and
//! full-distribution-function statistics, and closed-form design calculators
//! for beam interferometry.
//!
//! The modules map onto the physical subsystems:
//!
//! * [`twomode`] — exact quantum mechanics of the two-site Bose-Hubbard
//!   model: spectra, unitary evolution, coherent spin states, Husimi
//!   distributions, squeezing factors, phase diffusion.
//! * [`meanfield`] — the classical bosonic Josephson junction: coupled
//!   (z, φ) equations, energy, characteristic frequencies, fixed points,
//!   self-trapping, phase portraits.
//! * [`tofexpand`] — analytic time-of-flight physics: Gaussian wave-packet
//!   expansion, double-well interference patterns, in-trap recombination.
//! * [`luttinger`] — split 1D Bose gases: derived gas parameters, per-mode
//!   quadrature covariances, dephasing, correlation functions, Monte-Carlo
//!   phase profiles, light-cone crossover extraction.
//! * [`fringelab`] — interferogram synthesis, line-profile integration,
//!   nonlinear fringe fitting, contrast statistics and circular phase
//!   statistics.
//! * [`beamoptics`] — stateless design calculators for gratings, Talbot-Lau
//!   geometry, eikonal/Stark phases, polarizability, gas refractive index,
//!   coherence lengths.
//! * [`cli`] — the command-line front end used by the `matterwave` binary.
//!
//! Start with the `examples/` directory for one runnable program per
//! capability.

// Validation throughout uses the negated form `!(x > 0.0)` so NaN inputs are
// rejected along with out-of-range ones; index-based loops are kept where
// several arrays are walked in lockstep in numerical kernels.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod beamoptics;
pub mod cli;
pub mod constants;
pub mod fringelab;
pub mod luttinger;
pub mod meanfield;
pub mod ode;
pub mod tofexpand;
pub mod twomode;

pub use constants::Species;
