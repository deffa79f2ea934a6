//! Exact construction, verification and application of Rankin–Cohen type
//! bilinear differential operators for Hermitian modular forms of signature
//! `(n, n)`.
//!
//! The operator for weights `(k₁, k₂)` and degree `v` is encoded by a
//! polynomial `Q(W, Z)` in the entries of two `n×n` matrices, written in the
//! generators `Q_0, …, Q_n` of `det(W + λZ)`. The crate builds `Q` from a
//! coefficient recurrence, checks it against brute-force oracles, and applies
//! it to truncated Fourier expansions.

pub mod cli;
pub mod exactalg;
pub mod fourier;
pub mod generators;
pub mod laplacian;
pub mod solver;
pub mod verify;
