//! Exact evaluation of `pod2(n)`, the number of partitions of `n` whose
//! largest part is even and whose odd parts each appear at most twice.
//!
//! The crate has two independent routes to the same integers:
//!
//! * [`qseries`] — exact integer q-series (Pochhammer products, eta
//!   quotients, third-order mock theta functions) and a direct
//!   combinatorial counting oracle;
//! * [`rademacher`] — a convergent Rademacher-type series built from the
//!   Kloosterman sums in [`kloosterman`], the multiplier system in
//!   [`modular`], and the Bessel/quadrature kernels in [`analytic`].
//!
//! Agreement of the two routes (after rounding) is the headline check; the
//! intermediate identities, multiplier evaluations, Kloosterman cross-forms
//! and modular transformation laws are each verified on their own.

pub mod analytic;
pub mod kloosterman;
pub mod modular;
pub mod qseries;
pub mod rademacher;
