//! Exact computer-algebra building blocks for a family of explicit division-ring
//! constructions and their Gelfand–Kirillov growth statistics.
//!
//! * [`mqfield`]: the multiquadratic tower `Q(√p₁,…,√pₙ)` and its sign automorphisms.
//! * [`ordgroup`]: the ordered free abelian group `G = ⊕ℤ`, the squares subgroup and
//!   the twist homomorphism into the Galois group.
//! * [`twistring`]: finitely supported elements of the twisted series ring `K((G,Φ))`.
//! * [`gammalab`]: coefficient functionals of powers of `γ = x₁⁻¹ + x₂⁻¹ + …` and the
//!   normal-form growth model of the GK-dimension-one example.
//! * [`cyclo`]: prime-power cyclotomic fields `Q(ζ_{p^{2t}})`.
//! * [`qaffine`]: quantum affine spaces at roots of unity.
//! * [`growth`]: degree estimation from dimension sequences.

pub mod cyclo;
pub mod error;
pub mod gammalab;
pub mod growth;
pub mod mqfield;
pub mod ordgroup;
pub mod qaffine;
pub mod rational;
pub mod twistring;

pub use error::{Error, Result};
