//! Rank-metric cryptography toolkit.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf2m`]: the base field `F_q` inside the extension field `F_{q^N}`, with
//!   the Frobenius automorphism.
//! - [`ranklin`]: vectors and matrices over `F_{q^N}`, rank over the base
//!   field, random scramblers and the rank-error sampler.
//! - [`linpoly`]: linearized (q-)polynomials, the algebra behind Gabidulin
//!   decoding.
//! - [`gabidulin`]: MRD codes with an encoder and a bounded-rank decoder.
//! - [`gpt`]: the GPT public-key cryptosystem in four public-key shapes,
//!   with base-field or extension-field column scramblers.
//! - [`attacks`]: the extended-public-key rank distinguisher, exhaustive
//!   decoding oracles and attack cost estimates.

pub mod attacks;
pub mod gabidulin;
pub mod gf2m;
pub mod gpt;
pub mod linpoly;
pub mod ranklin;

pub use gabidulin::{DecodeError, GabidulinCode};
pub use gf2m::{ExtElem, FieldCtx, FieldError};
pub use gpt::{
    Ciphertext, GptError, GptParams, GptPrivateKey, GptPublicKey, ScramblerMode, Variant,
};
pub use linpoly::LinPoly;
pub use ranklin::{ExtMatrix, ExtVector, LinAlgError};
