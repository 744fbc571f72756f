//! The GPT public-key cryptosystem over Gabidulin codes.
//!
//! Four public-key shapes are supported:
//!
//! | variant          | public key                          | size              |
//! |------------------|-------------------------------------|-------------------|
//! | `Simple`         | `S G P`                             | `k × n`           |
//! | `Extended`       | `S [X | G] P`                       | `k × (n+t₁)`      |
//! | `RectangularS`   | `S [X | G] P`, `S` is `(k−p) × k`    | `(k−p) × (n+t₁)`  |
//! | `TwoDistortion`  | `S ([O | G] + [X₁ | X₂]) P`          | `k × (n+m)`       |
//!
//! The column scrambler is either entirely over the base field, which lets
//! `P` commute with the Frobenius map, or built from its inverse as
//! `P⁻¹ = [R | [Q₁ | Q₂] Q]` where `Q₁` has `s_ext` columns over the
//! extension field, `Q₂` and `Q` are over the base field and `R` spans the
//! distortion columns that decryption discards. For an error `e` of rank `r`
//! the kept part of `e P⁻¹` has rank at most `s_ext + r`, which is what the
//! parameter budgets below guarantee stays within the decoding radius.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::gabidulin::{CodeError, DecodeError, GabidulinCode};
use crate::gf2m::{FieldCtx, FieldError};
use crate::ranklin::{
    rank_over_base, sample_error_with, ErrorRank, ExtMatrix, ExtVector, FqMatrix, LinAlgError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GptError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

fn params_err(msg: impl Into<String>) -> GptError {
    GptError::Params(msg.into())
}

/// Public-key shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Simple,
    Extended,
    RectangularS,
    TwoDistortion,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Simple,
        Variant::Extended,
        Variant::RectangularS,
        Variant::TwoDistortion,
    ];

    pub fn tag(self) -> u8 {
        match self {
            Variant::Simple => 3,
            Variant::Extended => 4,
            Variant::RectangularS => 5,
            Variant::TwoDistortion => 6,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        Variant::ALL.into_iter().find(|v| v.tag() == tag)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Simple => "simple",
            Variant::Extended => "extended",
            Variant::RectangularS => "rectangular",
            Variant::TwoDistortion => "two-distortion",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "simple" | "3" => Ok(Variant::Simple),
            "extended" | "4" => Ok(Variant::Extended),
            "rectangular" | "5" => Ok(Variant::RectangularS),
            "two-distortion" | "6" => Ok(Variant::TwoDistortion),
            _ => Err(format!(
                "unknown variant `{s}` (expected simple, extended, rectangular, two-distortion)"
            )),
        }
    }
}

/// How the column scrambler is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScramblerMode {
    /// Every entry of `P` in `F_q`.
    BaseField,
    /// `s_ext` kept columns of `P⁻¹` over `F_{q^N}`.
    ExtensionField,
}

impl ScramblerMode {
    pub fn tag(self) -> u8 {
        match self {
            ScramblerMode::BaseField => 0,
            ScramblerMode::ExtensionField => 1,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(ScramblerMode::BaseField),
            1 => Some(ScramblerMode::ExtensionField),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScramblerMode::BaseField => "base_field",
            ScramblerMode::ExtensionField => "extension_field_V",
        }
    }
}

impl fmt::Display for ScramblerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScramblerMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "base_field" | "base" => Ok(ScramblerMode::BaseField),
            "extension_field_V" | "extension_field" | "extension" => {
                Ok(ScramblerMode::ExtensionField)
            }
            _ => Err(format!(
                "unknown scrambler mode `{s}` (expected base_field or extension_field_V)"
            )),
        }
    }
}

/// Public system parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GptParams {
    pub ctx: FieldCtx,
    pub n: usize,
    pub k: usize,
    pub variant: Variant,
    /// Plaintext error rank (`Simple`) or distortion column rank.
    pub t1: usize,
    /// Artificial error rank bound for the distortion variants.
    pub t2: usize,
    /// Row-scrambler co-dimension (`RectangularS`).
    pub p: usize,
    /// Width of the `X₁` block (`TwoDistortion`).
    pub m_cols: usize,
    pub mode: ScramblerMode,
    /// Kept columns of `P⁻¹` over the extension field.
    pub s_ext: usize,
    /// Ordinary (extension-field) rank of `X`; affects key generation only.
    pub r_x: usize,
}

impl GptParams {
    /// Parameters with the default extension-column budget for the mode.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        ctx: FieldCtx,
        n: usize,
        k: usize,
        variant: Variant,
        t1: usize,
        t2: usize,
        p: usize,
        m_cols: usize,
        mode: ScramblerMode,
    ) -> Self {
        let mut params = GptParams {
            ctx,
            n,
            k,
            variant,
            t1,
            t2,
            p,
            m_cols,
            mode,
            s_ext: 0,
            r_x: t1,
        };
        params.s_ext = params.default_s_ext();
        params
    }

    /// `t − (rank budget spent by errors and distortion)` for extension
    /// mode, `0` for base-field mode.
    pub fn default_s_ext(&self) -> usize {
        if self.mode == ScramblerMode::BaseField {
            return 0;
        }
        let t = self.t();
        let spent = match self.variant {
            Variant::Simple => self.t1,
            Variant::Extended | Variant::RectangularS => self.t2,
            Variant::TwoDistortion => self.t1 + self.t2,
        };
        t.saturating_sub(spent)
    }

    /// `(q=2, N=n=28, k=14, t₁=3)`, Simple variant, `s_ext = 4`.
    pub fn standard28() -> Self {
        let ctx = FieldCtx::binary(28).expect("default modulus for N=28");
        Self::new(
            ctx,
            28,
            14,
            Variant::Simple,
            3,
            0,
            0,
            0,
            ScramblerMode::ExtensionField,
        )
    }

    /// `(q=2, N=n=12, k=6, t=3)` with per-variant budgets that keep
    /// `s_ext = 1` in extension mode.
    pub fn desk12(variant: Variant, mode: ScramblerMode) -> Self {
        let ctx = FieldCtx::binary(12).expect("default modulus for N=12");
        let (t1, t2, p, m) = match variant {
            Variant::Simple => (2, 0, 0, 0),
            Variant::Extended => (1, 2, 0, 0),
            Variant::RectangularS => (1, 2, 1, 0),
            Variant::TwoDistortion => (1, 1, 0, 2),
        };
        Self::new(ctx, 12, 12 / 2, variant, t1, t2, p, m, mode)
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "paper-28" => Some(Self::standard28()),
            "desk-12" => Some(Self::desk12(Variant::Simple, ScramblerMode::ExtensionField)),
            _ => None,
        }
    }

    pub fn t(&self) -> usize {
        (self.n - self.k) / 2
    }

    /// Columns of `P⁻¹` in front of the Gabidulin block, discarded when
    /// decrypting.
    pub fn prefix_cols(&self) -> usize {
        match self.variant {
            Variant::Simple => 0,
            Variant::Extended | Variant::RectangularS => self.t1,
            Variant::TwoDistortion => self.m_cols,
        }
    }

    /// Plaintext dimension.
    pub fn pub_rows(&self) -> usize {
        match self.variant {
            Variant::RectangularS => self.k - self.p,
            _ => self.k,
        }
    }

    /// Ciphertext length.
    pub fn pub_cols(&self) -> usize {
        self.n + self.prefix_cols()
    }

    /// The public error set.
    pub fn error_rank(&self) -> ErrorRank {
        match self.variant {
            Variant::Simple => ErrorRank::Exactly(self.t1),
            _ => ErrorRank::AtMost(self.t2),
        }
    }

    /// Rank of the kept error after unscrambling, in the worst case.
    pub fn rank_budget(&self) -> usize {
        match self.variant {
            Variant::Simple => self.s_ext + self.t1,
            Variant::Extended | Variant::RectangularS => self.s_ext + self.t2,
            Variant::TwoDistortion => self.s_ext + self.t1 + self.t2,
        }
    }

    /// Public key size in bits: `rows · cols · N · log₂ q`.
    pub fn public_key_bits(&self) -> f64 {
        (self.pub_rows() * self.pub_cols() * self.ctx.degree()) as f64 * self.ctx.log2_q()
    }

    pub fn validate(&self) -> Result<(), GptError> {
        let degree = self.ctx.degree();
        if self.n > degree {
            return Err(params_err(format!(
                "code length n={} exceeds the extension degree N={degree}",
                self.n
            )));
        }
        if self.k == 0 || self.k >= self.n {
            return Err(params_err(format!(
                "dimension must satisfy 0 < k < n (k={}, n={})",
                self.k, self.n
            )));
        }
        let t = self.t();
        match self.mode {
            ScramblerMode::BaseField if self.s_ext != 0 => {
                return Err(params_err("base_field scramblers require s_ext = 0"));
            }
            ScramblerMode::ExtensionField if self.s_ext == 0 => {
                return Err(params_err(
                    "extension_field_V scramblers require s_ext >= 1; the rank budget leaves no room (lower t1/t2)",
                ));
            }
            _ => {}
        }
        if self.s_ext > self.n {
            return Err(params_err(format!(
                "s_ext={} exceeds n={}",
                self.s_ext, self.n
            )));
        }
        let unused = |name: &str, v: usize| {
            if v == 0 {
                Ok(())
            } else {
                Err(params_err(format!(
                    "{name} is not used by the {} variant; leave it at 0",
                    self.variant
                )))
            }
        };
        match self.variant {
            Variant::Simple => {
                unused("t2", self.t2)?;
                unused("p", self.p)?;
                unused("m_cols", self.m_cols)?;
            }
            Variant::Extended | Variant::RectangularS => {
                unused("m_cols", self.m_cols)?;
                if self.t1 == 0 {
                    return Err(params_err("the distortion matrix X needs t1 >= 1 columns"));
                }
                if self.r_x == 0 || self.r_x > self.t1 || self.r_x > self.k {
                    return Err(params_err(format!(
                        "ordinary rank of X must lie in 1..=min(t1, k), got {}",
                        self.r_x
                    )));
                }
                if self.variant == Variant::RectangularS {
                    if self.p == 0 || self.p >= self.k {
                        return Err(params_err(format!(
                            "row-scrambler co-dimension must satisfy 0 < p < k (p={}, k={})",
                            self.p, self.k
                        )));
                    }
                } else {
                    unused("p", self.p)?;
                }
            }
            Variant::TwoDistortion => {
                unused("p", self.p)?;
                if self.m_cols == 0 {
                    return Err(params_err("the X1 block needs m_cols >= 1"));
                }
                if self.t1 == 0 || self.t1 > self.n {
                    return Err(params_err(format!(
                        "column rank of X2 must lie in 1..=n, got t1={}",
                        self.t1
                    )));
                }
            }
        }
        if self.error_rank().bound() > self.pub_cols().min(degree) {
            return Err(params_err("error rank exceeds the ciphertext length"));
        }
        if self.rank_budget() > t {
            return Err(params_err(format!(
                "rank budget {} exceeds the decoding radius t={t} (reduce s_ext, t1 or t2)",
                self.rank_budget()
            )));
        }
        Ok(())
    }
}

/// Draws `(P, P⁻¹)` of order `prefix + n`.
///
/// `P⁻¹ = [R | [Q₁ | Q₂] Q]` with `R` the `prefix` discarded columns, `Q₁`
/// the `s_ext` extension-field columns, `Q₂` over `F_q` and `Q` a random
/// invertible `n × n` base-field mask. In base-field mode all blocks are over
/// `F_q`. Resamples until invertible.
pub fn build_scrambler<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    prefix: usize,
    n: usize,
    s_ext: usize,
    mode: ScramblerMode,
    rng: &mut R,
) -> Result<(ExtMatrix, ExtMatrix), GptError> {
    if s_ext > n {
        return Err(params_err(format!("s_ext={s_ext} exceeds n={n}")));
    }
    if mode == ScramblerMode::BaseField && s_ext != 0 {
        return Err(params_err("base_field scramblers require s_ext = 0"));
    }
    let size = prefix + n;
    let ext = mode == ScramblerMode::ExtensionField;
    loop {
        let discarded = if ext {
            ExtMatrix::random(ctx, size, prefix, rng)
        } else {
            ExtMatrix::random_base(ctx, size, prefix, rng)
        };
        let q1 = ExtMatrix::random(ctx, size, s_ext, rng);
        let q2 = ExtMatrix::random_base(ctx, size, n - s_ext, rng);
        let mask = ExtMatrix::from_base(ctx, &FqMatrix::random_full_rank(ctx.q(), n, n, rng));
        let kept = q1.concat_cols(&q2)?.mul(ctx, &mask)?;
        let p_inv = discarded.concat_cols(&kept)?;
        if let Ok(p) = p_inv.inverse(ctx) {
            return Ok((p, p_inv));
        }
    }
}

/// The square scrambler pair with `s_ext` extension-field columns.
pub fn build_scrambler_v<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    size: usize,
    s_ext: usize,
    rng: &mut R,
) -> Result<(ExtMatrix, ExtMatrix), GptError> {
    let mode = if s_ext == 0 {
        ScramblerMode::BaseField
    } else {
        ScramblerMode::ExtensionField
    };
    build_scrambler(ctx, 0, size, s_ext, mode, rng)
}

/// A `rows × cols` matrix whose columns span an `F_q`-space of dimension
/// exactly `col_rank` and whose ordinary rank is `ordinary_rank`.
fn distortion_matrix<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    rows: usize,
    cols: usize,
    col_rank: usize,
    ordinary_rank: usize,
    rng: &mut R,
) -> ExtMatrix {
    loop {
        // Z (rows × ordinary_rank) · Y (ordinary_rank × col_rank) · B (col_rank × cols, base)
        let z = ExtMatrix::random(ctx, rows, ordinary_rank, rng);
        let y = ExtMatrix::random(ctx, ordinary_rank, col_rank, rng);
        let core = z.mul(ctx, &y).expect("shapes agree");
        let b = if col_rank == cols {
            ExtMatrix::identity(cols)
        } else {
            ExtMatrix::from_base(
                ctx,
                &FqMatrix::random_full_rank(ctx.q(), col_rank, cols, rng),
            )
        };
        let x = core.mul(ctx, &b).expect("shapes agree");
        if x.column_rank_over_base(ctx) == col_rank && x.rank_ext(ctx) == ordinary_rank {
            return x;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GptPublicKey {
    pub params: GptParams,
    pub g_pub: ExtMatrix,
}

impl GptPublicKey {
    pub fn ctx(&self) -> &FieldCtx {
        &self.params.ctx
    }

    pub fn key_bits(&self) -> f64 {
        self.params.public_key_bits()
    }
}

/// Private key. The distortion blocks are not kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GptPrivateKey {
    pub params: GptParams,
    pub code: GabidulinCode,
    pub s: ExtMatrix,
    pub p: ExtMatrix,
    pub p_inv: ExtMatrix,
}

impl GptPrivateKey {
    /// Reassembles a private key from stored parts, checking consistency.
    pub fn from_parts(
        params: GptParams,
        support: ExtVector,
        s: ExtMatrix,
        p_inv: ExtMatrix,
    ) -> Result<Self, GptError> {
        params.validate()?;
        let ctx = &params.ctx;
        let code = GabidulinCode::new(ctx, params.n, params.k, support)?;
        if (s.rows(), s.cols()) != (params.pub_rows(), params.k) || s.rank_ext(ctx) != s.rows() {
            return Err(params_err("row scrambler has the wrong shape or rank"));
        }
        if p_inv.rows() != params.pub_cols() {
            return Err(params_err("column scrambler has the wrong order"));
        }
        let p = p_inv.inverse(ctx)?;
        Ok(GptPrivateKey {
            params,
            code,
            s,
            p,
            p_inv,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.params.ctx
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext(pub ExtVector);

/// Generates a key pair.
pub fn keygen<R: Rng + ?Sized>(
    params: &GptParams,
    rng: &mut R,
) -> Result<(GptPublicKey, GptPrivateKey), GptError> {
    params.validate()?;
    let ctx = &params.ctx;
    let (n, k) = (params.n, params.k);
    let code = GabidulinCode::random(ctx, n, k, rng)?;
    let s = ExtMatrix::random_full_row_rank(ctx, params.pub_rows(), k, false, rng);
    let g = code.generator();
    let body = match params.variant {
        Variant::Simple => g.clone(),
        Variant::Extended | Variant::RectangularS => {
            let x = distortion_matrix(ctx, k, params.t1, params.t1, params.r_x, rng);
            x.concat_cols(g)?
        }
        Variant::TwoDistortion => {
            let x1 = ExtMatrix::random(ctx, k, params.m_cols, rng);
            let x2 = distortion_matrix(ctx, k, n, params.t1, params.t1.min(k), rng);
            x1.concat_cols(&g.add(ctx, &x2)?)?
        }
    };
    let (p, p_inv) = build_scrambler(ctx, params.prefix_cols(), n, params.s_ext, params.mode, rng)?;
    let g_pub = s.mul(ctx, &body)?.mul(ctx, &p)?;
    let pk = GptPublicKey {
        params: params.clone(),
        g_pub,
    };
    let sk = GptPrivateKey {
        params: params.clone(),
        code,
        s,
        p,
        p_inv,
    };
    Ok((pk, sk))
}

/// `c = m · G_pub + e` for a caller-supplied error.
pub fn encrypt_with_error(
    pk: &GptPublicKey,
    m: &ExtVector,
    e: &ExtVector,
) -> Result<Ciphertext, GptError> {
    let rows = pk.g_pub.rows();
    if m.len() != rows {
        return Err(GptError::LengthMismatch {
            expected: rows,
            got: m.len(),
        });
    }
    if e.len() != pk.g_pub.cols() {
        return Err(GptError::LengthMismatch {
            expected: pk.g_pub.cols(),
            got: e.len(),
        });
    }
    let ctx = pk.ctx();
    let c = pk.g_pub.vec_mul(ctx, m.as_slice())?;
    Ok(Ciphertext(c.add(ctx, e)))
}

/// Encrypts with an error drawn from the public error set.
pub fn encrypt<R: Rng + ?Sized>(
    pk: &GptPublicKey,
    m: &ExtVector,
    rng: &mut R,
) -> Result<Ciphertext, GptError> {
    let e = sample_error_with(pk.ctx(), pk.g_pub.cols(), pk.params.error_rank(), rng)?;
    encrypt_with_error(pk, m, &e)
}

/// Unscrambles, decodes the Gabidulin block and undoes the row scrambler.
pub fn decrypt(sk: &GptPrivateKey, c: &Ciphertext) -> Result<ExtVector, GptError> {
    let params = &sk.params;
    let ctx = &params.ctx;
    if c.0.len() != params.pub_cols() {
        return Err(GptError::LengthMismatch {
            expected: params.pub_cols(),
            got: c.0.len(),
        });
    }
    let unscrambled = sk.p_inv.vec_mul(ctx, c.0.as_slice())?;
    let kept = unscrambled.slice(params.prefix_cols()..params.pub_cols());
    let (ms, _) = sk.code.decode(&kept)?;
    sk.s.solve_left(ctx, ms.as_slice())
        .ok_or(GptError::Decode(DecodeError::Failure {
            t: params.t(),
            reason: "decoded word is outside the row scrambler's image",
        }))
}

/// `Rk(e P⁻¹ | F_q)` restricted to the decoded block.
pub fn unscrambled_error_rank(sk: &GptPrivateKey, e: &ExtVector) -> Result<usize, GptError> {
    let params = &sk.params;
    if e.len() != sk.p_inv.rows() {
        return Err(GptError::LengthMismatch {
            expected: sk.p_inv.rows(),
            got: e.len(),
        });
    }
    let ctx = &params.ctx;
    let ep = sk.p_inv.vec_mul(ctx, e.as_slice())?;
    Ok(rank_over_base(
        ctx,
        &ep.as_slice()[params.prefix_cols()..params.pub_cols()],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranklin::sample_error;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn presets_validate() {
        for variant in Variant::ALL {
            for mode in [ScramblerMode::BaseField, ScramblerMode::ExtensionField] {
                let p = GptParams::desk12(variant, mode);
                p.validate().unwrap();
                let expected = if mode == ScramblerMode::BaseField {
                    0
                } else {
                    1
                };
                assert_eq!(p.s_ext, expected, "{variant}");
            }
        }
        let p = GptParams::standard28();
        p.validate().unwrap();
        assert_eq!((p.t(), p.t1, p.s_ext), (7, 3, 4));
        assert_eq!(p.public_key_bits(), 10976.0);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let mut p = GptParams::desk12(Variant::Simple, ScramblerMode::ExtensionField);
        p.t1 = 3;
        assert!(p.validate().is_err());
        p.t1 = 2;
        p.s_ext = 0;
        assert!(p.validate().is_err());
        let mut p = GptParams::desk12(Variant::TwoDistortion, ScramblerMode::ExtensionField);
        p.t2 = 2;
        assert!(p.validate().is_err());
        let mut p = GptParams::desk12(Variant::RectangularS, ScramblerMode::BaseField);
        p.p = 6;
        assert!(p.validate().is_err());
        let mut p = GptParams::desk12(Variant::Extended, ScramblerMode::BaseField);
        p.s_ext = 1;
        assert!(p.validate().is_err());
        let mut p = GptParams::desk12(Variant::Simple, ScramblerMode::BaseField);
        p.t2 = 1;
        assert!(p.validate().is_err());
        // Base-field Simple accepts the full radius.
        let mut p = GptParams::desk12(Variant::Simple, ScramblerMode::BaseField);
        p.t1 = 3;
        p.validate().unwrap();
    }

    #[test]
    fn scrambler_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ctx = FieldCtx::binary(12).unwrap();
        let (p, p_inv) = build_scrambler_v(&ctx, 12, 0, &mut rng).unwrap();
        assert!(p.is_over_base(&ctx) && p_inv.is_over_base(&ctx));
        assert_eq!(p.frobenius(&ctx, 1), p);
        let one = build_scrambler_v(&ctx, 1, 0, &mut rng).unwrap();
        assert_eq!(one.0, ExtMatrix::identity(1));
        for _ in 0..20 {
            let (p, p_inv) = build_scrambler_v(&ctx, 12, 1, &mut rng).unwrap();
            assert_eq!(p.mul(&ctx, &p_inv).unwrap(), ExtMatrix::identity(12));
            assert_ne!(p.frobenius(&ctx, 1), p);
            // The extension-field part of P⁻¹ spans a single column's worth
            // of F_q-rank beyond the base-field part.
            let e = sample_error(&ctx, 12, 2, &mut rng).unwrap();
            let ep = p_inv.vec_mul(&ctx, e.as_slice()).unwrap();
            assert!(rank_over_base(&ctx, ep.as_slice()) <= 3);
        }
    }

    #[test]
    fn public_key_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for variant in Variant::ALL {
            for mode in [ScramblerMode::BaseField, ScramblerMode::ExtensionField] {
                let params = GptParams::desk12(variant, mode);
                let (pk, sk) = keygen(&params, &mut rng).unwrap();
                assert_eq!(pk.g_pub.rows(), params.pub_rows());
                assert_eq!(pk.g_pub.cols(), params.pub_cols());
                assert_eq!(pk.g_pub.rank_ext(&params.ctx), params.pub_rows());
                assert_eq!(
                    sk.p.mul(&params.ctx, &sk.p_inv).unwrap(),
                    ExtMatrix::identity(params.pub_cols())
                );
                assert_eq!(
                    sk.p.is_over_base(&params.ctx),
                    mode == ScramblerMode::BaseField
                );
            }
        }
    }

    #[test]
    fn round_trips_every_variant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for variant in Variant::ALL {
            for mode in [ScramblerMode::BaseField, ScramblerMode::ExtensionField] {
                let params = GptParams::desk12(variant, mode);
                let (pk, sk) = keygen(&params, &mut rng).unwrap();
                for _ in 0..20 {
                    let m = ExtVector::random(&params.ctx, params.pub_rows(), &mut rng);
                    let c = encrypt(&pk, &m, &mut rng).unwrap();
                    assert_eq!(decrypt(&sk, &c).unwrap(), m, "{variant} {mode}");
                }
                let zero = ExtVector::zeros(params.pub_rows());
                let c =
                    encrypt_with_error(&pk, &zero, &ExtVector::zeros(params.pub_cols())).unwrap();
                assert!(c.0.is_zero());
                assert_eq!(decrypt(&sk, &c).unwrap(), zero);
            }
        }
    }

    #[test]
    fn simple_base_field_decrypts_at_full_radius() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut params = GptParams::desk12(Variant::Simple, ScramblerMode::BaseField);
        params.t1 = params.t();
        let (pk, sk) = keygen(&params, &mut rng).unwrap();
        for _ in 0..20 {
            let m = ExtVector::random(&params.ctx, 6, &mut rng);
            let c = encrypt(&pk, &m, &mut rng).unwrap();
            assert_eq!(decrypt(&sk, &c).unwrap(), m);
        }
    }

    #[test]
    fn encryption_error_has_the_sampled_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params = GptParams::desk12(Variant::Simple, ScramblerMode::ExtensionField);
        let (pk, _) = keygen(&params, &mut rng).unwrap();
        let ctx = &params.ctx;
        for _ in 0..50 {
            let m = ExtVector::random(ctx, 6, &mut rng);
            let c = encrypt(&pk, &m, &mut rng).unwrap();
            let e = c.0.sub(ctx, &pk.g_pub.vec_mul(ctx, m.as_slice()).unwrap());
            assert_eq!(rank_over_base(ctx, e.as_slice()), 2);
        }
        assert!(matches!(
            encrypt(&pk, &ExtVector::zeros(5), &mut rng),
            Err(GptError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn tampered_ciphertext_fails_to_decrypt() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let params = GptParams::desk12(Variant::Simple, ScramblerMode::ExtensionField);
        let (pk, sk) = keygen(&params, &mut rng).unwrap();
        let ctx = &params.ctx;
        let mut failures = 0;
        for _ in 0..50 {
            let m = ExtVector::random(ctx, 6, &mut rng);
            let c = encrypt(&pk, &m, &mut rng).unwrap();
            // An extra rank-(t+1) error in the intermediate ciphertext.
            let extra = sample_error(ctx, 12, params.t() + 1, &mut rng).unwrap();
            let extra_pub = sk.p.vec_mul(ctx, extra.as_slice()).unwrap();
            let tampered = Ciphertext(c.0.add(ctx, &extra_pub));
            match decrypt(&sk, &tampered) {
                Err(GptError::Decode(_)) => failures += 1,
                Ok(m2) => assert_ne!(m2, m),
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(failures > 40, "{failures}");
    }

    #[test]
    fn unscrambled_rank_bound_holds_and_is_needed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let params = GptParams::desk12(Variant::Simple, ScramblerMode::ExtensionField);
        let (_, sk) = keygen(&params, &mut rng).unwrap();
        let ctx = &params.ctx;
        assert_eq!(unscrambled_error_rank(&sk, &ExtVector::zeros(12)).unwrap(), 0);
        for _ in 0..1000 {
            let e = sample_error(ctx, 12, params.t1, &mut rng).unwrap();
            assert!(unscrambled_error_rank(&sk, &e).unwrap() <= params.t());
        }
        // A scrambler with every column over the extension field breaks it.
        let (p, p_inv) = build_scrambler_v(ctx, 12, 12, &mut rng).unwrap();
        let naive = GptPrivateKey { p, p_inv, ..sk };
        let exceeded = (0..200)
            .filter(|_| {
                let e = sample_error(ctx, 12, params.t1, &mut rng).unwrap();
                unscrambled_error_rank(&naive, &e).unwrap() > params.t()
            })
            .count();
        assert!(exceeded > 0);
    }

    #[test]
    fn two_distortion_rank_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let ctx = FieldCtx::binary(12).unwrap();
        for t1 in 1..=3 {
            let x2 = distortion_matrix(&ctx, 6, 12, t1, t1, &mut rng);
            assert_eq!(x2.column_rank_over_base(&ctx), t1);
            for _ in 0..100 {
                let v = ExtVector::random(&ctx, 6, &mut rng);
                let vx = x2.vec_mul(&ctx, v.as_slice()).unwrap();
                assert!(rank_over_base(&ctx, vx.as_slice()) <= t1);
            }
        }
        // Ordinary rank below the column rank.
        let x = distortion_matrix(&ctx, 6, 3, 3, 1, &mut rng);
        assert_eq!((x.column_rank_over_base(&ctx), x.rank_ext(&ctx)), (3, 1));
    }

    #[test]
    fn private_key_reassembles_from_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let params = GptParams::desk12(Variant::RectangularS, ScramblerMode::ExtensionField);
        let (_, sk) = keygen(&params, &mut rng).unwrap();
        let again = GptPrivateKey::from_parts(
            params.clone(),
            sk.code.support().clone(),
            sk.s.clone(),
            sk.p_inv.clone(),
        )
        .unwrap();
        assert_eq!(again, sk);
        assert!(GptPrivateKey::from_parts(
            params,
            sk.code.support().clone(),
            ExtMatrix::identity(6),
            sk.p_inv.clone()
        )
        .is_err());
    }
}
