//! Gabidulin codes: MRD codes in the rank metric generated by a Moore matrix.
//!
//! For `g = (g₁, …, gₙ)` linearly independent over `F_q`, the `k × n`
//! generator has rows `g^{[0]}, …, g^{[k−1]}` and the `(n−k) × n` parity
//! check has rows `h^{[0]}, …, h^{[d−2]}` for a dual vector `h`. The minimum
//! rank distance is `d = n − k + 1` and any error of rank at most
//! `t = ⌊(n−k)/2⌋` is corrected.

use rand::Rng;
use thiserror::Error;

use crate::gf2m::{ExtElem, FieldCtx};
use crate::linpoly::{eea, LinPoly};
use crate::ranklin::{random_independent, rank_over_base, ExtMatrix, ExtVector, FqMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code length {n} exceeds the extension degree {degree}")]
    LengthTooLarge { n: usize, degree: usize },
    #[error("dimension must satisfy 0 < k < n, got k={k}, n={n}")]
    InvalidDimension { n: usize, k: usize },
    #[error("support vector has length {got}, expected {expected}")]
    SupportLength { expected: usize, got: usize },
    #[error("support elements are linearly dependent over the base field")]
    DependentSupport,
    #[error("parity-check construction failed")]
    ParityCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no codeword within rank distance {t}: {reason}")]
    Failure { t: usize, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GabidulinCode {
    ctx: FieldCtx,
    n: usize,
    k: usize,
    g: ExtVector,
    h: ExtVector,
    generator: ExtMatrix,
    parity_check: ExtMatrix,
}

fn moore(ctx: &FieldCtx, v: &[ExtElem], rows: usize) -> ExtMatrix {
    ExtMatrix::from_fn(rows, v.len(), |i, j| ctx.frobenius(v[j], i as i64))
}

impl GabidulinCode {
    /// Builds the code with support `g`.
    pub fn new(ctx: &FieldCtx, n: usize, k: usize, g: ExtVector) -> Result<Self, CodeError> {
        if n > ctx.degree() {
            return Err(CodeError::LengthTooLarge {
                n,
                degree: ctx.degree(),
            });
        }
        if k == 0 || k >= n {
            return Err(CodeError::InvalidDimension { n, k });
        }
        if g.len() != n {
            return Err(CodeError::SupportLength {
                expected: n,
                got: g.len(),
            });
        }
        if rank_over_base(ctx, g.as_slice()) != n {
            return Err(CodeError::DependentSupport);
        }
        let generator = moore(ctx, g.as_slice(), k);

        // h' ⟂ g^{[0]}, …, g^{[n−2]}; then h = σ^{−(n−k−1)}(h') is orthogonal
        // to g^{[i−l]} for all 0 ≤ i < k, 0 ≤ l ≤ n−k−1, i.e. G·Hᵀ = 0.
        let kernel = moore(ctx, g.as_slice(), n - 1).right_nullspace(ctx);
        let [h_prime] = kernel.as_slice() else {
            return Err(CodeError::ParityCheck);
        };
        let h = h_prime.frobenius(ctx, -((n - k - 1) as i64));
        let parity_check = moore(ctx, h.as_slice(), n - k);
        let code = GabidulinCode {
            ctx: ctx.clone(),
            n,
            k,
            g,
            h,
            generator,
            parity_check,
        };
        let product = code
            .generator
            .mul(ctx, &code.parity_check.transpose())
            .map_err(|_| CodeError::ParityCheck)?;
        if !product.is_zero() || rank_over_base(ctx, code.h.as_slice()) != n {
            return Err(CodeError::ParityCheck);
        }
        Ok(code)
    }

    /// Builds the code with a random support.
    pub fn random<R: Rng + ?Sized>(
        ctx: &FieldCtx,
        n: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<Self, CodeError> {
        if n > ctx.degree() {
            return Err(CodeError::LengthTooLarge {
                n,
                degree: ctx.degree(),
            });
        }
        let g = random_independent(ctx, n, rng).map_err(|_| CodeError::DependentSupport)?;
        Self::new(ctx, n, k, ExtVector(g))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum rank distance `n − k + 1`.
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    /// Error-correcting radius `⌊(n − k)/2⌋`.
    pub fn t(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn support(&self) -> &ExtVector {
        &self.g
    }

    pub fn dual_support(&self) -> &ExtVector {
        &self.h
    }

    pub fn generator(&self) -> &ExtMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &ExtMatrix {
        &self.parity_check
    }

    /// `m · G`.
    pub fn encode(&self, m: &ExtVector) -> Result<ExtVector, DecodeError> {
        if m.len() != self.k {
            return Err(DecodeError::LengthMismatch {
                expected: self.k,
                got: m.len(),
            });
        }
        Ok(self
            .generator
            .vec_mul(&self.ctx, m.as_slice())
            .expect("length checked"))
    }

    /// `y · Hᵀ`.
    pub fn syndrome(&self, y: &ExtVector) -> Result<ExtVector, DecodeError> {
        if y.len() != self.n {
            return Err(DecodeError::LengthMismatch {
                expected: self.n,
                got: y.len(),
            });
        }
        Ok(self
            .parity_check
            .transpose()
            .vec_mul(&self.ctx, y.as_slice())
            .expect("length checked"))
    }

    /// Recovers the message of a codeword from its first `k` coordinates.
    fn message_of(&self, c: &ExtVector) -> Option<ExtVector> {
        let info = self.generator.submatrix(0..self.k, 0..self.k).ok()?;
        let m = info.solve_left(&self.ctx, &c.as_slice()[..self.k])?;
        (self.encode(&m).ok()? == *c).then_some(m)
    }

    /// Decodes `y = m·G + e` with `Rk(e | F_q) ≤ t`, returning `(m, e)`.
    ///
    /// Syndrome decoding: the error-span polynomial solves the key equation
    /// `Λ ∘ S ≡ F (mod x^{[d−1]})` through the linearized Euclidean
    /// algorithm, its root space is the span of the error values, and the
    /// error locations follow from an `F_q`-linear system in the dual
    /// support. Every returned pair is re-verified, so a result is never a
    /// codeword farther than `t`.
    pub fn decode(&self, y: &ExtVector) -> Result<(ExtVector, ExtVector), DecodeError> {
        let ctx = &self.ctx;
        let t = self.t();
        let fail = |reason| DecodeError::Failure { t, reason };
        let s = self.syndrome(y)?;
        if s.is_zero() {
            let m = self
                .message_of(y)
                .ok_or(fail("codeword is not in the code"))?;
            return Ok((m, ExtVector::zeros(self.n)));
        }

        let d1 = self.d() - 1;
        let syndrome_poly = LinPoly::new(s.0.clone());
        let modulus = LinPoly::monomial(d1, ExtElem::ONE);
        let res = eea(ctx, &modulus, &syndrome_poly, d1 - t);
        let lambda = res.v;
        let rank = match lambda.qdeg() {
            Some(r) if (1..=t).contains(&r) => r,
            _ => return Err(fail("error-span polynomial has invalid degree")),
        };
        let span = lambda.kernel(ctx);
        if span.len() != rank {
            return Err(fail("error-span polynomial does not split"));
        }

        // s_l = Σ_i E_i x_i^{[l]}  ⇒  σ^{−l}(s_l) = Σ_i σ^{−l}(E_i) x_i.
        let system = ExtMatrix::from_fn(rank, rank, |l, i| ctx.frobenius(span[i], -(l as i64)));
        let rhs: Vec<ExtElem> = (0..rank)
            .map(|l| ctx.frobenius(s[l], -(l as i64)))
            .collect();
        let x = system
            .transpose()
            .solve_left(ctx, &rhs)
            .ok_or(fail("singular error-value system"))?;

        // x_i = Σ_j Y_ij h_j with Y over F_q.
        let n_deg = ctx.degree();
        let mut basis = FqMatrix::zeros(ctx.q(), n_deg, self.n);
        for j in 0..self.n {
            for (r, c) in ctx.coords(self.h[j]).into_iter().enumerate() {
                basis[(r, j)] = c;
            }
        }
        let mut e = vec![ExtElem::ZERO; self.n];
        for (i, &xi) in x.iter().enumerate() {
            let row = basis
                .solve(&ctx.coords(xi))
                .ok_or(fail("error location outside the dual support"))?;
            for (ej, &yij) in e.iter_mut().zip(&row) {
                *ej = ctx.add(*ej, ctx.scale(yij, span[i]));
            }
        }
        let e = ExtVector(e);
        if rank_over_base(ctx, e.as_slice()) > t {
            return Err(fail("recovered error exceeds the decoding radius"));
        }
        let c = y.sub(ctx, &e);
        let m = self
            .message_of(&c)
            .ok_or(fail("corrected word is not a codeword"))?;
        Ok((m, e))
    }
}
