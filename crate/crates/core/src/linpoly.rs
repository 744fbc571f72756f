//! Linearized polynomials `L(x) = Σ aᵢ x^{[i]}` over `F_{q^N}`, where
//! `x^{[i]} = x^{q^i}`.
//!
//! Under composition these form a non-commutative ring; composition is the
//! only product offered. Evaluation maps are `F_q`-linear, so root sets are
//! `F_q`-subspaces and can be computed by linear algebra over the base field.

use thiserror::Error;

use crate::gf2m::{ExtElem, FieldCtx};
use crate::ranklin::FqMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinPolyError {
    #[error("division by the zero linearized polynomial")]
    ZeroDivisor,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinPoly {
    /// `coeffs[i]` multiplies `x^{[i]}`; no trailing zeros.
    coeffs: Vec<ExtElem>,
}

impl LinPoly {
    pub fn zero() -> Self {
        LinPoly { coeffs: Vec::new() }
    }

    /// The identity map `x`.
    pub fn x() -> Self {
        LinPoly {
            coeffs: vec![ExtElem::ONE],
        }
    }

    /// `c · x^{[i]}`.
    pub fn monomial(i: usize, c: ExtElem) -> Self {
        let mut coeffs = vec![ExtElem::ZERO; i + 1];
        coeffs[i] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<ExtElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[ExtElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExtElem {
        self.coeffs.get(i).copied().unwrap_or(ExtElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// q-degree, `None` for the zero polynomial.
    pub fn qdeg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> ExtElem {
        self.coeffs.last().copied().unwrap_or(ExtElem::ZERO)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &LinPoly) -> LinPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        LinPoly::new(
            (0..n)
                .map(|i| ctx.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &LinPoly) -> LinPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        LinPoly::new(
            (0..n)
                .map(|i| ctx.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, ctx: &FieldCtx, other: &LinPoly) -> LinPoly {
        if self.is_zero() || other.is_zero() {
            return LinPoly::zero();
        }
        let mut out = vec![ExtElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = ctx.mul(a, ctx.frobenius(b, i as i64));
                out[i + j] = ctx.add(out[i + j], term);
            }
        }
        LinPoly::new(out)
    }

    pub fn eval(&self, ctx: &FieldCtx, beta: ExtElem) -> ExtElem {
        self.coeffs
            .iter()
            .enumerate()
            .fold(ExtElem::ZERO, |acc, (i, &a)| {
                ctx.add(acc, ctx.mul(a, ctx.frobenius(beta, i as i64)))
            })
    }

    /// Right division: returns `(quot, rem)` with
    /// `self = quot ∘ divisor + rem` and `qdeg(rem) < qdeg(divisor)`.
    pub fn right_divide(
        &self,
        ctx: &FieldCtx,
        divisor: &LinPoly,
    ) -> Result<(LinPoly, LinPoly), LinPolyError> {
        let dd = divisor.qdeg().ok_or(LinPolyError::ZeroDivisor)?;
        let lead_d = divisor.lead();
        let mut rem = self.clone();
        let mut quot = vec![ExtElem::ZERO; self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.qdeg() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            // (c x^{[shift]}) ∘ D has leading coefficient c · σ^shift(lead(D)).
            let c = ctx
                .div(rem.lead(), ctx.frobenius(lead_d, shift as i64))
                .expect("leading coefficient is nonzero");
            quot[shift] = ctx.add(quot[shift], c);
            let term = LinPoly::monomial(shift, c).compose(ctx, divisor);
            rem = rem.sub(ctx, &term);
        }
        Ok((LinPoly::new(quot), rem))
    }

    /// F_q-basis of the root space `{β ∈ F_{q^N} : L(β) = 0}`.
    pub fn kernel(&self, ctx: &FieldCtx) -> Vec<ExtElem> {
        let n = ctx.degree();
        if self.is_zero() {
            return (0..n).map(|j| ctx.basis(j)).collect();
        }
        // Column j holds the coordinates of L(α^j).
        let images: Vec<Vec<u32>> = (0..n)
            .map(|j| ctx.coords(self.eval(ctx, ctx.basis(j))))
            .collect();
        let mut m = FqMatrix::zeros(ctx.q(), n, n);
        for (j, img) in images.iter().enumerate() {
            for (i, &c) in img.iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m.nullspace()
            .into_iter()
            .map(|x| ctx.from_coords(&x))
            .collect()
    }

    /// The monic linearized polynomial of least q-degree vanishing on the
    /// `F_q`-span of `roots`.
    pub fn annihilator(ctx: &FieldCtx, roots: &[ExtElem]) -> LinPoly {
        let q = u64::from(ctx.q());
        let mut p = LinPoly::x();
        for &r in roots {
            let v = p.eval(ctx, r);
            if v.is_zero() {
                continue;
            }
            // x^{[1]} − v^{q−1} x vanishes at v.
            let factor = LinPoly::new(vec![ctx.neg(ctx.pow(v, q - 1)), ExtElem::ONE]);
            p = factor.compose(ctx, &p);
        }
        p
    }
}

/// Result of the linearized extended Euclidean algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EeaResult {
    pub u: LinPoly,
    pub v: LinPoly,
    pub r: LinPoly,
    pub steps: usize,
}

/// Extended Euclidean algorithm with right division.
///
/// Maintains `rᵢ = uᵢ ∘ a + vᵢ ∘ b` and stops at the first remainder with
/// q-degree below `stop_degree` (the zero polynomial counts as below).
pub fn eea(ctx: &FieldCtx, a: &LinPoly, b: &LinPoly, stop_degree: usize) -> EeaResult {
    let below = |p: &LinPoly| p.qdeg().is_none_or(|d| d < stop_degree);
    let (mut r_prev, mut r) = (a.clone(), b.clone());
    let (mut u_prev, mut u) = (LinPoly::x(), LinPoly::zero());
    let (mut v_prev, mut v) = (LinPoly::zero(), LinPoly::x());
    if below(&r_prev) || b.is_zero() {
        return EeaResult {
            u: u_prev,
            v: v_prev,
            r: r_prev,
            steps: 0,
        };
    }
    let mut steps = 0;
    while !below(&r) {
        let (quot, rem) = r_prev
            .right_divide(ctx, &r)
            .expect("remainder is nonzero inside the loop");
        let u_next = u_prev.sub(ctx, &quot.compose(ctx, &u));
        let v_next = v_prev.sub(ctx, &quot.compose(ctx, &v));
        r_prev = std::mem::replace(&mut r, rem);
        u_prev = std::mem::replace(&mut u, u_next);
        v_prev = std::mem::replace(&mut v, v_next);
        steps += 1;
    }
    EeaResult { u, v, r, steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranklin::{random_independent, rank_over_base};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly<R: Rng>(ctx: &FieldCtx, deg: usize, rng: &mut R) -> LinPoly {
        let mut c: Vec<ExtElem> = (0..=deg).map(|_| ctx.random(rng)).collect();
        c[deg] = ctx.random_nonzero(rng);
        LinPoly::new(c)
    }

    #[test]
    fn addition_examples() {
        let ctx = FieldCtx::binary(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let l = random_poly(&ctx, 3, &mut rng);
        assert_eq!(l.add(&ctx, &LinPoly::zero()), l);
        assert!(l.add(&ctx, &l).is_zero());
        let s = LinPoly::monomial(1, ExtElem::ONE).add(&ctx, &LinPoly::x());
        assert_eq!(s.coeffs(), &[ExtElem::ONE, ExtElem::ONE]);
    }

    #[test]
    fn composition_examples() {
        let ctx = FieldCtx::binary(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x1 = LinPoly::monomial(1, ExtElem::ONE);
        assert_eq!(x1.compose(&ctx, &x1), LinPoly::monomial(2, ExtElem::ONE));
        let l = random_poly(&ctx, 4, &mut rng);
        assert_eq!(l.compose(&ctx, &LinPoly::x()), l);
        assert_eq!(LinPoly::x().compose(&ctx, &l), l);
        for _ in 0..100 {
            let a = random_poly(&ctx, rng.gen_range(0..5), &mut rng);
            let b = random_poly(&ctx, rng.gen_range(0..5), &mut rng);
            let c = random_poly(&ctx, rng.gen_range(0..5), &mut rng);
            let beta = ctx.random(&mut rng);
            let ab = a.compose(&ctx, &b);
            assert_eq!(ab.eval(&ctx, beta), a.eval(&ctx, b.eval(&ctx, beta)));
            assert_eq!(ab.qdeg().unwrap(), a.qdeg().unwrap() + b.qdeg().unwrap());
            assert_eq!(ab.compose(&ctx, &c), a.compose(&ctx, &b.compose(&ctx, &c)));
            assert_eq!(
                a.compose(&ctx, &b.add(&ctx, &c)),
                ab.add(&ctx, &a.compose(&ctx, &c))
            );
        }
    }

    #[test]
    fn evaluation_examples() {
        let ctx = FieldCtx::binary(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = random_poly(&ctx, 3, &mut rng);
        assert_eq!(l.eval(&ctx, ExtElem::ZERO), ExtElem::ZERO);
        let a = ctx.alpha();
        assert_eq!(
            LinPoly::monomial(1, ExtElem::ONE).eval(&ctx, a),
            ctx.mul(a, a)
        );
        for _ in 0..50 {
            let (b, g) = (ctx.random(&mut rng), ctx.random(&mut rng));
            assert_eq!(
                l.eval(&ctx, ctx.add(b, g)),
                ctx.add(l.eval(&ctx, b), l.eval(&ctx, g))
            );
        }
    }

    #[test]
    fn division_examples() {
        let ctx = FieldCtx::binary(10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let l = random_poly(&ctx, 4, &mut rng);
        assert_eq!(
            l.right_divide(&ctx, &l).unwrap(),
            (LinPoly::x(), LinPoly::zero())
        );
        let small = random_poly(&ctx, 2, &mut rng);
        assert_eq!(
            small.right_divide(&ctx, &l).unwrap(),
            (LinPoly::zero(), small.clone())
        );
        assert_eq!(
            l.right_divide(&ctx, &LinPoly::zero()),
            Err(LinPolyError::ZeroDivisor)
        );
        for _ in 0..100 {
            let a = random_poly(&ctx, rng.gen_range(0..8), &mut rng);
            let d = random_poly(&ctx, rng.gen_range(0..5), &mut rng);
            let (quot, rem) = a.right_divide(&ctx, &d).unwrap();
            assert_eq!(quot.compose(&ctx, &d).add(&ctx, &rem), a);
            assert!(rem.qdeg().is_none_or(|r| r < d.qdeg().unwrap()));
        }
    }

    #[test]
    fn eea_examples() {
        let ctx = FieldCtx::binary(12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_poly(&ctx, 6, &mut rng);
        let res = eea(&ctx, &a, &LinPoly::zero(), 2);
        assert_eq!(
            (res.u, res.v, res.r),
            (LinPoly::x(), LinPoly::zero(), a.clone())
        );
        let b = random_poly(&ctx, 4, &mut rng);
        let res = eea(&ctx, &a, &b, 7);
        assert_eq!(res.steps, 0);
        assert_eq!(res.r, a);
        for _ in 0..100 {
            let da = rng.gen_range(1..10);
            let a = random_poly(&ctx, da, &mut rng);
            let b = random_poly(&ctx, rng.gen_range(0..=da), &mut rng);
            let stop = rng.gen_range(0..=da);
            let res = eea(&ctx, &a, &b, stop);
            let lhs = res.u.compose(&ctx, &a).add(&ctx, &res.v.compose(&ctx, &b));
            assert_eq!(lhs, res.r);
            assert!(res.r.qdeg().is_none_or(|d| d < stop));
            assert!(res.steps <= da + 1);
        }
    }

    #[test]
    fn kernel_examples() {
        let ctx = FieldCtx::binary(8).unwrap();
        assert!(LinPoly::x().kernel(&ctx).is_empty());
        // x^{[1]} − x has the fixed field F_2 as its roots.
        let frob_minus_id = LinPoly::new(vec![ExtElem::ONE, ExtElem::ONE]);
        assert_eq!(frob_minus_id.kernel(&ctx), vec![ExtElem::ONE]);

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for s in 1..=5 {
            let roots = random_independent(&ctx, s, &mut rng).unwrap();
            let ann = LinPoly::annihilator(&ctx, &roots);
            assert_eq!(ann.qdeg(), Some(s));
            for &r in &roots {
                assert!(ann.eval(&ctx, r).is_zero());
            }
            let ker = ann.kernel(&ctx);
            assert_eq!(ker.len(), s);
            let mut joined = ker.clone();
            joined.extend_from_slice(&roots);
            assert_eq!(rank_over_base(&ctx, &joined), s);
            // Random polynomials never have more roots than their q-degree.
            let l = random_poly(&ctx, s, &mut rng);
            assert!(l.kernel(&ctx).len() <= s);
        }
    }

    #[test]
    fn kernel_over_odd_characteristic() {
        let ctx = FieldCtx::with_default_modulus(3, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let roots = random_independent(&ctx, 2, &mut rng).unwrap();
        let ann = LinPoly::annihilator(&ctx, &roots);
        assert_eq!(ann.qdeg(), Some(2));
        assert_eq!(ann.kernel(&ctx).len(), 2);
        for &r in &roots {
            assert!(ann.eval(&ctx, r).is_zero());
        }
    }
}
