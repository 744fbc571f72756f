//! Arithmetic in `F_q` and its degree-`N` extension `F_{q^N}`.
//!
//! An element of `F_{q^N}` is stored as the integer `Σ cᵢ qⁱ`, where
//! `(c₀, …, c_{N−1})` are its coordinates in the polynomial basis
//! `1, α, …, α^{N−1}` of the field modulus. For `q = 2` this is the usual
//! bit-packed representation and addition is a xor. Elements of the base
//! field `F_q` are exactly the integers `< q`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

/// Largest supported extension degree when `q = 2`.
pub const MAX_BINARY_DEGREE: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("base field size {0} is not a prime (only prime q is supported)")]
    UnsupportedQ(u32),
    #[error("extension degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("field of size {q}^{degree} does not fit the machine word representation")]
    TooLarge { q: u32, degree: usize },
    #[error("modulus must have {expected} coefficients (degree {degree}), got {got}")]
    ModulusLength {
        expected: usize,
        degree: usize,
        got: usize,
    },
    #[error("modulus coefficients must be reduced mod q and monic")]
    ModulusNotMonic,
    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),
    #[error("no irreducible polynomial of degree {0} found")]
    NoDefaultModulus(usize),
    #[error("value {value:#x} is not an element of a field of order {order}")]
    NotAnElement { value: u64, order: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// An element of `F_{q^N}`, in the integer encoding described at module level.
///
/// Elements carry no reference to their field; every operation goes through a
/// [`FieldCtx`]. Use [`FieldCtx::elem`] to validate untrusted values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExtElem(pub(crate) u64);

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem(0);
    pub const ONE: ExtElem = ExtElem(1);

    /// Raw integer encoding.
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::LowerHex for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// The pair `F_q ⊂ F_{q^N}`: base field size, extension degree, modulus and
/// precomputed Frobenius images of the polynomial basis.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldCtx {
    q: u32,
    degree: usize,
    /// Monic modulus, low coefficient first, `degree + 1` entries.
    modulus: Vec<u32>,
    order: u64,
    /// For `q = 2`: the modulus without its leading term, as a bit mask.
    low_mask: u64,
    /// `frob[i][j] = σ^i(α^j)`.
    frob: Vec<Vec<ExtElem>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("q", &self.q)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldCtx {
    /// Builds `F_{q^N}` over the given modulus, verifying irreducibility.
    pub fn new(q: u32, degree: usize, modulus: &[u32]) -> Result<Self, FieldError> {
        let order = check_sizes(q, degree)?;
        if modulus.len() != degree + 1 {
            return Err(FieldError::ModulusLength {
                expected: degree + 1,
                degree,
                got: modulus.len(),
            });
        }
        if modulus[degree] != 1 || modulus.iter().any(|&c| c >= q) {
            return Err(FieldError::ModulusNotMonic);
        }
        if !poly::is_irreducible(modulus, q) {
            return Err(FieldError::Reducible(q));
        }
        let mut low_mask = 0;
        if q == 2 {
            for (i, &c) in modulus[..degree].iter().enumerate() {
                low_mask |= u64::from(c) << i;
            }
        }
        let mut ctx = FieldCtx {
            q,
            degree,
            modulus: modulus.to_vec(),
            order,
            low_mask,
            frob: Vec::new(),
        };
        ctx.frob = ctx.build_frobenius_tables();
        Ok(ctx)
    }

    /// Builds `F_{q^N}` with the default modulus for `(q, N)`.
    pub fn with_default_modulus(q: u32, degree: usize) -> Result<Self, FieldError> {
        check_sizes(q, degree)?;
        let modulus = default_modulus(q, degree)?;
        Self::new(q, degree, &modulus)
    }

    /// `F_{2^N}` with the default modulus.
    pub fn binary(degree: usize) -> Result<Self, FieldError> {
        Self::with_default_modulus(2, degree)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Extension degree `N`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Modulus coefficients, constant term first, leading 1 last.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements `q^N`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    /// Bits per base-field symbol, `log₂ q`.
    pub fn log2_q(&self) -> f64 {
        f64::from(self.q).log2()
    }

    /// Width in bytes of the fixed-size big-endian element encoding.
    pub fn elem_bytes(&self) -> usize {
        let bits = 64 - (self.order - 1).leading_zeros() as usize;
        bits.div_ceil(8).max(1)
    }

    /// Validates a raw integer as an element of this field.
    pub fn elem(&self, value: u64) -> Result<ExtElem, FieldError> {
        if value < self.order {
            Ok(ExtElem(value))
        } else {
            Err(FieldError::NotAnElement {
                value,
                order: self.order,
            })
        }
    }

    pub fn contains(&self, a: ExtElem) -> bool {
        a.0 < self.order
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem::ZERO
    }

    pub fn one(&self) -> ExtElem {
        ExtElem::ONE
    }

    /// The class of `x` modulo the field modulus, written `α`.
    pub fn alpha(&self) -> ExtElem {
        ExtElem(u64::from(self.q))
    }

    /// `α^i` as a basis element, `i < N`.
    pub fn basis(&self, i: usize) -> ExtElem {
        assert!(i < self.degree, "basis index out of range");
        ExtElem(u64::from(self.q).pow(i as u32))
    }

    /// Embeds a base-field scalar.
    pub fn base(&self, c: u32) -> ExtElem {
        ExtElem(u64::from(c % self.q))
    }

    /// Whether `a` lies in the base field `F_q`.
    pub fn is_base(&self, a: ExtElem) -> bool {
        a.0 < u64::from(self.q)
    }

    /// Coordinates `(c₀, …, c_{N−1})` in the polynomial basis.
    pub fn coords(&self, a: ExtElem) -> Vec<u32> {
        let q = u64::from(self.q);
        let mut v = a.0;
        (0..self.degree)
            .map(|_| {
                let c = (v % q) as u32;
                v /= q;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> ExtElem {
        assert_eq!(coords.len(), self.degree, "coordinate length mismatch");
        let q = u64::from(self.q);
        ExtElem(
            coords
                .iter()
                .rev()
                .fold(0u64, |acc, &c| acc * q + u64::from(c % self.q)),
        )
    }

    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        debug_assert!(self.contains(a) && self.contains(b));
        if self.q == 2 {
            return ExtElem(a.0 ^ b.0);
        }
        let q = u64::from(self.q);
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.degree {
            out += ((x % q + y % q) % q) * place;
            x /= q;
            y /= q;
            place = place.wrapping_mul(q);
        }
        ExtElem(out)
    }

    pub fn neg(&self, a: ExtElem) -> ExtElem {
        if self.q == 2 {
            return a;
        }
        let c: Vec<u32> = self
            .coords(a)
            .into_iter()
            .map(|c| (self.q - c) % self.q)
            .collect();
        self.from_coords(&c)
    }

    pub fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if self.q == 2 {
            return ExtElem(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    /// Multiplies by a base-field scalar.
    pub fn scale(&self, c: u32, a: ExtElem) -> ExtElem {
        match c % self.q {
            0 => ExtElem::ZERO,
            1 => a,
            c => {
                let v: Vec<u32> = self
                    .coords(a)
                    .into_iter()
                    .map(|x| ((u64::from(x) * u64::from(c)) % u64::from(self.q)) as u32)
                    .collect();
                self.from_coords(&v)
            }
        }
    }

    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.0 == 0 || b.0 == 0 {
            return ExtElem::ZERO;
        }
        if self.q == 2 {
            return ExtElem(self.mul_binary(a.0, b.0));
        }
        let pa = self.coords(a);
        let pb = self.coords(b);
        let prod = poly::mul(&pa, &pb, self.q);
        let rem = poly::rem(&prod, &self.modulus, self.q);
        let mut c = vec![0u32; self.degree];
        c[..rem.len()].copy_from_slice(&rem);
        self.from_coords(&c)
    }

    fn mul_binary(&self, a: u64, b: u64) -> u64 {
        let mut acc = 0u64;
        let mut bb = b;
        let mut shift = 0;
        while bb != 0 {
            if bb & 1 == 1 {
                acc ^= a << shift;
            }
            bb >>= 1;
            shift += 1;
        }
        let n = self.degree;
        for bit in (n..2 * n - 1).rev() {
            if acc >> bit & 1 == 1 {
                acc ^= (1u64 << bit) | (self.low_mask << (bit - n));
            }
        }
        acc
    }

    pub fn square(&self, a: ExtElem) -> ExtElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: ExtElem, mut e: u64) -> ExtElem {
        let mut base = a;
        let mut acc = ExtElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: ExtElem) -> Result<ExtElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// `a / b`.
    pub fn div(&self, a: ExtElem, b: ExtElem) -> Result<ExtElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `σ^i(a) = a^{q^{i mod N}}`. Negative `i` gives the inverse powers.
    pub fn frobenius(&self, a: ExtElem, i: i64) -> ExtElem {
        let i = i.rem_euclid(self.degree as i64) as usize;
        if i == 0 || a.0 < u64::from(self.q) {
            return a;
        }
        let table = &self.frob[i];
        if self.q == 2 {
            let mut acc = 0u64;
            let mut v = a.0;
            let mut j = 0;
            while v != 0 {
                if v & 1 == 1 {
                    acc ^= table[j].0;
                }
                v >>= 1;
                j += 1;
            }
            return ExtElem(acc);
        }
        self.coords(a)
            .into_iter()
            .enumerate()
            .fold(ExtElem::ZERO, |acc, (j, c)| {
                self.add(acc, self.scale(c, table[j]))
            })
    }

    fn build_frobenius_tables(&self) -> Vec<Vec<ExtElem>> {
        let q = u64::from(self.q);
        let mut tables = Vec::with_capacity(self.degree);
        let mut current: Vec<ExtElem> = (0..self.degree).map(|j| self.basis(j)).collect();
        for _ in 0..self.degree {
            tables.push(current.clone());
            current = current.iter().map(|&b| self.pow(b, q)).collect();
        }
        tables
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        ExtElem(rng.gen_range(0..self.order))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        ExtElem(rng.gen_range(1..self.order))
    }

    pub fn random_base<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.q)
    }

    /// Big-endian hex text of the element, zero-padded to the element width.
    pub fn to_hex(&self, a: ExtElem) -> String {
        format!("{:0width$x}", a.0, width = self.elem_bytes() * 2)
    }

    pub fn from_hex(&self, s: &str) -> Result<ExtElem, FieldError> {
        let value = u64::from_str_radix(s.trim(), 16).map_err(|_| FieldError::NotAnElement {
            value: u64::MAX,
            order: self.order,
        })?;
        self.elem(value)
    }
}

fn check_sizes(q: u32, degree: usize) -> Result<u64, FieldError> {
    if !is_prime(q) {
        return Err(FieldError::UnsupportedQ(q));
    }
    if degree < 2 {
        return Err(FieldError::DegreeTooSmall(degree));
    }
    let too_large = FieldError::TooLarge { q, degree };
    if q == 2 && degree > MAX_BINARY_DEGREE {
        return Err(too_large);
    }
    let mut order = 1u64;
    for _ in 0..degree {
        order = order.checked_mul(u64::from(q)).ok_or(too_large.clone())?;
    }
    // Products of two coordinates plus accumulation must not overflow in the
    // generic path; keep the order below 2^62.
    if order > 1 << 62 {
        return Err(too_large);
    }
    Ok(order)
}

fn is_prime(q: u32) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// The default modulus of degree `N` over `F_q`.
///
/// For `q = 2` the first irreducible trinomial `x^N + x^a + 1` (smallest `a`)
/// is used, falling back to the first pentanomial. For odd `q` the first
/// irreducible monic polynomial in lexicographic order of the coefficient
/// vector is used. Every candidate is checked with a Rabin irreducibility
/// test.
pub fn default_modulus(q: u32, degree: usize) -> Result<Vec<u32>, FieldError> {
    let monic = |taps: &[usize]| {
        let mut m = vec![0u32; degree + 1];
        m[degree] = 1;
        m[0] = 1;
        for &t in taps {
            m[t] = 1;
        }
        m
    };
    if q == 2 {
        for a in 1..degree {
            let m = monic(&[a]);
            if poly::is_irreducible(&m, 2) {
                return Ok(m);
            }
        }
        for a in 3..degree {
            for b in 2..a {
                for c in 1..b {
                    let m = monic(&[a, b, c]);
                    if poly::is_irreducible(&m, 2) {
                        return Ok(m);
                    }
                }
            }
        }
        return Err(FieldError::NoDefaultModulus(degree));
    }
    // Enumerate the low coefficients as a base-q counter.
    let mut low = vec![0u32; degree];
    loop {
        let mut m = low.clone();
        m.push(1);
        if m[0] != 0 && poly::is_irreducible(&m, q) {
            return Ok(m);
        }
        let mut i = 0;
        loop {
            if i == degree {
                return Err(FieldError::NoDefaultModulus(degree));
            }
            low[i] += 1;
            if low[i] < q {
                break;
            }
            low[i] = 0;
            i += 1;
        }
    }
}

/// Dense polynomials over `F_p` (`p` prime), low coefficient first, used for
/// modulus validation and generic-`q` multiplication.
mod poly {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // Fermat; p is prime.
        let (mut base, mut e, mut acc) = (u64::from(a), u64::from(p) - 2, 1u64);
        let p = u64::from(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }

    pub(super) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p64 = u64::from(p);
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + u64::from(x) * u64::from(y)) % p64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub(super) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = u64::from(inv_mod(m[dm], p));
        let p64 = u64::from(p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let factor = u64::from(r[dr]) * lead_inv % p64;
            if factor != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let sub = factor * u64::from(c) % p64;
                    let idx = dr - dm + i;
                    r[idx] = ((u64::from(r[idx]) + p64 - sub) % p64) as u32;
                }
            }
            r = trim(r);
        }
        r
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `base^(p^times) mod m` by repeated p-th powering.
    fn frobenius_power(base: &[u32], times: usize, m: &[u32], p: u32) -> Vec<u32> {
        let mut cur = rem(base, m, p);
        for _ in 0..times {
            let mut acc = vec![1u32];
            let mut sq = cur.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = rem(&mul(&acc, &sq, p), m, p);
                }
                sq = rem(&mul(&sq, &sq, p), m, p);
                e >>= 1;
            }
            cur = acc;
        }
        cur
    }

    fn prime_factors(mut n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// Rabin's test: `f` of degree `n` is irreducible over `F_p` iff
    /// `x^{p^n} ≡ x (mod f)` and `gcd(x^{p^{n/r}} − x, f) = 1` for each prime
    /// `r | n`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let n = f.len() - 1;
        let x = vec![0u32, 1];
        for r in prime_factors(n) {
            let h = frobenius_power(&x, n / r, &f, p);
            let g = gcd(&f, &sub(&h, &x, p), p);
            if g.len() != 1 {
                return false;
            }
        }
        let h = frobenius_power(&x, n, &f, p);
        sub(&h, &rem(&x, &f, p), p).is_empty()
    }

}
