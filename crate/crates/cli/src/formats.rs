//! Key and ciphertext files.
//!
//! The binary layout is canonical: the magic `GPTRANK1`, a kind byte, the
//! parameter header, the body and a trailing SHA-256 of everything before
//! it. Integers are big-endian `u32` (the message length is `u64`); field
//! elements are fixed-width big-endian words of `elem_bytes` bytes and
//! matrices are row-major. The hex form is the hex text of the binary bytes;
//! the JSON form carries the same fields plus the checksum of the binary
//! encoding, which is recomputed on load.

use std::fmt;

use rankgpt::gpt::Ciphertext;
use rankgpt::{
    ExtElem, ExtMatrix, ExtVector, FieldCtx, GptParams, GptPrivateKey, GptPublicKey, ScramblerMode,
    Variant,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const MAGIC: &[u8; 8] = b"GPTRANK1";
const CHECKSUM_LEN: usize = 32;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("missing GPTRANK1 magic")]
    BadMagic,
    #[error("checksum mismatch")]
    Checksum,
    #[error("file is truncated")]
    Truncated,
    #[error("{0} unexpected bytes after the body")]
    Trailing(usize),
    #[error("unknown file kind {0}")]
    UnknownKind(String),
    #[error("expected a {expected} file, found a {found} file")]
    WrongKind { expected: Kind, found: Kind },
    #[error("invalid header: {0}")]
    Header(String),
    #[error("invalid body: {0}")]
    Body(String),
    #[error("invalid hex: {0}")]
    Hex(#[from] hex::FromHexError),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Output encoding of an artifact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Bin,
    Hex,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    PublicKey,
    PrivateKey,
    Ciphertext,
}

impl Kind {
    fn tag(self) -> u8 {
        match self {
            Kind::PublicKey => 1,
            Kind::PrivateKey => 2,
            Kind::Ciphertext => 3,
        }
    }

    fn from_tag(tag: u8) -> Result<Self, FormatError> {
        match tag {
            1 => Ok(Kind::PublicKey),
            2 => Ok(Kind::PrivateKey),
            3 => Ok(Kind::Ciphertext),
            _ => Err(FormatError::UnknownKind(tag.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::PublicKey => "public_key",
            Kind::PrivateKey => "private_key",
            Kind::Ciphertext => "ciphertext",
        }
    }

    fn from_name(name: &str) -> Result<Self, FormatError> {
        [Kind::PublicKey, Kind::PrivateKey, Kind::Ciphertext]
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| FormatError::UnknownKind(name.to_string()))
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An encrypted message: one ciphertext per plaintext block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiphertextFile {
    pub params: GptParams,
    pub message_len: u64,
    pub blocks: Vec<Ciphertext>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Artifact {
    Public(GptPublicKey),
    Private(GptPrivateKey),
    Ciphertext(CiphertextFile),
}

impl Artifact {
    pub fn kind(&self) -> Kind {
        match self {
            Artifact::Public(_) => Kind::PublicKey,
            Artifact::Private(_) => Kind::PrivateKey,
            Artifact::Ciphertext(_) => Kind::Ciphertext,
        }
    }

    pub fn params(&self) -> &GptParams {
        match self {
            Artifact::Public(pk) => &pk.params,
            Artifact::Private(sk) => &sk.params,
            Artifact::Ciphertext(c) => &c.params,
        }
    }

    pub fn into_public(self) -> Result<GptPublicKey, FormatError> {
        match self {
            Artifact::Public(pk) => Ok(pk),
            other => Err(wrong_kind(Kind::PublicKey, other.kind())),
        }
    }

    pub fn into_private(self) -> Result<GptPrivateKey, FormatError> {
        match self {
            Artifact::Private(sk) => Ok(sk),
            other => Err(wrong_kind(Kind::PrivateKey, other.kind())),
        }
    }

    pub fn into_ciphertext(self) -> Result<CiphertextFile, FormatError> {
        match self {
            Artifact::Ciphertext(c) => Ok(c),
            other => Err(wrong_kind(Kind::Ciphertext, other.kind())),
        }
    }
}

fn wrong_kind(expected: Kind, found: Kind) -> FormatError {
    FormatError::WrongKind { expected, found }
}

pub fn encode(artifact: &Artifact, format: Format) -> Vec<u8> {
    match format {
        Format::Bin => to_binary(artifact),
        Format::Hex => {
            let mut text = hex::encode(to_binary(artifact));
            text.push('\n');
            text.into_bytes()
        }
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&to_json(artifact)).expect("valid JSON");
            text.push('\n');
            text.into_bytes()
        }
    }
}

/// Loads any of the three encodings, detected from the content.
pub fn decode(bytes: &[u8]) -> Result<Artifact, FormatError> {
    if bytes.starts_with(MAGIC) {
        return from_binary(bytes);
    }
    let text = std::str::from_utf8(bytes).map_err(|_| FormatError::BadMagic)?;
    let text = text.trim();
    if text.starts_with('{') {
        from_json(text)
    } else {
        let compact: String = text.chars().filter(|c| !c.is_ascii_whitespace()).collect();
        from_binary(&hex::decode(compact)?)
    }
}

pub fn detect_format(bytes: &[u8]) -> Format {
    if bytes.starts_with(MAGIC) {
        Format::Bin
    } else if bytes.trim_ascii_start().starts_with(b"{") {
        Format::Json
    } else {
        Format::Hex
    }
}

// Binary encoding.

#[derive(Default)]
struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    fn u32(&mut self, v: usize) {
        let v = u32::try_from(v).expect("header field fits in u32");
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    fn elem(&mut self, ctx: &FieldCtx, e: ExtElem) {
        let width = ctx.elem_bytes();
        self.buf
            .extend_from_slice(&e.value().to_be_bytes()[8 - width..]);
    }

    fn elems(&mut self, ctx: &FieldCtx, es: &[ExtElem]) {
        for &e in es {
            self.elem(ctx, e);
        }
    }
}

fn to_binary(artifact: &Artifact) -> Vec<u8> {
    let mut w = Writer::default();
    w.buf.extend_from_slice(MAGIC);
    w.u8(artifact.kind().tag());
    let params = artifact.params();
    write_header(&mut w, params);
    let ctx = &params.ctx;
    match artifact {
        Artifact::Public(pk) => w.elems(ctx, pk.g_pub.entries()),
        Artifact::Private(sk) => {
            w.elems(ctx, sk.code.support().as_slice());
            w.elems(ctx, sk.s.entries());
            w.elems(ctx, sk.p_inv.entries());
        }
        Artifact::Ciphertext(c) => {
            w.u64(c.message_len);
            w.u32(c.blocks.len());
            for block in &c.blocks {
                w.elems(ctx, block.0.as_slice());
            }
        }
    }
    let digest = Sha256::digest(&w.buf);
    w.buf.extend_from_slice(&digest);
    w.buf
}

fn write_header(w: &mut Writer, p: &GptParams) {
    w.u32(p.ctx.q() as usize);
    w.u32(p.ctx.degree());
    for &c in p.ctx.modulus() {
        w.u32(c as usize);
    }
    w.u32(p.n);
    w.u32(p.k);
    w.u8(p.variant.tag());
    w.u32(p.t1);
    w.u32(p.t2);
    w.u32(p.p);
    w.u32(p.m_cols);
    w.u8(p.mode.tag());
    w.u32(p.s_ext);
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], FormatError> {
        let end = self.pos.checked_add(n).ok_or(FormatError::Truncated)?;
        let out = self.data.get(self.pos..end).ok_or(FormatError::Truncated)?;
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, FormatError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<usize, FormatError> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes(b.try_into().expect("4 bytes")) as usize)
    }

    fn u64(&mut self) -> Result<u64, FormatError> {
        let b = self.take(8)?;
        Ok(u64::from_be_bytes(b.try_into().expect("8 bytes")))
    }

    fn elems(&mut self, ctx: &FieldCtx, count: usize) -> Result<Vec<ExtElem>, FormatError> {
        let width = ctx.elem_bytes();
        let bytes = self.take(count.checked_mul(width).ok_or(FormatError::Truncated)?)?;
        bytes
            .chunks_exact(width)
            .map(|chunk| {
                let value = chunk.iter().fold(0u64, |acc, &b| (acc << 8) | u64::from(b));
                ctx.elem(value)
                    .map_err(|e| FormatError::Body(e.to_string()))
            })
            .collect()
    }

    fn matrix(
        &mut self,
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
    ) -> Result<ExtMatrix, FormatError> {
        let entries = self.elems(ctx, rows * cols)?;
        Ok(ExtMatrix::from_fn(rows, cols, |i, j| entries[i * cols + j]))
    }
}

fn from_binary(bytes: &[u8]) -> Result<Artifact, FormatError> {
    if !bytes.starts_with(MAGIC) {
        return Err(FormatError::BadMagic);
    }
    if bytes.len() < MAGIC.len() + 1 + CHECKSUM_LEN {
        return Err(FormatError::Truncated);
    }
    let (content, checksum) = bytes.split_at(bytes.len() - CHECKSUM_LEN);
    if Sha256::digest(content).as_slice() != checksum {
        return Err(FormatError::Checksum);
    }
    let mut r = Reader {
        data: content,
        pos: MAGIC.len(),
    };
    let kind = Kind::from_tag(r.u8()?)?;
    let params = read_header(&mut r)?;
    let ctx = params.ctx.clone();
    let artifact = match kind {
        Kind::PublicKey => {
            let g_pub = r.matrix(&ctx, params.pub_rows(), params.pub_cols())?;
            Artifact::Public(GptPublicKey { params, g_pub })
        }
        Kind::PrivateKey => {
            let support = ExtVector(r.elems(&ctx, params.n)?);
            let s = r.matrix(&ctx, params.pub_rows(), params.k)?;
            let p_inv = r.matrix(&ctx, params.pub_cols(), params.pub_cols())?;
            private_from_parts(params, support, s, p_inv)?
        }
        Kind::Ciphertext => {
            let message_len = r.u64()?;
            let count = r.u32()?;
            let cols = params.pub_cols();
            let blocks = (0..count)
                .map(|_| Ok(Ciphertext(ExtVector(r.elems(&ctx, cols)?))))
                .collect::<Result<_, FormatError>>()?;
            Artifact::Ciphertext(CiphertextFile {
                params,
                message_len,
                blocks,
            })
        }
    };
    match content.len() - r.pos {
        0 => Ok(artifact),
        extra => Err(FormatError::Trailing(extra)),
    }
}

fn read_header(r: &mut Reader) -> Result<GptParams, FormatError> {
    let q = u32::try_from(r.u32()?).expect("read from u32");
    let degree = r.u32()?;
    if degree > 64 {
        return Err(FormatError::Header(format!(
            "extension degree {degree} is out of range"
        )));
    }
    let modulus = (0..=degree)
        .map(|_| r.u32().map(|c| c as u32))
        .collect::<Result<Vec<_>, _>>()?;
    let n = r.u32()?;
    let k = r.u32()?;
    let variant = r.u8()?;
    let t1 = r.u32()?;
    let t2 = r.u32()?;
    let p = r.u32()?;
    let m_cols = r.u32()?;
    let mode = r.u8()?;
    let s_ext = r.u32()?;
    let variant = Variant::from_tag(variant)
        .ok_or_else(|| FormatError::Header(format!("unknown variant tag {variant}")))?;
    let mode = ScramblerMode::from_tag(mode)
        .ok_or_else(|| FormatError::Header(format!("unknown scrambler mode tag {mode}")))?;
    build_params(
        q, degree, &modulus, n, k, variant, t1, t2, p, m_cols, mode, s_ext,
    )
}

#[allow(clippy::too_many_arguments)]
fn build_params(
    q: u32,
    degree: usize,
    modulus: &[u32],
    n: usize,
    k: usize,
    variant: Variant,
    t1: usize,
    t2: usize,
    p: usize,
    m_cols: usize,
    mode: ScramblerMode,
    s_ext: usize,
) -> Result<GptParams, FormatError> {
    let ctx = FieldCtx::new(q, degree, modulus).map_err(|e| FormatError::Header(e.to_string()))?;
    let mut params = GptParams::new(ctx, n, k, variant, t1, t2, p, m_cols, mode);
    params.s_ext = s_ext;
    params
        .validate()
        .map_err(|e| FormatError::Header(e.to_string()))?;
    Ok(params)
}

fn private_from_parts(
    params: GptParams,
    support: ExtVector,
    s: ExtMatrix,
    p_inv: ExtMatrix,
) -> Result<Artifact, FormatError> {
    GptPrivateKey::from_parts(params, support, s, p_inv)
        .map(Artifact::Private)
        .map_err(|e| FormatError::Body(e.to_string()))
}

// JSON encoding.

fn to_json(artifact: &Artifact) -> Value {
    let params = artifact.params();
    let ctx = &params.ctx;
    let body = match artifact {
        Artifact::Public(pk) => json!({ "g_pub": matrix_json(ctx, &pk.g_pub) }),
        Artifact::Private(sk) => json!({
            "support": elems_json(ctx, sk.code.support().as_slice()),
            "s": matrix_json(ctx, &sk.s),
            "p_inv": matrix_json(ctx, &sk.p_inv),
        }),
        Artifact::Ciphertext(c) => json!({
            "message_len": c.message_len,
            "blocks": c.blocks.iter().map(|b| elems_json(ctx, b.0.as_slice())).collect::<Vec<_>>(),
        }),
    };
    let checksum = &to_binary(artifact)[..];
    json!({
        "magic": std::str::from_utf8(MAGIC).expect("ASCII magic"),
        "kind": artifact.kind().name(),
        "header": {
            "q": ctx.q(),
            "N": ctx.degree(),
            "modulus": ctx.modulus(),
            "n": params.n,
            "k": params.k,
            "variant": params.variant.name(),
            "t1": params.t1,
            "t2": params.t2,
            "p": params.p,
            "m_cols": params.m_cols,
            "scrambler_mode": params.mode.name(),
            "s_ext": params.s_ext,
        },
        "body": body,
        "checksum": hex::encode(&checksum[checksum.len() - CHECKSUM_LEN..]),
    })
}

fn elems_json(ctx: &FieldCtx, es: &[ExtElem]) -> Value {
    Value::from(es.iter().map(|&e| ctx.to_hex(e)).collect::<Vec<_>>())
}

fn matrix_json(ctx: &FieldCtx, m: &ExtMatrix) -> Value {
    Value::from(
        (0..m.rows())
            .map(|i| elems_json(ctx, m.row(i)))
            .collect::<Vec<_>>(),
    )
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, FormatError> {
    v.get(key)
        .ok_or_else(|| FormatError::Json(format!("missing field `{key}`")))
}

fn get_uint(v: &Value, key: &str) -> Result<u64, FormatError> {
    get(v, key)?
        .as_u64()
        .ok_or_else(|| FormatError::Json(format!("`{key}` must be a non-negative integer")))
}

fn get_usize(v: &Value, key: &str) -> Result<usize, FormatError> {
    usize::try_from(get_uint(v, key)?)
        .map_err(|_| FormatError::Json(format!("`{key}` is out of range")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str, FormatError> {
    get(v, key)?
        .as_str()
        .ok_or_else(|| FormatError::Json(format!("`{key}` must be a string")))
}

fn get_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array()
        .ok_or_else(|| FormatError::Json(format!("`{what}` must be an array")))
}

fn elems_from_json(
    ctx: &FieldCtx,
    v: &Value,
    len: usize,
    what: &str,
) -> Result<Vec<ExtElem>, FormatError> {
    let items = get_array(v, what)?;
    if items.len() != len {
        return Err(FormatError::Body(format!(
            "`{what}` has {} entries, expected {len}",
            items.len()
        )));
    }
    items
        .iter()
        .map(|item| {
            let s = item.as_str().ok_or_else(|| {
                FormatError::Json(format!("`{what}` entries must be hex strings"))
            })?;
            ctx.from_hex(s)
                .map_err(|e| FormatError::Body(e.to_string()))
        })
        .collect()
}

fn matrix_from_json(
    ctx: &FieldCtx,
    v: &Value,
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<ExtMatrix, FormatError> {
    let items = get_array(v, what)?;
    if items.len() != rows {
        return Err(FormatError::Body(format!(
            "`{what}` has {} rows, expected {rows}",
            items.len()
        )));
    }
    let rows = items
        .iter()
        .map(|row| elems_from_json(ctx, row, cols, what))
        .collect::<Result<Vec<_>, _>>()?;
    ExtMatrix::from_rows(rows).map_err(|e| FormatError::Body(e.to_string()))
}

fn from_json(text: &str) -> Result<Artifact, FormatError> {
    let root: Value = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    if get_str(&root, "magic")?.as_bytes() != MAGIC {
        return Err(FormatError::BadMagic);
    }
    let kind = Kind::from_name(get_str(&root, "kind")?)?;
    let h = get(&root, "header")?;
    let q = u32::try_from(get_uint(h, "q")?)
        .map_err(|_| FormatError::Header("q is out of range".into()))?;
    let degree = get_usize(h, "N")?;
    let modulus = get_array(get(h, "modulus")?, "modulus")?
        .iter()
        .map(|c| {
            c.as_u64()
                .and_then(|c| u32::try_from(c).ok())
                .ok_or_else(|| FormatError::Header("modulus coefficients must be integers".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let variant: Variant = get_str(h, "variant")?
        .parse()
        .map_err(FormatError::Header)?;
    let mode: ScramblerMode = get_str(h, "scrambler_mode")?
        .parse()
        .map_err(FormatError::Header)?;
    let params = build_params(
        q,
        degree,
        &modulus,
        get_usize(h, "n")?,
        get_usize(h, "k")?,
        variant,
        get_usize(h, "t1")?,
        get_usize(h, "t2")?,
        get_usize(h, "p")?,
        get_usize(h, "m_cols")?,
        mode,
        get_usize(h, "s_ext")?,
    )?;
    let ctx = params.ctx.clone();
    let body = get(&root, "body")?;
    let artifact = match kind {
        Kind::PublicKey => {
            let g_pub = matrix_from_json(
                &ctx,
                get(body, "g_pub")?,
                params.pub_rows(),
                params.pub_cols(),
                "g_pub",
            )?;
            Artifact::Public(GptPublicKey { params, g_pub })
        }
        Kind::PrivateKey => {
            let support = ExtVector(elems_from_json(
                &ctx,
                get(body, "support")?,
                params.n,
                "support",
            )?);
            let s = matrix_from_json(&ctx, get(body, "s")?, params.pub_rows(), params.k, "s")?;
            let cols = params.pub_cols();
            let p_inv = matrix_from_json(&ctx, get(body, "p_inv")?, cols, cols, "p_inv")?;
            private_from_parts(params, support, s, p_inv)?
        }
        Kind::Ciphertext => {
            let message_len = get_uint(body, "message_len")?;
            let cols = params.pub_cols();
            let blocks = get_array(get(body, "blocks")?, "blocks")?
                .iter()
                .map(|b| {
                    Ok(Ciphertext(ExtVector(elems_from_json(
                        &ctx, b, cols, "blocks",
                    )?)))
                })
                .collect::<Result<_, FormatError>>()?;
            Artifact::Ciphertext(CiphertextFile {
                params,
                message_len,
                blocks,
            })
        }
    };
    let expected = to_binary(&artifact);
    let checksum = hex::decode(get_str(&root, "checksum")?)?;
    if checksum != expected[expected.len() - CHECKSUM_LEN..] {
        return Err(FormatError::Checksum);
    }
    Ok(artifact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;
    use rankgpt::gpt::{encrypt, keygen};

    fn artifacts() -> Vec<Artifact> {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let mut out = Vec::new();
        for variant in Variant::ALL {
            let params = GptParams::desk12(variant, ScramblerMode::ExtensionField);
            let (pk, sk) = keygen(&params, &mut rng).unwrap();
            let m = ExtVector::random(&params.ctx, params.pub_rows(), &mut rng);
            let c = encrypt(&pk, &m, &mut rng).unwrap();
            out.push(Artifact::Ciphertext(CiphertextFile {
                params,
                message_len: 5,
                blocks: vec![c],
            }));
            out.push(Artifact::Public(pk));
            out.push(Artifact::Private(sk));
        }
        out
    }

    #[test]
    fn every_format_round_trips() {
        for a in artifacts() {
            for format in [Format::Bin, Format::Hex, Format::Json] {
                let bytes = encode(&a, format);
                assert_eq!(detect_format(&bytes), format);
                assert_eq!(decode(&bytes).unwrap(), a, "{format:?} {}", a.kind());
            }
        }
    }

    #[test]
    fn hex_is_the_binary_in_hex() {
        let a = &artifacts()[1];
        let hex_text = String::from_utf8(encode(a, Format::Hex)).unwrap();
        assert_eq!(
            hex::decode(hex_text.trim()).unwrap(),
            encode(a, Format::Bin)
        );
    }

    #[test]
    fn every_flipped_byte_is_rejected() {
        let a = &artifacts()[1];
        let bytes = encode(a, Format::Bin);
        for i in 0..bytes.len() {
            let mut bad = bytes.clone();
            bad[i] ^= 0x01;
            assert!(decode(&bad).is_err(), "byte {i}");
        }
    }

    #[test]
    fn truncation_and_trailing_data_are_rejected() {
        let a = &artifacts()[0];
        let bytes = encode(a, Format::Bin);
        assert!(decode(&bytes[..bytes.len() - 1]).is_err());
        assert!(matches!(
            decode(&bytes[..20]),
            Err(FormatError::Checksum | FormatError::Truncated)
        ));
        let mut longer = bytes[..bytes.len() - CHECKSUM_LEN].to_vec();
        longer.push(0);
        let digest = Sha256::digest(&longer);
        longer.extend_from_slice(&digest);
        assert!(matches!(decode(&longer), Err(FormatError::Trailing(1))));
    }

    #[test]
    fn json_edits_fail_the_checksum() {
        let a = &artifacts()[1];
        let mut v: Value = serde_json::from_slice(&encode(a, Format::Json)).unwrap();
        let cell = &mut v["body"]["g_pub"][0][0];
        let flipped = if cell.as_str() == Some("0001") {
            "0002"
        } else {
            "0001"
        };
        *cell = Value::from(flipped);
        let text = serde_json::to_string(&v).unwrap();
        assert!(matches!(
            decode(text.as_bytes()),
            Err(FormatError::Checksum)
        ));
    }

    #[test]
    fn header_is_bit_exact() {
        let params = GptParams::standard28();
        let mut w = Writer::default();
        write_header(&mut w, &params);
        let mut r = Reader {
            data: &w.buf,
            pos: 0,
        };
        assert_eq!(read_header(&mut r).unwrap(), params);
        assert_eq!(r.pos, w.buf.len());
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let a = artifacts().remove(1);
        assert!(matches!(
            a.into_private(),
            Err(FormatError::WrongKind {
                expected: Kind::PrivateKey,
                found: Kind::PublicKey
            })
        ));
    }
}
