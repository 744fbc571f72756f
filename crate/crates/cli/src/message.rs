//! Byte messages as plaintext blocks.
//!
//! Each element carries `⌊N log₂ q / 8⌋` bytes as a big-endian integer; a
//! block holds one element per public-key row. The last block is
//! zero-padded and the true length is stored alongside the ciphertext.

use rankgpt::{ExtVector, FieldCtx, GptParams};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MessageError {
    #[error("message is empty")]
    Empty,
    #[error("F_{{{q}^{degree}}} is too small to carry a whole byte per element")]
    FieldTooSmall { q: u32, degree: usize },
    #[error("decrypted element {0:#x} does not encode a byte string")]
    Overflow(u64),
    #[error("stored message length {len} exceeds the {capacity} bytes carried by the blocks")]
    Length { len: u64, capacity: u64 },
}

/// Bytes per field element.
pub fn symbol_bytes(ctx: &FieldCtx) -> usize {
    (ctx.degree() as f64 * ctx.log2_q() / 8.0).floor() as usize
}

/// Bytes per plaintext block.
pub fn block_bytes(params: &GptParams) -> usize {
    params.pub_rows() * symbol_bytes(&params.ctx)
}

fn check_field(ctx: &FieldCtx) -> Result<usize, MessageError> {
    match symbol_bytes(ctx) {
        0 => Err(MessageError::FieldTooSmall {
            q: ctx.q(),
            degree: ctx.degree(),
        }),
        w => Ok(w),
    }
}

pub fn to_blocks(params: &GptParams, message: &[u8]) -> Result<Vec<ExtVector>, MessageError> {
    if message.is_empty() {
        return Err(MessageError::Empty);
    }
    let ctx = &params.ctx;
    let width = check_field(ctx)?;
    let rows = params.pub_rows();
    Ok(message
        .chunks(rows * width)
        .map(|chunk| {
            let mut padded = chunk.to_vec();
            padded.resize(rows * width, 0);
            ExtVector(
                padded
                    .chunks_exact(width)
                    .map(|sym| {
                        let value = sym.iter().fold(0u64, |acc, &b| (acc << 8) | u64::from(b));
                        ctx.elem(value).expect("fewer bits than the field")
                    })
                    .collect(),
            )
        })
        .collect())
}

pub fn from_blocks(
    params: &GptParams,
    blocks: &[ExtVector],
    len: u64,
) -> Result<Vec<u8>, MessageError> {
    let width = check_field(&params.ctx)?;
    let mut out = Vec::with_capacity(blocks.len() * block_bytes(params));
    for e in blocks.iter().flat_map(|b| b.iter()) {
        let value = e.value();
        if width < 8 && value >> (8 * width) != 0 {
            return Err(MessageError::Overflow(value));
        }
        out.extend_from_slice(&value.to_be_bytes()[8 - width..]);
    }
    let capacity = out.len() as u64;
    if len > capacity {
        return Err(MessageError::Length { len, capacity });
    }
    out.truncate(len as usize);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rankgpt::{ScramblerMode, Variant};

    #[test]
    fn round_trip_with_padding() {
        for variant in Variant::ALL {
            let params = GptParams::desk12(variant, ScramblerMode::ExtensionField);
            for len in [1usize, 5, 6, 7, 100] {
                let msg: Vec<u8> = (0..len).map(|i| (i * 37 + 11) as u8).collect();
                let blocks = to_blocks(&params, &msg).unwrap();
                assert_eq!(blocks.len(), len.div_ceil(block_bytes(&params)));
                assert_eq!(from_blocks(&params, &blocks, len as u64).unwrap(), msg);
            }
        }
    }

    #[test]
    fn preset28_packs_three_bytes_per_element() {
        let params = GptParams::standard28();
        assert_eq!(symbol_bytes(&params.ctx), 3);
        assert_eq!(block_bytes(&params), 42);
    }

    #[test]
    fn rejects_empty_and_oversized() {
        let params = GptParams::desk12(Variant::Simple, ScramblerMode::ExtensionField);
        assert_eq!(to_blocks(&params, &[]), Err(MessageError::Empty));
        let mut blocks = to_blocks(&params, b"abc").unwrap();
        assert!(matches!(
            from_blocks(&params, &blocks, 7),
            Err(MessageError::Length {
                len: 7,
                capacity: 6
            })
        ));
        blocks[0].0[0] = params.ctx.elem(0x100).unwrap();
        assert_eq!(
            from_blocks(&params, &blocks, 3),
            Err(MessageError::Overflow(0x100))
        );
    }

    #[test]
    fn tiny_fields_are_refused() {
        let ctx = FieldCtx::binary(6).unwrap();
        let params = GptParams::new(
            ctx,
            6,
            2,
            Variant::Simple,
            1,
            0,
            0,
            0,
            ScramblerMode::BaseField,
        );
        assert!(matches!(
            to_blocks(&params, b"x"),
            Err(MessageError::FieldTooSmall { .. })
        ));
    }
}
