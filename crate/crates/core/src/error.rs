use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("light field dimensions must all be >= 1, got U={u} V={v} H={h} W={w} C={c}")]
    EmptyDims {
        u: usize,
        v: usize,
        h: usize,
        w: usize,
        c: usize,
    },

    #[error("non-finite sample at (u={u}, v={v}, h={h}, w={w}, c={c})")]
    NonFinite {
        u: usize,
        v: usize,
        h: usize,
        w: usize,
        c: usize,
    },

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimMismatch {
        context: &'static str,
        expected: String,
        got: String,
    },

    #[error("{context}: channel count {channels} is not divisible by {divisor}")]
    ChannelsNotDivisible {
        context: &'static str,
        channels: usize,
        divisor: usize,
    },

    #[error("index out of range: {what}={got}, valid range 0..{limit}")]
    IndexOutOfRange {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("shuffle factor must be >= 1")]
    ZeroShuffleFactor,
}
