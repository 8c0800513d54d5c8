use thiserror::Error;

use crate::tableau::Letter;

/// Everything that can go wrong while building or transforming tableaux,
/// crystal elements and box-ball states.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet bound must be at least 1, got {0}")]
    EmptyAlphabet(usize),
    #[error("letter {letter} is outside the alphabet 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("row lengths are not weakly decreasing at row {row}")]
    NotAPartition { row: usize },
    #[error("row {row} is not weakly increasing at column {col}")]
    RowNotWeak { row: usize, col: usize },
    #[error("column {col} is not strictly increasing at row {row}")]
    ColumnNotStrict { row: usize, col: usize },
    #[error("expected a rectangular tableau, got shape {0:?}")]
    NotRectangular(Vec<usize>),
    #[error("expected shape ({rows}x{cols}), got {shape:?}")]
    WrongShape { rows: usize, cols: usize, shape: Vec<usize> },
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(Letter, Letter),
    #[error("cell ({row}, {col}) is not an outer corner")]
    NotACorner { row: usize, col: usize },
    #[error("Kashiwara index {i} is not supported (valid: 1..={max})")]
    UnsupportedIndex { i: usize, max: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("combinatorial R failed: {0}")]
    RFailure(String),
    #[error("oracle found {count} candidates (expected exactly one)")]
    OracleAmbiguous { count: usize },
    #[error("carrier did not return to the vacuum rectangle within {0} padding sites")]
    CarrierUnstable(usize),
    #[error("negative soliton count N_{d} = {value}")]
    NegativeSpectrum { d: usize, value: i64 },
    #[error("not a soliton run at positions {start}..{end}: {reason}")]
    NotASoliton { start: i64, end: i64, reason: String },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
