use thiserror::Error;

/// Errors raised by constructors and transforms.
///
/// Verification failures are not errors: verifiers return a
/// [`VerificationReport`](crate::report::VerificationReport) instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid is not square: row {row} has {len} cells, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("empty grid")]
    EmptyGrid,

    #[error("symbol {symbol} at ({row}, {col}) is outside [0, {order})")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        order: usize,
    },

    #[error("symbol {symbol} repeats in row {row}")]
    RepeatInRow { row: usize, symbol: usize },

    #[error("symbol {symbol} repeats in column {col}")]
    RepeatInColumn { col: usize, symbol: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("{0} is not a prime power")]
    NotPrimePower(usize),

    #[error("order {0} is too small: no pair of orthogonal Latin squares exists")]
    OrderTooSmall(usize),

    #[error("no bundled irreducible polynomial for GF({0})")]
    UnsupportedOrder(usize),

    #[error("squares {first} and {second} are not orthogonal")]
    NotOrthogonal { first: usize, second: usize },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("row/column labels or dimensions differ between squares")]
    LabelMismatch,

    #[error("projection spec violation: {0}")]
    SpecViolation(String),

    #[error("malformed array: {0}")]
    MalformedArray(String),

    #[error("column {column}: projected classes have unequal sizes")]
    UnevenClasses { column: usize },

    #[error("symbol {symbol} occurs {count} times, expected {expected}")]
    CountMismatch {
        symbol: usize,
        count: usize,
        expected: usize,
    },

    #[error("{rows} rows cannot be split evenly over a {g1}x{g2} grid")]
    IndivisibleGrid { rows: usize, g1: usize, g2: usize },

    #[error("column {column} out of range for {columns} columns")]
    ColumnOutOfRange { column: usize, columns: usize },

    #[error("slice {slice} out of range for {slices} slices")]
    SliceOutOfRange { slice: usize, slices: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
