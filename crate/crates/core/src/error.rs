use thiserror::Error;

/// Which requirement a candidate triple failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleCheck {
    /// `0 < a + 1 < b < c` does not hold.
    Ordering,
    /// `P_a + P_c != 2 P_b`.
    PyramidalIdentity,
}

impl std::fmt::Display for TripleCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TripleCheck::Ordering => f.write_str("ordering 0 < a+1 < b < c"),
            TripleCheck::PyramidalIdentity => f.write_str("pyramidal identity P_a + P_c = 2 P_b"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be non-negative, got {value}")]
    Negative { what: &'static str, value: String },

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: String },

    #[error("({a}, {b}, {c}) is not a solution: fails {check}")]
    NotASolution {
        a: String,
        b: String,
        c: String,
        check: TripleCheck,
    },

    #[error("split {ell} out of range for length {n} (need 0 < ell < n)")]
    SplitOutOfRange { n: String, ell: String },

    #[error("{0} is a perfect square; √D has no periodic expansion")]
    PerfectSquare(String),

    #[error("gap pair has ell = m = {0}")]
    EqualGaps(String),

    #[error("a polygon needs at least 3 sides, got {0}")]
    TooFewSides(u64),

    #[error("turn sequence has {got} bits, expected {expected}")]
    TurnCount { expected: usize, got: usize },

    #[error("point at distance {distance} is not outside circle of radius {radius}")]
    InsideCircle { distance: f64, radius: f64 },

    #[error("value {0} too large for floating-point geometry")]
    TooLarge(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
