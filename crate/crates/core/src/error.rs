use thiserror::Error;

/// Everything that can go wrong while building or checking a circulant instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameters outside `n >= 5`, `1 < s < n/2`. The message names the violated constraint.
    #[error("invalid parameters (n={n}, s={s}): {constraint} violated")]
    Domain {
        n: i64,
        s: i64,
        constraint: &'static str,
    },

    #[error("{what} out of range: {value} not in [{lo}, {hi}]")]
    Range {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("malformed path: {0}")]
    MalformedPath(String),

    /// Two paths sharing a link got the same colour.
    #[error(
        "colour conflict on {link}: paths {first:?} and {second:?} both coloured {colour}"
    )]
    ColourConflict {
        link: String,
        first: (usize, usize),
        second: (usize, usize),
        colour: String,
    },

    /// A computed quantity contradicts an identity that must hold.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
