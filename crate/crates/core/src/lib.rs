//! Exact modularity and edge-expansion toolkit for desk-scale graphs.
//!
//! Weighted multigraphs with loops, three edge-expansion constants with
//! witness sets, exact modularity maximization with enumeration of every
//! optimal partition, component split verdicts, expander-style partition
//! builders with checked guarantees, and deterministic generators for a
//! family of benchmark graphs.
//!
//! Everything is computed in exact rational arithmetic by default
//! ([`Ratio`]); only the normalized-Laplacian eigensolver works in floating
//! point. The numeric carrier is generic (see [`Scalar`]), so the same code
//! runs on `f64` when exactness is not needed.
//!
//! ```
//! use modex::{families, expansion, modularity, rat};
//!
//! let w = families::windmill::<modex::Ratio>(2).unwrap();
//! let h = expansion::conductance(&w).unwrap();
//! assert_eq!(h.value.expect_finite(), rat(1, 2));
//! assert!(modularity::maximize(&w).unwrap().q_star > rat(0, 1));
//! ```

pub mod bounds;
pub mod decompose;
pub mod error;
pub mod expansion;
pub mod families;
pub mod graph;
pub mod modularity;
pub mod rng;
pub mod scalar;
pub mod set;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Edge, Graph};
pub use scalar::Scalar;
pub use set::{Partition, VertexSet};

/// Exact rational scalar: the crate's default numeric carrier.
pub type Ratio = num_rational::BigRational;

/// Floating-point alias for the approximate instantiation.
pub type Float = f64;

/// Exact rational `num/den` (`den > 0`).
pub fn rat(num: i64, den: i64) -> Ratio {
    <Ratio as Scalar>::ratio(num, den)
}

/// Exact integer as a rational.
pub fn rint(v: i64) -> Ratio {
    <Ratio as Scalar>::from_int(v)
}

/// Enumeration caps. Exhaustive scans refuse inputs beyond these sizes
/// instead of silently falling back to heuristics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Bipartition/subset scans (expansion constants, zero-modularity
    /// inequalities): at most `2^(subset_max - 1)` candidate sets.
    pub subset_max: usize,
    /// Per-component partition enumeration for modularity maximization.
    pub partition_max: usize,
    /// Exhaustive sparse-cut certification inside the decomposition
    /// algorithms; larger scopes switch to structured candidate cuts.
    pub search_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            subset_max: 26,
            partition_max: 14,
            search_max: 20,
        }
    }
}

impl Limits {
    /// Sets every cap to `n` (the CLI's `--max-n`).
    pub fn with_max_n(n: usize) -> Self {
        Self {
            subset_max: n,
            partition_max: n,
            search_max: n,
        }
    }
}
