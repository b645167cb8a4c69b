//! Power domination with fragile sensors.
//!
//! A sensor placed on a vertex observes its closed neighborhood; afterwards,
//! any observed vertex with exactly one unobserved neighbor forces that
//! neighbor to become observed, and the process runs to fixpoint. This crate
//! computes that process exactly, together with the polynomial giving the
//! expected number of observed vertices when every sensor fails
//! independently with probability `q`:
//!
//! - [`propagation`]: the observation process, forts and their entrances,
//!   and exhaustive power domination numbers.
//! - [`expected`]: exact expected-value polynomials for set and multiset
//!   placements, subset observation sums, shape checks (linearity, bounded
//!   degree, quadratic), sign audits, placement comparison, and Monte Carlo
//!   estimation.
//! - [`alpha`]: the combination coefficients behind the bounded-degree
//!   check.
//! - [`gadgets`]: fork and spoon gadgets, their closed-form path-head
//!   probabilities, and the builder that steers expected-polynomial
//!   coefficients to requested integers.
//! - [`families`]: demonstration graphs, quadratic witnesses, and the
//!   layered grid family with its audit.
//! - [`graph`] and [`poly`]: the underlying graph and exact polynomial
//!   types.

#![forbid(unsafe_code)]

pub mod alpha;
pub mod error;
pub mod expected;
pub mod families;
pub mod gadgets;
pub mod graph;
pub mod poly;
pub mod propagation;

pub use error::{Error, Result};
pub use expected::{
    coefficient_sign_audit, compare_placements, copolynomial_check, degree_condition_check,
    expected_polynomial_multiset, expected_polynomial_set, linearity_check, monte_carlo_estimate,
    per_vertex_probabilities, quadratic_identity_check, subset_basis_to_power,
    subset_observation_sums, ComparisonVerdict, ExPoly, Placement,
};
pub use graph::{Graph, StandardKind, VertexSet};
pub use poly::IntPoly;
pub use propagation::{
    fort_entrance, is_fort, is_power_dominating, minimal_forts, observe, power_domination_number,
    ObservationResult,
};

/// Runs the code blocks of the guide in `book/` as doctests, so the book
/// cannot drift from the library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            #[allow(dead_code)]
            struct $name;
        };
    }

    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(Propagation, "../../../book/src/propagation.md");
    chapter!(ExpectedValue, "../../../book/src/expected-value.md");
    chapter!(Gadgets, "../../../book/src/gadgets.md");
    chapter!(Families, "../../../book/src/families.md");
    chapter!(Cli, "../../../book/src/cli.md");
}
