//! Routing, wavelength assignment and load bounds for the 4-regular circulant
//! networks `C_n(1, s)`, `1 < s < n/2`.
//!
//! The crate builds one concrete all-to-all routing and one conflict-free
//! colouring of it, computes their exact loads and colour counts, evaluates the
//! closed-form bounds on the forwarding and optical indices, and checks every
//! formula against a brute-force computation on the graph itself.
//!
//! ```
//! use circroute::{CirculantGraph, Routing, routing};
//!
//! let g = CirculantGraph::new(25, 5).unwrap();
//! let loads = routing::load_profile(&Routing::build(&g)).unwrap();
//! assert_eq!(loads.max_arc_load, 15);
//! assert_eq!(routing::max_arc_load_formula(&g).unwrap(), 15);
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod report;
pub mod routing;
pub mod verify;
pub mod wavelength;

/// Exact rational used for every closed form.
pub type Rational = num_rational::Ratio<i128>;

pub use error::{Error, Result};
pub use graph::{Arc, ArcClass, CirculantGraph, Node};
pub use routing::{LoadProfile, OrientedPath, PathClass, Routing};
pub use wavelength::{Colour, Variant};
