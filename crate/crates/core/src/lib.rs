//! Swap-neighborhood local search for k-median, k-means and uniform facility
//! location over graph metrics and Euclidean point sets.
//!
//! Besides the solvers ([`localsearch`]) and an exhaustive ground-truth solver
//! ([`oracle`]), the crate ships the structural machinery used to reason about
//! local optima: priority-tie-broken graph Voronoi partitions and their
//! contractions ([`voronoi`]), weak r-divisions of graphs and point sets
//! ([`rdivision`]), and checks comparing a local solution with a global one
//! ([`analysis`]).
//!
//! ```
//! use swapshop::instance::{generate_grid, WeightModel};
//! use swapshop::localsearch::{local_search, Mode, SearchConfig};
//!
//! let grid = generate_grid(4, 4, WeightModel::Unit).unwrap();
//! let config = SearchConfig::new(Mode::KClustering { k: 2 }, 2, 0.01);
//! let trace = local_search(&grid, &config).unwrap();
//! assert_eq!(trace.solution.len(), 2);
//! ```

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod instance;
pub mod localsearch;
pub mod metric;
pub mod oracle;
pub mod rdivision;
pub mod voronoi;

pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{Instance, InstanceKind, PointSet, Solution, Space};
pub use metric::{CostBreakdown, DistanceOracle};
