//! M-polynomials of graphs and the bond-incident-degree indices derived from them.
//!
//! * [`bipoly`]: exact sparse polynomials in `x`, `y` and the operators
//!   `D_x, D_y, S_x, S_y, J, Q_alpha`.
//! * [`graph`]: simple graphs, edge-type counts `m_{i,j}`, edge-list I/O.
//! * [`generators`]: Bethe cacti `D_n`, `C_n`, `E_n` and the lattice `G(p, q)`.
//! * [`indices`]: nine degree-based indices, computed directly and via operators.
//! * [`gutman`]: exact linear bookkeeping over `n_i`, `m_{i,j}`, `n`, `m`, `f`.
//! * [`verify`]: the full cross-check suite behind `mpoly verify`.

pub mod bipoly;
pub mod generators;
pub mod graph;
pub mod gutman;
pub mod indices;
pub mod verify;

pub use bipoly::{MPoly, PolyError, Rational};
pub use generators::{Family, LatticeParams};
pub use graph::{Graph, GraphBuilder};
pub use indices::IndexDef;
