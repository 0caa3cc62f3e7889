//! Two-level logic synthesis for programmable logic arrays.
//!
//! The flow runs from Boolean equations (or a KISS2 state table) through
//! truth tables and sum-of-products covers to a programmed AND/OR-plane
//! device image:
//!
//! ```text
//! expr ─► logic (table, canonical SOP) ─► minimize ─► share_terms ─► fit ─► fuse map
//! ```
//!
//! Every stage can be checked against the previous one by exhaustive
//! simulation (see [`logic::equivalent`] and [`fit::verify_device`]).

pub mod device;
pub mod expr;
pub mod fit;
pub mod fsm;
pub mod logic;
pub mod minimize;

pub use device::{Fault, PlaProfile, PlaState, Plane, StuckAt, SwitchTech};
pub use expr::{parse_expression, Expr, IdentMode, VarOrder};
pub use fit::{compile, fit, CapacityAxis, CompileOptions, FitError, FitReport};
pub use fsm::{parse_kiss2, simulate_controller, synthesize_controller, Fsm, SynthOptions};
pub use logic::{canonical_pos, canonical_sop, equivalent, Cover, Cube, Literal, TruthTable};
pub use minimize::{minimize, share_terms, MinimizeSpec, MultiOutputCover};
