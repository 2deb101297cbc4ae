//! Native rule evaluation.

pub mod eval;
pub mod fixpoint;
pub mod functions;
pub mod value;

pub use eval::{apply_rule, eval_term, instantiate, Bindings, Derivation, RuleOutput};
pub use fixpoint::{fixpoint, Engine, EngineConfig, RunReport, Trace};
pub use functions::{equal, Algebra, FnImpl, FunctionRegistry};
pub use value::RtVal;
