//! Many-sorted statements over qualified knowledge-graph claims, a rule
//! language over them, and a forward-chaining engine.

pub mod causality;
pub mod engine;
pub mod error;
pub mod io;
pub mod iri;
pub mod model;
pub mod provenance;
pub mod rule_dsl;
pub mod rules_corpus;
pub mod sequence;
pub mod sort_builder;
pub mod validity;

pub use causality::{Causality, InverseCause, InverseCauseMap};
pub use engine::{fixpoint, Algebra, Engine, EngineConfig, RunReport};
pub use error::{AlgebraError, DecodeError, EvalError, IoError, ModelError};
pub use iri::{Iri, PrefixTable};
pub use model::{KnowledgeGraph, Literal, Origin, QualifierBag, Statement, StatementKind, Value};
pub use provenance::{Annotations, Provenance};
pub use rules_corpus::{load_builtin_rules, Selector};
pub use sequence::SequenceNode;
pub use validity::{Containment, Duration, Instant, SpaceRegion, TimeInterval, ValidityContext};
