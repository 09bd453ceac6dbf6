//! Command-line workbench around the solver: a line-oriented model
//! format, a text fixture format for game graphs, model generators,
//! and a benchmark harness comparing reduced and unreduced runs.

pub mod bench;
pub mod gen;
pub mod gltsfmt;
pub mod model;

pub use bench::{bench, render_csv, render_table, BenchNumbers, BenchRow};
pub use gen::{gen_chain, gen_choice_workflow, gen_nim, GenError};
pub use gltsfmt::{parse_glts, serialize_glts, GltsParseError, NamedGlts};
pub use model::{parse_model, serialize_model, ModelError, ModelFile};
