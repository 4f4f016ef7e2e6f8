//! Batch front-end: workspace files, commands, reports, the acceptance
//! suite and graph output.

mod commands;
mod report;
mod suite;
mod workspace;

pub use commands::{main_with_args, run_cli, run_command, Cli, Command, SideArg, SidesArg};
pub use report::{category_dot, diagram_dot, to_value, Format, Report};
pub use suite::{run_suite, Check, Criterion, SuiteReport};
pub use workspace::{
    category_doc, Binding, CategoryDoc, DiagramDoc, Document, FunctorDoc, MapDoc, MapEntry,
    MorphismDoc, SquareDoc, TransformationDoc, Workspace,
};
