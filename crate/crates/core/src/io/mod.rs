//! Model files, the pipeline driver and report rendering.

mod model;
mod pipeline;
mod report;

pub use model::{parse_model, render_model, ParsedModel};
pub use pipeline::{
    run_pipeline, validate_model, verification_report, PipelineOptions, ReportCheck, ReportEntry, Target, TensorReport, Value,
};
pub use report::{render, Format, JSON_SCHEMA};
