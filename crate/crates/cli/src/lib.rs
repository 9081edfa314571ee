//! Scene-file front end: parse a JSON scene, dispatch one command, emit a
//! report (text, JSON) and optional CSV plot data.

pub mod commands;
pub mod expr;
pub mod report;
pub mod scene;

pub use commands::{run, Command, Outcome};
pub use report::{Report, Verdict};
pub use scene::{Options, SceneFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error(transparent)]
    Module(#[from] lconn::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// Every error is an input error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Reads either a scene or a previously emitted report (its echoed scene).
pub fn load_scene(text: &str) -> Result<SceneFile, CliError> {
    match SceneFile::from_json(text) {
        Ok(s) => Ok(s),
        Err(scene_err) => match Report::from_json(text) {
            Ok(r) => Ok(r.scene),
            Err(_) => Err(scene_err),
        },
    }
}
