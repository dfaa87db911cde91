//! `--model` specifications: `singlet`, `pr`, `lambda:<angle>`, `file:<path>`.

use bellvol::{lambda_box_model, load_model_file, pr_box_model, singlet_model, CorrelationModel, Error};

#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpec {
    Singlet,
    Pr,
    /// Radians.
    Lambda(f64),
    File(String),
}

impl ModelSpec {
    /// Parses a spec; `degrees` applies to the lambda value.
    pub fn parse(s: &str, degrees: bool) -> Result<Self, String> {
        match s {
            "singlet" => return Ok(Self::Singlet),
            "pr" => return Ok(Self::Pr),
            _ => {}
        }
        if let Some(value) = s.strip_prefix("lambda:") {
            let x: f64 = value.trim().parse().map_err(|_| format!("bad lambda value '{value}'"))?;
            return Ok(Self::Lambda(if degrees { x.to_radians() } else { x }));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(Self::File(path.to_owned()));
        }
        Err(format!("unknown model '{s}' (expected singlet, pr, lambda:<angle> or file:<path>)"))
    }

    pub fn build(&self) -> Result<CorrelationModel, Error> {
        match self {
            Self::Singlet => Ok(singlet_model()),
            Self::Pr => Ok(pr_box_model()),
            Self::Lambda(l) => lambda_box_model(*l),
            Self::File(path) => load_model_file(path),
        }
    }
}
