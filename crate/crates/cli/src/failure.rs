use std::fmt;

/// A failed run, classified by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Verification or numerical failure.
    Check(String),
    /// Bad arguments.
    Usage(String),
    /// Unreadable or invalid input files, unwritable outputs.
    Input(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Check(m) | Failure::Usage(m) | Failure::Input(m) => f.write_str(m),
        }
    }
}

impl From<bivrel::Error> for Failure {
    fn from(e: bivrel::Error) -> Self {
        use bivrel::Error::*;
        match e {
            Domain(_)
            | DegenerateLevel { .. }
            | Boundary { .. }
            | DegenerateConditioning { .. } => Failure::Usage(e.to_string()),
            InvalidParameter(_) | InvalidConfig(_) | InfiniteMean(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

pub type Outcome<T> = Result<T, Failure>;
