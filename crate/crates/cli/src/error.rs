//! Errors of the command-line surface and their exit codes.

use std::fmt;

use bogomolov::cohomology::CohomologyError;
use bogomolov::groupkit::GroupError;
use bogomolov::pcgroup::PcError;
use bogomolov::wedge::WedgeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Usage,
    Inconclusive,
    Resource,
    Internal,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Usage => 2,
            ExitKind::Inconclusive => 3,
            ExitKind::Resource => 4,
            ExitKind::Internal => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Usage,
            message: message.into(),
        }
    }

    pub fn inconclusive(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Inconclusive,
            message: message.into(),
        }
    }

    pub fn resource(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Resource,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Internal,
            message: message.into(),
        }
    }

    pub fn code(&self) -> i32 {
        self.kind.code()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<PcError> for CliError {
    fn from(e: PcError) -> Self {
        CliError::usage(e.to_string())
    }
}

fn group_kind(e: &GroupError) -> ExitKind {
    match e {
        GroupError::CapExceeded { .. }
        | GroupError::ClassTooLarge { .. }
        | GroupError::NotNilpotent => ExitKind::Resource,
        GroupError::Hypothesis(_) => ExitKind::Inconclusive,
        GroupError::Pc(_)
        | GroupError::BadTable(_)
        | GroupError::NotAnElement
        | GroupError::NotNormal
        | GroupError::NotCentral(_)
        | GroupError::BadIsomorphism(_) => ExitKind::Usage,
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError {
            kind: group_kind(&e),
            message: e.to_string(),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        let kind = match e {
            CohomologyError::CapExceeded { .. } => ExitKind::Resource,
            CohomologyError::BadModulus { .. } => ExitKind::Usage,
            CohomologyError::NotSubgroup | CohomologyError::BadCochain { .. } => ExitKind::Internal,
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<WedgeError> for CliError {
    fn from(e: WedgeError) -> Self {
        let kind = match &e {
            WedgeError::Pc(_)
            | WedgeError::WitnessRejected { .. }
            | WedgeError::BadCertificate(_)
            | WedgeError::UnboundExponent(_) => ExitKind::Usage,
            WedgeError::Group(g) => group_kind(g),
            WedgeError::ClassTooLarge { .. }
            | WedgeError::NotNilpotent
            | WedgeError::DerivedNonabelian(_)
            | WedgeError::NotCentralSeries(_) => ExitKind::Resource,
            WedgeError::Lattice(_) | WedgeError::NonTermination(_) => ExitKind::Internal,
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}
