use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),
    #[error("radius {r} exceeds the inradius {inradius}")]
    NoInscribedDisk { r: f64, inradius: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("inner parallel set at radius {0} is disconnected")]
    NeckObstruction(f64),
    #[error("kappa {kappa} is below the checkable bound {bound}")]
    CertificateUnavailable { kappa: f64, bound: f64 },
    #[error("inner set has zero area")]
    DegenerateInnerSet,
    #[error("reach of the inner set is not larger than {0}")]
    ReachTooSmall(f64),
    #[error("inner set has holes")]
    NotSimplyConnected,
    #[error("inner set has {0} components")]
    Disconnected(usize),
    #[error("bad fixture parameters: {0}")]
    BadFixtureParams(String),
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("resolution {resolution} is below the minimum {min}")]
    ResolutionTooLow { resolution: usize, min: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable variant name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidRegion(_) => "InvalidRegion",
            Error::NumericalDegeneracy(_) => "NumericalDegeneracy",
            Error::NoInscribedDisk { .. } => "NoInscribedDisk",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NeckObstruction(_) => "NeckObstruction",
            Error::CertificateUnavailable { .. } => "CertificateUnavailable",
            Error::DegenerateInnerSet => "DegenerateInnerSet",
            Error::ReachTooSmall(_) => "ReachTooSmall",
            Error::NotSimplyConnected => "NotSimplyConnected",
            Error::Disconnected(_) => "Disconnected",
            Error::BadFixtureParams(_) => "BadFixtureParams",
            Error::UnknownFixture(_) => "UnknownFixture",
            Error::ResolutionTooLow { .. } => "ResolutionTooLow",
            Error::BadParameter(_) => "BadParameter",
            Error::Json(_) => "Json",
            Error::Io(_) => "Io",
        }
    }
}
