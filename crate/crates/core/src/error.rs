use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("generator `{name}` has non-positive degree {degree}")]
    NonPositiveDegree { name: String, degree: i64 },
    #[error("ring has symbolic-only generators; it cannot be used for computation")]
    UnsupportedCoefficients,
    #[error("inhomogeneous input: {0}")]
    NonHomogeneousInput(String),
    #[error("element lives in a different free module (rank {found}, expected {expected})")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("ideal is not primary to the maximal ideal: no power of `{0}` among leading terms")]
    NotPrimaryIdeal(String),
    #[error("local cohomology H^{position} in degree {degree} did not stabilize by t = {t_max}")]
    NoStabilization { t_max: u32, degree: i64, position: usize },
    #[error("degree {0} is outside the known range of the module")]
    InfiniteInWindow(i64),
    #[error("module has a free summand in degree {0}; it is not torsion on the window")]
    NotTorsionOnWindow(i64),
    #[error("module is not torsion: {0}")]
    NotTorsion(String),
    #[error("module is not J-power torsion: {0}")]
    NotJTorsion(String),
    #[error("higher Ext beyond homological degree {0} cannot be ruled out")]
    InconclusiveBeyond(usize),
    #[error("invalid degreewise module data in degree {degree}: {reason}")]
    InvalidDegreewise { degree: i64, reason: String },
    #[error("unknown ring generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid window [{0}, {1}]")]
    InvalidWindow(i64, i64),
}
