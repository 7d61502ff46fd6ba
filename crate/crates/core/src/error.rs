use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong while building or checking a structure.
///
/// Input errors (bad tables, malformed documents) are separated from the
/// self-test failures (`CertificateFailure`, `TheoremViolation`,
/// `CriteriaDisagree`) by [`Error::is_theorem_violation`]; the latter must never
/// fire on valid inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyCategory,
    UnknownName(String),
    DuplicateName(String),
    MissingComposite { g: String, f: String },
    BadComposite { g: String, f: String, result: String },
    NonAssociative { h: String, g: String, f: String },
    BadIdentity(String),
    NotCospan { f: String, g: String },
    NotAPoset(String),
    NotALattice { a: String, b: String },
    NotDistributive { x: String, y: String, z: String },
    SizeExceeded { what: &'static str, limit: usize },
    WrongCodomain { morphism: String },
    TargetMismatch { morphism: String },
    NotFunctorial(String),
    TransitionEscapesFibre { morphism: String },
    NotALocale(String),
    NotFinitary,
    NoLeftAdjoint { morphism: String, element: String },
    BeckChevalleyFails { square: String, element: String },
    FrobeniusFails { morphism: String, l: String, l_prime: String },
    NotASheaf { object: String },
    NotCartesianBase,
    NotPresheafBase,
    CriteriaDisagree { element: String },
    CertificateFailure { axiom: &'static str, witness: String },
    TheoremViolation { claim: &'static str, witness: String },
    InvalidInput(String),
}

impl Error {
    /// True for failures that signal a bug or a refuted claim rather than bad input.
    pub fn is_theorem_violation(&self) -> bool {
        matches!(
            self,
            Error::CertificateFailure { .. }
                | Error::TheoremViolation { .. }
                | Error::CriteriaDisagree { .. }
                | Error::TransitionEscapesFibre { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            EmptyCategory => write!(f, "a category needs at least one object"),
            UnknownName(n) => write!(f, "unknown name `{n}`"),
            DuplicateName(n) => write!(f, "name `{n}` is declared twice"),
            MissingComposite { g, f: ff } => {
                write!(f, "composition table has no entry for {g} ∘ {ff}")
            }
            BadComposite { g, f: ff, result } => write!(
                f,
                "{g} ∘ {ff} = {result} has the wrong domain/codomain or is not composable"
            ),
            NonAssociative { h, g, f: ff } => {
                write!(f, "composition is not associative on ({h}, {g}, {ff})")
            }
            BadIdentity(m) => write!(f, "identity law fails at `{m}`"),
            NotCospan { f: a, g } => write!(f, "{a} and {g} do not share a codomain"),
            NotAPoset(msg) => write!(f, "not a partial order: {msg}"),
            NotALattice { a, b } => write!(f, "{a} and {b} have no meet or join"),
            NotDistributive { x, y, z } => {
                write!(f, "distributivity fails at x={x}, y={y}, z={z}")
            }
            SizeExceeded { what, limit } => write!(
                f,
                "{what} exceeds {limit} elements; shrink the site or raise the limit"
            ),
            WrongCodomain { morphism } => {
                write!(f, "`{morphism}` does not land in the sieve's target")
            }
            TargetMismatch { morphism } => {
                write!(f, "codomain of `{morphism}` differs from the sieve target")
            }
            NotFunctorial(m) => write!(f, "functoriality fails: {m}"),
            TransitionEscapesFibre { morphism } => {
                write!(f, "transition along `{morphism}` leaves the fibre")
            }
            NotALocale(m) => write!(f, "not an internal locale: {m}"),
            NotFinitary => write!(f, "base topology is not finitary"),
            NoLeftAdjoint { morphism, element } => {
                write!(f, "transition along `{morphism}` has no left adjoint at {element}")
            }
            BeckChevalleyFails { square, element } => {
                write!(f, "Beck-Chevalley fails on {square} at {element}")
            }
            FrobeniusFails { morphism, l, l_prime } => {
                write!(f, "Frobenius fails along `{morphism}` at l={l}, l'={l_prime}")
            }
            NotASheaf { object } => write!(f, "sheaf condition fails at `{object}`"),
            NotCartesianBase => write!(f, "base category lacks a terminal object or pullbacks"),
            NotPresheafBase => write!(f, "operation needs the trivial topology"),
            CriteriaDisagree { element } => write!(
                f,
                "the two Stone criteria disagree at {element} (implementation bug)"
            ),
            CertificateFailure { axiom, witness } => {
                write!(f, "certificate `{axiom}` failed: {witness}")
            }
            TheoremViolation { claim, witness } => {
                write!(f, "theorem check `{claim}` failed: {witness}")
            }
            InvalidInput(m) => write!(f, "invalid input: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
