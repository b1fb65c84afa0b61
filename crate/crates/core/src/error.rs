use thiserror::Error;

/// Every failure surfaced by the library.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown target id `{0}`")]
    UnknownTargetId(String),
    #[error("duplicate cube id `{0}`")]
    DuplicateId(String),
    #[error("complex is malformed: {0}")]
    Malformed(String),
    #[error("complex is disconnected")]
    DisconnectedInput,
    #[error("no hyperplane with index {0}")]
    UnknownHyperplane(usize),
    #[error("hyperplane {0} is one-sided")]
    OneSidedHyperplane(usize),
    #[error("hyperplane {0} self-intersects")]
    SelfIntersectingHyperplane(usize),
    #[error("hyperplane {0} is not disjoint from the deleted set")]
    AssignmentAmbiguous(usize),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("cycle could not be expressed in the homology basis")]
    ExpressionFailure,
    #[error("identification folds cube `{0}` onto itself")]
    FoldingDetected(String),
    #[error("hyperplane {0} has no embedded product neighbourhood")]
    NoProductNeighborhood(usize),
    #[error("genus is {0}, expected 1")]
    GenusNotOne(usize),
    #[error("product neighbourhood check failed for hyperplane {0} during normalisation")]
    ProductCheckFailed(usize),
    #[error("{0} hyperplanes exceed the exhaustive limit")]
    TooManyHyperplanes(usize),
    #[error("witness is not a feasible set: {0}")]
    InfeasibleWitness(String),
    #[error("graph mismatch: {0}")]
    GraphMismatch(String),
    #[error("not a Whitehead pair: {0}")]
    InvalidPartition(String),
    #[error("square closure failed at region {region} for labels {labels}")]
    SquareClosureFailed { region: String, labels: String },
    #[error("ambiguous closure at region {0}")]
    AmbiguousClosure(String),
    #[error("no valid flip order for generator {0}")]
    NoValidFlipOrder(String),
    #[error("construction invariant violated: {0}")]
    InvariantViolated(String),
    #[error("automorphism search exceeded budget of {0} nodes")]
    SearchBudgetExceeded(usize),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
