use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    Schema(String),
    #[error("edge {edge:?} references unknown vertex {vertex:?}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("no vertex named {0:?}")]
    NoSuchVertex(String),
    #[error("no edge named {0:?}")]
    NoSuchEdge(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge sequence is not composable")]
    NotComposable,
    #[error("cycle is empty or does not close up")]
    NotClosed,
    #[error("cycle does not attach to the end of the prefix")]
    Detached,
    #[error("finite path does not end at a terminus")]
    NotBoundary,
    #[error("an empty prefix with no cycle needs an explicit terminus")]
    MissingTerminus,
    #[error("cannot shift a path of length {len} by {by}")]
    ShiftTooFar { len: usize, by: usize },
    #[error("malformed path document: {0}")]
    Schema(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("orbit closures need every strongly connected component to be trivial or a simple cycle")]
    BranchedComponent,
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("malformed groupoid: {0}")]
    Malformed(String),
    #[error("elements live over different groupoids")]
    MismatchedGroupoids,
    #[error("groupoid is not transitive")]
    NotTransitive,
    #[error("object subset is not invariant")]
    NotInvariant,
    #[error("vector support is not contained in a single orbit")]
    SupportNotInOneOrbit,
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {0} exceeds the supported table size")]
    TooLarge(u64),
    #[error("cannot parse field element {0:?}")]
    Parse(String),
    #[error("unknown field specification {0:?}")]
    UnknownSpec(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepnError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed group: {0}")]
    MalformedGroup(String),
    #[error("unknown group preset {0:?}")]
    UnknownPreset(String),
    #[error("group order {order} exceeds cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("module dimension {dim} exceeds cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("algebra dimension {dim} exceeds cap {cap}")]
    AlgebraTooLarge { dim: usize, cap: usize },
    #[error("amplification degree {n} exceeds cap {cap}")]
    AmplificationTooLarge { n: usize, cap: usize },
    #[error("characteristic {p} divides the group order {order}")]
    CharacteristicDividesOrder { p: u64, order: usize },
    #[error("field of order {order} does not split the group (exponent {exponent}); smallest splitting field has order {suggested}")]
    NotSplitting { order: u64, exponent: usize, suggested: u64 },
    #[error("composition factor of dimension {dim} has endomorphism dimension {endo_dim}; field does not split")]
    NonSplittingFactor { dim: usize, endo_dim: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("matrix does not lie in the algebra")]
    NotInAlgebra,
    #[error("module is not simple")]
    NotSimple,
    #[error("inconsistent dimensions: {0}")]
    Dimension(String),
    #[error("could not decide irreducibility after {0} attempts")]
    Undecided(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("a product needs at least one factor")]
    EmptyProduct,
    #[error("products of {0} graphs are not supported (at most {max})", max = crate::classify::MAX_PRODUCT_FACTORS)]
    TooManyFactors(usize),
    #[error("empty field specification")]
    EmptyField,
}
