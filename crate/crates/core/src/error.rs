use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator set is empty and no degree was given")]
    EmptyGeneratorSet,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("{order} does not divide the group order {group_order}")]
    OrderDoesNotDivide { order: usize, group_order: usize },
    #[error("group order {order} exceeds the configured cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("subgroups do not share a parent group")]
    ParentMismatch,
    #[error("not a subgroup of the given group")]
    NotASubgroup,
    #[error("|K|*n^2 = {expected} but |G| = {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("clique size {0} is below the minimum of 3")]
    SizeTooSmall(usize),
    #[error("subgroup {index}: index in G is {found}, expected n = {expected}")]
    IndexViolation {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("subgroups {i} and {j} do not intersect in K")]
    IntersectionViolation { i: usize, j: usize },
    #[error("|G| = {group_order} but k*n^2 = {expected}")]
    SizeViolation { group_order: usize, expected: usize },
    #[error("packets have different numbers of subgroups")]
    ArityMismatch,
    #[error("coordinate {coord} out of range (array has {count})")]
    CoordinateOutOfRange { coord: usize, count: usize },
    #[error("bad shape: {0}")]
    ShapeError(String),
    #[error("squares {i} and {j} are not orthogonal: pair ({a},{b}) at ({r1},{c1}) and ({r2},{c2})")]
    NotOrthogonal {
        i: usize,
        j: usize,
        a: u16,
        b: u16,
        r1: usize,
        c1: usize,
        r2: usize,
        c2: usize,
    },
    #[error("order {0} is not a bundled prime power")]
    UnsupportedOrder(usize),
    #[error("order {n} exceeds the enumeration cap {cap}")]
    OrderTooLarge { n: usize, cap: usize },
    #[error("autotopy group order {order} exceeds the regular-subgroup search cap {cap}")]
    GroupTooLargeForRegularSearch { order: usize, cap: usize },
    #[error("catalog group {name} has order {found}, expected {expected}")]
    CatalogOrderMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("group {name}: declared order {declared} but closure has order {computed}")]
    OrderMismatch {
        name: String,
        declared: usize,
        computed: usize,
    },
    #[error("unknown packet reference: {0}")]
    UnknownPacketReference(String),
    #[error("missing fixture: {0}")]
    FixtureMissing(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("empty MOLS set")]
    EmptySet,
    #[error("arrays have different shapes")]
    ShapeMismatch,
    #[error("not a Latin square: symbol {symbol} repeats in {place} {index}")]
    NotLatin {
        place: &'static str,
        index: usize,
        symbol: u16,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
