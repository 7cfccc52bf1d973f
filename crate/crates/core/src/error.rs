use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} out of range (1..=127)")]
    GroundSize(u32),
    #[error("element {elem} outside ground set [1, {n}]")]
    OutOfGround { elem: u32, n: u32 },
    #[error("set is not sum-free")]
    NotSumFree,
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("invalid group descriptor {0:?}")]
    GroupDescriptor(String),
    #[error("group of order {0} has no unique halving (even order)")]
    EvenOrder(u64),
    #[error("no index-{0} subgroup is realizable as a coordinate projection kernel")]
    NoIndexSubgroup(u32),
    #[error("{what} exceeds the limit ({value} > {limit})")]
    Limit {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("graph text parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("map is not a bijection between the vertex sets")]
    NotBijective,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
