use thiserror::Error;

use crate::plane::EdgeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rotation system is not planar: V - E + F = {vertices} - {edges} + {faces} != 2")]
    EulerViolation {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed rotation: {0}")]
    MalformedRotation(String),
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeId),
    #[error("edge {edge} has endpoint {vertex} out of range")]
    BadEndpoint { edge: EdgeId, vertex: usize },
    #[error("outer face {0} does not exist")]
    BadOuterFace(usize),
    #[error("edge set is not a circuit: {0}")]
    NotACircuit(String),
    #[error("a shore must be a proper nonempty subset of the faces")]
    InvalidShore,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("path enumeration exceeded the cap of {cap} paths")]
    PathExplosion { cap: usize },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("unknown path: {0}")]
    UnknownPath(String),
    #[error("no stable set of size {target} exists (maximum is {found})")]
    TargetUnreachable { found: usize, target: usize },
    #[error("instance too large for exact enumeration: {0}")]
    TooLarge(String),
    #[error("internal error: {0}")]
    Internal(String),
}
