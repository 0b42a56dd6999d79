use serde_json::{json, Value};
use torsion_lab_core::cocycle::CocycleError;
use torsion_lab_core::local_system::LocalSystemError;
use torsion_lab_core::sectors::SectorError;
use torsion_lab_core::surface::SurfaceError;
use torsion_lab_core::GroupError;

pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{message}")]
    Validation { message: String, witness: Value },
    #[error("{candidates} candidates exceed the enumeration cap {cap}")]
    CapExceeded { candidates: u128, cap: u64 },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_VALIDATION,
        }
    }

    pub fn validation(message: impl Into<String>, witness: Value) -> Self {
        CliError::Validation { message: message.into(), witness }
    }

    /// Machine-readable description printed on every failure path.
    pub fn to_json(&self) -> Value {
        let (kind, witness) = match self {
            CliError::Parse { path, line, .. } => ("ParseError", json!({ "path": path, "line": line })),
            CliError::Schema { path, .. } => ("SchemaError", json!({ "path": path })),
            CliError::Validation { witness, .. } => ("ValidationError", witness.clone()),
            CliError::CapExceeded { candidates, cap } => {
                ("CapExceeded", json!({ "candidates": candidates.to_string(), "cap": cap }))
            }
            CliError::Io { path, .. } => ("IoError", json!({ "path": path })),
        };
        json!({ "error": kind, "message": self.to_string(), "witness": witness })
    }
}

pub fn group_witness(e: &GroupError) -> Value {
    match e {
        GroupError::Empty => json!({ "kind": "Empty" }),
        GroupError::NotSquare { row, len, expected } => {
            json!({ "kind": "NotSquare", "row": row, "len": len, "expected": expected })
        }
        GroupError::EntryOutOfRange { a, b, value } => {
            json!({ "kind": "EntryOutOfRange", "a": a, "b": b, "value": value })
        }
        GroupError::NotLatinSquare { line, index, value } => {
            json!({ "kind": "NotLatinSquare", "line": line, "index": index, "value": value })
        }
        GroupError::NoIdentity => json!({ "kind": "NoIdentity" }),
        GroupError::NoInverse(g) => json!({ "kind": "NoInverse", "element": g }),
        GroupError::NotAssociative { a, b, c } => json!({ "kind": "NotAssociative", "a": a, "b": b, "c": c }),
        GroupError::NotPermutation { index, degree } => {
            json!({ "kind": "NotPermutation", "generator": index, "degree": degree })
        }
        GroupError::ClosureTooLarge { cap } => json!({ "kind": "ClosureTooLarge", "cap": cap }),
        GroupError::UnknownSpecifier(s) => json!({ "kind": "UnknownSpecifier", "specifier": s }),
    }
}

pub fn cocycle_witness(e: &CocycleError) -> Value {
    match e {
        CocycleError::ShapeMismatch { expected } => json!({ "kind": "ShapeMismatch", "expected": expected }),
        CocycleError::NotNormalized(g) => json!({ "kind": "NotNormalized", "element": g }),
        CocycleError::CocycleViolation { g, h, k } => json!({ "kind": "CocycleViolation", "g": g, "h": h, "k": k }),
        CocycleError::ModulusTooSmall { modulus, required } => {
            json!({ "kind": "ModulusTooSmall", "modulus": modulus, "required": required })
        }
        CocycleError::NoTrivialization { generator, modulus } => {
            json!({ "kind": "NoTrivialization", "generator": generator, "modulus": modulus })
        }
        CocycleError::OrderMismatch { expected, found } => {
            json!({ "kind": "OrderMismatch", "expected": expected, "found": found })
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::validation(e.to_string(), group_witness(&e))
    }
}

impl From<CocycleError> for CliError {
    fn from(e: CocycleError) -> Self {
        CliError::validation(e.to_string(), cocycle_witness(&e))
    }
}

impl From<SectorError> for CliError {
    fn from(e: SectorError) -> Self {
        let witness = match &e {
            SectorError::CapExceeded { candidates, cap } => {
                return CliError::CapExceeded { candidates: *candidates, cap: *cap };
            }
            SectorError::IndexOutOfRange { index, k } => json!({ "kind": "IndexOutOfRange", "index": index, "k": k }),
            SectorError::NotAHomomorphism { weight, g, h } => {
                json!({ "kind": "NotAHomomorphism", "weight": weight, "g": g, "h": h })
            }
            SectorError::NotAnAction { g, h, point } => {
                json!({ "kind": "NotAnAction", "g": g, "h": h, "point": point })
            }
            SectorError::NotAPermutation { row } => json!({ "kind": "NotAPermutation", "row": row }),
            SectorError::ShapeMismatch { what, expected } => {
                json!({ "kind": "ShapeMismatch", "what": what, "expected": expected })
            }
            SectorError::NeedsAgeTable => json!({ "kind": "NeedsAgeTable" }),
            SectorError::InvalidAge(g) => json!({ "kind": "InvalidAge", "element": g }),
            SectorError::ZeroModulus => json!({ "kind": "ZeroModulus" }),
        };
        CliError::validation(e.to_string(), witness)
    }
}

impl From<LocalSystemError> for CliError {
    fn from(e: LocalSystemError) -> Self {
        let witness = match &e {
            LocalSystemError::ConditionFailed { condition, witness } => {
                json!({ "kind": "ConditionFailed", "condition": condition, "elements": witness })
            }
            LocalSystemError::ShapeMismatch { expected } => json!({ "kind": "ShapeMismatch", "expected": expected }),
            LocalSystemError::NotCentral { left, right, element } => {
                json!({ "kind": "NotCentral", "left": left, "right": right, "element": element })
            }
            LocalSystemError::Cocycle(c) => return c.clone().into(),
        };
        CliError::validation(e.to_string(), witness)
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        let witness = match &e {
            SurfaceError::CapExceeded { candidates, cap } => {
                return CliError::CapExceeded { candidates: *candidates, cap: *cap };
            }
            SurfaceError::NotClosed => json!({ "kind": "NotClosed" }),
            SurfaceError::FrameMismatch { boundary } => json!({ "kind": "FrameMismatch", "boundary": boundary }),
            SurfaceError::LabelMismatch { left, right } => {
                json!({ "kind": "LabelMismatch", "left": left, "right": right })
            }
            SurfaceError::ShapeMismatch { expected, found } => {
                json!({ "kind": "ShapeMismatch", "expected": expected, "found": found })
            }
            SurfaceError::ZeroMultiplicity => json!({ "kind": "ZeroMultiplicity" }),
            SurfaceError::Cocycle(c) => return c.clone().into(),
        };
        CliError::validation(e.to_string(), witness)
    }
}
