//! JSON documents read and written by the command line. Complex numbers are
//! `[re, im]` pairs everywhere.

use serde::{Deserialize, Serialize};
use symbidisc_core::caratheodory::TangentClass;
use symbidisc_core::{c64, Complex64, MobiusMap, SymPoint, Tangent};

use crate::error::CliError;

/// `[re, im]`.
pub type Pair = [f64; 2];

/// Negative zeros are written as `0.0`.
pub fn pair(z: Complex64) -> Pair {
    [z.re + 0.0, z.im + 0.0]
}

pub fn complex(p: Pair) -> Complex64 {
    c64(p[0], p[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub s: Pair,
    pub p: Pair,
}

impl PointDoc {
    pub fn from_point(l: &SymPoint) -> Self {
        PointDoc { s: pair(l.s()), p: pair(l.p()) }
    }

    pub fn parse(&self) -> Result<SymPoint, CliError> {
        Ok(SymPoint::new(complex(self.s), complex(self.p))?)
    }
}

/// `{"lambda": {"s", "p"}, "v": [v_s, v_p]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangentDoc {
    pub lambda: PointDoc,
    pub v: [Pair; 2],
}

impl TangentDoc {
    pub fn from_tangent(t: &Tangent) -> Self {
        TangentDoc { lambda: PointDoc::from_point(&t.base), v: [pair(t.v[0]), pair(t.v[1])] }
    }
}

/// A validated tangent: the base must lie in `G` and `v` must be nonzero.
pub fn parse_tangent(doc: &TangentDoc) -> Result<Tangent, CliError> {
    let t = Tangent::new(doc.lambda.parse()?, complex(doc.v[0]), complex(doc.v[1]));
    t.ensure_nondegenerate()?;
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceDoc {
    pub lambda: PointDoc,
    pub mu: PointDoc,
}

/// `m(z) = c (z − α)/(1 − ᾱz)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub c: Pair,
    pub alpha: Pair,
}

impl MapDoc {
    pub fn from_map(m: &MobiusMap) -> Self {
        MapDoc { c: pair(m.c()), alpha: pair(m.alpha()) }
    }

    pub fn parse(&self) -> Result<MobiusMap, CliError> {
        Ok(MobiusMap::new(complex(self.c), complex(self.alpha))?)
    }
}

/// Parameters of a sampled colligation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColligationDoc {
    pub seed: u64,
    pub n: usize,
    pub strictness: f64,
}

/// The free Schur parameter `ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PsiDoc {
    Colligation(ColligationDoc),
    Constant(Pair),
}

/// A function `G → D` the `verify` command can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionDoc {
    /// `Φ_ω` with `ω = e^{i·angle}`.
    Magic { angle: f64 },
    /// The royal family for automorphism `m` and parameter `ψ`.
    Royal { m: MapDoc, psi: PsiDoc },
    /// The purely balanced family built on the tangent under test.
    PurelyBalanced { r: f64, psi: PsiDoc },
    /// A sampled colligation realization.
    Colligation { seed: u64, n: usize, strictness: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructDoc {
    pub tangent: TangentDoc,
    #[serde(default)]
    pub r: Option<f64>,
    #[serde(default)]
    pub psi: Option<PsiDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDoc {
    pub tangent: TangentDoc,
    pub function: FunctionDoc,
    #[serde(default)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClassDoc {
    Royal { z: Pair, c: Pair },
    Flat { beta: Pair, z: Pair, c: Pair },
    PurelyBalanced { m: MapDoc, z: Pair, c: Pair },
    UniqueExtremal { angle: f64 },
}

impl From<TangentClass> for ClassDoc {
    fn from(c: TangentClass) -> Self {
        match c {
            TangentClass::Royal { z, c } => ClassDoc::Royal { z: pair(z), c: pair(c) },
            TangentClass::Flat { beta, z, c } => ClassDoc::Flat { beta: pair(beta), z: pair(z), c: pair(c) },
            TangentClass::PurelyBalanced { m, z, c } => {
                ClassDoc::PurelyBalanced { m: MapDoc::from_map(&m), z: pair(z), c: pair(c) }
            }
            TangentClass::UniqueExtremal { angle } => ClassDoc::UniqueExtremal { angle },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricOut {
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceOut {
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtremalSetOut {
    pub kind: String,
    pub c: f64,
    /// Radians in `[0, 2π)`, ascending; empty when every `ω` is extremal.
    pub angles: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Evaluation {
    pub lambda: PointDoc,
    pub value: Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatDataDoc {
    pub beta: Pair,
    pub zeta: Pair,
    pub eta: Pair,
    pub m: MapDoc,
    pub target: Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructOut {
    pub class: ClassDoc,
    pub c: f64,
    /// Feed back into `verify`; absent for flat tangents.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionDoc>,
    /// `F(λ)`; zero for a well-aligned extremal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_at_base: Option<Pair>,
    /// `D_vF(λ)`; equal to `c` for a well-aligned extremal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivative_at_base: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat_data: Option<FlatDataDoc>,
    pub evaluations: Vec<Evaluation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyOut {
    pub function: String,
    pub c: f64,
    /// `|F_*(δ)|`; null when the pushforward could not be formed.
    pub pushed_metric: Option<f64>,
    pub relative_gap: Option<f64>,
    pub max_modulus: f64,
    pub samples: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSchurOut {
    pub seed: u64,
    pub n: usize,
    pub strictness: f64,
    /// The `(1 + n) × (1 + n)` block `[[A, B], [C, D]]`, row-major.
    pub abcd: Vec<Vec<Pair>>,
    pub t: Vec<Vec<Pair>>,
    pub unitary: bool,
    pub pick_min_eigenvalue: f64,
    pub pick_pass: bool,
    pub evaluations: Vec<Evaluation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LftCheckOut {
    pub trials: usize,
    pub seed: u64,
    /// Worst residual of the composition identity.
    pub max_residual: f64,
    /// Largest `‖F_P(X)‖` with `‖P‖ < 1`, `‖X‖ ≤ 1`.
    pub max_contraction_norm: f64,
    pub counterexamples: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorOut {
    pub error: ErrorBody,
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn negative_zero_is_normalized() {
        let p = pair(c64(-0.0, -0.0));
        assert!(p[0].is_sign_positive() && p[1].is_sign_positive());
        assert_eq!(serde_json::to_string(&p).unwrap(), "[0.0,0.0]");
    }

    #[test]
    fn function_documents_are_tagged() {
        let f: FunctionDoc = serde_json::from_value(json!({"type": "magic", "angle": 1.5})).unwrap();
        assert_eq!(f, FunctionDoc::Magic { angle: 1.5 });
        let psi: PsiDoc = serde_json::from_value(json!({"constant": [0.1, 0.2]})).unwrap();
        assert_eq!(psi, PsiDoc::Constant([0.1, 0.2]));
        assert!(serde_json::from_value::<FunctionDoc>(json!({"type": "magic", "angle": 1.5, "x": 0})).is_err());
        assert!(serde_json::from_value::<FunctionDoc>(json!({"type": "other"})).is_err());
    }

    #[test]
    fn class_documents() {
        let doc = ClassDoc::from(TangentClass::UniqueExtremal { angle: 0.5 });
        assert_eq!(serde_json::to_value(&doc).unwrap(), json!({"tag": "unique_extremal", "angle": 0.5}));
        let doc = ClassDoc::from(TangentClass::Royal { z: c64(0.5, 0.0), c: c64(1.0, 0.0) });
        assert_eq!(serde_json::to_value(&doc).unwrap(), json!({"tag": "royal", "z": [0.5, 0.0], "c": [1.0, 0.0]}));
    }

    #[test]
    fn tangent_validation() {
        let doc = |s: Pair, p: Pair, v: [Pair; 2]| TangentDoc { lambda: PointDoc { s, p }, v };
        let err = parse_tangent(&doc([1.0, 0.0], [0.0, 0.0], [[1.0, 0.0], [0.0, 0.0]])).unwrap_err();
        assert_eq!(err.code, "not_in_domain");
        assert!(err.message.starts_with("point not in G"));
        let err = parse_tangent(&doc([0.0, 0.0], [0.0, 0.0], [[0.0, 0.0], [0.0, 0.0]])).unwrap_err();
        assert_eq!((err.code, err.message.as_str()), ("degenerate_tangent", "degenerate tangent"));
    }
}
