//! The verdict engine: CCR when orbits are closed (condition M), GCR but not
//! CCR when the orbit space is only T0 (condition N), and not GCR otherwise.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::ClassifyError;
use crate::graph::Graph;
use crate::topology::{check_condition_m, check_condition_n, TopologyVerdict};

pub const MAX_PRODUCT_FACTORS: usize = 3;

/// Exit status for unusable input.
pub const EXIT_INPUT_ERROR: i32 = 64;

/// Ordered `NotGcr < GcrNotCcr < Ccr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Level {
    #[serde(rename = "not_GCR")]
    NotGcr,
    #[serde(rename = "GCR_not_CCR")]
    GcrNotCcr,
    #[serde(rename = "CCR")]
    Ccr,
}

impl Level {
    /// `None` for the combination "M holds, N fails", which cannot occur.
    pub fn from_conditions(m: bool, n: bool) -> Option<Self> {
        match (m, n) {
            (true, true) => Some(Level::Ccr),
            (false, true) => Some(Level::GcrNotCcr),
            (false, false) => Some(Level::NotGcr),
            (true, false) => None,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Level::Ccr => 0,
            Level::GcrNotCcr => 10,
            Level::NotGcr => 20,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Level::Ccr => "CCR",
            Level::GcrNotCcr => "GCR_not_CCR",
            Level::NotGcr => "not_GCR",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The coefficient field, as far as the verdict cares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "name", rename_all = "kebab-case")]
pub enum FieldSpec {
    UncountableAlgebraicallyClosed(String),
    Other(String),
}

impl FieldSpec {
    pub fn complex() -> Self {
        FieldSpec::UncountableAlgebraicallyClosed("complex".into())
    }

    pub fn is_uncountable_algebraically_closed(&self) -> bool {
        matches!(self, FieldSpec::UncountableAlgebraicallyClosed(_))
    }

    pub fn name(&self) -> &str {
        match self {
            FieldSpec::UncountableAlgebraicallyClosed(n) | FieldSpec::Other(n) => n,
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ClassifyError;

    /// `complex`, `C`, `CC` and `uncountable-algebraically-closed` name the
    /// good class; any other label is recorded as is.
    fn from_str(s: &str) -> Result<Self, ClassifyError> {
        let s = s.trim();
        match s {
            "" => Err(ClassifyError::EmptyField),
            "complex" | "C" | "CC" | "ℂ" | "uncountable-algebraically-closed" => Ok(FieldSpec::UncountableAlgebraicallyClosed(s.to_string())),
            _ => Ok(FieldSpec::Other(s.to_string())),
        }
    }
}

pub const ISOTROPY_NOTE: &str = "isotropy groups of the boundary-path groupoid are trivial or infinite cyclic, hence abelian, \
and their group algebras are CCR over an uncountable algebraically closed field";

pub const C_STAR_REMARK: &str = "the same separation conditions characterise when the graph C*-algebra is CCR or GCR; this is not computed";

/// Field caveat attached when the corollaries do not apply as stated.
pub fn field_caveat(field: &FieldSpec) -> String {
    format!(
        "unknown under this field hypothesis: the level is the orbit-space level, and it equals the algebra's level only over an uncountable algebraically closed field (got {})",
        field.name()
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub level: Level,
    pub m: TopologyVerdict,
    pub n: TopologyVerdict,
    pub field: FieldSpec,
    /// Whether the field hypothesis holds, so the level is a theorem about the algebra.
    pub established: bool,
    pub caveats: Vec<String>,
}

pub fn classify_graph(g: &Graph, field: &FieldSpec) -> Verdict {
    let m = check_condition_m(g);
    let n = check_condition_n(g);
    let level = Level::from_conditions(m.holds, n.holds).expect("condition M implies condition N");
    let established = field.is_uncountable_algebraically_closed();
    let caveats = if established { Vec::new() } else { vec![field_caveat(field)] };
    Verdict { level, m, n, field: field.clone(), established, caveats }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductVerdict {
    pub level: Level,
    pub factors: Vec<Verdict>,
    pub established: bool,
    pub caveats: Vec<String>,
}

pub const PRODUCT_CAVEAT: &str =
    "only cartesian products of graphs are supported; the orbit space of the product is the product of the factors' orbit spaces";

/// A product is CCR (GCR) exactly when every factor is, so its level is the
/// least factor level.
pub fn classify_product(graphs: &[Graph], field: &FieldSpec) -> Result<ProductVerdict, ClassifyError> {
    if graphs.is_empty() {
        return Err(ClassifyError::EmptyProduct);
    }
    if graphs.len() > MAX_PRODUCT_FACTORS {
        return Err(ClassifyError::TooManyFactors(graphs.len()));
    }
    let factors: Vec<Verdict> = graphs.iter().map(|g| classify_graph(g, field)).collect();
    let level = factors.iter().map(|v| v.level).min().expect("nonempty");
    let established = field.is_uncountable_algebraically_closed();
    let mut caveats = Vec::new();
    if graphs.len() > 1 {
        caveats.push(PRODUCT_CAVEAT.to_string());
    }
    if !established {
        caveats.push(field_caveat(field));
    }
    Ok(ProductVerdict { level, factors, established, caveats })
}
