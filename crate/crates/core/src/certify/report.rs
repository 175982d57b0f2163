use serde::{Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NotMutationAcyclic,
    MutationAcyclic,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    NoVortex,
    NoAdmissibleCompanion,
    MarkovLowerBound,
    DetInequality,
    AcyclicEnumerationMismatch,
    GcdMismatch,
}

/// Outcome of the certification pipeline. Vertex indices are 0-based in memory and
/// 1-based once serialized; `evidence` is already in its 1-based wire form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertReport {
    pub verdict: Verdict,
    pub obstruction: Option<Obstruction>,
    #[serde(serialize_with = "one_based_path")]
    pub witness_path: Option<Vec<usize>>,
    pub evidence: Value,
}

impl CertReport {
    pub fn is_definitive(&self) -> bool {
        self.verdict != Verdict::Inconclusive
    }
}

fn one_based_path<S: Serializer>(p: &Option<Vec<usize>>, s: S) -> Result<S::Ok, S::Error> {
    p.as_ref()
        .map(|p| p.iter().map(|v| v + 1).collect::<Vec<_>>())
        .serialize(s)
}
