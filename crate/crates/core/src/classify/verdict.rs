use serde::{Deserialize, Serialize};

use super::certificate::Certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Regular,
    NotRegular,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    Exact,
    Evidence,
}

/// Outcome for `B`. `Regular` carries one hypo-ellipticity and one
/// injectivity certificate; `NotRegular` carries a hypo-ellipticity
/// certificate and a Schwartz kernel of `A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub status: Status,
    pub grade: Grade,
    pub chain: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub reason: String,
}

impl RegularityVerdict {
    /// Composes a verdict from the attempted certificates in priority
    /// order. Only an exact hypo-ellipticity certificate unlocks a verdict.
    pub fn compose(hypo: &[Certificate], inj: &[Certificate]) -> Self {
        let grade_of = |chain: &[Certificate]| {
            if chain.iter().all(Certificate::is_exact) {
                Grade::Exact
            } else {
                Grade::Evidence
            }
        };
        let Some(h) = hypo.iter().find(|c| c.is_hypo() && c.is_exact()) else {
            let reason = if hypo.iter().any(|c| matches!(c, Certificate::HypoUnfalsified { .. })) {
                "a is not certified hypo-elliptic (sampling found no counter-evidence, which is not a proof); without hypo-ellipticity regularity of B is not equivalent to injectivity of A"
            } else {
                "a is not certified hypo-elliptic; without hypo-ellipticity regularity of B is not equivalent to injectivity of A"
            };
            return Self {
                status: Status::Unknown,
                grade: Grade::Exact,
                chain: Vec::new(),
                witness: None,
                reason: reason.into(),
            };
        };
        if let Some(w) = inj.iter().find(|c| c.is_not_injective()) {
            let kernel = match w {
                Certificate::NotInjectiveWitness { kernel, .. } => Some(kernel.clone()),
                _ => None,
            };
            let chain = vec![h.clone(), w.clone()];
            return Self {
                status: Status::NotRegular,
                grade: grade_of(&chain),
                chain,
                witness: kernel,
                reason: "a is hypo-elliptic and A has a Schwartz kernel".into(),
            };
        }
        // exact injectivity certificates are preferred over sampled ones
        let best =
            inj.iter().find(|c| c.is_injective() && c.is_exact()).or_else(|| inj.iter().find(|c| c.is_injective()));
        match best {
            Some(i) => {
                let chain = vec![h.clone(), i.clone()];
                Self {
                    status: Status::Regular,
                    grade: grade_of(&chain),
                    chain,
                    witness: None,
                    reason: "a is hypo-elliptic and A is one-to-one".into(),
                }
            }
            None => Self {
                status: Status::Unknown,
                grade: Grade::Exact,
                chain: vec![h.clone()],
                witness: None,
                reason: "a is hypo-elliptic but injectivity of A is not certified".into(),
            },
        }
    }
}
