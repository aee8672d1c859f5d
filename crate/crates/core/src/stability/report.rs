use serde::{Deserialize, Serialize};

use crate::numerics::{Scalar, Sign};
use crate::stability::{InterfaceTrace, InterfaceTraceList, TraceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// The trace jump is nonzero and has the sign of the data jump.
    SameSign,
    /// The traces agree.
    Continuous,
    /// The trace jump opposes the data jump, or the data is continuous and
    /// the traces are not.
    Violation,
}

impl Verdict {
    /// Short tag used in CSV output.
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::SameSign => "SAME",
            Verdict::Continuous => "CONT",
            Verdict::Violation => "VIOLATION",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Classifies one interface. Float traces within round-off of each other
/// count as continuous.
pub fn verdict<T: Scalar>(trace: &InterfaceTrace<T>) -> Verdict {
    let jump = trace.jump().sign_above_noise(&trace.scale());
    match (jump, trace.data_jump.sign()) {
        (Sign::Zero, _) => Verdict::Continuous,
        (j, d) if j == d => Verdict::SameSign,
        _ => Verdict::Violation,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceVerdict<T> {
    pub index: usize,
    pub verdict: Verdict,
    pub ratio: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignReport<T> {
    pub kind: TraceKind,
    pub order: usize,
    pub interfaces: Vec<InterfaceVerdict<T>>,
    pub same_sign: usize,
    pub continuous: usize,
    pub violations: usize,
    /// Largest `(v^+ - v^-) / (data jump)` over interfaces with a data jump.
    pub max_ratio: Option<T>,
}

impl<T: Scalar> SignReport<T> {
    pub fn len(&self) -> usize {
        self.interfaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interfaces.is_empty()
    }

    pub fn violation_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.interfaces
            .iter()
            .filter(|v| v.verdict == Verdict::Violation)
            .map(|v| v.index)
    }
}

pub fn sign_report<T: Scalar>(traces: &InterfaceTraceList<T>) -> SignReport<T> {
    let mut report = SignReport {
        kind: traces.kind,
        order: traces.order,
        interfaces: Vec::with_capacity(traces.len()),
        same_sign: 0,
        continuous: 0,
        violations: 0,
        max_ratio: None,
    };
    for t in traces.iter() {
        let v = verdict(t);
        match v {
            Verdict::SameSign => report.same_sign += 1,
            Verdict::Continuous => report.continuous += 1,
            Verdict::Violation => report.violations += 1,
        }
        let ratio = t.ratio();
        if let Some(r) = &ratio {
            report.max_ratio = Some(match report.max_ratio.take() {
                Some(m) => T::max_of(m, r.clone()),
                None => r.clone(),
            });
        }
        report.interfaces.push(InterfaceVerdict {
            index: t.index,
            verdict: v,
            ratio,
        });
    }
    report
}
