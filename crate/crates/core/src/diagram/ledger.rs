//! Step-by-step credit accounting.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::Credit;
use crate::graph::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub kind: &'static str,
    pub vertices: Vec<Vertex>,
    /// Change of `cost(D)` caused by the step.
    pub spend: Credit,
    /// The bound the step was checked against.
    pub allowance: Credit,
    /// `cost(D)` after the step.
    pub balance: Credit,
}

/// Running record of the credit scheme: the parameter chi, the current
/// diagram cost and one record per construction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CreditLedger {
    pub chi: Credit,
    balance: Credit,
    steps: Vec<StepRecord>,
}

impl CreditLedger {
    pub fn new(chi: Credit, initial: Credit) -> CreditLedger {
        CreditLedger { chi, balance: initial, steps: Vec::new() }
    }

    pub fn balance(&self) -> Credit {
        self.balance
    }

    pub fn steps(&self) -> &[StepRecord] {
        &self.steps
    }

    /// Records a step that moved the cost to `new_balance`. Returns the step
    /// record if the spend exceeded `allowance`.
    pub fn record(
        &mut self,
        kind: &'static str,
        vertices: Vec<Vertex>,
        new_balance: Credit,
        allowance: Credit,
    ) -> Result<(), StepRecord> {
        let rec = StepRecord { kind, vertices, spend: new_balance - self.balance, allowance, balance: new_balance };
        self.balance = new_balance;
        let over = rec.spend > allowance;
        self.steps.push(rec.clone());
        if over {
            Err(rec)
        } else {
            Ok(())
        }
    }

    /// Total spent over all steps.
    pub fn total_spend(&self) -> Credit {
        self.steps.iter().map(|s| s.spend).sum()
    }

    /// One `STEP kind=.. vertices=.. spend=.. balance=..` line per step.
    pub fn trace(&self) -> String {
        let mut s = String::new();
        for r in &self.steps {
            let _ = write!(s, "STEP kind={} vertices=", r.kind);
            for (i, v) in r.vertices.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{v}");
            }
            let _ = writeln!(s, " spend={} balance={}", r.spend, r.balance);
        }
        s
    }
}
