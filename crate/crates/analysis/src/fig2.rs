use num_rational::Ratio;
use serde::Serialize;

use crate::AnalysisError;

/// Who owns each slot of the period: nobody, X0, X1, node 2 or node 3.
/// One owner per slot makes the four transmit sets pairwise disjoint.
const OWNERS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlotSets {
    pub x0: Vec<usize>,
    pub x1: Vec<usize>,
    pub n2: Vec<usize>,
    pub n3: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "UPPERCASE")]
pub enum Fig2Verdict {
    Unsat { period: usize, assignments: u64 },
    Sat { period: usize, witness: SlotSets },
}

impl Fig2Verdict {
    pub fn is_unsat(&self) -> bool {
        matches!(self, Fig2Verdict::Unsat { .. })
    }
}

/// Exhaustive search for transmit-slot sets in one period of a periodic
/// schedule on the four relays of the small network (X0, X1 next to X;
/// node 2 below X0, node 3 below X1) meeting the necessary conditions for
/// throughput `target`: pairwise disjoint sets, each of size at most
/// (1−ρ)P, and |T_X0 ∪ T_3| ≥ ρP, |T_X1 ∪ T_2| ≥ ρP.
pub fn check_fig2_infeasibility(period: usize, target: Ratio<u64>) -> Result<Fig2Verdict, AnalysisError> {
    if period == 0 || period % 3 != 0 || period > 9 {
        return Err(AnalysisError::Config(format!("period must be 3, 6 or 9, got {period}")));
    }
    if *target.numer() == 0 || target >= Ratio::from_integer(1) {
        return Err(AnalysisError::Config("target must lie in (0, 1)".into()));
    }
    let p = period as u64;
    let cap = ((Ratio::from_integer(1) - target) * p).to_integer() as usize;
    let cover = (target * p).ceil().to_integer() as usize;
    let total = (OWNERS as u64).pow(period as u32);
    for code in 0..total {
        let mut count = [0usize; OWNERS];
        let mut c = code;
        for _ in 0..period {
            count[(c % OWNERS as u64) as usize] += 1;
            c /= OWNERS as u64;
        }
        let [_, x0, x1, n2, n3] = count;
        if [x0, x1, n2, n3].iter().all(|&k| k <= cap) && x0 + n3 >= cover && x1 + n2 >= cover {
            let mut sets: [Vec<usize>; OWNERS] = Default::default();
            let mut c = code;
            for slot in 0..period {
                sets[(c % OWNERS as u64) as usize].push(slot);
                c /= OWNERS as u64;
            }
            let [_, x0, x1, n2, n3] = sets;
            return Ok(Fig2Verdict::Sat { period, witness: SlotSets { x0, x1, n2, n3 } });
        }
    }
    Ok(Fig2Verdict::Unsat { period, assignments: total })
}
