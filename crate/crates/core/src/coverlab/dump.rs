use serde::{Deserialize, Serialize};

use super::rep::PermRep;
use super::screen::ScreeningReport;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScreeningSummary {
    #[serde(rename = "L")]
    pub length_bound: f64,
    pub flagged: Vec<String>,
}

/// JSON record of one sampled cover.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleDump {
    pub n: usize,
    pub seed: u64,
    #[serde(rename = "sigma_X")]
    pub sigma_x: Vec<usize>,
    #[serde(rename = "sigma_Y")]
    pub sigma_y: Vec<usize>,
    pub transitive: bool,
    /// Rank of the stabilizer, present when the action is transitive.
    pub k: Option<usize>,
    pub screening: Option<ScreeningSummary>,
}

impl SampleDump {
    pub fn new(rep: &PermRep, k: Option<usize>, screening: Option<ScreeningSummary>) -> Self {
        SampleDump {
            n: rep.n,
            seed: rep.seed,
            sigma_x: rep.sigma_x.one_line(),
            sigma_y: rep.sigma_y.one_line(),
            transitive: rep.is_transitive(),
            k,
            screening,
        }
    }
}

impl ScreeningSummary {
    pub fn new(length_bound: f64, report: &ScreeningReport, labels: &[String]) -> Self {
        ScreeningSummary {
            length_bound,
            flagged: report.flagged.iter().map(|&i| labels[i].clone()).collect(),
        }
    }
}
