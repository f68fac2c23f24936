//! Serializable report types shared by the library and the CLI.

use crate::calculus::Conventions;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Mathematical assumptions a report rests on but does not verify.
pub fn standard_assumptions() -> Vec<String> {
    vec![
        "formal-neighborhood cohomology is taken as the smooth annulus cohomology \
         (Borel extension of power series and acyclicity of the flat complex are \
         assumed, not computed)"
            .to_string(),
        "de Rham dimensions of the cap cover pieces are topological constants: \
         two disks (2,0,0), two annuli (2,2,0)"
            .to_string(),
    ]
}

#[derive(Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub claim: String,
    pub status: ClaimStatus,
    pub detail: String,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "UPPERCASE")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub c: String,
    pub modes: i64,
    pub degree_cap: usize,
    pub quad_points: usize,
    pub seed: u64,
    pub branch: String,
    pub conventions: Conventions,
    pub assumptions: Vec<String>,
    pub claims: Vec<ClaimResult>,
    pub global_dims: Option<[usize; 3]>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}
