use cadproj::Polynomial;
use serde::Serialize;

#[derive(Serialize, Debug, Clone)]
pub struct PolySummary {
    pub degree: u32,
    pub terms: usize,
    /// Integer content, as a decimal string.
    pub content: String,
}

impl PolySummary {
    pub fn of(p: &Polynomial) -> Self {
        PolySummary {
            degree: p.total_degree(),
            terms: p.nterms(),
            content: p.integer_content().to_string(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct StatsReport {
    pub operation: String,
    pub inputs: Vec<PolySummary>,
    pub outputs: Vec<PolySummary>,
    pub wall_time_ms: f64,
}

impl StatsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}
