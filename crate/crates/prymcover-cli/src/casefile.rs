//! Case files: the combinatorial cover data plus optional flags and an
//! expected-results block for table regression.

use prymcover::covers::CoverType;
use prymcover::enumerate::{DedupMode, EnumerationConfig, SampleConfig, Strategy};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct CaseFlags {
    #[serde(default)]
    pub require_maximal_hx_in_hy: bool,
    #[serde(default)]
    pub require_maximal_hy_in_g: bool,
    #[serde(default)]
    pub dedup: Option<DedupMode>,
    #[serde(default)]
    pub strategy: Option<Strategy>,
    #[serde(default)]
    pub max_group_order: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseFile {
    pub name: String,
    #[serde(flatten)]
    pub cover: CoverType,
    /// True when the ramification data was reconstructed from a verbal
    /// description of the tower rather than given explicitly.
    #[serde(default)]
    pub reconstructed: bool,
    #[serde(default)]
    pub notes: Option<String>,
    #[serde(default)]
    pub flags: CaseFlags,
    /// When present, the case is sampled rather than enumerated.
    #[serde(default)]
    pub sample: Option<SampleConfig>,
    #[serde(default)]
    pub expected: Option<ExpectedBlock>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DimVariant {
    pub dims: Vec<u32>,
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedFamily {
    pub group_order: usize,
    pub g_z: u32,
    /// `[positive, negative]` cover counts; omit to skip count checking
    /// (sampled cases).
    #[serde(default)]
    pub nonhyp: Option<[usize; 2]>,
    #[serde(default)]
    pub hyp: Option<[usize; 2]>,
    #[serde(default)]
    pub variants_nonhyp: Vec<DimVariant>,
    #[serde(default)]
    pub variants_hyp: Vec<DimVariant>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedBlock {
    pub families: Vec<ExpectedFamily>,
}

impl CaseFile {
    pub fn parse(data: &str) -> Result<CaseFile, String> {
        let case: CaseFile = serde_json::from_str(data).map_err(|e| e.to_string())?;
        let normalized = CaseFile {
            cover: case.cover.normalized(),
            ..case
        };
        normalized.cover.validate().map_err(|e| e.to_string())?;
        Ok(normalized)
    }

    pub fn config(&self) -> EnumerationConfig {
        EnumerationConfig {
            strategy: self.flags.strategy,
            dedup: self.flags.dedup.unwrap_or(DedupMode::NormalizerInSd),
            require_maximal_hx_in_hy: self.flags.require_maximal_hx_in_hy,
            require_maximal_hy_in_g: self.flags.require_maximal_hy_in_g,
            sample: self.sample,
            max_group_order: self
                .flags
                .max_group_order
                .unwrap_or(prymcover::perm::DEFAULT_ORDER_CAP),
        }
    }
}

/// The bundled appendix cases, by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("rr-spec", include_str!("../cases/rr-spec.json")),
    ("rr-gen", include_str!("../cases/rr-gen.json")),
    ("g2-2", include_str!("../cases/g2-2.json")),
    ("g2-3", include_str!("../cases/g2-3.json")),
    ("g2-4", include_str!("../cases/g2-4.json")),
    ("etale-3", include_str!("../cases/etale-3.json")),
    ("total-3", include_str!("../cases/total-3.json")),
    ("total-4", include_str!("../cases/total-4.json")),
    ("3-orig", include_str!("../cases/3-orig.json")),
    ("3131", include_str!("../cases/3131.json")),
];

/// Load a case by bundled name or from a JSON file path.
pub fn load_case(spec: &str) -> Result<CaseFile, String> {
    if let Some((_, data)) = BUNDLED.iter().find(|(n, _)| *n == spec) {
        return CaseFile::parse(data);
    }
    let data = std::fs::read_to_string(spec)
        .map_err(|e| format!("cannot read case {spec:?}: {e}"))?;
    CaseFile::parse(&data)
}
