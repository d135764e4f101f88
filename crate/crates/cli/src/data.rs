//! Reference values as plain data files. The copies under `data/` are
//! embedded at build time; `--data-dir` or `CANMOD_DATA_DIR` reads a
//! directory with the same file names instead.

use canmod_core::Case;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const DATA_DIR_ENV: &str = "CANMOD_DATA_DIR";

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed {file}: {source}")]
    Json { file: String, source: serde_json::Error },
    #[error("{file} has no entry for case {case}")]
    MissingCase { file: String, case: Case },
    #[error("{file}: unsupported version {version}")]
    Version { file: String, version: u32 },
}

pub const DATA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Table<E> {
    pub version: u32,
    pub source: String,
    pub entries: Vec<E>,
}

/// c·√r with c > 0.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Surd {
    pub printed: String,
    pub coefficient: i64,
    pub radicand: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TraceEntry {
    pub case: Case,
    pub citation: String,
    pub tr_alpha: Surd,
    pub tr_beta: Surd,
    pub tr_alpha_beta: Surd,
    pub tr_commutator: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupEntry {
    pub case: Case,
    pub citation: String,
    pub printed: String,
    /// Which of alpha, beta, alpha_beta are adjoined to Γ^(2).
    pub adjoined: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TripleText {
    pub s0: String,
    pub s1: String,
    pub sinf: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MonodromyEntry {
    pub case: Case,
    pub citation: String,
    pub degree: usize,
    #[serde(flatten)]
    pub triple: TripleText,
    pub genus: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Decomposition {
    pub case: Case,
    pub citation: String,
    pub triple12: TripleText,
    pub k_generators: Vec<String>,
    pub triple4: TripleText,
    pub local_profile: Vec<Vec<usize>>,
    pub cover4: String,
    pub b_map: String,
    pub mobius: String,
    pub substitution: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MonodromyTable {
    pub version: u32,
    pub source: String,
    pub entries: Vec<MonodromyEntry>,
    pub decomposition: Decomposition,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BelyiEntry {
    pub case: Case,
    pub citation: String,
    pub curve: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_citation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_curve: Option<String>,
    pub map: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<[Vec<usize>; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModelEntry {
    pub case: Case,
    pub citation: String,
    pub curve: String,
    pub label: String,
    pub j: String,
    pub j_printed: String,
    pub conductor: u64,
    pub faltings_height: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QexpEntry {
    pub case: Case,
    pub citation: String,
    /// (exponent, coefficient) as rational strings.
    pub x: Vec<(String, String)>,
    pub y: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction_field: Option<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OrderBasis {
    pub name: String,
    pub index: u64,
    pub basis: Vec<[i64; 4]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Involution {
    pub name: String,
    pub matrix: [i64; 4],
    pub det: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CommutatorVersion {
    pub version: String,
    pub citation: String,
    pub gamma1: [i64; 4],
    pub gamma2: [i64; 4],
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OrderEntry {
    pub case: Case,
    pub citation: String,
    pub orders: Vec<OrderBasis>,
    pub intersection_index: u64,
    pub level: u64,
    pub involutions: Vec<Involution>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub commutators: Vec<CommutatorVersion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_order: Option<usize>,
}

/// All reference tables.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceData {
    pub traces: Table<TraceEntry>,
    pub groups: Table<GroupEntry>,
    pub monodromy: MonodromyTable,
    pub belyi: Table<BelyiEntry>,
    pub models: Table<ModelEntry>,
    pub qexp: Table<QexpEntry>,
    pub orders: Table<OrderEntry>,
}

pub const FILES: [&str; 7] = ["traces.json", "groups.json", "monodromy.json", "belyi.json", "models.json", "qexp.json", "orders.json"];

const EMBEDDED: [&str; 7] = [
    include_str!("../../../data/traces.json"),
    include_str!("../../../data/groups.json"),
    include_str!("../../../data/monodromy.json"),
    include_str!("../../../data/belyi.json"),
    include_str!("../../../data/models.json"),
    include_str!("../../../data/qexp.json"),
    include_str!("../../../data/orders.json"),
];

fn parse<T: serde::de::DeserializeOwned>(file: &str, text: &str) -> Result<T, DataError> {
    serde_json::from_str(text).map_err(|source| DataError::Json { file: file.to_string(), source })
}

fn check_version(file: &str, version: u32) -> Result<(), DataError> {
    if version != DATA_VERSION {
        return Err(DataError::Version { file: file.to_string(), version });
    }
    Ok(())
}

fn entry<'a, E>(file: &str, entries: &'a [E], case: Case, key: impl Fn(&E) -> Case) -> Result<&'a E, DataError> {
    entries.iter().find(|e| key(e) == case).ok_or_else(|| DataError::MissingCase { file: file.to_string(), case })
}

impl ReferenceData {
    pub fn from_texts(texts: &[String; 7]) -> Result<ReferenceData, DataError> {
        let d = ReferenceData {
            traces: parse(FILES[0], &texts[0])?,
            groups: parse(FILES[1], &texts[1])?,
            monodromy: parse(FILES[2], &texts[2])?,
            belyi: parse(FILES[3], &texts[3])?,
            models: parse(FILES[4], &texts[4])?,
            qexp: parse(FILES[5], &texts[5])?,
            orders: parse(FILES[6], &texts[6])?,
        };
        let versions = [d.traces.version, d.groups.version, d.monodromy.version, d.belyi.version, d.models.version, d.qexp.version, d.orders.version];
        for (f, v) in FILES.iter().zip(versions) {
            check_version(f, v)?;
        }
        for case in Case::ALL {
            d.trace(case)?;
            d.group(case)?;
            d.triple(case)?;
            d.belyi_entry(case)?;
            d.model(case)?;
            d.series(case)?;
            d.order(case)?;
        }
        Ok(d)
    }

    pub fn embedded() -> ReferenceData {
        let texts = EMBEDDED.map(String::from);
        ReferenceData::from_texts(&texts).expect("embedded reference data is valid")
    }

    pub fn from_dir(dir: &Path) -> Result<ReferenceData, DataError> {
        let mut texts: [String; 7] = Default::default();
        for (t, f) in texts.iter_mut().zip(FILES) {
            let path = dir.join(f);
            *t = std::fs::read_to_string(&path).map_err(|source| DataError::Io { path, source })?;
        }
        ReferenceData::from_texts(&texts)
    }

    /// The explicit directory, else the environment override, else the embedded copy.
    pub fn load(dir: Option<&Path>) -> Result<ReferenceData, DataError> {
        match dir {
            Some(d) => Self::from_dir(d),
            None => match std::env::var_os(DATA_DIR_ENV) {
                Some(d) => Self::from_dir(Path::new(&d)),
                None => Ok(Self::embedded()),
            },
        }
    }

    pub fn trace(&self, case: Case) -> Result<&TraceEntry, DataError> {
        entry(FILES[0], &self.traces.entries, case, |e| e.case)
    }

    pub fn group(&self, case: Case) -> Result<&GroupEntry, DataError> {
        entry(FILES[1], &self.groups.entries, case, |e| e.case)
    }

    pub fn triple(&self, case: Case) -> Result<&MonodromyEntry, DataError> {
        entry(FILES[2], &self.monodromy.entries, case, |e| e.case)
    }

    pub fn belyi_entry(&self, case: Case) -> Result<&BelyiEntry, DataError> {
        entry(FILES[3], &self.belyi.entries, case, |e| e.case)
    }

    pub fn model(&self, case: Case) -> Result<&ModelEntry, DataError> {
        entry(FILES[4], &self.models.entries, case, |e| e.case)
    }

    pub fn series(&self, case: Case) -> Result<&QexpEntry, DataError> {
        entry(FILES[5], &self.qexp.entries, case, |e| e.case)
    }

    pub fn order(&self, case: Case) -> Result<&OrderEntry, DataError> {
        entry(FILES[6], &self.orders.entries, case, |e| e.case)
    }

    /// Serialized form of one file, for round-trip checks.
    pub fn to_texts(&self) -> [String; 7] {
        let j = |v: serde_json::Result<String>| v.expect("serializable");
        [
            j(serde_json::to_string_pretty(&self.traces)),
            j(serde_json::to_string_pretty(&self.groups)),
            j(serde_json::to_string_pretty(&self.monodromy)),
            j(serde_json::to_string_pretty(&self.belyi)),
            j(serde_json::to_string_pretty(&self.models)),
            j(serde_json::to_string_pretty(&self.qexp)),
            j(serde_json::to_string_pretty(&self.orders)),
        ]
    }
}
