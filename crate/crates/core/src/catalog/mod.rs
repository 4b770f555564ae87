//! Shipped presets: JSON presentation files embedded at build time, loaded into
//! typed bundles on demand.
//!
//! Layout: `presets/<id>.json` for catalog entries, `presets/variants/<id>.json`
//! for printed-convention variants and negative controls.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exprio::{build_tower, parse_poly, ExprError, LevelSpec, TowerError};
use crate::hopf::{HopfError, HopfStructure, HopfTables};
use crate::ncalg::{assert_confluent, NCPoly, NcError, OreTower};
use crate::poisson::{AlgebraMorphism, PoissonError, PoissonStructure};
use crate::scalars::{ParamRules, Parameter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown preset `{0}`")]
    Unknown(String),
    #[error("preset `{id}`: malformed JSON: {message}")]
    Json { id: String, message: String },
    #[error("preset `{id}`: {message}")]
    Invalid { id: String, message: String },
    #[error("preset `{0}`: extends chain too deep")]
    Cycle(String),
}

fn invalid(id: &str, e: impl std::fmt::Display) -> CatalogError {
    CatalogError::Invalid { id: id.to_string(), message: e.to_string() }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelFile {
    pub gen: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub invertible: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sigma: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub delta: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineTower {
    pub name: String,
    #[serde(default)]
    pub parameters: Vec<Parameter>,
    pub tower: Vec<LevelFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TowerRef {
    Name(String),
    Inline(InlineTower),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfFile {
    #[serde(default)]
    pub delta: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub counit: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub antipode: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub star: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    #[serde(default)]
    pub source: Option<TowerRef>,
    pub targets: Vec<TowerRef>,
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovarianceFile {
    pub group: String,
    pub ansatz: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    pub group: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebraFile {
    pub group: String,
    pub poisson: String,
    pub basis: Vec<String>,
}

/// On-disk preset format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetFile {
    pub name: String,
    pub description: String,
    pub anchor: String,
    #[serde(default)]
    pub extends: Option<String>,
    #[serde(default)]
    pub parameters: Vec<Parameter>,
    #[serde(default)]
    pub tower: Option<Vec<LevelFile>>,
    #[serde(default)]
    pub hopf: Option<HopfFile>,
    #[serde(default)]
    pub star: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub poisson: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub morphism: Option<MorphismFile>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default)]
    pub covariance: Option<CovarianceFile>,
    #[serde(default)]
    pub lie: Option<LieFile>,
    #[serde(default)]
    pub bialgebra: Option<BialgebraFile>,
}

#[derive(Clone, Debug)]
pub struct Covariance {
    pub group: String,
    pub ansatz: Vec<NCPoly>,
}

/// A loaded preset: the presentation plus whatever structure it attaches.
#[derive(Clone, Debug)]
pub struct Preset {
    pub id: String,
    pub description: String,
    pub anchor: String,
    /// sha256 of the canonical JSON text.
    pub digest: String,
    pub tower: Option<Arc<OreTower>>,
    pub hopf: Option<HopfStructure>,
    pub poisson: Option<PoissonStructure>,
    pub morphism: Option<AlgebraMorphism>,
    pub ideal: Vec<NCPoly>,
    pub covariance: Option<Covariance>,
    pub lie: Option<LieFile>,
    pub bialgebra: Option<BialgebraFile>,
}

impl Preset {
    pub fn tower(&self) -> Result<&Arc<OreTower>, CatalogError> {
        self.tower.as_ref().ok_or_else(|| invalid(&self.id, "no presentation"))
    }

    pub fn parse(&self, text: &str) -> Result<NCPoly, ExprError> {
        let t = self.tower.as_ref().ok_or_else(|| ExprError::UnknownSymbol(self.id.clone()))?;
        parse_poly(text, t)
    }
}

const CATALOG: &[(&str, &str)] = &[
    ("fun-e2", include_str!("../../presets/fun-e2.json")),
    ("std-poisson", include_str!("../../presets/std-poisson.json")),
    ("nonstd-poisson", include_str!("../../presets/nonstd-poisson.json")),
    ("plane-poisson", include_str!("../../presets/plane-poisson.json")),
    ("cylinder-poisson", include_str!("../../presets/cylinder-poisson.json")),
    ("qe2-nonstd", include_str!("../../presets/qe2-nonstd.json")),
    ("quantum-plane", include_str!("../../presets/quantum-plane.json")),
    ("quantum-cylinder", include_str!("../../presets/quantum-cylinder.json")),
    ("quotient-I", include_str!("../../presets/quotient-I.json")),
    ("quotient-circle", include_str!("../../presets/quotient-circle.json")),
    ("coaction-plane", include_str!("../../presets/coaction-plane.json")),
    ("coaction-cylinder", include_str!("../../presets/coaction-cylinder.json")),
    ("e2-lie", include_str!("../../presets/e2-lie.json")),
    ("std-bialg", include_str!("../../presets/std-bialg.json")),
    ("nonstd-bialg", include_str!("../../presets/nonstd-bialg.json")),
];

const VARIANTS: &[(&str, &str)] = &[
    ("std-poisson-printed", include_str!("../../presets/variants/std-poisson-printed.json")),
    ("nonstd-poisson-printed", include_str!("../../presets/variants/nonstd-poisson-printed.json")),
    ("qe2-printed", include_str!("../../presets/variants/qe2-printed.json")),
    ("qe2-corrupted", include_str!("../../presets/variants/qe2-corrupted.json")),
    ("fun-e2-bad-antipode", include_str!("../../presets/variants/fun-e2-bad-antipode.json")),
    ("coaction-plane-mirrored", include_str!("../../presets/variants/coaction-plane-mirrored.json")),
];

fn source_text(id: &str) -> Option<&'static str> {
    CATALOG.iter().chain(VARIANTS).find(|(k, _)| *k == id).map(|(_, v)| *v)
}

/// Canonical JSON (sorted keys, no whitespace) and its sha256 digest.
pub fn canonicalize(id: &str, text: &str) -> Result<(String, String), CatalogError> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CatalogError::Json { id: id.to_string(), message: e.to_string() })?;
    let canon = serde_json::to_string(&v).expect("value serializes");
    let digest = hex::encode(Sha256::digest(canon.as_bytes()));
    Ok((canon, digest))
}

pub fn parse_preset_file(id: &str, text: &str) -> Result<PresetFile, CatalogError> {
    serde_json::from_str(text).map_err(|e| CatalogError::Json { id: id.to_string(), message: e.to_string() })
}

/// One line per catalog entry, in stable order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresetInfo {
    pub id: String,
    pub description: String,
    pub anchor: String,
}

pub fn list_presets() -> Vec<PresetInfo> {
    CATALOG
        .iter()
        .map(|(id, text)| {
            let f = parse_preset_file(id, text).expect("shipped preset parses");
            PresetInfo { id: id.to_string(), description: f.description, anchor: f.anchor }
        })
        .collect()
}

pub fn list_variants() -> Vec<&'static str> {
    VARIANTS.iter().map(|(k, _)| *k).collect()
}

fn cache() -> &'static Mutex<HashMap<String, Arc<Preset>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Preset>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Loads a shipped preset (catalog entry or variant). Noncommutative catalog
/// presentations must pass the confluence check; variants are loaded as given
/// so that negative controls can be inspected.
pub fn get_preset(id: &str) -> Result<Arc<Preset>, CatalogError> {
    if let Some(p) = cache().lock().unwrap().get(id) {
        return Ok(p.clone());
    }
    let text = source_text(id).ok_or_else(|| CatalogError::Unknown(id.to_string()))?;
    let checked = CATALOG.iter().any(|(k, _)| *k == id);
    let p = Arc::new(Loader { depth: 0, check: checked }.load(id, text)?);
    cache().lock().unwrap().insert(id.to_string(), p.clone());
    Ok(p)
}

/// Loads an external presentation file; names it references resolve to shipped presets.
pub fn load_preset_str(text: &str) -> Result<Preset, CatalogError> {
    let f = parse_preset_file("<file>", text)?;
    Loader { depth: 0, check: true }.load(&f.name.clone(), text)
}

struct Loader {
    depth: usize,
    check: bool,
}

fn level_specs(levels: &[LevelFile]) -> Vec<LevelSpec> {
    levels
        .iter()
        .map(|l| LevelSpec {
            gen: l.gen.clone(),
            invertible: l.invertible,
            sigma: l.sigma.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
            delta: l.delta.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
        })
        .collect()
}

fn pairs(m: &BTreeMap<String, String>) -> Vec<(&str, &str)> {
    m.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
}

fn merge_params(id: &str, a: &[Parameter], b: &[Parameter]) -> Result<Vec<Parameter>, CatalogError> {
    let mut rules = ParamRules::from_params(a).map_err(|e| invalid(id, e))?;
    rules.merge(&ParamRules::from_params(b).map_err(|e| invalid(id, e))?).map_err(|e| invalid(id, e))?;
    let mut out = a.to_vec();
    for p in b {
        if !out.iter().any(|q| q.name == p.name) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

impl Loader {
    fn tower(&self, id: &str, name: &str, params: Vec<Parameter>, levels: &[LevelFile]) -> Result<Arc<OreTower>, CatalogError> {
        let t = build_tower(name, params, &level_specs(levels)).map_err(|e: TowerError| invalid(id, e))?;
        if self.check && !t.is_commutative() {
            assert_confluent(&t).map_err(|e: NcError| invalid(id, e))?;
        }
        Ok(Arc::new(t))
    }

    fn resolve(&self, id: &str, r: &TowerRef, own: Option<&Arc<OreTower>>) -> Result<Arc<OreTower>, CatalogError> {
        match r {
            TowerRef::Name(n) if n == "self" => own.cloned().ok_or_else(|| invalid(id, "`self` without a presentation")),
            TowerRef::Name(n) => {
                if self.depth > 8 {
                    return Err(CatalogError::Cycle(id.to_string()));
                }
                get_preset(n)?.tower.clone().ok_or_else(|| invalid(id, format!("`{}` has no presentation", n)))
            }
            TowerRef::Inline(t) => self.tower(id, &t.name, t.parameters.clone(), &t.tower),
        }
    }

    fn load(&self, id: &str, text: &str) -> Result<Preset, CatalogError> {
        let (_, digest) = canonicalize(id, text)?;
        let f = parse_preset_file(id, text)?;
        if f.name != id && source_text(id).is_some() {
            return Err(invalid(id, format!("file declares name `{}`", f.name)));
        }
        let base = match &f.extends {
            None => None,
            Some(b) => {
                if self.depth > 8 || b == id {
                    return Err(CatalogError::Cycle(id.to_string()));
                }
                Some(get_preset(b)?)
            }
        };
        // presentation: own, inherited (with extra parameters), or none
        let tower: Option<Arc<OreTower>> = match (&f.tower, &base) {
            (Some(levels), _) => {
                let params = match &base {
                    Some(b) => merge_params(id, b.tower.as_ref().map(|t| t.params()).unwrap_or(&[]), &f.parameters)?,
                    None => f.parameters.clone(),
                };
                Some(self.tower(id, &f.name, params, levels)?)
            }
            (None, Some(b)) => match &b.tower {
                Some(t) if f.parameters.is_empty() => Some(t.clone()),
                Some(t) => Some(Arc::new(t.with_params(&f.parameters).map_err(|e| invalid(id, e))?)),
                None => None,
            },
            (None, None) => None,
        };
        let hopf = match (&f.hopf, &f.star, &tower) {
            (None, None, Some(t)) => match base.as_ref().and_then(|b| b.hopf.clone()) {
                Some(h) if Arc::ptr_eq(&h.tower, t) => Some(h),
                Some(h) => Some(reparse_hopf(id, &h, t)?),
                None => None,
            },
            (hf, star, Some(t)) => {
                let delta = hf.as_ref().and_then(|h| h.delta.as_ref()).map(pairs);
                let counit = hf.as_ref().and_then(|h| h.counit.as_ref()).map(pairs);
                let antipode = hf.as_ref().and_then(|h| h.antipode.as_ref()).map(pairs);
                let star = star.as_ref().or(hf.as_ref().and_then(|h| h.star.as_ref())).map(pairs);
                let tables = HopfTables {
                    delta: delta.as_deref(),
                    counit: counit.as_deref(),
                    antipode: antipode.as_deref(),
                    star: star.as_deref(),
                };
                Some(HopfStructure::parse(f.name.clone(), t.clone(), &tables).map_err(|e: HopfError| invalid(id, e))?)
            }
            (None, None, None) => None,
            (_, _, None) => return Err(invalid(id, "structure maps without a presentation")),
        };
        let poisson = match &f.poisson {
            None => None,
            Some(tab) => {
                let t = tower.clone().ok_or_else(|| invalid(id, "bracket without a presentation"))?;
                Some(PoissonStructure::parse(f.name.clone(), t, &pairs(tab)).map_err(|e: PoissonError| invalid(id, e))?)
            }
        };
        let mut tower = tower;
        let morphism = match &f.morphism {
            None => None,
            Some(m) => {
                let source = match &m.source {
                    None => tower.clone().ok_or_else(|| invalid(id, "morphism without a source"))?,
                    Some(r) => self.resolve(id, r, tower.as_ref())?,
                };
                let targets = m
                    .targets
                    .iter()
                    .map(|r| self.resolve(id, r, Some(&source)))
                    .collect::<Result<Vec<_>, _>>()?;
                if tower.is_none() {
                    tower = Some(source.clone());
                }
                Some(
                    AlgebraMorphism::parse(f.name.clone(), source, targets, &pairs(&m.images))
                        .map_err(|e| invalid(id, e))?,
                )
            }
        };
        let ideal = f
            .ideal
            .iter()
            .map(|s| parse_poly(s, tower.as_ref().expect("ideal needs a presentation")).map_err(|e| invalid(id, e)))
            .collect::<Result<Vec<_>, _>>()?;
        let covariance = match &f.covariance {
            None => None,
            Some(c) => {
                let t = tower.as_ref().ok_or_else(|| invalid(id, "covariance without a presentation"))?;
                let ansatz = c.ansatz.iter().map(|s| parse_poly(s, t).map_err(|e| invalid(id, e))).collect::<Result<_, _>>()?;
                Some(Covariance { group: c.group.clone(), ansatz })
            }
        };
        Ok(Preset {
            id: id.to_string(),
            description: f.description,
            anchor: f.anchor,
            digest,
            tower,
            hopf,
            poisson,
            morphism,
            ideal,
            covariance,
            lie: f.lie,
            bialgebra: f.bialgebra,
        })
    }
}

/// Re-elaborates inherited structure maps in a tower with extra parameters.
fn reparse_hopf(id: &str, h: &HopfStructure, t: &Arc<OreTower>) -> Result<HopfStructure, CatalogError> {
    let fmt = |p: &NCPoly| crate::exprio::format_poly(p, &h.tower);
    let names: Vec<String> = h.tower.gens().iter().map(|g| g.name.clone()).collect();
    let delta: Option<Vec<(String, String)>> = h.delta.as_ref().map(|d| {
        names.iter().enumerate().map(|(i, n)| (n.clone(), d.format(d.image(i)))).collect()
    });
    let counit: Option<Vec<(String, String)>> =
        h.counit.as_ref().map(|c| names.iter().zip(c).map(|(n, s)| (n.clone(), fmt(&NCPoly::constant(h.tower.len(), s.clone())))).collect());
    let antipode: Option<Vec<(String, String)>> =
        h.antipode.as_ref().map(|c| names.iter().zip(c).map(|(n, s)| (n.clone(), fmt(s))).collect());
    let star: Option<Vec<(String, String)>> =
        h.star.as_ref().map(|c| names.iter().zip(c).map(|(n, s)| (n.clone(), fmt(s))).collect());
    let (d, c, a, s) = (conv(&delta), conv(&counit), conv(&antipode), conv(&star));
    let tables = HopfTables { delta: d.as_deref(), counit: c.as_deref(), antipode: a.as_deref(), star: s.as_deref() };
    HopfStructure::parse(h.name.clone(), t.clone(), &tables).map_err(|e| invalid(id, e))
}

fn conv(v: &Option<Vec<(String, String)>>) -> Option<Vec<(&str, &str)>> {
    v.as_ref().map(|v| v.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect())
}

/// `(id, sha256)` of every shipped preset file, catalog first, then variants.
pub fn digests() -> Vec<(String, String)> {
    CATALOG
        .iter()
        .chain(VARIANTS)
        .map(|(id, text)| (id.to_string(), canonicalize(id, text).expect("shipped preset is JSON").1))
        .collect()
}
