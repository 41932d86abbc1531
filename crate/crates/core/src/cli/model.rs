//! The JSON model file: named varieties, maps, groups, sections, atlases and
//! correspondences over one base field.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::atlas::{AtlasManifold, ChartId};
use crate::basefield::BaseField;
use crate::dgroup::{parse_map, AffineAlgGroup, DGroupSection};
use crate::error::{Error, Result};
use crate::polyalg::{parse_poly, RatMap};
use crate::prolong::{AffineVariety, Correspondence};

/// JSON objects whose keys must be unique; serde_json alone keeps the last.
fn unique<'de, D, T>(d: D) -> std::result::Result<BTreeMap<String, T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    struct Unique<T>(PhantomData<T>);

    impl<'de, T: Deserialize<'de>> Visitor<'de> for Unique<T> {
        type Value = BTreeMap<String, T>;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("an object with unique keys")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((k, v)) = access.next_entry::<String, T>()? {
                if out.contains_key(&k) {
                    return Err(de::Error::custom(format!("duplicate name `{k}`")));
                }
                out.insert(k, v);
            }
            Ok(out)
        }
    }

    d.deserialize_map(Unique(PhantomData))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VarietySpec {
    vars: Vec<String>,
    #[serde(default)]
    gens: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapSpec {
    vars: Vec<String>,
    exprs: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    variety: String,
    mult: Vec<String>,
    inv: Vec<String>,
    identity: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SectionSpec {
    group: Option<String>,
    variety: Option<String>,
    sigma: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChartsSpec {
    Count(usize),
    Ids(Vec<ChartId>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AtlasSpec {
    dim: usize,
    charts: ChartsSpec,
    #[serde(deserialize_with = "unique")]
    transitions: BTreeMap<String, Vec<String>>,
    vars: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorrespondenceSpec {
    left: String,
    right: String,
    gens: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSpec {
    basefield: BaseField,
    #[serde(default, deserialize_with = "unique")]
    varieties: BTreeMap<String, VarietySpec>,
    #[serde(default, deserialize_with = "unique")]
    maps: BTreeMap<String, MapSpec>,
    #[serde(default, deserialize_with = "unique")]
    groups: BTreeMap<String, GroupSpec>,
    #[serde(default, deserialize_with = "unique")]
    sections: BTreeMap<String, SectionSpec>,
    #[serde(default, deserialize_with = "unique")]
    atlases: BTreeMap<String, AtlasSpec>,
    #[serde(default, deserialize_with = "unique")]
    correspondences: BTreeMap<String, CorrespondenceSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub vars: Vec<String>,
    pub map: RatMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionTarget {
    Group(String),
    Variety(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionEntry {
    pub target: SectionTarget,
    pub sigma: RatMap,
}

/// A fully resolved model: every expression parsed, every reference checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub field: BaseField,
    pub varieties: BTreeMap<String, AffineVariety>,
    pub maps: BTreeMap<String, NamedMap>,
    pub groups: BTreeMap<String, AffineAlgGroup>,
    pub sections: BTreeMap<String, SectionEntry>,
    pub atlases: BTreeMap<String, AtlasManifold>,
    pub correspondences: BTreeMap<String, Correspondence>,
}

fn context<'a>(what: &'a str, name: &'a str) -> impl Fn(Error) -> Error + 'a {
    move |e| Error::Model(format!("{what} `{name}`: {e}"))
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn default_chart_vars(dim: usize) -> Vec<String> {
    match dim {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=dim).map(|i| format!("x{i}")).collect(),
    }
}

fn chart_pair(key: &str) -> Option<(ChartId, ChartId)> {
    let (i, j) = key.split_once(',')?;
    Some((i.trim().parse().ok()?, j.trim().parse().ok()?))
}

impl Model {
    pub fn load(path: &Path) -> Result<Model> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Model(format!("cannot read `{}`: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Model> {
        let spec: ModelSpec = serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
        let field = spec.basefield;

        let mut varieties = BTreeMap::new();
        for (name, v) in &spec.varieties {
            let var = AffineVariety::parse(name.clone(), &strs(&v.vars), &strs(&v.gens), field).map_err(context("variety", name))?;
            varieties.insert(name.clone(), var);
        }

        let mut maps = BTreeMap::new();
        for (name, m) in &spec.maps {
            let map = parse_map(&m.exprs, &m.vars, field).map_err(context("map", name))?;
            maps.insert(name.clone(), NamedMap { vars: m.vars.clone(), map });
        }

        let lookup = |what: &str, owner: &str, v: &str| -> Result<AffineVariety> {
            varieties
                .get(v)
                .cloned()
                .ok_or_else(|| Error::Model(format!("{what} `{owner}` refers to unknown variety `{v}`")))
        };

        let mut groups = BTreeMap::new();
        for (name, g) in &spec.groups {
            let variety = lookup("group", name, &g.variety)?;
            let group = AffineAlgGroup::parse(name.clone(), variety, &strs(&g.mult), &strs(&g.inv), &strs(&g.identity))
                .map_err(context("group", name))?;
            groups.insert(name.clone(), group);
        }

        let mut sections = BTreeMap::new();
        for (name, s) in &spec.sections {
            let entry = match (&s.group, &s.variety) {
                (Some(g), None) => {
                    let group = groups
                        .get(g)
                        .ok_or_else(|| Error::Model(format!("section `{name}` refers to unknown group `{g}`")))?;
                    let sigma = parse_map(&s.sigma, group.variety.vars(), field).map_err(context("section", name))?;
                    DGroupSection::new(name.clone(), group, sigma.clone()).map_err(context("section", name))?;
                    SectionEntry { target: SectionTarget::Group(g.clone()), sigma }
                }
                (None, Some(v)) => {
                    let variety = lookup("section", name, v)?;
                    let sigma = parse_map(&s.sigma, variety.vars(), field).map_err(context("section", name))?;
                    if sigma.out_arity() != variety.ambient() {
                        return Err(Error::Model(format!(
                            "section `{name}`: expected {} components, found {}",
                            variety.ambient(),
                            sigma.out_arity()
                        )));
                    }
                    SectionEntry { target: SectionTarget::Variety(v.clone()), sigma }
                }
                _ => return Err(Error::Model(format!("section `{name}` needs exactly one of `group`, `variety`"))),
            };
            sections.insert(name.clone(), entry);
        }

        let mut atlases = BTreeMap::new();
        for (name, a) in &spec.atlases {
            let charts: Vec<ChartId> = match &a.charts {
                ChartsSpec::Count(k) => (1..=*k).collect(),
                ChartsSpec::Ids(ids) => ids.clone(),
            };
            let vars = a.vars.clone().unwrap_or_else(|| default_chart_vars(a.dim));
            if vars.len() != a.dim {
                return Err(Error::Model(format!("atlas `{name}`: {} variables for dimension {}", vars.len(), a.dim)));
            }
            let mut transitions = BTreeMap::new();
            for (key, exprs) in &a.transitions {
                let pair = chart_pair(key)
                    .ok_or_else(|| Error::Model(format!("atlas `{name}`: transition key `{key}` is not `i,j`")))?;
                transitions.insert(pair, parse_map(exprs, &vars, field).map_err(context("atlas", name))?);
            }
            atlases.insert(name.clone(), AtlasManifold::new(name.clone(), vars, charts, transitions, field)?);
        }

        let mut correspondences = BTreeMap::new();
        for (name, c) in &spec.correspondences {
            let left = lookup("correspondence", name, &c.left)?;
            let right = lookup("correspondence", name, &c.right)?;
            let vars: Vec<String> = left.vars().iter().chain(right.vars()).cloned().collect();
            let gens = c
                .gens
                .iter()
                .map(|g| parse_poly(g, &vars, field))
                .collect::<Result<Vec<_>>>()
                .map_err(context("correspondence", name))?;
            correspondences.insert(name.clone(), Correspondence::new(name.clone(), left, right, gens)?);
        }

        Ok(Model { field, varieties, maps, groups, sections, atlases, correspondences })
    }

    fn get<'a, T>(table: &'a BTreeMap<String, T>, what: &str, name: &str) -> Result<&'a T> {
        table.get(name).ok_or_else(|| Error::Model(format!("no {what} named `{name}`")))
    }

    pub fn variety(&self, name: &str) -> Result<&AffineVariety> {
        Self::get(&self.varieties, "variety", name)
    }

    pub fn map(&self, name: &str) -> Result<&NamedMap> {
        Self::get(&self.maps, "map", name)
    }

    pub fn group(&self, name: &str) -> Result<&AffineAlgGroup> {
        Self::get(&self.groups, "group", name)
    }

    pub fn section(&self, name: &str) -> Result<&SectionEntry> {
        Self::get(&self.sections, "section", name)
    }

    pub fn atlas(&self, name: &str) -> Result<&AtlasManifold> {
        Self::get(&self.atlases, "atlas", name)
    }

    pub fn correspondence(&self, name: &str) -> Result<&Correspondence> {
        Self::get(&self.correspondences, "correspondence", name)
    }
}
