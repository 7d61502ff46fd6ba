//! JSON documents for categories, lattices, topologies, sites, internal
//! lattices and finite spaces.

use std::collections::BTreeMap;

use demorgan_core::bits::BitSet;
use demorgan_core::error::Error;
use demorgan_core::fincat::{validate_category, Category, FinCategory, RawCategory};
use demorgan_core::indlat::InternalLattice;
use demorgan_core::lattice::{validate_lattice, FinLattice, FinPoset};
use demorgan_core::locale::{frame_to_site, space_frame};
use demorgan_core::site::{generated_sieve, saturate, GrothTopology};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum LatticeDoc {
    Downsets { downsets_of_poset: PosetDoc },
    Order(PosetDoc),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum TopologyDoc {
    Named(String),
    Basis { basis: BTreeMap<String, Vec<Vec<String>>> },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SiteDoc {
    Site {
        category: CategoryDoc,
        #[serde(default)]
        topology: Option<TopologyDoc>,
    },
    Frame {
        frame: LatticeDoc,
        #[serde(default)]
        topology: Option<TopologyDoc>,
    },
    Bare(CategoryDoc),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InternalLatticeDoc {
    pub base: CategoryDoc,
    #[serde(default)]
    pub topology: Option<TopologyDoc>,
    pub fibres: BTreeMap<String, LatticeDoc>,
    #[serde(default)]
    pub transitions: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FrameDoc {
    Space(SpaceDoc),
    Lattice(LatticeDoc),
    Site { frame: LatticeDoc },
}

/// A site as loaded, remembering the frame when it came from one.
#[derive(Clone, Debug)]
pub struct Site {
    pub category: FinCategory,
    pub topology: GrothTopology,
    pub frame: Option<FinLattice>,
}

pub fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("not a valid {what} document: {e}")))
}

pub fn category(doc: &CategoryDoc) -> Result<FinCategory, Error> {
    let raw = RawCategory {
        objects: doc.objects.clone(),
        morphisms: doc.morphisms.iter().map(|m| (m.id.clone(), m.dom.clone(), m.cod.clone())).collect(),
        identities: doc.identities.iter().map(|(o, m)| (o.clone(), m.clone())).collect(),
        composition: doc.composition.iter().map(|[g, f, r]| (g.clone(), f.clone(), r.clone())).collect(),
    };
    validate_category(&raw)
}

fn poset(doc: &PosetDoc) -> Result<FinPoset, Error> {
    let ix: BTreeMap<&str, usize> = doc.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    if ix.len() != doc.elements.len() {
        return Err(Error::InvalidInput("element names must be distinct".into()));
    }
    let find = |e: &str| ix.get(e).copied().ok_or_else(|| Error::UnknownName(e.to_string()));
    let pairs = doc
        .leq
        .iter()
        .map(|[a, b]| Ok((find(a)?, find(b)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    FinPoset::from_relation(doc.elements.clone(), &pairs)
}

pub fn lattice(doc: &LatticeDoc) -> Result<FinLattice, Error> {
    match doc {
        LatticeDoc::Order(p) => validate_lattice(&poset(p)?),
        LatticeDoc::Downsets { downsets_of_poset } => Ok(FinLattice::of_downsets(&poset(downsets_of_poset)?)),
    }
}

pub fn topology(c: &FinCategory, doc: Option<&TopologyDoc>) -> Result<GrothTopology, Error> {
    match doc {
        None => Ok(GrothTopology::trivial(c)),
        Some(TopologyDoc::Named(n)) if n == "trivial" => Ok(GrothTopology::trivial(c)),
        Some(TopologyDoc::Named(n)) if n == "joins" => Err(Error::InvalidInput(
            "the \"joins\" topology needs a frame site: {\"frame\": <lattice>, \"topology\": \"joins\"}".into(),
        )),
        Some(TopologyDoc::Named(n)) => Err(Error::InvalidInput(format!(
            "unknown topology \"{n}\"; use \"trivial\", \"joins\" or {{\"basis\": ...}}"
        ))),
        Some(TopologyDoc::Basis { basis }) => {
            let mut sieves = Vec::new();
            for (obj, families) in basis {
                let o = c.object_named(obj).ok_or_else(|| Error::UnknownName(obj.clone()))?;
                for fam in families {
                    let ms = fam
                        .iter()
                        .map(|m| c.morphism_named(m).ok_or_else(|| Error::UnknownName(m.clone())))
                        .collect::<Result<Vec<_>, Error>>()?;
                    sieves.push(generated_sieve(c, o, &ms)?);
                }
            }
            let j = saturate(c, &sieves);
            j.check_axioms(c)?;
            Ok(j)
        }
    }
}

pub fn site(doc: &SiteDoc) -> Result<Site, Error> {
    match doc {
        SiteDoc::Site { category: cd, topology: t } => {
            let c = category(cd)?;
            let j = topology(&c, t.as_ref())?;
            Ok(Site {
                category: c,
                topology: j,
                frame: None,
            })
        }
        SiteDoc::Bare(cd) => {
            let c = category(cd)?;
            Ok(Site {
                topology: GrothTopology::trivial(&c),
                category: c,
                frame: None,
            })
        }
        SiteDoc::Frame { frame, topology: t } => {
            let l = lattice(frame)?;
            let fs = frame_to_site(&l)?;
            let j = match t {
                None => fs.topology,
                Some(TopologyDoc::Named(n)) if n == "joins" => fs.topology,
                Some(other) => topology(&fs.site, Some(other))?,
            };
            Ok(Site {
                category: fs.site,
                topology: j,
                frame: Some(l),
            })
        }
    }
}

pub fn internal_lattice(doc: &InternalLatticeDoc) -> Result<InternalLattice, Error> {
    let c = category(&doc.base)?;
    let j = topology(&c, doc.topology.as_ref())?;
    let mut fibres = Vec::with_capacity(c.object_count());
    for o in 0..c.object_count() {
        let name = c.object_label(o);
        let d = doc
            .fibres
            .get(&name)
            .ok_or_else(|| Error::InvalidInput(format!("no fibre given for object {name}")))?;
        fibres.push(lattice(d)?);
    }
    if let Some(extra) = doc.fibres.keys().find(|k| c.object_named(k).is_none()) {
        return Err(Error::UnknownName(extra.clone()));
    }
    let mut transition = Vec::with_capacity(c.morphism_count());
    for f in 0..c.morphism_count() {
        let (src, dst) = (&fibres[c.cod(f)], &fibres[c.dom(f)]);
        let name = c.morphism_label(f);
        let t = match doc.transitions.get(&name) {
            None if c.is_identity(f) => (0..src.len()).collect(),
            None => return Err(Error::InvalidInput(format!("no transition given for {name}"))),
            Some(table) => (0..src.len())
                .map(|a| {
                    let key = src.label(a);
                    let v = table
                        .get(&key)
                        .ok_or_else(|| Error::InvalidInput(format!("transition {name} misses element {key}")))?;
                    dst.element_named(v).ok_or_else(|| Error::UnknownName(v.clone()))
                })
                .collect::<Result<Vec<_>, Error>>()?,
        };
        transition.push(t);
    }
    InternalLattice::new(c, j, fibres, transition)
}

pub fn space(doc: &SpaceDoc) -> Result<FinLattice, Error> {
    let ix: BTreeMap<&str, usize> = doc.points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
    if ix.len() != doc.points.len() {
        return Err(Error::InvalidInput("point names must be distinct".into()));
    }
    let opens = doc
        .opens
        .iter()
        .map(|o| {
            let idx = o
                .iter()
                .map(|p| ix.get(p.as_str()).copied().ok_or_else(|| Error::UnknownName(p.clone())))
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(BitSet::from_indices(doc.points.len(), idx))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    space_frame(&doc.points, &opens)
}

pub fn frame(doc: &FrameDoc) -> Result<FinLattice, Error> {
    match doc {
        FrameDoc::Space(s) => space(s),
        FrameDoc::Lattice(l) | FrameDoc::Site { frame: l } => lattice(l),
    }
}
