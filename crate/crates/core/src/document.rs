//! JSON input documents and the report shapes produced from them.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bimodule::{fuse_cosets, fuse_with, Multiplicity};
use crate::closure::{CompositumSystem, Derivation};
use crate::error::{Error, Result};
use crate::galois::{make_compositum, Compositum, GaloisContext};
use crate::numberfield::{fixed_field, RatPoly, Realization};
use crate::perm::{Permutation, Subgroup};

/// A permutation written either in one-line form `[1, 0, 2]` or as cycles
/// `"(0 1)"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermSpec {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermSpec {
    pub fn resolve(&self, degree: usize) -> Result<Permutation> {
        let p = match self {
            PermSpec::Images(v) => Permutation::new(v.clone())?,
            PermSpec::Cycles(s) => Permutation::from_cycles(degree, s)?,
        };
        if p.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: p.degree(),
            });
        }
        Ok(p)
    }
}

impl From<&Permutation> for PermSpec {
    fn from(p: &Permutation) -> Self {
        PermSpec::Images(p.images().to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositumSpec {
    pub source: String,
    pub target: String,
    pub phi: PermSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealizationSpec {
    Builtin {
        builtin: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
    Explicit {
        min_poly: RatPoly,
        automorphisms: Vec<RatPoly>,
        root_action: Vec<PermSpec>,
    },
}

impl RealizationSpec {
    pub fn build(&self, degree: usize) -> Result<Realization> {
        match self {
            RealizationSpec::Builtin { builtin, n } => match (builtin.as_str(), n) {
                ("cyclotomic", Some(n)) => Realization::cyclotomic(*n),
                ("cyclotomic", None) => {
                    Err(Error::Parse("cyclotomic realization needs `n`".into()))
                }
                ("s3_x3m2", _) => Realization::s3_x3m2(),
                (other, _) => Err(Error::UnsupportedRealization(other.to_string())),
            },
            RealizationSpec::Explicit {
                min_poly,
                automorphisms,
                root_action,
            } => {
                let action = root_action
                    .iter()
                    .map(|p| p.resolve(degree))
                    .collect::<Result<Vec<_>>>()?;
                Realization::explicit(min_poly.clone(), automorphisms.clone(), action)
            }
        }
    }
}

/// A Galois context with named fields and input composita.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub degree: usize,
    pub ambient_generators: Vec<PermSpec>,
    /// Field name to generators of its Galois group.
    pub fields: BTreeMap<String, Vec<PermSpec>>,
    #[serde(default)]
    pub composita: Vec<CompositumSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<RealizationSpec>,
}

impl ContextDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn context(&self, max_group_order: usize) -> Result<GaloisContext> {
        let gens = self
            .ambient_generators
            .iter()
            .map(|p| p.resolve(self.degree))
            .collect::<Result<Vec<_>>>()?;
        let label = self.label.clone().unwrap_or_else(|| "context".into());
        let ctx = GaloisContext::from_generators(label, self.degree, &gens, max_group_order)?;
        match &self.realization {
            Some(spec) => ctx.with_realization(Arc::new(spec.build(self.degree)?)),
            None => Ok(ctx),
        }
    }

    /// The unclosed system described by the document.
    pub fn system(&self, max_group_order: usize) -> Result<CompositumSystem> {
        let ctx = self.context(max_group_order)?;
        let mut sys = CompositumSystem::new(ctx.clone());
        for (id, gens) in &self.fields {
            let gens = gens
                .iter()
                .map(|p| p.resolve(self.degree))
                .collect::<Result<Vec<_>>>()?;
            sys.add_node(ctx.field_node(id.clone(), &gens)?)?;
        }
        for spec in &self.composita {
            let a = sys.node(&spec.source)?.clone();
            let b = sys.node(&spec.target)?.clone();
            let phi = spec.phi.resolve(self.degree)?;
            sys.add_compositum(make_compositum(&ctx, &a, &b, &phi)?, spec.label.clone())?;
        }
        Ok(sys)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub id: String,
    pub group_order: usize,
    pub generators: Vec<Permutation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositumReport {
    pub label: String,
    pub source: String,
    pub target: String,
    pub phi: Permutation,
    pub group_order: usize,
    pub deg_left: usize,
    pub deg_right: usize,
    pub derivation: Derivation,
}

#[derive(Clone, Debug, Serialize)]
pub struct CloseReport {
    pub context: String,
    pub ambient_order: usize,
    pub nodes: Vec<NodeReport>,
    pub size: usize,
    pub composita: Vec<CompositumReport>,
    pub fixed_point: bool,
    pub connected: bool,
}

impl CloseReport {
    pub fn new(closed: &CompositumSystem) -> Result<Self> {
        let nodes = closed
            .nodes()
            .map(|n| NodeReport {
                id: n.id().to_string(),
                group_order: n.group().order(),
                generators: n.group().generators().to_vec(),
            })
            .collect();
        let composita = closed
            .composita()
            .iter()
            .zip(closed.derivations())
            .map(|(v, d)| CompositumReport {
                label: closed.label_of(v),
                source: v.source().id().to_string(),
                target: v.target().id().to_string(),
                phi: v.rep().clone(),
                group_order: v.group().order(),
                deg_left: v.deg_left(),
                deg_right: v.deg_right(),
                derivation: d.clone(),
            })
            .collect();
        Ok(Self {
            context: closed.context().label().to_string(),
            ambient_order: closed.context().ambient().order(),
            nodes,
            size: closed.composita().len(),
            composita,
            fixed_point: closed.is_fixed_point()?,
            connected: closed.is_connected(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedFieldReport {
    pub node: String,
    pub degree: usize,
    pub min_poly: RatPoly,
}

/// The explicit base field seen from each node when the context is realized.
pub fn realized_base_fields(
    closed: &CompositumSystem,
    h: &BTreeMap<String, Subgroup>,
    seed: u64,
) -> Result<Option<Vec<FixedFieldReport>>> {
    let Some(real) = closed.context().realization() else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for (node, group) in h {
        let f = fixed_field(real, group, seed)?;
        out.push(FixedFieldReport {
            node: node.clone(),
            degree: f.degree(),
            min_poly: f.field.min_poly().clone(),
        });
    }
    Ok(Some(out))
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub middle: Permutation,
    pub compositum: String,
    /// `[k_X : ℚ]` for the compositum `X`, read off the ambient group.
    pub compositum_degree: usize,
    /// `[k_i : ℚ]` for the field summand.
    pub summand_degree: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuseReport {
    pub left: String,
    pub right: String,
    pub rule: Multiplicity,
    pub terms: Vec<(String, usize)>,
    pub summands: Vec<SummandReport>,
}

impl FuseReport {
    pub fn new(
        system: &CompositumSystem,
        v: &Compositum,
        w: &Compositum,
        rule: Multiplicity,
    ) -> Result<Self> {
        let order = system.context().ambient().order();
        let summands = fuse_cosets(v, w)?
            .into_iter()
            .map(|s| SummandReport {
                middle: s.middle,
                compositum: system.label_of(&s.compositum),
                compositum_degree: order / s.compositum.group().order(),
                summand_degree: order / s.summand_group.order(),
                multiplicity: match rule {
                    Multiplicity::Bimodule => s.multiplicity,
                    Multiplicity::PerCoset => 1,
                },
            })
            .collect();
        let terms = fuse_with(v, w, rule)?
            .terms()
            .iter()
            .map(|(x, m)| (system.label_of(x), *m))
            .collect();
        Ok(Self {
            left: system.label_of(v),
            right: system.label_of(w),
            rule,
            terms,
            summands,
        })
    }
}
