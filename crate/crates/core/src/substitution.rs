//! Variable assignments realizing instances of an inequality.

use std::fmt;

use crate::expr::InfExpr;
use crate::ground::{GroundSet, Subset};
use crate::{Error, Result};

/// Maps each source variable to a (possibly empty) set of target variables.
/// An empty image stands for a deterministic variable.
#[derive(Clone, PartialEq, Eq)]
pub struct Substitution {
    source: GroundSet,
    target: GroundSet,
    images: Vec<Subset>,
}

impl Substitution {
    /// `images` must name every source label exactly once.
    pub fn new<S: AsRef<str>>(
        source: GroundSet,
        target: GroundSet,
        images: &[(S, Vec<S>)],
    ) -> Result<Self> {
        let mut slots: Vec<Option<Subset>> = vec![None; source.len()];
        for (label, image) in images {
            let i = source
                .index_of(label.as_ref())
                .ok_or_else(|| Error::UnknownLabel(label.as_ref().to_string()))?;
            if slots[i].is_some() {
                return Err(Error::InvalidSubstitution(format!(
                    "`{}` is assigned twice",
                    label.as_ref()
                )));
            }
            slots[i] = Some(target.subset_of(image)?);
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    Error::InvalidSubstitution(format!("`{}` has no image", source.label(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution { source, target, images })
    }

    pub fn from_masks(source: GroundSet, target: GroundSet, images: Vec<Subset>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidSubstitution(format!(
                "expected {} images, got {}",
                source.len(),
                images.len()
            )));
        }
        if images.iter().any(|s| !s.is_subset_of(target.full())) {
            return Err(Error::InvalidSubstitution("image outside the target ground set".into()));
        }
        Ok(Substitution { source, target, images })
    }

    /// Identity on `ground`.
    pub fn identity(ground: GroundSet) -> Self {
        let images = (0..ground.len()).map(Subset::singleton).collect();
        Substitution { source: ground.clone(), target: ground, images }
    }

    pub fn source(&self) -> &GroundSet {
        &self.source
    }

    pub fn target(&self) -> &GroundSet {
        &self.target
    }

    pub fn image(&self, i: usize) -> Subset {
        self.images[i]
    }

    pub fn images(&self) -> &[Subset] {
        &self.images
    }

    /// Image of a source subset: the union of its members' images.
    pub fn map_subset(&self, s: Subset) -> Subset {
        s.indices().fold(Subset::EMPTY, |acc, i| acc.union(self.images[i]))
    }

    /// `H(X_J) ↦ H(X_{∪ s(j)})`; terms mapping to the empty set vanish.
    pub fn apply(&self, c: &InfExpr) -> Result<InfExpr> {
        if c.ground() != &self.source {
            return Err(Error::GroundMismatch {
                left: c.ground().to_string(),
                right: self.source.to_string(),
            });
        }
        let mut out = InfExpr::zero(self.target.clone());
        for (s, coef) in c.terms() {
            out.add_h(self.map_subset(s), coef);
        }
        Ok(out)
    }

    /// `(source label, target labels)` pairs in source order.
    pub fn pairs(&self) -> Vec<(String, Vec<String>)> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let img = self.target.subset_labels(*s).into_iter().map(String::from).collect();
                (self.source.label(i).to_string(), img)
            })
            .collect()
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Substitution({self})")
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(l, img)| format!("{l}->{{{}}}", img.join(",")))
            .collect();
        f.write_str(&parts.join(" "))
    }
}
