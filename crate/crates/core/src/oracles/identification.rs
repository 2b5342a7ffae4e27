//! Checking that a map between presentations respects relations.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{Polynomial, VariableTable};
use crate::error::{Error, Result};
use crate::groebner::{GradedPresentation, GroebnerBasis};

/// Images of the generators of a source presentation, as polynomials over the
/// target ring.
#[derive(Clone, Debug)]
pub struct IdentificationMap {
    pub label: String,
    pub images: Vec<(String, Polynomial)>,
}

impl IdentificationMap {
    /// Parses `(generator, image)` pairs over `target`.
    pub fn parse(label: impl Into<String>, target: &Arc<VariableTable>, pairs: &[(&str, &str)]) -> Result<Self> {
        let images = pairs
            .iter()
            .map(|(g, img)| Ok((g.to_string(), Polynomial::parse(target, img)?)))
            .collect::<Result<_>>()?;
        Ok(IdentificationMap { label: label.into(), images })
    }

    pub fn image(&self, generator: &str) -> Option<&Polynomial> {
        self.images.iter().find(|(g, _)| g == generator).map(|(_, p)| p)
    }
}

/// One identity together with its normal form in the target quotient.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    /// What was checked, such as the source relation in text form.
    pub label: String,
    /// The polynomial whose normal form was taken.
    pub image: Polynomial,
    pub residue: Polynomial,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.label,
            "image": self.image.to_string(),
            "normal_form": self.residue.to_string(),
            "zero": self.holds(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct IdentificationReport {
    pub label: String,
    pub checks: Vec<IdentityCheck>,
}

impl IdentificationReport {
    /// Normal forms of labelled polynomials in the quotient by `target`.
    pub fn from_identities(
        label: impl Into<String>,
        target: &GroebnerBasis,
        identities: impl IntoIterator<Item = (String, Polynomial)>,
    ) -> Result<Self> {
        let checks = identities
            .into_iter()
            .map(|(label, image)| {
                let residue = target.normal_form(&image)?;
                Ok(IdentityCheck { label, image, residue })
            })
            .collect::<Result<_>>()?;
        Ok(IdentificationReport { label: label.into(), checks })
    }

    pub fn all_zero(&self) -> bool {
        self.checks.iter().all(|c| c.holds())
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "all_zero": self.all_zero(),
            "checks": self.checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Sends every relation of `source` through `map` and reduces it modulo
/// `target`. Nonzero residues are reported, not treated as errors.
pub fn verify_identification(
    map: &IdentificationMap,
    source: &GradedPresentation,
    target: &GroebnerBasis,
) -> Result<IdentificationReport> {
    let mut images = Vec::with_capacity(source.table.len());
    for (i, name) in source.table.names().iter().enumerate() {
        let img = map
            .image(name)
            .ok_or_else(|| Error::Map(format!("no image for generator `{name}`")))?;
        if **img.table() != **target.table() {
            return Err(Error::Map(format!("image of `{name}` is not over the target ring")));
        }
        if !img.is_zero() && (!img.is_homogeneous() || img.degree() != Some(source.table.weight(i))) {
            return Err(Error::Map(format!(
                "image of `{name}` must be homogeneous of weight {}",
                source.table.weight(i)
            )));
        }
        images.push(img.transfer(target.table())?);
    }
    let identities = source
        .relations
        .iter()
        .map(|r| Ok((r.to_string(), r.compose(&images)?)))
        .collect::<Result<Vec<_>>>()?;
    IdentificationReport::from_identities(map.label.clone(), target, identities)
}
