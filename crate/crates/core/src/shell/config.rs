//! Session configuration: field, indeterminates, ranking, bounds, output format.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constraints::ConstraintBounds;
use crate::diffpoly::{DiffRing, Ranking};
use crate::error::{Error, Result};
use crate::ground::FieldDescriptor;
use crate::ideals::{Bounds, DEFAULT_MAX_EXPONENT, DEFAULT_STEP_BUDGET};
use crate::splitting::TowerDescriptor;

use super::parse::{adjoin_extension, parse_field};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundsConfig {
    pub prolongation: Option<u32>,
    pub exponent: u32,
    pub budget: u64,
    pub rosenfeld: bool,
    pub h_order: Option<u32>,
    pub h_degree: u32,
    pub height: u32,
    pub max_candidates: usize,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        let c = ConstraintBounds::default();
        BoundsConfig {
            prolongation: None,
            exponent: DEFAULT_MAX_EXPONENT,
            budget: DEFAULT_STEP_BUDGET,
            rosenfeld: false,
            h_order: c.h_order,
            h_degree: c.h_degree,
            height: c.coefficient_height,
            max_candidates: c.max_candidates,
        }
    }
}

impl BoundsConfig {
    pub fn ideal(&self) -> Bounds {
        Bounds {
            max_prolongation: self.prolongation,
            max_exponent: self.exponent,
            step_budget: self.budget,
            rosenfeld_refutation: self.rosenfeld,
        }
    }

    pub fn constraint(&self) -> ConstraintBounds {
        ConstraintBounds {
            h_order: self.h_order,
            h_degree: self.h_degree,
            coefficient_height: self.height,
            max_candidates: self.max_candidates,
            ideal: self.ideal(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SessionConfig {
    /// Declaration such as `Q(t); d/dt t = 1`.
    pub field: String,
    /// Algebraic extensions `name: minimal polynomial`, adjoined in order.
    pub extensions: Vec<String>,
    /// Empty means: inferred from the expressions of each command.
    pub indeterminates: Vec<String>,
    pub ranking: String,
    pub bounds: BoundsConfig,
    pub output: OutputFormat,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            field: "Q".into(),
            extensions: Vec::new(),
            indeterminates: Vec::new(),
            ranking: "orderly".into(),
            bounds: BoundsConfig::default(),
            output: OutputFormat::Text,
        }
    }
}

impl SessionConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Usage(format!("config: {}", e.message())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn field_descriptor(&self) -> Result<Arc<FieldDescriptor>> {
        parse_field(&self.field)
    }

    /// The ground field followed by the declared algebraic extensions.
    pub fn tower(&self) -> Result<TowerDescriptor> {
        let mut t = TowerDescriptor::from_field(&*self.field_descriptor()?);
        for e in &self.extensions {
            t = adjoin_extension(&t, e)?;
        }
        Ok(t)
    }

    /// Ring over the configured field with the given indeterminates, and the configured ranking.
    pub fn ring(&self, field: Arc<FieldDescriptor>, names: &[String]) -> Result<(Arc<DiffRing>, Ranking)> {
        let ring = DiffRing::new(field, names)?;
        let ranking = Ranking::parse(&self.ranking, ring.names())?;
        Ok((ring, ranking))
    }
}
