//! Polynomial ring descriptors.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldSpec};
use super::order::MonomialOrder;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Serializable description of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub var_names: Vec<String>,
    pub order: MonomialOrder,
    /// Degree of each variable; all ones for the standard grading.
    pub grading: Vec<u32>,
}

impl RingSpec {
    pub fn n_vars(&self) -> usize {
        self.var_names.len()
    }
}

#[derive(Debug)]
struct RingData<F: Field> {
    field: F,
    names: Vec<String>,
    order: MonomialOrder,
    grading: Vec<u32>,
    standard: bool,
}

/// A polynomial ring `k[x_0, ..., x_n]` with a fixed order; cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring<F: Field>(Arc<RingData<F>>);

impl<F: Field> PartialEq for Ring<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.names == other.0.names
                && self.0.order == other.0.order
                && self.0.grading == other.0.grading)
    }
}

impl<F: Field> Eq for Ring<F> {}

impl<F: Field> Ring<F> {
    pub fn new(field: F, names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        let n = names.len();
        Self::with_grading(field, names, order, vec![1; n])
    }

    pub fn with_grading(field: F, names: Vec<String>, order: MonomialOrder, grading: Vec<u32>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidArgument("a ring needs at least one variable".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if !is_identifier(a) {
                return Err(Error::InvalidArgument(format!("`{a}` is not a valid variable name")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidArgument(format!("duplicate variable name `{a}`")));
            }
        }
        if grading.len() != names.len() {
            return Err(Error::InvalidArgument("grading length differs from variable count".into()));
        }
        order.validate(names.len())?;
        let standard = grading.iter().all(|&g| g == 1);
        Ok(Ring(Arc::new(RingData { field, names, order, grading, standard })))
    }

    /// Ring with variables `prefix0, ..., prefix{n-1}` and grevlex order.
    pub fn indexed(field: F, prefix: &str, n: usize) -> Self {
        let names = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(field, names, MonomialOrder::grevlex()).expect("valid indexed ring")
    }

    pub fn from_names(field: F, names: &[&str]) -> Result<Self> {
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), MonomialOrder::grevlex())
    }

    pub fn field(&self) -> &F {
        &self.0.field
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn grading(&self) -> &[u32] {
        &self.0.grading
    }

    pub fn is_standard_graded(&self) -> bool {
        self.0.standard
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        Polynomial::var(self, i)
    }

    pub fn vars(&self) -> Vec<Polynomial<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        Self::with_grading(self.0.field.clone(), self.0.names.clone(), order, self.0.grading.clone())
    }

    pub fn check_same(&self, other: &Ring<F>, context: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{context}: [{}] vs [{}]",
                self.0.names.join(","),
                other.0.names.join(",")
            )))
        }
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec {
            field: self.0.field.spec(),
            var_names: self.0.names.clone(),
            order: self.0.order.clone(),
            grading: self.0.grading.clone(),
        }
    }

    #[inline]
    pub fn cmp_monomials(&self, a: &[u8], b: &[u8]) -> std::cmp::Ordering {
        self.0.order.cmp(a, b)
    }
}

impl<F: Field> fmt::Display for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] ({})", self.0.field.spec(), self.0.names.join(", "), self.0.order)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
