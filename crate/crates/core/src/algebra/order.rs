//! Monomial orders on exponent vectors.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total order on exponent vectors refining divisibility.
///
/// `Block { split, .. }` compares the first `split` variables with `first` and
/// breaks ties on the rest with `second`, so any monomial containing one of the
/// leading variables is larger than every monomial free of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; the optional positive weights replace the
    /// total degree in the first comparison.
    Grevlex { weights: Option<Vec<u32>> },
    Lex,
    Block { split: usize, first: Box<MonomialOrder>, second: Box<MonomialOrder> },
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder::Grevlex { weights: None }
    }

    pub fn weighted_grevlex(weights: Vec<u32>) -> Self {
        MonomialOrder::Grevlex { weights: Some(weights) }
    }

    /// Elimination order for the first `split` variables, grevlex inside each block.
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block {
            split,
            first: Box::new(MonomialOrder::grevlex()),
            second: Box::new(MonomialOrder::grevlex()),
        }
    }

    /// Checks the order is well formed for `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::Grevlex { weights: Some(w) } => {
                if w.len() != nvars {
                    return Err(Error::InvalidArgument(format!(
                        "weight vector has {} entries for {nvars} variables",
                        w.len()
                    )));
                }
                if w.contains(&0) {
                    return Err(Error::InvalidArgument("grevlex weights must be positive".into()));
                }
                Ok(())
            }
            MonomialOrder::Grevlex { weights: None } | MonomialOrder::Lex => Ok(()),
            MonomialOrder::Block { split, first, second } => {
                if *split == 0 || *split >= nvars {
                    return Err(Error::InvalidArgument(format!(
                        "block split {split} out of range for {nvars} variables"
                    )));
                }
                first.validate(*split)?;
                second.validate(nvars - split)
            }
        }
    }

    /// Compares two exponent vectors of equal length.
    #[inline]
    pub fn cmp(&self, a: &[u8], b: &[u8]) -> Ordering {
        match self {
            MonomialOrder::Grevlex { weights } => {
                let (da, db) = match weights {
                    None => (
                        a.iter().map(|&e| e as u32).sum::<u32>(),
                        b.iter().map(|&e| e as u32).sum::<u32>(),
                    ),
                    Some(w) => (
                        a.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum(),
                        b.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum(),
                    ),
                };
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    other => return other,
                }
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return if a[i] < b[i] { Ordering::Greater } else { Ordering::Less };
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block { split, first, second } => {
                match first.cmp(&a[..*split], &b[..*split]) {
                    Ordering::Equal => second.cmp(&a[*split..], &b[*split..]),
                    other => other,
                }
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex { weights: None } => write!(f, "grevlex"),
            MonomialOrder::Grevlex { weights: Some(w) } => {
                let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "grevlex({})", ws.join(","))
            }
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block { split, first, second } => {
                write!(f, "block({split}; {first}; {second})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::grevlex();
        // x > y > z, and xz < y^2 in grevlex
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0, 0], &[0, 0, 1]), Ordering::Greater);
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_leading_variables() {
        let o = MonomialOrder::elimination(1);
        // s * (anything) beats any s-free monomial of higher degree
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 9, 9]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[0, 1, 1]), Ordering::Greater);
    }

    #[test]
    fn validation() {
        assert!(MonomialOrder::elimination(0).validate(3).is_err());
        assert!(MonomialOrder::elimination(3).validate(3).is_err());
        assert!(MonomialOrder::weighted_grevlex(vec![1, 0]).validate(2).is_err());
        assert!(MonomialOrder::weighted_grevlex(vec![1, 2]).validate(2).is_ok());
    }
}
