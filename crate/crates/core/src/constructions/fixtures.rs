//! The shipped fixtures and their expected invariants.

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::linear_systems::PointSet;
use crate::algebra::text::Document;
use crate::algebra::{Field, Ideal, Ring};
use crate::error::{Error, Result};
use crate::ratmap::RationalMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FixtureKind {
    Map,
    Ideal,
    Points,
}

/// Expected invariants; `None` means not asserted for this fixture.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Expected {
    /// `(degree, count)` of the defining forms or minimal generators.
    pub generators: Option<(u32, usize)>,
    /// Projective dimension and degree of the base locus (maps) or of the
    /// scheme itself.
    pub dim: Option<i64>,
    pub degree: Option<i128>,
    /// `a_j` with `P(t) = sum_j a_j binom(t + j, j)`.
    pub hilbert_binomial: Option<Vec<i128>>,
    pub components: Option<usize>,
    pub singular_support_dim: Option<i64>,
    /// The singular support is a linear space.
    pub singular_support_linear: Option<bool>,
    /// Name of the fixture holding the inverse map.
    pub inverse: Option<&'static str>,
    /// Number of points.
    pub points: Option<usize>,
    /// Dimension of the degree-4 part of the ideal.
    pub quartics: Option<usize>,
    /// Slow checks are opt-in.
    pub slow: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureRecord {
    pub name: &'static str,
    pub kind: FixtureKind,
    pub file: &'static str,
    #[serde(skip)]
    pub contents: &'static str,
    /// SHA-256 of `contents`, hex encoded.
    pub sha256: &'static str,
    /// Where the fixture comes from, mathematically.
    pub source: &'static str,
    pub expected: Expected,
}

impl FixtureRecord {
    /// Recomputes the checksum of the shipped text.
    pub fn checksum_ok(&self) -> bool {
        hex::encode(Sha256::digest(self.contents.as_bytes())) == self.sha256
    }

    pub fn document(&self) -> Result<Document> {
        Document::parse(self.contents)
    }

    /// The map, with integer coefficients reduced into `field`.
    pub fn map<F: Field>(&self, field: F) -> Result<RationalMap<F>> {
        if self.kind != FixtureKind::Map {
            return Err(Error::InvalidArgument(format!("fixture {} is not a map", self.name)));
        }
        RationalMap::from_document_over(&self.document()?, field)
    }

    /// The ideal; for the Edge fixture, in the coordinates of `P^8` with the
    /// hyperplane `t8 = 0` added.
    pub fn ideal<F: Field>(&self, field: F) -> Result<Ideal<F>> {
        match self.kind {
            FixtureKind::Ideal => {
                let doc = self.document()?;
                let ring = doc.ring_over(field)?;
                let mut gens = doc.polynomials(&ring)?;
                if self.name == EDGE {
                    gens.push(ring.var(ring.nvars() - 1));
                }
                Ideal::new(&ring, gens)
            }
            FixtureKind::Points => {
                let ps = self.points()?;
                ps.ideal(&ps.ring(field)?)
            }
            FixtureKind::Map => Err(Error::InvalidArgument(format!("fixture {} is a map", self.name))),
        }
    }

    /// Generators as written in the file, without the added hyperplane.
    pub fn generators<F: Field>(&self, field: F) -> Result<(Ring<F>, Vec<crate::algebra::Polynomial<F>>)> {
        let doc = self.document()?;
        let ring = doc.ring_over(field)?;
        let gens = doc.polynomials(&ring)?;
        Ok((ring, gens))
    }

    pub fn points(&self) -> Result<PointSet> {
        if self.kind != FixtureKind::Points {
            return Err(Error::InvalidArgument(format!("fixture {} is not a point set", self.name)));
        }
        PointSet::parse(self.contents)
    }
}

pub const CREMONA_P11: &str = "cremona-p11";
pub const CREMONA_P11_INVERSE: &str = "cremona-p11-inverse";
pub const CREMONA_P20: &str = "cremona-p20";
pub const CREMONA_P20_INVERSE: &str = "cremona-p20-inverse";
pub const EDGE: &str = "edge-variety";
pub const LAMBDA: &str = "lambda-points";

/// All shipped fixtures.
pub fn fixture_registry() -> Vec<FixtureRecord> {
    let p11_hilbert = vec![0, 0, 0, 0, 3, -11, 9];
    let p20_hilbert = vec![0, 0, 0, 0, 0, 0, 0, 0, 1, -12, 45, -66, 33];
    vec![
        FixtureRecord {
            name: CREMONA_P11,
            kind: FixtureKind::Map,
            file: "cremona_p11.map",
            contents: include_str!("../../data/cremona_p11.map"),
            sha256: "dff396153c3704f8c77ed79637f364e1f28ff6a4f07340572a47f94abc14e02f",
            source: "quadro-quadric Cremona transformation of P^11 from the quadrics through the image of P^2 by quartics through seven points",
            expected: Expected {
                generators: Some((2, 12)),
                dim: Some(6),
                degree: Some(9),
                hilbert_binomial: Some(p11_hilbert),
                components: Some(1),
                singular_support_dim: Some(2),
                singular_support_linear: Some(true),
                inverse: Some(CREMONA_P11_INVERSE),
                ..Default::default()
            },
        },
        FixtureRecord {
            name: CREMONA_P11_INVERSE,
            kind: FixtureKind::Map,
            file: "cremona_p11_inverse.map",
            contents: include_str!("../../data/cremona_p11_inverse.map"),
            sha256: "8900f14d36bfa8c01183ca4b29fb7a64be06c3a7f247895b03af96dafa2dadfd",
            source: "inverse of the P^11 transformation",
            expected: Expected { generators: Some((2, 12)), inverse: Some(CREMONA_P11), ..Default::default() },
        },
        FixtureRecord {
            name: CREMONA_P20,
            kind: FixtureKind::Map,
            file: "cremona_p20.map",
            contents: include_str!("../../data/cremona_p20.map"),
            sha256: "53d28ba15d27a617ed4f742c8975aebfb63b341485017254341bfea565fcdb62",
            source: "quadro-quadric Cremona transformation of P^20 from the quadrics through the image of P^8 by quadrics through the Edge threefold",
            expected: Expected {
                generators: Some((2, 21)),
                dim: Some(12),
                degree: Some(33),
                hilbert_binomial: Some(p20_hilbert),
                inverse: Some(CREMONA_P20_INVERSE),
                slow: true,
                ..Default::default()
            },
        },
        FixtureRecord {
            name: CREMONA_P20_INVERSE,
            kind: FixtureKind::Map,
            file: "cremona_p20_inverse.map",
            contents: include_str!("../../data/cremona_p20_inverse.map"),
            sha256: "d80c73172d4fe837fca58a38253d59479889391b1e3be61d30adaaf405cdff1b",
            source: "inverse of the P^20 transformation",
            expected: Expected { generators: Some((2, 21)), inverse: Some(CREMONA_P20), ..Default::default() },
        },
        FixtureRecord {
            name: EDGE,
            kind: FixtureKind::Ideal,
            file: "edge_variety.ideal",
            contents: include_str!("../../data/edge_variety.ideal"),
            sha256: "b5e808bd918cbd5cd58eb80a585d4429e9e2b3c93829016c724993ebd2d5c295",
            source: "residual intersection of P^1 x P^3 in P^7 with a quadric through one P^3 of the ruling",
            expected: Expected {
                generators: Some((2, 8)),
                dim: Some(3),
                degree: Some(7),
                ..Default::default()
            },
        },
        FixtureRecord {
            name: LAMBDA,
            kind: FixtureKind::Points,
            file: "lambda_points.pts",
            contents: include_str!("../../data/lambda_points.pts"),
            sha256: "90b26aa2b3d4ede11caa1761b079246f3704d3e5f76ce76dac4b14e7de26beea",
            source: "the seven points of P^2 with coordinates in {0, 1}",
            expected: Expected {
                generators: Some((3, 3)),
                dim: Some(0),
                degree: Some(7),
                points: Some(7),
                quartics: Some(8),
                ..Default::default()
            },
        },
    ]
}

/// Looks a fixture up by name.
pub fn fixture(name: &str) -> Result<FixtureRecord> {
    fixture_registry()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown fixture `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn registry_parses_and_checksums() {
        let reg = fixture_registry();
        assert_eq!(reg.len(), 6);
        let f = PrimeField::new(31991).unwrap();
        for r in &reg {
            assert!(r.checksum_ok(), "{}", r.name);
            match r.kind {
                FixtureKind::Map => {
                    let m = r.map(f.clone()).unwrap();
                    let (d, n) = r.expected.generators.unwrap();
                    assert_eq!((m.degree(), m.forms().len()), (d, n));
                }
                FixtureKind::Ideal | FixtureKind::Points => {
                    r.ideal(f.clone()).unwrap();
                }
            }
        }
        assert!(fixture("nothing").is_err());
    }
}
