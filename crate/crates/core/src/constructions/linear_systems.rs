//! Maps given by linear systems of plane curves, Veronese embeddings and
//! projections.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::graded::{combine, span_basis};
use crate::algebra::linalg::{sparse_from_dense, Echelon};
use crate::algebra::text::parse_field;
use crate::algebra::{Field, FieldSpec, Ideal, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::ratmap::RationalMap;

/// The map of `P^n` given by all monomials of degree `d`, in the order of
/// `monomials_of_graded_degree`.
pub fn veronese<F: Field>(field: &F, n: usize, d: u32) -> Result<RationalMap<F>> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("veronese needs n >= 1 and d >= 1".into()));
    }
    let ring = Ring::indexed(field.clone(), "x", n + 1);
    let forms: Vec<Polynomial<F>> = crate::algebra::ideal::monomials_of_graded_degree(&ring, d)
        .into_iter()
        .map(|e| Polynomial::monomial(&ring, field.one(), e))
        .collect();
    RationalMap::from_forms(forms, "y")
}

/// Linear forms vanishing at a point.
pub fn point_ideal<F: Field>(ring: &Ring<F>, point: &[F::Elem]) -> Result<Ideal<F>> {
    if point.len() != ring.nvars() || point.iter().all(|c| ring.field().is_zero(c)) {
        return Err(Error::InvalidArgument("not a point of the ambient space".into()));
    }
    let mut e = Echelon::new(ring.field(), ring.nvars());
    e.insert(&sparse_from_dense(ring.field(), point));
    let forms = e.nullspace().iter().map(|v| combine(ring, &ring.vars(), v)).collect();
    Ideal::new(ring, forms)
}

/// `∩ I(p)^m` over the given points with multiplicities.
pub fn fat_points_ideal<F: Field>(ring: &Ring<F>, points: &[(Vec<F::Elem>, u32)]) -> Result<Ideal<F>> {
    let mut acc: Option<Ideal<F>> = None;
    for (p, m) in points {
        let ip = point_ideal(ring, p)?;
        let mut power = Ideal::unit(ring);
        for _ in 0..*m {
            power = power.product(&ip)?;
        }
        acc = Some(match acc {
            None => power,
            Some(a) => a.intersect(&power)?,
        });
    }
    acc.ok_or_else(|| Error::InvalidArgument("no base points".into()))
}

/// The map of `P^2` (or `P^n`, following the points) given by a basis of
/// the degree-`d` forms vanishing to the given orders at the given points.
pub fn linear_system_map<F: Field>(
    ring: &Ring<F>,
    d: u32,
    base_points: &[(Vec<F::Elem>, u32)],
) -> Result<RationalMap<F>> {
    let forms = if base_points.is_empty() {
        crate::algebra::ideal::monomials_of_graded_degree(ring, d)
            .into_iter()
            .map(|e| Polynomial::monomial(ring, ring.field().one(), e))
            .collect()
    } else {
        fat_points_ideal(ring, base_points)?.graded_piece_basis(d)?
    };
    if forms.is_empty() {
        return Err(Error::InvalidArgument(format!("no forms of degree {d} through the base points")));
    }
    RationalMap::from_forms(forms, "y")
}

/// `[x^2, xy, xz, yz]`: the inverse of the projection of the quadric
/// `y0 y3 = y1 y2` from the point `(0:0:0:1)`.
pub fn quadric_surface_parameterization<F: Field>(field: &F) -> Result<RationalMap<F>> {
    let r = Ring::indexed(field.clone(), "x", 3);
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    RationalMap::from_forms(vec![&x * &x, &x * &y, &x * &z, &y * &z], "y")
}

/// The same map into the linear span of its image.
pub fn reduce_to_span<F: Field>(f: &RationalMap<F>) -> Result<RationalMap<F>> {
    let forms = span_basis(f.source(), f.forms(), f.degree())?;
    if forms.len() == f.forms().len() {
        return Ok(f.clone());
    }
    RationalMap::from_forms(forms, "y")
}

/// `f` followed by the projection from the span of the images of `points`.
///
/// The new forms are a basis of the combinations `sum c_i F_i` vanishing at
/// every point, so the target dimension drops by the number of points.
pub fn inner_projection<F: Field>(f: &RationalMap<F>, points: &[Vec<F::Elem>]) -> Result<RationalMap<F>> {
    let field = f.source().field();
    let m = f.target().nvars();
    let mut e = Echelon::new(field, m);
    for p in points {
        let v = f.evaluate(p);
        if v.iter().all(|c| field.is_zero(c)) {
            return Err(Error::InsideBaseLocus("projection point in the base locus".into()));
        }
        e.insert(&sparse_from_dense(field, &v));
    }
    if e.rank() != points.len() {
        return Err(Error::InvalidArgument(format!(
            "span too small: {} points span a space of dimension {}",
            points.len(),
            e.rank() as i64 - 1
        )));
    }
    if points.len() + 1 >= m {
        return Err(Error::InvalidArgument("projection center fills the target".into()));
    }
    let forms = e.nullspace().iter().map(|c| combine(f.source(), f.forms(), c)).collect();
    RationalMap::from_forms(forms, "y")
}

/// The map given by a basis of the quadrics of `I`.
pub fn quadrics_through<F: Field>(i: &Ideal<F>) -> Result<RationalMap<F>> {
    let q = i.graded_piece_basis(2)?;
    if q.is_empty() {
        return Err(Error::InvalidArgument("the ideal contains no quadrics".into()));
    }
    let m = RationalMap::from_forms(q, "y")?;
    m.with_grevlex_source()
}

/// A finite set of points read from a `points` document.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub coordinates: Vec<Vec<BigRational>>,
}

impl PointSet {
    /// Reads
    ///
    /// ```text
    /// points
    /// field: rational
    /// variables: x0, x1, x2
    /// coordinates:
    ///   [1, 0, 0],
    ///   [1, 1/2, 1]
    /// ```
    pub fn parse(src: &str) -> Result<PointSet> {
        let err = |line: usize, msg: &str| Error::Parse { line, column: 1, message: msg.to_string() };
        let mut lines = src.lines().enumerate().filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        match lines.next() {
            Some((_, l)) if l.trim() == "points" => {}
            Some((i, _)) => return Err(err(i + 1, "document must start with `points`")),
            None => return Err(err(1, "empty document")),
        }
        let mut field = None;
        let mut variables = None;
        let mut body = String::new();
        let mut in_body = false;
        for (i, l) in lines {
            if in_body {
                body.push_str(l);
                continue;
            }
            let Some((key, value)) = l.split_once(':') else {
                return Err(err(i + 1, "expected `key: value`"));
            };
            match key.trim() {
                "field" => field = Some(parse_field(value).map_err(|e| err(i + 1, &e.to_string()))?),
                "variables" => {
                    variables = Some(value.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect())
                }
                "coordinates" => {
                    in_body = true;
                    body.push_str(value);
                }
                other => return Err(err(i + 1, &format!("unknown key `{other}`"))),
            }
        }
        let field = field.ok_or_else(|| err(1, "missing `field:` line"))?;
        let variables: Vec<String> = variables.ok_or_else(|| err(1, "missing `variables:` line"))?;
        let mut coordinates = Vec::new();
        for chunk in body.split(']') {
            let chunk = chunk.trim().trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let inner = chunk.strip_prefix('[').ok_or_else(|| err(1, "expected `[` before a point"))?;
            let coords: Vec<BigRational> = inner.split(',').map(|c| parse_rational(c.trim())).collect::<Result<_>>()?;
            if coords.len() != variables.len() {
                return Err(err(1, &format!("point with {} coordinates in a space with {}", coords.len(), variables.len())));
            }
            coordinates.push(coords);
        }
        Ok(PointSet { field, variables, coordinates })
    }

    /// The points with coordinates mapped into `field`.
    pub fn points_over<F: Field>(&self, field: &F) -> Result<Vec<Vec<F::Elem>>> {
        self.coordinates
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| {
                        field
                            .from_ratio(c.numer(), c.denom())
                            .ok_or_else(|| Error::InvalidArgument(format!("denominator of {c} vanishes in the field")))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn ring<F: Field>(&self, field: F) -> Result<Ring<F>> {
        Ring::new(field, self.variables.clone(), crate::algebra::MonomialOrder::grevlex())
    }

    /// Saturated ideal of the reduced set of points.
    pub fn ideal<F: Field>(&self, ring: &Ring<F>) -> Result<Ideal<F>> {
        let pts: Vec<(Vec<F::Elem>, u32)> = self.points_over(ring.field())?.into_iter().map(|p| (p, 1)).collect();
        fat_points_ideal(ring, &pts)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse { line: 1, column: 1, message: format!("bad coordinate `{s}`") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::ratmap::homog_part_of_image;

    fn fp() -> PrimeField {
        PrimeField::new(31991).unwrap()
    }

    #[test]
    fn veronese_line_and_surface() {
        let v = veronese(&fp(), 1, 2).unwrap();
        assert_eq!(v.to_string(), "[x0^2, x0*x1, x1^2]");
        let v2 = veronese(&fp(), 2, 2).unwrap();
        assert_eq!(v2.target_dim(), 5);
        assert_eq!(homog_part_of_image(&v2, 2).unwrap().len(), 6);
    }

    #[test]
    fn plane_cubics_through_four_points() {
        let r = Ring::indexed(fp(), "x", 3);
        let f = fp();
        let pts: Vec<(Vec<u32>, u32)> =
            vec![(vec![1, 0, 0], 1), (vec![0, 1, 0], 1), (vec![0, 0, 1], 1), (vec![1, 1, 1], 1)];
        let pts: Vec<(Vec<u32>, u32)> =
            pts.into_iter().map(|(p, m)| (p.into_iter().map(|c| f.from_i64(c as i64)).collect(), m)).collect();
        let m = linear_system_map(&r, 3, &pts).unwrap();
        assert_eq!(m.forms().len(), 6);
    }

    #[test]
    fn quintics_with_a_double_point() {
        let r = Ring::indexed(fp(), "x", 3);
        let f = fp();
        let m = linear_system_map(&r, 5, &[(vec![f.one(), f.zero(), f.zero()], 2)]).unwrap();
        assert_eq!(m.forms().len(), 18);
        let m3 = linear_system_map(&r, 5, &[(vec![f.one(), f.zero(), f.zero()], 3)]).unwrap();
        assert_eq!(m3.forms().len(), 15);
    }

    #[test]
    fn projecting_a_conic_from_one_of_its_points() {
        let f = fp();
        let v = veronese(&f, 1, 2).unwrap();
        let p = inner_projection(&v, &[vec![f.one(), f.zero()]]).unwrap();
        assert_eq!(p.target_dim(), 1);
        // both forms share the factor x1
        for g in p.forms() {
            assert!(g.exact_div(&p.source().var(1)).is_ok());
        }
        let dup = inner_projection(&v, &[vec![f.one(), f.one()], vec![f.from_i64(2), f.from_i64(2)]]);
        assert!(matches!(dup, Err(Error::InvalidArgument(m)) if m.contains("span too small")));
    }

    #[test]
    fn quadric_parameterization_lands_on_the_quadric() {
        let q = quadric_surface_parameterization(&fp()).unwrap();
        let eqs = homog_part_of_image(&q, 2).unwrap();
        assert_eq!(eqs.len(), 1);
        assert!(["-y1*y2+y0*y3", "y1*y2-y0*y3"].contains(&eqs[0].to_string().as_str()), "{}", eqs[0]);
    }

    #[test]
    fn span_reduction() {
        let f = fp();
        let nu1 = crate::ratmap::compose(&veronese(&f, 3, 3).unwrap(), &quadric_surface_parameterization(&f).unwrap())
            .unwrap();
        assert_eq!(nu1.target_dim(), 19);
        assert_eq!(reduce_to_span(&nu1).unwrap().target_dim(), 15);
    }

    #[test]
    fn points_documents() {
        let src = "# three points\npoints\nfield: rational\nvariables: a, b, c\ncoordinates:\n  [1, 0, 0],\n  [0, 1/2, 1],\n  [1, 1, 1]\n";
        let ps = PointSet::parse(src).unwrap();
        assert_eq!(ps.coordinates.len(), 3);
        let r = ps.ring(fp()).unwrap();
        let i = ps.ideal(&r).unwrap();
        assert_eq!((i.dim().unwrap(), i.degree().unwrap()), (0, 3));
        assert!(PointSet::parse("points\nfield: rational\nvariables: a, b\ncoordinates: [1, 2, 3]").is_err());
    }
}
