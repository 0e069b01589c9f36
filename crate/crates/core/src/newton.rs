//! Toric log resolutions of Newton-nondegenerate plane curves.
//!
//! The regular subdivision of the positive quadrant refined along the
//! normals of the Newton polygon gives a toric modification whose
//! exceptional divisors are the interior rays. Each ray `v` contributes
//! `a = min ⟨v, m⟩` over the support, `k = v₁ + v₂ - 1` and `b = ⟨v, g⟩`.

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{Echelon, MPoly, Rational, SparseRow, UPoly};
use crate::error::{Error, Result};
use crate::resolution::{DivisorRecord, ResolutionData};

pub type Point = (u32, u32);
pub type Ray = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NewtonFace {
    pub start: Point,
    pub end: Point,
    /// Primitive inward normal, both coordinates positive.
    pub normal: Ray,
}

impl NewtonFace {
    /// Number of lattice segments on the face.
    pub fn lattice_length(&self) -> u32 {
        (self.end.0 - self.start.0).gcd(&(self.start.1 - self.end.1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NewtonPolygon2D {
    pub support: Vec<Point>,
    /// Vertices of the compact boundary, left to right.
    pub vertices: Vec<Point>,
    pub faces: Vec<NewtonFace>,
}

impl NewtonPolygon2D {
    /// `min ⟨v, m⟩` over the support.
    pub fn order_along(&self, v: Ray) -> u32 {
        self.support.iter().map(|&m| pair(v, m)).min().unwrap_or(0)
    }
}

fn pair(v: Ray, m: Point) -> u32 {
    v.0 * m.0 + v.1 * m.1
}

fn det(l: Ray, r: Ray) -> i64 {
    l.0 as i64 * r.1 as i64 - l.1 as i64 * r.0 as i64
}

fn check_two_vars(f: &MPoly) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::VariableMismatch {
            expected: 2,
            found: f.nvars(),
        });
    }
    Ok(())
}

pub fn newton_polygon(f: &MPoly) -> Result<NewtonPolygon2D> {
    check_two_vars(f)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NonvanishingAtOrigin);
    }
    let mut support: Vec<Point> = f.support().map(|e| (e[0], e[1])).collect();
    support.sort_unstable();

    // Lowest point in each column, then the lower hull up to the first
    // point of minimal height.
    let mut columns: Vec<Point> = Vec::new();
    for &p in &support {
        if columns.last().is_none_or(|q| q.0 != p.0) {
            columns.push(p);
        }
    }
    let mut hull: Vec<Point> = Vec::new();
    for &p in &columns {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.0 as i64 - o.0 as i64) * (p.1 as i64 - o.1 as i64)
                - (a.1 as i64 - o.1 as i64) * (p.0 as i64 - o.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let ymin = columns.iter().map(|p| p.1).min().unwrap();
    let cut = hull.iter().position(|p| p.1 == ymin).unwrap();
    hull.truncate(cut + 1);

    let faces = hull
        .windows(2)
        .map(|w| {
            let (p, q) = (w[0], w[1]);
            let (n1, n2) = (p.1 - q.1, q.0 - p.0);
            let g = n1.gcd(&n2);
            NewtonFace {
                start: p,
                end: q,
                normal: (n1 / g, n2 / g),
            }
        })
        .collect();
    Ok(NewtonPolygon2D {
        support,
        vertices: hull,
        faces,
    })
}

/// Coefficients of `f` along a face, one per lattice point from `start`.
fn face_polynomial(f: &MPoly, face: &NewtonFace) -> UPoly {
    let len = face.lattice_length();
    let u = (face.end.0 - face.start.0) / len;
    let w = (face.start.1 - face.end.1) / len;
    UPoly::new(
        (0..=len)
            .map(|t| f.coeff(&[face.start.0 + t * u, face.start.1 - t * w]))
            .collect(),
    )
}

/// Whether every face polynomial is free of critical points on the torus,
/// i.e. its one-variable reduction is squarefree.
pub fn nondegeneracy_check(f: &MPoly, np: &NewtonPolygon2D) -> bool {
    np.faces
        .iter()
        .all(|face| face_polynomial(f, face).is_squarefree())
}

/// Whether `f ∈ ℚ[x, y]` has no repeated factor.
pub fn is_reduced(f: &MPoly) -> Result<bool> {
    check_two_vars(f)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dy = f.degree_in(1);
    let coeffs: Vec<UPoly> = (0..=dy).map(|j| y_coefficient(f, j)).collect();
    let content = coeffs.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c));
    if !content.is_squarefree() {
        return Ok(false);
    }
    if dy == 0 {
        return Ok(true);
    }
    Ok(!discriminant_vanishes(&coeffs))
}

/// Coefficient of `y^j` as a polynomial in `x`.
fn y_coefficient(f: &MPoly, j: u32) -> UPoly {
    let dx = f.degree_in(0);
    UPoly::new((0..=dx).map(|i| f.coeff(&[i, j])).collect())
}

/// Whether `Res_y(f, ∂_y f)` is identically zero in `x`, tested by
/// evaluating the Sylvester matrix at more points than its degree.
fn discriminant_vanishes(coeffs: &[UPoly]) -> bool {
    let n = coeffs.len() - 1;
    let dx = coeffs.iter().filter_map(UPoly::degree).max().unwrap_or(0);
    let size = 2 * n - 1;
    let points = size * dx + 1;
    (0..=points).all(|x0| {
        let x = Rational::integer(x0 as i64);
        let p: Vec<Rational> = coeffs.iter().map(|c| c.eval(&x)).collect();
        let dp: Vec<Rational> = (1..=n)
            .map(|j| &p[j] * &Rational::integer(j as i64))
            .collect();
        sylvester_rank(&p, &dp) < size
    })
}

/// Rank of the Sylvester matrix of `p` (degree `n`) and `dp` (degree
/// `n - 1`), both given with ascending coefficients.
fn sylvester_rank(p: &[Rational], dp: &[Rational]) -> usize {
    let n = p.len() - 1;
    let size = 2 * n - 1;
    let mut rows: Vec<SparseRow> = Vec::with_capacity(size);
    for shift in 0..n - 1 {
        rows.push(shifted_row(p, shift));
    }
    for shift in 0..n {
        rows.push(shifted_row(dp, shift));
    }
    Echelon::new(size, rows).rank()
}

fn shifted_row(c: &[Rational], shift: usize) -> SparseRow {
    c.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i + shift, v.clone()))
        .collect()
}

/// Rays `e₁`, the face normals by angle, `e₂`, with every cone then
/// subdivided until unimodular.
pub fn regular_fan(np: &NewtonPolygon2D) -> Vec<Ray> {
    let mut rays: Vec<Ray> = vec![(1, 0)];
    let mut normals: Vec<Ray> = np.faces.iter().map(|f| f.normal).collect();
    normals.sort_by(|&v, &w| 0.cmp(&det(v, w)));
    normals.dedup();
    rays.extend(normals);
    if np.faces.is_empty() && np.vertices.iter().all(|p| p.0 > 0 && p.1 > 0) {
        rays.push((1, 1));
    }
    rays.push((0, 1));
    refine_fan(&rays)
}

/// Subdivides each cone between consecutive rays until every adjacent
/// pair has determinant 1. Rays must be primitive and ordered by angle.
pub fn refine_fan(rays: &[Ray]) -> Vec<Ray> {
    let mut out = vec![rays[0]];
    for w in rays.windows(2) {
        let mut l = w[0];
        let r = w[1];
        loop {
            let d = det(l, r);
            debug_assert!(d > 0);
            if d == 1 {
                break;
            }
            // The ray next to `l` is (r + p l)/d with 0 < p < d.
            let next = (1..d)
                .find_map(|p| {
                    let x = r.0 as i64 + p * l.0 as i64;
                    let y = r.1 as i64 + p * l.1 as i64;
                    (x % d == 0 && y % d == 0).then(|| ((x / d) as u32, (y / d) as u32))
                })
                .expect("cone of positive determinant has an interior lattice ray");
            out.push(next);
            l = next;
        }
        out.push(r);
    }
    out
}

/// Records of the toric modification given by `fan`. `g` is the exponent
/// pair of a monomial.
pub fn resolution_from_fan(
    f: &MPoly,
    np: &NewtonPolygon2D,
    g: [u32; 2],
    fan: &[Ray],
) -> ResolutionData {
    let gp = (g[0], g[1]);
    let mut divisors = Vec::new();
    for &v in fan {
        let a = np.order_along(v);
        let b = pair(v, gp);
        let axis = v.0 == 0 || v.1 == 0;
        if axis {
            if a > 0 || b > 0 {
                divisors.push(DivisorRecord::new(ray_label(v), a, 0, b, false));
            }
        } else {
            divisors.push(DivisorRecord::new(ray_label(v), a, v.0 + v.1 - 1, b, true));
        }
    }
    if f.as_monomial().is_none() {
        divisors.push(DivisorRecord::new("strict", 1, 0, 0, false));
    }
    ResolutionData::new(divisors, true, true)
}

fn ray_label(v: Ray) -> String {
    format!("ray({},{})", v.0, v.1)
}

/// Resolution data for a nondegenerate reduced `f` and monomial `g`.
pub fn resolution_from_newton(f: &MPoly, g: [u32; 2]) -> Result<ResolutionData> {
    let np = newton_polygon(f)?;
    if !nondegeneracy_check(f, &np) {
        return Err(Error::DegenerateInput);
    }
    if !is_reduced(f)? {
        return Err(Error::NonReduced);
    }
    Ok(resolution_from_fan(f, &np, g, &regular_fan(&np)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn p(s: &str) -> MPoly {
        parse_polynomial(s, 2).unwrap()
    }

    fn records(res: &ResolutionData) -> Vec<(&str, u32, u32, u32, bool)> {
        res.divisors
            .iter()
            .map(|d| (d.label.as_str(), d.a, d.k, d.b, d.exceptional))
            .collect()
    }

    #[test]
    fn polygons() {
        let np = newton_polygon(&p("x^2+y^3")).unwrap();
        assert_eq!(np.faces.len(), 1);
        assert_eq!(np.faces[0].normal, (3, 2));

        let np = newton_polygon(&p("x*y")).unwrap();
        assert!(np.faces.is_empty());
        assert_eq!(np.vertices, vec![(1, 1)]);

        let np = newton_polygon(&p("x^2+x*y+y^2")).unwrap();
        assert_eq!(np.faces.len(), 1);
        assert_eq!(np.faces[0].normal, (1, 1));
        assert_eq!(np.faces[0].lattice_length(), 2);

        let np = newton_polygon(&p("y^4+x*y+x^5+x^3*y^3")).unwrap();
        let normals: Vec<Ray> = np.faces.iter().map(|f| f.normal).collect();
        assert_eq!(normals, vec![(3, 1), (1, 4)]);
    }

    #[test]
    fn polygon_errors() {
        assert_eq!(
            newton_polygon(&MPoly::zero(2)).unwrap_err(),
            Error::ZeroPolynomial
        );
        assert_eq!(
            newton_polygon(&p("x+1")).unwrap_err(),
            Error::NonvanishingAtOrigin
        );
        assert!(matches!(
            newton_polygon(&MPoly::var(1, 0)),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn normals_reproduce_face_orders() {
        let np = newton_polygon(&p("x^5+x^2*y+y^3+x*y^7")).unwrap();
        for face in &np.faces {
            let a = np.order_along(face.normal);
            assert_eq!(pair(face.normal, face.start), a);
            assert_eq!(pair(face.normal, face.end), a);
        }
    }

    #[test]
    fn nondegeneracy() {
        for (s, expect) in [
            ("x^2+y^3", true),
            ("x^2+2*x*y+y^2", false),
            ("x^2+y^2", true),
            ("x^2+x*y+2*y^2", true),
            ("x*y", true),
        ] {
            let f = p(s);
            assert_eq!(
                nondegeneracy_check(&f, &newton_polygon(&f).unwrap()),
                expect,
                "{s}"
            );
        }
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&p("x^2+y^3")).unwrap());
        assert!(is_reduced(&p("x*y")).unwrap());
        assert!(!is_reduced(&p("x^2*y")).unwrap());
        assert!(!is_reduced(&p("(x+y^2)^2*x")).unwrap());
        assert!(!is_reduced(&p("x^2")).unwrap());
        assert!(is_reduced(&p("x*(x-1)")).unwrap());
        assert!(!is_reduced(&p("(x-y)^2*(x+y)")).unwrap());
        assert!(is_reduced(&p("x*y*(x+y)")).unwrap());
    }

    #[test]
    fn cusp_resolution() {
        let res = resolution_from_newton(&p("x^2+y^3"), [0, 0]).unwrap();
        assert_eq!(
            records(&res),
            vec![
                ("ray(2,1)", 3, 2, 0, true),
                ("ray(3,2)", 6, 4, 0, true),
                ("ray(1,1)", 2, 1, 0, true),
                ("strict", 1, 0, 0, false),
            ]
        );
        assert!(res.reduced && res.strict_transform_smooth);

        let res = resolution_from_newton(&p("x^2+y^3"), [1, 0]).unwrap();
        assert_eq!(res.divisors[0].label, "ray(1,0)");
        assert_eq!((res.divisors[0].a, res.divisors[0].b), (0, 1));
        assert_eq!(res.min_twisted_quotient().unwrap(), Rational::one());
    }

    #[test]
    fn normal_crossing_resolution() {
        let res = resolution_from_newton(&p("x*y"), [0, 0]).unwrap();
        assert_eq!(
            records(&res),
            vec![
                ("ray(1,0)", 1, 0, 0, false),
                ("ray(1,1)", 2, 1, 0, true),
                ("ray(0,1)", 1, 0, 0, false),
            ]
        );
    }

    #[test]
    fn conic_resolution() {
        let res = resolution_from_newton(&p("x^2+y^2"), [0, 0]).unwrap();
        assert_eq!(
            records(&res),
            vec![("ray(1,1)", 2, 1, 0, true), ("strict", 1, 0, 0, false)]
        );
    }

    #[test]
    fn resolution_errors() {
        assert_eq!(
            resolution_from_newton(&p("x^2+2*x*y+y^2"), [0, 0]).unwrap_err(),
            Error::DegenerateInput
        );
        assert_eq!(
            resolution_from_newton(&p("x^2*y"), [0, 0]).unwrap_err(),
            Error::NonReduced
        );
    }

    #[test]
    fn refinement_is_unimodular() {
        for rays in [
            vec![(1, 0), (1, 3), (0, 1)],
            vec![(1, 0), (7, 5), (2, 9), (0, 1)],
            vec![(1, 0), (0, 1)],
        ] {
            let fan = refine_fan(&rays);
            assert!(fan.windows(2).all(|w| det(w[0], w[1]) == 1), "{fan:?}");
            for r in &rays {
                assert!(fan.contains(r));
            }
        }
    }
}
