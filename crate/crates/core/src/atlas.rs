//! Builders for standard diagrams and the stabilization move.

use std::collections::BTreeSet;

use num_integer::Integer;
use thiserror::Error;

use crate::diagram::{
    CircleSelection, CurveListing, CurveSystemInput, Dart, DiagramError, HeegaardDiagram, Locator,
    RegionDirective, Side, Sign, Span,
};
use crate::grading::{enumerate_generators, Generator, GradingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtlasError {
    #[error("torus diagram needs p >= 1, got {0}")]
    NonPositive(i64),
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

/// A diagram with an optional distinguished generator and a record of how it
/// was built.
#[derive(Clone, Debug)]
pub struct MarkedDiagram {
    pub diagram: HeegaardDiagram,
    pub contact: Option<Generator>,
    pub provenance: String,
}

impl MarkedDiagram {
    pub fn plain(diagram: HeegaardDiagram, provenance: impl Into<String>) -> Self {
        MarkedDiagram {
            diagram,
            contact: None,
            provenance: provenance.into(),
        }
    }
}

fn name(i: usize) -> String {
    format!("x{i}")
}

fn single_curves(
    signs: &[Sign],
    beta_order: &[usize],
    basepoint: Locator,
    regions: Vec<RegionDirective>,
) -> Result<HeegaardDiagram, DiagramError> {
    let names: Vec<String> = (0..signs.len()).map(name).collect();
    let alpha: Vec<(&str, Sign)> = names.iter().map(String::as_str).zip(signs.iter().copied()).collect();
    let beta: Vec<&str> = beta_order.iter().map(|&i| names[i].as_str()).collect();
    let input = CurveSystemInput::from_listings(
        1,
        vec![CurveListing::alpha("a0", &alpha)],
        vec![CurveListing::beta("b0", &beta)],
        basepoint,
        regions,
    )?;
    HeegaardDiagram::assemble(input)
}

/// Genus-one diagram of the lens space `L(p, q)`: beta meets alpha `p` times,
/// visiting the alpha points in steps of `q`.
pub fn build_torus_diagram(p: i64, q: i64) -> Result<MarkedDiagram, AtlasError> {
    if p < 1 {
        return Err(AtlasError::NonPositive(p));
    }
    if p.gcd(&q) != 1 {
        return Err(AtlasError::NotCoprime { p, q });
    }
    let n = p as usize;
    let step = q.rem_euclid(p) as usize;
    let order: Vec<usize> = (0..n).map(|k| (k * step) % n).collect();
    let diagram = single_curves(
        &vec![Sign::Positive; n],
        &order,
        Locator::new("a0", "x0", Side::LeftAfter),
        Vec::new(),
    )?;
    Ok(MarkedDiagram::plain(diagram, format!("torus({p},{q})")))
}

/// Two points of opposite sign; the two circles that are not bigons bound
/// a single annulus.
fn two_point_diagram(basepoint: Locator) -> Result<HeegaardDiagram, DiagramError> {
    let annulus = RegionDirective {
        name: "annulus".into(),
        genus: 0,
        circles: CircleSelection::Listed(vec![
            Locator::new("a0", "x0", Side::RightAfter),
            Locator::new("a0", "x1", Side::LeftAfter),
        ]),
        span: Span::default(),
    };
    single_curves(&[Sign::Positive, Sign::Negative], &[0, 1], basepoint, vec![annulus])
}

/// Genus-one diagram of `S^1 x S^2` with two bigons; the basepoint lies in
/// the annulus.
pub fn build_s1s2() -> Result<MarkedDiagram, AtlasError> {
    let d = two_point_diagram(Locator::new("a0", "x0", Side::RightAfter))?;
    Ok(MarkedDiagram::plain(d, "s1s2"))
}

/// Diagram of the open book with annulus page and monodromy the `n`-th power
/// of the boundary Dehn twist. `x0` is the point where the arc meets its
/// image inside the page; it is the marked contact generator. The remaining
/// points come from the twisting, all of one sign.
pub fn build_annulus_open_book(n: i64) -> Result<MarkedDiagram, AtlasError> {
    let basepoint = Locator::new("b0", "x0", Side::LeftAfter);
    let diagram = if n == 0 {
        two_point_diagram(basepoint)?
    } else {
        let (count, sign) = if n > 0 {
            (n as usize, Sign::Positive)
        } else {
            (n.unsigned_abs() as usize + 2, Sign::Negative)
        };
        let mut signs = vec![sign; count];
        signs[0] = Sign::Positive;
        let order: Vec<usize> = (0..count).collect();
        single_curves(&signs, &order, basepoint, Vec::new())?
    };
    let x0 = diagram.vertex_id("x0").expect("builder names x0");
    let contact = Generator::new(&diagram, vec![x0])?;
    Ok(MarkedDiagram {
        diagram,
        contact: Some(contact),
        provenance: format!("openbook-annulus({n})"),
    })
}

fn fresh(used: &BTreeSet<String>, prefix: &str, start: usize) -> String {
    (start..)
        .map(|i| format!("{prefix}{i}"))
        .find(|s| !used.contains(s))
        .expect("unbounded search")
}

/// Connected sum with the one-point torus diagram of `S^3`, performed inside
/// the basepoint region. Returns the new diagram and the map `x -> (x, w)`.
pub fn stabilize(marked: &MarkedDiagram) -> Result<(MarkedDiagram, Vec<(Generator, Generator)>), AtlasError> {
    let old = &marked.diagram;
    let mut input = old.input().clone();
    let g = input.genus;

    let vnames: BTreeSet<String> = input.vertices.iter().map(|v| v.name.clone()).collect();
    let cnames: BTreeSet<String> = input
        .alphas
        .iter()
        .chain(&input.betas)
        .map(|c| c.name.clone())
        .chain(input.regions.iter().map(|r| r.name.clone()))
        .collect();
    let w = fresh(&vnames, "x", input.vertices.len());
    let a_new = fresh(&cnames, "a", g);
    let b_new = fresh(&cnames, "b", g);

    let bp = &old.regions()[old.basepoint_region()];
    let mut circles: Vec<Locator> = bp
        .circles
        .iter()
        .map(|&c| {
            let darts: &[Dart] = &old.circles()[c].darts;
            let d = *darts.iter().min().expect("circles are nonempty");
            old.locator_for(d)
        })
        .collect();
    circles.push(Locator::new(&a_new, &w, Side::LeftAfter));
    let merged_name = bp
        .directive
        .clone()
        .unwrap_or_else(|| fresh(&cnames, "r", 0));
    input.regions.retain(|r| Some(&r.name) != bp.directive.as_ref());
    input.regions.push(RegionDirective {
        name: merged_name,
        genus: bp.genus,
        circles: CircleSelection::Listed(circles),
        span: Span::default(),
    });

    let mut alphas: Vec<CurveListing> = input
        .alphas
        .iter()
        .map(|c| CurveListing {
            name: c.name.clone(),
            entries: c
                .vertices
                .iter()
                .map(|&v| (input.vertices[v].name.clone(), Some(input.vertices[v].sign), Span::default()))
                .collect(),
            span: Span::default(),
        })
        .collect();
    let mut betas: Vec<CurveListing> = input
        .betas
        .iter()
        .map(|c| CurveListing {
            name: c.name.clone(),
            entries: c
                .vertices
                .iter()
                .map(|&v| (input.vertices[v].name.clone(), None, Span::default()))
                .collect(),
            span: Span::default(),
        })
        .collect();
    alphas.push(CurveListing::alpha(&a_new, &[(&w, Sign::Positive)]));
    betas.push(CurveListing::beta(&b_new, &[&w]));
    let new_input = CurveSystemInput::from_listings(g + 1, alphas, betas, input.basepoint.clone(), input.regions)?;
    let diagram = HeegaardDiagram::assemble(new_input)?;

    let w_id = diagram.vertex_id(&w).expect("new vertex present");
    let lift = |x: &Generator| -> Result<Generator, GradingError> {
        let points = x
            .points()
            .iter()
            .map(|&v| diagram.vertex_id(old.vertex_name(v)).expect("old vertices kept"))
            .chain(std::iter::once(w_id))
            .collect();
        Generator::new(&diagram, points)
    };
    let map = enumerate_generators(old)
        .iter()
        .map(|x| Ok((x.clone(), lift(x)?)))
        .collect::<Result<Vec<_>, GradingError>>()?;
    let contact = marked.contact.as_ref().map(lift).transpose()?;
    Ok((
        MarkedDiagram {
            diagram,
            contact,
            provenance: format!("stabilize({})", marked.provenance),
        },
        map,
    ))
}

/// Every diagram produced by the builders at small parameters.
pub fn standard_atlas() -> Vec<MarkedDiagram> {
    let mut out = Vec::new();
    for p in 1..=7 {
        out.push(build_torus_diagram(p, 1).expect("coprime"));
    }
    out.push(build_torus_diagram(5, 2).expect("coprime"));
    out.push(build_torus_diagram(7, 3).expect("coprime"));
    out.push(build_s1s2().expect("valid"));
    for n in -2..=5 {
        out.push(build_annulus_open_book(n).expect("valid"));
    }
    let base: Vec<MarkedDiagram> = out.clone();
    for m in base.iter().filter(|m| m.diagram.num_vertices() <= 3) {
        out.push(stabilize(m).expect("valid").0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{homology_of_y, Grader};
    use num_bigint::BigInt;

    #[test]
    fn torus_builders_validate() {
        for (p, q) in [(1, 0), (2, 1), (3, 1), (5, 2), (7, 3), (4, -1)] {
            let m = build_torus_diagram(p, q).unwrap();
            assert_eq!(m.diagram.num_vertices(), p as usize);
            assert_eq!(m.diagram.num_regions(), p as usize);
            assert_eq!(homology_of_y(&m.diagram).order(), Some(BigInt::from(p)));
        }
        assert!(matches!(build_torus_diagram(4, 2), Err(AtlasError::NotCoprime { .. })));
        assert!(matches!(build_torus_diagram(0, 1), Err(AtlasError::NonPositive(0))));
    }

    #[test]
    fn s1s2_shape() {
        let m = build_s1s2().unwrap();
        let d = &m.diagram;
        assert_eq!(d.num_vertices(), 2);
        assert_eq!(d.num_regions(), 3);
        let bp = &d.regions()[d.basepoint_region()];
        assert_eq!(bp.circles.len(), 2);
        let bigons = d.regions().iter().filter(|r| r.circles.len() == 1 && r.corners == 2).count();
        assert_eq!(bigons, 2);
        assert_eq!(homology_of_y(d).b1, 1);
    }

    #[test]
    fn open_books_validate() {
        for n in -4..=6 {
            let m = build_annulus_open_book(n).unwrap();
            let h = homology_of_y(&m.diagram);
            if n == 0 {
                assert_eq!(h.b1, 1);
            } else {
                assert_eq!(h.order(), Some(BigInt::from(n.abs())), "n = {n}");
            }
            assert!(m.contact.is_some());
        }
    }

    #[test]
    fn stabilization_preserves_counts() {
        let m = build_torus_diagram(3, 1).unwrap();
        let (s, map) = stabilize(&m).unwrap();
        assert_eq!(s.diagram.genus(), 2);
        assert_eq!(map.len(), 3);
        assert_eq!(Grader::new(&s.diagram).spinc_partition().len(), 3);
        let (s2, map2) = stabilize(&s).unwrap();
        assert_eq!(s2.diagram.genus(), 3);
        assert_eq!(map2.len(), 3);
    }
}
