//! Layer decomposition of nonnegative domains and corner bookkeeping.
//!
//! Level `l` of a domain keeps the regions of multiplicity at least `l`. At a
//! vertex the kept quadrants form cyclic runs (clusters); each run is a point
//! of the layer surface and is classified by its shape and by whether the
//! vertex belongs to the source generator, the target, both, or neither.
//!
//! Quadrant `k` is bounded by half-edges `k` and `k + 1`, and even half-edges
//! lie on alpha. Walking the boundary of a layer with the layer on the left, a
//! corner is x-like when it arrives along beta and leaves along alpha: a
//! convex corner in an even quadrant, or a concave corner whose missing
//! quadrant is odd. Auxiliary corners that are x-like when convex and y-like
//! when concave are counted positive.
//!
//! An auxiliary point with convex corners at `r` levels has concave corners
//! at `r` other levels; the balance count takes it `r` times, once per
//! convex/concave pair. Convex corners at degenerate points (a point of both
//! generators) enter the balance the same way.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::diagram::{ArcId, HeegaardDiagram, RegionId, VertexId};
use crate::grading::{maslov_value, Domain, Generator};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayerError {
    #[error("region {region} has negative multiplicity {value}")]
    NegativeCoefficient { region: String, value: BigInt },
    #[error("multiplicity {0} is too large to decompose")]
    TooDeep(BigInt),
    #[error("domain has {found} coefficients, diagram has {expected} regions")]
    DomainLength { expected: usize, found: usize },
    #[error("audit identity {identity} failed: {detail}")]
    IdentityFailed { identity: &'static str, detail: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    X,
    Y,
    /// The vertex is a point of both generators.
    Both,
    Neither,
}

impl Role {
    pub fn of(v: VertexId, x: &Generator, y: &Generator) -> Role {
        match (x.contains(v), y.contains(v)) {
            (true, true) => Role::Both,
            (true, false) => Role::X,
            (false, true) => Role::Y,
            (false, false) => Role::Neither,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Convex,
    Concave,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CornerClass {
    Interior,
    EdgePoint,
    Convex,
    Concave,
    BoundaryDegenerate,
    InteriorDegenerate,
    Auxiliary { shape: Shape, positive: bool },
}

impl CornerClass {
    pub fn shape(self) -> Option<Shape> {
        match self {
            CornerClass::Convex => Some(Shape::Convex),
            CornerClass::Concave => Some(Shape::Concave),
            CornerClass::Auxiliary { shape, .. } => Some(shape),
            _ => None,
        }
    }
}

impl fmt::Display for CornerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CornerClass::Interior => f.write_str("interior"),
            CornerClass::EdgePoint => f.write_str("edge-point"),
            CornerClass::Convex => f.write_str("convex"),
            CornerClass::Concave => f.write_str("concave"),
            CornerClass::BoundaryDegenerate => f.write_str("boundary-degenerate"),
            CornerClass::InteriorDegenerate => f.write_str("interior-degenerate"),
            CornerClass::Auxiliary { shape, positive } => write!(
                f,
                "auxiliary({}) {}",
                if *positive { '+' } else { '-' },
                match shape {
                    Shape::Convex => "convex",
                    Shape::Concave => "concave",
                }
            ),
        }
    }
}

/// A cyclic run of kept quadrants at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub vertex: VertexId,
    pub quadrants: Vec<usize>,
    pub role: Role,
    pub class: CornerClass,
}

fn corner(shape: Shape, quadrant_parity_even: bool, role: Role) -> CornerClass {
    match role {
        Role::Neither => CornerClass::Auxiliary {
            shape,
            positive: quadrant_parity_even,
        },
        _ => match shape {
            Shape::Convex => CornerClass::Convex,
            Shape::Concave => CornerClass::Concave,
        },
    }
}

/// Clusters of quadrants with multiplicity at least `level`, in order of
/// their first quadrant, with their classification.
pub fn classify_corner<T: PartialOrd>(mults: &[T; 4], level: &T, role: Role) -> Vec<(Vec<usize>, CornerClass)> {
    let kept: Vec<bool> = mults.iter().map(|m| m >= level).collect();
    let count = kept.iter().filter(|&&b| b).count();
    match count {
        0 => Vec::new(),
        4 => vec![(
            vec![0, 1, 2, 3],
            if role == Role::Both {
                CornerClass::InteriorDegenerate
            } else {
                CornerClass::Interior
            },
        )],
        1 => {
            let k = kept.iter().position(|&b| b).expect("one kept");
            vec![(vec![k], corner(Shape::Convex, k % 2 == 0, role))]
        }
        3 => {
            let j = kept.iter().position(|&b| !b).expect("one missing");
            let run = vec![(j + 1) % 4, (j + 2) % 4, (j + 3) % 4];
            vec![(run, corner(Shape::Concave, j % 2 == 0, role))]
        }
        _ => {
            let k = kept.iter().position(|&b| b).expect("two kept");
            if kept[(k + 2) % 4] {
                [k, k + 2]
                    .iter()
                    .map(|&q| (vec![q], corner(Shape::Convex, q % 2 == 0, role)))
                    .collect()
            } else {
                // adjacent pair; the run starts at the quadrant whose
                // predecessor is missing
                let start = if kept[(k + 3) % 4] { (k + 3) % 4 } else { k };
                let class = if role == Role::Both {
                    CornerClass::BoundaryDegenerate
                } else {
                    CornerClass::EdgePoint
                };
                vec![(vec![start, (start + 1) % 4], class)]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerSurface {
    pub level: u64,
    pub regions: Vec<RegionId>,
    /// Arcs with at least one side in the layer.
    pub edges: Vec<ArcId>,
    pub clusters: Vec<Cluster>,
    /// Sum of the Euler characteristics of the included regions.
    pub region_euler: i64,
}

impl LayerSurface {
    pub fn count(&self, pred: impl Fn(&Cluster) -> bool) -> usize {
        self.clusters.iter().filter(|c| pred(c)).count()
    }

    /// Convex corners, auxiliary ones included.
    pub fn convex(&self) -> usize {
        self.count(|c| c.class.shape() == Some(Shape::Convex))
    }

    /// Concave corners, auxiliary ones included.
    pub fn concave(&self) -> usize {
        self.count(|c| c.class.shape() == Some(Shape::Concave))
    }
}

fn check_domain(diagram: &HeegaardDiagram, domain: &Domain) -> Result<Vec<u64>, LayerError> {
    if domain.coeffs.len() != diagram.num_regions() {
        return Err(LayerError::DomainLength {
            expected: diagram.num_regions(),
            found: domain.coeffs.len(),
        });
    }
    domain
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| {
            if a.is_negative() {
                Err(LayerError::NegativeCoefficient {
                    region: diagram.regions()[k].name.clone(),
                    value: a.clone(),
                })
            } else {
                a.to_u64().filter(|&v| v <= 1 << 20).ok_or_else(|| LayerError::TooDeep(a.clone()))
            }
        })
        .collect()
}

/// Level sets `F_1 ⊇ F_2 ⊇ ... ⊇ F_m` of a nonnegative domain.
pub fn decompose_layers(diagram: &HeegaardDiagram, domain: &Domain) -> Result<Vec<LayerSurface>, LayerError> {
    let a = check_domain(diagram, domain)?;
    let m = a.iter().copied().max().unwrap_or(0);
    let mut layers = Vec::with_capacity(m as usize);
    for level in 1..=m {
        let regions: Vec<RegionId> = (0..a.len()).filter(|&k| a[k] >= level).collect();
        let edges: Vec<ArcId> = (0..diagram.num_arcs())
            .filter(|&e| a[diagram.left_region(e)] >= level || a[diagram.right_region(e)] >= level)
            .collect();
        let mut clusters = Vec::new();
        for v in 0..diagram.num_vertices() {
            let q = diagram.quadrant_regions(v).map(|r| a[r]);
            let role = Role::of(v, &domain.source, &domain.target);
            for (quadrants, class) in classify_corner(&q, &level, role) {
                clusters.push(Cluster {
                    vertex: v,
                    quadrants,
                    role,
                    class,
                });
            }
        }
        let region_euler = regions
            .iter()
            .map(|&k| diagram.regions()[k].euler_characteristic())
            .sum();
        layers.push(LayerSurface {
            level,
            regions,
            edges,
            clusters,
            region_euler,
        });
    }
    Ok(layers)
}

/// `chi(F_l) = V_l - E_l + sum of region Euler characteristics`.
pub fn layer_euler(layer: &LayerSurface) -> i64 {
    layer.clusters.len() as i64 - layer.edges.len() as i64 + layer.region_euler
}

fn layer_point_quarters(layer: &LayerSurface, g: &Generator) -> usize {
    layer
        .clusters
        .iter()
        .filter(|c| g.contains(c.vertex))
        .map(|c| c.quadrants.len())
        .sum()
}

/// `e(F_l) + n_x(F_l) + n_y(F_l)`.
pub fn layer_index(x: &Generator, y: &Generator, layer: &LayerSurface) -> BigRational {
    let quarters = 4 * layer_euler(layer) - layer.convex() as i64
        + layer.concave() as i64
        + layer_point_quarters(layer, x) as i64
        + layer_point_quarters(layer, y) as i64;
    BigRational::new(BigInt::from(quarters), BigInt::from(4))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerReport {
    pub level: u64,
    pub euler: i64,
    pub convex: usize,
    pub concave: usize,
    /// Concave corners at points of the generators.
    pub concave_nonauxiliary: usize,
    pub boundary_degenerate: usize,
    pub interior_degenerate: usize,
    /// Auxiliary convex corners of each sign (one per convex/concave pair).
    pub auxiliary_positive: usize,
    pub auxiliary_negative: usize,
    /// Convex corners at degenerate points, signed like auxiliary ones.
    pub degenerate_positive: usize,
    pub degenerate_negative: usize,
    /// Levels at which a point of `x` only (resp. `y` only) is interior.
    pub interior_x: usize,
    pub interior_y: usize,
    pub index: BigRational,
}

impl LayerReport {
    pub fn signed_auxiliary(&self) -> i64 {
        self.auxiliary_positive as i64 - self.auxiliary_negative as i64
    }
}

/// Sign of a convex corner at a degenerate point: positive when x-like.
fn degenerate_convex(c: &Cluster) -> Option<bool> {
    (c.role == Role::Both && c.class == CornerClass::Convex).then(|| c.quadrants[0].is_multiple_of(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub layers: Vec<LayerReport>,
    pub maslov: BigRational,
    pub layer_sum: BigRational,
    /// Whether the single-layer identity applies (one layer, no degenerate
    /// and no auxiliary corners) and, if so, `chi + q`.
    pub single_layer: Option<i64>,
    /// Interior x-corners plus positive auxiliary and degenerate corners.
    pub balance_left: usize,
    /// Interior y-corners plus negative auxiliary and degenerate corners.
    pub balance_right: usize,
    /// The balance is reported, not enforced: it holds on small atlas
    /// domains but not on every nonnegative domain.
    pub balance_holds: bool,
}

/// Decomposes the domain, checks the layer-sum and single-layer identities
/// (an error names the one that fails) and evaluates the corner balance.
pub fn audit_index(diagram: &HeegaardDiagram, domain: &Domain) -> Result<AuditReport, LayerError> {
    let (x, y) = (&domain.source, &domain.target);
    let layers = decompose_layers(diagram, domain)?;
    let reports: Vec<LayerReport> = layers
        .iter()
        .map(|l| {
            let cnt = |f: &dyn Fn(&Cluster) -> bool| l.count(f);
            LayerReport {
                level: l.level,
                euler: layer_euler(l),
                convex: l.convex(),
                concave: l.concave(),
                concave_nonauxiliary: cnt(&|c| c.class == CornerClass::Concave),
                boundary_degenerate: cnt(&|c| c.class == CornerClass::BoundaryDegenerate),
                interior_degenerate: cnt(&|c| c.class == CornerClass::InteriorDegenerate),
                auxiliary_positive: cnt(&|c| {
                    c.class == CornerClass::Auxiliary { shape: Shape::Convex, positive: true }
                }),
                auxiliary_negative: cnt(&|c| {
                    c.class == CornerClass::Auxiliary { shape: Shape::Convex, positive: false }
                }),
                degenerate_positive: cnt(&|c| degenerate_convex(c) == Some(true)),
                degenerate_negative: cnt(&|c| degenerate_convex(c) == Some(false)),
                interior_x: cnt(&|c| c.class == CornerClass::Interior && c.role == Role::X),
                interior_y: cnt(&|c| c.class == CornerClass::Interior && c.role == Role::Y),
                index: layer_index(x, y, l),
            }
        })
        .collect();
    let maslov = maslov_value(diagram, domain);
    let layer_sum = reports
        .iter()
        .fold(BigRational::zero(), |s, r| s + &r.index);
    if layer_sum != maslov {
        return Err(LayerError::IdentityFailed {
            identity: "layer sum",
            detail: format!("layers give {layer_sum}, domain gives {maslov}"),
        });
    }

    let single_layer = match (reports.as_slice(), layers.as_slice()) {
        ([r], [l])
            if l.clusters.iter().all(|c| c.role != Role::Both && !matches!(c.class, CornerClass::Auxiliary { .. })) =>
        {
            Some(r.euler + r.concave as i64)
        }
        _ => None,
    };
    if let (Some(v), [r]) = (single_layer, reports.as_slice()) {
        if BigRational::from_integer(BigInt::from(v)) != r.index {
            return Err(LayerError::IdentityFailed {
                identity: "single layer",
                detail: format!("chi + q = {v}, index {}", r.index),
            });
        }
    }

    let balance_left = reports
        .iter()
        .map(|r| r.interior_x + r.auxiliary_positive + r.degenerate_positive)
        .sum();
    let balance_right = reports
        .iter()
        .map(|r| r.interior_y + r.auxiliary_negative + r.degenerate_negative)
        .sum();
    Ok(AuditReport {
        layers: reports,
        maslov,
        layer_sum,
        single_layer,
        balance_left,
        balance_right,
        balance_holds: balance_left == balance_right,
    })
}
