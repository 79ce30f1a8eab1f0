//! Generators, domains, Spin^c classes and Maslov gradings.
//!
//! A domain from `x` to `y` is an integer combination of regions whose
//! boundary, restricted to the alpha curves, runs from `x` to `y`, and on the
//! beta curves from `y` to `x`. The coefficient of the boundary on an oriented
//! arc is (multiplicity on its left) minus (multiplicity on its right).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::diagram::{Family, HeegaardDiagram, RegionId, VertexId};
use crate::zlattice::{gcd_over_lattice, smith_invariants, IntMatrix, IntegerSolver};

pub const DEFAULT_RADIUS: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a generator: {0}")]
    InvalidGenerator(String),
    #[error("no domain connects the two generators (different Spin^c structures)")]
    NoConnectingClass,
    #[error("no nonnegative representative within search radius {radius}")]
    NoPositive { radius: u32 },
    #[error("internal inconsistency: Maslov index {0} is not an integer")]
    NonIntegral(BigRational),
    #[error("element mixes grading labels {0} and {1}")]
    MixedLabels(String, String),
    #[error("empty element has no grading")]
    EmptyElement,
    #[error("domain has {found} coefficients, diagram has {expected} regions")]
    DomainLength { expected: usize, found: usize },
}

/// One intersection point on each alpha curve, using each beta curve once.
/// Entry `i` is the point on `alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    points: Vec<VertexId>,
}

impl Generator {
    pub fn new(diagram: &HeegaardDiagram, points: Vec<VertexId>) -> Result<Self, GradingError> {
        let g = diagram.genus();
        if points.len() != g {
            return Err(GradingError::InvalidGenerator(format!(
                "expected {g} points, got {}",
                points.len()
            )));
        }
        let mut beta_used = vec![false; g];
        for (i, &v) in points.iter().enumerate() {
            if v >= diagram.num_vertices() {
                return Err(GradingError::InvalidGenerator(format!("vertex id {v} out of range")));
            }
            if diagram.alpha_curve_of(v) != i {
                return Err(GradingError::InvalidGenerator(format!(
                    "`{}` is not on {}",
                    diagram.vertex_name(v),
                    diagram.alpha_curve_name(i)
                )));
            }
            let b = diagram.beta_curve_of(v);
            if std::mem::replace(&mut beta_used[b], true) {
                return Err(GradingError::InvalidGenerator(format!(
                    "two points on {}",
                    diagram.beta_curve_name(b)
                )));
            }
        }
        Ok(Generator { points })
    }

    /// Parses comma-separated vertex names, in any order.
    pub fn parse(diagram: &HeegaardDiagram, text: &str) -> Result<Self, GradingError> {
        let g = diagram.genus();
        let mut slots: Vec<Option<VertexId>> = vec![None; g];
        let names: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        for name in &names {
            let v = diagram
                .vertex_id(name)
                .ok_or_else(|| GradingError::UnknownVertex(name.to_string()))?;
            let a = diagram.alpha_curve_of(v);
            if slots[a].replace(v).is_some() {
                return Err(GradingError::InvalidGenerator(format!(
                    "two points on {}",
                    diagram.alpha_curve_name(a)
                )));
            }
        }
        let points = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    GradingError::InvalidGenerator(format!("no point on {}", diagram.alpha_curve_name(i)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Generator::new(diagram, points)
    }

    pub fn points(&self) -> &[VertexId] {
        &self.points
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.points.contains(&v)
    }

    /// `sigma(i)`: the beta curve through the point on `alpha_i`.
    pub fn beta_permutation(&self, diagram: &HeegaardDiagram) -> Vec<usize> {
        self.points.iter().map(|&v| diagram.beta_curve_of(v)).collect()
    }

    /// Comma-joined vertex names in alpha-curve order.
    pub fn name(&self, diagram: &HeegaardDiagram) -> String {
        self.points
            .iter()
            .map(|&v| diagram.vertex_name(v))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Sorted vertex names; anchors are the minimal generators under this key.
    pub fn sort_key(&self, diagram: &HeegaardDiagram) -> Vec<String> {
        let mut k: Vec<String> = self.points.iter().map(|&v| diagram.vertex_name(v).to_string()).collect();
        k.sort();
        k
    }

    /// Extends by one more point (on a new last alpha curve).
    pub fn extended(&self, v: VertexId) -> Generator {
        let mut points = self.points.clone();
        points.push(v);
        Generator { points }
    }
}

/// All generators: alpha curves in order, each curve's points in curve order.
pub fn enumerate_generators(diagram: &HeegaardDiagram) -> Vec<Generator> {
    fn rec(
        d: &HeegaardDiagram,
        i: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<VertexId>,
        out: &mut Vec<Generator>,
    ) {
        if i == d.genus() {
            out.push(Generator { points: cur.clone() });
            return;
        }
        for &v in d.alpha_points(i) {
            let b = d.beta_curve_of(v);
            if !used[b] {
                used[b] = true;
                cur.push(v);
                rec(d, i + 1, used, cur, out);
                cur.pop();
                used[b] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(diagram, 0, &mut vec![false; diagram.genus()], &mut Vec::new(), &mut out);
    out
}

/// Integer 2-chain over the regions, connecting `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub coeffs: Vec<BigInt>,
    pub source: Generator,
    pub target: Generator,
}

impl Domain {
    pub fn zero(diagram: &HeegaardDiagram, x: &Generator) -> Domain {
        Domain {
            coeffs: vec![BigInt::zero(); diagram.num_regions()],
            source: x.clone(),
            target: x.clone(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn max_multiplicity(&self) -> BigInt {
        self.coeffs.iter().cloned().max().unwrap_or_else(BigInt::zero)
    }
}

/// A particular domain plus a basis of the periodic (homogeneous) lattice.
#[derive(Clone, Debug)]
pub struct DomainSolution {
    pub domain: Domain,
    pub periodic: Vec<Vec<BigInt>>,
}

impl DomainSolution {
    /// `domain + sum c_i periodic_i`.
    pub fn translate(&self, c: &[BigInt]) -> Domain {
        let mut coeffs = self.domain.coeffs.clone();
        for (ci, p) in c.iter().zip(&self.periodic) {
            for (a, b) in coeffs.iter_mut().zip(p) {
                *a += ci * b;
            }
        }
        Domain {
            coeffs,
            source: self.domain.source.clone(),
            target: self.domain.target.clone(),
        }
    }
}

fn row_of(family: Family, v: VertexId, nv: usize) -> usize {
    match family {
        Family::Alpha => v,
        Family::Beta => nv + v,
    }
}

/// Homogeneous part of the corner system: one row per (family, vertex), one
/// column per region. Row `(alpha, v)` is the coefficient of `v` in the
/// boundary of the alpha part of the domain boundary.
pub fn corner_matrix(diagram: &HeegaardDiagram) -> IntMatrix {
    let nv = diagram.num_vertices();
    let mut m = vec![vec![0i64; diagram.num_regions()]; 2 * nv];
    for (ai, a) in diagram.arcs().iter().enumerate() {
        let (l, r) = (diagram.left_region(ai), diagram.right_region(ai));
        let head = row_of(a.family, a.head, nv);
        let tail = row_of(a.family, a.tail, nv);
        m[head][l] += 1;
        m[head][r] -= 1;
        m[tail][l] -= 1;
        m[tail][r] += 1;
    }
    IntMatrix::from_rows(&m)
}

pub fn corner_rhs(diagram: &HeegaardDiagram, x: &Generator, y: &Generator) -> Vec<BigInt> {
    let nv = diagram.num_vertices();
    let mut b = vec![BigInt::zero(); 2 * nv];
    for &v in y.points() {
        b[row_of(Family::Alpha, v, nv)] += 1;
        b[row_of(Family::Beta, v, nv)] -= 1;
    }
    for &v in x.points() {
        b[row_of(Family::Alpha, v, nv)] -= 1;
        b[row_of(Family::Beta, v, nv)] += 1;
    }
    b
}

/// The corner system `M a = b` whose solutions are the domains from `x` to `y`.
pub fn build_corner_system(
    diagram: &HeegaardDiagram,
    x: &Generator,
    y: &Generator,
) -> (IntMatrix, Vec<BigInt>) {
    (corner_matrix(diagram), corner_rhs(diagram, x, y))
}

fn quarter(n: BigInt) -> BigRational {
    BigRational::new(n, BigInt::from(4))
}

/// `e(D_k)` for a single region.
pub fn region_euler(diagram: &HeegaardDiagram, k: RegionId) -> BigRational {
    let r = &diagram.regions()[k];
    quarter(BigInt::from(4 * r.euler_characteristic() - r.corners as i64))
}

fn check_len(diagram: &HeegaardDiagram, coeffs: &[BigInt]) -> Result<(), GradingError> {
    if coeffs.len() != diagram.num_regions() {
        return Err(GradingError::DomainLength {
            expected: diagram.num_regions(),
            found: coeffs.len(),
        });
    }
    Ok(())
}

/// Euler measure `sum a_k e(D_k)`.
pub fn euler_measure(diagram: &HeegaardDiagram, coeffs: &[BigInt]) -> BigRational {
    let mut four = BigInt::zero();
    for (k, a) in coeffs.iter().enumerate() {
        let r = &diagram.regions()[k];
        four += a * (4 * r.euler_characteristic() - r.corners as i64);
    }
    quarter(four)
}

fn point_measure_id(diagram: &HeegaardDiagram, coeffs: &[BigInt], v: VertexId) -> BigRational {
    let sum: BigInt = diagram
        .quadrant_regions(v)
        .iter()
        .map(|&r| coeffs[r].clone())
        .sum();
    quarter(sum)
}

/// Average multiplicity of the four quadrants at a vertex.
pub fn point_measure(
    diagram: &HeegaardDiagram,
    coeffs: &[BigInt],
    vertex: &str,
) -> Result<BigRational, GradingError> {
    check_len(diagram, coeffs)?;
    let v = diagram
        .vertex_id(vertex)
        .ok_or_else(|| GradingError::UnknownVertex(vertex.to_string()))?;
    Ok(point_measure_id(diagram, coeffs, v))
}

/// `n_x = sum_i n_{x_i}`.
pub fn generator_measure(diagram: &HeegaardDiagram, coeffs: &[BigInt], x: &Generator) -> BigRational {
    x.points()
        .iter()
        .map(|&v| point_measure_id(diagram, coeffs, v))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Multiplicity at the basepoint.
pub fn basepoint_measure(diagram: &HeegaardDiagram, coeffs: &[BigInt]) -> BigInt {
    coeffs[diagram.basepoint_region()].clone()
}

/// Exact value of `e(D) + n_x(D) + n_y(D)`.
pub fn maslov_value(diagram: &HeegaardDiagram, domain: &Domain) -> BigRational {
    euler_measure(diagram, &domain.coeffs)
        + generator_measure(diagram, &domain.coeffs, &domain.source)
        + generator_measure(diagram, &domain.coeffs, &domain.target)
}

/// Maslov index of a domain; an integer for every solution of the corner
/// system.
pub fn maslov_index(diagram: &HeegaardDiagram, domain: &Domain) -> Result<BigInt, GradingError> {
    check_len(diagram, &domain.coeffs)?;
    let mu = maslov_value(diagram, domain);
    if !mu.is_integer() {
        return Err(GradingError::NonIntegral(mu));
    }
    Ok(mu.to_integer())
}

/// `mu(D) - 2 n_z(D)`.
pub fn grading_value(diagram: &HeegaardDiagram, domain: &Domain) -> Result<BigInt, GradingError> {
    Ok(maslov_index(diagram, domain)? - 2 * basepoint_measure(diagram, &domain.coeffs))
}

/// Representative of `v` in `[0, d)`, or `v` itself when `d = 0`.
pub fn reduce_mod(v: &BigInt, d: &BigInt) -> BigInt {
    if d.is_zero() {
        v.clone()
    } else {
        v.mod_floor(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpincClass {
    pub id: usize,
    pub members: Vec<Generator>,
    pub anchor: Generator,
    /// 0 means the relative grading is integer valued.
    pub divisibility: BigInt,
}

/// Prepared corner system for one diagram, reused across generator pairs.
#[derive(Clone, Debug)]
pub struct Grader<'a> {
    diagram: &'a HeegaardDiagram,
    solver: IntegerSolver,
}

impl<'a> Grader<'a> {
    pub fn new(diagram: &'a HeegaardDiagram) -> Self {
        Grader {
            diagram,
            solver: IntegerSolver::new(&corner_matrix(diagram)),
        }
    }

    pub fn diagram(&self) -> &'a HeegaardDiagram {
        self.diagram
    }

    /// Basis of the periodic lattice (domains from a generator to itself).
    pub fn periodic_basis(&self) -> &[Vec<BigInt>] {
        self.solver.kernel()
    }

    pub fn periodic_rank(&self) -> usize {
        self.solver.kernel().len()
    }

    pub fn solve_domain(&self, x: &Generator, y: &Generator) -> Result<DomainSolution, GradingError> {
        if x == y {
            return Ok(DomainSolution {
                domain: Domain::zero(self.diagram, x),
                periodic: self.periodic_basis().to_vec(),
            });
        }
        let b = corner_rhs(self.diagram, x, y);
        let particular = self
            .solver
            .particular(&b)
            .expect("rhs sized from diagram")
            .ok_or(GradingError::NoConnectingClass)?;
        Ok(DomainSolution {
            domain: Domain {
                coeffs: particular,
                source: x.clone(),
                target: y.clone(),
            },
            periodic: self.periodic_basis().to_vec(),
        })
    }

    pub fn connected(&self, x: &Generator, y: &Generator) -> bool {
        x == y
            || self
                .solver
                .particular(&corner_rhs(self.diagram, x, y))
                .expect("rhs sized from diagram")
                .is_some()
    }

    /// gcd of `mu(P) - 2 n_z(P)` over periodic domains `P` based at `x`.
    pub fn divisibility(&self, x: &Generator) -> BigInt {
        let d = self.diagram;
        let mut f4 = vec![BigInt::zero(); d.num_regions()];
        for (k, r) in d.regions().iter().enumerate() {
            f4[k] = BigInt::from(4 * r.euler_characteristic() - r.corners as i64);
        }
        for &v in x.points() {
            for r in d.quadrant_regions(v) {
                f4[r] += 2;
            }
        }
        f4[d.basepoint_region()] -= 8;
        let g4 = gcd_over_lattice(self.periodic_basis(), &f4).expect("functional sized to regions");
        let (q, r) = g4.div_rem(&BigInt::from(4));
        assert!(r.is_zero(), "periodic Maslov indices must be integers");
        q
    }

    /// Relative grading `gr(x, y)`, reduced modulo the divisibility.
    pub fn relative_grading(&self, x: &Generator, y: &Generator) -> Result<BigInt, GradingError> {
        let sol = self.solve_domain(x, y)?;
        let v = grading_value(self.diagram, &sol.domain)?;
        Ok(reduce_mod(&v, &self.divisibility(x)))
    }

    fn anchor_cmp(&self, a: &Generator, b: &Generator) -> Ordering {
        a.sort_key(self.diagram)
            .cmp(&b.sort_key(self.diagram))
            .then_with(|| a.cmp(b))
    }

    /// Partition of all generators by connectivity through domains. Classes
    /// are ordered by anchor.
    pub fn spinc_partition(&self) -> Vec<SpincClass> {
        let gens = enumerate_generators(self.diagram);
        let mut groups: Vec<Vec<Generator>> = Vec::new();
        for x in gens {
            match groups.iter_mut().find(|g| self.connected(&g[0], &x)) {
                Some(g) => g.push(x),
                None => groups.push(vec![x]),
            }
        }
        for g in &groups {
            for (i, a) in g.iter().enumerate() {
                for b in &g[i + 1..] {
                    assert!(self.connected(a, b), "connectivity of generators is transitive");
                }
            }
        }
        let mut classes: Vec<SpincClass> = groups
            .into_iter()
            .map(|members| {
                let anchor = members
                    .iter()
                    .min_by(|a, b| self.anchor_cmp(a, b))
                    .expect("nonempty class")
                    .clone();
                let divisibility = self.divisibility(&anchor);
                SpincClass {
                    id: 0,
                    members,
                    anchor,
                    divisibility,
                }
            })
            .collect();
        classes.sort_by(|a, b| self.anchor_cmp(&a.anchor, &b.anchor));
        for (i, c) in classes.iter_mut().enumerate() {
            c.id = i;
        }
        classes
    }

    /// Labels of every generator, in enumeration order.
    pub fn grading_table(&self) -> GradingTable {
        let classes = self.spinc_partition();
        let mut labels = BTreeMap::new();
        for c in &classes {
            for m in &c.members {
                let gr = self
                    .relative_grading(m, &c.anchor)
                    .expect("members of a class are connected");
                labels.insert(
                    m.clone(),
                    GradingLabel {
                        class: c.id,
                        offset: gr,
                        modulus: c.divisibility.clone(),
                        level: BigInt::zero(),
                    },
                );
            }
        }
        let rows = enumerate_generators(self.diagram)
            .into_iter()
            .map(|g| {
                let l = labels[&g].clone();
                (g, l)
            })
            .collect();
        GradingTable { classes, rows }
    }

    /// Searches lattice translates (coefficients in `[-radius, radius]` per
    /// basis vector, plus at most `radius` copies of the whole surface) for a
    /// nonnegative domain. Minimal total multiplicity wins, ties broken
    /// lexicographically.
    pub fn positive_representative(
        &self,
        solution: &DomainSolution,
        radius: u32,
    ) -> Result<Domain, GradingError> {
        positive_representative(solution, radius)
    }
}

/// See [`Grader::positive_representative`].
pub fn positive_representative(solution: &DomainSolution, radius: u32) -> Result<Domain, GradingError> {
    let r = solution.periodic.len();
    let rad = i64::from(radius);
    let bound = BigInt::from(rad);
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    let mut c = vec![-rad; r];
    loop {
        let cb: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
        let mut d = solution.translate(&cb).coeffs;
        let min = d.iter().cloned().min().unwrap_or_else(BigInt::zero);
        if min.abs() <= bound {
            for a in d.iter_mut() {
                *a -= &min;
            }
            let total: BigInt = d.iter().sum();
            let better = match &best {
                None => true,
                Some((bt, bd)) => total < *bt || (total == *bt && d < *bd),
            };
            if better {
                best = Some((total, d));
            }
        }
        // odometer over the box
        let mut i = 0;
        while i < r {
            if c[i] < rad {
                c[i] += 1;
                break;
            }
            c[i] = -rad;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    match best {
        Some((_, coeffs)) => Ok(Domain {
            coeffs,
            source: solution.domain.source.clone(),
            target: solution.domain.target.clone(),
        }),
        None => Err(GradingError::NoPositive { radius }),
    }
}

/// Affine coordinate of a generator's grading within its Spin^c class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingLabel {
    pub class: usize,
    /// Offset from the class anchor; a residue in `[0, modulus)` when the
    /// modulus is positive.
    pub offset: BigInt,
    pub modulus: BigInt,
    /// Accumulated shift `i` of `[x, i]`.
    pub level: BigInt,
}

impl fmt::Display for GradingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class {} offset {}", self.class, self.offset)?;
        if !self.modulus.is_zero() {
            write!(f, " mod {}", self.modulus)?;
        }
        Ok(())
    }
}

/// `[x, i]`: the offset moves by `2i`.
pub fn shift_label(label: &GradingLabel, i: &BigInt) -> GradingLabel {
    GradingLabel {
        class: label.class,
        offset: reduce_mod(&(&label.offset + 2 * i), &label.modulus),
        modulus: label.modulus.clone(),
        level: &label.level + i,
    }
}

#[derive(Clone, Debug)]
pub struct GradingTable {
    pub classes: Vec<SpincClass>,
    pub rows: Vec<(Generator, GradingLabel)>,
}

impl GradingTable {
    pub fn label_of(&self, x: &Generator) -> Option<&GradingLabel> {
        self.rows.iter().find(|(g, _)| g == x).map(|(_, l)| l)
    }
}

/// Sum of generators with twisted coefficients `e^xi`, `xi` an exponent
/// vector over a fixed basis of first cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElement {
    pub terms: Vec<(Vec<i64>, Generator)>,
}

/// The grading of a homogeneous twisted element; coefficients are ignored.
pub fn twisted_label(table: &GradingTable, element: &TwistedElement) -> Result<GradingLabel, GradingError> {
    let mut label: Option<&GradingLabel> = None;
    for (_, x) in &element.terms {
        let l = table
            .label_of(x)
            .ok_or_else(|| GradingError::InvalidGenerator("generator not in table".into()))?;
        match label {
            None => label = Some(l),
            Some(prev) if prev != l => {
                return Err(GradingError::MixedLabels(prev.to_string(), l.to_string()))
            }
            Some(_) => {}
        }
    }
    label.cloned().ok_or(GradingError::EmptyElement)
}

pub fn solve_domain(
    diagram: &HeegaardDiagram,
    x: &Generator,
    y: &Generator,
) -> Result<DomainSolution, GradingError> {
    Grader::new(diagram).solve_domain(x, y)
}

pub fn spinc_partition(diagram: &HeegaardDiagram) -> Vec<SpincClass> {
    Grader::new(diagram).spinc_partition()
}

pub fn divisibility(diagram: &HeegaardDiagram, class: &SpincClass) -> BigInt {
    Grader::new(diagram).divisibility(&class.anchor)
}

pub fn relative_grading(
    diagram: &HeegaardDiagram,
    x: &Generator,
    y: &Generator,
) -> Result<BigInt, GradingError> {
    Grader::new(diagram).relative_grading(x, y)
}

pub fn grading_table(diagram: &HeegaardDiagram) -> GradingTable {
    Grader::new(diagram).grading_table()
}

/// `theta = c1^2 - 2 chi - 3 sigma` and the grading shift `theta / 4`.
pub fn theta_and_shift(c1_squared: &BigRational, chi: &BigInt, sigma: &BigInt) -> (BigRational, BigRational) {
    let theta = c1_squared - BigRational::from_integer(2 * chi + 3 * sigma);
    let shift = &theta / BigRational::from_integer(BigInt::from(4));
    (theta, shift)
}

/// `(2 + theta) / 4`.
pub fn gr0_of_theta(theta: &BigRational) -> BigRational {
    (BigRational::from_integer(BigInt::from(2)) + theta) / BigRational::from_integer(BigInt::from(4))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyY {
    pub b1: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl HomologyY {
    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.b1 == 0).then(|| self.torsion.iter().product::<BigInt>().max(BigInt::one()))
    }
}

impl fmt::Display for HomologyY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = (0..self.b1).map(|_| "Z".to_string()).collect();
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// First homology of the 3-manifold: the cokernel of the algebraic
/// intersection matrix of the alpha and beta curves.
pub fn homology_of_y(diagram: &HeegaardDiagram) -> HomologyY {
    let m = diagram.intersection_matrix();
    let inv = smith_invariants(&IntMatrix::from_rows(&m));
    let b1 = inv.iter().filter(|d| d.is_zero()).count();
    let torsion = inv.into_iter().filter(|d| *d > BigInt::one()).collect();
    HomologyY { b1, torsion }
}

/// Converts an integer that is known to be small.
pub fn small(v: &BigInt) -> i64 {
    v.to_i64().expect("value fits in i64")
}
