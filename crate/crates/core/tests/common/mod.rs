#![allow(dead_code)]

use std::collections::BTreeMap;

use heegaard_core::diagram::{Dart, Family, HeegaardDiagram};
use heegaard_core::grading::{corner_matrix, corner_rhs, Domain, Generator, Grader};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Generators by brute force: every tuple of vertices, one per alpha curve,
/// kept when the beta curves are distinct.
pub fn brute_force_generators(d: &HeegaardDiagram) -> Vec<Vec<String>> {
    let g = d.genus();
    let mut out = Vec::new();
    let nv = d.num_vertices();
    let total = nv.pow(g as u32);
    for idx in 0..total {
        let pick: Vec<usize> = (0..g).map(|i| (idx / nv.pow(i as u32)) % nv).collect();
        let alpha_ok = pick.iter().enumerate().all(|(i, &v)| d.alpha_curve_of(v) == i);
        let mut betas: Vec<usize> = pick.iter().map(|&v| d.beta_curve_of(v)).collect();
        betas.sort();
        betas.dedup();
        if alpha_ok && betas.len() == g {
            let mut names: Vec<String> = pick.iter().map(|&v| d.vertex_name(v).to_string()).collect();
            names.sort();
            out.push(names);
        }
    }
    out.sort();
    out
}

/// Boundary of the alpha part and of the beta part of the boundary of a
/// domain, obtained by walking every face circle.
pub fn boundary_trace(d: &HeegaardDiagram, coeffs: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let nv = d.num_vertices();
    let mut alpha = vec![BigInt::from(0); nv];
    let mut beta = vec![BigInt::from(0); nv];
    for (k, r) in d.regions().iter().enumerate() {
        for &c in &r.circles {
            for &dart in &d.circles()[c].darts {
                let Dart { arc, forward } = dart;
                let a = d.arcs()[arc];
                let (start, end) = if forward { (a.tail, a.head) } else { (a.head, a.tail) };
                let chain = match a.family {
                    Family::Alpha => &mut alpha,
                    Family::Beta => &mut beta,
                };
                chain[end] += &coeffs[k];
                chain[start] -= &coeffs[k];
            }
        }
    }
    (alpha, beta)
}

pub fn boundary_ok(d: &HeegaardDiagram, dom: &Domain) -> bool {
    let (alpha, beta) = boundary_trace(d, &dom.coeffs);
    let mut want = vec![BigInt::from(0); d.num_vertices()];
    for &v in dom.target.points() {
        want[v] += 1;
    }
    for &v in dom.source.points() {
        want[v] -= 1;
    }
    let neg: Vec<BigInt> = want.iter().map(|v| -v).collect();
    alpha == want && beta == neg
}

/// Every nonnegative domain with multiplicities at most `max` between two
/// generators of one class, by exhaustive search over coefficient vectors.
pub fn positive_domains(d: &HeegaardDiagram, max: u32) -> Vec<Domain> {
    let r = d.num_regions();
    let base = max as usize + 1;
    let grader = Grader::new(d);
    let classes = grader.spinc_partition();
    let m = corner_matrix(d);
    let mut rhs: BTreeMap<Vec<BigInt>, Vec<(Generator, Generator)>> = BTreeMap::new();
    for c in &classes {
        for x in &c.members {
            for y in &c.members {
                rhs.entry(corner_rhs(d, x, y)).or_default().push((x.clone(), y.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for idx in 0..base.pow(r as u32) {
        let a: Vec<BigInt> = (0..r)
            .map(|i| BigInt::from((idx / base.pow(i as u32)) % base))
            .collect();
        let b = m.apply(&a).unwrap();
        if let Some(pairs) = rhs.get(&b) {
            for (x, y) in pairs {
                out.push(Domain {
                    coeffs: a.clone(),
                    source: x.clone(),
                    target: y.clone(),
                });
            }
        }
    }
    out
}

/// A random genus-one curve system with `n` points; may fail to validate.
pub fn random_genus_one_text<R: Rng>(rng: &mut R, n: usize) -> String {
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    order.insert(0, 0);
    let alpha: Vec<String> = (0..n)
        .map(|i| format!("x{i}{}", if rng.gen_bool(0.5) { '+' } else { '-' }))
        .collect();
    let beta: Vec<String> = order.iter().map(|i| format!("x{i}")).collect();
    format!(
        "heegaard v1\ngenus: 1\nalpha a0: {}\nbeta b0: {}\nbasepoint: a0 x0 left-after\n",
        alpha.join(" "),
        beta.join(" ")
    )
}

/// Random valid genus-one diagram with at most `max_points` points.
pub fn random_genus_one<R: Rng>(rng: &mut R, max_points: usize) -> HeegaardDiagram {
    loop {
        let n = rng.gen_range(1..=max_points);
        if let Ok(d) = HeegaardDiagram::from_text(&random_genus_one_text(rng, n)) {
            return d;
        }
    }
}

/// Name-level summary of everything the gradings determine: for each class
/// (keyed by its sorted member names) the divisibility, and for every ordered
/// pair in a class the relative grading.
#[derive(Debug, PartialEq, Eq)]
pub struct GradingSummary {
    pub classes: BTreeMap<Vec<Vec<String>>, BigInt>,
    pub gradings: BTreeMap<(Vec<String>, Vec<String>), BigInt>,
}

pub fn grading_summary(d: &HeegaardDiagram, rename: &dyn Fn(&str) -> String) -> GradingSummary {
    let grader = Grader::new(d);
    let key = |g: &Generator| -> Vec<String> {
        let mut k: Vec<String> = g.points().iter().map(|&v| rename(d.vertex_name(v))).collect();
        k.sort();
        k
    };
    let mut classes = BTreeMap::new();
    let mut gradings = BTreeMap::new();
    for c in grader.spinc_partition() {
        let mut members: Vec<Vec<String>> = c.members.iter().map(key).collect();
        members.sort();
        classes.insert(members, c.divisibility.clone());
        for x in &c.members {
            for y in &c.members {
                gradings.insert((key(x), key(y)), grader.relative_grading(x, y).unwrap());
            }
        }
    }
    GradingSummary { classes, gradings }
}

pub fn modulo(v: &BigInt, d: &BigInt) -> BigInt {
    if *d == BigInt::from(0) {
        v.clone()
    } else {
        v.mod_floor(d)
    }
}
