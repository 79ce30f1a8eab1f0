//! Acceptance criteria 1-10. Prints one line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{grading_summary, modulo, positive_domains};
use heegaard_core::atlas::{build_annulus_open_book, build_s1s2, build_torus_diagram, stabilize, standard_atlas};
use heegaard_core::diagram::HeegaardDiagram;
use heegaard_core::grading::{
    enumerate_generators, euler_measure, generator_measure, gr0_of_theta, grading_value, homology_of_y,
    maslov_index, theta_and_shift, Generator, Grader,
};
use heegaard_core::layers::audit_index;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let d = build_torus_diagram(1, 1).map_err(|e| e.to_string())?.diagram;
    let gens = enumerate_generators(&d);
    let g = Grader::new(&d);
    let classes = g.spinc_partition();
    let table = g.grading_table();
    ensure!(gens.len() == 1, "{} generators", gens.len());
    ensure!(classes.len() == 1, "{} classes", classes.len());
    ensure!(classes[0].divisibility.is_zero(), "d = {}", classes[0].divisibility);
    let labels: Vec<(usize, BigInt)> = table.rows.iter().map(|(_, l)| (l.class, l.offset.clone())).collect();
    ensure!(labels == vec![(0, BigInt::zero())], "table {labels:?}");
    let t = start.elapsed();
    ensure!(t.as_secs_f64() < 1.0, "took {t:?}");
    Ok(format!("1 generator, 1 class, d = 0, table {{(0, 0)}} in {t:?}"))
}

fn criterion_2() -> Outcome {
    for p in 2..=7 {
        let d = build_torus_diagram(p, 1).map_err(|e| e.to_string())?.diagram;
        let n = enumerate_generators(&d).len();
        ensure!(n == p as usize, "p = {p}: {n} generators");
        let classes = Grader::new(&d).spinc_partition();
        ensure!(
            classes.len() == p as usize && classes.iter().all(|c| c.members.len() == 1),
            "p = {p}: classes {:?}",
            classes.iter().map(|c| c.members.len()).collect::<Vec<_>>()
        );
        let h = homology_of_y(&d);
        ensure!(h.b1 == 0 && h.torsion == vec![BigInt::from(p)], "p = {p}: H1 = {h}");
    }
    Ok("p = 2..7: p generators, p singleton classes, H1 = Z/p".into())
}

fn criterion_3() -> Outcome {
    let d = build_s1s2().map_err(|e| e.to_string())?.diagram;
    let g = Grader::new(&d);
    let (x, y) = (Generator::parse(&d, "x0").unwrap(), Generator::parse(&d, "x1").unwrap());
    let sol = g.solve_domain(&x, &y).map_err(|e| e.to_string())?;
    let bigon = g.positive_representative(&sol, 8).map_err(|e| e.to_string())?;
    let support: Vec<usize> = (0..d.num_regions()).filter(|&k| !bigon.coeffs[k].is_zero()).collect();
    ensure!(support.len() == 1 && d.regions()[support[0]].corners == 2, "not a bigon: {:?}", bigon.coeffs);
    let e = euler_measure(&d, &bigon.coeffs);
    let nx = generator_measure(&d, &bigon.coeffs, &x);
    let ny = generator_measure(&d, &bigon.coeffs, &y);
    let mu = maslov_index(&d, &bigon).map_err(|e| e.to_string())?;
    ensure!(e == q(1, 2), "e = {e}");
    ensure!(nx == q(1, 4) && ny == q(1, 4), "n_x = {nx}, n_y = {ny}");
    ensure!(mu == BigInt::one(), "mu = {mu}");
    let gr = g.relative_grading(&x, &y).map_err(|e| e.to_string())?;
    ensure!(gr == BigInt::one() || gr == -BigInt::one(), "gr = {gr}");
    Ok(format!("e = {e}, n_x = {nx}, n_y = {ny}, mu = {mu}, gr(x0, x1) = {gr}"))
}

fn criterion_4() -> Outcome {
    let mut domains = 0;
    let mut single = 0;
    let mut diagrams = 0;
    for m in standard_atlas() {
        diagrams += 1;
        for dom in positive_domains(&m.diagram, 3) {
            let r = audit_index(&m.diagram, &dom).map_err(|e| format!("{}: {e}", m.provenance))?;
            ensure!(r.layer_sum == r.maslov, "{}: {} != {}", m.provenance, r.layer_sum, r.maslov);
            let direct = maslov_index(&m.diagram, &dom).map_err(|e| e.to_string())?;
            ensure!(r.maslov == BigRational::from_integer(direct), "{}: direct value differs", m.provenance);
            if let Some(v) = r.single_layer {
                ensure!(q(v, 1) == r.maslov, "{}: chi + q = {v}, mu = {}", m.provenance, r.maslov);
                single += 1;
            }
            domains += 1;
        }
    }
    ensure!(domains >= 100, "only {domains} domains");
    Ok(format!("{domains} positive domains over {diagrams} diagrams, {single} single-layer cases"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let atlas = standard_atlas();
    let mut pairs = 0;
    while pairs < 200 {
        let m = &atlas[rng.gen_range(0..atlas.len())];
        let d = &m.diagram;
        let g = Grader::new(d);
        let classes = g.spinc_partition();
        let c = &classes[rng.gen_range(0..classes.len())];
        let x = &c.members[rng.gen_range(0..c.members.len())];
        let y = &c.members[rng.gen_range(0..c.members.len())];
        let sol = g.solve_domain(x, y).map_err(|e| e.to_string())?;
        let mut draw = || -> Vec<BigInt> {
            (0..sol.periodic.len()).map(|_| BigInt::from(rng.gen_range(-10..=10))).collect()
        };
        let (a, b) = (sol.translate(&draw()), sol.translate(&draw()));
        let (ga, gb) = (grading_value(d, &a).map_err(|e| e.to_string())?, grading_value(d, &b).map_err(|e| e.to_string())?);
        ensure!(
            modulo(&(&ga - &gb), &c.divisibility).is_zero(),
            "{}: {} vs {} mod {}",
            m.provenance,
            ga,
            gb,
            c.divisibility
        );
        pairs += 1;
    }
    Ok(format!("{pairs} random domain pairs agree mod d"))
}

fn criterion_6() -> Outcome {
    let atlas = standard_atlas();
    for m in &atlas {
        let (s, map) = stabilize(m).map_err(|e| e.to_string())?;
        let (g0, g1) = (Grader::new(&m.diagram), Grader::new(&s.diagram));
        let (c0, c1) = (g0.spinc_partition(), g1.spinc_partition());
        let class_of = |cs: &[heegaard_core::grading::SpincClass], x: &Generator| cs.iter().position(|c| c.members.contains(x));
        ensure!(map.len() == enumerate_generators(&s.diagram).len(), "{}: not a bijection", m.provenance);
        let mut sizes0: Vec<usize> = c0.iter().map(|c| c.members.len()).collect();
        let mut sizes1: Vec<usize> = c1.iter().map(|c| c.members.len()).collect();
        sizes0.sort();
        sizes1.sort();
        ensure!(sizes0 == sizes1, "{}: sizes {sizes0:?} vs {sizes1:?}", m.provenance);
        for (x, xs) in &map {
            let (k0, k1) = (class_of(&c0, x).unwrap(), class_of(&c1, xs).ok_or("unmapped")?);
            ensure!(c0[k0].divisibility == c1[k1].divisibility, "{}: divisibility", m.provenance);
            for (y, ys) in &map {
                let a = g0.relative_grading(x, y).ok();
                let b = g1.relative_grading(xs, ys).ok();
                ensure!(a == b, "{}: gr {a:?} vs {b:?}", m.provenance);
            }
        }
    }
    Ok(format!("{} atlas diagrams stabilized with identical classes and gradings", atlas.len()))
}

fn criterion_7() -> Outcome {
    let atlas = standard_atlas();
    for m in &atlas {
        let rank = Grader::new(&m.diagram).periodic_rank();
        let b1 = homology_of_y(&m.diagram).b1;
        ensure!(rank == 1 + b1, "{}: rank {rank}, b1 {b1}", m.provenance);
    }
    Ok(format!("rank = 1 + b1 on {} atlas diagrams", atlas.len()))
}

fn criterion_8() -> Outcome {
    let (_, shift) = theta_and_shift(&q(0, 1), &BigInt::from(2), &BigInt::zero());
    ensure!(shift == q(-1, 1), "shift(0, 2, 0) = {shift}");
    let (theta_b4, _) = theta_and_shift(&q(0, 1), &BigInt::one(), &BigInt::zero());
    ensure!(theta_b4 == q(-2, 1), "theta(B4) = {theta_b4}");
    let gr0 = gr0_of_theta(&theta_b4);
    ensure!(gr0.is_zero(), "gr0 = {gr0}");
    Ok("shift(0, 2, 0) = -1, theta(B4) = -2, gr0 = 0".into())
}

fn criterion_9() -> Outcome {
    for n in 0..=5i64 {
        let m = build_annulus_open_book(n).map_err(|e| format!("n = {n}: {e}"))?;
        let d = &m.diagram;
        HeegaardDiagram::from_text(&d.to_text()).map_err(|e| format!("n = {n}: {e}"))?;
        let h = homology_of_y(d);
        if n == 0 {
            ensure!(h.b1 == 1 && h.torsion.is_empty(), "n = 0: H1 = {h}");
        } else {
            ensure!(h.order() == Some(BigInt::from(n)), "n = {n}: H1 = {h}");
        }
        let c = m.contact.as_ref().ok_or(format!("n = {n}: no contact generator"))?;
        ensure!(enumerate_generators(d).contains(c), "n = {n}: contact generator invalid");
    }
    Ok("n = 0..5 validate, |H1| = n (Z for n = 0), contact generators valid".into())
}

fn criterion_10() -> Outcome {
    let atlas = standard_atlas();
    let mut checks = 0;
    for m in &atlas {
        let d = &m.diagram;
        let id = |s: &str| s.to_string();
        let base = grading_summary(d, &id);
        let names: Vec<String> = d.input().alphas.iter().chain(&d.input().betas).map(|c| c.name.clone()).collect();
        for name in &names {
            let mut input = d.input().clone();
            input.reverse_curve(name).map_err(|e| e.to_string())?;
            let r = HeegaardDiagram::assemble(input).map_err(|e| format!("{}: {e}", m.provenance))?;
            ensure!(grading_summary(&r, &id) == base, "{}: reversing {name} changes gradings", m.provenance);
            checks += 1;
        }
        let nv = d.num_vertices();
        let vmap: BTreeMap<String, String> =
            (0..nv).map(|v| (d.vertex_name(v).to_string(), format!("w{}", (v * 7 + 3) % nv))).collect();
        let cmap: BTreeMap<String, String> = names.iter().map(|c| (c.clone(), format!("{c}'"))).collect();
        let mut input = d.input().clone();
        input.rename(&cmap, &vmap);
        let r = HeegaardDiagram::assemble(input).map_err(|e| format!("{}: {e}", m.provenance))?;
        let renamed = |s: &str| vmap[s].clone();
        ensure!(grading_summary(&r, &id) == grading_summary(d, &renamed), "{}: renaming changes gradings", m.provenance);
        checks += 1;
    }
    Ok(format!("{checks} reversals and renamings over {} diagrams", atlas.len()))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (k, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(msg) => println!("criterion {k}: PASS {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
