use std::fs;
use std::path::Path;

use heegaard_core::atlas::{build_annulus_open_book, build_s1s2, build_torus_diagram, stabilize, MarkedDiagram};
use heegaard_core::grading::{
    basepoint_measure, enumerate_generators, euler_measure, generator_measure, gr0_of_theta, grading_value,
    homology_of_y, maslov_index, reduce_mod, theta_and_shift, Domain, Generator, Grader, GradingError,
};
use heegaard_core::layers::audit_index;
use heegaard_core::HeegaardDiagram;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{int, ints, rational, Digest, Report};
use crate::{AtlasCommand, Cli, Command};

/// A failed command: its error payload.
struct Failure(Value);

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure(json!({ "kind": "io", "path": path.display().to_string(), "message": e.to_string() }))
}

fn load(path: &Path) -> Result<HeegaardDiagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    HeegaardDiagram::from_text(&text).map_err(|e| {
        let mut v = json!({ "kind": "diagram", "path": path.display().to_string(), "message": e.to_string() });
        if let Some(span) = e.span() {
            v["line"] = json!(span.line);
            v["column"] = json!(span.column);
        }
        Failure(v)
    })
}

fn generator(d: &HeegaardDiagram, text: &str) -> Result<Generator, Failure> {
    Generator::parse(d, text).map_err(|e| Failure(json!({ "kind": "generator", "message": e.to_string() })))
}

fn region_names(d: &HeegaardDiagram) -> Value {
    json!(d.regions().iter().map(|r| r.name.clone()).collect::<Vec<_>>())
}

/// Runs the parsed command. The second value, when present, replaces the
/// text rendering (a diagram printed to standard output).
pub(crate) fn execute(cli: &Cli, command: Vec<String>) -> (Report, Option<String>) {
    let mut digest = None;
    let mut raw = None;
    let result = dispatch(cli, &mut digest, &mut raw);
    let (payload, status) = match result {
        Ok(p) => (p, 0),
        Err(Failure(e)) => (json!({ "error": e }), 1),
    };
    (Report { command, digest, payload, status }, raw)
}

fn dispatch(cli: &Cli, digest: &mut Option<Digest>, raw: &mut Option<String>) -> Result<Value, Failure> {
    let mut loaded = |path: &Path| -> Result<HeegaardDiagram, Failure> {
        let d = load(path)?;
        *digest = Some(Digest::of(&d));
        Ok(d)
    };
    match &cli.command {
        Command::Validate { file } => {
            loaded(file)?;
            Ok(json!({ "valid": true }))
        }
        Command::Info { file } => info(&loaded(file)?),
        Command::Generators { file } => {
            let d = loaded(file)?;
            let names: Vec<String> = enumerate_generators(&d).iter().map(|g| g.name(&d)).collect();
            Ok(json!({ "count": names.len(), "generators": names }))
        }
        Command::Spinc { file } => {
            let d = loaded(file)?;
            let classes = Grader::new(&d).spinc_partition();
            let list: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "anchor": c.anchor.name(&d),
                        "size": c.members.len(),
                        "members": c.members.iter().map(|m| m.name(&d)).collect::<Vec<_>>(),
                        "divisibility": int(&c.divisibility),
                    })
                })
                .collect();
            Ok(json!({ "count": classes.len(), "classes": list }))
        }
        Command::Grade { file } => grade(&loaded(file)?),
        Command::Domain { file, x, y, positive } => {
            let d = loaded(file)?;
            domain(&d, x, y, *positive, cli.radius)
        }
        Command::Audit { file, x, y } => {
            let d = loaded(file)?;
            audit(&d, x, y, cli.radius)
        }
        Command::Stabilize { file, output } => {
            let base = MarkedDiagram::plain(load(file)?, file.display().to_string());
            let (s, map) = stabilize(&base)
                .map_err(|e| Failure(json!({ "kind": "atlas", "message": e.to_string() })))?;
            fs::write(output, s.diagram.to_text()).map_err(|e| io_error(output, e))?;
            *digest = Some(Digest::of(&s.diagram));
            let pairs: Vec<Value> = map
                .iter()
                .map(|(a, b)| json!({ "from": a.name(&base.diagram), "to": b.name(&s.diagram) }))
                .collect();
            Ok(json!({ "output": output.display().to_string(), "correspondence": pairs }))
        }
        Command::Atlas { which } => atlas(which, digest, raw, cli.json),
        Command::Shift { c1sq, chi, sigma } => {
            let (theta, shift) = theta_and_shift(c1sq, &BigInt::from(*chi), &BigInt::from(*sigma));
            Ok(json!({
                "c1sq": rational(c1sq),
                "chi": chi,
                "sigma": sigma,
                "theta": rational(&theta),
                "shift": rational(&shift),
                "gr0": rational(&gr0_of_theta(&theta)),
            }))
        }
        Command::Selftest { cases } => selftest(cli.seed, *cases, cli.radius),
    }
}

fn info(d: &HeegaardDiagram) -> Result<Value, Failure> {
    let regions: Vec<Value> = d
        .regions()
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "genus": r.genus,
                "circles": r.circles.len(),
                "corners": r.corners,
                "euler": r.euler_characteristic(),
            })
        })
        .collect();
    let vertices: Vec<Value> = (0..d.num_vertices())
        .map(|v| {
            json!({
                "name": d.vertex_name(v),
                "sign": if d.vertex_sign(v).as_i64() > 0 { "+" } else { "-" },
                "alpha": d.alpha_curve_name(d.alpha_curve_of(v)),
                "beta": d.beta_curve_name(d.beta_curve_of(v)),
            })
        })
        .collect();
    Ok(json!({
        "basepoint_region": d.regions()[d.basepoint_region()].name,
        "regions": regions,
        "vertices": vertices,
        "periodic_rank": Grader::new(d).periodic_rank(),
    }))
}

fn grade(d: &HeegaardDiagram) -> Result<Value, Failure> {
    let table = Grader::new(d).grading_table();
    let classes: Vec<Value> = table
        .classes
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "anchor": c.anchor.name(d),
                "size": c.members.len(),
                "divisibility": int(&c.divisibility),
            })
        })
        .collect();
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|(g, l)| {
            json!({
                "generator": g.name(d),
                "class": l.class,
                "offset": int(&l.offset),
                "modulus": int(&l.modulus),
            })
        })
        .collect();
    Ok(json!({ "classes": classes, "rows": rows }))
}

fn no_connection(d: &HeegaardDiagram, x: &Generator, y: &Generator) -> Value {
    json!({
        "source": x.name(d),
        "target": y.name(d),
        "connected": false,
        "result": "no connecting class",
    })
}

fn describe(d: &HeegaardDiagram, dom: &Domain, divisibility: &BigInt) -> Result<Value, Failure> {
    let internal = |e: GradingError| Failure(json!({ "kind": "internal", "message": e.to_string() }));
    let mu = maslov_index(d, dom).map_err(internal)?;
    let gr = grading_value(d, dom).map_err(internal)?;
    Ok(json!({
        "source": dom.source.name(d),
        "target": dom.target.name(d),
        "connected": true,
        "regions": region_names(d),
        "coefficients": ints(&dom.coeffs),
        "euler": rational(&euler_measure(d, &dom.coeffs)),
        "n_x": rational(&generator_measure(d, &dom.coeffs, &dom.source)),
        "n_y": rational(&generator_measure(d, &dom.coeffs, &dom.target)),
        "n_z": int(&basepoint_measure(d, &dom.coeffs)),
        "maslov": int(&mu),
        "divisibility": int(divisibility),
        "grading": int(&reduce_mod(&gr, divisibility)),
    }))
}

fn domain(d: &HeegaardDiagram, x: &str, y: &str, positive: bool, radius: u32) -> Result<Value, Failure> {
    let (x, y) = (generator(d, x)?, generator(d, y)?);
    let g = Grader::new(d);
    let sol = match g.solve_domain(&x, &y) {
        Ok(s) => s,
        Err(GradingError::NoConnectingClass) => return Ok(no_connection(d, &x, &y)),
        Err(e) => return Err(Failure(json!({ "kind": "internal", "message": e.to_string() }))),
    };
    let dv = g.divisibility(&x);
    let chosen = if positive {
        match g.positive_representative(&sol, radius) {
            Ok(p) => p,
            Err(_) => {
                return Ok(json!({
                    "source": x.name(d),
                    "target": y.name(d),
                    "connected": true,
                    "positive": false,
                    "radius": radius,
                    "result": "no nonnegative representative within the search radius",
                }))
            }
        }
    } else {
        sol.domain.clone()
    };
    let mut v = describe(d, &chosen, &dv)?;
    v["positive"] = json!(chosen.is_nonnegative());
    v["periodic_basis"] = Value::Array(sol.periodic.iter().map(|p| ints(p)).collect());
    Ok(v)
}

fn audit(d: &HeegaardDiagram, x: &str, y: &str, radius: u32) -> Result<Value, Failure> {
    let (x, y) = (generator(d, x)?, generator(d, y)?);
    let g = Grader::new(d);
    let sol = match g.solve_domain(&x, &y) {
        Ok(s) => s,
        Err(GradingError::NoConnectingClass) => return Ok(no_connection(d, &x, &y)),
        Err(e) => return Err(Failure(json!({ "kind": "internal", "message": e.to_string() }))),
    };
    let Ok(dom) = g.positive_representative(&sol, radius) else {
        return Ok(json!({
            "source": x.name(d),
            "target": y.name(d),
            "connected": true,
            "positive": false,
            "radius": radius,
            "result": "no nonnegative representative within the search radius",
        }));
    };
    let r = audit_index(d, &dom).map_err(|e| Failure(json!({ "kind": "audit", "message": e.to_string() })))?;
    let layers: Vec<Value> = r
        .layers
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "euler": l.euler,
                "convex": l.convex,
                "concave": l.concave,
                "concave_nonauxiliary": l.concave_nonauxiliary,
                "boundary_degenerate": l.boundary_degenerate,
                "interior_degenerate": l.interior_degenerate,
                "auxiliary_positive": l.auxiliary_positive,
                "auxiliary_negative": l.auxiliary_negative,
                "signed_auxiliary": l.signed_auxiliary(),
                "degenerate_positive": l.degenerate_positive,
                "degenerate_negative": l.degenerate_negative,
                "interior_x": l.interior_x,
                "interior_y": l.interior_y,
                "index": rational(&l.index),
            })
        })
        .collect();
    Ok(json!({
        "source": x.name(d),
        "target": y.name(d),
        "connected": true,
        "regions": region_names(d),
        "coefficients": ints(&dom.coeffs),
        "layers": layers,
        "maslov": rational(&r.maslov),
        "layer_sum": rational(&r.layer_sum),
        "single_layer": r.single_layer,
        "balance": { "left": r.balance_left, "right": r.balance_right, "holds": r.balance_holds },
    }))
}

fn atlas(which: &AtlasCommand, digest: &mut Option<Digest>, raw: &mut Option<String>, json_out: bool) -> Result<Value, Failure> {
    let (built, out) = match which {
        AtlasCommand::Torus { p, q, out } => (build_torus_diagram(*p, *q), out),
        AtlasCommand::S1s2 { out } => (build_s1s2(), out),
        AtlasCommand::OpenbookAnnulus { n, out } => (build_annulus_open_book(*n), out),
    };
    let m = built.map_err(|e| Failure(json!({ "kind": "atlas", "message": e.to_string() })))?;
    let text = m.diagram.to_text();
    *digest = Some(Digest::of(&m.diagram));
    let mut v = json!({
        "provenance": m.provenance,
        "contact": m.contact.as_ref().map(|c| c.name(&m.diagram)),
        "output": out.output.as_ref().map(|p| p.display().to_string()),
    });
    match &out.output {
        Some(path) => fs::write(path, &text).map_err(|e| io_error(path, e))?,
        None if !json_out => *raw = Some(text.clone()),
        None => {}
    }
    v["diagram"] = json!(text);
    Ok(v)
}

fn random_diagram(rng: &mut ChaCha8Rng) -> HeegaardDiagram {
    loop {
        let n = rng.gen_range(1..=6);
        let mut order: Vec<usize> = (1..n).collect();
        order.shuffle(rng);
        order.insert(0, 0);
        let alpha: Vec<String> = (0..n).map(|i| format!("x{i}{}", if rng.gen_bool(0.5) { '+' } else { '-' })).collect();
        let beta: Vec<String> = order.iter().map(|i| format!("x{i}")).collect();
        let text = format!(
            "heegaard v1\ngenus: 1\nalpha a0: {}\nbeta b0: {}\nbasepoint: a0 x0 left-after\n",
            alpha.join(" "),
            beta.join(" ")
        );
        if let Ok(d) = HeegaardDiagram::from_text(&text) {
            return d;
        }
    }
}

/// Checks on one diagram; returns the number of checks and any failures.
fn check_diagram(d: &HeegaardDiagram, rng: &mut ChaCha8Rng, radius: u32) -> (usize, Vec<String>) {
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            failures.push(what);
        }
    };
    let text = d.to_text();
    check(
        HeegaardDiagram::from_text(&text).map(|r| r.to_text() == text).unwrap_or(false),
        "round trip".into(),
    );
    let g = Grader::new(d);
    check(g.periodic_rank() == 1 + homology_of_y(d).b1, "rank identity".into());
    for c in g.spinc_partition() {
        let dv = &c.divisibility;
        for x in &c.members {
            for y in &c.members {
                let name = format!("{} -> {}", x.name(d), y.name(d));
                let (Ok(gxy), Ok(gyx)) = (g.relative_grading(x, y), g.relative_grading(y, x)) else {
                    check(false, format!("{name}: grading"));
                    continue;
                };
                check(reduce_mod(&(&gxy + &gyx), dv).is_zero(), format!("{name}: antisymmetry"));
                for z in &c.members {
                    if let (Ok(gyz), Ok(gxz)) = (g.relative_grading(y, z), g.relative_grading(x, z)) {
                        check(reduce_mod(&(&gxy + &gyz - &gxz), dv).is_zero(), format!("{name}: additivity"));
                    }
                }
                let Ok(sol) = g.solve_domain(x, y) else { continue };
                let base = grading_value(d, &sol.domain).ok();
                let shift: Vec<BigInt> = (0..sol.periodic.len()).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect();
                let other = grading_value(d, &sol.translate(&shift)).ok();
                check(
                    matches!((&base, &other), (Some(a), Some(b)) if reduce_mod(&(a - b), dv).is_zero()),
                    format!("{name}: ambiguity"),
                );
                if let Ok(p) = g.positive_representative(&sol, radius) {
                    check(audit_index(d, &p).is_ok(), format!("{name}: audit"));
                }
            }
        }
    }
    (checks, failures)
}

fn selftest(seed: u64, cases: usize, radius: u32) -> Result<Value, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    let mut failures = Vec::new();
    for case in 0..cases {
        let d = random_diagram(&mut rng);
        let (n, f) = check_diagram(&d, &mut rng, radius);
        checks += n;
        failures.extend(f.into_iter().map(|m| format!("case {case}: {m}")));
    }
    if failures.is_empty() {
        Ok(json!({ "seed": seed, "cases": cases, "checks": checks, "failures": 0 }))
    } else {
        Err(Failure(json!({
            "kind": "selftest",
            "message": format!("{} of {checks} checks failed", failures.len()),
            "failures": failures,
        })))
    }
}
