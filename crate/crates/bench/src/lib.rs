//! Benchmarks live in `benches/`; this crate has no library code beyond the
//! fixtures they share.

use heegaard_core::atlas::{build_annulus_open_book, build_torus_diagram, stabilize};
use heegaard_core::HeegaardDiagram;

/// Named diagrams of increasing size.
pub fn fixtures() -> Vec<(String, HeegaardDiagram)> {
    let mut out = Vec::new();
    for p in [3, 7, 13] {
        out.push((format!("torus({p},1)"), build_torus_diagram(p, 1).expect("coprime").diagram));
    }
    out.push(("torus(11,4)".into(), build_torus_diagram(11, 4).expect("coprime").diagram));
    out.push(("openbook(-4)".into(), build_annulus_open_book(-4).expect("valid").diagram));
    let twice = stabilize(&stabilize(&build_torus_diagram(5, 2).expect("coprime")).expect("valid").0).expect("valid").0;
    out.push(("torus(5,2)#2".into(), twice.diagram));
    out
}
