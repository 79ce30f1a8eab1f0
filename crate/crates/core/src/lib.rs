//! Combinatorial Heegaard diagrams: domains, Maslov gradings and layer
//! decompositions.

pub mod atlas;
pub mod diagram;
pub mod grading;
pub mod layers;
pub mod zlattice;

pub use diagram::{
    assemble_regions, parse_diagram, trace_faces, CurveSystemInput, DiagramError, Family,
    HeegaardDiagram, Locator, Quadrant, Region, Side, Sign,
};
pub use zlattice::{
    gcd_over_lattice, smith_invariants, solve_integer_system, AffineSolutionSet, IntMatrix,
    IntegerSolver,
};
pub use grading::{
    enumerate_generators, grading_table, homology_of_y, maslov_index, positive_representative,
    relative_grading, solve_domain, spinc_partition, Domain, DomainSolution, Generator, Grader,
    GradingError, GradingLabel, GradingTable, HomologyY, SpincClass, TwistedElement,
};
pub use atlas::{
    build_annulus_open_book, build_s1s2, build_torus_diagram, stabilize, AtlasError,
    MarkedDiagram,
};
pub use layers::{
    audit_index, classify_corner, decompose_layers, layer_euler, layer_index, AuditReport,
    CornerClass, LayerError, LayerSurface, Role,
};
