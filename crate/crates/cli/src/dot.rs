use std::fmt::Write;

use glw_core::filters::Lattices;

/// Hasse diagram of the ideals at `c`, bottom to top. Nodes carry their
/// dimension vectors; edges are covers.
pub fn lattice(lat: &Lattices, c: usize) -> String {
    let cat = lat.category();
    let l = lat.at(c);
    let mut out = String::new();
    writeln!(out, "digraph \"ideals_{}\" {{", cat.object_name(c)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (i, ideal) in l.ideals.iter().enumerate() {
        writeln!(
            out,
            "  n{} [label=\"{}\", tooltip=\"{}\"];",
            i,
            super::commands::dims_text(&ideal.dims()),
            lat.ideal_label(c, i)
        )
        .unwrap();
    }
    for &(a, b) in &l.hasse {
        writeln!(out, "  n{} -> n{};", a, b).unwrap();
    }
    out.push_str("}\n");
    out
}
