//! Graphviz export.

use std::fmt::Write;

use crate::map::{CombinatorialMap, FaceColoring};

/// Undirected DOT graph of the vertices and edges of `map`. Each edge is
/// annotated with the faces on its two sides; with a coloring, those face
/// colors are listed too and every face gets a comment line with its color.
pub fn export_dot(map: &CombinatorialMap, coloring: Option<&FaceColoring>) -> String {
    let mut out = String::from("graph map {\n");
    for v in 0..map.vertex_count() {
        writeln!(out, "  v{v} [label=\"{v}\"];").unwrap();
    }
    for e in 0..map.edge_count() {
        let [d0, d1] = map.edge_darts(e);
        let (u, v) = map.edge_endpoints(e);
        let (f0, f1) = (map.face_of(d0), map.face_of(d1));
        write!(out, "  v{u} -- v{v} [label=\"e{e}\", faces=\"{f0},{f1}\"").unwrap();
        if let Some(c) = coloring {
            write!(
                out,
                ", face_colors=\"{},{}\"",
                c.color_of(f0).name(),
                c.color_of(f1).name()
            )
            .unwrap();
        }
        out.push_str("];\n");
    }
    if let Some(c) = coloring {
        for f in 0..map.face_count() {
            let vs: Vec<String> = map.face_vertices(f).iter().map(|v| v.to_string()).collect();
            writeln!(
                out,
                "  // face {f} color={} vertices={}",
                c.color_of(f).name(),
                vs.join(",")
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{hex_torus_map, tetrahedron};
    use crate::map::face_coloring;

    #[test]
    fn tetrahedron_dot() {
        let s = export_dot(&tetrahedron(), None);
        let nodes = s.lines().filter(|l| l.contains("[label=") && !l.contains("--"));
        assert_eq!(nodes.count(), 4);
        assert_eq!(s.matches(" -- ").count(), 6);
    }

    #[test]
    fn colored_faces_annotated() {
        let m = hex_torus_map(3, 3);
        let c = face_coloring(&m, 3).unwrap();
        let s = export_dot(&m, Some(&c));
        assert_eq!(s.matches("// face ").count(), 9);
        assert_eq!(s.matches("face_colors=").count(), 27);
    }

    #[test]
    fn empty_map_has_empty_body() {
        assert_eq!(export_dot(&CombinatorialMap::empty(), None), "graph map {\n}\n");
    }
}
