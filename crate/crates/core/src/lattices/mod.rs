//! Deterministic generators for the lattice families used throughout the
//! crate, plus JSON and DOT serialization.
//!
//! Dart numbering:
//! - `square_torus(L)`: vertex `(x, y)` has index `y * L + x`; its darts are
//!   `4v + k` for directions east, north, west, south (`k = 0..4`).
//! - `tri_torus(a, b)`: vertex `y * a + x`, darts `6v + k` for the six
//!   lattice directions in counterclockwise order starting east.
//! - `hex_torus(a, b)` is the dual of `tri_torus(a, b)`; `torus_488(L)` is
//!   the truncation of `square_torus(L)`.

mod dot;
mod io;
mod patch;

pub use dot::export_dot;
pub use io::{map_from_value, map_to_value, read_map, write_map, IoError};
pub use patch::{
    ktc_patch_map, tcc_triangle_map, KtcPatchSpec, PatchFace, PatchFaceKind, PatchMap,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::Value;
use thiserror::Error;

use crate::map::{self, CombinatorialMap, FaceColor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("{family}: constraint violated: {constraint}")]
    ConstraintViolation {
        family: &'static str,
        constraint: String,
    },
    #[error("unknown lattice family {0:?}")]
    UnknownFamily(String),
    #[error("bad lattice parameter: {0}")]
    BadParameter(String),
}

/// A lattice family with its size parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    SquareTorus { l: usize },
    HexTorus { a: usize, b: usize },
    Torus488 { l: usize },
    MixedStrip { width: usize, hex_rows: usize, square_rows: usize },
    PlanarKtcPatch { rows: usize, cols: usize, boundaries: usize },
    PlanarTccTriangle { d: usize },
    TriTorus { a: usize, b: usize },
    Torus31212 { a: usize, b: usize },
    Polygon { n: usize },
    Tetrahedron,
    Cube,
    Octahedron,
    Icosahedron,
    Dodecahedron,
}

impl LatticeSpec {
    pub fn family(&self) -> &'static str {
        match self {
            LatticeSpec::SquareTorus { .. } => "square_torus",
            LatticeSpec::HexTorus { .. } => "hex_torus",
            LatticeSpec::Torus488 { .. } => "torus_488",
            LatticeSpec::MixedStrip { .. } => "mixed_strip",
            LatticeSpec::PlanarKtcPatch { .. } => "planar_ktc_patch",
            LatticeSpec::PlanarTccTriangle { .. } => "planar_tcc_triangle",
            LatticeSpec::TriTorus { .. } => "tri_torus",
            LatticeSpec::Torus31212 { .. } => "torus_3_12_12",
            LatticeSpec::Polygon { .. } => "polygon",
            LatticeSpec::Tetrahedron => "tetrahedron",
            LatticeSpec::Cube => "cube",
            LatticeSpec::Octahedron => "octahedron",
            LatticeSpec::Icosahedron => "icosahedron",
            LatticeSpec::Dodecahedron => "dodecahedron",
        }
    }

    fn params(&self) -> Vec<(&'static str, usize)> {
        match *self {
            LatticeSpec::SquareTorus { l } | LatticeSpec::Torus488 { l } => vec![("L", l)],
            LatticeSpec::HexTorus { a, b }
            | LatticeSpec::TriTorus { a, b }
            | LatticeSpec::Torus31212 { a, b } => vec![("a", a), ("b", b)],
            LatticeSpec::MixedStrip {
                width,
                hex_rows,
                square_rows,
            } => vec![("w", width), ("hex", hex_rows), ("square", square_rows)],
            LatticeSpec::PlanarKtcPatch {
                rows,
                cols,
                boundaries,
            } => vec![("rows", rows), ("cols", cols), ("boundaries", boundaries)],
            LatticeSpec::PlanarTccTriangle { d } => vec![("d", d)],
            LatticeSpec::Polygon { n } => vec![("n", n)],
            _ => vec![],
        }
    }

    /// Checks the size constraints of the family.
    pub fn validate(&self) -> Result<(), LatticeError> {
        let fail = |constraint: &str| {
            Err(LatticeError::ConstraintViolation {
                family: self.family(),
                constraint: constraint.to_string(),
            })
        };
        match *self {
            LatticeSpec::SquareTorus { l } if l < 2 || l % 2 == 1 => {
                fail("checkerboard needs even L >= 2")
            }
            LatticeSpec::Torus488 { l } if l < 2 || l % 2 == 1 => fail("needs even L >= 2"),
            LatticeSpec::HexTorus { a, b } if a == 0 || b == 0 || a % 3 != 0 || b % 3 != 0 => {
                fail("3-face-coloring needs a and b to be positive multiples of 3")
            }
            LatticeSpec::Torus31212 { a, b } | LatticeSpec::TriTorus { a, b } if a < 3 || b < 3 => {
                fail("needs a, b >= 3")
            }
            LatticeSpec::MixedStrip {
                width,
                hex_rows,
                square_rows,
            } if width < 4
                || width % 2 == 1
                || hex_rows == 0
                || square_rows == 0
                || (hex_rows + square_rows) % 2 == 1 =>
            {
                fail("needs even w >= 4, hex >= 1, square >= 1 and even hex + square")
            }
            LatticeSpec::PlanarKtcPatch {
                rows,
                cols,
                boundaries,
            } if rows < 4 || cols < 4 || !(boundaries == 4 || boundaries == 6) => {
                fail("needs rows, cols >= 4 and boundaries in {4, 6}")
            }
            LatticeSpec::PlanarTccTriangle { d } if d < 3 || d % 2 == 0 => {
                fail("needs odd d >= 3")
            }
            LatticeSpec::Polygon { n: 0 } => fail("needs n >= 1"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family())?;
        let ps = self.params();
        for (i, (k, v)) in ps.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ":" } else { "," })?;
        }
        Ok(())
    }
}

impl FromStr for LatticeSpec {
    type Err = LatticeError;

    /// Parses `family:key=val,...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut kv: BTreeMap<String, usize> = BTreeMap::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| LatticeError::BadParameter(part.to_string()))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| LatticeError::BadParameter(part.to_string()))?;
            kv.insert(k.trim().to_string(), v);
        }
        let get = |k: &str| {
            kv.get(k)
                .copied()
                .ok_or_else(|| LatticeError::BadParameter(format!("{family}: missing {k}")))
        };
        let or = |k: &str, d: usize| kv.get(k).copied().unwrap_or(d);
        Ok(match family {
            "square_torus" => LatticeSpec::SquareTorus { l: get("L")? },
            "hex_torus" => {
                let a = get("a")?;
                LatticeSpec::HexTorus { a, b: or("b", a) }
            }
            "torus_488" => LatticeSpec::Torus488 { l: get("L")? },
            "mixed_strip" => LatticeSpec::MixedStrip {
                width: get("w")?,
                hex_rows: get("hex")?,
                square_rows: get("square")?,
            },
            "planar_ktc_patch" => LatticeSpec::PlanarKtcPatch {
                rows: get("rows")?,
                cols: get("cols")?,
                boundaries: or("boundaries", 4),
            },
            "planar_tcc_triangle" => LatticeSpec::PlanarTccTriangle { d: get("d")? },
            "tri_torus" => {
                let a = get("a")?;
                LatticeSpec::TriTorus { a, b: or("b", a) }
            }
            "torus_3_12_12" => {
                let a = get("a")?;
                LatticeSpec::Torus31212 { a, b: or("b", a) }
            }
            "polygon" => LatticeSpec::Polygon { n: get("n")? },
            "tetrahedron" => LatticeSpec::Tetrahedron,
            "cube" => LatticeSpec::Cube,
            "octahedron" => LatticeSpec::Octahedron,
            "icosahedron" => LatticeSpec::Icosahedron,
            "dodecahedron" => LatticeSpec::Dodecahedron,
            other => return Err(LatticeError::UnknownFamily(other.to_string())),
        })
    }
}

/// Generates the map of a lattice family. The spec string is recorded
/// under `meta.lattice`.
pub fn generate(spec: &LatticeSpec) -> Result<CombinatorialMap, LatticeError> {
    spec.validate()?;
    let mut m = match *spec {
        LatticeSpec::SquareTorus { l } => square_torus_map(l),
        LatticeSpec::HexTorus { a, b } => hex_torus_map(a, b),
        LatticeSpec::Torus488 { l } => torus_488_map(l),
        LatticeSpec::MixedStrip {
            width,
            hex_rows,
            square_rows,
        } => mixed_strip(width, hex_rows, square_rows).map,
        LatticeSpec::PlanarKtcPatch {
            rows,
            cols,
            boundaries,
        } => {
            let spec = if boundaries == 4 {
                KtcPatchSpec::four_boundaries(rows, cols)
            } else {
                KtcPatchSpec::six_boundaries(rows, cols)
            };
            ktc_patch_map(&spec)?.map
        }
        LatticeSpec::PlanarTccTriangle { d } => tcc_triangle_map(d)?.map,
        LatticeSpec::TriTorus { a, b } => tri_torus_map(a, b),
        LatticeSpec::Torus31212 { a, b } => map::truncate(&hex_torus_map(a, b)),
        LatticeSpec::Polygon { n } => polygon_map(n),
        LatticeSpec::Tetrahedron => tetrahedron(),
        LatticeSpec::Cube => cube(),
        LatticeSpec::Octahedron => octahedron(),
        LatticeSpec::Icosahedron => icosahedron(),
        LatticeSpec::Dodecahedron => dodecahedron(),
    };
    m.meta
        .insert("lattice".to_string(), Value::String(spec.to_string()));
    Ok(m)
}

/// Square lattice on an `l × l` torus, for any `l >= 1`. Small sizes have
/// loops (`l = 1`) or parallel edges (`l = 2`).
pub fn square_torus_map(l: usize) -> CombinatorialMap {
    square_torus_rect(l, l)
}

/// Square lattice on a `w × h` torus.
pub fn square_torus_rect(w: usize, h: usize) -> CombinatorialMap {
    let n = 4 * w * h;
    let vid = |x: usize, y: usize| (y % h) * w + (x % w);
    let mut alpha = vec![0; n];
    let mut sigma = vec![0; n];
    for y in 0..h {
        for x in 0..w {
            let v = vid(x, y);
            for k in 0..4 {
                sigma[4 * v + k] = 4 * v + (k + 1) % 4;
            }
            let east = vid(x + 1, y);
            let north = vid(x, y + 1);
            alpha[4 * v] = 4 * east + 2;
            alpha[4 * east + 2] = 4 * v;
            alpha[4 * v + 1] = 4 * north + 3;
            alpha[4 * north + 3] = 4 * v + 1;
        }
    }
    CombinatorialMap::new(alpha, sigma).expect("square torus is valid")
}

/// Triangular lattice on an `a × b` torus: 6-valent, all faces triangles.
pub fn tri_torus_map(a: usize, b: usize) -> CombinatorialMap {
    const DIRS: [(isize, isize); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
    let n = 6 * a * b;
    let vid = |x: isize, y: isize| {
        (y.rem_euclid(b as isize) as usize) * a + x.rem_euclid(a as isize) as usize
    };
    let mut alpha = vec![0; n];
    let mut sigma = vec![0; n];
    for y in 0..b as isize {
        for x in 0..a as isize {
            let v = vid(x, y);
            for (k, (dx, dy)) in DIRS.iter().enumerate() {
                sigma[6 * v + k] = 6 * v + (k + 1) % 6;
                let w = vid(x + dx, y + dy);
                alpha[6 * v + k] = 6 * w + (k + 3) % 6;
            }
        }
    }
    CombinatorialMap::new(alpha, sigma).expect("triangular torus is valid")
}

/// Honeycomb on a torus with `2ab` vertices and `ab` hexagons. Hexagon `f`
/// is vertex `f` of the triangular torus and has color `(x - y) mod 3`.
pub fn hex_torus_map(a: usize, b: usize) -> CombinatorialMap {
    map::dual(&tri_torus_map(a, b))
}

/// Truncated square tiling (squares and octagons) on an `l × l` torus.
pub fn torus_488_map(l: usize) -> CombinatorialMap {
    map::truncate(&square_torus_map(l))
}

/// A single `n`-gon on the sphere: two faces, `n` two-valent vertices.
///
/// Vertex `i` has darts `2i` (towards `i + 1`) and `2i + 1`; face 0 is the
/// walk over even darts.
pub fn polygon_map(n: usize) -> CombinatorialMap {
    let mut alpha = vec![0; 2 * n];
    let mut sigma = vec![0; 2 * n];
    for i in 0..n {
        let j = (i + 1) % n;
        alpha[2 * i] = 2 * j + 1;
        alpha[2 * j + 1] = 2 * i;
        sigma[2 * i] = 2 * i + 1;
        sigma[2 * i + 1] = 2 * i;
    }
    CombinatorialMap::new(alpha, sigma).expect("polygon is valid")
}

pub fn tetrahedron() -> CombinatorialMap {
    CombinatorialMap::from_faces(&[vec![0, 1, 2], vec![0, 3, 1], vec![1, 3, 2], vec![0, 2, 3]])
        .expect("tetrahedron")
}

pub fn cube() -> CombinatorialMap {
    CombinatorialMap::from_faces(&[
        vec![0, 3, 2, 1],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
    ])
    .expect("cube")
}

pub fn octahedron() -> CombinatorialMap {
    map::dual(&cube())
}

pub fn dodecahedron() -> CombinatorialMap {
    map::dual(&icosahedron())
}

pub fn icosahedron() -> CombinatorialMap {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![0, u(i), u(i + 1)]);
        faces.push(vec![u(i), l(i), u(i + 1)]);
        faces.push(vec![u(i + 1), l(i), l(i + 1)]);
        faces.push(vec![11, l(i + 1), l(i)]);
    }
    CombinatorialMap::from_faces(&faces).expect("icosahedron")
}

/// A mixed 3/4-valent torus together with the square-lattice faces each of
/// its faces was merged from.
#[derive(Clone, Debug)]
pub struct MixedStrip {
    pub map: CombinatorialMap,
    /// The `w × h` square torus the strip was cut from.
    pub parent: CombinatorialMap,
    /// Parent faces composing each face of `map`.
    pub merged_from: Vec<Vec<usize>>,
}

/// Square torus of width `w` and height `hex_rows + square_rows` in which
/// the vertical edges between rows `y` and `y + 1` with `x ≡ y (mod 2)` are
/// removed for `y < hex_rows`. Those rows form a brick-wall (honeycomb)
/// band; interior band vertices are 3-valent and the rest stay 4-valent.
pub fn mixed_strip(w: usize, hex_rows: usize, square_rows: usize) -> MixedStrip {
    let h = hex_rows + square_rows;
    let parent = square_torus_rect(w, h);
    let mut removed = Vec::new();
    for y in 0..hex_rows {
        for x in (0..w).filter(|x| x % 2 == y % 2) {
            let v = y * w + x;
            removed.push(parent.edge_of(4 * v + 1));
        }
    }
    let (m, ids) = map::delete_edges(&parent, &removed).expect("strip stays connected");
    let mut merged_from = vec![Vec::new(); m.face_count()];
    for (d, nd) in ids.iter().enumerate() {
        if let Some(nd) = nd {
            let old = parent.face_of(d);
            let list = &mut merged_from[m.face_of(*nd)];
            if !list.contains(&old) {
                list.push(old);
            }
        }
    }
    for l in &mut merged_from {
        l.sort_unstable();
    }
    MixedStrip {
        map: m,
        parent,
        merged_from,
    }
}

/// Rotates edge `e` of a 3-valent map (Stone–Wales move): the two faces
/// at the ends of `e` lose a side and the two faces along it gain one.
pub fn stone_wales(m: &CombinatorialMap, e: usize) -> CombinatorialMap {
    let [d1, d2] = m.edge_darts(e);
    let (a1, a2) = (m.sigma(d1), m.sigma(m.sigma(d1)));
    let (b1, b2) = (m.sigma(d2), m.sigma(m.sigma(d2)));
    let mut sigma = m.sigma_perm().to_vec();
    sigma[d1] = b2;
    sigma[b2] = a1;
    sigma[a1] = d1;
    sigma[d2] = a2;
    sigma[a2] = b1;
    sigma[b1] = d2;
    CombinatorialMap::new(m.alpha_perm().to_vec(), sigma).expect("edge rotation is valid")
}

/// Color of hexagon `f` in [`hex_torus_map`].
pub fn hex_torus_face_color(a: usize, f: usize) -> FaceColor {
    let (x, y) = (f % a, f / a);
    FaceColor::ALL[(x + 3 * a - y % 3) % 3]
}
