//! Generator density and average face size.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::FeatureError;
use crate::hsc::{CodeFamily, FaceGenerator, FaceGenerators, HscCode};
use crate::map::CombinatorialMap;
use crate::pauli::Letter;

type Q = Ratio<i64>;

fn ser_ratio<S: Serializer>(r: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn ser_opt_ratio<S: Serializer>(r: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

/// How many generators each face receives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityPolicy {
    /// `m` generators on every face.
    Uniform(u8),
    /// The largest admissible number on each face.
    MaxAdmissible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Vanishing,
    PersistentLocalLogicals,
}

/// Largest admissible generator count on face `f`: one if the face touches
/// a vertex that is not 3-valent or has odd length, two otherwise.
pub fn max_generators(map: &CombinatorialMap, f: usize) -> u8 {
    let odd = map.face_size(f) % 2 == 1;
    if odd || map.face_vertices(f).iter().any(|&v| map.valence(v) != 3) {
        1
    } else {
        2
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub family: String,
    pub genus: usize,
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    /// `2|E|/|F|`.
    #[serde(rename = "F_avg", serialize_with = "ser_ratio")]
    pub f_avg: Q,
    #[serde(rename = "F_avg_value")]
    pub f_avg_value: f64,
    /// `3|V|/(2 - 2g + |V|/2)` on 3-valent maps, `4|V|/(2 - 2g + |V|)` on
    /// 4-valent maps.
    #[serde(rename = "F_avg_formula", serialize_with = "ser_opt_ratio")]
    pub f_avg_formula: Option<Q>,
    /// Generators per face needed for a vanishing density, `|V|/|F|`.
    #[serde(serialize_with = "ser_ratio")]
    pub m_required: Q,
    /// Average over faces of the largest admissible generator count.
    #[serde(serialize_with = "ser_ratio")]
    pub m_max: Q,
    /// Number of faces allowing one and two generators.
    pub m_max_faces: [usize; 2],
    /// `1 - (generators placed)/|V|` under the policy.
    #[serde(serialize_with = "ser_ratio")]
    pub density: Q,
    /// `1 - 4m/(F_avg + |V_3|/|F|)` with uniform `m`, on maps with only 3-
    /// and 4-valent vertices.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub mixed_form_density: Option<Q>,
    pub verdict: Verdict,
    /// The closed forms agree with the direct counts.
    pub formula_vs_rank: bool,
}

fn family_name(map: &CombinatorialMap) -> String {
    match map.regular_valence() {
        Some(v) => format!("{v}-valent"),
        None => {
            let vs: Vec<String> = map.valence_profile().keys().map(|v| v.to_string()).collect();
            format!("mixed {}-valent", vs.join("/"))
        }
    }
}

/// Density of logical qubits implied by generator counting. The verdict is
/// vanishing exactly when the admissible generators can cover `|V|`.
pub fn density_analysis(map: &CombinatorialMap, policy: DensityPolicy) -> Result<DensityReport, FeatureError> {
    if !map.is_connected() {
        return Err(FeatureError::Disconnected(map.component_count()));
    }
    let (v, e, f) = (map.vertex_count(), map.edge_count(), map.face_count());
    if v == 0 || f == 0 {
        return Err(FeatureError::DegenerateParameters("empty map".to_string()));
    }
    let (vi, ei, fi) = (v as i64, e as i64, f as i64);
    let genus = map.genus();
    let f_avg = Q::new(2 * ei, fi);
    let f_avg_formula = match map.regular_valence() {
        Some(k @ (3 | 4)) => favg_analysis(
            if k == 3 { ValenceFamily::Three } else { ValenceFamily::Four },
            genus,
            v,
        )
        .ok()
        .map(|r| r.f_avg),
        _ => None,
    };
    let maxes: Vec<u8> = (0..f).map(|face| max_generators(map, face)).collect();
    let total_max: i64 = maxes.iter().map(|&m| m as i64).sum();
    let m_max_faces = [
        maxes.iter().filter(|&&m| m == 1).count(),
        maxes.iter().filter(|&&m| m == 2).count(),
    ];
    let placed = match policy {
        DensityPolicy::Uniform(m) => m as i64 * fi,
        DensityPolicy::MaxAdmissible => total_max,
    };
    let density = Q::from_integer(1) - Q::new(placed, vi);
    let profile = map.valence_profile();
    let mixed_form_density = match policy {
        DensityPolicy::Uniform(m) if profile.keys().all(|k| *k == 3 || *k == 4) => {
            let c = Q::new(*profile.get(&3).unwrap_or(&0) as i64, fi);
            Some(Q::from_integer(1) - Q::from_integer(4 * m as i64) / (f_avg + c))
        }
        _ => None,
    };
    let formula_vs_rank = f_avg_formula.is_none_or(|x| x == f_avg)
        && mixed_form_density.is_none_or(|x| x == density);
    Ok(DensityReport {
        family: family_name(map),
        genus,
        v,
        e,
        f,
        f_avg,
        f_avg_value: f_avg.to_f64().unwrap_or(f64::NAN),
        f_avg_formula,
        m_required: Q::new(vi, fi),
        m_max: Q::new(total_max, fi),
        m_max_faces,
        density,
        mixed_form_density,
        verdict: if total_max >= vi {
            Verdict::Vanishing
        } else {
            Verdict::PersistentLocalLogicals
        },
        formula_vs_rank,
    })
}

/// A witness code with the largest admissible generator count on every
/// face: `X` and `Z` on two-generator faces, `X` alone on the others. It is
/// one assignment among many and says nothing about the best distance.
pub fn saturated_code(map: &CombinatorialMap) -> Result<HscCode, FeatureError> {
    let faces = (0..map.face_count())
        .map(|f| {
            let len = map.face_size(f);
            let mut generators = vec![FaceGenerator::uniform(len, Letter::X)];
            if max_generators(map, f) == 2 {
                generators.push(FaceGenerator::uniform(len, Letter::Z));
            }
            FaceGenerators { face: f, generators }
        })
        .collect();
    let mut code = HscCode::new(map.clone(), faces, None, CodeFamily::Custom)?;
    code.fix_signs();
    Ok(code)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ValenceFamily {
    #[serde(rename = "3-valent")]
    Three,
    #[serde(rename = "4-valent")]
    Four,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FavgReport {
    pub family: ValenceFamily,
    pub genus: usize,
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "F_avg", serialize_with = "ser_ratio")]
    pub f_avg: Q,
    #[serde(rename = "F_avg_value")]
    pub f_avg_value: f64,
    /// Limit for large `|V|`.
    pub asymptote: u8,
}

/// Exact average face size of a regular map from Euler's formula.
pub fn favg_analysis(family: ValenceFamily, genus: usize, v: usize) -> Result<FavgReport, FeatureError> {
    let (vi, chi) = (v as i64, 2 - 2 * genus as i64);
    let (num, den, asymptote) = match family {
        // 3|V| / (2 - 2g + |V|/2), scaled by 2
        ValenceFamily::Three => {
            if v % 2 == 1 {
                return Err(FeatureError::DegenerateParameters(
                    "a 3-valent map has an even number of vertices".to_string(),
                ));
            }
            (6 * vi, 2 * chi + vi, 6)
        }
        ValenceFamily::Four => (4 * vi, chi + vi, 4),
    };
    if den <= 0 || v == 0 {
        return Err(FeatureError::DegenerateParameters(format!(
            "no faces for |V| = {v} at genus {genus}"
        )));
    }
    let f_avg = Q::new(num, den);
    Ok(FavgReport {
        family,
        genus,
        v,
        f_avg,
        f_avg_value: f_avg.to_f64().unwrap_or(f64::NAN),
        asymptote,
    })
}

impl DensityReport {
    pub fn density_is_zero(&self) -> bool {
        self.density.is_zero()
    }
}
