use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::bracket::determinant_of_jones;
use super::{jones, project_to_diagram, KnotDiagram, KnotError, LaurentPolynomial};
use crate::geom::{Point3, Tolerance};
use crate::polygon::Polygon;

/// Knot types in the reference table.
///
/// Chiral types are named by the sign of the writhe of their minimal
/// diagram: `TrefoilRh`, `FiveOne` and `FiveTwo` have positive writhe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KnotLabel {
    #[serde(rename = "unknot")]
    Unknot,
    #[serde(rename = "trefoil_RH")]
    TrefoilRh,
    #[serde(rename = "trefoil_LH")]
    TrefoilLh,
    #[serde(rename = "figure_eight")]
    FigureEight,
    #[serde(rename = "5_1")]
    FiveOne,
    #[serde(rename = "5_1*")]
    FiveOneMirror,
    #[serde(rename = "5_2")]
    FiveTwo,
    #[serde(rename = "5_2*")]
    FiveTwoMirror,
    #[serde(rename = "unknown")]
    Unknown,
}

impl KnotLabel {
    pub const ALL: [KnotLabel; 9] = [
        KnotLabel::Unknot,
        KnotLabel::TrefoilRh,
        KnotLabel::TrefoilLh,
        KnotLabel::FigureEight,
        KnotLabel::FiveOne,
        KnotLabel::FiveOneMirror,
        KnotLabel::FiveTwo,
        KnotLabel::FiveTwoMirror,
        KnotLabel::Unknown,
    ];

    pub fn mirror(self) -> KnotLabel {
        use KnotLabel::*;
        match self {
            TrefoilRh => TrefoilLh,
            TrefoilLh => TrefoilRh,
            FiveOne => FiveOneMirror,
            FiveOneMirror => FiveOne,
            FiveTwo => FiveTwoMirror,
            FiveTwoMirror => FiveTwo,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        use KnotLabel::*;
        match self {
            Unknot => "unknot",
            TrefoilRh => "trefoil_RH",
            TrefoilLh => "trefoil_LH",
            FigureEight => "figure_eight",
            FiveOne => "5_1",
            FiveOneMirror => "5_1*",
            FiveTwo => "5_2",
            FiveTwoMirror => "5_2*",
            Unknown => "unknown",
        }
    }
}

impl fmt::Display for KnotLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KnotLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        KnotLabel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown knot label {s:?}"))
    }
}

/// Result of classifying a polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotClass {
    pub label: KnotLabel,
    /// Writhe-normalized bracket in the variable `A`.
    pub jones: LaurentPolynomial,
    pub determinant: u64,
    pub writhe: i64,
    pub crossings: usize,
    pub direction: Option<Point3>,
}

impl KnotClass {
    /// Label together with the invariants, for grouping results that share
    /// a label but not a type (`unknown`).
    pub fn key(&self) -> String {
        match self.label {
            KnotLabel::Unknown => format!("unknown[{}]", self.jones),
            l => l.name().to_string(),
        }
    }
}

/// Reference PD codes. Arcs are labelled consecutively along the
/// orientation; these are the negative-writhe chiralities.
const REFERENCE_PD: &[(KnotLabel, &[[usize; 4]])] = &[
    (KnotLabel::TrefoilLh, &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]),
    (KnotLabel::FigureEight, &[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]),
    (KnotLabel::FiveOneMirror, &[[1, 6, 2, 7], [3, 8, 4, 9], [5, 10, 6, 1], [7, 2, 8, 3], [9, 4, 10, 5]]),
    (KnotLabel::FiveTwoMirror, &[[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]]),
];

/// A reference knot: label, normalized bracket, determinant.
#[derive(Debug, Clone)]
pub struct ReferenceEntry {
    pub label: KnotLabel,
    pub jones: LaurentPolynomial,
    pub determinant: u64,
}

/// Reference invariants, computed once from [`REFERENCE_PD`] and the
/// mirrors of the chiral entries.
pub fn reference_table() -> &'static [ReferenceEntry] {
    static TABLE: OnceLock<Vec<ReferenceEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = vec![ReferenceEntry {
            label: KnotLabel::Unknot,
            jones: LaurentPolynomial::one(),
            determinant: 1,
        }];
        for &(label, pd) in REFERENCE_PD {
            let d = KnotDiagram::from_pd(pd).expect("reference PD code");
            let j = jones(&d).expect("small diagram");
            let det = determinant_of_jones(&j);
            if label.mirror() != label {
                out.push(ReferenceEntry { label: label.mirror(), jones: j.mirror(), determinant: det });
            }
            out.push(ReferenceEntry { label, jones: j, determinant: det });
        }
        out
    })
}

/// Looks up a normalized bracket in the reference table.
pub fn label_for(j: &LaurentPolynomial) -> KnotLabel {
    let det = determinant_of_jones(j);
    reference_table()
        .iter()
        .filter(|e| e.determinant == det)
        .find(|e| &e.jones == j)
        .map_or(KnotLabel::Unknown, |e| e.label)
}

/// Classifies the knot type of a diagram.
pub fn classify_diagram(d: &KnotDiagram) -> Result<KnotClass, KnotError> {
    let j = jones(d)?;
    Ok(KnotClass {
        label: label_for(&j),
        determinant: determinant_of_jones(&j),
        jones: j,
        writhe: d.writhe(),
        crossings: d.crossing_count(),
        direction: d.direction,
    })
}

/// Classifies an embedded polygon from a random generic projection.
pub fn classify_with<R: Rng + ?Sized>(k: &Polygon, rng: &mut R, tol: Tolerance) -> Result<KnotClass, KnotError> {
    let d = project_to_diagram(k, rng, tol)?;
    classify_diagram(&d)
}

/// Classifies with a fixed default seed.
pub fn classify(k: &Polygon, tol: Tolerance) -> Result<KnotClass, KnotError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    classify_with(k, &mut rng, tol)
}
