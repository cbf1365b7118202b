//! Set definitions: the JSON file format and the built-in example sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::MeasureModel;
use crate::momkit::GeneratorSet;
use crate::mvpoly::literal::{parse_literal, to_literal, PolyLiteral};
use crate::mvpoly::{MultiIndex, Poly, Rational};

/// On-disk description of S. The constant generator g_0 = 1 is implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetDefinition {
    pub name: String,
    pub n: usize,
    #[serde(rename = "R")]
    pub radius: f64,
    pub generators: Vec<PolyLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_measure: Option<String>,
}

pub const BUILTIN_SETS: [&str; 6] = ["interval", "box2d", "ball2d", "simplex2d", "ellipsoids2", "tvscreen"];

impl SetDefinition {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("set definitions always serialize")
    }

    pub fn from_set(set: &GeneratorSet, known_measure: Option<&str>) -> Self {
        SetDefinition {
            name: set.name().to_string(),
            n: set.dim(),
            radius: set.radius(),
            generators: set.generators()[1..].iter().map(to_literal).collect(),
            known_measure: known_measure.map(str::to_string),
        }
    }

    pub fn build(&self) -> Result<GeneratorSet> {
        let gens = self
            .generators
            .iter()
            .map(|lit| parse_literal(lit, self.n))
            .collect::<Result<Vec<_>>>()?;
        if gens.iter().any(|g| g.degree() == 0) {
            return Err(Error::Parse("constant generators are implicit and must not be listed".into()));
        }
        GeneratorSet::new(self.name.clone(), self.n, self.radius, gens)
    }

    pub fn known_model(&self) -> Result<Option<MeasureModel>> {
        self.known_measure.as_deref().map(MeasureModel::from_key).transpose()
    }
}

fn poly(n: usize, terms: &[(&[u32], i64, i64)]) -> Poly<Rational> {
    Poly::from_terms(
        n,
        terms.iter().map(|(e, p, q)| (MultiIndex::new(e.to_vec()), crate::mvpoly::ratio(*p, *q))),
    )
    .expect("built-in generators are well formed")
}

/// A built-in set together with its known equilibrium measure, if any.
pub fn builtin(name: &str) -> Result<(GeneratorSet, Option<MeasureModel>)> {
    let (set, model) = match name {
        "interval" => (
            GeneratorSet::new(name, 1, 1.0, vec![poly(1, &[(&[0], 1, 1), (&[2], -1, 1)])])?,
            Some(MeasureModel::IntervalArcsine),
        ),
        "box2d" => {
            let gx = poly(2, &[(&[0, 0], 1, 1), (&[2, 0], -1, 1)]);
            let gy = poly(2, &[(&[0, 0], 1, 1), (&[0, 2], -1, 1)]);
            let gxy = &gx * &gy;
            (GeneratorSet::new(name, 2, 2.0, vec![gx, gy, gxy])?, Some(MeasureModel::BoxArcsine(2)))
        }
        "ball2d" => (
            GeneratorSet::new(name, 2, 1.0, vec![poly(2, &[(&[0, 0], 1, 1), (&[2, 0], -1, 1), (&[0, 2], -1, 1)])])?,
            Some(MeasureModel::Ball2d),
        ),
        "simplex2d" => (
            GeneratorSet::new(
                name,
                2,
                1.0,
                vec![
                    poly(2, &[(&[1, 0], 1, 1), (&[2, 0], -1, 1), (&[1, 1], -1, 1)]),
                    poly(2, &[(&[0, 1], 1, 1), (&[0, 2], -1, 1), (&[1, 1], -1, 1)]),
                    poly(2, &[(&[1, 1], 1, 1)]),
                ],
            )?,
            Some(MeasureModel::Simplex2d),
        ),
        // (g1 + g2)/5 = 2/5 − ‖x‖²
        "ellipsoids2" => (
            GeneratorSet::new(
                name,
                2,
                0.4,
                vec![
                    poly(2, &[(&[0, 0], 1, 1), (&[2, 0], -2, 1), (&[0, 2], -3, 1)]),
                    poly(2, &[(&[0, 0], 1, 1), (&[2, 0], -3, 1), (&[0, 2], -2, 1)]),
                ],
            )?,
            None,
        ),
        "tvscreen" => (
            GeneratorSet::new(name, 2, 2.0, vec![poly(2, &[(&[0, 0], 1, 1), (&[4, 0], -1, 1), (&[0, 4], -1, 1)])])?,
            None,
        ),
        other => return Err(Error::UnknownModel(other.to_string())),
    };
    Ok((set, model))
}

/// Built-in definition in file form.
pub fn builtin_definition(name: &str) -> Result<SetDefinition> {
    let (set, model) = builtin(name)?;
    let key = model.map(|_| name);
    Ok(SetDefinition::from_set(&set, key))
}

/// Literature optimum entries for a built-in set at one order.
struct LiteratureValues {
    set: &'static str,
    t: u32,
    entries: &'static [(&'static [u32], f64)],
    note: &'static str,
}

const LITERATURE: [LiteratureValues; 3] = [
    LiteratureValues {
        set: "ellipsoids2",
        t: 1,
        entries: &[(&[2, 0], 0.00999961), (&[0, 2], 0.00999962)],
        note: "symmetric stationarity 1/a - 5/(1-5a) = 0 gives a = 1/10 exactly",
    },
    LiteratureValues {
        set: "ellipsoids2",
        t: 2,
        entries: &[(&[2, 0], 0.0117564), (&[0, 2], 0.01175)],
        note: "literature values disagree with the optimum computed here",
    },
    LiteratureValues {
        set: "ellipsoids2",
        t: 3,
        entries: &[(&[2, 0], 0.011506), (&[0, 2], 0.0111425)],
        note: "literature values disagree with the optimum computed here",
    },
];

/// Tolerance beyond which a computed entry is flagged against a literature value.
pub const REFERENCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceEntry {
    pub alpha: Vec<u32>,
    pub literature: crate::json::Sig17,
    pub computed: crate::json::Sig17,
    pub deviation: crate::json::Sig17,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceComparison {
    pub entries: Vec<ReferenceEntry>,
    /// True when some entry deviates from the literature value by more than [`REFERENCE_TOL`].
    pub flagged: bool,
    pub note: String,
}

/// Compare a solve against literature values for the same set and order, if any.
pub fn compare_reference(report: &crate::maxdet::SolveReport) -> Option<ReferenceComparison> {
    use crate::json::Sig17;
    let literature = LITERATURE.iter().find(|p| p.set == report.set.name() && p.t == report.t)?;
    let entries: Vec<ReferenceEntry> = literature
        .entries
        .iter()
        .filter_map(|(alpha, value)| {
            let computed = *report.phi.get(&MultiIndex::new(alpha.to_vec())).ok()?;
            Some(ReferenceEntry {
                alpha: alpha.to_vec(),
                literature: Sig17(*value),
                computed: Sig17(computed),
                deviation: Sig17((computed - value).abs()),
            })
        })
        .collect();
    let flagged = entries.iter().any(|e| e.deviation.0 > REFERENCE_TOL);
    Some(ReferenceComparison { entries, flagged, note: literature.note.to_string() })
}
