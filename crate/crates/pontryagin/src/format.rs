//! File formats and machine-readable output: the JSON descriptor an
//! invocation consumes and the report document it emits, plus the full
//! pipeline that assembles one from the other. Output is deterministic:
//! stable field order, sorted maps, reduced fractions, no timestamps.

use crate::error::{Error, Result};
use crate::manifold::{
    classify_low_rank, hyperbolicity, normalize_basis, validate, validation_error,
    build_presentation, Hyperbolicity, LowRankType, ManifoldDescriptor, Presentation,
    ValidatedManifold,
};
use crate::quotient::Route;
use crate::rational::Rational;
use crate::report::{
    gamma_caveat, loop_homology_report, moore_report, rational_ranks, render_presentation,
    sphere_decomposition, MooreReport, PiDecomposition, ReportOptions,
};
use crate::series::lie_dimensions;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A pairing entry in the descriptor file: an integer or a rational
/// rendered as `"p/q"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairingEntry {
    Int(i64),
    Text(String),
}

/// The JSON descriptor format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub name: String,
    pub n: u32,
    pub d: u32,
    pub generator_degrees: Vec<u32>,
    pub pairing: Vec<Vec<PairingEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_primes: Option<Vec<u64>>,
}

impl DescriptorFile {
    pub fn parse_str(text: &str) -> Result<ManifoldDescriptor> {
        let file: DescriptorFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_descriptor()
    }

    pub fn into_descriptor(self) -> Result<ManifoldDescriptor> {
        let pairing: Vec<Vec<Rational>> = self
            .pairing
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        PairingEntry::Int(n) => Ok(Rational::from_int(*n)),
                        PairingEntry::Text(s) => s.parse::<Rational>(),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ManifoldDescriptor {
            name: self.name,
            connectivity: self.n,
            dimension: self.d,
            generator_degrees: self.generator_degrees,
            pairing,
            torsion_primes: self.torsion_primes,
        })
    }

    /// Canonical echo of a descriptor: reduced fractions, integers as
    /// numbers. Serializing a parsed file through this is idempotent.
    pub fn from_descriptor(desc: &ManifoldDescriptor) -> DescriptorFile {
        let pairing = desc
            .pairing
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| match r.to_i64() {
                        Some(n) => PairingEntry::Int(n),
                        None => PairingEntry::Text(r.to_string()),
                    })
                    .collect()
            })
            .collect();
        DescriptorFile {
            name: desc.name.clone(),
            n: desc.connectivity,
            d: desc.dimension,
            generator_degrees: desc.generator_degrees.clone(),
            pairing,
            torsion_primes: desc.torsion_primes.clone(),
        }
    }
}

pub fn read_descriptor(path: &std::path::Path) -> Result<ManifoldDescriptor> {
    let text = std::fs::read_to_string(path)?;
    DescriptorFile::parse_str(&text)
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationSection {
    pub valid: bool,
    pub r: usize,
    pub total_rank: usize,
    pub hyperbolicity: Hyperbolicity,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationSection {
    pub generators: Vec<GeneratorInfo>,
    /// letters from smallest to largest in the working order, 1-based
    pub letter_order: Vec<u32>,
    /// the leading word (alpha, beta), 1-based letters
    pub leading_word: [u32; 2],
    pub graded_relation: String,
    pub ungraded_relation: String,
    /// change of basis from the input descriptor, columns = new basis
    pub basis_change: Vec<Vec<String>>,
    pub display: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub loop_degree: u32,
    pub generator_degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertSectionEntry {
    pub degree: u32,
    pub dim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub avoiding_words: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u64>,
    pub agreed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertSection {
    pub max_degree: u32,
    pub agreement: bool,
    pub entries: Vec<HilbertSectionEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub multiplicity: u64,
    /// standard Lyndon witnesses as 1-based letter-index arrays; absent
    /// beyond the witness budget
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSection {
    pub max_degree: u32,
    /// sphere dimension -> summand data
    pub summands: BTreeMap<u32, Summand>,
    pub witness_max_degree: u32,
    pub caveat: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationSection {
    pub kind: String,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homotopy_type: Option<LowRankType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
}

/// The machine-readable output of a full pipeline run.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub input_echo: DescriptorFile,
    pub validation: ValidationSection,
    pub presentation: Option<PresentationSection>,
    pub hilbert: Option<HilbertSection>,
    pub lie_dims: Option<Vec<u64>>,
    pub decomposition: Option<DecompositionSection>,
    pub rational_ranks: Option<Vec<u64>>,
    pub classification: ClassificationSection,
    pub moore: Option<MooreReport>,
    pub caveats: Vec<String>,
}

fn hilbert_section(table: &crate::quotient::HilbertTable, n: u32) -> HilbertSection {
    let entries = table
        .entries
        .iter()
        .map(|e| {
            let find = |r: Route| e.by_route.iter().find(|(x, _)| *x == r).map(|(_, d)| *d);
            HilbertSectionEntry {
                degree: e.degree,
                dim: e.dim(),
                series: find(Route::Series),
                avoiding_words: find(Route::AvoidingWords),
                oracle: find(Route::Oracle),
                agreed: e.agreed,
            }
        })
        .collect();
    HilbertSection {
        max_degree: n,
        agreement: table.agreement,
        entries,
    }
}

fn presentation_section(p: &Presentation) -> PresentationSection {
    let r = p.alphabet.len();
    let mut order: Vec<u32> = (1..=r as u32).collect();
    order.sort_by_key(|&x| p.alphabet.rank((x - 1) as u8));
    PresentationSection {
        generators: (0..r)
            .map(|i| GeneratorInfo {
                name: format!("u{}", i + 1),
                loop_degree: p.alphabet.degree(i as u8),
                generator_degree: p.alphabet.degree(i as u8) + 1,
            })
            .collect(),
        letter_order: order,
        leading_word: [p.leading.alpha as u32 + 1, p.leading.beta as u32 + 1],
        graded_relation: p.graded.element().render(),
        ungraded_relation: p.ungraded.element().render(),
        basis_change: p
            .change
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect(),
        display: render_presentation(p),
    }
}

fn decomposition_section(dec: &PiDecomposition) -> DecompositionSection {
    let mut summands = BTreeMap::new();
    for (&j, &mult) in &dec.multiplicities {
        let witnesses = if j >= 2 && j - 1 <= dec.witness_max_degree {
            Some(
                dec.witnesses
                    .get(&j)
                    .map(|ws| ws.iter().map(|w| w.display_indices()).collect())
                    .unwrap_or_default(),
            )
        } else {
            None
        };
        summands.insert(
            j,
            Summand {
                multiplicity: mult,
                witnesses,
            },
        );
    }
    DecompositionSection {
        max_degree: dec.max_degree,
        summands,
        witness_max_degree: dec.witness_max_degree,
        caveat: dec.caveat.clone(),
    }
}

fn classification_section(v: &ValidatedManifold) -> Result<ClassificationSection> {
    if v.is_hyperbolic() {
        Ok(ClassificationSection {
            kind: "hyperbolic".into(),
            r: v.r(),
            homotopy_type: None,
            display: None,
        })
    } else {
        let t = classify_low_rank(v)?;
        Ok(ClassificationSection {
            kind: "low-rank".into(),
            r: v.r(),
            homotopy_type: Some(t.clone()),
            display: Some(t.to_string()),
        })
    }
}

/// Runs the whole pipeline on a descriptor. Low-rank inputs (r <= 2) get
/// the classification branch only; hyperbolic inputs get the presentation,
/// the three-way Hilbert table, Lie dimensions, the sphere decomposition
/// with witnesses, rational ranks, and the growth report.
pub fn full_report(
    desc: &ManifoldDescriptor,
    opts: &ReportOptions,
    seed_ranks: Option<&[u8]>,
) -> Result<ReportDocument> {
    let v = validate(desc).map_err(validation_error)?;
    let validation = ValidationSection {
        valid: true,
        r: v.r(),
        total_rank: v.total_rank(),
        hyperbolicity: hyperbolicity(&v),
        violations: Vec::new(),
    };
    let mut caveats = vec![gamma_caveat()];
    if let Some(primes) = &desc.torsion_primes {
        caveats.push(format!(
            "declared torsion primes {primes:?} are always inverted"
        ));
    }
    let classification = classification_section(&v)?;
    if !v.is_hyperbolic() {
        return Ok(ReportDocument {
            input_echo: DescriptorFile::from_descriptor(desc),
            validation,
            presentation: None,
            hilbert: None,
            lie_dims: None,
            decomposition: None,
            rational_ranks: None,
            classification,
            moore: None,
            caveats,
        });
    }
    let p = build_presentation(&normalize_basis(&v, seed_ranks)?)?;
    let n = opts.max_degree;
    let lh = loop_homology_report(&p, opts)?;
    let q = crate::quotient::hilbert_denominator(&p.alphabet, p.relation_degree(), n as usize);
    let dims = lie_dimensions(&q, n as usize)?;
    let dec = sphere_decomposition(&p, n + 1, opts)?;
    let ranks = rational_ranks(&dec);
    let moore = moore_report(&p, &dec)?;
    Ok(ReportDocument {
        input_echo: DescriptorFile::from_descriptor(desc),
        validation,
        presentation: Some(presentation_section(&p)),
        hilbert: Some(hilbert_section(&lh.hilbert, n)),
        lie_dims: Some(dims),
        decomposition: Some(decomposition_section(&dec)),
        rational_ranks: Some(ranks),
        classification,
        moore: Some(moore),
        caveats,
    })
}

pub fn to_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialization");
    s.push('\n');
    s
}

/// The same data as the JSON document, rendered for reading.
pub fn to_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let echo = &doc.input_echo;
    out.push_str(&format!(
        "manifold {}: (n-1)-connected with n={}, dimension d={}, generators in degrees {:?}\n",
        echo.name, echo.n, echo.d, echo.generator_degrees
    ));
    out.push_str(&format!(
        "validation: r={}, total rank {}, {}\n",
        doc.validation.r,
        doc.validation.total_rank,
        match doc.validation.hyperbolicity {
            Hyperbolicity::Hyperbolic => "rationally hyperbolic",
            Hyperbolicity::Elliptic => "rationally elliptic",
        }
    ));
    if let Some(display) = &doc.classification.display {
        out.push_str(&format!(
            "classification: localized homotopy type {display}\n"
        ));
    }
    if let Some(p) = &doc.presentation {
        out.push_str(&format!("loop homology: {}\n", p.display));
        out.push_str(&format!(
            "  ungraded companion relation: {}\n",
            p.ungraded_relation
        ));
    }
    if let Some(h) = &doc.hilbert {
        out.push_str(&format!(
            "hilbert dimensions (loop degree 0..{}), agreement={}:\n",
            h.max_degree, h.agreement
        ));
        out.push_str("  deg  dim  routes\n");
        for e in &h.entries {
            let mut routes = Vec::new();
            if e.series.is_some() {
                routes.push("series");
            }
            if e.avoiding_words.is_some() {
                routes.push("avoiding-words");
            }
            if e.oracle.is_some() {
                routes.push("oracle");
            }
            out.push_str(&format!(
                "  {:>3}  {:>6}  {}{}\n",
                e.degree,
                e.dim,
                routes.join("+"),
                if e.agreed { "" } else { "  DISAGREE" }
            ));
        }
    }
    if let Some(dims) = &doc.lie_dims {
        out.push_str(&format!("lie dimensions (loop degree 1..): {dims:?}\n"));
    }
    if let Some(d) = &doc.decomposition {
        out.push_str(&format!(
            "homotopy decomposition through degree {} (witnesses checked to loop degree {}):\n",
            d.max_degree, d.witness_max_degree
        ));
        for (j, s) in &d.summands {
            let w = match &s.witnesses {
                Some(ws) => format!(
                    "  witnesses {}",
                    ws.iter()
                        .map(|w| {
                            w.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join("")
                        })
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                None => String::new(),
            };
            out.push_str(&format!("  pi_*(S^{j}) x {}{w}\n", s.multiplicity));
        }
    }
    if let Some(r) = &doc.rational_ranks {
        out.push_str(&format!("rational homotopy ranks by degree: {r:?}\n"));
    }
    if let Some(m) = &doc.moore {
        if m.applicable {
            let window = m
                .window
                .map(|(a, b)| format!("{a}..{b}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "growth: window {} fully populated: {}; top sphere S^{}; reference ratio {}\n",
                window, m.window_fully_populated, m.max_sphere_dimension, m.reference_ratio
            ));
            for row in &m.growth {
                out.push_str(&format!(
                    "  ratio at degree {:>2}: {}{}\n",
                    row.degree,
                    row.ratio,
                    if row.within_tolerance { "  (within 5%)" } else { "" }
                ));
            }
        }
        out.push_str(&format!("conclusion: {}\n", m.conclusion));
    }
    for c in &doc.caveats {
        out.push_str(&format!("caveat: {c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::tests::{x3, y2};

    fn x3_json() -> String {
        r#"{
            "name": "X3",
            "n": 2,
            "d": 4,
            "generator_degrees": [2, 2, 2],
            "pairing": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        }"#
        .to_string()
    }

    #[test]
    fn parse_and_roundtrip() {
        let desc = DescriptorFile::parse_str(&x3_json()).unwrap();
        assert_eq!(desc, x3());
        let echo = DescriptorFile::from_descriptor(&desc);
        let json1 = serde_json::to_string_pretty(&echo).unwrap();
        let reparsed = DescriptorFile::parse_str(&json1).unwrap();
        let json2 = serde_json::to_string_pretty(&DescriptorFile::from_descriptor(&reparsed)).unwrap();
        assert_eq!(json1, json2);
    }

    #[test]
    fn parse_rational_entries() {
        let text = r#"{
            "name": "half",
            "n": 3,
            "d": 7,
            "generator_degrees": [3, 4],
            "pairing": [[0, "1/2"], ["1/2", 0]]
        }"#;
        let desc = DescriptorFile::parse_str(text).unwrap();
        assert_eq!(desc.pairing[0][1], Rational::new(1i64, 2i64));
        // canonical echo keeps the fraction textual
        let echo = DescriptorFile::from_descriptor(&desc);
        let json = serde_json::to_string(&echo).unwrap();
        assert!(json.contains("\"1/2\""));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        let text = r#"{
            "name": "bad",
            "n": 3,
            "d": 7,
            "generator_degrees": [3, 4],
            "pairing": [[0, "1/0"], ["1/0", 0]]
        }"#;
        match DescriptorFile::parse_str(text) {
            Err(e @ Error::Parse(_)) => assert_eq!(e.exit_code(), 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_malformed_json() {
        match DescriptorFile::parse_str("{ not json") {
            Err(e @ Error::Parse(_)) => assert_eq!(e.exit_code(), 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn full_report_x3_is_deterministic() {
        let opts = ReportOptions {
            max_degree: 6,
            ..Default::default()
        };
        let doc1 = full_report(&x3(), &opts, None).unwrap();
        let doc2 = full_report(&x3(), &opts, None).unwrap();
        assert_eq!(to_json(&doc1), to_json(&doc2));
        assert!(doc1.hilbert.as_ref().unwrap().agreement);
        assert_eq!(doc1.lie_dims.as_ref().unwrap()[..4], [3, 2, 5, 10]);
        let text = to_text(&doc1);
        assert!(text.contains("rationally hyperbolic"));
    }

    #[test]
    fn full_report_y2_decomposition() {
        let opts = ReportOptions {
            max_degree: 6,
            ..Default::default()
        };
        let doc = full_report(&y2(), &opts, None).unwrap();
        let dec = doc.decomposition.unwrap();
        let mults: Vec<(u32, u64)> = dec
            .summands
            .iter()
            .map(|(j, s)| (*j, s.multiplicity))
            .collect();
        assert_eq!(mults, vec![(3, 2), (4, 2), (5, 1), (6, 3), (7, 3)]);
    }

    #[test]
    fn full_report_low_rank_is_classification_only() {
        let desc = ManifoldDescriptor {
            name: "s3xs4".into(),
            connectivity: 3,
            dimension: 7,
            generator_degrees: vec![3, 4],
            pairing: vec![
                vec![Rational::zero(), Rational::one()],
                vec![Rational::one(), Rational::zero()],
            ],
            torsion_primes: None,
        };
        let doc = full_report(&desc, &ReportOptions::default(), None).unwrap();
        assert!(doc.presentation.is_none());
        assert!(doc.hilbert.is_none());
        assert!(doc.decomposition.is_none());
        assert_eq!(doc.classification.kind, "low-rank");
        assert_eq!(doc.classification.display.as_deref(), Some("S^3 x S^4"));
    }

    #[test]
    fn full_report_rejects_invalid() {
        let mut bad = x3();
        bad.dimension = 5;
        let err = full_report(&bad, &ReportOptions::default(), None).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
