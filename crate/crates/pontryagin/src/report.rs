//! Headline outputs: the loop-homology presentation with its three-way
//! Hilbert table, the sphere-summand decomposition of the homotopy groups
//! with Lyndon-word witnesses, rational ranks, and the exponential-growth
//! report.

use crate::error::{Error, Result};
use crate::lyndon::standard_basis_degree;
use crate::manifold::Presentation;
use crate::quotient::{
    avoiding_words, hilbert_denominator, hilbert_series_dims, HilbertTable, QuotientEngine,
    Route, SliceOracle,
};
use crate::rational::Rational;
use crate::series::lie_dimensions;
use crate::word::Word;
use std::collections::BTreeMap;

/// Budgets for the expensive routes. The hard `word_guard` is the refusal
/// threshold; the two budgets decide how deep the oracle cross-check and
/// the witness computation go inside reports.
#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub max_degree: u32,
    pub oracle_budget: u64,
    pub witness_budget: u64,
    pub word_guard: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_degree: 12,
            oracle_budget: 8_192,
            witness_budget: 20_000,
            word_guard: crate::quotient::DEFAULT_WORD_GUARD,
        }
    }
}

/// The standing caveat attached to every homotopy-level conclusion.
pub fn gamma_caveat() -> String {
    "valid after inverting finitely many primes (torsion primes of H*, plus Hurewicz \
     denominators, plus implementation-chosen scalings); the precise prime set is not \
     computable from the cohomology data and is reported symbolically"
        .to_string()
}

/// Presentation text plus the Hilbert table computed by every route whose
/// budget allows it, with agreement status.
pub struct LoopHomologyReport {
    pub presentation_text: String,
    pub hilbert: HilbertTable,
}

#[allow(clippy::needless_range_loop)]
pub fn loop_homology_report(p: &Presentation, opts: &ReportOptions) -> Result<LoopHomologyReport> {
    let n = opts.max_degree as usize;
    let counts = p.alphabet.word_counts(n);
    let series = hilbert_series_dims(&p.alphabet, p.relation_degree(), n)?;
    let mut avoid_route: Vec<Option<u64>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if counts[m] <= opts.word_guard {
            avoid_route.push(Some(
                avoiding_words(&p.alphabet, p.leading, m as u32).len() as u64,
            ));
        } else {
            avoid_route.push(None);
        }
    }
    let oracle = SliceOracle::new(p.graded.clone(), opts.word_guard);
    let mut oracle_route: Vec<Option<u64>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if counts[m] <= opts.oracle_budget {
            oracle_route.push(Some(counts[m] - oracle.rank(m as u32)?));
        } else {
            oracle_route.push(None);
        }
    }
    let hilbert = HilbertTable::from_routes(
        vec![
            (Route::Series, series.into_iter().map(Some).collect()),
            (Route::AvoidingWords, avoid_route),
            (Route::Oracle, oracle_route),
        ],
        n,
    );
    Ok(LoopHomologyReport {
        presentation_text: render_presentation(p),
        hilbert,
    })
}

pub fn render_presentation(p: &Presentation) -> String {
    let r = p.alphabet.len();
    let gens: Vec<String> = (1..=r).map(|i| format!("u{i}")).collect();
    let degs: Vec<String> = (0..r)
        .map(|i| format!("|u{}|={}", i + 1, p.alphabet.degree(i as u8)))
        .collect();
    format!(
        "T({}) / ({}), {}; leading word u{}.u{}",
        gens.join(","),
        p.graded.element().render(),
        degs.join(", "),
        p.leading.alpha + 1,
        p.leading.beta + 1
    )
}

/// Decomposition of the p-local homotopy groups into sphere summands:
/// multiplicity of `π_* S^j` is the Lie dimension in loop degree `j - 1`,
/// witnessed by standard Lyndon words where the word spaces fit the
/// witness budget.
#[derive(Clone, Debug)]
pub struct PiDecomposition {
    pub max_degree: u32,
    /// sphere dimension -> multiplicity
    pub multiplicities: BTreeMap<u32, u64>,
    /// sphere dimension -> witnessing standard Lyndon words
    pub witnesses: BTreeMap<u32, Vec<Word>>,
    /// loop degrees up to this bound carry witnesses and passed the
    /// count cross-check
    pub witness_max_degree: u32,
    pub caveat: String,
}

/// Multiplicities from the Möbius route for sphere dimensions `j <= s`,
/// with greedy-Lyndon witnesses cross-checked degree by degree; a count
/// mismatch aborts naming the first bad degree.
pub fn sphere_decomposition(
    p: &Presentation,
    s: u32,
    opts: &ReportOptions,
) -> Result<PiDecomposition> {
    if p.manifold.r() < 3 {
        return Err(Error::Usage(
            "sphere decomposition needs the hyperbolic case r >= 3".into(),
        ));
    }
    if s < 1 {
        return Err(Error::Usage("maximum homotopy degree must be >= 1".into()));
    }
    let max_loop = s - 1;
    let q = hilbert_denominator(&p.alphabet, p.relation_degree(), max_loop as usize);
    let dims = lie_dimensions(&q, max_loop as usize)?;
    let n = p.manifold.descriptor().connectivity;
    let mut multiplicities = BTreeMap::new();
    for m in 1..=max_loop {
        let l = dims[(m - 1) as usize];
        if l > 0 {
            if m + 1 < n {
                return Err(Error::Inconsistency(format!(
                    "sphere summand S^{} below the connectivity bound {n}",
                    m + 1
                )));
            }
            multiplicities.insert(m + 1, l);
        }
    }

    let counts = p.alphabet.word_counts(max_loop as usize);
    let engine = QuotientEngine::new(p.ungraded.clone(), p.leading, opts.word_guard);
    let mut witnesses = BTreeMap::new();
    let mut witness_max_degree = 0;
    for m in 1..=max_loop {
        if counts[m as usize] > opts.witness_budget {
            break;
        }
        let entries = standard_basis_degree(&engine, m)?;
        let expected = dims[(m - 1) as usize];
        if entries.len() as u64 != expected {
            return Err(Error::Inconsistency(format!(
                "standard-basis count {} disagrees with the Möbius dimension {} at loop degree {}",
                entries.len(),
                expected,
                m
            )));
        }
        witness_max_degree = m;
        if !entries.is_empty() {
            witnesses.insert(m + 1, entries.into_iter().map(|e| e.word).collect());
        }
    }
    Ok(PiDecomposition {
        max_degree: s,
        multiplicities,
        witnesses,
        witness_max_degree,
        caveat: gamma_caveat(),
    })
}

/// Ranks of `π_s(M) ⊗ Q` for `s = 0..=S`: a sphere `S^j` contributes at
/// `s = j`, plus at `s = 2j - 1` when `j` is even.
pub fn rational_ranks(dec: &PiDecomposition) -> Vec<u64> {
    let s_max = dec.max_degree as usize;
    let mut out = vec![0u64; s_max + 1];
    for (&j, &mult) in &dec.multiplicities {
        if (j as usize) <= s_max {
            out[j as usize] += mult;
        }
        if j % 2 == 0 {
            let s = 2 * j as usize - 1;
            if s <= s_max {
                out[s] += mult;
            }
        }
    }
    out
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct GrowthRow {
    pub degree: u32,
    pub ratio: String,
    pub within_tolerance: bool,
}

/// Exponential-growth summary: positivity of the Lie dimensions across the
/// stated window, the top sphere dimension seen, and Hilbert-coefficient
/// ratios against the reciprocal of the denominator's smallest positive
/// root (bisected exactly; no floating point).
#[derive(Clone, Debug, serde::Serialize)]
pub struct MooreReport {
    pub applicable: bool,
    pub window: Option<(u32, u32)>,
    pub window_fully_populated: bool,
    pub max_sphere_dimension: u32,
    pub reference_ratio: String,
    pub growth: Vec<GrowthRow>,
    pub conclusion: String,
}

pub fn moore_report(p: &Presentation, dec: &PiDecomposition) -> Result<MooreReport> {
    if p.manifold.r() < 3 {
        return Ok(MooreReport {
            applicable: false,
            window: None,
            window_fully_populated: false,
            max_sphere_dimension: 0,
            reference_ratio: String::new(),
            growth: Vec::new(),
            conclusion: "not applicable: the manifold is rationally elliptic (r <= 2); \
                         the homotopy groups are governed by the low-rank classification"
                .into(),
        });
    }
    let s = dec.max_degree;
    let max_loop = s - 1;
    let m0 = p.alphabet.min_degree();
    let populated = (m0..=max_loop)
        .all(|m| dec.multiplicities.get(&(m + 1)).copied().unwrap_or(0) > 0);
    let max_sphere = dec
        .multiplicities
        .iter()
        .rev()
        .find(|(_, &mult)| mult > 0)
        .map(|(&j, _)| j)
        .unwrap_or(0);

    // reciprocal of the smallest positive root of the denominator, by
    // exact bisection on [0, 1]
    let q = hilbert_denominator(&p.alphabet, p.relation_degree(), p.relation_degree() as usize);
    let (root_lo, root_hi) = bisect_root(q.coeffs(), 64)?;
    let rho_lo = root_hi.recip();
    let rho_hi = root_lo.recip();

    let dims = hilbert_series_dims(&p.alphabet, p.relation_degree(), max_loop as usize)?;
    let tol_num = Rational::from_int(5);
    let tol_den = Rational::from_int(100);
    let mut growth = Vec::new();
    for m in 1..=max_loop as usize {
        if dims[m - 1] == 0 {
            continue;
        }
        let ratio = Rational::new(dims[m] as i64, dims[m - 1] as i64);
        // certified |ratio - rho| <= 0.05 rho via the bisection interval
        let lo_ok = ratio >= (&rho_hi - &(&(&rho_hi * &tol_num) / &tol_den));
        let hi_ok = ratio <= (&rho_lo + &(&(&rho_lo * &tol_num) / &tol_den));
        growth.push(GrowthRow {
            degree: m as u32,
            ratio: ratio.to_decimal_string(6),
            within_tolerance: lo_ok && hi_ok,
        });
    }
    let reference_ratio = {
        // midpoint rendering of the certified interval
        let mid = &(&rho_lo + &rho_hi) / &Rational::from_int(2);
        mid.to_decimal_string(6)
    };
    Ok(MooreReport {
        applicable: true,
        window: Some((m0, max_loop)),
        window_fully_populated: populated,
        max_sphere_dimension: max_sphere,
        reference_ratio,
        growth,
        conclusion: format!(
            "conditional on the sphere decomposition: Lyndon basis elements occur in \
             arbitrarily large loop degrees, so sphere summands of arbitrarily large \
             dimension appear and, for every prime p outside the finite excluded set, \
             no power of p bounds the torsion of the homotopy groups ({})",
            gamma_caveat()
        ),
    })
}

/// Bisect the smallest positive root of a polynomial with rational
/// coefficients in (0, 1]; assumes a sign change on the interval.
fn bisect_root(coeffs: &[Rational], iterations: u32) -> Result<(Rational, Rational)> {
    let eval = |t: &Rational| -> Rational {
        let mut acc = Rational::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    };
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    let f_hi = eval(&hi);
    if !f_hi.is_negative() && !f_hi.is_zero() {
        return Err(Error::Inconsistency(
            "growth reference root: denominator has no sign change on (0, 1]".into(),
        ));
    }
    for _ in 0..iterations {
        let mid = &(&lo + &hi) / &Rational::from_int(2);
        let v = eval(&mid);
        if v.is_zero() {
            return Ok((mid.clone(), mid));
        }
        if v.is_negative() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{presentation_of, validate};
    use crate::manifold::tests::{x3, y2};

    fn x3_presentation() -> Presentation {
        presentation_of(&validate(&x3()).unwrap()).unwrap()
    }

    fn y2_presentation() -> Presentation {
        presentation_of(&validate(&y2()).unwrap()).unwrap()
    }

    #[test]
    fn x3_loop_homology_three_routes_agree() {
        let p = x3_presentation();
        let opts = ReportOptions {
            max_degree: 5,
            ..Default::default()
        };
        let rep = loop_homology_report(&p, &opts).unwrap();
        assert!(rep.hilbert.agreement);
        assert_eq!(rep.hilbert.dims(), vec![1, 3, 8, 21, 55, 144]);
        for e in &rep.hilbert.entries {
            assert_eq!(e.by_route.len(), 3, "degree {}", e.degree);
        }
        assert!(rep.presentation_text.contains("T(u1,u2,u3)"));
    }

    #[test]
    fn y2_loop_homology_dims() {
        let p = y2_presentation();
        let opts = ReportOptions {
            max_degree: 6,
            ..Default::default()
        };
        let rep = loop_homology_report(&p, &opts).unwrap();
        assert!(rep.hilbert.agreement);
        assert_eq!(rep.hilbert.dims(), vec![1, 0, 2, 2, 4, 7, 12]);
    }

    #[test]
    fn x3_decomposition_small() {
        let p = x3_presentation();
        let dec = sphere_decomposition(&p, 5, &ReportOptions::default()).unwrap();
        let expect: BTreeMap<u32, u64> = [(2, 3), (3, 2), (4, 5), (5, 10)].into();
        assert_eq!(dec.multiplicities, expect);
        assert_eq!(dec.witness_max_degree, 4);
        for (&j, ws) in &dec.witnesses {
            assert_eq!(ws.len() as u64, dec.multiplicities[&j]);
        }
    }

    #[test]
    fn y2_decomposition() {
        let p = y2_presentation();
        let dec = sphere_decomposition(&p, 7, &ReportOptions::default()).unwrap();
        let expect: BTreeMap<u32, u64> = [(3, 2), (4, 2), (5, 1), (6, 3), (7, 3)].into();
        assert_eq!(dec.multiplicities, expect);
        // no sphere below the connectivity bound
        assert!(dec.multiplicities.keys().all(|&j| j >= 3));
    }

    #[test]
    fn x3_rational_ranks() {
        let p = x3_presentation();
        let dec = sphere_decomposition(&p, 5, &ReportOptions::default()).unwrap();
        let ranks = rational_ranks(&dec);
        // π_2..π_5: 3, 5, 5, 10; the classical count for a simply
        // connected 4-manifold gives rank π_3 = b2(b2+1)/2 - 1 = 5
        assert_eq!(&ranks[2..=5], &[3, 5, 5, 10]);
        let b2 = 3u64;
        assert_eq!(ranks[3], b2 * (b2 + 1) / 2 - 1);
    }

    #[test]
    fn y2_rational_ranks() {
        let p = y2_presentation();
        let dec = sphere_decomposition(&p, 7, &ReportOptions::default()).unwrap();
        let ranks = rational_ranks(&dec);
        assert_eq!(ranks[3], 2);
        assert_eq!(ranks[4], 2);
        // S^4 contributes a Whitehead-square class in degree 7
        assert_eq!(ranks[7], 3 + 2);
    }

    #[test]
    fn rank_two_decomposition_ranks() {
        // a single sphere summand S^d: rank 1 at d, plus 2d-1 when d even
        let dec = PiDecomposition {
            max_degree: 7,
            multiplicities: [(4, 1)].into(),
            witnesses: BTreeMap::new(),
            witness_max_degree: 0,
            caveat: gamma_caveat(),
        };
        let ranks = rational_ranks(&dec);
        assert_eq!(ranks[4], 1);
        assert_eq!(ranks[7], 1);
        assert_eq!(ranks.iter().sum::<u64>(), 2);
    }

    #[test]
    fn x3_moore_growth() {
        let p = x3_presentation();
        let opts = ReportOptions::default();
        let dec = sphere_decomposition(&p, 13, &opts).unwrap();
        let rep = moore_report(&p, &dec).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.window, Some((1, 12)));
        assert!(rep.window_fully_populated);
        // reference is (3+sqrt(5))/2 = 2.618033...
        assert!(rep.reference_ratio.starts_with("2.618033"));
        for row in rep.growth.iter().filter(|r| r.degree >= 10) {
            assert!(row.within_tolerance, "degree {}", row.degree);
        }
    }

    #[test]
    fn y2_moore_window_starts_at_min_degree() {
        let p = y2_presentation();
        let opts = ReportOptions::default();
        let dec = sphere_decomposition(&p, 13, &opts).unwrap();
        let rep = moore_report(&p, &dec).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.window, Some((2, 12)));
        assert!(rep.window_fully_populated);
    }

    #[test]
    fn moore_inapplicable_for_elliptic_input() {
        let desc = crate::manifold::ManifoldDescriptor {
            name: "plane".into(),
            connectivity: 3,
            dimension: 6,
            generator_degrees: vec![3, 3],
            pairing: vec![
                vec![Rational::zero(), Rational::one()],
                vec![-Rational::one(), Rational::zero()],
            ],
            torsion_primes: None,
        };
        let v = validate(&desc).unwrap();
        let p = presentation_of(&v).unwrap();
        let dec = PiDecomposition {
            max_degree: 6,
            multiplicities: [(6, 1)].into(),
            witnesses: std::collections::BTreeMap::new(),
            witness_max_degree: 0,
            caveat: gamma_caveat(),
        };
        let rep = moore_report(&p, &dec).unwrap();
        assert!(!rep.applicable);
        assert!(rep.conclusion.contains("elliptic"));
    }

    #[test]
    fn decomposition_refuses_low_rank() {
        let desc = crate::manifold::ManifoldDescriptor {
            name: "plane".into(),
            connectivity: 3,
            dimension: 6,
            generator_degrees: vec![3, 3],
            pairing: vec![
                vec![Rational::zero(), Rational::one()],
                vec![-Rational::one(), Rational::zero()],
            ],
            torsion_primes: None,
        };
        let v = validate(&desc).unwrap();
        let p = presentation_of(&v).unwrap();
        assert!(sphere_decomposition(&p, 5, &ReportOptions::default()).is_err());
    }
}
