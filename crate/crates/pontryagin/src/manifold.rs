//! Input model for the manifold's rational cohomology data: validation of
//! the connectivity/dimension hypotheses and Poincaré duality, basis
//! normalization that exposes a unit off-diagonal pairing entry, relation
//! construction, and the classifier for total rank at most 4.

use crate::error::{Error, Result};
use crate::quotient::LeadingPair;
use crate::rational::Rational;
use crate::word::{Alphabet, Element, QuadraticRelation, Word};
use std::fmt;
use std::sync::Arc;

/// Cohomology data of a closed (n-1)-connected d-manifold with
/// d <= 3n - 2: indecomposable generator degrees and the Poincaré pairing
/// matrix `c_ij = <x_i x_j, [M]>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldDescriptor {
    pub name: String,
    pub connectivity: u32,
    pub dimension: u32,
    pub generator_degrees: Vec<u32>,
    pub pairing: Vec<Vec<Rational>>,
    /// primes with torsion in H*(M; Z); metadata only
    pub torsion_primes: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Hypothesis { n: u32, d: u32 },
    GeneratorDegree { index: usize, degree: u32, lo: u32, hi: i64 },
    PairingShape { rows: usize, cols: Option<usize>, expected: usize },
    PairingDegree { i: usize, j: usize },
    GradedSymmetry { i: usize, j: usize },
    DegeneratePairing { degree: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Hypothesis { n, d } => write!(
                f,
                "hypothesis violated: need connectivity n >= 2, 1 <= d <= 3n-2; got n={n}, d={d}"
            ),
            Violation::GeneratorDegree { index, degree, lo, hi } => write!(
                f,
                "generator x{} has degree {degree}, outside [{lo}, {hi}]",
                index + 1
            ),
            Violation::PairingShape { rows, cols, expected } => match cols {
                Some(c) => write!(
                    f,
                    "pairing matrix is {rows}x{c}, expected {expected}x{expected}"
                ),
                None => write!(f, "pairing matrix has {rows} rows, expected {expected}"),
            },
            Violation::PairingDegree { i, j } => write!(
                f,
                "pairing entry c[{},{}] must vanish: degrees do not sum to d",
                i + 1,
                j + 1
            ),
            Violation::GradedSymmetry { i, j } => write!(
                f,
                "pairing violates graded symmetry at c[{},{}]",
                i + 1,
                j + 1
            ),
            Violation::DegeneratePairing { degree } => write!(
                f,
                "Poincaré pairing is degenerate between degrees {degree} and co-degree block"
            ),
        }
    }
}

pub fn render_violations(v: &[String]) -> String {
    v.join("\n")
}

/// A descriptor that passed every hypothesis and duality check.
#[derive(Clone, Debug)]
pub struct ValidatedManifold {
    descriptor: ManifoldDescriptor,
    r: usize,
}

impl ValidatedManifold {
    pub fn descriptor(&self) -> &ManifoldDescriptor {
        &self.descriptor
    }

    /// Dimension of the space of indecomposables.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Total rank of H*(M; Q): the indecomposables plus H^0 and H^d.
    pub fn total_rank(&self) -> usize {
        self.r + 2
    }

    /// Rationally hyperbolic iff the indecomposables have dimension > 2.
    pub fn is_hyperbolic(&self) -> bool {
        self.r > 2
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hyperbolicity {
    Hyperbolic,
    Elliptic,
}

pub fn hyperbolicity(v: &ValidatedManifold) -> Hyperbolicity {
    if v.is_hyperbolic() {
        Hyperbolicity::Hyperbolic
    } else {
        Hyperbolicity::Elliptic
    }
}

/// Checks every invariant of the descriptor, reporting all violations
/// rather than stopping at the first.
pub fn validate(desc: &ManifoldDescriptor) -> std::result::Result<ValidatedManifold, Vec<Violation>> {
    let mut violations = Vec::new();
    let n = desc.connectivity;
    let d = desc.dimension;
    if n < 2 || d < 1 || d as i64 > 3 * n as i64 - 2 {
        violations.push(Violation::Hypothesis { n, d });
    }
    let r = desc.generator_degrees.len();
    for (i, &deg) in desc.generator_degrees.iter().enumerate() {
        let hi = d as i64 - n as i64;
        if (deg as i64) < n as i64 || deg as i64 > hi {
            violations.push(Violation::GeneratorDegree {
                index: i,
                degree: deg,
                lo: n,
                hi,
            });
        }
    }
    if desc.pairing.len() != r {
        violations.push(Violation::PairingShape {
            rows: desc.pairing.len(),
            cols: None,
            expected: r,
        });
        return Err(violations);
    }
    for row in &desc.pairing {
        if row.len() != r {
            violations.push(Violation::PairingShape {
                rows: r,
                cols: Some(row.len()),
                expected: r,
            });
            return Err(violations);
        }
    }
    for i in 0..r {
        for j in 0..r {
            let deg_sum = desc.generator_degrees[i] as u64 + desc.generator_degrees[j] as u64;
            if !desc.pairing[i][j].is_zero() && deg_sum != d as u64 {
                violations.push(Violation::PairingDegree { i, j });
            }
        }
    }
    for i in 0..r {
        for j in i..r {
            let sign = if (desc.generator_degrees[i] * desc.generator_degrees[j]).is_multiple_of(2) {
                Rational::one()
            } else {
                -Rational::one()
            };
            if desc.pairing[i][j] != &desc.pairing[j][i] * &sign {
                violations.push(Violation::GradedSymmetry { i, j });
            }
        }
    }
    // nondegeneracy between complementary-degree blocks
    if violations.is_empty() {
        let mut degrees: Vec<u32> = desc.generator_degrees.clone();
        degrees.sort_unstable();
        degrees.dedup();
        for &k in &degrees {
            if 2 * k > d && degrees.contains(&(d - k)) {
                continue; // handled from the complementary side
            }
            let rows: Vec<usize> = (0..r)
                .filter(|&i| desc.generator_degrees[i] == k)
                .collect();
            let cols: Vec<usize> = (0..r)
                .filter(|&j| desc.generator_degrees[j] == d - k)
                .collect();
            if rows.len() != cols.len() {
                violations.push(Violation::DegeneratePairing { degree: k });
                continue;
            }
            let block: Vec<Vec<Rational>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| desc.pairing[i][j].clone()).collect())
                .collect();
            if !is_nonsingular(&block) {
                violations.push(Violation::DegeneratePairing { degree: k });
            }
        }
    }
    if violations.is_empty() {
        Ok(ValidatedManifold {
            descriptor: desc.clone(),
            r,
        })
    } else {
        Err(violations)
    }
}

pub fn validation_error(violations: Vec<Violation>) -> Error {
    Error::Invalid(violations.iter().map(|v| v.to_string()).collect())
}

#[allow(clippy::needless_range_loop)]
fn is_nonsingular(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    if n == 0 {
        return true;
    }
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    for col in 0..n {
        let piv = match (col..n).find(|&row| !a[row][col].is_zero()) {
            Some(p) => p,
            None => return false,
        };
        a.swap(col, piv);
        for row in col + 1..n {
            if !a[row][col].is_zero() {
                let f = &a[row][col] / &a[col][col];
                for c2 in col..n {
                    let delta = &a[col][c2] * &f;
                    a[row][c2] -= &delta;
                }
            }
        }
    }
    true
}

fn identity(r: usize) -> Vec<Vec<Rational>> {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    let delta = &a[i][k] * &b[k][j];
                    out[i][j] += &delta;
                }
            }
        }
    }
    out
}

pub fn mat_transpose(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

/// Congruence transform of the pairing: `A^T C A`.
pub fn congruence(c: &[Vec<Rational>], a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    mat_mul(&mat_mul(&mat_transpose(a), c), a)
}

/// Outcome of basis normalization: the transformed manifold, the change
/// matrix `A` (new basis in terms of the old, as columns), the chosen
/// leading pair, and the letter order under which that pair is the
/// deg-lex-maximal off-diagonal word of the relation.
#[derive(Clone, Debug)]
pub struct NormalizedManifold {
    pub manifold: ValidatedManifold,
    pub change: Vec<Vec<Rational>>,
    /// 0-based letter indices (alpha, beta)
    pub leading: (usize, usize),
    pub letter_ranks: Vec<u8>,
}

/// The coefficient the graded loop-space relation puts on the word
/// `u_i u_j`, namely `(-1)^(|u_i|+1) c_ji`.
pub(crate) fn relation_coeff(desc: &ManifoldDescriptor, i: usize, j: usize) -> Rational {
    let loop_deg_i = desc.generator_degrees[i] - 1;
    let sign = if (loop_deg_i + 1).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    &desc.pairing[j][i] * &sign
}

/// Change basis so some off-diagonal relation coefficient is exactly 1 and
/// pick that word as the leading pair.
///
/// Degenerate-free diagonal forms (possible when all paired generators sit
/// in degree d/2) first get the shear `x_beta <- x_alpha + x_beta` to
/// expose an off-diagonal entry. The leading pair is then the
/// deg-lex-maximal off-diagonal word with nonzero coefficient; if the
/// current letter order does not already make it maximal, the returned
/// order promotes alpha above everything and beta just below it.
pub fn normalize_basis(
    v: &ValidatedManifold,
    seed_ranks: Option<&[u8]>,
) -> Result<NormalizedManifold> {
    let r = v.r();
    if r < 2 {
        return Err(Error::Domain(format!(
            "basis normalization needs at least two generators, got {r}"
        )));
    }
    let mut desc = v.descriptor().clone();
    let mut change = identity(r);
    let mut ranks: Vec<u8> = match seed_ranks {
        Some(s) => s.to_vec(),
        None => (0..r as u8).collect(),
    };
    if ranks.len() != r {
        return Err(Error::Usage(format!(
            "letter order must list {r} letters, got {}",
            ranks.len()
        )));
    }

    let all_off_diagonal_zero = (0..r)
        .all(|i| (0..r).all(|j| i == j || desc.pairing[i][j].is_zero()));
    let forced_pair = if all_off_diagonal_zero {
        // diagonal form: shear the first two paired generators
        let diag: Vec<usize> = (0..r).filter(|&i| !desc.pairing[i][i].is_zero()).collect();
        if diag.len() < 2 {
            return Err(Error::Domain(
                "diagonal pairing with fewer than two paired generators cannot be normalized"
                    .into(),
            ));
        }
        let (alpha, beta) = (diag[0], diag[1]);
        let mut shear = identity(r);
        shear[alpha][beta] = Rational::one();
        desc.pairing = congruence(&desc.pairing, &shear);
        change = mat_mul(&change, &shear);
        Some((alpha, beta))
    } else {
        None
    };

    // choose the leading pair: forced by the shear, else the deg-lex-max
    // off-diagonal word with nonzero relation coefficient
    let (alpha, beta) = match forced_pair {
        Some(p) => p,
        None => {
            let mut best: Option<(usize, usize)> = None;
            for i in 0..r {
                for j in 0..r {
                    if i == j || relation_coeff(&desc, i, j).is_zero() {
                        continue;
                    }
                    best = match best {
                        None => Some((i, j)),
                        Some((bi, bj)) => {
                            let key = |x: usize, y: usize| (ranks[x], ranks[y]);
                            if key(i, j) > key(bi, bj) {
                                Some((i, j))
                            } else {
                                Some((bi, bj))
                            }
                        }
                    };
                }
            }
            best.ok_or_else(|| {
                Error::Domain("relation has no off-diagonal words to solve for".into())
            })?
        }
    };

    // scale x_beta so the relation coefficient on (alpha, beta) is 1
    let coeff = relation_coeff(&desc, alpha, beta);
    if coeff.is_zero() {
        return Err(Error::Inconsistency(
            "chosen leading pair has zero coefficient after normalization".into(),
        ));
    }
    if !coeff.is_one() {
        let mut scale = identity(r);
        scale[beta][beta] = coeff.recip();
        desc.pairing = congruence(&desc.pairing, &scale);
        change = mat_mul(&change, &scale);
    }

    // make (alpha, beta) the deg-lex-maximal off-diagonal word, adjusting
    // the letter order if the current one does not already do it
    let is_max = |ranks: &[u8]| -> bool {
        for i in 0..r {
            for j in 0..r {
                if i == j || (i, j) == (alpha, beta) || relation_coeff(&desc, i, j).is_zero() {
                    continue;
                }
                if (ranks[i], ranks[j]) > (ranks[alpha], ranks[beta]) {
                    return false;
                }
            }
        }
        true
    };
    if !is_max(&ranks) {
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&x| ranks[x]);
        order.retain(|&x| x != alpha && x != beta);
        order.push(beta);
        order.push(alpha);
        for (pos, &x) in order.iter().enumerate() {
            ranks[x] = pos as u8;
        }
        debug_assert!(is_max(&ranks));
    }

    let manifold = validate(&desc).map_err(|violations| {
        Error::Inconsistency(format!(
            "normalized descriptor failed re-validation: {}",
            violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        ))
    })?;
    Ok(NormalizedManifold {
        manifold,
        change,
        leading: (alpha, beta),
        letter_ranks: ranks,
    })
}

/// The quadratic presentation of the loop-space Pontryagin ring: the graded
/// relation from the pairing, its ungraded bracket-form companion (the
/// off-diagonal part with matching coefficients), and the leading pair both
/// are solved for.
#[derive(Clone)]
pub struct Presentation {
    pub alphabet: Arc<Alphabet>,
    pub graded: QuadraticRelation,
    pub ungraded: QuadraticRelation,
    pub leading: LeadingPair,
    pub change: Vec<Vec<Rational>>,
    pub manifold: ValidatedManifold,
}

impl Presentation {
    /// Loop degree of the relation, `d - 2`.
    pub fn relation_degree(&self) -> u32 {
        self.manifold.descriptor().dimension - 2
    }
}

/// Builds the graded relation `Σ (-1)^(|u_i|+1) c_ji u_i u_j` and its
/// ungraded companion `Σ_{i<j} l_ij (u_i u_j - u_j u_i)` from a normalized
/// manifold, both rescaled so the leading-pair coefficient is 1.
pub fn build_presentation(nm: &NormalizedManifold) -> Result<Presentation> {
    let desc = nm.manifold.descriptor();
    let r = nm.manifold.r();
    let loop_degrees: Vec<u32> = desc.generator_degrees.iter().map(|&x| x - 1).collect();
    let alphabet = Arc::new(Alphabet::with_order(loop_degrees, nm.letter_ranks.clone())?);
    let (alpha, beta) = nm.leading;

    let mut graded = Element::zero(alphabet.clone());
    for i in 0..r {
        for j in 0..r {
            let c = relation_coeff(desc, i, j);
            graded.add_term(Word::new(vec![i as u8, j as u8]), c);
        }
    }
    let lead = graded.coeff(&Word::new(vec![alpha as u8, beta as u8]));
    if lead.is_zero() {
        return Err(Error::Inconsistency(
            "graded relation has zero leading coefficient".into(),
        ));
    }
    let graded = graded.scale(&lead.recip());

    // ungraded companion: same l_ij coefficients on the off-diagonal words,
    // antisymmetrized; diagonal squares have no ungraded bracket form and
    // are dropped
    let mut ungraded = Element::zero(alphabet.clone());
    for i in 0..r {
        for j in i + 1..r {
            let l = graded.coeff(&Word::new(vec![i as u8, j as u8]));
            if !l.is_zero() {
                ungraded.add_term(Word::new(vec![i as u8, j as u8]), l.clone());
                ungraded.add_term(Word::new(vec![j as u8, i as u8]), -l);
            }
        }
    }
    let lead_u = ungraded.coeff(&Word::new(vec![alpha as u8, beta as u8]));
    if lead_u.is_zero() {
        return Err(Error::Inconsistency(
            "ungraded relation has zero leading coefficient".into(),
        ));
    }
    let ungraded = ungraded.scale(&lead_u.recip());

    let graded = QuadraticRelation::new(graded)?;
    let ungraded = QuadraticRelation::new(ungraded)?;
    let leading = LeadingPair::new(alpha as u8, beta as u8, &graded)?;
    LeadingPair::new(alpha as u8, beta as u8, &ungraded)?;
    Ok(Presentation {
        alphabet,
        graded,
        ungraded,
        leading,
        change: nm.change.clone(),
        manifold: nm.manifold.clone(),
    })
}

/// Validated descriptor straight to presentation, with the default letter
/// order.
pub fn presentation_of(v: &ValidatedManifold) -> Result<Presentation> {
    build_presentation(&normalize_basis(v, None)?)
}

/// Homotopy type of a manifold whose cohomology has total rank at most 4,
/// valid after inverting finitely many primes.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum LowRankType {
    /// total rank 2: the d-sphere
    Sphere { dimension: u32 },
    /// total rank 3: second James stage J_2 S^s, d = 2s with s even
    James { half_dimension: u32 },
    /// total rank 4, anisotropic middle pairing: connected-sum James #^2 J_2(s)
    ConnectedSumJames { half_dimension: u32 },
    /// total rank 4, split case: S^k x S^(d-k)
    Product { low: u32, high: u32 },
}

impl fmt::Display for LowRankType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowRankType::Sphere { dimension } => write!(f, "S^{dimension}"),
            LowRankType::James { half_dimension } => write!(f, "J_2 S^{half_dimension}"),
            LowRankType::ConnectedSumJames { half_dimension } => {
                write!(f, "#^2 J_2({half_dimension})")
            }
            LowRankType::Product { low, high } => write!(f, "S^{low} x S^{high}"),
        }
    }
}

/// Classifies a validated manifold of total rank at most 4.
pub fn classify_low_rank(v: &ValidatedManifold) -> Result<LowRankType> {
    if v.r() > 2 {
        return Err(Error::Usage(format!(
            "low-rank classification needs r <= 2, got r = {}",
            v.r()
        )));
    }
    let desc = v.descriptor();
    classify_parts(desc.dimension, &desc.generator_degrees, &desc.pairing)
}

/// The classification logic on raw parts; exposed so the realizability
/// branches stay observable even though full validation already rejects
/// the impossible inputs.
pub fn classify_parts(
    d: u32,
    degrees: &[u32],
    pairing: &[Vec<Rational>],
) -> Result<LowRankType> {
    match degrees.len() {
        0 => Ok(LowRankType::Sphere { dimension: d }),
        1 => {
            if !d.is_multiple_of(2) {
                return Err(Error::Realizability(format!(
                    "rank-3 cohomology needs even dimension, got d = {d}"
                )));
            }
            let s = d / 2;
            if !s.is_multiple_of(2) {
                return Err(Error::Realizability(format!(
                    "rank-3 cohomology forces an even middle degree; d/2 = {s} is odd"
                )));
            }
            Ok(LowRankType::James { half_dimension: s })
        }
        2 => {
            let (k, l) = (degrees[0], degrees[1]);
            if k != l {
                return Ok(LowRankType::Product {
                    low: k.min(l),
                    high: k.max(l),
                });
            }
            let s = k;
            if s % 2 != 0 {
                // odd middle degree: the pairing is skew, hence hyperbolic
                return Ok(LowRankType::Product { low: s, high: s });
            }
            // symmetric binary form: isotropic iff c12^2 - c11*c22 is a
            // nonzero rational square
            let disc = &(&pairing[0][1] * &pairing[0][1]) - &(&pairing[0][0] * &pairing[1][1]);
            if !disc.is_zero() && disc.is_square() {
                Ok(LowRankType::Product { low: s, high: s })
            } else {
                Ok(LowRankType::ConnectedSumJames { half_dimension: s })
            }
        }
        r => Err(Error::Usage(format!(
            "low-rank classification needs r <= 2, got r = {r}"
        ))),
    }
}
