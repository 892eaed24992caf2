//! Batch verification harness: runs every matrix and cone identity for one
//! word and records the outcomes in a [`ConeReport`].
//!
//! Failures are recorded with a concrete witness, never thrown; a batch run
//! over many words always completes. Randomized pieces (dominant weights,
//! oversized boxes) are seeded from the word itself so repeated runs are
//! byte-identical.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::cartan::WeightVec;
use crate::conemat::{lowest_string, matrix_t, IntMatrix, WordMatrices};
use crate::rng::SplitMix64;
use crate::weyl::ReducedWord;

/// Which orientation of the Cartan matrix makes `S T = I` hold.
///
/// `Primary` is the direct definition of both matrices over the given Cartan
/// matrix. `Transposed` means the primary pair failed but re-deriving `T`
/// from the inversion formula over the transposed Cartan matrix fixed it.
/// For a symmetric Cartan matrix the two derivations coincide and the
/// outcome is reported as `Primary`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StConvention {
    Primary,
    Transposed,
    Neither,
}

/// Concrete evidence for a failed check.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub description: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, Vec<i64>>,
}

impl Witness {
    fn message(description: impl Into<String>) -> Self {
        Self { description: description.into(), indices: Vec::new(), vectors: BTreeMap::new() }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    fn pass() -> Self {
        Self { pass: true, detail: None, witness: None }
    }

    fn pass_with(detail: impl Into<String>) -> Self {
        Self { pass: true, detail: Some(detail.into()), witness: None }
    }

    fn fail(witness: Witness) -> Self {
        Self { pass: false, detail: None, witness: Some(witness) }
    }

    fn fail_with(detail: impl Into<String>, witness: Witness) -> Self {
        Self { pass: false, detail: Some(detail.into()), witness: Some(witness) }
    }

    fn from_identity(name: &str, product: &IntMatrix) -> Self {
        if product.is_identity() {
            Self::pass()
        } else {
            Self::fail(Witness::message(format!("{name} is not the identity matrix")))
        }
    }

    fn from_nonnegative(name: &str, matrix: &IntMatrix) -> Self {
        for (r, row) in matrix.rows().iter().enumerate() {
            for (c, &value) in row.iter().enumerate() {
                if value < 0 {
                    return Self::fail(Witness {
                        description: format!("{name}[{}][{}] = {value} < 0", r + 1, c + 1),
                        indices: vec![r + 1, c + 1],
                        vectors: BTreeMap::new(),
                    });
                }
            }
        }
        Self::pass()
    }

    fn from_equality(name: &str, lhs: &IntMatrix, rhs: &IntMatrix) -> Self {
        if lhs == rhs {
            Self::pass()
        } else {
            Self::fail(Witness::message(format!("{name}: matrices differ")))
        }
    }
}

/// Fixed set of named matrices included in every report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportMatrices {
    #[serde(rename = "V")]
    pub v: IntMatrix,
    #[serde(rename = "W")]
    pub w: IntMatrix,
    #[serde(rename = "S")]
    pub s: IntMatrix,
    #[serde(rename = "T")]
    pub t: IntMatrix,
    #[serde(rename = "C")]
    pub c: IntMatrix,
    #[serde(rename = "P")]
    pub p: IntMatrix,
    #[serde(rename = "X")]
    pub x: IntMatrix,
    #[serde(rename = "Ltilde")]
    pub l_tilde: IntMatrix,
    #[serde(rename = "L")]
    pub l: IntMatrix,
}

/// Fixed set of named checks; every report carries all of them.
#[derive(Debug, Clone, Serialize)]
pub struct ReportChecks {
    #[serde(rename = "WV_identity")]
    pub wv_identity: CheckResult,
    #[serde(rename = "ST_identity")]
    pub st_identity: CheckResult,
    #[serde(rename = "ST_convention")]
    pub st_convention: CheckResult,
    #[serde(rename = "VinvS_equals_Ltilde")]
    pub vinv_s_equals_ltilde: CheckResult,
    #[serde(rename = "SinvV_equals_negC")]
    pub sinv_v_equals_neg_c: CheckResult,
    #[serde(rename = "C_nonnegative")]
    pub c_nonnegative: CheckResult,
    #[serde(rename = "P_nonnegative")]
    pub p_nonnegative: CheckResult,
    #[serde(rename = "X_nonnegative")]
    pub x_nonnegative: CheckResult,
    #[serde(rename = "LX_identity")]
    pub lx_identity: CheckResult,
    #[serde(rename = "last_occurrence_columns")]
    pub last_occurrence_columns: CheckResult,
    #[serde(rename = "simple_beta_rows")]
    pub simple_beta_rows: CheckResult,
    #[serde(rename = "string_kernel_rows")]
    pub string_kernel_rows: CheckResult,
    #[serde(rename = "cone_box_agreement")]
    pub cone_box_agreement: CheckResult,
}

impl ReportChecks {
    pub fn all(&self) -> Vec<(&'static str, &CheckResult)> {
        vec![
            ("WV_identity", &self.wv_identity),
            ("ST_identity", &self.st_identity),
            ("ST_convention", &self.st_convention),
            ("VinvS_equals_Ltilde", &self.vinv_s_equals_ltilde),
            ("SinvV_equals_negC", &self.sinv_v_equals_neg_c),
            ("C_nonnegative", &self.c_nonnegative),
            ("P_nonnegative", &self.p_nonnegative),
            ("X_nonnegative", &self.x_nonnegative),
            ("LX_identity", &self.lx_identity),
            ("last_occurrence_columns", &self.last_occurrence_columns),
            ("simple_beta_rows", &self.simple_beta_rows),
            ("string_kernel_rows", &self.string_kernel_rows),
            ("cone_box_agreement", &self.cone_box_agreement),
        ]
    }
}

/// Full verification record for one word.
#[derive(Debug, Clone, Serialize)]
pub struct ConeReport {
    pub cartan: Vec<Vec<i64>>,
    pub word: Vec<usize>,
    pub matrices: ReportMatrices,
    pub checks: ReportChecks,
    pub all_pass: bool,
}

impl ConeReport {
    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks.all().into_iter().filter(|(_, c)| !c.pass).map(|(name, _)| name).collect()
    }
}

/// Seeded dominant weights with coordinates in `0..=max_coord`.
pub fn seeded_dominant_weights(
    rank: usize,
    count: usize,
    max_coord: i64,
    seed: u64,
) -> Vec<WeightVec> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| WeightVec((0..rank).map(|_| rng.range_i64(0, max_coord)).collect()))
        .collect()
}

fn word_seed(word: &ReducedWord) -> u64 {
    // stable fingerprint of the letters; any fixed mixing works
    let mut seed = 0x0135_79bd_f246_8ace_u64;
    for &letter in word.letters() {
        seed = seed.wrapping_mul(0x100_0000_01b3).wrapping_add(letter as u64);
    }
    seed
}

/// Compares the two membership routes at one point; `Ok` carries the
/// verdict, `Err` a witness for a disagreement or failed reconstruction.
fn check_point(wm: &WordMatrices, point: &[i64]) -> Result<bool, Witness> {
    let by_def = wm.member_def(point).expect("point has word length");
    let (by_l, coefficients) = wm.member_l(point).expect("point has word length");
    if by_def != by_l {
        let mut vectors = BTreeMap::new();
        vectors.insert("point".to_string(), point.to_vec());
        vectors.insert("coefficients".to_string(), coefficients);
        return Err(Witness {
            description: format!(
                "membership disagreement: defining inequalities say {by_def}, L rows say {by_l}"
            ),
            indices: Vec::new(),
            vectors,
        });
    }
    if by_l {
        let reconstructed = wm.x.mul_vec(&coefficients);
        if reconstructed != point {
            let mut vectors = BTreeMap::new();
            vectors.insert("point".to_string(), point.to_vec());
            vectors.insert("coefficients".to_string(), coefficients);
            vectors.insert("reconstructed".to_string(), reconstructed);
            return Err(Witness {
                description: "X(Lc) did not reconstruct the member point".to_string(),
                indices: Vec::new(),
                vectors,
            });
        }
    }
    Ok(by_l)
}

/// Exhaustive two-route membership comparison over the box `lo..=hi` in
/// every coordinate. Returns the number of members on success.
pub fn cone_box_agreement(wm: &WordMatrices, lo: i64, hi: i64) -> Result<u64, Box<Witness>> {
    let n = wm.word().len();
    let mut point = vec![lo; n];
    let mut members = 0u64;
    loop {
        if check_point(wm, &point).map_err(Box::new)? {
            members += 1;
        }
        let mut idx = 0;
        while idx < n {
            point[idx] += 1;
            if point[idx] <= hi {
                break;
            }
            point[idx] = lo;
            idx += 1;
        }
        if idx == n {
            return Ok(members);
        }
    }
}

/// Seeded sampled variant of [`cone_box_agreement`] for boxes too large to
/// exhaust.
pub fn cone_box_agreement_sampled(
    wm: &WordMatrices,
    lo: i64,
    hi: i64,
    samples: u64,
    seed: u64,
) -> Result<u64, Box<Witness>> {
    let n = wm.word().len();
    let mut rng = SplitMix64::new(seed);
    let mut members = 0u64;
    for _ in 0..samples {
        let point: Vec<i64> = (0..n).map(|_| rng.range_i64(lo, hi)).collect();
        if check_point(wm, &point).map_err(Box::new)? {
            members += 1;
        }
    }
    Ok(members)
}

const EXHAUSTIVE_BOX_LIMIT: f64 = 400_000.0;
const SAMPLED_BOX_POINTS: u64 = 100_000;

/// Default box radius used by the batch harness: exhaustive boxes stay
/// feasible up to `N = 6`, shrink once, then sampling takes over.
pub fn default_box_radius(word_len: usize) -> usize {
    if word_len <= 6 {
        3
    } else {
        2
    }
}

fn box_agreement_check(wm: &WordMatrices, box_radius: usize) -> CheckResult {
    let n = wm.word().len();
    let lo = -(box_radius as i64);
    let hi = box_radius as i64 + 2;
    let width = (hi - lo + 1) as f64;
    let total = width.powi(n as i32);
    if total <= EXHAUSTIVE_BOX_LIMIT {
        match cone_box_agreement(wm, lo, hi) {
            Ok(members) => {
                CheckResult::pass_with(format!("exhaustive on [{lo},{hi}]^{n}: {members} members"))
            }
            Err(witness) => CheckResult::fail(*witness),
        }
    } else {
        let seed = word_seed(wm.word()) ^ 0xb0c5;
        match cone_box_agreement_sampled(wm, lo, hi, SAMPLED_BOX_POINTS, seed) {
            Ok(members) => CheckResult::pass_with(format!(
                "sampled {SAMPLED_BOX_POINTS} points of [{lo},{hi}]^{n}: {members} members"
            )),
            Err(witness) => CheckResult::fail(*witness),
        }
    }
}

/// `S T = I` under the direct definitions, with the transposed-Cartan
/// re-derivation of `T` as fallback evidence. Exactly one orientation may
/// hold on an asymmetric Cartan matrix.
pub fn st_convention(word: &ReducedWord) -> StConvention {
    let s = crate::conemat::matrix_s(word);
    let t_primary = matrix_t(word);
    let primary = s.mul(&t_primary).is_identity();
    if word.cartan().is_symmetric() {
        return if primary { StConvention::Primary } else { StConvention::Neither };
    }
    let dual_cartan = word.cartan().transposed();
    let dual_word = ReducedWord::new(&dual_cartan, word.letters())
        .expect("a reduced word stays reduced over the transposed Cartan matrix");
    let t_transposed = matrix_t(&dual_word);
    let transposed = s.mul(&t_transposed).is_identity();
    match (primary, transposed) {
        (true, false) => StConvention::Primary,
        (false, true) => StConvention::Transposed,
        // Both holding on an asymmetric matrix would mean S had two distinct
        // inverses; report either degenerate outcome as a failure.
        (true, true) | (false, false) => StConvention::Neither,
    }
}

fn st_convention_check(word: &ReducedWord) -> CheckResult {
    match st_convention(word) {
        StConvention::Primary => CheckResult::pass_with("primary"),
        StConvention::Transposed => CheckResult::pass_with("transposed"),
        StConvention::Neither => CheckResult::fail_with(
            "neither",
            Witness::message("no single Cartan orientation makes S T = I"),
        ),
    }
}

fn last_occurrence_check(wm: &WordMatrices) -> CheckResult {
    let word = wm.word();
    let n = word.len();
    let rank = word.cartan().rank();
    for k in 1..=n {
        if word.k1_successor(k).expect("position in range") < n + 1 {
            continue;
        }
        if wm.p.col(k - 1) != wm.c.col(k - 1) {
            let mut vectors = BTreeMap::new();
            vectors.insert("P_column".to_string(), wm.p.col(k - 1));
            vectors.insert("C_column".to_string(), wm.c.col(k - 1));
            return CheckResult::fail(Witness {
                description: format!("column {k}: P and C differ although the letter never recurs"),
                indices: vec![k],
                vectors,
            });
        }
        let fundamental = WeightVec::basis(rank, word.letter(k));
        let string = lowest_string(word, &fundamental).expect("fundamental weight is dominant");
        if wm.x.col(k - 1) != string {
            let mut vectors = BTreeMap::new();
            vectors.insert("X_column".to_string(), wm.x.col(k - 1));
            vectors.insert("lowest_string".to_string(), string);
            return CheckResult::fail(Witness {
                description: format!("column {k}: X is not the fundamental lowest string"),
                indices: vec![k],
                vectors,
            });
        }
    }
    CheckResult::pass()
}

fn simple_beta_rows_check(wm: &WordMatrices) -> CheckResult {
    let word = wm.word();
    for (j0, beta) in word.beta_roots().iter().enumerate() {
        let is_simple =
            beta.coords().iter().sum::<i64>() == 1 && beta.coords().iter().all(|&x| x >= 0);
        if !is_simple {
            continue;
        }
        if wm.p.row(j0) != wm.c.row(j0) {
            let mut vectors = BTreeMap::new();
            vectors.insert("P_row".to_string(), wm.p.row(j0).to_vec());
            vectors.insert("C_row".to_string(), wm.c.row(j0).to_vec());
            vectors.insert("beta".to_string(), beta.coords().to_vec());
            return CheckResult::fail(Witness {
                description: format!("row {}: P and C differ although beta is simple", j0 + 1),
                indices: vec![j0 + 1],
                vectors,
            });
        }
    }
    CheckResult::pass()
}

fn string_kernel_rows_check(wm: &WordMatrices) -> CheckResult {
    let word = wm.word();
    let n = word.len();
    let weights = seeded_dominant_weights(word.cartan().rank(), 20, 3, word_seed(word) ^ 0x5eed);
    for lambda in &weights {
        let string = lowest_string(word, lambda).expect("sampled weights are dominant");
        for j in 1..=n {
            if word.k1_successor(j).expect("position in range") > n {
                continue;
            }
            let dot: i64 = wm.l.row(j - 1).iter().zip(&string).map(|(a, b)| a * b).sum();
            if dot != 0 {
                let mut vectors = BTreeMap::new();
                vectors.insert("lambda".to_string(), lambda.coords().to_vec());
                vectors.insert("lowest_string".to_string(), string.clone());
                vectors.insert("L_row".to_string(), wm.l.row(j - 1).to_vec());
                return CheckResult::fail(Witness {
                    description: format!("L row {j} pairs to {dot} with a lowest string"),
                    indices: vec![j],
                    vectors,
                });
            }
        }
    }
    CheckResult::pass()
}

/// Runs every identity and cone check for one word. Failures never abort;
/// they are recorded with witnesses in the returned report.
pub fn verify_word(word: &ReducedWord, box_radius: usize) -> ConeReport {
    let wm = match WordMatrices::compute(word) {
        Ok(wm) => wm,
        Err(err) => return failed_construction_report(word, &err.to_string()),
    };

    let checks = ReportChecks {
        wv_identity: CheckResult::from_identity("W V", &wm.w.mul(&wm.v)),
        st_identity: CheckResult::from_identity("S T", &wm.s.mul(&wm.t)),
        st_convention: st_convention_check(word),
        vinv_s_equals_ltilde: CheckResult::from_equality(
            "V^-1 S vs L-tilde",
            &wm.w.mul(&wm.s),
            &wm.l_tilde,
        ),
        sinv_v_equals_neg_c: CheckResult::from_equality(
            "S^-1 V vs -C",
            &wm.t.mul(&wm.v),
            &wm.c.neg(),
        ),
        c_nonnegative: CheckResult::from_nonnegative("C", &wm.c),
        p_nonnegative: CheckResult::from_nonnegative("P", &wm.p),
        x_nonnegative: CheckResult::from_nonnegative("X", &wm.x),
        lx_identity: CheckResult::from_identity("L X", &wm.l.mul(&wm.x)),
        last_occurrence_columns: last_occurrence_check(&wm),
        simple_beta_rows: simple_beta_rows_check(&wm),
        string_kernel_rows: string_kernel_rows_check(&wm),
        cone_box_agreement: box_agreement_check(&wm, box_radius),
    };
    let all_pass = checks.all().iter().all(|(_, c)| c.pass);
    ConeReport {
        cartan: word.cartan().rows().to_vec(),
        word: word.letters().to_vec(),
        matrices: ReportMatrices {
            v: wm.v,
            w: wm.w,
            s: wm.s,
            t: wm.t,
            c: wm.c,
            p: wm.p,
            x: wm.x,
            l_tilde: wm.l_tilde,
            l: wm.l,
        },
        checks,
        all_pass,
    }
}

// Unreachable for words that passed construction, but batch verification
// must record failures rather than panic.
fn failed_construction_report(word: &ReducedWord, message: &str) -> ConeReport {
    let n = word.len();
    let zero = IntMatrix::zero(n);
    let failed =
        CheckResult::fail(Witness::message(format!("matrix construction failed: {message}")));
    let checks = ReportChecks {
        wv_identity: failed.clone(),
        st_identity: failed.clone(),
        st_convention: failed.clone(),
        vinv_s_equals_ltilde: failed.clone(),
        sinv_v_equals_neg_c: failed.clone(),
        c_nonnegative: failed.clone(),
        p_nonnegative: failed.clone(),
        x_nonnegative: failed.clone(),
        lx_identity: failed.clone(),
        last_occurrence_columns: failed.clone(),
        simple_beta_rows: failed.clone(),
        string_kernel_rows: failed.clone(),
        cone_box_agreement: failed,
    };
    ConeReport {
        cartan: word.cartan().rows().to_vec(),
        word: word.letters().to_vec(),
        matrices: ReportMatrices {
            v: zero.clone(),
            w: zero.clone(),
            s: zero.clone(),
            t: zero.clone(),
            c: zero.clone(),
            p: zero.clone(),
            x: zero.clone(),
            l_tilde: zero.clone(),
            l: zero,
        },
        checks,
        all_pass: false,
    }
}
