//! The cone-matrix calculus attached to a reduced word for `w0`.
//!
//! For a word `i = (i_1, ..., i_N)` this module builds, in exact integer
//! arithmetic, the matrices
//!
//! * `V` - occurrence columns: `V[j][k] = 1` iff `j <= k` and `i_j = i_k`;
//! * `W = V^{-1}` - unit diagonal with `-1` at `(j, j(1))`;
//! * `S` - `-1` diagonal, `S[j][k] = -a[i_j][i_k]` above it;
//! * `T = S^{-1}` - `-1` diagonal,
//!   `T[j][k] = <s_{i_{j+1}} ... s_{i_{k-1}} alpha_{i_k}, alpha_{i_j}_vee>`;
//! * `C = -S^{-1}V` - `C[j][k] = <s_{i_{j+1}} ... s_{i_k} varpi_{i_k},
//!   alpha_{i_j}_vee>`, nonnegative;
//! * `P` - column `k` is the lowest-weight string of `mu_k`;
//! * `X` - spanning vectors of the Lusztig cone: `-C + P` columns, with the
//!   string of `varpi_{i_k}` substituted when the letter `i_k` never recurs;
//! * `L-tilde = V^{-1}S` - rows carry the occurrence inequalities;
//! * `L = X^{-1}` - `L-tilde` rows where the letter recurs, coordinate rows
//!   elsewhere.
//!
//! Membership in the Lusztig cone is decided two independent ways: from the
//! defining occurrence inequalities and from `L c >= 0`.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cartan::{CartanError, RootVec, WeightVec};
use crate::weyl::ReducedWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConematError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("position {k} out of range 1..={n}")]
    PositionOutOfRange { k: usize, n: usize },
    #[error("vector length {got} does not match word length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weight {0:?} is not dominant")]
    NonDominantWeight(Vec<i64>),
    #[error("no position k has beta_k = alpha_{{i_{row}}}; word fails internal consistency")]
    MissingSimpleBeta { row: usize },
}

/// Dense square matrix with exact integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        Self { rows: vec![vec![0; n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// 0-based entry access.
    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.rows[r][c] = value;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.rows[r]
    }

    pub fn col(&self, c: usize) -> Vec<i64> {
        self.rows.iter().map(|row| row[c]).collect()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.dim();
        assert_eq!(n, rhs.dim());
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.rows[i][j] += a * rhs.rows[k][j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.dim(), v.len());
        self.rows.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().all(|row| row.iter().all(|&x| x >= 0))
    }

    /// Upper-triangular with the given constant diagonal.
    pub fn is_upper_triangular_with_diagonal(&self, diag: i64) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &x)| {
                if j < i {
                    x == 0
                } else if j == i {
                    x == diag
                } else {
                    true
                }
            })
        })
    }
}

impl fmt::Display for IntMatrix {
    /// Rows of space-separated integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

/// `V[j][k] = 1` iff `j <= k` and `i_j = i_k`; column `k` lists the earlier
/// occurrences of the letter `i_k`.
pub fn matrix_v(word: &ReducedWord) -> IntMatrix {
    let n = word.len();
    let letters = word.letters();
    let mut m = IntMatrix::zero(n);
    for k in 0..n {
        for j in 0..=k {
            if letters[j] == letters[k] {
                m.set(j, k, 1);
            }
        }
    }
    m
}

/// `W = V^{-1}`: unit diagonal with `-1` at `(j, j(1))`.
pub fn matrix_w(word: &ReducedWord) -> IntMatrix {
    let n = word.len();
    let mut m = IntMatrix::identity(n);
    for j in 1..=n {
        let j1 = word.k1_successor(j).expect("position in range");
        if j1 <= n {
            m.set(j - 1, j1 - 1, -1);
        }
    }
    m
}

/// `S`: `-1` diagonal, `S[j][k] = -a[i_j][i_k]` for `j < k`.
pub fn matrix_s(word: &ReducedWord) -> IntMatrix {
    let n = word.len();
    let cartan = word.cartan();
    let letters = word.letters();
    let mut m = IntMatrix::zero(n);
    for j in 0..n {
        m.set(j, j, -1);
        for k in j + 1..n {
            m.set(j, k, -cartan.a(letters[j], letters[k]));
        }
    }
    m
}

/// `T = S^{-1}`: `-1` diagonal,
/// `T[j][k] = <s_{i_{j+1}} ... s_{i_{k-1}} alpha_{i_k}, alpha_{i_j}_vee>`.
pub fn matrix_t(word: &ReducedWord) -> IntMatrix {
    let n = word.len();
    let cartan = word.cartan();
    let rank = cartan.rank();
    let letters = word.letters();
    let mut m = IntMatrix::zero(n);
    for k in 0..n {
        m.set(k, k, -1);
        // walk j downward, reflecting alpha_{i_k} one step at a time
        let mut root = RootVec::basis(rank, letters[k]);
        for j in (0..k).rev() {
            let pairing: i64 = root
                .coords()
                .iter()
                .enumerate()
                .map(|(s, &x)| cartan.a(letters[j], s + 1) * x)
                .sum();
            m.set(j, k, pairing);
            root = cartan.reflect_root(letters[j], &root).expect("valid letter");
        }
    }
    m
}

/// `C[j][k] = <s_{i_{j+1}} ... s_{i_k} varpi_{i_k}, alpha_{i_j}_vee>` for
/// `j <= k`, zero below the diagonal. Satisfies `S^{-1} V = -C` and is
/// entrywise nonnegative.
pub fn matrix_c(word: &ReducedWord) -> IntMatrix {
    let n = word.len();
    let cartan = word.cartan();
    let rank = cartan.rank();
    let letters = word.letters();
    let mut m = IntMatrix::zero(n);
    for k in 0..n {
        let mut weight = WeightVec::basis(rank, letters[k]);
        for j in (0..=k).rev() {
            m.set(j, k, weight.coords()[letters[j] - 1]);
            weight = cartan.reflect_weight(letters[j], &weight).expect("valid letter");
        }
    }
    m
}

/// Crystal exponents of the column generator at position `k`:
/// `eps_l = max(0, -<s_{i_1} ... s_{i_k} varpi_{i_k}, alpha_l_vee>)`,
/// returned as the dominant weight `mu_k = sum_l eps_l varpi_l`.
pub fn epsilon_values(word: &ReducedWord, k: usize) -> Result<WeightVec, ConematError> {
    if k == 0 || k > word.len() {
        return Err(ConematError::PositionOutOfRange { k, n: word.len() });
    }
    let cartan = word.cartan();
    let mut weight = WeightVec::basis(cartan.rank(), word.letter(k));
    for m in (1..=k).rev() {
        weight = cartan.reflect_weight(word.letter(m), &weight)?;
    }
    Ok(WeightVec(weight.coords().iter().map(|&x| (-x).max(0)).collect()))
}

/// `mu_k`, the dominant weight with coordinates [`epsilon_values`].
pub fn mu_weight(word: &ReducedWord, k: usize) -> Result<WeightVec, ConematError> {
    epsilon_values(word, k)
}

/// String of the lowest-weight vector attached to a dominant `lambda`:
/// `v_k = <s_{i_{k-1}} ... s_{i_1} lambda, alpha_{i_k}_vee>`. This is the
/// string of `z_{lambda*}`, and equals `(<lambda, beta_k_vee>)_k`, so every
/// entry is nonnegative.
pub fn lowest_string(word: &ReducedWord, lambda: &WeightVec) -> Result<Vec<i64>, ConematError> {
    let cartan = word.cartan();
    if lambda.len() != cartan.rank() {
        return Err(ConematError::Cartan(CartanError::RankMismatch {
            expected: cartan.rank(),
            got: lambda.len(),
        }));
    }
    if !lambda.is_dominant() {
        return Err(ConematError::NonDominantWeight(lambda.coords().to_vec()));
    }
    let mut weight = lambda.clone();
    let mut out = Vec::with_capacity(word.len());
    for k in 1..=word.len() {
        out.push(weight.coords()[word.letter(k) - 1]);
        weight = cartan.reflect_weight(word.letter(k), &weight)?;
    }
    Ok(out)
}

/// `P`: column `k` is the lowest-weight string of `mu_k`.
pub fn matrix_p(word: &ReducedWord) -> IntMatrix {
    let n = word.len();
    let mut m = IntMatrix::zero(n);
    for k in 1..=n {
        let mu = mu_weight(word, k).expect("position in range");
        let col = lowest_string(word, &mu).expect("mu_k is dominant");
        for (j, value) in col.into_iter().enumerate() {
            m.set(j, k - 1, value);
        }
    }
    m
}

/// `X`: spanning vectors of the Lusztig cone. Column `k` is `-C_k + P_k`
/// when the letter `i_k` recurs, and the string of `varpi_{i_k}` when
/// `k(1) = N + 1`. Entrywise nonnegative, with inverse `L`.
pub fn matrix_x(word: &ReducedWord) -> IntMatrix {
    let n = word.len();
    let rank = word.cartan().rank();
    let c = matrix_c(word);
    let p = matrix_p(word);
    let mut m = IntMatrix::zero(n);
    for k in 1..=n {
        let k1 = word.k1_successor(k).expect("position in range");
        if k1 == n + 1 {
            let fundamental = WeightVec::basis(rank, word.letter(k));
            let col = lowest_string(word, &fundamental).expect("fundamental weight is dominant");
            for (j, value) in col.into_iter().enumerate() {
                m.set(j, k - 1, value);
            }
        } else {
            for j in 0..n {
                m.set(j, k - 1, p.entry(j, k - 1) - c.entry(j, k - 1));
            }
        }
    }
    m
}

/// `L-tilde = V^{-1} S`: row `j` has `-1` at `j` and `j(1)`, and
/// `-a[i_j][i_k]` at `j < k < j(1)`.
pub fn matrix_l_tilde(word: &ReducedWord) -> IntMatrix {
    let n = word.len();
    let cartan = word.cartan();
    let letters = word.letters();
    let mut m = IntMatrix::zero(n);
    for j in 1..=n {
        let j1 = word.k1_successor(j).expect("position in range");
        m.set(j - 1, j - 1, -1);
        if j1 <= n {
            m.set(j - 1, j1 - 1, -1);
        }
        for k in j + 1..j1.min(n + 1) {
            m.set(j - 1, k - 1, -cartan.a(letters[j - 1], letters[k - 1]));
        }
    }
    m
}

/// `L = X^{-1}`: rows with `j(1) <= N` copy `L-tilde`; a row whose letter
/// never recurs is the coordinate row at the unique `k` with
/// `beta_k = alpha_{i_j}`.
pub fn matrix_l(word: &ReducedWord) -> Result<IntMatrix, ConematError> {
    let n = word.len();
    let rank = word.cartan().rank();
    let l_tilde = matrix_l_tilde(word);
    let betas = word.beta_roots();
    let mut m = IntMatrix::zero(n);
    for j in 1..=n {
        let j1 = word.k1_successor(j).expect("position in range");
        if j1 <= n {
            for k in 0..n {
                m.set(j - 1, k, l_tilde.entry(j - 1, k));
            }
        } else {
            let simple = RootVec::basis(rank, word.letter(j));
            let k = betas
                .iter()
                .position(|beta| *beta == simple)
                .ok_or(ConematError::MissingSimpleBeta { row: j })?;
            m.set(j - 1, k, 1);
        }
    }
    Ok(m)
}

fn check_point_length(word: &ReducedWord, point: &[i64]) -> Result<(), ConematError> {
    if point.len() != word.len() {
        return Err(ConematError::LengthMismatch { expected: word.len(), got: point.len() });
    }
    Ok(())
}

/// Membership by the defining occurrence inequalities: `c >= 0` and, for
/// every pair `p < p'` of consecutive occurrences of a letter,
/// `c_p + c_{p'} + sum_{p < q < p'} a[i_p][i_q] c_q <= 0`.
pub fn in_lusztig_cone_def(word: &ReducedWord, point: &[i64]) -> Result<bool, ConematError> {
    check_point_length(word, point)?;
    if point.iter().any(|&x| x < 0) {
        return Ok(false);
    }
    let cartan = word.cartan();
    let letters = word.letters();
    let mut last_seen: Vec<Option<usize>> = vec![None; cartan.rank()];
    for (q, &letter) in letters.iter().enumerate() {
        if let Some(p) = last_seen[letter - 1] {
            let mut sum = point[p] + point[q];
            for m in p + 1..q {
                sum += cartan.a(letter, letters[m]) * point[m];
            }
            if sum > 0 {
                return Ok(false);
            }
        }
        last_seen[letter - 1] = Some(q);
    }
    Ok(true)
}

/// Membership by the row system `L c >= 0`, returning the verdict together
/// with the spanning coefficients `L c`.
pub fn in_lusztig_cone_l(
    word: &ReducedWord,
    point: &[i64],
) -> Result<(bool, Vec<i64>), ConematError> {
    check_point_length(word, point)?;
    let l = matrix_l(word)?;
    let coefficients = l.mul_vec(point);
    let inside = coefficients.iter().all(|&x| x >= 0);
    Ok((inside, coefficients))
}

/// All nine matrices of a word, materialized eagerly.
#[derive(Debug, Clone)]
pub struct WordMatrices {
    word: ReducedWord,
    pub v: IntMatrix,
    pub w: IntMatrix,
    pub s: IntMatrix,
    pub t: IntMatrix,
    pub c: IntMatrix,
    pub p: IntMatrix,
    pub x: IntMatrix,
    pub l_tilde: IntMatrix,
    pub l: IntMatrix,
}

impl WordMatrices {
    pub fn compute(word: &ReducedWord) -> Result<Self, ConematError> {
        Ok(Self {
            word: word.clone(),
            v: matrix_v(word),
            w: matrix_w(word),
            s: matrix_s(word),
            t: matrix_t(word),
            c: matrix_c(word),
            p: matrix_p(word),
            x: matrix_x(word),
            l_tilde: matrix_l_tilde(word),
            l: matrix_l(word)?,
        })
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn member_def(&self, point: &[i64]) -> Result<bool, ConematError> {
        in_lusztig_cone_def(&self.word, point)
    }

    pub fn member_l(&self, point: &[i64]) -> Result<(bool, Vec<i64>), ConematError> {
        check_point_length(&self.word, point)?;
        let coefficients = self.l.mul_vec(point);
        let inside = coefficients.iter().all(|&x| x >= 0);
        Ok((inside, coefficients))
    }

    pub fn by_name(&self, name: &str) -> Option<&IntMatrix> {
        match name {
            "V" => Some(&self.v),
            "W" => Some(&self.w),
            "S" => Some(&self.s),
            "T" => Some(&self.t),
            "C" => Some(&self.c),
            "P" => Some(&self.p),
            "X" => Some(&self.x),
            "Ltilde" => Some(&self.l_tilde),
            "L" => Some(&self.l),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;
    use crate::weyl::{enumerate_reduced_words, weight_star};

    fn word(label: &str, letters: &[usize]) -> ReducedWord {
        ReducedWord::new(&CartanMatrix::from_label(label).unwrap(), letters).unwrap()
    }

    fn a2_word() -> ReducedWord {
        word("A2", &[1, 2, 1])
    }

    fn a3_word() -> ReducedWord {
        word("A3", &[2, 3, 2, 1, 2, 3])
    }

    #[test]
    fn rank_one_matrices_are_forced() {
        let w = word("A1", &[1]);
        assert_eq!(matrix_v(&w), IntMatrix::from_rows(vec![vec![1]]));
        assert_eq!(matrix_w(&w), IntMatrix::from_rows(vec![vec![1]]));
        assert_eq!(matrix_s(&w), IntMatrix::from_rows(vec![vec![-1]]));
        assert_eq!(matrix_t(&w), IntMatrix::from_rows(vec![vec![-1]]));
        assert_eq!(matrix_c(&w), IntMatrix::from_rows(vec![vec![1]]));
        assert_eq!(matrix_p(&w), IntMatrix::from_rows(vec![vec![1]]));
        assert_eq!(matrix_x(&w), IntMatrix::from_rows(vec![vec![1]]));
        assert_eq!(matrix_l_tilde(&w), IntMatrix::from_rows(vec![vec![-1]]));
        assert_eq!(matrix_l(&w).unwrap(), IntMatrix::from_rows(vec![vec![1]]));
    }

    #[test]
    fn a2_frozen_matrices() {
        let w = a2_word();
        assert_eq!(
            matrix_v(&w),
            IntMatrix::from_rows(vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]])
        );
        // j = 1 has j(1) = 3
        assert_eq!(
            matrix_w(&w),
            IntMatrix::from_rows(vec![vec![1, 0, -1], vec![0, 1, 0], vec![0, 0, 1]])
        );
        let s = matrix_s(&w);
        assert_eq!(
            s,
            IntMatrix::from_rows(vec![vec![-1, 1, -2], vec![0, -1, 1], vec![0, 0, -1]])
        );
        let t = matrix_t(&w);
        assert_eq!(
            t,
            IntMatrix::from_rows(vec![vec![-1, -1, 1], vec![0, -1, -1], vec![0, 0, -1]])
        );
        assert!(s.mul(&t).is_identity());
        assert!(t.mul(&s).is_identity());
        let c = matrix_c(&w);
        assert_eq!(
            c,
            IntMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]])
        );
        // cross-check C against -T V
        assert_eq!(c, t.mul(&matrix_v(&w)).neg());
        assert_eq!(
            matrix_p(&w),
            IntMatrix::from_rows(vec![vec![1, 1, 0], vec![1, 1, 1], vec![0, 0, 1]])
        );
        // columns (0,1,0), (0,1,1), (1,1,0)
        assert_eq!(
            matrix_x(&w),
            IntMatrix::from_rows(vec![vec![0, 0, 1], vec![1, 1, 1], vec![0, 1, 0]])
        );
        // row 1 has j(1) = 3; rows 2 and 3 continue with the S entries
        assert_eq!(
            matrix_l_tilde(&w),
            IntMatrix::from_rows(vec![vec![-1, 1, -1], vec![0, -1, 1], vec![0, 0, -1]])
        );
        // rows 2 and 3 locate alpha_2 and alpha_1 among the beta_k
        assert_eq!(
            matrix_l(&w).unwrap(),
            IntMatrix::from_rows(vec![vec![-1, 1, -1], vec![0, 0, 1], vec![1, 0, 0]])
        );
    }

    #[test]
    fn a3_reference_matrices() {
        let wm = WordMatrices::compute(&a3_word()).unwrap();
        let expect = IntMatrix::from_rows;
        assert_eq!(
            wm.v,
            expect(vec![
                vec![1, 0, 1, 0, 1, 0],
                vec![0, 1, 0, 0, 0, 1],
                vec![0, 0, 1, 0, 1, 0],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
            ])
        );
        assert_eq!(
            wm.t,
            expect(vec![
                vec![-1, -1, 1, 0, -1, 1],
                vec![0, -1, -1, -1, 0, 1],
                vec![0, 0, -1, -1, 1, 0],
                vec![0, 0, 0, -1, -1, -1],
                vec![0, 0, 0, 0, -1, -1],
                vec![0, 0, 0, 0, 0, -1],
            ])
        );
        assert_eq!(
            wm.c,
            expect(vec![
                vec![1, 1, 0, 0, 1, 0],
                vec![0, 1, 1, 1, 1, 0],
                vec![0, 0, 1, 1, 0, 0],
                vec![0, 0, 0, 1, 1, 1],
                vec![0, 0, 0, 0, 1, 1],
                vec![0, 0, 0, 0, 0, 1],
            ])
        );
        assert_eq!(
            wm.p,
            expect(vec![
                vec![1, 1, 0, 0, 1, 0],
                vec![1, 1, 1, 1, 1, 0],
                vec![0, 0, 1, 1, 0, 0],
                vec![1, 1, 1, 1, 1, 1],
                vec![1, 1, 0, 0, 1, 1],
                vec![0, 0, 0, 0, 0, 1],
            ])
        );
        assert_eq!(
            wm.x,
            expect(vec![
                vec![0, 0, 0, 0, 1, 0],
                vec![1, 0, 0, 0, 1, 1],
                vec![0, 0, 0, 0, 0, 1],
                vec![1, 1, 1, 1, 1, 1],
                vec![1, 1, 0, 1, 1, 0],
                vec![0, 0, 0, 1, 0, 0],
            ])
        );
        assert_eq!(
            wm.l,
            expect(vec![
                vec![-1, 1, -1, 0, 0, 0],
                vec![0, -1, 1, 0, 1, -1],
                vec![0, 0, -1, 1, -1, 0],
                vec![0, 0, 0, 0, 0, 1],
                vec![1, 0, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0],
            ])
        );
    }

    #[test]
    fn mu_weight_examples() {
        let a1 = word("A1", &[1]);
        assert_eq!(mu_weight(&a1, 1).unwrap(), WeightVec(vec![1]));
        let w = a2_word();
        // pairings (-1, 1) clamp to (1, 0)
        assert_eq!(mu_weight(&w, 1).unwrap(), WeightVec(vec![1, 0]));
        assert_eq!(mu_weight(&w, 2).unwrap(), WeightVec(vec![1, 0]));
        assert_eq!(mu_weight(&w, 3).unwrap(), WeightVec(vec![0, 1]));
        assert!(matches!(
            mu_weight(&w, 4),
            Err(ConematError::PositionOutOfRange { k: 4, n: 3 })
        ));
    }

    #[test]
    fn mu_weight_is_weight_star_when_letter_never_recurs() {
        for label in ["A3", "B3", "G2"] {
            let cartan = CartanMatrix::from_label(label).unwrap();
            for w in enumerate_reduced_words(&cartan).unwrap().take(8) {
                for k in 1..=w.len() {
                    if w.k1_successor(k).unwrap() == w.len() + 1 {
                        let fundamental = WeightVec::basis(cartan.rank(), w.letter(k));
                        assert_eq!(
                            mu_weight(&w, k).unwrap(),
                            weight_star(&cartan, &fundamental).unwrap(),
                            "{label}, word {w}, k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lowest_string_examples() {
        let w = a2_word();
        assert_eq!(lowest_string(&w, &WeightVec::zero(2)).unwrap(), vec![0, 0, 0]);
        assert_eq!(lowest_string(&w, &WeightVec::basis(2, 1)).unwrap(), vec![1, 1, 0]);
        assert_eq!(lowest_string(&w, &WeightVec::basis(2, 2)).unwrap(), vec![0, 1, 1]);
        assert!(matches!(
            lowest_string(&w, &WeightVec(vec![1, -1])),
            Err(ConematError::NonDominantWeight(_))
        ));
        assert!(matches!(
            lowest_string(&w, &WeightVec(vec![1, 0, 0])),
            Err(ConematError::Cartan(CartanError::RankMismatch { .. }))
        ));
    }

    #[test]
    fn lowest_string_matches_beta_coroot_pairings() {
        // dual route: v_k = <lambda, beta_k_vee>, where beta_k_vee is the
        // coroot image s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}_vee)
        use crate::cartan::{pairing, CorootVec, ReflectionOrder};
        let mut rng = crate::rng::SplitMix64::new(17);
        for label in ["A3", "B3", "C3", "G2"] {
            let cartan = CartanMatrix::from_label(label).unwrap();
            for w in enumerate_reduced_words(&cartan).unwrap().take(6) {
                for _ in 0..25 {
                    let lambda =
                        WeightVec((0..cartan.rank()).map(|_| rng.range_i64(0, 4)).collect());
                    let string = lowest_string(&w, &lambda).unwrap();
                    for k in 1..=w.len() {
                        let base = CorootVec::basis(cartan.rank(), w.letter(k));
                        let beta_vee = cartan
                            .apply_word(
                                &w.letters()[..k - 1],
                                &base,
                                ReflectionOrder::RightmostFirst,
                            )
                            .unwrap();
                        assert_eq!(string[k - 1], pairing(&lambda, &beta_vee).unwrap());
                        assert!(string[k - 1] >= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn lowest_string_of_rho_is_strictly_positive() {
        for label in ["A3", "B3", "G2"] {
            let cartan = CartanMatrix::from_label(label).unwrap();
            let rho = WeightVec(vec![1; cartan.rank()]);
            for w in enumerate_reduced_words(&cartan).unwrap().take(10) {
                assert!(lowest_string(&w, &rho).unwrap().iter().all(|&x| x >= 1));
            }
        }
    }

    #[test]
    fn triangularity_and_signs_across_words() {
        for label in ["A3", "B3", "G2"] {
            let cartan = CartanMatrix::from_label(label).unwrap();
            for w in enumerate_reduced_words(&cartan).unwrap() {
                let wm = WordMatrices::compute(&w).unwrap();
                assert!(wm.v.is_upper_triangular_with_diagonal(1));
                assert!(wm.w.is_upper_triangular_with_diagonal(1));
                assert!(wm.s.is_upper_triangular_with_diagonal(-1));
                assert!(wm.t.is_upper_triangular_with_diagonal(-1));
                assert!(wm.c.is_upper_triangular_with_diagonal(1));
                assert!(wm.c.is_nonnegative());
                assert!(wm.p.is_nonnegative());
                assert!(wm.x.is_nonnegative());
            }
        }
    }

    #[test]
    fn inverse_pairs_and_product_identities() {
        for label in ["A2", "A3", "B2", "G2"] {
            let cartan = CartanMatrix::from_label(label).unwrap();
            for w in enumerate_reduced_words(&cartan).unwrap() {
                let wm = WordMatrices::compute(&w).unwrap();
                assert!(wm.w.mul(&wm.v).is_identity(), "{label} {w}: WV");
                assert!(wm.s.mul(&wm.t).is_identity(), "{label} {w}: ST");
                assert!(wm.l.mul(&wm.x).is_identity(), "{label} {w}: LX");
                assert_eq!(wm.w.mul(&wm.s), wm.l_tilde, "{label} {w}: V^-1 S");
                assert_eq!(wm.t.mul(&wm.v), wm.c.neg(), "{label} {w}: S^-1 V");
            }
        }
    }

    #[test]
    fn last_occurrence_column_identities() {
        for label in ["A3", "B3", "G2"] {
            let cartan = CartanMatrix::from_label(label).unwrap();
            for w in enumerate_reduced_words(&cartan).unwrap() {
                let wm = WordMatrices::compute(&w).unwrap();
                for k in 1..=w.len() {
                    if w.k1_successor(k).unwrap() == w.len() + 1 {
                        assert_eq!(wm.p.col(k - 1), wm.c.col(k - 1), "{label} {w} col {k}");
                        let fundamental = WeightVec::basis(cartan.rank(), w.letter(k));
                        assert_eq!(
                            wm.x.col(k - 1),
                            lowest_string(&w, &fundamental).unwrap(),
                            "{label} {w} col {k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn simple_beta_rows_have_equal_p_and_c() {
        for label in ["A3", "B3", "G2"] {
            let cartan = CartanMatrix::from_label(label).unwrap();
            for w in enumerate_reduced_words(&cartan).unwrap() {
                let wm = WordMatrices::compute(&w).unwrap();
                for (j0, beta) in w.beta_roots().iter().enumerate() {
                    if beta.coords().iter().sum::<i64>() == 1 {
                        assert_eq!(wm.p.row(j0), wm.c.row(j0), "{label} {w} row {}", j0 + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_rows_annihilate_lowest_strings() {
        let mut rng = crate::rng::SplitMix64::new(23);
        for label in ["A3", "B2", "G2"] {
            let cartan = CartanMatrix::from_label(label).unwrap();
            for w in enumerate_reduced_words(&cartan).unwrap() {
                let l = matrix_l(&w).unwrap();
                for _ in 0..20 {
                    let lambda =
                        WeightVec((0..cartan.rank()).map(|_| rng.range_i64(0, 3)).collect());
                    let string = lowest_string(&w, &lambda).unwrap();
                    for j in 1..=w.len() {
                        if w.k1_successor(j).unwrap() <= w.len() {
                            let dot: i64 =
                                l.row(j - 1).iter().zip(&string).map(|(a, b)| a * b).sum();
                            assert_eq!(dot, 0, "{label} {w} row {j} lambda {lambda:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let w = a2_word();
        assert!(in_lusztig_cone_def(&w, &[0, 0, 0]).unwrap());
        // pair (1,3) gives c_1 + c_3 + a[1][2] c_2 = 1 > 0
        assert!(!in_lusztig_cone_def(&w, &[1, 0, 0]).unwrap());
        let (inside, coeffs) = in_lusztig_cone_l(&w, &[0, 0, 0]).unwrap();
        assert!(inside);
        assert_eq!(coeffs, vec![0, 0, 0]);
        let (inside, _) = in_lusztig_cone_l(&w, &[1, 0, 0]).unwrap();
        assert!(!inside);
        assert!(matches!(
            in_lusztig_cone_def(&w, &[0, 0]),
            Err(ConematError::LengthMismatch { expected: 3, got: 2 })
        ));
        assert!(matches!(
            in_lusztig_cone_l(&w, &[0; 4]),
            Err(ConematError::LengthMismatch { expected: 3, got: 4 })
        ));
    }

    #[test]
    fn x_columns_satisfy_the_defining_inequalities() {
        for label in ["A2", "A3", "B2", "G2"] {
            let cartan = CartanMatrix::from_label(label).unwrap();
            for w in enumerate_reduced_words(&cartan).unwrap() {
                let wm = WordMatrices::compute(&w).unwrap();
                for k in 0..w.len() {
                    let col = wm.x.col(k);
                    assert!(wm.member_def(&col).unwrap(), "{label} {w} col {}", k + 1);
                    let (inside, coeffs) = wm.member_l(&col).unwrap();
                    assert!(inside);
                    let mut unit = vec![0i64; w.len()];
                    unit[k] = 1;
                    assert_eq!(coeffs, unit, "{label} {w}: LX = I on column {}", k + 1);
                }
            }
        }
    }

    #[test]
    fn membership_tests_agree_on_a_box() {
        // compare the two routes on {-2..4}^N for A2 and one A3 word
        let words = vec![a2_word(), a3_word()];
        for w in words {
            let wm = WordMatrices::compute(&w).unwrap();
            let n = w.len();
            let mut point = vec![-2i64; n];
            loop {
                let by_def = wm.member_def(&point).unwrap();
                let (by_l, coeffs) = wm.member_l(&point).unwrap();
                assert_eq!(by_def, by_l, "word {w}, point {point:?}");
                if by_l {
                    assert_eq!(wm.x.mul_vec(&coeffs), point, "reconstruction at {point:?}");
                }
                // odometer over the box
                let mut idx = 0;
                loop {
                    if idx == n {
                        break;
                    }
                    point[idx] += 1;
                    if point[idx] <= 4 {
                        break;
                    }
                    point[idx] = -2;
                    idx += 1;
                }
                if idx == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn display_renders_rows_of_integers() {
        let m = IntMatrix::from_rows(vec![vec![1, -2], vec![0, 3]]);
        assert_eq!(m.to_string(), "1 -2\n0 3");
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[1,-2],[0,3]]");
    }
}
