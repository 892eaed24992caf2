//! Reduced words for the longest Weyl-group element: validation,
//! enumeration, convex orderings and occurrence bookkeeping.
//!
//! Letters and positions are 1-based throughout, matching the subscripts in
//! the matrix formulas; the "no later occurrence" value of
//! [`ReducedWord::k1_successor`] is the literal index `N + 1`.

use serde::Serialize;
use thiserror::Error;

use crate::cartan::{CartanError, CartanMatrix, ReflectionOrder, RootVec, WeightVec};
use crate::rng::SplitMix64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("not a reduced expression for w0")]
    NotReducedForW0,
    #[error("position {k} out of range 1..={n}")]
    PositionOutOfRange { k: usize, n: usize },
}

/// A reduced word `(i_1, ..., i_N)` for the longest element `w0`, together
/// with its ambient Cartan matrix.
///
/// Validity means the convex sequence `beta_k = s_{i_1} ... s_{i_{k-1}}
/// (alpha_{i_k})` consists of `N = |Delta+|` distinct positive roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedWord {
    #[serde(skip)]
    cartan: CartanMatrix,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(cartan: &CartanMatrix, letters: &[usize]) -> Result<Self, WordError> {
        if !is_reduced_w0(cartan, letters)? {
            return Err(WordError::NotReducedForW0);
        }
        Ok(Self { cartan: cartan.clone(), letters: letters.to_vec() })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// `N`, the length of the word.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `k`.
    pub fn letter(&self, k: usize) -> usize {
        self.letters[k - 1]
    }

    fn check_position(&self, k: usize) -> Result<(), WordError> {
        if k == 0 || k > self.len() {
            Err(WordError::PositionOutOfRange { k, n: self.len() })
        } else {
            Ok(())
        }
    }

    /// `k(1) = min { j : j > k, i_j = i_k }`, or `N + 1` when the letter
    /// never recurs.
    pub fn k1_successor(&self, k: usize) -> Result<usize, WordError> {
        self.check_position(k)?;
        let target = self.letters[k - 1];
        for (j, &letter) in self.letters.iter().enumerate().skip(k) {
            if letter == target {
                return Ok(j + 1);
            }
        }
        Ok(self.len() + 1)
    }

    /// The convex ordering `beta_1, ..., beta_N` of the positive roots.
    pub fn beta_roots(&self) -> Vec<RootVec> {
        let n = self.cartan.rank();
        let mut action = WordAction::identity(n);
        let mut betas = Vec::with_capacity(self.len());
        for &letter in &self.letters {
            betas.push(RootVec(action.column(letter - 1)));
            action.append_reflection(&self.cartan, letter - 1);
        }
        betas
    }

    fn display_letters(&self) -> String {
        self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl std::fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display_letters())
    }
}

/// True iff `letters` spells a reduced expression for `w0`: the length is
/// `|Delta+|` and all `beta_k` are distinct positive roots. Out-of-range
/// letters and non-finite root generation are errors, not `false`.
pub fn is_reduced_w0(cartan: &CartanMatrix, letters: &[usize]) -> Result<bool, WordError> {
    for &letter in letters {
        cartan.check_letter(letter)?;
    }
    let num_positive = cartan.num_positive_roots()?;
    if letters.len() != num_positive {
        return Ok(false);
    }
    let n = cartan.rank();
    let mut action = WordAction::identity(n);
    let mut seen = std::collections::BTreeSet::new();
    for &letter in letters {
        let beta = action.column(letter - 1);
        if beta.iter().any(|&x| x < 0) || !seen.insert(beta) {
            return Ok(false);
        }
        action.append_reflection(cartan, letter - 1);
    }
    Ok(true)
}

/// Matrix of a Weyl-group element acting on alpha-coordinates; column `j`
/// holds the image of `alpha_{j+1}`.
#[derive(Debug, Clone)]
struct WordAction {
    n: usize,
    // column-major: cols[j][r] = coordinate r of w(alpha_{j+1})
    cols: Vec<Vec<i64>>,
}

impl WordAction {
    fn identity(n: usize) -> Self {
        let cols = (0..n)
            .map(|j| {
                let mut col = vec![0i64; n];
                col[j] = 1;
                col
            })
            .collect();
        Self { n, cols }
    }

    fn column(&self, j0: usize) -> Vec<i64> {
        self.cols[j0].clone()
    }

    /// Replaces `w` by `w s_i`; new column j is `col_j - a[i][j] col_i`,
    /// with column i negated.
    fn append_reflection(&mut self, cartan: &CartanMatrix, i0: usize) {
        let pivot = self.cols[i0].clone();
        for j in 0..self.n {
            if j == i0 {
                continue;
            }
            let coeff = cartan.a(i0 + 1, j + 1);
            if coeff != 0 {
                for (dst, &src) in self.cols[j].iter_mut().zip(&pivot) {
                    *dst -= coeff * src;
                }
            }
        }
        for (dst, &src) in self.cols[i0].iter_mut().zip(&pivot) {
            *dst = -src;
        }
    }

    fn ascent_letters(&self) -> impl Iterator<Item = usize> + '_ {
        // w(alpha_i) positive means the word may be extended by i.
        self.cols
            .iter()
            .enumerate()
            .filter(|(_, col)| col.iter().all(|&x| x >= 0))
            .map(|(j, _)| j + 1)
    }
}

/// Depth-first enumeration of every reduced word for `w0`, in lexicographic
/// order of letter sequences.
pub fn enumerate_reduced_words(
    cartan: &CartanMatrix,
) -> Result<ReducedWordIter, WordError> {
    let target_len = cartan.num_positive_roots()?;
    Ok(ReducedWordIter {
        cartan: cartan.clone(),
        target_len,
        letters: Vec::new(),
        stack: vec![Frame { action: WordAction::identity(cartan.rank()), next_letter: 1 }],
    })
}

#[derive(Debug)]
struct Frame {
    action: WordAction,
    next_letter: usize,
}

#[derive(Debug)]
pub struct ReducedWordIter {
    cartan: CartanMatrix,
    target_len: usize,
    letters: Vec<usize>,
    stack: Vec<Frame>,
}

impl Iterator for ReducedWordIter {
    type Item = ReducedWord;

    fn next(&mut self) -> Option<Self::Item> {
        let rank = self.cartan.rank();
        while let Some(frame) = self.stack.last_mut() {
            let mut chosen = None;
            let mut candidate = frame.next_letter;
            while candidate <= rank {
                let col = &frame.action.cols[candidate - 1];
                if col.iter().all(|&x| x >= 0) {
                    chosen = Some(candidate);
                    break;
                }
                candidate += 1;
            }
            match chosen {
                Some(letter) => {
                    frame.next_letter = letter + 1;
                    self.letters.push(letter);
                    if self.letters.len() == self.target_len {
                        let word = ReducedWord {
                            cartan: self.cartan.clone(),
                            letters: self.letters.clone(),
                        };
                        self.letters.pop();
                        return Some(word);
                    }
                    let mut action = frame.action.clone();
                    action.append_reflection(&self.cartan, letter - 1);
                    self.stack.push(Frame { action, next_letter: 1 });
                }
                None => {
                    self.stack.pop();
                    self.letters.pop();
                }
            }
        }
        None
    }
}

/// Draws `count` distinct reduced words for `w0` by seeded uniform descent
/// through the prefix tree, returned in lexicographic order. Yields fewer
/// than `count` only when the type has fewer reduced words in total.
pub fn sample_reduced_words(
    cartan: &CartanMatrix,
    count: usize,
    seed: u64,
) -> Result<Vec<ReducedWord>, WordError> {
    let target_len = cartan.num_positive_roots()?;
    let mut rng = SplitMix64::new(seed);
    let mut found: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    let mut attempts = 0usize;
    let max_attempts = 200 * count.max(1);
    while found.len() < count && attempts < max_attempts {
        attempts += 1;
        let mut action = WordAction::identity(cartan.rank());
        let mut letters = Vec::with_capacity(target_len);
        for _ in 0..target_len {
            let choices: Vec<usize> = action.ascent_letters().collect();
            debug_assert!(!choices.is_empty());
            let letter = choices[rng.below(choices.len() as u64) as usize];
            letters.push(letter);
            action.append_reflection(cartan, letter - 1);
        }
        found.insert(letters);
    }
    Ok(found
        .into_iter()
        .map(|letters| ReducedWord { cartan: cartan.clone(), letters })
        .collect())
}

/// `lambda* = -w0(lambda)`; involutive, permutes the fundamental weights.
pub fn weight_star(cartan: &CartanMatrix, lambda: &WeightVec) -> Result<WeightVec, CartanError> {
    let word = greedy_reduced_word(cartan)?;
    let image = cartan.apply_word(&word, lambda, ReflectionOrder::RightmostFirst)?;
    Ok(image.neg())
}

/// The lexicographically first reduced word for `w0`.
fn greedy_reduced_word(cartan: &CartanMatrix) -> Result<Vec<usize>, CartanError> {
    let target_len = cartan.num_positive_roots()?;
    let mut action = WordAction::identity(cartan.rank());
    let mut letters = Vec::with_capacity(target_len);
    for _ in 0..target_len {
        let letter = action.ascent_letters().next().expect("w0 not yet reached");
        letters.push(letter);
        action.append_reflection(cartan, letter - 1);
    }
    Ok(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn cartan(label: &str) -> CartanMatrix {
        CartanMatrix::from_label(label).unwrap()
    }

    fn word(label: &str, letters: &[usize]) -> ReducedWord {
        ReducedWord::new(&cartan(label), letters).unwrap()
    }

    #[test]
    fn is_reduced_examples() {
        assert!(is_reduced_w0(&cartan("A1"), &[1]).unwrap());
        assert!(is_reduced_w0(&cartan("A2"), &[1, 2, 1]).unwrap());
        // beta_2 of (1,1,2) is -alpha_1
        assert!(!is_reduced_w0(&cartan("A2"), &[1, 1, 2]).unwrap());
        assert!(!is_reduced_w0(&cartan("A2"), &[1, 2]).unwrap());
        assert!(is_reduced_w0(&cartan("A3"), &[2, 3, 2, 1, 2, 3]).unwrap());
        assert!(matches!(
            is_reduced_w0(&cartan("A2"), &[1, 3, 1]),
            Err(WordError::Cartan(CartanError::LetterOutOfRange { .. }))
        ));
    }

    #[test]
    fn beta_roots_examples() {
        assert_eq!(word("A1", &[1]).beta_roots(), vec![RootVec(vec![1])]);
        let betas = word("A2", &[1, 2, 1]).beta_roots();
        assert_eq!(
            betas,
            vec![RootVec(vec![1, 0]), RootVec(vec![1, 1]), RootVec(vec![0, 1])]
        );
        // the A3 word covers all of Delta+
        let w = word("A3", &[2, 3, 2, 1, 2, 3]);
        let betas: BTreeSet<_> = w.beta_roots().into_iter().collect();
        let positive: BTreeSet<_> = w.cartan().positive_roots().unwrap().into_iter().collect();
        assert_eq!(betas, positive);
    }

    #[test]
    fn enumerate_a1_and_a2_exactly() {
        let words: Vec<Vec<usize>> = enumerate_reduced_words(&cartan("A1"))
            .unwrap()
            .map(|w| w.letters().to_vec())
            .collect();
        assert_eq!(words, vec![vec![1]]);
        let words: Vec<Vec<usize>> = enumerate_reduced_words(&cartan("A2"))
            .unwrap()
            .map(|w| w.letters().to_vec())
            .collect();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn enumerate_a3_matches_brute_force() {
        let cartan = cartan("A3");
        let enumerated: Vec<Vec<usize>> = enumerate_reduced_words(&cartan)
            .unwrap()
            .map(|w| w.letters().to_vec())
            .collect();
        assert_eq!(enumerated.len(), 16);
        let mut sorted = enumerated.clone();
        sorted.sort();
        assert_eq!(enumerated, sorted, "enumeration must be lexicographic");
        // independent oracle: filter all 3^6 letter sequences
        let mut brute = Vec::new();
        for code in 0..3usize.pow(6) {
            let mut letters = Vec::with_capacity(6);
            let mut rest = code;
            for _ in 0..6 {
                letters.push(rest % 3 + 1);
                rest /= 3;
            }
            if is_reduced_w0(&cartan, &letters).unwrap() {
                brute.push(letters);
            }
        }
        brute.sort();
        assert_eq!(enumerated, brute);
    }

    #[test]
    fn enumeration_yields_valid_words_with_beta_bijection() {
        for label in ["A2", "A3", "B2", "B3", "G2"] {
            let cartan = cartan(label);
            let positive: BTreeSet<_> =
                cartan.positive_roots().unwrap().into_iter().collect();
            let mut count = 0usize;
            for w in enumerate_reduced_words(&cartan).unwrap() {
                count += 1;
                assert!(is_reduced_w0(&cartan, w.letters()).unwrap());
                let betas: BTreeSet<_> = w.beta_roots().into_iter().collect();
                assert_eq!(betas, positive, "{label}: beta set mismatch");
            }
            assert!(count > 0);
        }
    }

    #[test]
    fn enumeration_counts_for_rank_three_types() {
        for (label, expected) in [("A3", 16), ("B3", 42), ("C3", 42), ("B2", 2), ("G2", 2)] {
            let count = enumerate_reduced_words(&cartan(label)).unwrap().count();
            assert_eq!(count, expected, "{label}");
        }
    }

    #[test]
    fn limit_zero_yields_empty_stream() {
        assert_eq!(enumerate_reduced_words(&cartan("A3")).unwrap().take(0).count(), 0);
    }

    #[test]
    fn non_finite_type_is_rejected_before_enumeration() {
        let affine = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(
            enumerate_reduced_words(&affine),
            Err(WordError::Cartan(CartanError::ClosureCapExceeded { .. }))
        ));
        assert!(matches!(
            weight_star(&affine, &WeightVec::basis(2, 1)),
            Err(CartanError::ClosureCapExceeded { .. })
        ));
    }

    /// Order of `s_i s_j` in the Weyl group, from the Cartan entries.
    fn braid_order(cartan: &CartanMatrix, i: usize, j: usize) -> usize {
        match cartan.a(i, j) * cartan.a(j, i) {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            other => panic!("unexpected bond weight {other}"),
        }
    }

    #[test]
    fn enumeration_is_closed_under_braid_moves() {
        for label in ["A2", "A3", "B2", "B3", "C3", "G2"] {
            let cartan = cartan(label);
            let words: BTreeSet<Vec<usize>> = enumerate_reduced_words(&cartan)
                .unwrap()
                .map(|w| w.letters().to_vec())
                .collect();
            for letters in &words {
                for start in 0..letters.len() {
                    for other in 1..=cartan.rank() {
                        let i = letters[start];
                        if other == i {
                            continue;
                        }
                        let m = braid_order(&cartan, i, other);
                        if start + m > letters.len() {
                            continue;
                        }
                        let window_ok = (0..m).all(|t| {
                            letters[start + t] == if t % 2 == 0 { i } else { other }
                        });
                        if !window_ok {
                            continue;
                        }
                        let mut moved = letters.clone();
                        for t in 0..m {
                            moved[start + t] = if t % 2 == 0 { other } else { i };
                        }
                        assert!(
                            words.contains(&moved),
                            "{label}: braid move left the enumerated set: {letters:?} -> {moved:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn k1_successor_examples() {
        let w = word("A3", &[2, 3, 2, 1, 2, 3]);
        assert_eq!(w.k1_successor(1).unwrap(), 3);
        assert_eq!(w.k1_successor(4).unwrap(), 7);
        assert_eq!(w.k1_successor(6).unwrap(), 7);
        assert!(matches!(
            w.k1_successor(0),
            Err(WordError::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            w.k1_successor(7),
            Err(WordError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn weight_star_examples() {
        let a1 = cartan("A1");
        assert_eq!(
            weight_star(&a1, &WeightVec::basis(1, 1)).unwrap(),
            WeightVec::basis(1, 1)
        );
        let a2 = cartan("A2");
        assert_eq!(
            weight_star(&a2, &WeightVec::basis(2, 1)).unwrap(),
            WeightVec::basis(2, 2)
        );
    }

    #[test]
    fn weight_star_is_an_involution_preserving_dominance() {
        for label in ["A3", "B3", "C3", "D4", "G2"] {
            let cartan = cartan(label);
            let mut rng = crate::rng::SplitMix64::new(99);
            for _ in 0..100 {
                let lambda =
                    WeightVec((0..cartan.rank()).map(|_| rng.range_i64(-4, 4)).collect());
                let star = weight_star(&cartan, &lambda).unwrap();
                assert_eq!(weight_star(&cartan, &star).unwrap(), lambda, "{label}");
                if lambda.is_dominant() {
                    assert!(star.is_dominant(), "{label}: star broke dominance");
                }
            }
        }
    }

    #[test]
    fn sampled_words_are_valid_and_deterministic() {
        let cartan = cartan("A4");
        let first = sample_reduced_words(&cartan, 50, 7).unwrap();
        let second = sample_reduced_words(&cartan, 50, 7).unwrap();
        assert_eq!(first.len(), 50);
        assert_eq!(first, second);
        for w in &first {
            assert!(is_reduced_w0(&cartan, w.letters()).unwrap());
        }
        let other_seed = sample_reduced_words(&cartan, 50, 8).unwrap();
        assert_ne!(first, other_seed);
    }

    #[test]
    fn sampling_saturates_small_types() {
        // A2 only has two reduced words; asking for more returns both.
        let words = sample_reduced_words(&cartan("A2"), 10, 3).unwrap();
        assert_eq!(
            words.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>(),
            vec![vec![1, 2, 1], vec![2, 1, 2]]
        );
    }
}
