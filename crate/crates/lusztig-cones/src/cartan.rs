//! Cartan matrices and exact reflection arithmetic on weights, roots and
//! coroots.
//!
//! The pairing convention is `a[i][j] = <alpha_j, alpha_i_vee>`, so that
//! `<varpi_l, alpha_r_vee> = delta_{lr}` and the simple root `alpha_i`
//! expands as `sum_j a[j][i] varpi_j` in the fundamental-weight basis.
//! Weights are stored in the `varpi` basis, roots in the `alpha` basis and
//! coroots in the `alpha_vee` basis; all conversions go through the Cartan
//! matrix, and the symmetrizers never appear.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix has rank 0")]
    EmptyMatrix,
    #[error("diagonal entry a[{i}][{i}] = {value}, expected 2")]
    BadDiagonal { i: usize, value: i64 },
    #[error("off-diagonal entry a[{i}][{j}] = {value} is positive")]
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    #[error("zero asymmetry: a[{i}][{j}] = 0 but a[{j}][{i}] = {value}")]
    AsymmetricZero { i: usize, j: usize, value: i64 },
    #[error("unknown Cartan type {family}{rank}")]
    InvalidType { family: char, rank: usize },
    #[error("cannot parse Cartan entry {text:?}")]
    BadEntry { text: String },
    #[error("letter {letter} out of range 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("rank mismatch: expected a vector of length {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("root closure did not stabilize within {cap} rounds; possibly non-finite type")]
    ClosureCapExceeded { cap: usize },
}

/// Integer vector in the fundamental-weight basis `(varpi_1, ..., varpi_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVec(pub Vec<i64>);

/// Integer vector in the simple-root basis `(alpha_1, ..., alpha_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootVec(pub Vec<i64>);

/// Integer vector in the simple-coroot basis `(alpha_1_vee, ..., alpha_n_vee)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CorootVec(pub Vec<i64>);

macro_rules! coord_vec_impl {
    ($name:ident) => {
        impl $name {
            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn zero(rank: usize) -> Self {
                $name(vec![0; rank])
            }

            /// Basis vector, 1-based index.
            pub fn basis(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i - 1] = 1;
                $name(v)
            }

            pub fn neg(&self) -> Self {
                $name(self.0.iter().map(|x| -x).collect())
            }
        }
    };
}

coord_vec_impl!(WeightVec);
coord_vec_impl!(RootVec);
coord_vec_impl!(CorootVec);

impl WeightVec {
    /// True when every coordinate is nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

/// `<lambda, c> = sum_l lambda_l c_l` for dual bases `varpi` and `alpha_vee`.
pub fn pairing(lambda: &WeightVec, c: &CorootVec) -> Result<i64, CartanError> {
    if lambda.len() != c.len() {
        return Err(CartanError::RankMismatch { expected: lambda.len(), got: c.len() });
    }
    Ok(lambda.0.iter().zip(&c.0).map(|(a, b)| a * b).sum())
}

/// Order in which a word of simple reflections acts on a vector.
///
/// For a word `(i_1, ..., i_m)` read as the composition
/// `s_{i_1} s_{i_2} ... s_{i_m}`, the rightmost factor acts first;
/// `LeftmostFirst` instead applies `s_{i_1}` first, computing
/// `s_{i_m} ... s_{i_1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionOrder {
    LeftmostFirst,
    RightmostFirst,
}

/// Coordinate vectors that simple reflections act on.
pub trait Reflect: Clone {
    fn coords_mut(&mut self) -> &mut Vec<i64>;
    /// Apply `s_i` in place; `i0` is the 0-based simple index.
    fn reflect_mut(&mut self, cartan: &CartanMatrix, i0: usize);
}

impl Reflect for WeightVec {
    fn coords_mut(&mut self) -> &mut Vec<i64> {
        &mut self.0
    }

    fn reflect_mut(&mut self, cartan: &CartanMatrix, i0: usize) {
        cartan.reflect_weight_coords(i0, &mut self.0);
    }
}

impl Reflect for RootVec {
    fn coords_mut(&mut self) -> &mut Vec<i64> {
        &mut self.0
    }

    fn reflect_mut(&mut self, cartan: &CartanMatrix, i0: usize) {
        cartan.reflect_root_coords(i0, &mut self.0);
    }
}

impl Reflect for CorootVec {
    fn coords_mut(&mut self) -> &mut Vec<i64> {
        &mut self.0
    }

    fn reflect_mut(&mut self, cartan: &CartanMatrix, i0: usize) {
        cartan.reflect_coroot_coords(i0, &mut self.0);
    }
}

/// A generalized Cartan matrix under the convention
/// `a[i][j] = <alpha_j, alpha_i_vee>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Validates squareness, the diagonal, off-diagonal signs and zero
    /// symmetry. Finiteness is not checked here; root generation enforces it
    /// through its closure cap.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = entries.len();
        if n == 0 {
            return Err(CartanError::EmptyMatrix);
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(CartanError::NotSquare { row: i + 1, len: row.len(), expected: n });
            }
        }
        for (i, row) in entries.iter().enumerate() {
            if row[i] != 2 {
                return Err(CartanError::BadDiagonal { i: i + 1, value: row[i] });
            }
            for (j, &value) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if value > 0 {
                    return Err(CartanError::PositiveOffDiagonal { i: i + 1, j: j + 1, value });
                }
                if value == 0 && entries[j][i] != 0 {
                    return Err(CartanError::AsymmetricZero {
                        i: i + 1,
                        j: j + 1,
                        value: entries[j][i],
                    });
                }
            }
        }
        Ok(Self { entries })
    }

    /// Cartan matrix of a finite type from its classification label.
    ///
    /// Conventions: in `B_n` the last simple root is short
    /// (`a[n-1][n] = -1`, `a[n][n-1] = -2`), `C_n` is its transpose, `F4`
    /// carries the double bond between nodes 2 and 3 with `a[3][2] = -2`,
    /// and `G2` is `[[2,-3],[-1,2]]` (first root short).
    pub fn from_type(family: char, rank: usize) -> Result<Self, CartanError> {
        let family = family.to_ascii_uppercase();
        let invalid = CartanError::InvalidType { family, rank };
        let ok = |links: Vec<(usize, usize, i64, i64)>| -> Result<Self, CartanError> {
            let mut a = vec![vec![0i64; rank]; rank];
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = 2;
            }
            for (i, j, aij, aji) in links {
                a[i - 1][j - 1] = aij;
                a[j - 1][i - 1] = aji;
            }
            Self::new(a)
        };
        let chain = |hi: usize| -> Vec<(usize, usize, i64, i64)> {
            (1..hi).map(|i| (i, i + 1, -1, -1)).collect()
        };
        match (family, rank) {
            ('A', n) if n >= 1 => ok(chain(n)),
            ('B', n) if n >= 2 => {
                let mut links = chain(n - 1);
                links.push((n - 1, n, -1, -2));
                ok(links)
            }
            ('C', n) if n >= 2 => {
                let mut links = chain(n - 1);
                links.push((n - 1, n, -2, -1));
                ok(links)
            }
            ('D', n) if n >= 4 => {
                let mut links = chain(n - 1);
                links.push((n - 2, n, -1, -1));
                ok(links)
            }
            ('E', n) if (6..=8).contains(&n) => {
                let mut links = vec![(1, 3, -1, -1), (2, 4, -1, -1)];
                for i in 3..n {
                    links.push((i, i + 1, -1, -1));
                }
                ok(links)
            }
            ('F', 4) => ok(vec![(1, 2, -1, -1), (2, 3, -1, -2), (3, 4, -1, -1)]),
            ('G', 2) => ok(vec![(1, 2, -3, -1)]),
            _ => Err(invalid),
        }
    }

    /// Parses a type label such as `A3` or `g2`.
    pub fn from_label(label: &str) -> Result<Self, CartanError> {
        let label = label.trim();
        let mut chars = label.chars();
        let family = chars.next().ok_or(CartanError::BadEntry { text: label.into() })?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| CartanError::BadEntry { text: label.into() })?;
        Self::from_type(family, rank)
    }

    /// Parses semicolon-separated rows of comma-separated integers, e.g.
    /// `"2,-1;-1,2"`.
    pub fn from_row_text(text: &str) -> Result<Self, CartanError> {
        let mut rows = Vec::new();
        for row in text.split(';') {
            let mut entries = Vec::new();
            for cell in row.split(',') {
                let cell = cell.trim();
                let value: i64 =
                    cell.parse().map_err(|_| CartanError::BadEntry { text: cell.into() })?;
                entries.push(value);
            }
            rows.push(entries);
        }
        Self::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Entry `a[i][j] = <alpha_j, alpha_i_vee>`, 1-based.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// The transposed matrix, i.e. the Cartan matrix of the dual root system.
    pub fn transposed(&self) -> Self {
        let n = self.rank();
        let entries = (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect();
        Self { entries }
    }

    pub fn check_letter(&self, letter: usize) -> Result<(), CartanError> {
        if letter == 0 || letter > self.rank() {
            Err(CartanError::LetterOutOfRange { letter, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    fn check_rank(&self, len: usize) -> Result<(), CartanError> {
        if len != self.rank() {
            Err(CartanError::RankMismatch { expected: self.rank(), got: len })
        } else {
            Ok(())
        }
    }

    /// Simple root `alpha_i` written in the fundamental-weight basis.
    pub fn simple_root_as_weight(&self, i: usize) -> WeightVec {
        WeightVec((0..self.rank()).map(|j| self.entries[j][i - 1]).collect())
    }

    // In-place reflection kernels; `i0` is 0-based.
    //
    // s_i(lambda) = lambda - <lambda, alpha_i_vee> alpha_i
    pub(crate) fn reflect_weight_coords(&self, i0: usize, coords: &mut [i64]) {
        let c = coords[i0];
        if c == 0 {
            return;
        }
        for (j, x) in coords.iter_mut().enumerate() {
            *x -= c * self.entries[j][i0];
        }
    }

    // s_i(r) = r - <r, alpha_i_vee> alpha_i; only coordinate i moves.
    pub(crate) fn reflect_root_coords(&self, i0: usize, coords: &mut [i64]) {
        let c: i64 = coords.iter().enumerate().map(|(j, x)| self.entries[i0][j] * x).sum();
        coords[i0] -= c;
    }

    // s_i(c) = c - (sum_l c_l a[l][i]) alpha_i_vee; only coordinate i moves.
    pub(crate) fn reflect_coroot_coords(&self, i0: usize, coords: &mut [i64]) {
        let c: i64 = coords.iter().enumerate().map(|(l, x)| x * self.entries[l][i0]).sum();
        coords[i0] -= c;
    }

    pub fn reflect_weight(&self, i: usize, w: &WeightVec) -> Result<WeightVec, CartanError> {
        self.check_letter(i)?;
        self.check_rank(w.len())?;
        let mut out = w.clone();
        out.reflect_mut(self, i - 1);
        Ok(out)
    }

    pub fn reflect_root(&self, i: usize, r: &RootVec) -> Result<RootVec, CartanError> {
        self.check_letter(i)?;
        self.check_rank(r.len())?;
        let mut out = r.clone();
        out.reflect_mut(self, i - 1);
        Ok(out)
    }

    pub fn reflect_coroot(&self, i: usize, c: &CorootVec) -> Result<CorootVec, CartanError> {
        self.check_letter(i)?;
        self.check_rank(c.len())?;
        let mut out = c.clone();
        out.reflect_mut(self, i - 1);
        Ok(out)
    }

    /// Applies the composition of simple reflections spelled by `word` in the
    /// requested order. The empty word is the identity.
    pub fn apply_word<T: Reflect>(
        &self,
        word: &[usize],
        x: &T,
        order: ReflectionOrder,
    ) -> Result<T, CartanError> {
        for &letter in word {
            self.check_letter(letter)?;
        }
        self.check_rank(x.clone().coords_mut().len())?;
        let mut out = x.clone();
        match order {
            ReflectionOrder::LeftmostFirst => {
                for &letter in word {
                    out.reflect_mut(self, letter - 1);
                }
            }
            ReflectionOrder::RightmostFirst => {
                for &letter in word.iter().rev() {
                    out.reflect_mut(self, letter - 1);
                }
            }
        }
        Ok(out)
    }

    /// All positive roots, in lexicographic order of alpha-coordinates,
    /// generated as the reflection closure of the simple roots with the
    /// default round cap `10 n^2`.
    pub fn positive_roots(&self) -> Result<Vec<RootVec>, CartanError> {
        let n = self.rank();
        self.positive_roots_with_cap(10 * n * n)
    }

    /// Same as [`positive_roots`](Self::positive_roots) with an explicit cap
    /// on closure rounds; exceeding it reports a possibly non-finite type.
    pub fn positive_roots_with_cap(&self, cap: usize) -> Result<Vec<RootVec>, CartanError> {
        let n = self.rank();
        let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            known.insert(v.clone());
            frontier.push(v);
        }
        let mut rounds = 0usize;
        while !frontier.is_empty() {
            rounds += 1;
            if rounds > cap {
                return Err(CartanError::ClosureCapExceeded { cap });
            }
            let mut next = Vec::new();
            for root in &frontier {
                for i0 in 0..n {
                    let mut image = root.clone();
                    self.reflect_root_coords(i0, &mut image);
                    if image.iter().all(|&x| x >= 0) && !known.contains(&image) {
                        known.insert(image.clone());
                        next.push(image);
                    }
                }
            }
            frontier = next;
        }
        Ok(known.into_iter().map(RootVec).collect())
    }

    /// `N = |Delta+|`, the length of the longest Weyl-group element.
    pub fn num_positive_roots(&self) -> Result<usize, CartanError> {
        Ok(self.positive_roots()?.len())
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}
