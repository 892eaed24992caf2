//! Subtraction-free rational expressions and min-plus tropicalization.
//!
//! An expression is kept as a single ratio of Laurent polynomials whose
//! coefficients are positive rationals. Tropicalizing discards coefficients
//! and replaces each monomial by its exponent vector; evaluation is
//! `min` over numerator dot products minus `min` over denominator dot
//! products. The monomial lifts attached to a reduced word tropicalize to
//! the matrices `S` and `T`, and the string-to-Lusztig change of
//! parametrization is the affine map `t -> S(t - lowest_string(lambda))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::cartan::{CorootVec, WeightVec};
use crate::conemat::{lowest_string, matrix_s, matrix_t, ConematError, IntMatrix};
use crate::weyl::ReducedWord;

pub type Coeff = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("not subtraction-free: '-' at byte {position}")]
    NotSubtractionFree { position: usize },
    #[error("unknown identifier {name:?} at byte {position}")]
    UnknownIdentifier { name: String, position: usize },
    #[error("zero literal at byte {position}")]
    ZeroLiteral { position: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Laurent polynomial with positive rational coefficients; never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveLaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Coeff>,
}

impl PositiveLaurentPoly {
    /// Single monomial `coeff * x^exps`; `coeff` must be positive.
    pub fn monomial(vars: Vec<String>, exps: Vec<i64>, coeff: Coeff) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent arity mismatch");
        assert!(coeff.is_positive(), "coefficients must be positive");
        let mut terms = BTreeMap::new();
        terms.insert(exps, coeff);
        Self { vars, terms }
    }

    pub fn constant(vars: Vec<String>, coeff: Coeff) -> Self {
        let exps = vec![0; vars.len()];
        Self::monomial(vars, exps, coeff)
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, Coeff::one())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Exponent vectors of the support, in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Coeff)> {
        self.terms.iter()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// Like terms combine by coefficient addition; positivity is preserved.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.vars, rhs.vars, "variable sets differ");
        let mut terms = self.terms.clone();
        for (exps, coeff) in &rhs.terms {
            terms
                .entry(exps.clone())
                .and_modify(|c| *c += coeff)
                .or_insert_with(|| coeff.clone());
        }
        Self { vars: self.vars.clone(), terms }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.vars, rhs.vars, "variable sets differ");
        let mut terms: BTreeMap<Vec<i64>, Coeff> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let exps: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let coeff = c1 * c2;
                terms.entry(exps).and_modify(|c| *c += &coeff).or_insert(coeff);
            }
        }
        Self { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one(self.vars.clone());
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }
}

/// Ratio of two positive Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtractionFreeExpr {
    num: PositiveLaurentPoly,
    den: PositiveLaurentPoly,
}

impl SubtractionFreeExpr {
    pub fn new(num: PositiveLaurentPoly, den: PositiveLaurentPoly) -> Self {
        assert_eq!(num.vars, den.vars, "variable sets differ");
        Self { num, den }
    }

    pub fn from_poly(num: PositiveLaurentPoly) -> Self {
        let den = PositiveLaurentPoly::one(num.vars.clone());
        Self { num, den }
    }

    pub fn constant(vars: Vec<String>, coeff: Coeff) -> Self {
        Self::from_poly(PositiveLaurentPoly::constant(vars, coeff))
    }

    pub fn variable(vars: Vec<String>, index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        Self::from_poly(PositiveLaurentPoly::monomial(vars, exps, Coeff::one()))
    }

    /// Laurent monomial with unit coefficient; exponents may be negative.
    pub fn laurent_monomial(vars: Vec<String>, exps: Vec<i64>) -> Self {
        Self::from_poly(PositiveLaurentPoly::monomial(vars, exps, Coeff::one()))
    }

    pub fn num(&self) -> &PositiveLaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &PositiveLaurentPoly {
        &self.den
    }

    pub fn vars(&self) -> &[String] {
        self.num.vars()
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self { num: self.num.mul(&rhs.num), den: self.den.mul(&rhs.den) }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        Self { num: self.num.mul(&rhs.den), den: self.den.mul(&rhs.num) }
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let k = exponent.unsigned_abs() as u32;
        if exponent >= 0 {
            Self { num: self.num.pow(k), den: self.den.pow(k) }
        } else {
            Self { num: self.den.pow(k), den: self.num.pow(k) }
        }
    }

    /// When the ratio is a single monomial over a single monomial with unit
    /// coefficients, its exponent vector; `None` otherwise.
    pub fn monomial_exponents(&self) -> Option<Vec<i64>> {
        if self.num.terms.len() != 1 || self.den.terms.len() != 1 {
            return None;
        }
        let (ne, nc) = self.num.terms.iter().next().unwrap();
        let (de, dc) = self.den.terms.iter().next().unwrap();
        if nc != dc {
            return None;
        }
        Some(ne.iter().zip(de).map(|(a, b)| a - b).collect())
    }

    /// Substitutes `values[i]` for variable `i`. All values must share one
    /// variable set, over which the result is expressed.
    pub fn substitute(&self, values: &[Self]) -> Result<Self, TropicalError> {
        if values.len() != self.arity() {
            return Err(TropicalError::DimensionMismatch {
                expected: self.arity(),
                got: values.len(),
            });
        }
        let target_vars = values
            .first()
            .map(|v| v.vars().to_vec())
            .unwrap_or_default();
        let eval_poly = |poly: &PositiveLaurentPoly| -> Self {
            let mut acc: Option<Self> = None;
            for (exps, coeff) in &poly.terms {
                let mut term = Self::constant(target_vars.clone(), coeff.clone());
                for (value, &e) in values.iter().zip(exps) {
                    if e != 0 {
                        term = term.mul(&value.pow(e));
                    }
                }
                acc = Some(match acc {
                    None => term,
                    Some(sum) => sum.add(&term),
                });
            }
            acc.expect("polynomials are never empty")
        };
        Ok(eval_poly(&self.num).div(&eval_poly(&self.den)))
    }

    /// Parses the subtraction-free grammar: identifiers from `variables`,
    /// positive integer literals, `+ * / ^`, parentheses. The character `-`
    /// is rejected everywhere. Nested quotients are cleared into a single
    /// ratio and like terms are combined.
    pub fn parse(text: &str, variables: &[String]) -> Result<Self, TropicalError> {
        let tokens = lex(text)?;
        let mut parser = Parser { tokens, pos: 0, vars: variables };
        let expr = parser.expr()?;
        if parser.pos < parser.tokens.len() {
            let (_, position) = parser.tokens[parser.pos];
            return Err(TropicalError::Syntax {
                position,
                message: "unexpected trailing input".into(),
            });
        }
        Ok(expr)
    }
}

fn poly_to_string(poly: &PositiveLaurentPoly) -> String {
    let mut parts = Vec::new();
    for (exps, coeff) in &poly.terms {
        let mut factors = Vec::new();
        let coeff_one = coeff.is_one();
        if !coeff_one {
            factors.push(coeff.to_string());
        }
        for (var, &e) in poly.vars.iter().zip(exps) {
            match e {
                0 => {}
                1 => factors.push(var.clone()),
                _ => factors.push(format!("{var}^{e}")),
            }
        }
        if factors.is_empty() {
            factors.push(coeff.to_string());
        }
        parts.push(factors.join("*"));
    }
    parts.join(" + ")
}

impl fmt::Display for SubtractionFreeExpr {
    /// Prints a parseable form: negative exponents are cleared by scaling
    /// numerator and denominator with a common monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arity = self.arity();
        let mut shift = vec![0i64; arity];
        for exps in self.num.support().chain(self.den.support()) {
            for (s, &e) in shift.iter_mut().zip(exps) {
                *s = (*s).max(-e);
            }
        }
        let scaled = if shift.iter().any(|&s| s > 0) {
            let monomial = PositiveLaurentPoly::monomial(
                self.vars().to_vec(),
                shift,
                Coeff::one(),
            );
            Self { num: self.num.mul(&monomial), den: self.den.mul(&monomial) }
        } else {
            self.clone()
        };
        if scaled.den.is_one() {
            write!(f, "{}", poly_to_string(&scaled.num))
        } else {
            write!(f, "({})/({})", poly_to_string(&scaled.num), poly_to_string(&scaled.den))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(i64),
    Plus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, TropicalError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => pos += 1,
            '-' => return Err(TropicalError::NotSubtractionFree { position: pos }),
            '+' => {
                tokens.push((Token::Plus, pos));
                pos += 1;
            }
            '*' => {
                tokens.push((Token::Star, pos));
                pos += 1;
            }
            '/' => {
                tokens.push((Token::Slash, pos));
                pos += 1;
            }
            '^' => {
                tokens.push((Token::Caret, pos));
                pos += 1;
            }
            '(' => {
                tokens.push((Token::LParen, pos));
                pos += 1;
            }
            ')' => {
                tokens.push((Token::RParen, pos));
                pos += 1;
            }
            '0'..='9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let literal = &text[start..pos];
                let value: i64 = literal.parse().map_err(|_| TropicalError::Syntax {
                    position: start,
                    message: format!("integer literal {literal:?} out of range"),
                })?;
                if value == 0 {
                    return Err(TropicalError::ZeroLiteral { position: start });
                }
                tokens.push((Token::Int(value), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                tokens.push((Token::Ident(text[start..pos].to_string()), start));
            }
            other => {
                return Err(TropicalError::Syntax {
                    position: pos,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, p)| *p).unwrap_or(usize::MAX)
    }

    fn expr(&mut self) -> Result<SubtractionFreeExpr, TropicalError> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some(Token::Plus)) {
            self.pos += 1;
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SubtractionFreeExpr, TropicalError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<SubtractionFreeExpr, TropicalError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(TropicalError::Syntax {
                    position: self.position(),
                    message: "expected integer exponent after '^'".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SubtractionFreeExpr, TropicalError> {
        let position = self.position();
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(index) => {
                        Ok(SubtractionFreeExpr::variable(self.vars.to_vec(), index))
                    }
                    None => Err(TropicalError::UnknownIdentifier { name, position }),
                }
            }
            Some(Token::Int(value)) => {
                self.pos += 1;
                Ok(SubtractionFreeExpr::constant(
                    self.vars.to_vec(),
                    Coeff::from_integer(BigInt::from(value)),
                ))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if matches!(self.peek(), Some(Token::RParen)) {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(TropicalError::Syntax {
                        position: self.position(),
                        message: "expected ')'".into(),
                    })
                }
            }
            _ => Err(TropicalError::Syntax {
                position,
                message: "expected identifier, literal or '('".into(),
            }),
        }
    }
}

/// Min-plus form of a subtraction-free expression: the supports of the
/// numerator and denominator. Evaluation is the difference of minima of dot
/// products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalForm {
    arity: usize,
    num_exponents: BTreeSet<Vec<i64>>,
    den_exponents: BTreeSet<Vec<i64>>,
}

impl TropicalForm {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_exponents(&self) -> &BTreeSet<Vec<i64>> {
        &self.num_exponents
    }

    pub fn den_exponents(&self) -> &BTreeSet<Vec<i64>> {
        &self.den_exponents
    }

    pub fn eval(&self, point: &[i64]) -> Result<i64, TropicalError> {
        if point.len() != self.arity {
            return Err(TropicalError::DimensionMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        let min_dot = |support: &BTreeSet<Vec<i64>>| {
            support
                .iter()
                .map(|exps| exps.iter().zip(point).map(|(a, b)| a * b).sum::<i64>())
                .min()
                .expect("supports are nonempty")
        };
        Ok(min_dot(&self.num_exponents) - min_dot(&self.den_exponents))
    }
}

/// Coefficients are discarded; each monomial becomes its exponent vector.
pub fn tropicalize(expr: &SubtractionFreeExpr) -> TropicalForm {
    TropicalForm {
        arity: expr.arity(),
        num_exponents: expr.num().support().cloned().collect(),
        den_exponents: expr.den().support().cloned().collect(),
    }
}

fn word_vars(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

/// Monomial lift whose stacked tropicalization is the matrix `S`:
/// component `k` is `t_k^{-1} prod_{j>k} t_j^{-a[i_k][i_j]}`.
pub fn zeta_monomials(word: &ReducedWord) -> Vec<SubtractionFreeExpr> {
    let n = word.len();
    let cartan = word.cartan();
    let vars = word_vars("t", n);
    (1..=n)
        .map(|k| {
            let mut exps = vec![0i64; n];
            exps[k - 1] = -1;
            for j in k + 1..=n {
                exps[j - 1] = -cartan.a(word.letter(k), word.letter(j));
            }
            SubtractionFreeExpr::laurent_monomial(vars.clone(), exps)
        })
        .collect()
}

/// Monomial lift of the inverse change of variables; the stacked
/// tropicalization is the matrix `T`. Component `k` is
/// `u_k^{-1} prod_{j>k} u_j^{e_j}` with
/// `e_j = <s_{i_{k+1}} ... s_{i_{j-1}} alpha_{i_j}, alpha_{i_k}_vee>`,
/// computed here through the coroot recurrence
/// `e_j = <alpha_{i_j}, s_{i_{j-1}} ... s_{i_{k+1}} alpha_{i_k}_vee>`.
pub fn zeta_inverse_monomials(word: &ReducedWord) -> Vec<SubtractionFreeExpr> {
    let n = word.len();
    let cartan = word.cartan();
    let rank = cartan.rank();
    let vars = word_vars("u", n);
    (1..=n)
        .map(|k| {
            let mut exps = vec![0i64; n];
            exps[k - 1] = -1;
            let mut coroot = CorootVec::basis(rank, word.letter(k));
            for j in k + 1..=n {
                let letter = word.letter(j);
                exps[j - 1] = coroot
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(m, &c)| c * cartan.a(m + 1, letter))
                    .sum();
                coroot = cartan.reflect_coroot(letter, &coroot).expect("valid letter");
            }
            SubtractionFreeExpr::laurent_monomial(vars.clone(), exps)
        })
        .collect()
}

/// Stacks monomial expressions into the integer matrix of their linear
/// tropicalizations; `None` if any component is not a monomial ratio.
pub fn stacked_tropical_matrix(exprs: &[SubtractionFreeExpr]) -> Option<IntMatrix> {
    let n = exprs.len();
    let mut rows = Vec::with_capacity(n);
    for expr in exprs {
        if expr.arity() != n {
            return None;
        }
        rows.push(expr.monomial_exponents()?);
    }
    Some(IntMatrix::from_rows(rows))
}

/// String parameter to Lusztig parameter of the lowest-weight twist:
/// `t -> S (t - lowest_string(word, lambda))`. Sends
/// `lowest_string(word, lambda)` to zero.
pub fn string_to_lusztig_affine(
    word: &ReducedWord,
    lambda: &WeightVec,
    t: &[i64],
) -> Result<Vec<i64>, ConematError> {
    if t.len() != word.len() {
        return Err(ConematError::LengthMismatch { expected: word.len(), got: t.len() });
    }
    let base = lowest_string(word, lambda)?;
    let shifted: Vec<i64> = t.iter().zip(&base).map(|(a, b)| a - b).collect();
    Ok(matrix_s(word).mul_vec(&shifted))
}

/// Inverse of [`string_to_lusztig_affine`]: `u -> T u + lowest_string`.
pub fn lusztig_to_string_affine(
    word: &ReducedWord,
    lambda: &WeightVec,
    u: &[i64],
) -> Result<Vec<i64>, ConematError> {
    if u.len() != word.len() {
        return Err(ConematError::LengthMismatch { expected: word.len(), got: u.len() });
    }
    let base = lowest_string(word, lambda)?;
    let image = matrix_t(word).mul_vec(u);
    Ok(image.iter().zip(&base).map(|(a, b)| a + b).collect())
}
