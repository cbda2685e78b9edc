//! Dehn twists acting on H₁.
//!
//! A positive twist along a curve of class `c` acts as the transvection
//! `x ↦ x + ⟨x, c⟩ c`. Words are applied left to right: the word
//! `[γ₁, …, γ_m]` is the mapping class `T_{γ_m} ∘ … ∘ T_{γ₁}`, so its
//! matrix is the product with the last letter leftmost.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::curvesys::{Components, CurveSystem};
use crate::exactalg::{AlgebraError, IntMatrix};
use crate::surface::{AlgebraicSurface, HomologyClass};

/// Upper bound on the number of labels the reordering search accepts.
pub const MAX_REORDER_LABELS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("class has length {got}, surface needs {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("unknown curve '{0}'")]
    UnknownCurve(String),
    #[error("bad twist letter '{0}': expected +name or -name")]
    BadLetter(String),
    #[error("intersection graph is not a forest")]
    NotAForest,
    #[error("{0} labels exceed the search bound of {MAX_REORDER_LABELS}")]
    TooManyLabels(usize),
    #[error("arrangement {0:?} is not a permutation of the labels")]
    NotAPermutation(Vec<usize>),
    #[error("no move sequence reaches the target; this contradicts the reordering lemma for forests")]
    Unreachable,
    #[error("illegal move {index}: {reason}")]
    IllegalMove { index: usize, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Self::Positive => 1,
            Self::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }
}

/// One letter of a twist word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Twist {
    pub curve: String,
    pub sign: Sign,
}

impl Twist {
    pub fn positive(curve: impl Into<String>) -> Self {
        Self {
            curve: curve.into(),
            sign: Sign::Positive,
        }
    }

    pub fn negative(curve: impl Into<String>) -> Self {
        Self {
            curve: curve.into(),
            sign: Sign::Negative,
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Positive { '+' } else { '-' };
        write!(f, "{s}{}", self.curve)
    }
}

impl FromStr for Twist {
    type Err = TwistError;

    fn from_str(s: &str) -> Result<Self, TwistError> {
        let (sign, name) = match s.split_at_checked(1) {
            Some(("+", n)) => (Sign::Positive, n),
            Some(("-", n)) => (Sign::Negative, n),
            _ => return Err(TwistError::BadLetter(s.to_string())),
        };
        if name.is_empty() {
            return Err(TwistError::BadLetter(s.to_string()));
        }
        Ok(Self {
            curve: name.to_string(),
            sign,
        })
    }
}

impl Serialize for Twist {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A word in Dehn twists; the first letter is applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct TwistWord(pub Vec<Twist>);

impl TwistWord {
    pub fn new(letters: Vec<Twist>) -> Self {
        Self(letters)
    }

    /// All-positive word in the given order.
    pub fn positive<S: AsRef<str>>(names: &[S]) -> Self {
        Self(names.iter().map(|n| Twist::positive(n.as_ref())).collect())
    }

    pub fn parse<S: AsRef<str>>(letters: &[S]) -> Result<Self, TwistError> {
        letters
            .iter()
            .map(|l| l.as_ref().parse())
            .collect::<Result<_, _>>()
            .map(Self)
    }

    pub fn letters(&self) -> &[Twist] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverse the letters and flip each sign.
    pub fn inverse(&self) -> Self {
        Self(
            self.0
                .iter()
                .rev()
                .map(|t| Twist {
                    curve: t.curve.clone(),
                    sign: t.sign.flip(),
                })
                .collect(),
        )
    }

    /// `self` followed by `other`, i.e. `other ∘ self`.
    pub fn then(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Matrix of `x ↦ x + sign·⟨x, c⟩·c`.
pub fn transvection_matrix(
    cls: &HomologyClass,
    sign: Sign,
    surface: &AlgebraicSurface,
) -> Result<IntMatrix, TwistError> {
    let n = surface.dim();
    if cls.len() != n {
        return Err(TwistError::Dimension {
            got: cls.len(),
            expected: n,
        });
    }
    let c = &cls.0;
    // (Jc)_k = ⟨e_k, c⟩
    let jc: Vec<i64> = (0..n)
        .map(|k| if k % 2 == 0 { c[k + 1] } else { -c[k - 1] })
        .collect();
    let mut m = IntMatrix::identity(n);
    let s = BigInt::from(sign.value());
    for i in 0..n {
        if c[i] == 0 {
            continue;
        }
        for (k, &jk) in jc.iter().enumerate() {
            if jk != 0 {
                let v = m.get(i, k) + &s * BigInt::from(c[i]) * BigInt::from(jk);
                m.set(i, k, v);
            }
        }
    }
    Ok(m)
}

/// Matrix of a twist word over the curves of `sys`.
pub fn word_matrix(word: &TwistWord, sys: &CurveSystem) -> Result<IntMatrix, TwistError> {
    let mut m = IntMatrix::identity(sys.surface().dim());
    for t in word.letters() {
        let curve = sys
            .curve(&t.curve)
            .ok_or_else(|| TwistError::UnknownCurve(t.curve.clone()))?;
        let step = transvection_matrix(&curve.class, t.sign, sys.surface())?;
        m = step.checked_mul(&m)?;
    }
    Ok(m)
}

/// `L = 2 − tr(m)` for the action `m` on H₁ of a closed oriented surface.
pub fn lefschetz_number(m: &IntMatrix) -> Result<BigInt, AlgebraError> {
    Ok(BigInt::from(2) - m.trace()?)
}

/// A forest on labels `0..n`, stored as an adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    adjacent: Vec<Vec<bool>>,
}

impl Forest {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, TwistError> {
        let mut adjacent = vec![vec![false; n]; n];
        let mut comps = Components::new(n);
        for &(a, b) in edges {
            if a >= n || b >= n || a == b || !comps.union(a, b) {
                return Err(TwistError::NotAForest);
            }
            adjacent[a][b] = true;
            adjacent[b][a] = true;
        }
        Ok(Self { adjacent })
    }

    /// The intersection graph of a curve system, labels = curve indices.
    pub fn of_system(sys: &CurveSystem) -> Result<Self, TwistError> {
        Self::new(sys.len(), &sys.graph_edges())
    }

    pub fn len(&self) -> usize {
        self.adjacent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacent.is_empty()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacent[a][b]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// Swap of linear neighbours `p, p + 1`.
    InteriorSwap,
    /// Swap of the first and last entries, neighbours across the seam.
    WrapSwap,
}

/// A swap of two circle-neighbours that are not adjacent in the graph.
/// Positions are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ReorderMove {
    pub kind: MoveKind,
    pub positions: (usize, usize),
}

impl ReorderMove {
    fn apply(&self, state: &mut [usize]) {
        state.swap(self.positions.0, self.positions.1);
    }
}

/// Output of [`reorder_moves`]: the moves, every intermediate arrangement
/// (`history[0]` is the start), and the rotation that aligns the last
/// arrangement `s` with the target: `target[k] = s[(k + rotation) % n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReorderPlan {
    pub moves: Vec<ReorderMove>,
    pub history: Vec<Vec<usize>>,
    pub rotation: usize,
}

fn check_permutation(n: usize, arr: &[usize]) -> Result<(), TwistError> {
    let mut seen = vec![false; n];
    for &x in arr {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(TwistError::NotAPermutation(arr.to_vec()));
        }
    }
    if arr.len() != n {
        return Err(TwistError::NotAPermutation(arr.to_vec()));
    }
    Ok(())
}

fn encode(arr: &[usize]) -> u64 {
    arr.iter()
        .enumerate()
        .fold(0, |acc, (i, &x)| acc | (x as u64) << (4 * i))
}

fn decode(code: u64, n: usize) -> Vec<usize> {
    (0..n).map(|i| ((code >> (4 * i)) & 0xf) as usize).collect()
}

/// Candidate moves in tie-break order: interior swaps by position, then
/// the wrap swap.
fn candidate_moves(n: usize) -> Vec<ReorderMove> {
    let mut out: Vec<ReorderMove> = (0..n.saturating_sub(1))
        .map(|p| ReorderMove {
            kind: MoveKind::InteriorSwap,
            positions: (p, p + 1),
        })
        .collect();
    if n >= 3 {
        out.push(ReorderMove {
            kind: MoveKind::WrapSwap,
            positions: (0, n - 1),
        });
    }
    out
}

/// Breadth-first search for a shortest sequence of legal swaps turning the
/// circular arrangement `start` into `target` (up to rotation).
pub fn reorder_moves(
    forest: &Forest,
    start: &[usize],
    target: &[usize],
) -> Result<ReorderPlan, TwistError> {
    let n = forest.len();
    if n > MAX_REORDER_LABELS {
        return Err(TwistError::TooManyLabels(n));
    }
    check_permutation(n, start)?;
    check_permutation(n, target)?;

    let rotations: HashMap<u64, usize> = (0..n.max(1))
        .map(|r| {
            // s with target[k] = s[(k + r) % n]  ⇔  s[m] = target[(m − r) mod n]
            let s: Vec<usize> = (0..n).map(|m| target[(m + n - r) % n]).collect();
            (encode(&s), r)
        })
        .collect();
    let moves = candidate_moves(n);

    let origin = encode(start);
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    let mut queue = VecDeque::from([origin]);
    parent.insert(origin, (origin, usize::MAX));
    let mut found = None;
    while let Some(code) = queue.pop_front() {
        if let Some(&r) = rotations.get(&code) {
            found = Some((code, r));
            break;
        }
        let state = decode(code, n);
        for (mi, mv) in moves.iter().enumerate() {
            let (p, q) = mv.positions;
            if forest.adjacent(state[p], state[q]) {
                continue;
            }
            let mut next = state.clone();
            mv.apply(&mut next);
            let nc = encode(&next);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(nc) {
                e.insert((code, mi));
                queue.push_back(nc);
            }
        }
    }
    let (mut code, rotation) = found.ok_or(TwistError::Unreachable)?;

    let mut rev_moves = Vec::new();
    let mut rev_hist = vec![decode(code, n)];
    while code != origin {
        let (prev, mi) = parent[&code];
        rev_moves.push(moves[mi]);
        rev_hist.push(decode(prev, n));
        code = prev;
    }
    rev_moves.reverse();
    rev_hist.reverse();
    Ok(ReorderPlan {
        moves: rev_moves,
        history: rev_hist,
        rotation,
    })
}

/// The conjugating word `F` with `T_target = F ∘ T_start ∘ F⁻¹`.
///
/// Interior swaps exchange commuting twists and contribute nothing. A wrap
/// swap of `i` (first) and `j` (last) contributes `T_i ∘ T_j⁻¹`. The final
/// rotation moves leading letters to the back one at a time, each a
/// conjugation by the twist being moved. Labels index into `names`.
pub fn conjugator_word(
    forest: &Forest,
    plan: &ReorderPlan,
    names: &[String],
) -> Result<TwistWord, TwistError> {
    let n = forest.len();
    let illegal = |index: usize, reason: String| TwistError::IllegalMove { index, reason };
    let mut state = plan
        .history
        .first()
        .cloned()
        .ok_or_else(|| illegal(0, "empty arrangement history".into()))?;
    check_permutation(n, &state)?;
    let mut word = TwistWord::default();
    for (idx, mv) in plan.moves.iter().enumerate() {
        let (p, q) = mv.positions;
        let shape_ok = match mv.kind {
            MoveKind::InteriorSwap => q == p + 1 && q < n,
            MoveKind::WrapSwap => n >= 3 && (p, q) == (0, n - 1),
        };
        if !shape_ok {
            return Err(illegal(idx, format!("positions {p},{q} are not circle-neighbours")));
        }
        let (i, j) = (state[p], state[q]);
        if forest.adjacent(i, j) {
            return Err(illegal(idx, format!("labels {i} and {j} are adjacent in the graph")));
        }
        if mv.kind == MoveKind::WrapSwap {
            word.0.push(Twist::negative(&names[j]));
            word.0.push(Twist::positive(&names[i]));
        }
        mv.apply(&mut state);
        if let Some(h) = plan.history.get(idx + 1) {
            if h != &state {
                return Err(illegal(idx, "history does not match the move".into()));
            }
        }
    }
    for s in state.iter().take(plan.rotation) {
        word.0.push(Twist::positive(&names[*s]));
    }
    Ok(word)
}

/// The all-positive word of an arrangement of curve indices.
pub fn arrangement_word(order: &[usize], names: &[String]) -> TwistWord {
    TwistWord(order.iter().map(|&i| Twist::positive(&names[i])).collect())
}
