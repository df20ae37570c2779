use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The derivative `y_index^(order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Derivative {
    pub index: usize,
    pub order: u32,
}

impl Derivative {
    pub fn new(index: usize, order: u32) -> Self {
        Derivative { index, order }
    }

    /// δ of this derivative.
    pub fn prolong(self, by: u32) -> Self {
        Derivative {
            index: self.index,
            order: self.order + by,
        }
    }

    /// True when `self` is δ^k(`other`) for some k ≥ 1.
    pub fn is_proper_derivative_of(self, other: Derivative) -> bool {
        self.index == other.index && self.order > other.order
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankingKind {
    Orderly,
    Elimination,
}

/// A ranking of the derivatives of finitely many indeterminates.
///
/// `indeterminate_order` lists indeterminate indices from lowest to highest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ranking {
    kind: RankingKind,
    indeterminate_order: Vec<usize>,
    position: Vec<usize>,
}

impl Ranking {
    pub fn new(kind: RankingKind, indeterminate_order: Vec<usize>) -> Result<Self> {
        let n = indeterminate_order.len();
        let mut position = vec![usize::MAX; n];
        for (pos, &i) in indeterminate_order.iter().enumerate() {
            if i >= n || position[i] != usize::MAX {
                return Err(Error::InvalidRanking(format!(
                    "{indeterminate_order:?} is not a permutation of 0..{n}"
                )));
            }
            position[i] = pos;
        }
        Ok(Ranking {
            kind,
            indeterminate_order,
            position,
        })
    }

    /// Orderly ranking with `y_0 < y_1 < …`.
    pub fn orderly(n: usize) -> Self {
        Self::new(RankingKind::Orderly, (0..n).collect()).unwrap()
    }

    /// Elimination ranking with `y_0 < y_1 < …`.
    pub fn elimination(n: usize) -> Self {
        Self::new(RankingKind::Elimination, (0..n).collect()).unwrap()
    }

    pub fn kind(&self) -> RankingKind {
        self.kind
    }

    pub fn indeterminate_order(&self) -> &[usize] {
        &self.indeterminate_order
    }

    pub fn len(&self) -> usize {
        self.indeterminate_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indeterminate_order.is_empty()
    }

    fn key(&self, d: Derivative) -> (u64, u64) {
        let pos = self.position[d.index] as u64;
        match self.kind {
            RankingKind::Orderly => (d.order as u64, pos),
            RankingKind::Elimination => (pos, d.order as u64),
        }
    }

    pub fn compare(&self, u: Derivative, v: Derivative) -> Ordering {
        self.key(u).cmp(&self.key(v))
    }

    /// Text form such as `orderly y1 < y2`.
    pub fn describe(&self, names: &[String]) -> String {
        let kind = match self.kind {
            RankingKind::Orderly => "orderly",
            RankingKind::Elimination => "elimination",
        };
        let order: Vec<&str> = self
            .indeterminate_order
            .iter()
            .map(|&i| names[i].as_str())
            .collect();
        if order.is_empty() {
            kind.to_string()
        } else {
            format!("{kind} {}", order.join(" < "))
        }
    }

    /// Parses `orderly`, `elimination y1 > y2`, `orderly y2 < y1`, …
    /// Unlisted indeterminates keep declaration order and rank below listed ones.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let text = text.trim();
        let (kind_word, rest) = match text.find(char::is_whitespace) {
            Some(i) => (&text[..i], text[i..].trim()),
            None => (text, ""),
        };
        let kind = match kind_word {
            "orderly" => RankingKind::Orderly,
            "elimination" => RankingKind::Elimination,
            other => return Err(Error::InvalidRanking(format!("unknown ranking kind `{other}`"))),
        };
        let mut listed: Vec<usize> = Vec::new();
        if !rest.is_empty() {
            let descending = rest.contains('>');
            if descending && rest.contains('<') {
                return Err(Error::InvalidRanking("mixed `<` and `>`".into()));
            }
            let sep = if descending { '>' } else { '<' };
            for part in rest.split(sep) {
                let name = part.trim();
                let idx = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::InvalidRanking(format!("unknown indeterminate `{name}`")))?;
                if listed.contains(&idx) {
                    return Err(Error::InvalidRanking(format!("`{name}` listed twice")));
                }
                listed.push(idx);
            }
            if descending {
                listed.reverse();
            }
        }
        let mut order: Vec<usize> = (0..names.len()).filter(|i| !listed.contains(i)).collect();
        order.extend(listed);
        Self::new(kind, order)
    }
}

impl fmt::Display for RankingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankingKind::Orderly => write!(f, "orderly"),
            RankingKind::Elimination => write!(f, "elimination"),
        }
    }
}
