use std::cmp::Ordering;
use std::fmt;

use super::{Derivative, DiffPoly, Monomial, Ranking};

/// Writes `y`, `y'`, `y''`, `y'''`, `y^(4)`, …
pub fn derivative_text(name: &str, d: Derivative) -> String {
    match d.order {
        0..=3 => format!("{name}{}", "'".repeat(d.order as usize)),
        k => format!("{name}^({k})"),
    }
}

fn monomial_text(m: &Monomial, r: &Ranking, names: &[String]) -> String {
    let mut factors = m.factors().to_vec();
    factors.sort_by(|a, b| r.compare(b.0, a.0));
    factors
        .iter()
        .map(|&(d, e)| {
            let base = derivative_text(&names[d.index], d);
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// A polynomial paired with the ranking that orders its printed terms.
pub struct DiffPolyDisplay<'a> {
    poly: &'a DiffPoly,
    ranking: Ranking,
}

impl DiffPoly {
    /// Terms in descending order under `r`.
    pub fn sorted_terms(&self, r: &Ranking) -> Vec<(&Monomial, &crate::ground::FieldElem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| match b.0.compare(a.0, r) {
            Ordering::Equal => a.0.cmp(b.0),
            o => o,
        });
        v
    }

    pub fn display_with(&self, r: &Ranking) -> DiffPolyDisplay<'_> {
        DiffPolyDisplay {
            poly: self,
            ranking: r.clone(),
        }
    }
}

impl fmt::Display for DiffPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return write!(f, "0");
        }
        let names = p.ring.names();
        for (k, (m, c)) in p.sorted_terms(&self.ranking).into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                if negative && mag.needs_parens_as_factor() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            if !mag.is_one() {
                if mag.needs_parens_as_factor() {
                    write!(f, "({mag})*")?;
                } else {
                    write!(f, "{mag}*")?;
                }
            }
            write!(f, "{}", monomial_text(m, &self.ranking, names))?;
        }
        Ok(())
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&self.ring.default_ranking()))
    }
}
