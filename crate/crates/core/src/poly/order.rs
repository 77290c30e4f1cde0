use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Graded reverse lexicographic on the first `split` variables of the
    /// permutation, ties broken by graded reverse lexicographic on the rest.
    Block { split: usize },
}

/// A monomial order together with a variable priority list: `perm[0]` is the
/// most significant variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

fn grevlex_on(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = vars.iter().map(|&v| a[v] as u64).sum();
    let db: u64 = vars.iter().map(|&v| b[v] as u64).sum();
    da.cmp(&db).then_with(|| {
        for &v in vars.iter().rev() {
            match a[v].cmp(&b[v]) {
                Ordering::Equal => continue,
                // Smaller exponent in the last differing variable is larger.
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn lex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: (0..n).collect() }
    }

    pub fn grevlex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, perm: (0..n).collect() }
    }

    pub fn block(n: usize, split: usize) -> Self {
        MonomialOrder { kind: OrderKind::Block { split }, perm: (0..n).collect() }
    }

    pub fn with_perm(kind: OrderKind, perm: Vec<usize>) -> Self {
        MonomialOrder { kind, perm }
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.perm {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => grevlex_on(&self.perm, a, b),
            OrderKind::Block { split } => {
                let (first, rest) = self.perm.split_at(split.min(self.perm.len()));
                grevlex_on(first, a, b).then_with(|| grevlex_on(rest, a, b))
            }
        }
    }
}
