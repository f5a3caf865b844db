use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Elimination order: the first `k` variables (in precedence order) are
    /// compared by grevlex first; ties are broken by grevlex on the rest.
    Block(usize),
}

/// Monomial order together with a variable precedence.
///
/// `precedence[0]` is the index of the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
    identity: bool,
}

impl TermOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Self {
        let mut seen = vec![false; precedence.len()];
        for &p in &precedence {
            assert!(p < seen.len() && !seen[p], "precedence must be a permutation");
            seen[p] = true;
        }
        let identity = precedence.iter().enumerate().all(|(i, &p)| i == p);
        TermOrder { kind, precedence, identity }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, (0..nvars).collect())
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, (0..nvars).collect())
    }

    /// Eliminates the first `k` variables.
    pub fn block(nvars: usize, k: usize) -> Self {
        Self::new(OrderKind::Block(k), (0..nvars).collect())
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    /// Same kind and precedence on a ring with `k` extra variables inserted at
    /// the front; the new variables precede all old ones.
    pub fn with_leading_vars(&self, k: usize) -> TermOrder {
        let mut prec: Vec<usize> = (0..k).collect();
        prec.extend(self.precedence.iter().map(|p| p + k));
        let kind = match self.kind {
            OrderKind::Block(b) => OrderKind::Block(b + k),
            other => other,
        };
        TermOrder::new(kind, prec)
    }

    #[inline]
    fn e(&self, m: &Monomial, i: usize) -> u32 {
        if self.identity {
            m.exp(i)
        } else {
            m.exp(self.precedence[i])
        }
    }

    fn grevlex_range(&self, a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
        let da: u32 = (lo..hi).map(|i| self.e(a, i)).sum();
        let db: u32 = (lo..hi).map(|i| self.e(b, i)).sum();
        if da != db {
            return da.cmp(&db);
        }
        for i in (lo..hi).rev() {
            let (x, y) = (self.e(a, i), self.e(b, i));
            if x != y {
                return y.cmp(&x);
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = self.precedence.len();
        match self.kind {
            OrderKind::Lex => {
                for i in 0..n {
                    let (x, y) = (self.e(a, i), self.e(b, i));
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => self.grevlex_range(a, b, 0, n),
            OrderKind::Block(k) => {
                let k = k.min(n);
                self.grevlex_range(a, b, 0, k).then_with(|| self.grevlex_range(a, b, k, n))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = TermOrder::grevlex(2);
        // y^3 > x^2 (degree), x^2 > x*y > y^2
        assert_eq!(o.cmp(&mono(&[0, 3]), &mono(&[2, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[2, 0]), &mono(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[1, 1]), &mono(&[0, 2])), Ordering::Greater);
        let o3 = TermOrder::grevlex(3);
        // x*z^... classic: x*y*z vs x^2*z? grevlex: smaller power of last variable wins
        assert_eq!(o3.cmp(&mono(&[1, 2, 0]), &mono(&[2, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn precedence_permutes() {
        let o = TermOrder::new(OrderKind::Lex, vec![1, 0]);
        assert_eq!(o.cmp(&mono(&[0, 1]), &mono(&[5, 0])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates() {
        let o = TermOrder::block(3, 1);
        // t beats any power of x, y
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 7, 3])), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 3).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn arb_order() -> impl Strategy<Value = TermOrder> {
        (0usize..3, 0usize..6).prop_map(|(k, p)| {
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let kind = match k {
                0 => OrderKind::Lex,
                1 => OrderKind::Grevlex,
                _ => OrderKind::Block(1),
            };
            TermOrder::new(kind, perms[p].to_vec())
        })
    }

    proptest! {
        #[test]
        fn order_is_total_multiplicative(o in arb_order(), u in arb_mono(), v in arb_mono(), w in arb_mono()) {
            let uv = o.cmp(&u, &v);
            prop_assert_eq!(uv.reverse(), o.cmp(&v, &u));
            if uv == Ordering::Equal {
                prop_assert_eq!(&u, &v);
            }
            if uv == Ordering::Less {
                prop_assert_eq!(o.cmp(&u.mul(&w), &v.mul(&w)), Ordering::Less);
                if o.cmp(&v, &w) == Ordering::Less {
                    prop_assert_eq!(o.cmp(&u, &w), Ordering::Less);
                }
            }
            prop_assert_ne!(o.cmp(&Monomial::one(3), &u), Ordering::Greater);
        }
    }
}
