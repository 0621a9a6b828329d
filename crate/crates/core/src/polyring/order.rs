use std::cmp::Ordering;

use super::monomial::Monomial;

/// Term order used inside an elimination block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseOrder {
    Lex,
    GrevLex,
}

/// A monomial order. Variables are ranked in declaration order, so `Lex`
/// has the first declared variable largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Compares the `front` block first and breaks ties on the remaining
    /// variables, both under `inner`. Any polynomial whose leading term is
    /// free of the front variables is itself free of them.
    BlockElimination {
        front: Vec<usize>,
        rest: Vec<usize>,
        inner: BaseOrder,
    },
}

impl MonomialOrder {
    /// Elimination order for `front` in a ring with `nvars` variables.
    pub fn elimination(nvars: usize, front: &[usize], inner: BaseOrder) -> Self {
        let mut f: Vec<usize> = front.to_vec();
        f.sort_unstable();
        f.dedup();
        let rest = (0..nvars).filter(|i| !f.contains(i)).collect();
        MonomialOrder::BlockElimination { front: f, rest, inner }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => lex_on(ea, eb, 0..ea.len()),
            MonomialOrder::GrevLex => grevlex_on(ea, eb, 0..ea.len()),
            MonomialOrder::BlockElimination { front, rest, inner } => {
                let by_block = |idx: &[usize]| match inner {
                    BaseOrder::Lex => lex_on(ea, eb, idx.iter().copied()),
                    BaseOrder::GrevLex => grevlex_on(ea, eb, idx.iter().copied()),
                };
                by_block(front).then_with(|| by_block(rest))
            }
        }
    }

    /// Whether the order refines total degree, so that leading terms have
    /// maximal total degree.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}

fn lex_on(a: &[u32], b: &[u32], idx: impl Iterator<Item = usize>) -> Ordering {
    for i in idx {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex_on(
    a: &[u32],
    b: &[u32],
    idx: impl DoubleEndedIterator<Item = usize> + Clone,
) -> Ordering {
    let da: u64 = idx.clone().map(|i| a[i] as u64).sum();
    let db: u64 = idx.clone().map(|i| b[i] as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in idx.rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_puts_front_block_first() {
        let o = MonomialOrder::elimination(3, &[1], BaseOrder::GrevLex);
        // any power of the front variable beats anything free of it
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[5, 0, 7])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 1, 3])), Ordering::Less);
    }
}
