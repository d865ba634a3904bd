//! Exhaustive formula and sequent corpora for sweeps.

use std::collections::BTreeSet;

use crate::syntax::{Formula, Sequent};

/// Which connectives a corpus may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Language {
    pub modal: bool,
    pub fc: bool,
    pub constants: bool,
}

impl Default for Language {
    fn default() -> Self {
        Language {
            modal: true,
            fc: false,
            constants: true,
        }
    }
}

/// Every formula over `p0 … p{atoms-1}` (and `T`, `F` if allowed) whose
/// syntax tree has height at most `height`, leaves counting 1; shorter
/// formulas come first.
pub fn formulas(atoms: u32, height: usize, lang: Language) -> Vec<Formula> {
    if height == 0 {
        return vec![];
    }
    let mut all: Vec<Formula> = (0..atoms).map(Formula::Atom).collect();
    if lang.constants {
        all.extend([Formula::Top, Formula::Bot]);
    }
    // formulas of height exactly h-1 start at `prev`
    let mut prev = 0;
    for _ in 1..height {
        let (lower, top) = (all.clone(), all[prev..].to_vec());
        let start = all.len();
        let mut unary = vec![Formula::not as fn(Formula) -> Formula];
        if lang.modal {
            unary.push(Formula::boxed);
        }
        let mut binary = vec![Formula::and as fn(Formula, Formula) -> Formula, Formula::or];
        if lang.fc {
            binary.push(Formula::fc);
        }
        for u in &unary {
            all.extend(top.iter().cloned().map(u));
        }
        for b in &binary {
            for (i, x) in lower.iter().enumerate() {
                for (j, y) in lower.iter().enumerate() {
                    if i >= prev || j >= prev {
                        all.push(b(x.clone(), y.clone()));
                    }
                }
            }
        }
        prev = start;
    }
    all
}

/// All subsets of `items` with at most `k` members, smallest first.
pub fn small_subsets<T: Clone + Ord>(items: &[T], k: usize) -> Vec<BTreeSet<T>> {
    let mut out = vec![BTreeSet::new()];
    let mut layer = vec![(BTreeSet::new(), 0usize)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (set, from) in &layer {
            for (i, x) in items.iter().enumerate().skip(*from) {
                let mut s: BTreeSet<T> = set.clone();
                s.insert(x.clone());
                next.push((s, i + 1));
            }
        }
        out.extend(next.iter().map(|(s, _)| s.clone()));
        layer = next;
    }
    out
}

/// Every sequent with at most `k` formulas on each side drawn from
/// `formulas`.
pub fn sequents(formulas: &[Formula], k: usize) -> Vec<Sequent> {
    let sides = small_subsets(formulas, k);
    let mut out = Vec::with_capacity(sides.len() * sides.len());
    for ant in &sides {
        for suc in &sides {
            out.push(Sequent {
                ant: ant.clone(),
                suc: suc.clone(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let lang = Language::default();
        assert_eq!(formulas(2, 1, lang).len(), 4);
        assert_eq!(formulas(2, 2, lang).len(), 44);
        assert_eq!(formulas(2, 3, lang).len(), 3964);
        assert_eq!(formulas(2, 2, Language { fc: true, ..lang }).len(), 60);
        assert_eq!(formulas(1, 2, lang).len(), 27);
        let plain = Language { modal: false, constants: false, ..lang };
        assert_eq!(formulas(1, 2, plain).len(), 1 + 1 + 2);
    }

    #[test]
    fn no_duplicates_and_heights() {
        let fs = formulas(2, 3, Language { fc: true, ..Language::default() });
        let set: BTreeSet<_> = fs.iter().collect();
        assert_eq!(set.len(), fs.len());
        assert!(fs.iter().all(|f| f.height() <= 3));
        assert!(fs.windows(2).all(|w| w[0].height() <= w[1].height()));
    }

    #[test]
    fn subsets_and_sequents() {
        assert_eq!(small_subsets(&[1, 2, 3], 2).len(), 1 + 3 + 3);
        assert_eq!(sequents(&formulas(1, 1, Language::default()), 2).len(), 7 * 7);
    }
}
