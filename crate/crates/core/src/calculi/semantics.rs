//! Semantic side of the calculi: validity over idiosyncratic frames for
//! `S_□`, and bounded countermodel search on tree frames for `S_■`.

use serde::Serialize;

use super::*;
use crate::manyvalued::{internal_consequence, increment, PlainModel, Polarity, TruthValue, Valuation};

/// Whether the sequent holds in the calculus's intended semantics. For
/// black-box calculi this only rules out tree countermodels up to `bound`.
pub fn semantically_valid(c: CalculusId, s: &Sequent, bound: usize) -> bool {
    match c.modal {
        Modal::Blackbox => blackbox_refute(c, s, bound).is_none(),
        _ => internal_consequence(&s.ant, &s.suc, c.scheme())
            .map(|r| r.holds())
            .unwrap_or(false),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdequacyReport {
    pub both_yes: usize,
    pub both_no: usize,
    /// Valid, but cut-free search found no derivation.
    pub search_incomplete: Vec<Sequent>,
    /// Derived, but not valid. Must stay empty.
    pub soundness_violations: Vec<Sequent>,
    pub budget_exceeded: Vec<Sequent>,
}

impl AdequacyReport {
    pub fn total(&self) -> usize {
        self.both_yes
            + self.both_no
            + self.search_incomplete.len()
            + self.soundness_violations.len()
            + self.budget_exceeded.len()
    }
}

/// Compares cut-free search with the semantics on every sequent of `corpus`.
pub fn crosscheck_adequacy<'a, I>(c: CalculusId, corpus: I, opts: SearchOptions) -> AdequacyReport
where
    I: IntoIterator<Item = &'a Sequent>,
{
    let mut report = AdequacyReport::default();
    for s in corpus {
        let valid = semantically_valid(c, s, 2);
        match (prove(c, s, opts), valid) {
            (ProofResult::Derivation(_), true) => report.both_yes += 1,
            (ProofResult::Derivation(_), false) => report.soundness_violations.push(s.clone()),
            (ProofResult::Saturated, false) => report.both_no += 1,
            (ProofResult::Saturated, true) => report.search_incomplete.push(s.clone()),
            (ProofResult::BudgetExceeded, _) => report.budget_exceeded.push(s.clone()),
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeCountermodel {
    /// World 0 is the root, where the sequent fails.
    pub model: PlainModel,
    pub scheme: Scheme,
}

/// Frames that are trees of height at most `depth` and branching at most
/// `branching`, as successor lists with the root at index 0; children are
/// listed as non-decreasing shape indices, so isomorphic trees appear once.
fn tree_shapes(depth: usize, branching: usize) -> Vec<Vec<Vec<usize>>> {
    fn multisets(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            multisets(m, k, i, cur, out);
            cur.pop();
        }
    }
    let mut shapes: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for k in 0..=branching {
            let mut picks = Vec::new();
            multisets(shapes.len(), k, 0, &mut Vec::new(), &mut picks);
            for pick in picks {
                let mut succ: Vec<Vec<usize>> = vec![vec![]];
                for i in pick {
                    let offset = succ.len();
                    succ[0].push(offset);
                    succ.extend(shapes[i].iter().map(|s| s.iter().map(|x| x + offset).collect()));
                }
                next.push(succ);
            }
        }
        shapes = next;
    }
    shapes.sort_by_key(Vec::len);
    shapes
}

fn value(s: Scheme, succ: &[Vec<usize>], vals: &[Vec<TruthValue>], w: usize, f: &Formula) -> TruthValue {
    match f {
        Formula::Atom(j) => vals[w][*j as usize],
        Formula::Top => TruthValue::One,
        Formula::Bot => TruthValue::Zero,
        Formula::Not(a) => value(s, succ, vals, w, a).neg(),
        Formula::Box(a) => s.box_inf(succ[w].iter().map(|v| value(s, succ, vals, *v, a))),
        Formula::And(a, b) => s.and(value(s, succ, vals, w, a), value(s, succ, vals, w, b)),
        Formula::Or(a, b) => s.or(value(s, succ, vals, w, a), value(s, succ, vals, w, b)),
        Formula::Fc(a, b) => s.fc(value(s, succ, vals, w, a), value(s, succ, vals, w, b)),
    }
}

/// Cap on the number of models tried.
const MODEL_LIMIT: usize = 2_000_000;

/// Searches tree models of height at most the sequent's modal depth and
/// branching at most `bound` for a root designating all of Γ and none of Δ.
pub fn blackbox_refute(c: CalculusId, s: &Sequent, bound: usize) -> Option<TreeCountermodel> {
    let scheme = c.scheme();
    let atoms: Vec<u32> = s.props().into_iter().collect();
    let width = atoms.iter().max().map_or(0, |a| *a as usize + 1);
    // every legal (polarity, valuation) of one world
    let mut local: Vec<(Option<Polarity>, Vec<TruthValue>)> = Vec::new();
    crate::manyvalued::for_each_valuation(scheme, &atoms, |v, pol| {
        local.push((pol, v.to_vec()));
        true
    });
    if width == 0 {
        local.truncate(1);
    }
    let mut tried = 0usize;
    for succ in tree_shapes(s.modal_depth(), bound.max(1)) {
        let n = succ.len();
        let mut digits = vec![0usize; n];
        loop {
            let vals: Vec<Vec<TruthValue>> = digits.iter().map(|d| local[*d].1.clone()).collect();
            let fails = s.ant.iter().all(|g| value(scheme, &succ, &vals, 0, g).designated())
                && !s.suc.iter().any(|d| value(scheme, &succ, &vals, 0, d).designated());
            if fails {
                let valuation = vals
                    .iter()
                    .map(|v| atoms.iter().map(|a| (*a, v[*a as usize])).collect::<Valuation>())
                    .collect();
                let polarity = if scheme == Scheme::Ks3 {
                    digits.iter().map(|d| local[*d].0.unwrap_or(Polarity::Consistent)).collect()
                } else {
                    vec![]
                };
                return Some(TreeCountermodel {
                    model: PlainModel {
                        successors: succ,
                        valuation,
                        polarity,
                    },
                    scheme,
                });
            }
            tried += 1;
            if tried >= MODEL_LIMIT || !increment(&mut digits, local.len()) {
                break;
            }
        }
        if tried >= MODEL_LIMIT {
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manyvalued::eval;

    fn sq(s: &str) -> Sequent {
        s.parse().unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(tree_shapes(0, 3), vec![vec![Vec::<usize>::new()]]);
        // depth 1, branching 2: root alone, one child, two children
        assert_eq!(tree_shapes(1, 2).len(), 3);
        // depth 2, branching 2: children drawn from 3 depth-1 shapes
        assert_eq!(tree_shapes(2, 2).len(), 1 + 3 + 6);
    }

    #[test]
    fn refutations() {
        let c = CalculusId::blackbox(Base::Fde);
        let cm = blackbox_refute(c, &sq("[]p0 => p0"), 2).expect("countermodel");
        let m = &cm.model;
        assert!(eval(m, 0, &"[]p0".parse().unwrap(), Scheme::Fde).unwrap().designated());
        assert!(!eval(m, 0, &"p0".parse().unwrap(), Scheme::Fde).unwrap().designated());
        assert!(blackbox_refute(c, &sq("[](p0 /\\ p1) => []p0"), 3).is_none());
        assert!(blackbox_refute(c, &sq("=> []T"), 3).is_none());
        // K-style box does not distribute over disjunction
        assert!(blackbox_refute(c, &sq("[](p0 \\/ p1) => []p0, []p1"), 2).is_some());
    }

    #[test]
    fn adequacy_examples() {
        let lp = CalculusId::boxed(Base::Lp);
        let r = crosscheck_adequacy(lp, &[sq("p0 => p0"), sq("=> p0 \\/ ~p0"), sq("p0 =>")], SearchOptions::default());
        assert_eq!((r.both_yes, r.both_no), (2, 1));
        assert!(r.soundness_violations.is_empty() && r.search_incomplete.is_empty());
    }
}
