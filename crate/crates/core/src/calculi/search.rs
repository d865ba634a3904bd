//! Cut-free backward proof search.
//!
//! With transparent box rules every rule is invertible once the principal
//! formula is kept in the premises, so search never backtracks: apply the
//! first rule instance that strictly grows every premise, and stop when none
//! does. The black-box rules have no context, so for `S_■` the whole
//! reachable space of backward premises is built and derivability computed
//! as a least fixed point.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of sequents visited.
    pub budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "camelCase")]
pub enum ProofResult {
    Derivation(Derivation),
    /// Search space exhausted without a derivation.
    Saturated,
    BudgetExceeded,
}

impl ProofResult {
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            ProofResult::Derivation(d) => Some(d),
            _ => None,
        }
    }
}

pub fn prove(c: CalculusId, s: &Sequent, opts: SearchOptions) -> ProofResult {
    if c.admits_sequent(s).is_some() {
        return ProofResult::Saturated;
    }
    let mut budget = opts.budget;
    let found = match c.modal {
        Modal::Blackbox => fixpoint_search(c, s, &mut budget),
        _ => saturate(c, s, &mut budget),
    };
    match found {
        Err(OutOfBudget) => ProofResult::BudgetExceeded,
        Ok(Some(d)) => ProofResult::Derivation(d),
        Ok(None) => ProofResult::Saturated,
    }
}

struct OutOfBudget;

fn first_axiom(c: CalculusId, s: &Sequent) -> Option<Rule> {
    c.rules().into_iter().filter(|r| r.is_axiom()).find(|r| axiom_holds(c, *r, s))
}

fn strictly_grows(s: &Sequent, p: &Sequent) -> bool {
    p.ant.len() + p.suc.len() > s.ant.len() + s.suc.len()
}

fn saturate(c: CalculusId, s: &Sequent, budget: &mut usize) -> Result<Option<Derivation>, OutOfBudget> {
    if *budget == 0 {
        return Err(OutOfBudget);
    }
    *budget -= 1;
    if let Some(r) = first_axiom(c, s) {
        return Ok(Some(Derivation::leaf(s.clone(), r)));
    }
    for rule in c.rules() {
        if rule.is_axiom() || rule == Rule::Cut {
            continue;
        }
        for (pi, prems) in backward_instances(rule, s, true) {
            if !prems.iter().all(|p| strictly_grows(s, p)) || side_condition(c, rule, &pi, &s.ant).is_err() {
                continue;
            }
            let mut children = Vec::with_capacity(prems.len());
            for p in &prems {
                match saturate(c, p, budget)? {
                    Some(d) => children.push(d),
                    // premises contain the conclusion: nothing else can succeed
                    None => return Ok(None),
                }
            }
            return Ok(Some(Derivation::node(s.clone(), rule, children, SideInfo::principal(&pi))));
        }
    }
    Ok(None)
}

struct Instance {
    rule: Rule,
    principal: Formula,
    premises: Vec<usize>,
}

fn fixpoint_search(c: CalculusId, root: &Sequent, budget: &mut usize) -> Result<Option<Derivation>, OutOfBudget> {
    let mut index: HashMap<Sequent, usize> = HashMap::new();
    let mut nodes: Vec<Sequent> = Vec::new();
    let mut instances: Vec<Vec<Instance>> = Vec::new();
    let mut proved: Vec<Option<Derivation>> = Vec::new();
    let mut intern = |s: Sequent, nodes: &mut Vec<Sequent>, budget: &mut usize| -> Result<usize, OutOfBudget> {
        if let Some(i) = index.get(&s) {
            return Ok(*i);
        }
        if *budget == 0 {
            return Err(OutOfBudget);
        }
        *budget -= 1;
        index.insert(s.clone(), nodes.len());
        nodes.push(s);
        Ok(nodes.len() - 1)
    };
    intern(root.clone(), &mut nodes, budget)?;
    let mut next = 0;
    while next < nodes.len() {
        let s = nodes[next].clone();
        let mut here = Vec::new();
        proved.push(first_axiom(c, &s).map(|r| Derivation::leaf(s.clone(), r)));
        if proved[next].is_none() {
            for rule in c.rules() {
                if rule.is_axiom() || rule == Rule::Cut {
                    continue;
                }
                let found: Vec<(Formula, Vec<Sequent>)> = match rule {
                    Rule::BlackL | Rule::BlackR => blackbox_instances(rule, &s)
                        .into_iter()
                        .map(|(pi, p)| (pi, vec![p]))
                        .collect(),
                    _ => backward_instances(rule, &s, false)
                        .into_iter()
                        .filter(|(pi, prems)| {
                            !prems.contains(&s) && side_condition(c, rule, pi, &s.ant).is_ok()
                        })
                        .collect(),
                };
                for (principal, prems) in found {
                    let premises = prems
                        .into_iter()
                        .map(|p| intern(p, &mut nodes, budget))
                        .collect::<Result<_, _>>()?;
                    here.push(Instance {
                        rule,
                        principal,
                        premises,
                    });
                }
            }
        }
        instances.push(here);
        next += 1;
    }
    // least fixed point; each sequent keeps the first instance that proved it
    let mut changed = true;
    while changed && proved[0].is_none() {
        changed = false;
        let mut fresh: BTreeMap<usize, Derivation> = BTreeMap::new();
        for (i, inst) in instances.iter().enumerate() {
            if proved[i].is_some() {
                continue;
            }
            if let Some(x) = inst.iter().find(|x| x.premises.iter().all(|p| proved[*p].is_some())) {
                let children = x.premises.iter().map(|p| proved[*p].clone().unwrap()).collect();
                fresh.insert(
                    i,
                    Derivation::node(nodes[i].clone(), x.rule, children, SideInfo::principal(&x.principal)),
                );
            }
        }
        for (i, d) in fresh {
            proved[i] = Some(d);
            changed = true;
        }
    }
    Ok(proved.swap_remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    

    fn sq(s: &str) -> Sequent {
        s.parse().unwrap()
    }

    fn proves(c: CalculusId, s: &str) -> bool {
        match prove(c, &sq(s), SearchOptions::default()) {
            ProofResult::Derivation(d) => {
                check_derivation(c, &d).unwrap();
                assert!(!d.uses_cut());
                true
            }
            ProofResult::Saturated => false,
            ProofResult::BudgetExceeded => panic!("budget"),
        }
    }

    #[test]
    fn examples() {
        let k3 = CalculusId::boxed(Base::K3);
        let d = prove(k3, &sq("p0 /\\ ~p0 =>"), SearchOptions::default());
        let d = d.derivation().unwrap();
        assert_eq!(d.rules_used(), [Rule::Ref, Rule::NegL, Rule::AndL].into());
        assert!(!proves(CalculusId::new(Base::Fde, Modal::None), "=> p0 \\/ ~p0"));
        let ks3 = CalculusId::new(Base::Ks3, Modal::None);
        let d = prove(ks3, &sq("p0, ~p0 => p1, ~p1"), SearchOptions::default());
        assert_eq!(d.derivation().unwrap().rule, Rule::Sym);
        assert!(proves(CalculusId::boxed(Base::Lp), "=> p0 \\/ ~p0"));
    }

    #[test]
    fn weak_kleene_examples() {
        let b3 = CalculusId::boxed(Base::B3);
        assert!(proves(b3, "~~p0 => p0"));
        assert!(proves(b3, "p0 => ~~p0"));
        assert!(proves(b3, "~(p0 /\\ p1) => ~p0 \\/ ~p1"));
        assert!(proves(b3, "p0 \\/ p1 => p0 \\/ p1"));
        assert!(!proves(b3, "p0 => p0 \\/ p1"));
        assert!(!proves(b3, "=> ~p0, p0"));
        let f3 = CalculusId::boxed(Base::F3);
        assert!(proves(f3, "p0 ->> p1 => p0 ->> p1"));
        assert!(proves(f3, "=> F ->> p1"));
        assert!(!proves(f3, "F ->> p1 => p1, ~p1"));
    }

    #[test]
    fn blackbox_search() {
        let c = CalculusId::blackbox(Base::Fde);
        assert!(proves(c, "[](p0 /\\ p1) => []p0"));
        assert!(proves(c, "=> []T"));
        assert!(proves(c, "[]p0 => [](p0 \\/ p1)"));
        assert!(!proves(c, "[]p0 => p0"));
        // exact-shape rules leave no room for an idle p0
        assert!(!proves(c, "p0, [](p0 /\\ p1) => []p0"));
        assert!(proves(c, "~[]~p0 => ~[]~p0"));
    }

    #[test]
    fn budget() {
        let r = prove(
            CalculusId::blackbox(Base::Fde),
            &sq("p0 /\\ p1, p2 \\/ p3, ~(p4 /\\ p5) => p6 \\/ p7, []p8"),
            SearchOptions { budget: 10 },
        );
        assert_eq!(r, ProofResult::BudgetExceeded);
    }
}
