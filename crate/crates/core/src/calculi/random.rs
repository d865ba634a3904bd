//! Forward generation of random derivations: rules are applied to earlier
//! derivations from a pool, with weakening used to line up the contexts of
//! binary rules. Nothing is filtered through the checker, so the checker is
//! an independent test of the construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub atoms: u32,
    pub max_formula_size: usize,
    /// Maximum number of formulas in a sequent.
    pub max_sequent: usize,
    pub max_nodes: usize,
    pub pool: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            atoms: 3,
            max_formula_size: 9,
            max_sequent: 7,
            max_nodes: 120,
            pool: 48,
        }
    }
}

pub struct DerivationGenerator {
    calc: CalculusId,
    cfg: GeneratorConfig,
    rng: ChaCha8Rng,
    pool: Vec<Derivation>,
}

impl DerivationGenerator {
    pub fn new(calc: CalculusId, cfg: GeneratorConfig, seed: u64) -> Self {
        DerivationGenerator {
            calc,
            cfg,
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: Vec::new(),
        }
    }

    fn atom(&mut self) -> Formula {
        Formula::Atom(self.rng.gen_range(0..self.cfg.atoms))
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..8) {
                0 => Formula::Top,
                1 => Formula::Bot,
                _ => self.atom(),
            };
        }
        let fc = self.calc.base == Base::F3;
        let modal = self.calc.modal != Modal::None;
        loop {
            let f = match self.rng.gen_range(0..5) {
                0 => Formula::not(self.formula(depth - 1)),
                1 if modal => Formula::boxed(self.formula(depth - 1)),
                2 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
                3 => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
                4 if fc => Formula::fc(self.formula(depth - 1), self.formula(depth - 1)),
                _ => continue,
            };
            return f;
        }
    }

    fn context(&mut self) -> BTreeSet<Formula> {
        let n = self.rng.gen_range(0..=2);
        (0..n).map(|_| self.formula(2)).collect()
    }

    fn axiom(&mut self) -> Option<Derivation> {
        let axioms: Vec<Rule> = self.calc.rules().into_iter().filter(|r| r.is_axiom()).collect();
        let rule = *axioms.choose(&mut self.rng)?;
        let mut s = Sequent {
            ant: self.context(),
            suc: self.context(),
        };
        match rule {
            Rule::Ref => {
                let lit = match self.calc.modal {
                    Modal::Blackbox => self.formula(2),
                    _ if self.calc.base.weak() || self.rng.gen_bool(0.5) => self.atom(),
                    _ => Formula::not(self.atom()),
                };
                s.ant.insert(lit.clone());
                s.suc.insert(lit);
            }
            Rule::Bot => {
                s.ant.insert(Formula::Bot);
            }
            Rule::Top => {
                s.suc.insert(Formula::Top);
            }
            Rule::NegTop => {
                s.ant.insert(Formula::not(Formula::Top));
            }
            Rule::NegBot => {
                s.suc.insert(Formula::not(Formula::Bot));
            }
            Rule::Sym => {
                let (a, b) = (self.formula(1), self.formula(1));
                s.ant.extend([Formula::not(a.clone()), a]);
                s.suc.extend([Formula::not(b.clone()), b]);
            }
            _ => return None,
        }
        Some(Derivation::leaf(s, rule))
    }

    /// Principal formulas built around a formula of `s`.
    fn principals(&mut self, s: &Sequent) -> Vec<Formula> {
        let all: Vec<Formula> = s.formulas().cloned().collect();
        let a = all.choose(&mut self.rng).cloned().unwrap_or_else(|| self.atom());
        let r = self.formula(1);
        let n = Formula::not;
        let mut out = vec![
            n(n(a.clone())),
            Formula::and(a.clone(), r.clone()),
            Formula::and(r.clone(), a.clone()),
            Formula::or(a.clone(), r.clone()),
            Formula::or(r.clone(), a.clone()),
            n(a.clone()),
            Formula::boxed(a.clone()),
            Formula::fc(a.clone(), r.clone()),
            Formula::fc(r.clone(), a.clone()),
        ];
        if let Formula::Not(t) = &a {
            let t = (**t).clone();
            out.extend([
                n(Formula::and(t.clone(), r.clone())),
                n(Formula::and(r.clone(), t.clone())),
                n(Formula::or(t.clone(), r.clone())),
                n(Formula::or(r.clone(), t.clone())),
                n(Formula::boxed(t.clone())),
                Formula::fc(t, r),
            ]);
        }
        out.retain(|f| self.calc.admits(f) && f.size() <= self.cfg.max_formula_size);
        out.shuffle(&mut self.rng);
        out
    }

    fn fits(&self, d: &Derivation) -> bool {
        let s = &d.sequent;
        s.ant.len() + s.suc.len() <= self.cfg.max_sequent
            && s.formulas().all(|f| f.size() <= self.cfg.max_formula_size)
            && d.size() <= self.cfg.max_nodes
    }

    fn pick(&mut self) -> Option<Derivation> {
        self.pool.choose(&mut self.rng).cloned()
    }

    fn strip(s: &Sequent, add: &Added) -> Sequent {
        let mut out = s.clone();
        for f in &add.ant {
            out.ant.remove(f);
        }
        for f in &add.suc {
            out.suc.remove(f);
        }
        out
    }

    /// Weakens `d` so that its root becomes `ctx + add`.
    fn lift(d: &Derivation, ctx: &Sequent, add: &Added) -> Derivation {
        let mut ant = ctx.ant.clone();
        ant.extend(add.ant.iter().cloned());
        let mut suc = ctx.suc.clone();
        suc.extend(add.suc.iter().cloned());
        let ant: BTreeSet<Formula> = ant.difference(&d.sequent.ant).cloned().collect();
        let suc: BTreeSet<Formula> = suc.difference(&d.sequent.suc).cloned().collect();
        weaken(d, &ant, &suc).expect("pool holds no black-box steps")
    }

    fn apply(&mut self, rule: Rule) -> Option<Derivation> {
        if rule == Rule::Cut {
            let (d1, d2) = (self.pick()?, self.pick()?);
            let from: Vec<Formula> = d1.sequent.suc.iter().chain(&d2.sequent.ant).cloned().collect();
            let phi = match from.choose(&mut self.rng) {
                Some(f) if self.rng.gen_bool(0.8) => f.clone(),
                _ => self.formula(2),
            };
            let (a1, a2) = (right(phi.clone()), left(phi.clone()));
            let ctx = Self::strip(&d1.sequent, &a1).union(&Self::strip(&d2.sequent, &a2));
            let kids = vec![Self::lift(&d1, &ctx, &a1), Self::lift(&d2, &ctx, &a2)];
            let side = SideInfo {
                cut: Some(phi),
                ..SideInfo::default()
            };
            return Some(Derivation::node(ctx, Rule::Cut, kids, side));
        }
        let first = self.pick()?;
        let pis = self.principals(&first.sequent);
        let (pi, alt) = pis.into_iter().find_map(|pi| {
            let alts = decompositions(rule, &pi);
            alts.choose(&mut self.rng).cloned().map(|a| (pi, a))
        })?;
        let mut sources = vec![first];
        while sources.len() < alt.len() {
            sources.push(self.pick()?);
        }
        let mut ctx = Sequent::default();
        for (d, add) in sources.iter().zip(&alt) {
            ctx = ctx.union(&Self::strip(&d.sequent, add));
        }
        let kids = sources.iter().zip(&alt).map(|(d, add)| Self::lift(d, &ctx, add)).collect();
        let mut conclusion = ctx;
        match rule.principal_side()? {
            Side::Left => conclusion.ant.insert(pi.clone()),
            Side::Right => conclusion.suc.insert(pi.clone()),
        };
        side_condition(self.calc, rule, &pi, &conclusion.ant).ok()?;
        Some(Derivation::node(conclusion, rule, kids, SideInfo::principal(&pi)))
    }

    pub fn next_derivation(&mut self) -> Derivation {
        let rules: Vec<Rule> = self
            .calc
            .rules()
            .into_iter()
            .filter(|r| !r.is_axiom() && !matches!(r, Rule::BlackL | Rule::BlackR))
            .collect();
        loop {
            let made = if self.pool.len() < 4 || self.rng.gen_bool(0.2) {
                self.axiom()
            } else {
                let rule = *rules.choose(&mut self.rng).expect("rules");
                self.apply(rule)
            };
            let Some(d) = made else { continue };
            if !self.fits(&d) {
                continue;
            }
            if self.pool.len() < self.cfg.pool {
                self.pool.push(d.clone());
            } else {
                let i = self.rng.gen_range(0..self.pool.len());
                self.pool[i] = d.clone();
            }
            return d;
        }
    }
}

impl Iterator for DerivationGenerator {
    type Item = Derivation;
    fn next(&mut self) -> Option<Derivation> {
        Some(self.next_derivation())
    }
}

/// One random derivation of `calc`, reproducible from `seed`.
pub fn random_derivation(calc: CalculusId, seed: u64) -> Derivation {
    let mut g = DerivationGenerator::new(calc, GeneratorConfig::default(), seed);
    // skip the warm-up leaves so the result usually has some structure
    (0..40).map(|_| g.next_derivation()).last().unwrap()
}
