//! Axiom schemas of the classical modal logics.

use crate::syntax::{nabla_bar2, Formula};

use super::ClassicalLogic;

#[derive(Clone, Copy, Debug)]
pub struct Schema {
    pub name: &'static str,
    pub arity: usize,
    build: fn(&[Formula]) -> Formula,
}

impl Schema {
    pub fn instance(&self, args: &[Formula]) -> Formula {
        assert_eq!(args.len(), self.arity, "schema {} takes {} letters", self.name, self.arity);
        (self.build)(args)
    }

    pub fn by_name(name: &str) -> Option<Schema> {
        ALL.iter().copied().find(|s| s.name == name)
    }
}

fn b(a: Formula) -> Formula {
    Formula::boxed(a)
}
fn n(a: Formula) -> Formula {
    Formula::not(a)
}
fn and(a: Formula, c: Formula) -> Formula {
    Formula::and(a, c)
}
fn or(a: Formula, c: Formula) -> Formula {
    Formula::or(a, c)
}
fn imp(a: Formula, c: Formula) -> Formula {
    Formula::implies(a, c)
}
fn iff(a: Formula, c: Formula) -> Formula {
    Formula::iff(a, c)
}

macro_rules! schema {
    ($name:expr, 0, || $body:expr) => {
        Schema { name: $name, arity: 0, build: |_| $body }
    };
    ($name:expr, 1, |$x:ident| $body:expr) => {
        Schema {
            name: $name,
            arity: 1,
            build: |a| {
                let $x = a[0].clone();
                $body
            },
        }
    };
    ($name:expr, 2, |$x:ident, $y:ident| $body:expr) => {
        Schema {
            name: $name,
            arity: 2,
            build: |a| {
                let ($x, $y) = (a[0].clone(), a[1].clone());
                $body
            },
        }
    };
    ($name:expr, 3, |$x:ident, $y:ident, $z:ident| $body:expr) => {
        Schema {
            name: $name,
            arity: 3,
            build: |a| {
                let ($x, $y, $z) = (a[0].clone(), a[1].clone(), a[2].clone());
                $body
            },
        }
    };
}

pub const ALL: &[Schema] = &[
    // a Hilbert basis for classical propositional logic
    schema!("cpl1", 2, |x, y| imp(x.clone(), imp(y, x))),
    schema!("cpl2", 3, |x, y, z| imp(
        imp(x.clone(), imp(y.clone(), z.clone())),
        imp(imp(x.clone(), y), imp(x, z))
    )),
    schema!("cpl3", 2, |x, y| imp(imp(n(x.clone()), n(y.clone())), imp(y, x))),
    schema!("top", 0, || b(Formula::Top)),
    schema!("bot", 0, || n(b(Formula::Bot))),
    schema!("neg", 1, |x| iff(b(x.clone()), b(n(n(x))))),
    schema!("and1", 2, |x, y| iff(b(and(x.clone(), y.clone())), and(b(x), b(y)))),
    schema!("and2", 2, |x, y| iff(b(n(and(x.clone(), y.clone()))), or(b(n(x)), b(n(y))))),
    schema!("or1", 2, |x, y| iff(b(or(x.clone(), y.clone())), or(b(x), b(y)))),
    schema!("or2", 2, |x, y| iff(b(n(or(x.clone(), y.clone()))), and(b(n(x)), b(n(y))))),
    schema!("box1", 1, |x| iff(b(x.clone()), b(b(x)))),
    schema!("box2", 1, |x| iff(b(n(x.clone())), b(n(b(x))))),
    schema!("faith", 1, |x| imp(and(b(x.clone()), n(b(n(x.clone())))), x)),
    schema!("D", 1, |x| or(n(b(n(x.clone()))), n(b(x)))),
    schema!("Dc", 1, |x| or(b(n(x.clone())), b(x))),
    schema!("DDc", 2, |x, y| or(
        or(n(b(n(x.clone()))), n(b(x))),
        or(b(n(y.clone())), b(y))
    )),
    schema!("or3", 2, |x, y| iff(
        b(or(x.clone(), y.clone())),
        and(nabla_bar2(x.clone(), y.clone()), or(b(x), b(y)))
    )),
    schema!("and3", 2, |x, y| iff(
        b(n(and(x.clone(), y.clone()))),
        and(nabla_bar2(x.clone(), y.clone()), or(b(n(x)), b(n(y))))
    )),
    schema!("fc1", 2, |x, y| iff(
        b(Formula::fc(x.clone(), y.clone())),
        or(b(n(x.clone())), and(b(x), b(y)))
    )),
    schema!("fc2", 2, |x, y| iff(
        b(n(Formula::fc(x.clone(), y.clone()))),
        and(b(x), b(n(y)))
    )),
];

const BM_MINUS: &[&str] = &[
    "cpl1", "cpl2", "cpl3", "top", "bot", "neg", "and1", "and2", "or1", "or2", "box1", "box2",
];
const MW_MINUS: &[&str] = &[
    "cpl1", "cpl2", "cpl3", "top", "bot", "neg", "and1", "or2", "box1", "box2", "D", "or3", "and3",
];

/// Axiom schemas of `logic` (modus ponens is its only rule).
pub fn schemas(logic: ClassicalLogic) -> Vec<Schema> {
    use ClassicalLogic::*;
    let mut names: Vec<&str> = match logic {
        BMMinus | BM | MMinus | M | Mn | Mb => BM_MINUS.to_vec(),
        MwMinus | Mw | MfMinus | Mf => MW_MINUS.to_vec(),
    };
    match logic {
        Mn => names.push("D"),
        Mb => names.push("Dc"),
        M | MMinus => names.push("DDc"),
        MfMinus | Mf => names.extend(["fc1", "fc2"]),
        _ => {}
    }
    if logic.faithful() {
        names.push("faith");
    }
    names
        .into_iter()
        .map(|n| Schema::by_name(n).expect("known schema"))
        .collect()
}
