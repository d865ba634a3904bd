use proptest::prelude::*;

use kfmodal::calculi::{check_derivation, random_derivation, semantically_valid, Base, CalculusId};
use kfmodal::kftruth::{lfp, Id, Jump, Sentence, Universe};
use kfmodal::manyvalued::{value_at_reflexive, Scheme, TruthValue};
use kfmodal::syntax::{Formula, Sequent};

fn formula(atoms: u32, fc: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (0..atoms).prop_map(Formula::Atom),
        Just(Formula::Top),
        Just(Formula::Bot),
    ];
    leaf.prop_recursive(4, 24, 2, move |inner| {
        let mut options = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            inner.clone().prop_map(Formula::boxed).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
        ];
        if fc {
            options.push((inner.clone(), inner).prop_map(|(a, b)| Formula::fc(a, b)).boxed());
        }
        proptest::strategy::Union::new(options)
    })
}

fn value() -> impl Strategy<Value = TruthValue> {
    proptest::sample::select(TruthValue::ALL.to_vec())
}

fn scheme() -> impl Strategy<Value = Scheme> {
    proptest::sample::select(Scheme::ALL.to_vec())
}

fn jump() -> impl Strategy<Value = Jump> {
    proptest::sample::select(Jump::ALL.to_vec())
}

/// A universe with two tellers and the liar, grown by `ops`.
fn universe(ops: &[(u8, usize, usize)]) -> Universe {
    let mut u = Universe::with(2, true);
    u.eq(0, 0);
    u.eq(0, 1);
    for &(op, a, b) in ops {
        let n = u.len();
        let (a, b) = (a % n, b % n);
        if u.get(a) == Sentence::Reserved || u.get(b) == Sentence::Reserved {
            continue;
        }
        match op % 5 {
            0 => u.tr(a),
            1 => u.not(a),
            2 => u.and(a, b),
            3 => u.or(a, b),
            _ => u.fc(a, b),
        };
    }
    u
}

fn ops() -> impl Strategy<Value = Vec<(u8, usize, usize)>> {
    prop::collection::vec((any::<u8>(), any::<usize>(), any::<usize>()), 0..40)
}

fn members(fp: &kfmodal::kftruth::FixedPoint, u: &Universe) -> Vec<Id> {
    u.ids().filter(|i| fp.contains(*i)).collect()
}

proptest! {
    #[test]
    fn formula_roundtrip(f in formula(3, true)) {
        let back: Formula = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn sequent_roundtrip(ant in prop::collection::btree_set(formula(2, false), 0..3),
                         suc in prop::collection::btree_set(formula(2, false), 0..3)) {
        let s = Sequent { ant, suc };
        let back: Sequent = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn negation_is_an_involution_and_de_morgan_holds(
        s in scheme(), f in formula(2, false), g in formula(2, false),
        v in prop::collection::vec(value(), 2),
    ) {
        prop_assume!(s.check_formula(&f).is_ok() && s.check_formula(&g).is_ok());
        prop_assume!(s.polarities().into_iter().any(|pol| v.iter().all(|x| s.allows(*x, pol))));
        let val = |x: &Formula| value_at_reflexive(s, x, &v);
        prop_assert_eq!(val(&Formula::not(Formula::not(f.clone()))), val(&f));
        prop_assert_eq!(
            val(&Formula::not(Formula::and(f.clone(), g.clone()))),
            val(&Formula::or(Formula::not(f), Formula::not(g)))
        );
    }

    #[test]
    fn jump_is_monotone(ops in ops(), tag in jump(), small in any::<u64>(), extra in any::<u64>()) {
        let u = universe(&ops);
        let bits = |mask: u64| -> Vec<bool> { u.ids().map(|i| mask >> (i % 64) & 1 == 1).collect() };
        let s = bits(small);
        let t: Vec<bool> = s.iter().zip(bits(extra)).map(|(a, b)| *a || b).collect();
        let (js, jt) = (u.jump(tag, &s), u.jump(tag, &t));
        for i in u.ids() {
            prop_assert!(!js[i] || jt[i], "{} lost when the set grew", u.print(i));
        }
    }

    #[test]
    fn least_fixed_point_is_consistent_and_ungrounded_sentences_stay_out(ops in ops(), tag in jump()) {
        let u = universe(&ops);
        let fp = lfp(&u, tag, &[]).unwrap();
        prop_assert!(fp.consistent);
        for t in u.tellers().iter().copied().chain([u.liar_id().unwrap()]) {
            prop_assert!(!fp.contains(t));
            prop_assert!(!fp.contains(u.neg_of(t).unwrap()));
        }
    }

    #[test]
    fn truth_is_transparent_in_fixed_points(ops in ops(), tag in jump(), signs in prop::collection::vec(0u8..3, 2)) {
        let u = universe(&ops);
        let mut seed = Vec::new();
        for (i, sign) in signs.iter().enumerate() {
            let t = u.teller(i).unwrap();
            match sign {
                1 => seed.push(t),
                2 => seed.push(u.neg_of(t).unwrap()),
                _ => {}
            }
        }
        let fp = lfp(&u, tag, &seed).unwrap();
        for id in u.ids() {
            if let Some(tr) = u.lookup(&Sentence::Tr(id)) {
                if tag != Jump::Af && u.uses_fc(id) {
                    continue;
                }
                prop_assert_eq!(fp.contains(id), fp.contains(tr), "{}", u.print(id));
            }
        }
        prop_assert!(fp.consistent);
        let got = members(&fp, &u);
        prop_assert!(seed.iter().all(|s| got.contains(s)));
    }

    #[test]
    fn disjunction_matches_its_negated_conjunction_form(ops in ops()) {
        let mut u = universe(&ops);
        let pairs: Vec<(Id, Id, Id)> = u.ids().filter_map(|i| match u.get(i) {
            Sentence::Or(a, b) => Some((i, a, b)),
            _ => None,
        }).collect();
        let mut forms = Vec::new();
        for (i, a, b) in pairs {
            let (na, nb) = (u.not(a), u.not(b));
            let c = u.and(na, nb);
            forms.push((i, u.not(c)));
        }
        let fp = lfp(&u, Jump::Sk, &[u.teller(0).unwrap()]).unwrap();
        for (or, nf) in forms {
            if u.uses_fc(or) {
                continue;
            }
            prop_assert_eq!(fp.contains(or), fp.contains(nf), "{}", u.print(or));
        }
    }

    #[test]
    fn random_derivations_check_and_are_valid(base_ix in 0usize..6, seed in any::<u64>()) {
        let calc = CalculusId::boxed(Base::ALL[base_ix]);
        let d = random_derivation(calc, seed);
        prop_assert!(check_derivation(calc, &d).is_ok());
        prop_assert!(semantically_valid(calc, &d.sequent, 2), "{}", d.sequent);
    }
}

/// Strong and weak Kleene part ways on a conjunction whose falsity is
/// decided by one side alone.
#[test]
fn weak_kleene_needs_both_sides_defined() {
    let mut u = Universe::with(1, false);
    let f = u.eq(0, 1);
    let t = u.teller(0).unwrap();
    let c = u.and(f, t);
    let nc = u.not(c);
    let sk = lfp(&u, Jump::Sk, &[]).unwrap();
    let wk = lfp(&u, Jump::Wk, &[]).unwrap();
    assert!(sk.contains(nc));
    assert!(!wk.contains(nc));
}
