use cfmonoid::rewrite::normal_form;
use cfmonoid::{
    collapse, unit_context, verify_trace, CayleyTable, Coloring, Letter, Presentation,
    WitnessTrace, Word,
};
use proptest::prelude::*;

fn letter(n: usize) -> impl Strategy<Value = Letter> {
    prop_oneof![
        (1..=n).prop_map(Letter::S),
        (1..=n + 1).prop_map(Letter::X),
        (1..=n + 1).prop_map(Letter::Y),
        Just(Letter::Z),
    ]
}

fn word(n: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(n), 0..=max).prop_map(Word::from)
}

fn pres(name: &str) -> Presentation {
    Presentation::for_table(&CayleyTable::builtin(name).unwrap()).unwrap()
}

fn table(n: usize) -> impl Strategy<Value = CayleyTable> {
    prop::collection::vec(prop::collection::vec(1..=n, n), n)
        .prop_map(|rows| CayleyTable::from_rows(&rows).unwrap())
}

proptest! {
    #[test]
    fn word_text_round_trips(w in word(3, 12)) {
        prop_assert_eq!(Word::parse(&w.to_string(), 3).unwrap(), w);
    }

    #[test]
    fn cayley_text_round_trips(t in (1..=4usize).prop_flat_map(table)) {
        prop_assert_eq!(CayleyTable::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn coloring_text_round_trips(n in 1..=6usize, bits in prop::collection::vec(any::<bool>(), 294)) {
        let mut it = bits.into_iter();
        let c = Coloring::from_fn(n, |_, _, _| it.next().unwrap_or(false));
        prop_assert_eq!(Coloring::parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn normal_form_is_a_congruence_on_t2(u in word(4, 6), v in word(4, 6), w in word(4, 6)) {
        let p = pres("t2");
        let nf = |x: &Word| normal_form(x, &p);
        let whole = nf(&u.concat(&v).concat(&w));
        prop_assert_eq!(&nf(&nf(&u).concat(&nf(&v)).concat(&nf(&w))), &whole);
        prop_assert_eq!(nf(&whole), whole);
    }

    #[test]
    fn collapse_traces_verify_on_z3(u in word(3, 7), v in word(3, 7)) {
        let p = pres("z3");
        let (u, v) = (normal_form(&u, &p), normal_form(&v, &p));
        prop_assume!(u != v);
        let trace = collapse(&u, &v, &p).unwrap();
        prop_assert!(verify_trace(&trace, &p).accepted());
        prop_assert!(trace.len() <= 4 * (u.len() + v.len()) + 6);
        let reparsed = WitnessTrace::parse(&trace.to_string(), 3).unwrap();
        prop_assert!(verify_trace(&reparsed, &p).accepted());
    }

    #[test]
    fn unit_contexts_on_t2(w in word(4, 9)) {
        let p = pres("t2");
        let w = normal_form(&w, &p);
        prop_assume!(!w.is_zero());
        let (a, b) = unit_context(&w, &p).unwrap();
        prop_assert!(normal_form(&a.concat(&w).concat(&b), &p).is_empty());
    }
}
