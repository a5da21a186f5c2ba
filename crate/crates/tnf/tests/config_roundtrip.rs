use proptest::prelude::*;
use tnf::config::{CheckDoc, FormDoc, GeneratorDoc, KindDoc, Num, PieceDoc, SemanticsDoc, SummandDoc, TNormDoc};
use tnf::{Backend, ConfigDoc};

fn num() -> impl Strategy<Value = Num> {
    prop_oneof![
        (0i32..=64).prop_map(|k| Num::Float(k as f64 / 64.0)),
        (0u32..=20, 1u32..=20).prop_map(|(p, q)| Num::Text(format!("{}/{}", p, q))),
        (1u32..=9).prop_map(|k| Num::Text(format!("0.{}*exp(-{})", k, k))),
    ]
}

fn form() -> impl Strategy<Value = FormDoc> {
    prop_oneof![
        (num(), num()).prop_map(|(slope, intercept)| FormDoc::Linear { slope, intercept }),
        (num(), num(), num()).prop_map(|(offset, scale, rate)| FormDoc::Exponential { offset, scale, rate }),
    ]
}

fn generator() -> impl Strategy<Value = GeneratorDoc> {
    (prop::collection::vec((num(), form(), num()), 1..4), num()).prop_map(|(ps, value_at_one)| GeneratorDoc {
        pieces: ps.into_iter().map(|(left, form, value_at_left)| PieceDoc { left, form, value_at_left }).collect(),
        value_at_one,
    })
}

fn tnorm() -> impl Strategy<Value = TNormDoc> {
    let leaf = prop_oneof![
        Just(TNormDoc::Min),
        Just(TNormDoc::Product),
        Just(TNormDoc::Lukasiewicz),
        Just(TNormDoc::NilpotentMin),
        Just(TNormDoc::ZeroSubnorm),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        let kind = prop_oneof![Just(None), Just(Some(KindDoc::Tnorm)), Just(Some(KindDoc::Tsubnorm))];
        let summand = (num(), num(), inner.clone(), kind).prop_map(|(a, b, child, child_kind)| SummandDoc { a, b, child, child_kind });
        let sem = prop_oneof![Just(SemanticsDoc::ClosedSquare), Just(SemanticsDoc::HalfOpen)];
        prop_oneof![
            (num(), inner).prop_map(|(lambda, i)| TNormDoc::Scaled { lambda, inner: Box::new(i) }),
            (sem, prop::collection::vec(summand, 1..3)).prop_map(|(semantics, summands)| TNormDoc::OrdinalSum { semantics, summands }),
        ]
    })
}

fn check() -> impl Strategy<Value = CheckDoc> {
    let backend = prop_oneof![Just(None), Just(Some(Backend::Auto)), Just(Some(Backend::Exact)), Just(Some(Backend::Float))];
    (prop::option::of(2usize..500), prop::option::of((0u32..100).prop_map(|k| k as f64 / 1024.0)), backend)
        .prop_map(|(grid, tol, backend)| CheckDoc { grid, tol, backend })
}

proptest! {
    #[test]
    fn documents_survive_json(generator in generator(), tnorm in tnorm(), check in check()) {
        let doc = ConfigDoc { generator, tnorm, check };
        let back = ConfigDoc::parse(&doc.to_json(), "mem").unwrap();
        prop_assert_eq!(back, doc);
    }
}

#[test]
fn fixture_configs_survive_json() {
    for fx in tnf::fixtures::all() {
        let back = ConfigDoc::parse(&fx.config.to_json(), fx.id).unwrap();
        assert_eq!(back, fx.config, "{}", fx.id);
        back.generator::<f64>().unwrap();
        back.tnorm::<f64>().unwrap();
    }
}
