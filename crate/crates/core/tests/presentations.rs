use orbijac_core::presentation::{affine_embedding, chain_presentation, chow_presentation, rerender, REWRITE_SLACK};
use orbijac_core::{AffinePresentation, Binomial, Format, WeightVector};

fn p(v: &[i64]) -> WeightVector {
    WeightVector::weights(v.to_vec()).unwrap()
}

#[test]
fn embedding_relations_hold() {
    for v in [&[1, 1][..], &[1, 2], &[2, 3], &[1, 1, 2], &[2, 3, 5]] {
        let pres = affine_embedding(&p(v), 4).unwrap();
        assert!(pres.verify_all().unwrap(), "{v:?}");
    }
}

#[test]
fn chain_and_embedding_agree_for_p1() {
    let weights = p(&[1, 1]);
    let chain = chain_presentation(&weights).unwrap();
    let emb = affine_embedding(&weights, 4).unwrap();
    assert!(emb.equivalent(&chain, 4 + REWRITE_SLACK).unwrap().equivalent);
}

#[test]
fn non_chain_weights_are_rejected() {
    assert!(chain_presentation(&p(&[2, 3])).is_err());
    assert!(chain_presentation(&p(&[1, 2, 3])).is_err());
}

#[test]
fn false_relations_are_caught() {
    let pres = affine_embedding(&p(&[2, 3, 5]), 4).unwrap();
    let wrong: Binomial = "u1*w1 = s2*w2".parse().unwrap();
    let right: Binomial = "u1*w1 = s2*w3".parse().unwrap();
    assert!(!pres.verify_relation(&wrong).unwrap());
    assert!(pres.verify_relation(&right).unwrap());
    let unknown: Binomial = "q1 = z0".parse().unwrap();
    assert!(pres.verify_relation(&unknown).is_err());
}

#[test]
fn json_round_trip_and_rerender() {
    let pres = affine_embedding(&p(&[1, 2, 4]), 4).unwrap();
    let json = pres.to_json();
    let back = AffinePresentation::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
    assert_eq!(rerender(&json, Format::Singular).unwrap(), pres.export(Format::Singular));
}

#[test]
fn chow_presentation_kills_the_curve() {
    let pres = chow_presentation(&p(&[1, 2]), &WeightVector::multiplicities(vec![1, 1]).unwrap(), 4).unwrap();
    assert!(pres.generator_names().iter().all(|n| !n.starts_with('s')));
    assert!(!pres.extra_relations.is_empty());
}
