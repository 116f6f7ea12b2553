use orbijac_core::isomorphism::chow_invariance;
use orbijac_core::semigroup::verify_generators;
use orbijac_core::verify::{property_suite, rescale_suite, SuiteConfig};
use orbijac_core::{Strategy, WeightVector};

#[test]
fn property_suite_is_clean_and_reproducible() {
    let cfg = SuiteConfig { cases: 200, ..SuiteConfig::default() };
    let a = property_suite(&cfg);
    assert!(a.pass, "{a:?}");
    let b = property_suite(&SuiteConfig { strategy: Strategy::Sequential, ..cfg });
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn rescale_suite_is_clean() {
    let r = rescale_suite(&SuiteConfig { cases: 200, ..SuiteConfig::default() });
    assert!(r.pass, "{r:?}");
}

#[test]
fn generators_cover_small_boxes() {
    for v in [vec![2, 3], vec![3, 5], vec![2, 3, 5], vec![4, 5, 6]] {
        let r = verify_generators(&WeightVector::weights(v.clone()).unwrap(), 4, Strategy::default()).unwrap();
        assert!(r.pass, "{v:?}");
    }
}

#[test]
fn rescaling_needs_coprime_factor() {
    let w = WeightVector::multiplicities(vec![1, 1]).unwrap();
    let p = WeightVector::weights(vec![1, 2]).unwrap();
    assert!(chow_invariance(&w, &p, 2, None).is_err());
    assert!(chow_invariance(&w, &p, 3, None).unwrap().pass);
}
