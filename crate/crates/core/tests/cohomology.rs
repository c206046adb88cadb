use lieconf::cohomology::{
    builtin_fixtures, coboundary_space, cocycle_residual, fixture_for, h1_conformal, h2_conformal,
    is_trivial, normalization_resolve, verify_fixture, Cocycle2, DegreeCap, NormalizationOutcome,
};
use lieconf::families::{FamilyDescriptor, FamilyTag};
use lieconf::scalar::{int, ratio};
use lieconf::Error;

#[test]
fn small_h2_dimensions() {
    for (d, want) in [
        (FamilyDescriptor::new(FamilyTag::W, 0), 1),
        (FamilyDescriptor::new(FamilyTag::W, 1), 1),
        (FamilyDescriptor::new(FamilyTag::K, 1), 1),
        (FamilyDescriptor::current("sl(2)"), 1),
    ] {
        let r = h2_conformal(&d.build().unwrap(), DegreeCap::Auto).unwrap();
        assert_eq!(r.dim, want, "{}", d.label());
        assert_eq!(r.runs.len(), 3);
        assert_eq!(r.representatives.len(), want);
        for rep in &r.representatives {
            assert_eq!(is_trivial(&d.build().unwrap(), rep), Some(false));
        }
    }
}

#[test]
fn fixed_cap_below_bracket_degree_is_rejected() {
    let w0 = FamilyDescriptor::new(FamilyTag::W, 0).build().unwrap();
    assert!(matches!(
        h2_conformal(&w0, DegreeCap::Fixed(0)),
        Err(Error::Cap(_))
    ));
    assert_eq!(h2_conformal(&w0, DegreeCap::Fixed(5)).unwrap().dim, 1);
}

#[test]
fn coboundaries_are_trivial_cocycles() {
    let k2 = FamilyDescriptor::new(FamilyTag::K, 2).build().unwrap();
    for c in coboundary_space(&k2) {
        assert!(cocycle_residual(&k2, &c).is_zero());
        assert_eq!(is_trivial(&k2, &c), Some(true));
    }
    assert_eq!(is_trivial(&k2, &Cocycle2::zero()), Some(true));
}

#[test]
fn h1_of_simple_members_vanishes() {
    for d in [
        FamilyDescriptor::new(FamilyTag::W, 1),
        FamilyDescriptor::new(FamilyTag::K, 2),
    ] {
        assert_eq!(h1_conformal(&d.build().unwrap()), 0, "{}", d.label());
    }
}

#[test]
fn fixtures_verify() {
    for f in builtin_fixtures().unwrap() {
        if f.family.tag == "S" {
            continue;
        }
        let r = verify_fixture(&f, &int(0)).unwrap();
        assert!(r.passed(), "{}", f.name);
    }
    let s2 = fixture_for(&FamilyDescriptor::new(FamilyTag::S, 2))
        .unwrap()
        .unwrap();
    for a in [int(0), ratio(3, 7)] {
        assert!(verify_fixture(&s2, &a).unwrap().passed());
    }
}

#[test]
fn normalization_of_the_w1_table() {
    let f = fixture_for(&FamilyDescriptor::new(FamilyTag::W, 1))
        .unwrap()
        .unwrap();
    let n = normalization_resolve(&f, &int(0)).unwrap();
    assert_eq!(n, NormalizationOutcome::DividedPower);
}

#[test]
fn corrupted_table_is_detected() {
    let mut f = fixture_for(&FamilyDescriptor::new(FamilyTag::K, 1))
        .unwrap()
        .unwrap();
    f.cocycles[0].entries.retain(|e| e.n != 3);
    assert!(verify_fixture(&f, &int(0)).map_or(true, |r| !r.passed()));
}
