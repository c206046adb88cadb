use lieconf::families::{k4_prime, k_conformal, FamilyDescriptor, FamilyTag, WFamily};
use lieconf::modes::{
    build_modes, compare_realization, contact_model, k4prime_center_check, k_pairing,
    outer_sl2_on_s, vector_field_model, w_pairing, witt_check, ModeElement,
};
use lieconf::scalar::int;

#[test]
fn w1_matches_vector_fields() {
    let w = WFamily::new(1).unwrap();
    let m = build_modes(&w.algebra);
    let r = compare_realization(&m, &vector_field_model(1, 4), &w_pairing(&w), 4);
    assert!(r.passed(), "{:?}", r.mismatches.first());
}

#[test]
fn k2_matches_contact_model() {
    let m = build_modes(&k_conformal(2).unwrap());
    let r = compare_realization(&m, &contact_model(2, 4), &k_pairing(2), 4);
    assert!(r.passed(), "{:?}", r.mismatches.first());
}

#[test]
fn mode_jacobi_and_t() {
    let m = build_modes(&k_conformal(2).unwrap());
    assert!(m.anticommutativity_violations(3).is_empty());
    assert!(m.jacobi_violations(3).1.is_empty());
    assert!(m.jacobi_sampled(5, 100, 3).is_empty());
    assert!(m.t_derivation_violations(5, 100, 3).is_empty());
}

#[test]
fn t_lowers_modes() {
    let m = build_modes(&k_conformal(1).unwrap());
    let x = ModeElement::basis(0, 3);
    assert_eq!(m.t_derivation(&x), ModeElement::term(0, 2, int(-3)));
    assert!(m.t_derivation(&ModeElement::basis(1, 0)).is_zero());
}

#[test]
fn witt_relations() {
    for d in [
        FamilyDescriptor::new(FamilyTag::W, 1),
        FamilyDescriptor::new(FamilyTag::K, 2),
    ] {
        let r = witt_check(&d.build().unwrap(), 5);
        assert!(r.found && r.passed(), "{}", d.label());
        assert_eq!(r.checked, 36);
    }
    let r = witt_check(&FamilyDescriptor::current("sl(2)").build().unwrap(), 5);
    assert!(!r.found);
}

#[test]
fn k4_prime_center() {
    let r = k4prime_center_check(3).unwrap();
    assert!(r.passed());
    assert_eq!(r.constant, Some(int(-1)));
    let m = build_modes(&k4_prime().unwrap().algebra);
    assert_eq!(m.rank(), 16);
}

#[test]
fn outer_sl2() {
    let r = outer_sl2_on_s(4).unwrap();
    assert!(r.passed());
    assert_eq!(r.span_dim, 3);
    assert!(outer_sl2_on_s(2).is_err());
}

#[test]
fn export_is_a_valid_document() {
    let m = build_modes(&k_conformal(1).unwrap());
    let doc = m.export(2);
    assert!(doc.generators.iter().any(|g| g.id.ends_with("@2")));
    let json = doc.to_json().unwrap();
    let back = lieconf::document::AlgebraDocument::from_json(&json).unwrap();
    assert_eq!(back, doc);
}
