use lieconf::conformal::{check_jacobi, check_skew, Triples};
use lieconf::document::AlgebraDocument;
use lieconf::families::{catalog, FamilyDescriptor, FamilyTag};
use lieconf::scalar::{int, ratio};
use lieconf::Error;

fn members() -> Vec<FamilyDescriptor> {
    let mut out: Vec<FamilyDescriptor> = (0..=3)
        .map(|n| FamilyDescriptor::new(FamilyTag::W, n))
        .collect();
    for a in [int(0), int(1), int(-2), ratio(3, 7)] {
        out.push(FamilyDescriptor::new(FamilyTag::S, 2).with_a(a));
    }
    out.push(FamilyDescriptor::new(FamilyTag::S, 3).with_a(ratio(3, 7)));
    out.push(FamilyDescriptor::new(FamilyTag::STilde, 2));
    out.extend([0, 1, 2, 3, 5].map(|n| FamilyDescriptor::new(FamilyTag::K, n)));
    out.push(FamilyDescriptor::new(FamilyTag::K4Prime, 4));
    out.extend(["sl(2)", "sl(2|1)", "Q(2)", "psl(2|2)"].map(FamilyDescriptor::current));
    out
}

#[test]
fn json_round_trip_for_every_family() {
    for d in members() {
        let a = d.build().unwrap();
        let json = AlgebraDocument::from_algebra(&a).to_json().unwrap();
        let doc = AlgebraDocument::from_json(&json).unwrap();
        let back = doc.to_algebra().unwrap();
        assert_eq!(back, a, "{}", d.label());
        assert_eq!(
            AlgebraDocument::from_algebra(&back).to_json().unwrap(),
            json
        );
    }
}

#[test]
fn labels_identify_members() {
    for d in members() {
        let a = d.build().unwrap();
        assert_eq!(a.name(), d.label());
        let again = FamilyDescriptor::from_label(a.name()).unwrap();
        assert_eq!(again.build().unwrap(), a);
    }
}

#[test]
fn ranks() {
    let cases = [
        (FamilyDescriptor::new(FamilyTag::W, 3), 32),
        (FamilyDescriptor::new(FamilyTag::S, 3), 24),
        (FamilyDescriptor::new(FamilyTag::STilde, 2), 8),
        (FamilyDescriptor::new(FamilyTag::K, 5), 32),
        (FamilyDescriptor::new(FamilyTag::K4Prime, 4), 16),
        (FamilyDescriptor::current("sl(2|1)"), 8),
    ];
    for (d, r) in cases {
        assert_eq!(d.build().unwrap().rank(), r, "{}", d.label());
    }
}

#[test]
fn constraints() {
    let k4 = FamilyDescriptor::new(FamilyTag::K, 4).build();
    assert!(matches!(k4, Err(Error::Constraint(ref m)) if m.contains("N ≠ 4")));
    assert!(matches!(
        FamilyDescriptor::new(FamilyTag::S, 1).build(),
        Err(Error::Constraint(_))
    ));
    assert!(matches!(
        FamilyDescriptor::new(FamilyTag::STilde, 3).build(),
        Err(Error::Constraint(_))
    ));
    assert!(FamilyDescriptor::new(FamilyTag::CK6, 6).build().is_err());
    assert!(FamilyDescriptor::current("sl(2|").build().is_err());
}

#[test]
fn catalog_has_seven_families() {
    let c = catalog();
    assert_eq!(c.len(), 7);
    assert!(c.iter().any(|e| e.tag == FamilyTag::CK6));
}

#[test]
fn axioms_sampled_on_larger_members() {
    for d in [
        FamilyDescriptor::new(FamilyTag::K, 5),
        FamilyDescriptor::new(FamilyTag::S, 3).with_a(int(-2)),
    ] {
        let a = d.build().unwrap();
        assert!(check_skew(&a).passed());
        let r = check_jacobi(
            &a,
            Triples::Sample {
                count: 200,
                seed: 7,
            },
        );
        assert!(r.passed(), "{}", d.label());
        assert_eq!(r.seed, Some(7));
    }
}
