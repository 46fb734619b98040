use super::*;
use crate::context::SystemContext;
use crate::monomial::parse_ideal;
use crate::rational::rational;

fn ctx(p: u64, d: usize) -> SystemContext {
    SystemContext::new(p, d).unwrap()
}

fn rounding(p: u64, d: usize, num: i64, den: i64) -> FGradedSystem {
    FGradedSystem::rounding(ctx(p, d), MonomialIdeal::maximal(d), rational(num, den)).unwrap()
}

#[test]
fn contraction_examples() {
    let m = MonomialIdeal::maximal(2);
    assert_eq!(cartier_contraction(&m, 3, 1), parse_ideal("x1^3, x2^3", 2).unwrap());
    assert_eq!(cartier_contraction(&m, 3, 0), m);
    assert_eq!(
        cartier_contraction(&cartier_contraction(&m, 3, 1), 3, 2),
        cartier_contraction(&m, 3, 3)
    );
}

#[test]
fn split_examples() {
    assert_eq!(
        f_split_degree(&rounding(3, 2, 2, 1), 4).unwrap(),
        DegreeSearch::Found {
            e: 1,
            witness: ExponentVector::from_u64s(&[2, 2])
        }
    );
    let b = FGradedSystem::bracket_family(ctx(3, 2), MonomialIdeal::maximal(2)).unwrap();
    assert_eq!(f_split_degree(&b, 6).unwrap(), DegreeSearch::NoneUpTo { depth: 6 });
    let u = FGradedSystem::constant(ctx(3, 2), MonomialIdeal::unit(2)).unwrap();
    assert_eq!(f_split_degree(&u, 6).unwrap().degree(), Some(1));
}

#[test]
fn sfr_examples() {
    assert_eq!(sfr_degree(&rounding(3, 2, 2, 1), 8).unwrap(), DegreeSearch::NoneUpTo { depth: 8 });
    // a_1 = m^2, so (1,1) + (1,1) already fits under (2,2) at e = 1.
    let r = sfr_degree(&rounding(3, 2, 1, 1), 8).unwrap();
    assert_eq!(r.degree(), Some(1));
    if let DegreeSearch::Found { witness, .. } = r {
        assert_eq!(witness.degree(), BigUint::from(4u32));
    }
    let u = FGradedSystem::constant(ctx(3, 2), MonomialIdeal::unit(2)).unwrap();
    assert_eq!(
        sfr_degree(&u, 3).unwrap(),
        DegreeSearch::Found {
            e: 1,
            witness: ExponentVector::zero(2)
        }
    );
    let z = FGradedSystem::constant(ctx(3, 2), MonomialIdeal::zero(2)).unwrap();
    assert!(matches!(sfr_degree(&z, 3), Err(Error::ZeroIdeal(_))));
}

#[test]
fn theorem_a_examples() {
    let s = FGradedSystem::rounding_stab(ctx(3, 2), rational(5, 7)).unwrap();
    let c = theorem_a_check(&s, 6, DEFAULT_SLACK).unwrap();
    assert_eq!(c.verdict, Verdict::Consistent);
    assert_eq!(c.lhs.degree(), Some(1));
    assert_eq!(c.rhs.degree(), Some(2));

    let s = FGradedSystem::rounding_stab(ctx(3, 2), rational(2, 1)).unwrap();
    let c = theorem_a_check(&s, 6, DEFAULT_SLACK).unwrap();
    assert_eq!(c.verdict, Verdict::Consistent);
    assert_eq!((c.lhs.degree(), c.rhs.degree()), (None, None));

    let b = FGradedSystem::bracket_family(ctx(2, 3), MonomialIdeal::maximal(3)).unwrap();
    assert_eq!(theorem_a_check(&b, 6, DEFAULT_SLACK).unwrap().verdict, Verdict::Consistent);

    assert!(matches!(
        theorem_a_check(&rounding(3, 2, 1, 1), 6, DEFAULT_SLACK),
        Err(Error::NotPFamily { .. })
    ));
}

#[test]
fn theorem_b_examples() {
    let c = theorem_b_check(&rounding(3, 2, 2, 1), 6, DEFAULT_SLACK).unwrap();
    assert_eq!(c.verdict, Verdict::Consistent);
    assert_eq!((c.lhs.degree(), c.rhs.degree()), (None, None));

    let c = theorem_b_check(&rounding(3, 2, 1, 1), 6, DEFAULT_SLACK).unwrap();
    assert_eq!(c.verdict, Verdict::Consistent);
    assert!(c.lhs.degree().is_some() && c.rhs.degree().is_some());

    let col = FGradedSystem::colon(ctx(3, 1), parse_ideal("x1", 1).unwrap()).unwrap();
    let c = theorem_b_check(&col, 6, DEFAULT_SLACK).unwrap();
    assert_eq!(c.verdict, Verdict::Consistent);
    assert_eq!((c.lhs.degree(), c.rhs.degree()), (None, None));

    let b = FGradedSystem::bracket_family(ctx(3, 2), MonomialIdeal::maximal(2)).unwrap();
    assert!(matches!(theorem_b_check(&b, 6, DEFAULT_SLACK), Err(Error::Unsupported { .. })));
}
