use super::*;
use crate::context::SystemContext;
use crate::monomial::parse_ideal;
use crate::rational::rational;

fn ctx(p: u64, d: usize) -> SystemContext {
    SystemContext::new(p, d).unwrap()
}

fn ideal(text: &str, d: usize) -> MonomialIdeal {
    parse_ideal(text, d).unwrap()
}

fn finite(m: Measure) -> Rational {
    m.finite().cloned().expect("finite volume")
}

#[test]
fn complement_volume_examples() {
    assert_eq!(finite(staircase_complement_volume(&ideal("x1^4, x2^7", 2))), rational(28, 1));
    assert_eq!(finite(staircase_complement_volume(&ideal("x1^2, x1*x2, x2^3", 2))), rational(4, 1));
    for d in 1..4 {
        assert_eq!(finite(staircase_complement_volume(&MonomialIdeal::maximal(d))), rational(1, 1));
    }
    assert_eq!(finite(staircase_complement_volume(&MonomialIdeal::unit(2))), rational(0, 1));
    assert_eq!(staircase_complement_volume(&ideal("x1^2, x1*x2", 2)), Measure::Infinite);
    assert_eq!(staircase_complement_volume(&MonomialIdeal::zero(2)), Measure::Infinite);
}

#[test]
fn volume_sequence_examples() {
    for (p, d) in [(2, 1), (3, 2), (5, 3)] {
        let b = FGradedSystem::bracket_family(ctx(p, d), MonomialIdeal::maximal(d)).unwrap();
        let r = volume_sequence(&b, 3).unwrap();
        assert!(r.entries.iter().all(|en| en.ratio == rational(1, 1)));
    }
    let u = FGradedSystem::constant(ctx(3, 2), MonomialIdeal::unit(2)).unwrap();
    let r = volume_sequence(&u, 3).unwrap();
    assert_eq!(r.extrapolated, Some(rational(0, 1)));

    let c = FGradedSystem::constant(ctx(3, 2), ideal("x1", 2)).unwrap();
    assert!(matches!(volume_sequence(&c, 2), Err(Error::NotMPrimary { index: Some(1) })));
}

#[test]
fn rounding_ratio_at_depth_eight() {
    let r = FGradedSystem::rounding(ctx(3, 2), MonomialIdeal::maximal(2), rational(5, 7)).unwrap();
    let rep = volume_sequence(&r, 8).unwrap();
    let last = rep.entries.last().unwrap();
    assert_eq!(last.colength, BigUint::from(10_981_641u64));
    assert_eq!(last.ratio, rational(10_981_641, 43_046_721));
    // Ratios are stored reduced.
    let csv = rep.to_csv();
    assert!(csv.starts_with("e,colength,ratio_num,ratio_den,ratio_decimal\n"));
    assert!(csv.contains("8,10981641,3660547,14348907,0.255110"));
}

#[test]
fn pbody_volume_examples() {
    let c = ctx(3, 2);
    let s = ScaledStaircase::new(&c, 0, [1, 8], MonomialIdeal::maximal(2), true);
    assert_eq!(pbody_complement_volume(&s).unwrap(), rational(1, 1));
    let s = ScaledStaircase::new(&c, 2, [1, 8], MonomialIdeal::maximal_power(2, &BigUint::from(7u32)), true);
    assert_eq!(pbody_complement_volume(&s).unwrap(), rational(28, 81));
    let s = ScaledStaircase::new(&c, 2, [1, 8], MonomialIdeal::unit(2), true);
    assert_eq!(pbody_complement_volume(&s).unwrap(), rational(0, 1));
}

#[test]
fn das_meng_bracket_is_exact() {
    let b = FGradedSystem::bracket_family(ctx(3, 2), MonomialIdeal::maximal(2)).unwrap();
    for (e, k) in [(2, 1), (4, 3)] {
        let r = das_meng_report(&b, e, k, &StabWindow::default()).unwrap();
        assert_eq!(r.discrepancy, Some(rational(0, 1)));
    }
}

#[test]
fn bbl_constant() {
    let r = FGradedSystem::rounding(ctx(3, 2), MonomialIdeal::maximal(2), rational(5, 7)).unwrap();
    let c = bbl_certificate(&r, 6).unwrap();
    // a_1 = m^2, so n = 2 and B = 3.
    assert_eq!((c.n.clone(), c.b.clone(), c.big_n.clone()), (BigUint::from(2u32), BigUint::from(3u32), BigUint::zero()));
    assert_eq!(c.c, rational(3, 2));
    assert!(c.verified);
}
