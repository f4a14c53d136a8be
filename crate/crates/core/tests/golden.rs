//! Concrete values from the source material, each checked against an
//! oracle computed here.

use macias_core::ideal::{comaximal, Certificate, Ideal};
use macias_core::lab::{default_maximal_seed, find_coprime_not_comaximal, generate_maximal_ideals};
use macias_core::ring::{gcd, parse_element, GcdOutcome, Window};
use macias_core::topology::{closure_singleton, is_closed_principal, Method};
use macias_core::{Element, Ring};

fn least_factor(n: u128) -> u128 {
    (2..)
        .take_while(|p| p * p <= n)
        .find(|p| n.is_multiple_of(*p))
        .unwrap_or(n)
}

#[test]
fn closure_of_eight_is_two_z() {
    let w = Window::new(40, 0);
    let res = closure_singleton(&Element::int(8), &w, Method::ExactJ, &w).unwrap();
    assert_eq!(res.ideal_form, Some(Ideal::Principal(Element::int(2))));
    let evens: Vec<Element> = (-40..=40)
        .filter(|n| n % 2 == 0)
        .map(Element::int)
        .collect();
    let mut got = res.trace().unwrap().to_vec();
    got.sort_by_key(|e| i64::try_from(e.as_int().unwrap()).unwrap());
    assert_eq!(got, evens);
    assert!(!is_closed_principal(&Element::int(8)).unwrap());
    assert!(is_closed_principal(&Element::int(7)).unwrap());
}

#[test]
fn two_and_one_plus_w_are_coprime_not_comaximal() {
    let r = Ring::QuadM5;
    let (a, b) = (
        parse_element(r, "2").unwrap(),
        parse_element(r, "1+1w").unwrap(),
    );
    // Common divisors have norm dividing gcd(4, 6) = 2, and a^2 + 5b^2 = 2 is unsolvable.
    assert!((-2i64..=2).all(|x| (-1i64..=1).all(|y| x * x + 5 * y * y != 2)));
    assert!(matches!(gcd(&a, &b).unwrap(), GcdOutcome::Gcd(g) if g.is_unit()));
    let (verdict, cert) = comaximal(&a, &b).unwrap();
    assert!(!verdict);
    assert!(matches!(&cert, Certificate::HnfIndex(h) if h.index() == 2.into()));
    let pair = find_coprime_not_comaximal(r, &Window::new(3, 0))
        .unwrap()
        .unwrap();
    assert_eq!((pair.a, pair.b), (a, b));
}

#[test]
fn six_and_two_plus_two_w_have_no_gcd() {
    let r = Ring::QuadM5;
    let x = parse_element(r, "6").unwrap();
    let y = parse_element(r, "2+2w").unwrap();
    assert!(matches!(gcd(&x, &y).unwrap(), GcdOutcome::NoGcdWitness(..)));
}

#[test]
fn coprime_integers_are_comaximal() {
    assert_eq!(
        find_coprime_not_comaximal(Ring::Int, &Window::new(60, 0)).unwrap(),
        None
    );
}

#[test]
fn euclid_sequence_opening() {
    let got = generate_maximal_ideals(Ring::Int, vec![default_maximal_seed(Ring::Int).unwrap()], 8)
        .unwrap();
    let mut want = vec![2u128];
    while want.len() < 8 {
        let s = want.iter().product::<u128>() + 1;
        want.push(least_factor(s));
    }
    let names: Vec<String> = got.iter().map(|m| m.to_string()).collect();
    let expect: Vec<String> = want.iter().map(|p| format!("IntPrime({p})")).collect();
    assert_eq!(names, expect);
}

#[test]
fn prime_closures_in_gaussian_integers() {
    // Irreducibles of a PID have closure <p>.
    let w = Window::new(8, 0);
    for s in ["1+1i", "3", "2+1i", "7"] {
        let p = parse_element(Ring::GaussInt, s).unwrap();
        let res = closure_singleton(&p, &w, Method::ExactJ, &w).unwrap();
        let norm = |e: &Element| match e {
            Element::Gauss(q) => {
                i64::try_from(&q.a).unwrap().pow(2) + i64::try_from(&q.b).unwrap().pow(2)
            }
            _ => unreachable!(),
        };
        let n = norm(&p);
        for e in res.trace().unwrap() {
            assert_eq!(norm(e) % n, 0, "{e} in cl({{{p}}})");
        }
        assert!(is_closed_principal(&p).unwrap());
    }
}
