mod common;

use common::{config, from_images, matrix, matrix_spec, poly, poly_spec, triangular_spec, xyz, TriSpec};
use derivlab::{
    deg_delta, find_periodic_schedule, nil_membership, unil_lie_membership, word_vanishing_depth, Degree, Derivation,
    Field, LinearOperator, OperatorSet, Polynomial, Verdict,
};
use proptest::prelude::*;

const BOUND: usize = 12;

fn set_of(specs: &[TriSpec]) -> OperatorSet<Derivation> {
    let r = xyz();
    OperatorSet::new(specs.iter().map(|s| from_images(&r, s)).collect()).unwrap()
}

/// Number of length-`n` words that do not kill `x`, by plain recursion.
fn surviving(ds: &[Derivation], x: &Polynomial, n: usize) -> usize {
    if x.is_zero() {
        return 0;
    }
    if n == 0 {
        return 1;
    }
    ds.iter().map(|d| surviving(ds, &d.apply(x).unwrap(), n - 1)).sum()
}

fn proportional(a: &[derivlab::Coeff], b: &[derivlab::Coeff]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i].mul(&b[j]) == a[j].mul(&b[i])))
}

proptest! {
    #![proptest_config(config(64))]

    /// A certified degree `n` comes with a surviving word of length `n`, and
    /// no word of length `n + 1` survives.
    #[test]
    fn certified_degrees_replay(specs in prop::collection::vec(triangular_spec(1), 1..=2), x in poly_spec(3, 2, 3)) {
        let set = set_of(&specs);
        let x = poly(&xyz(), &x);
        let cert = deg_delta(&set, &x, BOUND).unwrap();
        // Affine triangular maps lower a weighted degree, so the search always ends.
        prop_assert_eq!(cert.verdict, Verdict::Certified);
        match cert.degree.unwrap() {
            Degree::NegInf => prop_assert!(x.is_zero()),
            Degree::Finite(n) => {
                let mut v = x.clone();
                for &i in &cert.witness {
                    v = set.actors()[i].apply(&v).unwrap();
                }
                prop_assert_eq!(cert.witness.len(), n);
                prop_assert!(!v.is_zero());
                prop_assert_eq!(surviving(set.actors(), &x, n + 1), 0);
            }
        }
    }

    #[test]
    fn word_vanishing_is_monotone(specs in prop::collection::vec(triangular_spec(1), 1..=3)) {
        let set = set_of(&specs);
        let flags: Vec<bool> = (0..8).map(|n| word_vanishing_depth(&set, n).vanishes).collect();
        for n in 0..7 {
            prop_assert!(!flags[n] || flags[n + 1], "{:?}", flags);
        }
    }

    /// Once composite words of some length kill `x`, so do bracket words of that
    /// length and beyond.
    #[test]
    fn uniform_membership_implies_lie_membership(specs in prop::collection::vec(triangular_spec(1), 1..=2), x in poly_spec(3, 2, 3)) {
        let set = set_of(&specs);
        let x = poly(&xyz(), &x);
        let cert = deg_delta(&set, &x, BOUND).unwrap();
        let Some(Degree::Finite(d)) = cert.certified_degree() else {
            return Ok(());
        };
        let lie = unil_lie_membership(&set, &x, BOUND).unwrap();
        for (k, &vanishes) in lie.pattern.iter().enumerate() {
            if k + 1 > d {
                prop_assert!(vanishes, "length {} survives at x with deg {}", k + 1, d);
            }
        }
        if lie.certificate.is_certified() {
            prop_assert!(lie.certificate.degree.unwrap() <= Degree::Finite(d));
        }
    }

    #[test]
    fn certified_elements_form_a_subalgebra(
        specs in prop::collection::vec(triangular_spec(1), 1..=2),
        x in poly_spec(3, 2, 2),
        y in poly_spec(3, 2, 2),
        c in -3i64..=3,
    ) {
        let set = set_of(&specs);
        let r = xyz();
        let (x, y) = (poly(&r, &x), poly(&r, &y));
        let dx = deg_delta(&set, &x, BOUND).unwrap().certified_degree().unwrap();
        let dy = deg_delta(&set, &y, BOUND).unwrap().certified_degree().unwrap();
        let prod = deg_delta(&set, &(&x * &y), 2 * BOUND).unwrap();
        prop_assert!(prod.is_certified());
        prop_assert!(prod.degree.unwrap() <= dx.plus(dy));
        let sum = deg_delta(&set, &(&x + &y.scale(&Field::Rational.from_i64(c))), BOUND).unwrap();
        prop_assert!(sum.is_certified());
        prop_assert!(sum.degree.unwrap() <= dx.max(dy));
    }

    /// Strictly upper triangular matrices: certified, and replayable.
    #[test]
    fn nilpotent_matrices_certify(a in matrix_spec(4, -2, 2), b in matrix_spec(4, -2, 2), v in prop::collection::vec(-3i64..=3, 4)) {
        let k = Field::Rational;
        let upper = |m: &Vec<Vec<i64>>| {
            let rows: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| if j > i { m[i][j] } else { 0 }).collect()).collect();
            matrix(k, &rows)
        };
        let set = OperatorSet::new(vec![upper(&a), upper(&b)]).unwrap();
        let x: Vec<_> = v.iter().map(|&c| k.from_i64(c)).collect();
        let cert = deg_delta(&set, &x, BOUND).unwrap();
        prop_assert!(cert.is_certified());
        if let Some(Degree::Finite(n)) = cert.degree {
            prop_assert!(n <= 3);
            let mut y = x.clone();
            for &i in &cert.witness {
                y = set.actors()[i].apply(&y).unwrap();
            }
            prop_assert!(y.iter().any(|c| !c.is_zero()));
        }
    }

    /// A refutation replays: along the schedule, values at two period
    /// boundaries agree up to a scalar and none of them is zero.
    #[test]
    fn refutations_replay(m in matrix_spec(3, -2, 2), v in prop::collection::vec(-3i64..=3, 3)) {
        let k = Field::Rational;
        let set = OperatorSet::new(vec![matrix(k, &m), LinearOperator::identity(k, 3)]).unwrap();
        let x: Vec<_> = v.iter().map(|&c| k.from_i64(c)).collect();
        prop_assume!(x.iter().any(|c| !c.is_zero()));
        let schedule = find_periodic_schedule(&set, &x, BOUND).unwrap();
        // The identity never kills a nonzero vector, so some schedule exists.
        let schedule = schedule.expect("identity letter cycles");
        let cert = nil_membership(&set, &x, BOUND, Some(&schedule)).unwrap();
        prop_assert_eq!(cert.verdict, Verdict::Refuted);
        let apply = |w: &[usize], y: &Vec<derivlab::Coeff>| {
            w.iter().fold(y.clone(), |acc, &i| set.actors()[i].apply(&acc).unwrap())
        };
        let mut boundary = vec![apply(&schedule.preperiod, &x)];
        let mut found = false;
        for _ in 0..BOUND {
            let next = apply(&schedule.period, boundary.last().unwrap());
            prop_assert!(next.iter().any(|c| !c.is_zero()));
            if boundary.iter().any(|b| proportional(b, &next)) {
                found = true;
                break;
            }
            boundary.push(next);
        }
        prop_assert!(found);
    }
}

#[test]
fn euler_operator_is_refuted_not_certified() {
    let r = xyz();
    let e = Derivation::from_exprs(&r, [("x", "x")]).unwrap();
    let set = OperatorSet::new(vec![e]).unwrap();
    let x = r.var(0);
    assert_eq!(deg_delta(&set, &x, BOUND).unwrap().verdict, Verdict::Inconclusive);
    let s = find_periodic_schedule(&set, &x, BOUND).unwrap().unwrap();
    assert_eq!(nil_membership(&set, &x, BOUND, Some(&s)).unwrap().verdict, Verdict::Refuted);
}
