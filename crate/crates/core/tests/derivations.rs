mod common;

use common::{config, derivation_spec, matrix, matrix_spec, poly, poly_spec, from_images, triangular_spec, xyz};
use derivlab::{apply_word, extend_linear_to_derivation, linear_matrix, Derivation, Field, Polynomial};
use proptest::prelude::*;

/// `D_I(p)` with the letters of `I` applied in increasing index order.
fn apply_subset(ds: &[Derivation], mask: u32, p: &Polynomial) -> Polynomial {
    let mut v = p.clone();
    for (i, d) in ds.iter().enumerate() {
        if mask & (1 << i) != 0 {
            v = d.apply(&v).unwrap();
        }
    }
    v
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn apply_obeys_leibniz(d in derivation_spec(2), a in poly_spec(3, 3, 3), b in poly_spec(3, 3, 3)) {
        let r = xyz();
        let d = from_images(&r, &d);
        let (a, b) = (poly(&r, &a), poly(&r, &b));
        let lhs = d.apply(&(&a * &b)).unwrap();
        let rhs = &(&d.apply(&a).unwrap() * &b) + &(&a * &d.apply(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// A word applied to a product expands over all splittings of its letters.
    #[test]
    fn word_on_product_expands_over_subsets(
        specs in prop::collection::vec(triangular_spec(2), 1..=5),
        a in poly_spec(3, 3, 3),
        b in poly_spec(3, 3, 3),
    ) {
        let r = xyz();
        let ds: Vec<_> = specs.iter().map(|s| from_images(&r, s)).collect();
        let (a, b) = (poly(&r, &a), poly(&r, &b));
        let refs: Vec<&Derivation> = ds.iter().collect();
        let lhs = apply_word(&refs, &(&a * &b)).unwrap().value().clone();
        let full = (1u32 << ds.len()) - 1;
        let mut rhs = r.zero();
        for mask in 0..=full {
            rhs = &rhs + &(&apply_subset(&ds, mask, &a) * &apply_subset(&ds, full ^ mask, &b));
        }
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn bracket_is_alternating_and_satisfies_jacobi(a in derivation_spec(2), b in derivation_spec(2), c in derivation_spec(2)) {
        let r = xyz();
        let (a, b, c) = (from_images(&r, &a), from_images(&r, &b), from_images(&r, &c));
        prop_assert!(a.bracket(&a).unwrap().is_zero());
        let ab = a.bracket(&b).unwrap();
        prop_assert_eq!(ab.add(&b.bracket(&a).unwrap()).unwrap(), Derivation::zero(&r));
        let j = a
            .bracket(&b.bracket(&c).unwrap())
            .unwrap()
            .add(&b.bracket(&c.bracket(&a).unwrap()).unwrap())
            .unwrap()
            .add(&c.bracket(&a.bracket(&b).unwrap()).unwrap())
            .unwrap();
        prop_assert!(j.is_zero(), "{}", j);
    }

    /// Bracket as an operator: `[D, E](p) = D(E(p)) - E(D(p))`.
    #[test]
    fn bracket_acts_as_commutator(a in derivation_spec(2), b in derivation_spec(2), p in poly_spec(3, 3, 3)) {
        let r = xyz();
        let (a, b, p) = (from_images(&r, &a), from_images(&r, &b), poly(&r, &p));
        let lhs = a.bracket(&b).unwrap().apply(&p).unwrap();
        let rhs = &a.apply(&b.apply(&p).unwrap()).unwrap() - &b.apply(&a.apply(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_extension_is_an_injective_lie_homomorphism(
        f in matrix_spec(3, -3, 3),
        g in matrix_spec(3, -3, 3),
        c in -4i64..=4,
    ) {
        let r = xyz();
        let k = Field::Rational;
        let (f, g) = (matrix(k, &f), matrix(k, &g));
        let vars = [0, 1, 2];
        let psi = |m: &derivlab::LinearOperator| extend_linear_to_derivation(m, &vars, &r).unwrap();
        let c = k.from_i64(c);
        prop_assert_eq!(psi(&f.add(&g.scale(&c)).unwrap()), psi(&f).add(&psi(&g).scale(&c)).unwrap());
        prop_assert_eq!(psi(&f.bracket(&g).unwrap()), psi(&f).bracket(&psi(&g)).unwrap());
        prop_assert_eq!(psi(&f).is_zero(), f.is_zero());
        prop_assert_eq!(linear_matrix(&psi(&f), &vars).unwrap(), f);
    }
}
