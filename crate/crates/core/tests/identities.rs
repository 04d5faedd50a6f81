//! Cross-module identities through the public API only.

use qmacdo_core::certify::{certify_commutator, CertifyMode};
use qmacdo_core::operators::{deformed_mr, deformed_ns, Family, MrRoute};
use qmacdo_core::partition::{fat_hook_contains, partitions_up_to};
use qmacdo_core::spectra::{eigen_residual, jacobian, newton_residual, wronski_residual};
use qmacdo_core::superpoly::{is_in_lambda_nm, super_p};
use qmacdo_core::{Params, Rat};

fn eval(q: i64, t: i64) -> Params {
    Params::eval(Rat::from(q), Rat::from(t)).unwrap()
}

#[test]
fn super_polynomials_are_eigenfunctions_of_both_families() {
    let p = Params::symbolic();
    for lam in partitions_up_to(3) {
        for family in [Family::Ns, Family::Mr] {
            for hat in [false, true] {
                for r in 1..=2 {
                    let res = eigen_residual(family, hat, r, &lam, 1, 1, &p).unwrap();
                    assert!(res.is_zero(), "{family:?} hat={hat} r={r} lam={lam}: {res}");
                }
            }
        }
    }
}

#[test]
fn eigen_residual_refuses_partitions_outside_the_hook() {
    let p = Params::symbolic();
    let lam = "2,2".parse().unwrap();
    assert!(!fat_hook_contains(1, 1, &lam));
    assert!(eigen_residual(Family::Ns, false, 1, &lam, 1, 1, &p).is_err());
}

#[test]
fn families_commute_at_an_integer_point() {
    let p = eval(2, 3);
    let (n, m) = (2, 1);
    let h1 = deformed_mr(1, n, m, &p, MrRoute::Direct);
    let d2 = deformed_ns(2, n, m, &p);
    for mode in [CertifyMode::Coefficients, CertifyMode::Specialization] {
        let c = certify_commutator(&h1, &d2, n, m, mode).unwrap();
        assert!(c.zero, "{mode:?}: pivot {:?}", c.pivot);
    }
}

#[test]
fn super_polynomials_satisfy_the_quasi_invariance() {
    let p = Params::symbolic();
    for lam in partitions_up_to(4).into_iter().filter(|l| fat_hook_contains(2, 1, l)) {
        assert!(is_in_lambda_nm(&super_p(&lam, 2, 1, &p), 2, 1, &p), "lam={lam}");
    }
}

#[test]
fn generating_function_relations_hold() {
    let p = Params::symbolic();
    for k in 1..=4 {
        assert!(newton_residual(k, 1, 2, &p).is_zero(), "newton r={k}");
        assert!(wronski_residual(k, 1, 2, &p).is_zero(), "wronski k={k}");
    }
}

#[test]
fn spectral_jacobian_is_nonzero() {
    let p = Params::symbolic();
    for (n, m) in [(1, 1), (2, 1), (1, 2)] {
        assert!(!jacobian(n, m, &p).is_zero(), "({n},{m})");
    }
}
