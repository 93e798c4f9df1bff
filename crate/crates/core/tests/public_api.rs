//! Cross-module identities through the public API, including a constant
//! field that is not a prime field.

use lchi_core::carlitz::{pi_qm1, sbar};
use lchi_core::ffield::{fq_arith, Fe, Field, FieldSpec, FqElem, FqOp};
use lchi_core::lambda::{lambda_solve, min_nu};
use lchi_core::lseries::{lchit, zeta, zeta_special_check, LParams};
use lchi_core::series::{laurent_of_ratfunc, TSeries, TruncLaurent};
use lchi_core::uexp::{bc_ratio, chi_u_sum, d2_solve, modular_h, useries_tau};

#[test]
fn f4_examples() {
    let f4 = Field::prime_power(2, 2).unwrap();
    assert_eq!(f4.spec(), &FieldSpec::new(2, 2, vec![1, 1, 1]).unwrap());
    let x = FqElem::new(&f4, Fe(2));
    let x1 = FqElem::new(&f4, Fe(3));
    assert_eq!(fq_arith(&x, &x1, FqOp::Mul).unwrap().value, Fe::ONE);
    // over F_4 itself the q-power map is the identity; over F_2 it squares
    assert_eq!(x.frobenius().value, Fe(2));
    let (e, _) = Field::prime_power(2, 1).unwrap().extension(2).unwrap();
    assert_eq!(e.spec().modulus, [1, 1, 1]);
    assert_eq!(FqElem::new(&e, Fe(2)).frobenius().value, Fe(3));
}

#[test]
fn zeta_special_values_over_f4() {
    let f = Field::prime_power(2, 2).unwrap();
    let r = zeta_special_check(&f, 1, 16).unwrap();
    assert!(r.is_zero() && r.prec() >= 16);
    let prec = 12;
    let pi = pi_qm1(&f, prec);
    let bc = laurent_of_ratfunc(&bc_ratio(&f, 3).unwrap(), prec + 4).unwrap();
    assert!(bc.mul(&pi).sub(&zeta(&f, 3, prec).unwrap()).is_zero());
}

#[test]
fn master_identity_over_f4() {
    let f = Field::prime_power(2, 2).unwrap();
    let (nt, prec) = (3, 10);
    let l = lchit(&f, &LParams::new(1, nt, prec).unwrap()).unwrap();
    let x = sbar(&f, nt, prec + 1).mul_t_minus(&TruncLaurent::theta(&f));
    let r = l.mul(&x).add(&TSeries::constant(TruncLaurent::one(&f), nt));
    assert!(r.is_zero() && r.prec() >= prec);
}

#[test]
fn vectorial_identity_over_f4() {
    let f = Field::prime_power(2, 2).unwrap();
    let nu = 16;
    let x = d2_solve(&f, nu).unwrap();
    assert!(x.is_poly());
    let h = modular_h(&f, nu).unwrap();
    let r = useries_tau(&x, 1)
        .truncate(nu)
        .mul(&h)
        .add(&chi_u_sum(&f, 1, nu).unwrap());
    assert!(r.is_zero());
}

#[test]
fn lambda_one_over_f4() {
    let f = Field::prime_power(2, 2).unwrap();
    let r = lambda_solve(&f, 1, min_nu(4, 1)).unwrap();
    assert!(r.lambda.neg().is_one());
}
