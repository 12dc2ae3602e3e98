//! The unit-cotangent-bundle derivation: a Calabi-Yau cap carved out of the
//! K3 lattice for the unit cotangent bundle of a genus-g surface, the
//! complement classification, and the forced invariants of exact fillings.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    classify_indefinite_unimodular, cokernel_group, diag_lattice, e8, form_invariants,
    hyperbolic, k3, orthogonal_complement, orthogonal_complement_basis, CokernelGroup,
    FormInvariants, IntegerLattice, Parity,
};
use crate::matrix::{Int, IntMat};

#[derive(Clone, Debug)]
pub struct CotangentCapData {
    pub g: u32,
    pub a: Vec<Int>,
    pub b: Vec<Int>,
    /// gA + B, the genus-g surface class.
    pub l: Vec<Int>,
    /// (g-2)A - B, orthogonal to L.
    pub orth_class: Vec<Int>,
    /// 2(-E8) + 2H + <2-2g> + 0^{2g}.
    pub cap_form: IntegerLattice,
}

fn check_g(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::input("genus must be at least 2"));
    }
    Ok(())
}

fn scale_add(c1: i64, v1: &[Int], c2: i64, v2: &[Int]) -> Vec<Int> {
    v1.iter()
        .zip(v2)
        .map(|(a, b)| Int::from(c1) * a + Int::from(c2) * b)
        .collect()
}

pub fn cap_lattice_data(g: u32) -> Result<CotangentCapData> {
    check_g(g)?;
    let ambient = k3();
    let n = ambient.size();
    // x, y: hyperbolic basis of the first H summand; A = y, B = x - y
    let mut x = vec![Int::zero(); n];
    x[0] = Int::one();
    let mut y = vec![Int::zero(); n];
    y[1] = Int::one();
    let a = y.clone();
    let b = scale_add(1, &x, -1, &y);

    assert!(ambient.pair(&a, &a).is_zero());
    assert!(ambient.pair(&a, &b).is_one());
    assert_eq!(ambient.pair(&b, &b), Int::from(-2));

    let gi = g as i64;
    let l = scale_add(gi, &a, 1, &b);
    let orth_class = scale_add(gi - 2, &a, -1, &b);
    assert_eq!(ambient.pair(&l, &l), Int::from(2 * gi - 2));
    assert_eq!(ambient.pair(&orth_class, &orth_class), Int::from(2 - 2 * gi));
    assert!(ambient.pair(&l, &orth_class).is_zero());

    let me8 = e8().negate();
    let h = hyperbolic();
    let zeros = IntegerLattice::new(IntMat::zeros(2 * g as usize, 2 * g as usize))
        .expect("zero block is symmetric");
    let cap_form = IntegerLattice::direct_sum(&[
        me8.clone(),
        me8,
        h.clone(),
        h,
        diag_lattice(&[2 - 2 * gi])?,
        zeros,
    ]);
    assert_eq!(cap_form.size(), 2 * g as usize + 21);

    Ok(CotangentCapData { g, a, b, l, orth_class, cap_form })
}

#[derive(Clone, Debug)]
pub struct ComplementProfile {
    pub first_invariants: FormInvariants,
    pub first_name: String,
    pub second_invariants: FormInvariants,
    pub second_name: String,
}

/// Classifies the orthogonal complement of span{A, B} in the K3 lattice and
/// the complement of that complement. Both classifications are recomputed
/// from the actual Gram matrices.
pub fn complement_profile(g: u32) -> Result<ComplementProfile> {
    let data = cap_lattice_data(g)?;
    let ambient = k3();
    let sub = vec![data.a.clone(), data.b.clone()];
    let first = orthogonal_complement(&ambient, &sub)?;
    let first_invariants = form_invariants(&first);
    if first_invariants.parity != Parity::Even || !first_invariants.is_unimodular() {
        return Err(Error::domain("complement is not even unimodular"));
    }
    let first_class = classify_indefinite_unimodular(
        first_invariants.rank,
        first_invariants.sigma(),
        first_invariants.parity,
    )?;

    let first_basis = orthogonal_complement_basis(&ambient, &sub)?;
    let second = orthogonal_complement(&ambient, &first_basis)?;
    let second_invariants = form_invariants(&second);
    let second_class = classify_indefinite_unimodular(
        second_invariants.rank,
        second_invariants.sigma(),
        second_invariants.parity,
    )?;

    Ok(ComplementProfile {
        first_invariants,
        first_name: first_class.to_string(),
        second_invariants,
        second_name: second_class.to_string(),
    })
}

#[derive(Clone, Debug)]
pub struct ExactFillingProfile {
    pub g: u32,
    pub e: i64,
    pub sigma: i64,
    pub h1: String,
    pub h2: String,
    pub h3: String,
    pub generator_square: i64,
    pub c1_vanishes: bool,
    pub cap_e: i64,
    pub cap_sigma: i64,
    pub notes: Vec<String>,
}

/// Invariants forced on every exact filling of the unit cotangent bundle,
/// verified for Novikov consistency against the cap.
pub fn exact_filling_profile(g: u32) -> Result<ExactFillingProfile> {
    let data = cap_lattice_data(g)?;
    let gi = g as i64;
    let cap_inv = form_invariants(&data.cap_form);
    let cap_sigma = cap_inv.sigma();
    // cap: b1 = b3 = 0 and b2 = 2g + 21, so e = 1 + b2
    let cap_e = 1 + data.cap_form.size() as i64;
    let e = 2 - 2 * gi;
    let sigma = 1;
    if cap_e + e != 24 {
        return Err(Error::domain("Euler characteristics do not glue to 24"));
    }
    if cap_sigma + sigma != -16 {
        return Err(Error::domain("signatures do not glue to -16"));
    }
    Ok(ExactFillingProfile {
        g,
        e,
        sigma,
        h1: format!("Z^{}", 2 * g),
        h2: "Z".into(),
        h3: "0".into(),
        generator_square: 2 * gi - 2,
        c1_vanishes: true,
        cap_e,
        cap_sigma,
        notes: vec![
            "H2 is infinite cyclic: torsion-free by the half-exact pairing argument".into(),
            "H3 vanishes: the filling deformation-retracts rel boundary data".into(),
            format!("Novikov: {cap_e} + {e} = 24 and {cap_sigma} + {sigma} = -16"),
        ],
    })
}

#[derive(Clone, Debug)]
pub struct TorsionMatch {
    pub accept: bool,
    pub computed: CokernelGroup,
    pub expected_torsion: u64,
}

/// A degree-k candidate produces boundary torsion Z/(k^2(2g-2)); only k = 1
/// matches the required Z/(2g-2).
pub fn torsion_match(g: u32, k: u32) -> Result<TorsionMatch> {
    check_g(g)?;
    if k < 1 {
        return Err(Error::input("multiplicity k must be at least 1"));
    }
    let gi = g as i64;
    let ki = k as i64;
    let presenting = IntMat::from_i64(&[vec![ki * ki * (2 * gi - 2)]]);
    let computed = cokernel_group(&presenting);
    let expected = (2 * gi - 2) as u64;
    let accept = computed.free_rank == 0 && computed.torsion_coefficients == vec![expected];
    Ok(TorsionMatch { accept, computed, expected_torsion: expected })
}
