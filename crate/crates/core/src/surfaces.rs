//! Homology-class calculus for embedded surfaces: adjunction genus,
//! smoothing/copy formulas, the adjunction-inequality certificate and
//! base-genus bounds for ruled classes.

use crate::error::{Error, Result};

/// An embedded surface remembered only by its genus and self-intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceClass {
    pub genus: u64,
    pub square: i64,
}

/// Genus from the adjunction formula: 2g - 2 = square - c1_pairing.
pub fn adjunction_genus(square: i64, c1_pairing: i64) -> Result<u64> {
    let twice = square - c1_pairing;
    if twice % 2 != 0 {
        return Err(Error::domain("square - c1 pairing must be even"));
    }
    let g = (twice + 2) / 2;
    u64::try_from(g).map_err(|_| Error::domain(format!("adjunction genus {g} is negative")))
}

/// Smooths n parallel copies of S into one surface:
/// genus = n g + n(n-1)s/2 - (n-1), square = n^2 s.
pub fn resolve_copies(s: &SurfaceClass, n: u64) -> Result<SurfaceClass> {
    if n < 1 {
        return Err(Error::input("copy count must be at least 1"));
    }
    if s.square < 0 {
        return Err(Error::domain("copies must intersect positively (square >= 0)"));
    }
    let n = n as i128;
    let g = s.genus as i128;
    let sq = s.square as i128;
    let genus = n * g + n * (n - 1) * sq / 2 - (n - 1);
    let square = n * n * sq;
    Ok(SurfaceClass {
        genus: u64::try_from(genus).map_err(|_| Error::domain("resolved genus overflows"))?,
        square: i64::try_from(square).map_err(|_| Error::domain("resolved square overflows"))?,
    })
}

/// Smooths two surfaces meeting transversally and positively in m points:
/// genus = g1 + g2 + m - 1, square = s1 + s2 + 2m.
pub fn resolve_pair(s1: &SurfaceClass, s2: &SurfaceClass, m: u64) -> Result<SurfaceClass> {
    if m < 1 {
        return Err(Error::input("intersection count must be at least 1"));
    }
    Ok(SurfaceClass {
        genus: s1.genus + s2.genus + m - 1,
        square: s1.square + s2.square + 2 * m as i64,
    })
}

/// Smallest n such that the n-fold smoothing satisfies square >= genus - 1.
pub fn min_copies_adjunction(s: &SurfaceClass) -> Result<u64> {
    if s.square < 1 {
        return Err(Error::domain("needs square >= 1; no copy count is guaranteed otherwise"));
    }
    let mut n = 1u64;
    loop {
        let r = resolve_copies(s, n)?;
        if r.square >= r.genus as i64 - 1 {
            return Ok(n);
        }
        n += 1;
    }
}

/// Adjunction-inequality certificate: square >= max(2g-1, 0), with a
/// nontriviality requirement when the square vanishes.
pub fn uniruled_certificate(s: &SurfaceClass, nontrivial_class: bool) -> bool {
    let threshold = (2 * s.genus as i64 - 1).max(0);
    s.square >= threshold && (s.square > 0 || (s.genus == 0 && nontrivial_class))
}

/// A class a_f f + a_s s + sum a_i e_i in a blown-up ruled manifold over a
/// genus-h base: f^2 = s^2 = 0, f.s = 1, e_i^2 = -1, all other pairings zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuledClass {
    pub base_genus: u64,
    pub coeff_f: i64,
    pub coeff_s: i64,
    pub coeff_e: Vec<i64>,
}

pub fn ruled_square(c: &RuledClass) -> i64 {
    2 * c.coeff_f * c.coeff_s - c.coeff_e.iter().map(|e| e * e).sum::<i64>()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGenusBound {
    /// Degree of the induced map to the base: the section coefficient.
    pub degree: i64,
    /// Conclusion: base genus <= this value.
    pub base_genus_upper: u64,
}

/// A surface of positive square in a ruled manifold bounds the base genus by
/// its own genus; the section coefficient is the covering degree.
pub fn base_genus_bound(c: &RuledClass, surface_genus: u64) -> Result<BaseGenusBound> {
    let sq = ruled_square(c);
    if sq <= 0 {
        return Err(Error::domain(format!(
            "class has square {sq}; the bound needs positive square"
        )));
    }
    debug_assert!(c.coeff_s != 0, "positive square forces a section coefficient");
    Ok(BaseGenusBound { degree: c.coeff_s, base_genus_upper: surface_genus })
}

/// Largest base genus h compatible with 2 - 2*total_genus <= degree*(2 - 2h).
pub fn riemann_hurwitz_bound(total_genus: i64, degree: i64) -> Result<i64> {
    if degree < 1 {
        return Err(Error::input("degree must be at least 1"));
    }
    Ok((total_genus - 1).div_euclid(degree) + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeiyiCheck {
    pub value: i64,
    pub satisfied: bool,
}

/// Evaluates (K + D)^2 = c1^2 - 2 c1.D + D^2 and tests nonnegativity.
/// The hypotheses under which nonnegativity is forced are the caller's
/// responsibility.
pub fn weiyi_check(c1_sq: i64, c1_dot_d: i64, d_sq: i64) -> WeiyiCheck {
    let value = c1_sq - 2 * c1_dot_d + d_sq;
    WeiyiCheck { value, satisfied: value >= 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn adjunction_genus_examples() {
        assert_eq!(adjunction_genus(0, 0).unwrap(), 1);
        for g in 0..10i64 {
            assert_eq!(adjunction_genus(2 * g - 2, 0).unwrap(), g as u64);
        }
        assert_eq!(adjunction_genus(4, 2).unwrap(), 2);
        assert!(adjunction_genus(1, 0).is_err()); // parity
        assert!(adjunction_genus(-6, 0).is_err()); // negative genus
    }

    #[test]
    fn resolve_copies_examples() {
        let s = SurfaceClass { genus: 1, square: 1 };
        assert_eq!(resolve_copies(&s, 1).unwrap(), s);
        assert_eq!(resolve_copies(&s, 2).unwrap(), SurfaceClass { genus: 2, square: 4 });
        assert!(resolve_copies(&SurfaceClass { genus: 0, square: -1 }, 2).is_err());
        assert!(resolve_copies(&s, 0).is_err());
    }

    #[test]
    fn resolve_copies_square_exact() {
        for s in 0..=50i64 {
            for n in 1..=50u64 {
                let r = resolve_copies(&SurfaceClass { genus: 3, square: s }, n).unwrap();
                assert_eq!(r.square as i128, (n as i128) * (n as i128) * (s as i128));
            }
        }
    }

    #[test]
    fn copies_eventually_beat_genus() {
        // square - (genus - 1) grows without bound once square >= 1
        let s = SurfaceClass { genus: 5, square: 1 };
        let n = min_copies_adjunction(&s).unwrap();
        let at = resolve_copies(&s, n).unwrap();
        assert!(at.square >= at.genus as i64 - 1);
        let far = resolve_copies(&s, n + 20).unwrap();
        assert!(far.square - (far.genus as i64 - 1) > at.square - (at.genus as i64 - 1));
    }

    #[test]
    fn resolve_pair_examples() {
        let sphere = SurfaceClass { genus: 0, square: 0 };
        assert_eq!(resolve_pair(&sphere, &sphere, 1).unwrap(), SurfaceClass { genus: 0, square: 2 });

        let torus = SurfaceClass { genus: 1, square: 0 };
        let neg2 = SurfaceClass { genus: 0, square: -2 };
        assert_eq!(resolve_pair(&torus, &neg2, 1).unwrap(), SurfaceClass { genus: 1, square: 0 });

        // folding g tori into a (-2)-sphere one at a time gives (g, 2g-2)
        let mut acc = neg2;
        for g in 1..=8u64 {
            acc = resolve_pair(&acc, &torus, 1).unwrap();
            assert_eq!(acc, SurfaceClass { genus: g, square: 2 * g as i64 - 2 });
        }

        // symmetry
        let a = SurfaceClass { genus: 2, square: 3 };
        let b = SurfaceClass { genus: 1, square: -1 };
        assert_eq!(resolve_pair(&a, &b, 2).unwrap(), resolve_pair(&b, &a, 2).unwrap());
        assert!(resolve_pair(&a, &b, 0).is_err());
    }

    #[test]
    fn min_copies_examples() {
        assert_eq!(min_copies_adjunction(&SurfaceClass { genus: 0, square: 1 }).unwrap(), 1);
        assert_eq!(min_copies_adjunction(&SurfaceClass { genus: 3, square: 1 }).unwrap(), 3);
        assert_eq!(min_copies_adjunction(&SurfaceClass { genus: 2, square: 4 }).unwrap(), 1);
        assert!(min_copies_adjunction(&SurfaceClass { genus: 1, square: 0 }).is_err());
    }

    #[test]
    fn min_copies_is_minimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..60 {
            let s = SurfaceClass { genus: rng.gen_range(0..8), square: rng.gen_range(1..6) };
            let n = min_copies_adjunction(&s).unwrap();
            let at = resolve_copies(&s, n).unwrap();
            assert!(at.square >= at.genus as i64 - 1);
            if n > 1 {
                let before = resolve_copies(&s, n - 1).unwrap();
                assert!(before.square < before.genus as i64 - 1);
            }
        }
    }

    #[test]
    fn uniruled_certificate_examples() {
        assert!(uniruled_certificate(&SurfaceClass { genus: 0, square: 0 }, true));
        assert!(!uniruled_certificate(&SurfaceClass { genus: 0, square: 0 }, false));
        assert!(uniruled_certificate(&SurfaceClass { genus: 1, square: 1 }, false));
        assert!(!uniruled_certificate(&SurfaceClass { genus: 2, square: 2 }, true));
    }

    #[test]
    fn uniruled_certificate_monotone_in_square() {
        for g in 0..6u64 {
            let mut prev = false;
            for s in -3..10i64 {
                let cur = uniruled_certificate(&SurfaceClass { genus: g, square: s }, true);
                assert!(!(prev && !cur), "flipped true -> false at g={g}, s={s}");
                prev = cur;
            }
        }
    }

    #[test]
    fn ruled_square_examples() {
        let fs = RuledClass { base_genus: 0, coeff_f: 1, coeff_s: 1, coeff_e: vec![] };
        assert_eq!(ruled_square(&fs), 2);
        let e1 = RuledClass { base_genus: 0, coeff_f: 0, coeff_s: 0, coeff_e: vec![1] };
        assert_eq!(ruled_square(&e1), -1);
        // fiber-and-exceptional classes never have positive square
        let c = RuledClass { base_genus: 1, coeff_f: 7, coeff_s: 0, coeff_e: vec![2, -3, 1] };
        assert!(ruled_square(&c) <= 0);
    }

    #[test]
    fn base_genus_bound_examples() {
        let fs = RuledClass { base_genus: 0, coeff_f: 1, coeff_s: 1, coeff_e: vec![] };
        let b = base_genus_bound(&fs, 1).unwrap();
        assert_eq!((b.degree, b.base_genus_upper), (1, 1));

        let c = RuledClass { base_genus: 2, coeff_f: 3, coeff_s: 2, coeff_e: vec![] };
        let b = base_genus_bound(&c, 5).unwrap();
        assert_eq!((b.degree, b.base_genus_upper), (2, 5));

        let bad = RuledClass { base_genus: 0, coeff_f: 2, coeff_s: 0, coeff_e: vec![1] };
        assert!(base_genus_bound(&bad, 3).is_err());
    }

    #[test]
    fn positive_square_forces_nonzero_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut seen = 0;
        for _ in 0..500 {
            let c = RuledClass {
                base_genus: rng.gen_range(0..4),
                coeff_f: rng.gen_range(-5..=5),
                coeff_s: rng.gen_range(-5..=5),
                coeff_e: (0..rng.gen_range(0..4)).map(|_| rng.gen_range(-3i64..=3)).collect(),
            };
            if ruled_square(&c) > 0 {
                seen += 1;
                let b = base_genus_bound(&c, 2).unwrap();
                assert_ne!(b.degree, 0);
            }
        }
        assert!(seen > 20, "property test needs positive-square samples");
    }

    #[test]
    fn riemann_hurwitz_examples() {
        for n in 1..=10i64 {
            assert_eq!(riemann_hurwitz_bound(2 * n, 2).unwrap(), n);
        }
        assert_eq!(riemann_hurwitz_bound(5, 1).unwrap(), 5);
        assert_eq!(riemann_hurwitz_bound(5, 2).unwrap(), 3);
        assert!(riemann_hurwitz_bound(5, 0).is_err());
        // bound is exactly the largest h with 2 - 2*tg <= degree * (2 - 2h)
        for tg in 0..12i64 {
            for d in 1..5i64 {
                let h = riemann_hurwitz_bound(tg, d).unwrap();
                assert!(2 - 2 * tg <= d * (2 - 2 * h));
                assert!(2 - 2 * tg > d * (2 - 2 * (h + 1)));
            }
        }
    }

    #[test]
    fn weiyi_examples() {
        assert_eq!(weiyi_check(0, 0, 0), WeiyiCheck { value: 0, satisfied: true });
        assert_eq!(weiyi_check(1, 3, 4), WeiyiCheck { value: -1, satisfied: false });
        // satisfied check rearranges to c1^2 >= s - 2(2g~ - 2) under adjunction
        let (c1_sq, s, g) = (3i64, 5i64, 2i64);
        let c1_dot = s + 2 - 2 * g; // adjunction
        let w = weiyi_check(c1_sq, c1_dot, s);
        assert_eq!(w.satisfied, c1_sq >= s - 2 * (2 * g - 2));
    }
}
