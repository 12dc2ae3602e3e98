//! Bound engines: the Kodaira-dimension sign table, strong/Stein filling
//! bounds driven by the cap's base-genus invariants, exact-filling bounds
//! through a Calabi-Yau cap, and additivity helpers.

use crate::error::{Error, Result};
use crate::surfaces::SurfaceClass;

/// Numerical invariants of a cap used by the bound formulas. The base-genus
/// invariants are `None` when no realized filling certifies them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapInvariants {
    pub e: i64,
    pub sigma: i64,
    pub b1: i64,
    pub b1_plus_b3: i64,
    pub g_max: Option<i64>,
    pub g_min: Option<i64>,
    /// Certified upper bound for the minimal genus of a positively
    /// self-intersecting surface in the cap.
    pub g_s_upper: Option<i64>,
}

impl CapInvariants {
    pub fn validated(self) -> Result<Self> {
        if let (Some(max), Some(min)) = (self.g_max, self.g_min) {
            if max < min {
                return Err(Error::input("g_max must be at least g_min"));
            }
        }
        if let (Some(max), Some(gs)) = (self.g_max, self.g_s_upper) {
            if gs < max {
                return Err(Error::input("g_s upper bound must be at least g_max"));
            }
        }
        Ok(self)
    }

    pub fn alpha(&self) -> i64 {
        4 - (self.e + self.sigma)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingBounds {
    /// Closed interval containing e + sigma of every strong filling.
    pub e_plus_sigma_interval: (i64, i64),
    pub b1_plus_b3_upper: Option<i64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KodairaDimension {
    MinusInfinity,
    Zero,
    One,
    Two,
}

impl KodairaDimension {
    pub fn as_str(&self) -> &'static str {
        match self {
            KodairaDimension::MinusInfinity => "-infinity",
            KodairaDimension::Zero => "0",
            KodairaDimension::One => "1",
            KodairaDimension::Two => "2",
        }
    }
}

/// Kodaira dimension of a minimal symplectic 4-manifold from the signs of
/// K.[omega] and K.K.
pub fn kodaira_dimension(k_dot_omega: Sign, k_sq: Sign) -> Result<KodairaDimension> {
    match (k_dot_omega, k_sq) {
        (Sign::Neg, _) | (_, Sign::Neg) => Ok(KodairaDimension::MinusInfinity),
        (Sign::Zero, Sign::Zero) => Ok(KodairaDimension::Zero),
        (Sign::Pos, Sign::Zero) => Ok(KodairaDimension::One),
        (Sign::Pos, Sign::Pos) => Ok(KodairaDimension::Two),
        (Sign::Zero, Sign::Pos) => Err(Error::domain(
            "no minimal symplectic 4-manifold has K.[omega] = 0 and K.K > 0",
        )),
    }
}

/// Interval for e + sigma of strong fillings and an upper bound for b1 + b3,
/// from the cap's certified base-genus range.
pub fn strong_filling_bounds(cap: &CapInvariants, b1_boundary: i64) -> Result<FillingBounds> {
    let (Some(g_max), Some(g_min)) = (cap.g_max, cap.g_min) else {
        return Err(Error::domain(
            "strong filling bounds need certified g_max and g_min",
        ));
    };
    let alpha = cap.alpha();
    Ok(FillingBounds {
        e_plus_sigma_interval: (alpha - 4 * g_max, alpha - 4 * g_min),
        b1_plus_b3_upper: Some(4 * g_max + 2 * b1_boundary - cap.b1_plus_b3),
        notes: vec![format!(
            "alpha = 4 - (e+sigma)(cap) = {alpha}; interval width 4*(g_max - g_min)"
        )],
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinFillingBounds {
    pub g_stein_max_upper: i64,
    pub bounds: FillingBounds,
}

/// Stein fillings: the maximal base genus is capped by floor(b1(cap)/2).
pub fn stein_filling_bounds(cap: &CapInvariants) -> Result<SteinFillingBounds> {
    let g_upper = cap.b1.div_euclid(2);
    let mut notes = vec![format!("g_stein_max <= floor(b1/2) = {g_upper}")];
    let g_min = match cap.g_min {
        Some(m) => m.max(0),
        None => {
            notes.push("g_min unknown; Stein minimum defaulted to 0".into());
            0
        }
    };
    if g_min > g_upper {
        return Err(Error::domain(format!(
            "certified g_min {g_min} exceeds the Stein genus cap {g_upper}"
        )));
    }
    let alpha = cap.alpha();
    Ok(SteinFillingBounds {
        g_stein_max_upper: g_upper,
        bounds: FillingBounds {
            e_plus_sigma_interval: (alpha - 4 * g_upper, alpha - 4 * g_min),
            b1_plus_b3_upper: None,
            notes,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyFillingBounds {
    /// Lower bound for c1(X)^2 in the uniruled branch: s - 2(2g - 2).
    pub c1_square_lower: i64,
    /// (b1, b2) caps for the closed manifold X in the uniruled branch.
    pub uniruled_profile: (i64, i64),
    /// (b1, b2) caps over the Calabi-Yau models.
    pub cy_profile: (i64, i64),
    /// Combined (b1, b2, b3) caps for X.
    pub x_betti_upper: (i64, i64, i64),
    /// (b1, b2, b3) caps for the exact filling after Mayer-Vietoris
    /// subtraction.
    pub filling_betti_upper: (i64, i64, i64),
    pub notes: Vec<String>,
}

/// Betti-number bounds for exact fillings glued to a Calabi-Yau cap that
/// contains a genus-g surface of square s >= g - 1.
pub fn cy_exact_filling_bounds(
    surface: &SurfaceClass,
    cap_betti: (i64, i64, i64),
    b1_boundary: i64,
) -> Result<CyFillingBounds> {
    let g = surface.genus as i64;
    let s = surface.square;
    if s < g - 1 {
        return Err(Error::domain(format!(
            "surface square {s} is below genus - 1 = {}; resolve more copies first",
            g - 1
        )));
    }
    // uniruled branch: b2+(X) = 1 and c1^2 >= s - 2(2g-2), so
    // b2-(X) <= 9 - c1^2 and b2(X) <= 10 - c1_lower; base genus <= g.
    let c1_lower = s - 2 * (2 * g - 2);
    let uniruled = (2 * g, 10 - c1_lower);
    // Calabi-Yau branch: K3 (0,22,e24), Enriques (0,10,e12),
    // torus bundles over the torus (b1 <= 4, b2 <= 6, e = 0).
    let cy_models: [(i64, i64); 3] = [(0, 22), (0, 10), (4, 6)];
    let cy = (
        cy_models.iter().map(|m| m.0).max().unwrap(),
        cy_models.iter().map(|m| m.1).max().unwrap(),
    );
    let b1_x = uniruled.0.max(cy.0);
    let b2_x = uniruled.1.max(cy.1);
    let b3_x = b1_x; // Poincare duality for closed oriented X
    let notes = vec![
        "uniruled branch has b2+(X) = 1".into(),
        format!("cap betti numbers {cap_betti:?} recorded; crude Mayer-Vietoris subtraction b_i(N) <= b_i(X) + b1(Y) does not use them"),
    ];
    Ok(CyFillingBounds {
        c1_square_lower: c1_lower,
        uniruled_profile: uniruled,
        cy_profile: cy,
        x_betti_upper: (b1_x, b2_x, b3_x),
        filling_betti_upper: (b1_x + b1_boundary, b2_x + b1_boundary, b3_x),
        notes,
    })
}

/// e + sigma of a closed uniruled manifold depends only on the base genus.
pub fn uniruled_e_sigma(base_genus: i64) -> Result<i64> {
    if base_genus < 0 {
        return Err(Error::input("base genus must be nonnegative"));
    }
    Ok(4 - 4 * base_genus)
}

/// Componentwise (e, sigma) sum over pieces glued along 3-manifolds.
pub fn novikov_sum(parts: &[(i64, i64)]) -> Result<(i64, i64)> {
    if parts.is_empty() {
        return Err(Error::input("Novikov sum of an empty list"));
    }
    Ok(parts
        .iter()
        .fold((0, 0), |(e, s), &(pe, ps)| (e + pe, s + ps)))
}

/// The null-directions bound b2^0(Z) <= b1(boundary Z).
pub fn b2_zero_bound_check(b2_zero: i64, b1_boundary: i64) -> bool {
    b2_zero <= b1_boundary
}
