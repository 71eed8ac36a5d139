//! Lower-bound calculators for fibered surfaces of genus `g ≥ 2`.
//!
//! All rational quantities are exact. Only [`BoundReport::a_lower`] (a square
//! root) and the logarithmic bounds in [`ArithmeticReport`] are `f64`, and their
//! inputs are exact rationals or integers.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, to_f64, Rational};

fn require_genus(g: u32) -> Result<Rational> {
    if g < 2 {
        return Err(Error::GenusTooSmall {
            required: 2,
            found: i64::from(g),
        });
    }
    Ok(int(i64::from(g)))
}

/// `(4(g - 1)/g)·deg f_*ω`, the slope lower bound for `ω²`.
pub fn chx_lower_bound(g: u32, pushforward_degree: &Rational) -> Result<Rational> {
    let g = require_genus(g)?;
    Ok(int(4) * (&g - int(1)) * pushforward_degree / g)
}

/// `deg f_*ω = (ω² + δ)/12`.
pub fn noether_degree(omega_sq: &Rational, delta: &Rational) -> Rational {
    (omega_sq + delta) / int(12)
}

/// Local term of one fiber whose stable model is irreducible:
/// `-(g - 1)·δ_y/(3g)`.
pub fn irreducible_local_term(g: u32, delta_y: &Rational) -> Result<Rational> {
    let g = require_genus(g)?;
    Ok(-(&g - int(1)) * delta_y / (int(3) * g))
}

/// `(ω^a · ω^a)_a = ω² + Σ_y (local term of y)`.
pub fn admissible_omega_square(omega_sq: &Rational, local_terms: &[Rational]) -> Rational {
    local_terms.iter().fold(omega_sq.clone(), |acc, t| acc + t)
}

/// `(ω^a·ω^a)_a/(4(g - 1)) + ‖ω - (2g - 2)D‖²/(4g(g - 1))`.
pub fn nt_threshold(admissible_omega_sq: &Rational, g: u32, nt_norm_sq: &Rational) -> Result<Rational> {
    let g = require_genus(g)?;
    if nt_norm_sq.is_negative() {
        return Err(Error::NegativeInput("Néron–Tate squared norm"));
    }
    let g1 = &g - int(1);
    Ok(admissible_omega_sq / (int(4) * &g1) + nt_norm_sq / (int(4) * &g * g1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub genus: u32,
    pub delta: Rational,
    /// `ω² ≥ (g - 1)δ/(2g + 1)`
    pub omega_sq_lower: Rational,
    /// `(ω^a·ω^a)_a ≥ (g - 1)²δ/(3g(2g + 1))`
    pub admissible_omega_sq_lower: Rational,
    /// `A² ≥ (g - 1)δ/(12g(2g + 1))`, exact.
    pub a_lower_squared: Rational,
    /// `sqrt(a_lower_squared)`.
    pub a_lower: f64,
    /// The bounds need the stable model to have only geometrically irreducible
    /// fibers; always set, never assumed silently.
    pub assumes_irreducible_fibers: bool,
}

/// Bounds for a non-isotrivial semistable fibration over a curve with `δ` nodes
/// in its singular fibers.
pub fn function_field_bounds(g: u32, delta: &Rational) -> Result<BoundReport> {
    let gq = require_genus(g)?;
    if delta.is_negative() {
        return Err(Error::NegativeDelta(delta.clone()));
    }
    let g1 = &gq - int(1);
    let two_g_plus_1 = int(2) * &gq + int(1);

    // fixed point of ω² = chx(g, noether(ω², δ)), i.e. ω² = (g-1)(ω² + δ)/(3g)
    let omega_sq_lower = &g1 * delta / &two_g_plus_1;
    let total_local = irreducible_local_term(g, delta)?;
    let admissible_omega_sq_lower = admissible_omega_square(&omega_sq_lower, &[total_local]);
    debug_assert_eq!(
        admissible_omega_sq_lower,
        &g1 * &g1 * delta / (int(3) * &gq * &two_g_plus_1)
    );
    let a_lower_squared = &admissible_omega_sq_lower / (int(4) * &g1);
    Ok(BoundReport {
        genus: g,
        delta: delta.clone(),
        omega_sq_lower,
        admissible_omega_sq_lower,
        a_lower: to_f64(&a_lower_squared).sqrt(),
        a_lower_squared,
        assumes_irreducible_fibers: true,
    })
}

/// A critical place of an arithmetic surface: its node count and residue field
/// size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArithmeticFiberDatum {
    pub delta: u64,
    pub residue_cardinality: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArithmeticReport {
    pub genus: u32,
    /// `Σ (g - 1)/(3g)·δ_i·log N_i`; valid when the stable model has only
    /// geometrically irreducible fibers and the data lists every critical place.
    pub irreducible_fiber_bound: f64,
    pub assumes_irreducible_fibers: bool,
    /// `Σ log N_i/(6(g - 1))` over places with reducible geometric fibers.
    pub reducible_fiber_bound: f64,
    /// `log 2/(6(g - 1))`, valid whenever the surface is not smooth.
    pub nonsmooth_floor: f64,
}

pub fn arithmetic_bounds(g: u32, fibers: &[ArithmeticFiberDatum], reducible_places: &[u64]) -> Result<ArithmeticReport> {
    let gq = require_genus(g)?;
    if let Some(bad) = fibers
        .iter()
        .map(|f| f.residue_cardinality)
        .chain(reducible_places.iter().copied())
        .find(|&n| n < 2)
    {
        return Err(Error::BadResidueCardinality(bad));
    }
    let irreducible_weight = to_f64(&((&gq - int(1)) / (int(3) * &gq)));
    let irreducible_fiber_bound = fibers
        .iter()
        .map(|f| irreducible_weight * f.delta as f64 * (f.residue_cardinality as f64).ln())
        .sum();
    let six_g1 = 6.0 * f64::from(g - 1);
    let reducible_fiber_bound = reducible_places.iter().map(|&n| (n as f64).ln()).sum::<f64>() / six_g1;
    Ok(ArithmeticReport {
        genus: g,
        irreducible_fiber_bound,
        assumes_irreducible_fibers: true,
        reducible_fiber_bound,
        nonsmooth_floor: std::f64::consts::LN_2 / six_g1,
    })
}

/// `true` when `δ` is zero, in which case every function-field bound is zero.
pub fn is_trivial(report: &BoundReport) -> bool {
    report.delta.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ratio, zero};

    #[test]
    fn chx_examples() {
        assert_eq!(chx_lower_bound(2, &int(1)).unwrap(), int(2));
        assert_eq!(chx_lower_bound(3, &zero()).unwrap(), zero());
        assert_eq!(chx_lower_bound(5, &ratio(5, 2)).unwrap(), int(8));
        assert!(matches!(chx_lower_bound(1, &int(1)), Err(Error::GenusTooSmall { .. })));
    }

    #[test]
    fn noether_examples() {
        assert_eq!(noether_degree(&int(3), &int(9)), int(1));
        assert_eq!(noether_degree(&zero(), &zero()), zero());
        assert_eq!(noether_degree(&ratio(1, 5), &int(1)), ratio(1, 10));
    }

    #[test]
    fn function_field_examples() {
        let r = function_field_bounds(2, &int(1)).unwrap();
        assert_eq!(r.omega_sq_lower, ratio(1, 5));
        assert_eq!(r.admissible_omega_sq_lower, ratio(1, 30));
        assert_eq!(r.a_lower_squared, ratio(1, 120));
        assert!((r.a_lower - 0.091_287_092_917_527_69).abs() < 1e-15);
        assert!(r.assumes_irreducible_fibers);

        let r = function_field_bounds(2, &zero()).unwrap();
        assert!(is_trivial(&r));
        assert_eq!((r.omega_sq_lower.clone(), r.admissible_omega_sq_lower.clone()), (zero(), zero()));
        assert_eq!(r.a_lower, 0.0);

        let r = function_field_bounds(3, &int(10)).unwrap();
        assert_eq!(r.omega_sq_lower, ratio(20, 7));
        assert_eq!(r.admissible_omega_sq_lower, ratio(40, 63));

        assert!(matches!(function_field_bounds(1, &int(1)), Err(Error::GenusTooSmall { .. })));
        assert!(matches!(function_field_bounds(2, &int(-1)), Err(Error::NegativeDelta(_))));
    }

    #[test]
    fn admissible_square_examples() {
        assert_eq!(admissible_omega_square(&int(1), &[ratio(-1, 3)]), ratio(2, 3));
        assert_eq!(admissible_omega_square(&ratio(7, 2), &[]), ratio(7, 2));
        let term = irreducible_local_term(2, &int(1)).unwrap();
        assert_eq!(admissible_omega_square(&ratio(1, 5), &[term]), ratio(1, 30));
    }

    #[test]
    fn nt_examples() {
        assert_eq!(nt_threshold(&ratio(1, 30), 2, &zero()).unwrap(), ratio(1, 120));
        assert_eq!(nt_threshold(&zero(), 2, &int(8)).unwrap(), int(1));
        assert_eq!(nt_threshold(&zero(), 2, &zero()).unwrap(), zero());
        assert!(nt_threshold(&zero(), 2, &int(-1)).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let fiber = ArithmeticFiberDatum {
            delta: 1,
            residue_cardinality: 2,
        };
        let r = arithmetic_bounds(2, &[fiber], &[]).unwrap();
        assert!((r.irreducible_fiber_bound - std::f64::consts::LN_2 / 6.0).abs() < 1e-15);
        assert!((r.nonsmooth_floor - 0.115_524_530_093_324_2).abs() < 1e-12);
        assert_eq!(r.reducible_fiber_bound, 0.0);

        let r = arithmetic_bounds(3, &[], &[2, 3]).unwrap();
        assert!((r.reducible_fiber_bound - 6f64.ln() / 12.0).abs() < 1e-15);
        assert!((r.reducible_fiber_bound - 0.149_3).abs() < 1e-4);

        assert!(matches!(arithmetic_bounds(2, &[], &[1]), Err(Error::BadResidueCardinality(1))));
        assert!(matches!(arithmetic_bounds(1, &[], &[]), Err(Error::GenusTooSmall { .. })));
    }
}
