//! Order-`p` systems: every `p`-fold composition of base maps, in
//! coefficient space.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ifs::{contraction_bound, fixed_point, IfsMap, IfsSystem, MapCoefficients};

/// Default ceiling on the number of maps of a composed system.
pub const DEFAULT_MAP_CAP: usize = 1_000_000;

/// A composed system is an ordinary flat system of higher order.
pub type ComposedSystem = IfsSystem;

/// How composed maps get their contraction constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConstantRule {
    /// Product of the factors' constants.
    #[default]
    Product,
    /// The smaller of the product and the closed-form bound evaluated on
    /// the composed coefficients. Both are valid Lipschitz bounds.
    Tightened,
}

/// Coefficients of `outer ∘ inner`. The composition of two affine-bilinear
/// maps is again affine-bilinear.
pub fn compose_pair(outer: &MapCoefficients, inner: &MapCoefficients) -> MapCoefficients {
    let (o, i) = (outer, inner);
    MapCoefficients {
        a: o.a * i.a,
        b: o.a * i.b + o.b,
        c: o.c * i.c,
        d: o.c * i.d + o.d,
        e: o.e * i.a + o.g * i.e + o.alpha * i.a * i.d,
        f: o.f * i.c + o.g * i.f + o.alpha * i.b * i.c,
        g: o.g * i.g,
        alpha: o.alpha * i.a * i.c + o.g * i.alpha,
        beta: o.e * i.b + o.f * i.d + o.alpha * i.b * i.d + o.g * i.beta + o.beta,
    }
}

/// Number of maps of the order-`order` system over `base_len` maps, or
/// `None` on overflow.
pub fn system_size(base_len: usize, order: u32) -> Option<u128> {
    (base_len as u128).checked_pow(order)
}

/// All `N^order` compositions `F_{i_1} ∘ … ∘ F_{i_p}` of the base maps,
/// lexicographic in `(i_1, …, i_p)` with the outermost factor most
/// significant.
///
/// Built by repeatedly composing the base system on the outside of the
/// previous order. Fixed points are recomputed from the composed
/// coefficients.
pub fn compose_system(base: &IfsSystem, order: u32, cap: usize, rule: ConstantRule) -> Result<ComposedSystem> {
    assert!(order >= 1, "composition order must be at least 1");
    assert_eq!(base.order, 1, "compose_system expects a base system");
    let requested = system_size(base.len(), order).unwrap_or(u128::MAX);
    if requested > cap as u128 {
        return Err(Error::SystemTooLarge { requested, cap });
    }
    if order == 1 {
        return Ok(base.clone());
    }

    let metric = base.metric;
    let mut current = base.maps.clone();
    for _ in 1..order {
        current = base
            .maps
            .par_iter()
            .flat_map_iter(|outer| {
                current.iter().map(move |inner| {
                    let coeffs = compose_pair(&outer.coeffs, &inner.coeffs);
                    let product = outer.contraction * inner.contraction;
                    let contraction = match rule {
                        ConstantRule::Product => product,
                        ConstantRule::Tightened => product.min(contraction_bound(&coeffs, &metric)),
                    };
                    let mut factors = Vec::with_capacity(inner.factors.len() + 1);
                    factors.push(outer.factors[0]);
                    factors.extend_from_slice(&inner.factors);
                    IfsMap {
                        factors,
                        coeffs,
                        contraction,
                        fixed_point: fixed_point(&coeffs),
                    }
                })
            })
            .collect();
    }

    Ok(IfsSystem {
        order,
        maps: current,
        metric,
        domain: base.domain,
    })
}
