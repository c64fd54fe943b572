//! The epsilon function and its polynomial structure in the weight.
//!
//! For every catalogued cell the weighted-kernel epsilon function is, at a
//! fixed point pair, a *monic polynomial of degree d + 1* in the weight
//! `alpha`. This example demonstrates three layers of that structure on the
//! unit disk and on a matrix base:
//!
//! 1. worked closed forms on the disk — for `mu = 1` the epsilon function is
//!    `(alpha - 1)(alpha - 2)` at every point, and for `mu = 2` at a pair
//!    with unit two-point invariant it evaluates to `7` at `alpha = 4`;
//! 2. exact-fit reconstruction — sampling `d + 2` weights determines the
//!    polynomial, and further weights confirm it to near machine precision;
//! 3. the subleading coefficient — extracted from the polynomial and
//!    cross-checked against its independent combinatorial closed form.

use hartogs_quant::hartogs::{CartanHartogsParams, HartogsPoint, PointPair};
use hartogs_quant::quantization;
use hartogs_quant::{CartanDomainSpec, C64};

fn disk(mu: f64) -> CartanHartogsParams {
    CartanHartogsParams::new(CartanDomainSpec::parse("I:1,1").unwrap(), mu).unwrap()
}

fn main() {
    // Layer 1: worked disk values.
    let params = disk(1.0);
    let origin = HartogsPoint::origin(&params);
    let pair = PointPair {
        x: origin.clone(),
        y: origin,
    };
    for alpha in [3.0, 4.0, 5.5] {
        let eps = quantization::epsilon_eval(&params, alpha, &pair).expect("epsilon");
        let closed = (alpha - 1.0) * (alpha - 2.0);
        println!(
            "disk mu=1: epsilon({alpha}) = {:.12} vs (a-1)(a-2) = {closed:.12}",
            eps.re
        );
        assert!((eps.re - closed).abs() < 1e-10 && eps.im.abs() < 1e-12);
    }

    let params = disk(2.0);
    let origin = HartogsPoint::origin(&params);
    let pair = PointPair {
        x: origin.clone(),
        y: origin,
    };
    let eps = quantization::epsilon_eval(&params, 4.0, &pair).expect("epsilon");
    println!(
        "disk mu=2: epsilon(4) at the origin = {:.12} (expected 7)",
        eps.re
    );
    assert!((eps.re - 7.0).abs() < 1e-12);

    // Layer 2: the polynomial is monic of degree d + 1, and it reproduces
    // direct evaluations at weights it never saw.
    let poly = quantization::epsilon_alpha_polynomial(&params, &pair).expect("expansion");
    println!(
        "disk mu=2: monic expansion coefficients {:?}",
        poly.coeffs.iter().map(|c| c.re).collect::<Vec<_>>()
    );
    assert_eq!(poly.degree(), params.dim());
    assert_eq!(poly.coeffs[0], C64::new(1.0, 0.0));
    for alpha in [2.5, 7.25, 11.0] {
        let direct = quantization::epsilon_eval(&params, alpha, &pair).expect("epsilon");
        let dev = (poly.eval(alpha) - direct).norm() / direct.norm();
        assert!(
            dev < 1e-12,
            "polynomial must match direct evaluation, dev {dev:.3e}"
        );
    }
    println!("disk mu=2: polynomial reproduces unseen weights to < 1e-12");

    // Layer 3: subleading coefficient on a rank-two matrix base, two routes.
    let base = CartanDomainSpec::parse("II:2").unwrap();
    let params = CartanHartogsParams::new(base, 0.75).unwrap();
    let origin = HartogsPoint::origin(&params);
    let pair = PointPair {
        x: origin.clone(),
        y: origin,
    };
    let poly = quantization::epsilon_alpha_polynomial(&params, &pair).expect("expansion");
    let b_closed = quantization::coefficient_b(&params, &pair).expect("closed form");
    let dev = (poly.coefficient_b() - b_closed).norm();
    println!(
        "II:2 mu=0.75: subleading coefficient {:.12} (fit) vs {:.12} (closed), dev {dev:.3e}",
        poly.coefficient_b().re,
        b_closed.re
    );
    assert!(dev < 1e-10);

    // The subleading coefficient is half the scalar curvature. At the
    // critical weight of II:2 the metric is Einstein, so the scalar
    // curvature is the constant -(d + 2)(d + 1) = -20 and B = -10.
    assert_eq!(
        params.base.mu0(),
        params.mu,
        "0.75 is the critical weight of II:2"
    );
    let curv = hartogs_quant::metric::curvature(&params, &HartogsPoint::origin(&params), 1e-4)
        .expect("curvature");
    println!(
        "II:2 mu=0.75: scalar curvature {:.6} -> half {:.6} vs B = {:.6}",
        curv.scalar,
        curv.scalar / 2.0,
        poly.coefficient_b().re
    );
    assert!((poly.coefficient_b().re - curv.scalar / 2.0).abs() < 1e-3);
}
