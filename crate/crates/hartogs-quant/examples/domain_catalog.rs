//! Tour of the bounded symmetric domain catalog.
//!
//! Each catalogued base domain carries an invariant tuple (complex dimension
//! `d`, rank `r`, root multiplicities `a` and `b`, genus, Euclidean volume)
//! and an admissible exponent set for the fiber weight: the discrete ladder
//! `{0, a/2, ..., (r-1)a/2}` together with the open half-line above its top.
//! This example prints the tuple for one representative of every type,
//! checks the two classical identities
//!
//! ```text
//! genus = (r - 1) a + b + 2,      d = r (r - 1) a / 2 + r b + r
//! ```
//!
//! and probes the admissible set near its boundary points.

use hartogs_quant::domain::{wallach_contains, CartanDomainSpec};

fn main() {
    let catalog = [
        "I:1,1", "I:1,3", "I:2,2", "II:2", "II:3", "III:5", "IV:3", "IV:4",
    ];

    println!(
        "{:>7} {:>4} {:>3} {:>3} {:>3} {:>7} {:>12}",
        "domain", "d", "r", "a", "b", "genus", "volume"
    );
    for name in catalog {
        let spec = CartanDomainSpec::parse(name).expect("catalogued domain");
        println!(
            "{:>7} {:>4} {:>3} {:>3} {:>3} {:>7} {:>12.6}",
            name, spec.d, spec.r, spec.a, spec.b, spec.genus, spec.volume
        );

        let genus_identity = (spec.r as f64 - 1.0) * spec.a as f64 + spec.b as f64 + 2.0;
        let dim_identity =
            spec.r * (spec.r - 1) * spec.a as usize / 2 + spec.r * spec.b as usize + spec.r;
        assert_eq!(spec.genus, genus_identity, "genus identity for {name}");
        assert_eq!(spec.d, dim_identity, "dimension identity for {name}");
    }

    println!();
    println!("admissible exponent sets near the discrete/continuous boundary:");
    for name in ["I:1,1", "I:2,2", "III:5"] {
        let spec = CartanDomainSpec::parse(name).expect("catalogued domain");
        let top = (spec.r as f64 - 1.0) * spec.a as f64 / 2.0;
        let probes = [top / 2.0, top, top + 0.4, spec.mu0()];
        let verdicts: Vec<String> = probes
            .iter()
            .map(|&mu| {
                format!(
                    "mu={mu:.2}:{}",
                    if wallach_contains(&spec, mu) {
                        "yes"
                    } else {
                        "no"
                    }
                )
            })
            .collect();
        println!(
            "  {:>6}  ladder top {top:.1}  {}",
            name,
            verdicts.join("  ")
        );
    }

    // The rank-one ball is special: every positive weight is admissible.
    let ball = CartanDomainSpec::parse("I:1,2").expect("ball");
    assert!(wallach_contains(&ball, 0.05));
    assert!(wallach_contains(&ball, 17.0));
    println!();
    println!(
        "rank-one ball I:1,2 admits every positive weight; critical weight mu0 = {}",
        ball.mu0()
    );
}
