//! Factor elements of Z, F_p[x] and Q[x] into ideal documents.

use num_bigint::BigInt;
use reesnorm::arith::FactorBounds;
use reesnorm::backends::{factor_integer, factor_polynomial, parse_coefficients, ConcreteRing};
use reesnorm::FactoredIdeal;

fn show(what: &str, ideal: &FactoredIdeal) {
    println!("{what}");
    for (k, site) in ideal.spot().sites().iter().enumerate() {
        println!(
            "  {:<16} exponent {}  residue {} of degree {}",
            site.label,
            ideal.exponent(k),
            site.residue.label(),
            site.residue.degree()
        );
    }
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let bounds = FactorBounds::default();

    let i = factor_integer(&BigInt::from(72), &bounds)?;
    show("72 in Z", &i);
    assert_eq!(i.expanded_rees_integers(), [3u32, 2].map(Into::into));

    // A semiprime beyond trial division goes through Pollard rho.
    let big: BigInt = "1000036000099".parse()?;
    let small_trial = FactorBounds { trial_limit: 1000, ..bounds };
    show("1000003 * 1000033 in Z", &factor_integer(&big, &small_trial)?);

    let f2 = ConcreteRing::PolynomialOverPrimeField { p: 2 };
    let sq = factor_polynomial(&parse_coefficients("1,0,1")?, f2, &bounds)?;
    show("x^2 + 1 over F_2", &sq);
    assert_eq!(sq.expanded_rees_integers(), [2u32].map(Into::into));

    let cyclo = factor_polynomial(&parse_coefficients("1 0 0 -1")?, ConcreteRing::PolynomialOverRationals, &bounds)?;
    show("x^3 - 1 over Q", &cyclo);

    let f5 = ConcreteRing::PolynomialOverPrimeField { p: 5 };
    show("x^5 - x over F_5", &factor_polynomial(&parse_coefficients("1,0,0,0,-1,0")?, f5, &bounds)?);

    println!("{}", serde_json::to_string_pretty(&i)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
