//! Projective equivalence, class generators and fullness.

use reesnorm::equivalence::{class_generator, is_proj_equivalent, proj_full_check};
use reesnorm::{normalize, FactoredIdeal, Spot, Strategy};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spot = Spot::simple(2);
    let i = FactoredIdeal::from_u64s(spot.clone(), &[2, 4])?;
    let j = FactoredIdeal::from_u64s(spot.clone(), &[3, 6])?;
    let v = is_proj_equivalent(&i, &j)?;
    let w = v.witness.as_ref().expect("equivalent");
    println!("(2,4) ~ (3,6): I^{} = J^{}", w.m, w.n);

    let k = FactoredIdeal::from_u64s(spot.clone(), &[2, 3])?;
    println!("(2,4) vs (2,3): {}", is_proj_equivalent(&i, &k)?.reason.unwrap_or_default());

    let (g, d) = class_generator(&i);
    println!("class generator {:?}, I = G^{d}", g.exponents());
    println!("{}", serde_json::to_string(&proj_full_check(&i))?);

    // The normal form is equivalent to the pushed-forward ideal.
    let r = normalize(&k, Strategy::PrimeElim)?;
    let v = is_proj_equivalent(&r.radical, &r.chain.pushforward(&k)?)?;
    println!("H ~ pushforward: witness {:?}", v.witness);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
