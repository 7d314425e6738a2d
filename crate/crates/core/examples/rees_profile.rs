//! Rees integers, their multiplicities, and the gcd normalization I = I0^d.

use reesnorm::{gcd_normalize, radical, rees_profile, FactoredIdeal};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let i = FactoredIdeal::on_simple_spot(&[6, 0, 4, 6])?;
    let p = rees_profile(&i);
    for e in &p.entries {
        println!("{}: {}", e.site, e.rees_integer);
    }
    println!("gcd {} lcm {} product {}", p.gcd, p.lcm, p.product());
    for (value, mult) in p.multiplicities() {
        println!("  {value} occurs {mult} times");
    }

    let (i0, d) = gcd_normalize(&i);
    println!("I = I0^{d} with I0 exponents {:?}", i0.exponents());
    assert_eq!(i0.pow(&d)?, i);

    let r = radical(&i);
    println!("radical exponents {:?}", r.exponents());
    assert!(r.is_radical());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
