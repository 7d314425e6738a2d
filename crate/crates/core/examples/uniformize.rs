//! Equalize every Rees integer of one ideal.

use reesnorm::{rees_profile, uniformize, FactoredIdeal};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let i = FactoredIdeal::on_simple_spot(&[1, 2, 3])?;
    let u = uniformize(&i)?;
    let pushed = u.report.chain.pushforward(&i)?;
    let profile = rees_profile(&pushed);
    println!("m = {}", u.m);
    for (value, mult) in profile.multiplicities() {
        println!("  Rees integer {value} on {mult} maximal ideals");
    }
    assert_eq!(profile.multiplicities().len(), 1);
    assert_eq!(profile.multiplicities()[0].0, u.m);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
