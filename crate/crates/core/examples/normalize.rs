//! Make an ideal a power of a radical ideal with both inductive towers.

use reesnorm::normalization::split_one_step;
use reesnorm::{normalize, prime_elim_step, FactoredIdeal, Strategy};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let i = FactoredIdeal::on_simple_spot(&[12, 0, 8, 18])?;
    for strategy in [Strategy::PrimeElim, Strategy::SplitOne] {
        let r = normalize(&i, strategy)?;
        println!("{strategy:?}: d = {}, h = {}, {} steps", r.d, r.h, r.chain.len());
        for (k, step) in r.chain.steps().iter().enumerate() {
            println!(
                "  step {}: degree {:>3}, {} -> {} sites, {:?}",
                k + 1,
                step.degree(),
                step.system().spot().site_count(),
                step.result_spot().site_count(),
                step.evidence().kind
            );
        }
        let pushed = r.chain.pushforward(&i)?;
        assert_eq!(pushed, r.radical.pow(&r.h)?);
    }

    // Single steps, by hand.
    let j = FactoredIdeal::on_simple_spot(&[4, 3])?;
    let out = prime_elim_step(&j, &2u32.into())?;
    println!("eliminating 2 from (4, 3): h = {}, exponents {:?}", out.h, out.ideal.exponents());
    let out = split_one_step(&j, 1)?;
    println!("splitting site 2 of (4, 3): h = {}, exponents {:?}", out.h, out.ideal.exponents());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
