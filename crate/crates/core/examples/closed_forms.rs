//! The single systems the two towers compose to.

use reesnorm::{closed_form, compose_chain, normalize, ClosedFormMode, FactoredIdeal, Strategy};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let i = FactoredIdeal::on_simple_spot(&[2, 3, 1, 0])?;
    for (strategy, mode) in [(Strategy::SplitOne, ClosedFormMode::Product), (Strategy::PrimeElim, ClosedFormMode::Lcm)] {
        let cf = closed_form(&i, mode)?;
        let composed = compose_chain(&normalize(&i, strategy)?.chain)?;
        println!("{mode:?}: degree {}", cf.degree());
        for (site, ts) in i.spot().sites().iter().zip(cf.per_site()) {
            for t in ts {
                println!("  {}: {} primes with e = {}", site.label, t.count, t.e);
            }
        }
        assert!(composed.system.canonically_equal(&cf));
    }

    // The one-step strategies carry the same data.
    let r = normalize(&i, Strategy::ClosedFormLcm)?;
    println!("closed-form lcm: h = {} in {} step", r.h, r.chain.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
