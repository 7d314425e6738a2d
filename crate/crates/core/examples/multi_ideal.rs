//! Uniformize several ideals with one tower.

use num_bigint::BigUint;
use reesnorm::multi::{check_supports, execute_plan, plan_multi, SupportVerdict};
use reesnorm::{FactoredIdeal, Spot};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spot = Spot::simple(4);
    let ideals = vec![
        FactoredIdeal::from_u64s(spot.clone(), &[1, 2, 0, 0])?,
        FactoredIdeal::from_u64s(spot.clone(), &[0, 0, 3, 0])?,
        FactoredIdeal::from_u64s(spot.clone(), &[0, 0, 0, 4])?,
    ];
    let plan = execute_plan(&plan_multi(&ideals, None)?)?;
    println!("m = {}, {} steps", plan.m, plan.chain.len());
    for (k, row) in plan.estars.iter().enumerate() {
        let es: Vec<String> = row.iter().map(|e| format!("{}:{}", e.site, e.estar)).collect();
        println!("  ideal {} target {}: e* {}", k + 1, plan.targets[k], es.join(" "));
    }
    for (k, v) in plan.verdicts.iter().flatten().enumerate() {
        println!("  ideal {}: all {} (x{})", k + 1, v.target, v.multiplicity);
    }
    assert!(plan.is_verified());

    // Shared sites are fine when the targets scale with the exponents.
    let two = FactoredIdeal::from_u64s(spot.clone(), &[2, 0, 0, 0])?;
    let three = FactoredIdeal::from_u64s(spot.clone(), &[3, 0, 0, 0])?;
    let t = |a: u32, b: u32| vec![BigUint::from(a), BigUint::from(b)];
    let pair = [two, three];
    assert_eq!(check_supports(&pair, &t(2, 3))?, SupportVerdict::Compatible);
    println!("targets (2, 5): {:?}", check_supports(&pair, &t(2, 5))?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
