//! One-step uniformization through a residue extension at a chosen site.

use reesnorm::multi::{degree_weighted_multiplicities, residue_degree_plan};
use reesnorm::{FactoredIdeal, Spot};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spot = Spot::simple(3);
    let ideals = vec![
        FactoredIdeal::from_u64s(spot.clone(), &[1, 2, 0])?,
        FactoredIdeal::from_u64s(spot.clone(), &[0, 0, 3])?,
    ];
    // Second support site of the first ideal.
    let plan = residue_degree_plan(&ideals, None, (0, 1))?;
    println!("degree {} evidence {:?}", plan.m, plan.evidence.kind);
    for (site, ts) in spot.sites().iter().zip(plan.system.per_site()) {
        for t in ts {
            println!("  {}: {} x (f = {}, e = {}) over {}", site.label, t.count, t.f, t.e, t.residue.label());
        }
    }
    for (k, pushed) in plan.results.iter().enumerate() {
        println!("  ideal {}: {:?}", k + 1, degree_weighted_multiplicities(pushed, &plan.residue_degrees));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
