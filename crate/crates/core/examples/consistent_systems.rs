//! Build an m-consistent system by hand, check Krull's conditions, extend the
//! spot, push an ideal forward and compose two layers.

use reesnorm::system::extend;
use reesnorm::{
    apply_system, check_realizability, compose_chain, ConsistentSystem, ExtensionChain, FactoredIdeal, Spot, Triple,
};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spot = Spot::simple(2);
    let k = spot.site(0).residue.clone();

    // Degree 4: M1 gets two primes with e = 2; M2 one prime with residue degree 2 and e = 2.
    let sys = ConsistentSystem::new(
        spot.clone(),
        4u32,
        vec![
            vec![Triple::unextended(&k, 2u32, 2u32)],
            vec![Triple::new(k.extension(&2u32.into()), 2u32, 2u32, 1u32)],
        ],
    )?;
    let evidence = check_realizability(&sys)?;
    println!("evidence {:?}: {}", evidence.kind, evidence.detail);

    let i = FactoredIdeal::from_u64s(spot.clone(), &[3, 1])?;
    let (step, pushed) = apply_system(&sys, &i)?;
    for (site, e) in step.result_spot().sites().iter().zip(pushed.exponents()) {
        println!("  {} (x{}) exponent {e}", site.label, site.multiplicity);
    }

    // A broken system is rejected with the offending site.
    let bad = ConsistentSystem::new(spot.clone(), 3u32, vec![vec![Triple::unextended(&k, 2u32, 1u32)], vec![Triple::unextended(&k, 3u32, 1u32)]])?;
    println!("invalid: {}", bad.validate().unwrap_err());

    // Two layers compose into one system of degree 8. The second ramifies
    // the first site and splits the other.
    let mut chain = ExtensionChain::new(spot.clone());
    chain.push(step)?;
    let top = chain.top().clone();
    let per_site = top
        .sites()
        .iter()
        .enumerate()
        .map(|(n, s)| match n {
            0 => vec![Triple::unextended(&s.residue, 2u32, 1u32)],
            _ => vec![Triple::unextended(&s.residue, 1u32, 2u32)],
        })
        .collect();
    chain.push(extend(&ConsistentSystem::new(top, 2u32, per_site)?)?)?;
    let composed = compose_chain(&chain)?;
    println!("composed degree {} evidence {:?}", composed.system.degree(), composed.evidence.kind);
    assert_eq!(*composed.system.degree(), 8u32.into());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
