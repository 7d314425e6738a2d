//! Reports round-trip through JSON and are re-verified on load; edits are caught.

use reesnorm::{normalize, verify_report, FactoredIdeal, NormalizationReport, Strategy};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let i = FactoredIdeal::on_simple_spot(&[3, 2])?;
    let report = normalize(&i, Strategy::PrimeElim)?;
    let text = serde_json::to_string_pretty(&report)?;
    println!("{} bytes of report JSON", text.len());

    let mut back: NormalizationReport = serde_json::from_str(&text)?;
    back.oracle_verified = false;
    verify_report(&mut back).map_err(|f| f.to_string())?;
    println!("reloaded report verifies: {}", back.oracle_verified);
    assert_eq!(serde_json::to_string_pretty(&back)?, text);

    // Claim a larger h and the expansion disagrees.
    let mut tampered = back.clone();
    tampered.h *= 2u32;
    let failure = verify_report(&mut tampered).unwrap_err();
    println!("tampered report: {failure}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
