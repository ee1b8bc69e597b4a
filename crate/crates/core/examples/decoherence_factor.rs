//! The Ohmic-like dephasing rate, its sign changes and the resulting
//! decoherence factor.
//!
//!     cargo run --example decoherence_factor

use qthermo::dynamics::{ohmic_rate, DecoherenceTable, OhmicParams};
use qthermo::nonmarkov::gamma_zero_crossings;

fn main() -> qthermo::Result<()> {
    for s in [1.0, 2.5, 3.5, 6.0] {
        let p = OhmicParams::new(s, 1.0)?;
        let table = DecoherenceTable::new(p)?;
        println!("s = {s}: zeros of the rate at {:?}", gamma_zero_crossings(p));
        for t in [0.5, 1.0, 2.0, 5.0, 20.0] {
            println!("  t = {t:5}: rate {:+.6}, Γ = {:.8e}", ohmic_rate(t, p), table.factor(t)?);
        }
        if s > 1.0 {
            println!("  Γ(∞) = {:.8e}", table.factor(f64::INFINITY)?);
        }
    }
    Ok(())
}
