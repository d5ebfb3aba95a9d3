//! Sum-rule classification of the three reference weight sets.
//!
//! Usage: `cargo run --example sum_rules`

use nnlsg::graph::{check_integrability_sum_rule, check_transparency_sum_rule, gammas_from_betas};
use nnlsg::{BondId, BondMap};

fn main() -> nnlsg::Result<()> {
    let sets = [
        ("integrable", BondMap::new(6.0, 6.0, 2.0, 2.0)),
        ("transparent", BondMap::new(2.0, 6.0, 2.0, 6.0)),
        ("broken", BondMap::new(2.0, 2.0, 0.5, 1.0)),
    ];
    for (name, beta) in sets {
        let i = check_integrability_sum_rule(&beta)?;
        let t = check_transparency_sum_rule(&beta)?;
        let g = gammas_from_betas(&beta)?;
        let gammas: Vec<String> = BondId::ALL.iter().map(|&b| format!("{b}: {:.4}", g[b])).collect();
        println!(
            "{name:12} integrable {:5} ({:.3e})  transparent {:5} ({:.3e})",
            i.holds, i.residual, t.holds, t.residual
        );
        println!("{:12} gamma {}", "", gammas.join(", "));
    }
    Ok(())
}
