//! Fits all six families to both embedded datasets and prints comparison
//! tables.

use egl::competitors::Family;
use egl::datasets::builtin;
use egl::estimation::FitOptions;
use egl::gof::compare;

fn main() -> egl::Result<()> {
    let options = FitOptions::default();
    for name in ["bladder", "bank"] {
        let data = builtin(name)?;
        println!("{name} (n = {})", data.len());
        println!(
            "{:<6} {:>10} {:>10} {:>10} {:>8}  {:<5} params",
            "model", "-LL", "AIC", "BIC", "K-S", "conv"
        );
        for row in compare(&Family::ALL, data.values(), &options)? {
            match (&row.report, &row.fit) {
                (Some(r), Some(f)) => println!(
                    "{:<6} {:>10.4} {:>10.3} {:>10.3} {:>8.4}  {:<5} {:?}",
                    row.family.label(),
                    r.neg_loglik,
                    r.aic,
                    r.bic,
                    r.ks,
                    f.converged,
                    r.model.params()
                ),
                _ => println!(
                    "{:<6} failed: {}",
                    row.family.label(),
                    row.error.as_deref().unwrap_or("")
                ),
            }
        }
        println!();
    }
    Ok(())
}
