//! Initial phase length T0 for uniform-sphere exploration, with and without
//! the finite-arm feature scale.

use alb::cli::{cmd_t0, T0Mode};

fn main() -> alb::Result<()> {
    println!("{:>4} {:>14} {:>18}", "d", "continuum", "finite (T=1e5,K=10)");
    for d in [2, 5, 10, 20, 50] {
        let continuum = cmd_t0(d, 0.1, 0.5, T0Mode::Continuum)?;
        let finite = cmd_t0(d, 0.1, 0.5, T0Mode::Finite { tau: 1.0, horizon: 100_000, arms: 10 })?;
        println!("{d:>4} {continuum:>14} {finite:>18}");
    }
    Ok(())
}
