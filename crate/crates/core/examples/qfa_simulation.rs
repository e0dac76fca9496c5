//! Runs the automaton for MOD_p over word lengths and compares with the closed form.

use shallow_qfa::analysis::epsilon_of;
use shallow_qfa::coeffsets::gen_cyclic;
use shallow_qfa::qfa::{initial_state, max_error_sweep, run_word_closed_form};
use shallow_qfa::PrimeModulus;

fn main() -> shallow_qfa::Result<()> {
    let p = PrimeModulus::new(31)?;
    let set = gen_cyclic(p, 4)?;
    let mut state = initial_state(&set);
    println!("j  accept      closed form");
    for j in 0..=2 * p.get() {
        if j % 4 == 0 || j % p.get() == 0 {
            println!(
                "{j:<3}{:.9} {:.9}",
                state.accept_probability(),
                run_word_closed_form(&set, j)
            );
        }
        state.step();
    }
    let (worst, j) = max_error_sweep(&set);
    println!(
        "worst rejected word a^{j}: {worst:.9}; eps = {:.9}",
        epsilon_of(&set).epsilon
    );
    Ok(())
}
