//! Run the CS0-CS3 axiom checks on every built-in algebra.
//!
//! CS0 is finiteness of the product support, CS1 the sesquilinearity rule
//! for the module derivation, CS2 conformal skew-symmetry, CS3 the
//! conformal Jacobi identity. Checking over the constants ring suffices:
//! base change transports the axioms to every coefficient ring.

use confalg::builders::{builtin, BUILTIN_NAMES};
use confalg::check_axioms;

fn main() {
    for name in BUILTIN_NAMES {
        let table = builtin(name).expect("built-in");
        let report = check_axioms(&table, 6, 4, 2).expect("checker runs");
        println!(
            "{} ({} generators, support bound {})",
            table.name(),
            table.basis().len(),
            report.support_bound
        );
        print!("{}", report);
        assert!(report.passed(), "{} should satisfy all axioms", name);
        println!();
    }
    println!("all built-ins satisfy CS0-CS3");
}
