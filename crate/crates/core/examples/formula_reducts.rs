//! Parsing, printing and evaluating formulas; reducts defined by the
//! builtin formulas.

use ultrahom::angles::Model;
use ultrahom::circular::CircSample;
use ultrahom::formula::{Builtin, Formula};
use ultrahom::structure::FinStructure;

fn main() {
    for b in Builtin::ALL {
        println!("{:8} {}", b.name(), b.formula());
    }

    let f = Formula::parse("E w. R(u,w) & R(w,v) & u != v").unwrap();
    let c3 = FinStructure::cycle3();
    println!("{f}: free {:?}", f.free_vars());
    println!("in C3 with u=0, v=2: {}", f.eval(&c3, &[("u", 0), ("v", 2)]).unwrap());

    let d = CircSample::new(Model::S3, ["0", "1", "3", "-2", "5/2"].iter().map(|s| s.parse().unwrap()).collect())
        .unwrap();
    let order = Builtin::Lambda3.formula().reduct(&d.arrow_structure()).unwrap();
    let back = Builtin::Mu3.formula().reduct(&order).unwrap();
    println!("lambda3 gives tau: {}", order == d.order_structure());
    println!("mu3 recovers the arrow: {}", back == d.arrow_structure());

    match Formula::parse("R(u,v) & ") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error at byte {}: {e}", e.offset()),
    }
}
