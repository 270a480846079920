//! Exact decisions on points a + bπ of the circle.

use ultrahom::angles::{
    approx, int, rational_in_arc, ratio, shorter_arc, simplest_rational_between, Class, GenAngle, Model, PiOracle,
};

fn main() {
    let oracle = PiOracle::global();
    let e = oracle.enclosure(2);
    println!("level 2 encloses pi in an interval of width {:.3e}", approx(&GenAngle::from_rational(e.width())));

    // 355/113 is famously close to π, but still decidable.
    let close = GenAngle::from_rational(ratio(355, 113));
    println!("355/113 > pi: {}", close > GenAngle::pi_times(int(1)));

    let seven: GenAngle = "7".parse().unwrap();
    println!("7 canonicalizes to {}", seven.canonicalize());

    let q = simplest_rational_between(&GenAngle::pi_times(int(1)), &"22/7".parse().unwrap());
    println!("simplest rational in (pi, 22/7): {q}");

    // A rational of class B of S(3) on the arc from 2 to 5 (through 3, 4).
    let (s, t) = shorter_arc(&GenAngle::from_rational(int(2)), &GenAngle::from_rational(int(5))).unwrap();
    let b = rational_in_arc(&s, &t, Some((Model::S3, Class::B))).unwrap();
    println!("class-B rational between 2 and 5: {b} (class {:?})", Model::S3.class_of(&b));

    for (x, y) in [(0, 3), (3, 0), (0, 2)] {
        println!(
            "{x} -> {y}: S(2) {}, S(3) {}",
            Model::S2.arrow(&int(x), &int(y)),
            Model::S3.arrow(&int(x), &int(y))
        );
    }
}
