//! Wreath products T[I_n] and their unrelatedness blocks.

use ultrahom::fraisse::{are_isomorphic, enumerate_up_to_iso};
use ultrahom::structure::{unrelatedness_classes, wreath, FinStructure, Kind};

fn main() {
    let c3 = FinStructure::cycle3();
    let w = wreath(&c3, &FinStructure::edgeless(2)).unwrap();
    println!("C3[I2] is a {:?} with {} arrows", w.classify(), w.arrow_count());
    println!("blocks: {:?}", unrelatedness_classes(&w));
    print!("{}", w.to_dot("c3_i2"));

    let one = FinStructure::edgeless(1);
    for t in enumerate_up_to_iso(4, Kind::Tournament).unwrap() {
        let right = wreath(&t, &one).unwrap();
        let left = wreath(&one, &t).unwrap();
        println!(
            "{:?}: T[I1] ~ T {}, I1[T] ~ T {}",
            t.out_degrees(),
            are_isomorphic(&right, &t).is_some(),
            are_isomorphic(&left, &t).is_some()
        );
    }
    // Inside a block nothing is related, so blocks are the ∥-classes plus =.
    let t = &enumerate_up_to_iso(4, Kind::Tournament).unwrap()[3];
    let big = wreath(t, &FinStructure::edgeless(3)).unwrap();
    let sizes: Vec<usize> = unrelatedness_classes(&big).unwrap().iter().map(Vec::len).collect();
    println!("T4[I3] block sizes: {sizes:?}");
}
