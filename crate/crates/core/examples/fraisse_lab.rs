//! Isomorphism, games, ultrahomogeneity and the Fraïssé class properties.

use ultrahom::angles::Model;
use ultrahom::circular::CircSample;
use ultrahom::fraisse::{
    are_isomorphic, check_class_properties, ef_game, enumerate_up_to_iso, is_ultrahomogeneous, StructureClass,
};
use ultrahom::structure::{FinStructure, Kind};

fn main() {
    for n in 1..=5 {
        let t = enumerate_up_to_iso(n, Kind::Tournament).unwrap();
        let scores: Vec<Vec<usize>> = t
            .iter()
            .map(|x| {
                let mut s = x.out_degrees();
                s.sort_unstable();
                s
            })
            .collect();
        println!("{n}: {} tournaments, score sequences {scores:?}", t.len());
    }

    for t in enumerate_up_to_iso(4, Kind::Tournament).unwrap() {
        let r = is_ultrahomogeneous(&t);
        println!(
            "{:?} ultrahomogeneous: {} ({} automorphisms, counterexample {:?})",
            t.out_degrees(),
            r.holds,
            r.automorphisms,
            r.counterexample.map(|p| p.pairs().to_vec())
        );
    }
    println!("C3 ultrahomogeneous: {}", is_ultrahomogeneous(&FinStructure::cycle3()).holds);

    let (c3, chain) = (FinStructure::cycle3(), FinStructure::chain(3));
    println!("C3 ~ 3-chain: {:?}", are_isomorphic(&c3, &chain));
    for rounds in 1..=3 {
        println!("EF game C3 vs 3-chain, {rounds} rounds: {:?}", ef_game(&c3, &chain, rounds));
    }

    let x = CircSample::from_spec(Model::S2, &"seed:1:60".parse().unwrap()).unwrap();
    let y = CircSample::from_spec(Model::S2, &"seed:2:60".parse().unwrap()).unwrap();
    for rounds in 1..=3 {
        let w = ef_game(&x.order_structure(), &y.order_structure(), rounds);
        println!("two 60-point rho samples, {rounds} rounds: {w:?}");
    }

    for kind in [Kind::Tournament, Kind::Graph] {
        let r = check_class_properties(&StructureClass::AllOf(kind), 3);
        println!("{kind:?}: HP {} JEP {} AP {} ({} AP instances)", r.hp.passed, r.jep.passed, r.ap.passed, r.ap.checked);
    }
    let single = check_class_properties(&StructureClass::listed(vec![chain]), 3);
    println!("{{3-chain}}: HP fails on subset {:?}", single.hp.failure.map(|f| f.subset));
}
