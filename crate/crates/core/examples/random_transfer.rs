//! The BIT graph, its definable transfer to a tournament and extension
//! witnesses.

use ultrahom::random::{check_extension_property, find_witness, transfer_invariant, Presentation, WitnessQuery};

fn main() {
    let g = Presentation::bit();
    let t = g.transfer();
    println!("{g}: 1 ~ 3 is {}, {t}: 1 -> 3 is {}", g.related(1, 3), t.related(1, 3));

    let q = WitnessQuery::new(&[0, 1, 2], &[0, 2], 64, false).unwrap();
    for p in [&g, &t] {
        let r = find_witness(p, &q);
        println!("{p}: least v related to 0, 2 and not to 1 is {:?} after {} candidates", r.witness(), r.scanned);
    }

    let inv = transfer_invariant(&g, 2, &[0, 1, 2, 3, 4], 256).unwrap();
    println!(
        "extension sets agree on {} queries ({} comparisons): {}",
        inv.queries, inv.comparisons, inv.passed
    );

    let ext = check_extension_property(&t, 2, &[0, 1, 2, 3], 1 << 10, 3);
    println!("{t} has 3 witnesses for all {} queries: {}", ext.queries, ext.passed);

    print!("{}", t.prefix(4).to_dot("t5"));
}
