//! ρ and τ on samples of S(2) and S(3), density witnesses and a
//! Tarski–Vaught probe.

use ultrahom::angles::{int, parse_rational, Class, Model};
use ultrahom::circular::{
    density_patterns, close_under_density, density_witness, qn_label, tarski_vaught_check, tau, CircSample, SampleSpec,
};

fn main() {
    let spec: SampleSpec = "seed:5:12".parse().unwrap();
    for model in [Model::S2, Model::S3] {
        let d = CircSample::from_spec(model, &spec).unwrap();
        let listed: Vec<String> = d
            .sorted()
            .into_iter()
            .map(|i| format!("{}:{:?}", d.points()[i], d.classes()[i]))
            .collect();
        println!("{model:?} order: {}", listed.join(" < "));
        println!("  raw arrow is a linear order: {}", d.arrow_axioms_check().passed);

        let trimmed = d.trim_endpoints();
        let probe = tarski_vaught_check(&trimmed, &density_patterns(model), None);
        println!("  trimmed sample closed under witnesses: {}", probe.passed);
        let closed = close_under_density(&d, &[Class::A]).unwrap();
        let probe = tarski_vaught_check(&closed, &density_patterns(model), Some(d.points()));
        println!("  after adding {} density witnesses: {}", closed.len() - d.len(), probe.passed);
    }

    println!("2 tau 5/2: {}", tau(&int(2), &parse_rational("5/2").unwrap()));
    for target in [Class::A, Class::B, Class::C] {
        let z = density_witness(&int(2), &int(3), target, Model::S3).unwrap();
        println!("S(3) witness of class {target:?} between 2 and 3: {z}");
    }
    let labels: Vec<usize> = ["1", "1/2", "2", "2/3", "3/5"]
        .iter()
        .map(|s| qn_label(&parse_rational(s).unwrap(), 3))
        .collect();
    println!("Q_3 labels of 1, 1/2, 2, 2/3, 3/5: {labels:?}");
}
