//! Runs every check suite with its default configuration and prints one
//! line per check. Pass `--json` to print the full reports.

use ultrahom::checks::{
    extension_suite, formula_suite, fraisse_suite, round_trip_suite, s2_suite, s3_suite, transfer_suite, wreath_suite,
    CircleConfig, ExtensionConfig, FormulaConfig, FraisseConfig, TransferConfig, WreathConfig,
};
use ultrahom::cli::summary;
use ultrahom::random::Presentation;

fn main() {
    let json = std::env::args().any(|a| a == "--json");
    let reports = [
        transfer_suite(&TransferConfig::default()),
        round_trip_suite(&Presentation::bit(), 1 << 10),
        extension_suite(&ExtensionConfig::default()),
        s2_suite(&CircleConfig::default()),
        s3_suite(&CircleConfig::default()),
        fraisse_suite(&FraisseConfig::default()),
        wreath_suite(&WreathConfig::default()),
        formula_suite(&FormulaConfig::default()),
    ];
    for r in &reports {
        if json {
            println!("{}", r.to_json());
        } else {
            print!("{}", summary(r));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} suites, {failed} failed", reports.len());
}
