//! The JSON function specifications read by the command-line tool.

use meroscope::funcspec::FunctionSpec;
use meroscope::poles::{minimal_pole_count, PoleOptions};
use meroscope::winding::winding;

fn main() -> Result<(), meroscope::error::Error> {
    let specs = [
        r#"{"type": "rational", "num": [[1, 0], [-0.15, 0], [0.5, 0]], "den": [[-0.3, 0], [1, 0]]}"#,
        r#"{"type": "laurent", "neg": [[2, 0], [0, 0.5]], "nonneg": [[0, 0], [1, 0]]}"#,
        r#"{"type": "rational", "num": [[1, 0]], "den": [[1]]}"#,
    ];
    for text in specs {
        let spec = match FunctionSpec::parse(text) {
            Ok(spec) => spec,
            Err(e) => {
                println!("rejected: {e}");
                continue;
            }
        };
        let grid = spec.grid(2048)?;
        let report = minimal_pole_count(&spec.laurent(2048)?, &PoleOptions::default())?;
        println!(
            "winding {}, poles {:?} at {}",
            winding(&grid)?.winding,
            report.m,
            report
                .poles
                .iter()
                .map(|p| format!("{p:.4}"))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    Ok(())
}
