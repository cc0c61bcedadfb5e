//! A small campaign through the library, rendered as CSV and as JSON.

use spinstat::campaign::{render_table, run_campaign, CampaignConfig};

fn main() -> spinstat::error::Result<()> {
    let config = CampaignConfig::from_json(
        r#"{
            "mode": "verify-2d",
            "lambda": [0, "1/2", 1],
            "sigma": [0, "1/2"],
            "theta": [0, 1],
            "order": 8,
            "grid": 64
        }"#,
    )?;
    let report = run_campaign(&config)?;
    print!("{}", render_table(&report, None)?);
    println!("{} of {} items passed, exit code {}", report.summary.passed, report.summary.items, report.exit_code());

    let slim = run_campaign(&CampaignConfig::from_json(r#"{"mode": "braid-phases", "q_max": 2}"#)?)?;
    print!("{}", render_table(&slim, None)?);
    Ok(())
}
