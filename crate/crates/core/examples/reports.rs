//! Produces a report the way the `scatter` binary does, then re-checks its
//! witnesses with `verify_report`, once as written and once after tampering.

use scattered::cli::{run, verify_report, Command, GroupsCommand, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig::new(Command::Groups(GroupsCommand::Obstructions { p: 3, a: 2, d: 3 }));
    let outcome = run(&config)?;
    println!("verdict: {} (exit {:?})", outcome.report["verdict"], outcome.exit);

    let check = verify_report(&outcome.report)?;
    println!("verify: valid {} over {} checks", check.valid, check.checks.len());

    let mut forged = outcome.report.clone();
    forged["report"][0]["witness"]["remainder"] = "0".into();
    let check = verify_report(&forged)?;
    let failed: Vec<_> = check.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect();
    println!("forged remainder: valid {}, failing {failed:?}", check.valid);
    Ok(())
}
