//! Result bookkeeping for the acceptance runs.

use std::time::Duration;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    /// Measured quantities, one per line.
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "{} {} {} ({:.1} s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Prints every verdict and returns the process exit code.
pub fn report(verdicts: &[Verdict]) -> i32 {
    for v in verdicts {
        for d in &v.details {
            println!("    [{}] {d}", v.id);
        }
        println!("{}", v.line());
    }
    let failed = verdicts.iter().filter(|v| !v.pass).count();
    println!("acceptance: {} passed, {failed} failed", verdicts.len() - failed);
    i32::from(failed > 0)
}
