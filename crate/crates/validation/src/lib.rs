//! Pass/fail report over every acceptance criterion.

use soliton_discord::validation::{CriterionReport, Status};

/// One line per criterion followed by a tally.
pub fn render(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("{r}\n"));
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    out.push_str(&format!(
        "acceptance: {} passed, {} failed, {} warned\n",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Warn)
    ));
    out
}

/// True when no criterion failed; warnings do not count as failures.
pub fn all_passed(reports: &[CriterionReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(id: u8, status: Status) -> CriterionReport {
        CriterionReport {
            id,
            name: "x",
            status,
            detail: String::new(),
            seconds: 0.0,
        }
    }

    #[test]
    fn tally_and_verdict() {
        let rs = [report(1, Status::Pass), report(2, Status::Warn)];
        assert!(all_passed(&rs));
        assert!(render(&rs).ends_with("acceptance: 1 passed, 0 failed, 1 warned\n"));
        assert!(!all_passed(&[report(3, Status::Fail)]));
    }
}
