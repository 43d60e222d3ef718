//! Reporting for the acceptance suite in `tests/acceptance.rs`.
//!
//! The suite lives in its own package so that `cargo test --workspace`
//! runs every other test target before it.

/// Sub-checks of one criterion. [`Checks::finish`] prints one
/// `criterion N: PASS|FAIL` line plus a detail line per sub-check, then
/// panics if any sub-check failed.
pub struct Checks {
    criterion: u32,
    items: Vec<(String, bool)>,
}

impl Checks {
    pub fn new(criterion: u32) -> Checks {
        Checks {
            criterion,
            items: Vec::new(),
        }
    }

    pub fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.items.push((what.into(), ok));
    }

    pub fn finish(self) {
        let ok = self.items.iter().all(|(_, ok)| *ok);
        let mut out = format!(
            "criterion {}: {}\n",
            self.criterion,
            if ok { "PASS" } else { "FAIL" }
        );
        for (what, ok) in &self.items {
            out.push_str(&format!(
                "    [{}] {what}\n",
                if *ok { "ok" } else { "FAILED" }
            ));
        }
        print!("{out}");
        assert!(ok, "criterion {} failed:\n{out}", self.criterion);
    }
}
