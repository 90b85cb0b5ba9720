//! Report types shared by the certification, bound and inequality
//! commands: serializable for tooling, with aligned text rendering for
//! humans reading CI logs.

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ViolationDoc {
    pub input: String,
    pub member: bool,
    pub accept: String,
    pub reject: String,
    pub dont_know: String,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct CertificationReport {
    pub model: String,
    pub oracle: String,
    pub mode: String,
    pub inputs: u64,
    pub pass: bool,
    pub violations: Vec<ViolationDoc>,
}

impl CertificationReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "certify {}  oracle={}  mode={}\n",
            self.model, self.oracle, self.mode
        ));
        out.push_str(&format!(
            "{}  {} inputs checked\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.inputs
        ));
        if !self.pass {
            out.push_str(&format!(
                "{:<16} {:>6} {:>12} {:>12} {:>12}  reason\n",
                "input", "member", "accept", "reject", "dontknow"
            ));
            for v in self.violations.iter().take(20) {
                out.push_str(&format!(
                    "{:<16} {:>6} {:>12} {:>12} {:>12}  {}\n",
                    if v.input.is_empty() { "(empty)" } else { &v.input },
                    v.member,
                    v.accept,
                    v.reject,
                    v.dont_know,
                    v.reason
                ));
            }
            if self.violations.len() > 20 {
                out.push_str(&format!(
                    "... and {} more violations\n",
                    self.violations.len() - 20
                ));
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SubfunctionBoundReport {
    pub function: String,
    pub n: usize,
    pub search: String,
    pub orders_examined: usize,
    pub best_order: Vec<usize>,
    pub per_cut: Vec<(usize, usize)>,
    pub n_pi: usize,
    /// set only for exhaustive searches; sampled searches yield an
    /// upper-bound estimate, reported in `estimate_only`
    pub n_f: Option<usize>,
    pub estimate_only: bool,
}

impl SubfunctionBoundReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "bound {}  n={}  search={} ({} orders)\n",
            self.function, self.n, self.search, self.orders_examined
        ));
        out.push_str(&format!("best order: {:?}\n", self.best_order));
        out.push_str(&format!("{:<6} {:>12}\n", "cut u", "subfunctions"));
        for (u, c) in &self.per_cut {
            out.push_str(&format!("{:<6} {:>12}\n", u, c));
        }
        out.push_str(&format!("max over cuts: {}\n", self.n_pi));
        match self.n_f {
            Some(v) => out.push_str(&format!("minimum over all orders: {v}\n")),
            None => out.push_str(&format!(
                "upper-bound estimate over sampled orders: {} (not a lower bound)\n",
                self.n_pi
            )),
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct NerodeBoundReport {
    pub language: String,
    pub k: usize,
    pub prefix_max_len: usize,
    pub suffix_max_len: usize,
    pub distinguishable: usize,
}

impl NerodeBoundReport {
    pub fn render_text(&self) -> String {
        format!(
            "bound {} k={}  prefixes up to {}, suffixes up to {}\ndistinguishable prefix classes: {} (lower bound on DFA size)\n",
            self.language, self.k, self.prefix_max_len, self.suffix_max_len, self.distinguishable
        )
    }
}

#[derive(Debug, Serialize)]
pub struct LedgerEntry {
    pub label: String,
    pub bound: u64,
    pub size: u64,
    pub one_minus_eps: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct LedgerReport {
    pub pass: bool,
    pub entries: Vec<LedgerEntry>,
}

impl LedgerReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<44} {:>8} {:>8} {:>8} {:>14} {:>14}  verdict\n",
            "check", "bound", "size", "1-eps", "bound^p", "size^q"
        ));
        for e in &self.entries {
            out.push_str(&format!(
                "{:<44} {:>8} {:>8} {:>8} {:>14} {:>14}  {}\n",
                e.label,
                e.bound,
                e.size,
                e.one_minus_eps,
                e.lhs,
                e.rhs,
                if e.pass { "pass" } else { "FAIL" }
            ));
        }
        out.push_str(&format!(
            "ledger: {}\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ValidationReport {
    pub model: String,
    pub variant: String,
    pub width_or_states: usize,
    pub pass: bool,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "validate {}  variant={}  size={}\n",
            self.model, self.variant, self.width_or_states
        );
        if self.pass {
            out.push_str("PASS  all validity predicates hold\n");
        } else {
            out.push_str("FAIL\n");
            for p in &self.problems {
                out.push_str(&format!("  - {p}\n"));
            }
        }
        out
    }
}
