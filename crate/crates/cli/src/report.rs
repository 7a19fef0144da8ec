//! Reports: free text for people and one `id|status|witness` line per check.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use vabc::bicomplex::CheckReport;
use vabc::diffalg::{Relation, RelationStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be run on this instance; not a failure.
    Unverifiable,
    /// Informational flag; not a failure.
    Flag,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unverifiable => "unverifiable",
            Status::Flag => "flag",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub title: String,
    pub text: Vec<String>,
    pub checks: Vec<Check>,
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn new(title: &str) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    /// Appends multi-line text, one report line per text line.
    pub fn block(&mut self, s: &str) {
        self.text.extend(s.lines().map(String::from));
    }

    pub fn check(&mut self, id: impl Into<String>, status: Status, witness: impl AsRef<str>) {
        let c = Check { id: id.into(), status, witness: one_line(witness.as_ref()) };
        self.text.push(if c.witness.is_empty() {
            format!("[{}] {}", c.status, c.id)
        } else {
            format!("[{}] {}: {}", c.status, c.id, c.witness)
        });
        self.checks.push(c);
    }

    pub fn check_report(&mut self, id: impl Into<String>, rep: &CheckReport) {
        let id = id.into();
        match &rep.failure {
            None => self.check(id, Status::Pass, format!("{} ({} cases)", rep.name, rep.checked)),
            Some(m) => self.check(id, Status::Fail, format!("{}: {m}", rep.name)),
        }
    }

    pub fn relation(&mut self, id: impl Into<String>, r: &Relation) {
        let tag = r.tag.map(|t| t.to_string()).unwrap_or_else(|| "?".into());
        let head = format!("{} == {} [{tag}]", r.lhs, r.rhs);
        match &r.status {
            RelationStatus::Verified => self.check(id, Status::Pass, head),
            RelationStatus::Failed(w) => self.check(id, Status::Fail, format!("{head} {w}")),
            RelationStatus::Unverifiable(w) => self.check(id, Status::Unverifiable, format!("{head} {w}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn summary(&self) -> String {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        format!(
            "summary: {} pass, {} fail, {} unverifiable, {} flagged",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Unverifiable),
            count(Status::Flag)
        )
    }

    pub fn human(&self) -> String {
        let mut s = format!("== {} ==\n", self.title);
        for l in &self.text {
            s.push_str(l);
            s.push('\n');
        }
        s.push_str(&self.summary());
        s.push('\n');
        s
    }

    pub fn machine(&self) -> String {
        self.checks.iter().map(|c| format!("{}|{}|{}\n", c.id, c.status, c.witness)).collect()
    }

    /// Writes `<title>.txt` and `<title>.checks` into `dir`.
    pub fn write_to(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(format!("{}.txt", self.title)), self.human())?;
        fs::write(dir.join(format!("{}.checks", self.title)), self.machine())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_lines_and_exit_status() {
        let mut r = Report::new("demo");
        r.check("a.1", Status::Pass, "");
        r.check("a.2", Status::Unverifiable, "needs\nmore  weight");
        assert!(r.passed());
        assert_eq!(r.machine(), "a.1|pass|\na.2|unverifiable|needs more weight\n");
        r.check("a.3", Status::Fail, "boom");
        assert!(!r.passed());
        assert!(r.human().ends_with("summary: 1 pass, 1 fail, 1 unverifiable, 0 flagged\n"));
    }
}
