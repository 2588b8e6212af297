use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
        }
    }
}

/// One line of the human table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub check: String,
    pub value: String,
    /// `None` for informational rows.
    pub ok: Option<bool>,
}

/// What every command produces. `detail` is the serialized ledger or
/// certificate of the underlying check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub rows: Vec<Row>,
    pub detail: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verbosity {
    Quiet,
    Normal,
    Verbose,
}

impl Verbosity {
    /// `DGLAB_VERBOSITY`: `quiet`/`0`, `normal`/`1` (default), `verbose`/`2`.
    pub fn from_env() -> Self {
        match std::env::var("DGLAB_VERBOSITY").as_deref() {
            Ok("quiet" | "0") => Verbosity::Quiet,
            Ok("verbose" | "2") => Verbosity::Verbose,
            _ => Verbosity::Normal,
        }
    }
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), status: Status::Pass, rows: Vec::new(), detail: Value::Null }
    }

    pub fn input_error(command: impl Into<String>, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        r.status = Status::InputError;
        r.rows.push(Row { check: "input".into(), value: message.into(), ok: Some(false) });
        r
    }

    /// Adds a checked row; a failing one fails the report.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, value: impl Into<String>) -> &mut Self {
        if !ok {
            self.status = Status::Fail;
        }
        self.rows.push(Row { check: name.into(), value: value.into(), ok: Some(ok) });
        self
    }

    pub fn info(&mut self, name: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.rows.push(Row { check: name.into(), value: value.into(), ok: None });
        self
    }

    pub fn with_detail<T: Serialize>(&mut self, detail: &T) -> &mut Self {
        self.detail = serde_json::to_value(detail).expect("reports serialize");
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, verbosity: Verbosity) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::InputError => "INPUT ERROR",
        };
        let mut out = format!("{}: {status}\n", self.command);
        if verbosity == Verbosity::Quiet {
            return out;
        }
        let width = self.rows.iter().map(|r| r.check.chars().count()).max().unwrap_or(0);
        for r in &self.rows {
            let mark = match r.ok {
                Some(true) => "ok  ",
                Some(false) => "FAIL",
                None => "    ",
            };
            out.push_str(&format!("  {mark}  {:<width$}  {}\n", r.check, r.value));
        }
        if verbosity == Verbosity::Verbose && !self.detail.is_null() {
            out.push_str(&serde_json::to_string_pretty(&self.detail).expect("reports serialize"));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_json() {
        let mut r = Report::new("btt");
        r.check("hypothesis 3", false, "not injective in degree [1]").info("dims", "{0: 1}");
        r.with_detail(&serde_json::json!({"verdict": {"failed": 3}, "per_degree": {"-1": true}}));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.exit_code(), 1);
    }

    #[test]
    fn quiet_rendering_is_one_line() {
        let r = Report::input_error("check", "parse error at line 3, column 5");
        assert_eq!(r.render(Verbosity::Quiet), "check: INPUT ERROR\n");
        assert!(r.render(Verbosity::Normal).contains("line 3, column 5"));
    }
}
