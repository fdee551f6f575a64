use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Ok,
    Warning,
    Error,
}

impl ReportStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportStatus::Ok => "ok",
            ReportStatus::Warning => "warning",
            ReportStatus::Error => "error",
        }
    }
}

/// Result of one CLI invocation. Estimate fields are only serialized for
/// simulation commands; `elapsed_ms` is `null` unless timing was requested,
/// which keeps repeated invocations byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: Value,
    pub status: ReportStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_high: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ties: Option<u64>,
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, params: BTreeMap<String, Value>, result: Value) -> Self {
        Report {
            command: command.into(),
            params,
            result,
            status: ReportStatus::Ok,
            seed: None,
            trials: None,
            ci_low: None,
            ci_high: None,
            ties: None,
            elapsed_ms: None,
            error: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let cell = |v: Option<String>| v.map(|s| csv_escape(&s)).unwrap_or_default();
        let header = "command,params,result,status,seed,trials,ci_low,ci_high,ties,elapsed_ms";
        let row = [
            cell(Some(self.command.clone())),
            cell(Some(serde_json::to_string(&self.params).expect("params serialize"))),
            cell(Some(match &self.result {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })),
            cell(Some(self.status.as_str().to_string())),
            cell(self.seed.map(|v| v.to_string())),
            cell(self.trials.map(|v| v.to_string())),
            cell(self.ci_low.map(|v| v.to_string())),
            cell(self.ci_high.map(|v| v.to_string())),
            cell(self.ties.map(|v| v.to_string())),
            cell(self.elapsed_ms.map(|v| v.to_string())),
        ]
        .join(",");
        format!("{header}\n{row}")
    }

    pub fn to_text(&self, color: bool) -> String {
        let status = match (color, self.status) {
            (false, s) => s.as_str().to_string(),
            (true, ReportStatus::Ok) => "\x1b[32mok\x1b[0m".to_string(),
            (true, ReportStatus::Warning) => "\x1b[33mwarning\x1b[0m".to_string(),
            (true, ReportStatus::Error) => "\x1b[31merror\x1b[0m".to_string(),
        };
        let mut out = format!("{} [{}]\n", self.command, status);
        for (k, v) in &self.params {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        match &self.result {
            Value::String(s) => out.push_str(&format!("result: {s}\n")),
            Value::Null => {}
            other => out.push_str(&format!(
                "result: {}\n",
                serde_json::to_string_pretty(other).expect("result serializes")
            )),
        }
        if let (Some(seed), Some(trials)) = (self.seed, self.trials) {
            out.push_str(&format!("seed {seed}, trials {trials}, ties {}\n", self.ties.unwrap_or(0)));
        }
        if let (Some(lo), Some(hi)) = (self.ci_low, self.ci_high) {
            out.push_str(&format!("95% Wilson interval [{lo:.6}, {hi:.6}]\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed {ms} ms\n"));
        }
        out.trim_end().to_string()
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_json_cells() {
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), Value::from(3));
        params.insert("set".to_string(), Value::from("9,3,1"));
        let r = Report::new("formula lead", params, Value::from("5/16"));
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap().split(',').count(), 10);
        assert_eq!(
            lines.next().unwrap(),
            r#"formula lead,"{""n"":3,""set"":""9,3,1""}",5/16,ok,,,,,,"#
        );
    }

    #[test]
    fn json_field_order_is_stable() {
        let r = Report::new("formula lead", BTreeMap::new(), Value::from("1/2"));
        assert_eq!(
            r.to_json(),
            r#"{"command":"formula lead","params":{},"result":"1/2","status":"ok","elapsed_ms":null}"#
        );
    }
}
