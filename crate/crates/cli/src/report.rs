use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::suite::{Cell, Status};

pub const CSV_HEADER: &str = "d,k,p_formula,p_mean,p_std,eig_residual,c1,c2,pass,seconds";

fn plain(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn sci(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.3e}")).unwrap_or_default()
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "true",
        Status::Fail => "false",
        Status::Skipped => "skipped",
    }
}

pub fn csv(cells: &[Cell], timestamp: Option<u64>) -> String {
    let mut out = String::new();
    if let Some(t) = timestamp {
        let _ = writeln!(out, "# generated_unix={t}");
    }
    out.push_str(CSV_HEADER);
    out.push('\n');
    for c in cells {
        let seconds = if timestamp.is_some() {
            c.seconds.map(|s| format!("{s:.3}")).unwrap_or_default()
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            c.d,
            c.k,
            plain(c.p_formula),
            plain(c.p_mean),
            sci(c.p_std),
            sci(c.eig_residual),
            plain(c.c1),
            plain(c.c2),
            status_word(c.status),
            seconds
        );
    }
    out
}

pub fn json(config: Value, cells: &[Cell], timestamp: Option<u64>, pass: bool) -> String {
    let cells: Vec<Value> = cells
        .iter()
        .map(|c| {
            let mut v = serde_json::to_value(c).unwrap_or(Value::Null);
            if timestamp.is_none() {
                v["seconds"] = Value::Null;
            }
            v
        })
        .collect();
    let mut config = config;
    if let Some(t) = timestamp {
        config["generated_unix"] = json!(t);
    }
    let mut s =
        serde_json::to_string_pretty(&json!({ "config": config, "cells": cells, "pass": pass }))
            .unwrap_or_else(|_| "{}".into());
    s.push('\n');
    s
}
