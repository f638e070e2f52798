//! Text and JSON renderings. Both carry the same digit strings.

use quintic_modulus::certify::IdentityReport;
use quintic_modulus::kernel::SingularModulusRecord;
use quintic_modulus::ladder::{ExampleCheck, LadderTrace};
use quintic_modulus::precision::to_digits;
use quintic_modulus::{BigReal, PosRational, PrecisionContext};
use serde_json::{json, Map, Value};

pub struct Renderer {
    pub digits: usize,
    pub ctx: PrecisionContext,
}

fn ratio_json(r: PosRational) -> Value {
    json!({ "num": r.num(), "den": r.den() })
}

impl Renderer {
    pub fn num(&self, x: &BigReal) -> String {
        to_digits(x, self.digits)
    }

    /// Top-level JSON envelope shared by every command.
    pub fn envelope(
        &self,
        command: &str,
        r: Option<PosRational>,
        key: &str,
        payload: Value,
    ) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(command));
        obj.insert("r".into(), r.map(ratio_json).unwrap_or(Value::Null));
        obj.insert("precision_bits".into(), json!(self.ctx.precision_bits()));
        obj.insert("tol_exp".into(), json!(self.ctx.tol_exp()));
        obj.insert(key.into(), payload);
        Value::Object(obj)
    }

    pub fn modulus_fields(&self, rec: &SingularModulusRecord) -> Vec<(&'static str, String)> {
        vec![
            ("k", self.num(&rec.k)),
            ("k_comp", self.num(&rec.k_comp)),
            ("q", self.num(&rec.q)),
            ("K_k", self.num(&rec.k_k)),
            ("K_kcomp", self.num(&rec.k_kcomp)),
            ("residual", self.num(&rec.residual)),
        ]
    }

    pub fn modulus_json(&self, rec: &SingularModulusRecord) -> Value {
        let map: Map<String, Value> = self
            .modulus_fields(rec)
            .into_iter()
            .map(|(k, v)| (k.to_string(), Value::String(v)))
            .collect();
        Value::Object(map)
    }

    pub fn modulus_text(&self, rec: &SingularModulusRecord) -> String {
        let mut out = format!("r = {}\n", rec.r);
        for (name, value) in self.modulus_fields(rec) {
            out.push_str(&format!("{name:<9} = {value}\n"));
        }
        out
    }

    pub fn ladder_json(&self, trace: &LadderTrace, certified: bool) -> Value {
        let tol = self
            .ctx
            .tol_with_slack(quintic_modulus::ladder::LADDER_SLACK_DIGITS);
        let levels: Vec<Value> = trace
            .steps
            .iter()
            .map(|s| {
                json!({
                    "level": s.level,
                    "r": ratio_json(s.r),
                    "argument": self.num(&s.argument),
                    "p_value": self.num(&s.p_value),
                    "kkprime": self.num(&s.kkprime),
                    "k": self.num(&s.k),
                    "oracle_k": self.num(&s.oracle_k),
                    "oracle_residual": self.num(&s.oracle_residual),
                    "certified": s.oracle_residual < tol,
                })
            })
            .collect();
        json!({
            "r0": ratio_json(trace.r0),
            "n": trace.n,
            "certified": certified,
            "levels": levels,
        })
    }

    pub fn ladder_text(&self, trace: &LadderTrace, certified: bool) -> String {
        let tol = self
            .ctx
            .tol_with_slack(quintic_modulus::ladder::LADDER_SLACK_DIGITS);
        let mut out = format!("ladder from r0 = {}, n = {}\n", trace.r0, trace.n);
        for s in &trace.steps {
            let ok = if s.oracle_residual < tol {
                "certified"
            } else {
                "FAILED"
            };
            out.push_str(&format!(
                "level {} (r = {}): {ok}\n  argument        = {}\n  p_value         = {}\n  kkprime         = {}\n  k               = {}\n  oracle_k        = {}\n  oracle_residual = {}\n",
                s.level,
                s.r,
                self.num(&s.argument),
                self.num(&s.p_value),
                self.num(&s.kkprime),
                self.num(&s.k),
                self.num(&s.oracle_k),
                self.num(&s.oracle_residual),
            ));
        }
        out.push_str(if certified {
            "all levels certified\n"
        } else {
            "certification FAILED\n"
        });
        out
    }

    pub fn ladder_csv(&self, trace: &LadderTrace) -> String {
        let mut out = String::from("r,k,residual\n");
        for s in &trace.steps {
            out.push_str(&format!(
                "{},{},{}\n",
                s.r,
                self.num(&s.k),
                self.num(&s.oracle_residual)
            ));
        }
        out
    }

    pub fn rrcf_fields(
        &self,
        closed: &BigReal,
        truncated: &BigReal,
        a: &BigReal,
    ) -> Vec<(&'static str, String)> {
        let diff = (closed.clone() - truncated).abs();
        vec![
            ("closed", self.num(closed)),
            ("truncated", self.num(truncated)),
            ("diff", self.num(&diff)),
            ("a", self.num(a)),
        ]
    }

    pub fn report_json(&self, report: &IdentityReport) -> Value {
        serde_json::to_value(report).expect("report serializes")
    }

    pub fn report_text(&self, report: &IdentityReport) -> String {
        let mut out = format!(
            "identity suite at r = {} ({} bits, tol 1e-{})\n",
            report.r, report.precision_bits, report.tol_exp
        );
        for e in &report.entries {
            let residual = match self.ctx.parse(&e.residual) {
                Ok(v) => to_digits(&v, 6),
                Err(_) => e.residual.clone(),
            };
            out.push_str(&format!(
                "{:<5} {:<18} residual {:<14} {:>6} ms",
                if e.pass { "PASS" } else { "FAIL" },
                e.id,
                residual,
                e.elapsed_ms
            ));
            if let Some(note) = &e.note {
                out.push_str(&format!("  [{note}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{}/{} pass\n",
            report.passed(),
            report.entries.len()
        ));
        out
    }

    pub fn audit_json(&self, checks: &[ExampleCheck]) -> Value {
        let items: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "r": ratio_json(c.r),
                    "oracle_k": self.num(&c.oracle_k),
                    "canonical_form": c.canonical_form,
                    "canonical_k": self.num(&c.canonical_k),
                    "canonical_residual": self.num(&c.canonical_residual),
                    "canonical_pass": c.canonical_pass,
                    "verbatim_form": c.verbatim_form,
                    "verbatim_k": c.verbatim_k.as_ref().map(|k| self.num(k)),
                    "verbatim_residual": c.verbatim_residual.as_ref().map(|k| self.num(k)),
                    "verbatim_holds": c.verbatim_holds,
                })
            })
            .collect();
        Value::Array(items)
    }

    pub fn audit_text(&self, checks: &[ExampleCheck]) -> String {
        let mut out = String::new();
        for c in checks {
            out.push_str(&format!(
                "{} (r = {})\n  oracle k            = {}\n  canonical           {}\n    k                 = {}\n    residual          = {} ({})\n  verbatim            {}\n",
                c.id,
                c.r,
                self.num(&c.oracle_k),
                c.canonical_form,
                self.num(&c.canonical_k),
                self.num(&c.canonical_residual),
                if c.canonical_pass { "certified" } else { "FAILED" },
                c.verbatim_form,
            ));
            match (&c.verbatim_k, &c.verbatim_residual) {
                (Some(k), Some(res)) => out.push_str(&format!(
                    "    k                 = {}\n    residual          = {} ({})\n",
                    self.num(k),
                    self.num(res),
                    if c.verbatim_holds {
                        "holds"
                    } else {
                        "does not hold"
                    }
                )),
                _ => out.push_str("    not evaluable (does not hold)\n"),
            }
        }
        out
    }
}
