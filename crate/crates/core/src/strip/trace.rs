use std::fmt::Write as _;

use super::IterationRecord;
use crate::harness::format::fmt_real;

pub const TRACE_HEADER: &str = "iteration,deleted,q_size,w0,w1,r,A,B,D,X,enqueued";

pub fn trace_csv(trace: &[IterationRecord]) -> String {
    let mut out = String::with_capacity(64 * (trace.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in trace {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.iteration,
            r.deleted,
            r.q_size,
            r.w0,
            r.w1,
            r.r,
            r.a,
            r.b,
            r.d,
            fmt_real(r.x),
            r.enqueued
        );
    }
    out
}
