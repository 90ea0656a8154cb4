//! Bound tables over (q, δ) grids, written as CSV.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::conditions::{condition_table, ParamWitness};
use super::rates::{gv_bound, plotkin_bound, Delta};
use super::search::{ell_range, search_params_with};
use crate::error::{Error, Result};
use crate::highreal::HighReal;

#[derive(Clone, Debug, Serialize)]
pub struct BoundPoint {
    pub q: u64,
    pub delta: String,
    pub gv: HighReal,
    pub plotkin: HighReal,
    /// Present only with a witness satisfying conditions 1–3.
    pub nfc: Option<HighReal>,
    pub witness: Option<ParamWitness>,
}

/// `start:stop:step`, inclusive of `stop` when the grid lands on it.
pub fn parse_delta_grid(spec: &str) -> Result<Vec<Delta>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, s] = parts.as_slice() else {
        return Err(Error::argument(format!("δ grid `{spec}` is not start:stop:step")));
    };
    let start: Delta = a.parse()?;
    let stop: Delta = b.parse()?;
    let step: Delta = s.parse()?;
    let mut out = Vec::new();
    let mut cur = start.value().clone();
    while cur <= *stop.value() {
        out.push(Delta::new(cur.clone())?);
        cur += step.value();
    }
    Ok(out)
}

/// One row per (q, δ), rows ordered by q then δ. Each q is sieved once.
pub fn bound_sweep(qs: &[u64], deltas: &[Delta], budget: usize, sieve_limit: u64) -> Result<Vec<BoundPoint>> {
    let mut rows = Vec::with_capacity(qs.len() * deltas.len());
    for &q in qs {
        if q < 2 {
            return Err(Error::domain(format!("q = {q} < 2")));
        }
        let table = condition_table(q, ell_range(q).1, sieve_limit)?;
        let chunk: Vec<Result<BoundPoint>> = deltas
            .par_iter()
            .map(|d| {
                let (nfc, witness) = match search_params_with(&table, q, d, budget) {
                    Ok(res) => (Some(res.nfc), Some(res.witness)),
                    Err(Error::NoWitness(_)) => (None, None),
                    Err(e) => return Err(e),
                };
                Ok(BoundPoint {
                    q,
                    delta: d.to_string(),
                    gv: gv_bound(q, d)?,
                    plotkin: plotkin_bound(q, d)?,
                    nfc,
                    witness,
                })
            })
            .collect();
        for row in chunk {
            rows.push(row?);
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BoundPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["q", "delta", "gv", "plotkin", "nfc", "r", "ell", "k"]).map_err(io)?;
    for p in rows {
        let opt = |v: Option<String>| v.unwrap_or_default();
        w.write_record([
            p.q.to_string(),
            p.delta.clone(),
            p.gv.to_f64().to_string(),
            p.plotkin.to_f64().to_string(),
            opt(p.nfc.as_ref().map(|v| v.to_f64().to_string())),
            opt(p.witness.as_ref().map(|w| w.r().to_string())),
            opt(p.witness.as_ref().map(|w| w.ell().to_string())),
            opt(p.witness.as_ref().map(|w| w.k().to_string())),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
