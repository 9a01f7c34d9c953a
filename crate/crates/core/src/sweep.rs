//! Grid sweeps over `p(t_h)` written as CSV.
//!
//! One row per `k = 1 .. grid_n - 1` at `p(t_h) = k / grid_n`. Flags are
//! `1`/`0`; `p_high` and the welfare columns are rounded half-up to six
//! decimals (the exact value of `p_high` is `k / grid_n`).

use std::io::Write;

use serde::Serialize;

use crate::equilibrium::sne_grid_sweep;
use crate::error::{Error, Result};
use crate::model::{CostModel, PureStrategy, TamModel};
use crate::scalar::round_half_up;
use crate::thresholds::interval_report;
use crate::welfare::welfare_curve;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub k: usize,
    pub grid_n: usize,
    pub p_high: String,
    pub sne_ll: u8,
    pub sne_lh: u8,
    pub sne_hl: u8,
    pub sne_hh: u8,
    pub int_ll: u8,
    pub int_lh: u8,
    pub int_hl: u8,
    pub int_hh: u8,
    pub ew_ll: String,
    pub ew_lh: String,
    pub ew_hh: String,
}

impl SweepRow {
    pub fn sne_flags(&self) -> [u8; 4] {
        [self.sne_ll, self.sne_lh, self.sne_hl, self.sne_hh]
    }

    pub fn interval_flags(&self) -> [u8; 4] {
        [self.int_ll, self.int_lh, self.int_hl, self.int_hh]
    }

    pub fn flags_agree(&self) -> bool {
        self.sne_flags() == self.interval_flags()
    }
}

pub fn sweep(model: &TamModel, cost: &CostModel, grid_n: usize) -> Result<Vec<SweepRow>> {
    let intervals = interval_report(model, cost)?;
    let curves = [PureStrategy::LL, PureStrategy::LH, PureStrategy::HH]
        .map(|s| welfare_curve(model, cost, s));
    let points = sne_grid_sweep(model, cost, grid_n)?;
    Ok(points
        .into_iter()
        .enumerate()
        .map(|(i, (p, report))| {
            let x = p.p_high();
            let sne = PureStrategy::ALL.map(|s| u8::from(report.is_sne(s)));
            let int = PureStrategy::ALL.map(|s| u8::from(intervals.get(s).contains(x)));
            let ew = curves.each_ref().map(|c| round_half_up(&c.eval(x), 6));
            let [ew_ll, ew_lh, ew_hh] = ew;
            SweepRow {
                k: i + 1,
                grid_n,
                p_high: round_half_up(x, 6),
                sne_ll: sne[0],
                sne_lh: sne[1],
                sne_hl: sne[2],
                sne_hh: sne[3],
                int_ll: int[0],
                int_lh: int[1],
                int_hl: int[2],
                int_hh: int[3],
                ew_ll,
                ew_lh,
                ew_hh,
            }
        })
        .collect())
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Output(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::Output(e.to_string()))
}
