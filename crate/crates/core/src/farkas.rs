//! Exact feasibility of small mixed systems `A x <= b, B x < c` in two
//! variables, with a certificate either way.
//!
//! [`farkas_check`] runs Fourier-Motzkin elimination and keeps, for every
//! derived row, the non-negative multipliers that produced it. A derived
//! contradiction `0 <= negative` (or `0 < 0`) hands back those multipliers as
//! the dual certificate; otherwise back-substitution yields a primal point.
//! [`dual_by_enumeration`] finds dual certificates independently, by solving
//! the dual equalities over every small column support.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, int, Scalar};

pub type Row = ([Scalar; 2], Scalar);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub weak_rows: Vec<Row>,
    pub strict_rows: Vec<Row>,
}

impl LinearSystem {
    pub fn from_rows(
        weak: Vec<(Vec<Scalar>, Scalar)>,
        strict: Vec<(Vec<Scalar>, Scalar)>,
    ) -> Result<Self> {
        fn fix(kind: &'static str, rows: Vec<(Vec<Scalar>, Scalar)>) -> Result<Vec<Row>> {
            rows.into_iter()
                .enumerate()
                .map(|(row, (coeffs, bound))| {
                    let found = coeffs.len();
                    let coeffs: [Scalar; 2] =
                        coeffs
                            .try_into()
                            .map_err(|_| Error::Dimension { kind, row, found })?;
                    Ok((coeffs, bound))
                })
                .collect()
        }
        Ok(Self {
            weak_rows: fix("weak", weak)?,
            strict_rows: fix("strict", strict)?,
        })
    }

    fn all_rows(&self) -> impl Iterator<Item = (&Row, bool)> {
        self.weak_rows
            .iter()
            .map(|r| (r, false))
            .chain(self.strict_rows.iter().map(|r| (r, true)))
    }
}

fn dot(a: &[Scalar; 2], x: &[Scalar; 2]) -> Scalar {
    &a[0] * &x[0] + &a[1] * &x[1]
}

fn row_text(row: &Row, strict: bool) -> String {
    format!(
        "{} p_l + {} p_h {} {}",
        scalar::exact(&row.0[0]),
        scalar::exact(&row.0[1]),
        if strict { "<" } else { "<=" },
        scalar::exact(&row.1)
    )
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (row, strict) in self.all_rows() {
            writeln!(f, "  {}", row_text(row, strict))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    PrimalFeasible([Scalar; 2]),
    /// `y` weights the weak rows, `z` the strict rows.
    DualFeasible {
        y: Vec<Scalar>,
        z: Vec<Scalar>,
    },
}

impl FeasibilityResult {
    pub fn is_primal(&self) -> bool {
        matches!(self, FeasibilityResult::PrimalFeasible(_))
    }
}

impl fmt::Display for FeasibilityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Scalar]| v.iter().map(scalar::exact).collect::<Vec<_>>().join(", ");
        match self {
            FeasibilityResult::PrimalFeasible(x) => {
                write!(f, "primal feasible at x = ({})", list(x))
            }
            FeasibilityResult::DualFeasible { y, z } => {
                write!(f, "dual feasible with y = ({}), z = ({})", list(y), list(z))
            }
        }
    }
}

/// A row derived during elimination, with the multipliers that built it.
#[derive(Debug, Clone)]
struct Derived {
    coeffs: [Scalar; 2],
    bound: Scalar,
    y: Vec<Scalar>,
    z: Vec<Scalar>,
}

impl Derived {
    fn strict(&self) -> bool {
        self.z.iter().any(|v| !v.is_zero())
    }

    fn combine(&self, wa: &Scalar, other: &Derived, wb: &Scalar) -> Derived {
        let mix = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
            a.iter().zip(b).map(|(u, v)| wa * u + wb * v).collect()
        };
        Derived {
            coeffs: [
                wa * &self.coeffs[0] + wb * &other.coeffs[0],
                wa * &self.coeffs[1] + wb * &other.coeffs[1],
            ],
            bound: wa * &self.bound + wb * &other.bound,
            y: mix(&self.y, &other.y),
            z: mix(&self.z, &other.z),
        }
    }
}

fn eliminate(rows: &[Derived], var: usize) -> Vec<Derived> {
    let mut out: Vec<Derived> = rows
        .iter()
        .filter(|r| r.coeffs[var].is_zero())
        .cloned()
        .collect();
    for pos in rows.iter().filter(|r| r.coeffs[var].is_positive()) {
        for neg in rows.iter().filter(|r| r.coeffs[var].is_negative()) {
            out.push(pos.combine(&-&neg.coeffs[var], neg, &pos.coeffs[var]));
        }
    }
    out
}

/// Picks a value of variable `var` satisfying every row once the other
/// variable is fixed at `fixed` (ignored when `var` is the only one left).
fn pick(rows: &[Derived], var: usize, fixed: Option<&Scalar>) -> Scalar {
    let mut lower: Option<(Scalar, bool)> = None;
    let mut upper: Option<(Scalar, bool)> = None;
    for r in rows {
        let a = &r.coeffs[var];
        if a.is_zero() {
            continue;
        }
        let rest = match fixed {
            Some(v) => &r.coeffs[1 - var] * v,
            None => Scalar::zero(),
        };
        let bound = (&r.bound - rest) / a;
        let strict = r.strict();
        if a.is_positive() {
            let tighter = match &upper {
                None => true,
                Some((u, s)) => bound < *u || (bound == *u && strict && !s),
            };
            if tighter {
                upper = Some((bound, strict));
            }
        } else {
            let tighter = match &lower {
                None => true,
                Some((l, s)) => bound > *l || (bound == *l && strict && !s),
            };
            if tighter {
                lower = Some((bound, strict));
            }
        }
    }
    match (lower, upper) {
        (Some((l, _)), Some((u, _))) => scalar::midpoint(&l, &u),
        (Some((l, _)), None) => l + int(1),
        (None, Some((u, _))) => u - int(1),
        (None, None) => Scalar::zero(),
    }
}

/// Decides `A x <= b, B x < c`. Returns a primal point or a dual certificate.
pub fn farkas_check(sys: &LinearSystem) -> FeasibilityResult {
    let nw = sys.weak_rows.len();
    let ns = sys.strict_rows.len();
    let unit = |n: usize, i: usize| -> Vec<Scalar> {
        (0..n)
            .map(|j| if i == j { int(1) } else { Scalar::zero() })
            .collect()
    };
    let mut rows: Vec<Derived> = Vec::new();
    for (i, (coeffs, bound)) in sys.weak_rows.iter().enumerate() {
        rows.push(Derived {
            coeffs: coeffs.clone(),
            bound: bound.clone(),
            y: unit(nw, i),
            z: vec![Scalar::zero(); ns],
        });
    }
    for (i, (coeffs, bound)) in sys.strict_rows.iter().enumerate() {
        rows.push(Derived {
            coeffs: coeffs.clone(),
            bound: bound.clone(),
            y: vec![Scalar::zero(); nw],
            z: unit(ns, i),
        });
    }

    let after_first = eliminate(&rows, 1);
    let constants = eliminate(&after_first, 0);
    for r in &constants {
        let broken = r.bound.is_negative() || (r.bound.is_zero() && r.strict());
        if broken {
            return FeasibilityResult::DualFeasible {
                y: r.y.clone(),
                z: r.z.clone(),
            };
        }
    }

    let x0 = pick(&after_first, 0, None);
    let x1 = pick(&rows, 1, Some(&x0));
    FeasibilityResult::PrimalFeasible([x0, x1])
}

pub fn verify_primal(sys: &LinearSystem, x: &[Scalar; 2]) -> bool {
    sys.all_rows().all(|((a, b), strict)| {
        let lhs = dot(a, x);
        if strict {
            lhs < *b
        } else {
            lhs <= *b
        }
    })
}

/// `y, z >= 0`, `A^T y + B^T z = 0`, and either `b.y + c.z < 0` or
/// `b.y + c.z = 0` with `z != 0`.
pub fn verify_dual(sys: &LinearSystem, y: &[Scalar], z: &[Scalar]) -> bool {
    if y.len() != sys.weak_rows.len() || z.len() != sys.strict_rows.len() {
        return false;
    }
    if y.iter().chain(z).any(|v| v.is_negative()) {
        return false;
    }
    let mut combo = [Scalar::zero(), Scalar::zero()];
    let mut rhs = Scalar::zero();
    for ((a, b), w) in sys
        .weak_rows
        .iter()
        .chain(&sys.strict_rows)
        .zip(y.iter().chain(z))
    {
        combo[0] += w * &a[0];
        combo[1] += w * &a[1];
        rhs += w * b;
    }
    if !combo[0].is_zero() || !combo[1].is_zero() {
        return false;
    }
    rhs.is_negative() || (rhs.is_zero() && z.iter().any(|v| !v.is_zero()))
}

pub fn verify(sys: &LinearSystem, result: &FeasibilityResult) -> bool {
    match result {
        FeasibilityResult::PrimalFeasible(x) => verify_primal(sys, x),
        FeasibilityResult::DualFeasible { y, z } => verify_dual(sys, y, z),
    }
}

/// Unique solution of `m v = r` when the columns are independent and the
/// system is consistent.
fn solve_exact(mut m: Vec<Vec<Scalar>>, mut r: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let found = (pivot_row..rows).find(|&i| !m[i][col].is_zero())?;
        m.swap(pivot_row, found);
        r.swap(pivot_row, found);
        let p = m[pivot_row][col].clone();
        for v in m[pivot_row].iter_mut() {
            *v = &*v / &p;
        }
        r[pivot_row] = &r[pivot_row] / &p;
        for i in 0..rows {
            if i != pivot_row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot = m[pivot_row].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot) {
                    *v -= &f * pv;
                }
                let sub = &f * &r[pivot_row];
                r[i] -= sub;
            }
        }
        pivot_row += 1;
    }
    if r[pivot_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(r[..cols].to_vec())
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| s.len() <= max)
        .collect()
}

/// Searches for a dual certificate directly: a non-negative basic solution of
/// the dual equalities, normalized either by `b.y + c.z = -1` or by
/// `b.y + c.z = 0, sum z = 1`. Returns `None` when no certificate exists,
/// which (by the alternative theorem) means the primal is feasible.
pub fn dual_by_enumeration(sys: &LinearSystem) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
    let nw = sys.weak_rows.len();
    let columns: Vec<(&Row, bool)> = sys.all_rows().collect();
    let n = columns.len();

    for zero_gap in [false, true] {
        let eqs = if zero_gap { 4 } else { 3 };
        for support in subsets(n, eqs) {
            let mut m = vec![Vec::new(); eqs];
            for &j in &support {
                let ((a, b), strict) = columns[j];
                m[0].push(a[0].clone());
                m[1].push(a[1].clone());
                m[2].push(b.clone());
                if zero_gap {
                    m[3].push(if strict { int(1) } else { Scalar::zero() });
                }
            }
            let mut r = vec![Scalar::zero(); eqs];
            if zero_gap {
                r[3] = int(1);
            } else {
                r[2] = int(-1);
            }
            let Some(v) = solve_exact(m, r) else { continue };
            if v.iter().any(|x| x.is_negative()) {
                continue;
            }
            let mut full = vec![Scalar::zero(); n];
            for (&j, x) in support.iter().zip(v) {
                full[j] = x;
            }
            let z = full.split_off(nw);
            if verify_dual(sys, &full, &z) {
                return Some((full, z));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn row(a: i64, b: i64, c: Scalar) -> (Vec<Scalar>, Scalar) {
        (vec![int(a), int(b)], c)
    }

    #[test]
    fn contradictory_rows_give_a_dual() {
        let sys =
            LinearSystem::from_rows(vec![row(1, 0, int(0))], vec![row(-1, 0, int(0))]).unwrap();
        let result = farkas_check(&sys);
        assert!(!result.is_primal());
        assert!(verify(&sys, &result));
        assert!(dual_by_enumeration(&sys).is_some());
    }

    #[test]
    fn open_box_is_feasible() {
        let sys = LinearSystem::from_rows(
            vec![row(1, 1, int(1)), row(-1, -1, int(-1))],
            vec![row(-1, 0, int(0)), row(0, -1, int(0))],
        )
        .unwrap();
        let result = farkas_check(&sys);
        assert_eq!(
            result,
            FeasibilityResult::PrimalFeasible([ratio(1, 2), ratio(1, 2)])
        );
        assert!(dual_by_enumeration(&sys).is_none());
    }

    #[test]
    fn infeasible_by_weak_rows_alone() {
        let sys =
            LinearSystem::from_rows(vec![row(1, 1, int(1)), row(-1, -1, int(-2))], vec![]).unwrap();
        let result = farkas_check(&sys);
        assert!(verify(&sys, &result));
        assert!(!result.is_primal());
    }

    #[test]
    fn unconstrained_direction_still_yields_a_point() {
        let sys =
            LinearSystem::from_rows(vec![row(1, 0, int(3))], vec![row(0, -1, int(5))]).unwrap();
        let result = farkas_check(&sys);
        assert!(result.is_primal());
        assert!(verify(&sys, &result));
    }

    #[test]
    fn bad_dimension_is_an_input_error() {
        let err = LinearSystem::from_rows(vec![(vec![int(1)], int(0))], vec![]).unwrap_err();
        assert_eq!(
            err,
            Error::Dimension {
                kind: "weak",
                row: 0,
                found: 1
            }
        );
    }

    #[test]
    fn forged_certificates_are_rejected() {
        let sys =
            LinearSystem::from_rows(vec![row(1, 0, int(0))], vec![row(-1, 0, int(0))]).unwrap();
        assert!(!verify_dual(&sys, &[int(1)], &[int(0)]));
        assert!(!verify_dual(&sys, &[int(-1)], &[int(-1)]));
        assert!(!verify_primal(&sys, &[int(0), int(0)]));
    }

    #[test]
    fn solver_rejects_dependent_columns() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve_exact(m, vec![int(1), int(2)]).is_none());
        let m = vec![
            vec![int(2), int(0)],
            vec![int(0), int(4)],
            vec![int(0), int(0)],
        ];
        assert_eq!(
            solve_exact(m, vec![int(1), int(2), int(0)]),
            Some(vec![ratio(1, 2), ratio(1, 2)])
        );
    }
}
