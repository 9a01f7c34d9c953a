//! Seeded random models for the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tamgame::model::{AgentType, CostModel, EffortLevel, GrandState, SingletonState, TamModel};
use tamgame::scalar::{int, ratio, Scalar};
use tamgame::thresholds::compute_deltas;
use tamgame::validate::ModelValidation;
use AgentType::{High as TH, Low as TL};
use EffortLevel::{High as EH, Low as EL};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn hundredths(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Scalar {
    ratio(rng.random_range(lo..=hi), 100)
}

fn bit_e(e: EffortLevel) -> i64 {
    i64::from(e == EH)
}

fn bit_t(t: AgentType) -> i64 {
    i64::from(t == TH)
}

/// Every validator except concavity passes, strict intelligence included.
pub fn is_valid(m: &TamModel, c: &CostModel) -> bool {
    let v = ModelValidation::run(m, c);
    v.required_pass() && v.intelligence_strict.passed
}

pub fn is_concave(m: &TamModel, c: &CostModel) -> bool {
    ModelValidation::run(m, c).concavity.passed
}

/// `base + a E + b T + k E T - q E^2 + g (e_1 t_1 + e_2 t_2) + noise`, with
/// `E`, `T` the effort and type counts and the noise shared by mirrored
/// states.
fn machine(rng: &mut ChaCha8Rng, concave: bool) -> TamModel {
    let a = hundredths(rng, 350, 700);
    let b = hundredths(rng, 100, 400);
    let k = hundredths(rng, 50, 200);
    let q = if concave {
        hundredths(rng, 40, 110)
    } else {
        hundredths(rng, -100, 100)
    };
    let g = hundredths(rng, 0, 40);
    let noise: Vec<Scalar> = (0..16).map(|_| hundredths(rng, -10, 10)).collect();
    let s0 = hundredths(rng, 200, 500);
    let alpha = hundredths(rng, 50, 300);
    let beta = hundredths(rng, 50, 300);
    let gamma = hundredths(rng, 10, 200);
    let index = |s: GrandState| {
        let s = s.min(s.swap());
        (bit_e(s.effort_1) * 8 + bit_e(s.effort_2) * 4 + bit_t(s.type_1) * 2 + bit_t(s.type_2))
            as usize
    };
    TamModel::from_fn(
        |s: SingletonState| {
            let (e, t) = (bit_e(s.effort), bit_t(s.agent_type));
            &s0 + &alpha * int(e) + &beta * int(t) + &gamma * int(e * t)
        },
        |s: GrandState| {
            let e = bit_e(s.effort_1) + bit_e(s.effort_2);
            let t = bit_t(s.type_1) + bit_t(s.type_2);
            let cross = bit_e(s.effort_1) * bit_t(s.type_1) + bit_e(s.effort_2) * bit_t(s.type_2);
            int(5) + &a * int(e) + &b * int(t) + &k * int(e * t) - &q * int(e * e)
                + &g * int(cross)
                + &noise[index(s)]
        },
    )
    .expect("generated values are positive")
}

fn floor_hundredths(x: &Scalar) -> i64 {
    let scaled = x * ratio(100, 1);
    scaled.floor().to_integer().try_into().unwrap()
}

/// Cost increments drawn around the share gains, so that the equilibrium
/// intervals are usually non-trivial.
fn cost_for(rng: &mut ChaCha8Rng, m: &TamModel) -> Option<CostModel> {
    let d = compute_deltas(m, &CostModel::zero());
    let gains = [
        d.gain(EH, TL, TL),
        d.gain(EL, TL, TL),
        d.gain(EH, TL, TH),
        d.gain(EL, TH, TL),
        d.gain(EL, TH, TH),
        d.gain(EH, TH, TH),
    ];
    let lo = gains.iter().map(|x| floor_hundredths(x)).min().unwrap() - 50;
    let hi = gains.iter().map(|x| floor_hundredths(x)).max().unwrap() + 50;
    let dc_low = hundredths(rng, lo, hi);
    let dc_high = hundredths(rng, lo, hi);
    if dc_high <= ratio(0, 1) || dc_high >= dc_low {
        return None;
    }
    let base_low = hundredths(rng, 100, 300);
    let base_high = &base_low - hundredths(rng, 10, 90);
    Some(CostModel::from_fn(|e, t| {
        let (base, inc) = if t == TL {
            (&base_low, &dc_low)
        } else {
            (&base_high, &dc_high)
        };
        if e == EH {
            base + inc
        } else {
            base.clone()
        }
    }))
}

fn draw(rng: &mut ChaCha8Rng, concave: bool) -> (TamModel, CostModel) {
    loop {
        let m = machine(rng, concave);
        let Some(c) = cost_for(rng, &m) else { continue };
        if is_valid(&m, &c) && (!concave || is_concave(&m, &c)) {
            return (m, c);
        }
    }
}

/// A model passing every validator.
pub fn random_valid(rng: &mut ChaCha8Rng) -> (TamModel, CostModel) {
    draw(rng, false)
}

/// A valid model that is also concave within type profiles.
pub fn random_concave(rng: &mut ChaCha8Rng) -> (TamModel, CostModel) {
    draw(rng, true)
}

pub fn valid_models(seed: u64, n: usize) -> Vec<(TamModel, CostModel)> {
    let mut r = rng(seed);
    (0..n).map(|_| random_valid(&mut r)).collect()
}

pub fn concave_models(seed: u64, n: usize) -> Vec<(TamModel, CostModel)> {
    let mut r = rng(seed);
    (0..n).map(|_| random_concave(&mut r)).collect()
}

/// Any symmetric machine with non-negative values; no other structure.
pub fn random_symmetric(rng: &mut ChaCha8Rng) -> TamModel {
    let singles: Vec<Scalar> = (0..4).map(|_| hundredths(rng, 0, 3000)).collect();
    let grand: Vec<Scalar> = (0..16).map(|_| hundredths(rng, 0, 5000)).collect();
    TamModel::from_fn(
        |s: SingletonState| singles[(bit_e(s.effort) * 2 + bit_t(s.agent_type)) as usize].clone(),
        |s: GrandState| {
            let s = s.min(s.swap());
            grand[(bit_e(s.effort_1) * 8
                + bit_e(s.effort_2) * 4
                + bit_t(s.type_1) * 2
                + bit_t(s.type_2)) as usize]
                .clone()
        },
    )
    .expect("non-negative values")
}
