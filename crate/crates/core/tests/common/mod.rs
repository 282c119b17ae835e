#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use realk::bcom::{BcomElement, BcomMonomial, KuElement, KuMonomial};
use realk::hz::{HZElement, HZMonomial};
use realk::kr::{KRElement, KRMonomial};
use realk::{FinAbGroup, RODegree};
use serde::Deserialize;

pub const WINDOWS_JSON: &str = include_str!("../data/coefficient_windows.json");

#[derive(Deserialize)]
pub struct Window {
    pub p_min: i64,
    pub p_max: i64,
    pub q_min: i64,
}

impl Window {
    pub fn contains(&self, p: i64, q: i64) -> bool {
        (self.p_min..=self.p_max).contains(&p) && q >= self.q_min && q <= p
    }

    pub fn degrees(&self) -> impl Iterator<Item = RODegree> + '_ {
        (self.p_min..=self.p_max)
            .flat_map(move |p| (self.q_min..=p).map(move |q| RODegree::new(p, q)))
    }
}

#[derive(Deserialize)]
pub struct Feature {
    pub class: String,
    pub group: String,
    pub start: [i64; 2],
    pub step: Option<[i64; 2]>,
}

#[derive(Deserialize)]
pub struct Windows {
    pub window: Window,
    pub kr: Vec<Feature>,
    pub hz: Vec<Feature>,
}

pub fn load_windows() -> Windows {
    serde_json::from_str(WINDOWS_JSON).expect("window data parses")
}

/// The group at every degree of the window implied by the features.
pub fn expand(window: &Window, features: &[Feature]) -> BTreeMap<(i64, i64), FinAbGroup> {
    let mut out = BTreeMap::new();
    for f in features {
        let g = match f.group.as_str() {
            "Z" => FinAbGroup::Z,
            "Z/2" => FinAbGroup::Z2,
            other => panic!("unknown group {other} for {}", f.class),
        };
        let [mut p, mut q] = f.start;
        loop {
            if !window.contains(p, q) {
                break;
            }
            let slot = out.entry((p, q)).or_insert(FinAbGroup::ZERO);
            *slot = *slot + g;
            match f.step {
                Some([dp, dq]) => {
                    p += dp;
                    q += dq;
                }
                None => break,
            }
        }
    }
    out
}

/// First degree in the window where `actual` disagrees with the features.
pub fn window_mismatch(
    window: &Window,
    features: &[Feature],
    actual: impl Fn(RODegree) -> FinAbGroup,
) -> Option<(RODegree, FinAbGroup, FinAbGroup)> {
    let expected = expand(window, features);
    window.degrees().find_map(|d| {
        let want = expected.get(&(d.p, d.q)).copied().unwrap_or(FinAbGroup::ZERO);
        let got = actual(d);
        (want != got).then_some((d, want, got))
    })
}

fn coeff<R: Rng>(rng: &mut R) -> BigInt {
    BigInt::from(rng.gen_range(-5i64..=5))
}

/// Up to `terms` random terms, exponents at most `max_exp`, reduced by the
/// ring relations.
pub fn random_kr<R: Rng>(rng: &mut R, max_exp: u32, terms: usize) -> KRElement {
    let mut x = KRElement::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let m = KRMonomial::new(
            rng.gen_range(0..=max_exp),
            rng.gen_range(0..=1),
            rng.gen_range(0..=max_exp),
            rng.gen_range(0..=max_exp),
        );
        if let Some((c, m)) = KRMonomial::reduce(coeff(rng), m) {
            x.add_term(c, m);
        }
    }
    x
}

pub fn random_hz<R: Rng>(rng: &mut R, max_exp: u32, terms: usize) -> HZElement {
    let mut x = HZElement::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let m = HZMonomial::new(rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp));
        x.add_term(coeff(rng), m);
    }
    x
}

pub fn random_ku<R: Rng>(rng: &mut R, max_index: u32, terms: usize) -> KuElement {
    let mut x = KuElement::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let m = KuMonomial::new(rng.gen_range(0..=max_index), rng.gen_range(0..=3));
        x.add_term(coeff(rng), m);
    }
    x
}

pub fn random_bcom<R: Rng>(rng: &mut R, max_index: u32, max_exp: u32, terms: usize) -> BcomElement {
    let mut x = BcomElement::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let alpha = random_kr(rng, max_exp, 1);
        let i = rng.gen_range(0..=max_index);
        for (m, c) in alpha.terms() {
            x.add_term(c.clone(), BcomMonomial::new(*m, i));
        }
    }
    x
}
