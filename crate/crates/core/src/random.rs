//! Seeded generators for monomials and table forms.
//!
//! Everything takes an explicit `Rng`, so a fixed seed reproduces a corpus.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::{Generator, Label, Mode, Monomial};
use crate::error::Result;
use crate::forms::{closure_key, Closure, LinearForm};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug)]
pub struct MonomialSpec {
    pub mode: Mode,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Labels are drawn from `1..=labels`.
    pub labels: Label,
    /// Field indices are drawn from `1..=fields`.
    pub fields: u32,
    /// Chance that an occurrence is a nonlocal generator.
    pub nonlocal_rate: f64,
}

impl MonomialSpec {
    pub fn local(mode: Mode, max_degree: usize, labels: Label) -> Self {
        MonomialSpec {
            mode,
            min_degree: 1,
            max_degree,
            labels,
            fields: 1,
            nonlocal_rate: 0.0,
        }
    }
}

fn random_generator<R: Rng + ?Sized>(rng: &mut R, spec: &MonomialSpec) -> Generator {
    let field = rng.gen_range(1..=spec.fields);
    if spec.labels >= 2 && rng.gen_bool(spec.nonlocal_rate) {
        let size = rng.gen_range(2..=spec.labels.min(3));
        let mut support = Vec::new();
        while support.len() < size as usize {
            let l = rng.gen_range(1..=spec.labels);
            if !support.contains(&l) {
                support.push(l);
            }
        }
        Generator::new(field, support).expect("support has at least two labels")
    } else {
        Generator::local(field, rng.gen_range(1..=spec.labels))
    }
}

pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, spec: &MonomialSpec) -> Monomial {
    let degree = rng.gen_range(spec.min_degree..=spec.max_degree);
    Monomial::new(spec.mode, (0..degree).map(|_| random_generator(rng, spec)))
}

/// `p/q` with `|p| <= max_abs` and `1 <= q <= max_den`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max_abs: i64, max_den: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-max_abs..=max_abs)),
        BigInt::from(rng.gen_range(1..=max_den)),
    )
}

/// Every sub-monomial (by occurrence positions) of `m`, unit included.
pub fn sub_monomials(m: &Monomial) -> Vec<Monomial> {
    let n = m.degree();
    let mut out: Vec<Monomial> = (0u64..1 << n)
        .map(|mask| {
            let positions: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            m.subword(&positions).canonical()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Table form with random values on all sub-monomials of `seeds`, the given
/// unit value, and `closure` applied.
pub fn random_table_form<R: Rng + ?Sized>(
    rng: &mut R,
    mode: Mode,
    seeds: &[Monomial],
    unit: Rational,
    closure: Closure,
) -> Result<LinearForm> {
    let mut values: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for seed in seeds {
        for sub in sub_monomials(seed) {
            if sub.is_unit() {
                continue;
            }
            let key = closure_key(&sub, closure);
            values
                .entry(key)
                .or_insert_with(|| random_rational(rng, 9, 4));
        }
    }
    values.insert(Monomial::unit(mode), unit);
    LinearForm::table(mode, values, closure)
}
