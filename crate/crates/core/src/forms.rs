//! Linear forms on the algebra and their convolution calculus.
//!
//! A [`LinearForm`] is an immutable, cheaply clonable description: a table,
//! a closure over monomials, or a composite built by convolution, `exp*` or
//! `log*`. Evaluation is on basis monomials, extended linearly to
//! polynomials. Composite and table nodes memoize their values, so repeated
//! sub-evaluations (the block products of a partition sweep, the slots of a
//! graphication) are computed once per form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::algebra::{Generator, Label, Mode, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graphication::{graphicate_with, Bracketting, GraphicationOptions};
use crate::graphs::is_connected;
use crate::partitions::{for_each_position_partition, mobius_to_top, partition_cap};
use crate::scalar::Rational;

pub const DEFAULT_DEGREE_BOUND: usize = 10;

/// Relabelling invariance applied by table lookups.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Closure {
    /// Labels are significant.
    #[default]
    None,
    /// Invariant under every bijective relabelling.
    Symmetric,
    /// Invariant under increasing relabellings.
    QuasiSymmetric,
}

type MonomialFn = dyn Fn(&Monomial) -> Rational + Send + Sync;

#[derive(Clone)]
enum Kind {
    Zero,
    Counit,
    Table {
        entries: HashMap<Monomial, Rational>,
        closure: Closure,
    },
    Function(Arc<MonomialFn>),
    Linear(Vec<(Rational, LinearForm)>),
    Convolution(LinearForm, LinearForm),
    Exp(LinearForm),
    Log(LinearForm),
}

struct Node {
    mode: Mode,
    bound: usize,
    exec: Exec,
    kind: Kind,
    cache: Mutex<HashMap<Monomial, Rational>>,
}

/// A linear form on the free algebra of one mode.
#[derive(Clone)]
pub struct LinearForm {
    inner: Arc<Node>,
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.inner.kind {
            Kind::Zero => "zero",
            Kind::Counit => "counit",
            Kind::Table { .. } => "table",
            Kind::Function(_) => "function",
            Kind::Linear(_) => "linear",
            Kind::Convolution(..) => "convolution",
            Kind::Exp(_) => "exp",
            Kind::Log(_) => "log",
        };
        f.debug_struct("LinearForm")
            .field("mode", &self.inner.mode)
            .field("kind", &kind)
            .field("bound", &self.inner.bound)
            .finish()
    }
}

/// Representative of `m` under `closure`: labels compressed onto `1..k`,
/// minimized over all bijections in the symmetric case.
pub fn closure_key(m: &Monomial, closure: Closure) -> Monomial {
    let support: Vec<Label> = m.support().into_iter().collect();
    let relabel = |targets: &[Label]| {
        let map: BTreeMap<Label, Label> = support
            .iter()
            .copied()
            .zip(targets.iter().copied())
            .collect();
        m.relabel(&map).expect("bijective relabelling").canonical()
    };
    match closure {
        Closure::None => m.canonical(),
        Closure::QuasiSymmetric => relabel(&(1..=support.len() as Label).collect::<Vec<_>>()),
        Closure::Symmetric => {
            let mut targets: Vec<Label> = (1..=support.len() as Label).collect();
            let mut best = relabel(&targets);
            // Heap's algorithm over the targets.
            let k = targets.len();
            let mut c = vec![0usize; k];
            let mut i = 0;
            while i < k {
                if c[i] < i {
                    if i % 2 == 0 {
                        targets.swap(0, i);
                    } else {
                        targets.swap(c[i], i);
                    }
                    let candidate = relabel(&targets);
                    if candidate < best {
                        best = candidate;
                    }
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
            best
        }
    }
}

impl LinearForm {
    fn build(mode: Mode, bound: usize, exec: Exec, kind: Kind) -> Self {
        LinearForm {
            inner: Arc::new(Node {
                mode,
                bound,
                exec,
                kind,
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn zero(mode: Mode) -> Self {
        Self::build(mode, DEFAULT_DEGREE_BOUND, Exec::default(), Kind::Zero)
    }

    /// The counit `epsilon`: 1 on the unit, 0 elsewhere.
    pub fn counit(mode: Mode) -> Self {
        Self::build(mode, DEFAULT_DEGREE_BOUND, Exec::default(), Kind::Counit)
    }

    /// Finite table; unlisted monomials evaluate to 0. Entries whose keys
    /// coincide after closure must agree.
    pub fn table(
        mode: Mode,
        entries: impl IntoIterator<Item = (Monomial, Rational)>,
        closure: Closure,
    ) -> Result<Self> {
        let mut map: HashMap<Monomial, Rational> = HashMap::new();
        for (m, v) in entries {
            if m.mode() != mode {
                return Err(Error::ModeMismatch {
                    left: mode,
                    right: m.mode(),
                });
            }
            let key = closure_key(&m, closure);
            match map.get(&key) {
                Some(prev) if *prev != v => return Err(Error::DuplicateEntry(m)),
                _ => {
                    map.insert(key, v);
                }
            }
        }
        map.retain(|_, v| !v.is_zero());
        Ok(Self::build(
            mode,
            DEFAULT_DEGREE_BOUND,
            Exec::default(),
            Kind::Table {
                entries: map,
                closure,
            },
        ))
    }

    /// Pairing form: `t(a, b)` on the degree-2 monomial `ab`, 0 off degree 2.
    /// In noncommutative mode `ab` and `ba` are distinct entries.
    pub fn pairing(
        mode: Mode,
        entries: impl IntoIterator<Item = (Generator, Generator, Rational)>,
        closure: Closure,
    ) -> Result<Self> {
        let entries: Vec<(Monomial, Rational)> = entries
            .into_iter()
            .map(|(a, b, v)| (Monomial::new(mode, [a, b]), v))
            .collect();
        Self::table(mode, entries, closure)
    }

    /// Pairing form given by a propagator function.
    pub fn pairing_fn(
        mode: Mode,
        t: impl Fn(&Generator, &Generator) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Self::from_fn(mode, move |m| match m.factors() {
            [a, b] => t(a, b),
            _ => Rational::zero(),
        })
    }

    /// Value depending on the degree only: `moments[deg m]`, 0 past the end.
    pub fn moments(mode: Mode, moments: Vec<Rational>) -> Self {
        Self::from_fn(mode, move |m| {
            moments
                .get(m.degree())
                .cloned()
                .unwrap_or_else(Rational::zero)
        })
    }

    /// `prod_l f(x_{l})` over the support labels; 0 if a generator straddles
    /// two labels.
    pub fn independent(f: LinearForm) -> Self {
        let mode = f.mode();
        Self::from_fn(mode, move |m| {
            let mut value = Rational::one();
            for l in m.support() {
                let Some(part) = m.restrict(&[l].into_iter().collect()) else {
                    return Rational::zero();
                };
                value *= f
                    .evaluate_monomial(&part)
                    .unwrap_or_else(|_| Rational::zero());
            }
            if m.is_unit() {
                value = f.evaluate_monomial(m).unwrap_or_else(|_| Rational::zero());
            }
            value
        })
    }

    pub fn from_fn(mode: Mode, f: impl Fn(&Monomial) -> Rational + Send + Sync + 'static) -> Self {
        Self::build(
            mode,
            DEFAULT_DEGREE_BOUND,
            Exec::default(),
            Kind::Function(Arc::new(f)),
        )
    }

    /// `sum_i c_i f_i`.
    pub fn linear_combination(mode: Mode, parts: Vec<(Rational, LinearForm)>) -> Result<Self> {
        for (_, f) in &parts {
            check_mode(mode, f.mode())?;
        }
        let bound = parts
            .iter()
            .map(|(_, f)| f.bound())
            .min()
            .unwrap_or(DEFAULT_DEGREE_BOUND);
        Ok(Self::build(
            mode,
            bound,
            Exec::default(),
            Kind::Linear(parts),
        ))
    }

    pub fn add(&self, other: &LinearForm) -> Result<Self> {
        Self::linear_combination(
            self.mode(),
            vec![
                (Rational::one(), self.clone()),
                (Rational::one(), other.clone()),
            ],
        )
    }

    pub fn sub(&self, other: &LinearForm) -> Result<Self> {
        Self::linear_combination(
            self.mode(),
            vec![
                (Rational::one(), self.clone()),
                (-Rational::one(), other.clone()),
            ],
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::linear_combination(self.mode(), vec![(c.clone(), self.clone())]).expect("same mode")
    }

    /// Same form with another evaluation degree bound.
    pub fn with_bound(&self, bound: usize) -> Self {
        Self::build(
            self.inner.mode,
            bound,
            self.inner.exec,
            self.inner.kind.clone(),
        )
    }

    /// Same form with another execution policy for its internal expansions.
    pub fn with_exec(&self, exec: Exec) -> Self {
        Self::build(
            self.inner.mode,
            self.inner.bound,
            exec,
            self.inner.kind.clone(),
        )
    }

    pub fn mode(&self) -> Mode {
        self.inner.mode
    }

    pub fn bound(&self) -> usize {
        self.inner.bound
    }

    pub fn closure(&self) -> Closure {
        match &self.inner.kind {
            Kind::Table { closure, .. } => *closure,
            _ => Closure::None,
        }
    }

    /// Value on the unit monomial.
    pub fn unit_value(&self) -> Result<Rational> {
        self.evaluate_monomial(&Monomial::unit(self.mode()))
    }

    pub fn is_unital(&self) -> Result<bool> {
        Ok(self.unit_value()?.is_one())
    }

    pub fn is_infinitesimal(&self) -> Result<bool> {
        Ok(self.unit_value()?.is_zero())
    }

    pub fn evaluate(&self, p: &Polynomial) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in p.terms() {
            total += c * self.evaluate_monomial(m)?;
        }
        Ok(total)
    }

    pub fn evaluate_monomial(&self, m: &Monomial) -> Result<Rational> {
        check_mode(self.mode(), m.mode())?;
        if m.degree() > self.bound() {
            return Err(Error::DegreeBoundExceeded {
                degree: m.degree(),
                bound: self.bound(),
            });
        }
        let node = &*self.inner;
        match &node.kind {
            Kind::Zero => return Ok(Rational::zero()),
            Kind::Counit => {
                return Ok(if m.is_unit() {
                    Rational::one()
                } else {
                    Rational::zero()
                })
            }
            Kind::Function(f) => return Ok(f(m)),
            _ => {}
        }
        let key = m.canonical();
        if let Some(v) = node.cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let value = self.compute(&key)?;
        node.cache
            .lock()
            .expect("cache lock")
            .insert(key, value.clone());
        Ok(value)
    }

    fn compute(&self, m: &Monomial) -> Result<Rational> {
        let node = &*self.inner;
        match &node.kind {
            Kind::Zero | Kind::Counit | Kind::Function(_) => unreachable!("handled uncached"),
            Kind::Table { entries, closure } => Ok(entries
                .get(&closure_key(m, *closure))
                .cloned()
                .unwrap_or_else(Rational::zero)),
            Kind::Linear(parts) => {
                let mut total = Rational::zero();
                for (c, f) in parts {
                    total += c * f.evaluate_monomial(m)?;
                }
                Ok(total)
            }
            Kind::Convolution(f, g) => {
                let n = m.degree();
                let mut total = Rational::zero();
                for mask in 0u64..(1u64 << n) {
                    let (left, right): (Vec<usize>, Vec<usize>) =
                        (0..n).partition(|&i| mask >> i & 1 == 1);
                    let a = f.evaluate_monomial(&m.subword(&left).canonical())?;
                    if a.is_zero() {
                        continue;
                    }
                    total += a * g.evaluate_monomial(&m.subword(&right).canonical())?;
                }
                Ok(total)
            }
            Kind::Exp(tau) => {
                if m.is_unit() {
                    return Ok(Rational::one());
                }
                let options = GraphicationOptions {
                    exec: node.exec,
                    max_word_degree: node.bound,
                };
                let mut total = Rational::zero();
                for (gamma, s) in graphicate_with(m, &options)? {
                    let value = feynman_rule(tau, &gamma)?;
                    if !value.is_zero() {
                        total += s * value;
                    }
                }
                Ok(total)
            }
            Kind::Log(rho) => {
                if m.is_unit() {
                    return Ok(Rational::zero());
                }
                let n = m.degree();
                let cap = partition_cap();
                if n > cap {
                    return Err(Error::PartitionCapExceeded { size: n, cap });
                }
                let mut total = Rational::zero();
                let mut failure = None;
                for_each_position_partition(n, |blocks| {
                    if failure.is_some() {
                        return;
                    }
                    let mut product = mobius_to_top(blocks.len());
                    for block in blocks {
                        match rho.evaluate_monomial(&m.subword(block).canonical()) {
                            Ok(v) if v.is_zero() => return,
                            Ok(v) => product *= v,
                            Err(e) => {
                                failure = Some(e);
                                return;
                            }
                        }
                    }
                    total += product;
                });
                match failure {
                    Some(e) => Err(e),
                    None => Ok(total),
                }
            }
        }
    }
}

fn check_mode(left: Mode, right: Mode) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ModeMismatch { left, right })
    }
}

/// `(f * g)(m) = f(m_(1)) g(m_(2))`.
pub fn convolve(f: &LinearForm, g: &LinearForm) -> Result<LinearForm> {
    check_mode(f.mode(), g.mode())?;
    let bound = f.bound().min(g.bound());
    Ok(LinearForm::build(
        f.mode(),
        bound,
        Exec::default(),
        Kind::Convolution(f.clone(), g.clone()),
    ))
}

/// `f^{*k}`, with `f^{*0} = epsilon`.
pub fn conv_power(f: &LinearForm, k: usize) -> Result<LinearForm> {
    let mut acc = LinearForm::counit(f.mode()).with_bound(f.bound());
    for _ in 0..k {
        acc = convolve(&acc, f)?;
    }
    Ok(acc)
}

/// `exp*(tau) = tau o G`. Requires `tau(1) = 0`.
pub fn conv_exp(tau: &LinearForm) -> Result<LinearForm> {
    let unit = tau.unit_value()?;
    if !unit.is_zero() {
        return Err(Error::NotInfinitesimal(unit.to_string()));
    }
    Ok(LinearForm::build(
        tau.mode(),
        tau.bound(),
        Exec::default(),
        Kind::Exp(tau.clone()),
    ))
}

/// `log*(rho)` by the Möbius sweep over occurrence partitions. Requires
/// `rho(1) = 1`.
pub fn conv_log(rho: &LinearForm) -> Result<LinearForm> {
    let unit = rho.unit_value()?;
    if !unit.is_one() {
        return Err(Error::NotUnital(unit.to_string()));
    }
    Ok(LinearForm::build(
        rho.mode(),
        rho.bound(),
        Exec::default(),
        Kind::Log(rho.clone()),
    ))
}

/// `tau[u_1|...|u_k] = tau(u_1)...tau(u_k)`.
pub fn feynman_rule(tau: &LinearForm, gamma: &Bracketting) -> Result<Rational> {
    let mut value = Rational::one();
    for slot in gamma.slots() {
        let v = tau.evaluate_monomial(slot)?;
        if v.is_zero() {
            return Ok(v);
        }
        value *= v;
    }
    Ok(value)
}

/// `sum_{Gamma connected} s_Gamma^m tau[Gamma]`.
pub fn rho_connected(tau: &LinearForm, m: &Monomial) -> Result<Rational> {
    rho_connected_with(tau, m, Exec::default())
}

pub fn rho_connected_with(tau: &LinearForm, m: &Monomial, exec: Exec) -> Result<Rational> {
    let unit = tau.unit_value()?;
    if !unit.is_zero() {
        return Err(Error::NotInfinitesimal(unit.to_string()));
    }
    let options = GraphicationOptions {
        exec,
        max_word_degree: tau.bound(),
    };
    let mut total = Rational::zero();
    for (gamma, s) in graphicate_with(m, &options)? {
        if is_connected(&gamma) {
            total += s * feynman_rule(tau, &gamma)?;
        }
    }
    Ok(total)
}

/// `rho(numerator) / rho(denominator)`.
pub fn green_quotient(
    rho: &LinearForm,
    numerator: &Polynomial,
    denominator: &Polynomial,
) -> Result<Rational> {
    let den = rho.evaluate(denominator)?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(rho.evaluate(numerator)? / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ArityProfile;
    use crate::scalar::{factorial, int};

    fn phi(label: Label) -> Generator {
        Generator::local(1, label)
    }

    fn cm(labels: &[Label]) -> Monomial {
        Monomial::commutative(labels.iter().map(|&l| phi(l)))
    }

    fn t(i: Label, j: Label) -> Rational {
        let (i, j) = (i.min(j), i.max(j));
        int(10 * i as i64 + j as i64)
    }

    fn generic_pairing() -> LinearForm {
        LinearForm::pairing_fn(Mode::Commutative, |a, b| t(a.support()[0], b.support()[0]))
    }

    #[test]
    fn counit_and_units() {
        let e = LinearForm::counit(Mode::Commutative);
        assert!(e.is_unital().unwrap());
        assert_eq!(e.evaluate_monomial(&cm(&[1])).unwrap(), int(0));
        let bounded = e.with_bound(2);
        assert!(matches!(
            bounded.evaluate_monomial(&cm(&[1, 2, 3])),
            Err(Error::DegreeBoundExceeded {
                degree: 3,
                bound: 2
            })
        ));
    }

    #[test]
    fn pairing_vanishes_off_degree_two() {
        let tau = LinearForm::pairing(
            Mode::Commutative,
            [(phi(1), phi(2), int(1))],
            Closure::Symmetric,
        )
        .unwrap();
        assert_eq!(tau.evaluate_monomial(&cm(&[1, 2, 3])).unwrap(), int(0));
        assert_eq!(tau.evaluate_monomial(&cm(&[4, 7])).unwrap(), int(1));
    }

    #[test]
    fn wightman_pairing_is_order_sensitive() {
        let psi = |l| Generator::local(1, l);
        let tau = LinearForm::pairing(
            Mode::Noncommutative,
            [(psi(1), psi(2), int(3)), (psi(2), psi(1), int(5))],
            Closure::QuasiSymmetric,
        )
        .unwrap();
        let ab = Monomial::word([psi(1), psi(2)]);
        let ba = Monomial::word([psi(2), psi(1)]);
        assert_eq!(tau.evaluate_monomial(&ab).unwrap(), int(3));
        assert_eq!(tau.evaluate_monomial(&ba).unwrap(), int(5));
        // increasing relabelling keeps the orientation
        assert_eq!(
            tau.evaluate_monomial(&Monomial::word([psi(4), psi(9)]))
                .unwrap(),
            int(3)
        );
        assert_eq!(
            tau.evaluate_monomial(&Monomial::word([psi(9), psi(4)]))
                .unwrap(),
            int(5)
        );
    }

    #[test]
    fn closure_keys() {
        let m = Monomial::commutative([phi(7), phi(7), phi(3)]);
        assert_eq!(
            closure_key(&m, Closure::QuasiSymmetric),
            Monomial::commutative([phi(2), phi(2), phi(1)])
        );
        assert_eq!(
            closure_key(&m, Closure::Symmetric),
            Monomial::commutative([phi(1), phi(1), phi(2)])
        );
        let conflicting = LinearForm::table(
            Mode::Commutative,
            [(cm(&[1, 1, 2]), int(1)), (cm(&[3, 4, 4]), int(2))],
            Closure::Symmetric,
        );
        assert!(matches!(conflicting, Err(Error::DuplicateEntry(_))));
    }

    #[test]
    fn infinitesimal_square() {
        let tau = LinearForm::table(
            Mode::Commutative,
            [(cm(&[1]), int(2)), (cm(&[2]), int(7))],
            Closure::None,
        )
        .unwrap();
        let sq = convolve(&tau, &tau).unwrap();
        assert_eq!(sq.evaluate_monomial(&cm(&[1, 2])).unwrap(), int(2 * 2 * 7));
    }

    #[test]
    fn wick_four_points() {
        let rho = conv_exp(&generic_pairing()).unwrap();
        let expected = t(1, 2) * t(3, 4) + t(1, 3) * t(2, 4) + t(1, 4) * t(2, 3);
        assert_eq!(rho.evaluate_monomial(&cm(&[1, 2, 3, 4])).unwrap(), expected);
        assert_eq!(rho.evaluate_monomial(&cm(&[1, 2, 3])).unwrap(), int(0));
        assert!(rho.is_unital().unwrap());
        let eps = conv_exp(&LinearForm::zero(Mode::Commutative)).unwrap();
        assert_eq!(eps.evaluate_monomial(&cm(&[1, 1])).unwrap(), int(0));
        assert_eq!(eps.unit_value().unwrap(), int(1));
    }

    #[test]
    fn exp_matches_power_series() {
        let tau = LinearForm::table(
            Mode::Commutative,
            [
                (cm(&[1]), int(1)),
                (cm(&[1, 2]), int(3)),
                (cm(&[1, 1]), int(-2)),
                (cm(&[2, 2, 1]), int(5)),
            ],
            Closure::Symmetric,
        )
        .unwrap();
        let rho = conv_exp(&tau).unwrap();
        for m in [cm(&[1, 1, 2]), cm(&[1, 2, 3]), cm(&[1, 1, 2, 2])] {
            let mut series = Rational::zero();
            for k in 0..=m.degree() {
                series +=
                    conv_power(&tau, k).unwrap().evaluate_monomial(&m).unwrap() / factorial(k);
            }
            assert_eq!(rho.evaluate_monomial(&m).unwrap(), series, "{m}");
        }
    }

    #[test]
    fn log_examples() {
        let rho = LinearForm::table(
            Mode::Commutative,
            [
                (Monomial::unit(Mode::Commutative), int(1)),
                (cm(&[1]), int(2)),
                (cm(&[2]), int(3)),
                (cm(&[1, 2]), int(11)),
            ],
            Closure::None,
        )
        .unwrap();
        let tau = conv_log(&rho).unwrap();
        assert_eq!(tau.evaluate_monomial(&cm(&[1])).unwrap(), int(2));
        assert_eq!(tau.evaluate_monomial(&cm(&[1, 2])).unwrap(), int(11 - 6));
        assert!(tau.is_infinitesimal().unwrap());
        assert!(matches!(
            conv_log(&LinearForm::zero(Mode::Commutative)),
            Err(Error::NotUnital(_))
        ));
    }

    #[test]
    fn gaussian_cumulants() {
        let moments = [1, 0, 1, 0, 3, 0, 15].map(int).to_vec();
        let tau = conv_log(&LinearForm::moments(Mode::Commutative, moments)).unwrap();
        let x = Monomial::commutative([phi(1)]);
        let cumulants: Vec<_> = (1..=6)
            .map(|n| tau.evaluate_monomial(&x.pow(n)).unwrap())
            .collect();
        assert_eq!(cumulants, [0, 1, 0, 0, 0, 0].map(int).to_vec());
    }

    #[test]
    fn log_matches_power_series() {
        let rho = LinearForm::table(
            Mode::Commutative,
            [
                (Monomial::unit(Mode::Commutative), int(1)),
                (cm(&[1]), int(2)),
                (cm(&[1, 1]), int(-1)),
                (cm(&[1, 2]), int(4)),
                (cm(&[1, 1, 2]), int(3)),
            ],
            Closure::Symmetric,
        )
        .unwrap();
        let tau = conv_log(&rho).unwrap();
        let delta = rho.sub(&LinearForm::counit(Mode::Commutative)).unwrap();
        for m in [cm(&[1, 1, 2]), cm(&[1, 2, 3]), cm(&[1, 1, 2, 3])] {
            let mut series = Rational::zero();
            for k in 1..=m.degree() {
                let sign = if k % 2 == 1 { int(1) } else { int(-1) };
                series += sign
                    * conv_power(&delta, k)
                        .unwrap()
                        .evaluate_monomial(&m)
                        .unwrap()
                    / int(k as i64);
            }
            assert_eq!(tau.evaluate_monomial(&m).unwrap(), series, "{m}");
        }
    }

    #[test]
    fn round_trip_words() {
        let psi = |l| Generator::local(1, l);
        let w = |ls: &[Label]| Monomial::word(ls.iter().map(|&l| psi(l)));
        let tau = LinearForm::table(
            Mode::Noncommutative,
            [
                (w(&[1]), int(2)),
                (w(&[1, 2]), int(3)),
                (w(&[2, 1]), int(-1)),
                (w(&[1, 2, 1]), int(7)),
            ],
            Closure::QuasiSymmetric,
        )
        .unwrap();
        let back = conv_log(&conv_exp(&tau).unwrap()).unwrap();
        for m in [w(&[1, 2, 1]), w(&[2, 1, 3, 1]), w(&[3, 1, 2])] {
            assert_eq!(
                back.evaluate_monomial(&m).unwrap(),
                tau.evaluate_monomial(&m).unwrap(),
                "{m}"
            );
        }
    }

    #[test]
    fn connected_part() {
        let tau = generic_pairing();
        assert_eq!(rho_connected(&tau, &cm(&[1, 2])).unwrap(), t(1, 2));
        assert_eq!(rho_connected(&tau, &cm(&[1, 2, 3, 4])).unwrap(), int(0));
        let single =
            LinearForm::table(Mode::Commutative, [(cm(&[1]), int(9))], Closure::None).unwrap();
        assert_eq!(rho_connected(&single, &cm(&[1])).unwrap(), int(9));
    }

    #[test]
    fn polynomial_evaluation_and_quotient() {
        let profile = ArityProfile::local(Mode::Commutative, 1);
        let rho = conv_exp(&generic_pairing()).unwrap();
        let p = Polynomial::from_terms(
            profile.clone(),
            [
                (cm(&[1, 2]), int(2)),
                (Monomial::unit(Mode::Commutative), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(rho.evaluate(&p).unwrap(), int(2) * t(1, 2) + int(1));
        let one = Polynomial::one(profile.clone());
        assert_eq!(
            green_quotient(&rho, &p, &one).unwrap(),
            rho.evaluate(&p).unwrap()
        );
        let zero = Polynomial::zero(profile);
        assert_eq!(green_quotient(&rho, &p, &zero), Err(Error::ZeroDenominator));
    }

    #[test]
    fn independent_moments_factorize() {
        let single = LinearForm::moments(Mode::Commutative, [1, 2, 5].map(int).to_vec());
        let rho = LinearForm::independent(single);
        assert_eq!(rho.evaluate_monomial(&cm(&[1, 1, 2])).unwrap(), int(10));
        let tau = conv_log(&rho).unwrap();
        assert_eq!(tau.evaluate_monomial(&cm(&[1, 2])).unwrap(), int(0));
    }
}
