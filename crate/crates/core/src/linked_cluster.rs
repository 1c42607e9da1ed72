//! Linked-cluster identities as executable checks.
//!
//! The combinatorial side compares the connected-diagram sum of `log* rho`
//! with the Möbius inversion of the partition expectations `rho^x(t)`. The
//! functional side compares the logarithm of a moment generating series with
//! the generating series of connected diagrams built on an admissible family
//! `T -> P(T)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{ArityProfile, Label, Mode, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::forms::{conv_exp, conv_log, rho_connected_with, Closure, LinearForm};
use crate::graphication::{graphicate_with, Bracketting, GraphicationOptions};
use crate::graphs::is_connected;
use crate::partitions::{enumerate_partitions, mobius_to_top, SetPartition};
use crate::scalar::{factorial, int, Rational};

/// Largest total number of occurrences in `P([N])` accepted by the series
/// builders.
pub const DEFAULT_OCCURRENCE_CAP: usize = 12;

/// `t -> rho^x(t) = rho(x_{T_1}) ... rho(x_{T_k})`.
#[derive(Clone, Debug)]
pub struct PartitionExpectation {
    rho: LinearForm,
    x: Monomial,
}

impl PartitionExpectation {
    pub fn new(rho: LinearForm, x: Monomial) -> Self {
        PartitionExpectation { rho, x }
    }

    pub fn monomial(&self) -> &Monomial {
        &self.x
    }

    /// Zero as soon as one block cuts through a nonlocal generator.
    pub fn eval(&self, t: &SetPartition) -> Result<Rational> {
        let mut value = Rational::one();
        for block in t.blocks() {
            let labels: BTreeSet<Label> = block.iter().copied().collect();
            let Some(part) = self.x.restrict(&labels) else {
                return Ok(Rational::zero());
            };
            let v = self.rho.evaluate_monomial(&part)?;
            if v.is_zero() {
                return Ok(v);
            }
            value *= v;
        }
        Ok(value)
    }
}

/// `sum_t rho^x(t) mu(t, 1)` over the partitions of `support(x)`.
pub fn mobius_inverted(rho: &LinearForm, x: &Monomial) -> Result<Rational> {
    let ground: Vec<Label> = x.support().into_iter().collect();
    if ground.is_empty() {
        return Err(Error::InvalidPartition("monomial has empty support".into()));
    }
    let expectation = PartitionExpectation::new(rho.clone(), x.clone());
    let mut total = Rational::zero();
    for t in enumerate_partitions(&ground)? {
        let v = expectation.eval(&t)?;
        if !v.is_zero() {
            total += v * mobius_to_top(t.len());
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LctReport {
    pub monomial: Monomial,
    /// Connected-diagram sum of `log* rho`.
    pub lhs: Rational,
    /// Möbius-inverted expectation.
    pub rhs: Rational,
    pub equal: bool,
}

impl fmt::Display for LctReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: connected = {}, mobius = {}, {}",
            self.monomial,
            self.lhs,
            self.rhs,
            verdict(self.equal)
        )
    }
}

fn verdict(equal: bool) -> &'static str {
    if equal {
        "equal"
    } else {
        "DIFFERENT"
    }
}

pub fn check_combinatorial_lct(rho: &LinearForm, x: &Monomial) -> Result<LctReport> {
    let tau = conv_log(rho)?;
    check_with_log(rho, &tau, x, Exec::default())
}

fn check_with_log(
    rho: &LinearForm,
    tau: &LinearForm,
    x: &Monomial,
    exec: Exec,
) -> Result<LctReport> {
    let lhs = rho_connected_with(tau, x, exec)?;
    let rhs = mobius_inverted(rho, x)?;
    let equal = lhs == rhs;
    Ok(LctReport {
        monomial: x.clone(),
        lhs,
        rhs,
        equal,
    })
}

/// Runs independent checks under `exec`; results come back in input order.
pub fn check_combinatorial_batch(
    cases: &[(LinearForm, Monomial)],
    exec: Exec,
) -> Vec<Result<LctReport>> {
    exec.map(cases, |(rho, x)| {
        let tau = conv_log(rho)?;
        check_with_log(rho, &tau, x, Exec::Sequential)
    })
}

type PatternFn = dyn Fn(&[Label]) -> Polynomial + Send + Sync;

#[derive(Clone)]
enum Pattern {
    PerPoint(Polynomial),
    Custom(Arc<PatternFn>),
}

/// An interaction pattern `T -> P(T)` with `P(empty) = 1`.
#[derive(Clone)]
pub struct AdmissibleFamily {
    profile: ArityProfile,
    pattern: Pattern,
}

impl fmt::Debug for AdmissibleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.pattern {
            Pattern::PerPoint(p) => write!(f, "AdmissibleFamily(per point: {p})"),
            Pattern::Custom(_) => write!(f, "AdmissibleFamily(custom)"),
        }
    }
}

impl AdmissibleFamily {
    /// `P(T) = prod_{t in T, increasing} p(x_t)`; `p` must live on `x1`.
    pub fn per_point(pattern: Polynomial) -> Result<Self> {
        let point: BTreeSet<Label> = [1].into_iter().collect();
        for m in pattern.terms().keys() {
            if !m.support().is_subset(&point) {
                return Err(Error::InvalidPattern(m.clone()));
            }
        }
        Ok(AdmissibleFamily {
            profile: pattern.profile().clone(),
            pattern: Pattern::PerPoint(pattern),
        })
    }

    /// Arbitrary rule; the instantiation receives the labels of `T` in
    /// increasing order.
    pub fn custom(
        profile: ArityProfile,
        rule: impl Fn(&[Label]) -> Polynomial + Send + Sync + 'static,
    ) -> Self {
        AdmissibleFamily {
            profile,
            pattern: Pattern::Custom(Arc::new(rule)),
        }
    }

    pub fn mode(&self) -> Mode {
        self.profile.mode()
    }

    pub fn profile(&self) -> &ArityProfile {
        &self.profile
    }

    /// `P(T)` for `T` given as a set of labels.
    pub fn instantiate(&self, labels: &[Label]) -> Result<Polynomial> {
        let sorted: Vec<Label> = labels
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        match &self.pattern {
            Pattern::Custom(rule) => {
                if sorted.is_empty() {
                    return Ok(Polynomial::one(self.profile.clone()));
                }
                Ok(rule(&sorted))
            }
            Pattern::PerPoint(p) => {
                let mut acc = Polynomial::one(self.profile.clone());
                for &l in &sorted {
                    let map: BTreeMap<Label, Label> = [(1, l)].into_iter().collect();
                    acc = acc.multiply(&p.relabel(&map)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// `P([n])`.
    pub fn points(&self, n: usize) -> Result<Polynomial> {
        self.instantiate(&(1..=n as Label).collect::<Vec<_>>())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub max_size: usize,
    pub equivariant: bool,
    pub splitting: bool,
    /// First failure, as text.
    pub failure: Option<String>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.equivariant && self.splitting
    }
}

type TensorMap = BTreeMap<(Monomial, Monomial), Rational>;

fn split_tensor(p: &Polynomial, u: &BTreeSet<Label>, v: &BTreeSet<Label>) -> TensorMap {
    let mut out = TensorMap::new();
    for (b, c) in p.terms() {
        let (Some(bu), Some(bv)) = (b.restrict(u), b.restrict(v)) else {
            continue;
        };
        *out.entry((bu, bv)).or_insert_with(Rational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn product_tensor(pu: &Polynomial, pv: &Polynomial) -> TensorMap {
    let mut out = TensorMap::new();
    for (a, ca) in pu.terms() {
        for (b, cb) in pv.terms() {
            *out.entry((a.clone(), b.clone()))
                .or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Checks increasing-relabelling equivariance and the splitting condition
/// `sum_b mu_b (P_b)_U (x) (P_b)_V = P(U) (x) P(V)` for all `T = [n]`,
/// `n <= max_size`, and all splits of `T`.
pub fn verify_admissible(
    family: &AdmissibleFamily,
    max_size: usize,
) -> Result<AdmissibilityReport> {
    let mut report = AdmissibilityReport {
        max_size,
        equivariant: true,
        splitting: true,
        failure: None,
    };
    for n in 0..=max_size {
        let t: Vec<Label> = (1..=n as Label).collect();
        let pt = family.instantiate(&t)?;
        let spread: Vec<Label> = t.iter().map(|&l| 3 * l + 1).collect();
        let map: BTreeMap<Label, Label> = t.iter().copied().zip(spread.iter().copied()).collect();
        if pt.relabel(&map)? != family.instantiate(&spread)? {
            report.equivariant = false;
            report
                .failure
                .get_or_insert_with(|| format!("P([{n}]) is not equivariant"));
        }
        for mask in 0u32..(1 << n) {
            let (u, v): (Vec<Label>, Vec<Label>) =
                t.iter().partition(|&&l| mask >> (l - 1) & 1 == 1);
            let lhs = split_tensor(
                &pt,
                &u.iter().copied().collect(),
                &v.iter().copied().collect(),
            );
            let rhs = product_tensor(&family.instantiate(&u)?, &family.instantiate(&v)?);
            if lhs != rhs {
                report.splitting = false;
                report
                    .failure
                    .get_or_insert_with(|| format!("splitting fails for U = {u:?}, V = {v:?}"));
            }
        }
    }
    Ok(report)
}

/// Truncated power series with exact coefficients `c_0 .. c_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSeries {
    pub coeffs: Vec<Rational>,
}

impl MomentSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        MomentSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficient(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficientwise product truncated at the smaller order.
    pub fn mul(&self, other: &MomentSeries) -> MomentSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|k| self.coefficient(k) * other.coefficient(n - k))
                    .sum()
            })
            .collect();
        MomentSeries { coeffs }
    }

    /// Formal logarithm; needs constant term 1.
    pub fn log(&self) -> Result<MomentSeries> {
        if !self.coefficient(0).is_one() {
            return Err(Error::SeriesNotUnital);
        }
        // n a_n = sum_{k=1}^n k l_k a_{n-k}
        let a = &self.coeffs;
        let mut l = vec![Rational::zero(); a.len()];
        for n in 1..a.len() {
            let mut s = Rational::zero();
            for k in 1..n {
                s += int(k as i64) * &l[k] * &a[n - k];
            }
            l[n] = &a[n] - s / int(n as i64);
        }
        Ok(MomentSeries { coeffs: l })
    }

    /// Formal exponential; needs constant term 0.
    pub fn exp(&self) -> Result<MomentSeries> {
        if !self.coefficient(0).is_zero() {
            return Err(Error::NotInfinitesimal(self.coefficient(0).to_string()));
        }
        let l = &self.coeffs;
        let mut a = vec![Rational::zero(); l.len().max(1)];
        a[0] = Rational::one();
        for n in 1..l.len() {
            let mut s = Rational::zero();
            for k in 1..=n {
                s += int(k as i64) * &l[k] * &a[n - k];
            }
            a[n] = s / int(n as i64);
        }
        Ok(MomentSeries { coeffs: a })
    }
}

impl fmt::Display for MomentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn series_log(s: &MomentSeries) -> Result<MomentSeries> {
    s.log()
}

fn check_order(family: &AdmissibleFamily, order: usize, cap: usize) -> Result<()> {
    let occurrences = family
        .points(order)?
        .terms()
        .keys()
        .map(Monomial::degree)
        .max()
        .unwrap_or(0);
    if occurrences > cap {
        return Err(Error::OrderCapExceeded { order, cap });
    }
    Ok(())
}

/// `rho_hat(n) = rho(P([n])) / n!` for `n <= order`.
pub fn moment_series(
    rho: &LinearForm,
    family: &AdmissibleFamily,
    order: usize,
) -> Result<MomentSeries> {
    moment_series_with(rho, family, order, DEFAULT_OCCURRENCE_CAP, Exec::default())
}

/// As [`moment_series`], also checking that a second increasing
/// instantiation gives the same value.
pub fn moment_series_with(
    rho: &LinearForm,
    family: &AdmissibleFamily,
    order: usize,
    cap: usize,
    exec: Exec,
) -> Result<MomentSeries> {
    check_order(family, order, cap)?;
    let orders: Vec<usize> = (0..=order).collect();
    let coeffs = exec.map(&orders, |&n| {
        let first = rho.evaluate(&family.points(n)?)?;
        let shifted: Vec<Label> = (1..=n as Label).map(|l| 2 * l + 1).collect();
        if rho.evaluate(&family.instantiate(&shifted)?)? != first {
            return Err(Error::NotScalarSpecies(n));
        }
        Ok(first / factorial(n))
    });
    Ok(MomentSeries {
        coeffs: coeffs.into_iter().collect::<Result<_>>()?,
    })
}

/// Coefficient `n`: `(1/n!) sum_b lambda_b sum_{Gamma connected} s_Gamma^b tau[Gamma]`
/// over the basis decomposition `P([n]) = sum_b lambda_b b`.
pub fn connected_series(
    tau: &LinearForm,
    family: &AdmissibleFamily,
    order: usize,
) -> Result<MomentSeries> {
    connected_series_with(tau, family, order, DEFAULT_OCCURRENCE_CAP, Exec::default())
}

pub fn connected_series_with(
    tau: &LinearForm,
    family: &AdmissibleFamily,
    order: usize,
    cap: usize,
    exec: Exec,
) -> Result<MomentSeries> {
    check_order(family, order, cap)?;
    let orders: Vec<usize> = (0..=order).collect();
    let coeffs = exec.map(&orders, |&n| {
        let mut total = Rational::zero();
        for (b, lambda) in family.points(n)?.terms() {
            if b.is_unit() {
                continue;
            }
            total += lambda * rho_connected_with(tau, b, Exec::Sequential)?;
        }
        Ok(total / factorial(n))
    });
    Ok(MomentSeries {
        coeffs: coeffs.into_iter().collect::<Result<_>>()?,
    })
}

/// One connected diagram on `[n]` with its aggregated symmetry factor
/// `s^n = sum_b lambda_b s^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedDiagram {
    pub bracketting: Bracketting,
    pub symmetry: Rational,
    /// Some basis monomial of `P([n])` with the same generator content has
    /// `s^b = 0` on this diagram.
    pub partial: bool,
}

/// Connected diagrams of `P([n])`, in bracketting order.
pub fn connected_diagrams(
    family: &AdmissibleFamily,
    n: usize,
    exec: Exec,
) -> Result<Vec<ConnectedDiagram>> {
    let options = GraphicationOptions {
        exec,
        ..Default::default()
    };
    let basis = family.points(n)?;
    let content = |m: &Monomial| Monomial::commutative(m.factors().iter().cloned());
    let mut found: BTreeMap<Bracketting, (Rational, BTreeSet<Monomial>)> = BTreeMap::new();
    for (b, lambda) in basis.terms() {
        if b.is_unit() {
            continue;
        }
        for (gamma, s) in graphicate_with(b, &options)? {
            if is_connected(&gamma) {
                let entry = found
                    .entry(gamma)
                    .or_insert_with(|| (Rational::zero(), BTreeSet::new()));
                entry.0 += lambda * s;
                entry.1.insert(b.clone());
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(gamma, (symmetry, sources))| {
            let key = content(&gamma.product());
            let partial = basis
                .terms()
                .keys()
                .any(|b| content(b) == key && !sources.contains(b));
            ConnectedDiagram {
                bracketting: gamma,
                symmetry,
                partial,
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlctReport {
    /// `log` of the moment series of `exp* tau`.
    pub lhs: MomentSeries,
    /// Connected-diagram series of `tau`.
    pub rhs: MomentSeries,
    pub equal: bool,
}

impl fmt::Display for FlctReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "log moment series = {}", self.lhs)?;
        writeln!(f, "connected series  = {}", self.rhs)?;
        write!(f, "{}", verdict(self.equal))
    }
}

pub fn check_functional_lct(
    tau: &LinearForm,
    family: &AdmissibleFamily,
    order: usize,
) -> Result<FlctReport> {
    check_functional_lct_with(tau, family, order, DEFAULT_OCCURRENCE_CAP, Exec::default())
}

pub fn check_functional_lct_with(
    tau: &LinearForm,
    family: &AdmissibleFamily,
    order: usize,
    cap: usize,
    exec: Exec,
) -> Result<FlctReport> {
    let rho = conv_exp(tau)?;
    let lhs = moment_series_with(&rho, family, order, cap, exec)?.log()?;
    let rhs = connected_series_with(tau, family, order, cap, exec)?;
    let equal = lhs == rhs;
    Ok(FlctReport { lhs, rhs, equal })
}

fn validate_closed(mode: Mode, values: &BTreeMap<Monomial, Rational>) -> Result<usize> {
    let mut max_degree = 0;
    for m in values.keys() {
        if m.mode() != mode {
            return Err(Error::ModeMismatch {
                left: mode,
                right: m.mode(),
            });
        }
        let n = m.degree();
        max_degree = max_degree.max(n);
        for mask in 1u64..(1u64 << n).saturating_sub(1) {
            let positions: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let sub = m.subword(&positions).canonical();
            if !values.contains_key(&sub) {
                return Err(Error::MissingMoment(sub));
            }
        }
    }
    Ok(max_degree)
}

fn table_form(
    mode: Mode,
    values: &BTreeMap<Monomial, Rational>,
    unit: Rational,
    bound: usize,
) -> Result<LinearForm> {
    let mut entries: Vec<(Monomial, Rational)> = values
        .iter()
        .map(|(m, v)| (m.canonical(), v.clone()))
        .collect();
    entries.push((Monomial::unit(mode), unit));
    Ok(LinearForm::table(mode, entries, Closure::None)?.with_bound(bound))
}

/// Cumulants `E_c[m]` from moments `E[m]`; every sub-monomial of a key must
/// itself be a key. In noncommutative mode these are the truncated
/// functions with ordered blocks.
pub fn moments_to_cumulants(
    mode: Mode,
    moments: &BTreeMap<Monomial, Rational>,
) -> Result<BTreeMap<Monomial, Rational>> {
    let bound = validate_closed(mode, moments)?;
    let tau = conv_log(&table_form(mode, moments, Rational::one(), bound)?)?;
    moments
        .keys()
        .map(|m| Ok((m.clone(), tau.evaluate_monomial(m)?)))
        .collect()
}

/// Inverse of [`moments_to_cumulants`].
pub fn cumulants_to_moments(
    mode: Mode,
    cumulants: &BTreeMap<Monomial, Rational>,
) -> Result<BTreeMap<Monomial, Rational>> {
    let bound = validate_closed(mode, cumulants)?;
    let rho = conv_exp(&table_form(mode, cumulants, Rational::zero(), bound)?)?;
    cumulants
        .keys()
        .map(|m| Ok((m.clone(), rho.evaluate_monomial(m)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    fn phi(label: Label) -> Generator {
        Generator::local(1, label)
    }

    fn cm(labels: &[Label]) -> Monomial {
        Monomial::commutative(labels.iter().map(|&l| phi(l)))
    }

    fn unit_pairing() -> LinearForm {
        LinearForm::pairing_fn(Mode::Commutative, |_, _| int(1))
    }

    fn single_field() -> AdmissibleFamily {
        let profile = ArityProfile::local(Mode::Commutative, 1);
        AdmissibleFamily::per_point(Polynomial::from_monomial(profile, cm(&[1])).unwrap()).unwrap()
    }

    fn sample_form() -> LinearForm {
        LinearForm::table(
            Mode::Commutative,
            [
                (Monomial::unit(Mode::Commutative), int(1)),
                (cm(&[1]), int(2)),
                (cm(&[1, 1]), int(5)),
                (cm(&[1, 2]), int(-3)),
                (cm(&[1, 1, 2]), int(7)),
                (cm(&[1, 2, 3]), int(4)),
                (cm(&[1, 1, 2, 3]), int(-1)),
            ],
            Closure::Symmetric,
        )
        .unwrap()
    }

    #[test]
    fn mobius_inverted_examples() {
        let rho = sample_form();
        assert_eq!(mobius_inverted(&rho, &cm(&[1, 1])).unwrap(), int(5));
        assert_eq!(mobius_inverted(&rho, &cm(&[1, 2])).unwrap(), int(-3 - 4));
        let coulomb = Generator::new(1, [1, 2]).unwrap();
        let x = Monomial::commutative([coulomb]);
        let rho = LinearForm::table(
            Mode::Commutative,
            [
                (Monomial::unit(Mode::Commutative), int(1)),
                (x.clone(), int(6)),
            ],
            Closure::None,
        )
        .unwrap();
        assert_eq!(mobius_inverted(&rho, &x).unwrap(), int(6));
    }

    #[test]
    fn combinatorial_identity() {
        let rho = sample_form();
        for x in [cm(&[1, 1, 2, 3]), cm(&[1, 2, 3]), cm(&[1, 1, 2])] {
            let report = check_combinatorial_lct(&rho, &x).unwrap();
            assert!(report.equal, "{report}");
        }
    }

    #[test]
    fn series_log_examples() {
        let one = MomentSeries::new(vec![int(1), int(0), int(0)]);
        assert_eq!(series_log(&one).unwrap().coeffs, vec![int(0); 3]);
        let s = MomentSeries::new(vec![int(1), int(1), int(0), int(0), int(0)]);
        let expected: Vec<Rational> = vec![
            int(0),
            int(1),
            Rational::new((-1).into(), 2.into()),
            Rational::new(1.into(), 3.into()),
            Rational::new((-1).into(), 4.into()),
        ];
        assert_eq!(series_log(&s).unwrap().coeffs, expected);
        assert_eq!(series_log(&s).unwrap().exp().unwrap(), s);
        assert_eq!(
            series_log(&MomentSeries::new(vec![int(2)])),
            Err(Error::SeriesNotUnital)
        );
    }

    #[test]
    fn gaussian_matching_series() {
        let rho = conv_exp(&unit_pairing()).unwrap();
        let s = moment_series(&rho, &single_field(), 4).unwrap();
        assert_eq!(s.coefficient(2), Rational::new(1.into(), 2.into()));
        assert_eq!(s.coefficient(4), Rational::new(3.into(), 24.into()));
        let log = s.log().unwrap();
        assert_eq!(
            log.coeffs,
            vec![
                int(0),
                int(0),
                Rational::new(1.into(), 2.into()),
                int(0),
                int(0)
            ]
        );
    }

    #[test]
    fn functional_identity_single_field() {
        let report = check_functional_lct(&unit_pairing(), &single_field(), 6).unwrap();
        assert!(report.equal, "{report}");
        let zero =
            check_functional_lct(&LinearForm::zero(Mode::Commutative), &single_field(), 3).unwrap();
        assert!(zero.equal);
        assert!(zero.rhs.coeffs.iter().all(Zero::is_zero));
    }

    #[test]
    fn product_family_is_admissible() {
        let profile = ArityProfile::local(Mode::Commutative, 2);
        let p = Polynomial::from_terms(
            profile,
            [
                (cm(&[1, 1]), int(1)),
                (Monomial::commutative([Generator::local(2, 1)]), int(3)),
            ],
        )
        .unwrap();
        let family = AdmissibleFamily::per_point(p).unwrap();
        assert!(verify_admissible(&family, 4).unwrap().passed());

        let profile = ArityProfile::local(Mode::Commutative, 1);
        let broken = AdmissibleFamily::custom(profile.clone(), move |labels| {
            let m = Monomial::commutative(labels.iter().map(|&l| phi(l)));
            Polynomial::from_monomial(profile.clone(), m.pow(labels.len())).unwrap()
        });
        assert!(!verify_admissible(&broken, 3).unwrap().passed());
    }

    #[test]
    fn cumulant_tables() {
        let moments: BTreeMap<Monomial, Rational> = [
            (cm(&[1]), int(2)),
            (cm(&[2]), int(3)),
            (cm(&[1, 2]), int(6)),
        ]
        .into_iter()
        .collect();
        let cumulants = moments_to_cumulants(Mode::Commutative, &moments).unwrap();
        assert_eq!(cumulants[&cm(&[1, 2])], int(0));
        assert_eq!(
            cumulants_to_moments(Mode::Commutative, &cumulants).unwrap(),
            moments
        );
        let missing: BTreeMap<Monomial, Rational> = [(cm(&[1, 2]), int(1))].into_iter().collect();
        assert!(matches!(
            moments_to_cumulants(Mode::Commutative, &missing),
            Err(Error::MissingMoment(_))
        ));
    }

    #[test]
    fn diagrams_of_two_points() {
        let diagrams = connected_diagrams(&single_field(), 2, Exec::Sequential).unwrap();
        assert_eq!(diagrams.len(), 1);
        assert_eq!(diagrams[0].symmetry, int(1));
        assert!(!diagrams[0].partial);
    }
}
