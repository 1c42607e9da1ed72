//! Basis elements and polynomials of the free (commutative or associative)
//! combinatorial Hopf algebra on the generators `phi_i(x_S)`.
//!
//! Labels `x_j` are modelled as positive integers. A generator carries a field
//! index `i >= 1` and a nonempty sorted support `S`. Commutative monomials are
//! kept sorted so that structural equality is algebraic equality;
//! noncommutative monomials are words and keep their order.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

pub type Label = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Commutative,
    Noncommutative,
}

impl Mode {
    /// Symbol used when printing generators: `phi` or `psi`.
    pub fn symbol(self) -> &'static str {
        match self {
            Mode::Commutative => "phi",
            Mode::Noncommutative => "psi",
        }
    }
}

/// The sequence `n_k` of field symbols per support size, plus the
/// commutative/noncommutative switch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArityProfile {
    mode: Mode,
    counts: BTreeMap<usize, u32>,
}

impl ArityProfile {
    /// Entries with `k == 0` or a zero count are dropped.
    pub fn new(mode: Mode, counts: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let counts = counts
            .into_iter()
            .filter(|&(k, n)| k > 0 && n > 0)
            .collect();
        ArityProfile { mode, counts }
    }

    /// Local fields only: `n_1 = fields`.
    pub fn local(mode: Mode, fields: u32) -> Self {
        Self::new(mode, [(1, fields)])
    }

    /// Coulomb-type algebra: `n_1 = fields` local symbols and one two-point
    /// interaction symbol.
    pub fn coulomb(fields: u32) -> Self {
        Self::new(Mode::Commutative, [(1, fields), (2, 1)])
    }

    /// Smallest profile admitting every generator in `gens`.
    pub fn covering<'a>(mode: Mode, gens: impl IntoIterator<Item = &'a Generator>) -> Self {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for g in gens {
            let n = counts.entry(g.support.len()).or_default();
            *n = (*n).max(g.field);
        }
        ArityProfile { mode, counts }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn count(&self, support_size: usize) -> u32 {
        self.counts.get(&support_size).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, u32> {
        &self.counts
    }

    pub fn check_generator(&self, g: &Generator) -> Result<()> {
        if g.field > self.count(g.support.len()) {
            return Err(Error::ArityViolation(g.clone()));
        }
        Ok(())
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.mode != self.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: m.mode,
            });
        }
        m.factors.iter().try_for_each(|g| self.check_generator(g))
    }
}

/// A symbol `phi_i(x_S)`. Ordering is by support first, then field index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    support: Vec<Label>,
    field: u32,
}

impl Generator {
    pub fn new(field: u32, support: impl IntoIterator<Item = Label>) -> Result<Self> {
        if field == 0 {
            return Err(Error::InvalidGenerator(
                "field index must be at least 1".into(),
            ));
        }
        let mut support: Vec<Label> = support.into_iter().collect();
        support.sort_unstable();
        support.dedup();
        if support.is_empty() {
            return Err(Error::InvalidGenerator("support must be nonempty".into()));
        }
        if support[0] == 0 {
            return Err(Error::InvalidGenerator("labels start at x1".into()));
        }
        Ok(Generator { support, field })
    }

    /// `phi_field(x_label)`.
    ///
    /// # Panics
    /// If `field` or `label` is zero.
    pub fn local(field: u32, label: Label) -> Self {
        assert!(field > 0 && label > 0, "field and label start at 1");
        Generator {
            support: vec![label],
            field,
        }
    }

    pub fn field(&self) -> u32 {
        self.field
    }

    pub fn support(&self) -> &[Label] {
        &self.support
    }

    pub fn is_local(&self) -> bool {
        self.support.len() == 1
    }

    pub fn contains(&self, label: Label) -> bool {
        self.support.binary_search(&label).is_ok()
    }

    fn relabeled(&self, map: &BTreeMap<Label, Label>) -> Result<Self> {
        let support = self
            .support
            .iter()
            .map(|l| map.get(l).copied().ok_or(Error::UndefinedRelabel(*l)))
            .collect::<Result<Vec<_>>>()?;
        Generator::new(self.field, support)
    }

    pub(crate) fn write_with(&self, mode: Mode, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}](", mode.symbol(), self.field)?;
        for (i, l) in self.support.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{l}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(Mode::Commutative, f)
    }
}

/// A basis element: a multiset (commutative) or word (noncommutative) of
/// generators. The empty collection is the unit `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    mode: Mode,
    factors: Vec<Generator>,
}

impl Monomial {
    pub fn unit(mode: Mode) -> Self {
        Monomial {
            mode,
            factors: Vec::new(),
        }
    }

    /// Builds a monomial in `mode`; commutative inputs are sorted.
    pub fn new(mode: Mode, factors: impl IntoIterator<Item = Generator>) -> Self {
        let mut factors: Vec<Generator> = factors.into_iter().collect();
        if mode == Mode::Commutative {
            factors.sort();
        }
        Monomial { mode, factors }
    }

    pub fn commutative(factors: impl IntoIterator<Item = Generator>) -> Self {
        Self::new(Mode::Commutative, factors)
    }

    pub fn word(factors: impl IntoIterator<Item = Generator>) -> Self {
        Self::new(Mode::Noncommutative, factors)
    }

    pub fn generator(mode: Mode, g: Generator) -> Self {
        Monomial {
            mode,
            factors: vec![g],
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Re-sorts commutative factors; words are returned unchanged.
    pub fn canonical(&self) -> Self {
        Self::new(self.mode, self.factors.iter().cloned())
    }

    pub fn support(&self) -> BTreeSet<Label> {
        self.factors
            .iter()
            .flat_map(|g| g.support.iter().copied())
            .collect()
    }

    /// Number of generator occurrences whose support contains `label`.
    pub fn degree_at(&self, label: Label) -> usize {
        self.factors.iter().filter(|g| g.contains(label)).count()
    }

    /// Maximal runs of equal consecutive generators, as `(generator, length)`.
    /// For commutative monomials these are the exponents.
    pub fn runs(&self) -> Vec<(&Generator, usize)> {
        let mut out: Vec<(&Generator, usize)> = Vec::new();
        for g in &self.factors {
            match out.last_mut() {
                Some((last, n)) if *last == g => *n += 1,
                _ => out.push((g, 1)),
            }
        }
        out
    }

    pub fn multiply(&self, other: &Monomial) -> Result<Monomial> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: other.mode,
            });
        }
        Ok(Self::new(
            self.mode,
            self.factors.iter().chain(&other.factors).cloned(),
        ))
    }

    pub fn pow(&self, n: usize) -> Monomial {
        let factors = std::iter::repeat_n(self.factors.iter(), n)
            .flatten()
            .cloned();
        Self::new(self.mode, factors)
    }

    /// The sub-monomial on the given occurrence positions (increasing), with
    /// the inherited order.
    pub fn subword(&self, positions: &[usize]) -> Monomial {
        Monomial {
            mode: self.mode,
            factors: positions.iter().map(|&p| self.factors[p].clone()).collect(),
        }
    }

    /// The `T`-component `x_T` of the monomial.
    ///
    /// Generators supported outside `labels` are replaced by 1; a generator
    /// whose support meets both `labels` and its complement makes the result
    /// zero, reported as `None`.
    pub fn restrict(&self, labels: &BTreeSet<Label>) -> Option<Monomial> {
        let mut kept = Vec::with_capacity(self.factors.len());
        for g in &self.factors {
            let inside = g.support.iter().filter(|l| labels.contains(l)).count();
            if inside == g.support.len() {
                kept.push(g.clone());
            } else if inside > 0 {
                return None;
            }
        }
        Some(Monomial {
            mode: self.mode,
            factors: kept,
        })
    }

    /// Applies an injective label map to every generator support.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Monomial> {
        let mut seen: BTreeMap<Label, Label> = BTreeMap::new();
        for l in self.support() {
            let image = *map.get(&l).ok_or(Error::UndefinedRelabel(l))?;
            if let Some(_prev) = seen.insert(image, l) {
                return Err(Error::NonInjectiveRelabel(image));
            }
        }
        let factors = self
            .factors
            .iter()
            .map(|g| g.relabeled(map))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(self.mode, factors))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, n)) in self.runs().into_iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            g.write_with(self.mode, f)?;
            if n > 1 {
                write!(f, "^{n}")?;
            }
        }
        Ok(())
    }
}

/// Finite rational combination of monomials. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    profile: ArityProfile,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(profile: ArityProfile) -> Self {
        Polynomial {
            profile,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(profile: ArityProfile) -> Self {
        let unit = Monomial::unit(profile.mode);
        Self::monomial_unchecked(profile, unit, Rational::one())
    }

    pub fn from_monomial(profile: ArityProfile, m: Monomial) -> Result<Self> {
        Self::from_terms(profile, [(m, Rational::one())])
    }

    pub fn from_terms(
        profile: ArityProfile,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(profile);
        for (m, c) in terms {
            p.profile.check_monomial(&m)?;
            p.add_term(m.canonical(), c);
        }
        Ok(p)
    }

    fn monomial_unchecked(profile: ArityProfile, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(profile);
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn profile(&self) -> &ArityProfile {
        &self.profile
    }

    pub fn mode(&self) -> Mode {
        self.profile.mode
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .get(&m.canonical())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The single monomial with coefficient 1, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    fn same_profile(&self, other: &Polynomial) -> Result<()> {
        if self.profile != other.profile {
            return Err(Error::ProfileMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_profile(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Self::zero(self.profile.clone());
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Bilinear product. Commutative mode merges multisets, noncommutative
    /// mode concatenates words.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_profile(other)?;
        let mut out = Self::zero(self.profile.clone());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.multiply(b)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: usize) -> Polynomial {
        let mut acc = Self::one(self.profile.clone());
        for _ in 0..n {
            acc = acc.multiply(self).expect("same profile");
        }
        acc
    }

    /// Relabels every monomial; see [`Monomial::relabel`].
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Polynomial> {
        let mut out = Self::zero(self.profile.clone());
        for (m, c) in &self.terms {
            out.add_term(m.relabel(map)?, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn phi(field: u32, label: Label) -> Generator {
        Generator::local(field, label)
    }

    fn labels(ls: &[Label]) -> BTreeSet<Label> {
        ls.iter().copied().collect()
    }

    #[test]
    fn commutative_product_is_order_free() {
        let a = Monomial::commutative([phi(1, 1)]);
        let b = Monomial::commutative([phi(1, 2)]);
        assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        assert_eq!(a.multiply(&b).unwrap().to_string(), "phi[1](x1)*phi[1](x2)");
    }

    #[test]
    fn noncommutative_product_keeps_order() {
        let a = Monomial::word([phi(1, 1)]);
        let b = Monomial::word([phi(1, 2)]);
        assert_ne!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        assert!(a.multiply(&Monomial::commutative([phi(1, 1)])).is_err());
    }

    #[test]
    fn square_of_binomial() {
        let profile = ArityProfile::local(Mode::Commutative, 1);
        let x1 = Monomial::commutative([phi(1, 1)]);
        let x2 = Monomial::commutative([phi(1, 2)]);
        let p = Polynomial::from_terms(
            profile.clone(),
            [(x1.clone(), int(1)), (x2.clone(), int(1))],
        )
        .unwrap();
        let sq = p.multiply(&p).unwrap();
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(sq.coefficient(&x1.pow(2)), int(1));
        assert_eq!(sq.coefficient(&x1.multiply(&x2).unwrap()), int(2));
        assert_eq!(sq.coefficient(&x2.pow(2)), int(1));
        let other = ArityProfile::local(Mode::Commutative, 2);
        assert_eq!(
            p.multiply(&Polynomial::one(other)),
            Err(Error::ProfileMismatch)
        );
        assert_eq!(p.multiply(&Polynomial::one(profile)).unwrap(), p);
    }

    #[test]
    fn support_and_degrees() {
        let m = Monomial::commutative([phi(3, 1), phi(4, 2), phi(4, 2)]);
        assert_eq!(m.support(), labels(&[1, 2]));
        assert!(Monomial::unit(Mode::Commutative).support().is_empty());
        let g = Generator::new(5, [10, 1, 8, 5]).unwrap();
        assert_eq!(
            Monomial::generator(Mode::Commutative, g).support(),
            labels(&[1, 5, 8, 10])
        );
        assert_eq!(Monomial::unit(Mode::Commutative).degree_at(3), 0);
    }

    #[test]
    fn restriction() {
        let m = Monomial::commutative([phi(1, 1), phi(1, 2)]);
        assert_eq!(
            m.restrict(&labels(&[1])),
            Some(Monomial::commutative([phi(1, 1)]))
        );
        assert_eq!(m.restrict(&m.support()), Some(m.clone()));
        let coulomb = Monomial::commutative([Generator::new(1, [1, 2]).unwrap()]);
        assert_eq!(coulomb.restrict(&labels(&[1])), None);
        let w = Monomial::word([phi(1, 2), phi(2, 1), phi(3, 2)]);
        assert_eq!(
            w.restrict(&labels(&[2])),
            Some(Monomial::word([phi(1, 2), phi(3, 2)]))
        );
    }

    #[test]
    fn relabelling() {
        let m =
            Monomial::commutative(std::iter::repeat_n(phi(1, 2), 8).chain([phi(3, 5), phi(3, 5)]));
        let sigma: BTreeMap<_, _> = [(2, 4), (5, 2)].into_iter().collect();
        let expected =
            Monomial::commutative(std::iter::repeat_n(phi(1, 4), 8).chain([phi(3, 2), phi(3, 2)]));
        let image = m.relabel(&sigma).unwrap();
        assert_eq!(image, expected);
        let inverse: BTreeMap<_, _> = sigma.iter().map(|(a, b)| (*b, *a)).collect();
        assert_eq!(image.relabel(&inverse).unwrap(), m);
        let id: BTreeMap<_, _> = [(2, 2), (5, 5)].into_iter().collect();
        assert_eq!(m.relabel(&id).unwrap(), m);
        let collapse: BTreeMap<_, _> = [(2, 1), (5, 1)].into_iter().collect();
        assert_eq!(m.relabel(&collapse), Err(Error::NonInjectiveRelabel(1)));
        let partial: BTreeMap<_, _> = [(2, 1)].into_iter().collect();
        assert_eq!(m.relabel(&partial), Err(Error::UndefinedRelabel(5)));
    }

    #[test]
    fn arity_checks() {
        let profile = ArityProfile::coulomb(2);
        assert!(profile.check_generator(&phi(2, 1)).is_ok());
        assert!(profile.check_generator(&phi(3, 1)).is_err());
        assert!(profile
            .check_generator(&Generator::new(1, [1, 2]).unwrap())
            .is_ok());
        assert!(profile
            .check_generator(&Generator::new(1, [1, 2, 3]).unwrap())
            .is_err());
        assert!(Generator::new(0, [1]).is_err());
        assert!(Generator::new(1, []).is_err());
    }

    #[test]
    fn display() {
        let m = Monomial::word([phi(1, 2), phi(1, 2), Generator::new(3, [1, 2, 3]).unwrap()]);
        assert_eq!(m.to_string(), "psi[1](x2)^2*psi[3](x1,x2,x3)");
        let profile = ArityProfile::local(Mode::Commutative, 1);
        let p = Polynomial::from_terms(
            profile,
            [
                (Monomial::commutative([phi(1, 1)]), int(-2)),
                (Monomial::unit(Mode::Commutative), int(3)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "3 - 2*phi[1](x1)");
    }
}
