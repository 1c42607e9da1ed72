//! Brackettings, the graphication map `G = sum_n Delta-bar^[n] / n!` and the
//! symmetry factors `s_Gamma^M` it produces.
//!
//! The coefficient of a bracketting `[u_1|...|u_k]` in `G(M)` equals the
//! number of unordered set partitions of the occurrences of `M` whose blocks,
//! read as sub-monomials, give exactly the slots `u_i`. Commutative monomials
//! use a closed multinomial count over exponent-vector decompositions; words
//! are handled by enumerating partitions of their positions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Generator, Label, Mode, Monomial};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partitions::{for_each_position_partition, RestrictedGrowth};
use crate::scalar::Rational;

/// Degree above which word graphication is refused by default.
pub const DEFAULT_WORD_DEGREE_CAP: usize = 10;

/// An unordered multiset of non-unit monomial slots `[u_1|...|u_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bracketting {
    mode: Mode,
    slots: Vec<Monomial>,
}

impl Bracketting {
    pub fn new(mode: Mode, slots: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut out = Vec::new();
        for s in slots {
            if s.mode() != mode {
                return Err(Error::ModeMismatch {
                    left: mode,
                    right: s.mode(),
                });
            }
            if s.is_unit() {
                return Err(Error::UnitSlot);
            }
            out.push(s.canonical());
        }
        out.sort();
        Ok(Bracketting { mode, slots: out })
    }

    /// The length-one bracketting `[m]`.
    pub fn single(m: Monomial) -> Result<Self> {
        let mode = m.mode();
        Self::new(mode, [m])
    }

    /// The empty bracketting, neutral for [`concat`].
    pub fn empty(mode: Mode) -> Self {
        Bracketting {
            mode,
            slots: Vec::new(),
        }
    }

    fn from_sorted(mode: Mode, slots: Vec<Monomial>) -> Self {
        debug_assert!(slots.windows(2).all(|w| w[0] <= w[1]));
        Bracketting { mode, slots }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn slots(&self) -> &[Monomial] {
        &self.slots
    }

    /// Number of slots (bars plus one).
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.slots.iter().map(Monomial::degree).sum()
    }

    pub fn support(&self) -> BTreeSet<Label> {
        self.slots.iter().flat_map(|s| s.support()).collect()
    }

    pub fn degree_at(&self, label: Label) -> usize {
        self.slots.iter().map(|s| s.degree_at(label)).sum()
    }

    /// Distinct slots with their multiplicities, in canonical order.
    pub fn distinct_slots(&self) -> Vec<(&Monomial, usize)> {
        let mut out: Vec<(&Monomial, usize)> = Vec::new();
        for s in &self.slots {
            match out.last_mut() {
                Some((last, n)) if *last == s => *n += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// Product of all slots. Only meaningful in commutative mode, where it
    /// recovers the unique monomial the bracketting can come from.
    pub fn product(&self) -> Monomial {
        Monomial::new(
            self.mode,
            self.slots.iter().flat_map(|s| s.factors().iter().cloned()),
        )
    }
}

impl Ord for Bracketting {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.mode, self.slots.len(), &self.slots).cmp(&(
            other.mode,
            other.slots.len(),
            &other.slots,
        ))
    }
}

impl PartialOrd for Bracketting {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bracketting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// Concatenation `[u_1|...|u_n] . [v_1|...|v_m] = [u_1|...|u_n|v_1|...|v_m]`.
pub fn concat(a: &Bracketting, b: &Bracketting) -> Result<Bracketting> {
    if a.mode != b.mode {
        return Err(Error::ModeMismatch {
            left: a.mode,
            right: b.mode,
        });
    }
    let mut slots = a.slots.clone();
    slots.extend(b.slots.iter().cloned());
    slots.sort();
    Ok(Bracketting::from_sorted(a.mode, slots))
}

/// Expansion of a monomial into brackettings with their symmetry factors.
pub type Graphication = BTreeMap<Bracketting, Rational>;

#[derive(Clone, Copy, Debug)]
pub struct GraphicationOptions {
    pub exec: Exec,
    /// Largest word degree accepted in noncommutative mode.
    pub max_word_degree: usize,
}

impl Default for GraphicationOptions {
    fn default() -> Self {
        GraphicationOptions {
            exec: Exec::default(),
            max_word_degree: DEFAULT_WORD_DEGREE_CAP,
        }
    }
}

/// `G(m)` with default options. The unit maps to the empty expansion.
pub fn graphicate(m: &Monomial) -> Result<Graphication> {
    graphicate_with(m, &GraphicationOptions::default())
}

pub fn graphicate_with(m: &Monomial, options: &GraphicationOptions) -> Result<Graphication> {
    if m.is_unit() {
        return Ok(Graphication::new());
    }
    match m.mode() {
        Mode::Commutative => Ok(graphicate_commutative(m)),
        Mode::Noncommutative => {
            if m.degree() > options.max_word_degree {
                return Err(Error::DegreeBoundExceeded {
                    degree: m.degree(),
                    bound: options.max_word_degree,
                });
            }
            Ok(graphicate_word(m, options.exec))
        }
    }
}

fn big_factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn monomial_from_exponents(gens: &[&Generator], f: &[usize]) -> Monomial {
    Monomial::commutative(
        gens.iter()
            .zip(f)
            .flat_map(|(g, &k)| std::iter::repeat_n((*g).clone(), k)),
    )
}

/// `prod_j e_j! / (prod_slots prod_j f_j! * prod_distinct mult!)`, with
/// `parts` sorted so equal parts are adjacent.
fn multiset_count(exponents: &[usize], parts: &[Vec<usize>]) -> BigInt {
    let mut num = exponents
        .iter()
        .fold(BigInt::one(), |acc, &e| acc * big_factorial(e));
    let mut den = BigInt::one();
    for part in parts {
        for &f in part {
            den *= big_factorial(f);
        }
    }
    let mut run = 1;
    for w in parts.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            den *= big_factorial(run);
            run = 1;
        }
    }
    den *= big_factorial(run);
    num /= den;
    num
}

fn graphicate_commutative(m: &Monomial) -> Graphication {
    let runs = m.runs();
    let gens: Vec<&Generator> = runs.iter().map(|(g, _)| *g).collect();
    let exponents: Vec<usize> = runs.iter().map(|(_, e)| *e).collect();

    let mut out = Graphication::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    decompose(&exponents, &exponents.clone(), &mut parts, &mut |parts| {
        let mut slots: Vec<Monomial> = parts
            .iter()
            .map(|f| monomial_from_exponents(&gens, f))
            .collect();
        slots.sort();
        let count = multiset_count(&exponents, parts);
        out.insert(
            Bracketting::from_sorted(Mode::Commutative, slots),
            Rational::from_integer(count),
        );
    });
    out
}

/// Enumerates multisets of nonzero vectors summing to `rem`, as lists in
/// lexicographically non-increasing order bounded by `bound`.
fn decompose(
    rem: &[usize],
    bound: &[usize],
    parts: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if rem.iter().all(|&r| r == 0) {
        emit(parts);
        return;
    }
    let mut f = vec![0usize; rem.len()];
    loop {
        // odometer over 0..=rem, last coordinate fastest
        let mut i = rem.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if f[i] < rem[i] {
                f[i] += 1;
                f[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
        if f.as_slice() > bound {
            return;
        }
        let next: Vec<usize> = rem.iter().zip(&f).map(|(r, x)| r - x).collect();
        parts.push(f.clone());
        decompose(&next, &f, parts, emit);
        parts.pop();
    }
}

fn word_bracketting(m: &Monomial, blocks: &[Vec<usize>]) -> Bracketting {
    let mut slots: Vec<Monomial> = blocks.iter().map(|b| m.subword(b)).collect();
    slots.sort();
    Bracketting::from_sorted(m.mode(), slots)
}

fn add_one(map: &mut Graphication, key: Bracketting) {
    *map.entry(key).or_insert_with(Rational::zero) += Rational::one();
}

fn graphicate_word(m: &Monomial, exec: Exec) -> Graphication {
    if !exec.is_parallel() || m.degree() < 7 {
        let mut out = Graphication::new();
        for_each_position_partition(m.degree(), |blocks| {
            add_one(&mut out, word_bracketting(m, blocks))
        });
        return out;
    }
    let mut strings: Vec<Vec<u8>> = Vec::new();
    let mut rgs = RestrictedGrowth::new(m.degree());
    while let Some(s) = rgs.next_rgs() {
        strings.push(s.iter().map(|&b| b as u8).collect());
    }
    exec.fold(
        &strings,
        Graphication::new,
        |mut acc, s| {
            let count = s.iter().copied().max().map_or(0, |x| x as usize + 1);
            let mut blocks = vec![Vec::new(); count];
            for (pos, &b) in s.iter().enumerate() {
                blocks[b as usize].push(pos);
            }
            add_one(&mut acc, word_bracketting(m, &blocks));
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert_with(Rational::zero) += v;
            }
            a
        },
    )
}

/// The coefficient `s_Gamma^m` of `gamma` in `G(m)`; zero when `gamma` does
/// not occur.
pub fn symmetry_factor(gamma: &Bracketting, m: &Monomial) -> Rational {
    if gamma.mode != m.mode() || gamma.is_empty() || gamma.degree() != m.degree() {
        return Rational::zero();
    }
    match m.mode() {
        Mode::Commutative => {
            if gamma.product() != *m {
                return Rational::zero();
            }
            let runs = m.runs();
            let index: BTreeMap<&Generator, usize> =
                runs.iter().enumerate().map(|(i, (g, _))| (*g, i)).collect();
            let exponents: Vec<usize> = runs.iter().map(|(_, e)| *e).collect();
            let parts: Vec<Vec<usize>> = gamma
                .slots
                .iter()
                .map(|s| {
                    let mut f = vec![0; exponents.len()];
                    for g in s.factors() {
                        f[index[g]] += 1;
                    }
                    f
                })
                .collect();
            Rational::from_integer(multiset_count(&exponents, &parts))
        }
        Mode::Noncommutative => {
            Rational::from_integer(BigInt::from(count_word_partitions(gamma, m)))
        }
    }
}

/// Backtracking count of position partitions of `m` whose blocks read off
/// exactly the slots of `gamma`.
fn count_word_partitions(gamma: &Bracketting, m: &Monomial) -> u64 {
    struct Search<'a> {
        word: &'a [Generator],
        slots: &'a [Monomial],
        blocks: Vec<Vec<Generator>>,
    }

    impl Search<'_> {
        fn is_prefix_of_some_slot(&self, block: &[Generator]) -> bool {
            self.slots
                .iter()
                .any(|s| s.degree() >= block.len() && &s.factors()[..block.len()] == block)
        }

        fn matches(&self) -> bool {
            let mut got: Vec<&[Generator]> = self.blocks.iter().map(Vec::as_slice).collect();
            let mut want: Vec<&[Generator]> = self.slots.iter().map(Monomial::factors).collect();
            got.sort();
            want.sort();
            got == want
        }

        fn run(&mut self, pos: usize) -> u64 {
            if pos == self.word.len() {
                return u64::from(self.matches());
            }
            let g = &self.word[pos];
            let mut total = 0;
            for b in 0..self.blocks.len() {
                self.blocks[b].push(g.clone());
                if self.is_prefix_of_some_slot(&self.blocks[b]) {
                    total += self.run(pos + 1);
                }
                self.blocks[b].pop();
            }
            if self.blocks.len() < self.slots.len() {
                self.blocks.push(vec![g.clone()]);
                if self.is_prefix_of_some_slot(self.blocks.last().unwrap()) {
                    total += self.run(pos + 1);
                }
                self.blocks.pop();
            }
            total
        }
    }

    let mut search = Search {
        word: m.factors(),
        slots: &gamma.slots,
        blocks: Vec::new(),
    };
    search.run(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn phi(field: u32, label: Label) -> Generator {
        Generator::local(field, label)
    }

    fn cm(gs: &[(u32, Label, usize)]) -> Monomial {
        Monomial::commutative(
            gs.iter()
                .flat_map(|&(f, l, e)| std::iter::repeat_n(phi(f, l), e)),
        )
    }

    fn br(slots: Vec<Monomial>) -> Bracketting {
        let mode = slots[0].mode();
        Bracketting::new(mode, slots).unwrap()
    }

    #[test]
    fn printed_factors_of_quartic_pair() {
        let m = cm(&[(1, 1, 4), (1, 2, 4)]);
        let g = graphicate(&m).unwrap();
        let half = cm(&[(1, 1, 2), (1, 2, 2)]);
        assert_eq!(g[&br(vec![half.clone(), half])], int(18));
        let split = br(vec![cm(&[(1, 1, 1)]), cm(&[(1, 1, 3), (1, 2, 4)])]);
        assert_eq!(g[&split], int(4));
        assert_eq!(g[&Bracketting::single(m.clone()).unwrap()], int(1));
    }

    #[test]
    fn cube_expansion() {
        let x = cm(&[(1, 1, 1)]);
        let g = graphicate(&x.pow(3)).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[&Bracketting::single(x.pow(3)).unwrap()], int(1));
        assert_eq!(g[&br(vec![x.clone(), x.pow(2)])], int(3));
        assert_eq!(g[&br(vec![x.clone(), x.clone(), x])], int(1));
    }

    #[test]
    fn corrected_third_example() {
        // phi1(x1) phi2(x1) phi3(x2)^2
        let m = cm(&[(1, 1, 1), (2, 1, 1), (3, 2, 2)]);
        let g = graphicate(&m).unwrap();
        let a = br(vec![cm(&[(1, 1, 1)]), cm(&[(2, 1, 1), (3, 2, 2)])]);
        assert_eq!(g[&a], int(1));
        let b = br(vec![
            cm(&[(1, 1, 1), (3, 2, 1)]),
            cm(&[(2, 1, 1), (3, 2, 1)]),
        ]);
        assert_eq!(g[&b], int(2));
        assert_eq!(symmetry_factor(&b, &m), int(2));
    }

    #[test]
    fn words_share_brackettings() {
        let a = Monomial::word([phi(1, 1)]);
        let b = Monomial::word([phi(1, 2)]);
        let gamma = br(vec![a.clone(), b.clone()]);
        assert_eq!(symmetry_factor(&gamma, &a.multiply(&b).unwrap()), int(1));
        assert_eq!(symmetry_factor(&gamma, &b.multiply(&a).unwrap()), int(1));
        let ab = a.multiply(&b).unwrap();
        let g = graphicate(&ab).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(
            symmetry_factor(&Bracketting::single(ab.clone()).unwrap(), &ab),
            int(1)
        );
        assert_eq!(
            symmetry_factor(&Bracketting::single(b.multiply(&a).unwrap()).unwrap(), &ab),
            int(0)
        );
    }

    #[test]
    fn word_slots_differ_by_order() {
        // [psi1(x1)|psi2(x1)psi3(x2)^2] != [psi1(x1)|psi3(x2)psi2(x1)psi3(x2)]
        let s1 = br(vec![
            Monomial::word([phi(1, 1)]),
            Monomial::word([phi(2, 1), phi(3, 2), phi(3, 2)]),
        ]);
        let s2 = br(vec![
            Monomial::word([phi(1, 1)]),
            Monomial::word([phi(3, 2), phi(2, 1), phi(3, 2)]),
        ]);
        assert_ne!(s1, s2);
    }

    #[test]
    fn single_slot_has_factor_one() {
        let m = cm(&[(1, 1, 3), (2, 2, 2)]);
        assert_eq!(
            symmetry_factor(&Bracketting::single(m.clone()).unwrap(), &m),
            int(1)
        );
        let w = Monomial::word([phi(1, 1), phi(1, 1), phi(1, 2)]);
        assert_eq!(
            symmetry_factor(&Bracketting::single(w.clone()).unwrap(), &w),
            int(1)
        );
    }

    #[test]
    fn concatenation() {
        let a = br(vec![cm(&[(1, 1, 1)]), cm(&[(1, 5, 2), (1, 8, 1)])]);
        let b = br(vec![cm(&[(1, 2, 3)]), cm(&[(1, 1, 1)])]);
        let ab = concat(&a, &b).unwrap();
        assert_eq!(ab, concat(&b, &a).unwrap());
        assert_eq!(ab.len(), 4);
        assert_eq!(
            ab.to_string(),
            "[phi[1](x1)|phi[1](x1)|phi[1](x2)^3|phi[1](x5)^2*phi[1](x8)]"
        );
        assert!(concat(&a, &Bracketting::empty(Mode::Noncommutative)).is_err());
    }

    #[test]
    fn support_degree_and_length() {
        let nonlocal =
            Monomial::generator(Mode::Commutative, Generator::new(5, [1, 5, 8, 10]).unwrap());
        let g = br(vec![
            cm(&[(3, 1, 1), (4, 2, 2)]),
            cm(&[(1, 1, 2), (2, 8, 2)]),
        ]);
        assert_eq!(g.degree_at(1), 3);
        assert_eq!(g.degree_at(2), 2);
        assert_eq!(g.degree_at(8), 2);
        assert_eq!(g.support(), [1, 2, 8].into_iter().collect());
        let g2 = concat(&g, &Bracketting::single(nonlocal).unwrap()).unwrap();
        assert_eq!(g2.degree_at(8), 3);
        assert_eq!(g2.support(), [1, 2, 5, 8, 10].into_iter().collect());
        assert_eq!(g2.len(), 3);
    }

    #[test]
    fn rejects_unit_slots_and_long_words() {
        assert_eq!(
            Bracketting::new(Mode::Commutative, [Monomial::unit(Mode::Commutative)]),
            Err(Error::UnitSlot)
        );
        let w = Monomial::word(std::iter::repeat_n(phi(1, 1), 11));
        assert!(graphicate(&w).is_err());
        assert!(graphicate(&Monomial::unit(Mode::Commutative))
            .unwrap()
            .is_empty());
    }
}
