//! Coproducts of basis elements.
//!
//! All generators are primitive, so `Delta(a_1...a_n)` is the sum over ways of
//! distributing the occurrences `a_i` between the tensor legs, each leg
//! receiving its occurrences in their original order. The iterated maps are
//! exponential in the degree and exist mainly as reference computations for
//! small monomials.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::Monomial;
use crate::scalar::Rational;

/// One summand `c * (u_1 (x) ... (x) u_n)` of a tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTerm {
    pub coefficient: Rational,
    pub legs: Vec<Monomial>,
}

/// A finite sum of [`TensorTerm`]s of fixed arity, collected by legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, Rational>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, legs: Vec<Monomial>, c: Rational) {
        debug_assert_eq!(legs.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
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

    pub fn coefficient(&self, legs: &[Monomial]) -> Rational {
        self.terms.get(legs).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = TensorTerm> + '_ {
        self.terms.iter().map(|(legs, c)| TensorTerm {
            coefficient: c.clone(),
            legs: legs.clone(),
        })
    }

    /// Replaces leg `leg` of every term by `f(leg)`, which must be a tensor of
    /// arity 2; the result has arity one larger.
    pub fn expand_leg(&self, leg: usize, f: impl Fn(&Monomial) -> Tensor) -> Tensor {
        let mut out = Tensor::zero(self.arity + 1);
        for (legs, c) in &self.terms {
            for inner in f(&legs[leg]).terms() {
                let mut new_legs = legs[..leg].to_vec();
                new_legs.extend(inner.legs);
                new_legs.extend_from_slice(&legs[leg + 1..]);
                out.add(new_legs, c * &inner.coefficient);
            }
        }
        out
    }

    /// Applies the leg permutation `perm` (new leg `i` is old leg `perm[i]`).
    pub fn permute_legs(&self, perm: &[usize]) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (legs, c) in &self.terms {
            out.add(perm.iter().map(|&i| legs[i].clone()).collect(), c.clone());
        }
        out
    }
}

/// Visits every map from occurrence positions to `legs` legs; with
/// `surjective` only those hitting every leg.
fn for_each_assignment(degree: usize, legs: usize, surjective: bool, mut f: impl FnMut(&[usize])) {
    fn rec(
        pos: usize,
        degree: usize,
        legs: usize,
        surjective: bool,
        assign: &mut Vec<usize>,
        hits: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if surjective {
            let missing = hits.iter().filter(|&&h| h == 0).count();
            if missing > degree - pos {
                return;
            }
        }
        if pos == degree {
            f(assign);
            return;
        }
        for leg in 0..legs {
            assign.push(leg);
            hits[leg] += 1;
            rec(pos + 1, degree, legs, surjective, assign, hits, f);
            hits[leg] -= 1;
            assign.pop();
        }
    }
    let mut assign = Vec::with_capacity(degree);
    let mut hits = vec![0; legs];
    rec(0, degree, legs, surjective, &mut assign, &mut hits, &mut f);
}

fn expand(m: &Monomial, legs: usize, reduced: bool) -> Tensor {
    let mut out = Tensor::zero(legs);
    if legs == 0 {
        return out;
    }
    for_each_assignment(m.degree(), legs, reduced, |assign| {
        let mut positions: Vec<Vec<usize>> = vec![Vec::new(); legs];
        for (pos, &leg) in assign.iter().enumerate() {
            positions[leg].push(pos);
        }
        let parts = positions.iter().map(|p| m.subword(p).canonical()).collect();
        out.add(parts, Rational::one());
    });
    out
}

/// `Delta(m)`, arity 2.
pub fn coproduct(m: &Monomial) -> Tensor {
    expand(m, 2, false)
}

/// `Delta(m) - m (x) 1 - 1 (x) m`.
pub fn reduced_coproduct(m: &Monomial) -> Tensor {
    expand(m, 2, true)
}

/// `Delta^[n](m)` with `Delta^[1] = id`.
pub fn iterated_coproduct(m: &Monomial, n: usize) -> Tensor {
    expand(m, n, false)
}

/// `Delta-bar^[n](m)`: ordered splittings into `n` nonempty subwords. Zero when
/// `n` exceeds the degree.
pub fn iterated_reduced_coproduct(m: &Monomial, n: usize) -> Tensor {
    expand(m, n, true)
}
