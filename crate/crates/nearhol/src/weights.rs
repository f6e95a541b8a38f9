//! Exact weight-lattice arithmetic: dominance, signatures, weight systems of
//! irreducible K-modules, and the two-sided pairing inequalities used by the
//! Bergman-operator estimates.
//!
//! Weight systems are computed by Freudenthal recursion over the compact root
//! system, with multiplicities memoized on dominant chamber representatives.
//! Everything here is exact; weight equality is exact coordinate equality.

use crate::error::{Error, Result};
use crate::exact::{self, Rat};
use crate::rootdata::RootSystemData;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

/// A weight of the ambient Cartan subalgebra, in ε-coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<Rat>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        exact::is_zero_vec(&self.0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(exact::add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(exact::sub(&self.0, &other.0))
    }

    pub fn neg(&self) -> Weight {
        Weight(exact::neg(&self.0))
    }

    pub fn scale(&self, c: Rat) -> Weight {
        Weight(exact::scale(c, &self.0))
    }

    pub fn dot(&self, other: &Weight) -> Rat {
        exact::dot(&self.0, &other.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", exact::fmt_rat(c))?;
        }
        write!(f, ")")
    }
}

/// A signature m₁ ≥ m₂ ≥ … ≥ m_r ≥ 0 indexing the highest weight γ_m.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "signature {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn zero(r: usize) -> Self {
        Partition(vec![0; r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn last(&self) -> u32 {
        *self.0.last().unwrap_or(&0)
    }

    /// All signatures of length `r` with Σmᵢ ≤ cutoff, in graded
    /// lexicographic order.
    pub fn enumerate(r: usize, cutoff: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = vec![0u32; r];
        fn rec(out: &mut Vec<Partition>, current: &mut Vec<u32>, idx: usize, max: u32, left: u32) {
            if idx == current.len() {
                out.push(Partition(current.clone()));
                return;
            }
            for v in 0..=max.min(left) {
                current[idx] = v;
                rec(out, current, idx + 1, v, left - v);
            }
            current[idx] = 0;
        }
        rec(&mut out, &mut current, 0, cutoff, cutoff);
        out.sort_by_key(|m| (m.total(), std::cmp::Reverse(m.0.clone())));
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Weights of a K-module with positive multiplicities.
#[derive(Clone, Debug, Default)]
pub struct WeightMultiset {
    pub entries: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }
}

/// True iff λ(H_α) ≥ 0 for every simple root α of Φ.
pub fn is_dominant_u(lambda: &Weight, data: &RootSystemData) -> bool {
    data.simple_roots
        .iter()
        .all(|alpha| !data.pairing(lambda, alpha).is_negative())
}

/// True iff λ(H_α) ≥ 0 for every compact simple root; α₁ is exempt.
pub fn is_dominant_k(lambda: &Weight, data: &RootSystemData) -> bool {
    data.compact_simple()
        .iter()
        .all(|alpha| !data.pairing(lambda, alpha).is_negative())
}

/// True iff λ(H_α) ∈ ℤ for every simple root, i.e. λ lies in the weight
/// lattice spanned by the fundamental weights.
pub fn is_lattice(lambda: &Weight, data: &RootSystemData) -> bool {
    data.simple_roots
        .iter()
        .all(|alpha| data.pairing(lambda, alpha).is_integer())
}

/// γ_m := m₁γ₁ + … + m_r γ_r. Always K-dominant.
pub fn gamma_weight(m: &Partition, data: &RootSystemData) -> Weight {
    assert_eq!(m.len(), data.rank(), "signature length must equal the rank");
    let mut acc = Weight::zero(data.ambient_dim());
    for (mi, gamma) in m.parts().iter().zip(&data.strongly_orthogonal) {
        acc = acc.add(&gamma.scale(exact::rint(*mi as i64)));
    }
    acc
}

/// Recovers m from λ = γ_m, if λ is of that form.
pub fn signature_of(lambda: &Weight, data: &RootSystemData) -> Option<Partition> {
    let mut parts = Vec::with_capacity(data.rank());
    for gamma in &data.strongly_orthogonal {
        let p = data.pairing(lambda, gamma) / exact::rint(2);
        if !p.is_integer() || p.is_negative() {
            return None;
        }
        parts.push(*p.numer() as u32);
    }
    let m = Partition::new(parts).ok()?;
    (gamma_weight(&m, data) == *lambda).then_some(m)
}

/// Weyl dimension of the irreducible K-module with highest weight μ.
pub fn weyl_dim_compact(mu: &Weight, data: &RootSystemData) -> Result<BigInt> {
    weyl_dim(mu, &data.compact_positive, &data.rho_compact)
}

pub(crate) fn weyl_dim(mu: &Weight, positives: &[Weight], rho: &Weight) -> Result<BigInt> {
    let mut num = BigRational::one();
    let shifted = mu.add(rho);
    for alpha in positives {
        let a = shifted.dot(alpha);
        let b = rho.dot(alpha);
        if b.is_zero() {
            return Err(Error::Integrity("ρ pairs to zero against a positive root".into()));
        }
        let ratio = BigRational::new(BigInt::from(*a.numer()), BigInt::from(*a.denom()))
            / BigRational::new(BigInt::from(*b.numer()), BigInt::from(*b.denom()));
        num *= ratio;
    }
    if !num.is_integer() {
        return Err(Error::Integrity(format!(
            "Weyl dimension of {mu} is not an integer"
        )));
    }
    Ok(num.to_integer())
}

/// Coroot pairing without a root-data context.
pub(crate) fn pairing_free(lambda: &Weight, alpha: &Weight) -> Rat {
    exact::rint(2) * lambda.dot(alpha) / alpha.dot(alpha)
}

pub(crate) fn reflect_free(v: &Weight, alpha: &Weight) -> Weight {
    v.sub(&alpha.scale(pairing_free(v, alpha)))
}

pub(crate) fn dominant_rep(v: &Weight, simples: &[Weight]) -> Weight {
    let mut w = v.clone();
    'outer: loop {
        for alpha in simples {
            if pairing_free(&w, alpha).is_negative() {
                w = reflect_free(&w, alpha);
                continue 'outer;
            }
        }
        return w;
    }
}

pub(crate) fn orbit(v: &Weight, simples: &[Weight]) -> std::collections::BTreeSet<Weight> {
    let mut out = std::collections::BTreeSet::new();
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(w) = queue.pop_front() {
        if out.contains(&w) {
            continue;
        }
        for alpha in simples {
            queue.push_back(reflect_free(&w, alpha));
        }
        out.insert(w);
    }
    out
}

/// Full weight multiset of the irreducible module with highest weight μ over
/// an arbitrary simple system, with Weyl-dimension checksum.
pub(crate) fn weight_system_over(
    mu: &Weight,
    simples: &[Weight],
    positives: &[Weight],
    rho: &Weight,
) -> Result<WeightMultiset> {
    if simples.iter().any(|a| pairing_free(mu, a).is_negative()) {
        return Err(Error::Domain(format!("{mu} is not dominant")));
    }
    if simples.iter().any(|a| !pairing_free(mu, a).is_integer()) {
        return Err(Error::Domain(format!("{mu} is not a lattice weight")));
    }
    let system = freudenthal(mu, simples, positives, rho);
    let mut out = WeightMultiset::default();
    for (dom, mult) in &system {
        if *mult == 0 {
            continue;
        }
        for w in orbit(dom, simples) {
            out.entries.insert(w, *mult);
        }
    }
    let dim = weyl_dim(mu, positives, rho)?;
    if BigInt::from(out.total()) != dim {
        return Err(Error::Integrity(format!(
            "weight system of {mu} has {} weights, Weyl dimension is {dim}",
            out.total()
        )));
    }
    Ok(out)
}

/// Full weight multiset of the irreducible K-module E_μ, by Freudenthal
/// recursion over Φ_c. The total count is checked against the Weyl dimension.
pub fn weight_system(mu: &Weight, data: &RootSystemData) -> Result<WeightMultiset> {
    if !is_dominant_k(mu, data) {
        return Err(Error::Domain(format!("{mu} is not Φ_c⁺-dominant")));
    }
    if !is_lattice(mu, data) {
        return Err(Error::Domain(format!("{mu} is not a lattice weight")));
    }
    weight_system_over(
        mu,
        data.compact_simple(),
        &data.compact_positive,
        &data.rho_compact,
    )
}

/// Freudenthal recursion; returns multiplicities on dominant representatives.
fn freudenthal(
    mu: &Weight,
    simples: &[Weight],
    positives: &[Weight],
    rho: &Weight,
) -> BTreeMap<Weight, u64> {
    // Candidate dominant weights ν = μ − ℕ·Δ_c with |ν+ρ|² ≤ |μ+ρ|².
    let bound = {
        let s = mu.add(rho);
        s.dot(&s)
    };
    let mut seen: HashMap<Weight, ()> = HashMap::new();
    let mut queue = VecDeque::from([mu.clone()]);
    let mut candidates: Vec<Weight> = Vec::new();
    while let Some(v) = queue.pop_front() {
        if seen.contains_key(&v) {
            continue;
        }
        let s = v.add(rho);
        if s.dot(&s) > bound {
            continue;
        }
        seen.insert(v.clone(), ());
        candidates.push(v.clone());
        for alpha in simples {
            queue.push_back(v.sub(alpha));
        }
    }
    // The BFS visits ν = μ − Σcᵢαᵢ in non-decreasing level Σcᵢ, so when a
    // candidate is processed every higher weight is already known.
    let mut dom_mult: BTreeMap<Weight, u64> = BTreeMap::new();
    let mu_norm = {
        let s = mu.add(rho);
        s.dot(&s)
    };
    for v in &candidates {
        if !simples.iter().all(|a| !pairing_free(v, a).is_negative()) {
            continue; // only dominant representatives carry multiplicities
        }
        if v == mu {
            dom_mult.insert(v.clone(), 1);
            continue;
        }
        let s = v.add(rho);
        let denom = mu_norm - s.dot(&s);
        debug_assert!(denom.is_positive(), "Freudenthal denominator must be positive");
        let mut num = Rat::zero();
        for alpha in positives {
            let mut k = 1i64;
            loop {
                let shifted = v.add(&alpha.scale(exact::rint(k)));
                let rep = dominant_rep(&shifted, simples);
                let m = dom_mult.get(&rep).copied().unwrap_or(0);
                if m == 0 {
                    // Beyond the hull in this direction once the norm bound fails.
                    let t = shifted.add(rho);
                    if t.dot(&t) > bound {
                        break;
                    }
                    k += 1;
                    continue;
                }
                num += exact::rint(m as i64 * 2) * shifted.dot(alpha);
                k += 1;
            }
        }
        let mult = num / denom;
        debug_assert!(mult.is_integer() && !mult.is_negative());
        let mult = *mult.numer() as u64;
        if mult > 0 {
            dom_mult.insert(v.clone(), mult);
        }
    }
    dom_mult
}

/// Checks μ(H_{α₁}) ≤ λ(H_{γ_i}) ≤ μ(H_{γ₁}) for every weight λ of E_μ and
/// every i.
pub fn verify_weight_inequalities(mu: &Weight, data: &RootSystemData) -> Result<bool> {
    let system = weight_system(mu, data)?;
    let lo = data.pairing(mu, &data.simple_roots[0]);
    let hi = data.pairing(mu, &data.strongly_orthogonal[0]);
    for lambda in system.entries.keys() {
        for gamma in &data.strongly_orthogonal {
            let p = data.pairing(lambda, gamma);
            if p < lo || p > hi {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
