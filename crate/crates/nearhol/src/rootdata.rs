//! Exact root-system data for irreducible compact Hermitian symmetric spaces:
//! roots, compact/noncompact split, coroot pairings, strongly orthogonal
//! roots, and structure constants (r, a, b, g, n).
//!
//! Each family is realized in a fixed orthogonal ε-basis with exact rational
//! coordinates: type I(p,q) inside A_{p+q−1}, type II(n) inside D_n, type
//! III(n) inside C_n, type IV(n) inside B_m/D_m, and E III / E VII from static
//! tables shipped as JSON resources (schema: `{family, ambient_dim,
//! noncompact_node, simple_roots: [[[num, den]; ambient_dim]]}`).
//!
//! The unique noncompact simple root is relabeled to index 0, so the
//! lexicographic root order induced by the ordered simple system starts with
//! it; the compact simple roots keep their Bourbaki order. γ₂…γ_r depend on
//! the order of the compact simples only up to the compact Weyl group, which
//! no downstream spectrum sees.

use crate::error::{Error, Result};
use crate::exact::{self, rat, rint, Rat};
use crate::weights::Weight;
use num_traits::{Signed, Zero};
use serde::Deserialize;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

/// The six supported families of irreducible compact Hermitian symmetric
/// spaces.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// Grassmannians SU(p+q)/S(U(p)×U(q)); n⁺ = p×q matrices.
    I { p: u32, q: u32 },
    /// SO(2n)/U(n); n⁺ = antisymmetric n×n matrices.
    II { n: u32 },
    /// Sp(n)/U(n); n⁺ = symmetric n×n matrices.
    III { n: u32 },
    /// Quadrics SO(n+2)/(SO(n)×SO(2)); no matrix model here.
    IV { n: u32 },
    /// E₆/(Spin(10)×T); combinatorial data only.
    EIII,
    /// E₇/(E₆×T); combinatorial data only.
    EVII,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::I { p, q } => write!(f, "I({p},{q})"),
            Family::II { n } => write!(f, "II({n})"),
            Family::III { n } => write!(f, "III({n})"),
            Family::IV { n } => write!(f, "IV({n})"),
            Family::EIII => write!(f, "EIII"),
            Family::EVII => write!(f, "EVII"),
        }
    }
}

/// Structure constants of the space: rank r, multiplicities a and b, genus g
/// and dim_ℂ n⁺, tied together by g = 2 + a(r−1) + b.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HermitianType {
    pub family: Family,
    pub rank: usize,
    pub a: u32,
    pub b: u32,
    pub genus: u32,
    pub dim_nplus: usize,
    pub tube_type: bool,
}

impl HermitianType {
    pub fn new(family: Family) -> Result<Self> {
        let (rank, a, b, genus, dim): (usize, u32, u32, u32, usize) = match family {
            Family::I { p, q } => {
                if p < 1 || q < 1 {
                    return Err(Error::Parameter(format!("type I needs p,q ≥ 1, got ({p},{q})")));
                }
                let r = p.min(q);
                let a = if r == 1 { 0 } else { 2 };
                (r as usize, a, p.max(q) - r, p + q, (p * q) as usize)
            }
            Family::II { n } => {
                if n < 3 {
                    return Err(Error::Parameter(format!("type II needs n ≥ 3, got {n}")));
                }
                let r = n / 2;
                let a = if r == 1 { 0 } else { 4 };
                let b = if n % 2 == 0 { 0 } else { 2 };
                (r as usize, a, b, 2 * (n - 1), (n * (n - 1) / 2) as usize)
            }
            Family::III { n } => {
                if n < 1 {
                    return Err(Error::Parameter("type III needs n ≥ 1".into()));
                }
                let a = if n == 1 { 0 } else { 1 };
                (n as usize, a, 0, n + 1, (n * (n + 1) / 2) as usize)
            }
            Family::IV { n } => {
                if n < 3 {
                    return Err(Error::Parameter(format!("type IV needs n ≥ 3, got {n}")));
                }
                (2, n - 2, 0, n, n as usize)
            }
            Family::EIII => (2, 6, 4, 12, 16),
            Family::EVII => (3, 8, 0, 18, 27),
        };
        let space = HermitianType {
            family,
            rank,
            a,
            b,
            genus,
            dim_nplus: dim,
            tube_type: b == 0,
        };
        if space.genus != 2 + space.a * (rank as u32 - 1) + space.b {
            return Err(Error::Integrity(format!("genus relation fails for {family}")));
        }
        let n_check = rank + space.a as usize * rank * (rank - 1) / 2 + rank * space.b as usize;
        if n_check != space.dim_nplus {
            return Err(Error::Integrity(format!("dimension count fails for {family}")));
        }
        Ok(space)
    }
}

/// Full exact root data of a space. Immutable after construction; safe for
/// shared concurrent reads.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub space: HermitianType,
    /// Ordered simple system; index 0 is the noncompact simple root α₁.
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    pub compact_positive: Vec<Weight>,
    pub noncompact_positive: Vec<Weight>,
    /// γ₁ … γ_r, γ₁ the highest root, descending lexicographic greedy.
    pub strongly_orthogonal: Vec<Weight>,
    /// Index of α₁ in `simple_roots` (always 0 after relabeling).
    pub distinguished_index: usize,
    /// Fundamental weight λ₁ of α₁: λ₁(H_{α₁}) = 1, λ₁(H_α) = 0 on Δ_c.
    pub fundamental_alpha1: Weight,
    /// ε-vector of the grading element Z₀: ⟨β, z₀⟩ = 1 for all β ∈ Φ_nc⁺.
    pub grading_vector: Weight,
    pub rho: Weight,
    pub rho_compact: Weight,
    /// Longest word of the compact Weyl group as simple-reflection indices
    /// into `simple_roots`, in application order.
    pub w0_compact_word: Vec<usize>,
    root_set: HashSet<Vec<Rat>>,
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.space.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].dim()
    }

    pub fn compact_simple(&self) -> &[Weight] {
        &self.simple_roots[1..]
    }

    /// Coroot pairing λ(H_α) = 2⟨λ, α⟩ / ⟨α, α⟩.
    pub fn pairing(&self, lambda: &Weight, alpha: &Weight) -> Rat {
        rint(2) * lambda.dot(alpha) / alpha.dot(alpha)
    }

    /// Coroot pairing asserted integral (lattice weights against roots).
    pub fn pairing_int(&self, lambda: &Weight, alpha: &Weight) -> Result<i64> {
        let p = self.pairing(lambda, alpha);
        if !p.is_integer() {
            return Err(Error::Domain(format!("pairing of {lambda} against {alpha} is not integral")));
        }
        Ok(*p.numer())
    }

    pub fn is_root(&self, v: &Weight) -> bool {
        self.root_set.contains(&v.0)
    }

    pub fn reflect(&self, v: &Weight, alpha: &Weight) -> Weight {
        v.sub(&alpha.scale(self.pairing(v, alpha)))
    }

    /// Expansion coefficients of a root in the ordered simple system.
    pub fn simple_coefficients(&self, root: &Weight) -> Result<Vec<Rat>> {
        let ell = self.simple_roots.len();
        let gram: Vec<Vec<Rat>> = (0..ell)
            .map(|i| (0..ell).map(|j| self.simple_roots[i].dot(&self.simple_roots[j])).collect())
            .collect();
        let rhs: Vec<Rat> = (0..ell).map(|i| root.dot(&self.simple_roots[i])).collect();
        exact::solve_rat(&gram, &rhs)
            .ok_or_else(|| Error::Integrity("simple roots are not independent".into()))
    }

    /// Orbit of a weight under the compact Weyl group, deterministic order.
    pub fn orbit_compact(&self, v: &Weight) -> BTreeSet<Weight> {
        let mut orbit = BTreeSet::new();
        let mut queue = VecDeque::from([v.clone()]);
        while let Some(w) = queue.pop_front() {
            if orbit.contains(&w) {
                continue;
            }
            for alpha in self.compact_simple() {
                queue.push_back(self.reflect(&w, alpha));
            }
            orbit.insert(w);
        }
        orbit
    }

    /// The dominant chamber representative of v under W_c.
    pub fn dominant_rep_compact(&self, v: &Weight) -> Weight {
        let mut w = v.clone();
        'outer: loop {
            for alpha in self.compact_simple() {
                if self.pairing(&w, alpha).is_negative() {
                    w = self.reflect(&w, alpha);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Applies the longest element w₀ of W_c.
    pub fn apply_w0_compact(&self, v: &Weight) -> Weight {
        let mut w = v.clone();
        for &i in &self.w0_compact_word {
            w = self.reflect(&w, &self.simple_roots[i]);
        }
        w
    }

    /// ν-parameter of a weight: its value on the grading element Z₀.
    pub fn central_value(&self, lambda: &Weight) -> Rat {
        lambda.dot(&self.grading_vector)
    }
}

#[derive(Deserialize)]
struct ExceptionalTable {
    family: String,
    ambient_dim: usize,
    noncompact_node: usize,
    simple_roots: Vec<Vec<[i64; 2]>>,
}

fn exceptional_simples(json: &str, expect_family: &str) -> Result<(Vec<Weight>, usize)> {
    let table: ExceptionalTable = serde_json::from_str(json)
        .map_err(|e| Error::Integrity(format!("bad exceptional root table: {e}")))?;
    if table.family != expect_family {
        return Err(Error::Integrity(format!(
            "root table family mismatch: wanted {expect_family}, found {}",
            table.family
        )));
    }
    let simples = table
        .simple_roots
        .iter()
        .map(|row| {
            if row.len() != table.ambient_dim {
                return Err(Error::Integrity("root table row has wrong dimension".into()));
            }
            Ok(Weight(row.iter().map(|[n, d]| rat(*n, *d)).collect()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((simples, table.noncompact_node))
}

fn unit(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = rint(1);
    v
}

fn e_minus(dim: usize, i: usize, j: usize) -> Weight {
    let mut v = unit(dim, i);
    v[j] = rint(-1);
    Weight(v)
}

fn e_plus(dim: usize, i: usize, j: usize) -> Weight {
    let mut v = unit(dim, i);
    v[j] += rint(1);
    Weight(v)
}

/// Simple roots in the family's natural (Bourbaki) order, the full root set,
/// and the index of the noncompact simple node.
fn family_realization(space: &HermitianType) -> Result<(Vec<Weight>, Vec<Weight>, usize)> {
    match space.family {
        Family::I { p, q } => {
            let d = (p + q) as usize;
            let simples: Vec<Weight> = (0..d - 1).map(|i| e_minus(d, i, i + 1)).collect();
            let mut roots = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        roots.push(e_minus(d, i, j));
                    }
                }
            }
            Ok((simples, roots, p as usize - 1))
        }
        Family::II { n } => {
            let d = n as usize;
            let mut simples: Vec<Weight> = (0..d - 1).map(|i| e_minus(d, i, i + 1)).collect();
            simples.push(e_plus(d, d - 2, d - 1));
            let mut roots = Vec::new();
            for i in 0..d {
                for j in (i + 1)..d {
                    for root in [
                        e_minus(d, i, j),
                        e_minus(d, j, i),
                        e_plus(d, i, j),
                        e_plus(d, i, j).neg(),
                    ] {
                        roots.push(root);
                    }
                }
            }
            Ok((simples, roots, d - 1))
        }
        Family::III { n } => {
            let d = n as usize;
            let mut simples: Vec<Weight> = (0..d - 1).map(|i| e_minus(d, i, i + 1)).collect();
            simples.push(Weight(exact::scale(rint(2), &unit(d, d - 1))));
            let mut roots = Vec::new();
            for i in 0..d {
                roots.push(Weight(exact::scale(rint(2), &unit(d, i))));
                roots.push(Weight(exact::scale(rint(-2), &unit(d, i))));
                for j in (i + 1)..d {
                    for root in [
                        e_minus(d, i, j),
                        e_minus(d, j, i),
                        e_plus(d, i, j),
                        e_plus(d, i, j).neg(),
                    ] {
                        roots.push(root);
                    }
                }
            }
            Ok((simples, roots, d - 1))
        }
        Family::IV { n } => {
            // so(n+2): B_m for n odd (n+2 = 2m+1), D_m for n even (n+2 = 2m).
            let odd = n % 2 == 1;
            let d = if odd { (n as usize + 1) / 2 } else { (n as usize + 2) / 2 };
            let mut simples: Vec<Weight> = (0..d - 1).map(|i| e_minus(d, i, i + 1)).collect();
            if odd {
                simples.push(Weight(unit(d, d - 1)));
            } else {
                simples.push(e_plus(d, d - 2, d - 1));
            }
            let mut roots = Vec::new();
            for i in 0..d {
                if odd {
                    roots.push(Weight(unit(d, i)));
                    roots.push(Weight(exact::neg(&unit(d, i))));
                }
                for j in (i + 1)..d {
                    for root in [
                        e_minus(d, i, j),
                        e_minus(d, j, i),
                        e_plus(d, i, j),
                        e_plus(d, i, j).neg(),
                    ] {
                        roots.push(root);
                    }
                }
            }
            Ok((simples, roots, 0))
        }
        Family::EIII => {
            let (simples, node) = exceptional_simples(include_str!("../resources/e6.json"), "E6")?;
            let roots = reflection_closure(&simples);
            Ok((simples, roots, node))
        }
        Family::EVII => {
            let (simples, node) = exceptional_simples(include_str!("../resources/e7.json"), "E7")?;
            let roots = reflection_closure(&simples);
            Ok((simples, roots, node))
        }
    }
}

/// Generates the full root set from the simples by reflection closure.
fn reflection_closure(simples: &[Weight]) -> Vec<Weight> {
    let pairing = |v: &Weight, a: &Weight| rint(2) * v.dot(a) / a.dot(a);
    let mut set: BTreeSet<Weight> = BTreeSet::new();
    let mut queue: VecDeque<Weight> = simples.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if set.contains(&v) {
            continue;
        }
        for alpha in simples {
            queue.push_back(v.sub(&alpha.scale(pairing(&v, alpha))));
        }
        set.insert(v);
    }
    set.into_iter().collect()
}

/// Builds the complete root data for a space, running all integrity checks.
pub fn build_root_data(space: &HermitianType) -> Result<RootSystemData> {
    let (natural_simples, all_roots, node) = family_realization(space)?;

    // Relabel: noncompact simple first, compact simples in their natural order.
    let mut simple_roots = vec![natural_simples[node].clone()];
    simple_roots.extend(
        natural_simples
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != node)
            .map(|(_, a)| a.clone()),
    );

    let root_set: HashSet<Vec<Rat>> = all_roots.iter().map(|r| r.0.clone()).collect();
    let ell = simple_roots.len();
    let gram: Vec<Vec<Rat>> = (0..ell)
        .map(|i| (0..ell).map(|j| simple_roots[i].dot(&simple_roots[j])).collect())
        .collect();

    let mut positive_roots = Vec::new();
    for root in &all_roots {
        let rhs: Vec<Rat> = (0..ell).map(|i| root.dot(&simple_roots[i])).collect();
        let coeffs = exact::solve_rat(&gram, &rhs)
            .ok_or_else(|| Error::Integrity("degenerate simple system".into()))?;
        let nonneg = coeffs.iter().all(|c| !c.is_negative());
        let nonpos = coeffs.iter().all(|c| !c.is_positive());
        if !nonneg && !nonpos {
            return Err(Error::Integrity(format!("root {root} has mixed sign coefficients")));
        }
        if nonneg {
            positive_roots.push((coeffs, root.clone()));
        }
    }
    // Deterministic order: lexicographic on simple coefficients.
    positive_roots.sort_by(|a, b| a.0.cmp(&b.0));

    let mut compact_positive = Vec::new();
    let mut noncompact_positive = Vec::new();
    for (coeffs, root) in &positive_roots {
        let c1 = coeffs[0];
        if c1.is_zero() {
            compact_positive.push(root.clone());
        } else if c1 == rint(1) {
            noncompact_positive.push(root.clone());
        } else {
            return Err(Error::Integrity(format!(
                "noncompact coefficient of {root} is {} (space is not cominuscule)",
                exact::fmt_rat(&c1)
            )));
        }
    }
    if noncompact_positive.len() != space.dim_nplus {
        return Err(Error::Integrity(format!(
            "|Φ_nc⁺| = {}, expected n = {}",
            noncompact_positive.len(),
            space.dim_nplus
        )));
    }

    // Greedy strongly orthogonal system in descending lexicographic order.
    let mut by_lex: Vec<(Vec<Rat>, Weight)> = positive_roots
        .iter()
        .filter(|(c, _)| c[0] == rint(1))
        .cloned()
        .collect();
    by_lex.sort_by(|a, b| b.0.cmp(&a.0));
    let mut strongly_orthogonal: Vec<Weight> = Vec::new();
    for (_, beta) in &by_lex {
        let ok = strongly_orthogonal.iter().all(|gamma| {
            !root_set.contains(&beta.add(gamma).0) && !root_set.contains(&beta.sub(gamma).0)
        });
        if ok {
            strongly_orthogonal.push(beta.clone());
        }
    }
    if strongly_orthogonal.len() != space.rank {
        return Err(Error::Integrity(format!(
            "greedy construction found {} strongly orthogonal roots, rank is {}",
            strongly_orthogonal.len(),
            space.rank
        )));
    }
    // γ₁ is the lexicographically maximal root, i.e. the highest root.
    if strongly_orthogonal[0] != by_lex[0].1 {
        return Err(Error::Integrity("γ₁ is not the lexicographic maximum".into()));
    }

    let dim = simple_roots[0].dim();
    let half = rat(1, 2);
    let rho = positive_roots
        .iter()
        .fold(Weight::zero(dim), |acc, (_, r)| acc.add(r))
        .scale(half);
    let rho_compact = compact_positive
        .iter()
        .fold(Weight::zero(dim), |acc, r| acc.add(r))
        .scale(half);

    // λ₁ = Σ c_j α_j with λ₁(H_{α_i}) = δ_{i0}; z₀ = Σ c_j α_j with
    // ⟨α_i, z₀⟩ = δ_{i0}.
    let pairing_matrix: Vec<Vec<Rat>> = (0..ell)
        .map(|i| {
            let norm = simple_roots[i].dot(&simple_roots[i]);
            (0..ell)
                .map(|j| rint(2) * simple_roots[j].dot(&simple_roots[i]) / norm)
                .collect()
        })
        .collect();
    let mut rhs = vec![Rat::zero(); ell];
    rhs[0] = rint(1);
    let lam_coeffs = exact::solve_rat(&pairing_matrix, &rhs)
        .ok_or_else(|| Error::Integrity("Cartan matrix is singular".into()))?;
    let fundamental_alpha1 = lam_coeffs
        .iter()
        .zip(&simple_roots)
        .fold(Weight::zero(dim), |acc, (c, a)| acc.add(&a.scale(*c)));

    let z_coeffs = exact::solve_rat(&gram, &rhs)
        .ok_or_else(|| Error::Integrity("Gram matrix is singular".into()))?;
    let grading_vector = z_coeffs
        .iter()
        .zip(&simple_roots)
        .fold(Weight::zero(dim), |acc, (c, a)| acc.add(&a.scale(*c)));

    let mut data = RootSystemData {
        space: *space,
        simple_roots,
        positive_roots: positive_roots.into_iter().map(|(_, r)| r).collect(),
        compact_positive,
        noncompact_positive,
        strongly_orthogonal,
        distinguished_index: 0,
        fundamental_alpha1,
        grading_vector,
        rho,
        rho_compact,
        w0_compact_word: Vec::new(),
        root_set,
    };
    data.w0_compact_word = longest_compact_word(&data);
    integrity_checks(&data)?;
    Ok(data)
}

/// Longest element of W_c by exhaustive descent on ρ_c.
fn longest_compact_word(data: &RootSystemData) -> Vec<usize> {
    let mut word = Vec::new();
    let mut v = data.rho_compact.clone();
    let target = data.rho_compact.neg();
    'outer: while v != target {
        for (i, alpha) in data.simple_roots.iter().enumerate().skip(1) {
            if data.pairing(&v, alpha).is_positive() {
                v = data.reflect(&v, alpha);
                word.push(i);
                continue 'outer;
            }
        }
        break; // Φ_c empty (rank-1 spaces): w₀ = identity
    }
    word
}

fn integrity_checks(data: &RootSystemData) -> Result<()> {
    let space = &data.space;

    // Structure constants recomputed from the Peirce profile must agree.
    let (r, a, b, g, n) = structure_constants(data)?;
    if (r, a, b, g, n)
        != (
            space.rank,
            space.a,
            space.b,
            space.genus,
            space.dim_nplus,
        )
    {
        return Err(Error::Integrity(format!(
            "root-data constants ({r},{a},{b},{g},{n}) disagree with family table for {}",
            space.family
        )));
    }

    // γ₁ = w₀·α₁ for the longest element of W_c.
    if data.apply_w0_compact(&data.simple_roots[0]) != data.strongly_orthogonal[0] {
        return Err(Error::Integrity("γ₁ ≠ w₀·α₁".into()));
    }

    // Each γ_i lies in the W_c-orbit of γ₁.
    let orbit = data.orbit_compact(&data.strongly_orthogonal[0]);
    for gamma in &data.strongly_orthogonal {
        if !orbit.contains(gamma) {
            return Err(Error::Integrity(format!("{gamma} is not in W_c·γ₁")));
        }
    }
    // W_c preserves Φ_nc⁺.
    let nc_set: HashSet<&Weight> = data.noncompact_positive.iter().collect();
    for w in &orbit {
        if !nc_set.contains(w) {
            return Err(Error::Integrity("W_c·γ₁ escapes Φ_nc⁺".into()));
        }
    }

    // λ₁(Z₀) = n/g, and pairings of λ₁ against all roots are as designed.
    let nu = data.central_value(&data.fundamental_alpha1);
    if nu != rat(space.dim_nplus as i64, space.genus as i64) {
        return Err(Error::Integrity(format!(
            "λ₁(Z₀) = {} but n/g = {}/{}",
            exact::fmt_rat(&nu),
            space.dim_nplus,
            space.genus
        )));
    }

    // Pairing integrality of the simple roots against every root.
    for alpha in &data.positive_roots {
        for beta in &data.simple_roots {
            if !data.pairing(alpha, beta).is_integer() {
                return Err(Error::Integrity("non-integral root pairing".into()));
            }
        }
    }
    Ok(())
}

/// Returns the greedy strongly orthogonal system (γ₁ … γ_r).
pub fn strongly_orthogonal(data: &RootSystemData) -> Vec<Weight> {
    data.strongly_orthogonal.clone()
}

/// Recomputes (r, a, b, g, n) from the root combinatorics: a is the count of
/// the (γ_i, γ_j) joint Peirce spaces, b the count of the single-γ_i spaces,
/// cross-checked against g = 2 + a(r−1) + b.
pub fn structure_constants(data: &RootSystemData) -> Result<(usize, u32, u32, u32, usize)> {
    let r = data.strongly_orthogonal.len();
    let n = data.noncompact_positive.len();
    let mut diag = 0usize;
    let mut pair_counts = std::collections::HashMap::<(usize, usize), u32>::new();
    let mut single_counts = vec![0u32; r];
    for beta in &data.noncompact_positive {
        let profile: Vec<i64> = data
            .strongly_orthogonal
            .iter()
            .map(|gamma| data.pairing_int(beta, gamma))
            .collect::<Result<_>>()?;
        let twos = profile.iter().filter(|&&p| p == 2).count();
        let ones: Vec<usize> = (0..r).filter(|&i| profile[i] == 1).collect();
        if twos == 1 && ones.is_empty() {
            diag += 1;
        } else if twos == 0 && ones.len() == 2 {
            *pair_counts.entry((ones[0], ones[1])).or_insert(0) += 1;
        } else if twos == 0 && ones.len() == 1 {
            single_counts[ones[0]] += 1;
        } else {
            return Err(Error::Integrity(format!(
                "unexpected Peirce profile {profile:?} for {beta}"
            )));
        }
    }
    if diag != r {
        return Err(Error::Integrity(format!("{diag} diagonal Peirce roots, expected {r}")));
    }
    let a = if r >= 2 {
        let first = *pair_counts.get(&(0, 1)).unwrap_or(&0);
        for i in 0..r {
            for j in (i + 1)..r {
                if *pair_counts.get(&(i, j)).unwrap_or(&0) != first {
                    return Err(Error::Integrity("uneven joint Peirce multiplicities".into()));
                }
            }
        }
        first
    } else {
        0
    };
    let b = {
        let first = single_counts[0];
        if single_counts.iter().any(|&c| c != first) {
            return Err(Error::Integrity("uneven boundary Peirce multiplicities".into()));
        }
        first
    };
    let g = 2 + a * (r as u32 - 1) + b;
    let n_check = r + a as usize * r * (r - 1) / 2 + r * b as usize;
    if n_check != n {
        return Err(Error::Integrity(format!(
            "Peirce dimension count {n_check} ≠ |Φ_nc⁺| = {n}"
        )));
    }
    Ok((r, a, b, g, n))
}
