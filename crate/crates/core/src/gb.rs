//! Groebner bases (Buchberger with Gebauer-Moeller pair pruning), normal
//! forms, and the ideal-theoretic predicates built on them: Krull
//! dimension, m-primary detection, truncation index and minimal generators.
//!
//! Every local membership question the pipeline asks is posed against an
//! ideal that contains a power of the maximal ideal at the origin. Such an
//! ideal is m-primary, so membership in the polynomial ring, in the
//! localization and in the completion agree, and global Groebner bases
//! suffice.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, Polynomial};
use crate::scalar::{Field, Scalar};

/// Fully reduces `f` by `basis` (every term, not just the leading one).
pub fn reduce(f: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some(lm) = p.leading_monomial() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|gm| gm.divides(lm)));
        match divisor {
            Some(g) => {
                let gm = g.leading_monomial().unwrap();
                let c = p.leading_coeff().unwrap() / g.leading_coeff().unwrap();
                p = p.add_scaled(&-c, &gm.quotient_of(lm), g);
            }
            None => rem.push(p.pop_leading().unwrap()),
        }
    }
    f.with_sorted_terms(rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let one = f.field().one();
    let fm = f.leading_monomial().unwrap();
    let gm = g.leading_monomial().unwrap();
    f.mul_term(&fm.quotient_of(lcm), &one)
        .add_scaled(&-one.clone(), &gm.quotient_of(lcm), g)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer-Moeller update: prunes new pairs with the chain and product
/// criteria, discards old pairs made redundant by `h`, and removes basis
/// elements whose leading monomial `h` divides.
fn update(polys: &[Polynomial], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lm_h = polys[h].leading_monomial().unwrap().clone();
    let lm = |i: usize| polys[i].leading_monomial().unwrap();

    let candidates: Vec<(usize, Monomial)> = active.iter().map(|&g| (g, lm_h.lcm(lm(g)))).collect();
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (k, (g, l)) in candidates.iter().enumerate() {
        let coprime = lm_h.is_coprime(lm(*g));
        let dominated = candidates[k + 1..]
            .iter()
            .chain(kept.iter())
            .any(|(_, other)| other.divides(l));
        if coprime || !dominated {
            kept.push((*g, l.clone()));
        }
    }
    let fresh: Vec<Pair> = kept
        .into_iter()
        .filter(|(g, _)| !lm_h.is_coprime(lm(*g)))
        .map(|(g, lcm)| Pair { i: g, j: h, lcm })
        .collect();

    pairs.retain(|p| !lm_h.divides(&p.lcm) || lm_h.lcm(lm(p.i)) == p.lcm || lm_h.lcm(lm(p.j)) == p.lcm);
    pairs.extend(fresh);

    active.retain(|&g| !lm_h.divides(lm(g)));
    active.push(h);
}

/// Reduced Groebner basis of the ideal generated by `gens`: monic,
/// inter-reduced, sorted by increasing leading monomial. Zero generators are
/// ignored; the zero ideal has the empty basis.
pub fn groebner_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let order = first.order();
    let mut polys: Vec<Polynomial> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in gens {
        let basis: Vec<&Polynomial> = active.iter().map(|&i| &polys[i]).collect();
        let h = reduce(g, &basis);
        if h.is_zero() {
            continue;
        }
        polys.push(h.monic());
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(k);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], &pair.lcm);
        let basis: Vec<&Polynomial> = active.iter().map(|&i| &polys[i]).collect();
        let h = reduce(&s, &basis);
        if !h.is_zero() {
            polys.push(h.monic());
            update(&polys, &mut active, &mut pairs, polys.len() - 1);
        }
    }

    let mut minimal: Vec<Polynomial> = Vec::new();
    for &i in &active {
        let lm = polys[i].leading_monomial().unwrap();
        let redundant = active.iter().any(|&j| {
            let other = polys[j].leading_monomial().unwrap();
            j != i && other.divides(lm) && (other != lm || j < i)
        });
        if !redundant {
            minimal.push(polys[i].clone());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<&Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p)
                .collect();
            reduce(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    reduced
}

/// Ideal of a polynomial ring with a lazily computed reduced Groebner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    field: Field,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(generators: Vec<Polynomial>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyIdeal)?;
        let (nvars, field, order) = (first.nvars(), first.field(), first.order());
        for g in &generators {
            if g.nvars() != nvars || g.order() != order {
                return Err(Error::ArityMismatch);
            }
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Ideal {
            nvars,
            field,
            order,
            generators,
            basis: OnceLock::new(),
        })
    }

    /// The maximal ideal `(x_1, ..., x_e)` at the origin.
    pub fn maximal(nvars: usize, field: Field, order: MonomialOrder) -> Self {
        Ideal::new((0..nvars).map(|i| Polynomial::var(nvars, field, order, i)).collect())
            .expect("at least one variable")
    }

    /// `m^s`, generated by all monomials of degree `s`.
    pub fn maximal_power(nvars: usize, field: Field, order: MonomialOrder, s: u32) -> Self {
        Ideal::new(
            monomials_of_degree(nvars, s)
                .into_iter()
                .map(|m| Polynomial::term(nvars, field, order, m, field.one()))
                .collect(),
        )
        .expect("nonempty")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Groebner basis, computed once and cached.
    pub fn groebner(&self) -> &[Polynomial] {
        self.basis.get_or_init(|| groebner_basis(&self.generators))
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.nvars() != self.nvars || f.order() != self.order {
            return Err(Error::ArityMismatch);
        }
        if f.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Unique remainder of `f` modulo the reduced basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let basis: Vec<&Polynomial> = self.groebner().iter().collect();
        Ok(reduce(f, &basis))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner()
            .iter()
            .any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner()
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    /// Krull dimension of `Q/I`: the largest set of variables containing the
    /// support of no leading monomial. The unit ideal is reported as 0.
    pub fn krull_dim(&self) -> usize {
        if self.is_unit() {
            return 0;
        }
        let supports: Vec<u32> = self.leading_monomials().iter().map(Monomial::support).collect();
        let n = self.nvars;
        let mut best = 0;
        for mask in 0u32..(1u32 << n) {
            let size = mask.count_ones() as usize;
            if size > best && supports.iter().all(|s| s & !mask != 0) {
                best = size;
            }
        }
        best
    }

    /// Standard monomials (not in the leading-term ideal), by degree.
    /// `None` when there are infinitely many, i.e. `Q/I` is not artinian.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if self.krull_dim() != 0 {
            return None;
        }
        let lms = self.leading_monomials();
        let mut out = Vec::new();
        for degree in 0.. {
            let layer: Vec<Monomial> = monomials_of_degree(self.nvars, degree)
                .into_iter()
                .filter(|m| !lms.iter().any(|l| l.divides(m)))
                .collect();
            if layer.is_empty() {
                break;
            }
            out.extend(layer);
        }
        Some(out)
    }

    /// `dim_k Q/I` when finite.
    pub fn quotient_dimension(&self) -> Option<usize> {
        self.standard_monomials().map(|s| s.len())
    }

    /// Least `k` with `x_i^k` in `I`, if `x_i` is nilpotent modulo `I`.
    /// `Q/I` is cyclic, so this is also the nilpotency index of the
    /// multiplication-by-`x_i` operator on `Q/I`.
    pub fn nilpotency_index(&self, var: usize) -> Option<u32> {
        let bound = self.quotient_dimension()? as u32;
        let x = Polynomial::var(self.nvars, self.field, self.order, var);
        let mut p = Polynomial::constant(self.nvars, self.field, self.order, self.field.one());
        for k in 0..=bound {
            p = self.normal_form(&p).expect("compatible");
            if p.is_zero() {
                return Some(k);
            }
            p = &p * &x;
        }
        None
    }

    /// Whether `Q/I` is a nonzero artinian ring supported only at the origin.
    pub fn is_m_primary(&self) -> bool {
        if self.is_unit() || self.krull_dim() != 0 {
            return false;
        }
        (0..self.nvars).all(|i| self.nilpotency_index(i).is_some())
    }

    /// Least `N` with `m^N` contained in `I`.
    pub fn truncation_index(&self) -> Result<u32> {
        if !self.is_m_primary() {
            return Err(Error::NotMPrimary);
        }
        let standard = self.standard_monomials().expect("artinian");
        let lower = standard.iter().map(Monomial::degree).max().unwrap_or(0) + 1;
        let upper = 1
            + (0..self.nvars)
                .map(|i| self.nilpotency_index(i).expect("nilpotent") - 1)
                .sum::<u32>();
        for n in lower..=upper.max(lower) {
            let all_in = monomials_of_degree(self.nvars, n).into_iter().all(|m| {
                let p = Polynomial::term(self.nvars, self.field, self.order, m, self.field.one());
                self.contains(&p).expect("compatible")
            });
            if all_in {
                return Ok(n);
            }
        }
        unreachable!("m^N lies in an m-primary ideal once N exceeds the nilpotency bound")
    }

    /// `m * I`, generated by `x_i * g` for every variable and generator.
    pub fn product_with_maximal(&self) -> Ideal {
        let one = self.field.one();
        let gens = self
            .generators
            .iter()
            .flat_map(|g| (0..self.nvars).map(|i| g.mul_term(&Monomial::var(self.nvars, i), &one)))
            .filter(|p| !p.is_zero())
            .collect::<Vec<_>>();
        if gens.is_empty() {
            return Ideal::new(vec![Polynomial::zero(self.nvars, self.field, self.order)]).expect("one generator");
        }
        Ideal::new(gens).expect("compatible generators")
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(gens)
    }
}

/// The finite-dimensional algebra `Q / m^(N+1)` with basis all monomials of
/// degree at most `N`. Polynomials map to coordinates by discarding terms of
/// degree above `N`.
#[derive(Clone, Debug)]
pub struct TruncatedAlgebra {
    nvars: usize,
    field: Field,
    level: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl TruncatedAlgebra {
    pub fn new(nvars: usize, field: Field, level: u32) -> Self {
        let basis: Vec<Monomial> = (0..=level).flat_map(|d| monomials_of_degree(nvars, d)).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        TruncatedAlgebra {
            nvars,
            field,
            level,
            basis,
            index,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn coordinates(&self, f: &Polynomial) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.basis.len()];
        for (m, c) in f.terms() {
            if m.degree() <= self.level {
                v[self.index[m]] = c.clone();
            }
        }
        v
    }

    /// Span of the truncated images of the ideal generated by `gens`, i.e.
    /// of all `mu * g` with `mu` a monomial of degree at most the level.
    pub fn ideal_image(&self, gens: &[Polynomial]) -> EchelonBasis {
        let mut span = EchelonBasis::new(self.dim(), self.field);
        let one = self.field.one();
        for g in gens {
            let Ok(ord) = g.ord() else { continue };
            if ord > self.level {
                continue;
            }
            for mu in self.basis.iter().filter(|mu| mu.degree() + ord <= self.level) {
                span.insert(&self.coordinates(&g.mul_term(mu, &one)));
            }
            debug_assert_eq!(g.nvars(), self.nvars);
        }
        span
    }
}

/// Outcome of trimming a generating set.
#[derive(Clone, Debug)]
pub struct MinimalGenerators {
    /// Surviving generators, in their input order.
    pub generators: Vec<Polynomial>,
    /// Whether the set is certified to be a minimal generating set of the
    /// local ideal (homogeneous or m-primary input).
    pub certified: bool,
}

/// Trims a generating set down to a minimal one.
///
/// Homogeneous input: generators are visited by increasing degree and kept
/// unless they lie in the ideal of those already kept (graded Nakayama).
/// Inhomogeneous m-primary input: kept generators have linearly independent
/// classes in `I/mI`, computed in a truncated algebra. Anything else is
/// trimmed globally and reported uncertified.
pub fn minimal_generators(gens: &[Polynomial]) -> Result<MinimalGenerators> {
    let nonzero: Vec<(usize, &Polynomial)> = gens.iter().enumerate().filter(|(_, g)| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::EmptyAfterTrim);
    }
    let keep_in_input_order = |mut idx: Vec<usize>| {
        idx.sort_unstable();
        idx.into_iter().map(|i| gens[i].clone()).collect::<Vec<_>>()
    };

    if nonzero.iter().all(|(_, g)| g.is_homogeneous()) {
        let mut visit = nonzero.clone();
        visit.sort_by_key(|(i, g)| (g.degree().unwrap(), *i));
        let mut kept: Vec<usize> = Vec::new();
        for (i, g) in visit {
            let redundant = if kept.is_empty() {
                false
            } else {
                Ideal::new(kept.iter().map(|&k| gens[k].clone()).collect())?.contains(g)?
            };
            if !redundant {
                kept.push(i);
            }
        }
        return Ok(MinimalGenerators {
            generators: keep_in_input_order(kept),
            certified: true,
        });
    }

    let ideal = Ideal::new(nonzero.iter().map(|(_, g)| (*g).clone()).collect())?;
    if ideal.is_m_primary() {
        let m_ideal = ideal.product_with_maximal();
        let level = m_ideal.truncation_index()? - 1;
        let algebra = TruncatedAlgebra::new(ideal.nvars(), ideal.field(), level);
        let mut span = algebra.ideal_image(m_ideal.generators());
        let mut visit = nonzero.clone();
        visit.sort_by_key(|(i, g)| (g.ord().unwrap(), *i));
        let kept: Vec<usize> = visit
            .into_iter()
            .filter(|(_, g)| span.insert(&algebra.coordinates(g)))
            .map(|(i, _)| i)
            .collect();
        return Ok(MinimalGenerators {
            generators: keep_in_input_order(kept),
            certified: true,
        });
    }

    let mut kept: Vec<usize> = nonzero.iter().map(|(i, _)| *i).collect();
    loop {
        let drop = kept.iter().rev().position(|&i| {
            let others: Vec<Polynomial> = kept.iter().filter(|&&j| j != i).map(|&j| gens[j].clone()).collect();
            !others.is_empty() && Ideal::new(others).and_then(|o| o.contains(&gens[i])).unwrap_or(false)
        });
        match drop {
            Some(pos) => {
                let at = kept.len() - 1 - pos;
                kept.remove(at);
            }
            None => break,
        }
    }
    Ok(MinimalGenerators {
        generators: keep_in_input_order(kept),
        certified: false,
    })
}
