//! Presentations `R = Q/I`, their numerical invariants, and the kernel
//! `K_J = ker(I/mI -> J/mJ)` describing the cohomological support of an
//! artinian complete-intersection quotient `Q/J` with `I ⊆ J`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gb::{minimal_generators, Ideal, TruncatedAlgebra};
use crate::linalg::{EchelonBasis, MatK, Subspace};
use crate::poly::{PolyRing, Polynomial};
use crate::scalar::Scalar;

/// A presentation `Q/I` of a local ring by minimal generators
/// `f_1, ..., f_n` of `I ⊆ m^2`, sorted by increasing m-adic order (stable,
/// so equal-order generators keep their input order).
#[derive(Clone, Debug)]
pub struct Presentation {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    orders: Vec<u32>,
    homogeneous: bool,
    minimality_certified: bool,
    ideal: Ideal,
}

impl Presentation {
    /// Trims `gens` to a minimal generating set and sorts it by order.
    ///
    /// Minimality is certified for homogeneous and for m-primary input.
    /// Otherwise construction fails unless `assume_minimal` is set, in which
    /// case the globally trimmed set is taken on trust.
    pub fn new(ring: PolyRing, gens: Vec<Polynomial>, assume_minimal: bool) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.nvars() != ring.nvars() || g.order() != ring.order() {
                return Err(Error::ArityMismatch);
            }
            if g.field() != ring.field() {
                return Err(Error::FieldMismatch);
            }
            if !g.is_zero() && g.ord()? < 2 {
                return Err(Error::InvalidPresentation(format!(
                    "generator {} ({}) is not in m^2",
                    i + 1,
                    ring.format(g)
                )));
            }
        }
        let trimmed = minimal_generators(&gens)?;
        // Local trimming can drop a generator that is only needed away from
        // the origin, so the ideal keeps every input generator.
        let ideal = Ideal::new(gens.iter().filter(|g| !g.is_zero()).cloned().collect())?;
        if !trimmed.certified && !assume_minimal {
            return Err(Error::MinimalityNotCertifiable);
        }
        let mut generators = trimmed.generators;
        generators.sort_by_key(|g| g.ord().expect("nonzero"));
        let orders = generators.iter().map(|g| g.ord().unwrap()).collect();
        let homogeneous = generators.iter().all(Polynomial::is_homogeneous);
        Ok(Presentation {
            ring,
            generators,
            orders,
            homogeneous,
            minimality_certified: trimmed.certified,
            ideal,
        })
    }

    pub fn parse(ring: PolyRing, gens: &[&str], assume_minimal: bool) -> Result<Self> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys, assume_minimal)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Embedding dimension.
    pub fn e(&self) -> usize {
        self.ring.nvars()
    }

    /// Minimal number of generators.
    pub fn n(&self) -> usize {
        self.generators.len()
    }

    /// Order of `I`.
    pub fn d(&self) -> u32 {
        self.orders[0]
    }

    /// Number of generators of minimal order.
    pub fn c(&self) -> usize {
        self.orders.iter().filter(|&&o| o == self.d()).count()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn minimality_certified(&self) -> bool {
        self.minimality_certified
    }

    pub fn is_equipresented(&self) -> bool {
        self.c() == self.n()
    }

    /// `sum c_i f_i`.
    pub fn combination(&self, coords: &[Scalar]) -> Result<Polynomial> {
        if coords.len() != self.n() {
            return Err(Error::AmbientMismatch(self.n(), coords.len()));
        }
        let one = crate::poly::Monomial::one(self.e());
        let mut acc = self.ring.zero();
        for (c, f) in coords.iter().zip(&self.generators) {
            if c.field() != self.ring.field() {
                return Err(Error::FieldMismatch);
            }
            acc = acc.add_scaled(c, &one, f);
        }
        Ok(acc)
    }

    /// Rank of the lowest forms of the minimal-order generators.
    fn lowest_form_rank(&self) -> usize {
        let forms: Vec<Polynomial> = self.generators[..self.c()]
            .iter()
            .map(|f| f.lowest_form().expect("nonzero"))
            .collect();
        let algebra = TruncatedAlgebra::new(self.e(), self.ring.field(), self.d());
        let rows = forms.iter().map(|f| algebra.coordinates(f)).collect();
        MatK::from_rows(algebra.dim(), self.ring.field(), rows)
            .expect("uniform width")
            .rank()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CiStatus {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub e: usize,
    pub n: usize,
    pub d: u32,
    pub c: usize,
    /// `dim_k (m^(d+1) ∩ I) / mI`.
    pub lhs: usize,
    pub lowest_form_rank: usize,
    pub lowest_forms_independent: bool,
    pub equipresented: bool,
    pub homogeneous: bool,
    pub minimality_certified: bool,
    pub m_primary: bool,
    /// Krull dimension of `Q/I` where it decides the complete-intersection
    /// question.
    pub krull_dim: Option<usize>,
    pub complete_intersection: CiStatus,
}

impl AnalysisReport {
    /// Whether `lhs < s` for a lower bound `s` on the dimension of the span
    /// of the cohomological support of `R`.
    pub fn large_support(&self, s: usize) -> bool {
        self.lhs < s
    }
}

/// Numerical invariants of a presentation.
///
/// The degree-`d` part of `(I + m^(d+1)) / m^(d+1)` is spanned by the lowest
/// forms of the order-`d` generators, so `lhs = n - rank` of those forms;
/// this is `n - c` exactly when the forms are independent (always, for
/// homogeneous minimal generators).
pub fn analyze(p: &Presentation) -> AnalysisReport {
    let rank = p.lowest_form_rank();
    let m_primary = p.ideal.is_m_primary();
    let krull_dim = (p.homogeneous || m_primary).then(|| p.ideal.krull_dim());
    let complete_intersection = match (krull_dim, p.minimality_certified) {
        (Some(dim), true) if p.n() == p.e() - dim => CiStatus::Yes,
        (Some(_), true) => CiStatus::No,
        _ => CiStatus::Unknown,
    };
    AnalysisReport {
        e: p.e(),
        n: p.n(),
        d: p.d(),
        c: p.c(),
        lhs: p.n() - rank,
        lowest_form_rank: rank,
        lowest_forms_independent: rank == p.c(),
        equipresented: p.is_equipresented(),
        homogeneous: p.homogeneous,
        minimality_certified: p.minimality_certified,
        m_primary,
        krull_dim,
        complete_intersection,
    }
}

/// An artinian, m-primary `J` together with the finite model of `mJ` used
/// for membership: `mJ ⊇ m^(N+1)`, so `f ∈ mJ` iff the image of `f` in
/// `Q/m^(N+1)` lies in the image of `mJ`.
#[derive(Clone, Debug)]
pub struct QuotientModel {
    j: Ideal,
    mj: Ideal,
    level: u32,
    algebra: TruncatedAlgebra,
    image: EchelonBasis,
}

impl QuotientModel {
    pub fn new(j: &Ideal) -> Result<Self> {
        if j.is_unit() {
            return Err(Error::NotMPrimary);
        }
        let dim = j.krull_dim();
        if dim != 0 {
            return Err(Error::NotArtinian(dim));
        }
        if !j.is_m_primary() {
            return Err(Error::NotMPrimary);
        }
        let mj = j.product_with_maximal();
        let level = mj.truncation_index()? - 1;
        let algebra = TruncatedAlgebra::new(j.nvars(), j.field(), level);
        let image = algebra.ideal_image(mj.generators());
        Ok(QuotientModel {
            j: j.clone(),
            mj,
            level,
            algebra,
            image,
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.j
    }

    pub fn m_ideal(&self) -> &Ideal {
        &self.mj
    }

    /// `N`, where `N + 1` is the truncation index of `mJ`.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Membership in `mJ` through the truncated model.
    pub fn in_mj_truncated(&self, f: &Polynomial) -> bool {
        self.image.contains(&self.algebra.coordinates(f))
    }

    /// `f ∉ mJ`, decided by both the truncated model and a Groebner normal
    /// form; the two must agree.
    pub fn is_minimal(&self, f: &Polynomial) -> Result<bool> {
        let truncated = self.in_mj_truncated(f);
        let groebner = self.mj.contains(f)?;
        if truncated != groebner {
            return Err(Error::OracleDisagreement);
        }
        Ok(!groebner)
    }

    /// `{c ∈ k^n : sum c_i f_i ∈ mJ}`.
    pub fn kernel(&self, p: &Presentation) -> Result<KernelSubspace> {
        for (index, f) in p.generators().iter().enumerate() {
            if !self.j.contains(f)? {
                return Err(Error::NotContained { index });
            }
        }
        let field = p.ring().field();
        let residuals: Vec<Vec<Scalar>> = p
            .generators()
            .iter()
            .map(|f| self.image.reduce(&self.algebra.coordinates(f)))
            .collect();
        // columns are the residuals of f_1..f_n modulo the image of mJ
        let rows = (0..self.algebra.dim())
            .map(|r| residuals.iter().map(|col| col[r].clone()).collect())
            .collect();
        let m = MatK::from_rows(p.n(), field, rows)?;
        Ok(KernelSubspace {
            subspace: m.kernel(),
            truncation_level: self.level,
        })
    }
}

/// Kernel of `I/mI -> J/mJ` in coordinates relative to `f_1, ..., f_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSubspace {
    pub subspace: Subspace,
    /// `N` such that `mJ ⊇ m^(N+1)`.
    pub truncation_level: u32,
}

/// Computes `K_J` for an artinian m-primary `J ⊇ I`.
pub fn kernel_map(p: &Presentation, j: &Ideal) -> Result<KernelSubspace> {
    QuotientModel::new(j)?.kernel(p)
}

/// Whether `f` (assumed in `J`) is a minimal generator of `J`, i.e. `f ∉ mJ`.
pub fn is_minimal_in(j: &Ideal, f: &Polynomial) -> Result<bool> {
    QuotientModel::new(j)?.is_minimal(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(Field::Rational, vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn ideal(r: &PolyRing, gens: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|g| r.parse(g).unwrap()).collect()).unwrap()
    }

    fn shortgor() -> Presentation {
        let r = ring(&["x", "y", "z"]);
        Presentation::parse(r, &["x^2-y^2", "x^2-z^2", "xy", "xz", "yz"], false).unwrap()
    }

    fn thomas() -> Presentation {
        let r = ring(&["x", "y", "z"]);
        Presentation::parse(r, &["x^2+y^2+z^2", "xyz", "x^3"], false).unwrap()
    }

    #[test]
    fn analyze_short_gorenstein() {
        let a = analyze(&shortgor());
        assert_eq!((a.e, a.n, a.d, a.c, a.lhs), (3, 5, 2, 5, 0));
        assert!(a.equipresented);
        assert_eq!(a.complete_intersection, CiStatus::No);
        assert!(a.large_support(1));
    }

    #[test]
    fn analyze_thomas() {
        let p = thomas();
        let a = analyze(&p);
        assert_eq!((a.n, a.d, a.c, a.lhs), (3, 2, 1, 2));
        assert!(!a.m_primary);
        assert_eq!(a.krull_dim, Some(1));
        assert_eq!(a.complete_intersection, CiStatus::No);
        assert!(!a.large_support(2));
        assert_eq!(p.ring().format(&p.generators()[1]), "xyz");
    }

    #[test]
    fn analyze_hypersurface() {
        let p = Presentation::parse(ring(&["x", "y"]), &["x^2"], false).unwrap();
        let a = analyze(&p);
        assert_eq!(a.n, 1);
        assert_eq!(a.krull_dim, Some(1));
        assert_eq!(a.complete_intersection, CiStatus::Yes);
    }

    #[test]
    fn analyze_inhomogeneous_dependent_lowest_forms() {
        // both generators have lowest form x^2; their difference has order 3
        let r = ring(&["x", "y"]);
        let p = Presentation::parse(r, &["x^2 + y^3", "x^2 + xy^2", "y^5"], false).unwrap();
        let a = analyze(&p);
        assert!(a.m_primary && a.minimality_certified);
        assert_eq!((a.n, a.c, a.lowest_form_rank, a.lhs), (2, 2, 1, 1));
        assert!(!a.lowest_forms_independent);
        assert_eq!(a.complete_intersection, CiStatus::Yes);
    }

    #[test]
    fn combination_drops_zero_terms() {
        let p = shortgor();
        let f = Field::Rational;
        let coords: Vec<Scalar> = [0, 0, 1, 0, 0].iter().map(|&v| f.from_i64(v)).collect();
        let g = p.combination(&coords).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g, p.ring().parse("xy").unwrap());
        assert!(p.combination(&coords[..4]).is_err());
    }

    #[test]
    fn presentation_validation() {
        let r = ring(&["x", "y"]);
        assert!(matches!(
            Presentation::parse(r.clone(), &["x^2", "y"], false),
            Err(Error::InvalidPresentation(_))
        ));
        assert!(matches!(
            Presentation::parse(r.clone(), &["x^2 - y^3", "x^3 - xy^3"], false),
            Err(Error::MinimalityNotCertifiable)
        ));
        let p = Presentation::parse(r, &["x^2 - y^3", "x^3 - xy^3"], true).unwrap();
        assert_eq!(p.n(), 1);
        assert!(!p.minimality_certified());
    }

    #[test]
    fn analyze_is_invariant_under_permutation_and_scaling() {
        let r = ring(&["x", "y", "z"]);
        let base = analyze(&thomas());
        let p = Presentation::parse(r, &["-3x^3", "x^2+y^2+z^2", "1/2xyz"], false).unwrap();
        let a = analyze(&p);
        assert_eq!(
            (a.e, a.n, a.d, a.c, a.lhs, a.equipresented, a.complete_intersection),
            (
                base.e,
                base.n,
                base.d,
                base.c,
                base.lhs,
                base.equipresented,
                base.complete_intersection
            )
        );
    }

    #[test]
    fn thomas_first_kernel() {
        let p = thomas();
        let r = p.ring().clone();
        let k = kernel_map(&p, &ideal(&r, &["x^2+y^2+z^2", "y", "x^3"])).unwrap();
        assert_eq!(k.subspace, Subspace::coordinate(3, Field::Rational, &[1]));
    }

    #[test]
    fn thomas_second_ideal_does_not_contain_i() {
        // Q/(x^2-2z, xyz, y+z) = k[x]/(x^5) with z = x^2/2, so x^3 survives
        let p = thomas();
        let r = p.ring().clone();
        let j2 = ideal(&r, &["x^2-2z", "xyz", "y+z"]);
        assert!(!j2.contains(&r.parse("x^3").unwrap()).unwrap());
        assert!(matches!(kernel_map(&p, &j2), Err(Error::NotContained { index: 0 })));
    }

    #[test]
    fn monomial_four_variable_kernel() {
        let r = ring(&["x", "y", "z", "w"]);
        let p = Presentation::parse(r.clone(), &["x^4", "xy", "yz", "zw", "w^3"], false).unwrap();
        // sorted by order: xy, yz, zw, w^3, x^4
        let k = kernel_map(&p, &ideal(&r, &["x^4", "y", "z", "w"])).unwrap();
        assert_eq!(k.subspace, Subspace::coordinate(5, Field::Rational, &[0, 1, 2, 3]));
    }

    #[test]
    fn kernel_errors() {
        let p = thomas();
        let r = p.ring().clone();
        assert!(matches!(
            kernel_map(&p, &ideal(&r, &["x", "y"])),
            Err(Error::NotArtinian(1))
        ));
        assert!(matches!(
            kernel_map(&p, &ideal(&r, &["x - 1", "y", "z"])),
            Err(Error::NotMPrimary)
        ));
        assert!(matches!(
            kernel_map(&p, &ideal(&r, &["x^3", "y", "z^3"])),
            Err(Error::NotContained { index: 0 })
        ));
    }

    #[test]
    fn minimality_examples() {
        let r = ring(&["x", "y", "z"]);
        let f = r.parse("x^2-y^2").unwrap();
        assert!(is_minimal_in(&ideal(&r, &["x^2-y^2", "y-z", "x"]), &f).unwrap());
        let xyz = r.parse("xyz").unwrap();
        assert!(!is_minimal_in(&ideal(&r, &["x^2+y^2+z^2", "y", "x^3"]), &xyz).unwrap());
        let r2 = ring(&["x", "y"]);
        let m2 = ideal(&r2, &["x^2", "xy", "y^2"]);
        assert!(is_minimal_in(&m2, &r2.parse("x^2").unwrap()).unwrap());
    }

    #[test]
    fn truncated_ring_kernel_dimension() {
        let r = ring(&["a", "b"]);
        let p = Presentation::parse(r.clone(), &["a^2", "ab", "b^2"], false).unwrap();
        let k = kernel_map(&p, &ideal(&r, &["a^2", "b"])).unwrap();
        assert_eq!(k.subspace.dim(), 2);
        assert_eq!(k.truncation_level, 2);
    }
}
