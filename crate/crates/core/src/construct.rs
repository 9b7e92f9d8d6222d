//! Construction of artinian hypersurface quotients `Q/J` whose supports
//! intersect trivially: the randomized main loop, the deterministic recipe
//! for monomial ideals with incomparable supports, and the truncated rings
//! `Q/m^s`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cert::{assemble, next_selection, Certificate, Mode, SearchRecord, StepData};
use crate::error::{Error, Result};
use crate::gb::Ideal;
use crate::linalg::Subspace;
use crate::poly::{monomials_of_degree, PolyRing, Polynomial};
use crate::scalar::{Field, Scalar};
use crate::support::{Presentation, QuotientModel};

/// Smallest prime field accepted for randomized search.
pub const MIN_SEARCH_PRIME: u64 = 101;

/// Failures after which the rational coefficient bound doubles.
const BLOCK: u32 = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub max_attempts: u32,
    pub coeff_bound: u32,
    /// Lower bound `s` on the dimension of the span of `V_R(R)`.
    pub span_dim: Option<u32>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_attempts: 200,
            coeff_bound: 10,
            span_dim: None,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig {
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_attempts == 0 || self.coeff_bound == 0 {
            return Err(Error::DegenerateParameters(
                "max_attempts and coeff_bound must be at least 1".into(),
            ));
        }
        if self.span_dim == Some(0) {
            return Err(Error::DegenerateParameters("span bound must be positive".into()));
        }
        Ok(())
    }

    fn record(&self) -> SearchRecord {
        SearchRecord {
            seed: self.seed,
            max_attempts: self.max_attempts,
            coeff_bound: self.coeff_bound,
        }
    }
}

/// An accepted `J = (g, l_2, ..., l_e)`.
#[derive(Clone, Debug)]
pub struct HypersurfaceQuotient {
    pub ideal: Ideal,
    pub model: QuotientModel,
    /// Trials used, counting the accepted one.
    pub attempts: u32,
}

/// Samples `J = (g, l_2, ..., l_e)` with random linear forms `l_i` until `J`
/// is artinian, m-primary, contains `I` and has `g` as a minimal generator.
pub fn find_hypersurface_quotient(
    p: &Presentation,
    g: &Polynomial,
    cfg: &SearchConfig,
) -> Result<HypersurfaceQuotient> {
    cfg.validate()?;
    check_search_field(p.ring().field())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    search(p, g, cfg, &mut rng)
}

fn check_search_field(field: Field) -> Result<()> {
    match field {
        Field::Prime(q) if q < MIN_SEARCH_PRIME => Err(Error::DegenerateParameters(format!(
            "randomized search needs QQ or a prime field with p >= {MIN_SEARCH_PRIME}, got F_{q}"
        ))),
        _ => Ok(()),
    }
}

fn search(p: &Presentation, g: &Polynomial, cfg: &SearchConfig, rng: &mut ChaCha8Rng) -> Result<HypersurfaceQuotient> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ord = g.ord()?;
    if ord < 2 {
        return Err(Error::OrderTooSmall(ord));
    }
    let ring = p.ring();
    let field = ring.field();
    for attempt in 0..cfg.max_attempts {
        let bound = u64::from(cfg.coeff_bound) << (attempt / BLOCK).min(32);
        let mut gens = vec![g.clone()];
        for _ in 1..p.e() {
            let coeffs: Vec<Scalar> = (0..p.e()).map(|_| field.sample(rng, bound)).collect();
            gens.push(linear_form(ring, &coeffs));
        }
        if gens[1..].iter().any(Polynomial::is_zero) {
            continue;
        }
        let j = Ideal::new(gens)?;
        if j.krull_dim() != 0 || !j.is_m_primary() {
            continue;
        }
        if !p.generators().iter().all(|f| j.contains(f).unwrap_or(false)) {
            continue;
        }
        let model = QuotientModel::new(&j)?;
        if !model.is_minimal(g)? {
            continue;
        }
        return Ok(HypersurfaceQuotient {
            ideal: j,
            model,
            attempts: attempt + 1,
        });
    }
    Err(Error::SearchExhausted {
        attempts: cfg.max_attempts,
        partial: None,
    })
}

fn linear_form(ring: &PolyRing, coeffs: &[Scalar]) -> Polynomial {
    coeffs
        .iter()
        .enumerate()
        .fold(ring.zero(), |acc, (i, c)| &acc + &ring.var(i).scale(c))
}

/// Runs the main loop: each step takes `g` from the first RREF vector of the
/// running kernel intersection restricted to the minimal-order coordinates
/// `1..c`, finds a quotient `J` for it and intersects with `K_J`. Stops once
/// that restriction is zero, after at most `c` steps.
pub fn construct_witnesses(p: &Presentation, cfg: &SearchConfig) -> Result<Certificate> {
    cfg.validate()?;
    if p.c() < p.n() && cfg.span_dim.is_none() {
        return Err(Error::MissingSpanBound);
    }
    check_search_field(p.ring().field())?;
    let field = p.ring().field();
    let first_c: Vec<usize> = (0..p.c()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut running = Subspace::full(p.n(), field);
    let mut steps: Vec<StepData> = Vec::new();
    loop {
        let restricted = running.restrict_to_coordinates(&first_c)?;
        let Some((coords, g)) = next_selection(p, &restricted) else {
            break;
        };
        let found = match search(p, &g, cfg, &mut rng) {
            Ok(f) => f,
            Err(Error::SearchExhausted { attempts, .. }) => {
                let partial = assemble(p, Mode::Algorithm, Some(cfg.record()), cfg.span_dim, steps)?;
                return Err(Error::SearchExhausted {
                    attempts,
                    partial: Some(Box::new(partial)),
                });
            }
            Err(e) => return Err(e),
        };
        let kernel = found.model.kernel(p)?;
        running = running.intersect(&kernel.subspace)?;
        steps.push(StepData {
            coordinates: Some(coords),
            g: Some(g),
            ideal: found.ideal,
            attempts: Some(found.attempts),
            kernel,
        });
    }
    assemble(p, Mode::Algorithm, Some(cfg.record()), cfg.span_dim, steps)
}

/// Whether every generator is a monomial and no two supports are nested.
pub fn is_incomparable_monomial(p: &Presentation) -> bool {
    check_monomial(p).is_ok()
}

fn check_monomial(p: &Presentation) -> Result<()> {
    let gens = p.generators();
    if let Some(i) = gens.iter().position(|f| !f.is_monomial()) {
        return Err(Error::NotMonomial(i));
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (a, b) = (gens[i].support(), gens[j].support());
            if a & b == a || a & b == b {
                return Err(Error::SupportsComparable(i, j));
            }
        }
    }
    Ok(())
}

/// `J_f = (f) + (x_p - x_i : x_i | f, i != p) + (x_j : x_j ∤ f)` where `x_p`
/// is the first variable dividing `f`. Then `Q/J_f ≅ k[x_p]/(x_p^deg f)`.
pub fn monomial_quotient(ring: &PolyRing, f: &Polynomial) -> Result<Ideal> {
    if !f.is_monomial() || f.is_zero() {
        return Err(Error::NotMonomial(0));
    }
    let support = f.support();
    let Some(first) = (0..ring.nvars()).find(|i| support >> i & 1 == 1) else {
        return Err(Error::OrderTooSmall(0));
    };
    let mut gens = vec![f.monic()];
    for i in 0..ring.nvars() {
        if i == first {
            continue;
        }
        if support >> i & 1 == 1 {
            gens.push(&ring.var(first) - &ring.var(i));
        } else {
            gens.push(ring.var(i));
        }
    }
    Ideal::new(gens)
}

/// One quotient per generator; the kernel of `J_{f_i}` is exactly the
/// coordinate hyperplane `{a_i = 0}`, so the kernels intersect in zero.
pub fn monomial_witnesses(p: &Presentation) -> Result<Certificate> {
    check_monomial(p)?;
    let field = p.ring().field();
    let steps = p
        .generators()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let j = monomial_quotient(p.ring(), f)?;
            let kernel = QuotientModel::new(&j)?.kernel(p)?;
            let mut coords = vec![field.zero(); p.n()];
            coords[i] = f.leading_coeff().expect("nonzero").inverse()?;
            Ok(StepData {
                coordinates: Some(coords),
                g: Some(f.monic()),
                ideal: j,
                attempts: None,
                kernel,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(p, Mode::Monomial, None, None, steps)
}

fn truncated_ring(d: usize, field: Field) -> Result<PolyRing> {
    PolyRing::new(field, (1..=d).map(|i| format!("x{i}")).collect())
}

/// `Q/m^s` in `d` variables `x1, ..., xd`, generators in descending order.
pub fn truncated_presentation(d: usize, s: u32, field: Field) -> Result<Presentation> {
    if d < 2 || s < 2 {
        return Err(Error::DegenerateParameters(format!(
            "truncated ring needs d >= 2 and s >= 2, got d = {d}, s = {s}"
        )));
    }
    let ring = truncated_ring(d, field)?;
    let mut mons = monomials_of_degree(d, s);
    mons.sort_by(|a, b| ring.order().cmp(b, a));
    let gens = mons.into_iter().map(|m| ring.monomial(m)).collect();
    Presentation::new(ring, gens, false)
}

/// The single quotient `J = (x1^s, x2, ..., xd)` of `Q/m^s`.
pub fn truncated_witness(d: usize, s: u32, field: Field) -> Result<Certificate> {
    let p = truncated_presentation(d, s, field)?;
    let ring = p.ring();
    let g = ring.var(0).pow(s);
    let mut gens = vec![g.clone()];
    gens.extend((1..d).map(|i| ring.var(i)));
    let j = Ideal::new(gens)?;
    let kernel = QuotientModel::new(&j)?.kernel(&p)?;
    let index = p
        .generators()
        .iter()
        .position(|f| *f == g)
        .expect("x1^s is a generator");
    let mut coords = vec![field.zero(); p.n()];
    coords[index] = field.one();
    let step = StepData {
        coordinates: Some(coords),
        g: Some(g),
        ideal: j,
        attempts: None,
        kernel,
    };
    assemble(&p, Mode::Truncated, None, None, vec![step])
}

/// Minimal nonfaces of the simplicial complex with the given facets (as
/// variable bitmasks), i.e. the supports of the Stanley-Reisner ideal.
pub fn minimal_nonfaces(nvars: usize, facets: &[u32]) -> Vec<u32> {
    let is_face = |s: u32| facets.iter().any(|&f| s & f == s);
    let mut out: Vec<u32> = (1u32..1 << nvars)
        .filter(|&s| !is_face(s) && (0..nvars).all(|i| s >> i & 1 == 0 || is_face(s & !(1 << i))))
        .collect();
    out.sort_by_key(|s| (s.count_ones(), std::cmp::Reverse(s.reverse_bits())));
    out
}

/// Squarefree monomial generating the face ideal of `support`.
pub fn squarefree_monomial(ring: &PolyRing, support: u32) -> Polynomial {
    (0..ring.nvars())
        .filter(|i| support >> i & 1 == 1)
        .fold(ring.one(), |acc, i| &acc * &ring.var(i))
}

/// Dispatches to the monomial recipe when it applies, otherwise runs the
/// main loop.
pub fn construct(p: &Presentation, cfg: &SearchConfig) -> Result<Certificate> {
    if is_incomparable_monomial(p) {
        monomial_witnesses(p)
    } else {
        construct_witnesses(p, cfg)
    }
}
