//! Certificates: the transcript of a witness construction in a plain JSON
//! form, and an independent verifier that re-derives every recorded claim
//! from Groebner bases and linear algebra alone.
//!
//! Scalars are decimal strings (`"a/b"` for rationals, a residue in `[0, p)`
//! for prime fields), monomials are exponent arrays and subspaces are lists
//! of RREF rows. Field order is fixed by the struct definitions, so equal
//! certificates serialize to identical bytes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gb::Ideal;
use crate::linalg::Subspace;
use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::scalar::{Field, Scalar};
use crate::support::{analyze, CiStatus, KernelSubspace, Presentation, QuotientModel};

pub const FORMAT: &str = "supportwit-certificate/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coeff: String,
    pub exps: Vec<u32>,
}

pub type PolyRecord = Vec<TermRecord>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceRecord {
    pub dim: usize,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationRecord {
    pub field: Field,
    pub variables: Vec<String>,
    pub generators: Vec<PolyRecord>,
    pub orders: Vec<u32>,
    pub d: u32,
    pub c: usize,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Algorithm,
    Monomial,
    Truncated,
    Manual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchRecord {
    pub seed: u64,
    pub max_attempts: u32,
    pub coeff_bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    /// 1-based.
    pub index: usize,
    /// Coordinates of `g` relative to `f_1, ..., f_n`.
    pub coordinates: Option<Vec<String>>,
    pub g: Option<PolyRecord>,
    /// Generators of `J`; `g` comes first when present.
    pub ideal: Vec<PolyRecord>,
    /// Random trials used to find `J` (algorithm mode only).
    pub attempts: Option<u32>,
    /// `N` with `mJ ⊇ m^(N+1)`.
    pub truncation_level: u32,
    pub kernel: SubspaceRecord,
    /// Dimension of the intersection of the kernels up to this step.
    pub running_dim: usize,
    /// Whether this quotient alone has support too small to contain
    /// `V_R(R)`.
    pub individual_witness: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    WitnessFoundEquigenerated,
    WitnessFoundBounded(u32),
    WitnessFoundFullSupport,
    Inconclusive,
    CompleteIntersection,
}

impl Status {
    pub fn is_witness(&self) -> bool {
        matches!(
            self,
            Status::WitnessFoundEquigenerated | Status::WitnessFoundBounded(_) | Status::WitnessFoundFullSupport
        )
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::WitnessFoundEquigenerated => write!(f, "witness-found-equigenerated"),
            Status::WitnessFoundBounded(s) => write!(f, "witness-found-bounded({s})"),
            Status::WitnessFoundFullSupport => write!(f, "witness-found-full-support"),
            Status::Inconclusive => write!(f, "inconclusive"),
            Status::CompleteIntersection => write!(f, "complete-intersection"),
        }
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Status> {
        Ok(match s {
            "witness-found-equigenerated" => Status::WitnessFoundEquigenerated,
            "witness-found-full-support" => Status::WitnessFoundFullSupport,
            "inconclusive" => Status::Inconclusive,
            "complete-intersection" => Status::CompleteIntersection,
            _ => {
                let bound = s
                    .strip_prefix("witness-found-bounded(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|b| b.parse().ok())
                    .ok_or_else(|| Error::Json(format!("unknown status {s:?}")))?;
                Status::WitnessFoundBounded(bound)
            }
        })
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Status {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Status, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format: String,
    pub mode: Mode,
    pub presentation: PresentationRecord,
    pub config: Option<SearchRecord>,
    pub span_dim: Option<u32>,
    pub complete_intersection: CiStatus,
    pub steps: Vec<StepRecord>,
    pub intersection: SubspaceRecord,
    pub status: Status,
    /// Facts the conclusion relies on without recomputing them.
    pub premises: Vec<String>,
    pub conclusion: String,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        let c: Certificate = serde_json::from_str(text).map_err(|e| Error::Input {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if c.format != FORMAT {
            return Err(Error::Json(format!("unsupported certificate format {:?}", c.format)));
        }
        Ok(c)
    }

    /// The presentation echoed in the certificate, in a ring built from the
    /// recorded field and variables.
    pub fn recorded_generators(&self) -> Result<(PolyRing, Vec<Polynomial>)> {
        let p = &self.presentation;
        let ring = PolyRing::new(p.field, p.variables.clone())?;
        let gens = p
            .generators
            .iter()
            .map(|g| poly_from_record(&ring, g))
            .collect::<Result<_>>()?;
        Ok((ring, gens))
    }
}

pub fn poly_to_record(f: &Polynomial) -> PolyRecord {
    f.terms()
        .iter()
        .map(|(m, c)| TermRecord {
            coeff: c.to_canonical_string(),
            exps: m.exps().to_vec(),
        })
        .collect()
}

pub fn poly_from_record(ring: &PolyRing, rec: &PolyRecord) -> Result<Polynomial> {
    let field = ring.field();
    let terms = rec
        .iter()
        .map(|t| {
            if t.exps.len() != ring.nvars() {
                return Err(Error::ArityMismatch);
            }
            Ok((Monomial::new(t.exps.clone()), field.parse_scalar(&t.coeff)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(ring.nvars(), field, ring.order(), terms)
}

pub fn vector_to_record(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_canonical_string).collect()
}

pub fn vector_from_record(field: Field, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| field.parse_scalar(s)).collect()
}

pub fn subspace_to_record(s: &Subspace) -> SubspaceRecord {
    SubspaceRecord {
        dim: s.dim(),
        rows: s.basis().iter().map(|r| vector_to_record(r)).collect(),
    }
}

pub fn subspace_from_record(ambient: usize, field: Field, rec: &SubspaceRecord) -> Result<Subspace> {
    let rows = rec
        .rows
        .iter()
        .map(|r| {
            if r.len() != ambient {
                return Err(Error::AmbientMismatch(ambient, r.len()));
            }
            vector_from_record(field, r)
        })
        .collect::<Result<Vec<_>>>()?;
    let s = Subspace::from_rref_rows(ambient, field, rows)?;
    if s.dim() != rec.dim {
        return Err(Error::Json(format!(
            "subspace records dimension {} but has {} rows",
            rec.dim,
            s.dim()
        )));
    }
    Ok(s)
}

impl PresentationRecord {
    pub fn of(p: &Presentation) -> Self {
        PresentationRecord {
            field: p.ring().field(),
            variables: p.ring().vars().to_vec(),
            generators: p.generators().iter().map(poly_to_record).collect(),
            orders: p.orders().to_vec(),
            d: p.d(),
            c: p.c(),
            n: p.n(),
        }
    }
}

/// Status as a function of the recorded data alone.
pub fn derive_status(mode: Mode, ci: CiStatus, n: usize, intersection_dim: usize, span_dim: Option<u32>) -> Status {
    if ci == CiStatus::Yes {
        return Status::CompleteIntersection;
    }
    if mode == Mode::Truncated && intersection_dim < n {
        return Status::WitnessFoundFullSupport;
    }
    match span_dim {
        Some(s) if intersection_dim < s as usize => Status::WitnessFoundBounded(s),
        _ if intersection_dim == 0 => Status::WitnessFoundEquigenerated,
        _ => Status::Inconclusive,
    }
}

fn individual_witness(mode: Mode, n: usize, kernel_dim: usize, span_dim: Option<u32>) -> bool {
    match span_dim {
        Some(s) => kernel_dim < s as usize,
        None => mode == Mode::Truncated && kernel_dim < n,
    }
}

fn premises(mode: Mode, status: Status) -> Vec<String> {
    let mut v = vec![
        "V_R(R) is contained in V_R(M) for every finitely generated R-module M".to_string(),
        "V_R(R) = 0 if and only if R is a complete intersection".to_string(),
        "V_R(Q/J) = ker(I/mI -> J/mJ) when J is generated by a regular sequence containing I".to_string(),
    ];
    if let Status::WitnessFoundBounded(s) = status {
        v.push(format!(
            "the span of V_R(R) has dimension at least {s} (supplied bound)"
        ));
    }
    if mode == Mode::Truncated {
        v.push("V_R(R) = V_R when I is a power of the maximal ideal".to_string());
    }
    v
}

fn conclusion(status: Status) -> String {
    match status {
        Status::WitnessFoundEquigenerated => {
            "the recorded supports intersect in 0; if R is not a complete intersection, \
             at least one recorded quotient Q/J is not proxy small"
        }
        Status::WitnessFoundBounded(_) => {
            "the recorded supports intersect below the supplied span bound; \
             at least one recorded quotient Q/J is not proxy small"
        }
        Status::WitnessFoundFullSupport => {
            "the recorded support is a proper subspace of V_R = V_R(R); \
             the recorded quotient Q/J is not proxy small"
        }
        Status::Inconclusive => "the recorded supports do not rule out proxy smallness; no witness claimed",
        Status::CompleteIntersection => "R is a complete intersection; no witness exists",
    }
    .to_string()
}

/// One step as produced by a construction, before serialization.
#[derive(Clone, Debug)]
pub struct StepData {
    pub coordinates: Option<Vec<Scalar>>,
    pub g: Option<Polynomial>,
    pub ideal: Ideal,
    pub attempts: Option<u32>,
    pub kernel: KernelSubspace,
}

/// Intersects the kernels, derives the status and serializes everything.
pub fn assemble(
    p: &Presentation,
    mode: Mode,
    config: Option<SearchRecord>,
    span_dim: Option<u32>,
    steps: Vec<StepData>,
) -> Result<Certificate> {
    let field = p.ring().field();
    let ci = analyze(p).complete_intersection;
    let mut running = Subspace::full(p.n(), field);
    let mut records = Vec::with_capacity(steps.len());
    for (i, s) in steps.into_iter().enumerate() {
        running = running.intersect(&s.kernel.subspace)?;
        let kdim = s.kernel.subspace.dim();
        records.push(StepRecord {
            index: i + 1,
            coordinates: s.coordinates.as_deref().map(vector_to_record),
            g: s.g.as_ref().map(poly_to_record),
            ideal: s.ideal.generators().iter().map(poly_to_record).collect(),
            attempts: s.attempts,
            truncation_level: s.kernel.truncation_level,
            kernel: subspace_to_record(&s.kernel.subspace),
            running_dim: running.dim(),
            individual_witness: individual_witness(mode, p.n(), kdim, span_dim),
        });
    }
    let status = derive_status(mode, ci, p.n(), running.dim(), span_dim);
    Ok(Certificate {
        format: FORMAT.to_string(),
        mode,
        presentation: PresentationRecord::of(p),
        config,
        span_dim,
        complete_intersection: ci,
        steps: records,
        intersection: subspace_to_record(&running),
        status,
        premises: premises(mode, status),
        conclusion: conclusion(status),
    })
}

/// Certificate for hand-chosen ideals `J_1, ..., J_t`, each of which must be
/// artinian, m-primary and contain `I`.
pub fn manual_certificate(p: &Presentation, js: &[Ideal], span_dim: Option<u32>) -> Result<Certificate> {
    let steps = js
        .iter()
        .map(|j| {
            Ok(StepData {
                coordinates: None,
                g: None,
                ideal: j.clone(),
                attempts: None,
                kernel: QuotientModel::new(j)?.kernel(p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(p, Mode::Manual, None, span_dim, steps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    /// 1-based step, or `None` for certificate-wide checks.
    pub step: Option<usize>,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, step: Option<usize>, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            step,
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            match c.step {
                Some(s) => write!(f, "{mark} step {s}: {}", c.name)?,
                None => write!(f, "{mark} {}", c.name)?,
            }
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Re-derives every claim of `c` against `p`. Memberships come from
/// Groebner normal forms, kernels are recomputed from scratch, and the
/// intersection and status are recomputed from the recorded kernels.
pub fn verify(c: &Certificate, p: &Presentation) -> VerificationReport {
    let mut r = VerificationReport::default();
    let ring = p.ring();
    let field = ring.field();
    let n = p.n();
    let first_c: Vec<usize> = (0..p.c()).collect();

    r.push(None, "format", c.format == FORMAT, c.format.clone());
    let echo_ok = c.presentation == PresentationRecord::of(p);
    r.push(None, "presentation matches", echo_ok, "");
    let ci = analyze(p).complete_intersection;
    r.push(
        None,
        "complete-intersection status",
        c.complete_intersection == ci,
        format!("{ci:?}").to_lowercase(),
    );
    r.push(
        None,
        "search config recorded",
        c.config.is_some() == (c.mode == Mode::Algorithm),
        "",
    );

    let mut running = Some(Subspace::full(n, field));
    let mut prev_dim = n;
    for (i, step) in c.steps.iter().enumerate() {
        let at = Some(i + 1);
        r.push(at, "index", step.index == i + 1, step.index.to_string());
        let recorded_k = subspace_from_record(n, field, &step.kernel);
        if let Err(e) = &recorded_k {
            r.push(at, "kernel record", false, e.to_string());
        }
        let recorded_k = recorded_k.ok();

        if c.mode == Mode::Algorithm {
            check_selection(&mut r, at, step, p, running.as_ref(), &first_c);
        }

        running = match (running, &recorded_k) {
            (Some(run), Some(k)) => run.intersect(k).ok(),
            _ => None,
        };
        match &running {
            Some(run) => {
                r.push(
                    at,
                    "running intersection",
                    run.dim() == step.running_dim,
                    format!("dim {}", run.dim()),
                );
                if c.mode == Mode::Algorithm {
                    r.push(
                        at,
                        "strict descent",
                        run.dim() < prev_dim,
                        format!("{prev_dim} -> {}", run.dim()),
                    );
                }
                prev_dim = run.dim();
            }
            None => r.push(at, "running intersection", false, "unavailable"),
        }
        if let Some(k) = &recorded_k {
            r.push(
                at,
                "individual witness flag",
                step.individual_witness == individual_witness(c.mode, n, k.dim(), c.span_dim),
                "",
            );
        }

        verify_step(&mut r, at, step, p, recorded_k.as_ref(), c.mode);
    }

    if c.mode == Mode::Algorithm {
        r.push(
            None,
            "step count",
            c.steps.len() <= p.c(),
            format!("{} <= c = {}", c.steps.len(), p.c()),
        );
        if let Some(run) = &running {
            let stopped = run
                .restrict_to_coordinates(&first_c)
                .map(|s| next_selection(p, &s).is_none())
                .unwrap_or(false);
            r.push(None, "stopping rule", stopped, "");
        }
    }
    if c.mode == Mode::Truncated {
        let ok = c.steps.len() == 1 && c.steps[0].kernel.dim + 1 == n;
        r.push(None, "kernel is a hyperplane", ok, "");
    }

    match (&running, subspace_from_record(n, field, &c.intersection)) {
        (Some(run), Ok(rec)) => {
            r.push(None, "intersection", *run == rec, format!("dim {}", run.dim()));
            let status = derive_status(c.mode, ci, n, run.dim(), c.span_dim);
            r.push(None, "status", status == c.status, status.to_string());
            r.push(
                None,
                "premises",
                c.premises == premises(c.mode, status) && c.conclusion == conclusion(status),
                "",
            );
        }
        (_, Err(e)) => r.push(None, "intersection", false, e.to_string()),
        (None, _) => r.push(None, "intersection", false, "unavailable"),
    }
    r
}

/// First RREF row of `restricted` whose combination has the minimal order
/// `d`, with that combination.
pub fn next_selection(p: &Presentation, restricted: &Subspace) -> Option<(Vec<Scalar>, Polynomial)> {
    restricted.basis().into_iter().find_map(|coords| {
        let g = p.combination(&coords).ok()?;
        (!g.is_zero() && g.ord().ok()? == p.d()).then_some((coords, g))
    })
}

fn check_selection(
    r: &mut VerificationReport,
    at: Option<usize>,
    step: &StepRecord,
    p: &Presentation,
    running: Option<&Subspace>,
    first_c: &[usize],
) {
    let expected = running
        .and_then(|run| run.restrict_to_coordinates(first_c).ok())
        .and_then(|s| next_selection(p, &s));
    let recorded = step
        .coordinates
        .as_ref()
        .and_then(|v| vector_from_record(p.ring().field(), v).ok());
    let ok = match (expected, recorded) {
        (Some((e, _)), Some(v)) => e == v,
        _ => false,
    };
    r.push(at, "selection rule", ok, "");
}

fn verify_step(
    r: &mut VerificationReport,
    at: Option<usize>,
    step: &StepRecord,
    p: &Presentation,
    recorded_k: Option<&Subspace>,
    mode: Mode,
) {
    let ring = p.ring();
    let gens = match step
        .ideal
        .iter()
        .map(|g| poly_from_record(ring, g))
        .collect::<Result<Vec<_>>>()
    {
        Ok(g) => g,
        Err(e) => return r.push(at, "ideal record", false, e.to_string()),
    };
    let j = match Ideal::new(gens) {
        Ok(j) => j,
        Err(e) => return r.push(at, "ideal record", false, e.to_string()),
    };

    let missing = p.generators().iter().position(|f| !j.contains(f).unwrap_or(false));
    r.push(
        at,
        "I contained in J",
        missing.is_none(),
        missing.map(|i| format!("f_{} not in J", i + 1)).unwrap_or_default(),
    );
    let dim = j.krull_dim();
    r.push(at, "artinian", dim == 0, format!("Krull dimension {dim}"));
    let m_primary = dim == 0 && j.is_m_primary();
    r.push(at, "m-primary", m_primary, "");
    if missing.is_some() || !m_primary {
        return;
    }
    let model = match QuotientModel::new(&j) {
        Ok(m) => m,
        Err(e) => return r.push(at, "quotient model", false, e.to_string()),
    };

    if mode == Mode::Algorithm {
        let shape = j.generators().len() == p.e()
            && j.generators()[1..]
                .iter()
                .all(|l| l.is_homogeneous() && l.degree() == Some(1));
        r.push(at, "g plus e-1 linear forms", shape, "");
    }
    let g = step.g.as_ref().map(|g| poly_from_record(ring, g));
    match (&g, mode) {
        (None, Mode::Manual) => {}
        (None, _) => r.push(at, "g recorded", false, ""),
        (Some(Err(e)), _) => r.push(at, "g recorded", false, e.to_string()),
        (Some(Ok(g)), _) => {
            r.push(at, "g leads J", j.generators().first() == Some(g), "");
            let coords = step
                .coordinates
                .as_ref()
                .map(|v| vector_from_record(ring.field(), v).and_then(|c| p.combination(&c)));
            match coords {
                Some(Ok(comb)) => r.push(at, "g matches coordinates", comb == *g, ""),
                Some(Err(e)) => r.push(at, "g matches coordinates", false, e.to_string()),
                None => r.push(at, "g matches coordinates", mode == Mode::Manual, "missing"),
            }
            if mode == Mode::Algorithm {
                let ord = g.ord().unwrap_or(0);
                r.push(at, "g has minimal order", ord == p.d(), format!("ord {ord}"));
            }
            match model.is_minimal(g) {
                Ok(m) => r.push(at, "g minimal in J", m, ""),
                Err(e) => r.push(at, "g minimal in J", false, e.to_string()),
            }
        }
    }

    r.push(
        at,
        "truncation level",
        model.level() == step.truncation_level,
        format!("N = {}", model.level()),
    );
    let Some(recorded_k) = recorded_k else { return };
    match model.kernel(p) {
        Ok(k) => r.push(
            at,
            "kernel recomputed",
            k.subspace == *recorded_k,
            format!("dim {}", k.subspace.dim()),
        ),
        Err(e) => r.push(at, "kernel recomputed", false, e.to_string()),
    }

    // Groebner-only cross-check of the recorded kernel.
    let mj = model.m_ideal();
    let rows_in_mj = recorded_k
        .basis()
        .iter()
        .all(|v| p.combination(v).and_then(|f| mj.contains(&f)).unwrap_or(false));
    r.push(at, "kernel basis in mJ", rows_in_mj, "");
    let field = ring.field();
    let coordinate_agreement = (0..p.n()).all(|i| {
        let e_i = Subspace::coordinate(p.n(), field, &[i]).basis().remove(0);
        recorded_k.contains(&e_i) == mj.contains(&p.generators()[i]).unwrap_or(false)
    });
    r.push(at, "coordinate memberships agree", coordinate_agreement, "");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(Field::Rational, vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn ideal(r: &PolyRing, gens: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|g| r.parse(g).unwrap()).collect()).unwrap()
    }

    fn shortgor() -> (Presentation, Vec<Ideal>) {
        let r = ring(&["x", "y", "z"]);
        let p = Presentation::parse(r.clone(), &["x^2 - y^2", "x^2 - z^2", "xy", "xz", "yz"], false).unwrap();
        let js = [
            vec!["x^2 - y^2", "y - z", "x"],
            vec!["y^2 - z^2", "y", "x"],
            vec!["xy", "x - y", "x - z"],
            vec!["x^2 - y^2 + yz - xy", "y - z", "x - y - z"],
            vec!["xy - xz", "y", "x - z"],
        ]
        .iter()
        .map(|g| ideal(&r, g))
        .collect();
        (p, js)
    }

    #[test]
    fn status_strings_round_trip() {
        for s in [
            Status::WitnessFoundEquigenerated,
            Status::WitnessFoundBounded(2),
            Status::WitnessFoundFullSupport,
            Status::Inconclusive,
            Status::CompleteIntersection,
        ] {
            assert_eq!(s.to_string().parse::<Status>().unwrap(), s);
        }
        assert_eq!(Status::WitnessFoundBounded(12).to_string(), "witness-found-bounded(12)");
        assert!("witness-found-bounded(x)".parse::<Status>().is_err());
    }

    #[test]
    fn derive_status_table() {
        use CiStatus::*;
        assert_eq!(
            derive_status(Mode::Manual, Yes, 3, 0, None),
            Status::CompleteIntersection
        );
        assert_eq!(
            derive_status(Mode::Truncated, No, 3, 2, None),
            Status::WitnessFoundFullSupport
        );
        assert_eq!(
            derive_status(Mode::Manual, No, 3, 1, Some(2)),
            Status::WitnessFoundBounded(2)
        );
        assert_eq!(derive_status(Mode::Manual, No, 3, 2, Some(2)), Status::Inconclusive);
        assert_eq!(
            derive_status(Mode::Algorithm, No, 5, 0, None),
            Status::WitnessFoundEquigenerated
        );
        assert_eq!(
            derive_status(Mode::Algorithm, Unknown, 5, 1, None),
            Status::Inconclusive
        );
    }

    #[test]
    fn short_gorenstein_manual_certificate_verifies() {
        let (p, js) = shortgor();
        let c = manual_certificate(&p, &js, None).unwrap();
        assert_eq!(c.intersection.dim, 0);
        assert_eq!(c.status, Status::WitnessFoundEquigenerated);
        let dims: Vec<usize> = c.steps.iter().map(|s| s.running_dim).collect();
        assert_eq!(dims, vec![4, 3, 2, 1, 0]);
        let report = verify(&c, &p);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let (p, js) = shortgor();
        let c = manual_certificate(&p, &js, None).unwrap();
        let text = c.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"status\": \"witness-found-equigenerated\""));
    }

    #[test]
    fn tampering_is_caught() {
        let (p, js) = shortgor();
        let c = manual_certificate(&p, &js, None).unwrap();

        // drop the linear form x from J_1
        let mut t = c.clone();
        t.steps[0].ideal.pop();
        let report = verify(&t, &p);
        let failed: Vec<_> = report.failures().map(|f| (f.step, f.name.as_str())).collect();
        assert!(failed.contains(&(Some(1), "artinian")), "{report}");

        // perturb a kernel coefficient
        let mut t = c.clone();
        let row = t
            .steps
            .iter_mut()
            .flat_map(|s| s.kernel.rows.iter_mut())
            .find(|r| r.iter().filter(|x| *x != "0").count() > 1)
            .unwrap();
        let k = row.iter().rposition(|x| x != "0").unwrap();
        row[k] = "7".to_string();
        assert!(!verify(&t, &p).passed());

        // claim a stronger status
        let mut t = c.clone();
        t.status = Status::WitnessFoundFullSupport;
        assert!(!verify(&t, &p).passed());

        let mut t = c;
        t.steps[4].running_dim = 1;
        assert!(!verify(&t, &p).passed());
    }

    #[test]
    fn empty_manual_certificate_is_inconclusive() {
        let (p, _) = shortgor();
        let c = manual_certificate(&p, &[], None).unwrap();
        assert_eq!(c.intersection.dim, 5);
        assert_eq!(c.status, Status::Inconclusive);
        assert!(verify(&c, &p).passed());
    }

    #[test]
    fn poly_records_round_trip() {
        let r = PolyRing::new(Field::Prime(32003), vec!["x".into(), "y".into()]).unwrap();
        let f = r.parse("x^2 - 1/2y + 3").unwrap();
        let rec = poly_to_record(&f);
        assert_eq!(rec[1].coeff, "16001");
        assert_eq!(rec[0].exps, vec![2, 0]);
        assert_eq!(poly_from_record(&r, &rec).unwrap(), f);
        let bad = vec![TermRecord {
            coeff: "1".into(),
            exps: vec![1],
        }];
        assert!(poly_from_record(&r, &bad).is_err());
    }
}
