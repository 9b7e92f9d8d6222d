//! Bundled examples: ring files together with hand-chosen certificates.

use serde::Deserialize;

use crate::cert::{manual_certificate, Certificate};
use crate::construct::{
    minimal_nonfaces, monomial_witnesses, squarefree_monomial, truncated_presentation, truncated_witness,
};
use crate::error::{Error, Result};
use crate::gb::Ideal;
use crate::poly::PolyRing;
use crate::ringfile::RingFile;
use crate::scalar::Field;
use crate::support::Presentation;

#[derive(Clone, Debug)]
pub struct Example {
    pub ring: RingFile,
    pub certificate: Option<Certificate>,
}

impl Example {
    pub fn presentation(&self) -> Result<Presentation> {
        self.ring.presentation(None, true)
    }
}

fn ring_file(field: Field, vars: &[&str], gens: &[&str]) -> RingFile {
    RingFile {
        field,
        variables: vars.iter().map(|s| s.to_string()).collect(),
        generators: gens.iter().map(|s| s.to_string()).collect(),
        assume_minimal: None,
        span_dim: None,
    }
}

fn ideals(ring: &PolyRing, js: &[&[&str]]) -> Result<Vec<Ideal>> {
    js.iter()
        .map(|gens| Ideal::new(gens.iter().map(|g| ring.parse(g)).collect::<Result<_>>()?))
        .collect()
}

/// Short Gorenstein ring of embedding dimension 3 with five quotients.
pub fn shortgor3(field: Field) -> Result<Example> {
    let rf = ring_file(field, &["x", "y", "z"], &["x^2 - y^2", "x^2 - z^2", "xy", "xz", "yz"]);
    let p = rf.presentation(None, false)?;
    let js = ideals(
        p.ring(),
        &[
            &["x^2 - y^2", "y - z", "x"],
            &["y^2 - z^2", "y", "x"],
            &["xy", "x - y", "x - z"],
            &["x^2 - y^2 + yz - xy", "y - z", "x - y - z"],
            &["xy - xz", "y", "x - z"],
        ],
    )?;
    let certificate = manual_certificate(&p, &js, None)?;
    Ok(Example {
        ring: rf,
        certificate: Some(certificate),
    })
}

/// `(x^2 + y^2 + z^2, xyz, x^3)`, whose support spans a plane. The
/// certificate records the quotient by `(x^2 + y^2 + z^2, y, x^3)`, whose
/// kernel is the line spanned by the `xyz` coordinate.
pub fn thomas(field: Field) -> Result<Example> {
    let mut rf = ring_file(field, &["x", "y", "z"], &["x^2 + y^2 + z^2", "xyz", "x^3"]);
    rf.span_dim = Some(2);
    let p = rf.presentation(None, false)?;
    let js = ideals(p.ring(), &[&["x^2 + y^2 + z^2", "y", "x^3"]])?;
    let certificate = manual_certificate(&p, &js, rf.span_dim)?;
    Ok(Example {
        ring: rf,
        certificate: Some(certificate),
    })
}

/// `(x^4, xy, yz, zw, w^3)` with spanning support, and the quotients
/// `(yz, x, w, y - z)`, `(x^4, y, z, w)`, `(w^3, x, y, z)`.
pub fn monomial4(field: Field) -> Result<Example> {
    let mut rf = ring_file(field, &["x", "y", "z", "w"], &["x^4", "xy", "yz", "zw", "w^3"]);
    rf.span_dim = Some(5);
    let p = rf.presentation(None, false)?;
    let js = ideals(
        p.ring(),
        &[
            &["yz", "x", "w", "y - z"],
            &["x^4", "y", "z", "w"],
            &["w^3", "x", "y", "z"],
        ],
    )?;
    let certificate = manual_certificate(&p, &js, rf.span_dim)?;
    Ok(Example {
        ring: rf,
        certificate: Some(certificate),
    })
}

pub fn truncated(d: usize, s: u32, field: Field) -> Result<Example> {
    let p = truncated_presentation(d, s, field)?;
    Ok(Example {
        ring: RingFile::of(&p),
        certificate: Some(truncated_witness(d, s, field)?),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    #[serde(default = "rational")]
    field: Field,
    variables: Vec<String>,
    facets: Vec<Vec<String>>,
}

fn rational() -> Field {
    Field::Rational
}

/// Stanley-Reisner ring of a simplicial complex given as
/// `{"variables": [...], "facets": [[...], ...]}` (optional `field`).
pub fn stanley_reisner(text: &str) -> Result<Example> {
    let cf: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Input {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let ring = PolyRing::new(cf.field, cf.variables.clone())?;
    let mut facets = Vec::with_capacity(cf.facets.len());
    for f in &cf.facets {
        let mut mask = 0u32;
        for v in f {
            let i = cf
                .variables
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::UnknownVariable(v.clone()))?;
            mask |= 1 << i;
        }
        facets.push(mask);
    }
    let nonfaces = minimal_nonfaces(ring.nvars(), &facets);
    if let Some(&v) = nonfaces.iter().find(|s| s.count_ones() == 1) {
        let name = &cf.variables[v.trailing_zeros() as usize];
        return Err(Error::InvalidPresentation(format!(
            "vertex {name} lies in no facet, so the ideal is not contained in m^2"
        )));
    }
    if nonfaces.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let gens = nonfaces.iter().map(|&s| squarefree_monomial(&ring, s)).collect();
    let p = Presentation::new(ring, gens, false)?;
    let certificate = monomial_witnesses(&p)?;
    Ok(Example {
        ring: RingFile::of(&p),
        certificate: Some(certificate),
    })
}

/// Looks up a bundled example by name. `sr:` examples need the complex file
/// contents and go through [`stanley_reisner`].
pub fn example(name: &str) -> Result<Example> {
    let unknown = || Error::UnknownExample(name.to_string());
    match name {
        "shortgor3" => shortgor3(Field::Rational),
        "thomas" => thomas(Field::Rational),
        "monomial4" => monomial4(Field::Rational),
        _ => {
            let params = name.strip_prefix("truncated:").ok_or_else(unknown)?;
            let (d, s) = params.split_once(',').ok_or_else(unknown)?;
            let d: usize = d.trim().parse().map_err(|_| unknown())?;
            let s: u32 = s.trim().parse().map_err(|_| unknown())?;
            truncated(d, s, Field::Rational)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{verify, Status};
    use crate::linalg::Subspace;
    use crate::scalar::DEFAULT_PRIME;

    fn check(ex: &Example) -> Certificate {
        let p = ex.presentation().unwrap();
        let c = ex.certificate.clone().unwrap();
        let report = verify(&c, &p);
        assert!(report.passed(), "{report}");
        c
    }

    #[test]
    fn bundled_certificates_verify() {
        for field in [Field::Rational, Field::Prime(DEFAULT_PRIME)] {
            let c = check(&shortgor3(field).unwrap());
            assert_eq!(c.steps.len(), 5);
            assert_eq!(c.status, Status::WitnessFoundEquigenerated);

            let c = check(&thomas(field).unwrap());
            assert_eq!(c.status, Status::WitnessFoundBounded(2));
            assert_eq!(c.steps[0].kernel.dim, 1);

            let c = check(&monomial4(field).unwrap());
            assert_eq!(c.status, Status::WitnessFoundBounded(5));
            assert!(c.steps.iter().all(|s| s.individual_witness));
        }
        for name in ["truncated:2,2", "truncated:3,4"] {
            let c = check(&example(name).unwrap());
            assert_eq!(c.status, Status::WitnessFoundFullSupport);
        }
    }

    #[test]
    fn monomial4_kernels() {
        let ex = monomial4(Field::Rational).unwrap();
        let p = ex.presentation().unwrap();
        let c = ex.certificate.unwrap();
        let gens: Vec<String> = p.generators().iter().map(|g| p.ring().format(g)).collect();
        assert_eq!(gens, ["xy", "yz", "zw", "w^3", "x^4"]);
        let hyperplane = |skip: usize| {
            let keep: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
            Subspace::coordinate(5, Field::Rational, &keep)
        };
        let k = |i: usize| crate::cert::subspace_from_record(5, Field::Rational, &c.steps[i].kernel).unwrap();
        assert_eq!(k(0), hyperplane(1));
        assert_eq!(k(1), hyperplane(4));
        assert_eq!(k(2), hyperplane(3));
    }

    #[test]
    fn stanley_reisner_examples() {
        // a 4-cycle x - y - z - w - x
        let text = r#"{"variables": ["x", "y", "z", "w"],
            "facets": [["x", "y"], ["y", "z"], ["z", "w"], ["w", "x"]]}"#;
        let ex = stanley_reisner(text).unwrap();
        assert_eq!(ex.ring.generators, ["xz", "yw"]);
        let c = check(&ex);
        assert_eq!(c.status, Status::CompleteIntersection);

        let text = r#"{"variables": ["a", "b", "c", "d"], "facets": [["a", "b"], ["c"], ["d"]]}"#;
        let c = check(&stanley_reisner(text).unwrap());
        assert_eq!(c.intersection.dim, 0);
        assert_eq!(c.status, Status::WitnessFoundEquigenerated);

        let lonely = r#"{"variables": ["a", "b", "c"], "facets": [["a", "b"]]}"#;
        assert!(matches!(stanley_reisner(lonely), Err(Error::InvalidPresentation(_))));
        let simplex = r#"{"variables": ["a", "b"], "facets": [["a", "b"]]}"#;
        assert!(matches!(stanley_reisner(simplex), Err(Error::EmptyIdeal)));
    }

    #[test]
    fn unknown_names() {
        for bad in ["nope", "truncated:2", "truncated:a,b"] {
            assert!(matches!(example(bad), Err(Error::UnknownExample(_))));
        }
        assert!(matches!(example("truncated:1,3"), Err(Error::DegenerateParameters(_))));
    }
}
