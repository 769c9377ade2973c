//! Report documents for the command line front end.
//!
//! Every command produces one `Document`: the instance parameters, a list
//! of named sections carrying a pass flag and a typed payload, and an
//! overall pass flag that is the conjunction of the sections. The same
//! document feeds both output formats, so JSON and rendered tables always
//! carry identical information.
//!
//! All payloads are exact. A scalar a + b*sqrt(q) serializes as the pair
//! of rational strings {"a", "b"}, rationals serialize as "n" or "n/d",
//! and no floating point appears anywhere, so a document's bytes are
//! stable across runs for a fixed configuration. Timing is operational
//! chatter, not a result, and goes to stderr only.

use std::time::Instant;

use atspace::operators::verify_relations_on;
use atspace::poset::{verify_counting, PosetInstance};
use atspace::spectral::{compute_spectrum, qpoly_band_profile, BandProfile, Spectrum};
use atspace::tmodules::{
    decompose, leonard_profile, psi_set, verify_module, verify_psi_sums, LeonardProfile,
    ModuleWitness,
};
use atspace::{ExactMatrix, ExactScalar, GFMatrix, Operators, Rational};
use serde::Serialize;

/// A scalar a + b*sqrt(q) as its two rational coordinates. The rendered
/// text is kept alongside for the table format and skipped in JSON,
/// where the coordinate pair alone is the canonical form.
#[derive(Clone, Debug, Serialize)]
pub struct ScalarDto {
    pub a: String,
    pub b: String,
    #[serde(skip)]
    pub text: String,
}

/// Render a rational as "n" or "n/d". Written out by hand so document
/// bytes depend on nothing but the value.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn scalar_dto(x: &ExactScalar) -> ScalarDto {
    ScalarDto {
        a: rational_string(x.rational_part()),
        b: rational_string(x.surd_part()),
        text: x.to_string(),
    }
}

fn matrix_dto(mat: &ExactMatrix) -> Vec<Vec<ScalarDto>> {
    (0..mat.rows())
        .map(|r| (0..mat.cols()).map(|c| scalar_dto(mat.get(r, c))).collect())
        .collect()
}

fn gf_rows(mat: &GFMatrix) -> Vec<Vec<u32>> {
    (0..mat.rows()).map(|r| mat.row(r).to_vec()).collect()
}

/// One named block of a document.
#[derive(Serialize)]
pub struct Section {
    pub name: String,
    pub pass: bool,
    pub details: Details,
}

/// Typed section payloads. Serialization is untagged: the payload's own
/// fields appear directly under "details".
#[derive(Serialize)]
#[serde(untagged)]
pub enum Details {
    Counting(CountingDto),
    Relations(RelationsDto),
    Spectrum(SpectrumDto),
    Band(BandDto),
    Decomposition(DecompositionDto),
    PsiSums(PsiSumsDto),
    Leonard(LeonardListDto),
    Samples(SamplesDto),
    Poset(PosetDto),
    Diagram(DiagramDto),
    Instance(InstanceDto),
}

/// Parameters echoed at the top of a document.
#[derive(Serialize)]
#[serde(untagged)]
pub enum ParamsDto {
    Instance {
        q: u32,
        #[serde(rename = "N")]
        n: u32,
        #[serde(rename = "M")]
        m: u32,
        cap: u64,
    },
    All {
        all: bool,
        cap: u64,
    },
}

#[derive(Serialize)]
pub struct Document {
    pub params: ParamsDto,
    pub sections: Vec<Section>,
    pub pass: bool,
}

/// Sections of one instance, nested inside a sweep document.
#[derive(Serialize)]
pub struct InstanceDto {
    pub sections: Vec<Section>,
}

pub fn document(params: ParamsDto, sections: Vec<Section>) -> Document {
    let pass = sections.iter().all(|s| s.pass);
    Document {
        params,
        sections,
        pass,
    }
}

fn instance_params(p: &PosetInstance, cap: usize) -> ParamsDto {
    ParamsDto::Instance {
        q: p.q(),
        n: p.n(),
        m: p.m(),
        cap: cap as u64,
    }
}

/// Path to the first failing section, descending into nested instance
/// sections, e.g. "q=2 N=2 M=2: relations".
pub fn first_failing(doc: &Document) -> Option<String> {
    fn walk(sections: &[Section], prefix: &str) -> Option<String> {
        for s in sections {
            if !s.pass {
                let here = format!("{prefix}{}", s.name);
                return match &s.details {
                    Details::Instance(inner) => {
                        walk(&inner.sections, &format!("{here}: ")).or(Some(here))
                    }
                    _ => Some(here),
                };
            }
        }
        None
    }
    walk(&doc.sections, "")
}

#[derive(Serialize)]
pub struct CountingDto {
    pub vertices: u64,
    pub rows: Vec<CountingRowDto>,
}

#[derive(Serialize)]
pub struct CountingRowDto {
    pub rank: u32,
    pub expected_size: u64,
    pub actual_size: u64,
    pub expected_down_degree: u64,
    pub expected_up_degree: u64,
    pub offenders: u64,
}

pub fn counting_section(p: &PosetInstance) -> Section {
    let report = verify_counting(p);
    let rows = report
        .rows
        .iter()
        .map(|r| CountingRowDto {
            rank: r.rank,
            expected_size: r.expected_size,
            actual_size: r.actual_size,
            expected_down_degree: r.expected_down_degree,
            expected_up_degree: r.expected_up_degree,
            offenders: r.offenders.len() as u64,
        })
        .collect();
    Section {
        name: "counting".into(),
        pass: report.pass,
        details: Details::Counting(CountingDto {
            vertices: p.len() as u64,
            rows,
        }),
    }
}

#[derive(Serialize)]
pub struct RelationsDto {
    pub identities: Vec<RelationRowDto>,
}

#[derive(Serialize)]
pub struct RelationRowDto {
    pub name: String,
    pub formula: String,
    pub word_length: u32,
    pub pass: bool,
}

pub fn relations_section(ops: &Operators) -> Section {
    let report = verify_relations_on(ops);
    let identities = report
        .rows
        .iter()
        .map(|r| RelationRowDto {
            name: r.name.to_owned(),
            formula: r.formula.to_owned(),
            word_length: r.word_length,
            pass: r.pass,
        })
        .collect();
    Section {
        name: "relations".into(),
        pass: report.pass,
        details: Details::Relations(RelationsDto { identities }),
    }
}

#[derive(Serialize)]
pub struct SpectrumDto {
    pub records: Vec<EigenRowDto>,
    pub distinct: bool,
    pub complete: bool,
    pub eigenvectors: bool,
    pub minimal_polynomial: bool,
}

#[derive(Serialize)]
pub struct EigenRowDto {
    pub index: String,
    pub theta: ScalarDto,
    pub predicted_dim: u64,
    pub dim: u64,
    pub pass: bool,
}

/// Compute the spectrum and package it; the raw `Spectrum` is handed back
/// so the band profile can reuse the verified eigenspace bases.
pub fn spectrum_section(ops: &Operators) -> (Section, Spectrum) {
    let spectrum = compute_spectrum(ops);
    let records = spectrum
        .lines
        .iter()
        .map(|line| EigenRowDto {
            index: line.index.to_string(),
            theta: scalar_dto(&line.theta),
            predicted_dim: line.predicted_dim,
            dim: line.kernel_dim,
            pass: line.pass,
        })
        .collect();
    let section = Section {
        name: "spectrum".into(),
        pass: spectrum.pass,
        details: Details::Spectrum(SpectrumDto {
            records,
            distinct: spectrum.distinct_pass,
            complete: spectrum.complete_pass,
            eigenvectors: spectrum.eigenvector_pass,
            minimal_polynomial: spectrum.minpoly_pass,
        }),
    };
    (section, spectrum)
}

#[derive(Serialize)]
pub struct BandDto {
    /// Index labels in natural ascending order; `nonzero` follows it.
    pub indices: Vec<String>,
    pub nonzero: Vec<Vec<bool>>,
    /// Off-diagonal entries are nonzero exactly for index distance one.
    pub adjacency: bool,
    pub integers_then_halves: OrderedGridDto,
    pub halves_then_integers: OrderedGridDto,
}

/// The support grid rewritten in one of the two chain orderings.
#[derive(Serialize)]
pub struct OrderedGridDto {
    pub indices: Vec<String>,
    pub nonzero: Vec<Vec<bool>>,
    pub banded: bool,
}

fn permuted_grid(profile: &BandProfile, order: &[usize], banded: bool) -> OrderedGridDto {
    let indices = order
        .iter()
        .map(|&k| profile.indices[k].to_string())
        .collect();
    let nonzero = order
        .iter()
        .map(|&r| order.iter().map(|&c| profile.nonzero[r][c]).collect())
        .collect();
    OrderedGridDto {
        indices,
        nonzero,
        banded,
    }
}

/// Positions of `profile.indices` with the given parity of twice the
/// index first, each half kept in ascending order.
fn parity_order(profile: &BandProfile, first: u32) -> Vec<usize> {
    let count = profile.indices.len();
    let mut order: Vec<usize> = (0..count)
        .filter(|&k| profile.indices[k].twice() % 2 == first)
        .collect();
    order.extend((0..count).filter(|&k| profile.indices[k].twice() % 2 != first));
    order
}

pub fn band_section(ops: &Operators, spectrum: &Spectrum) -> Section {
    let profile = qpoly_band_profile(ops, spectrum);
    let integers_then_halves = permuted_grid(
        &profile,
        &parity_order(&profile, 0),
        profile.integers_then_halves_pass,
    );
    let halves_then_integers = permuted_grid(
        &profile,
        &parity_order(&profile, 1),
        profile.halves_then_integers_pass,
    );
    Section {
        name: "band_profile".into(),
        pass: profile.pass,
        details: Details::Band(BandDto {
            indices: profile.indices.iter().map(|i| i.to_string()).collect(),
            nonzero: profile.nonzero.clone(),
            adjacency: profile.adjacency_pass,
            integers_then_halves,
            halves_then_integers,
        }),
    }
}

#[derive(Serialize)]
pub struct DecompositionDto {
    pub classes: Vec<ClassDto>,
    pub witnesses: Vec<WitnessRowDto>,
    pub error: Option<String>,
}

/// One module class of the diagram: its predicted multiplicity next to
/// the number of modules the decomposition actually produced.
#[derive(Serialize)]
pub struct ClassDto {
    pub endpoint: u32,
    pub diameter: u32,
    pub predicted: String,
    pub observed: u64,
}

#[derive(Serialize)]
pub struct WitnessRowDto {
    pub endpoint: u32,
    pub diameter: u32,
    pub pass: bool,
    pub first_failure: Option<String>,
}

fn class_rows(q: u32, n: u32, m: u32, witnesses: &[ModuleWitness]) -> Vec<ClassDto> {
    psi_set(q, n, m)
        .iter()
        .map(|e| ClassDto {
            endpoint: e.endpoint,
            diameter: e.diameter,
            predicted: rational_string(&e.multiplicity),
            observed: witnesses
                .iter()
                .filter(|w| w.endpoint == e.endpoint && w.diameter == e.diameter)
                .count() as u64,
        })
        .collect()
}

/// Decompose the standard module and verify every witness. The witnesses
/// are handed back for the Leonard and sample sections.
pub fn decomposition_section(p: &PosetInstance, ops: &Operators) -> (Section, Vec<ModuleWitness>) {
    match decompose(p, ops) {
        Ok(witnesses) => {
            let classes = class_rows(p.q(), p.n(), p.m(), &witnesses);
            let mut pass = classes.iter().all(|c| c.predicted == c.observed.to_string());
            let rows = witnesses
                .iter()
                .map(|w| {
                    let report = verify_module(ops, w);
                    pass &= report.pass;
                    WitnessRowDto {
                        endpoint: w.endpoint,
                        diameter: w.diameter,
                        pass: report.pass,
                        first_failure: report.first_failure().map(str::to_owned),
                    }
                })
                .collect();
            let section = Section {
                name: "decomposition".into(),
                pass,
                details: Details::Decomposition(DecompositionDto {
                    classes,
                    witnesses: rows,
                    error: None,
                }),
            };
            (section, witnesses)
        }
        Err(e) => {
            let section = Section {
                name: "decomposition".into(),
                pass: false,
                details: Details::Decomposition(DecompositionDto {
                    classes: class_rows(p.q(), p.n(), p.m(), &[]),
                    witnesses: Vec::new(),
                    error: Some(e.to_string()),
                }),
            };
            (section, Vec::new())
        }
    }
}

#[derive(Serialize)]
pub struct PsiSumsDto {
    pub rows: Vec<PsiSumRowDto>,
}

#[derive(Serialize)]
pub struct PsiSumRowDto {
    pub endpoint: u32,
    pub diameter: u32,
    pub pass: bool,
}

pub fn psi_sums_section(q: u32, n: u32, m: u32) -> Section {
    let report = verify_psi_sums(q, n, m);
    let rows = report
        .rows
        .iter()
        .map(|r| PsiSumRowDto {
            endpoint: r.endpoint,
            diameter: r.diameter,
            pass: r.pass,
        })
        .collect();
    Section {
        name: "psi_sums".into(),
        pass: report.pass,
        details: Details::PsiSums(PsiSumsDto { rows }),
    }
}

#[derive(Serialize)]
pub struct LeonardListDto {
    pub profiles: Vec<LeonardDto>,
}

#[derive(Serialize)]
pub struct LeonardDto {
    pub endpoint: u32,
    pub diameter: u32,
    pub h: ScalarDto,
    pub hstar: ScalarDto,
    pub s: ScalarDto,
    pub theta0: ScalarDto,
    pub theta0_star: ScalarDto,
    pub thetas: Vec<ScalarDto>,
    pub dual_thetas: Vec<ScalarDto>,
    pub theta_parametrization: bool,
    pub dual_parametrization: bool,
    pub bipartite: bool,
    pub irreducible: bool,
    pub pass: bool,
}

fn leonard_dto(profile: &LeonardProfile) -> LeonardDto {
    LeonardDto {
        endpoint: profile.endpoint,
        diameter: profile.diameter,
        h: scalar_dto(&profile.h),
        hstar: scalar_dto(&profile.hstar),
        s: scalar_dto(&profile.s),
        theta0: scalar_dto(&profile.theta0),
        theta0_star: scalar_dto(&profile.theta0_star),
        thetas: profile.thetas.iter().map(scalar_dto).collect(),
        dual_thetas: profile.dual_thetas.iter().map(scalar_dto).collect(),
        theta_parametrization: profile.theta_parametrization_pass,
        dual_parametrization: profile.dual_parametrization_pass,
        bipartite: profile.bipartite,
        irreducible: profile.irreducible,
        pass: profile.pass,
    }
}

pub fn leonard_section(ops: &Operators, witnesses: &[ModuleWitness]) -> Section {
    let profiles: Vec<LeonardDto> = witnesses
        .iter()
        .map(|w| leonard_dto(&leonard_profile(ops, w)))
        .collect();
    let pass = !profiles.is_empty() && profiles.iter().all(|p| p.pass);
    Section {
        name: "leonard_profiles".into(),
        pass,
        details: Details::Leonard(LeonardListDto { profiles }),
    }
}

#[derive(Serialize)]
pub struct SamplesDto {
    pub samples: Vec<SampleDto>,
}

/// One sample module per diagram class: the matrix of A on the witness
/// basis and the Leonard profile read off from it.
#[derive(Serialize)]
pub struct SampleDto {
    pub endpoint: u32,
    pub diameter: u32,
    pub action: Vec<Vec<ScalarDto>>,
    pub leonard: LeonardDto,
}

/// Verify every witness, but keep only the first of each class as the
/// sample payload. The pass flag still covers all of them.
pub fn samples_section(name: &str, ops: &Operators, witnesses: &[ModuleWitness]) -> Section {
    let mut pass = !witnesses.is_empty();
    let mut seen: Vec<(u32, u32)> = Vec::new();
    let mut samples = Vec::new();
    for w in witnesses {
        let report = verify_module(ops, w);
        let profile = leonard_profile(ops, w);
        pass &= report.pass && profile.pass;
        if !seen.contains(&(w.endpoint, w.diameter)) {
            seen.push((w.endpoint, w.diameter));
            samples.push(SampleDto {
                endpoint: w.endpoint,
                diameter: w.diameter,
                action: matrix_dto(&report.action),
                leonard: leonard_dto(&profile),
            });
        }
    }
    Section {
        name: name.into(),
        pass,
        details: Details::Samples(SamplesDto { samples }),
    }
}

/// The vertex list in canonical order plus the covering relation, enough
/// to rebuild the instance or use it as a fixture.
#[derive(Serialize)]
pub struct PosetDto {
    pub vertices: Vec<VertexDto>,
    pub covers_down: Vec<Vec<u32>>,
}

#[derive(Serialize)]
pub struct VertexDto {
    pub dim: u32,
    pub u: Vec<Vec<u32>>,
    pub t: Vec<Vec<u32>>,
}

pub fn poset_section(p: &PosetInstance) -> Section {
    let vertices = p
        .vertices()
        .iter()
        .map(|v| VertexDto {
            dim: v.dim() as u32,
            u: gf_rows(v.u()),
            t: gf_rows(v.t()),
        })
        .collect();
    let covers_down = (0..p.len()).map(|i| p.covers_down(i).to_vec()).collect();
    Section {
        name: "poset".into(),
        pass: true,
        details: Details::Poset(PosetDto {
            vertices,
            covers_down,
        }),
    }
}

#[derive(Serialize)]
pub struct DiagramDto {
    pub classes: Vec<ClassDto>,
    pub error: Option<String>,
}

fn log_section(context: &str, section: &Section, start: Instant) {
    let verdict = if section.pass { "PASS" } else { "FAIL" };
    eprintln!(
        "{context}{}: {verdict} ({:.2?})",
        section.name,
        start.elapsed()
    );
}

macro_rules! timed {
    ($sections:ident, $context:expr, $build:expr) => {{
        let start = Instant::now();
        let section = $build;
        log_section($context, &section, start);
        $sections.push(section);
    }};
}

/// The full verification suite for one instance, in fixed order:
/// counting, relations, spectrum, band profile, decomposition, psi sums,
/// Leonard profiles. `with_samples` appends the per-class sample section.
pub fn suite_sections(p: &PosetInstance, ops: &Operators, with_samples: bool) -> Vec<Section> {
    let context = format!("[q={} N={} M={}] ", p.q(), p.n(), p.m());
    let mut sections: Vec<Section> = Vec::new();

    timed!(sections, &context, counting_section(p));
    timed!(sections, &context, relations_section(ops));

    let start = Instant::now();
    let (section, spectrum) = spectrum_section(ops);
    log_section(&context, &section, start);
    sections.push(section);

    timed!(sections, &context, band_section(ops, &spectrum));
    drop(spectrum);

    let start = Instant::now();
    let (section, witnesses) = decomposition_section(p, ops);
    log_section(&context, &section, start);
    sections.push(section);

    timed!(sections, &context, psi_sums_section(p.q(), p.n(), p.m()));
    timed!(sections, &context, leonard_section(ops, &witnesses));
    if with_samples {
        timed!(sections, &context, samples_section("samples", ops, &witnesses));
    }

    sections
}

/// Document for `verify` and `report` on a single instance.
pub fn suite_document(p: &PosetInstance, cap: usize, with_samples: bool) -> Document {
    let ops = Operators::build(p);
    document(instance_params(p, cap), suite_sections(p, &ops, with_samples))
}

/// Document for `build`: the serialized instance plus its counting checks.
pub fn build_document(p: &PosetInstance, cap: usize) -> Document {
    let context = format!("[q={} N={} M={}] ", p.q(), p.n(), p.m());
    let mut sections: Vec<Section> = Vec::new();
    timed!(sections, &context, poset_section(p));
    timed!(sections, &context, counting_section(p));
    document(instance_params(p, cap), sections)
}

/// Document for `spectrum`: eigenvalue records plus the band profile in
/// both chain orderings.
pub fn spectrum_document(p: &PosetInstance, cap: usize) -> Document {
    let ops = Operators::build(p);
    let context = format!("[q={} N={} M={}] ", p.q(), p.n(), p.m());
    let mut sections: Vec<Section> = Vec::new();

    let start = Instant::now();
    let (section, spectrum) = spectrum_section(&ops);
    log_section(&context, &section, start);
    sections.push(section);

    timed!(sections, &context, band_section(&ops, &spectrum));
    document(instance_params(p, cap), sections)
}

/// Document for `decompose`: the module diagram with predicted and
/// observed multiplicities, plus one verified sample per class.
pub fn decompose_document(p: &PosetInstance, cap: usize) -> Document {
    let entries = psi_set(p.q(), p.n(), p.m());
    assert!(!entries.is_empty(), "the module diagram is empty");

    let ops = Operators::build(p);
    let context = format!("[q={} N={} M={}] ", p.q(), p.n(), p.m());
    let mut sections: Vec<Section> = Vec::new();

    let start = Instant::now();
    let (witnesses, error) = match decompose(p, &ops) {
        Ok(witnesses) => (witnesses, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let classes = class_rows(p.q(), p.n(), p.m(), &witnesses);
    let pass = error.is_none() && classes.iter().all(|c| c.predicted == c.observed.to_string());
    let section = Section {
        name: "diagram".into(),
        pass,
        details: Details::Diagram(DiagramDto { classes, error }),
    };
    log_section(&context, &section, start);
    sections.push(section);

    timed!(sections, &context, samples_section("modules", &ops, &witnesses));
    document(instance_params(p, cap), sections)
}

#[cfg(test)]
mod tests {
    use super::*;
    use atspace::build_poset;

    #[test]
    fn rational_strings_are_plain_or_slashed() {
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(rational_string(&third), "1/3");
        let whole = Rational::from_integer(14.into());
        assert_eq!(rational_string(&whole), "14");
        let negative = Rational::new((-3).into(), 6.into());
        assert_eq!(rational_string(&negative), "-1/2");
    }

    #[test]
    fn scalar_dto_splits_the_surd_coordinates() {
        let x = ExactScalar::new(2, Rational::from_integer(3.into()), Rational::new(1.into(), 2.into()));
        let dto = scalar_dto(&x);
        assert_eq!(dto.a, "3");
        assert_eq!(dto.b, "1/2");
    }

    #[test]
    fn permuted_band_grids_match_the_verified_flags() {
        let p = build_poset(2, 2, 2).unwrap();
        let ops = Operators::build(&p);
        let (_, spectrum) = spectrum_section(&ops);
        let section = band_section(&ops, &spectrum);
        let Details::Band(band) = &section.details else {
            panic!("band section carries a band payload");
        };
        for grid in [&band.integers_then_halves, &band.halves_then_integers] {
            let recomputed = grid.nonzero.iter().enumerate().all(|(r, row)| {
                row.iter()
                    .enumerate()
                    .all(|(c, &hit)| r.abs_diff(c) <= 1 || !hit)
            });
            assert_eq!(recomputed, grid.banded);
            assert!(grid.banded);
        }
        assert!(band.adjacency);
        assert!(!band.nonzero[0][1] && band.nonzero[0][2]);
    }

    #[test]
    fn first_failing_descends_into_instance_sections() {
        let good = Section {
            name: "counting".into(),
            pass: true,
            details: Details::PsiSums(PsiSumsDto { rows: Vec::new() }),
        };
        let bad = Section {
            name: "relations".into(),
            pass: false,
            details: Details::PsiSums(PsiSumsDto { rows: Vec::new() }),
        };
        let inner = InstanceDto {
            sections: vec![good, bad],
        };
        let doc = document(
            ParamsDto::All { all: true, cap: 10 },
            vec![Section {
                name: "q=2 N=2 M=2".into(),
                pass: false,
                details: Details::Instance(inner),
            }],
        );
        assert_eq!(first_failing(&doc).as_deref(), Some("q=2 N=2 M=2: relations"));
    }
}
