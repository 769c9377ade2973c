//! Plain text rendering of report documents.
//!
//! The table format walks the same typed payloads as the JSON format and
//! prints every field, so the two formats differ in presentation only.
//! Scalars appear in surd form ("2*sqrt(2)") instead of coordinate pairs,
//! booleans as yes/no, and per-row pass flags as ok/FAIL.

use crate::suite::{
    BandDto, CountingDto, DecompositionDto, Details, DiagramDto, Document, InstanceDto,
    LeonardDto, LeonardListDto, OrderedGridDto, ParamsDto, PosetDto, PsiSumsDto, RelationsDto,
    SamplesDto, ScalarDto, Section, SpectrumDto,
};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ok_fail(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn scalar_text(x: &ScalarDto) -> &str {
    &x.text
}

fn scalar_list(xs: &[ScalarDto]) -> String {
    xs.iter()
        .map(scalar_text)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Write an aligned table with a two-space gutter.
fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut line = String::new();
    for (w, h) in widths.iter().zip(header) {
        line.push_str(&format!("{h:<w$}  "));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for row in rows {
        let mut line = String::new();
        for (w, cell) in widths.iter().zip(row) {
            line.push_str(&format!("{cell:<w$}  "));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

pub fn render_document(doc: &Document) -> String {
    let mut out = String::new();
    match &doc.params {
        ParamsDto::Instance { q, n, m, cap } => {
            out.push_str(&format!("params: q={q} N={n} M={m} cap={cap}\n"));
        }
        ParamsDto::All { cap, .. } => {
            out.push_str(&format!("params: all default instances, cap={cap}\n"));
        }
    }
    out.push_str(&format!("overall: {}\n", pass_fail(doc.pass)));
    for section in &doc.sections {
        render_section(&mut out, section, "");
    }
    out
}

fn render_section(out: &mut String, section: &Section, prefix: &str) {
    if let Details::Instance(inner) = &section.details {
        out.push_str(&format!(
            "\n==== {}{}: {} ====\n",
            prefix,
            section.name,
            pass_fail(section.pass)
        ));
        render_instance(out, inner, &format!("{}{}: ", prefix, section.name));
        return;
    }
    out.push_str(&format!(
        "\n== {}{}: {} ==\n",
        prefix,
        section.name,
        pass_fail(section.pass)
    ));
    match &section.details {
        Details::Counting(dto) => render_counting(out, dto),
        Details::Relations(dto) => render_relations(out, dto),
        Details::Spectrum(dto) => render_spectrum(out, dto),
        Details::Band(dto) => render_band(out, dto),
        Details::Decomposition(dto) => render_decomposition(out, dto),
        Details::PsiSums(dto) => render_psi_sums(out, dto),
        Details::Leonard(dto) => render_leonard_list(out, dto),
        Details::Samples(dto) => render_samples(out, dto),
        Details::Poset(dto) => render_poset(out, dto),
        Details::Diagram(dto) => render_diagram(out, dto),
        Details::Instance(_) => unreachable!("handled above"),
    }
}

fn render_instance(out: &mut String, inner: &InstanceDto, prefix: &str) {
    for section in &inner.sections {
        render_section(out, section, prefix);
    }
}

fn render_counting(out: &mut String, dto: &CountingDto) {
    out.push_str(&format!("vertices: {}\n", dto.vertices));
    let rows: Vec<Vec<String>> = dto
        .rows
        .iter()
        .map(|r| {
            vec![
                r.rank.to_string(),
                r.expected_size.to_string(),
                r.actual_size.to_string(),
                r.expected_down_degree.to_string(),
                r.expected_up_degree.to_string(),
                r.offenders.to_string(),
            ]
        })
        .collect();
    table(
        out,
        &["rank", "expected", "actual", "down", "up", "offenders"],
        &rows,
    );
}

fn render_relations(out: &mut String, dto: &RelationsDto) {
    let rows: Vec<Vec<String>> = dto
        .identities
        .iter()
        .map(|r| {
            vec![
                ok_fail(r.pass).to_string(),
                r.word_length.to_string(),
                r.name.clone(),
                r.formula.clone(),
            ]
        })
        .collect();
    table(out, &["pass", "len", "name", "formula"], &rows);
}

fn render_spectrum(out: &mut String, dto: &SpectrumDto) {
    let rows: Vec<Vec<String>> = dto
        .records
        .iter()
        .map(|r| {
            vec![
                r.index.clone(),
                scalar_text(&r.theta).to_string(),
                r.predicted_dim.to_string(),
                r.dim.to_string(),
                ok_fail(r.pass).to_string(),
            ]
        })
        .collect();
    table(out, &["index", "theta", "predicted", "dim", "pass"], &rows);
    out.push_str(&format!(
        "distinct: {}  complete: {}  eigenvectors: {}  minimal_polynomial: {}\n",
        yes_no(dto.distinct),
        yes_no(dto.complete),
        yes_no(dto.eigenvectors),
        yes_no(dto.minimal_polynomial)
    ));
}

fn render_grid(out: &mut String, label: &str, indices: &[String], grid: &[Vec<bool>]) {
    out.push_str(&format!("{label}: {}\n", indices.join(" ")));
    for row in grid {
        let cells: Vec<&str> = row.iter().map(|&hit| if hit { "#" } else { "." }).collect();
        out.push_str(&format!("  {}\n", cells.join(" ")));
    }
}

fn render_ordered_grid(out: &mut String, label: &str, grid: &OrderedGridDto) {
    render_grid(
        out,
        &format!("{label} (banded: {})", yes_no(grid.banded)),
        &grid.indices,
        &grid.nonzero,
    );
}

fn render_band(out: &mut String, dto: &BandDto) {
    out.push_str(&format!("adjacency: {}\n", yes_no(dto.adjacency)));
    render_grid(out, "natural order", &dto.indices, &dto.nonzero);
    render_ordered_grid(out, "integers then halves", &dto.integers_then_halves);
    render_ordered_grid(out, "halves then integers", &dto.halves_then_integers);
}

fn render_classes(out: &mut String, classes: &[crate::suite::ClassDto]) {
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|c| {
            vec![
                c.endpoint.to_string(),
                c.diameter.to_string(),
                c.predicted.clone(),
                c.observed.to_string(),
            ]
        })
        .collect();
    table(
        out,
        &["endpoint", "diameter", "predicted", "observed"],
        &rows,
    );
}

fn render_decomposition(out: &mut String, dto: &DecompositionDto) {
    if let Some(error) = &dto.error {
        out.push_str(&format!("error: {error}\n"));
    }
    render_classes(out, &dto.classes);
    let rows: Vec<Vec<String>> = dto
        .witnesses
        .iter()
        .map(|w| {
            vec![
                w.endpoint.to_string(),
                w.diameter.to_string(),
                ok_fail(w.pass).to_string(),
                w.first_failure.clone().unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    out.push_str(&format!("witnesses: {}\n", rows.len()));
    table(
        out,
        &["endpoint", "diameter", "pass", "first_failure"],
        &rows,
    );
}

fn render_psi_sums(out: &mut String, dto: &PsiSumsDto) {
    let rows: Vec<Vec<String>> = dto
        .rows
        .iter()
        .map(|r| {
            vec![
                r.endpoint.to_string(),
                r.diameter.to_string(),
                ok_fail(r.pass).to_string(),
            ]
        })
        .collect();
    table(out, &["endpoint", "diameter", "pass"], &rows);
}

fn render_leonard(out: &mut String, profile: &LeonardDto) {
    out.push_str(&format!(
        "module endpoint={} diameter={}: {}\n",
        profile.endpoint,
        profile.diameter,
        ok_fail(profile.pass)
    ));
    out.push_str(&format!(
        "  h = {}  hstar = {}  s = {}\n",
        scalar_text(&profile.h),
        scalar_text(&profile.hstar),
        scalar_text(&profile.s)
    ));
    out.push_str(&format!(
        "  theta0 = {}  theta0_star = {}\n",
        scalar_text(&profile.theta0),
        scalar_text(&profile.theta0_star)
    ));
    out.push_str(&format!("  thetas: {}\n", scalar_list(&profile.thetas)));
    out.push_str(&format!(
        "  dual_thetas: {}\n",
        scalar_list(&profile.dual_thetas)
    ));
    out.push_str(&format!(
        "  theta_parametrization: {}  dual_parametrization: {}\n",
        ok_fail(profile.theta_parametrization),
        ok_fail(profile.dual_parametrization)
    ));
    out.push_str(&format!(
        "  bipartite: {}  irreducible: {}\n",
        yes_no(profile.bipartite),
        yes_no(profile.irreducible)
    ));
}

fn render_leonard_list(out: &mut String, dto: &LeonardListDto) {
    out.push_str(&format!("profiles: {}\n", dto.profiles.len()));
    for profile in &dto.profiles {
        render_leonard(out, profile);
    }
}

fn render_samples(out: &mut String, dto: &SamplesDto) {
    out.push_str(&format!("samples: {}\n", dto.samples.len()));
    for sample in &dto.samples {
        out.push_str(&format!(
            "sample endpoint={} diameter={}\n",
            sample.endpoint, sample.diameter
        ));
        out.push_str("  action:\n");
        for row in &sample.action {
            out.push_str(&format!("    [{}]\n", scalar_list(row)));
        }
        render_leonard(out, &sample.leonard);
    }
}

fn gf_text(rows: &[Vec<u32>]) -> String {
    if rows.is_empty() {
        return "-".into();
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn render_poset(out: &mut String, dto: &PosetDto) {
    let rows: Vec<Vec<String>> = dto
        .vertices
        .iter()
        .zip(&dto.covers_down)
        .enumerate()
        .map(|(idx, (v, covers))| {
            let covers = if covers.is_empty() {
                "-".into()
            } else {
                covers
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            vec![
                idx.to_string(),
                v.dim.to_string(),
                gf_text(&v.u),
                gf_text(&v.t),
                covers,
            ]
        })
        .collect();
    table(out, &["index", "dim", "u", "t", "covers_down"], &rows);
}

fn render_diagram(out: &mut String, dto: &DiagramDto) {
    if let Some(error) = &dto.error {
        out.push_str(&format!("error: {error}\n"));
    }
    render_classes(out, &dto.classes);
}
