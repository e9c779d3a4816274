use std::collections::BTreeMap;
use std::fmt::Write;

use knotparity::invariants::{
    big_l_invariant, bracket, bracket_links, even_kauffman, kauffman_bracket, source_sink, turaev_delta,
    turaev_delta_bracket, x_even, DeltaFilter,
};
use knotparity::parity::{component_parity, gaussian_parity, index, ComponentParity, GaussianParity};
use knotparity::algebra::{FModuleElement, Z2GElement};
use knotparity::{Error, GaussPhrase, Result, VirtualGaussDiagram};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct DeltaReport {
    pub all: Vec<String>,
    pub even: Vec<String>,
    pub odd: Vec<String>,
    /// Each summand replaced by its link bracket.
    pub bracketed: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct InvariantReport {
    pub input: String,
    pub canonical: String,
    pub chords: usize,
    pub components: usize,
    pub parity: BTreeMap<u32, u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<BTreeMap<u32, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub writhe: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<String>>,
    pub bracket_links: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kauffman: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_kauffman: Option<FModuleElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_even: Option<FModuleElement>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub big_l: Option<u64>,
    pub source_sink: bool,
}

fn codes(z: Z2GElement) -> Vec<String> {
    z.codes()
}

pub fn free_report(input: &str, p: &GaussPhrase) -> Result<InvariantReport> {
    let g = GaussianParity;
    let knot = p.unicursal_count() == 1;
    // two-component links use the component parity
    let (parity, links) = if p.unicursal_count() == 2 {
        (component_parity(p)?, bracket_links(p, &ComponentParity)?)
    } else {
        (gaussian_parity(p), bracket_links(p, &g)?)
    };
    let delta = if knot {
        Some(DeltaReport {
            all: codes(turaev_delta(p, DeltaFilter::All, &g)?),
            even: codes(turaev_delta(p, DeltaFilter::Even, &g)?),
            odd: codes(turaev_delta(p, DeltaFilter::Odd, &g)?),
            bracketed: codes(turaev_delta_bracket(p, DeltaFilter::All, &g)?),
        })
    } else {
        None
    };
    Ok(InvariantReport {
        input: input.trim().to_string(),
        canonical: p.to_canonical_string(),
        chords: p.chord_count(),
        components: p.unicursal_count(),
        parity: parity.iter().map(|(c, v)| (c.0, v)).collect(),
        index: None,
        writhe: None,
        bracket: if knot { Some(codes(bracket(p, &g)?)) } else { None },
        bracket_links: codes(links),
        delta,
        kauffman: None,
        even_kauffman: None,
        x_even: None,
        big_l: if knot { Some(big_l_invariant(p)?) } else { None },
        source_sink: source_sink(p),
    })
}

pub fn virtual_report(input: &str, d: &VirtualGaussDiagram) -> Result<InvariantReport> {
    let mut r = free_report(input, &d.base())?;
    let ind = index(d);
    let parity = gaussian_parity(&d.base());
    if ind.iter().any(|(c, k)| parity.get(c) != Some((k % 2) as u8)) {
        return Err(Error::InvariantViolation("index and parity disagree mod 2".into()));
    }
    r.index = Some(ind.iter().map(|(c, k)| (c.0, k)).collect());
    r.writhe = Some(d.writhe());
    r.kauffman = Some(kauffman_bracket(d).to_string());
    r.even_kauffman = Some(even_kauffman(d));
    r.x_even = Some(x_even(d));
    Ok(r)
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "0".into()
    } else {
        format!("[{}]", v.join("] + ["))
    }
}

fn map<V: std::fmt::Display>(m: &BTreeMap<u32, V>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    parts.join(" ")
}

/// `key: value` lines in a fixed order.
pub fn render_text(r: &InvariantReport) -> String {
    let mut s = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(s, "{k}: {v}");
    };
    line("input", r.input.clone());
    line("canonical", r.canonical.clone());
    line("chords", r.chords.to_string());
    line("components", r.components.to_string());
    line("parity", map(&r.parity));
    if let Some(ind) = &r.index {
        line("index", map(ind));
    }
    if let Some(w) = r.writhe {
        line("writhe", w.to_string());
    }
    if let Some(b) = &r.bracket {
        line("bracket", list(b));
    }
    line("bracket_links", list(&r.bracket_links));
    if let Some(d) = &r.delta {
        line("delta", list(&d.all));
        line("delta_even", list(&d.even));
        line("delta_odd", list(&d.odd));
        line("delta_bracketed", list(&d.bracketed));
    }
    if let Some(k) = &r.kauffman {
        line("kauffman", k.clone());
    }
    if let Some(e) = &r.even_kauffman {
        line("even_kauffman", e.to_string());
    }
    if let Some(x) = &r.x_even {
        line("x_even", x.to_string());
    }
    if let Some(l) = r.big_l {
        line("L", l.to_string());
    }
    line("source_sink", r.source_sink.to_string());
    s
}
