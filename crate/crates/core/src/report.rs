//! The classification report emitted by `superint classify`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classify::{
    class_of, component_of, e_label, factor_cubic, invariant_pattern, real_form, ClassLabel, ComponentReport, InvariantPattern,
    LineArrangement, RealForm,
};
use crate::exact::GaussRat;
use crate::isometry::{normal_form, ReducingIsometry};
use crate::killing::SpecialConformalKillingTensor;
use crate::pluecker::{wedge, PlueckerPoint};
use crate::potential::solve_fibre_series;
use crate::sic::sic_residuals;
use crate::Error;

pub const REPORT_VERSION: u32 = 1;

/// What `classify` was given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassifyInput {
    Pair { tensors: [SpecialConformalKillingTensor; 2] },
    Point { point: PlueckerPoint },
}

impl ClassifyInput {
    pub fn point(&self) -> Result<PlueckerPoint, Error> {
        match self {
            ClassifyInput::Pair { tensors: [a, b] } => wedge(a, b),
            ClassifyInput::Point { point } => Ok(point.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SicSummary {
    pub on_variety: bool,
    pub degenerate: bool,
    /// Residual polynomials that do not vanish, by name.
    pub residuals: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineSummary {
    pub form: String,
    pub orbit: String,
    pub multiplicity: u32,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealForms {
    pub euclidean: bool,
    pub minkowski: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalFormSummary {
    pub e_label: Option<String>,
    pub point: PlueckerPoint,
    pub isometry: ReducingIsometry,
    pub table_note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FibreSummary {
    pub base: [GaussRat; 2],
    pub order: u32,
    pub rank: usize,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub version: u32,
    pub input: ClassifyInput,
    pub point: PlueckerPoint,
    pub sic: SicSummary,
    #[serde(rename = "label")]
    pub class: Option<ClassLabel>,
    pub e_label: Option<String>,
    #[serde(rename = "factors")]
    pub lines: Vec<LineSummary>,
    pub components: Option<ComponentReport>,
    #[serde(rename = "invariant_pattern")]
    pub invariants: InvariantPattern,
    pub real_forms: RealForms,
    pub normal_form: Option<NormalFormSummary>,
    pub fibre: Option<FibreSummary>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClassifyOptions {
    pub normal_form: bool,
    pub fibre_order: Option<u32>,
}

fn lines_of(arr: &LineArrangement) -> Vec<LineSummary> {
    arr.factors
        .iter()
        .map(|(f, m)| LineSummary {
            form: f.to_string(),
            orbit: serde_json::to_value(f.orbit).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
            multiplicity: *m,
            exact: f.is_exact(),
        })
        .collect()
}

/// First small Gaussian integer point with `D ≠ 0`.
pub fn default_base(p: &PlueckerPoint) -> Option<[GaussRat; 2]> {
    let d = p.extract().d;
    (1..=6i64)
        .flat_map(|s| (1..=s).map(move |k| (k, s + 1 - k)))
        .map(|(a, b)| [GaussRat::from_int(a), GaussRat::from_int(b)])
        .find(|[z, w]| !d.eval(z, w).is_zero())
}

/// Run the whole pipeline on one input. Off-variety points still produce a
/// report, with the failing residuals listed.
pub fn classify(input: ClassifyInput, opts: ClassifyOptions) -> Result<ClassificationReport, Error> {
    let raw = input.point()?;
    if raw.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let point = raw.canonical()?;
    let t = point.extract();
    let sic = sic_residuals(&t);
    let summary = SicSummary {
        on_variety: sic.on_variety,
        degenerate: sic.degenerate,
        residuals: sic.failures().into_iter().map(|(n, r)| (n.to_string(), r.to_string())).collect(),
    };
    let arr = if t.d.is_zero() { None } else { factor_cubic(&t.d).ok() };
    let class = class_of(&t).ok();
    let label = class.as_ref().and_then(|c| e_label(c, &point)).map(str::to_string);
    let components = if sic.on_variety { component_of(&point).ok() } else { None };
    let normal = if opts.normal_form && sic.on_variety {
        normal_form(&point).ok().map(|nf| NormalFormSummary {
            e_label: nf.e_label.map(str::to_string),
            point: nf.point,
            isometry: nf.isometry,
            table_note: nf.table_note,
        })
    } else {
        None
    };
    let fibre = match opts.fibre_order {
        Some(order) if !t.d.is_zero() => default_base(&point).and_then(|base| {
            let fb = solve_fibre_series(&t, (base[0].clone(), base[1].clone()), order).ok()?;
            Some(FibreSummary { base, order, rank: fb.rank(), consistent: fb.consistent() })
        }),
        _ => None,
    };
    Ok(ClassificationReport {
        version: REPORT_VERSION,
        input,
        point: point.clone(),
        sic: summary,
        class,
        e_label: label,
        lines: arr.as_ref().map(lines_of).unwrap_or_default(),
        components,
        invariants: invariant_pattern(&point),
        real_forms: RealForms { euclidean: real_form(&point, RealForm::Euclidean), minkowski: real_form(&point, RealForm::Minkowski) },
        normal_form: normal,
        fibre,
    })
}

impl ClassificationReport {
    /// Line arrangement of the canonical point, for drawing.
    pub fn arrangement(&self) -> Option<LineArrangement> {
        let d = self.point.extract().d;
        if d.is_zero() || self.sic.degenerate {
            return None;
        }
        factor_cubic(&d).ok()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let t = self.point.extract();
        let _ = writeln!(s, "D   = {}", t.d);
        let _ = writeln!(s, "A_z = {}", t.a);
        let _ = writeln!(s, "B_w = {}", t.b);
        let _ = writeln!(s, "on variety: {}{}", self.sic.on_variety, if self.sic.degenerate { " (degenerate)" } else { "" });
        for (n, r) in &self.sic.residuals {
            let _ = writeln!(s, "  residual {n}: {r}");
        }
        if let Some(c) = &self.class {
            let _ = writeln!(s, "class: {c}{}", self.e_label.as_ref().map(|l| format!("  {l}")).unwrap_or_default());
        }
        for l in &self.lines {
            let _ = writeln!(s, "  line {} ({}, multiplicity {})", l.form, l.orbit, l.multiplicity);
        }
        if let Some(c) = &self.components {
            let names: Vec<_> = c.components.iter().map(|c| c.name()).collect();
            let _ = writeln!(s, "components: {}", names.join(", "));
        }
        let _ = writeln!(s, "real forms: euclidean={} minkowski={}", self.real_forms.euclidean, self.real_forms.minkowski);
        if let Some(nf) = &self.normal_form {
            let _ = writeln!(s, "normal form: {} via {}", nf.point.extract().d, serde_json::to_string(&nf.isometry).unwrap_or_default());
            if let Some(n) = &nf.table_note {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        if let Some(f) = &self.fibre {
            let _ = writeln!(s, "fibre: order {} at ({}, {}), rank {}, consistent {}", f.order, f.base[0], f.base[1], f.rank, f.consistent);
        }
        s
    }
}
