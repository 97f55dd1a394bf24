//! Singularity verdicts for Serre-weight components, by the closed-form
//! rule on n and independently by enumerating chart shapes.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::shapes::shape_table;
use crate::weights::{profile_for_weight, SerreWeight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Smooth,
    NonNormal,
    NormalSingular,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Smooth => "SMOOTH",
            Verdict::NonNormal => "NON_NORMAL",
            Verdict::NormalSingular => "NORMAL_SINGULAR",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// all n_j = p - 1
    Steinberg,
    /// all n_j = p - 2
    AllPMinusTwo,
    /// a run n = (0, p-2, ..., p-2, p-1)
    HeartRun,
    Generic,
    /// shape enumeration
    Charts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDiagnosis {
    pub verdict: Verdict,
    pub nonnormal_codim: Option<usize>,
    pub complement_smooth: Option<bool>,
    pub gorenstein: Option<bool>,
    pub lci: Option<bool>,
    pub sing_codim: Option<usize>,
    pub rule: Rule,
}

impl ComponentDiagnosis {
    fn smooth(rule: Rule) -> Self {
        ComponentDiagnosis {
            verdict: Verdict::Smooth,
            nonnormal_codim: None,
            complement_smooth: None,
            gorenstein: None,
            lci: None,
            sing_codim: None,
            rule,
        }
    }

    fn non_normal(f: usize, rule: Rule) -> Self {
        ComponentDiagnosis {
            verdict: Verdict::NonNormal,
            nonnormal_codim: Some(f),
            complement_smooth: Some(true),
            ..Self::smooth(rule)
        }
    }

    fn normal_singular(gorenstein: bool, codim: usize, rule: Rule) -> Self {
        ComponentDiagnosis {
            verdict: Verdict::NormalSingular,
            gorenstein: Some(gorenstein),
            lci: Some(gorenstein),
            sing_codim: Some(codim),
            ..Self::smooth(rule)
        }
    }

    /// Equality ignoring which rule produced the diagnosis.
    pub fn same_outcome(&self, other: &ComponentDiagnosis) -> bool {
        ComponentDiagnosis { rule: other.rule, ..self.clone() } == *other
    }
}

/// Cyclic runs (start, len) with n = 0 at the start, p - 2 inside, p - 1 at the end.
pub fn pattern_b_runs(w: &SerreWeight) -> Vec<(usize, usize)> {
    let f = w.f();
    let p = w.p;
    let mut out = Vec::new();
    for start in 0..f {
        if w.n[start] != 0 {
            continue;
        }
        let mut r = 1;
        while r < f && w.n[(start + r) % f] == p - 2 {
            r += 1;
        }
        if r < f && w.n[(start + r) % f] == p - 1 {
            out.push((start, r + 1));
        }
    }
    out
}

pub fn classify_weight(w: &SerreWeight) -> ComponentDiagnosis {
    let p = w.p;
    if w.is_steinberg() {
        return ComponentDiagnosis::smooth(Rule::Steinberg);
    }
    let all_a = w.n.iter().all(|&x| x == p - 2);
    let runs = pattern_b_runs(w);
    assert!(!(all_a && !runs.is_empty()), "cases (a) and (b) overlap for {w}");
    if all_a {
        return ComponentDiagnosis::non_normal(w.f(), Rule::AllPMinusTwo);
    }
    if let Some(min) = runs.iter().map(|r| r.1).min() {
        let gorenstein = runs.iter().all(|r| r.1 == 2);
        return ComponentDiagnosis::normal_singular(gorenstein, min, Rule::HeartRun);
    }
    ComponentDiagnosis::smooth(Rule::Generic)
}

/// Chart-side verdict; None when no relabelling satisfies the hypotheses
/// (or the weight is Steinberg, whose type is scalar).
pub fn classify_via_charts(w: &SerreWeight) -> Result<Option<ComponentDiagnosis>> {
    if w.is_steinberg() {
        return Ok(None);
    }
    let Some((_, profile)) = profile_for_weight(w) else {
        return Ok(None);
    };
    let table = shape_table(&profile)?;
    let decs: Vec<_> = table.into_iter().filter_map(|(_, _, d)| d).collect();
    if decs.iter().any(|d| d.all_three) {
        return Ok(Some(ComponentDiagnosis::non_normal(w.f(), Rule::Charts)));
    }
    let lengths: Vec<usize> = decs.iter().flat_map(|d| d.star.iter().map(|s| s.len)).collect();
    match lengths.iter().min() {
        None => Ok(Some(ComponentDiagnosis::smooth(Rule::Charts))),
        Some(&min) => {
            let gorenstein = lengths.iter().all(|&l| l == 3);
            Ok(Some(ComponentDiagnosis::normal_singular(gorenstein, min - 1, Rule::Charts)))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    Disagree,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumRow {
    pub n: Vec<u64>,
    pub rule: ComponentDiagnosis,
    pub charts: Option<ComponentDiagnosis>,
    pub agreement: Agreement,
}

pub fn compare(w: &SerreWeight) -> Result<EnumRow> {
    let rule = classify_weight(w);
    let charts = classify_via_charts(w)?;
    let agreement = match &charts {
        None => Agreement::NotApplicable,
        Some(c) if c.same_outcome(&rule) => Agreement::Agree,
        Some(_) => Agreement::Disagree,
    };
    Ok(EnumRow { n: w.n.clone(), rule, charts, agreement })
}

pub const DEFAULT_BOUND: u128 = 1_000_000;

/// The n-tuple with lexicographic index `idx` in [0, p-1]^f.
pub fn nth_tuple(p: u64, f: usize, mut idx: u64) -> Vec<u64> {
    let mut n = vec![0; f];
    for slot in n.iter_mut().rev() {
        *slot = idx % p;
        idx /= p;
    }
    n
}

/// Every n in [0, p-1]^f (m = 0) in lexicographic order, classified both ways.
pub fn enumerate_weights(p: u64, f: usize, bound: u128, filter: Option<Verdict>) -> Result<Vec<EnumRow>> {
    if f == 0 {
        return Err(Error::InvalidWeight("f must be at least 1".into()));
    }
    let count = (p as u128).checked_pow(f as u32).unwrap_or(u128::MAX);
    if count > bound {
        return Err(Error::Bound { count, bound });
    }
    SerreWeight::from_n(p, &vec![0; f])?;
    let rows: Vec<EnumRow> = (0..count as u64)
        .into_par_iter()
        .map(|i| compare(&SerreWeight::from_n(p, &nth_tuple(p, f, i))?))
        .collect::<Result<_>>()?;
    Ok(match filter {
        None => rows,
        Some(v) => rows.into_iter().filter(|r| r.rule.verdict == v).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u64, n: &[u64]) -> SerreWeight {
        SerreWeight::from_n(p, n).unwrap()
    }

    #[test]
    fn rule_examples() {
        let d = classify_weight(&w(5, &[3, 3, 3]));
        assert_eq!((d.verdict, d.nonnormal_codim), (Verdict::NonNormal, Some(3)));
        let d = classify_weight(&w(5, &[0, 4]));
        assert_eq!((d.verdict, d.lci, d.sing_codim), (Verdict::NormalSingular, Some(true), Some(2)));
        let d = classify_weight(&w(7, &[0, 5, 6]));
        assert_eq!((d.verdict, d.gorenstein, d.sing_codim), (Verdict::NormalSingular, Some(false), Some(3)));
        assert_eq!(classify_weight(&w(5, &[4, 4])).rule, Rule::Steinberg);
        assert_eq!(classify_weight(&w(5, &[1, 2])).verdict, Verdict::Smooth);
    }

    #[test]
    fn chart_examples() {
        let d = classify_via_charts(&w(5, &[3, 3])).unwrap().unwrap();
        assert_eq!((d.verdict, d.nonnormal_codim), (Verdict::NonNormal, Some(2)));
        let d = classify_via_charts(&w(5, &[0, 4])).unwrap().unwrap();
        assert_eq!((d.verdict, d.lci, d.sing_codim), (Verdict::NormalSingular, Some(true), Some(2)));
        assert_eq!(classify_via_charts(&w(5, &[0])).unwrap(), None);
        assert_eq!(classify_weight(&w(5, &[0])).verdict, Verdict::Smooth);
    }

    #[test]
    fn mixed_run_lengths() {
        // runs of length 2 and 3: singular, not Gorenstein, codim 2
        let x = w(7, &[0, 6, 0, 5, 6]);
        let d = classify_weight(&x);
        assert_eq!((d.gorenstein, d.sing_codim), (Some(false), Some(2)));
        assert!(classify_via_charts(&x).unwrap().unwrap().same_outcome(&d));
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(enumerate_weights(5, 9, 1000, None), Err(Error::Bound { .. })));
        assert_eq!(enumerate_weights(5, 1, DEFAULT_BOUND, None).unwrap().len(), 5);
    }
}
