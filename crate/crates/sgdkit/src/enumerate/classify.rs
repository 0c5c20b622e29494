//! Partitioning diagrams into Yamada classes.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{canonical_pd, Diagram};
use crate::yamada::{canonicalize, Mode, YamadaCtx};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassMember {
    pub crossings: usize,
    pub pd: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassEntry {
    pub id: usize,
    /// Canonical polynomial text for the mode.
    pub polynomial: String,
    /// Zero polynomial: the invariant cannot separate these diagrams.
    pub degenerate: bool,
    pub member_count: usize,
    pub min_crossings: usize,
    pub representative_pd: String,
    pub members: Vec<ClassMember>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReportTotals {
    pub shadows: usize,
    pub diagrams: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct PerCrossing {
    pub shadows: usize,
    pub diagrams: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassReport {
    pub mode: Mode,
    pub totals: ReportTotals,
    /// Keyed by crossing number (stringly keyed for JSON).
    pub per_crossing: BTreeMap<String, PerCrossing>,
    pub classes: Vec<ClassEntry>,
}

impl ClassReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse(format!("bad report: {e}")))
    }

    /// Summary rows: class id, polynomial, min crossings, member count.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class,polynomial,min_crossings,members\n");
        for c in &self.classes {
            out.push_str(&format!(
                "{},\"{}\",{},{}\n",
                c.id, c.polynomial, c.min_crossings, c.member_count
            ));
        }
        out
    }

    pub fn class_for(&self, polynomial: &str) -> Option<&ClassEntry> {
        self.classes.iter().find(|c| c.polynomial == polynomial)
    }
}

/// Groups diagrams by canonical Yamada polynomial. The representative of a
/// class has the fewest crossings, ties broken by least canonical PD text;
/// classes are ordered by polynomial text with the degenerate class last.
/// Output is independent of input order and parallel scheduling.
pub fn classify(diagrams: &[Diagram], mode: Mode) -> ClassReport {
    let evaluated: Vec<(String, bool, usize, String)> = diagrams
        .par_iter()
        .map_init(YamadaCtx::new, |ctx, d| {
            let poly = canonicalize(&ctx.yamada(d), mode);
            (
                poly.to_string(),
                poly.is_zero(),
                d.crossing_count(),
                canonical_pd(d, false),
            )
        })
        .collect();

    let mut groups: BTreeMap<(bool, String), Vec<ClassMember>> = BTreeMap::new();
    for (poly, degenerate, crossings, pd) in evaluated {
        groups
            .entry((degenerate, poly))
            .or_default()
            .push(ClassMember { crossings, pd });
    }

    let mut per_crossing: BTreeMap<String, PerCrossing> = BTreeMap::new();
    for d in diagrams {
        per_crossing
            .entry(d.crossing_count().to_string())
            .or_default()
            .diagrams += 1;
    }

    let mut classes = Vec::new();
    for (id, ((degenerate, polynomial), mut members)) in groups.into_iter().enumerate() {
        members.sort_by(|a, b| (a.crossings, &a.pd).cmp(&(b.crossings, &b.pd)));
        members.dedup();
        let rep = members[0].clone();
        classes.push(ClassEntry {
            id: id + 1,
            polynomial,
            degenerate,
            member_count: members.len(),
            min_crossings: rep.crossings,
            representative_pd: rep.pd,
            members,
        });
    }
    let totals = ReportTotals {
        shadows: 0,
        diagrams: diagrams.len(),
        classes: classes.len(),
    };
    ClassReport { mode, totals, per_crossing, classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, Chirality, MoveSpec};

    #[test]
    fn theta_and_kinked_theta_share_a_class() {
        let theta = parse_pd("V1[a,b,c] V2[c,b,a]").unwrap();
        let kinked = theta
            .apply_move(
                &MoveSpec::R1Insert { arc: 0, chirality: Chirality::Plus },
                Mode::Pliable,
            )
            .unwrap();
        let report = classify(&[theta.clone(), kinked], Mode::Pliable);
        assert_eq!(report.classes.len(), 1);
        assert_eq!(report.classes[0].member_count, 2);
        assert_eq!(report.classes[0].min_crossings, 0);
        assert_eq!(
            report.classes[0].representative_pd,
            canonical_pd(&theta, false)
        );
    }

    #[test]
    fn empty_input_empty_report() {
        let report = classify(&[], Mode::Pliable);
        assert!(report.classes.is_empty());
        assert_eq!(report.totals.diagrams, 0);
    }

    #[test]
    fn classify_is_idempotent() {
        let theta = parse_pd("V1[a,b,c] V2[c,b,a]").unwrap();
        let kinked = theta
            .apply_move(
                &MoveSpec::R1Insert { arc: 1, chirality: Chirality::Minus },
                Mode::Pliable,
            )
            .unwrap();
        let first = classify(&[theta, kinked], Mode::Pliable);
        let members: Vec<Diagram> = first
            .classes
            .iter()
            .flat_map(|c| c.members.iter().map(|m| parse_pd(&m.pd).unwrap()))
            .collect();
        let second = classify(&members, Mode::Pliable);
        assert_eq!(first.classes.len(), second.classes.len());
        for (a, b) in first.classes.iter().zip(second.classes.iter()) {
            assert_eq!(a.polynomial, b.polynomial);
            assert_eq!(a.member_count, b.member_count);
        }
    }
}
