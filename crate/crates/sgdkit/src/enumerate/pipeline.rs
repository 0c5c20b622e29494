//! The end-to-end enumeration pipeline: shadows, resolutions, Yamada
//! classification, minimum-crossing representatives.

use std::time::{Duration, Instant};

use super::arch::SystemArchitecture;
use super::circular::enumerate_circular;
use super::classify::{classify, ClassReport};
use super::shadows::{enumerate_shadows, resolve, EnumOptions, Shadow};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Exhaustive,
    Circular,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub k_max: usize,
    pub generator: Generator,
    pub enum_opts: EnumOptions,
    /// Abort cleanly when the resolved diagram count would exceed this.
    pub limit_diagrams: Option<usize>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            k_max: 0,
            generator: Generator::Exhaustive,
            enum_opts: EnumOptions::default(),
            limit_diagrams: None,
        }
    }
}

/// Wall-clock stage timings; side information only, never part of the
/// report payload so runs stay byte-comparable.
#[derive(Clone, Debug, Default)]
pub struct PipelineStats {
    pub shadows_per_k: Vec<(usize, usize)>,
    pub generation: Duration,
    pub resolution: Duration,
    pub classification: Duration,
}

/// Runs generation, resolution, and classification, returning the report
/// plus timing stats.
pub fn pipeline(
    arch: &SystemArchitecture,
    opts: &PipelineOptions,
) -> Result<(ClassReport, PipelineStats)> {
    arch.validate()?;
    let mut stats = PipelineStats::default();

    let t0 = Instant::now();
    let shadows: Vec<Shadow> = match opts.generator {
        Generator::Exhaustive => {
            let mut all = Vec::new();
            for k in 0..=opts.k_max {
                let batch = enumerate_shadows(arch, k, opts.enum_opts)?;
                stats.shadows_per_k.push((k, batch.len()));
                all.extend(batch);
            }
            all
        }
        Generator::Circular => {
            let mut seen = std::collections::HashSet::new();
            let mut all = Vec::new();
            for s in enumerate_circular(arch, None)? {
                if s.crossing_count() <= opts.k_max && seen.insert(s.canonical_text()) {
                    all.push(s);
                }
            }
            all.sort_by_key(|s| s.canonical_text());
            for k in 0..=opts.k_max {
                let count = all.iter().filter(|s| s.crossing_count() == k).count();
                stats.shadows_per_k.push((k, count));
            }
            all
        }
    };
    stats.generation = t0.elapsed();

    let t1 = Instant::now();
    let mut diagrams = Vec::new();
    for s in &shadows {
        if let Some(limit) = opts.limit_diagrams {
            let add = 1usize << s.crossing_count();
            if diagrams.len() + add > limit {
                return Err(Error::Limit(format!(
                    "diagram count exceeds --limit-diagrams {limit}"
                )));
            }
        }
        diagrams.extend(resolve(s));
    }
    stats.resolution = t1.elapsed();

    let t2 = Instant::now();
    let mut report = classify(&diagrams, arch.model);
    stats.classification = t2.elapsed();

    report.totals.shadows = shadows.len();
    for (k, n) in &stats.shadows_per_k {
        report
            .per_crossing
            .entry(k.to_string())
            .or_default()
            .shadows = *n;
    }
    Ok((report, stats))
}

#[cfg(test)]
mod tests {
    use super::super::arch::theta_arch;
    use super::*;
    use crate::yamada::Mode;

    #[test]
    fn theta_kinks_collapse_into_base_class() {
        let arch = theta_arch();
        let opts = PipelineOptions { k_max: 1, ..Default::default() };
        let (report, _) = pipeline(&arch, &opts).unwrap();
        assert_eq!(report.mode, Mode::Pliable);
        // The zero-crossing theta class exists and holds one-crossing
        // members (curled or twisted thetas).
        let theta_class = report
            .classes
            .iter()
            .find(|c| c.min_crossings == 0)
            .expect("planar theta class");
        assert!(theta_class.member_count > 1);
        assert!(theta_class.members.iter().any(|m| m.crossings == 1));
    }

    #[test]
    fn limit_aborts_cleanly() {
        let arch = theta_arch();
        let opts = PipelineOptions {
            k_max: 1,
            limit_diagrams: Some(2),
            ..Default::default()
        };
        assert!(matches!(pipeline(&arch, &opts), Err(Error::Limit(_))));
    }

    #[test]
    fn k_zero_gives_planar_classes_only() {
        let arch = theta_arch();
        let opts = PipelineOptions::default();
        let (report, _) = pipeline(&arch, &opts).unwrap();
        assert!(report.classes.iter().all(|c| c.min_crossings == 0));
        assert_eq!(report.classes.len(), 1);
    }
}
