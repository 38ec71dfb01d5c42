//! Batch tables of Riley polynomials, knot classes, and the combined report.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::epimorphism::{check_injectivity_sbar_in, check_equal_polynomials_in, scan_epi_pairs_in, ClassificationReport, EpiPair};
use crate::poly::IntPoly;
use crate::riley::{compute_records, RileyError, RileyRecord};
use crate::two_bridge::{enumerate_s_plus, enumerate_sbar, TwoBridgePair};

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error on {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("cache {path} line {line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("cache {path} line {line} is poisoned: {source}")]
    Mismatch { path: String, line: usize, source: RileyError },
}

/// Riley records in `(alpha, beta)` order with an index by exact polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RileyTable {
    pub max_alpha: i64,
    pub records: Vec<RileyRecord>,
    #[serde(skip)]
    index: BTreeMap<IntPoly, Vec<TwoBridgePair>>,
}

impl RileyTable {
    pub fn from_records(max_alpha: i64, mut records: Vec<RileyRecord>) -> Self {
        records.sort_by_key(|r| r.pair);
        let mut index: BTreeMap<IntPoly, Vec<TwoBridgePair>> = BTreeMap::new();
        for r in &records {
            index.entry(r.phi.clone()).or_default().push(r.pair);
        }
        RileyTable { max_alpha, records, index }
    }

    /// Pairs whose Riley polynomial is exactly `phi`.
    pub fn lookup(&self, phi: &IntPoly) -> &[TwoBridgePair] {
        self.index.get(phi).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn distinct_polynomials(&self) -> usize {
        self.index.len()
    }

    pub fn record(&self, pair: &TwoBridgePair) -> Option<&RileyRecord> {
        self.records.binary_search_by_key(pair, |r| r.pair).ok().map(|i| &self.records[i])
    }

    /// Adds `S(alpha, -beta)` for every record, using `phi` unchanged and `eps` negated.
    pub fn with_mirrors(&self) -> RileyTable {
        let mut records = self.records.clone();
        for r in &self.records {
            if r.pair.beta() > 0 {
                records.push(RileyRecord { pair: r.pair.mirror(), eps: r.eps.negated(), phi: r.phi.clone() });
            }
        }
        RileyTable::from_records(self.max_alpha, records)
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "alpha,beta,degree,coefficients")?;
        for r in &self.records {
            let coeffs: Vec<String> = r.phi.coeffs().iter().map(ToString::to_string).collect();
            writeln!(out, "{},{},{},{}", r.pair.alpha(), r.pair.beta(), r.phi.degree(), coeffs.join(";"))?;
        }
        Ok(())
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        for r in &self.records {
            writeln!(out, "{}  phi = {}", r.pair, r.phi)?;
        }
        Ok(())
    }
}

/// The table over `S_+` up to `max_alpha`, optionally with mirror images.
pub fn build_table(max_alpha: i64, include_mirrors: bool) -> RileyTable {
    let table = RileyTable::from_records(max_alpha, compute_records(&enumerate_s_plus(max_alpha)));
    if include_mirrors {
        table.with_mirrors()
    } else {
        table
    }
}

/// Reads JSON-lines records and recomputes each one; any difference is an error.
pub fn read_cache(path: &Path) -> Result<Vec<RileyRecord>, CacheError> {
    let display = path.display().to_string();
    let file = fs::File::open(path).map_err(|source| CacheError::Io { path: display.clone(), source })?;
    let mut records = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| CacheError::Io { path: display.clone(), source })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RileyRecord = serde_json::from_str(&line).map_err(|e| CacheError::Parse {
            path: display.clone(),
            line: n + 1,
            message: e.to_string(),
        })?;
        record
            .verify()
            .map_err(|source| CacheError::Mismatch { path: display.clone(), line: n + 1, source })?;
        records.push(record);
    }
    Ok(records)
}

pub fn write_cache(path: &Path, records: &[RileyRecord]) -> Result<(), CacheError> {
    let display = path.display().to_string();
    let io_err = |source| CacheError::Io { path: display.clone(), source };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    for r in records.iter().filter(|r| r.pair.beta() > 0) {
        serde_json::to_writer(&mut out, r).map_err(|e| io_err(e.into()))?;
        out.write_all(b"\n").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// `build_table` backed by a JSON-lines cache. Cached records are verified on
/// read; missing ones are computed and the cache is rewritten when it grew.
pub fn build_table_cached(max_alpha: i64, include_mirrors: bool, cache: &Path) -> Result<RileyTable, CacheError> {
    let mut known: BTreeMap<TwoBridgePair, RileyRecord> = BTreeMap::new();
    if cache.exists() {
        for r in read_cache(cache)? {
            known.insert(r.pair, r);
        }
    }
    let missing: Vec<TwoBridgePair> =
        enumerate_s_plus(max_alpha).into_iter().filter(|p| !known.contains_key(p)).collect();
    let grew = !missing.is_empty() || !cache.exists();
    for r in compute_records(&missing) {
        known.insert(r.pair, r);
    }
    if grew {
        let all: Vec<RileyRecord> = known.values().cloned().collect();
        write_cache(cache, &all)?;
    }
    let records = known.into_values().filter(|r| r.pair.alpha() <= max_alpha).collect();
    let table = RileyTable::from_records(max_alpha, records);
    Ok(if include_mirrors { table.with_mirrors() } else { table })
}

/// An equivalence class of knots up to mirror image, restricted to `S_+`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotClass {
    pub canonical: TwoBridgePair,
    pub members: Vec<TwoBridgePair>,
}

pub fn knot_classes(max_alpha: i64) -> Vec<KnotClass> {
    let mut classes: BTreeMap<TwoBridgePair, Vec<TwoBridgePair>> = BTreeMap::new();
    for p in enumerate_s_plus(max_alpha) {
        classes.entry(p.canonical()).or_default().push(p);
    }
    classes
        .into_iter()
        .map(|(canonical, members)| KnotClass { canonical, members })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaSummary {
    pub alpha: i64,
    pub s_plus: usize,
    pub sbar: usize,
    pub classes: usize,
}

/// Everything computed from one table: classes, the two scans, and the epimorphism list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullReport {
    pub max_alpha: i64,
    pub per_alpha: Vec<AlphaSummary>,
    pub classes: Vec<KnotClass>,
    pub equal_polynomials: ClassificationReport,
    pub injectivity: ClassificationReport,
    pub epi_pairs: Vec<EpiPair>,
    pub table: RileyTable,
}

impl FullReport {
    pub fn passed(&self) -> bool {
        self.equal_polynomials.is_clean() && self.injectivity.is_injective()
    }
}

pub fn full_report(max_alpha: i64) -> FullReport {
    full_report_from(build_table(max_alpha, false))
}

/// Builds the report from an existing `S_+` table so all parts share it.
pub fn full_report_from(table: RileyTable) -> FullReport {
    let max_alpha = table.max_alpha;
    let mirrored = table.with_mirrors();
    let equal_polynomials = check_equal_polynomials_in(max_alpha, &mirrored.records);
    let sbar = enumerate_sbar(max_alpha);
    let sbar_records: Vec<RileyRecord> =
        sbar.iter().filter_map(|p| table.record(p).cloned()).collect();
    let injectivity = check_injectivity_sbar_in(max_alpha, &sbar_records);
    let epi_pairs = scan_epi_pairs_in(&table.records);
    let classes = knot_classes(max_alpha);
    let per_alpha = (3..=max_alpha)
        .step_by(2)
        .map(|alpha| AlphaSummary {
            alpha,
            s_plus: table.records.iter().filter(|r| r.pair.alpha() == alpha).count(),
            sbar: sbar.iter().filter(|p| p.alpha() == alpha).count(),
            classes: classes.iter().filter(|c| c.canonical.alpha() == alpha).count(),
        })
        .collect();
    FullReport { max_alpha, per_alpha, classes, equal_polynomials, injectivity, epi_pairs, table }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: i64, b: i64) -> TwoBridgePair {
        TwoBridgePair::new(a, b).unwrap()
    }

    #[test]
    fn table_sizes() {
        assert_eq!(build_table(7, false).records.len(), 6);
        let t3 = build_table(3, false);
        assert_eq!(t3.records.len(), 1);
        assert_eq!(t3.records[0].phi, IntPoly::from_i64s(&[1, -1]));
        let plain = build_table(15, false);
        let mirrored = build_table(15, true);
        assert_eq!(mirrored.records.len(), 2 * plain.records.len());
        assert_eq!(mirrored.distinct_polynomials(), plain.distinct_polynomials());
    }

    #[test]
    fn materialized_mirrors_match_direct_computation() {
        for r in build_table(21, true).records {
            assert_eq!(r, RileyRecord::compute(r.pair));
        }
    }

    #[test]
    fn lookup_by_polynomial() {
        let t = build_table(15, false);
        assert_eq!(t.lookup(&IntPoly::from_i64s(&[1, -2, 1, -1])), &[pair(7, 3)]);
        assert!(t.lookup(&IntPoly::from_i64s(&[5])).is_empty());
    }

    #[test]
    fn classes_by_alpha() {
        let classes = knot_classes(7);
        let at = |a: i64| classes.iter().filter(|c| c.canonical.alpha() == a).cloned().collect::<Vec<_>>();
        assert_eq!(at(3), vec![KnotClass { canonical: pair(3, 1), members: vec![pair(3, 1)] }]);
        assert_eq!(
            at(5),
            vec![
                KnotClass { canonical: pair(5, 1), members: vec![pair(5, 1)] },
                KnotClass { canonical: pair(5, 3), members: vec![pair(5, 3)] },
            ]
        );
        assert_eq!(
            at(7),
            vec![
                KnotClass { canonical: pair(7, 1), members: vec![pair(7, 1)] },
                KnotClass { canonical: pair(7, 3), members: vec![pair(7, 3), pair(7, 5)] },
            ]
        );
        assert!(knot_classes(41).iter().all(|c| !c.members.is_empty()));
    }

    #[test]
    fn full_reports() {
        let r7 = full_report(7);
        assert!(r7.passed());
        assert!(r7.epi_pairs.is_empty());
        assert_eq!(r7.injectivity.sbar_size, 5);
        let r15 = full_report(15);
        assert!(r15.passed());
        assert!(r15.epi_pairs.iter().any(|e| e.target == pair(3, 1)));
        let r3 = full_report(3);
        assert!(r3.passed());
        assert_eq!(r3.classes.len(), 1);
        assert_eq!(r3.per_alpha.len(), 1);
    }

    #[test]
    fn csv_and_jsonl_rendering() {
        let t = build_table(5, false);
        let mut csv = Vec::new();
        t.write_csv(&mut csv).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "alpha,beta,degree,coefficients\n3,1,1,1;-1\n5,1,2,1;-3;1\n5,3,2,1;1;1\n"
        );
        let mut jl = Vec::new();
        t.write_jsonl(&mut jl).unwrap();
        let text = String::from_utf8(jl).unwrap();
        assert_eq!(text.lines().next().unwrap(), r#"{"alpha":3,"beta":1,"eps":[1,1],"phi":["1","-1"]}"#);
    }

    #[test]
    fn cache_round_trip_and_poisoning() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("riley.jsonl");
        let fresh = build_table_cached(9, false, &path).unwrap();
        assert_eq!(fresh, build_table(9, false));
        let warm = build_table_cached(9, false, &path).unwrap();
        assert_eq!(warm, fresh);
        let smaller = build_table_cached(5, false, &path).unwrap();
        assert_eq!(smaller, build_table(5, false));

        let text = fs::read_to_string(&path).unwrap();
        let poisoned = text.replacen(r#""phi":["1","-1"]"#, r#""phi":["1","-2"]"#, 1);
        fs::write(&path, poisoned).unwrap();
        assert!(matches!(build_table_cached(9, false, &path), Err(CacheError::Mismatch { line: 1, .. })));

        fs::write(&path, "not json\n").unwrap();
        assert!(matches!(build_table_cached(9, false, &path), Err(CacheError::Parse { .. })));
    }

    #[test]
    fn unwritable_cache_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing-dir").join("cache.jsonl");
        assert!(matches!(build_table_cached(5, false, &path), Err(CacheError::Io { .. })));
    }
}
