#![allow(dead_code)]

mod reference;

use std::fs;
use std::path::{Path, PathBuf};

use hcconfl_core::testing::{random_instance, TinyConfig};
use hcconfl_core::{benchmark_name, merge_instances, parse_stp, parse_uflp, HarmonyVector, Instance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use reference::REFERENCE_OBJECTIVES;

/// Fixed corpus of random tiny instances.
pub fn tiny_corpus(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = TinyConfig::default();
    (0..count)
        .map(|i| random_instance(&mut rng, &cfg).with_name(format!("tiny{i}")))
        .collect()
}

/// Every vector with the root open.
pub fn root_open_vectors(instance: &Instance) -> Vec<HarmonyVector> {
    let n = instance.facility_count();
    let root = instance.root_position();
    (0..1u32 << n)
        .filter(|m| m >> root & 1 == 1)
        .map(|m| HarmonyVector::new((0..n).map(|p| m >> p & 1 == 1).collect()))
        .collect()
}

/// Opening plus cheapest-assignment cost of a facility set, written out
/// directly from the definitions.
pub fn brute_force_assignment_and_opening(instance: &Instance, open: &HarmonyVector) -> (f64, f64) {
    let mut opening = 0.0;
    for p in 0..instance.facility_count() {
        if open.is_open(p) {
            opening += instance.opening_cost(p);
        }
    }
    let mut assignment = 0.0;
    for k in 0..instance.customer_count() {
        let mut best = f64::INFINITY;
        for p in 0..instance.facility_count() {
            if open.is_open(p) && instance.assignment_cost(p, k) < best {
                best = instance.assignment_cost(p, k);
            }
        }
        assignment += best;
    }
    (assignment, opening)
}

pub const ORLIB_ENV: &str = "HCCONFL_ORLIB_DIR";

/// Directory holding Steiner and facility location benchmark files.
pub fn orlib_dir() -> PathBuf {
    std::env::var_os(ORLIB_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            let workspace = Path::new(env!("CARGO_MANIFEST_DIR")).ancestors().nth(2).unwrap();
            workspace.join("data").join("orlib")
        })
        .components()
        .collect()
}

fn find_file(dir: &Path, stem: &str) -> Option<PathBuf> {
    let mut dirs = vec![dir.to_path_buf()];
    let mut found = None;
    while let Some(d) = dirs.pop() {
        let Ok(entries) = fs::read_dir(&d) else { continue };
        for e in entries.flatten() {
            let path = e.path();
            if path.is_dir() {
                dirs.push(path);
            } else if path
                .file_stem()
                .and_then(|s| s.to_str())
                .is_some_and(|s| s.eq_ignore_ascii_case(stem))
            {
                found = Some(path);
            }
        }
    }
    found
}

/// Splits `C5mp1` into the Steiner file stem `steinc5` and facility file
/// stem `mp1`.
pub fn split_benchmark(name: &str) -> (String, String) {
    let at = name.find('m').expect("benchmark names contain the facility part");
    (format!("stein{}", name[..at].to_lowercase()), name[at..].to_string())
}

/// Loads a merged benchmark instance, or explains which file is missing.
pub fn load_benchmark(name: &str, hop: usize) -> Result<Instance, String> {
    let dir = orlib_dir();
    let (stp, uflp) = split_benchmark(name);
    let stp_path = find_file(&dir, &stp).ok_or_else(|| format!("no {stp} file"))?;
    let uflp_path = find_file(&dir, &uflp).ok_or_else(|| format!("no {uflp} file"))?;
    let read = |p: &Path| fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    let graph = parse_stp(&read(&stp_path)?).map_err(|e| format!("{}: {e}", stp_path.display()))?;
    let data = parse_uflp(&read(&uflp_path)?).map_err(|e| format!("{}: {e}", uflp_path.display()))?;
    let merged = merge_instances(benchmark_name(&stp, &uflp), &graph, &data, hop).map_err(|e| e.to_string())?;
    Ok(merged)
}

pub fn reference_objective(name: &str, hop: usize) -> f64 {
    REFERENCE_OBJECTIVES
        .iter()
        .find(|(h, _)| *h == hop)
        .and_then(|(_, rows)| rows.iter().find(|(n, _)| *n == name))
        .map(|(_, v)| *v)
        .unwrap_or_else(|| panic!("no reference value for {name} at hop {hop}"))
}
