use std::fs;
use std::io::Write;
use std::path::Path;

use kmlab_core::affine::null_root;
use kmlab_core::nilpotency::{self, degree_of_word, NilpotencyError};
use kmlab_core::pairs::empirical_k;
use kmlab_core::verify::{self, Status, VerifyError, VerifyParams};
use kmlab_core::{Gcm, GcmError, Kind, Word};
use serde_json::json;

use crate::config::{Config, FileConfig, Format, Overrides};
use crate::output::{self, write_atomic, SummaryFile};
use crate::{cache, Cli, Command, Failure};

const SWEEP_DEFAULT_LENGTH: usize = 8;
const KBOUND_DEFAULT_HEIGHT: i64 = 6;

pub fn run(cli: Cli) -> Result<(), Failure> {
    if let Command::Classify { path } = &cli.command {
        return classify(path);
    }
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let mut flags = Overrides {
        workers: cli.workers,
        cache_dir: cli.cache_dir,
        ..Default::default()
    };
    match &cli.command {
        Command::Classify { .. } => unreachable!(),
        Command::Degree { gcm, .. } => flags.gcm_path = gcm.gcm.clone(),
        Command::Sweep {
            gcm,
            max_length,
            out,
            format,
        } => {
            flags.gcm_path = gcm.gcm.clone();
            flags.max_length = *max_length;
            flags.out_path = out.clone();
            flags.format = *format;
        }
        Command::Verify {
            gcm,
            max_height,
            max_length,
            max_steps,
            out,
            ..
        } => {
            flags.gcm_path = gcm.gcm.clone();
            flags.max_height = *max_height;
            flags.max_length = *max_length;
            flags.max_steps = *max_steps;
            flags.out_path = out.clone();
        }
        Command::Kbound {
            gcm, max_height, ..
        } => {
            flags.gcm_path = gcm.gcm.clone();
            flags.max_height = *max_height;
        }
    }
    let config = Config::resolve(flags, file)?;
    if let Some(n) = config.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(format!("cannot start worker pool: {e}")))?;
    }
    let gcm = load_gcm(&config.gcm_path).map_err(|f| Failure::usage(f.message))?;
    match cli.command {
        Command::Classify { .. } => unreachable!(),
        Command::Degree { word, json, .. } => degree(&gcm, &word, json),
        Command::Sweep { .. } => sweep(&gcm, &config),
        Command::Verify {
            suite,
            samples,
            seed,
            ..
        } => {
            let defaults = VerifyParams::default();
            let params = VerifyParams {
                max_height: config.max_height.unwrap_or(defaults.max_height),
                max_length: config.max_length.unwrap_or(defaults.max_length),
                samples: samples.unwrap_or(defaults.samples),
                seed: seed.unwrap_or(defaults.seed),
                max_steps: config.max_steps,
            };
            verify_suite(&gcm, suite, &params, config.out_path.as_deref())
        }
        Command::Kbound { json, .. } => kbound(
            &gcm,
            config.max_height.unwrap_or(KBOUND_DEFAULT_HEIGHT),
            config.cache_dir.as_deref(),
            json,
        ),
    }
}

/// Unreadable or malformed files are usage errors; axiom violations are
/// check failures.
fn load_gcm(path: &Path) -> Result<Gcm, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Gcm::from_json(&text).map_err(|e| match e {
        GcmError::Parse(_) => Failure::usage(format!("{}: {e}", path.display())),
        _ => Failure::new(
            Failure::CHECK,
            format!("{}: not a generalized Cartan matrix: {e}", path.display()),
        ),
    })
}

fn tuple(coords: &[i64]) -> String {
    let parts: Vec<String> = coords.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn classify_line(gcm: &Gcm) -> String {
    let ty = gcm.classify();
    if ty.components.len() == 1 {
        return match ty.kind {
            Kind::Affine => match null_root(gcm) {
                Ok(delta) => format!("Affine, δ={}", tuple(delta.coords())),
                Err(_) => "Affine".to_string(),
            },
            kind => kind.to_string(),
        };
    }
    let parts: Vec<String> = ty
        .components
        .iter()
        .map(|c| {
            let idx: Vec<String> = c.indices.iter().map(|i| (i + 1).to_string()).collect();
            format!("{{{}}} {}", idx.join(","), c.kind)
        })
        .collect();
    format!("{}, components: {}", ty.kind, parts.join("; "))
}

fn classify(path: &Path) -> Result<(), Failure> {
    let gcm = load_gcm(path)?;
    println!("{}", classify_line(&gcm));
    Ok(())
}

fn nilpotency_failure(e: NilpotencyError) -> Failure {
    match e {
        NilpotencyError::CapExceeded(_) => Failure::new(Failure::UNDECIDED, e.to_string()),
        NilpotencyError::Weyl(_) => Failure::usage(e.to_string()),
        _ => Failure::new(Failure::CHECK, e.to_string()),
    }
}

fn degree(gcm: &Gcm, word: &str, as_json: bool) -> Result<(), Failure> {
    let word = Word::parse(word).map_err(|e| Failure::usage(format!("bad word: {e}")))?;
    word.check(gcm)
        .map_err(|e| Failure::usage(format!("bad word: {e}")))?;
    let report = degree_of_word(gcm, &word).map_err(nilpotency_failure)?;
    if as_json {
        let hash = gcm.hash_hex();
        let record = output::SweepRecord::new(&hash, &report);
        println!(
            "{}",
            serde_json::to_string_pretty(&record).expect("record serializes")
        );
    } else {
        println!(
            "word {} (reduced {}, length {})",
            word, report.word, report.length
        );
        println!("degree {}", report.degree);
        println!(
            "inversion set size {}, longest nested chain {}",
            report.invset_size, report.max_chain
        );
        let terms: Vec<String> = report
            .witness
            .term_vectors()
            .iter()
            .map(|v| tuple(v.coords()))
            .collect();
        let sums: Vec<String> = report
            .witness
            .partial_sums()
            .iter()
            .map(|r| tuple(r.root.coords()))
            .collect();
        println!("witness {}", terms.join(" "));
        println!("partial sums {}", sums.join(" "));
    }
    Ok(())
}

fn sweep(gcm: &Gcm, config: &Config) -> Result<(), Failure> {
    let max_length = config.max_length.unwrap_or(SWEEP_DEFAULT_LENGTH);
    let result = nilpotency::sweep(gcm, max_length).map_err(nilpotency_failure)?;
    let body = match config.format {
        Format::Csv => output::sweep_csv(&result.reports)?,
        Format::Json => output::sweep_json(gcm, &result.reports),
    };
    let summary = SummaryFile::new(gcm, result.reports.len(), &result.summary);
    let mut summary_json = serde_json::to_vec_pretty(&summary).expect("summary serializes");
    summary_json.push(b'\n');
    match &config.out_path {
        Some(out) => {
            write_atomic(out, &body)?;
            write_atomic(&output::summary_path(out), &summary_json)?;
            println!(
                "{} records, global max {}, plateau {}",
                result.reports.len(),
                result.summary.global_max,
                result.summary.plateau
            );
        }
        None => std::io::stdout()
            .write_all(&body)
            .map_err(|e| Failure::usage(e.to_string()))?,
    }
    Ok(())
}

fn verify_suite(
    gcm: &Gcm,
    suite: verify::Suite,
    params: &VerifyParams,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let reports = verify::run_suite(suite, gcm, params).map_err(|e| match e {
        VerifyError::NotApplicable(_) | VerifyError::UnknownSuite(_) => {
            Failure::usage(e.to_string())
        }
        VerifyError::Nilpotency(NilpotencyError::CapExceeded(_)) => {
            Failure::new(Failure::UNDECIDED, e.to_string())
        }
        _ => Failure::new(Failure::CHECK, e.to_string()),
    })?;
    for r in &reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Undecided => "undecided",
        };
        println!("{}: {} (scanned {})", r.check, status, r.scanned_count);
        if let Some(c) = &r.counterexample {
            println!("  counterexample: {c}");
        }
    }
    if let Some(out) = out {
        let mut bytes = serde_json::to_vec_pretty(&reports).expect("reports serialize");
        bytes.push(b'\n');
        write_atomic(out, &bytes)?;
    }
    if reports.iter().any(|r| r.status == Status::Fail) {
        Err(Failure::new(Failure::CHECK, ""))
    } else if reports.iter().any(|r| r.status == Status::Undecided) {
        Err(Failure::new(Failure::UNDECIDED, ""))
    } else {
        Ok(())
    }
}

fn kbound(
    gcm: &Gcm,
    max_height: i64,
    cache_dir: Option<&Path>,
    as_json: bool,
) -> Result<(), Failure> {
    let table = cache::root_table(cache_dir, gcm, max_height)?;
    let witness = empirical_k(&table);
    if as_json {
        let value = json!({
            "schema_version": output::SCHEMA_VERSION,
            "tool_version": output::TOOL_VERSION,
            "gcm_hash": gcm.hash_hex(),
            "max_height": max_height,
            "real_roots": table.len(),
            "k": witness,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("value serializes")
        );
    } else {
        match witness {
            Some(w) => println!(
                "K = {} at height {max_height} (alpha {}, beta {})",
                w.value,
                tuple(w.alpha.coords()),
                tuple(w.beta.coords())
            ),
            None => {
                println!("K undefined at height {max_height}: no prenilpotent pair sums to a root")
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use kmlab_core::reference;

    #[test]
    fn classify_lines() {
        assert_eq!(classify_line(&reference::a2()), "Finite");
        assert_eq!(classify_line(&reference::a1_affine()), "Affine, δ=(1,1)");
        let split = Gcm::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(
            classify_line(&split),
            "Finite, components: {1} Finite; {2} Finite"
        );
    }
}
