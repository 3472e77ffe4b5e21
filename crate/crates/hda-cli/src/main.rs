//! Batch front end: parse, validate, query, compose, and export.
//!
//! Exit codes: 0 success/affirmative, 1 negative answer, 2 input error,
//! 3 search budget exceeded.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hda_core::bisim::find_hd_bisimulation;
use hda_core::geometry::{dpath_label, validate_dpath, DPath};
use hda_core::hda::{coproduct, tensor, track_object, Hda, HdaError};
use hda_core::io;
use hda_core::ipomset::{glue, parallel, subsumes, Ipomset};
use hda_core::language::{enumerate_language, hda_from_language, member, DEFAULT_BUDGET};
use hda_core::precubical::{standard_cube, universal_events};
use hda_core::track::{track_label, validate_track, Track};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
}

#[derive(Parser)]
#[command(name = "hda", about = "Higher-dimensional automata toolbox", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an .ipom or .hda file (or a track/d-path against --hda)
    Validate {
        file: PathBuf,
        /// HDA context for track and d-path files
        #[arg(long)]
        hda: Option<PathBuf>,
    },
    /// Universal events of an HDA; exit 1 with a witness if inconsistent
    Events { hda: PathBuf },
    /// Standard cube over the given labels, in event order
    Cube {
        labels: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Track object of an interval ipomset
    TrackObject {
        ipom: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Label of a track (whitespace-separated cell ids)
    LabelTrack { hda: PathBuf, track: PathBuf },
    /// Label of a piecewise-linear d-path
    LabelPath { hda: PathBuf, dpath: PathBuf },
    /// Language membership of an ipomset in an HDA
    Member {
        ipom: PathBuf,
        hda: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Bounded language enumeration
    Lang {
        hda: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound_size: usize,
        #[arg(long, default_value_t = 12)]
        bound_steps: usize,
    },
    /// Gluing composition of two ipomsets
    Glue { left: PathBuf, right: PathBuf },
    /// Parallel composition of two ipomsets
    Par { left: PathBuf, right: PathBuf },
    /// Decompose an interval ipomset into discrete steps
    Decompose { ipom: PathBuf },
    /// Check subsumption left ⊑ right; prints the witness bijection
    Subsume { left: PathBuf, right: PathBuf },
    /// Coproduct of two HDAs
    Union {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tensor product of two HDAs
    Tensor {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Search for an hd-bisimulation between two HDAs
    Bisim { left: PathBuf, right: PathBuf },
    /// HDA generating the weak closure of the given interval ipomsets
    FromLang {
        ipoms: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// DOT export of the 1-skeleton
    ExportDot { hda: PathBuf },
}

/// Input or environment failure; always maps to exit 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_hda(path: &PathBuf) -> Result<Hda, InputError> {
    Ok(io::parse_hda(&read(path)?)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?)
}

fn read_ipom(path: &PathBuf) -> Result<Ipomset, InputError> {
    Ok(io::parse_ipomset(&read(path)?)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?)
}

fn read_track(path: &PathBuf, x: &Hda) -> Result<Track, InputError> {
    let cells = io::parse_track_cells(&read(path)?);
    Ok(validate_track(x, &cells)?)
}

fn read_dpath(path: &PathBuf, x: &Hda) -> Result<DPath, InputError> {
    let segs = io::parse_dpath(&read(path)?)?;
    Ok(validate_dpath(x, &segs)?)
}

fn print_hda(h: &Hda, format: Format) {
    match format {
        Format::Text => print!("{}", io::serialize_hda(h)),
        Format::Dot => print!("{}", io::export_dot(h)),
    }
}

fn print_ipom_canonical(p: &Ipomset) {
    print!("{}", io::serialize_ipomset(&p.canonical_form().to_ipomset()));
}

fn run(cmd: Cmd) -> Result<u8, InputError> {
    match cmd {
        Cmd::Validate { file, hda } => {
            match file.extension().and_then(|e| e.to_str()) {
                Some("ipom") => {
                    read_ipom(&file)?;
                }
                Some("hda") => {
                    read_hda(&file)?;
                }
                Some("track") => {
                    let ctx = hda.ok_or(InputError("--hda required for tracks".into()))?;
                    read_track(&file, &read_hda(&ctx)?)?;
                }
                Some("dpath") => {
                    let ctx = hda.ok_or(InputError("--hda required for d-paths".into()))?;
                    read_dpath(&file, &read_hda(&ctx)?)?;
                }
                _ => return Err(InputError("unknown file extension".into())),
            }
            println!("valid");
            Ok(0)
        }
        Cmd::Events { hda } => {
            let x = read_hda(&hda)?;
            match universal_events(&x.pc) {
                Ok(ev) => {
                    println!("events {}", ev.num_events);
                    for (e, id) in &ev.event_of_edge {
                        println!("edge {e} {id}");
                    }
                    Ok(0)
                }
                Err(w) => {
                    println!("inconsistent at {}", w.cell);
                    println!("chain {}", w.chain.join(" "));
                    Ok(1)
                }
            }
        }
        Cmd::Cube { labels, format } => {
            let pairs: Vec<(String, String)> = labels
                .iter()
                .enumerate()
                .map(|(i, l)| (format!("e{i}"), l.clone()))
                .collect();
            let refs: Vec<(&str, &str)> =
                pairs.iter().map(|(e, l)| (e.as_str(), l.as_str())).collect();
            let lin = hda_core::ipomset::LinearPomset::new(&refs);
            let (pc, top) = standard_cube(&lin);
            let mut edge_labels = BTreeMap::new();
            for e in pc.cells_of_dim(1) {
                let pos = e.chars().position(|c| c == '*').unwrap();
                edge_labels.insert(e.clone(), labels[pos].clone());
            }
            let bottom: String = if lin.is_empty() {
                top.clone()
            } else {
                "0".repeat(lin.len())
            };
            let topv: String = if lin.is_empty() {
                top.clone()
            } else {
                "1".repeat(lin.len())
            };
            let h = Hda::new(
                pc,
                &edge_labels,
                [bottom].into_iter().collect(),
                [topv].into_iter().collect(),
            )?;
            print_hda(&h, format);
            Ok(0)
        }
        Cmd::TrackObject { ipom, format } => {
            let p = read_ipom(&ipom)?;
            print_hda(&track_object(&p).hda, format);
            Ok(0)
        }
        Cmd::LabelTrack { hda, track } => {
            let x = read_hda(&hda)?;
            let t = read_track(&track, &x)?;
            print_ipom_canonical(&track_label(&x, &t));
            Ok(0)
        }
        Cmd::LabelPath { hda, dpath } => {
            let x = read_hda(&hda)?;
            let p = read_dpath(&dpath, &x)?;
            print_ipom_canonical(&dpath_label(&x, &p));
            Ok(0)
        }
        Cmd::Member { ipom, hda, budget } => {
            let p = read_ipom(&ipom)?;
            let x = read_hda(&hda)?;
            match member(&p, &x, budget) {
                Ok(true) => {
                    println!("member");
                    Ok(0)
                }
                Ok(false) => {
                    println!("not a member");
                    Ok(1)
                }
                Err(HdaError::Budget) => {
                    eprintln!("search budget exceeded");
                    Ok(3)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Lang {
            hda,
            bound_size,
            bound_steps,
        } => {
            let x = read_hda(&hda)?;
            let lang = enumerate_language(&x, bound_size, bound_steps);
            if lang.truncated {
                eprintln!("warning: bounds truncated the enumeration");
            }
            let mut first = true;
            for c in &lang.canon {
                if !first {
                    println!("--");
                }
                first = false;
                print!("{}", io::serialize_ipomset(&c.to_ipomset()));
            }
            Ok(0)
        }
        Cmd::Glue { left, right } => {
            let p = read_ipom(&left)?;
            let q = read_ipom(&right)?;
            print_ipom_canonical(&glue(&p, &q)?);
            Ok(0)
        }
        Cmd::Par { left, right } => {
            let p = read_ipom(&left)?;
            let q = read_ipom(&right)?;
            print_ipom_canonical(&parallel(&p, &q));
            Ok(0)
        }
        Cmd::Decompose { ipom } => {
            let p = read_ipom(&ipom)?;
            match p.decompose_interval() {
                Ok(pieces) => {
                    let mut first = true;
                    for piece in &pieces {
                        if !first {
                            println!("--");
                        }
                        first = false;
                        print!("{}", io::serialize_ipomset(piece));
                    }
                    Ok(0)
                }
                Err(_) => {
                    println!("not an interval ipomset");
                    Ok(1)
                }
            }
        }
        Cmd::Subsume { left, right } => {
            let p = read_ipom(&left)?;
            let q = read_ipom(&right)?;
            match subsumes(&p, &q) {
                Some(w) => {
                    for (a, b) in &w.bijection {
                        println!("{a} -> {b}");
                    }
                    Ok(0)
                }
                None => {
                    println!("no subsumption");
                    Ok(1)
                }
            }
        }
        Cmd::Union {
            left,
            right,
            format,
        } => {
            let x = read_hda(&left)?;
            let y = read_hda(&right)?;
            print_hda(&coproduct(&x, &y).0, format);
            Ok(0)
        }
        Cmd::Tensor {
            left,
            right,
            format,
        } => {
            let x = read_hda(&left)?;
            let y = read_hda(&right)?;
            print_hda(&tensor(&x, &y), format);
            Ok(0)
        }
        Cmd::Bisim { left, right } => {
            let x = read_hda(&left)?;
            let y = read_hda(&right)?;
            match find_hd_bisimulation(&x, &y) {
                Some(r) => {
                    for (a, b) in &r.pairs {
                        println!("{a} ~ {b}");
                    }
                    Ok(0)
                }
                None => {
                    println!("no hd-bisimulation");
                    Ok(1)
                }
            }
        }
        Cmd::FromLang { ipoms, format } => {
            let gens: Result<Vec<Ipomset>, InputError> = ipoms.iter().map(read_ipom).collect();
            let h = hda_from_language(&gens?)?;
            print_hda(&h, format);
            Ok(0)
        }
        Cmd::ExportDot { hda } => {
            let x = read_hda(&hda)?;
            print!("{}", io::export_dot(&x));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
