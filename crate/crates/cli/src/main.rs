use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use covtype::bounds::{
    best_ct_lower, ct_lower_from_tuple, general_moore_upper, moore_free_ct, moore_table, products_table,
    projective_table, unitary_table, SpaceProfile, CITE_FREE_MOORE, CITE_GENERAL_MOORE, CITE_TUPLE,
};
use covtype::cohomology::{cup_length, essential_report, essential_tuples};
use covtype::constructions::{moore_free_witness, moore_sum_witness, WitnessCertificate};
use covtype::homology::{betti_over_field, homology_z};
use covtype::io::{load_complex, load_cover, save_complex, write_cplx};
use covtype::nerve::{is_good_cover_homological, nerve, star_cover, CoverSpec};
use covtype::oracle::{exists_profile_with, max_betti_with, EnumerationConfig};
use covtype::{Coefficients, DegreeTuple, Error, HomologyProfile, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "covtype",
    version,
    about = "Homology, cup products and covering-type bounds for simplicial complexes"
)]
struct Cli {
    /// Output as human-readable text or as JSON records, one per line.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Print run metadata to stderr.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Projective,
    Unitary,
    Moore,
    Products,
}

/// `z` for integral homology, otherwise a field.
#[derive(Clone, Copy)]
enum HomologyCoeff {
    Integers,
    Field(Coefficients),
}

fn parse_homology_coeff(s: &str) -> Result<HomologyCoeff, String> {
    if s.eq_ignore_ascii_case("z") {
        return Ok(HomologyCoeff::Integers);
    }
    s.parse::<Coefficients>()
        .map(HomologyCoeff::Field)
        .map_err(|e| e.to_string())
}

fn parse_field(s: &str) -> Result<Coefficients, String> {
    s.parse::<Coefficients>().map_err(|e| e.to_string())
}

fn parse_tuple(s: &str) -> Result<DegreeTuple, String> {
    s.parse::<DegreeTuple>().map_err(|e| e.to_string())
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{x}` is not a non-negative integer"))
        })
        .collect()
}

#[derive(Subcommand)]
enum Command {
    /// Reduced homology over Z, Q or F_p.
    Homology {
        file: String,
        #[arg(long, default_value = "z", value_parser = parse_homology_coeff)]
        coeff: HomologyCoeff,
    },
    /// Cup-length of the cohomology ring.
    CupLength {
        file: String,
        #[arg(long, value_parser = parse_field)]
        coeff: Coefficients,
    },
    /// Degree tuples carried by nonzero cup products.
    Essential {
        file: String,
        #[arg(long, value_parser = parse_field)]
        coeff: Coefficients,
        /// Longest product to search; defaults to the dimension.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Lower bounds for covering type.
    #[command(group = clap::ArgGroup::new("source").required(true))]
    Bounds {
        /// Degrees of an essential product, e.g. 1,1,2.
        #[arg(long, group = "source", value_parser = parse_tuple)]
        tuple: Option<DegreeTuple>,
        /// A space profile in TOML.
        #[arg(long, group = "source")]
        profile: Option<String>,
        /// Derive the profile from a complex.
        #[arg(long, group = "source")]
        complex: Option<String>,
        /// Fields used for cup products with --complex.
        #[arg(long, value_delimiter = ',', default_values = ["q", "f2"], value_parser = parse_field)]
        coeff: Vec<Coefficients>,
    },
    /// Bound tables for families of spaces.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Covering type of a Moore space, with an optional witness complex.
    Moore {
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        degree: u64,
        /// Cyclic torsion orders, e.g. 2,3.
        #[arg(long, value_parser = parse_u64_list)]
        torsion: Option<Vec<u64>>,
        /// Write the witness complex here.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Nerve of a cover by unions of open vertex stars.
    Nerve {
        file: String,
        /// A cover file, or `stars` for the cover by single vertex stars.
        #[arg(long, default_value = "stars")]
        cover: String,
        /// Check every intersection for acyclicity.
        #[arg(long)]
        check_good: bool,
        #[arg(long)]
        output: Option<String>,
    },
    /// Exhaustive search over subcomplexes of a simplex.
    #[command(group = clap::ArgGroup::new("query").required(true))]
    Search {
        #[arg(long)]
        vertices: usize,
        /// Target homology in the `k: betti=b torsion=[..]` line format.
        #[arg(long, group = "query")]
        profile: Option<String>,
        /// Report the largest rational Betti number in this degree.
        #[arg(long, group = "query")]
        max_betti: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Suspension of a complex.
    Suspend {
        file: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// One-point union along top-dimensional facets.
    Wedge {
        first: String,
        second: String,
        #[arg(long)]
        output: Option<String>,
    },
}

/// What a command prints, in both output formats.
#[derive(Default)]
struct Output {
    text: String,
    records: Vec<Value>,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Records => {
                    for r in &out.records {
                        println!("{r}");
                    }
                }
            }
            if cli.verbose {
                eprintln!(
                    "covtype {} finished in {:.3}s",
                    env!("CARGO_PKG_VERSION"),
                    started.elapsed().as_secs_f64()
                );
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}

fn run(command: &Command) -> covtype::Result<Output> {
    match command {
        Command::Homology { file, coeff } => homology(&load_complex(file)?, *coeff),
        Command::CupLength { file, coeff } => {
            let cl = cup_length(&load_complex(file)?, *coeff)?;
            let mut out = Output::default();
            out.line(format!("cup-length over {coeff}: {cl}"));
            out.records
                .push(json!({"command": "cup-length", "coefficients": coeff.to_string(), "cup_length": cl}));
            Ok(out)
        }
        Command::Essential { file, coeff, max_len } => {
            let k = load_complex(file)?;
            let tuples = essential_tuples(&k, *coeff, max_len.unwrap_or(k.dim().max(1)))?;
            let mut out = Output {
                text: essential_report(&tuples, *coeff),
                records: Vec::new(),
            };
            if tuples.is_empty() {
                out.line(format!("no nonzero products over {coeff}"));
            }
            out.records.extend(tuples.iter().map(
                |t| json!({"command": "essential", "coefficients": coeff.to_string(), "tuple": t.degrees()}),
            ));
            Ok(out)
        }
        Command::Bounds {
            tuple,
            profile,
            complex,
            coeff,
        } => bounds(tuple, profile, complex, coeff),
        Command::Table { kind, max_n } => {
            let table = match kind {
                TableKind::Projective => projective_table(*max_n),
                TableKind::Unitary => unitary_table(*max_n),
                TableKind::Moore => moore_table(*max_n),
                TableKind::Products => products_table(*max_n),
            };
            let mut out = Output {
                text: table.to_string(),
                records: Vec::new(),
            };
            out.records.extend(table.rows.iter().map(|r| {
                let note = r.footnote.map(|i| table.footnotes[i - 1].clone());
                json!({"command": "table", "table": table.title, "row": r, "footnote_text": note})
            }));
            Ok(out)
        }
        Command::Moore {
            rank,
            degree,
            torsion,
            witness,
        } => moore(
            *rank,
            *degree,
            torsion.as_deref().unwrap_or(&[]),
            witness.as_deref(),
        ),
        Command::Nerve {
            file,
            cover,
            check_good,
            output,
        } => nerve_command(&load_complex(file)?, cover, *check_good, output.as_deref()),
        Command::Search {
            vertices,
            profile,
            max_betti,
            budget,
        } => search(*vertices, profile.as_deref(), *max_betti, *budget),
        Command::Suspend { file, output } => {
            emit_complex("suspend", &load_complex(file)?.suspension(), output.as_deref())
        }
        Command::Wedge {
            first,
            second,
            output,
        } => {
            let w = load_complex(first)?.wedge_top(&load_complex(second)?);
            emit_complex("wedge", &w, output.as_deref())
        }
    }
}

fn homology(k: &SimplicialComplex, coeff: HomologyCoeff) -> covtype::Result<Output> {
    let mut out = Output::default();
    match coeff {
        HomologyCoeff::Integers => {
            let h = homology_z(k);
            out.text = h.to_string();
            for (deg, d) in h.degrees.iter().enumerate() {
                out.records.push(json!({
                    "command": "homology", "coefficients": "Z", "degree": deg,
                    "betti": d.betti, "torsion": d.torsion,
                }));
            }
        }
        HomologyCoeff::Field(c) => {
            for (deg, b) in betti_over_field(k, c)?.into_iter().enumerate() {
                out.line(format!("{deg}: betti={b}"));
                out.records.push(json!({
                    "command": "homology", "coefficients": c.to_string(), "degree": deg, "betti": b,
                }));
            }
        }
    }
    Ok(out)
}

fn bounds(
    tuple: &Option<DegreeTuple>,
    profile: &Option<String>,
    complex: &Option<String>,
    coeff: &[Coefficients],
) -> covtype::Result<Output> {
    let mut out = Output::default();
    if let Some(t) = tuple {
        let v = ct_lower_from_tuple(t);
        out.line(format!("ct >= {v} ({CITE_TUPLE}, tuple {t})"));
        out.records.push(json!({
            "command": "bounds", "target": "ct", "value": v, "citation": CITE_TUPLE, "tuple": t.degrees(),
        }));
        return Ok(out);
    }
    let profile = match (profile, complex) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            let p: SpaceProfile =
                toml::from_str(&text).map_err(|e| Error::InvalidProfile(e.message().to_string()))?;
            p.validate()?;
            p
        }
        (None, Some(path)) => SpaceProfile::from_complex(&load_complex(path)?, coeff)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let report = best_ct_lower(&profile)?;
    for d in &profile.derivations {
        out.line(format!("# {d}"));
    }
    write!(out.text, "{report}").expect("write to string");
    out.records
        .push(json!({"command": "bounds", "profile": profile, "report": report}));
    Ok(out)
}

fn moore(rank: u64, degree: u64, torsion: &[u64], witness: Option<&str>) -> covtype::Result<Output> {
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let mut out = Output::default();
    let (cert, record): (WitnessCertificate, Value) = if torsion.is_empty() {
        let ct = moore_free_ct(rank, degree);
        out.line(format!("ct = {ct}  ({CITE_FREE_MOORE})"));
        let cert = moore_free_witness(rank as usize, degree as usize)?;
        (
            cert,
            json!({"command": "moore", "rank": rank, "degree": degree, "ct": ct, "citation": CITE_FREE_MOORE}),
        )
    } else {
        let upper = general_moore_upper(rank, torsion, degree)?;
        out.line(format!("ct <= {upper}  ({CITE_GENERAL_MOORE})"));
        let ks: Vec<usize> = torsion.iter().map(|&k| k as usize).collect();
        let cert = moore_sum_witness(rank as usize, &ks, degree as usize)?;
        let record = json!({
            "command": "moore", "rank": rank, "degree": degree, "torsion": torsion,
            "ct_upper": upper, "citation": CITE_GENERAL_MOORE,
        });
        (cert, record)
    };
    write!(out.text, "{cert}").expect("write to string");
    let mut record = record;
    record["witness"] = json!(cert);
    out.records.push(record);
    if let Some(path) = witness {
        save_complex(path, &cert.complex)?;
    }
    Ok(out)
}

fn nerve_command(
    k: &SimplicialComplex,
    cover: &str,
    check_good: bool,
    output: Option<&str>,
) -> covtype::Result<Output> {
    let cover = if cover == "stars" {
        star_cover(k)
    } else {
        CoverSpec::new(load_cover(cover)?, k)?
    };
    let n = nerve(&cover, k)?;
    let mut out = Output::default();
    out.line(format!(
        "# nerve of a {}-element cover, f-vector {}",
        cover.len(),
        n.f_vector()
    ));
    out.text.push_str(&write_cplx(&n));
    let mut record =
        json!({"command": "nerve", "cover": cover.elements, "nerve": n, "f_vector": n.f_vector()});
    if check_good {
        let report = is_good_cover_homological(&cover, k)?;
        let failing: Vec<&_> = report.intersections.iter().filter(|v| !v.acyclic).collect();
        out.line(format!(
            "good cover ({}): {} ({} of {} intersections acyclic)",
            report.label,
            if report.all_acyclic { "yes" } else { "no" },
            report.intersections.len() - failing.len(),
            report.intersections.len()
        ));
        for v in &failing {
            let betti: Vec<String> = v.homology.betti_numbers().iter().map(usize::to_string).collect();
            out.line(format!(
                "not acyclic: {:?} reduced betti ({})",
                v.elements,
                betti.join(",")
            ));
        }
        record["good_cover"] = json!(report);
    }
    out.records.push(record);
    if let Some(path) = output {
        save_complex(path, &n)?;
    }
    Ok(out)
}

fn search(
    vertices: usize,
    profile: Option<&str>,
    max_betti: Option<usize>,
    budget: Option<u64>,
) -> covtype::Result<Output> {
    let mut config = EnumerationConfig::default();
    if let Some(b) = budget {
        config.node_budget = b;
    }
    let mut out = Output::default();
    if let Some(i) = max_betti {
        let best = max_betti_with(vertices, i, &config)?;
        out.line(format!(
            "max rank H_{i}(K; Q) over subcomplexes of the simplex on {vertices} vertices: {best}"
        ));
        out.records
            .push(json!({"command": "search", "vertices": vertices, "max_betti_degree": i, "value": best}));
        return Ok(out);
    }
    let path = profile.expect("clap requires one query");
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    let target: HomologyProfile = text.parse()?;
    let result = exists_profile_with(vertices, &target, &config)?;
    out.line(result.to_string());
    out.records
        .push(json!({"command": "search", "target": target, "result": result}));
    Ok(out)
}

fn emit_complex(command: &str, k: &SimplicialComplex, output: Option<&str>) -> covtype::Result<Output> {
    let mut out = Output::default();
    out.line(format!(
        "# {} vertices, f-vector {}",
        k.vertex_count(),
        k.f_vector()
    ));
    out.text.push_str(&write_cplx(k));
    out.records
        .push(json!({"command": command, "complex": k, "f_vector": k.f_vector()}));
    if let Some(path) = output {
        save_complex(path, k)?;
    }
    Ok(out)
}
