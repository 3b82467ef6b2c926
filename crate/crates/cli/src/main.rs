//! Command-line front end: widths, boundary profiles, capacities, weight
//! sequences, packings, geodesics and classification, emitted as CSV or
//! JSON at desk scale.

// `!(x > 0.0)` rejects NaN along with the out-of-domain side
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use output::{fmt12, fmt12_opt, json_array, Json};
use spherocap::ech;
use spherocap::geodesic::{self, PhaseState};
use spherocap::packing;
use spherocap::spheroid;
use spherocap::surface::SurfaceProfile;
use spherocap::toric::{self, ToricProfile};
use spherocap::Error as CoreError;
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "spherocap",
    version,
    about = "Toric profiles, Gromov widths and ECH capacities of disk cotangent bundles of spheres of revolution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (default: the subcommand's native one)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this path instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Absolute quadrature tolerance for sampled boundary curves
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Gromov width report for a spheroid
    Width {
        #[arg(long)]
        c: f64,
    },
    /// Width/alpha/beta/capacity table over a range of spheroid parameters
    Sweep {
        #[arg(long)]
        c_min: f64,
        #[arg(long)]
        c_max: f64,
        #[arg(long)]
        n: usize,
    },
    /// Boundary curve samples of the toric moment image
    Profile {
        /// Spheroid parameter (closed form)
        #[arg(long)]
        c: Option<f64>,
        /// Named profile computed by quadrature ("round")
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// ECH capacities: Zoll sequence for --ell, spheroid c_1/c_3 for --c
    Capacities {
        #[arg(long)]
        ell: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        /// Number of capacities (indices 0..count) for --ell
        #[arg(long, default_value_t = 9)]
        count: usize,
    },
    /// Weight sequence of a prolate spheroid's moment image
    Weights {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 2049)]
        samples: usize,
    },
    /// Explicit verified ball packing for a prolate spheroid
    Packing {
        #[arg(long)]
        c: f64,
    },
    /// Geodesic flow: trajectory CSV, or the closed short geodesic
    /// (--alpha-orbit), or the equatorial return angle (--first-return)
    Geodesic {
        #[arg(long)]
        c: f64,
        /// Shoot the four-crossing closed geodesic (0 < c < 1/2)
        #[arg(long, default_value_t = false)]
        alpha_orbit: bool,
        /// Report the angle between consecutive equator crossings at --j
        #[arg(long, default_value_t = false)]
        first_return: bool,
        /// Angular momentum for --first-return
        #[arg(long)]
        j: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        z: f64,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Initial p_z (default: completed to unit energy)
        #[arg(long)]
        pz: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        ptheta: f64,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
    },
    /// Convexity classification of the moment image
    Classify {
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 512)]
        samples: usize,
    },
}

enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Domain { .. } | CoreError::Bracket { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    let result = run(&cli.command, cli.format, tol);
    match result {
        Ok(text) => {
            let mut text = text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(3);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: &Command, format: Option<Format>, tol: f64) -> Result<String, CliError> {
    match cmd {
        Command::Width { c } => width_cmd(*c, format.unwrap_or(Format::Json)),
        Command::Sweep { c_min, c_max, n } => {
            sweep_cmd(*c_min, *c_max, *n, format.unwrap_or(Format::Csv))
        }
        Command::Profile { c, name, samples } => {
            let t = resolve_profile(*c, name.as_deref(), *samples, tol)?;
            profile_cmd(&t, format.unwrap_or(Format::Csv))
        }
        Command::Capacities { ell, c, count } => {
            capacities_cmd(*ell, *c, *count, format)
        }
        Command::Weights { c, depth, samples } => {
            weights_cmd(*c, *depth, *samples, format.unwrap_or(Format::Json))
        }
        Command::Packing { c } => {
            if format == Some(Format::Csv) {
                return Err(CliError::Usage("packing output is JSON only".into()));
            }
            packing_cmd(*c)
        }
        Command::Geodesic {
            c,
            alpha_orbit,
            first_return,
            j,
            z,
            theta,
            pz,
            ptheta,
            t_max,
            dt,
        } => {
            if *alpha_orbit && *first_return {
                return Err(CliError::Usage(
                    "choose one of --alpha-orbit and --first-return".into(),
                ));
            }
            if *alpha_orbit {
                if format == Some(Format::Csv) {
                    return Err(CliError::Usage("--alpha-orbit output is JSON only".into()));
                }
                return alpha_orbit_cmd(*c);
            }
            if *first_return {
                if format == Some(Format::Csv) {
                    return Err(CliError::Usage("--first-return output is JSON only".into()));
                }
                let j = j.ok_or_else(|| CliError::Usage("--first-return needs --j".into()))?;
                return first_return_cmd(*c, j);
            }
            if format == Some(Format::Json) {
                return Err(CliError::Usage("trajectory output is CSV only".into()));
            }
            flow_cmd(*c, *z, *theta, *pz, *ptheta, *t_max, *dt)
        }
        Command::Classify { c, name, samples } => {
            if format == Some(Format::Csv) {
                return Err(CliError::Usage("classify output is JSON only".into()));
            }
            let t = resolve_profile(*c, name.as_deref(), *samples, tol)?;
            classify_cmd(&t)
        }
    }
}

fn resolve_profile(
    c: Option<f64>,
    name: Option<&str>,
    samples: usize,
    tol: f64,
) -> Result<ToricProfile, CliError> {
    match (c, name) {
        (Some(c), None) => Ok(toric::spheroid_profile_samples(c, samples)?),
        (None, Some(name)) => match name {
            "round" | "sphere" => {
                let p = SurfaceProfile::spheroid(1.0)?;
                Ok(toric::boundary_curve_tol(&p, samples, tol)?)
            }
            other => Err(CliError::Usage(format!("unknown profile '{other}'"))),
        },
        _ => Err(CliError::Usage(
            "give exactly one of --c and --name".into(),
        )),
    }
}

fn width_json(r: &spheroid::WidthReport) -> String {
    Json::new()
        .num("c", r.c)
        .str("regime", r.regime.as_str())
        .num_opt("j0", r.j0)
        .num_opt("alpha", r.alpha)
        .num("beta", r.beta)
        .num("width", r.width)
        .num_opt("c1", r.c1)
        .num_opt("c3", r.c3)
        .finish()
}

fn width_cmd(c: f64, format: Format) -> Result<String, CliError> {
    let r = spheroid::width(c)?;
    Ok(match format {
        Format::Json => width_json(&r),
        Format::Csv => {
            let mut s = String::from("c,regime,j0,alpha,beta,width,c1,c3\n");
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{}",
                fmt12(r.c),
                r.regime.as_str(),
                fmt12_opt(r.j0),
                fmt12_opt(r.alpha),
                fmt12(r.beta),
                fmt12(r.width),
                fmt12_opt(r.c1),
                fmt12_opt(r.c3),
            ));
            s
        }
    })
}

fn sweep_cmd(c_min: f64, c_max: f64, n: usize, format: Format) -> Result<String, CliError> {
    if !(c_min > 0.0 && c_min < c_max) || n < 2 {
        return Err(CliError::Usage(
            "sweep needs 0 < c-min < c-max and n >= 2".into(),
        ));
    }
    // evaluate in parallel, assemble in input order
    let cs: Vec<f64> = (0..n)
        .map(|i| c_min + (c_max - c_min) * i as f64 / (n - 1) as f64)
        .collect();
    let threads = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(n);
    let mut slots: Vec<Option<spherocap::Result<spheroid::WidthReport>>> =
        (0..n).map(|_| None).collect();
    let chunk = n.div_ceil(threads);
    std::thread::scope(|scope| {
        for (ci, slot_chunk) in slots.chunks_mut(chunk).enumerate() {
            let cs = &cs;
            scope.spawn(move || {
                for (k, slot) in slot_chunk.iter_mut().enumerate() {
                    *slot = Some(spheroid::width(cs[ci * chunk + k]));
                }
            });
        }
    });
    let mut reports = Vec::with_capacity(n);
    for slot in slots {
        reports.push(slot.expect("every slot filled")?);
    }
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("c,width,alpha,beta,c1,c3\n");
            for r in &reports {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt12(r.c),
                    fmt12(r.width),
                    fmt12_opt(r.alpha),
                    fmt12(r.beta),
                    fmt12_opt(r.c1),
                    fmt12_opt(r.c3),
                ));
            }
            s
        }
        Format::Json => json_array(&reports.iter().map(width_json).collect::<Vec<_>>()),
    })
}

fn profile_cmd(t: &ToricProfile, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("j,rho1,rho2\n");
            for sample in &t.samples {
                s.push_str(&format!(
                    "{},{},{}\n",
                    fmt12(sample.j),
                    fmt12(sample.rho1),
                    fmt12(sample.rho2)
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<String> = t
                .samples
                .iter()
                .map(|s| {
                    Json::new()
                        .num("j", s.j)
                        .num("rho1", s.rho1)
                        .num("rho2", s.rho2)
                        .finish()
                })
                .collect();
            Json::new()
                .num("equator_length", t.equator_length)
                .num("meridian_length", t.meridian_length)
                .raw("samples", &json_array(&rows))
                .finish()
        }
    })
}

fn capacities_cmd(
    ell: Option<f64>,
    c: Option<f64>,
    count: usize,
    format: Option<Format>,
) -> Result<String, CliError> {
    match (ell, c) {
        (Some(ell), None) => {
            if !(ell > 0.0) {
                return Err(CliError::Usage("--ell must be positive".into()));
            }
            let caps = ech::zoll_capacities(ell, count);
            Ok(match format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut s = String::from("k,c_k\n");
                    for (k, v) in caps.iter().enumerate() {
                        s.push_str(&format!("{k},{}\n", fmt12(*v)));
                    }
                    s
                }
                Format::Json => json_array(&caps.iter().map(|v| fmt12(*v)).collect::<Vec<_>>()),
            })
        }
        (None, Some(c)) => {
            let r = spheroid::width(c)?;
            Ok(match format.unwrap_or(Format::Json) {
                Format::Json => Json::new()
                    .num("c", c)
                    .num_opt("c1", r.c1)
                    .num_opt("c3", r.c3)
                    .finish(),
                Format::Csv => format!(
                    "c,c1,c3\n{},{},{}",
                    fmt12(c),
                    fmt12_opt(r.c1),
                    fmt12_opt(r.c3)
                ),
            })
        }
        _ => Err(CliError::Usage(
            "give exactly one of --ell and --c".into(),
        )),
    }
}

fn weights_cmd(c: f64, depth: usize, samples: usize, format: Format) -> Result<String, CliError> {
    let t = toric::spheroid_profile_samples(c, samples)?;
    let ws = packing::weight_sequence(&t, depth)?;
    Ok(match format {
        Format::Json => Json::new()
            .num("c", c)
            .num("w0", ws.head)
            .raw(
                "tail",
                &json_array(&ws.tail.iter().map(|w| fmt12(*w)).collect::<Vec<_>>()),
            )
            .int("depth", ws.depth as i64)
            .finish(),
        Format::Csv => {
            let mut s = String::from("index,weight\n");
            s.push_str(&format!("0,{}\n", fmt12(ws.head)));
            for (i, w) in ws.tail.iter().enumerate() {
                s.push_str(&format!("{},{}\n", i + 1, fmt12(*w)));
            }
            s
        }
    })
}

fn packing_cmd(c: f64) -> Result<String, CliError> {
    let p = packing::build_prolate_packing(c)?;
    let report = packing::verify_packing(&p, spheroid::beta(c));
    if !report.ok {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Numeric(format!(
            "packing failed verification: {}",
            msgs.join("; ")
        )));
    }
    let pieces: Vec<String> = p
        .pieces
        .iter()
        .map(|t| {
            let m = t.linear;
            Json::new()
                .num("size", t.size)
                .raw(
                    "linear",
                    &format!(
                        "[[{},{}],[{},{}]]",
                        m[0][0], m[0][1], m[1][0], m[1][1]
                    ),
                )
                .raw(
                    "offset",
                    &format!("[{},{}]", fmt12(t.offset[0]), fmt12(t.offset[1])),
                )
                .finish()
        })
        .collect();
    Ok(Json::new()
        .num("container", p.container)
        .raw("pieces", &json_array(&pieces))
        .finish())
}

fn alpha_orbit_cmd(c: f64) -> Result<String, CliError> {
    let orbit = geodesic::closed_geodesic_alpha(c)?;
    Ok(Json::new()
        .num("c", c)
        .num("length", orbit.length)
        .int("equator_crossings", orbit.equator_crossings as i64)
        .num("closure_gap", orbit.closure_gap)
        .finish())
}

fn first_return_cmd(c: f64, j: f64) -> Result<String, CliError> {
    let p = SurfaceProfile::spheroid(c)?;
    let angle = geodesic::first_return_angle(&p, j)?;
    Ok(Json::new()
        .num("c", c)
        .num("j", j)
        .num("first_return_angle", angle)
        .finish())
}

fn flow_cmd(
    c: f64,
    z: f64,
    theta: f64,
    pz: Option<f64>,
    ptheta: f64,
    t_max: f64,
    dt: f64,
) -> Result<String, CliError> {
    let p = SurfaceProfile::spheroid(c)?;
    let pz = match pz {
        Some(v) => v,
        None => {
            // complete to unit energy
            let u = p.u(z);
            if u <= 0.0 {
                return Err(CliError::Usage("initial z is at a pole".into()));
            }
            let du = p.du(z);
            let rest = 1.0 - ptheta * ptheta / (u * u);
            if rest < 0.0 {
                return Err(CliError::Usage(
                    "no unit-energy p_z completes this state".into(),
                ));
            }
            (rest * (du * du + 1.0)).sqrt()
        }
    };
    let s0 = PhaseState {
        z,
        theta,
        p_z: pz,
        p_theta: ptheta,
    };
    let tr = geodesic::flow(&p, &s0, t_max, dt)?;
    let mut out = String::from("t,z,theta,p_z,p_theta,H,J\n");
    for (t, s) in &tr.states {
        let h = geodesic::hamiltonian(&p, s)?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt12(*t),
            fmt12(s.z),
            fmt12(s.theta),
            fmt12(s.p_z),
            fmt12(s.p_theta),
            fmt12(h),
            fmt12(geodesic::angular_momentum(s)),
        ));
    }
    Ok(out)
}

fn classify_cmd(t: &ToricProfile) -> Result<String, CliError> {
    let class = toric::classify(t)?;
    Ok(Json::new()
        .str("classification", class.as_str())
        .num("zoll_defect", toric::zoll_defect(t))
        .num("equator_length", t.equator_length)
        .num("meridian_length", t.meridian_length)
        .finish())
}
