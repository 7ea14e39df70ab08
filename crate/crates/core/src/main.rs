use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use mapcensus::canon::{CanonicalCode, EquivalenceMode};
use mapcensus::census::{enumerate_plane, enumerate_spherical, CensusError};
use mapcensus::format::{
    plane_catalog_dto, render_json, render_plane_dot, render_plane_text, render_show_dot,
    render_show_text, render_sphere_dot, render_sphere_text, sphere_catalog_dto,
};
use mapcensus::verify::run_verification;

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_UNKNOWN_CODE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "mapcensus",
    version,
    about = "Census of embedded multigraphs on the sphere and plane"
)]
struct Cli {
    /// Worker threads for the permutation sweep (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all isomorphism classes with a given edge count.
    Enum {
        /// Number of edges to enumerate.
        #[arg(long)]
        edges: usize,
        /// Catalog of spherical maps or of plane graphs.
        #[arg(long, value_enum, default_value_t = SurfaceArg::Sphere)]
        surface: SurfaceArg,
        /// Whether mirror images count as the same class.
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Output path (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the census in both modes and compare with published counts.
    Verify {
        /// Verify all edge counts up to this bound.
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
        /// Output path (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Display one catalog entry given its canonical code.
    Show {
        /// Canonical code, e.g. E1:S:F:0.1.1.0
        code: String,
        #[arg(long, value_enum, default_value_t = ShowFormatArg::Text)]
        format: ShowFormatArg,
        /// Output path (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    Sphere,
    Plane,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Oriented,
    Full,
}

impl From<ModeArg> for EquivalenceMode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::Oriented => EquivalenceMode::Oriented,
            ModeArg::Full => EquivalenceMode::Full,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShowFormatArg {
    Text,
    Dot,
}

fn write_out(out: Option<&PathBuf>, text: &str) -> u8 {
    let result = match out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: cannot write output: {err}");
            EXIT_VERIFY_FAIL
        }
    }
}

fn census_error_exit(err: &CensusError) -> u8 {
    match err {
        CensusError::InvalidEdgeCount => EXIT_USAGE,
        CensusError::EdgeGuard { .. } => EXIT_GUARD,
        CensusError::DualPathMismatch { .. } => EXIT_VERIFY_FAIL,
    }
}

fn cmd_enum(
    edges: usize,
    surface: SurfaceArg,
    mode: ModeArg,
    format: FormatArg,
    out: Option<&PathBuf>,
) -> u8 {
    let mode = mode.into();
    let rendered = match surface {
        SurfaceArg::Sphere => enumerate_spherical(edges, mode).map(|catalog| match format {
            FormatArg::Text => render_sphere_text(&catalog),
            FormatArg::Json => render_json(&sphere_catalog_dto(&catalog)),
            FormatArg::Dot => render_sphere_dot(&catalog),
        }),
        SurfaceArg::Plane => enumerate_plane(edges, mode).map(|catalog| match format {
            FormatArg::Text => render_plane_text(&catalog),
            FormatArg::Json => render_json(&plane_catalog_dto(&catalog)),
            FormatArg::Dot => render_plane_dot(&catalog),
        }),
    };
    match rendered {
        Ok(text) => write_out(out, &text),
        Err(err) => {
            eprintln!("error: {err}");
            census_error_exit(&err)
        }
    }
}

fn cmd_verify(max_edges: usize, out: Option<&PathBuf>) -> u8 {
    if max_edges == 0 {
        eprintln!("error: --max-edges must be at least 1");
        return EXIT_USAGE;
    }
    match run_verification(max_edges) {
        Ok(report) => {
            let text = report.to_string();
            let wrote = write_out(out, &text);
            if wrote != EXIT_OK {
                wrote
            } else if report.pass() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAIL
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            census_error_exit(&err)
        }
    }
}

fn cmd_show(code: &str, format: ShowFormatArg, out: Option<&PathBuf>) -> u8 {
    let parsed: CanonicalCode = match code.parse() {
        Ok(c) => c,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_UNKNOWN_CODE;
        }
    };
    let object = match parsed.resolve() {
        Ok(o) => o,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_UNKNOWN_CODE;
        }
    };
    let text = match format {
        ShowFormatArg::Text => render_show_text(&parsed, &object),
        ShowFormatArg::Dot => render_show_dot(&parsed, &object),
    };
    write_out(out, &text)
}

fn dispatch(command: &Command) -> u8 {
    match command {
        Command::Enum {
            edges,
            surface,
            mode,
            format,
            out,
        } => cmd_enum(*edges, *surface, *mode, *format, out.as_ref()),
        Command::Verify { max_edges, out } => cmd_verify(*max_edges, out.as_ref()),
        Command::Show { code, format, out } => cmd_show(code, *format, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build();
    let code = match pool {
        Ok(pool) => pool.install(|| dispatch(&cli.command)),
        Err(err) => {
            eprintln!("error: cannot build thread pool: {err}");
            EXIT_USAGE
        }
    };
    ExitCode::from(code)
}
