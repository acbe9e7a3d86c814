//! The `conduct` command line.
//!
//! Exit status: 0 success, 1 invalid pattern (parse or validation errors),
//! 2 usage errors, 3 I/O errors. `-` names stdin or stdout.

use std::fs;
use std::io::{self, Read, Write};
use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::document::{
    default_document, validate_pattern, ParseMode, PatternDocument, DEFAULT_TOLERANCE,
};
use crate::geometry::Pattern;
use crate::kinematics::Motion;
use crate::render::{export_samples, render_curve, render_speed_plot, RenderOptions, SampleFormat};
use crate::timing::{Tempo, TimingLaw};

pub const DEFAULT_BPM: f64 = 60.0;
pub const DEFAULT_BETA: f64 = 0.6;

#[derive(Debug, Parser)]
#[command(
    name = "conduct",
    version,
    about = "Conducting beat patterns: defaults, validation, diagrams and baton samples"
)]
pub struct Cli {
    /// Keep unknown document fields instead of rejecting them.
    #[arg(long, global = true)]
    pub lenient: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct TimingArgs {
    /// Tempo in beats per minute.
    #[arg(long, default_value_t = DEFAULT_BPM, value_parser = parse_bpm)]
    pub bpm: f64,
    /// Speed balance in [0, 1]; 0 is uniform motion.
    #[arg(long, default_value_t = DEFAULT_BETA, value_parser = parse_beta)]
    pub beta: f64,
}

#[derive(Debug, clap::Args)]
pub struct LayoutArgs {
    #[arg(long, default_value_t = 480)]
    pub width: u32,
    #[arg(long, default_value_t = 480)]
    pub height: u32,
    #[arg(long, default_value_t = 32)]
    pub samples_per_segment: usize,
    #[arg(long)]
    pub no_labels: bool,
}

impl LayoutArgs {
    fn options(&self) -> RenderOptions {
        RenderOptions {
            width: self.width,
            height: self.height,
            samples_per_segment: self.samples_per_segment,
            show_labels: !self.no_labels,
            ..RenderOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a built-in pattern document.
    Defaults {
        #[arg(long)]
        beats: u32,
        /// Roundness of the first preparation (0 is a cusp).
        #[arg(long)]
        p1_roundness: Option<f64>,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Check a pattern against the extremum rules; exit 0 iff there are no errors.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Mirror a pattern between the conductor's and the performers' view.
    Reflect {
        file: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Draw the pattern curve as SVG.
    Render {
        file: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        #[command(flatten)]
        layout: LayoutArgs,
    },
    /// Plot phase rate and spatial speed over one cycle as SVG.
    Speed {
        file: PathBuf,
        #[command(flatten)]
        timing: TimingArgs,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        #[command(flatten)]
        layout: LayoutArgs,
        /// Leave out the spatial speed curve.
        #[arg(long)]
        phase_only: bool,
    },
    /// Sample the baton motion over a time window.
    Sample {
        file: PathBuf,
        #[command(flatten)]
        timing: TimingArgs,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        /// End of the window in seconds; defaults to one cycle.
        #[arg(long)]
        to: Option<f64>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Seconds added to every sample time before evaluation.
        #[arg(long, default_value_t = 0.0)]
        offset: f64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Run the HTTP playback service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
    },
}

fn parse_beta(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("beta = {v} is outside the valid range [0, 1]"))
    }
}

fn parse_bpm(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("bpm must be a positive number, got {v}"))
    }
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Streams<'_> {
    fn read_input(&mut self, path: &PathBuf) -> Result<String, Failure> {
        let mut text = String::new();
        if path.as_os_str() == "-" {
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
        } else {
            text = fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))?;
        }
        Ok(text)
    }

    fn write_output(&mut self, path: &PathBuf, text: &str) -> Result<(), Failure> {
        if path.as_os_str() == "-" {
            self.stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(format!("writing stdout: {e}")))
        } else {
            fs::write(path, text)
                .map_err(|e| Failure::Io(format!("writing {}: {e}", path.display())))
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut streams = Streams {
        stdin,
        stdout,
        stderr,
    };
    match execute(cli, &mut streams) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(streams.stderr, "conduct: {}", failure.message());
            failure.code()
        }
    }
}

/// Entry point for the binary.
pub fn main_with_process_io() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

fn load_pattern(
    streams: &mut Streams<'_>,
    path: &PathBuf,
    mode: ParseMode,
) -> Result<Pattern, Failure> {
    let text = streams.read_input(path)?;
    PatternDocument::parse(&text, mode)
        .and_then(|doc| doc.to_pattern())
        .map_err(|e| Failure::Invalid(e.to_string()))
}

/// Loads a pattern and refuses it if validation reports errors.
fn load_accepted(
    streams: &mut Streams<'_>,
    path: &PathBuf,
    mode: ParseMode,
) -> Result<Pattern, Failure> {
    let pattern = load_pattern(streams, path, mode)?;
    let report = validate_pattern(&pattern, DEFAULT_TOLERANCE).map_err(usage)?;
    if !report.is_accepted() {
        let lines: Vec<String> = report.errors().map(|f| f.to_string()).collect();
        return Err(Failure::Invalid(format!(
            "pattern rejected:\n{}",
            lines.join("\n")
        )));
    }
    Ok(pattern)
}

fn timing_law(pattern: &Pattern, timing: &TimingArgs) -> Result<TimingLaw, Failure> {
    let tempo = Tempo::new(pattern.beats(), timing.bpm).map_err(usage)?;
    TimingLaw::new(tempo, timing.beta).map_err(usage)
}

fn execute(cli: Cli, streams: &mut Streams<'_>) -> Result<i32, Failure> {
    let mode = if cli.lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    };
    match cli.command {
        Command::Defaults {
            beats,
            p1_roundness,
            out,
        } => {
            let mut doc = default_document(beats).map_err(usage)?;
            if let Some(r) = p1_roundness {
                if !r.is_finite() {
                    return Err(Failure::Usage(format!("roundness must be finite, got {r}")));
                }
                doc.anchors[0].roundness = r;
            }
            streams.write_output(&out, &doc.to_json())?;
        }
        Command::Validate {
            file,
            tolerance,
            json,
        } => {
            let pattern = load_pattern(streams, &file, mode)?;
            let report = validate_pattern(&pattern, tolerance).map_err(usage)?;
            let text = if json {
                let mut s = serde_json::to_string_pretty(&report).expect("report is serializable");
                s.push('\n');
                s
            } else {
                let mut s: String = report.findings.iter().map(|f| format!("{f}\n")).collect();
                s.push_str(&format!(
                    "{} error(s), {} warning(s)\n",
                    report.error_count(),
                    report.warnings().count()
                ));
                s
            };
            streams.write_output(&PathBuf::from("-"), &text)?;
            return Ok(if report.is_accepted() { 0 } else { 1 });
        }
        Command::Reflect { file, out } => {
            let text = streams.read_input(&file)?;
            let doc =
                PatternDocument::parse(&text, mode).map_err(|e| Failure::Invalid(e.to_string()))?;
            let pattern = doc
                .to_pattern()
                .map_err(|e| Failure::Invalid(e.to_string()))?;
            let mut reflected =
                PatternDocument::from_pattern(&crate::document::reflect_pattern(&pattern));
            reflected.name = doc.name;
            reflected.description = doc.description;
            reflected.extra = doc.extra;
            streams.write_output(&out, &reflected.to_json())?;
        }
        Command::Render { file, out, layout } => {
            let pattern = load_accepted(streams, &file, mode)?;
            let svg = render_curve(&pattern, &layout.options()).map_err(usage)?;
            streams.write_output(&out, &svg)?;
        }
        Command::Speed {
            file,
            timing,
            out,
            layout,
            phase_only,
        } => {
            let pattern = load_accepted(streams, &file, mode)?;
            let law = timing_law(&pattern, &timing)?;
            let opts = RenderOptions {
                show_spatial_speed: !phase_only,
                ..layout.options()
            };
            let svg = render_speed_plot(&pattern, &law, &opts).map_err(usage)?;
            streams.write_output(&out, &svg)?;
        }
        Command::Sample {
            file,
            timing,
            from,
            to,
            count,
            format,
            offset,
            out,
        } => {
            let pattern = load_accepted(streams, &file, mode)?;
            let law = timing_law(&pattern, &timing)?;
            let to = to.unwrap_or(from + law.tempo().cycle_duration());
            let motion = Motion::new(&pattern, &law)
                .and_then(|m| m.with_start_offset(offset))
                .map_err(usage)?;
            let samples = motion.sample_trajectory(from, to, count).map_err(usage)?;
            let format = match format {
                FormatArg::Table => SampleFormat::Table,
                FormatArg::Json => SampleFormat::Structured,
            };
            let text = export_samples(&samples, format).map_err(usage)?;
            streams.write_output(&out, &text)?;
        }
        Command::Serve { port, host } => {
            let addr = SocketAddr::new(host, port);
            let runtime = tokio::runtime::Runtime::new()
                .map_err(|e| Failure::Io(format!("starting runtime: {e}")))?;
            let _ = writeln!(streams.stderr, "conduct: serving on http://{addr}");
            runtime
                .block_on(crate::service::serve(addr))
                .map_err(|e| Failure::Io(format!("service on {addr}: {e}")))?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_with(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["conduct"];
        full.extend_from_slice(args);
        let code = run(full, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn defaults_pipe_into_validate() {
        let (code, doc, _) = run_with(&["defaults", "--beats", "4"], "");
        assert_eq!(code, 0);
        let (code, report, _) = run_with(&["validate", "-"], &doc);
        assert_eq!(code, 0, "{report}");
        assert!(report.contains("0 error(s)"));
    }

    #[test]
    fn out_of_range_beta_is_a_usage_error() {
        let (_, doc, _) = run_with(&["defaults", "--beats", "4"], "");
        let (code, _, err) = run_with(&["sample", "-", "--beta", "1.3"], &doc);
        assert_eq!(code, 2);
        assert!(err.contains("[0, 1]"), "{err}");
    }

    #[test]
    fn unsupported_default_is_a_usage_error() {
        let (code, _, err) = run_with(&["defaults", "--beats", "5"], "");
        assert_eq!(code, 2);
        assert!(err.contains("5 beats"));
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let (code, _, err) = run_with(&["validate", "/nonexistent/pattern.json"], "");
        assert_eq!(code, 3);
        assert!(err.contains("reading"));
    }

    #[test]
    fn invalid_patterns_exit_one() {
        let (_, doc, _) = run_with(&["defaults", "--beats", "2"], "");
        let lowered = doc.replacen("\"y\": 1.0", "\"y\": -3.0", 1);
        let (code, report, _) = run_with(&["validate", "-"], &lowered);
        assert_eq!(code, 1);
        assert!(report.contains("extremum_order"));
        let (code, _, err) = run_with(&["sample", "-"], &lowered);
        assert_eq!(code, 1);
        assert!(err.contains("rejected"));
        let (code, _, _) = run_with(&["validate", "-"], "{ not json");
        assert_eq!(code, 1);
    }

    #[test]
    fn reflect_twice_restores_the_document() {
        let (_, doc, _) = run_with(&["defaults", "--beats", "3"], "");
        let (code, once, _) = run_with(&["reflect", "-"], &doc);
        assert_eq!(code, 0);
        assert!(once.contains("\"performer\""));
        let (_, twice, _) = run_with(&["reflect", "-"], &once);
        assert_eq!(twice, doc);
    }

    #[test]
    fn sample_defaults_cover_one_cycle() {
        let (_, doc, _) = run_with(&["defaults", "--beats", "2"], "");
        let (code, table, _) = run_with(&["sample", "-", "--count", "3"], &doc);
        assert_eq!(code, 0);
        let times: Vec<&str> = table
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap())
            .collect();
        assert_eq!(times, vec!["0", "1", "2"]);
        let (code, _, _) = run_with(&["sample", "-", "--from", "2", "--to", "1"], &doc);
        assert_eq!(code, 2);
    }

    #[test]
    fn p1_roundness_is_configurable() {
        let (_, doc, _) = run_with(&["defaults", "--beats", "4", "--p1-roundness", "0.25"], "");
        let p = crate::parse_pattern(&doc).unwrap();
        assert_eq!(p.anchors()[0].roundness, 0.25);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_with(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("defaults"));
    }
}
