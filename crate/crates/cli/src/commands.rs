//! Command-line surface of `lce`.
//!
//! Exit codes: 0 on success and on verified identities, 2 when a checked
//! identity fails, 1 on usage, parse or evaluation errors.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use lce_core::forms::{conv_exp, conv_log, Closure, LinearForm};
use lce_core::graphication::{graphicate_with, GraphicationOptions, DEFAULT_WORD_DEGREE_CAP};
use lce_core::graphs::{build_graph, connected_components, to_dot};
use lce_core::linked_cluster::{
    check_combinatorial_lct, check_functional_lct, connected_series, verify_admissible,
    AdmissibleFamily, MomentSeries,
};
use lce_core::random::random_table_form;
use lce_core::{
    factorial, symmetry_factor, ArityProfile, Generator, Mode, Monomial, Polynomial, Rational,
};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formfile::{load_profile, FormSpec};
use crate::parse::{format_rational, parse_bracketting, parse_monomial, parse_polynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Kv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "lce",
    version,
    about = "Graphication, symmetry factors and linked-cluster checks"
)]
pub struct Cli {
    /// Arity profile JSON ({"mode": ..., "arity": {"1": n_1, ...}}).
    #[arg(long, global = true)]
    pub profile: Option<PathBuf>,
    /// Linear form JSON.
    #[arg(long, global = true)]
    pub form: Option<PathBuf>,
    /// Degree bound for form evaluation and word graphication.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Truncation order or maximal size, depending on the command.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Seed for randomly generated forms.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a polynomial into brackettings with symmetry factors.
    Graphicate {
        expr: String,
        #[arg(long)]
        min_len: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Symmetry factor of a bracketting in a monomial.
    Symfac { bracket: String, expr: String },
    /// Connected components of a bracketting.
    Components { bracket: String },
    /// Interaction graph of a bracketting in DOT.
    Dot { bracket: String },
    /// Evaluate the form on a polynomial.
    Eval { expr: String },
    /// Evaluate the convolution logarithm of the form on a polynomial.
    Logform { expr: String },
    /// Moments and cumulants of the form.
    Cumulants {
        expr: Option<String>,
        /// Use distinct points x1..xn instead of powers of x1.
        #[arg(long)]
        points: bool,
    },
    /// Check the combinatorial linked-cluster identity on monomials.
    LctCheck {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Check the functional linked-cluster identity for a per-point pattern.
    FlctCheck {
        #[arg(long)]
        pattern: String,
    },
    /// Check admissibility of the per-point family of a pattern.
    VerifyAdmissible {
        #[arg(long)]
        pattern: String,
    },
}

struct Session {
    profile: Option<ArityProfile>,
    form: Option<LinearForm>,
    cli: Cli,
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code. Regular output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    let mut profile = match &cli.profile {
        Some(path) => Some(load_profile(path)?),
        None => None,
    };
    let form = match &cli.form {
        Some(path) => {
            let (form_profile, form) = FormSpec::load(path)?.build()?;
            profile.get_or_insert(form_profile);
            Some(match cli.max_degree {
                Some(b) => form.with_bound(b),
                None => form,
            })
        }
        None => None,
    };
    if cli.format == Format::Dot
        && !matches!(
            cli.command,
            Command::Dot { .. } | Command::Components { .. }
        )
    {
        bail!("--format dot is only available for dot and components");
    }
    let ctx = Session { profile, form, cli };
    ctx.dispatch(out)
}

impl Session {
    fn profile(&self) -> Option<&ArityProfile> {
        self.profile.as_ref()
    }

    fn form(&self) -> anyhow::Result<&LinearForm> {
        self.form
            .as_ref()
            .ok_or_else(|| anyhow!("this command needs --form FILE"))
    }

    fn kv(&self) -> bool {
        self.cli.format == Format::Kv
    }

    fn polynomial(&self, text: &str) -> anyhow::Result<Polynomial> {
        parse_polynomial(text, self.profile()).with_context(|| format!("cannot parse {text:?}"))
    }

    fn monomial(&self, text: &str) -> anyhow::Result<Monomial> {
        parse_monomial(text, self.profile()).with_context(|| format!("cannot parse {text:?}"))
    }

    fn graphication_options(&self) -> GraphicationOptions {
        GraphicationOptions {
            max_word_degree: self.cli.max_degree.unwrap_or(DEFAULT_WORD_DEGREE_CAP),
            ..Default::default()
        }
    }

    fn dispatch(&self, out: &mut dyn Write) -> anyhow::Result<i32> {
        match &self.cli.command {
            Command::Graphicate {
                expr,
                min_len,
                max_len,
            } => self.graphicate(expr, *min_len, *max_len, out),
            Command::Symfac { bracket, expr } => {
                let gamma = parse_bracketting(bracket, self.profile())?;
                let m = self.monomial(expr)?;
                let s = symmetry_factor(&gamma, &m);
                if self.kv() {
                    writeln!(out, "symmetry_factor={}", format_rational(&s))?;
                } else {
                    writeln!(out, "{}", format_rational(&s))?;
                }
                Ok(EXIT_OK)
            }
            Command::Components { bracket } => {
                let gamma = parse_bracketting(bracket, self.profile())?;
                let parts = connected_components(&gamma);
                match self.cli.format {
                    Format::Dot => {
                        for (b, _) in &parts.parts {
                            write!(out, "{}", to_dot(&build_graph(b)))?;
                        }
                    }
                    Format::Kv => {
                        writeln!(out, "components={}", parts.len())?;
                        for (i, (b, support)) in parts.parts.iter().enumerate() {
                            writeln!(
                                out,
                                "component.{i}.support={} component.{i}.bracketting={b}",
                                labels(support)
                            )?;
                        }
                    }
                    Format::Text => {
                        writeln!(out, "{} component(s)", parts.len())?;
                        for (b, support) in &parts.parts {
                            writeln!(out, "{} {b}", labels(support))?;
                        }
                    }
                }
                Ok(EXIT_OK)
            }
            Command::Dot { bracket } => {
                let gamma = parse_bracketting(bracket, self.profile())?;
                let graph = build_graph(&gamma);
                write!(out, "{}", to_dot(&graph))?;
                Ok(EXIT_OK)
            }
            Command::Eval { expr } => {
                let p = self.polynomial(expr)?;
                let value = self.form()?.evaluate(&p)?;
                self.value(out, "value", &value)?;
                Ok(EXIT_OK)
            }
            Command::Logform { expr } => {
                let p = self.polynomial(expr)?;
                let tau = conv_log(self.form()?)?;
                self.value(out, "log_value", &tau.evaluate(&p)?)?;
                Ok(EXIT_OK)
            }
            Command::Cumulants { expr, points } => self.cumulants(expr.as_deref(), *points, out),
            Command::LctCheck { exprs } => self.lct_check(exprs, out),
            Command::FlctCheck { pattern } => self.flct_check(pattern, out),
            Command::VerifyAdmissible { pattern } => {
                let family = self.family(pattern)?;
                let size = self.cli.order.unwrap_or(4);
                let report = verify_admissible(&family, size)?;
                if self.kv() {
                    writeln!(
                        out,
                        "max_size={} equivariant={} splitting={} admissible={}",
                        size,
                        report.equivariant,
                        report.splitting,
                        report.passed()
                    )?;
                } else {
                    writeln!(out, "equivariant: {}", report.equivariant)?;
                    writeln!(out, "splitting: {}", report.splitting)?;
                    if let Some(f) = &report.failure {
                        writeln!(out, "first failure: {f}")?;
                    }
                    writeln!(
                        out,
                        "{}",
                        if report.passed() {
                            "admissible"
                        } else {
                            "NOT admissible"
                        }
                    )?;
                }
                Ok(if report.passed() {
                    EXIT_OK
                } else {
                    EXIT_VIOLATION
                })
            }
        }
    }

    fn value(&self, out: &mut dyn Write, key: &str, value: &Rational) -> anyhow::Result<()> {
        if self.kv() {
            writeln!(out, "{key}={}", format_rational(value))?;
        } else {
            writeln!(out, "{}", format_rational(value))?;
        }
        Ok(())
    }

    fn graphicate(
        &self,
        expr: &str,
        min_len: Option<usize>,
        max_len: Option<usize>,
        out: &mut dyn Write,
    ) -> anyhow::Result<i32> {
        let p = self.polynomial(expr)?;
        let options = self.graphication_options();
        let mut total = std::collections::BTreeMap::new();
        for (m, c) in p.terms() {
            for (gamma, s) in graphicate_with(m, &options)? {
                *total.entry(gamma).or_insert_with(Rational::zero) += c * s;
            }
        }
        for (gamma, s) in total {
            if s.is_zero()
                || min_len.is_some_and(|l| gamma.len() < l)
                || max_len.is_some_and(|l| gamma.len() > l)
            {
                continue;
            }
            if self.kv() {
                writeln!(
                    out,
                    "coefficient={} slots={} bracketting={gamma}",
                    format_rational(&s),
                    gamma.len()
                )?;
            } else {
                writeln!(out, "{} {gamma}", format_rational(&s))?;
            }
        }
        Ok(EXIT_OK)
    }

    fn cumulants(
        &self,
        expr: Option<&str>,
        points: bool,
        out: &mut dyn Write,
    ) -> anyhow::Result<i32> {
        let rho = self.form()?;
        let tau = conv_log(rho)?;
        if let Some(expr) = expr {
            let m = self.monomial(expr)?;
            let (moment, cumulant) = (rho.evaluate_monomial(&m)?, tau.evaluate_monomial(&m)?);
            if self.kv() {
                writeln!(
                    out,
                    "moment={} cumulant={}",
                    format_rational(&moment),
                    format_rational(&cumulant)
                )?;
            } else {
                writeln!(out, "moment {}", format_rational(&moment))?;
                writeln!(out, "cumulant {}", format_rational(&cumulant))?;
            }
            return Ok(EXIT_OK);
        }
        let mode = rho.mode();
        let order = self.cli.order.unwrap_or(6);
        for n in 1..=order {
            let m = if points {
                Monomial::new(mode, (1..=n as u32).map(|l| Generator::local(1, l)))
            } else {
                Monomial::new(mode, (0..n).map(|_| Generator::local(1, 1)))
            };
            let (moment, cumulant) = (rho.evaluate_monomial(&m)?, tau.evaluate_monomial(&m)?);
            if self.kv() {
                writeln!(
                    out,
                    "n={n} moment={} cumulant={}",
                    format_rational(&moment),
                    format_rational(&cumulant)
                )?;
            } else {
                writeln!(
                    out,
                    "{n} {} {}",
                    format_rational(&moment),
                    format_rational(&cumulant)
                )?;
            }
        }
        Ok(EXIT_OK)
    }

    fn closure_for(mode: Mode) -> Closure {
        match mode {
            Mode::Commutative => Closure::Symmetric,
            Mode::Noncommutative => Closure::QuasiSymmetric,
        }
    }

    fn lct_check(&self, exprs: &[String], out: &mut dyn Write) -> anyhow::Result<i32> {
        let monomials = exprs
            .iter()
            .map(|e| self.monomial(e))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let rho = match (&self.form, self.cli.seed) {
            (Some(form), _) => form.clone(),
            (None, Some(seed)) => {
                let mode = monomials[0].mode();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                random_table_form(
                    &mut rng,
                    mode,
                    &monomials,
                    Rational::one(),
                    Self::closure_for(mode),
                )?
            }
            (None, None) => bail!("lct-check needs --form FILE or --seed N"),
        };
        let mut all_equal = true;
        for m in &monomials {
            let report = check_combinatorial_lct(&rho, m)?;
            all_equal &= report.equal;
            if self.kv() {
                writeln!(
                    out,
                    "monomial={} connected={} mobius={} equal={}",
                    report.monomial,
                    format_rational(&report.lhs),
                    format_rational(&report.rhs),
                    report.equal
                )?;
            } else {
                writeln!(out, "{report}")?;
            }
        }
        Ok(if all_equal { EXIT_OK } else { EXIT_VIOLATION })
    }

    fn family(&self, pattern: &str) -> anyhow::Result<AdmissibleFamily> {
        Ok(AdmissibleFamily::per_point(self.polynomial(pattern)?)?)
    }

    fn flct_check(&self, pattern: &str, out: &mut dyn Write) -> anyhow::Result<i32> {
        let family = self.family(pattern)?;
        let order = self.cli.order.unwrap_or(4);
        let tau = match (&self.form, self.cli.seed) {
            (Some(form), _) => form.clone(),
            (None, Some(seed)) => {
                let mode = family.mode();
                let seeds: Vec<Monomial> = family.points(order)?.terms().keys().cloned().collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                random_table_form(
                    &mut rng,
                    mode,
                    &seeds,
                    Rational::zero(),
                    Self::closure_for(mode),
                )?
            }
            (None, None) => bail!("flct-check needs --form FILE or --seed N"),
        };
        let tau = match self.cli.max_degree {
            Some(b) => tau.with_bound(b),
            None => tau,
        };
        let (report, natural) = match check_functional_lct(&tau, &family, order) {
            Ok(report) => (report, true),
            Err(lce_core::Error::NotScalarSpecies(_)) => {
                (unchecked_functional_lct(&tau, &family, order)?, false)
            }
            Err(e) => return Err(e.into()),
        };
        if !natural {
            writeln!(
                out,
                "warning: the form is not natural (rho(P(S)) depends on more than |S|)"
            )?;
        }
        if self.kv() {
            let series = |s: &MomentSeries| {
                s.coeffs
                    .iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            writeln!(
                out,
                "order={order} log_moments={} connected={} equal={}",
                series(&report.lhs),
                series(&report.rhs),
                report.equal
            )?;
        } else {
            writeln!(out, "{report}")?;
        }
        Ok(if report.equal {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        })
    }
}

/// Both series without the scalar-species guard, for forms that break it.
fn unchecked_functional_lct(
    tau: &LinearForm,
    family: &AdmissibleFamily,
    order: usize,
) -> anyhow::Result<lce_core::linked_cluster::FlctReport> {
    let rho = conv_exp(tau)?;
    let coeffs = (0..=order)
        .map(|n| Ok(rho.evaluate(&family.points(n)?)? / factorial(n)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let lhs = MomentSeries::new(coeffs).log()?;
    let rhs = connected_series(tau, family, order)?;
    let equal = lhs == rhs;
    Ok(lce_core::linked_cluster::FlctReport { lhs, rhs, equal })
}

fn labels(set: &std::collections::BTreeSet<u32>) -> String {
    let inner: Vec<String> = set.iter().map(|l| format!("x{l}")).collect();
    format!("{{{}}}", inner.join(","))
}
