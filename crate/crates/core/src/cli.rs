//! Command-line surface. Exit codes: 0 success or property holds, 1 property
//! fails, 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{center_space, nucleus_space, AlgElem, Algebra};
use crate::homomorphism::{is_linear_homomorphism, quat_auto_check, HomCandidate, QuatVerdict};
use crate::io;
use crate::linmap::{
    build_b_matrix, components_from_coords, coords_from_components, generator_basis, orbit_equal,
    GeneratorSet, LinMap, MapExpansion, RepError,
};
use crate::omega::{interchange_holds, ring_interchange_report, Interchange};
use crate::scalar::Field;
use crate::tensor::Tensor;

#[derive(Debug, Parser)]
#[command(name = "freealg", version, about = "Exact computations in free finite-dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Generators {
    /// The identity map alone.
    Identity,
    /// The generator basis found by orbit extension.
    Auto,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension, unit, commutativity, associativity, nucleus and center.
    Check { algebra: PathBuf },
    /// Product of two elements given as comma-separated coordinates.
    Mul {
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Matrix sending standard components to map coordinates, and its rank.
    BMatrix { algebra: PathBuf },
    /// Standard components of a linear map.
    StdComponents {
        algebra: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, default_value = "identity")]
        generators: Generators,
    },
    /// Coordinates of the map with the given standard components.
    Coords {
        algebra: PathBuf,
        #[arg(long)]
        components: PathBuf,
        /// Attach the components to this generator of the generator basis
        /// instead of the identity map.
        #[arg(long)]
        generator: Option<usize>,
    },
    /// Generator basis of the space of linear self-maps.
    Generators { algebra: PathBuf },
    /// Whether two maps have the same orbit.
    OrbitEqual {
        algebra: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Linear-automorphism check for a 4x4 rational matrix on the quaternions.
    QuatAuto {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Whether a matrix defines a linear homomorphism.
    HomCheck {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Interchange law for the two operations of a table file.
    Interchange {
        table: PathBuf,
        /// Validate the tables as ring addition and multiplication and
        /// print the expanded sides.
        #[arg(long)]
        ring: bool,
    },
}

enum Failure {
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn parse_elem(alg: &Algebra, csv: &str) -> Result<AlgElem, Failure> {
    let coords = csv
        .split(',')
        .map(|s| alg.field().parse(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlgElem::new(alg.clone(), coords)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Check { algebra } => {
            let alg = io::load_algebra(&algebra)?;
            writeln!(out, "name {}", alg.name())?;
            writeln!(out, "field {}", alg.field())?;
            writeln!(out, "dim {}", alg.dim())?;
            match alg.unit() {
                Some(u) => writeln!(out, "unit {u}")?,
                None => writeln!(out, "unit none")?,
            }
            writeln!(out, "commutative {}", yes_no(alg.is_commutative()))?;
            writeln!(out, "associative {}", yes_no(alg.is_associative()))?;
            writeln!(out, "nucleus {}", nucleus_space(&alg).dim())?;
            writeln!(out, "center {}", center_space(&alg).dim())?;
            Ok(0)
        }
        Command::Mul { algebra, a, b } => {
            let alg = io::load_algebra(&algebra)?;
            let (x, y) = (parse_elem(&alg, &a)?, parse_elem(&alg, &b)?);
            writeln!(out, "{}", x.mul(&y)?)?;
            Ok(0)
        }
        Command::BMatrix { algebra } => {
            let alg = io::load_algebra(&algebra)?;
            let b = build_b_matrix(&alg, &LinMap::identity(&alg))?;
            write!(out, "{b}")?;
            writeln!(out, "rank {}", b.rank())?;
            Ok(0)
        }
        Command::StdComponents {
            algebra,
            map,
            generators,
        } => {
            let alg = io::load_algebra(&algebra)?;
            let f = io::load_map(&map, &alg, &alg)?;
            let gens = match generators {
                Generators::Identity => GeneratorSet::identity(&alg),
                Generators::Auto => generator_basis(&alg)?.set,
            };
            match components_from_coords(&f, &gens) {
                Ok(dec) => {
                    for (k, t) in dec.expansion.components().iter().enumerate() {
                        for (idx, v) in t.nonzero() {
                            writeln!(out, "{k} ({},{}) {v}", idx[0], idx[1])?;
                        }
                    }
                    writeln!(out, "nullity {}", dec.nullity)?;
                    Ok(0)
                }
                Err(RepError::NoSolution) => {
                    writeln!(out, "NO-SOLUTION")?;
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Coords {
            algebra,
            components,
            generator,
        } => {
            let alg = io::load_algebra(&algebra)?;
            let t = io::load_tensor(&components, &[alg.clone(), alg.clone()])?;
            let (gens, k) = match generator {
                None => (GeneratorSet::identity(&alg), 0),
                Some(k) => (generator_basis(&alg)?.set, k),
            };
            if k >= gens.len() {
                return Err(Failure::Input(format!(
                    "generator {k} out of range, the generator basis has {} maps",
                    gens.len()
                )));
            }
            let zero = Tensor::zeros(vec![alg.clone(), alg.clone()])?;
            let mut comps = vec![zero; gens.len()];
            comps[k] = t;
            let f = coords_from_components(&MapExpansion::new(gens, comps)?)?;
            write!(out, "{f}")?;
            Ok(0)
        }
        Command::Generators { algebra } => {
            let alg = io::load_algebra(&algebra)?;
            let gb = generator_basis(&alg)?;
            writeln!(out, "generators {}", gb.set.len())?;
            for (k, g) in gb.set.generators().iter().enumerate() {
                if g.is_identity() {
                    writeln!(out, "{k} identity")?;
                } else {
                    let (r, c) = (0..alg.dim())
                        .flat_map(|r| (0..alg.dim()).map(move |c| (r, c)))
                        .find(|&(r, c)| !g.coords().get(r, c).is_zero())
                        .expect("generator is nonzero");
                    writeln!(out, "{k} E^{r}_{c}")?;
                }
            }
            let dims: Vec<String> = gb.orbit_dims.iter().map(ToString::to_string).collect();
            writeln!(out, "orbit dims {}", dims.join(" "))?;
            writeln!(out, "union {}", gb.union_dim)?;
            writeln!(out, "direct sum {}", yes_no(gb.direct_sum))?;
            Ok(0)
        }
        Command::OrbitEqual { algebra, a, b } => {
            let alg = io::load_algebra(&algebra)?;
            let f = io::load_map(&a, &alg, &alg)?;
            let g = io::load_map(&b, &alg, &alg)?;
            if orbit_equal(&f, &g)? {
                writeln!(out, "EQUAL")?;
                Ok(0)
            } else {
                writeln!(out, "DIFFERENT")?;
                Ok(1)
            }
        }
        Command::QuatAuto { matrix } => {
            let m = io::load_matrix(&matrix, Field::Rational)?;
            let report = quat_auto_check(&m)?;
            match &report.verdict {
                QuatVerdict::Pass => writeln!(out, "PASS")?,
                QuatVerdict::Fail(w) => writeln!(out, "FAIL {w}")?,
            }
            if !report.consistent() {
                writeln!(
                    out,
                    "warning: homomorphism residual count {} disagrees with the verdict",
                    report.homomorphism.residuals.len()
                )?;
                return Ok(1);
            }
            Ok(if report.passes() { 0 } else { 1 })
        }
        Command::HomCheck {
            source,
            target,
            matrix,
        } => {
            let a = io::load_algebra(&source)?;
            let b = io::load_algebra(&target)?;
            let f = io::load_map(&matrix, &a, &b)?;
            let report = is_linear_homomorphism(&HomCandidate::from(f));
            if report.holds() {
                writeln!(out, "PASS")?;
                return Ok(0);
            }
            writeln!(out, "FAIL")?;
            for ((i, j, l), v) in &report.residuals {
                writeln!(out, "({i},{j},{l}) {v}")?;
            }
            Ok(1)
        }
        Command::Interchange { table, ring } => {
            let alg = io::load_optable(&table)?;
            if ring {
                let report = ring_interchange_report(&alg.op1, &alg.op2)?;
                write!(out, "{report}")?;
                if let Some(cross) = report.cross_terms(&alg.op2, &alg.op1) {
                    writeln!(out, "cross terms a11*a22 + a21*a12 = {cross}")?;
                }
                return Ok(if report.outcome.holds() { 0 } else { 1 });
            }
            match interchange_holds(&alg)? {
                Interchange::Holds => {
                    writeln!(out, "HOLDS")?;
                    Ok(0)
                }
                Interchange::Counterexample { args, lhs, rhs } => {
                    writeln!(out, "COUNTEREXAMPLE")?;
                    for row in &args {
                        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
                        writeln!(out, "{}", row.join(" "))?;
                    }
                    writeln!(out, "lhs {lhs}")?;
                    writeln!(out, "rhs {rhs}")?;
                    Ok(1)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["freealg"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_and_usage_errors() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("quat-auto"));
        let (code, _, err) = run_args(&["no-such-command"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn missing_file_is_input_error() {
        let (code, out, err) = run_args(&["check", "/nonexistent/x.alg"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.starts_with("error: /nonexistent/x.alg"));
    }
}
