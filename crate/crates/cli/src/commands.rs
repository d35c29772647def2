use std::env;

use morsekg::oracle::{self, GridSpec, MorseProblem};
use morsekg::report::{self, SweepGrid, PUBLISHED_SPACING};
use morsekg::wavefunction::{determinant_residual, level_series};
use morsekg::{
    complex_constant_mass_energy, complex_energy, constant_mass_energy, evaluate_psi,
    normalize_numeric, pdm_energy, special_case_energy, Branch, Complex, ComplexCase,
    ComplexReading, MassModel, MorseSystem, PotentialSpec, QuantizedLevel, Registry,
    SignConvention,
};

use crate::args::{
    BranchArg, Cli, Command, Format, LevelsArgs, SweepArgs, SystemArgs, ValidateArgs, VerifyArgs,
    WavefnArgs,
};
use crate::output::*;

/// Environment variable naming an alternative molecule registry file.
pub const REGISTRY_ENV: &str = "MORSEKG_REGISTRY";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<morsekg::Error> for CliError {
    fn from(e: morsekg::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Rendered output plus whether a verification found mismatches.
pub struct Outcome {
    pub text: String,
    pub mismatches: bool,
}

impl Outcome {
    fn clean(text: String) -> Self {
        Self {
            text,
            mismatches: false,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Levels(a) => levels(cli, a).map(Outcome::clean),
        Command::Table1 => table1(cli).map(Outcome::clean),
        Command::Sweep(a) => sweep(cli, a).map(Outcome::clean),
        Command::Wavefn(a) => wavefn(cli, a).map(Outcome::clean),
        Command::Verify(a) => verify(cli, a),
        Command::ValidateOracle(a) => validate(cli, a),
    }
}

fn registry() -> Result<Registry, CliError> {
    match env::var_os(REGISTRY_ENV) {
        Some(path) if !path.is_empty() => Ok(Registry::from_path(path)?),
        _ => Ok(Registry::builtin()),
    }
}

fn resolve_system(sys: &SystemArgs) -> Result<(MorseSystem<f64>, Option<String>), CliError> {
    let m1_from = |m0: f64| -> f64 {
        match (sys.m1, sys.inv_m) {
            (Some(m1), _) => m1,
            (None, Some(r)) => r * m0,
            (None, None) => 0.0,
        }
    };
    if let Some(name) = &sys.molecule {
        if sys.m0.is_some() {
            return Err(CliError::Usage(
                "--m0 comes from the molecule; drop it".into(),
            ));
        }
        let reg = registry()?;
        let mol = reg.lookup(name)?;
        let m1 = m1_from(mol.rest_energy_mev());
        return Ok((MorseSystem::from_molecule(mol, m1)?, Some(mol.name.clone())));
    }
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("either --molecule or {flag} is required")))
    };
    let v1 = need(sys.v1, "--v1")?;
    let v2 = need(sys.v2, "--v2")?;
    let beta = need(sys.beta, "--beta")?;
    let q_inv = need(sys.q_inv, "--q-inv")?;
    let m0 = need(sys.m0, "--m0")?;
    let pot = PotentialSpec::real(v1, v2, beta)?;
    let mass = MassModel::new(m0, m1_from(m0))?;
    Ok((MorseSystem::new(pot, mass, q_inv)?, None))
}

/// Parses `a..b` (inclusive), `a..b:step` or `a,b,c`.
pub fn parse_n_range(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("invalid n range '{spec}'"));
    let spec = spec.trim();
    let out: Vec<usize> = if let Some((lo, rest)) = spec.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (hi, step.trim().parse::<usize>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if step == 0 || hi < lo {
            return Err(bad());
        }
        (lo..=hi).step_by(step).collect()
    } else {
        spec.split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn branches(b: BranchArg) -> Vec<Branch> {
    match b {
        BranchArg::Both => Branch::BOTH.to_vec(),
        BranchArg::Particle => vec![Branch::Particle],
        BranchArg::Antiparticle => vec![Branch::Antiparticle],
    }
}

fn level_record(l: &QuantizedLevel<f64>) -> LevelRecord {
    LevelRecord {
        n: l.n,
        branch: l.branch.symbol().to_string(),
        energy_re: l.energy.re,
        energy_im: l.energy.im,
        l_re: l.l.re,
        l_im: l.l.im,
        source: l.source.as_str().to_string(),
        negative_radicand: l.negative_radicand,
    }
}

fn levels(cli: &Cli, a: &LevelsArgs) -> Result<String, CliError> {
    let ns = parse_n_range(&a.n)?;
    let mut out = Vec::new();
    let mut note = None;
    let units;
    if a.complex {
        let (u1, u2, u3) = (
            a.u1.unwrap_or(0.0),
            a.u2.unwrap_or(0.0),
            a.u3.unwrap_or(0.0),
        );
        let case = ComplexCase::with_q_prime(u1, u2, u3, a.q_prime)?;
        let m0 = a.system.m0.unwrap_or(1.0);
        let m1 = match (a.system.m1, a.system.inv_m) {
            (Some(m1), _) => m1,
            (None, Some(r)) => r * m0,
            _ => 0.0,
        };
        let mass = MassModel::new(m0, m1)?;
        let reading = if a.strict_literal {
            ComplexReading::StrictLiteral
        } else {
            ComplexReading::Consistent
        };
        for &n in &ns {
            for b in branches(a.branch) {
                out.push(if a.constant_mass {
                    complex_constant_mass_energy(n, &case, m0, b, reading)?
                } else {
                    complex_energy(n, &case, &mass, b)
                });
            }
        }
        units = "natural (Q' scale)".to_string();
    } else {
        let (sys, molecule) = resolve_system(&a.system)?;
        for &n in &ns {
            for b in branches(a.branch) {
                out.push(if a.special_case {
                    special_case_energy(n, &sys, b)?
                } else if a.constant_mass {
                    constant_mass_energy(n, &sys, b)?
                } else {
                    pdm_energy(n, &sys, b)
                });
            }
        }
        if a.special_case {
            note = Some("special case: particle branch (+) carries the leading minus sign".into());
        }
        units = if molecule.is_some() { "MeV" } else { "input" }.to_string();
    }
    let records: Vec<LevelRecord> = out.iter().map(level_record).collect();
    Ok(match cli.format {
        Format::Json => json(&LevelsDoc {
            command: "levels".into(),
            units,
            note,
            levels: records,
        }),
        Format::Csv => {
            let mut csv = Csv::new(
                cli.digits,
                &[
                    "n",
                    "branch",
                    "energy_re",
                    "energy_im",
                    "l_re",
                    "l_im",
                    "source",
                    "negative_radicand",
                ],
            );
            for r in records {
                csv.row(vec![
                    r.n.into(),
                    r.branch.into(),
                    r.energy_re.into(),
                    r.energy_im.into(),
                    r.l_re.into(),
                    r.l_im.into(),
                    r.source.into(),
                    r.negative_radicand.into(),
                ]);
            }
            csv.finish()
        }
    })
}

fn table1(cli: &Cli) -> Result<String, CliError> {
    let reg = registry()?;
    let rows = report::table1(&reg)?;
    let mut spacings = Vec::new();
    for (name, published) in PUBLISHED_SPACING {
        spacings.push(SpacingRecord {
            molecule: name.to_string(),
            spacing: report::level_spacing(reg.lookup(name)?)?,
            published,
        });
    }
    Ok(match cli.format {
        Format::Json => json(&TableDoc {
            command: "table1".into(),
            units: "MeV".into(),
            rows: rows
                .iter()
                .map(|r| TableRecord {
                    molecule: r.molecule.clone(),
                    n: r.n,
                    energy_plus: r.energy,
                    energy_minus: -r.energy,
                    published: r.published,
                    deviation: r.deviation,
                })
                .collect(),
            spacings,
        }),
        Format::Csv => {
            let mut csv = Csv::new(
                cli.digits,
                &[
                    "n", "E_H2", "E_LiH", "E_HCl", "dev_H2", "dev_LiH", "dev_HCl",
                ],
            );
            for &n in &report::TABLE_N {
                let pick: Vec<_> = rows.iter().filter(|r| r.n == n).collect();
                let mut cells: Vec<Cell> = vec![n.into()];
                cells.extend(pick.iter().map(|r| Cell::Num(r.energy)));
                cells.extend(pick.iter().map(|r| Cell::Num(r.deviation)));
                csv.row(cells);
            }
            csv.finish()
        }
    })
}

fn sweep(cli: &Cli, a: &SweepArgs) -> Result<String, CliError> {
    let reg = registry()?;
    let mol = reg.lookup(&a.molecule)?;
    let grid = SweepGrid {
        min: a.min,
        max: a.max,
        points: a.points,
        include_limit: !a.no_limit_row,
    };
    let rows = report::sweep(mol, a.n, &grid)?;
    let records: Vec<SweepRecord> = rows
        .iter()
        .map(|r| SweepRecord {
            inverse_m: r.inverse_m,
            m1_energy: r.m1_energy,
            particle_re: r.particle.re,
            particle_im: r.particle.im,
            antiparticle_re: r.antiparticle.re,
            antiparticle_im: r.antiparticle.im,
        })
        .collect();
    Ok(match cli.format {
        Format::Json => json(&SweepDoc {
            command: "sweep".into(),
            molecule: mol.name.clone(),
            n: a.n,
            units: "MeV".into(),
            rows: records,
        }),
        Format::Csv => {
            let mut csv = Csv::new(
                cli.digits,
                &[
                    "inverse_m",
                    "m1_mev",
                    "E_p_re",
                    "E_p_im",
                    "E_a_re",
                    "E_a_im",
                ],
            );
            for r in records {
                csv.row(vec![
                    r.inverse_m.into(),
                    r.m1_energy.into(),
                    r.particle_re.into(),
                    r.particle_im.into(),
                    r.antiparticle_re.into(),
                    r.antiparticle_im.into(),
                ]);
            }
            csv.finish()
        }
    })
}

fn cv(c: Complex<f64>) -> ComplexValue {
    ComplexValue { re: c.re, im: c.im }
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn wavefn(cli: &Cli, a: &WavefnArgs) -> Result<String, CliError> {
    if a.samples < 2 || a.x_max.is_nan() || a.x_max <= 0.0 {
        return Err(CliError::Usage(
            "--samples >= 2 and --x-max > 0 required".into(),
        ));
    }
    let (sys, _) = resolve_system(&a.system)?;
    let signs = if cli.paper_signs {
        SignConvention::PaperSigns
    } else {
        SignConvention::Consistent
    };
    let (energy, ws) = level_series(a.n, &sys, signs)?;
    let rp = sys.reduce(energy, signs);
    let beta = sys.potential.beta();
    let normalizable = ws.l.re > 0.0;
    let norm_scale = if a.normalize {
        Some(normalize_numeric(&ws, beta)?)
    } else {
        None
    };
    let scale = norm_scale.unwrap_or(1.0);
    let mut samples = Vec::with_capacity(a.samples);
    for i in 0..a.samples {
        let x = a.x_max * i as f64 / (a.samples - 1) as f64;
        let psi = evaluate_psi(&ws, x, beta)? * scale;
        samples.push(PsiSample {
            x,
            re: finite(psi.re),
            im: finite(psi.im),
        });
    }
    let meta = SeriesMeta {
        n: a.n,
        energy: cv(energy),
        p: cv(ws.p),
        q: cv(ws.q),
        l: cv(ws.l),
        signs: match signs {
            SignConvention::Consistent => "consistent",
            SignConvention::PaperSigns => "paper-signs",
        }
        .into(),
        coefficients: ws.coefficients.iter().copied().map(cv).collect(),
        tail: ws.tail.iter().copied().map(cv).collect(),
        truncated_exactly: ws.truncated_exactly,
        determinant_residual: determinant_residual(&rp, ws.l, a.n),
        normalizable_at_infinity: normalizable,
        norm_scale,
    };
    Ok(match cli.format {
        Format::Json => json(&WavefnDoc {
            command: "wavefn".into(),
            series: meta,
            samples,
        }),
        Format::Csv => {
            let d = cli.digits;
            let c = |v: ComplexValue| format!("{}{:+}i", sig(v.re, d), sig(v.im, d));
            let mut comments = vec![
                format!("n={}", meta.n),
                format!("energy={}", c(meta.energy.clone())),
                format!("p={}", c(meta.p.clone())),
                format!("q={}", c(meta.q.clone())),
                format!("L={}", c(meta.l.clone())),
                format!("signs={}", meta.signs),
                format!("truncated_exactly={}", meta.truncated_exactly),
                format!("determinant_residual={}", sig(meta.determinant_residual, d)),
                format!("normalizable_at_infinity={}", meta.normalizable_at_infinity),
            ];
            if let Some(s) = meta.norm_scale {
                comments.push(format!("norm_scale={}", sig(s, d)));
            }
            for (k, a) in meta.coefficients.iter().enumerate() {
                comments.push(format!("a{k}={}", c(a.clone())));
            }
            let mut csv = Csv::with_comments(d, &comments, &["x", "re_psi", "im_psi"]);
            for s in samples {
                csv.row(vec![
                    s.x.into(),
                    s.re.map_or(Cell::Text("nan".into()), Cell::Num),
                    s.im.map_or(Cell::Text("nan".into()), Cell::Num),
                ]);
            }
            csv.finish()
        }
    })
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Outcome, CliError> {
    if a.levels == 0 {
        return Err(CliError::Usage("--levels must be at least 1".into()));
    }
    let reg = registry()?;
    let mol = reg.lookup(&a.molecule)?;
    let rep = report::verify(mol, a.levels, a.points, a.tolerance)?;
    let rows: Vec<VerifyRecord> = rep
        .comparison
        .rows
        .iter()
        .map(|r| VerifyRecord {
            n: r.n,
            branch: r.branch.symbol().to_string(),
            closed_form: r.closed_form.re,
            oracle: r.oracle.map(|o| o.re),
            lambda: rep.oracle.richardson_estimate.get(r.n).copied(),
            abs_deviation: r.abs_deviation,
            rel_deviation: r.rel_deviation,
            oracle_decays: r.oracle_decays,
            matched: r.matched,
        })
        .collect();
    let mismatches = rep.comparison.mismatches();
    let doc = VerifyDoc {
        command: "verify".into(),
        molecule: rep.molecule.clone(),
        units: "MeV".into(),
        grid_points: rep.oracle.grid.points,
        x_max: rep.oracle.grid.x_max,
        tolerance: a.tolerance,
        provenance: format!("{:016x}", rep.comparison.provenance),
        mismatches,
        rows,
    };
    let text = match cli.format {
        Format::Json => json(&doc),
        Format::Csv => {
            let comments = vec![
                format!("molecule={}", doc.molecule),
                format!("grid_points={}", doc.grid_points),
                format!("x_max={}", sig(doc.x_max, cli.digits)),
                format!("tolerance={}", sig(doc.tolerance, cli.digits)),
                format!("provenance={}", doc.provenance),
                format!("mismatches={}", doc.mismatches),
            ];
            let mut csv = Csv::with_comments(
                cli.digits,
                &comments,
                &[
                    "n",
                    "branch",
                    "closed_form",
                    "oracle",
                    "lambda",
                    "abs_dev",
                    "rel_dev",
                    "oracle_decays",
                    "matched",
                ],
            );
            let opt = |v: Option<f64>| v.map_or(Cell::Text(String::new()), Cell::Num);
            for r in doc.rows {
                csv.row(vec![
                    r.n.into(),
                    r.branch.into(),
                    r.closed_form.into(),
                    opt(r.oracle),
                    opt(r.lambda),
                    opt(r.abs_deviation),
                    opt(r.rel_deviation),
                    r.oracle_decays
                        .map_or(Cell::Text(String::new()), Cell::Bool),
                    r.matched.into(),
                ]);
            }
            csv.finish()
        }
    };
    Ok(Outcome {
        text,
        mismatches: mismatches > 0,
    })
}

fn validate(cli: &Cli, a: &ValidateArgs) -> Result<Outcome, CliError> {
    let problem = MorseProblem::default();
    let grid: GridSpec<f64> = problem.default_grid(a.points)?;
    let rep = oracle::validate_oracle_with(problem, &grid)?;
    let doc = ValidateDoc {
        command: "validate-oracle".into(),
        depth: rep.problem.depth,
        beta: rep.problem.beta,
        mass: rep.problem.mass,
        grid_points: rep.grid.points,
        levels: rep
            .levels
            .iter()
            .map(|l| ValidateRecord {
                n: l.n,
                exact: l.exact,
                raw: l.raw,
                richardson: l.richardson,
                relative_error: l.relative_error,
            })
            .collect(),
        bound_states_found: rep.bound_levels.len(),
        bound_states_expected: rep.expected_bound_count,
        box_convergence_ratio: rep.box_convergence_ratio,
        richardson_spread: rep.richardson_spread,
        tolerance: rep.tolerance,
        passed: rep.passed,
    };
    let text = match cli.format {
        Format::Json => json(&doc),
        Format::Csv => {
            let d = cli.digits;
            let comments = vec![
                format!("grid_points={}", doc.grid_points),
                format!("bound_states_found={}", doc.bound_states_found),
                format!("bound_states_expected={}", doc.bound_states_expected),
                format!(
                    "box_convergence_ratio={}",
                    sig(doc.box_convergence_ratio, d)
                ),
                format!("richardson_spread={}", sig(doc.richardson_spread, d)),
                format!("passed={}", doc.passed),
            ];
            let mut csv = Csv::with_comments(
                d,
                &comments,
                &["n", "exact", "raw", "richardson", "rel_error"],
            );
            for l in &doc.levels {
                csv.row(vec![
                    l.n.into(),
                    l.exact.into(),
                    l.raw.into(),
                    l.richardson.into(),
                    l.relative_error.into(),
                ]);
            }
            csv.finish()
        }
    };
    Ok(Outcome {
        text,
        mismatches: !rep.passed,
    })
}
