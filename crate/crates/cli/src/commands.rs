use std::fmt::Write;

use fluxhoop::feasibility::{
    FeasibilityParams, BOND_LENGTH, CARBON_MASS, CELL_COUNT_EXPONENTS, LEAD_DENSITY,
    LIFETIME_COEFFICIENT, LIFETIME_EXPONENTS,
};
use fluxhoop::model::effective_potential;
use fluxhoop::multichannel::{energy_for_k1r, static_scan, TruncationScheme};
use fluxhoop::scattering::{find_resonance, phase_scan, ResonanceSearch, SINGLE_CHANNEL_LIMIT};
use fluxhoop::variational::{
    bessel_trial_scan, extrapolate_bound, linear_fit, simple_trial_energy, truncation_pairs,
};
use fluxhoop::{Channel, Grid, ModelParams, TransitConvention};

use crate::output::{header, num, Csv};
use crate::settings::{parse_trunc, Settings};
use crate::CliError;

const MODEL_KEYS: [&str; 4] = ["units", "radius", "hoop-mass", "particle-mass"];

fn usage(e: fluxhoop::Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn allow(s: &Settings, extra: &[&str]) -> Result<(), CliError> {
    let mut keys: Vec<&str> = MODEL_KEYS.to_vec();
    keys.extend_from_slice(extra);
    s.check_keys(&keys)
}

fn model(s: &mut Settings) -> Result<ModelParams, CliError> {
    s.or_default("units", "natural");
    match s.get("units") {
        Some("natural") => {
            if let Some(k) = ["radius", "hoop-mass", "particle-mass"]
                .into_iter()
                .find(|k| s.get(k).is_some())
            {
                return Err(CliError::Usage(format!("`{k}` needs --units si")));
            }
            Ok(ModelParams::natural())
        }
        Some("si") => {
            let hoop = FeasibilityParams::default().estimate()?;
            s.or_default("radius", num(hoop.hoop_radius));
            s.or_default("hoop-mass", num(hoop.hoop_mass));
            let particle = match s.get("particle-mass") {
                Some(_) => Some(s.parse::<f64>("particle-mass")?),
                None => None,
            };
            ModelParams::si(s.parse("radius")?, s.parse("hoop-mass")?, particle).map_err(usage)
        }
        Some(other) => Err(CliError::Usage(format!(
            "unknown units `{other}`, expected natural or si"
        ))),
        None => unreachable!("units defaulted above"),
    }
}

fn grid(s: &mut Settings, default: &str) -> Result<Grid, CliError> {
    s.or_default("grid", default);
    s.parse::<Grid>("grid")
}

pub fn dispatch(command: &str, s: &mut Settings) -> Result<String, CliError> {
    match command {
        "phase-scan" => cmd_phase_scan(s),
        "resonance" => cmd_resonance(s),
        "potential" => cmd_potential(s),
        "variational" => cmd_variational(s),
        "static-scan" => cmd_static_scan(s),
        "estimate" => cmd_estimate(s),
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
}

fn cmd_phase_scan(s: &mut Settings) -> Result<String, CliError> {
    allow(s, &["grid"])?;
    let params = model(s)?;
    let g = grid(s, "1.0001:1.2:400")?;
    if g.min <= 1.0 || g.max >= SINGLE_CHANNEL_LIMIT {
        return Err(CliError::Usage(format!(
            "phase-scan grid must lie inside (1, {SINGLE_CHANNEL_LIMIT}) in units of W"
        )));
    }
    let points = phase_scan(&params, &g.points())?;
    let mut csv = Csv::new(
        header("phase-scan", s),
        &["E_over_W", "k1R", "delta_rad", "sin2_delta", "re_S", "im_S"],
    );
    for p in points {
        csv.row(&[
            num(p.e_over_w),
            num(p.k1r),
            num(p.delta),
            num(p.sin2_delta),
            num(p.s.re),
            num(p.s.im),
        ]);
    }
    Ok(csv.finish())
}

fn cmd_resonance(s: &mut Settings) -> Result<String, CliError> {
    allow(s, &["grid", "tolerance", "convention"])?;
    let params = model(s)?;
    let defaults = ResonanceSearch::default();
    let g = grid(s, &defaults.grid.to_string())?;
    s.or_default("tolerance", format!("{:e}", defaults.tolerance));
    s.or_default("convention", "exterior");
    let convention = match s.get("convention") {
        Some("exterior") => TransitConvention::ExteriorKinetic,
        Some("total") => TransitConvention::TotalEnergy,
        Some(other) => {
            return Err(CliError::Usage(format!(
                "unknown convention `{other}`, expected exterior or total"
            )))
        }
        None => unreachable!("convention defaulted above"),
    };
    let tolerance: f64 = s.parse("tolerance")?;
    if !(tolerance > 0.0) {
        return Err(CliError::Usage("tolerance must be > 0".into()));
    }
    let search = ResonanceSearch {
        grid: g,
        tolerance,
        convention,
    };
    let r = find_resonance(&params, &search)?;
    let time_unit = if s.get("units") == Some("si") {
        "s"
    } else {
        "m_H R^2/hbar"
    };
    let tau_width = r.lifetime_abs * r.fwhm_abs / params.hbar();

    let mut t = header("resonance", s);
    let _ = writeln!(t, "S/P resonance");
    let _ = writeln!(t, "  peak            E/W = {:.6}", r.e_peak_over_w);
    let _ = writeln!(
        t,
        "  half maximum    E/W = {:.6} .. {:.6}",
        r.half_max_low, r.half_max_high
    );
    let _ = writeln!(t, "  width           dE/W = {:.6e}", r.fwhm_over_w);
    let _ = writeln!(t, "  lifetime        tau = {:.2} m_H R^2/hbar", r.lifetime);
    let _ = writeln!(
        t,
        "  tau / unit-spin rotation period = {:.1}",
        r.rotation_ratio
    );
    let _ = writeln!(t, "  nu_R / nu_T at the peak = {:.3}", r.nu_ratio);
    let _ = writeln!(t);
    let _ = writeln!(t, "[values]");
    let kv = [
        ("E_peak_over_W", r.e_peak_over_w),
        ("sin2_delta_at_peak", r.sin2_at_peak),
        ("half_max_low_over_W", r.half_max_low),
        ("half_max_high_over_W", r.half_max_high),
        ("FWHM_over_W", r.fwhm_over_w),
        ("tau_mH_R2_over_hbar", r.lifetime),
        ("tau_over_rotation_period", r.rotation_ratio),
        ("nu_R_over_nu_T", r.nu_ratio),
        ("tau_times_FWHM_over_hbar", tau_width),
    ];
    for (k, v) in kv {
        let _ = writeln!(t, "{k}={}", num(v));
    }
    let _ = writeln!(t, "tau_abs={}", num(r.lifetime_abs));
    let _ = writeln!(t, "tau_abs_unit={time_unit}");
    Ok(t)
}

fn cmd_potential(s: &mut Settings) -> Result<String, CliError> {
    allow(s, &["grid", "l-values"])?;
    let params = model(s)?;
    let g = grid(s, "0.1:5:50")?;
    if g.min <= 0.0 {
        return Err(CliError::Usage("radial grid needs r/R > 0".into()));
    }
    s.or_default("l-values", "0,1");
    let ls: Vec<u32> = s.parse_list("l-values")?;
    let w = params.threshold();
    let rad = params.hoop_radius();
    let mut csv = Csv::new(header("potential", s), &["r_over_R", "l", "V_over_W"]);
    for l in ls {
        let ch = if l % 2 == 0 {
            Channel::interior(l)
        } else {
            Channel::exterior(l)
        }
        .map_err(usage)?;
        let interior = l % 2 == 0;
        for x in g.points() {
            if (interior && x > 1.0) || (!interior && x < 1.0) {
                continue;
            }
            let v = effective_potential(&params, ch, x * rad)?;
            csv.row(&[num(x), l.to_string(), num(v / w)]);
        }
    }
    Ok(csv.finish())
}

fn cmd_variational(s: &mut Settings) -> Result<String, CliError> {
    s.or_default("trial", "bessel");
    match s.get("trial") {
        Some("bessel") => variational_bessel(s),
        Some("simple") => variational_simple(s),
        Some(other) => Err(CliError::Usage(format!(
            "unknown trial `{other}`, expected bessel or simple"
        ))),
        None => unreachable!("trial defaulted above"),
    }
}

fn variational_bessel(s: &mut Settings) -> Result<String, CliError> {
    allow(s, &["trial", "trunc", "n-values", "l-values", "e-grid"])?;
    let params = model(s)?;
    let pairs = if let Some(raw) = s.get("trunc") {
        let (n, l) = parse_trunc(raw)?;
        if n % 2 != 0 || l % 2 != 1 || l < n + 1 {
            return Err(CliError::Usage(format!(
                "truncation N={n}, L={l} needs even N, odd L >= N + 1"
            )));
        }
        vec![(n, l)]
    } else {
        s.or_default("n-values", "0,2,4,6,8,10,12");
        s.or_default("l-values", "3,5,7,9,11,15,21,31,41");
        let ns: Vec<u32> = s.parse_list("n-values")?;
        let ls: Vec<u32> = s.parse_list("l-values")?;
        if ns.iter().any(|n| n % 2 != 0) || ls.iter().any(|l| l % 2 != 1) {
            return Err(CliError::Usage(
                "N values must be even and L values odd".into(),
            ));
        }
        truncation_pairs(&ns, &ls)
    };
    if pairs.is_empty() {
        return Err(CliError::Usage("no (N, L) pair with L >= N + 1".into()));
    }
    s.or_default(
        "e-grid",
        "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,0.95,0.98,0.99,0.995,0.999,1",
    );
    let e_grid: Vec<f64> = s.parse_list("e-grid")?;
    if e_grid.iter().any(|e| !(*e > 0.0 && *e <= 1.0)) {
        return Err(CliError::Usage(
            "construction energies must lie in (0, 1]".into(),
        ));
    }
    let scan = bessel_trial_scan(&params, &pairs, &e_grid)?;

    let mut csv = Csv::new(header("variational", s), &["N", "L", "e", "E_min"]);
    for r in &scan.results {
        csv.row(&[
            r.n_max.to_string(),
            r.l_max.to_string(),
            num(r.e_star),
            num(r.e_min),
        ]);
    }

    // E_min(N+2, L, e) <= E_min(N, L, e) on every sampled e
    let mut monotone = true;
    for a in &scan.samples {
        if let Some(b) = scan
            .samples
            .iter()
            .find(|b| b.0 == a.0 + 2 && b.1 == a.1 && b.2 == a.2)
        {
            monotone &= b.3 <= a.3 + 1e-12;
        }
    }
    csv.comment(&format!("monotone_in_N={monotone}"));
    let above = scan.results.iter().all(|r| r.e_min > 1.0);
    csv.comment(&format!("all_above_threshold={above}"));

    let pts: Vec<(u32, u32, f64)> = scan
        .results
        .iter()
        .map(|r| (r.n_max, r.l_max, r.e_min))
        .collect();
    match extrapolate_bound(&pts, 2) {
        Ok(ex) => {
            for f in &ex.fits {
                csv.comment(&format!(
                    "fit N={} alpha={} beta={} r2={} points={}",
                    f.n_max,
                    num(f.alpha),
                    num(f.beta),
                    num(f.r_squared),
                    f.points
                ));
            }
            csv.comment(&format!("damping_exponent={}", num(ex.exponent)));
            csv.comment(&format!("alpha_fit_r2={}", num(ex.alpha_fit.r_squared)));
            csv.comment(&format!("bound_over_W={}", num(ex.bound)));
            csv.comment(&format!("slope_limit={}", num(ex.slope_limit)));
            csv.comment(&format!(
                "bound_inverse_N_over_W={}",
                num(ex.bound_inverse_n)
            ));
            csv.comment(&format!(
                "slope_limit_inverse_N={}",
                num(ex.slope_limit_inverse_n)
            ));
        }
        Err(fluxhoop::Error::InsufficientData(why)) => {
            csv.comment(&format!("extrapolation=skipped ({why})"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(csv.finish())
}

fn variational_simple(s: &mut Settings) -> Result<String, CliError> {
    allow(s, &["trial", "l-max"])?;
    let params = model(s)?;
    s.or_default("l-max", "201");
    let l_max: u32 = s.parse("l-max")?;
    let trial = simple_trial_energy(&params, l_max).map_err(usage)?;
    let w = params.threshold();
    let mut csv = Csv::new(
        header("variational", s),
        &[
            "L",
            "ln_L",
            "channel_energy",
            "cumulative_energy",
            "quotient",
        ],
    );
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (i, ch) in trial.channels.iter().enumerate() {
        let ln_l = f64::from(ch.l).ln();
        let cum = trial.cumulative_energy[i];
        csv.row(&[
            ch.l.to_string(),
            num(ln_l),
            num(ch.energy() / w),
            num(cum),
            num(cum / trial.cumulative_norm[i]),
        ]);
        if ch.l >= 21 {
            x.push(ln_l);
            y.push(cum);
        }
    }
    match linear_fit(&x, &y) {
        Ok(fit) => {
            csv.comment("cumulative_energy = intercept + slope ln L over L >= 21");
            csv.comment(&format!("slope={}", num(fit.slope)));
            csv.comment(&format!("intercept={}", num(fit.intercept)));
            csv.comment(&format!("r2={}", num(fit.r_squared)));
        }
        Err(_) => csv.comment("fit=skipped (needs L >= 23)"),
    }
    Ok(csv.finish())
}

fn cmd_static_scan(s: &mut Settings) -> Result<String, CliError> {
    allow(s, &["grid", "trunc", "axis", "l-values"])?;
    let params = model(s)?;
    s.or_default("axis", "k1r");
    let by_k = match s.get("axis") {
        Some("k1r") => true,
        Some("energy") => false,
        Some(other) => {
            return Err(CliError::Usage(format!(
                "unknown axis `{other}`, expected k1r or energy"
            )))
        }
        None => unreachable!("axis defaulted above"),
    };
    let g = grid(s, if by_k { "50:200:4" } else { "40:100:4" })?;
    if g.min <= if by_k { 0.0 } else { 1.0 } {
        return Err(CliError::Usage(
            "static-scan grid must lie above threshold".into(),
        ));
    }
    let schemes: Vec<TruncationScheme> = if let Some(raw) = s.get("trunc") {
        let (n, l) = parse_trunc(raw)?;
        vec![TruncationScheme::new(n, l).map_err(usage)?]
    } else {
        s.or_default("l-values", "1,3,5,7,9");
        s.parse_list::<u32>("l-values")?
            .into_iter()
            .map(|l| TruncationScheme::from_l(l).map_err(usage))
            .collect::<Result<_, _>>()?
    };
    let mut jobs = Vec::new();
    for x in g.points() {
        let e = if by_k {
            energy_for_k1r(&params, x)
        } else {
            params.energy(x)
        };
        for t in &schemes {
            jobs.push((x, e, *t));
        }
    }
    let solve: Vec<_> = jobs.iter().map(|&(_, e, t)| (e, t)).collect();
    let sets = static_scan(&params, &solve)?;
    let first = if by_k { "k1R" } else { "E_over_W" };
    let mut csv = Csv::new(
        header("static-scan", s),
        &[first, "L", "re_c1", "im_c1", "chi", "sum_abs_cl_sq_above_1"],
    );
    for ((x, _, t), a) in jobs.iter().zip(&sets) {
        let c1 = a.s();
        csv.row(&[
            num(*x),
            t.l_max().to_string(),
            num(c1.re),
            num(c1.im),
            num(a.chi()),
            num(a.outgoing_above_p()),
        ]);
    }
    Ok(csv.finish())
}

fn cmd_estimate(s: &mut Settings) -> Result<String, CliError> {
    s.check_keys(&[
        "alpha",
        "beta",
        "n",
        "carbon-mass",
        "bond-length",
        "density",
    ])?;
    s.or_default("alpha", "50");
    s.or_default("beta", "50");
    s.or_default("n", "50");
    s.or_default("carbon-mass", format!("{CARBON_MASS:e}"));
    s.or_default("bond-length", format!("{BOND_LENGTH:e}"));
    s.or_default("density", format!("{LEAD_DENSITY:e}"));
    let p = FeasibilityParams {
        alpha: s.parse("alpha")?,
        beta: s.parse("beta")?,
        n: s.parse("n")?,
        carbon_mass: s.parse("carbon-mass")?,
        bond_length: s.parse("bond-length")?,
        particle_density: s.parse("density")?,
    };
    let r = p.estimate().map_err(usage)?;
    let mut t = header("estimate", s);
    let _ = writeln!(
        t,
        "# lifetime = {LIFETIME_COEFFICIENT} m_H R^2 / hbar with m_H the hoop mass"
    );
    let kv = [
        ("cells", r.cells),
        ("hoop_radius_m", r.hoop_radius),
        ("hoop_mass_kg", r.hoop_mass),
        ("particle_radius_m", r.particle_radius),
        ("particle_mass_kg", r.particle_mass),
        ("lifetime_s", r.lifetime),
        ("lifetime_hr", r.lifetime / 3600.0),
        ("temperature_K", r.temperature),
        ("cells_exponent_alpha", CELL_COUNT_EXPONENTS.0),
        ("cells_exponent_beta", CELL_COUNT_EXPONENTS.1),
        ("cells_exponent_n", CELL_COUNT_EXPONENTS.2),
        ("lifetime_exponent_alpha", LIFETIME_EXPONENTS.0),
        ("lifetime_exponent_beta", LIFETIME_EXPONENTS.1),
        ("lifetime_exponent_n", LIFETIME_EXPONENTS.2),
    ];
    for (k, v) in kv {
        let _ = writeln!(t, "{k}={}", num(v));
    }
    Ok(t)
}
