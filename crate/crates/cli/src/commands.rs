//! One function per subcommand, each producing a [`Report`].

use origami_sv_core::arith::{is_prime, to_f64};
use origami_sv_core::asymptotics::{s_sums, DivisorSumTable};
use origami_sv_core::census::{
    closed_form_orbit_size, closed_form_total, leading_term, parametric_two_cyl_count, rel_err_vs_limit,
    tilde_c_parametric, OrbitCensus,
};
use origami_sv_core::cylinders::{canonical_cusp_rep, cusp_width_formula, horizontal_decomposition};
use origami_sv_core::geodesics::{
    directions, tally_direction, zeta2, CountReport, Direction, DirectionBudget, LengthBound, Tally,
};
use origami_sv_core::orbit::{orbit_bfs_with_budget, primitive_orbits, BfsBudget, Orbit, OrbitLabel};
use origami_sv_core::origami::Origami;
use origami_sv_core::{BigInt, Error, ExactRational};
use rayon::prelude::*;
use serde_json::Value;

use crate::config::{
    Command, ConstantsArgs, ConstantsMode, CuspsArgs, GeodesicsArgs, LimitsArgs, OrbitsArgs, RunConfig, SumsArgs,
};
use crate::error::CliError;
use crate::io::load_surface;
use crate::report::{Cell, Report};

pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    let echo = config.echo();
    match &config.command {
        Command::Orbits(a) => orbits(a, echo),
        Command::Cusps(a) => cusps(a, echo),
        Command::Constants(a) => constants(a, echo),
        Command::Sums(a) => sums(a, echo),
        Command::Geodesics(a) => geodesics(a, echo),
        Command::Limits(a) => limits(a, echo),
    }
}

fn int(n: u64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

fn budget(max_orbit_size: usize) -> BfsBudget {
    BfsBudget { max_orbit_size }
}

fn rational_text(x: &ExactRational) -> String {
    x.to_string()
}

fn orbits(args: &OrbitsArgs, echo: Value) -> Result<Report, CliError> {
    let n = args.n;
    let mut report = Report::new(
        "orbits",
        echo,
        &["n", "orbit", "size", "cusps", "two_cyl_cusps", "one_cyl_cusps", "cusp_widths"],
    );
    let found = primitive_orbits(n, budget(args.max_orbit_size))?;
    let mut total = 0u64;
    for (label, orbit) in &found {
        let census = OrbitCensus::from_orbit(orbit, *label)?;
        let widths: Vec<String> = orbit.cusp_widths().iter().map(|w| w.to_string()).collect();
        total += census.size;
        report.push(vec![
            n.into(),
            label.as_str().into(),
            census.size.into(),
            orbit.cusps.len().into(),
            census.two_cylinder.len().into(),
            census.one_cylinder.len().into(),
            widths.join(";").into(),
        ]);
    }
    let formula = closed_form_total(n);
    let leading = leading_term(n);
    report.summarize("orbits", found.len());
    report.summarize("total", total);
    report.summarize("primitive_count_formula", rational_text(&formula));
    report.summarize("formula_matches", int(total) == formula);
    report.summarize("leading_term", to_f64(&leading));
    report.summarize("ratio_to_leading", to_f64(&(int(total) / leading)));
    Ok(report)
}

fn cusps(args: &CuspsArgs, echo: Value) -> Result<Report, CliError> {
    let b = budget(args.max_orbit_size);
    let orbits: Vec<(OrbitLabel, Orbit)> = match args.n {
        Some(n) => primitive_orbits(n, b)?,
        None => {
            let seed = load_surface(args.origami.as_deref(), args.coords.as_deref())?;
            let orbit = orbit_bfs_with_budget(&seed, b)?;
            vec![(origami_sv_core::orbit::label_orbit(&orbit), orbit)]
        }
    };
    let mut report = Report::new(
        "cusps",
        echo,
        &["n", "orbit", "cusp", "cylinders", "a", "b", "h", "y", "t1", "t2", "width", "formula_width"],
    );
    let mut mismatches = 0u64;
    for (label, orbit) in &orbits {
        for (i, cusp) in orbit.cusps.iter().enumerate() {
            let d = horizontal_decomposition(&orbit.surfaces[cusp[0]])?;
            let width = cusp.len() as u64;
            let mut row = vec![(orbit.n() as u64).into(), label.as_str().into(), i.into(), d.len().into()];
            match d.two_cyl_coords() {
                Some(c) => {
                    let rep = canonical_cusp_rep(&c);
                    let formula = cusp_width_formula(&c);
                    if formula != width {
                        mismatches += 1;
                    }
                    row.extend([rep.a, rep.b, rep.h, rep.y, rep.t1, rep.t2].map(Cell::from));
                    row.extend([width.into(), formula.into()]);
                }
                None => {
                    let c = &d.cylinders[0];
                    row.extend([c.width.into(), Cell::Empty, c.height.into(), Cell::Empty, c.twist.into(), Cell::Empty]);
                    row.extend([width.into(), Cell::Empty]);
                }
            }
            report.push(row);
        }
    }
    report.summarize("orbits", orbits.len());
    report.summarize("cusps", report.rows.len());
    report.summarize("formula_mismatches", mismatches);
    if mismatches > 0 {
        report.failures.push(format!("{mismatches} cusp widths differ from the formula"));
    }
    Ok(report)
}

struct ConstantRow {
    n: u64,
    label: OrbitLabel,
    size: u64,
    two_cyl: ExactRational,
    tilde_c: ExactRational,
    mode: &'static str,
    failure: Option<String>,
}

fn constants_for_prime(p: u64, args: &ConstantsArgs) -> Result<Vec<ConstantRow>, CliError> {
    let exact = match args.mode {
        ConstantsMode::Exact => true,
        ConstantsMode::ClosedForm => false,
        ConstantsMode::Auto => p <= args.exact_max,
    };
    let mut rows = Vec::new();
    if exact {
        for (label, orbit) in primitive_orbits(p, budget(args.max_orbit_size))? {
            let census = OrbitCensus::from_orbit(&orbit, label)?;
            let oracle = census.tilde_c();
            let parametric = tilde_c_parametric(p, label, &int(census.size))?;
            let two_cyl = int(census.two_cyl_surfaces());
            let mut failure = None;
            if oracle != parametric {
                failure = Some(format!("p = {p}, orbit {label}: enumerated {oracle}, parametric {parametric}"));
            } else if two_cyl != parametric_two_cyl_count(p, label)? {
                failure = Some(format!("p = {p}, orbit {label}: two-cylinder count differs from the parameter sum"));
            }
            rows.push(ConstantRow { n: p, label, size: census.size, two_cyl, tilde_c: oracle, mode: "exact", failure });
        }
    } else {
        for label in [OrbitLabel::A, OrbitLabel::B] {
            let size = closed_form_orbit_size(p, label)?;
            let tilde_c = tilde_c_parametric(p, label, &size)?;
            let size = size.to_integer().try_into().map_err(|_| CliError::Resource(format!("orbit size overflow at {p}")))?;
            rows.push(ConstantRow {
                n: p,
                label,
                size,
                two_cyl: parametric_two_cyl_count(p, label)?,
                tilde_c,
                mode: "closed-form",
                failure: None,
            });
        }
    }
    Ok(rows)
}

fn constants(args: &ConstantsArgs, echo: Value) -> Result<Report, CliError> {
    let per_prime: Vec<Vec<ConstantRow>> = args
        .prime_list
        .par_iter()
        .map(|&p| constants_for_prime(p, args))
        .collect::<Result<_, _>>()?;
    let mut report = Report::new(
        "constants",
        echo,
        &[
            "n",
            "orbit",
            "orbit_size",
            "two_cyl_count",
            "tilde_c_num",
            "tilde_c_den",
            "tilde_c_float",
            "rel_err_vs_10_3",
            "mode",
        ],
    );
    for row in per_prime.into_iter().flatten() {
        let [num, den] = Cell::rational(&row.tilde_c);
        let [two_cyl, _] = Cell::rational(&row.two_cyl);
        report.push(vec![
            row.n.into(),
            row.label.as_str().into(),
            row.size.into(),
            two_cyl,
            num,
            den,
            to_f64(&row.tilde_c).into(),
            to_f64(&rel_err_vs_limit(&row.tilde_c)).into(),
            row.mode.into(),
        ]);
        if let Some(f) = row.failure {
            report.failures.push(f);
        }
    }
    report.summarize("limit", "10/3");
    report.summarize("rows", report.rows.len());
    report.summarize("consistent", report.failures.is_empty());
    Ok(report)
}

fn sums(args: &SumsArgs, echo: Value) -> Result<Report, CliError> {
    let max = args.prime_list.iter().copied().max().unwrap_or(3) as usize;
    let table = DivisorSumTable::new(max);
    let reports = args
        .prime_list
        .par_iter()
        .map(|&p| s_sums(&table, p))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut report = Report::new(
        "sums",
        echo,
        &[
            "n", "S_num", "S_den", "S", "S_ow_num", "S_ow_den", "S_ow", "S_oh_num", "S_oh_den", "S_oh",
            "S_eo_num", "S_eo_den", "S_eo", "err_S", "err_ow", "err_oh", "err_eo",
        ],
    );
    for r in &reports {
        let mut row = vec![r.n.into()];
        for (v, x) in r.values().iter().zip(r.floats()) {
            row.extend(Cell::rational(v));
            row.push(x.into());
        }
        row.extend(r.errors().map(Cell::from));
        report.push(row);
    }
    report.summarize("limits", Value::from(vec!["5/4", "1/2", "1/2", "1/4"]));
    report.summarize("identity_checked", true);
    Ok(report)
}

/// Per-bound tallies over every direction up to the largest bound.
fn parallel_tallies(o: &Origami, lengths: &[LengthBound], max: LengthBound) -> Result<(Vec<Tally>, u64), CliError> {
    let dirs: Vec<Direction> = directions(max).collect();
    let tallies = dirs
        .par_chunks(2048)
        .map(|chunk| {
            let mut t = vec![Tally::default(); lengths.len()];
            for &d in chunk {
                tally_direction(o, d, lengths, &mut t)?;
            }
            Ok(t)
        })
        .try_reduce(
            || vec![Tally::default(); lengths.len()],
            |mut acc, t| {
                for (a, b) in acc.iter_mut().zip(&t) {
                    a.merge(b);
                }
                Ok::<_, Error>(acc)
            },
        )?;
    Ok((tallies, dirs.len() as u64))
}

fn geodesics(args: &GeodesicsArgs, echo: Value) -> Result<Report, CliError> {
    let o = load_surface(args.origami.as_deref(), args.coords.as_deref())?;
    if !o.is_h2() {
        return Err(Error::NotInH2(format!("cone orders {:?}", o.stratum().cone_orders)).into());
    }
    let lengths = args.lengths()?;
    let max = *lengths
        .iter()
        .max_by(|a, b| a.as_rational().cmp(&b.as_rational()))
        .ok_or_else(|| CliError::Validation("no --length given".into()))?;
    DirectionBudget { max_directions: args.max_directions }.check(max)?;

    // c̃ needs the orbit, which exists only for primitive surfaces.
    let tilde_c = match orbit_bfs_with_budget(&o, budget(args.max_orbit_size)) {
        Ok(orbit) => {
            let label = origami_sv_core::orbit::label_orbit(&orbit);
            Some(OrbitCensus::from_orbit(&orbit, label)?.tilde_c())
        }
        Err(Error::NotPrimitive) => None,
        Err(e) => return Err(e.into()),
    };
    let ratio = tilde_c.as_ref().map(|c| c / int(2 * o.n() as u64));
    let predicted = ratio.as_ref().map(|r| to_f64(r) / zeta2());

    let (tallies, visited) = parallel_tallies(&o, &lengths, max)?;
    let mut report = Report::new("geodesics", echo, &["L", "N_reg", "N_irr", "coeff_reg", "predicted", "rel_err"]);
    let mut last_err = None;
    for ((text, &length), t) in args.length.iter().zip(&lengths).zip(&tallies) {
        let c = CountReport { length, n_reg: t.regular, n_irr: t.irregular };
        let rel = predicted.map(|p| (c.coeff_reg() - p).abs() / p);
        if length == max {
            last_err = rel;
        }
        report.push(vec![
            text.trim().into(),
            c.n_reg.into(),
            c.n_irr.into(),
            c.coeff_reg().into(),
            predicted.map_or(Cell::Empty, Cell::from),
            rel.map_or(Cell::Empty, Cell::from),
        ]);
    }
    report.summarize("n", o.n());
    report.summarize("directions", visited);
    report.summarize("tilde_c", tilde_c.as_ref().map_or(Value::Null, |c| rational_text(c).into()));
    report.summarize(
        "predicted_over_inverse_zeta2",
        ratio.as_ref().map_or(Value::Null, |r| rational_text(r).into()),
    );
    report.summarize("tolerance", args.tolerance);
    report.summarize("within_tolerance", last_err.map_or(Value::Null, |e| (e <= args.tolerance).into()));
    Ok(report)
}

struct LimitRow {
    n: u64,
    label: OrbitLabel,
    size: u64,
    oracle: ExactRational,
    parametric: Option<ExactRational>,
}

fn limits_for(n: u64, b: BfsBudget) -> Result<Vec<LimitRow>, CliError> {
    let prime = is_prime(n);
    let mut rows = Vec::new();
    for (label, orbit) in primitive_orbits(n, b)? {
        let census = OrbitCensus::from_orbit(&orbit, label)?;
        let oracle = census.tilde_c();
        let parametric = if prime { Some(tilde_c_parametric(n, label, &int(census.size))?) } else { None };
        rows.push(LimitRow { n, label, size: census.size, oracle, parametric });
    }
    Ok(rows)
}

fn limits(args: &LimitsArgs, echo: Value) -> Result<Report, CliError> {
    let ns: Vec<u64> = (5..=args.max_prime).filter(|&n| args.include_nonprime || is_prime(n)).collect();
    let b = budget(args.max_orbit_size);
    let per_n: Vec<Vec<LimitRow>> = ns.par_iter().map(|&n| limits_for(n, b)).collect::<Result<_, _>>()?;
    let mut report = Report::new(
        "limits",
        echo,
        &[
            "n",
            "prime",
            "orbit",
            "orbit_size",
            "oracle_num",
            "oracle_den",
            "parametric_num",
            "parametric_den",
            "tilde_c_float",
            "rel_err_vs_10_3",
            "status",
        ],
    );
    let mut ok = 0u64;
    for row in per_n.into_iter().flatten() {
        let [on, od] = Cell::rational(&row.oracle);
        let (pn, pd, status) = match &row.parametric {
            Some(p) => {
                let [pn, pd] = Cell::rational(p);
                let status = if *p == row.oracle {
                    ok += 1;
                    "OK"
                } else {
                    report.failures.push(format!("n = {}, orbit {}: enumerated and parametric differ", row.n, row.label));
                    "MISMATCH"
                };
                (pn, pd, status)
            }
            None => (Cell::Empty, Cell::Empty, "exploratory"),
        };
        report.push(vec![
            row.n.into(),
            row.parametric.is_some().into(),
            row.label.as_str().into(),
            row.size.into(),
            on,
            od,
            pn,
            pd,
            to_f64(&row.oracle).into(),
            to_f64(&rel_err_vs_limit(&row.oracle)).into(),
            status.into(),
        ]);
    }
    report.summarize("ok_rows", ok);
    report.summarize("mismatches", report.failures.len());
    Ok(report)
}
