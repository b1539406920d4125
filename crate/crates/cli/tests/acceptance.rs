//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines always reach the
//! terminal; exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use origami_sv_core::arith::{gcd, to_f64};
use origami_sv_core::asymptotics::{
    euler_partial, f_oh_predicted, f_ow_predicted, f_predicted, s_sums, DivisorSumTable, ParityFilter,
};
use origami_sv_core::census::{
    census_consistency, classify, closed_form_orbit_size, enumerate_tuples, rel_err_vs_limit, tilde_c_irregular,
    tilde_c_oracle, tilde_c_parametric, ParityClass,
};
use origami_sv_core::cylinders::{build_two_cylinder, cusp_width_formula, horizontal_decomposition, TwoCylCoords};
use origami_sv_core::geodesics::{count_cylinders, count_directions, predicted_coefficient, zeta2, LengthBound};
use origami_sv_core::orbit::{orbit_bfs, seed_heights_odd, seed_widths_odd, BfsBudget, OrbitLabel};
use origami_sv_core::origami::Origami;
use origami_sv_core::perm::Permutation;
use origami_sv_core::{BigInt, ExactRational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rational(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cusp_widths_exact() -> Outcome {
    let mut checked = 0u64;
    for n in 3..=40 {
        for c in TwoCylCoords::all_with_area(n) {
            let o = build_two_cylinder(&c).map_err(|e| e.to_string())?;
            let (orbit, formula) = (o.u_orbit_length(), cusp_width_formula(&c));
            ensure(orbit == formula, || format!("{c:?}: U-orbit {orbit}, formula {formula}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} coordinate tuples with n <= 40 agree"))
}

fn census_equality() -> Outcome {
    let mut sizes = Vec::new();
    for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
        let report = census_consistency(p, BfsBudget::default()).map_err(|e| e.to_string())?;
        ensure(report.is_ok(), || format!("p = {p}: {}", report.mismatches.join("; ")))?;
        sizes.push(format!("{p}:{}", report.orbits.iter().map(|o| o.size.to_string()).collect::<Vec<_>>().join("+")));
    }
    Ok(format!("widths, two-cylinder counts and c~ agree exactly (orbit sizes {})", sizes.join(" ")))
}

fn three_squares() -> Outcome {
    let images = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let perms: Vec<Permutation> = images.iter().map(|p| Permutation::new(p.to_vec()).unwrap()).collect();
    let mut labeled = Vec::new();
    for h in &perms {
        for v in &perms {
            if let Ok(o) = Origami::new(h.clone(), v.clone()) {
                if o.is_h2() {
                    labeled.push(o);
                }
            }
        }
    }
    ensure(labeled.len() == 18, || format!("{} labeled H(2) pairs, expected 18", labeled.len()))?;
    let l3 = Origami::from_images(vec![1, 0, 2], vec![2, 1, 0]).unwrap();
    let orbit = orbit_bfs(&l3).map_err(|e| e.to_string())?;
    ensure(orbit.len() == 3, || format!("orbit size {}", orbit.len()))?;
    ensure(labeled.iter().all(|o| orbit.contains(&o.canonical_form())), || "a labeled pair lies outside the orbit".into())?;
    let mut widths = orbit.cusp_widths();
    widths.sort_unstable();
    ensure(widths == [1, 2], || format!("cusp widths {widths:?}"))?;
    let c = tilde_c_oracle(&l3).map_err(|e| e.to_string())?;
    let c_irr = tilde_c_irregular(&l3).map_err(|e| e.to_string())?;
    ensure(c == rational(2, 1), || format!("c~ = {c}"))?;
    ensure(c_irr == rational(11, 18), || format!("c~_irr = {c_irr}"))?;
    Ok("orbit size 3, cusp widths {2,1}, c~ = 2, c~_irr = 11/18".into())
}

fn s_limits() -> Outcome {
    let table = DivisorSumTable::new(1009);
    let r = s_sums(&table, 1009).map_err(|e| e.to_string())?;
    ensure(&r.s_ow + &r.s_oh + &r.s_eo == r.s, || "S != S_ow + S_oh + S_eo".into())?;
    let errs = r.errors();
    ensure(errs.iter().all(|&e| e <= 0.02), || format!("errors {errs:?}"))?;
    let f = r.floats();
    Ok(format!(
        "p = 1009: S = {:.5}, S_ow = {:.5}, S_oh = {:.5}, S_eo = {:.5}; max error {:.5}; identity exact",
        f[0],
        f[1],
        f[2],
        f[3],
        errs.iter().cloned().fold(0.0, f64::max)
    ))
}

fn closed_form_error(p: u64, label: OrbitLabel) -> Result<f64, String> {
    let size = closed_form_orbit_size(p, label).map_err(|e| e.to_string())?;
    let c = tilde_c_parametric(p, label, &size).map_err(|e| e.to_string())?;
    Ok(to_f64(&rel_err_vs_limit(&c)))
}

fn main_theorem_trend() -> Outcome {
    let mut parts = Vec::new();
    for label in [OrbitLabel::A, OrbitLabel::B] {
        let e101 = closed_form_error(101, label)?;
        let e1009 = closed_form_error(1009, label)?;
        let e10007 = closed_form_error(10007, label)?;
        ensure(e1009 <= 0.10, || format!("{label} at 1009: relative error {e1009}"))?;
        ensure(e1009 < e101, || format!("{label}: error at 1009 ({e1009}) not below 101 ({e101})"))?;
        ensure(e10007 <= 0.03, || format!("{label} at 10007: relative error {e10007}"))?;
        parts.push(format!("{label}: {e101:.4} -> {e1009:.4} -> {e10007:.5}"));
    }
    Ok(format!("relative errors at 101 -> 1009 -> 10007: {}", parts.join(", ")))
}

fn f_ratios() -> Outcome {
    let table = DivisorSumTable::new(1_000_000);
    let x = 1_000_000u64;
    let xf = x as f64;
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    let mut check = |exact: u64, predicted: f64, what: String| -> Result<(), String> {
        let rel = (exact as f64 / predicted - 1.0).abs();
        worst = worst.max(rel);
        checks += 1;
        ensure(rel <= 0.01, || format!("{what}: relative deviation {rel:.5}"))
    };
    for q in 1..=5u64 {
        for k in (0..2 * q).filter(|&k| gcd(k, q) == 1) {
            if k < q {
                check(table.f(x, k, q).unwrap(), f_predicted(xf, k, q).unwrap(), format!("F(x,{k},{q})"))?;
            }
            if k % 2 == 1 {
                if q % 2 == 1 {
                    check(table.f_ow(x, k, q).unwrap(), f_ow_predicted(xf, k, q).unwrap(), format!("F_ow(x,{k},{q})"))?;
                }
                check(table.f_oh(x, k, q).unwrap(), f_oh_predicted(xf, k, q).unwrap(), format!("F_oh(x,{k},{q})"))?;
            }
        }
    }
    Ok(format!("{checks} main-term ratios at x = 10^6, worst deviation {:.4}%", worst * 100.0))
}

fn euler_identities() -> Outcome {
    let a = 1_000_000;
    let pi2 = PI * PI;
    let cases = [
        (ParityFilter::All, 15.0 / pi2, "15/pi^2"),
        (ParityFilter::Odd, 12.0 / pi2, "12/pi^2"),
        (ParityFilter::Even, 3.0 / pi2, "3/pi^2"),
    ];
    let mut parts = Vec::new();
    for (filter, limit, name) in cases {
        let diff = (euler_partial(a, filter) - limit).abs();
        ensure(diff <= 1e-5, || format!("{name}: off by {diff:e}"))?;
        parts.push(format!("{name} {diff:.1e}"));
    }
    Ok(format!("partial sums at A = 10^6 within 1e-5: {}", parts.join(", ")))
}

fn geodesic_counts() -> Outcome {
    let l = LengthBound::integer(300);
    let l3 = Origami::from_images(vec![1, 0, 2], vec![2, 1, 0]).unwrap();
    let surfaces = [
        ("L3", l3),
        ("A5", seed_heights_odd(5).map_err(|e| e.to_string())?),
        ("B5", seed_widths_odd(5).map_err(|e| e.to_string())?),
    ];
    let mut parts = Vec::new();
    for (name, o) in surfaces {
        let start = Instant::now();
        let predicted = to_f64(&predicted_coefficient(&o).map_err(|e| e.to_string())?) / zeta2();
        let report = count_cylinders(&o, l).map_err(|e| e.to_string())?;
        let rel = (report.coeff_reg() - predicted).abs() / predicted;
        ensure(rel <= 0.10, || format!("{name}: N_reg/(pi L^2) = {}, predicted {predicted}", report.coeff_reg()))?;
        parts.push(format!("{name} {:.5} vs {predicted:.5} ({:.1}s)", report.coeff_reg(), start.elapsed().as_secs_f64()));
    }
    Ok(format!("L = 300: {}", parts.join(", ")))
}

fn torus_calibration() -> Outcome {
    let r = 2000.0;
    let count = count_directions(LengthBound::integer(2000));
    let coeff = count as f64 / (PI * r * r);
    let target = 1.0 / (2.0 * zeta2());
    let rel = (coeff - target).abs() / target;
    ensure(rel <= 0.01, || format!("{count} directions, ratio {coeff}, target {target}"))?;
    Ok(format!("{count} directions at R = 2000, ratio {coeff:.6} vs {target:.6}"))
}

fn parity_trichotomy() -> Result<(), String> {
    for n in (3..=201u64).step_by(2) {
        for p in enumerate_tuples(n, true, false) {
            let h_odd = p.h % 2 == 1 && p.y % 2 == 1;
            let w_odd = p.a % 2 == 1 && p.b % 2 == 1;
            let ok = match classify(&p, n).map_err(|e| e.to_string())? {
                ParityClass::HOdd => h_odd && !w_odd,
                ParityClass::WOdd => w_odd && !h_odd,
                ParityClass::Mixed => (p.a + p.b) % 2 == 1 && (p.h + p.y) % 2 == 1,
            };
            ensure(ok, || format!("n = {n}: {p}"))?;
        }
    }
    Ok(())
}

fn round_trip_and_shear() -> Result<u64, String> {
    let mut checked = 0;
    for n in 3..=30 {
        for c in TwoCylCoords::all_with_area(n) {
            let o = build_two_cylinder(&c).map_err(|e| e.to_string())?;
            let back = horizontal_decomposition(&o).ok().and_then(|d| d.two_cyl_coords());
            ensure(back == Some(c), || format!("round trip of {c:?} gave {back:?}"))?;
            let sheared = horizontal_decomposition(&o.shear(1)).ok().and_then(|d| d.two_cyl_coords());
            let expected = TwoCylCoords { t1: (c.t1 + c.h) % c.a, t2: (c.t2 + c.y) % c.b, ..c };
            ensure(sheared == Some(expected), || format!("shear of {c:?} gave {sheared:?}"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn partition_identity() -> Result<(), String> {
    let t = DivisorSumTable::new(10_000);
    let mut prefix = vec![0u64; 10_001];
    for m in 1..=10_000 {
        prefix[m] = prefix[m - 1] + t.sigma(m);
    }
    for q in 1..=20u64 {
        for x in 0..=10_000u64 {
            let total: u64 = (0..q).map(|k| t.f(x, k, q).unwrap()).sum();
            ensure(total == prefix[x as usize], || format!("x = {x}, q = {q}"))?;
        }
    }
    Ok(())
}

fn cli_output(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_origami-sv"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
    Ok(out.stdout)
}

fn determinism() -> Result<usize, String> {
    let dir = std::env::temp_dir().join(format!("origami-sv-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let l3 = dir.join("l3.json");
    std::fs::write(&l3, r#"{"n":3,"sigma_h":[1,0,2],"sigma_v":[2,1,0]}"#).map_err(|e| e.to_string())?;
    let l3 = l3.to_string_lossy().into_owned();
    let runs: [Vec<&str>; 4] = [
        vec!["constants", "--prime-list", "5,7,11,13,101,1009"],
        vec!["sums", "--prime-list", "5,7,101,1009"],
        vec!["limits", "--max-prime", "23"],
        vec!["geodesics", "--origami", &l3, "--length", "10,50,100"],
    ];
    for args in &runs {
        let mut reference = None;
        for jobs in ["1", "2", "4"] {
            let mut full = args.clone();
            full.extend(["--jobs", jobs]);
            let out = cli_output(&full)?;
            match &reference {
                None => reference = Some(out),
                Some(r) => ensure(*r == out, || format!("{args:?} differs between --jobs 1 and --jobs {jobs}"))?,
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(runs.len())
}

fn property_suites() -> Outcome {
    parity_trichotomy()?;
    let tuples = round_trip_and_shear()?;
    partition_identity()?;
    let commands = determinism()?;
    Ok(format!(
        "parity trichotomy for odd n <= 201; round trip and shear for {tuples} tuples with n <= 30; \
         F partition for x <= 10^4, q <= 20; {commands} commands byte-identical for --jobs 1, 2, 4"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cusp widths equal U-orbit lengths", cusp_widths_exact),
        ("enumerated census equals parameter sums", census_equality),
        ("three-square ground truth", three_squares),
        ("divisor-sum limits at p = 1009", s_limits),
        ("c~ approaches 10/3", main_theorem_trend),
        ("divisor-sum main terms", f_ratios),
        ("Euler product limits", euler_identities),
        ("cylinder counts match predicted coefficients", geodesic_counts),
        ("torus direction count", torus_calibration),
        ("property suites and determinism", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
